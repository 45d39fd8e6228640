//! Box families: r parts of boxes, each part conforming to its prescribed
//! direction set. Parts are multisets — duplicate boxes are distinct
//! vertices of the intersection hypergraph.

use crate::direction::{canonical_direction_vector, DirectionVector};
use crate::error::{Error, Result};
use crate::geometry::AxisBox;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxFamily {
    direction_vector: DirectionVector,
    parts: Vec<Vec<AxisBox>>,
}

impl BoxFamily {
    /// Validates that part j holds dimension-d boxes with direction set
    /// exactly F_j.
    pub fn new(direction_vector: DirectionVector, parts: Vec<Vec<AxisBox>>) -> Result<Self> {
        if parts.len() != direction_vector.num_parts() {
            return Err(Error::Conformance(format!(
                "{} parts given, direction vector has {}",
                parts.len(),
                direction_vector.num_parts()
            )));
        }
        let d = direction_vector.dimension();
        for (j, part) in parts.iter().enumerate() {
            for (i, b) in part.iter().enumerate() {
                if b.dimension() != d {
                    return Err(Error::Conformance(format!(
                        "box {i} of part {} has dimension {}, family has {d}",
                        j + 1,
                        b.dimension()
                    )));
                }
                if b.direction_set() != direction_vector.set(j) {
                    return Err(Error::Conformance(format!(
                        "box {i} of part {} has direction set {}, declared {}",
                        j + 1,
                        b.direction_set(),
                        direction_vector.set(j)
                    )));
                }
            }
        }
        Ok(BoxFamily {
            direction_vector,
            parts,
        })
    }

    pub fn dimension(&self) -> usize {
        self.direction_vector.dimension()
    }

    pub fn num_parts(&self) -> usize {
        self.direction_vector.num_parts()
    }

    pub fn direction_vector(&self) -> &DirectionVector {
        &self.direction_vector
    }

    pub fn parts(&self) -> &[Vec<AxisBox>] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &[AxisBox] {
        &self.parts[j]
    }

    pub fn box_at(&self, part: usize, idx: usize) -> &AxisBox {
        &self.parts[part][idx]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn total_boxes(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Whether the direction vector is ([d]∖{1}, …, [d]∖{d}).
    pub fn is_canonical(&self) -> bool {
        match canonical_direction_vector(self.dimension()) {
            Ok(c) => self.direction_vector == c,
            Err(_) => false,
        }
    }

    /// Same direction vector, new boxes; revalidates conformance.
    pub fn with_parts(&self, parts: Vec<Vec<AxisBox>>) -> Result<Self> {
        BoxFamily::new(self.direction_vector.clone(), parts)
    }
}
