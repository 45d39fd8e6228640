//! Direction sets, direction vectors, and their classification.
//!
//! A box's direction set is the set of axes along which it has positive
//! extent. A direction vector assigns one prescribed direction set per
//! part. The central classification here is 2-coherence: whether some
//! r−1 of the sets share at least two axes. Everything downstream (which
//! growth regime a vector falls in, which reductions apply) keys off
//! this predicate and the canonical/separated/restricted refinements.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::family::BoxFamily;

/// Set of coordinate axes, numbered from 1. Stored as a bitmask, so the
/// ambient dimension is limited to [`DirSet::MAX_DIMENSION`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirSet(u64);

impl DirSet {
    pub const MAX_DIMENSION: usize = 63;

    pub fn empty() -> Self {
        DirSet(0)
    }

    /// All axes 1..=d.
    pub fn full(d: usize) -> Self {
        assert!(d <= Self::MAX_DIMENSION);
        DirSet(((1u64 << d) - 1) << 1)
    }

    pub fn from_axes(axes: &[usize]) -> Result<Self> {
        let mut s = DirSet(0);
        for &a in axes {
            if a == 0 || a > Self::MAX_DIMENSION {
                return Err(Error::InvalidParameter(format!(
                    "axis {a} out of range 1..={}",
                    Self::MAX_DIMENSION
                )));
            }
            s.0 |= 1 << a;
        }
        Ok(s)
    }

    pub fn contains(self, axis: usize) -> bool {
        axis >= 1 && axis <= Self::MAX_DIMENSION && self.0 >> axis & 1 == 1
    }

    pub fn with(self, axis: usize) -> Self {
        assert!(axis >= 1 && axis <= Self::MAX_DIMENSION);
        DirSet(self.0 | 1 << axis)
    }

    pub fn without(self, axis: usize) -> Self {
        DirSet(self.0 & !(1u64.wrapping_shl(axis as u32)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Axes in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=Self::MAX_DIMENSION).filter(move |a| bits >> a & 1 == 1)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: Self) -> Self {
        DirSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        DirSet(self.0 | other.0)
    }

    pub fn complement_in(self, d: usize) -> Self {
        DirSet(Self::full(d).0 & !self.0)
    }

    /// Remove `axis` and shift every higher axis down by one; used when a
    /// coordinate is deleted from the ambient space.
    pub fn delete_axis(self, axis: usize) -> Self {
        let low_mask = (1u64 << axis) - 1; // bits 0..axis-1, i.e. axes < axis
        let low = self.0 & low_mask;
        let high = (self.0 & !low_mask & !(1 << axis)) >> 1;
        DirSet(low | high)
    }
}

impl fmt::Display for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

impl fmt::Debug for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A prescribed direction set per part: `r ≥ 2` subsets of {1..d}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DirectionVector {
    dimension: usize,
    sets: Vec<DirSet>,
}

impl DirectionVector {
    pub fn new(dimension: usize, sets: Vec<DirSet>) -> Result<Self> {
        if dimension == 0 || dimension > DirSet::MAX_DIMENSION {
            return Err(Error::InvalidParameter(format!(
                "dimension {dimension} out of range 1..={}",
                DirSet::MAX_DIMENSION
            )));
        }
        if sets.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 parts, got {}",
                sets.len()
            )));
        }
        let full = DirSet::full(dimension);
        for (j, s) in sets.iter().enumerate() {
            if !s.is_subset_of(full) {
                return Err(Error::InvalidParameter(format!(
                    "part {} direction set {s} is not a subset of {{1..{dimension}}}",
                    j + 1
                )));
            }
        }
        Ok(DirectionVector { dimension, sets })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of parts r.
    pub fn num_parts(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[DirSet] {
        &self.sets
    }

    pub fn set(&self, part: usize) -> DirSet {
        self.sets[part]
    }

    /// Delete a coordinate from the ambient space (and from every set),
    /// relabeling higher axes down by one.
    pub fn delete_axis(&self, axis: usize) -> Result<DirectionVector> {
        if axis == 0 || axis > self.dimension {
            return Err(Error::InvalidParameter(format!(
                "axis {axis} out of range 1..={}",
                self.dimension
            )));
        }
        if self.dimension == 1 {
            return Err(Error::InvalidParameter(
                "cannot delete the only coordinate".into(),
            ));
        }
        DirectionVector::new(
            self.dimension - 1,
            self.sets.iter().map(|s| s.delete_axis(axis)).collect(),
        )
    }
}

impl fmt::Display for DirectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.dimension, self.sets.iter().join(" "))
    }
}

/// Outcome of the 2-coherence test.
///
/// When coherent, `witness_k` is the smallest part index (0-based) whose
/// removal leaves sets sharing at least two axes, and `witness_directions`
/// is the lexicographically smallest such axis pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceVerdict {
    pub coherent: bool,
    pub witness_k: Option<usize>,
    pub witness_directions: Option<(usize, usize)>,
}

/// A vector is 2-coherent when for some k, |∩_{j≠k} F_j| ≥ 2.
pub fn is_2_coherent(f: &DirectionVector) -> CoherenceVerdict {
    let r = f.num_parts();
    for k in 0..r {
        let mut inter = DirSet::full(f.dimension());
        for j in 0..r {
            if j != k {
                inter = inter.intersect(f.set(j));
            }
        }
        if inter.len() >= 2 {
            let mut axes = inter.iter();
            let a = axes.next().unwrap();
            let b = axes.next().unwrap();
            return CoherenceVerdict {
                coherent: true,
                witness_k: Some(k),
                witness_directions: Some((a, b)),
            };
        }
    }
    CoherenceVerdict {
        coherent: false,
        witness_k: None,
        witness_directions: None,
    }
}

/// The vector ([d]∖{1}, …, [d]∖{d}) with r = d parts: part j's boxes are
/// hyperplane pieces perpendicular to axis j.
pub fn canonical_direction_vector(d: usize) -> Result<DirectionVector> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "canonical vector needs dimension ≥ 2, got {d}"
        )));
    }
    let sets = (1..=d).map(|j| DirSet::full(d).without(j)).collect();
    DirectionVector::new(d, sets)
}

/// Separated: within each part of a canonical family, the collapsed
/// coordinates (part j collapses along axis j) are pairwise distinct.
pub fn is_separated(fam: &BoxFamily) -> Result<bool> {
    if !fam.is_canonical() {
        return Err(Error::NotCanonical(format!(
            "direction vector is {}",
            fam.direction_vector()
        )));
    }
    for (j, part) in fam.parts().iter().enumerate() {
        let axis = j + 1;
        let mut values: Vec<_> = part.iter().map(|b| b.side(axis).lo().clone()).collect();
        values.sort();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restricted: separated, and every transversal of the first d−1 parts has
/// a common point. By the Helly property of boxes this reduces to all cross
/// pairs among those parts intersecting.
pub fn is_restricted(fam: &BoxFamily) -> Result<bool> {
    if !is_separated(fam)? {
        return Err(Error::NotSeparated(
            "restrictedness is defined for separated families".into(),
        ));
    }
    let d = fam.dimension();
    for i in 0..d.saturating_sub(1) {
        for j in i + 1..d - 1 {
            for a in fam.part(i) {
                for b in fam.part(j) {
                    if !a.intersects(b) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Incompleteness graph on the parts of a separated family: an edge {i,j}
/// records that some cross pair of boxes from parts i and j is disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    pub num_vertices: usize,
    /// Unordered pairs (i, j) with i < j, 0-based part indices.
    pub edges: Vec<(usize, usize)>,
}

pub fn auxiliary_graph(fam: &BoxFamily) -> Result<AuxiliaryGraph> {
    if !is_separated(fam)? {
        return Err(Error::NotSeparated(
            "auxiliary graph is defined for separated families".into(),
        ));
    }
    let r = fam.num_parts();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let disjoint_pair = fam
                .part(i)
                .iter()
                .any(|a| fam.part(j).iter().any(|b| !a.intersects(b)));
            if disjoint_pair {
                edges.push((i, j));
            }
        }
    }
    Ok(AuxiliaryGraph {
        num_vertices: r,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(d: usize, sets: &[&[usize]]) -> DirectionVector {
        DirectionVector::new(
            d,
            sets.iter().map(|s| DirSet::from_axes(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn dirset_basics() {
        let s = DirSet::from_axes(&[1, 3]).unwrap();
        assert!(s.contains(1) && !s.contains(2) && s.contains(3));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(DirSet::empty().to_string(), "{}");
        assert_eq!(DirSet::full(3).to_string(), "{1,2,3}");
        assert_eq!(s.complement_in(3), DirSet::from_axes(&[2]).unwrap());
        assert!(DirSet::from_axes(&[0]).is_err());
        assert!(DirSet::from_axes(&[64]).is_err());
    }

    #[test]
    fn dirset_delete_axis_relabels() {
        let s = DirSet::from_axes(&[1, 3, 4]).unwrap();
        assert_eq!(s.delete_axis(2), DirSet::from_axes(&[1, 2, 3]).unwrap());
        assert_eq!(s.delete_axis(3), DirSet::from_axes(&[1, 3]).unwrap());
        assert_eq!(s.delete_axis(1), DirSet::from_axes(&[2, 3]).unwrap());
    }

    #[test]
    fn coherence_verdicts() {
        // point part plus full part in the plane: removing the point part
        // leaves {1,2}
        let v = is_2_coherent(&dv(2, &[&[], &[1, 2]]));
        assert!(v.coherent);
        assert_eq!(v.witness_k, Some(0));
        assert_eq!(v.witness_directions, Some((1, 2)));

        assert!(!is_2_coherent(&dv(2, &[&[1], &[2]])).coherent);

        let v = is_2_coherent(&dv(3, &[&[1], &[2, 3]]));
        assert!(v.coherent);
        assert_eq!(v.witness_k, Some(0));
        assert_eq!(v.witness_directions, Some((2, 3)));

        assert!(!is_2_coherent(&dv(1, &[&[1], &[1]])).coherent);
        assert!(is_2_coherent(&dv(3, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]])).coherent);
    }

    #[test]
    fn canonical_vectors() {
        assert_eq!(
            canonical_direction_vector(3).unwrap(),
            dv(3, &[&[2, 3], &[1, 3], &[1, 2]])
        );
        assert_eq!(canonical_direction_vector(2).unwrap(), dv(2, &[&[2], &[1]]));
        let c5 = canonical_direction_vector(5).unwrap();
        for j in 0..5 {
            assert_eq!(c5.set(j).len(), 4);
            assert!(!c5.set(j).contains(j + 1));
        }
        assert!(canonical_direction_vector(1).is_err());
        // canonical vectors are never 2-coherent: the residual intersection
        // is the single axis of the removed part
        for d in 2..=6 {
            assert!(!is_2_coherent(&canonical_direction_vector(d).unwrap()).coherent);
        }
    }

    #[test]
    fn display_roundtrip_shape() {
        assert_eq!(dv(2, &[&[], &[1, 2]]).to_string(), "2: {} {1,2}");
        assert_eq!(
            dv(3, &[&[2, 3], &[1, 3], &[1, 2]]).to_string(),
            "3: {2,3} {1,3} {1,2}"
        );
    }
}
