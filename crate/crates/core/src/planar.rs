//! Instances of mutually perpendicular segments in a 2-plane.
//!
//! A horizontal segment is {y = fixed} × span, a vertical one
//! {x = fixed} × span; a horizontal and a vertical cross exactly when each
//! one's fixed coordinate lies in the other's span. These instances arise
//! as diagonal slices of higher-dimensional families and feed the planar
//! bound checks. The representation admits no malformed instances: the two
//! classes are perpendicular by construction.

use crate::bitset::Bitset;
use crate::direction::{DirSet, DirectionVector};
use crate::error::{Error, Result};
use crate::family::BoxFamily;
use crate::geometry::{AxisBox, Interval};
use crate::hypergraph::{
    find_biclique_in_graphs, BicliqueSearch, HypergraphReport, PairwiseGraphs,
};
use crate::rational::Rational;

/// Axis-parallel segment: the line coordinate `fixed`, extent `span`.
/// A degenerate span makes it a point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub fixed: Rational,
    pub span: Interval,
}

impl Segment {
    pub fn new(fixed: Rational, span: Interval) -> Self {
        Segment { fixed, span }
    }
}

/// Whether a horizontal and a vertical segment cross.
pub fn segments_cross(h: &Segment, v: &Segment) -> bool {
    h.span.contains(&v.fixed) && v.span.contains(&h.fixed)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanarInstance {
    pub horizontals: Vec<Segment>,
    pub verticals: Vec<Segment>,
}

impl PlanarInstance {
    pub fn new(horizontals: Vec<Segment>, verticals: Vec<Segment>) -> Self {
        PlanarInstance {
            horizontals,
            verticals,
        }
    }

    pub fn m(&self) -> usize {
        self.horizontals.len()
    }

    pub fn n(&self) -> usize {
        self.verticals.len()
    }
}

/// Bipartite crossing count.
pub fn planar_instance_graph(inst: &PlanarInstance) -> HypergraphReport {
    let mut count = 0;
    for h in &inst.horizontals {
        for v in &inst.verticals {
            if segments_cross(h, v) {
                count += 1;
            }
        }
    }
    HypergraphReport {
        edge_count: count,
        edges: None,
    }
}

pub fn planar_pairwise(inst: &PlanarInstance) -> PairwiseGraphs {
    PairwiseGraphs::from_predicate(&[inst.m(), inst.n()], |_, a, _, b| {
        segments_cross(&inst.horizontals[a], &inst.verticals[b])
    })
}

/// K_{t,t} search in the crossing graph.
pub fn planar_find_biclique(inst: &PlanarInstance, t: usize, budget: u64) -> Result<BicliqueSearch> {
    let g = planar_pairwise(inst);
    let links = [
        equal_segment_links(&inst.horizontals),
        equal_segment_links(&inst.verticals),
    ];
    find_biclique_in_graphs(&g, Some(&links), t, budget)
}

fn equal_segment_links(segs: &[Segment]) -> Vec<Option<usize>> {
    (0..segs.len())
        .map(|a| (0..a).rev().find(|&b| segs[b] == segs[a]))
        .collect()
}

/// Row bitsets of the crossing graph, horizontals against verticals.
pub fn crossing_rows(inst: &PlanarInstance) -> Vec<Bitset> {
    inst.horizontals
        .iter()
        .map(|h| {
            let mut row = Bitset::new(inst.n());
            for (b, v) in inst.verticals.iter().enumerate() {
                if segments_cross(h, v) {
                    row.set(b);
                }
            }
            row
        })
        .collect()
}

/// View a ({1},{2})-family in the plane as a segment instance: part 1
/// horizontal (x-extent, fixed y), part 2 vertical.
pub fn instance_from_family(fam: &BoxFamily) -> Result<PlanarInstance> {
    let expect = DirectionVector::new(
        2,
        vec![
            DirSet::from_axes(&[1]).unwrap(),
            DirSet::from_axes(&[2]).unwrap(),
        ],
    )
    .unwrap();
    if *fam.direction_vector() != expect {
        return Err(Error::InvalidParameter(format!(
            "expected direction vector {expect}, got {}",
            fam.direction_vector()
        )));
    }
    let horizontals = fam
        .part(0)
        .iter()
        .map(|b| Segment::new(b.side(2).lo().clone(), b.side(1).clone()))
        .collect();
    let verticals = fam
        .part(1)
        .iter()
        .map(|b| Segment::new(b.side(1).lo().clone(), b.side(2).clone()))
        .collect();
    Ok(PlanarInstance::new(horizontals, verticals))
}

/// Inverse of [`instance_from_family`]; used to serialize planar
/// counterexamples in the common family format.
pub fn family_from_instance(inst: &PlanarInstance) -> Result<BoxFamily> {
    let f = DirectionVector::new(
        2,
        vec![
            DirSet::from_axes(&[1]).unwrap(),
            DirSet::from_axes(&[2]).unwrap(),
        ],
    )
    .unwrap();
    let horizontals = inst
        .horizontals
        .iter()
        .map(|s| {
            AxisBox::new(vec![s.span.clone(), Interval::point(s.fixed.clone())])
        })
        .collect::<Result<Vec<_>>>()?;
    let verticals = inst
        .verticals
        .iter()
        .map(|s| {
            AxisBox::new(vec![Interval::point(s.fixed.clone()), s.span.clone()])
        })
        .collect::<Result<Vec<_>>>()?;
    BoxFamily::new(f, vec![horizontals, verticals])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn seg(fixed: i64, lo: i64, hi: i64) -> Segment {
        Segment::new(rat(fixed), Interval::of_ints(lo, hi).unwrap())
    }

    #[test]
    fn single_crossing() {
        let inst = PlanarInstance::new(vec![seg(0, -1, 1)], vec![seg(0, -1, 1)]);
        assert_eq!(planar_instance_graph(&inst).edge_count, 1);
    }

    #[test]
    fn grid_crossings() {
        // m stacked horizontals, n verticals through all of them
        let m = 4;
        let n = 3;
        let horizontals: Vec<_> = (0..m).map(|y| seg(y, 0, 10)).collect();
        let verticals: Vec<_> = (0..n).map(|x| seg(x, -1, 5)).collect();
        let inst = PlanarInstance::new(horizontals, verticals);
        assert_eq!(planar_instance_graph(&inst).edge_count, (m * n) as u64);
        assert!(planar_find_biclique(&inst, 2, 1_000_000)
            .unwrap()
            .is_found());
    }

    #[test]
    fn touching_endpoints_cross() {
        let inst = PlanarInstance::new(vec![seg(0, 0, 1)], vec![seg(1, 0, 2)]);
        assert_eq!(planar_instance_graph(&inst).edge_count, 1);
        let disjoint = PlanarInstance::new(vec![seg(0, 0, 1)], vec![seg(2, -1, 1)]);
        assert_eq!(planar_instance_graph(&disjoint).edge_count, 0);
    }

    #[test]
    fn family_roundtrip() {
        let inst = PlanarInstance::new(vec![seg(0, 0, 3), seg(2, 1, 4)], vec![seg(1, -1, 5)]);
        let fam = family_from_instance(&inst).unwrap();
        let back = instance_from_family(&fam).unwrap();
        assert_eq!(back, inst);
        assert_eq!(
            crate::hypergraph::count_hyperedges(&fam).edge_count,
            planar_instance_graph(&inst).edge_count
        );
    }
}
