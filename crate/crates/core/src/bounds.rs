//! The size function g_t and the catalog of explicit edge-count
//! inequalities, checked instance by instance.
//!
//! A check takes nothing on faith: it verifies the structural shape and
//! the pattern-freeness of its input, measures the hypergraph, and
//! compares against the formula with the formula's own strictness. A
//! failed comparison is reported, not masked — sweeps exist to surface
//! one.

use std::fmt;

use num::BigInt;

use crate::direction::{is_restricted, DirSet};
use crate::error::{Error, Result};
use crate::family::BoxFamily;
use crate::hypergraph::{count_hyperedges, find_biclique, BicliqueSearch};
use crate::planar::{
    instance_from_family, planar_find_biclique, planar_instance_graph, PlanarInstance,
};
use crate::rational::{rat, Rational};

/// t · Σ_j Π_{i≠j} n_i, exact.
pub fn g_t(n_vec: &[usize], t: usize) -> Result<Rational> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    if n_vec.is_empty() {
        return Err(Error::EmptyInput("empty size vector".into()));
    }
    if n_vec.iter().any(|&n| n == 0) {
        return Err(Error::InvalidParameter("part sizes must be ≥ 1".into()));
    }
    let mut total = rat(0);
    for j in 0..n_vec.len() {
        let mut term = rat(t as i64);
        for (i, &n) in n_vec.iter().enumerate() {
            if i != j {
                term *= rat(n as i64);
            }
        }
        total += term;
    }
    Ok(total)
}

/// The checkable inequalities. Comparisons are strict exactly where the
/// sources state them strictly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    /// Restricted canonical family: e ≤ 27·g_t(n⃗).
    Restricted27,
    /// Crossing segments in the plane: e ≤ 27·t·(m+n).
    Planar27T,
    /// Any one-dimensional family: e < 4^{r−1}·g_t(n⃗).
    OneDim,
    /// Points vs segments on a line: e < m·t + 3·n·t.
    PointSeg,
    /// Segments vs segments on a line: e < 4·t·(m+n).
    SegSeg,
    /// r parts of segments on a line: e < 4^{r−1}·g_t(n⃗).
    RSeg,
}

impl Formula {
    pub const ALL: [Formula; 6] = [
        Formula::Restricted27,
        Formula::Planar27T,
        Formula::OneDim,
        Formula::PointSeg,
        Formula::SegSeg,
        Formula::RSeg,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::Restricted27 => "restricted-27",
            Formula::Planar27T => "planar-27t",
            Formula::OneDim => "one-dim",
            Formula::PointSeg => "point-seg",
            Formula::SegSeg => "seg-seg",
            Formula::RSeg => "r-seg",
        }
    }

    pub fn parse(s: &str) -> Result<Formula> {
        Formula::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| {
                let known = Formula::ALL.map(|f| f.id()).join(", ");
                Error::InvalidParameter(format!("unknown formula {s:?} (one of: {known})"))
            })
    }

    pub fn strict(self) -> bool {
        matches!(
            self,
            Formula::OneDim | Formula::PointSeg | Formula::SegSeg | Formula::RSeg
        )
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub formula: Formula,
    pub measured_edges: u64,
    pub bound_value: Rational,
    pub satisfied: bool,
    pub sizes: Vec<usize>,
    pub t: usize,
}

fn ratu(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl BoundReport {
    fn build(formula: Formula, measured: u64, bound: Rational, sizes: Vec<usize>, t: usize) -> Self {
        let m = ratu(measured);
        let satisfied = if formula.strict() { m < bound } else { m <= bound };
        BoundReport {
            formula,
            measured_edges: measured,
            bound_value: bound,
            satisfied,
            sizes,
            t,
        }
    }

    /// measured / bound.
    pub fn ratio(&self) -> Rational {
        ratu(self.measured_edges) / &self.bound_value
    }
}

fn pow4(exp: usize) -> Rational {
    (0..exp).fold(rat(1), |a, _| a * rat(4))
}

fn ensure_free(fam: &BoxFamily, t: usize, budget: u64) -> Result<()> {
    match find_biclique(fam, t, budget)? {
        BicliqueSearch::Absent => Ok(()),
        BicliqueSearch::Found(_) => Err(Error::NotFree(format!(
            "family contains a complete pattern with {t} boxes per part"
        ))),
        BicliqueSearch::BudgetExceeded { nodes } => Err(Error::BudgetExceeded { nodes }),
    }
}

fn require_shape(formula: Formula, fam: &BoxFamily) -> Result<()> {
    let f = fam.direction_vector();
    let d = f.dimension();
    let r = f.num_parts();
    let line = DirSet::from_axes(&[1]).unwrap();
    let ok = match formula {
        Formula::Restricted27 => {
            if !is_restricted(fam)? {
                return Err(Error::NotRestricted(
                    "some transversal of the first d-1 parts is empty".into(),
                ));
            }
            true
        }
        Formula::OneDim => d == 1,
        Formula::PointSeg => {
            d == 1 && r == 2 && f.set(0) == DirSet::empty() && f.set(1) == line
        }
        Formula::SegSeg => d == 1 && r == 2 && f.set(0) == line && f.set(1) == line,
        Formula::RSeg => d == 1 && (0..r).all(|j| f.set(j) == line),
        Formula::Planar27T => unreachable!("handled via the planar entry point"),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{formula} does not apply to direction vector {f}"
        )))
    }
}

/// Measure a family against one formula. The family must be free of the
/// complete pattern at level t (verified here; a present pattern or an
/// exhausted search budget is an error, since the comparison would be
/// meaningless).
pub fn check_bound(formula: Formula, fam: &BoxFamily, t: usize, budget: u64) -> Result<BoundReport> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    if formula == Formula::Planar27T {
        return check_bound_planar(&instance_from_family(fam)?, t, budget);
    }
    require_shape(formula, fam)?;
    let sizes = fam.part_sizes();
    if sizes.iter().any(|&n| n == 0) {
        return Err(Error::EmptyInput("every part must be nonempty".into()));
    }
    ensure_free(fam, t, budget)?;
    let measured = count_hyperedges(fam).edge_count;
    let tq = rat(t as i64);
    let bound = match formula {
        Formula::Restricted27 => rat(27) * g_t(&sizes, t)?,
        Formula::OneDim | Formula::RSeg => pow4(fam.num_parts() - 1) * g_t(&sizes, t)?,
        Formula::PointSeg => rat(sizes[0] as i64) * &tq + rat(3 * sizes[1] as i64) * &tq,
        Formula::SegSeg => rat(4) * &tq * rat((sizes[0] + sizes[1]) as i64),
        Formula::Planar27T => unreachable!(),
    };
    Ok(BoundReport::build(formula, measured, bound, sizes, t))
}

/// The planar inequality e ≤ 27·t·(m+n) on a crossing instance, requiring
/// K_{t,t}-freeness of the crossing graph.
pub fn check_bound_planar(inst: &PlanarInstance, t: usize, budget: u64) -> Result<BoundReport> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    match planar_find_biclique(inst, t, budget)? {
        BicliqueSearch::Absent => {}
        BicliqueSearch::Found(_) => {
            return Err(Error::NotFree(format!(
                "crossing graph contains a complete {t}×{t} pattern"
            )))
        }
        BicliqueSearch::BudgetExceeded { nodes } => return Err(Error::BudgetExceeded { nodes }),
    }
    let measured = planar_instance_graph(inst).edge_count;
    let (m, n) = (inst.m(), inst.n());
    let bound = rat(27) * rat(t as i64) * rat((m + n) as i64);
    Ok(BoundReport::build(
        Formula::Planar27T,
        measured,
        bound,
        vec![m, n],
        t,
    ))
}

/// Batch result: all reports, the worst measured/bound ratio, and the
/// indices of any violated comparisons.
#[derive(Clone, Debug)]
pub struct SweepRun {
    pub reports: Vec<BoundReport>,
    pub max_ratio: Option<Rational>,
    pub violations: Vec<usize>,
}

fn summarize(reports: Vec<BoundReport>) -> SweepRun {
    let max_ratio = reports.iter().map(|r| r.ratio()).max();
    let violations = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.satisfied)
        .map(|(i, _)| i)
        .collect();
    SweepRun {
        reports,
        max_ratio,
        violations,
    }
}

/// Check one formula over many families (already generated pattern-free;
/// a family that is not free stops the sweep with an error).
pub fn asymmetric_bound_sweep(
    formula: Formula,
    fams: impl IntoIterator<Item = BoxFamily>,
    t: usize,
    budget: u64,
) -> Result<SweepRun> {
    let mut reports = Vec::new();
    for fam in fams {
        reports.push(check_bound(formula, &fam, t, budget)?);
    }
    Ok(summarize(reports))
}

/// Planar analogue of [`asymmetric_bound_sweep`].
pub fn planar_sweep(
    insts: impl IntoIterator<Item = PlanarInstance>,
    t: usize,
    budget: u64,
) -> Result<SweepRun> {
    let mut reports = Vec::new();
    for inst in insts {
        reports.push(check_bound_planar(&inst, t, budget)?);
    }
    Ok(summarize(reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{digit_reversal_family, trivial_family};
    use crate::direction::DirectionVector;
    use crate::geometry::{AxisBox, Interval};
    use crate::hypergraph::DEFAULT_NODE_BUDGET;
    use crate::planar::Segment;
    use crate::rational::frac;

    fn dv(d: usize, sets: &[&[usize]]) -> DirectionVector {
        DirectionVector::new(
            d,
            sets.iter().map(|s| DirSet::from_axes(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn g_t_values() {
        assert_eq!(g_t(&[5, 5, 5], 2).unwrap(), rat(150)); // t·r·n^{r−1}
        assert_eq!(g_t(&[2, 3], 2).unwrap(), rat(10));
        assert_eq!(g_t(&[1, 1, 1], 3).unwrap(), rat(9));
        assert!(g_t(&[0, 2], 2).is_err());
        assert!(g_t(&[2, 2], 1).is_err());
    }

    #[test]
    fn formula_ids_roundtrip() {
        for f in Formula::ALL {
            assert_eq!(Formula::parse(f.id()).unwrap(), f);
        }
        assert!(Formula::parse("nope").is_err());
    }

    #[test]
    fn one_dim_on_trivial() {
        let rep = trivial_family(&dv(1, &[&[1], &[1]]), 5, 2).unwrap();
        let out = check_bound(Formula::OneDim, &rep.family, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.measured_edges, 5);
        assert_eq!(out.bound_value, rat(80)); // 4·g₂(5,5)
        assert!(out.satisfied);
        assert_eq!(out.ratio(), frac(1, 16));
    }

    #[test]
    fn trivial_ratio_against_g() {
        // (t−1)·n^{r−1} edges against g_t = t·r·n^{r−1}
        for (r, n, t) in [(2, 4, 2), (3, 3, 2), (3, 4, 3)] {
            let f = dv(1, &vec![[1].as_slice(); r]);
            let rep = trivial_family(&f, n, t).unwrap();
            let g = g_t(&rep.family.part_sizes(), t).unwrap();
            assert_eq!(
                ratu(rep.claimed_edges) / g,
                frac((t - 1) as i64, (t * r) as i64)
            );
        }
    }

    #[test]
    fn planar_grid_bound() {
        // 3×5 full grid: K₄,₄ impossible with only 3 horizontals
        let horizontals = (0..3)
            .map(|i| Segment::new(rat(i), Interval::of_ints(0, 10).unwrap()))
            .collect();
        let verticals = (0..5)
            .map(|j| Segment::new(rat(j), Interval::of_ints(-5, 5).unwrap()))
            .collect();
        let inst = PlanarInstance::new(horizontals, verticals);
        let out = check_bound_planar(&inst, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.measured_edges, 15);
        assert_eq!(out.bound_value, rat(27 * 4 * 8));
        assert!(out.satisfied);

        // t = 2 sees the full 2×2 pattern
        assert!(matches!(
            check_bound_planar(&inst, 2, DEFAULT_NODE_BUDGET),
            Err(Error::NotFree(_))
        ));
    }

    #[test]
    fn shape_preconditions() {
        // planar points/rectangles are out of scope for the line formulas
        let rep = digit_reversal_family(2, 3).unwrap();
        assert!(matches!(
            check_bound(Formula::PointSeg, &rep.family, 2, DEFAULT_NODE_BUDGET),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            check_bound(Formula::OneDim, &rep.family, 2, DEFAULT_NODE_BUDGET),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn seg_seg_free_instance() {
        // disjoint left group vs right group plus one long segment each
        let f = dv(1, &[&[1], &[1]]);
        let mk = |a: i64, b: i64| AxisBox::from_ints(&[(a, b)]).unwrap();
        let fam = crate::family::BoxFamily::new(
            f,
            vec![
                vec![mk(0, 1), mk(4, 5), mk(0, 9)],
                vec![mk(1, 2), mk(5, 6)],
            ],
        )
        .unwrap();
        let out = check_bound(Formula::SegSeg, &fam, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.measured_edges, 4);
        assert_eq!(out.bound_value, rat(4 * 2 * 5));
        assert!(out.satisfied);
    }

    #[test]
    fn point_seg_check() {
        let f = dv(1, &[&[], &[1]]);
        let pt = |v: i64| AxisBox::from_ints(&[(v, v)]).unwrap();
        let seg = |a: i64, b: i64| AxisBox::from_ints(&[(a, b)]).unwrap();
        let fam = crate::family::BoxFamily::new(
            f,
            vec![vec![pt(0), pt(3), pt(7)], vec![seg(0, 3), seg(6, 8)]],
        )
        .unwrap();
        let out = check_bound(Formula::PointSeg, &fam, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.measured_edges, 3);
        assert_eq!(out.bound_value, rat(3 * 2 + 3 * 2 * 2));
        assert!(out.satisfied);
    }
}
