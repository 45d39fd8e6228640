//! Generators for the lower-bound families, each returning its family
//! together with an exact claimed edge count and a claimed freeness level.
//!
//! Every report can re-certify itself: the edge count is recomputed by the
//! hypergraph engine, and the claimed forbidden pattern is searched for
//! exactly. Magnitudes ("tiny", "far away", "large") are computed from the
//! data — tiny extents are a quarter of the smallest positive coordinate
//! gap, far-away boxes are translated past the whole configuration, large
//! boxes are the bounding box inflated by one.

use crate::direction::{is_2_coherent, DirSet, DirectionVector};
use crate::error::{Error, Result};
use crate::family::BoxFamily;
use crate::geometry::{AxisBox, Interval};
use crate::hypergraph::{count_hyperedges, find_biclique, BicliqueSearch};
use crate::rational::{rat, Rational};

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub construction: String,
    pub params: String,
    pub family: BoxFamily,
    pub claimed_edges: u64,
    pub claimed_free_t: usize,
}

impl ConstructionReport {
    /// Recount the hypergraph and re-run the forbidden-pattern search at
    /// the claimed level. `Ok(true)`: fully verified. `Ok(false)`: count
    /// verified but the freeness search ran out of budget. Errors when the
    /// count disagrees or the pattern is present.
    pub fn certify(&self, budget: u64) -> Result<bool> {
        let measured = count_hyperedges(&self.family).edge_count;
        if measured != self.claimed_edges {
            return Err(Error::Internal(format!(
                "{}({}) claims {} edges, measured {measured}",
                self.construction, self.params, self.claimed_edges
            )));
        }
        match find_biclique(&self.family, self.claimed_free_t, budget)? {
            BicliqueSearch::Absent => Ok(true),
            BicliqueSearch::Found(_) => Err(Error::NotFree(format!(
                "{}({}) contains a complete pattern at t = {}",
                self.construction, self.params, self.claimed_free_t
            ))),
            BicliqueSearch::BudgetExceeded { .. } => Ok(false),
        }
    }
}

/// Box with direction set `dirs`: side [base, base+1] along each axis of
/// `dirs`, the point {base} elsewhere.
fn cluster_box(dirs: DirSet, d: usize, base: i64) -> AxisBox {
    let sides = (1..=d)
        .map(|axis| {
            if dirs.contains(axis) {
                Interval::of_ints(base, base + 1).unwrap()
            } else {
                Interval::of_ints(base, base).unwrap()
            }
        })
        .collect();
    AxisBox::new(sides).unwrap()
}

fn pow_u64(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::TooLarge(format!("{base}^{exp} overflows")))
}

fn mul_u64(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::TooLarge(format!("{a}·{b} overflows")))
}

/// All parts share a common point except for n−t+1 boxes of the last part
/// placed beyond everything: (t−1)·n^{r−1} hyperedges and no complete
/// pattern with t boxes per part.
pub fn trivial_family(f: &DirectionVector, n: usize, t: usize) -> Result<ConstructionReport> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    if n < t {
        return Err(Error::InvalidParameter(format!("need n ≥ t, got n={n}, t={t}")));
    }
    let d = f.dimension();
    let r = f.num_parts();
    let mut parts: Vec<Vec<AxisBox>> = (0..r - 1)
        .map(|j| vec![cluster_box(f.set(j), d, 0); n])
        .collect();
    let origin = cluster_box(f.set(r - 1), d, 0);
    // the cluster spans [0,1] on every axis; +2 along axis 1 clears it
    let far = origin.translate(1, &rat(2));
    let mut last = vec![origin; t - 1];
    last.extend(std::iter::repeat(far).take(n - t + 1));
    parts.push(last);

    let claimed_edges = mul_u64((t - 1) as u64, pow_u64(n as u64, (r - 1) as u32)?)?;
    Ok(ConstructionReport {
        construction: "trivial".into(),
        params: format!("f={f};n={n};t={t}"),
        family: BoxFamily::new(f.clone(), parts)?,
        claimed_edges,
        claimed_free_t: t,
    })
}

/// Unbalanced grouped construction: boxes split into r groups, group g
/// clustered at its own anchor with t boxes of part g there (the rest of
/// part g far away) and n_j/r boxes of every other part. Hyperedge count
/// is exactly t·Σ_g Π_{j≠g}(n_j/r); each anchor carries a complete pattern
/// with t boxes per part but none exists with t+1.
pub fn grouped_family(f: &DirectionVector, n_vec: &[usize], t: usize) -> Result<ConstructionReport> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    let d = f.dimension();
    let r = f.num_parts();
    if n_vec.len() != r {
        return Err(Error::InvalidParameter(format!(
            "size vector has {} entries, direction vector has {r} parts",
            n_vec.len()
        )));
    }
    for &n in n_vec {
        if n % r != 0 {
            return Err(Error::InvalidParameter(format!(
                "part size {n} is not divisible by r = {r}"
            )));
        }
        if n / r < t {
            return Err(Error::InvalidParameter(format!(
                "group share {}/{r} is below t = {t}",
                n
            )));
        }
    }

    let mut parts: Vec<Vec<AxisBox>> = vec![Vec::new(); r];
    for g in 0..r {
        let anchor = 4 * g as i64;
        for j in 0..r {
            let share = n_vec[j] / r;
            let at_anchor = if j == g { t } else { share };
            let boxed = cluster_box(f.set(j), d, anchor);
            parts[j].extend(std::iter::repeat(boxed.clone()).take(at_anchor));
            if j == g {
                // past every anchor (anchors end at 4(r−1)+1 on axis 1)
                let far = boxed.translate(1, &rat(4 * r as i64));
                parts[j].extend(std::iter::repeat(far).take(share - t));
            }
        }
    }

    let mut claimed: u128 = 0;
    for g in 0..r {
        let mut term = t as u128;
        for j in 0..r {
            if j != g {
                term *= (n_vec[j] / r) as u128;
            }
        }
        claimed += term;
    }
    let claimed_edges = u64::try_from(claimed)
        .map_err(|_| Error::TooLarge("grouped edge count overflows".into()))?;

    Ok(ConstructionReport {
        construction: "grouped".into(),
        params: format!("f={f};n={n_vec:?};t={t}"),
        family: BoxFamily::new(f.clone(), parts)?,
        claimed_edges,
        claimed_free_t: t + 1,
    })
}

fn reverse_digits(mut x: u64, b: u64, k: u32) -> u64 {
    let mut y = 0;
    for _ in 0..k {
        y = y * b + x % b;
        x /= b;
    }
    y
}

/// Point–rectangle incidence family on the b^k × b^k grid: points
/// (x, rev_b(x)) and, for each level s, the aligned blocks of width b^s and
/// height b^{k+1−s}. Every rectangle holds exactly b points, two distinct
/// points share at most one rectangle (so no K_{2,2}), and the incidence
/// count is k·b^k across k·b^{k−1} rectangles.
pub fn digit_reversal_family(b: u64, k: u32) -> Result<ConstructionReport> {
    if b < 2 {
        return Err(Error::InvalidParameter(format!("need base b ≥ 2, got {b}")));
    }
    if k < 1 {
        return Err(Error::InvalidParameter("need k ≥ 1".into()));
    }
    let n = pow_u64(b, k)?;
    if n > 1 << 20 {
        return Err(Error::TooLarge(format!("b^k = {n} points")));
    }

    let points = (0..n)
        .map(|x| {
            let y = reverse_digits(x, b, k);
            AxisBox::from_ints(&[(x as i64, x as i64), (y as i64, y as i64)]).unwrap()
        })
        .collect();

    let mut rects = Vec::with_capacity((k as u64 * n / b) as usize);
    for s in 1..=k {
        let width = pow_u64(b, s)?;
        let height = pow_u64(b, k + 1 - s)?;
        for a in 0..pow_u64(b, k - s)? {
            for c in 0..pow_u64(b, s - 1)? {
                rects.push(
                    AxisBox::from_ints(&[
                        ((a * width) as i64, ((a + 1) * width - 1) as i64),
                        ((c * height) as i64, ((c + 1) * height - 1) as i64),
                    ])
                    .unwrap(),
                );
            }
        }
    }

    let f = DirectionVector::new(2, vec![DirSet::empty(), DirSet::full(2)]).unwrap();
    Ok(ConstructionReport {
        construction: "digit-reversal".into(),
        params: format!("b={b};k={k}"),
        family: BoxFamily::new(f, vec![points, rects])?,
        claimed_edges: mul_u64(k as u64, n)?,
        claimed_free_t: 2,
    })
}

/// Replace every part by t−1 identical copies of itself. Edges multiply by
/// (t−1)^r; since a part with only t−1 copies per original cannot supply t
/// copies of one box, any complete pattern with t boxes per part would
/// yield one with 2 distinct originals per part — so freeness at 2 becomes
/// freeness at t.
pub fn amplify_copies(rep: &ConstructionReport, t: usize) -> Result<ConstructionReport> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    if rep.claimed_free_t != 2 {
        return Err(Error::InvalidParameter(format!(
            "amplification starts from a pattern-free-at-2 report, got free_t = {}",
            rep.claimed_free_t
        )));
    }
    let copies = t - 1;
    let parts = rep
        .family
        .parts()
        .iter()
        .map(|part| {
            let mut amplified = Vec::with_capacity(part.len() * copies);
            for _ in 0..copies {
                amplified.extend(part.iter().cloned());
            }
            amplified
        })
        .collect();
    let r = rep.family.num_parts();
    let claimed_edges = mul_u64(rep.claimed_edges, pow_u64(copies as u64, r as u32)?)?;
    Ok(ConstructionReport {
        construction: rep.construction.clone(),
        params: format!("{};amplify_t={t}", rep.params),
        family: rep.family.with_parts(parts)?,
        claimed_edges,
        claimed_free_t: t,
    })
}

fn axis_values(boxes: &[&AxisBox], axis: usize) -> Vec<Rational> {
    let mut vals = Vec::with_capacity(boxes.len() * 2);
    for b in boxes {
        vals.push(b.side(axis).lo().clone());
        vals.push(b.side(axis).hi().clone());
    }
    vals.sort();
    vals.dedup();
    vals
}

/// Smallest positive difference between coordinate values on any single
/// axis, or `None` when every axis has at most one value.
fn min_positive_gap(boxes: &[&AxisBox], d: usize) -> Option<Rational> {
    let mut gap: Option<Rational> = None;
    for axis in 1..=d {
        let vals = axis_values(boxes, axis);
        for w in vals.windows(2) {
            let diff = &w[1] - &w[0];
            if gap.as_ref().is_none_or(|g| diff < *g) {
                gap = Some(diff);
            }
        }
    }
    gap
}

fn bounding_box_inflated(boxes: &[&AxisBox], d: usize) -> AxisBox {
    let sides = (1..=d)
        .map(|axis| {
            let vals = axis_values(boxes, axis);
            match (vals.first(), vals.last()) {
                (Some(lo), Some(hi)) => Interval::new(lo - rat(1), hi + rat(1)).unwrap(),
                _ => Interval::of_ints(0, 1).unwrap(),
            }
        })
        .collect();
    AxisBox::new(sides).unwrap()
}

/// Planar lower-bound family for a 2-coherent direction vector in the
/// plane, from a point/rectangle base: the focal part's points become
/// boxes with a tiny extent along exactly its prescribed axes, one other
/// part keeps the base rectangles, and every remaining part is filled with
/// identical large boxes containing the whole picture. The incidence
/// pattern between the two active parts is exactly the base's, so edges
/// multiply by n^{r−2} and freeness carries over.
pub fn planar_coherent_family(
    f: &DirectionVector,
    base: &ConstructionReport,
) -> Result<ConstructionReport> {
    if f.dimension() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "planar construction needs dimension 2, got {}",
            f.dimension()
        )));
    }
    let verdict = is_2_coherent(f);
    if !verdict.coherent {
        return Err(Error::NotCoherent(f.to_string()));
    }
    let k = verdict.witness_k.unwrap();
    let point_rect = DirectionVector::new(2, vec![DirSet::empty(), DirSet::full(2)]).unwrap();
    if *base.family.direction_vector() != point_rect {
        return Err(Error::InvalidParameter(format!(
            "base must be a point/rectangle family ({point_rect}), got {}",
            base.family.direction_vector()
        )));
    }

    let all: Vec<&AxisBox> = base.family.parts().iter().flatten().collect();
    // any 2w shorter than the least coordinate gap keeps tiny boxes from
    // reaching past the next distinct value
    let w = min_positive_gap(&all, 2).unwrap_or_else(|| rat(1)) / rat(4);

    let fk = f.set(k);
    let transformed: Vec<AxisBox> = base
        .family
        .part(0)
        .iter()
        .map(|p| {
            let sides = (1..=2)
                .map(|axis| {
                    let v = p.side(axis).lo();
                    if fk.contains(axis) {
                        Interval::new(v - &w, v + &w).unwrap()
                    } else {
                        Interval::point(v.clone())
                    }
                })
                .collect();
            AxisBox::new(sides).unwrap()
        })
        .collect();

    let r = f.num_parts();
    let l = (0..r).find(|&j| j != k).unwrap();
    let n_extra = base.family.part(0).len();

    let mut parts: Vec<Vec<AxisBox>> = vec![Vec::new(); r];
    parts[k] = transformed;
    parts[l] = base.family.part(1).to_vec();
    if r > 2 {
        let active: Vec<&AxisBox> = parts[k].iter().chain(&parts[l]).collect();
        let large = bounding_box_inflated(&active, 2);
        for (j, part) in parts.iter_mut().enumerate() {
            if j != k && j != l {
                *part = vec![large.clone(); n_extra];
            }
        }
    }

    let claimed_edges = mul_u64(
        base.claimed_edges,
        pow_u64(n_extra as u64, (r - 2) as u32)?,
    )?;
    Ok(ConstructionReport {
        construction: "planar-coherent".into(),
        params: format!("f={f};base={}({})", base.construction, base.params),
        family: BoxFamily::new(f.clone(), parts)?,
        claimed_edges,
        claimed_free_t: base.claimed_free_t,
    })
}

/// Two-axis shadow of a 2-coherent vector: F_j restricted to the two
/// witness axes, relabeled to {1, 2}.
pub fn planar_shadow(f: &DirectionVector) -> Result<DirectionVector> {
    let verdict = is_2_coherent(f);
    if !verdict.coherent {
        return Err(Error::NotCoherent(f.to_string()));
    }
    let (c1, c2) = verdict.witness_directions.unwrap();
    let sets = f
        .sets()
        .iter()
        .map(|s| {
            let mut shadow = DirSet::empty();
            if s.contains(c1) {
                shadow = shadow.with(1);
            }
            if s.contains(c2) {
                shadow = shadow.with(2);
            }
            shadow
        })
        .collect();
    DirectionVector::new(2, sets)
}

/// Lift a planar family (built for the two-axis shadow of `f`) into ℝ^d:
/// the shadow axes land on the witness axes, every other prescribed axis
/// gets a unit side [0,1], every remaining axis the point {0}. All new
/// sides share the value 0, so the hypergraph coincides with the planar
/// one.
pub fn lift_family(f: &DirectionVector, planar: &ConstructionReport) -> Result<ConstructionReport> {
    let verdict = is_2_coherent(f);
    if !verdict.coherent {
        return Err(Error::NotCoherent(f.to_string()));
    }
    let (c1, c2) = verdict.witness_directions.unwrap();
    let shadow = planar_shadow(f)?;
    if *planar.family.direction_vector() != shadow {
        return Err(Error::InvalidParameter(format!(
            "planar family has direction vector {}, the shadow of {f} is {shadow}",
            planar.family.direction_vector()
        )));
    }

    let d = f.dimension();
    let parts = planar
        .family
        .parts()
        .iter()
        .enumerate()
        .map(|(j, part)| {
            part.iter()
                .map(|pb| {
                    let sides = (1..=d)
                        .map(|axis| {
                            if axis == c1 {
                                pb.side(1).clone()
                            } else if axis == c2 {
                                pb.side(2).clone()
                            } else if f.set(j).contains(axis) {
                                Interval::of_ints(0, 1).unwrap()
                            } else {
                                Interval::of_ints(0, 0).unwrap()
                            }
                        })
                        .collect();
                    AxisBox::new(sides).unwrap()
                })
                .collect()
        })
        .collect();

    Ok(ConstructionReport {
        construction: "lift".into(),
        params: format!("f={f};inner={}({})", planar.construction, planar.params),
        family: BoxFamily::new(f.clone(), parts)?,
        claimed_edges: planar.claimed_edges,
        claimed_free_t: planar.claimed_free_t,
    })
}

/// Full lower-bound pipeline for a 2-coherent vector: digit-reversal base,
/// amplification to level t, planar form for the two-axis shadow, lift
/// into the target space.
pub fn superlinear_family(
    f: &DirectionVector,
    t: usize,
    b: u64,
    k: u32,
) -> Result<ConstructionReport> {
    let base = digit_reversal_family(b, k)?;
    let amplified = amplify_copies(&base, t)?;
    let shadow = planar_shadow(f)?;
    let planar = planar_coherent_family(&shadow, &amplified)?;
    let lifted = lift_family(f, &planar)?;
    Ok(ConstructionReport {
        construction: "pipeline".into(),
        params: format!("f={f};t={t};b={b};k={k}"),
        family: lifted.family,
        claimed_edges: lifted.claimed_edges,
        claimed_free_t: lifted.claimed_free_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::DEFAULT_NODE_BUDGET;

    fn dv(d: usize, sets: &[&[usize]]) -> DirectionVector {
        DirectionVector::new(
            d,
            sets.iter().map(|s| DirSet::from_axes(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_counts() {
        let rep = trivial_family(&dv(1, &[&[1], &[1]]), 3, 2).unwrap();
        assert_eq!(rep.claimed_edges, 3);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());

        let rep = trivial_family(&dv(2, &[&[], &[1, 2]]), 3, 3).unwrap();
        assert_eq!(rep.claimed_edges, 2 * 3);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());

        let rep = trivial_family(&dv(2, &[&[1], &[2], &[1, 2]]), 5, 2).unwrap();
        assert_eq!(rep.claimed_edges, 25);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());

        assert!(trivial_family(&dv(1, &[&[1], &[1]]), 2, 3).is_err());
    }

    #[test]
    fn grouped_counts() {
        let rep = grouped_family(&dv(1, &[&[1], &[1]]), &[4, 4], 2).unwrap();
        assert_eq!(rep.claimed_edges, 8);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());
        // the claimed freeness level is t+1; t itself is realized at the
        // anchors
        assert!(find_biclique(&rep.family, 2, DEFAULT_NODE_BUDGET)
            .unwrap()
            .is_found());

        assert!(grouped_family(&dv(1, &[&[1], &[1]]), &[6, 9], 3).is_err());
        assert!(grouped_family(&dv(1, &[&[1], &[1]]), &[2, 2], 2).is_err());
    }

    #[test]
    fn digit_reversal_small() {
        let rep = digit_reversal_family(2, 2).unwrap();
        assert_eq!(rep.family.part_sizes(), vec![4, 4]);
        assert_eq!(rep.claimed_edges, 8);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());

        let rep = digit_reversal_family(2, 3).unwrap();
        assert_eq!(rep.family.part_sizes(), vec![8, 12]);
        assert_eq!(rep.claimed_edges, 24);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());
    }

    #[test]
    fn digit_reversal_digits() {
        assert_eq!(reverse_digits(0b110, 2, 3), 0b011);
        assert_eq!(reverse_digits(5, 3, 3), 21); // 012 reversed to 210
    }

    #[test]
    fn amplification() {
        let base = digit_reversal_family(2, 2).unwrap();
        let same = amplify_copies(&base, 2).unwrap();
        assert_eq!(same.claimed_edges, base.claimed_edges);
        assert_eq!(same.family, base.family);

        let tripled = amplify_copies(&base, 3).unwrap();
        assert_eq!(tripled.claimed_edges, 32);
        assert_eq!(tripled.claimed_free_t, 3);
        assert!(tripled.certify(DEFAULT_NODE_BUDGET).unwrap());
    }

    #[test]
    fn planar_and_lift() {
        let base = digit_reversal_family(2, 2).unwrap();

        // no transformation at all: the family is the base itself
        let rep = planar_coherent_family(&dv(2, &[&[], &[1, 2]]), &base).unwrap();
        assert_eq!(rep.family, base.family);

        // segment part
        let rep = planar_coherent_family(&dv(2, &[&[1], &[1, 2]]), &base).unwrap();
        assert_eq!(rep.claimed_edges, base.claimed_edges);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());

        // two extra full parts multiply edges by n²
        let rep =
            planar_coherent_family(&dv(2, &[&[1, 2], &[1, 2], &[1, 2], &[1, 2]]), &base).unwrap();
        assert_eq!(rep.claimed_edges, 8 * 16);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());

        assert!(planar_coherent_family(&dv(2, &[&[1], &[2]]), &base).is_err());

        // lifting into ℝ³
        let f3 = dv(3, &[&[1], &[1, 2, 3]]);
        let planar = planar_coherent_family(&planar_shadow(&f3).unwrap(), &base).unwrap();
        let lifted = lift_family(&f3, &planar).unwrap();
        assert_eq!(lifted.family.dimension(), 3);
        assert_eq!(lifted.claimed_edges, 8);
        assert!(lifted.certify(DEFAULT_NODE_BUDGET).unwrap());
    }

    #[test]
    fn pipeline_end_to_end() {
        let f = dv(3, &[&[1], &[1, 2, 3], &[1, 2, 3]]);
        let rep = superlinear_family(&f, 2, 2, 2).unwrap();
        // 8 base incidences × 4 points in the extra part
        assert_eq!(rep.claimed_edges, 32);
        assert!(rep.certify(DEFAULT_NODE_BUDGET).unwrap());
    }
}
