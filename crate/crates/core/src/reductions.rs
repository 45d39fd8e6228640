//! Hypergraph-preserving transformations between family shapes: exact
//! perturbation to separated position, grid rescaling, diagonal slicing
//! into planar segment instances, hyperplane slicing, and the embedding of
//! transfer-shaped vectors into canonical position in ℝʳ.
//!
//! Nothing here changes an intersection pattern silently. Perturbation
//! sizes are derived from the least positive coordinate gap, so edges and
//! non-edges survive by margin; the slicing operations recount their input
//! and fail loudly if the accounting identities they promise do not hold.

use itertools::Itertools;

use crate::direction::{
    canonical_direction_vector, is_restricted, is_separated, DirSet,
};
use crate::error::{Error, Result};
use crate::family::BoxFamily;
use crate::geometry::{interval_intersect, AxisBox, Interval, Point};
use crate::hypergraph::{count_hyperedges, BicliqueWitness};
use crate::planar::{planar_instance_graph, PlanarInstance, Segment};
use crate::rational::{rat, rational_to_i64, Rational};

/// Endpoint values used on one axis, sorted and deduplicated.
fn axis_values(fam: &BoxFamily, axis: usize) -> Vec<Rational> {
    let mut vals: Vec<Rational> = fam
        .parts()
        .iter()
        .flatten()
        .flat_map(|b| [b.side(axis).lo().clone(), b.side(axis).hi().clone()])
        .collect();
    vals.sort();
    vals.dedup();
    vals
}

/// Least positive difference between coordinate values on `axis`, or 1
/// when the axis carries at most one value (then no intersection on that
/// axis can be destroyed by small motion).
fn axis_gap(fam: &BoxFamily, axis: usize) -> Rational {
    axis_values(fam, axis)
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(|| rat(1))
}

/// Perturb a canonical family into separated position: every side not on a
/// part's own axis is enlarged by gap/4, and the carrier value on the own
/// axis is shifted by idx·gap/(8N) with a globally distinct idx per box.
///
/// Margins: an intersecting cross pair stays intersecting because shifts
/// stay below the enlargement; a disjoint pair on some axis was at least
/// one gap apart and closes by at most 3·gap/8. Carrier values that
/// coincided get distinct shifts; values that differed stay at least
/// 3·gap/4 apart.
pub fn separate(fam: &BoxFamily) -> Result<BoxFamily> {
    if !fam.is_canonical() {
        return Err(Error::NotCanonical(format!(
            "direction vector is {}",
            fam.direction_vector()
        )));
    }
    let d = fam.dimension();
    let total = fam.total_boxes() as i64;
    let gaps: Vec<Rational> = (1..=d).map(|axis| axis_gap(fam, axis)).collect();

    let mut idx: i64 = 0;
    let mut parts = Vec::with_capacity(d);
    for (j, part) in fam.parts().iter().enumerate() {
        let own = j + 1;
        let mut out = Vec::with_capacity(part.len());
        for b in part {
            idx += 1;
            let sides = (1..=d)
                .map(|axis| {
                    let gap = &gaps[axis - 1];
                    if axis == own {
                        let delta = gap * rat(idx) / rat(8 * total);
                        Interval::point(b.side(axis).lo() + delta)
                    } else {
                        b.side(axis).enlarged(&(gap / rat(4)))
                    }
                })
                .collect();
            out.push(AxisBox::new(sides).unwrap());
        }
        parts.push(out);
    }
    fam.with_parts(parts)
}

/// φ(x) for the piecewise-linear increasing map sending the k-th of the
/// sorted values to k+1, with slope 1 outside their range.
fn remap(vals: &[Rational], x: &Rational) -> Rational {
    let n = vals.len();
    if *x <= vals[0] {
        return x - &vals[0] + rat(1);
    }
    if *x >= vals[n - 1] {
        return x - &vals[n - 1] + rat(n as i64);
    }
    let k = vals.partition_point(|v| v <= x) - 1;
    rat((k + 1) as i64) + (x - &vals[k]) / (&vals[k + 1] - &vals[k])
}

/// Rescale each chosen axis by a strictly increasing piecewise-linear map
/// taking the n_i carrier values of the axis's own part onto 1..n_i
/// (identity when they already sit there). Axes default to 1..d−1. Every
/// coordinate order is preserved in both directions, so the hypergraph is
/// unchanged.
pub fn rescale_to_grid(fam: &BoxFamily, axes: Option<DirSet>) -> Result<BoxFamily> {
    if !is_separated(fam)? {
        return Err(Error::NotSeparated("carrier values collide".into()));
    }
    let d = fam.dimension();
    let chosen = match axes {
        Some(s) => {
            if let Some(bad) = s.iter().find(|&a| a > d) {
                return Err(Error::InvalidParameter(format!(
                    "axis {bad} out of range 1..={d}"
                )));
            }
            s
        }
        None => DirSet::from_axes(&(1..d).collect::<Vec<_>>()).unwrap(),
    };

    // per chosen axis, the sorted carrier values of its own part
    let mut maps: Vec<Option<Vec<Rational>>> = vec![None; d + 1];
    for axis in chosen.iter() {
        let part = fam.part(axis - 1);
        if part.is_empty() {
            continue;
        }
        let mut vals: Vec<Rational> = part.iter().map(|b| b.side(axis).lo().clone()).collect();
        vals.sort();
        maps[axis] = Some(vals);
    }

    let parts = fam
        .parts()
        .iter()
        .map(|part| {
            part.iter()
                .map(|b| {
                    let sides = (1..=d)
                        .map(|axis| match &maps[axis] {
                            Some(vals) => Interval::new(
                                remap(vals, b.side(axis).lo()),
                                remap(vals, b.side(axis).hi()),
                            )
                            .unwrap(),
                            None => b.side(axis).clone(),
                        })
                        .collect();
                    AxisBox::new(sides).unwrap()
                })
                .collect()
        })
        .collect();
    fam.with_parts(parts)
}

/// One diagonal slice: the 2-plane through `anchor` spanned by
/// e₁+…+e_{d−1} (the u direction) and e_d (the v direction).
///
/// `horizontals` are the traces of part-d boxes — constant v (the box's
/// carrier value on axis d), a u-interval — each tagged with its box index
/// in part d. `verticals` are the transversal intersections of parts
/// 1..d−1 — constant u (the diagonal step s), a v-interval — each tagged
/// with one box index per part. A crossing is exactly a hyperedge of the
/// input family.
#[derive(Clone, Debug)]
pub struct PlanarSlice {
    pub anchor: Point,
    pub horizontals: Vec<(Segment, usize)>,
    pub verticals: Vec<(Segment, Vec<usize>)>,
}

impl PlanarSlice {
    /// Geometry only, origin indices dropped.
    pub fn instance(&self) -> PlanarInstance {
        PlanarInstance::new(
            self.horizontals.iter().map(|(s, _)| s.clone()).collect(),
            self.verticals.iter().map(|(s, _)| s.clone()).collect(),
        )
    }

    pub fn edge_count(&self) -> u64 {
        planar_instance_graph(&self.instance()).edge_count
    }
}

#[derive(Clone, Debug)]
pub struct SliceDecomposition {
    pub slices: Vec<PlanarSlice>,
}

impl SliceDecomposition {
    pub fn anchors(&self) -> impl Iterator<Item = &Point> {
        self.slices.iter().map(|s| &s.anchor)
    }

    pub fn total_transversals(&self) -> u64 {
        self.slices.iter().map(|s| s.verticals.len() as u64).sum()
    }

    pub fn total_edges(&self) -> u64 {
        self.slices.iter().map(|s| s.edge_count()).sum()
    }
}

/// Map a complete bipartite crossing pattern inside one slice back to box
/// indices of the sliced family: parts 1..d−1 from the selected verticals'
/// origin indices, part d from the selected horizontals'.
pub fn slice_witness(slice: &PlanarSlice, h_sel: &[usize], v_sel: &[usize]) -> BicliqueWitness {
    let dm1 = slice.verticals[v_sel[0]].1.len();
    let mut parts = vec![Vec::new(); dm1 + 1];
    for &v in v_sel {
        for (j, &bidx) in slice.verticals[v].1.iter().enumerate() {
            parts[j].push(bidx);
        }
    }
    for &h in h_sel {
        parts[dm1].push(slice.horizontals[h].1);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    BicliqueWitness { parts }
}

/// Carrier values of axes 1..=upto must be exactly 1..n_i.
fn require_grid(fam: &BoxFamily, upto: usize) -> Result<()> {
    for axis in 1..=upto {
        let part = fam.part(axis - 1);
        let mut vals = Vec::with_capacity(part.len());
        for b in part {
            match rational_to_i64(b.side(axis).lo()) {
                Some(v) => vals.push(v),
                None => {
                    return Err(Error::NotRescaled(format!(
                        "axis {axis} carrier value {:?} is not an integer",
                        b.side(axis).lo()
                    )))
                }
            }
        }
        vals.sort_unstable();
        if vals != (1..=part.len() as i64).collect::<Vec<_>>() {
            return Err(Error::NotRescaled(format!(
                "axis {axis} carrier values are not 1..{}",
                part.len()
            )));
        }
    }
    Ok(())
}

/// Decompose a restricted grid family into planar slices along the
/// diagonal 2-planes through the lower-boundary anchors (grid tuples with
/// some coordinate 1). Every transversal of parts 1..d−1 lies in exactly
/// one slice, so the slice crossing counts partition the hyperedge count;
/// both identities, the per-slice size cap |S_p| ≤ n_d, and the anchor
/// count cap are re-verified before returning.
pub fn slice_restricted(fam: &BoxFamily) -> Result<SliceDecomposition> {
    if !is_restricted(fam)? {
        return Err(Error::NotRestricted(
            "some transversal of the first d-1 parts is empty".into(),
        ));
    }
    let d = fam.dimension();
    if d == 2 {
        return Err(Error::AlreadyPlanar(
            "a 2-dimensional family is its own planar instance".into(),
        ));
    }
    require_grid(fam, d - 1)?;

    let sizes = fam.part_sizes();
    let nvec: Vec<i64> = sizes[..d - 1].iter().map(|&n| n as i64).collect();
    if nvec.iter().any(|&n| n == 0) {
        return Err(Error::EmptyInput(
            "slicing needs every one of the first d-1 parts nonempty".into(),
        ));
    }

    // box index by carrier value, per part 1..d−1 (grid ⇒ bijective)
    let by_value: Vec<Vec<usize>> = (0..d - 1)
        .map(|j| {
            let axis = j + 1;
            let mut lookup = vec![0usize; sizes[j]];
            for (m, b) in fam.part(j).iter().enumerate() {
                lookup[(rational_to_i64(b.side(axis).lo()).unwrap() - 1) as usize] = m;
            }
            lookup
        })
        .collect();

    let last = d - 1;
    let mut slices = Vec::new();
    for p in nvec.iter().map(|&n| 1..=n).multi_cartesian_product() {
        if !p.contains(&1) {
            continue;
        }

        let mut horizontals = Vec::new();
        for (m, b) in fam.part(last).iter().enumerate() {
            let mut lo = b.side(1).lo() - rat(p[0]);
            let mut hi = b.side(1).hi() - rat(p[0]);
            for i in 2..d {
                lo = lo.max(b.side(i).lo() - rat(p[i - 1]));
                hi = hi.min(b.side(i).hi() - rat(p[i - 1]));
            }
            if lo <= hi {
                let v = b.side(d).lo().clone();
                horizontals.push((Segment::new(v, Interval::new(lo, hi).unwrap()), m));
            }
        }

        let mut verticals = Vec::new();
        let smax = (0..d - 1).map(|i| nvec[i] - p[i]).min().unwrap();
        for s in 0..=smax {
            let members: Vec<usize> = (0..d - 1)
                .map(|j| by_value[j][(p[j] + s - 1) as usize])
                .collect();
            let mut iv = fam.part(0)[members[0]].side(d).clone();
            for (j, &m) in members.iter().enumerate().skip(1) {
                iv = interval_intersect(&iv, fam.part(j)[m].side(d)).ok_or_else(|| {
                    Error::Internal("restricted family with an empty transversal".into())
                })?;
            }
            verticals.push((Segment::new(rat(s), iv), members));
        }

        let mut coords: Vec<Rational> = p.iter().map(|&x| rat(x)).collect();
        coords.push(rat(0));
        slices.push(PlanarSlice {
            anchor: Point::new(coords).unwrap(),
            horizontals,
            verticals,
        });
    }

    let dec = SliceDecomposition { slices };

    // accounting identities; failures indicate a bug, not bad input
    let grid_total: u64 = nvec.iter().map(|&n| n as u64).product();
    if dec.total_transversals() != grid_total {
        return Err(Error::Internal(format!(
            "transversal count {} != {grid_total}",
            dec.total_transversals()
        )));
    }
    if let Some(s) = dec.slices.iter().find(|s| s.horizontals.len() > sizes[last]) {
        return Err(Error::Internal(format!(
            "slice at {:?} has {} traces for {} boxes",
            s.anchor,
            s.horizontals.len(),
            sizes[last]
        )));
    }
    let measured = count_hyperedges(fam).edge_count;
    if dec.total_edges() != measured {
        return Err(Error::Internal(format!(
            "slice crossings {} != {measured} hyperedges",
            dec.total_edges()
        )));
    }
    let anchor_cap: u64 = (0..d - 1)
        .map(|j| {
            (0..d - 1)
                .filter(|&i| i != j)
                .map(|i| nvec[i] as u64)
                .product::<u64>()
        })
        .sum();
    if dec.slices.len() as u64 > anchor_cap {
        return Err(Error::Internal(format!(
            "{} anchors exceed the cap {anchor_cap}",
            dec.slices.len()
        )));
    }
    Ok(dec)
}

/// One hyperplane cross-section: the sub-family of boxes meeting
/// {x_axis = value}, with the axis deleted, plus the original index of
/// every retained box.
#[derive(Clone, Debug)]
pub struct HyperplaneSlice {
    pub value: Rational,
    pub family: BoxFamily,
    pub origins: Vec<Vec<usize>>,
}

/// Slice along {x_i = s} for each value s carrying a box of part j₁ or j₂
/// (both parts must be flat along axis i). Each box of those parts falls
/// in exactly one slice, and every hyperedge survives into exactly the
/// slice of its j₁ box, so part sizes and edge counts both partition;
/// verified before returning.
pub fn slice_general(
    fam: &BoxFamily,
    axis: usize,
    part_pair: (usize, usize),
) -> Result<Vec<HyperplaneSlice>> {
    let d = fam.dimension();
    let r = fam.num_parts();
    let (j1, j2) = part_pair;
    if d < 2 {
        return Err(Error::InvalidParameter(
            "slicing a 1-dimensional family would leave no coordinates".into(),
        ));
    }
    if axis == 0 || axis > d {
        return Err(Error::InvalidParameter(format!(
            "axis {axis} out of range 1..={d}"
        )));
    }
    if j1 == j2 || j1 >= r || j2 >= r {
        return Err(Error::InvalidParameter(format!(
            "part pair ({j1}, {j2}) invalid for {r} parts"
        )));
    }
    let f = fam.direction_vector();
    for j in [j1, j2] {
        if f.set(j).contains(axis) {
            return Err(Error::InvalidParameter(format!(
                "part {j} extends along axis {axis}; it must be flat there"
            )));
        }
    }

    let mut values: Vec<Rational> = fam
        .part(j1)
        .iter()
        .chain(fam.part(j2))
        .map(|b| b.side(axis).lo().clone())
        .collect();
    values.sort();
    values.dedup();

    let fprime = f.delete_axis(axis)?;
    let mut slices = Vec::with_capacity(values.len());
    for s in values {
        let mut parts = Vec::with_capacity(r);
        let mut origins = Vec::with_capacity(r);
        for part in fam.parts() {
            let mut boxes = Vec::new();
            let mut idxs = Vec::new();
            for (m, b) in part.iter().enumerate() {
                if b.side(axis).contains(&s) {
                    let sides = (1..=d)
                        .filter(|&a| a != axis)
                        .map(|a| b.side(a).clone())
                        .collect();
                    boxes.push(AxisBox::new(sides).unwrap());
                    idxs.push(m);
                }
            }
            parts.push(boxes);
            origins.push(idxs);
        }
        slices.push(HyperplaneSlice {
            value: s,
            family: BoxFamily::new(fprime.clone(), parts)?,
            origins,
        });
    }

    for j in [j1, j2] {
        let total: usize = slices.iter().map(|s| s.family.part(j).len()).sum();
        if total != fam.part(j).len() {
            return Err(Error::Internal(format!(
                "part {j} splits into {total} boxes, expected {}",
                fam.part(j).len()
            )));
        }
    }
    let measured = count_hyperedges(fam).edge_count;
    let sliced: u64 = slices
        .iter()
        .map(|s| count_hyperedges(&s.family).edge_count)
        .sum();
    if sliced != measured {
        return Err(Error::Internal(format!(
            "slice edges {sliced} != {measured} hyperedges"
        )));
    }
    Ok(slices)
}

/// Canonical embedding of a transfer-shaped family.
///
/// `part_origin[new_part]` is the input part now at that position: parts
/// with a one-axis complement move to that axis's position, full parts
/// follow in order.
#[derive(Clone, Debug)]
pub struct TransferOutcome {
    pub family: BoxFamily,
    pub part_origin: Vec<usize>,
}

/// Embed a family whose direction-set complements are pairwise disjoint,
/// of size at most one, and jointly cover all axes — the shape with r ≥ d
/// parts, d of them flat along one private axis each and the rest full —
/// into canonical position in ℝʳ. New coordinates get [0,1], except the
/// point {0} on each part's own new axis; all new sides share 0, so the
/// hypergraph is exactly the input's modulo the part reordering.
pub fn transfer_to_canonical(fam: &BoxFamily) -> Result<TransferOutcome> {
    let f = fam.direction_vector();
    let d = f.dimension();
    let r = f.num_parts();

    let mut owner: Vec<Option<usize>> = vec![None; d];
    let mut fulls = Vec::new();
    for j in 0..r {
        let comp = f.set(j).complement_in(d);
        match comp.len() {
            0 => fulls.push(j),
            1 => {
                let a = comp.iter().next().unwrap();
                if let Some(other) = owner[a - 1] {
                    return Err(Error::NotTransferShape(format!(
                        "parts {other} and {j} are both flat exactly along axis {a}"
                    )));
                }
                owner[a - 1] = Some(j);
            }
            _ => {
                return Err(Error::NotTransferShape(format!(
                    "part {j} is flat along {} axes {comp}",
                    comp.len()
                )))
            }
        }
    }
    let mut part_origin = Vec::with_capacity(r);
    for (a, slot) in owner.iter().enumerate() {
        match slot {
            Some(j) => part_origin.push(*j),
            None => {
                return Err(Error::NotTransferShape(format!(
                    "no part is flat along axis {}",
                    a + 1
                )))
            }
        }
    }
    part_origin.extend(&fulls);

    let target = canonical_direction_vector(r)?;
    let parts = part_origin
        .iter()
        .enumerate()
        .map(|(newj, &oldj)| {
            fam.part(oldj)
                .iter()
                .map(|b| {
                    let mut sides = b.sides().to_vec();
                    for a in d + 1..=r {
                        sides.push(if a == newj + 1 {
                            Interval::of_ints(0, 0).unwrap()
                        } else {
                            Interval::of_ints(0, 1).unwrap()
                        });
                    }
                    AxisBox::new(sides).unwrap()
                })
                .collect()
        })
        .collect();
    Ok(TransferOutcome {
        family: BoxFamily::new(target, parts)?,
        part_origin,
    })
}
