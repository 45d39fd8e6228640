//! Seeded instance generators for sweeps and oracle cross-checks.
//!
//! Everything takes an explicit `Rng`, so callers control reproducibility;
//! [`seeded`] builds the stream cipher generator used throughout the test
//! suites and the CLI.

use rand::seq::SliceRandom;
use rand::SeedableRng;

pub use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

use crate::direction::{canonical_direction_vector, DirSet, DirectionVector};
use crate::family::BoxFamily;
use crate::geometry::{AxisBox, Interval};
use crate::planar::{PlanarInstance, Segment};
use crate::rational::{rat, Rational};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_direction_vector<R: Rng>(rng: &mut R, d: usize, r: usize) -> DirectionVector {
    let sets = (0..r)
        .map(|_| {
            (1..=d).fold(DirSet::empty(), |s, axis| {
                if rng.gen_bool(0.5) {
                    s.with(axis)
                } else {
                    s
                }
            })
        })
        .collect();
    DirectionVector::new(d, sets).unwrap()
}

fn random_side<R: Rng>(rng: &mut R, extended: bool, lo: i64, hi: i64) -> Interval {
    if extended {
        let a = rng.gen_range(lo..hi);
        let b = rng.gen_range(a + 1..=hi);
        Interval::of_ints(a, b).unwrap()
    } else {
        let v = rng.gen_range(lo..=hi);
        Interval::of_ints(v, v).unwrap()
    }
}

/// Independent boxes conforming to `f`: a random nondegenerate interval in
/// [lo, hi] along each prescribed axis, a random point elsewhere.
pub fn random_family_for<R: Rng>(
    rng: &mut R,
    f: &DirectionVector,
    sizes: &[usize],
    lo: i64,
    hi: i64,
) -> BoxFamily {
    assert!(hi > lo, "need a nondegenerate coordinate range");
    let d = f.dimension();
    let parts = (0..f.num_parts())
        .map(|j| {
            (0..sizes[j])
                .map(|_| {
                    let sides = (1..=d)
                        .map(|axis| random_side(rng, f.set(j).contains(axis), lo, hi))
                        .collect();
                    AxisBox::new(sides).unwrap()
                })
                .collect()
        })
        .collect();
    BoxFamily::new(f.clone(), parts).unwrap()
}

/// Canonical family with random geometry; carrier values may collide, so
/// the output is generally not separated.
pub fn random_canonical_family<R: Rng>(
    rng: &mut R,
    d: usize,
    sizes: &[usize],
    hi: i64,
) -> BoxFamily {
    let f = canonical_direction_vector(d).unwrap();
    let parts = (0..d)
        .map(|j| {
            let own = j + 1;
            (0..sizes[j])
                .map(|_| {
                    let sides = (1..=d)
                        .map(|axis| random_side(rng, axis != own, 0, hi))
                        .collect();
                    AxisBox::new(sides).unwrap()
                })
                .collect()
        })
        .collect();
    BoxFamily::new(f, parts).unwrap()
}

/// Distinct integers from `0..pool`, shifted by `offset`, in random order.
fn distinct_values<R: Rng>(rng: &mut R, count: usize, pool: i64, offset: i64) -> Vec<i64> {
    let mut all: Vec<i64> = (0..pool).collect();
    all.shuffle(rng);
    all.truncate(count);
    all.iter().map(|v| v + offset).collect()
}

/// Random restricted family: each of the first d−1 parts spans the whole
/// configuration along every axis but its own (and a window around 0 on
/// axis d), which makes all their transversals meet by construction; the
/// last part gets small scattered boxes so the hypergraph stays sparse.
/// Pattern-freeness is not guaranteed — reject and retry where needed.
pub fn random_restricted_family<R: Rng>(rng: &mut R, d: usize, sizes: &[usize]) -> BoxFamily {
    assert!(d >= 2);
    let f = canonical_direction_vector(d).unwrap();
    let span = 3 * (*sizes.iter().max().unwrap() as i64) + 2;
    let all_carriers: Vec<Vec<i64>> = (0..d - 1)
        .map(|j| distinct_values(rng, sizes[j], span - 2, 1))
        .collect();
    let mut parts: Vec<Vec<AxisBox>> = all_carriers
        .iter()
        .enumerate()
        .map(|(j, carriers)| {
            let own = j + 1;
            carriers
                .iter()
                .map(|&c| {
                    let sides = (1..=d)
                        .map(|axis| {
                            if axis == own {
                                Interval::of_ints(c, c).unwrap()
                            } else if axis < d {
                                Interval::of_ints(0, span).unwrap()
                            } else {
                                // must stay an interval: keep hi ≥ 1
                                let a = rng.gen_range(0..=2);
                                let b = rng.gen_range(1..=2);
                                Interval::of_ints(-a, b).unwrap()
                            }
                        })
                        .collect();
                    AxisBox::new(sides).unwrap()
                })
                .collect()
        })
        .collect();

    // Last part: point carrier near the shared axis-d window, short sides
    // elsewhere. Sides anchor onto a real carrier half the time so the
    // hypergraph is not vacuously empty.
    let n = sizes[d - 1];
    let carriers = distinct_values(rng, n, (n as i64).max(6), -2);
    parts.push(
        carriers
            .into_iter()
            .map(|c| {
                let sides = (1..=d)
                    .map(|axis| {
                        if axis == d {
                            Interval::of_ints(c, c).unwrap()
                        } else {
                            let len = rng.gen_range(1..=3);
                            let a = if rng.gen_bool(0.5) {
                                let hit = all_carriers[axis - 1]
                                    [rng.gen_range(0..all_carriers[axis - 1].len())];
                                (hit - rng.gen_range(0..=len)).clamp(0, span - len)
                            } else {
                                rng.gen_range(0..=span - len)
                            };
                            Interval::of_ints(a, a + len).unwrap()
                        }
                    })
                    .collect();
                AxisBox::new(sides).unwrap()
            })
            .collect(),
    );
    BoxFamily::new(f, parts).unwrap()
}

pub fn random_planar_instance<R: Rng>(rng: &mut R, m: usize, n: usize, span: i64) -> PlanarInstance {
    let mut seg = |_| {
        let fixed = rat(rng.gen_range(0..=span));
        let a = rng.gen_range(0..span);
        let b = rng.gen_range(a + 1..=span);
        Segment::new(fixed, Interval::of_ints(a, b).unwrap())
    };
    let horizontals = (0..m).map(&mut seg).collect();
    let verticals = (0..n).map(&mut seg).collect();
    PlanarInstance::new(horizontals, verticals)
}

/// Push one coordinate of every box through a random strictly increasing
/// map (distinct random integer images of the values actually used).
/// Intersection patterns are invariant under any such map.
pub fn remap_axis_monotone<R: Rng>(rng: &mut R, fam: &BoxFamily, axis: usize) -> BoxFamily {
    let mut vals: Vec<Rational> = fam
        .parts()
        .iter()
        .flatten()
        .flat_map(|b| [b.side(axis).lo().clone(), b.side(axis).hi().clone()])
        .collect();
    vals.sort();
    vals.dedup();

    let mut images = Vec::with_capacity(vals.len());
    let mut cur = rng.gen_range(-40..=40);
    for _ in &vals {
        cur += rng.gen_range(1..=5);
        images.push(rat(cur));
    }
    let image_of = |x: &Rational| -> Rational {
        let k = vals.binary_search(x).unwrap();
        images[k].clone()
    };

    let parts = fam
        .parts()
        .iter()
        .map(|part| {
            part.iter()
                .map(|b| {
                    let side = b.side(axis);
                    b.with_side(
                        axis,
                        Interval::new(image_of(side.lo()), image_of(side.hi())).unwrap(),
                    )
                })
                .collect()
        })
        .collect();
    fam.with_parts(parts).unwrap()
}
