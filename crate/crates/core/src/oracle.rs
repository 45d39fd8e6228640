//! Ground truth by exhaustion.
//!
//! `naive_count` and `naive_find_biclique` recompute the engine's answers
//! straight from the definitions, with none of its machinery. The
//! Zarankiewicz search enumerates every family over a finite coordinate
//! grid; this is exhaustive because a hypergraph depends only on the
//! interleaving order of endpoints, so every family is order-isomorphic to
//! one whose endpoints sit on a small integer grid (see the rank
//! normalization below).

use itertools::Itertools;
use num::BigInt;

use crate::direction::DirectionVector;
use crate::error::{Error, Result};
use crate::family::BoxFamily;
use crate::geometry::{box_intersect, AxisBox};
use crate::hypergraph::BicliqueWitness;
use crate::rational::Rational;

/// Families enumerated before the Zarankiewicz search reports a partial
/// result. Large enough to exhaust every case with all part sizes ≤ 2.
pub const DEFAULT_ORACLE_BUDGET: u64 = 200_000_000;

/// Edge count straight from the definition: test the common intersection
/// of every transversal. Capped at 10⁴ transversals.
pub fn naive_count(fam: &BoxFamily) -> Result<u64> {
    let sizes = fam.part_sizes();
    let space: u128 = sizes.iter().map(|&n| n as u128).product();
    if space > 10_000 {
        return Err(Error::TooLarge(format!(
            "{space} transversals exceed the naive cap of 10000"
        )));
    }
    let mut count = 0;
    for combo in sizes.iter().map(|&n| 0..n).multi_cartesian_product() {
        let boxes: Vec<AxisBox> = combo
            .iter()
            .enumerate()
            .map(|(j, &m)| fam.part(j)[m].clone())
            .collect();
        if box_intersect(&boxes)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}

/// Complete-pattern search straight from the definition: try every
/// t-subset of every part. Capped at part sizes ≤ 8 and t ≤ 3. Returns
/// the lexicographically first witness.
pub fn naive_find_biclique(fam: &BoxFamily, t: usize) -> Result<Option<BicliqueWitness>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    if t > 3 {
        return Err(Error::TooLarge("naive pattern search caps t at 3".into()));
    }
    let sizes = fam.part_sizes();
    if sizes.iter().any(|&n| n > 8) {
        return Err(Error::TooLarge(
            "naive pattern search caps part sizes at 8".into(),
        ));
    }
    if sizes.iter().any(|&n| n < t) {
        return Ok(None);
    }
    let subsets: Vec<Vec<Vec<usize>>> = sizes
        .iter()
        .map(|&n| (0..n).combinations(t).collect())
        .collect();
    let r = sizes.len();
    for pick in subsets.iter().map(|s| 0..s.len()).multi_cartesian_product() {
        let sel: Vec<&Vec<usize>> = (0..r).map(|j| &subsets[j][pick[j]]).collect();
        let mut complete = true;
        'pairs: for i in 0..r {
            for j in i + 1..r {
                for &a in sel[i] {
                    for &b in sel[j] {
                        if !fam.part(i)[a].intersects(&fam.part(j)[b]) {
                            complete = false;
                            break 'pairs;
                        }
                    }
                }
            }
        }
        if complete {
            return Ok(Some(BicliqueWitness {
                parts: sel.into_iter().cloned().collect(),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub z_value: u64,
    pub witness_family: BoxFamily,
    pub search_space_size: Rational,
    pub exhausted: bool,
}

type IntBox = Vec<(i64, i64)>;

fn int_intersect_all(boxes: &[&IntBox]) -> bool {
    let d = boxes[0].len();
    for axis in 0..d {
        let lo = boxes.iter().map(|b| b[axis].0).max().unwrap();
        let hi = boxes.iter().map(|b| b[axis].1).min().unwrap();
        if lo > hi {
            return false;
        }
    }
    true
}

fn int_pair_intersect(a: &IntBox, b: &IntBox) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| x.0.max(y.0) <= x.1.min(y.1))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All distinct box shapes for one direction set over per-axis alphabets
/// {0..a_i−1}: a strict pair per prescribed axis, a single value per flat
/// axis. Lexicographic order.
fn shapes_for(set: crate::direction::DirSet, alphabet: &[usize]) -> Vec<IntBox> {
    let per_axis: Vec<Vec<(i64, i64)>> = alphabet
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let axis = i + 1;
            if set.contains(axis) {
                (0..a as i64)
                    .flat_map(|lo| (lo + 1..a as i64).map(move |hi| (lo, hi)))
                    .collect()
            } else {
                (0..a as i64).map(|v| (v, v)).collect()
            }
        })
        .collect();
    per_axis
        .iter()
        .map(|opts| opts.iter().copied())
        .multi_cartesian_product()
        .collect()
}

/// True when, on every axis, the values used by the family are exactly
/// {0..k} for some k — the rank-normal form of its order type. Every
/// family is order-isomorphic to exactly one normal form, so restricting
/// the maximization to normal forms loses nothing.
fn is_rank_normal(boxes: &[&IntBox], alphabet: &[usize]) -> bool {
    let d = alphabet.len();
    for axis in 0..d {
        let mut used = vec![false; alphabet[axis]];
        for b in boxes {
            used[b[axis].0 as usize] = true;
            used[b[axis].1 as usize] = true;
        }
        let top = used.iter().rposition(|&u| u);
        match top {
            None => return false,
            Some(h) => {
                if used[..=h].iter().any(|&u| !u) {
                    return false;
                }
            }
        }
    }
    true
}

fn family_has_pattern(parts: &[Vec<&IntBox>], t: usize) -> bool {
    let r = parts.len();
    if parts.iter().any(|p| p.len() < t) {
        return false;
    }
    let subsets: Vec<Vec<Vec<usize>>> = parts
        .iter()
        .map(|p| (0..p.len()).combinations(t).collect())
        .collect();
    'outer: for pick in subsets.iter().map(|s| 0..s.len()).multi_cartesian_product() {
        for i in 0..r {
            for j in i + 1..r {
                for &a in &subsets[i][pick[i]] {
                    for &b in &subsets[j][pick[j]] {
                        if !int_pair_intersect(parts[i][a], parts[j][b]) {
                            continue 'outer;
                        }
                    }
                }
            }
        }
        return true;
    }
    false
}

fn family_edge_count(parts: &[Vec<&IntBox>]) -> u64 {
    let mut count = 0;
    for combo in parts.iter().map(|p| 0..p.len()).multi_cartesian_product() {
        let boxes: Vec<&IntBox> = combo.iter().enumerate().map(|(j, &m)| parts[j][m]).collect();
        if int_intersect_all(&boxes) {
            count += 1;
        }
    }
    count
}

/// Maximize the hyperedge count over all pattern-free families with the
/// given direction vector and part sizes, endpoints drawn from an integer
/// grid.
///
/// `grid_points` overrides the per-axis alphabet (default: one value per
/// flat side plus two per extended side any box could need, which is
/// enough to realize every endpoint order type). `budget` caps the number
/// of enumerated families; when it runs out the best value found so far is
/// returned with `exhausted = false`.
pub fn zarankiewicz_bruteforce(
    f: &DirectionVector,
    n_vec: &[usize],
    t: usize,
    grid_points: Option<usize>,
    budget: u64,
) -> Result<OracleResult> {
    zarankiewicz_bruteforce_opts(f, n_vec, t, grid_points, budget, true)
}

/// As [`zarankiewicz_bruteforce`], with rank-normalization pruning made
/// optional so the pruned and unpruned searches can be compared.
pub fn zarankiewicz_bruteforce_opts(
    f: &DirectionVector,
    n_vec: &[usize],
    t: usize,
    grid_points: Option<usize>,
    budget: u64,
    prune: bool,
) -> Result<OracleResult> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t ≥ 2, got {t}")));
    }
    let r = f.num_parts();
    let d = f.dimension();
    if n_vec.len() != r {
        return Err(Error::InvalidParameter(format!(
            "size vector has {} entries, direction vector has {r} parts",
            n_vec.len()
        )));
    }
    if n_vec.iter().any(|&n| n == 0) {
        return Err(Error::InvalidParameter("part sizes must be ≥ 1".into()));
    }

    let default_alphabet: Vec<usize> = (1..=d)
        .map(|i| {
            n_vec
                .iter()
                .enumerate()
                .map(|(j, &n)| n * if f.set(j).contains(i) { 2 } else { 1 })
                .sum()
        })
        .collect();
    let alphabet: Vec<usize> = match grid_points {
        None => default_alphabet,
        Some(0) => return Err(Error::InvalidParameter("grid must have ≥ 1 point".into())),
        // an explicit grid can be clamped when pruning: a normal form
        // never uses values beyond the default alphabet
        Some(g) if prune => default_alphabet.iter().map(|&a| a.min(g)).collect(),
        Some(g) => vec![g; d],
    };

    let shapes: Vec<Vec<IntBox>> = (0..r).map(|j| shapes_for(f.set(j), &alphabet)).collect();
    if shapes.iter().any(|s| s.is_empty()) {
        return Err(Error::TooLarge(
            "grid too small to realize a required box shape".into(),
        ));
    }

    let mut search_space = BigInt::from(1);
    for j in 0..r {
        search_space *= binomial(shapes[j].len() + n_vec[j] - 1, n_vec[j]);
    }

    let multisets: Vec<Vec<Vec<usize>>> = (0..r)
        .map(|j| {
            let count = binomial(shapes[j].len() + n_vec[j] - 1, n_vec[j]);
            if count > BigInt::from(5_000_000u64) {
                return Err(Error::TooLarge(format!(
                    "part {j} alone has {count} candidate multisets"
                )));
            }
            Ok((0..shapes[j].len())
                .combinations_with_replacement(n_vec[j])
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut visited: u64 = 0;
    let mut exhausted = true;

    let mut odo = vec![0usize; r];
    'enumeration: loop {
        visited += 1;
        if visited > budget {
            exhausted = false;
            break;
        }

        let parts: Vec<Vec<&IntBox>> = (0..r)
            .map(|j| multisets[j][odo[j]].iter().map(|&s| &shapes[j][s]).collect())
            .collect();
        let flat: Vec<&IntBox> = parts.iter().flatten().copied().collect();
        if (!prune || is_rank_normal(&flat, &alphabet)) && !family_has_pattern(&parts, t) {
            let e = family_edge_count(&parts);
            if best.as_ref().is_none_or(|(b, _)| e > *b) {
                best = Some((e, odo.clone()));
            }
        }

        // odometer step
        for j in (0..r).rev() {
            odo[j] += 1;
            if odo[j] < multisets[j].len() {
                continue 'enumeration;
            }
            odo[j] = 0;
        }
        break;
    }

    let (z_value, at) = match best {
        Some(b) => b,
        None if exhausted => {
            return Err(Error::EmptyInput(
                "no pattern-free family exists over this grid".into(),
            ))
        }
        None => return Err(Error::BudgetExceeded { nodes: budget }),
    };
    let parts = (0..r)
        .map(|j| {
            multisets[j][at[j]]
                .iter()
                .map(|&s| AxisBox::from_ints(&shapes[j][s]).unwrap())
                .collect()
        })
        .collect();
    Ok(OracleResult {
        z_value,
        witness_family: BoxFamily::new(f.clone(), parts)?,
        search_space_size: Rational::from_integer(search_space),
        exhausted,
    })
}
