//! The intersection hypergraph engine.
//!
//! A transversal (one box per part) is a hyperedge exactly when the boxes
//! have a common point, which for axis-parallel boxes is equivalent to all
//! cross pairs intersecting. Everything here therefore works on
//! [`PairwiseGraphs`]: the r·(r−1)/2 bipartite cross-intersection graphs,
//! stored as bitset rows. Counting backtracks over parts with candidate-set
//! intersection; the complete-pattern search K_{t,…,t} additionally prunes
//! by candidate cardinality and by multiset-equal boxes, and carries a hard
//! node budget so it can report "budget exceeded" instead of a false
//! "absent".

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::family::BoxFamily;

/// Default node budget for the K_{t,…,t} search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Bipartite cross-intersection adjacency for every part pair.
#[derive(Clone, Debug)]
pub struct PairwiseGraphs {
    sizes: Vec<usize>,
    /// adj[i][j][a] = bitset over part j; bit b set ⇔ box a of part i
    /// intersects box b of part j. adj[i][i] is empty.
    adj: Vec<Vec<Vec<Bitset>>>,
}

impl PairwiseGraphs {
    pub fn from_family(fam: &BoxFamily) -> Self {
        let sizes = fam.part_sizes();
        Self::from_predicate(&sizes, |i, a, j, b| {
            fam.box_at(i, a).intersects(fam.box_at(j, b))
        })
    }

    /// Build from an arbitrary symmetric predicate; `pred(i, a, j, b)` is
    /// queried once per unordered pair with i < j.
    pub fn from_predicate(
        sizes: &[usize],
        mut pred: impl FnMut(usize, usize, usize, usize) -> bool,
    ) -> Self {
        let r = sizes.len();
        let mut adj: Vec<Vec<Vec<Bitset>>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            Vec::new()
                        } else {
                            vec![Bitset::new(sizes[j]); sizes[i]]
                        }
                    })
                    .collect()
            })
            .collect();
        for i in 0..r {
            for j in i + 1..r {
                for a in 0..sizes[i] {
                    for b in 0..sizes[j] {
                        if pred(i, a, j, b) {
                            adj[i][j][a].set(b);
                            adj[j][i][b].set(a);
                        }
                    }
                }
            }
        }
        PairwiseGraphs {
            sizes: sizes.to_vec(),
            adj,
        }
    }

    pub fn num_parts(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn adjacent(&self, i: usize, a: usize, j: usize, b: usize) -> bool {
        self.adj[i][j][a].get(b)
    }

    /// Adjacency row of box a of part i against part j.
    pub fn row(&self, i: usize, a: usize, j: usize) -> &Bitset {
        &self.adj[i][j][a]
    }

    /// Number of intersecting cross pairs between two parts.
    pub fn adjacent_pair_count(&self, i: usize, j: usize) -> u64 {
        self.adj[i][j].iter().map(|row| row.count_ones() as u64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphReport {
    pub edge_count: u64,
    /// One index per part, in part order; present only when enumeration was
    /// requested.
    pub edges: Option<Vec<Vec<usize>>>,
}

/// Part order for backtracking: ascending by size, ties by index.
fn ascending_order(sizes: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&p| (sizes[p], p));
    order
}

fn count_rec(g: &PairwiseGraphs, order: &[usize], depth: usize, cands: &[Bitset]) -> u64 {
    if depth + 1 == order.len() {
        return cands[0].count_ones() as u64;
    }
    let mut total = 0;
    'boxes: for a in cands[0].iter_ones() {
        let mut next = Vec::with_capacity(cands.len() - 1);
        for k in 1..cands.len() {
            let mut c = cands[k].clone();
            c.and_assign(g.row(order[depth], a, order[depth + k]));
            if !c.any() {
                continue 'boxes;
            }
            next.push(c);
        }
        total += count_rec(g, order, depth + 1, &next);
    }
    total
}

/// Number of hyperedges of the pairwise structure (transversals with all
/// cross pairs adjacent).
pub fn count_in_graphs(g: &PairwiseGraphs) -> u64 {
    if g.sizes.iter().any(|&n| n == 0) {
        return 0;
    }
    let order = ascending_order(&g.sizes);
    let cands: Vec<Bitset> = order.iter().map(|&p| Bitset::full(g.sizes[p])).collect();
    count_rec(g, &order, 0, &cands)
}

pub fn count_hyperedges(fam: &BoxFamily) -> HypergraphReport {
    HypergraphReport {
        edge_count: count_in_graphs(&PairwiseGraphs::from_family(fam)),
        edges: None,
    }
}

fn enumerate_rec(
    g: &PairwiseGraphs,
    order: &[usize],
    depth: usize,
    cands: &[Bitset],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth + 1 == order.len() {
        for a in cands[0].iter_ones() {
            chosen.push(a);
            let mut edge = vec![0; order.len()];
            for (pos, &p) in order.iter().enumerate() {
                edge[p] = chosen[pos];
            }
            out.push(edge);
            chosen.pop();
        }
        return;
    }
    'boxes: for a in cands[0].iter_ones() {
        let mut next = Vec::with_capacity(cands.len() - 1);
        for k in 1..cands.len() {
            let mut c = cands[k].clone();
            c.and_assign(g.row(order[depth], a, order[depth + k]));
            if !c.any() {
                continue 'boxes;
            }
            next.push(c);
        }
        chosen.push(a);
        enumerate_rec(g, order, depth + 1, &next, chosen, out);
        chosen.pop();
    }
}

/// Like [`count_hyperedges`] but materializes the edge list, sorted
/// lexicographically by part indices.
pub fn enumerate_hyperedges(fam: &BoxFamily) -> HypergraphReport {
    let g = PairwiseGraphs::from_family(fam);
    let mut edges = Vec::new();
    if g.sizes.iter().all(|&n| n > 0) {
        let order = ascending_order(&g.sizes);
        let cands: Vec<Bitset> = order.iter().map(|&p| Bitset::full(g.sizes[p])).collect();
        enumerate_rec(&g, &order, 0, &cands, &mut Vec::new(), &mut edges);
    }
    edges.sort();
    HypergraphReport {
        edge_count: edges.len() as u64,
        edges: Some(edges),
    }
}

/// t box indices per part (sorted ascending), all cross pairs adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueWitness {
    pub parts: Vec<Vec<usize>>,
}

/// Three-valued search outcome: a budget stop is never reported as
/// "absent".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BicliqueSearch {
    Found(BicliqueWitness),
    Absent,
    BudgetExceeded { nodes: u64 },
}

impl BicliqueSearch {
    pub fn is_absent(&self) -> bool {
        matches!(self, BicliqueSearch::Absent)
    }

    pub fn is_found(&self) -> bool {
        matches!(self, BicliqueSearch::Found(_))
    }
}

enum SearchOut {
    Found,
    Absent,
    Budget,
}

struct BicliqueState<'a> {
    g: &'a PairwiseGraphs,
    order: Vec<usize>,
    t: usize,
    budget: u64,
    nodes: u64,
    /// prev_equal[part][a]: largest index < a whose object equals object a,
    /// if any. Equal objects have equal adjacency rows, so a canonical
    /// witness uses the lowest-indexed members of each equality class;
    /// choices violating that are skipped.
    prev_equal: Option<&'a [Vec<Option<usize>>]>,
    chosen: Vec<Vec<usize>>,
}

impl BicliqueState<'_> {
    fn enter_part(&mut self, pos: usize, cand_self: &Bitset, later: &[Bitset]) -> SearchOut {
        self.pick(pos, cand_self, later, 0)
    }

    fn pick(&mut self, pos: usize, cand_self: &Bitset, later: &[Bitset], start: usize) -> SearchOut {
        if self.chosen[pos].len() == self.t {
            if pos + 1 == self.order.len() {
                return SearchOut::Found;
            }
            return self.enter_part(pos + 1, &later[0], &later[1..]);
        }
        for a in cand_self.iter_ones() {
            if a < start {
                continue;
            }
            if let Some(pe) = self.prev_equal {
                if let Some(p) = pe[self.order[pos]][a] {
                    if !self.chosen[pos].contains(&p) {
                        continue;
                    }
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return SearchOut::Budget;
            }
            let mut next = Vec::with_capacity(later.len());
            let mut feasible = true;
            for (k, c) in later.iter().enumerate() {
                let mut c = c.clone();
                c.and_assign(self.g.row(self.order[pos], a, self.order[pos + 1 + k]));
                // part pos+1+k still needs t boxes in total
                if c.count_ones() < self.t {
                    feasible = false;
                    break;
                }
                next.push(c);
            }
            if !feasible {
                continue;
            }
            self.chosen[pos].push(a);
            match self.pick(pos, cand_self, &next, a + 1) {
                // leave the stack intact on Found so the witness can be
                // read off afterwards
                SearchOut::Absent => {
                    self.chosen[pos].pop();
                }
                other => return other,
            }
        }
        SearchOut::Absent
    }
}

/// Search for K_{t,…,t} in an arbitrary pairwise structure.
///
/// `prev_equal`, when given, must link only objects whose adjacency rows
/// coincide (e.g. equal boxes); it prunes permutations of interchangeable
/// vertices without affecting existence.
pub fn find_biclique_in_graphs(
    g: &PairwiseGraphs,
    prev_equal: Option<&[Vec<Option<usize>>]>,
    t: usize,
    budget: u64,
) -> Result<BicliqueSearch> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "forbidden pattern needs t ≥ 2, got {t}"
        )));
    }
    if g.sizes.iter().any(|&n| n < t) {
        return Ok(BicliqueSearch::Absent);
    }
    let order = ascending_order(&g.sizes);
    let cands: Vec<Bitset> = order.iter().map(|&p| Bitset::full(g.sizes[p])).collect();
    let mut state = BicliqueState {
        g,
        order: order.clone(),
        t,
        budget,
        nodes: 0,
        prev_equal,
        chosen: vec![Vec::with_capacity(t); order.len()],
    };
    match state.enter_part(0, &cands[0], &cands[1..]) {
        SearchOut::Found => {
            let mut parts = vec![Vec::new(); g.num_parts()];
            for (pos, &p) in state.order.iter().enumerate() {
                let mut picks = state.chosen[pos].clone();
                picks.sort_unstable();
                parts[p] = picks;
            }
            Ok(BicliqueSearch::Found(BicliqueWitness { parts }))
        }
        SearchOut::Absent => Ok(BicliqueSearch::Absent),
        SearchOut::Budget => Ok(BicliqueSearch::BudgetExceeded { nodes: state.nodes }),
    }
}

/// prev_equal links for multiset-equal boxes within each part.
pub fn equal_box_links(fam: &BoxFamily) -> Vec<Vec<Option<usize>>> {
    fam.parts()
        .iter()
        .map(|part| {
            (0..part.len())
                .map(|a| (0..a).rev().find(|&b| part[b] == part[a]))
                .collect()
        })
        .collect()
}

/// Exact search for a complete r-partite pattern with t boxes per part.
pub fn find_biclique(fam: &BoxFamily, t: usize, budget: u64) -> Result<BicliqueSearch> {
    let g = PairwiseGraphs::from_family(fam);
    let links = equal_box_links(fam);
    find_biclique_in_graphs(&g, Some(&links), t, budget)
}

/// Independent validity check of a witness against the family geometry.
pub fn verify_biclique(fam: &BoxFamily, w: &BicliqueWitness, t: usize) -> bool {
    if w.parts.len() != fam.num_parts() {
        return false;
    }
    for (j, picks) in w.parts.iter().enumerate() {
        if picks.len() != t {
            return false;
        }
        let mut sorted = picks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != t || sorted.iter().any(|&a| a >= fam.part(j).len()) {
            return false;
        }
    }
    for i in 0..w.parts.len() {
        for j in i + 1..w.parts.len() {
            for &a in &w.parts[i] {
                for &b in &w.parts[j] {
                    if !fam.box_at(i, a).intersects(fam.box_at(j, b)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
