//! Exact maximum clique search: branch and bound over bitsets with a greedy
//! colouring bound (the colour class count bounds the clique size in the
//! candidate set).

use fixedbitset::FixedBitSet;

use super::AdjacencyGraph;
use crate::error::{Error, Result};

/// Outcome of a clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    /// Best clique found, as sorted vertex indices.
    pub clique: Vec<usize>,
    /// `false` if the node budget ran out before the search finished; the
    /// clique is then only a lower bound.
    pub complete: bool,
    /// Search nodes expanded.
    pub nodes: u64,
}

struct Search<'a> {
    adj: &'a [FixedBitSet],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    // enumeration mode: collect all cliques of exactly this size
    target: Option<usize>,
    found: Vec<Vec<usize>>,
    found_cap: usize,
}

impl Search<'_> {
    fn colour_sort(&self, p: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count_ones(..));
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = p.clone();
        let mut k = 0;
        while !uncoloured.is_clear() {
            k += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.minimum() {
                uncoloured.set(v, false);
                q.set(v, false);
                q.difference_with(&self.adj[v]);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn pruned(&self, size: usize, bound: usize) -> bool {
        match self.target {
            Some(t) => size + bound < t,
            None => size + bound <= self.best.len(),
        }
    }

    fn expand(&mut self, p: FixedBitSet, clique: &mut Vec<usize>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let (order, colours) = self.colour_sort(&p);
        let mut p = p;
        for idx in (0..order.len()).rev() {
            if self.pruned(clique.len(), colours[idx]) {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let mut next = p.clone();
            next.intersect_with(&self.adj[v]);
            if next.is_clear() {
                self.record(clique);
            } else {
                self.expand(next, clique);
            }
            clique.pop();
            p.set(v, false);
            if self.aborted {
                return;
            }
        }
    }

    fn record(&mut self, clique: &[usize]) {
        match self.target {
            Some(t) if clique.len() == t => {
                if self.found.len() >= self.found_cap {
                    self.aborted = true;
                    return;
                }
                let mut c = clique.to_vec();
                c.sort_unstable();
                self.found.push(c);
            }
            Some(_) => {}
            None => {
                if clique.len() > self.best.len() {
                    self.best = clique.to_vec();
                }
            }
        }
    }
}

fn full_set(n: usize) -> FixedBitSet {
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    p
}

/// Maximum clique, exploring at most `node_budget` search nodes.
pub fn max_clique(g: &AdjacencyGraph, node_budget: Option<u64>) -> CliqueSearch {
    let n = g.vertex_count();
    if n == 0 {
        return CliqueSearch { clique: Vec::new(), complete: true, nodes: 0 };
    }
    let mut s = Search {
        adj: g.rows(),
        best: vec![0],
        nodes: 0,
        budget: node_budget.unwrap_or(u64::MAX),
        aborted: false,
        target: None,
        found: Vec::new(),
        found_cap: 0,
    };
    s.expand(full_set(n), &mut Vec::new());
    let mut clique = s.best;
    clique.sort_unstable();
    CliqueSearch { clique, complete: !s.aborted, nodes: s.nodes }
}

/// Maximum independent set: a maximum clique of the complement.
pub fn max_independent_set(g: &AdjacencyGraph, node_budget: Option<u64>) -> CliqueSearch {
    max_clique(&g.complement(), node_budget)
}

/// Every clique of exactly `size` vertices, where `size` is the clique
/// number. Fails once more than `cap` are found.
pub fn all_maximum_cliques(g: &AdjacencyGraph, size: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if size == 0 || n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut s = Search {
        adj: g.rows(),
        best: Vec::new(),
        nodes: 0,
        budget: u64::MAX,
        aborted: false,
        target: Some(size),
        found: Vec::new(),
        found_cap: cap,
    };
    s.expand(full_set(n), &mut Vec::new());
    if s.aborted {
        return Err(Error::cap("maximum clique enumeration", format!("more than {cap}"), cap as u64));
    }
    let mut found = s.found;
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> AdjacencyGraph {
        AdjacencyGraph::from_relation(n, |i, j| (i + 1) % n == j || (j + 1) % n == i)
    }

    #[test]
    fn small_graphs() {
        let c5 = cycle(5);
        assert_eq!(max_clique(&c5, None).clique.len(), 2);
        assert_eq!(max_independent_set(&c5, None).clique.len(), 2);
        let k6 = AdjacencyGraph::from_relation(6, |_, _| true);
        assert_eq!(max_clique(&k6, None).clique, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(max_independent_set(&k6, None).clique.len(), 1);
        assert_eq!(all_maximum_cliques(&c5, 2, 100).unwrap().len(), 5);
        let empty = AdjacencyGraph::from_relation(0, |_, _| true);
        assert!(max_clique(&empty, None).clique.is_empty());
    }

    #[test]
    fn matches_exhaustive_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=14);
            let edges: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(0.5)).collect();
            let g = AdjacencyGraph::from_relation(n, |i, j| edges[i.min(j) * n + i.max(j)]);
            let mut best = 0;
            let mut count = 0;
            for mask in 1u32..(1 << n) {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if g.is_clique(&vs) {
                    if vs.len() > best {
                        best = vs.len();
                        count = 0;
                    }
                    if vs.len() == best {
                        count += 1;
                    }
                }
            }
            let found = max_clique(&g, None);
            assert!(found.complete);
            assert_eq!(found.clique.len(), best);
            assert!(g.is_clique(&found.clique));
            assert_eq!(all_maximum_cliques(&g, best, 10_000).unwrap().len(), count);
        }
    }

    #[test]
    fn budget_reports_incomplete() {
        let g = AdjacencyGraph::from_relation(40, |i, j| (i * 7 + j * 3) % 5 != 0);
        let r = max_clique(&g, Some(1));
        assert!(!r.complete);
    }
}
