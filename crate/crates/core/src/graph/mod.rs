//! The generalized Grassmann graph `G_r(m, n, Z_h)`: vertices are the
//! `m`-subspaces of `Z_h^n`, two distinct vertices adjacent when their
//! intersection has dimension greater than `m - r`.

mod clique;

pub use clique::{all_maximum_cliques, max_clique, max_independent_set, CliqueSearch};

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::RingContext;
use crate::subspace::{count_subspaces, dim_intersection, dual, materialize_subspaces, Subspace};

pub const DEFAULT_VERTEX_CAP: u64 = 2000;
pub const DEFAULT_EDGE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    ctx: RingContext,
    n: usize,
    m: usize,
    r: usize,
}

impl GraphSpec {
    /// Requires `2 <= r <= m + 1 <= n`.
    pub fn new(ctx: RingContext, n: usize, m: usize, r: usize) -> Result<Self> {
        if !(2 <= r && r <= m + 1 && m < n) {
            return Err(Error::InvalidParameters(format!("G_r(m,n) needs 2 <= r <= m+1 <= n, got r={r} m={m} n={n}")));
        }
        Ok(GraphSpec { ctx, n, m, r })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> BigUint {
        count_subspaces(&self.ctx, self.n, self.m)
    }

    /// Every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        // dim(A ∩ B) >= 2m - n always holds
        self.r == self.m + 1 || self.m + self.r > self.n
    }

    /// `G_r(n - m, n)`, the image under `X -> X^⊥`.
    pub fn dual_spec(&self) -> Result<GraphSpec> {
        GraphSpec::new(self.ctx.clone(), self.n, self.n - self.m, self.r)
    }
}

fn check_vertex(spec: &GraphSpec, a: &Subspace) -> Result<()> {
    if a.modulus() != spec.ctx.modulus() || a.ambient() != spec.n || a.dim() != spec.m {
        return Err(Error::Shape(format!(
            "{}-subspace of Z_{}^{} is not a vertex of G_{}({},{})",
            a.dim(),
            a.modulus(),
            a.ambient(),
            spec.r,
            spec.m,
            spec.n
        )));
    }
    Ok(())
}

/// `dim(A ∩ B) > m - r`.
pub fn adjacent(spec: &GraphSpec, a: &Subspace, b: &Subspace) -> Result<bool> {
    check_vertex(spec, a)?;
    check_vertex(spec, b)?;
    if a == b {
        return Ok(false);
    }
    Ok(dim_intersection(&spec.ctx, a, b)? + spec.r > spec.m)
}

fn adjacent_unchecked(spec: &GraphSpec, a: &Subspace, b: &Subspace) -> bool {
    a != b && dim_intersection(&spec.ctx, a, b).expect("vertices checked") + spec.r > spec.m
}

/// All vertices in enumeration order.
pub fn materialize_vertices(spec: &GraphSpec, cap: u64) -> Result<Vec<Subspace>> {
    materialize_subspaces(&spec.ctx, spec.n, spec.m, cap)
}

pub fn is_clique(spec: &GraphSpec, family: &[Subspace]) -> Result<bool> {
    pairwise(spec, family, true)
}

pub fn is_independent(spec: &GraphSpec, family: &[Subspace]) -> Result<bool> {
    pairwise(spec, family, false)
}

fn pairwise(spec: &GraphSpec, family: &[Subspace], want_adjacent: bool) -> Result<bool> {
    for a in family {
        check_vertex(spec, a)?;
    }
    let ok = (0..family.len()).into_par_iter().all(|i| {
        family[i + 1..].iter().all(|b| family[i] != *b && adjacent_unchecked(spec, &family[i], b) == want_adjacent)
    });
    Ok(ok)
}

/// Symmetric, irreflexive adjacency stored as one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    rows: Vec<FixedBitSet>,
}

impl AdjacencyGraph {
    /// Builds the graph on `0..n` from a symmetric relation, evaluated once
    /// per unordered pair.
    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let upper: Vec<Vec<usize>> =
            (0..n).into_par_iter().map(|i| (i + 1..n).filter(|&j| rel(i, j)).collect()).collect();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (i, js) in upper.into_iter().enumerate() {
            for j in js {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
        AdjacencyGraph { rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones(..)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].ones()
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|r| r.count_ones(..) as u64).sum::<u64>() / 2
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.ones().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn complement(&self) -> AdjacencyGraph {
        let n = self.rows.len();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut c = r.clone();
                c.toggle_range(..);
                c.set(i, false);
                c
            })
            .collect::<Vec<_>>();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        AdjacencyGraph { rows }
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(k, &i)| vs[k + 1..].iter().all(|&j| i != j && self.is_adjacent(i, j)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(k, &i)| vs[k + 1..].iter().all(|&j| i != j && !self.is_adjacent(i, j)))
    }

    /// Breadth-first search from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let n = self.rows.len();
        if n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for w in self.rows[v].ones() {
                if !seen.put(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.is_full()
    }
}

/// Adjacency among `vertices` under `spec`.
pub fn build_graph(spec: &GraphSpec, vertices: &[Subspace]) -> Result<AdjacencyGraph> {
    for v in vertices {
        check_vertex(spec, v)?;
    }
    Ok(AdjacencyGraph::from_relation(vertices.len(), |i, j| adjacent_unchecked(spec, &vertices[i], &vertices[j])))
}

/// Number of neighbours of one vertex. The graph is vertex transitive
/// (`GL_n(Z_h)` acts transitively on `m`-subspaces), so every vertex has
/// this degree.
pub fn vertex_degree(spec: &GraphSpec, vertices: &[Subspace]) -> Result<u64> {
    let Some(first) = vertices.first() else { return Ok(0) };
    check_vertex(spec, first)?;
    Ok(vertices.par_iter().filter(|v| adjacent_unchecked(spec, first, v)).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolverResult {
    pub size: usize,
    pub witness: Vec<Subspace>,
    pub complete: bool,
}

fn solve(spec: &GraphSpec, cap: u64, independent: bool) -> Result<SolverResult> {
    let vertices = materialize_vertices(spec, cap)?;
    let g = build_graph(spec, &vertices)?;
    let found = if independent { max_independent_set(&g, None) } else { max_clique(&g, None) };
    Ok(SolverResult {
        size: found.clique.len(),
        witness: found.clique.iter().map(|&i| vertices[i].clone()).collect(),
        complete: found.complete,
    })
}

/// Exact clique number with a witness, for graphs with at most `cap` vertices.
pub fn brute_force_max_clique(spec: &GraphSpec, cap: u64) -> Result<SolverResult> {
    solve(spec, cap, false)
}

/// Exact independence number with a witness, for graphs with at most `cap`
/// vertices.
pub fn brute_force_max_independent_set(spec: &GraphSpec, cap: u64) -> Result<SolverResult> {
    solve(spec, cap, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `X -> X^⊥` is an adjacency-preserving bijection.
    pub holds: bool,
    pub bijective: bool,
    pub adjacency_preserved: bool,
    /// Parameters satisfy `n <= 2m` and `r <= max(m + 1, n - m + 1)`.
    pub within_stated_range: bool,
    pub vertices: usize,
}

/// Exhaustively checks that `X -> X^⊥` maps `G_r(m, n)` isomorphically onto
/// `G_r(n - m, n)`.
pub fn dual_isomorphism_check(spec: &GraphSpec, cap: u64) -> Result<DualityReport> {
    let target = spec.dual_spec()?;
    let src = materialize_vertices(spec, cap)?;
    let dst = materialize_vertices(&target, cap)?;
    let index: HashMap<&Subspace, usize> = dst.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let images: Vec<Subspace> =
        src.par_iter().map(|x| dual(&spec.ctx, x)).collect::<Result<Vec<_>>>()?;
    let mut hit = vec![false; dst.len()];
    let mut bijective = src.len() == dst.len();
    for y in &images {
        match index.get(y) {
            Some(&i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
    }
    let g = build_graph(spec, &src)?;
    let adjacency_preserved = bijective
        && (0..src.len()).into_par_iter().all(|i| {
            (i + 1..src.len()).all(|j| g.is_adjacent(i, j) == adjacent_unchecked(&target, &images[i], &images[j]))
        });
    let (n, m, r) = (spec.n, spec.m, spec.r);
    Ok(DualityReport {
        holds: bijective && adjacency_preserved,
        bijective,
        adjacency_preserved,
        within_stated_range: n <= 2 * m && r <= (m + 1).max(n - m + 1),
        vertices: src.len(),
    })
}
