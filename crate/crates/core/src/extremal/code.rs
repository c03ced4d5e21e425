//! Subspace codes: independent sets of `G_r(m, n, Z_h)`, i.e. families
//! with pairwise distance at least `2r`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::bounds::{alpha_bounds, BoundsReport};
use crate::error::{Error, Result};
use crate::graph::{adjacent, build_graph, is_independent, materialize_vertices, max_independent_set, GraphSpec};
use crate::ring::RingContext;
use crate::subspace::{crt_lift_subspace, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeBudget {
    /// Largest graph searched exactly.
    pub exact_vertex_cap: u64,
    /// Search nodes per exact search.
    pub node_budget: Option<u64>,
    /// Largest vertex set materialized at all.
    pub enumeration_cap: u64,
}

impl Default for CodeBudget {
    fn default() -> Self {
        CodeBudget { exact_vertex_cap: 2000, node_budget: Some(5_000_000), enumeration_cap: 200_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeMethod {
    /// Complete graph: any single vertex.
    Trivial,
    /// Branch and bound on the whole graph.
    Exact,
    /// Per-prime codes combined through the CRT.
    ProductLift,
    /// First-fit over the vertex enumeration.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeResult {
    pub code: Vec<Subspace>,
    pub size: usize,
    pub method: CodeMethod,
    /// Every search that ran finished within its budget.
    pub search_complete: bool,
    pub verified_independent: bool,
    /// The size equals an upper bound, or an exact search finished.
    pub optimal: bool,
    pub bounds: BoundsReport,
}

/// Combines independent sets over each `Z_{p^s}` into one over `Z_h`; the
/// result has the product of their sizes, first prime most significant.
pub fn lift_independent_product(ctx: &RingContext, locals: &[Vec<Subspace>]) -> Result<Vec<Subspace>> {
    if locals.len() != ctx.num_primes() {
        return Err(Error::InvalidParameters(format!("expected {} local families, got {}", ctx.num_primes(), locals.len())));
    }
    for (f, fam) in ctx.factors().iter().zip(locals) {
        if fam.iter().any(|s| s.modulus() != f.modulus) {
            return Err(Error::InvalidParameters(format!("local family must live over Z_{}", f.modulus)));
        }
    }
    if locals.iter().any(|f| f.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; locals.len()];
    loop {
        let parts: Vec<Subspace> = locals.iter().zip(&digits).map(|(l, &d)| l[d].clone()).collect();
        out.push(crt_lift_subspace(ctx, &parts)?);
        let mut k = locals.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < locals[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn greedy(spec: &GraphSpec, vertices: &[Subspace]) -> Result<Vec<Subspace>> {
    let mut code: Vec<Subspace> = Vec::new();
    for v in vertices {
        let mut free = true;
        for c in &code {
            if adjacent(spec, c, v)? {
                free = false;
                break;
            }
        }
        if free {
            code.push(v.clone());
        }
    }
    Ok(code)
}

/// Largest code found on one graph, and whether the search was exact.
fn search_one(spec: &GraphSpec, budget: &CodeBudget) -> Result<(Vec<Subspace>, bool)> {
    let count = spec.vertex_count();
    if count.to_u64().is_some_and(|v| v <= budget.exact_vertex_cap) {
        let vertices = materialize_vertices(spec, budget.exact_vertex_cap)?;
        let found = max_independent_set(&build_graph(spec, &vertices)?, budget.node_budget);
        return Ok((found.clique.iter().map(|&i| vertices[i].clone()).collect(), found.complete));
    }
    let vertices = materialize_vertices(spec, budget.enumeration_cap)?;
    Ok((greedy(spec, &vertices)?, false))
}

/// Searches for a large code in `G_r(m, n, Z_h)` and certifies it against
/// the known bounds.
pub fn search_code(spec: &GraphSpec, budget: &CodeBudget) -> Result<CodeResult> {
    let ctx = spec.ctx();
    let bounds = alpha_bounds(spec, None, budget.exact_vertex_cap, budget.node_budget)?;
    let small = spec.vertex_count().to_u64().is_some_and(|v| v <= budget.exact_vertex_cap);
    let (mut code, method, search_complete) = if spec.is_complete() {
        let first = materialize_vertices(spec, budget.enumeration_cap.max(1))?.swap_remove(0);
        (vec![first], CodeMethod::Trivial, true)
    } else if small || ctx.num_primes() == 1 {
        let (code, done) = search_one(spec, budget)?;
        (code, if small { CodeMethod::Exact } else { CodeMethod::Greedy }, done)
    } else {
        let mut locals = Vec::new();
        for i in 0..ctx.num_primes() {
            let local = GraphSpec::new(ctx.local(i)?, spec.n(), spec.m(), spec.r())?;
            locals.push(search_one(&local, budget)?.0);
        }
        (lift_independent_product(ctx, &locals)?, CodeMethod::ProductLift, false)
    };
    code.sort();
    let size = BigUint::from(code.len());
    let optimal = (method == CodeMethod::Exact && search_complete) || method == CodeMethod::Trivial || size == bounds.best_upper();
    Ok(CodeResult {
        verified_independent: is_independent(spec, &code)?,
        size: code.len(),
        code,
        method,
        search_complete,
        optimal,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_lift_over_z6() {
        let spec = GraphSpec::new(RingContext::new(6).unwrap(), 4, 2, 2).unwrap();
        let budget = CodeBudget { exact_vertex_cap: 200, ..CodeBudget::default() };
        let res = search_code(&spec, &budget).unwrap();
        assert_eq!(res.method, CodeMethod::ProductLift);
        assert_eq!(res.size, 50);
        assert!(res.verified_independent && res.optimal);
    }

    #[test]
    fn exact_small() {
        let spec = GraphSpec::new(RingContext::new(2).unwrap(), 4, 2, 2).unwrap();
        let res = search_code(&spec, &CodeBudget::default()).unwrap();
        assert_eq!((res.method, res.size), (CodeMethod::Exact, 5));
        assert!(res.optimal && res.verified_independent);
        let spec = GraphSpec::new(RingContext::new(2).unwrap(), 4, 2, 3).unwrap();
        assert_eq!(search_code(&spec, &CodeBudget::default()).unwrap().size, 1);
    }

    #[test]
    fn lift_rejects_wrong_ring() {
        let ctx = RingContext::new(6).unwrap();
        let z2 = RingContext::new(2).unwrap();
        let fam = vec![Subspace::zero(&z2, 2)];
        assert!(lift_independent_product(&ctx, &[fam.clone(), fam]).is_err());
    }
}
