//! Bounds on the independence number of `G_r(m, n, Z_h)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{clique_number, ekr_bound};
use crate::bigjson::{big, opt_big};
use crate::error::{Error, Result};
use crate::graph::{build_graph, materialize_vertices, max_independent_set, GraphSpec};
use crate::ring::RingContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundSource {
    /// Lifted from exact independence numbers over the prime fields.
    LocalExact,
    /// Lifted from independent sets over the prime fields found by a search
    /// that hit its node budget.
    LocalSearch,
    /// Lifted from caller-supplied prime-field independence numbers.
    Supplied,
    /// Partial spread construction (`r = m`).
    PartialSpread,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    #[serde(serialize_with = "big")]
    pub vertices: BigUint,
    #[serde(serialize_with = "big")]
    pub omega: BigUint,
    /// Largest `(m - r + 1)`-intersecting family, when `n >= 2m`.
    #[serde(serialize_with = "opt_big")]
    pub ekr_bound: Option<BigUint>,
    #[serde(serialize_with = "opt_big")]
    pub alpha_lower: Option<BigUint>,
    pub alpha_lower_source: Option<LowerBoundSource>,
    #[serde(serialize_with = "opt_big")]
    pub alpha_lower_partial_spread: Option<BigUint>,
    /// `floor(|V| / omega)`; holds for every vertex-transitive graph.
    #[serde(serialize_with = "big")]
    pub alpha_upper_transitive: BigUint,
    #[serde(serialize_with = "opt_big")]
    pub alpha_upper_floor_chain: Option<BigUint>,
    #[serde(serialize_with = "opt_big")]
    pub alpha_exact: Option<BigUint>,
}

impl BoundsReport {
    /// Smallest available upper bound.
    pub fn best_upper(&self) -> BigUint {
        [Some(&self.alpha_upper_transitive), self.alpha_upper_floor_chain.as_ref(), self.alpha_exact.as_ref()]
            .into_iter()
            .flatten()
            .min()
            .cloned()
            .expect("transitive bound always present")
    }
}

fn pow(p: u64, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn floor(x: &BigRational) -> BigUint {
    x.floor().to_integer().to_biguint().expect("nonnegative")
}

/// `prod_i p_i^{(s_i - 1)(n - m)} (p_i^a - 1) / (p_i^b - 1)`.
fn beta(ctx: &RingContext, n: usize, m: usize, a: usize, b: usize) -> BigRational {
    ctx.factors().iter().fold(BigRational::one(), |acc, f| {
        let lift = pow(f.prime, (f.exponent as usize - 1) * (n - m));
        acc * ratio(lift * (pow(f.prime, a) - 1u32), pow(f.prime, b) - 1u32)
    })
}

fn floor_chain(ctx: &RingContext, n: usize, m: usize, r: usize) -> Option<BigUint> {
    if !(n > m && m >= 2 && r <= m) {
        return None;
    }
    let mut val = BigUint::one();
    for j in (0..=m - r).rev() {
        val = floor(&(beta(ctx, n, m, n - j, m - j) * ratio(val, BigUint::one())));
    }
    Some(val)
}

fn exact_spread(ctx: &RingContext, n: usize, m: usize, r: usize) -> Option<BigUint> {
    (r == m && m >= 2 && n > m && n.is_multiple_of(m)).then(|| beta(ctx, n, m, n, m).to_integer().to_biguint().expect("positive"))
}

fn partial_spread(ctx: &RingContext, n: usize, m: usize, r: usize) -> Option<BigUint> {
    if !(r == m && m >= 2 && n > m) {
        return None;
    }
    let l = n % m;
    let value = ctx.factors().iter().fold(BigRational::one(), |acc, f| {
        let p = f.prime;
        let lift = pow(p, (f.exponent as usize - 1) * (n - m));
        let num = pow(p, n) - pow(p, m) * (pow(p, l) - 1u32) - 1u32;
        acc * ratio(lift * num, pow(p, m) - 1u32)
    });
    Some(floor(&value))
}

/// Independence number of `G_r(m, n, F_p)` by search, with whether the
/// search finished.
fn local_alpha(p: u64, n: usize, m: usize, r: usize, vertex_cap: u64, node_budget: Option<u64>) -> Result<Option<(BigUint, bool)>> {
    let spec = GraphSpec::new(RingContext::new(p)?, n, m, r)?;
    if spec.is_complete() {
        return Ok(Some((BigUint::one(), true)));
    }
    if spec.vertex_count().to_u64().is_none_or(|v| v > vertex_cap) {
        return Ok(None);
    }
    let vertices = materialize_vertices(&spec, vertex_cap)?;
    let found = max_independent_set(&build_graph(&spec, &vertices)?, node_budget);
    Ok(Some((BigUint::from(found.clique.len()), found.complete)))
}

/// Every bound whose hypotheses hold. `alpha_local`, when given, holds the
/// independence numbers of `G_r(m, n, F_p)` for the primes of `h` in
/// increasing order; otherwise they are searched for on graphs with at most
/// `local_vertex_cap` vertices.
pub fn alpha_bounds(
    spec: &GraphSpec,
    alpha_local: Option<&[BigUint]>,
    local_vertex_cap: u64,
    node_budget: Option<u64>,
) -> Result<BoundsReport> {
    let ctx = spec.ctx();
    let (n, m, r) = (spec.n(), spec.m(), spec.r());
    let vertices = spec.vertex_count();
    let omega = clique_number(spec);
    let transitive = &vertices / &omega;

    if spec.is_complete() {
        return Ok(BoundsReport {
            vertices,
            ekr_bound: (n >= 2 * m).then(|| omega.clone()),
            omega,
            alpha_lower: Some(BigUint::one()),
            alpha_lower_source: None,
            alpha_lower_partial_spread: None,
            alpha_upper_transitive: transitive,
            alpha_upper_floor_chain: None,
            alpha_exact: Some(BigUint::one()),
        });
    }

    let mut lower: Option<(BigUint, LowerBoundSource)> = None;
    if n >= 2 * m {
        let locals: Option<(Vec<BigUint>, LowerBoundSource)> = match alpha_local {
            Some(v) => {
                if v.len() != ctx.num_primes() {
                    return Err(Error::InvalidParameters(format!(
                        "expected {} local independence numbers, got {}",
                        ctx.num_primes(),
                        v.len()
                    )));
                }
                Some((v.to_vec(), LowerBoundSource::Supplied))
            }
            None => {
                let mut vals = Vec::new();
                let mut complete = true;
                for f in ctx.factors() {
                    match local_alpha(f.prime, n, m, r, local_vertex_cap, node_budget)? {
                        Some((a, done)) => {
                            vals.push(a);
                            complete &= done;
                        }
                        None => break,
                    }
                }
                let source = if complete { LowerBoundSource::LocalExact } else { LowerBoundSource::LocalSearch };
                (vals.len() == ctx.num_primes()).then_some((vals, source))
            }
        };
        if let Some((vals, source)) = locals {
            let product = ctx.factors().iter().zip(&vals).fold(BigUint::one(), |acc, (f, a)| {
                acc * pow(f.prime, (f.exponent as usize - 1) * (n - m) * (m - r + 1)) * a
            });
            lower = Some((product, source));
        }
    }
    let spread = partial_spread(ctx, n, m, r);
    if let Some(s) = &spread {
        if lower.as_ref().is_none_or(|(l, _)| s > l) {
            lower = Some((s.clone(), LowerBoundSource::PartialSpread));
        }
    }
    let (alpha_lower, alpha_lower_source) = match lower {
        Some((l, s)) if !l.is_zero() => (Some(l), Some(s)),
        _ => (None, None),
    };

    Ok(BoundsReport {
        vertices,
        ekr_bound: if n >= 2 * m { Some(ekr_bound(ctx, n, m, m - r + 1)?) } else { None },
        omega,
        alpha_lower,
        alpha_lower_source,
        alpha_lower_partial_spread: spread,
        alpha_upper_transitive: transitive,
        alpha_upper_floor_chain: floor_chain(ctx, n, m, r),
        alpha_exact: exact_spread(ctx, n, m, r),
    })
}
