//! Closed-form extremal quantities for `G_r(m, n, Z_h)`: clique number,
//! the intersecting-family bound, independence-number bounds, plus the
//! maximum-clique families and subspace-code search built on them.

mod bounds;
mod code;
mod ekr;
mod family;

pub use bounds::{alpha_bounds, BoundsReport, LowerBoundSource};
pub use code::{lift_independent_product, search_code, CodeBudget, CodeMethod, CodeResult};
pub use ekr::{is_r_intersecting, verify_ekr, EkrReport};
pub use family::{build_family, classify_maximum_clique, family_contains, family_size, Classification, FamilyDescriptor};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::ring::RingContext;
use crate::subspace::gaussian_binomial;

/// `prod_i p_i^{(s_i - 1) e} [a b]_{p_i}`.
pub(crate) fn lifted_gaussian(ctx: &RingContext, e: usize, a: usize, b: usize) -> BigUint {
    ctx.factors().iter().fold(BigUint::one(), |acc, f| {
        acc * BigUint::from(f.prime).pow((f.exponent as usize - 1) as u32 * e as u32) * gaussian_binomial(a, b, f.prime)
    })
}

/// Clique number of `G_r(m, n, Z_h)`. For `n < 2m` the graph is read through
/// the isomorphism `X -> X^⊥` onto `G_r(n - m, n, Z_h)`.
pub fn clique_number(spec: &GraphSpec) -> BigUint {
    let (n, r) = (spec.n(), spec.r());
    if spec.is_complete() {
        return spec.vertex_count();
    }
    let m = spec.m().min(n - spec.m());
    lifted_gaussian(spec.ctx(), (n - m) * (r - 1), n - m + r - 1, r - 1)
}

/// Largest possible `r`-intersecting family of `m`-subspaces of `Z_h^n`,
/// for `n / 2 >= m >= r`.
pub fn ekr_bound(ctx: &RingContext, n: usize, m: usize, r: usize) -> Result<BigUint> {
    if !(n / 2 >= m && m >= r) {
        return Err(Error::InvalidParameters(format!("intersecting-family bound needs n/2 >= m >= r, got n={n} m={m} r={r}")));
    }
    Ok(lifted_gaussian(ctx, (n - m) * (m - r), n - r, m - r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(h: u64, n: usize, m: usize, r: usize) -> GraphSpec {
        GraphSpec::new(RingContext::new(h).unwrap(), n, m, r).unwrap()
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&spec(2, 4, 2, 2)), BigUint::from(7u32));
        assert_eq!(clique_number(&spec(3, 4, 2, 2)), BigUint::from(13u32));
        assert_eq!(clique_number(&spec(4, 4, 2, 2)), BigUint::from(28u32));
        assert_eq!(clique_number(&spec(6, 4, 2, 2)), BigUint::from(91u32));
        assert_eq!(clique_number(&spec(4, 3, 1, 2)), BigUint::from(28u32));
        assert_eq!(clique_number(&spec(2, 4, 2, 3)), BigUint::from(35u32));
        // n < 2m goes through the dual graph
        assert_eq!(clique_number(&spec(2, 4, 3, 2)), BigUint::from(15u32));
    }

    #[test]
    fn ekr_values() {
        let r2 = RingContext::new(2).unwrap();
        let r6 = RingContext::new(6).unwrap();
        assert_eq!(ekr_bound(&r2, 4, 2, 1).unwrap(), BigUint::from(7u32));
        assert_eq!(ekr_bound(&r2, 4, 2, 2).unwrap(), BigUint::one());
        assert_eq!(ekr_bound(&r6, 4, 2, 1).unwrap(), BigUint::from(91u32));
        assert!(ekr_bound(&r6, 3, 2, 1).is_err());
    }
}
