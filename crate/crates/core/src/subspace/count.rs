use num_bigint::BigUint;
use num_traits::One;

use crate::ring::RingContext;

/// Gaussian binomial coefficient `[n k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// `prod_i p_i^{(s_i - 1) e} [a b]_{p_i}`.
fn product_formula(ctx: &RingContext, e: usize, a: usize, b: usize) -> BigUint {
    ctx.factors().iter().fold(BigUint::one(), |acc, f| {
        let lift = BigUint::from(f.prime).pow((f.exponent as usize - 1) as u32 * e as u32);
        acc * lift * gaussian_binomial(a, b, f.prime)
    })
}

/// Number of `k`-subspaces of `Z_h^n`.
pub fn count_subspaces(ctx: &RingContext, n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    product_formula(ctx, k * (n - k), n, k)
}

/// Number of `m`-subspaces inside a fixed `k`-subspace.
pub fn count_inside(ctx: &RingContext, k: usize, m: usize) -> BigUint {
    count_subspaces(ctx, k, m)
}

/// Number of `k`-subspaces of `Z_h^n` containing a fixed `m`-subspace.
pub fn count_containing(ctx: &RingContext, n: usize, k: usize, m: usize) -> BigUint {
    if m > k || k > n {
        return BigUint::default();
    }
    product_formula(ctx, (k - m) * (n - k), n - m, k - m)
}
