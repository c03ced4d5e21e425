//! Simultaneous normal form of a pair of subspaces:
//! `A = (0, I_k) T` and `B = (D, I_m) T` with `D` diagonal.

use serde::Serialize;

use super::{contains, Subspace};
use crate::error::{Error, Result};
use crate::matrix::{self, normal_form, MatrixZh};
use crate::ring::{ExponentVector, RingContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairNormalForm {
    /// Invertible `n x n`.
    pub t: MatrixZh,
    /// Number of nonzero diagonal entries of `D`.
    pub r: usize,
    /// Exponents of the `r` diagonal entries, nondecreasing per prime.
    pub exponents: Vec<ExponentVector>,
    pub k: usize,
    pub m: usize,
    pub n: usize,
}

impl PairNormalForm {
    /// The `m x (n - m)` block `D`.
    pub fn d_matrix(&self, ctx: &RingContext) -> MatrixZh {
        let diag: Vec<u64> = self.exponents.iter().map(|e| ctx.ideal_generator(e)).collect();
        MatrixZh::diagonal(ctx.modulus(), self.m, self.n - self.m, &diag)
    }

    /// `(0, I_k) T`.
    pub fn a_matrix(&self) -> MatrixZh {
        let idx: Vec<usize> = (self.n - self.k..self.n).collect();
        self.t.select_rows(&idx)
    }

    /// `(D, I_m) T`.
    pub fn b_matrix(&self, ctx: &RingContext) -> MatrixZh {
        let mut left = MatrixZh::zeros(ctx.modulus(), self.m, self.n);
        left.set_block(0, 0, &self.d_matrix(ctx));
        left.set_block(0, self.n - self.m, &MatrixZh::identity(ctx.modulus(), self.m));
        left.mul_unchecked(&self.t)
    }
}

struct LocalPair {
    t: MatrixZh,
    exps: Vec<u32>,
}

fn local_pair(lctx: &RingContext, a: &MatrixZh, b: &MatrixZh) -> Result<LocalPair> {
    let q = lctx.modulus();
    let s = lctx.factors()[0].exponent;
    let (k, m, n) = (a.rows(), b.rows(), a.cols());
    let w = n - k;

    // coordinates adapted to A: A = (0, I_k) T
    let mut t = matrix::complete_basis_front(lctx, a)?;
    let coords = b.mul_unchecked(&matrix::inverse(lctx, &t)?);
    let head: Vec<usize> = (0..w).collect();
    let tail: Vec<usize> = (w..n).collect();

    // diagonalize the part of B outside A; rows of B are recombined by S^{-1}
    let nf = normal_form(lctx, &coords.select_cols(&head))?;
    let mut lift_t1 = MatrixZh::identity(q, n);
    lift_t1.set_block(0, 0, &nf.t);
    t = lift_t1.mul_unchecked(&t);
    let mut rest = nf.s_inv.mul_unchecked(&coords.select_cols(&tail));
    let exps: Vec<u32> = nf.omega.iter().map(|e| e.0[0]).collect();

    // rows with a unit on the diagonal can have their A-part replaced freely;
    // choose it so that all A-parts together are independent
    let unit_rows: Vec<usize> = (0..exps.len()).filter(|&c| exps[c] == 0).collect();
    if !unit_rows.is_empty() {
        let others: Vec<usize> = (0..m).filter(|c| !unit_rows.contains(c)).collect();
        let basis = matrix::extend_to_basis(lctx, &rest.select_rows(&others))?;
        let mut shear = MatrixZh::identity(q, n);
        for (idx, &c) in unit_rows.iter().enumerate() {
            let target = basis.row(others.len() + idx).to_vec();
            for (j, &v) in target.iter().enumerate() {
                // T <- [[I, -X], [0, I]] T with X_c = target - current
                let x = lctx.sub(v, rest.get(c, j));
                shear.set(c, w + j, lctx.neg(x));
                rest.set(c, j, v);
            }
        }
        t = shear.mul_unchecked(&t);
    }

    // send the A-parts to (0, I_m)
    let c = matrix::complete_basis_front(lctx, &rest)?;
    let mut lift_c = MatrixZh::identity(q, n);
    lift_c.set_block(w, w, &c);
    t = lift_c.mul_unchecked(&t);

    let exps = exps.into_iter().filter(|&e| e < s).collect();
    Ok(LocalPair { t, exps })
}

/// Pair normal form for a `k`-subspace `A` and an `m`-subspace `B` with
/// `1 <= m <= k < n` and `B` not contained in `A`.
pub fn pair_normal_form(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<PairNormalForm> {
    let (k, m, n) = (a.dim(), b.dim(), a.ambient());
    if b.ambient() != n {
        return Err(Error::Shape(format!("ambient dimensions {n} and {} differ", b.ambient())));
    }
    if !(1 <= m && m <= k && k < n) {
        return Err(Error::Precondition(format!("need 1 <= m <= k < n, got m={m} k={k} n={n}")));
    }
    if contains(ctx, a, b)? {
        return Err(Error::Precondition("B is contained in A".into()));
    }
    let mut locals = Vec::with_capacity(ctx.num_primes());
    for (i, f) in ctx.factors().iter().enumerate() {
        let lctx = ctx.local(i)?;
        locals.push(local_pair(&lctx, &a.rep().reduce_to(f.modulus), &b.rep().reduce_to(f.modulus))?);
    }
    let r = locals.iter().map(|l| l.exps.len()).max().unwrap_or(0);
    let exponents: Vec<ExponentVector> = (0..r)
        .map(|c| {
            ExponentVector(
                locals.iter().zip(ctx.factors()).map(|(l, f)| l.exps.get(c).copied().unwrap_or(f.exponent)).collect(),
            )
        })
        .collect();
    let parts: Vec<MatrixZh> = locals.into_iter().map(|l| l.t).collect();
    let mut t = matrix::crt_lift_matrix(ctx, &parts)?;
    if ctx.num_primes() > 1 {
        for (c, e) in exponents.iter().enumerate() {
            let u = matrix::diagonal_unit(ctx, e);
            let u_inv = ctx.inv(u).expect("unit");
            for j in 0..n {
                t.set(c, j, ctx.mul(t.get(c, j), u_inv));
            }
        }
    }
    Ok(PairNormalForm { t, r, exponents, k, m, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(h: u64) -> RingContext {
        RingContext::new(h).unwrap()
    }

    fn sub(h: u64, rows: &[Vec<u64>]) -> Subspace {
        Subspace::from_matrix(&ctx(h), &MatrixZh::from_rows(h, rows).unwrap()).unwrap()
    }

    fn check(h: u64, a: &Subspace, b: &Subspace) -> PairNormalForm {
        let r = ctx(h);
        let pnf = pair_normal_form(&r, a, b).unwrap();
        assert!(matrix::is_invertible(&r, &pnf.t).unwrap());
        assert_eq!(&Subspace::from_matrix(&r, &pnf.a_matrix()).unwrap(), a);
        assert_eq!(&Subspace::from_matrix(&r, &pnf.b_matrix(&r)).unwrap(), b);
        assert_eq!(pnf.r, b.dim() - super::super::dim_intersection(&r, a, b).unwrap());
        pnf
    }

    #[test]
    fn examples() {
        let p = check(4, &sub(4, &[vec![0, 1]]), &sub(4, &[vec![2, 1]]));
        assert_eq!(p.r, 1);
        assert_eq!(p.exponents, vec![ExponentVector(vec![1])]);
        let p = check(4, &sub(4, &[vec![0, 1]]), &sub(4, &[vec![1, 1]]));
        assert_eq!(p.exponents, vec![ExponentVector(vec![0])]);
    }

    #[test]
    fn composite() {
        let a = sub(12, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = sub(12, &[vec![1, 0, 2, 0], vec![0, 1, 0, 3]]);
        let p = check(12, &a, &b);
        assert_eq!(p.r, 2);
        assert_eq!(p.exponents, vec![ExponentVector(vec![0, 0]), ExponentVector(vec![1, 1])]);
        check(6, &sub(6, &[vec![1, 0, 0]]), &sub(6, &[vec![2, 3, 0]]));
    }

    #[test]
    fn rejects_contained_or_bad_shape() {
        let r = ctx(4);
        let a = sub(4, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(pair_normal_form(&r, &a, &sub(4, &[vec![1, 1, 0]])).is_err());
        assert!(pair_normal_form(&r, &sub(4, &[vec![1, 0, 0]]), &a).is_err());
    }
}
