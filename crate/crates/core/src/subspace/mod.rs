//! Free submodules (`m`-subspaces) of `Z_h^n`.
//!
//! A subspace is stored by a canonical matrix representation. Over a local
//! ring `Z_{p^s}` this is the familiar reduced echelon form `(A_1, I_m) P`:
//! pivot columns are picked greedily from the left as long as they stay
//! independent modulo `p`, and the representation is normalised so those
//! columns form `I_m`. For composite `h` the same is done for each prime
//! power separately and the results are glued with the CRT; a single pivot
//! set need not exist then (the line spanned by `(2, 3)` in `Z_6^2` has no
//! unit coordinate).

mod count;
mod enumerate;
mod family;
mod pair;

pub use count::{count_containing, count_inside, count_subspaces, gaussian_binomial};
pub use enumerate::{enumerate_subspaces, materialize_subspaces, SubspaceIter, DEFAULT_ENUMERATION_CAP};
pub use family::{parse_family, write_family, Family};
pub use pair::{pair_normal_form, PairNormalForm};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, MatrixZh};
use crate::ring::{inv_mod, mul_mod, RingContext};

/// An `m`-subspace of `Z_h^n` in canonical form. Equal subspaces have equal
/// representations, so the derived comparisons are subspace comparisons.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subspace {
    rep: MatrixZh,
}

impl Subspace {
    /// Canonical subspace spanned by the rows of `a`; the rows must be
    /// linearly independent.
    pub fn from_matrix(ctx: &RingContext, a: &MatrixZh) -> Result<Self> {
        if a.modulus() != ctx.modulus() {
            return Err(Error::Shape(format!("matrix over Z_{} used with ring Z_{}", a.modulus(), ctx.modulus())));
        }
        if a.rows() > a.cols() {
            return Err(Error::NotASubspace);
        }
        if a.rows() == 0 {
            return Ok(Self::zero(ctx, a.cols()));
        }
        let mut locals = Vec::with_capacity(ctx.num_primes());
        for f in ctx.factors() {
            let local = local_canonical(&a.reduce_to(f.modulus), f.prime).ok_or(Error::NotASubspace)?;
            locals.push(local);
        }
        Ok(Subspace { rep: matrix::crt_lift_matrix(ctx, &locals)? })
    }

    pub fn zero(ctx: &RingContext, n: usize) -> Self {
        Subspace { rep: MatrixZh::zeros(ctx.modulus(), 0, n) }
    }

    pub fn whole(ctx: &RingContext, n: usize) -> Self {
        Subspace { rep: MatrixZh::identity(ctx.modulus(), n) }
    }

    /// Wraps a matrix already known to be canonical.
    pub(crate) fn from_canonical(rep: MatrixZh) -> Self {
        Subspace { rep }
    }

    pub fn dim(&self) -> usize {
        self.rep.rows()
    }

    pub fn ambient(&self) -> usize {
        self.rep.cols()
    }

    pub fn modulus(&self) -> u64 {
        self.rep.modulus()
    }

    pub fn rep(&self) -> &MatrixZh {
        &self.rep
    }

    pub fn into_rep(self) -> MatrixZh {
        self.rep
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.rep)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.rep, f)
    }
}

pub fn subspace_from_matrix(ctx: &RingContext, a: &MatrixZh) -> Result<Subspace> {
    Subspace::from_matrix(ctx, a)
}

/// Greedy-leftmost pivot columns of `a` over `F_p`, or `None` if the rows
/// are dependent modulo `p`.
pub(crate) fn pivot_columns(a: &MatrixZh, p: u64) -> Option<Vec<usize>> {
    let m = a.rows();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::with_capacity(m);
    let mut pivots = Vec::with_capacity(m);
    for j in 0..a.cols() {
        if pivots.len() == m {
            break;
        }
        let mut v: Vec<u64> = (0..m).map(|i| a.get(i, j) % p).collect();
        for (lead, b) in &basis {
            let c = v[*lead];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        if let Some(lead) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[lead], p).expect("nonzero residue mod a prime");
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            basis.push((lead, v));
            pivots.push(j);
        }
    }
    (pivots.len() == m).then_some(pivots)
}

/// Inverse of a square matrix over `Z_{p^s}` by Gauss-Jordan elimination,
/// or `None` if it is singular modulo `p`.
pub(crate) fn local_inverse(a: &MatrixZh, p: u64) -> Option<MatrixZh> {
    let q = a.modulus();
    let n = a.rows();
    let mut w = a.clone();
    let mut inv = MatrixZh::identity(q, n);
    for k in 0..n {
        let piv = (k..n).find(|&i| !w.get(i, k).is_multiple_of(p))?;
        if piv != k {
            for j in 0..n {
                let (x, y) = (w.get(k, j), w.get(piv, j));
                w.set(k, j, y);
                w.set(piv, j, x);
                let (x, y) = (inv.get(k, j), inv.get(piv, j));
                inv.set(k, j, y);
                inv.set(piv, j, x);
            }
        }
        let u = inv_mod(w.get(k, k), q).expect("unit pivot");
        for j in 0..n {
            w.set(k, j, mul_mod(w.get(k, j), u, q));
            inv.set(k, j, mul_mod(inv.get(k, j), u, q));
        }
        for i in 0..n {
            let c = w.get(i, k);
            if i == k || c == 0 {
                continue;
            }
            for j in 0..n {
                w.set(i, j, (w.get(i, j) + q - mul_mod(c, w.get(k, j), q)) % q);
                inv.set(i, j, (inv.get(i, j) + q - mul_mod(c, inv.get(k, j), q)) % q);
            }
        }
    }
    Some(inv)
}

/// Canonical representation over `Z_{p^s}`: `P^{-1} a` where `P` is the
/// submatrix on the greedy pivot columns.
pub(crate) fn local_canonical(a: &MatrixZh, p: u64) -> Option<MatrixZh> {
    let pivots = pivot_columns(a, p)?;
    let inv = local_inverse(&a.select_cols(&pivots), p)?;
    Some(inv.mul_unchecked(a))
}

fn check_pair(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<()> {
    if a.modulus() != ctx.modulus() || b.modulus() != ctx.modulus() {
        return Err(Error::Shape("subspace over a different ring".into()));
    }
    if a.ambient() != b.ambient() {
        return Err(Error::Shape(format!("ambient dimensions {} and {} differ", a.ambient(), b.ambient())));
    }
    Ok(())
}

/// `dim(A v B) = rho(A; B)`.
pub fn dim_join(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<usize> {
    check_pair(ctx, a, b)?;
    matrix::inner_rank(ctx, &a.rep.vstack(&b.rep)?)
}

/// `dim(A ∩ B) = dim A + dim B - dim(A v B)`.
pub fn dim_intersection(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<usize> {
    Ok(a.dim() + b.dim() - dim_join(ctx, a, b)?)
}

/// Image of `a` under `pi_i`, a subspace over `Z_{p_i^{s_i}}`.
pub fn pi_subspace(ctx: &RingContext, a: &Subspace, i: usize) -> Result<Subspace> {
    let local = ctx.local(i)?;
    Ok(Subspace { rep: matrix::pi_matrix(ctx, &a.rep, i)? }.recanonicalize(&local))
}

/// Image of `a` under `theta_i`; `None` when `h` is a prime power and the
/// complementary ring is trivial.
pub fn theta_subspace(ctx: &RingContext, a: &Subspace, i: usize) -> Result<Option<Subspace>> {
    let Some(comp) = ctx.complement(i)? else { return Ok(None) };
    let rep = matrix::theta_matrix(ctx, &a.rep, i)?;
    Ok(Some(Subspace { rep }.recanonicalize(&comp)))
}

impl Subspace {
    fn recanonicalize(self, ctx: &RingContext) -> Subspace {
        Subspace::from_matrix(ctx, &self.rep).expect("image of a subspace is a subspace")
    }
}

/// `min_i dim(pi_i A ∩ pi_i B)`.
pub fn dim_intersection_by_pi(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<usize> {
    check_pair(ctx, a, b)?;
    let mut best = usize::MAX;
    for i in 0..ctx.num_primes() {
        let local = ctx.local(i)?;
        let d = dim_intersection(&local, &pi_subspace(ctx, a, i)?, &pi_subspace(ctx, b, i)?)?;
        best = best.min(d);
    }
    Ok(best)
}

/// `min_i dim(theta_i A ∩ theta_i B)`, defined only when `h` has at least two
/// distinct prime factors.
pub fn dim_intersection_by_theta(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<Option<usize>> {
    check_pair(ctx, a, b)?;
    let mut best = None::<usize>;
    for i in 0..ctx.num_primes() {
        let Some(comp) = ctx.complement(i)? else { return Ok(None) };
        let ta = theta_subspace(ctx, a, i)?.expect("complement exists");
        let tb = theta_subspace(ctx, b, i)?.expect("complement exists");
        let d = dim_intersection(&comp, &ta, &tb)?;
        best = Some(best.map_or(d, |x| x.min(d)));
    }
    Ok(best)
}

/// Lifts one local subspace per prime power back to `Z_h`.
pub fn crt_lift_subspace(ctx: &RingContext, locals: &[Subspace]) -> Result<Subspace> {
    let reps: Vec<MatrixZh> = locals.iter().map(|s| s.rep.clone()).collect();
    if reps.iter().any(|r| r.rows() != reps[0].rows()) {
        return Err(Error::Shape("local subspaces differ in dimension".into()));
    }
    let lifted = matrix::crt_lift_matrix(ctx, &reps)?;
    // each local part is canonical already
    Ok(Subspace { rep: lifted })
}

/// `B ⊆ A`.
pub fn contains(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<bool> {
    Ok(dim_intersection(ctx, a, b)? == b.dim())
}

/// `A^⊥ = { y : x . y = 0 for all x in A }`, spanned by the transposed first
/// `n - m` columns of `T^{-1}` where `A = (0, I_m) T`.
pub fn dual(ctx: &RingContext, a: &Subspace) -> Result<Subspace> {
    let n = a.ambient();
    let m = a.dim();
    if a.modulus() != ctx.modulus() {
        return Err(Error::Shape("subspace over a different ring".into()));
    }
    let t = matrix::complete_basis_front(ctx, &a.rep)?;
    let t_inv = matrix::inverse(ctx, &t)?;
    let cols: Vec<usize> = (0..n - m).collect();
    Subspace::from_matrix(ctx, &t_inv.select_cols(&cols).transpose())
}

/// `dim A + dim B - 2 dim(A ∩ B)`.
pub fn subspace_distance(ctx: &RingContext, a: &Subspace, b: &Subspace) -> Result<usize> {
    let i = dim_intersection(ctx, a, b)?;
    Ok(a.dim() + b.dim() - 2 * i)
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

    #[test]
    fn canonical_examples() {
        let a = sub(4, &[vec![2, 1]]);
        assert_eq!(a, sub(4, &[vec![2, 3]]));
        assert_eq!(a.rep().row(0), &[2, 1]);
        assert_eq!(sub(6, &[vec![0, 1], vec![1, 0]]).rep(), &MatrixZh::identity(6, 2));
        assert_eq!(sub(6, &[vec![1, 0], vec![0, 1]]).rep(), &MatrixZh::identity(6, 2));
        // no unit coordinate, still a subspace
        let c = sub(6, &[vec![2, 3]]);
        assert_eq!(c, sub(6, &[vec![4, 3]]));
        assert_eq!(c.rep().row(0), &[4, 3]);
        let bad = MatrixZh::from_rows(4, &[vec![2, 0]]).unwrap();
        assert_eq!(Subspace::from_matrix(&ctx(4), &bad), Err(Error::NotASubspace));
    }

    #[test]
    fn dimension_examples() {
        let r4 = ctx(4);
        let a = sub(4, &[vec![1, 0]]);
        let b = sub(4, &[vec![1, 2]]);
        assert_eq!(dim_join(&r4, &a, &b).unwrap(), 2);
        assert_eq!(dim_intersection(&r4, &a, &b).unwrap(), 0);
        assert_eq!(dim_intersection(&r4, &a, &a).unwrap(), 1);
        let r2 = ctx(2);
        let x = sub(2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let y = sub(2, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(dim_intersection(&r2, &x, &y).unwrap(), 0);
        assert_eq!(dim_join(&r2, &x, &y).unwrap(), 4);
        assert_eq!(subspace_distance(&r2, &x, &y).unwrap(), 4);
        assert_eq!(subspace_distance(&r2, &x, &x).unwrap(), 0);
        let z = sub(2, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
        assert_eq!(subspace_distance(&r2, &x, &z).unwrap(), 2);
    }

    #[test]
    fn containment_examples() {
        let r2 = ctx(2);
        let x = sub(2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert!(contains(&r2, &x, &Subspace::zero(&r2, 4)).unwrap());
        assert!(contains(&r2, &x, &sub(2, &[vec![1, 0, 0, 0]])).unwrap());
        assert!(!contains(&ctx(4), &sub(4, &[vec![0, 1]]), &sub(4, &[vec![2, 1]])).unwrap());
    }

    #[test]
    fn dual_examples() {
        let r6 = ctx(6);
        assert_eq!(dual(&r6, &sub(6, &[vec![0, 1]])).unwrap(), sub(6, &[vec![1, 0]]));
        let r4 = ctx(4);
        let a = sub(4, &[vec![1, 1]]);
        let d = dual(&r4, &a).unwrap();
        assert_eq!(d, sub(4, &[vec![1, 3]]));
        assert_eq!(dual(&r4, &d).unwrap(), a);
        assert_eq!(dual(&r6, &Subspace::zero(&r6, 3)).unwrap(), Subspace::whole(&r6, 3));
    }

    #[test]
    fn projections() {
        let r12 = ctx(12);
        let a = sub(12, &[vec![1, 2, 0], vec![0, 3, 1]]);
        let b = sub(12, &[vec![1, 0, 0], vec![0, 1, 1]]);
        let d = dim_intersection(&r12, &a, &b).unwrap();
        assert_eq!(dim_intersection_by_pi(&r12, &a, &b).unwrap(), d);
        assert_eq!(dim_intersection_by_theta(&r12, &a, &b).unwrap(), Some(d));
        assert_eq!(dim_intersection_by_theta(&ctx(4), &sub(4, &[vec![1, 0]]), &sub(4, &[vec![1, 0]])).unwrap(), None);
    }
}
