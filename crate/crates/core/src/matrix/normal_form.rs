use serde::Serialize;

use super::local::local_smith;
use super::MatrixZh;
use crate::error::{Error, Result};
use crate::ring::{ExponentVector, RingContext};

/// Certificate `A = S * D(omega) * T` with `S`, `T` invertible.
///
/// `omega[c]` is the exponent vector of the `c`-th diagonal entry
/// `prod_i p_i^{omega[c][i]}`; for each prime the exponents are
/// nondecreasing in `c`, which makes `omega` unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalNormalForm {
    pub s: MatrixZh,
    pub s_inv: MatrixZh,
    pub t: MatrixZh,
    pub t_inv: MatrixZh,
    pub omega: Vec<ExponentVector>,
    rows: usize,
    cols: usize,
}

impl DiagonalNormalForm {
    /// The `m x n` diagonal matrix `D(omega)`.
    pub fn diagonal(&self, ctx: &RingContext) -> MatrixZh {
        let diag: Vec<u64> = self.omega.iter().map(|a| ctx.ideal_generator(a)).collect();
        MatrixZh::diagonal(ctx.modulus(), self.rows, self.cols, &diag)
    }

    /// Inner rank: `max { c : omega_c != (s_1..s_t) }`.
    pub fn inner_rank(&self, ctx: &RingContext) -> usize {
        let full = ctx.full_exponents();
        self.omega.iter().filter(|a| **a != full).count()
    }

    /// McCoy rank: `max { c : omega_c = 0 }`.
    pub fn mccoy_rank(&self) -> usize {
        self.omega.iter().take_while(|a| a.is_zero()).count()
    }

    /// Reassembles `S * D * T`.
    pub fn reconstruct(&self, ctx: &RingContext) -> MatrixZh {
        self.s.mul_unchecked(&self.diagonal(ctx)).mul_unchecked(&self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub inner_rank: usize,
    pub mccoy_rank: usize,
}

fn check_modulus(ctx: &RingContext, a: &MatrixZh) -> Result<()> {
    if a.modulus() != ctx.modulus() {
        return Err(Error::Shape(format!(
            "matrix over Z_{} used with ring Z_{}",
            a.modulus(),
            ctx.modulus()
        )));
    }
    Ok(())
}

/// Diagonal normal form via local Smith elimination on each `pi_i(A)` and a
/// CRT lift of the local transforms.
pub fn normal_form(ctx: &RingContext, a: &MatrixZh) -> Result<DiagonalNormalForm> {
    check_modulus(ctx, a)?;
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);
    let locals: Vec<_> = ctx
        .factors()
        .iter()
        .map(|f| local_smith(&a.reduce_to(f.modulus), f.prime, f.exponent, true))
        .collect();
    let omega: Vec<ExponentVector> =
        (0..k).map(|c| ExponentVector(locals.iter().map(|l| l.exps[c]).collect())).collect();
    let lift = |pick: &dyn Fn(usize) -> MatrixZh| -> MatrixZh {
        let parts: Vec<MatrixZh> = (0..locals.len()).map(pick).collect();
        lift_parts(ctx, &parts)
    };
    let s = lift(&|i| locals[i].s.clone());
    let s_inv = lift(&|i| locals[i].s_inv.clone());
    let mut t = lift(&|i| locals[i].t.clone());
    let mut t_inv = lift(&|i| locals[i].t_inv.clone());

    // The lifted diagonal d_c has pi_i(d_c) = p_i^{a_ic}, while the target entry
    // prod_j p_j^{a_jc} differs from it by a unit u_c. Fold u_c^{-1} into row c of T.
    if ctx.num_primes() > 1 {
        for (c, alphas) in omega.iter().enumerate() {
            let u = diagonal_unit(ctx, alphas);
            if u == 1 {
                continue;
            }
            let u_inv = ctx.inv(u).expect("unit");
            for j in 0..n {
                t.set(c, j, ctx.mul(t.get(c, j), u_inv));
                t_inv.set(j, c, ctx.mul(t_inv.get(j, c), u));
            }
        }
    }
    Ok(DiagonalNormalForm { s, s_inv, t, t_inv, omega, rows: m, cols: n })
}

/// The unit `u` with `u * crt(p_i^{a_i}) = prod_j p_j^{a_j}`.
pub(crate) fn diagonal_unit(ctx: &RingContext, alphas: &ExponentVector) -> u64 {
    let residues = ctx.factors().iter().enumerate().map(|(i, f)| {
        if alphas.0[i] >= f.exponent {
            return 1 % f.modulus;
        }
        ctx.factors()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1 % f.modulus, |acc, (j, g)| {
                crate::ring::mul_mod(acc, crate::ring::pow_mod(g.prime, alphas.0[j] as u64, f.modulus), f.modulus)
            })
    });
    ctx.crt_lift_unchecked(residues)
}

fn lift_parts(ctx: &RingContext, parts: &[MatrixZh]) -> MatrixZh {
    if parts.len() == 1 {
        let p = &parts[0];
        return MatrixZh::from_vec(ctx.modulus(), p.rows(), p.cols(), p.as_slice().to_vec())
            .expect("local modulus equals global modulus");
    }
    let (r, c) = (parts[0].rows(), parts[0].cols());
    let data = (0..r * c)
        .map(|idx| ctx.crt_lift_unchecked(parts.iter().map(|p| p.as_slice()[idx])))
        .collect();
    MatrixZh::from_vec(ctx.modulus(), r, c, data).expect("lift in range")
}

/// Per-prime local valuations of the invariant factors, no transforms.
fn local_profiles(ctx: &RingContext, a: &MatrixZh) -> Vec<Vec<u32>> {
    ctx.factors()
        .iter()
        .map(|f| super::local_exponents(&a.reduce_to(f.modulus), f.prime, f.exponent))
        .collect()
}

/// Inner rank `rho(A)`: least `r` with `A = B C`, `B` of width `r`.
pub fn inner_rank(ctx: &RingContext, a: &MatrixZh) -> Result<usize> {
    check_modulus(ctx, a)?;
    Ok(ctx
        .factors()
        .iter()
        .map(|f| super::local_invariant_count(&a.reduce_to(f.modulus), f.prime, f.exponent, f.exponent))
        .max()
        .unwrap_or(0))
}

/// McCoy rank `rk(A)`.
pub fn mccoy_rank(ctx: &RingContext, a: &MatrixZh) -> Result<usize> {
    check_modulus(ctx, a)?;
    Ok(local_profiles(ctx, a)
        .iter()
        .map(|exps| exps.iter().take_while(|&&v| v == 0).count())
        .min()
        .unwrap_or(0))
}

pub fn rank_report(ctx: &RingContext, a: &MatrixZh) -> Result<RankReport> {
    Ok(RankReport { inner_rank: inner_rank(ctx, a)?, mccoy_rank: mccoy_rank(ctx, a)? })
}

/// Determinant, read off the local eliminations: `det A = det(S) det(D) det(T)`.
pub fn determinant(ctx: &RingContext, a: &MatrixZh) -> Result<u64> {
    check_modulus(ctx, a)?;
    if !a.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let residues: Vec<u64> = ctx
        .factors()
        .iter()
        .map(|f| {
            let l = local_smith(&a.reduce_to(f.modulus), f.prime, f.exponent, false);
            let q = f.modulus;
            l.exps.iter().fold(l.det_transform, |acc, &v| {
                let d = if v >= f.exponent { 0 } else { f.prime.pow(v) };
                crate::ring::mul_mod(acc, d, q)
            })
        })
        .collect();
    Ok(ctx.crt_lift_unchecked(residues))
}

pub fn is_invertible(ctx: &RingContext, a: &MatrixZh) -> Result<bool> {
    check_modulus(ctx, a)?;
    if !a.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    Ok(mccoy_rank(ctx, a)? == a.rows())
}

pub fn inverse(ctx: &RingContext, a: &MatrixZh) -> Result<MatrixZh> {
    if !is_invertible(ctx, a)? {
        return Err(Error::NotInvertible(ctx.modulus()));
    }
    let nf = normal_form(ctx, a)?;
    // D = I, so A^{-1} = T^{-1} S^{-1}
    Ok(nf.t_inv.mul_unchecked(&nf.s_inv))
}

/// `B` with `A B = I_m`, namely `T^{-1} (I_m; 0) S^{-1}`; `None` when `rk(A) < m`.
pub fn right_inverse(ctx: &RingContext, a: &MatrixZh) -> Result<Option<MatrixZh>> {
    check_modulus(ctx, a)?;
    let (m, n) = (a.rows(), a.cols());
    if m > n {
        return Err(Error::Shape(format!("right inverse of a {m}x{n} matrix with m > n")));
    }
    let nf = normal_form(ctx, a)?;
    if nf.mccoy_rank() < m {
        return Ok(None);
    }
    let embed = MatrixZh::diagonal(ctx.modulus(), n, m, &vec![1; m]);
    Ok(Some(nf.t_inv.mul_unchecked(&embed).mul_unchecked(&nf.s_inv)))
}

/// Rows are linearly independent iff the stacked matrix has full McCoy rank.
pub fn linearly_independent(ctx: &RingContext, rows: &MatrixZh) -> Result<bool> {
    if rows.rows() > rows.cols() {
        return Ok(false);
    }
    Ok(mccoy_rank(ctx, rows)? == rows.rows())
}

/// Invertible `n x n` matrix whose first `m` rows are `rows`:
/// `( A ; (0, I_{n-m}) T )` for `A = S (I_m, 0) T`.
pub fn extend_to_basis(ctx: &RingContext, rows: &MatrixZh) -> Result<MatrixZh> {
    let tail = completion_rows(ctx, rows)?;
    rows.vstack(&tail)
}

/// Invertible `n x n` matrix whose last `m` rows are `rows`, so that the
/// subspace they span is `(0, I_m) T`.
pub fn complete_basis_front(ctx: &RingContext, rows: &MatrixZh) -> Result<MatrixZh> {
    let head = completion_rows(ctx, rows)?;
    head.vstack(rows)
}

fn completion_rows(ctx: &RingContext, rows: &MatrixZh) -> Result<MatrixZh> {
    check_modulus(ctx, rows)?;
    let (m, n) = (rows.rows(), rows.cols());
    if !linearly_independent(ctx, rows)? {
        return Err(Error::Precondition("rows must be linearly independent".into()));
    }
    if m == 0 {
        return Ok(MatrixZh::identity(ctx.modulus(), n));
    }
    let nf = normal_form(ctx, rows)?;
    let idx: Vec<usize> = (m..n).collect();
    Ok(nf.t.select_rows(&idx))
}

/// Entrywise `pi_i`.
pub fn pi_matrix(ctx: &RingContext, a: &MatrixZh, i: usize) -> Result<MatrixZh> {
    check_modulus(ctx, a)?;
    let q = ctx.local(i)?.modulus();
    Ok(a.reduce_to(q))
}

/// Entrywise `theta_i`; the target ring is `Z_{h / p_i^{s_i}}`.
pub fn theta_matrix(ctx: &RingContext, a: &MatrixZh, i: usize) -> Result<MatrixZh> {
    check_modulus(ctx, a)?;
    let q = ctx.local(i)?.modulus();
    Ok(a.reduce_to(ctx.modulus() / q))
}

/// Inverse of `(pi_1, ..., pi_t)` on matrices.
pub fn crt_lift_matrix(ctx: &RingContext, locals: &[MatrixZh]) -> Result<MatrixZh> {
    if locals.len() != ctx.num_primes() {
        return Err(Error::Shape(format!("expected {} local matrices, got {}", ctx.num_primes(), locals.len())));
    }
    let (r, c) = (locals[0].rows(), locals[0].cols());
    for (l, f) in locals.iter().zip(ctx.factors()) {
        if l.modulus() != f.modulus {
            return Err(Error::Shape(format!("local matrix over Z_{} where Z_{} expected", l.modulus(), f.modulus)));
        }
        if (l.rows(), l.cols()) != (r, c) {
            return Err(Error::Shape("local matrices differ in shape".into()));
        }
    }
    Ok(lift_parts(ctx, locals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(h: u64) -> RingContext {
        RingContext::new(h).unwrap()
    }

    fn mat(h: u64, rows: &[Vec<u64>]) -> MatrixZh {
        MatrixZh::from_rows(h, rows).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn normal_form_examples() {
        let r = ctx(6);
        let a = mat(6, &[vec![2, 0], vec![0, 3]]);
        let nf = normal_form(&r, &a).unwrap();
        assert_eq!(nf.omega, vec![ev(&[0, 0]), ev(&[1, 1])]);
        assert_eq!(nf.diagonal(&r), mat(6, &[vec![1, 0], vec![0, 0]]));
        assert_eq!(nf.reconstruct(&r), a);

        let r = ctx(4);
        let a = mat(4, &[vec![1, 0], vec![0, 2]]);
        let nf = normal_form(&r, &a).unwrap();
        assert_eq!(nf.omega, vec![ev(&[0]), ev(&[1])]);
        assert_eq!(nf.diagonal(&r), a);

        let r = ctx(12);
        let z = MatrixZh::zeros(12, 2, 2);
        let nf = normal_form(&r, &z).unwrap();
        assert_eq!(nf.omega, vec![ev(&[2, 1]), ev(&[2, 1])]);
        assert!(nf.diagonal(&r).is_zero());
    }

    #[test]
    fn ranks_examples() {
        let (r4, r6, r12) = (ctx(4), ctx(6), ctx(12));
        let a = mat(4, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(inner_rank(&r4, &a).unwrap(), 2);
        assert_eq!(mccoy_rank(&r4, &a).unwrap(), 1);
        assert_eq!(inner_rank(&r6, &mat(6, &[vec![1, 0], vec![0, 0]])).unwrap(), 1);
        assert_eq!(inner_rank(&r6, &MatrixZh::zeros(6, 3, 2)).unwrap(), 0);
        assert_eq!(mccoy_rank(&r6, &MatrixZh::identity(6, 3)).unwrap(), 3);
        let d = MatrixZh::diagonal(12, 3, 3, &[1, 1, 6]);
        assert_eq!(mccoy_rank(&r12, &d).unwrap(), 2);
        assert_eq!(inner_rank(&r12, &d).unwrap(), 3);
    }

    #[test]
    fn invertibility() {
        let r4 = ctx(4);
        let a = mat(4, &[vec![2, 1], vec![1, 0]]);
        assert_eq!(determinant(&r4, &a).unwrap(), 3);
        assert!(is_invertible(&r4, &a).unwrap());
        let inv = inverse(&r4, &a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), MatrixZh::identity(4, 2));

        let r6 = ctx(6);
        let b = mat(6, &[vec![2, 0], vec![0, 1]]);
        assert!(!is_invertible(&r6, &b).unwrap());
        assert_eq!(inverse(&r6, &b), Err(Error::NotInvertible(6)));
        let id = MatrixZh::identity(6, 3);
        assert_eq!(inverse(&r6, &id).unwrap(), id);
        assert!(matches!(is_invertible(&r6, &MatrixZh::zeros(6, 2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn right_inverses() {
        let r6 = ctx(6);
        let a = mat(6, &[vec![0, 1]]);
        assert_eq!(right_inverse(&r6, &a).unwrap().unwrap(), mat(6, &[vec![0], vec![1]]));
        let r4 = ctx(4);
        let a = mat(4, &[vec![2, 1]]);
        let b = right_inverse(&r4, &a).unwrap().unwrap();
        assert_eq!(a.mul(&b).unwrap(), MatrixZh::identity(4, 1));
        assert_eq!(right_inverse(&r4, &mat(4, &[vec![2, 0]])).unwrap(), None);
        assert!(right_inverse(&r4, &MatrixZh::zeros(4, 2, 1)).is_err());
    }

    #[test]
    fn independence_and_completion() {
        let r4 = ctx(4);
        assert!(linearly_independent(&r4, &mat(4, &[vec![2, 1]])).unwrap());
        assert!(!linearly_independent(&r4, &mat(4, &[vec![2, 0]])).unwrap());
        let r6 = ctx(6);
        assert!(linearly_independent(&r6, &MatrixZh::identity(6, 2)).unwrap());

        let basis = extend_to_basis(&r4, &mat(4, &[vec![2, 1]])).unwrap();
        assert_eq!(basis.row(0), &[2, 1]);
        assert!(r4.is_unit(determinant(&r4, &basis).unwrap()));

        let basis = extend_to_basis(&r6, &mat(6, &[vec![0, 1]])).unwrap();
        assert_eq!(basis.row(0), &[0, 1]);
        assert!(r6.is_unit(basis.get(1, 0)));

        let id = MatrixZh::identity(6, 2);
        assert_eq!(extend_to_basis(&r6, &id).unwrap(), id);
        assert!(matches!(extend_to_basis(&r4, &mat(4, &[vec![2, 0]])), Err(Error::Precondition(_))));
    }

    #[test]
    fn crt_maps() {
        let r6 = ctx(6);
        let a = MatrixZh::diagonal(6, 2, 2, &[3, 4]);
        assert_eq!(pi_matrix(&r6, &a, 0).unwrap(), MatrixZh::diagonal(2, 2, 2, &[1, 0]));
        assert_eq!(theta_matrix(&r6, &a, 0).unwrap(), MatrixZh::diagonal(3, 2, 2, &[0, 1]));
        let lifted = crt_lift_matrix(&r6, &[MatrixZh::identity(2, 2), MatrixZh::identity(3, 2)]).unwrap();
        assert_eq!(lifted, MatrixZh::identity(6, 2));

        let r12 = ctx(12);
        let locals = [MatrixZh::diagonal(4, 2, 2, &[1, 2]), MatrixZh::identity(3, 2)];
        let lifted = crt_lift_matrix(&r12, &locals).unwrap();
        // x ≡ 2 (mod 4), x ≡ 1 (mod 3) gives 10
        assert_eq!(lifted, MatrixZh::diagonal(12, 2, 2, &[1, 10]));
        assert_eq!(pi_matrix(&r12, &lifted, 0).unwrap(), locals[0]);
        assert_eq!(pi_matrix(&r12, &lifted, 1).unwrap(), locals[1]);
        assert!(crt_lift_matrix(&r12, &locals[..1]).is_err());
    }
}
