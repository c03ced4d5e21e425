//! Maximum-clique families of `G_r(m, n, Z_h)` for `n >= 2m`.
//!
//! With `k = m - r + 1` and `w = m + r - 1` the maximum cliques are the stars
//! (all vertices through a fixed `k`-subspace), and when `n = 2m` also the
//! families inside a fixed `w`-subspace and the mixed families: modulo each
//! prime power a mixed family is a star of `(0, I_k) T` or the family inside
//! `(I_w, 0) T`, and the set of primes on the star side is a nonempty proper
//! subset.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::clique_number;
use crate::error::{Error, Result};
use crate::graph::{is_clique, GraphSpec};
use crate::matrix::{self, MatrixZh};
use crate::ring::RingContext;
use crate::subspace::{contains, count_subspaces, dual, enumerate_subspaces, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyDescriptor {
    /// All vertices containing `p`, a `(m - r + 1)`-subspace.
    Star { p: Subspace },
    /// All vertices inside `q`, a `(m + r - 1)`-subspace; needs `n = 2m`.
    Within { q: Subspace },
    /// Star modulo the listed primes, within-type modulo the others, in the
    /// coordinates given by the invertible `t`; needs `n = 2m`.
    Mixed { star_primes: Vec<u64>, t: MatrixZh },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Classification {
    Maximum { family: FamilyDescriptor },
    NotMaximum { reason: String },
    Unclassified { reason: String },
}

fn star_dim(spec: &GraphSpec) -> usize {
    spec.m() + 1 - spec.r()
}

fn within_dim(spec: &GraphSpec) -> usize {
    spec.m() + spec.r() - 1
}

fn star_indices(ctx: &RingContext, primes: &[u64]) -> Result<Vec<usize>> {
    let mut idx = Vec::new();
    for &p in primes {
        let i = ctx
            .factors()
            .iter()
            .position(|f| f.prime == p)
            .ok_or_else(|| Error::InvalidParameters(format!("{p} is not a prime factor of {}", ctx.modulus())))?;
        idx.push(i);
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

fn validate(spec: &GraphSpec, desc: &FamilyDescriptor) -> Result<()> {
    let ctx = spec.ctx();
    let (n, m) = (spec.n(), spec.m());
    let bad = |msg: String| Err(Error::InvalidParameters(msg));
    match desc {
        FamilyDescriptor::Star { p } => {
            if p.modulus() != ctx.modulus() || p.ambient() != n || p.dim() != star_dim(spec) {
                return bad(format!("star centre must be a {}-subspace of Z_{}^{n}", star_dim(spec), ctx.modulus()));
            }
        }
        FamilyDescriptor::Within { q } => {
            if n != 2 * m {
                return bad("within-type families need n = 2m".into());
            }
            if q.modulus() != ctx.modulus() || q.ambient() != n || q.dim() != within_dim(spec) {
                return bad(format!("enclosing space must be a {}-subspace of Z_{}^{n}", within_dim(spec), ctx.modulus()));
            }
        }
        FamilyDescriptor::Mixed { star_primes, t } => {
            if n != 2 * m {
                return bad("mixed families need n = 2m".into());
            }
            let idx = star_indices(ctx, star_primes)?;
            if idx.is_empty() || idx.len() == ctx.num_primes() {
                return bad("the star-side primes must form a nonempty proper subset".into());
            }
            if t.modulus() != ctx.modulus() || t.rows() != n || !matrix::is_invertible(ctx, t)? {
                return bad(format!("mixed family needs an invertible {n}x{n} matrix over Z_{}", ctx.modulus()));
            }
        }
    }
    Ok(())
}

/// Number of members of the described family.
pub fn family_size(spec: &GraphSpec, desc: &FamilyDescriptor) -> Result<BigUint> {
    validate(spec, desc)?;
    let ctx = spec.ctx();
    let n = spec.n();
    Ok(match desc {
        FamilyDescriptor::Star { .. } => count_subspaces(ctx, n - star_dim(spec), spec.r() - 1),
        FamilyDescriptor::Within { .. } => count_subspaces(ctx, within_dim(spec), spec.m()),
        FamilyDescriptor::Mixed { star_primes, .. } => {
            let idx = star_indices(ctx, star_primes)?;
            let mut total = BigUint::one();
            for i in 0..ctx.num_primes() {
                let local = ctx.local(i)?;
                total *= if idx.contains(&i) {
                    count_subspaces(&local, within_dim(spec), spec.r() - 1)
                } else {
                    count_subspaces(&local, within_dim(spec), spec.m())
                };
            }
            total
        }
    })
}

/// Local members of a mixed family before the change of coordinates:
/// `[[X, 0], [0, I_k]]` on the star side, `[X, 0]` on the other.
fn mixed_local_members(spec: &GraphSpec, i: usize, star_side: bool, cap: u64) -> Result<Vec<MatrixZh>> {
    let local = spec.ctx().local(i)?;
    let q = local.modulus();
    let (n, m, w, k) = (spec.n(), spec.m(), within_dim(spec), star_dim(spec));
    let inner_dim = if star_side { spec.r() - 1 } else { m };
    let mut out = Vec::new();
    for x in enumerate_subspaces(&local, w, inner_dim, cap)? {
        let mut rep = MatrixZh::zeros(q, m, n);
        rep.set_block(0, 0, x.rep());
        if star_side {
            rep.set_block(m - k, w, &MatrixZh::identity(q, k));
        }
        out.push(rep);
    }
    Ok(out)
}

/// Explicit members of the described family.
pub fn build_family(spec: &GraphSpec, desc: &FamilyDescriptor, cap: u64) -> Result<Vec<Subspace>> {
    let size = family_size(spec, desc)?;
    if size.to_u64().is_none_or(|s| s > cap) {
        return Err(Error::cap("family construction", size, cap));
    }
    let ctx = spec.ctx();
    let n = spec.n();
    match desc {
        FamilyDescriptor::Star { p } => {
            let k = p.dim();
            let t = matrix::complete_basis_front(ctx, p.rep())?;
            let top = t.select_rows(&(0..n - k).collect::<Vec<_>>());
            enumerate_subspaces(ctx, n - k, spec.r() - 1, cap)?
                .map(|x| Subspace::from_matrix(ctx, &x.rep().mul_unchecked(&top).vstack(p.rep())?))
                .collect()
        }
        FamilyDescriptor::Within { q } => enumerate_subspaces(ctx, q.dim(), spec.m(), cap)?
            .map(|x| Subspace::from_matrix(ctx, &x.rep().mul_unchecked(q.rep())))
            .collect(),
        FamilyDescriptor::Mixed { star_primes, t } => {
            let idx = star_indices(ctx, star_primes)?;
            let locals: Vec<Vec<MatrixZh>> = (0..ctx.num_primes())
                .map(|i| mixed_local_members(spec, i, idx.contains(&i), cap))
                .collect::<Result<_>>()?;
            let mut out = Vec::new();
            let mut digits = vec![0usize; locals.len()];
            loop {
                let parts: Vec<MatrixZh> = locals.iter().zip(&digits).map(|(l, &d)| l[d].clone()).collect();
                let rep = matrix::crt_lift_matrix(ctx, &parts)?.mul_unchecked(t);
                out.push(Subspace::from_matrix(ctx, &rep)?);
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
    }
}

/// Membership test without building the family.
pub fn family_contains(spec: &GraphSpec, desc: &FamilyDescriptor, x: &Subspace) -> Result<bool> {
    validate(spec, desc)?;
    let ctx = spec.ctx();
    if x.modulus() != ctx.modulus() || x.ambient() != spec.n() || x.dim() != spec.m() {
        return Ok(false);
    }
    match desc {
        FamilyDescriptor::Star { p } => contains(ctx, x, p),
        FamilyDescriptor::Within { q } => contains(ctx, q, x),
        FamilyDescriptor::Mixed { star_primes, t } => {
            let idx = star_indices(ctx, star_primes)?;
            let coords = x.rep().mul_unchecked(&matrix::inverse(ctx, t)?);
            let (n, w, k) = (spec.n(), within_dim(spec), star_dim(spec));
            for (i, f) in ctx.factors().iter().enumerate() {
                let local = ctx.local(i)?;
                let y = Subspace::from_matrix(&local, &coords.reduce_to(f.modulus))?;
                let ok = if idx.contains(&i) {
                    let mut centre = MatrixZh::zeros(f.modulus, k, n);
                    centre.set_block(0, w, &MatrixZh::identity(f.modulus, k));
                    contains(&local, &y, &Subspace::from_matrix(&local, &centre)?)?
                } else {
                    let mut span = MatrixZh::zeros(f.modulus, w, n);
                    span.set_block(0, 0, &MatrixZh::identity(f.modulus, w));
                    contains(&local, &Subspace::from_matrix(&local, &span)?, &y)?
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Row module of `a` when it is free, as a subspace.
fn free_row_module(ctx: &RingContext, a: &MatrixZh) -> Result<Option<Subspace>> {
    let nf = matrix::normal_form(ctx, a)?;
    let full = ctx.full_exponents();
    let mut rows = Vec::new();
    for (c, e) in nf.omega.iter().enumerate() {
        if e.is_zero() {
            rows.push(c);
        } else if *e != full {
            return Ok(None);
        }
    }
    Ok(Some(Subspace::from_matrix(ctx, &nf.t.select_rows(&rows))?))
}

fn stack(ctx: &RingContext, members: &[Subspace], n: usize) -> Result<MatrixZh> {
    members.iter().try_fold(MatrixZh::zeros(ctx.modulus(), 0, n), |acc, s| acc.vstack(s.rep()))
}

/// The common `k`-subspace of all members, if it exists.
fn common_subspace(ctx: &RingContext, members: &[Subspace], n: usize, k: usize) -> Result<Option<Subspace>> {
    if k == 0 {
        return Ok(Some(Subspace::zero(ctx, n)));
    }
    let duals: Vec<Subspace> = members.iter().map(|s| dual(ctx, s)).collect::<Result<_>>()?;
    let Some(span) = free_row_module(ctx, &stack(ctx, &duals, n)?)? else { return Ok(None) };
    if span.dim() != n - k {
        return Ok(None);
    }
    let p = dual(ctx, &span)?;
    for s in members {
        if !contains(ctx, s, &p)? {
            return Ok(None);
        }
    }
    Ok(Some(p))
}

/// A `w`-subspace containing all members, if their span is one.
fn enclosing_subspace(ctx: &RingContext, members: &[Subspace], n: usize, w: usize) -> Result<Option<Subspace>> {
    let Some(q) = free_row_module(ctx, &stack(ctx, members, n)?)? else { return Ok(None) };
    Ok((q.dim() == w).then_some(q))
}

/// Decides whether `family` is a maximum clique and, if so, which kind.
pub fn classify_maximum_clique(spec: &GraphSpec, family: &[Subspace]) -> Result<Classification> {
    let ctx = spec.ctx();
    let (n, m) = (spec.n(), spec.m());
    let not_max = |reason: String| Ok(Classification::NotMaximum { reason });
    let unclassified = |reason: String| Ok(Classification::Unclassified { reason });
    if n < 2 * m {
        return unclassified(format!("classification needs n >= 2m, got n={n} m={m}"));
    }
    let mut sorted = family.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != family.len() {
        return not_max("family has repeated members".into());
    }
    let omega = clique_number(spec);
    if BigUint::from(family.len()) != omega {
        return not_max(format!("family has {} members, clique number is {omega}", family.len()));
    }
    if !is_clique(spec, family)? {
        return not_max("family is not a clique".into());
    }
    let (k, w) = (star_dim(spec), within_dim(spec));
    if let Some(p) = common_subspace(ctx, family, n, k)? {
        return Ok(Classification::Maximum { family: FamilyDescriptor::Star { p } });
    }
    if n == 2 * m {
        if let Some(q) = enclosing_subspace(ctx, family, n, w)? {
            return Ok(Classification::Maximum { family: FamilyDescriptor::Within { q } });
        }
    }
    if n != 2 * m || ctx.num_primes() < 2 {
        return unclassified("maximum-size clique matches no known family".into());
    }
    let mut star_primes = Vec::new();
    let mut parts = Vec::new();
    for (i, f) in ctx.factors().iter().enumerate() {
        let local = ctx.local(i)?;
        let mut projected: Vec<Subspace> = family
            .iter()
            .map(|s| crate::subspace::pi_subspace(ctx, s, i))
            .collect::<Result<_>>()?;
        projected.sort();
        projected.dedup();
        if let Some(p) = common_subspace(&local, &projected, n, k)? {
            star_primes.push(f.prime);
            parts.push(matrix::complete_basis_front(&local, p.rep())?);
        } else if let Some(q) = enclosing_subspace(&local, &projected, n, w)? {
            parts.push(matrix::extend_to_basis(&local, q.rep())?);
        } else {
            return unclassified(format!("projection modulo {} is neither a star nor a within-type family", f.modulus));
        }
    }
    if star_primes.is_empty() || star_primes.len() == ctx.num_primes() {
        return unclassified("projections are all of one type but the family is not".into());
    }
    let t = matrix::crt_lift_matrix(ctx, &parts)?;
    let desc = FamilyDescriptor::Mixed { star_primes, t };
    for s in family {
        if !family_contains(spec, &desc, s)? {
            return unclassified("recovered mixed pattern does not contain every member".into());
        }
    }
    Ok(Classification::Maximum { family: desc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(h: u64, n: usize, m: usize, r: usize) -> GraphSpec {
        GraphSpec::new(RingContext::new(h).unwrap(), n, m, r).unwrap()
    }

    fn sub(ctx: &RingContext, rows: &[Vec<u64>]) -> Subspace {
        Subspace::from_matrix(ctx, &MatrixZh::from_rows(ctx.modulus(), rows).unwrap()).unwrap()
    }

    #[test]
    fn star_and_within_over_z2() {
        let s = spec(2, 4, 2, 2);
        let ctx = s.ctx().clone();
        let star = FamilyDescriptor::Star { p: sub(&ctx, &[vec![1, 0, 0, 0]]) };
        let fam = build_family(&s, &star, 1000).unwrap();
        assert_eq!(fam.len(), 7);
        assert!(is_clique(&s, &fam).unwrap());
        assert_eq!(classify_maximum_clique(&s, &fam).unwrap(), Classification::Maximum { family: star });
        let within = FamilyDescriptor::Within { q: sub(&ctx, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]) };
        let fam = build_family(&s, &within, 1000).unwrap();
        assert_eq!(fam.len(), 7);
        assert_eq!(classify_maximum_clique(&s, &fam).unwrap(), Classification::Maximum { family: within });
        assert!(matches!(classify_maximum_clique(&s, &fam[..6]).unwrap(), Classification::NotMaximum { .. }));
    }

    #[test]
    fn mixed_over_z6() {
        let s = spec(6, 4, 2, 2);
        let ctx = s.ctx().clone();
        let desc = FamilyDescriptor::Mixed { star_primes: vec![2], t: MatrixZh::identity(6, 4) };
        let fam = build_family(&s, &desc, 10_000).unwrap();
        assert_eq!(fam.len(), 91);
        assert_eq!(family_size(&s, &desc).unwrap(), BigUint::from(91u32));
        assert!(is_clique(&s, &fam).unwrap());
        assert!(fam.iter().all(|x| family_contains(&s, &desc, x).unwrap()));
        // 3 is 1 mod 2 and 0 mod 3: star through e_4 mod 2, inside e_4^perp mod 3
        assert!(family_contains(&s, &desc, &sub(&ctx, &[vec![1, 0, 0, 0], vec![0, 2, 0, 3]])).unwrap());
        assert!(!family_contains(&s, &desc, &sub(&ctx, &[vec![1, 0, 0, 1], vec![0, 1, 0, 0]])).unwrap());
        match classify_maximum_clique(&s, &fam).unwrap() {
            Classification::Maximum { family: FamilyDescriptor::Mixed { star_primes, t } } => {
                assert_eq!(star_primes, vec![2]);
                let again = FamilyDescriptor::Mixed { star_primes, t };
                let mut rebuilt = build_family(&s, &again, 10_000).unwrap();
                let mut orig = fam.clone();
                rebuilt.sort();
                orig.sort();
                assert_eq!(rebuilt, orig);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn descriptor_validation() {
        let s = spec(6, 4, 2, 2);
        let bad = FamilyDescriptor::Mixed { star_primes: vec![2, 3], t: MatrixZh::identity(6, 4) };
        assert!(build_family(&s, &bad, 1000).is_err());
        let bad = FamilyDescriptor::Mixed { star_primes: vec![5], t: MatrixZh::identity(6, 4) };
        assert!(build_family(&s, &bad, 1000).is_err());
        let s5 = spec(2, 5, 2, 2);
        let ctx = s5.ctx().clone();
        let q = sub(&ctx, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 1, 0, 0]]);
        assert!(build_family(&s5, &FamilyDescriptor::Within { q }, 1000).is_err());
    }
}
