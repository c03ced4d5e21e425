//! `r`-intersecting families of `m`-subspaces.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::{ekr_bound, family::FamilyDescriptor, Classification};
use crate::bigjson::big;
use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::ring::RingContext;
use crate::subspace::{dim_intersection, Subspace};

/// Every two distinct members meet in dimension at least `r`.
pub fn is_r_intersecting(ctx: &RingContext, family: &[Subspace], r: usize) -> Result<bool> {
    (0..family.len()).into_par_iter().try_fold(
        || true,
        |ok, i| -> Result<bool> {
            if !ok {
                return Ok(false);
            }
            for j in i + 1..family.len() {
                if dim_intersection(ctx, &family[i], &family[j])? < r {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    )
    .try_reduce(|| true, |a, b| Ok(a && b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkrReport {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub size: usize,
    #[serde(serialize_with = "big")]
    pub bound: BigUint,
    pub r_intersecting: bool,
    pub within_bound: bool,
    pub attains_bound: bool,
    /// For an `r`-intersecting family of maximum size, which extremal family
    /// it is.
    pub classification: Option<Classification>,
}

/// Checks a family against the intersecting-family bound and classifies it
/// when it attains the bound.
pub fn verify_ekr(ctx: &RingContext, n: usize, m: usize, r: usize, family: &[Subspace]) -> Result<EkrReport> {
    let bound = ekr_bound(ctx, n, m, r)?;
    if let Some(bad) = family.iter().find(|s| s.modulus() != ctx.modulus() || s.ambient() != n || s.dim() != m) {
        return Err(Error::InvalidParameters(format!(
            "family member {bad} is not an {m}-subspace of Z_{}^{n}",
            ctx.modulus()
        )));
    }
    let mut distinct = family.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != family.len() {
        return Err(Error::InvalidParameters("family has repeated members".into()));
    }
    let r_intersecting = is_r_intersecting(ctx, family, r)?;
    let size = BigUint::from(family.len());
    let attains_bound = r_intersecting && size == bound;
    let classification = if !attains_bound {
        None
    } else if r == m {
        Some(Classification::Maximum { family: FamilyDescriptor::Star { p: family[0].clone() } })
    } else {
        let spec = GraphSpec::new(ctx.clone(), n, m, m - r + 1)?;
        Some(super::classify_maximum_clique(&spec, family)?)
    };
    Ok(EkrReport {
        n,
        m,
        r,
        size: family.len(),
        within_bound: !r_intersecting || size <= bound,
        bound,
        r_intersecting,
        attains_bound,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_family;
    use crate::matrix::MatrixZh;

    #[test]
    fn star_attains_bound() {
        let ctx = RingContext::new(6).unwrap();
        let spec = GraphSpec::new(ctx.clone(), 4, 2, 2).unwrap();
        let p = Subspace::from_matrix(&ctx, &MatrixZh::from_rows(6, &[vec![1, 2, 0, 5]]).unwrap()).unwrap();
        let fam = build_family(&spec, &FamilyDescriptor::Star { p: p.clone() }, 1000).unwrap();
        let rep = verify_ekr(&ctx, 4, 2, 1, &fam).unwrap();
        assert!(rep.r_intersecting && rep.attains_bound && rep.within_bound);
        assert_eq!(rep.classification, Some(Classification::Maximum { family: FamilyDescriptor::Star { p } }));
        let rep = verify_ekr(&ctx, 4, 2, 2, &fam).unwrap();
        assert!(!rep.r_intersecting);
        let rep = verify_ekr(&ctx, 4, 2, 2, &fam[..1]).unwrap();
        assert!(rep.attains_bound);
    }
}
