//! Seeded property checks. Each `(suite, h)` pair draws from its own RNG
//! stream, so selecting fewer suites or moduli leaves the other rows
//! unchanged.

use grzh_core::extremal::{build_family, classify_maximum_clique, clique_number, Classification, FamilyDescriptor};
use grzh_core::graph::{brute_force_max_clique, GraphSpec};
use grzh_core::matrix::{self, MatrixZh};
use grzh_core::oracle;
use grzh_core::subspace::{
    contains, crt_lift_subspace, dim_intersection, dim_intersection_by_pi, dim_intersection_by_theta, dim_join, dual,
    pi_subspace,
};
use grzh_core::{RingContext, Subspace};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Caps, Suite};
use crate::CliResult;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub h: u64,
    pub property: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub pass: bool,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: u64,
    pub moduli: Vec<u64>,
    pub suites: Vec<&'static str>,
    pub passed: bool,
    pub rows: Vec<Check>,
}

struct Recorder {
    suite: &'static str,
    h: u64,
    fault: bool,
    rows: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, property: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let ok = ok != self.fault;
        let idx = match self.rows.iter().position(|c| c.property == property) {
            Some(i) => i,
            None => {
                self.rows.push(Check {
                    suite: self.suite,
                    h: self.h,
                    property,
                    cases: 0,
                    failures: 0,
                    pass: true,
                    first_failure: None,
                });
                self.rows.len() - 1
            }
        };
        let row = &mut self.rows[idx];
        row.cases += 1;
        if !ok {
            row.failures += 1;
            row.pass = false;
            if row.first_failure.is_none() {
                row.first_failure = Some(detail());
            }
        }
    }
}

fn random_matrix(h: u64, rows: usize, cols: usize, rng: &mut impl Rng) -> MatrixZh {
    MatrixZh::from_vec(h, rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..h)).collect()).expect("in range")
}

fn random_invertible(ctx: &RingContext, n: usize, rng: &mut impl Rng) -> CliResult<MatrixZh> {
    loop {
        let t = random_matrix(ctx.modulus(), n, n, rng);
        if matrix::is_invertible(ctx, &t)? {
            return Ok(t);
        }
    }
}

fn random_subspace(ctx: &RingContext, n: usize, m: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        if let Ok(s) = Subspace::from_matrix(ctx, &random_matrix(ctx.modulus(), m, n, rng)) {
            return s;
        }
    }
}

fn crt(ctx: &RingContext, rec: &mut Recorder, rng: &mut ChaCha8Rng, samples: u64) -> CliResult<()> {
    let h = ctx.modulus();
    let t = ctx.num_primes();
    for _ in 0..samples {
        let (x, y) = (rng.gen_range(0..h), rng.gen_range(0..h));
        let px: Vec<u64> = (0..t).map(|i| ctx.pi(x, i)).collect::<Result<_, _>>()?;
        rec.check("residue_round_trip", ctx.crt_lift(&px)? == x, || format!("x={x}"));
        let mut ring_map = true;
        for (i, f) in ctx.factors().iter().enumerate() {
            let (a, b) = (ctx.pi(x, i)?, ctx.pi(y, i)?);
            ring_map &= ctx.pi(ctx.mul(x, y), i)? == a * b % f.modulus;
            ring_map &= ctx.pi(ctx.add(x, y), i)? == (a + b) % f.modulus;
        }
        rec.check("projection_is_ring_map", ring_map, || format!("x={x} y={y}"));
        let a = random_matrix(h, 3, 3, rng);
        let parts: Vec<MatrixZh> = (0..t).map(|i| matrix::pi_matrix(ctx, &a, i)).collect::<Result<_, _>>()?;
        rec.check("matrix_round_trip", matrix::crt_lift_matrix(ctx, &parts)? == a, || format!("A={:?}", a.row_vecs()));
        let n = rng.gen_range(1..=4);
        let s = random_subspace(ctx, n, rng.gen_range(0..=n), rng);
        let parts: Vec<Subspace> = (0..t).map(|i| pi_subspace(ctx, &s, i)).collect::<Result<_, _>>()?;
        rec.check("subspace_round_trip", crt_lift_subspace(ctx, &parts)? == s, || s.to_string());
    }
    Ok(())
}

fn ranks(ctx: &RingContext, rec: &mut Recorder, rng: &mut ChaCha8Rng, samples: u64, caps: &Caps) -> CliResult<()> {
    let h = ctx.modulus();
    for _ in 0..samples {
        let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = random_matrix(h, rows, cols, rng);
        let show = || format!("A={:?}", a.row_vecs());
        let mccoy = matrix::mccoy_rank(ctx, &a)?;
        rec.check("mccoy_rank_vs_annihilator", mccoy == oracle::mccoy_rank_by_annihilator(&a, caps.oracle_cap)?, show);
        let inner = matrix::inner_rank(ctx, &a)?;
        let mut local_max = 0;
        for i in 0..ctx.num_primes() {
            local_max = local_max.max(matrix::inner_rank(&ctx.local(i)?, &matrix::pi_matrix(ctx, &a, i)?)?);
        }
        rec.check("inner_rank_vs_local_maximum", inner == local_max, show);
        rec.check("mccoy_at_most_inner", mccoy <= inner, show);
        if let Ok(by_search) = oracle::inner_rank_by_factorization(ctx, &a, caps.oracle_cap) {
            rec.check("inner_rank_vs_factorization", inner == by_search, show);
        }
        if rows == cols {
            let det = matrix::determinant(ctx, &a)?;
            rec.check("determinant_vs_expansion", det == oracle::determinant_by_expansion(&a), show);
        }
    }
    Ok(())
}

fn dimension(ctx: &RingContext, rec: &mut Recorder, rng: &mut ChaCha8Rng, samples: u64) -> CliResult<()> {
    for _ in 0..samples {
        let n = rng.gen_range(1..=3);
        let (ma, mb) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let a = random_subspace(ctx, n, ma, rng);
        let b = random_subspace(ctx, n, mb, rng);
        let show = || format!("A={a} B={b}");
        let d = dim_intersection(ctx, &a, &b)?;
        if ctx.modulus().pow(n as u32) <= 216 {
            rec.check("intersection_vs_module_oracle", d == oracle::intersection_dimension(a.rep(), b.rep()), show);
        }
        rec.check("intersection_vs_projections", d == dim_intersection_by_pi(ctx, &a, &b)?, show);
        if let Some(t) = dim_intersection_by_theta(ctx, &a, &b)? {
            rec.check("intersection_vs_theta", d == t, show);
        }
        rec.check("join_plus_intersection", dim_join(ctx, &a, &b)? + d == ma + mb, show);
    }
    Ok(())
}

fn duality(ctx: &RingContext, rec: &mut Recorder, rng: &mut ChaCha8Rng, samples: u64) -> CliResult<()> {
    for _ in 0..samples {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=n);
        let a = random_subspace(ctx, n, m, rng);
        let b = random_subspace(ctx, n, m, rng);
        let show = || format!("A={a} B={b}");
        let (ad, bd) = (dual(ctx, &a)?, dual(ctx, &b)?);
        rec.check("dual_dimension", ad.dim() == n - m, show);
        rec.check("dual_involution", dual(ctx, &ad)? == a, show);
        rec.check("orthogonality", a.rep().mul(&ad.rep().transpose())?.is_zero(), show);
        let lhs = m - dim_intersection(ctx, &a, &b)?;
        let rhs = (n - m) - dim_intersection(ctx, &ad, &bd)?;
        rec.check("intersection_of_duals", lhs == rhs, show);
        let k = rng.gen_range(0..=m);
        let x = random_subspace(ctx, m, k, rng);
        let sub = Subspace::from_matrix(ctx, &x.rep().mul(a.rep())?)?;
        let reversed = contains(ctx, &a, &sub)? && contains(ctx, &dual(ctx, &sub)?, &ad)?;
        rec.check("containment_reversal", reversed, show);
    }
    Ok(())
}

fn same_members(mut a: Vec<Subspace>, mut b: Vec<Subspace>) -> bool {
    a.sort();
    b.sort();
    a == b
}

fn cliques(ctx: &RingContext, rec: &mut Recorder, rng: &mut ChaCha8Rng, samples: u64, caps: &Caps) -> CliResult<()> {
    let spec = GraphSpec::new(ctx.clone(), 4, 2, 2)?;
    let omega = clique_number(&spec);
    let cases = (samples / 50).clamp(1, 5);
    let maximum = |fam: &[Subspace]| -> CliResult<Option<FamilyDescriptor>> {
        Ok(match classify_maximum_clique(&spec, fam)? {
            Classification::Maximum { family } => Some(family),
            _ => None,
        })
    };
    for _ in 0..cases {
        let p = random_subspace(ctx, 4, 1, rng);
        let desc = FamilyDescriptor::Star { p };
        let fam = build_family(&spec, &desc, caps.enumeration_cap)?;
        let ok = BigUint::from(fam.len()) == omega && maximum(&fam)?.as_ref() == Some(&desc);
        rec.check("star_family_round_trip", ok, || format!("{desc:?}"));

        let q = random_subspace(ctx, 4, 3, rng);
        let desc = FamilyDescriptor::Within { q };
        let fam = build_family(&spec, &desc, caps.enumeration_cap)?;
        let ok = BigUint::from(fam.len()) == omega && maximum(&fam)?.as_ref() == Some(&desc);
        rec.check("within_family_round_trip", ok, || format!("{desc:?}"));

        if ctx.num_primes() > 1 {
            let t = random_invertible(ctx, 4, rng)?;
            let mut star_primes: Vec<u64> = ctx.factors().iter().filter(|_| rng.gen_bool(0.5)).map(|f| f.prime).collect();
            if star_primes.is_empty() {
                star_primes.push(ctx.factors()[0].prime);
            } else if star_primes.len() == ctx.num_primes() {
                star_primes.pop();
            }
            let desc = FamilyDescriptor::Mixed { star_primes: star_primes.clone(), t };
            let fam = build_family(&spec, &desc, caps.enumeration_cap)?;
            let ok = BigUint::from(fam.len()) == omega
                && match maximum(&fam)? {
                    Some(found @ FamilyDescriptor::Mixed { .. }) => {
                        let FamilyDescriptor::Mixed { star_primes: got, .. } = &found else { unreachable!() };
                        *got == star_primes && same_members(build_family(&spec, &found, caps.enumeration_cap)?, fam.clone())
                    }
                    _ => false,
                };
            rec.check("mixed_family_round_trip", ok, || format!("star primes {star_primes:?}"));
        }
    }
    if spec.vertex_count().to_u64().is_some_and(|v| v <= caps.vertex_cap) {
        let found = brute_force_max_clique(&spec, caps.vertex_cap)?;
        rec.check("solver_matches_clique_number", found.complete && BigUint::from(found.size) == omega, || {
            format!("solver {} vs formula {omega}", found.size)
        });
    }
    Ok(())
}

pub fn run(moduli: &[u64], suites: &[Suite], seed: u64, samples: u64, caps: &Caps, fault: bool) -> CliResult<VerifyReport> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let rings: Vec<RingContext> = moduli.iter().map(|&h| RingContext::new(h)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for &suite in &suites {
        for ctx in &rings {
            let stream = seed ^ ctx.modulus().wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((suite as u64) << 56);
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            let mut rec = Recorder { suite: suite.name(), h: ctx.modulus(), fault, rows: Vec::new() };
            match suite {
                Suite::Crt => crt(ctx, &mut rec, &mut rng, samples)?,
                Suite::Ranks => ranks(ctx, &mut rec, &mut rng, samples, caps)?,
                Suite::Dimension => dimension(ctx, &mut rec, &mut rng, samples)?,
                Suite::Duality => duality(ctx, &mut rec, &mut rng, samples)?,
                Suite::Cliques => cliques(ctx, &mut rec, &mut rng, samples, caps)?,
            }
            rows.extend(rec.rows);
        }
    }
    Ok(VerifyReport {
        seed,
        samples,
        moduli: moduli.to_vec(),
        suites: suites.iter().map(|s| s.name()).collect(),
        passed: rows.iter().all(|r| r.pass),
        rows,
    })
}
