//! Arithmetic in the residue ring `Z_h`.
//!
//! A [`RingContext`] owns the modulus together with its prime factorization
//! `h = p_1^{s_1} ... p_t^{s_t}` (primes in increasing order) and the CRT
//! idempotents used to move between `Z_h` and the local rings `Z_{p_i^{s_i}}`.
//! Residues are plain `u64` values in `[0, h)`; products go through `u128`, so
//! nothing overflows for `h <= 2^40`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`RingContext::new`].
pub const MAX_MODULUS: u64 = 1 << 40;

/// One factor `p^s` of the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
    /// `prime^exponent`
    pub modulus: u64,
}

/// Exponent vector `(a_1, ..., a_t)` with `0 <= a_i <= s_i`.
///
/// Indexes the ideal `J_(a_1..a_t) = (prod p_i^{a_i})` and the diagonal entries
/// of the matrix normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(t: usize) -> Self {
        ExponentVector(vec![0; t])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

/// `x = unit * prod p_i^{a_i}`; see [`RingContext::unit_decompose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitDecomposition {
    pub unit: u64,
    pub exponents: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    modulus: u64,
    factors: Vec<PrimePower>,
    /// `e_i ≡ 1 (mod p_i^{s_i})`, `e_i ≡ 0 (mod p_j^{s_j})` for `j != i`.
    idempotents: Vec<u64>,
}

/// Trial-division factorization of `h`.
pub fn factorize(h: u64) -> Result<RingContext> {
    RingContext::new(h)
}

impl RingContext {
    pub fn new(h: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&h) {
            return Err(Error::InvalidModulus(h));
        }
        let mut factors = Vec::new();
        let mut rest = h;
        let mut p = 2u64;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                let mut exponent = 0;
                let mut modulus = 1;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    exponent += 1;
                    modulus *= p;
                }
                factors.push(PrimePower { prime: p, exponent, modulus });
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push(PrimePower { prime: rest, exponent: 1, modulus: rest });
        }
        let idempotents = factors
            .iter()
            .map(|f| {
                let co = h / f.modulus;
                let inv = inv_mod(co % f.modulus, f.modulus).expect("coprime cofactor");
                mul_mod(co, inv, h)
            })
            .collect();
        Ok(RingContext { modulus: h, factors, idempotents })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct prime factors `t`.
    #[inline]
    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_local(&self) -> bool {
        self.factors.len() == 1
    }

    /// Exponents `(s_1, ..., s_t)`; the exponent vector of zero.
    pub fn full_exponents(&self) -> ExponentVector {
        ExponentVector(self.factors.iter().map(|f| f.exponent).collect())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.factors.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, count: self.factors.len() })
        }
    }

    /// The local ring `Z_{p_i^{s_i}}`.
    pub fn local(&self, i: usize) -> Result<RingContext> {
        self.check_index(i)?;
        let f = self.factors[i];
        Ok(RingContext { modulus: f.modulus, factors: vec![f], idempotents: vec![1] })
    }

    /// The complementary ring `Z_{h / p_i^{s_i}}`, absent when `t = 1`.
    pub fn complement(&self, i: usize) -> Result<Option<RingContext>> {
        self.check_index(i)?;
        let co = self.modulus / self.factors[i].modulus;
        if co == 1 {
            Ok(None)
        } else {
            RingContext::new(co).map(Some)
        }
    }

    /// Canonical representative of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.modulus)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        inv_mod(a % self.modulus, self.modulus)
    }

    pub fn is_unit(&self, x: u64) -> bool {
        gcd(x % self.modulus, self.modulus) == 1
    }

    /// `|Z_h^*| = h * prod (1 - 1/p_i)`.
    pub fn unit_count(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.modulus, |acc, f| acc / f.prime * (f.prime - 1))
    }

    /// Per-prime valuations of `x`, capped at `s_i`. Zero maps to `(s_1..s_t)`.
    pub fn valuations(&self, x: u64) -> ExponentVector {
        let x = x % self.modulus;
        ExponentVector(
            self.factors
                .iter()
                .map(|f| {
                    if x == 0 {
                        return f.exponent;
                    }
                    let mut v = 0;
                    let mut y = x;
                    while v < f.exponent && y.is_multiple_of(f.prime) {
                        y /= f.prime;
                        v += 1;
                    }
                    v
                })
                .collect(),
        )
    }

    /// `prod p_i^{a_i} mod h`, the generator of `J_(a)`.
    pub fn ideal_generator(&self, alphas: &ExponentVector) -> u64 {
        let g = self
            .factors
            .iter()
            .zip(&alphas.0)
            .fold(1u128, |acc, (f, &a)| acc * (f.prime as u128).pow(a));
        (g % self.modulus as u128) as u64
    }

    /// `x ∈ J_(a)`, i.e. `prod p_i^{a_i}` divides the representative of `x`.
    pub fn in_ideal(&self, x: u64, alphas: &ExponentVector) -> bool {
        let x = x % self.modulus;
        self.factors
            .iter()
            .zip(&alphas.0)
            .all(|(f, &a)| x.is_multiple_of(f.prime.pow(a.min(f.exponent))))
    }

    /// Writes `x = u * prod p_i^{a_i}` with `u` a unit.
    ///
    /// The exponent vector is unique. The unit is only determined modulo
    /// `J_(s_1 - a_1, ..., s_t - a_t)`; the smallest unit in that coset is
    /// returned. Zero decomposes as `1 * prod p_i^{s_i}`.
    pub fn unit_decompose(&self, x: u64) -> UnitDecomposition {
        let x = x % self.modulus;
        let exponents = self.valuations(x);
        if x == 0 {
            return UnitDecomposition { unit: 1, exponents };
        }
        // u is pinned modulo M = prod p_i^{s_i - a_i}; other digits are free
        let mut residues = Vec::with_capacity(self.factors.len());
        let mut moduli = Vec::with_capacity(self.factors.len());
        for (i, f) in self.factors.iter().enumerate() {
            let a = exponents.0[i];
            let m = f.prime.pow(f.exponent - a);
            let xi = (x % f.modulus) / f.prime.pow(a);
            let other: u64 = self
                .factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1u64, |acc, (j, g)| mul_mod(acc, pow_mod(g.prime, exponents.0[j] as u64, m.max(1)), m.max(1)));
            let r = if m == 1 { 0 } else { mul_mod(xi % m, inv_mod(other % m, m).expect("unit cofactor"), m) };
            residues.push(r);
            moduli.push(m);
        }
        let big_m: u64 = moduli.iter().product();
        let base = crt_general(&residues, &moduli);
        let mut u = base;
        while gcd(u, self.modulus) != 1 {
            u += big_m;
        }
        UnitDecomposition { unit: u, exponents }
    }

    /// `pi_i`: reduction to `Z_{p_i^{s_i}}`.
    pub fn pi(&self, x: u64, i: usize) -> Result<u64> {
        self.check_index(i)?;
        Ok(x % self.factors[i].modulus)
    }

    /// `theta_i`: reduction to `Z_{h / p_i^{s_i}}`.
    pub fn theta(&self, x: u64, i: usize) -> Result<u64> {
        self.check_index(i)?;
        Ok(x % (self.modulus / self.factors[i].modulus))
    }

    /// Inverse of `(pi_1, ..., pi_t)`.
    pub fn crt_lift(&self, residues: &[u64]) -> Result<u64> {
        if residues.len() != self.factors.len() {
            return Err(Error::Shape(format!(
                "expected {} residues, got {}",
                self.factors.len(),
                residues.len()
            )));
        }
        let mut acc = 0u64;
        for ((f, &r), &e) in self.factors.iter().zip(residues).zip(&self.idempotents) {
            if r >= f.modulus {
                return Err(Error::ResidueOutOfRange { value: r, modulus: f.modulus });
            }
            acc = self.add(acc, self.mul(r, e));
        }
        Ok(acc)
    }

    /// Unchecked lift for internal callers that already hold in-range residues.
    pub(crate) fn crt_lift_unchecked(&self, residues: impl IntoIterator<Item = u64>) -> u64 {
        residues
            .into_iter()
            .zip(&self.idempotents)
            .fold(0, |acc, (r, &e)| self.add(acc, self.mul(r, e)))
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// CRT for pairwise coprime moduli (some may be 1).
fn crt_general(residues: &[u64], moduli: &[u64]) -> u64 {
    let mut x = 0u128;
    let mut m = 1u128;
    for (&r, &mi) in residues.iter().zip(moduli) {
        if mi == 1 {
            continue;
        }
        // x + m*k ≡ r (mod mi)
        let diff = (r as i128 - (x % mi as u128) as i128).rem_euclid(mi as i128) as u64;
        let inv = inv_mod((m % mi as u128) as u64, mi).expect("coprime moduli");
        let k = mul_mod(diff, inv, mi) as u128;
        x += m * k;
        m *= mi as u128;
    }
    x as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(h: u64) -> RingContext {
        RingContext::new(h).unwrap()
    }

    fn primes(h: u64) -> Vec<(u64, u32)> {
        ctx(h).factors().iter().map(|f| (f.prime, f.exponent)).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(primes(12), vec![(2, 2), (3, 1)]);
        assert_eq!(primes(6), vec![(2, 1), (3, 1)]);
        assert_eq!(primes(7), vec![(7, 1)]);
        assert_eq!(primes(1 << 40), vec![(2, 40)]);
        assert_eq!(RingContext::new(1), Err(Error::InvalidModulus(1)));
        assert_eq!(RingContext::new(0), Err(Error::InvalidModulus(0)));
        assert!(RingContext::new((1 << 40) + 1).is_err());
    }

    #[test]
    fn units() {
        let r = ctx(12);
        assert!(r.is_unit(5));
        assert!(!r.is_unit(0));
        assert!(!r.is_unit(8));
    }

    #[test]
    fn unit_decompose_examples() {
        // brute force over units of Z_12 with u*4 ≡ 8 gives {5, 11}
        let d = ctx(12).unit_decompose(8);
        assert_eq!(d.exponents, ExponentVector(vec![2, 0]));
        assert_eq!(d.unit, 5);
        let d = ctx(12).unit_decompose(1);
        assert_eq!((d.unit, d.exponents), (1, ExponentVector(vec![0, 0])));
        let d = ctx(6).unit_decompose(3);
        assert_eq!((d.unit, d.exponents), (1, ExponentVector(vec![0, 1])));
        let d = ctx(12).unit_decompose(0);
        assert_eq!((d.unit, d.exponents), (1, ExponentVector(vec![2, 1])));
    }

    #[test]
    fn unit_decompose_is_minimal_coset_representative() {
        for h in [4u64, 6, 8, 9, 12, 18, 30, 36, 60] {
            let r = ctx(h);
            for x in 1..h {
                let d = r.unit_decompose(x);
                let g = r.ideal_generator(&d.exponents);
                let brute = (1..h).find(|&u| r.is_unit(u) && r.mul(u, g) == x).unwrap();
                assert_eq!(d.unit, brute, "h={h} x={x}");
            }
        }
    }

    #[test]
    fn projections() {
        let r = ctx(12);
        assert_eq!(r.pi(8, 0).unwrap(), 0);
        assert_eq!(r.pi(8, 1).unwrap(), 2);
        assert_eq!(ctx(6).pi(5, 0).unwrap(), 1);
        assert_eq!(r.theta(8, 0).unwrap(), 2);
        assert_eq!(r.theta(8, 1).unwrap(), 0);
        assert_eq!(ctx(6).theta(4, 1).unwrap(), 0);
        assert!(r.pi(1, 2).is_err());
        assert!(r.theta(1, 5).is_err());
    }

    #[test]
    fn crt_lift_examples() {
        assert_eq!(ctx(12).crt_lift(&[0, 2]).unwrap(), 8);
        assert_eq!(ctx(6).crt_lift(&[1, 1]).unwrap(), 1);
        assert_eq!(ctx(6).crt_lift(&[0, 0]).unwrap(), 0);
        assert!(ctx(6).crt_lift(&[2, 0]).is_err());
        assert!(ctx(6).crt_lift(&[0]).is_err());
    }

    #[test]
    fn ideal_membership() {
        let r = ctx(12);
        assert!(r.in_ideal(8, &ExponentVector(vec![2, 0])));
        assert!(!r.in_ideal(8, &ExponentVector(vec![0, 1])));
        for a in [vec![0, 0], vec![2, 1], vec![1, 1]] {
            assert!(r.in_ideal(0, &ExponentVector(a)));
        }
    }

    #[test]
    fn exhaustive_small_moduli() {
        for h in 2..=1000u64 {
            let r = ctx(h);
            let t = r.num_primes();
            let brute_units = (0..h).filter(|&x| gcd(x, h) == 1).count() as u64;
            assert_eq!(r.unit_count(), brute_units, "h={h}");
            for x in 0..h {
                let d = r.unit_decompose(x);
                assert!(r.is_unit(d.unit));
                assert_eq!(r.mul(d.unit, r.ideal_generator(&d.exponents)), x, "h={h} x={x}");
                let res: Vec<u64> = (0..t).map(|i| r.pi(x, i).unwrap()).collect();
                assert_eq!(r.crt_lift(&res).unwrap(), x);
            }
        }
    }
}
