//! Smith elimination over a local ring `Z_{p^e}`.
//!
//! Every nonzero element of `Z_{p^e}` is `u * p^v` with `u` a unit, so the
//! entry of least valuation divides every other entry and can serve as pivot.
//! Picking it at each step yields a diagonal with nondecreasing valuations.

use super::MatrixZh;
use crate::ring::{inv_mod, mul_mod};

pub(crate) struct LocalSmith {
    /// Valuations of the `min(m, n)` diagonal entries; `e` marks a zero entry.
    pub exps: Vec<u32>,
    /// `A = s * diag(p^exps) * t`, with inverses. Identity when not tracked.
    pub s: MatrixZh,
    pub s_inv: MatrixZh,
    pub t: MatrixZh,
    pub t_inv: MatrixZh,
    /// `det(s) * det(t)`, a unit.
    pub det_transform: u64,
}

#[inline]
fn valuation(x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    v
}

struct Work {
    q: u64,
    m: usize,
    n: usize,
    a: Vec<u64>,
    track: bool,
    s: Vec<u64>,
    s_inv: Vec<u64>,
    t: Vec<u64>,
    t_inv: Vec<u64>,
    det: u64,
}

impl Work {
    #[inline]
    fn sub_mul(&self, x: u64, c: u64, y: u64) -> u64 {
        // x - c*y mod q
        let cy = mul_mod(c, y, self.q);
        if x >= cy {
            x - cy
        } else {
            x + self.q - cy
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        for c in 0..n {
            self.a.swap(i * n + c, j * n + c);
        }
        self.det = (self.q - self.det) % self.q;
        if self.track {
            let m = self.m;
            for r in 0..m {
                self.s.swap(r * m + i, r * m + j);
            }
            for c in 0..m {
                self.s_inv.swap(i * m + c, j * m + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        for r in 0..self.m {
            self.a.swap(r * n + i, r * n + j);
        }
        self.det = (self.q - self.det) % self.q;
        if self.track {
            for c in 0..n {
                self.t.swap(i * n + c, j * n + c);
            }
            for r in 0..n {
                self.t_inv.swap(r * n + i, r * n + j);
            }
        }
    }

    /// row_i -= c * row_k
    fn row_sub(&mut self, i: usize, k: usize, c: u64) {
        let n = self.n;
        for col in 0..n {
            self.a[i * n + col] = self.sub_mul(self.a[i * n + col], c, self.a[k * n + col]);
        }
        if self.track {
            let m = self.m;
            // S <- S * (I + c e_ik): col_k(S) += c * col_i(S)
            let nc = (self.q - c % self.q) % self.q;
            for r in 0..m {
                self.s[r * m + k] = self.sub_mul(self.s[r * m + k], nc, self.s[r * m + i]);
            }
            // S_inv <- (I - c e_ik) S_inv
            for col in 0..m {
                self.s_inv[i * m + col] = self.sub_mul(self.s_inv[i * m + col], c, self.s_inv[k * m + col]);
            }
        }
    }

    /// col_j -= c * col_k
    fn col_sub(&mut self, j: usize, k: usize, c: u64) {
        let n = self.n;
        for r in 0..self.m {
            self.a[r * n + j] = self.sub_mul(self.a[r * n + j], c, self.a[r * n + k]);
        }
        if self.track {
            // T <- (I + c e_kj) T: row_k(T) += c * row_j(T)
            let nc = (self.q - c % self.q) % self.q;
            for col in 0..n {
                self.t[k * n + col] = self.sub_mul(self.t[k * n + col], nc, self.t[j * n + col]);
            }
            // T_inv <- T_inv (I - c e_kj)
            for r in 0..n {
                self.t_inv[r * n + j] = self.sub_mul(self.t_inv[r * n + j], c, self.t_inv[r * n + k]);
            }
        }
    }

    /// row_i *= u for a unit u.
    fn scale_row(&mut self, i: usize, u: u64, u_inv: u64) {
        let n = self.n;
        for col in 0..n {
            self.a[i * n + col] = mul_mod(self.a[i * n + col], u, self.q);
        }
        self.det = mul_mod(self.det, u_inv, self.q);
        if self.track {
            let m = self.m;
            for r in 0..m {
                self.s[r * m + i] = mul_mod(self.s[r * m + i], u_inv, self.q);
            }
            for col in 0..m {
                self.s_inv[i * m + col] = mul_mod(self.s_inv[i * m + col], u, self.q);
            }
        }
    }
}

fn identity_vec(q: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0; n * n];
    for i in 0..n {
        v[i * n + i] = 1 % q;
    }
    v
}

pub(crate) fn local_smith(a: &MatrixZh, p: u64, e: u32, track: bool) -> LocalSmith {
    let q = a.modulus();
    debug_assert_eq!(q, p.pow(e));
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        q,
        m,
        n,
        a: a.as_slice().to_vec(),
        track,
        s: if track { identity_vec(q, m) } else { Vec::new() },
        s_inv: if track { identity_vec(q, m) } else { Vec::new() },
        t: if track { identity_vec(q, n) } else { Vec::new() },
        t_inv: if track { identity_vec(q, n) } else { Vec::new() },
        det: 1 % q,
    };
    let k_max = m.min(n);
    let mut exps = vec![e; k_max];
    for k in 0..k_max {
        // least valuation in the trailing block, ties broken row-major
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for i in k..m {
            for j in k..n {
                let x = w.a[i * n + j];
                if x == 0 {
                    continue;
                }
                let v = valuation(x, p, e);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        let pv = p.pow(v);
        let unit = w.a[k * n + k] / pv;
        let unit_inv = inv_mod(unit % q, q).expect("pivot cofactor is a unit");
        w.scale_row(k, unit_inv, unit);
        for i in k + 1..m {
            let x = w.a[i * n + k];
            if x != 0 {
                w.row_sub(i, k, x / pv);
            }
        }
        for j in k + 1..n {
            let x = w.a[k * n + j];
            if x != 0 {
                w.col_sub(j, k, x / pv);
            }
        }
        exps[k] = v;
    }
    let mk = |data: Vec<u64>, r: usize, c: usize| {
        if track {
            MatrixZh::from_vec(q, r, c, data).expect("in range")
        } else {
            MatrixZh::zeros(q, 0, 0)
        }
    };
    LocalSmith {
        exps,
        s: mk(w.s, m, m),
        s_inv: mk(w.s_inv, m, m),
        t: mk(w.t, n, n),
        t_inv: mk(w.t_inv, n, n),
        det_transform: w.det,
    }
}

/// Valuations of the local invariant factors, without transforms.
pub(crate) fn local_exponents(a: &MatrixZh, p: u64, e: u32) -> Vec<u32> {
    local_smith(a, p, e, false).exps
}

/// Number of invariant factors with valuation `< bound`.
pub(crate) fn local_invariant_count(a: &MatrixZh, p: u64, e: u32, bound: u32) -> usize {
    local_exponents(a, p, e).iter().filter(|&&v| v < bound).count()
}
