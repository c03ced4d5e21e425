//! Direct enumeration of canonical forms.
//!
//! Over `Z_{p^s}` a canonical form is fixed by its pivot columns
//! `c_1 < ... < c_m` and its non-pivot entries: entry `(r, j)` is arbitrary
//! when `j > c_r` and must be divisible by `p` when `j < c_r` (otherwise
//! column `j` would have been picked as a pivot). Composite `h` takes the
//! product over prime powers.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{count_subspaces, Subspace};
use crate::error::{Error, Result};
use crate::matrix::MatrixZh;
use crate::ring::RingContext;

pub const DEFAULT_ENUMERATION_CAP: u64 = 5_000_000;

fn pivot_sets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in start..=n - (m - cur.len()) {
            cur.push(c);
            go(c + 1, n, m, cur, out);
            cur.pop();
        }
    }
    go(0, n, m, &mut cur, &mut out);
    out
}

/// All canonical `m x n` forms over `Z_q`, `q = p^s`, in enumeration order.
pub(crate) fn local_forms(q: u64, p: u64, n: usize, m: usize) -> Vec<MatrixZh> {
    let mut out = Vec::new();
    for pivots in pivot_sets(n, m) {
        let mut base = MatrixZh::zeros(q, m, n);
        for (r, &c) in pivots.iter().enumerate() {
            base.set(r, c, 1);
        }
        // (row, col, step): the cell ranges over multiples of step
        let cells: Vec<(usize, usize, u64)> = (0..m)
            .flat_map(|r| {
                let pivots = &pivots;
                (0..n).filter(move |j| !pivots.contains(j)).map(move |j| (r, j, if j > pivots[r] { 1 } else { p }))
            })
            .collect();
        let mut digits = vec![0u64; cells.len()];
        loop {
            let mut a = base.clone();
            for (&(r, j, step), &d) in cells.iter().zip(&digits) {
                a.set(r, j, d * step);
            }
            out.push(a);
            // odometer, first cell most significant
            let mut done = true;
            for k in (0..cells.len()).rev() {
                digits[k] += 1;
                if digits[k] * cells[k].2 < q {
                    done = false;
                    break;
                }
                digits[k] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

/// Stream of all `m`-subspaces of `Z_h^n`, each exactly once.
pub struct SubspaceIter {
    ctx: RingContext,
    locals: Vec<Vec<MatrixZh>>,
    index: Vec<usize>,
    remaining: u64,
    n: usize,
    m: usize,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let rep = if self.locals.len() == 1 {
            let l = &self.locals[0][self.index[0]];
            MatrixZh::from_vec(self.ctx.modulus(), self.m, self.n, l.as_slice().to_vec()).expect("in range")
        } else {
            let data = (0..self.m * self.n)
                .map(|idx| {
                    let residues = self.locals.iter().zip(&self.index).map(|(l, &i)| l[i].as_slice()[idx]);
                    self.ctx.crt_lift_unchecked(residues)
                })
                .collect();
            MatrixZh::from_vec(self.ctx.modulus(), self.m, self.n, data).expect("in range")
        };
        // advance, first prime most significant
        for k in (0..self.index.len()).rev() {
            self.index[k] += 1;
            if self.index[k] < self.locals[k].len() {
                break;
            }
            self.index[k] = 0;
        }
        Some(Subspace::from_canonical(rep))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for SubspaceIter {}

/// Enumerates `m`-subspaces of `Z_h^n`; fails if there are more than `cap`.
pub fn enumerate_subspaces(ctx: &RingContext, n: usize, m: usize, cap: u64) -> Result<SubspaceIter> {
    if m > n {
        return Err(Error::InvalidParameters(format!("subspace dimension {m} exceeds ambient dimension {n}")));
    }
    let total: BigUint = count_subspaces(ctx, n, m);
    let remaining = match total.to_u64() {
        Some(t) if t <= cap => t,
        _ => return Err(Error::cap("subspace enumeration", total, cap)),
    };
    let locals: Vec<Vec<MatrixZh>> =
        ctx.factors().iter().map(|f| local_forms(f.modulus, f.prime, n, m)).collect();
    debug_assert_eq!(locals.iter().map(|l| l.len() as u64).product::<u64>(), remaining);
    Ok(SubspaceIter { ctx: ctx.clone(), index: vec![0; locals.len()], locals, remaining, n, m })
}

pub fn materialize_subspaces(ctx: &RingContext, n: usize, m: usize, cap: u64) -> Result<Vec<Subspace>> {
    Ok(enumerate_subspaces(ctx, n, m, cap)?.collect())
}
