//! Brute-force reference computations.
//!
//! Everything here works straight from the definitions (minors, explicit
//! spans, exhaustive factorization search) and never calls the normal-form
//! machinery, so it can cross-check it. Costs grow exponentially; each entry
//! point takes or enforces a cap.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::MatrixZh;
use crate::ring::{gcd, RingContext};

/// Default cap on the number of minors enumerated.
pub const MINOR_CAP: u64 = 1_000_000;
/// Default cap on factorization search states.
pub const FACTOR_SEARCH_CAP: u64 = 10_000_000;

/// Determinant by Laplace expansion along the first row.
pub fn determinant_by_expansion(a: &MatrixZh) -> u64 {
    assert!(a.is_square(), "square matrix required");
    let q = a.modulus() as i128;
    fn rec(a: &MatrixZh, rows: &[usize], cols: &[usize], q: i128) -> i128 {
        if rows.is_empty() {
            return 1 % q;
        }
        let r = rows[0];
        let mut acc = 0i128;
        for (k, &c) in cols.iter().enumerate() {
            let v = a.get(r, c) as i128;
            if v == 0 {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = rec(a, &rows[1..], &rest, q);
            let term = v * sub % q;
            acc = if k % 2 == 0 { (acc + term) % q } else { (acc - term) % q };
        }
        acc.rem_euclid(q)
    }
    let idx: Vec<usize> = (0..a.rows()).collect();
    rec(a, &idx, &idx, q) as u64
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// All `k x k` minors of `a`.
pub fn minors(a: &MatrixZh, k: usize) -> Vec<u64> {
    let row_sets = combinations(a.rows(), k);
    let col_sets = combinations(a.cols(), k);
    let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
    for rs in &row_sets {
        let sub = a.select_rows(rs);
        for cs in &col_sets {
            out.push(determinant_by_expansion(&sub.select_cols(cs)));
        }
    }
    out
}

/// `Ann(I)` is zero for the ideal `I` generated by `gens` in `Z_h`.
///
/// `I = (g)` with `g = gcd(gens, h)` and `Ann((g)) = (h / g)`.
fn annihilator_is_zero(h: u64, gens: &[u64]) -> bool {
    gens.iter().fold(h, |g, &x| gcd(g, x)) == 1
}

/// McCoy rank from the definition `max { k : Ann(I_k(A)) = 0 }`.
pub fn mccoy_rank_by_annihilator(a: &MatrixZh, cap: u64) -> Result<usize> {
    let h = a.modulus();
    let kmax = a.rows().min(a.cols());
    let needed: u64 = (1..=kmax).map(|k| binomial(a.rows(), k) * binomial(a.cols(), k)).sum();
    if needed > cap {
        return Err(Error::cap("minor enumeration", needed, cap));
    }
    let mut rank = 0;
    for k in 1..=kmax {
        if annihilator_is_zero(h, &minors(a, k)) {
            rank = k;
        } else {
            break;
        }
    }
    Ok(rank)
}

/// Rows are unimodular (admit a right inverse) iff the maximal minors
/// generate the unit ideal.
pub fn is_unimodular_by_minors(rows: &MatrixZh) -> bool {
    if rows.rows() > rows.cols() {
        return false;
    }
    if rows.rows() == 0 {
        return true;
    }
    annihilator_is_zero(rows.modulus(), &minors(rows, rows.rows()))
}

fn for_each_vector(h: u64, len: usize, mut f: impl FnMut(&[u64]) -> bool) {
    let mut v = vec![0u64; len];
    loop {
        if !f(&v) {
            return;
        }
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            v[i] += 1;
            if v[i] < h {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// The row module `{ x A : x in Z_h^m }` as an explicit set.
pub fn row_span(a: &MatrixZh) -> HashSet<Vec<u64>> {
    let h = a.modulus();
    let mut out = HashSet::new();
    for_each_vector(h, a.rows(), |x| {
        let mut v = vec![0u64; a.cols()];
        for (i, &c) in x.iter().enumerate() {
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = ((*slot as u128 + c as u128 * a.get(i, j) as u128) % h as u128) as u64;
            }
        }
        out.insert(v);
        true
    });
    out
}

/// `{ y : y . x = 0 for every row x of a }`.
pub fn orthogonal_module(a: &MatrixZh) -> HashSet<Vec<u64>> {
    let h = a.modulus() as u128;
    let mut out = HashSet::new();
    for_each_vector(a.modulus(), a.cols(), |y| {
        let ok = (0..a.rows()).all(|i| {
            a.row(i).iter().zip(y).map(|(&x, &z)| x as u128 * z as u128).sum::<u128>() % h == 0
        });
        if ok {
            out.insert(y.to_vec());
        }
        true
    });
    out
}

/// Size of a largest unimodular subset of the module `v` (its dimension),
/// found by exhaustive search up to `max_dim`.
pub fn module_dimension(h: u64, n: usize, v: &HashSet<Vec<u64>>, max_dim: usize) -> usize {
    let mut candidates: Vec<&Vec<u64>> =
        v.iter().filter(|x| x.iter().fold(h, |g, &c| gcd(g, c)) == 1).collect();
    candidates.sort();
    if candidates.is_empty() {
        return 0;
    }
    let mut best = 1;
    let mut chosen: Vec<&Vec<u64>> = Vec::new();
    fn search<'a>(
        h: u64,
        n: usize,
        cands: &[&'a Vec<u64>],
        start: usize,
        chosen: &mut Vec<&'a Vec<u64>>,
        best: &mut usize,
        max_dim: usize,
    ) {
        if *best >= max_dim {
            return;
        }
        for i in start..cands.len() {
            chosen.push(cands[i]);
            let rows: Vec<u64> = chosen.iter().flat_map(|r| r.iter().copied()).collect();
            let m = MatrixZh::from_vec(h, chosen.len(), n, rows).expect("in range");
            if is_unimodular_by_minors(&m) {
                *best = (*best).max(chosen.len());
                search(h, n, cands, i + 1, chosen, best, max_dim);
            }
            chosen.pop();
            if *best >= max_dim {
                return;
            }
        }
    }
    search(h, n, &candidates, 0, &mut chosen, &mut best, max_dim.min(n));
    best
}

/// `dim(A ∩ B)` from the explicit intersection of the two row modules.
pub fn intersection_dimension(a: &MatrixZh, b: &MatrixZh) -> usize {
    let sa = row_span(a);
    let sb = row_span(b);
    let inter: HashSet<Vec<u64>> = sa.intersection(&sb).cloned().collect();
    module_dimension(a.modulus(), a.cols(), &inter, a.rows().min(b.rows()))
}

/// Inner rank by exhaustive search for a factorization `A = B C`.
///
/// For each width `r`, enumerates `C` and checks every row of `A` lies in the
/// row span of `C`.
pub fn inner_rank_by_factorization(ctx: &RingContext, a: &MatrixZh, cap: u64) -> Result<usize> {
    let h = ctx.modulus();
    let (m, n) = (a.rows(), a.cols());
    if a.is_zero() {
        return Ok(0);
    }
    let full = m.min(n);
    for r in 1..full {
        let states = (h as f64).powi((r * (n + 1)) as i32);
        if states > cap as f64 {
            return Err(Error::cap("factorization search", states as u64, cap));
        }
        let targets: Vec<Vec<u64>> = (0..m).map(|i| a.row(i).to_vec()).collect();
        let mut found = false;
        for_each_vector(h, r * n, |c| {
            let cm = MatrixZh::from_vec(h, r, n, c.to_vec()).expect("in range");
            let span = row_span(&cm);
            if targets.iter().all(|t| span.contains(t)) {
                found = true;
                return false;
            }
            true
        });
        if found {
            return Ok(r);
        }
    }
    Ok(full)
}
