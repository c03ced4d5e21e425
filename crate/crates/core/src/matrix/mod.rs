//! Dense matrices over `Z_h` and the diagonal normal form.

mod local;
mod normal_form;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::mul_mod;

pub use normal_form::{
    crt_lift_matrix, determinant, extend_to_basis, complete_basis_front, inner_rank, inverse,
    is_invertible, linearly_independent, mccoy_rank, normal_form, pi_matrix, rank_report,
    right_inverse, theta_matrix, DiagonalNormalForm, RankReport,
};

pub(crate) use local::{local_exponents, local_invariant_count};
pub(crate) use normal_form::diagonal_unit;

/// Dense row-major matrix of canonical residues modulo `modulus`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixZh {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatrixZh {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        MatrixZh { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    /// Rectangular diagonal matrix with the given leading diagonal entries.
    pub fn diagonal(modulus: u64, rows: usize, cols: usize, diag: &[u64]) -> Self {
        let mut m = Self::zeros(modulus, rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d % modulus;
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting entries outside `[0, modulus)`.
    pub fn from_vec(modulus: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= modulus) {
            return Err(Error::ResidueOutOfRange { value: v, modulus });
        }
        Ok(MatrixZh { modulus, rows, cols, data })
    }

    pub fn from_rows(modulus: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(modulus, rows.len(), cols, rows.concat())
    }

    /// Reduces arbitrary integers into `[0, modulus)`.
    pub fn from_integers(modulus: u64, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        let data = data.iter().map(|&x| (x as i128).rem_euclid(modulus as i128) as u64).collect();
        Self::from_vec(modulus, rows, cols, data)
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixZh) -> Result<MatrixZh> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.modulus != other.modulus {
            return Err(Error::Shape(format!("moduli {} and {} differ", self.modulus, other.modulus)));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &MatrixZh) -> MatrixZh {
        let q = self.modulus as u128;
        let mut out = Self::zeros(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u128;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                    if acc >= 1 << 120 {
                        acc %= q;
                    }
                }
                out.data[i * other.cols + j] = (acc % q) as u64;
            }
        }
        out
    }

    /// Entrywise reduction to `Z_q` for a divisor `q` of the modulus.
    pub fn reduce_to(&self, q: u64) -> MatrixZh {
        MatrixZh {
            modulus: q,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v % q).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &MatrixZh) -> Result<MatrixZh> {
        if self.cols != other.cols || self.modulus != other.modulus {
            return Err(Error::Shape("vstack needs equal column counts and moduli".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixZh { modulus: self.modulus, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &MatrixZh) -> Result<MatrixZh> {
        if self.rows != other.rows || self.modulus != other.modulus {
            return Err(Error::Shape("hstack needs equal row counts and moduli".into()));
        }
        let mut out = Self::zeros(self.modulus, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * (self.cols + other.cols)..(i + 1) * (self.cols + other.cols)];
            dst[..self.cols].copy_from_slice(self.row(i));
            dst[self.cols..].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatrixZh {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        MatrixZh { modulus: self.modulus, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatrixZh {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            data.extend(idx.iter().map(|&j| self.get(i, j)));
        }
        MatrixZh { modulus: self.modulus, rows: self.rows, cols: idx.len(), data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatrixZh) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j) % self.modulus;
            }
        }
    }

    pub fn scale(&self, c: u64) -> MatrixZh {
        let q = self.modulus;
        MatrixZh {
            data: self.data.iter().map(|&v| mul_mod(v, c, q)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &MatrixZh) -> Result<MatrixZh> {
        if self.rows != other.rows || self.cols != other.cols || self.modulus != other.modulus {
            return Err(Error::Shape("add needs equal shapes and moduli".into()));
        }
        let q = self.modulus;
        Ok(MatrixZh {
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| (a + b) % q).collect(),
            ..self.clone()
        })
    }

    /// Parses the text format: a header `h m n` followed by `m` lines of `n`
    /// integers in `[0, h)`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<MatrixZh> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let nums = parse_numbers(header)?;
        let [h, m, n] = nums[..] else {
            return Err(Error::Parse(format!("header must be `h m n`, got `{header}`")));
        };
        let (m, n) = (m as usize, n as usize);
        let mut data = Vec::with_capacity(m * n);
        for row in 0..m {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {}", row + 1)))?;
            let vals = parse_numbers(line)?;
            if vals.len() != n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {n}", row + 1, vals.len())));
            }
            data.extend(vals);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content `{extra}`")));
        }
        if h < 2 {
            return Err(Error::InvalidModulus(h));
        }
        MatrixZh::from_vec(h, m, n, data)
    }

    /// Text format accepted by [`MatrixZh::parse`].
    pub fn to_text(&self) -> String {
        format!("{} {} {}\n{}", self.modulus, self.rows, self.cols, self)
    }
}

pub(crate) fn parse_numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|e| Error::Parse(format!("`{tok}`: {e}"))))
        .collect()
}

impl fmt::Display for MatrixZh {
    /// Body of the text format: one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixZh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}{:?}", self.modulus, self.row_vecs())
    }
}

impl Serialize for MatrixZh {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = MatrixZh::from_rows(6, &[vec![1, 2, 3], vec![4, 5, 0]]).unwrap();
        let text = m.to_text();
        assert_eq!(text, "6 2 3\n1 2 3\n4 5 0\n");
        assert_eq!(MatrixZh::parse(&text).unwrap(), m);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(MatrixZh::parse("4 1 2\n1 4\n"), Err(Error::ResidueOutOfRange { value: 4, .. })));
        assert!(matches!(MatrixZh::parse("4 2 2\n1 1\n"), Err(Error::Parse(_))));
        assert!(matches!(MatrixZh::parse("4 1 2\n1 1 1\n"), Err(Error::Parse(_))));
        assert!(matches!(MatrixZh::parse("4 1\n"), Err(Error::Parse(_))));
        assert!(matches!(MatrixZh::parse("1 1 1\n0\n"), Err(Error::InvalidModulus(1))));
        assert!(matches!(MatrixZh::parse(""), Err(Error::Parse(_))));
        let m = MatrixZh::parse("# comment\n5 0 3\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 3));
    }

    #[test]
    fn products_and_shapes() {
        let a = MatrixZh::from_rows(4, &[vec![2, 1], vec![1, 0]]).unwrap();
        let b = MatrixZh::from_rows(4, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), MatrixZh::identity(4, 2));
        assert!(a.mul(&MatrixZh::zeros(4, 3, 1)).is_err());
        assert_eq!(a.transpose().transpose(), a);
        let s = a.vstack(&b).unwrap();
        assert_eq!(s.rows(), 4);
        assert_eq!(s.select_rows(&[2, 3]), b);
        assert_eq!(a.hstack(&b).unwrap().select_cols(&[0, 1]), a);
    }
}
