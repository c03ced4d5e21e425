//! Family files: a header `h n m count`, then one line per member holding
//! the `m * n` entries of its canonical representation in row-major order.

use std::fmt::Write as _;

use super::Subspace;
use crate::error::{Error, Result};
use crate::matrix::{parse_numbers, MatrixZh};
use crate::ring::RingContext;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub modulus: u64,
    pub n: usize,
    pub m: usize,
    pub members: Vec<Subspace>,
}

pub fn write_family(h: u64, n: usize, m: usize, members: &[Subspace]) -> String {
    let mut out = format!("{h} {n} {m} {}\n", members.len());
    for s in members {
        let line: Vec<String> = s.rep().as_slice().iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Parses a family file and canonicalizes every member.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty family file".into()))?;
    let [h, n, m, count] = parse_numbers(header)?[..] else {
        return Err(Error::Parse(format!("family header must be `h n m count`, got `{header}`")));
    };
    let ctx = RingContext::new(h)?;
    let (n, m) = (n as usize, m as usize);
    if m > n {
        return Err(Error::Parse(format!("member dimension {m} exceeds ambient dimension {n}")));
    }
    let mut members = Vec::new();
    if m * n == 0 {
        // member lines are empty, so the header count is authoritative
        if let Some(line) = lines.next() {
            return Err(Error::Parse(format!("members of a {m}-subspace family in dimension {n} have no entries, got `{line}`")));
        }
        let zero = Subspace::from_matrix(&ctx, &MatrixZh::zeros(h, m, n))?;
        members.resize(count as usize, zero);
    }
    for line in lines {
        let vals = parse_numbers(line)?;
        if vals.len() != m * n {
            return Err(Error::Parse(format!("member line has {} entries, expected {}", vals.len(), m * n)));
        }
        members.push(Subspace::from_matrix(&ctx, &MatrixZh::from_vec(h, m, n, vals)?)?);
    }
    if members.len() as u64 != count {
        return Err(Error::Parse(format!("header announces {count} members, found {}", members.len())));
    }
    Ok(Family { modulus: h, n, m, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ctx = RingContext::new(6).unwrap();
        let members = crate::subspace::materialize_subspaces(&ctx, 3, 1, 1000).unwrap();
        let text = write_family(6, 3, 1, &members);
        assert!(text.starts_with("6 3 1 91\n"));
        let fam = parse_family(&text).unwrap();
        assert_eq!(fam.members, members);
        assert_eq!((fam.modulus, fam.n, fam.m), (6, 3, 1));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_family("").is_err());
        assert!(parse_family("4 2 1 2\n1 0\n").is_err());
        assert!(parse_family("4 2 1 1\n2 0\n").is_err());
        assert!(parse_family("4 2 1 1\n1 0 0\n").is_err());
        assert!(parse_family("4 2 1 1\n5 0\n").is_err());
        assert!(parse_family("4 2 0 1\n1 0\n").is_err());
    }

    #[test]
    fn zero_dimensional_members() {
        let ctx = RingContext::new(4).unwrap();
        let members = crate::subspace::materialize_subspaces(&ctx, 2, 0, 10).unwrap();
        let fam = parse_family(&write_family(4, 2, 0, &members)).unwrap();
        assert_eq!(fam.members, members);
    }
}
