#![allow(dead_code)]

use grzh_core::matrix::{self, MatrixZh};
use grzh_core::{RingContext, Subspace};
use rand::Rng;

pub fn random_matrix(h: u64, rows: usize, cols: usize, rng: &mut impl Rng) -> MatrixZh {
    MatrixZh::from_vec(h, rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..h)).collect()).unwrap()
}

pub fn random_invertible(ctx: &RingContext, n: usize, rng: &mut impl Rng) -> MatrixZh {
    loop {
        let t = random_matrix(ctx.modulus(), n, n, rng);
        if matrix::is_invertible(ctx, &t).unwrap() {
            return t;
        }
    }
}

/// Uniform over spanning sets, not over subspaces; fine for property tests.
pub fn random_subspace(ctx: &RingContext, n: usize, m: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        if let Ok(s) = Subspace::from_matrix(ctx, &random_matrix(ctx.modulus(), m, n, rng)) {
            return s;
        }
    }
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
