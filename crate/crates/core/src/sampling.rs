//! Seeded random rational data for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{rat, DenseMatrix, Rational};

/// Seed of trial `index` in a run seeded with `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator uniform in `[-99, 99]`, denominator uniform in `[1, 9]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-99..=99), rng.gen_range(1..=9))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix<Rational> {
    DenseMatrix::from_fn(rows, cols, |_, _| random_rational(rng))
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}
