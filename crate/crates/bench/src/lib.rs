//! Shared fixtures for the criterion benches.

use cdc_core::{FerrersDiagram, Gf, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub fn random_matrix(q: u16, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    Matrix::random(Gf::new(q).unwrap(), rows, cols, &mut rng)
}

pub fn random_diagram(max_cols: usize, seed: u64) -> FerrersDiagram {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_cols);
    let mut h = 0usize;
    let cols = (0..n)
        .map(|_| {
            h += rng.gen_range(0..4);
            h.max(1)
        })
        .collect();
    FerrersDiagram::new(cols).unwrap()
}
