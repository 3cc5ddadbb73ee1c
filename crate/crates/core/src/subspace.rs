//! Subspaces of GF(q)^n represented by their unique RREF generator matrix.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::skeleton::BinaryVector;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    gen: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row space of an arbitrary matrix; zero rows are dropped so the
    /// generator has full row rank.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            rows.push(r.row(i).to_vec());
        }
        let gen = Matrix::from_rows(m.field, rows).expect("rows from rref");
        Subspace { gen, pivots }
    }

    /// Wraps a matrix already known to be in RREF with full row rank.
    pub fn from_rref_unchecked(gen: Matrix, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(gen.rows, pivots.len());
        Subspace { gen, pivots }
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.gen.rows
    }

    pub fn ambient(&self) -> usize {
        self.gen.cols
    }

    /// The identifying vector: ones exactly at the pivot columns.
    pub fn identifying_vector(&self) -> BinaryVector {
        let mut bits = vec![false; self.ambient()];
        for &p in &self.pivots {
            bits[p] = true;
        }
        BinaryVector::new(bits)
    }
}

/// Subspace distance `dim U + dim V - 2 dim(U ∩ V)`, computed as
/// `2 rank(stack(U, V)) - dim U - dim V`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.ambient() != v.ambient() || u.gen.field != v.gen.field {
        return Err(Error::ShapeMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            u.ambient(),
            v.ambient()
        )));
    }
    let stacked = u.gen.stack(&v.gen)?;
    Ok(2 * stacked.rank() - u.dim() - v.dim())
}
