//! Ferrers diagrams in column-count form `[γ_1, ..., γ_n]` with
//! `1 ≤ γ_1 ≤ ... ≤ γ_n = m`: dots are right-shifted, each column's dots
//! occupy its top `γ_c` rows.

use crate::error::{Error, Result};
use crate::skeleton::BinaryVector;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FerrersDiagram {
    cols: Vec<usize>,
}

impl FerrersDiagram {
    pub fn new(cols: Vec<usize>) -> Result<FerrersDiagram> {
        if cols.is_empty() {
            return Err(Error::InvalidDiagram("no columns".into()));
        }
        if cols[0] == 0 {
            return Err(Error::InvalidDiagram("zero-height column".into()));
        }
        if cols.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidDiagram(
                "column counts must be non-decreasing left to right".into(),
            ));
        }
        Ok(FerrersDiagram { cols })
    }

    pub fn full(m: usize, n: usize) -> FerrersDiagram {
        assert!(m >= 1 && n >= 1);
        FerrersDiagram { cols: vec![m; n] }
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Number of columns.
    pub fn n(&self) -> usize {
        self.cols.len()
    }

    /// Number of rows, `γ_n`.
    pub fn m(&self) -> usize {
        *self.cols.last().unwrap()
    }

    pub fn dots(&self) -> usize {
        self.cols.iter().sum()
    }

    /// Whether cell (row r, col c), both 0-based, carries a dot.
    pub fn contains(&self, r: usize, c: usize) -> bool {
        c < self.n() && r < self.cols[c]
    }

    /// Dot count of row `r` (0-based).
    pub fn row_count(&self, r: usize) -> usize {
        self.cols.iter().filter(|&&g| g > r).count()
    }

    pub fn row_counts(&self) -> Vec<usize> {
        (0..self.m()).map(|r| self.row_count(r)).collect()
    }

    /// Transposed diagram `[ρ_m, ..., ρ_1]`; an involution.
    pub fn transpose(&self) -> FerrersDiagram {
        let m = self.m();
        let cols = (0..m).rev().map(|r| self.row_count(r)).collect();
        FerrersDiagram { cols }
    }

    /// The dimension upper bound `min_i ν_i` where `ν_i` counts the dots
    /// left after removing the first `i` rows and the rightmost
    /// `delta - 1 - i` columns.  Over-removal contributes 0.
    pub fn vmin(&self, delta: usize) -> Result<usize> {
        if delta < 1 {
            return Err(Error::InvalidParameter("delta must be at least 1".into()));
        }
        let n = self.n();
        let mut best = usize::MAX;
        for i in 0..delta {
            let keep = n.saturating_sub(delta - 1 - i);
            let vi: usize = self.cols[..keep].iter().map(|&g| g.saturating_sub(i)).sum();
            best = best.min(vi);
        }
        Ok(best)
    }

    /// Diagram of an identifying vector: row i counts the zeros to the
    /// right of the i-th one.  Returns `None` (the empty diagram, a
    /// single-subspace component) when no row has any free position.
    pub fn of_vector(v: &BinaryVector) -> Option<FerrersDiagram> {
        let bits = v.bits();
        let n = bits.len();
        let mut rows = Vec::new();
        let mut zeros_after = vec![0usize; n + 1];
        for j in (0..n).rev() {
            zeros_after[j] = zeros_after[j + 1] + usize::from(!bits[j]);
        }
        for (j, &b) in bits.iter().enumerate() {
            if b {
                rows.push(zeros_after[j + 1]);
            }
        }
        // rows is non-increasing; drop trailing zero rows
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.is_empty() {
            return None;
        }
        let width = rows[0];
        let cols = (1..=width)
            .map(|c| rows.iter().filter(|&&r| r > width - c).count())
            .collect();
        Some(FerrersDiagram { cols })
    }

    /// Removes the `drop_left` leftmost columns and the `drop_bottom`
    /// bottom rows (clamping the remaining column counts).
    pub fn subdiagram(&self, drop_left: usize, drop_bottom: usize) -> Result<FerrersDiagram> {
        if drop_left >= self.n() {
            return Err(Error::InvalidDiagram("removal exhausts all columns".into()));
        }
        let cap = self.m().saturating_sub(drop_bottom);
        let cols: Vec<usize> = self.cols[drop_left..].iter().map(|&g| g.min(cap)).collect();
        if cols.last() == Some(&0) || cols.is_empty() {
            return Err(Error::InvalidDiagram("removal exhausts the diagram".into()));
        }
        // leading zero-height columns disappear
        let first = cols.iter().position(|&g| g > 0).unwrap();
        FerrersDiagram::new(cols[first..].to_vec())
    }

    /// Parses the CLI literal syntax, e.g. `2,2,4,4,6,6`.
    pub fn parse(text: &str) -> Result<FerrersDiagram> {
        let cols: Result<Vec<usize>> = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad column count `{tok}`")))
            })
            .collect();
        FerrersDiagram::new(cols?)
    }
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.cols.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", strs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn fd(cols: &[usize]) -> FerrersDiagram {
        FerrersDiagram::new(cols.to_vec()).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(fd(&[1, 2, 4]).transpose(), fd(&[1, 1, 2, 3]));
        assert_eq!(fd(&[1, 2, 4]).transpose().transpose(), fd(&[1, 2, 4]));
        assert_eq!(
            FerrersDiagram::full(3, 5).transpose(),
            FerrersDiagram::full(5, 3)
        );
        assert_eq!(fd(&[2, 2, 6, 6]).transpose(), fd(&[2, 2, 2, 2, 4, 4]));
    }

    #[test]
    fn vmin_examples() {
        assert_eq!(fd(&[3, 4, 5, 6, 6, 6]).vmin(4).unwrap(), 12);
        assert_eq!(fd(&[2, 3, 4, 5, 6, 6]).vmin(4).unwrap(), 9);
        assert_eq!(FerrersDiagram::full(4, 7).vmin(1).unwrap(), 28);
        assert_eq!(fd(&[1, 2, 4]).vmin(2).unwrap(), 3);
        // over-removal exhausts the diagram
        assert_eq!(fd(&[1, 1]).vmin(4).unwrap(), 0);
        assert!(fd(&[1]).vmin(0).is_err());
    }

    #[test]
    fn of_vector_examples() {
        let v = BinaryVector::parse("10110").unwrap();
        assert_eq!(FerrersDiagram::of_vector(&v).unwrap(), fd(&[1, 3]));
        let lifted = BinaryVector::parse("1110000").unwrap();
        assert_eq!(
            FerrersDiagram::of_vector(&lifted).unwrap(),
            FerrersDiagram::full(3, 4)
        );
        let b12 = BinaryVector::parse("1100001111000000").unwrap();
        assert_eq!(
            FerrersDiagram::of_vector(&b12).unwrap(),
            fd(&[2, 2, 2, 2, 6, 6, 6, 6, 6, 6])
        );
        // all ones / trailing ones have no free cells
        assert!(FerrersDiagram::of_vector(&BinaryVector::parse("1111").unwrap()).is_none());
        assert!(FerrersDiagram::of_vector(&BinaryVector::parse("0011").unwrap()).is_none());
    }

    #[test]
    fn subdiagram_examples() {
        let f = fd(&[2, 2, 2, 2, 6, 6, 6, 6, 6, 6]);
        assert_eq!(f.subdiagram(4, 0).unwrap(), fd(&[6, 6, 6, 6, 6, 6]));
        assert_eq!(f.subdiagram(0, 0).unwrap(), f);
        // drop leftmost column and bottom row
        assert_eq!(
            fd(&[2, 4, 5, 5, 6, 6]).subdiagram(1, 1).unwrap(),
            fd(&[4, 5, 5, 5, 5])
        );
        assert!(fd(&[1, 2]).subdiagram(2, 0).is_err());
    }

    #[test]
    fn subdiagram_scaled_case() {
        // [3a,(x a) 4a,(x a) 5a,(x a) 6a (x 3a)] loses its leftmost a
        // columns and bottom a rows at a = 2
        let f = fd(&[6, 6, 8, 8, 10, 10, 12, 12, 12, 12, 12, 12]);
        let red = f.subdiagram(2, 2).unwrap();
        assert_eq!(red, fd(&[8, 8, 10, 10, 10, 10, 10, 10, 10, 10]));
    }

    #[test]
    fn vmin_transpose_symmetry_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..300 {
            let n = rng.gen_range(1..7);
            let mut cols = Vec::with_capacity(n);
            let mut h = 0usize;
            for _ in 0..n {
                h += rng.gen_range(0..4);
                cols.push(h.max(1));
            }
            let f = FerrersDiagram::new(cols).unwrap();
            let max_delta = f.m().min(f.n());
            for delta in 1..=max_delta {
                assert_eq!(
                    f.vmin(delta).unwrap(),
                    f.transpose().vmin(delta).unwrap(),
                    "vmin transpose symmetry failed for {f} delta={delta}"
                );
            }
            assert_eq!(f.dots(), f.transpose().dots());
        }
    }

    #[test]
    fn parse_literal() {
        assert_eq!(
            FerrersDiagram::parse("2,2,4,4,6,6").unwrap(),
            fd(&[2, 2, 4, 4, 6, 6])
        );
        assert!(FerrersDiagram::parse("3,2").is_err());
        assert!(FerrersDiagram::parse("a,b").is_err());
    }
}
