//! Dense matrices over GF(q) with exact rank / RREF via Gaussian
//! elimination.  Pivots are chosen as the first nonzero entry scanning
//! top-to-bottom, left-to-right; there are no pivoting heuristics since the
//! arithmetic is exact.

use crate::error::{Error, Result};
use crate::field::Gf;
use rand::Rng;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub field: Gf,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zero(field: Gf, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Gf, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Gf, rows: Vec<Vec<u8>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged row lengths".into()));
            }
            for &v in row {
                if v as u16 >= field.q() {
                    return Err(Error::InvalidParameter(format!(
                        "entry code {v} out of range for GF({})",
                        field.q()
                    )));
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Adds `c * other` into `self` in place.
    pub fn add_scaled_in_place(&mut self, other: &Matrix, c: u8) {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stacks `self` on top of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {}x{} over GF({}) with {}x{} over GF({})",
                self.rows,
                self.cols,
                self.field.q(),
                other.rows,
                other.cols,
                other.field.q()
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::ShapeMismatch("matrix product shape mismatch".into()));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Rank over GF(q); does not modify the receiver.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        rank_in_place(self.field, &mut work, self.rows, self.cols)
    }

    /// Unique reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pr = None;
            for i in r..m.rows {
                if m.get(i, c) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != r {
                for k in 0..m.cols {
                    let (a, b) = (m.get(r, k), m.get(pr, k));
                    m.set(r, k, b);
                    m.set(pr, k, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for k in 0..m.cols {
                m.set(r, k, f.mul(m.get(r, k), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for k in 0..m.cols {
                    let v = f.sub(m.get(i, k), f.mul(factor, m.get(r, k)));
                    m.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Serializes in the text format `r c q` then `r` rows of element codes.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field.q());
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse("header must be `r c q`".into()));
        }
        let rows: usize = parts[0]
            .parse()
            .map_err(|_| Error::Parse("bad row count".into()))?;
        let cols: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse("bad col count".into()))?;
        let q: u16 = parts[2]
            .parse()
            .map_err(|_| Error::Parse("bad field order".into()))?;
        let field = Gf::new(q)?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing matrix row".into()))?;
            for tok in line.split_whitespace() {
                let v: u8 = tok
                    .parse()
                    .map_err(|_| Error::Parse("bad element code".into()))?;
                if v as u16 >= q {
                    return Err(Error::Parse(format!("element code {v} not below q={q}")));
                }
                data.push(v);
            }
            if data.len() % cols != 0 {
                return Err(Error::Parse("row with wrong number of entries".into()));
            }
        }
        if data.len() != rows * cols {
            return Err(Error::Parse("wrong number of entries".into()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn random<R: Rng>(field: Gf, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let q = field.q();
        let data = (0..rows * cols)
            .map(|_| (rng.gen_range(0..q)) as u8)
            .collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Row-reduces `data` in place and returns the rank.  Shared by the hot
/// enumeration paths, which avoid the full RREF bookkeeping.
pub(crate) fn rank_in_place(f: Gf, data: &mut [u8], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let mut pr = None;
        for r in rank..rows {
            if data[r * cols + c] != 0 {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        if pr != rank {
            for k in c..cols {
                data.swap(rank * cols + k, pr * cols + k);
            }
        }
        let inv = f.inv(data[rank * cols + c]);
        for r in rank + 1..rows {
            let factor = f.mul(data[r * cols + c], inv);
            if factor == 0 {
                continue;
            }
            for k in c..cols {
                let v = f.sub(data[r * cols + k], f.mul(factor, data[rank * cols + k]));
                data[r * cols + k] = v;
            }
        }
        rank += 1;
    }
    rank
}
