//! Linear rank-metric codes over GF(q): the Gabidulin construction,
//! minimum-rank verification, Ferrers-diagram subcodes of MRD codes, and
//! the two block combination constructions used to assemble codes on
//! composite diagrams.

use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::field::{ExtEl, ExtField, Gf};
use crate::matrix::{rank_in_place, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A linear space of m×n matrices over GF(q), given by a basis of linearly
/// independent matrices.  `declared_delta` is the claimed minimum rank of
/// nonzero codewords; `support`, when present, is a Ferrers diagram outside
/// of which every basis matrix vanishes.
#[derive(Clone, Debug)]
pub struct LinearMatrixCode {
    pub field: Gf,
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<Matrix>,
    pub declared_delta: usize,
    pub support: Option<FerrersDiagram>,
}

/// How `code_min_rank` certified its answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinRankVerdict {
    /// All nonzero codewords enumerated.
    Exact(usize),
    /// Random sample of nonzero codewords.
    Sampled {
        min_observed: usize,
        samples: u64,
        seed: u64,
    },
    /// Zero-dimensional code: no nonzero codewords to measure.
    Vacuous,
}

impl MinRankVerdict {
    pub fn min_rank(&self) -> Option<usize> {
        match self {
            MinRankVerdict::Exact(r) => Some(*r),
            MinRankVerdict::Sampled { min_observed, .. } => Some(*min_observed),
            MinRankVerdict::Vacuous => None,
        }
    }
}

impl LinearMatrixCode {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero_dimensional(field: Gf, rows: usize, cols: usize, delta: usize) -> LinearMatrixCode {
        LinearMatrixCode {
            field,
            rows,
            cols,
            basis: vec![],
            declared_delta: delta,
            support: None,
        }
    }

    /// Attaches a support diagram, verifying every basis matrix vanishes
    /// outside it.
    pub fn with_support(mut self, support: FerrersDiagram) -> Result<LinearMatrixCode> {
        for b in &self.basis {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    if b.get(r, c) != 0 && !support.contains(r, c) {
                        return Err(Error::ShapeMismatch(format!(
                            "basis entry at ({r},{c}) lies outside the support {support}"
                        )));
                    }
                }
            }
        }
        self.support = Some(support);
        Ok(self)
    }

    /// The codeword with the given combination index, interpreting the
    /// index as base-q digits over the canonical basis ordering.
    pub fn codeword_by_index(&self, mut index: u64) -> Matrix {
        let q = self.field.q() as u64;
        let mut acc = Matrix::zero(self.field, self.rows, self.cols);
        for b in &self.basis {
            let digit = (index % q) as u8;
            index /= q;
            acc.add_scaled_in_place(b, digit);
        }
        assert_eq!(index, 0, "codeword index out of range");
        acc
    }

    pub fn codeword_from_coeffs(&self, coeffs: &[u8]) -> Matrix {
        assert_eq!(coeffs.len(), self.dim());
        let mut acc = Matrix::zero(self.field, self.rows, self.cols);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            acc.add_scaled_in_place(b, c);
        }
        acc
    }

    pub fn random_codeword<R: Rng>(&self, rng: &mut R) -> Matrix {
        let q = self.field.q();
        let coeffs: Vec<u8> = (0..self.dim()).map(|_| rng.gen_range(0..q) as u8).collect();
        self.codeword_from_coeffs(&coeffs)
    }

    /// Number of codewords as q^dim, saturating at u64::MAX.
    pub fn size_hint(&self) -> u64 {
        let q = self.field.q() as u64;
        let mut acc: u64 = 1;
        for _ in 0..self.dim() {
            acc = acc.saturating_mul(q);
        }
        acc
    }

    pub fn basis_independent(&self) -> bool {
        let k = self.dim();
        if k == 0 {
            return true;
        }
        let cells = self.rows * self.cols;
        let mut flat = Vec::with_capacity(k * cells);
        for b in &self.basis {
            for r in 0..self.rows {
                flat.extend_from_slice(b.row(r));
            }
        }
        rank_in_place(self.field, &mut flat, k, cells) == k
    }

    /// Basis dump: header `k m n q delta`, then each basis matrix in the
    /// plain matrix text format.
    pub fn dump_basis(&self) -> String {
        let mut s = format!(
            "{} {} {} {} {}\n",
            self.dim(),
            self.rows,
            self.cols,
            self.field.q(),
            self.declared_delta
        );
        for b in &self.basis {
            s.push_str(&b.to_text());
        }
        s
    }
}

/// Exact or sampled minimum rank of the nonzero codewords.
///
/// When `q^k <= budget` every nonzero codeword is enumerated (optionally in
/// parallel over disjoint leading-digit ranges); otherwise `budget` random
/// nonzero codewords are sampled from the seeded generator.
pub fn code_min_rank(
    code: &LinearMatrixCode,
    budget: u64,
    seed: u64,
    threads: usize,
) -> MinRankVerdict {
    let k = code.dim();
    if k == 0 {
        return MinRankVerdict::Vacuous;
    }
    if code.size_hint() <= budget {
        MinRankVerdict::Exact(min_rank_exhaustive(code, threads))
    } else {
        let q = code.field.q();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut min = usize::MAX;
        let mut samples = 0u64;
        while samples < budget {
            let coeffs: Vec<u8> = (0..k).map(|_| rng.gen_range(0..q) as u8).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            samples += 1;
            let w = code.codeword_from_coeffs(&coeffs);
            min = min.min(w.rank());
        }
        MinRankVerdict::Sampled {
            min_observed: min,
            samples,
            seed,
        }
    }
}

fn min_rank_exhaustive(code: &LinearMatrixCode, threads: usize) -> usize {
    let q = code.field.q() as usize;
    let k = code.dim();
    if threads > 1 && k >= 2 {
        let chunks: Vec<usize> = (0..q).collect();
        let mut results = vec![usize::MAX; q];
        std::thread::scope(|s| {
            for (slot, group) in results
                .chunks_mut(1)
                .zip(chunks.chunks(1))
                .collect::<Vec<_>>()
                .into_iter()
            {
                let first_digit = group[0];
                s.spawn(move || {
                    let mut acc = Matrix::zero(code.field, code.rows, code.cols);
                    acc.add_scaled_in_place(&code.basis[0], first_digit as u8);
                    slot[0] = enum_rec(code, 1, &acc, first_digit != 0);
                });
            }
        });
        results.into_iter().min().unwrap()
    } else {
        let acc = Matrix::zero(code.field, code.rows, code.cols);
        enum_rec(code, 0, &acc, false)
    }
}

fn enum_rec(code: &LinearMatrixCode, level: usize, acc: &Matrix, nonzero: bool) -> usize {
    if level == code.dim() {
        return if nonzero { acc.rank() } else { usize::MAX };
    }
    let q = code.field.q();
    let mut best = usize::MAX;
    for d in 0..q as u8 {
        let mut next = acc.clone();
        next.add_scaled_in_place(&code.basis[level], d);
        best = best.min(enum_rec(code, level + 1, &next, nonzero || d != 0));
    }
    best
}

/// Evaluation frames for the Gabidulin construction: the points at which
/// the linearized polynomials are evaluated and the basis in which the
/// values are written as matrix columns.
struct Frames {
    points: Vec<ExtEl>,
    /// Coordinate map: big x big matrix over GF(q) turning an element's
    /// power-basis coefficients into coordinates in the row basis.
    to_coords: Matrix,
}

fn frames_default(ext: &ExtField, small: usize) -> Frames {
    let points = (0..small).map(|i| ext.monomial(i)).collect();
    Frames {
        points,
        to_coords: Matrix::identity(ext.base, ext.degree),
    }
}

fn invert_basis(ext: &ExtField, row_basis: &[ExtEl]) -> Result<Matrix> {
    let d = ext.degree;
    let f = ext.base;
    // solve B * coords = value for all unit values at once: [B | I] -> [I | B^-1]
    let mut aug = Matrix::zero(f, d, 2 * d);
    for (c, el) in row_basis.iter().enumerate() {
        for (r, &v) in el.iter().enumerate() {
            aug.set(r, c, v);
        }
    }
    for i in 0..d {
        aug.set(i, d + i, 1);
    }
    let (rr, pivots) = aug.rref();
    if pivots.len() < d || pivots[d - 1] >= d {
        return Err(Error::InvalidParameter("row basis is not a basis".into()));
    }
    let mut inv = Matrix::zero(f, d, d);
    for r in 0..d {
        for c in 0..d {
            inv.set(r, c, rr.get(r, d + c));
        }
    }
    Ok(inv)
}

fn gabidulin_basis(ext: &ExtField, small: usize, delta: usize, frames: &Frames) -> Vec<Matrix> {
    let big = ext.degree;
    let f = ext.base;
    // Frobenius powers of the evaluation points
    let mut frob: Vec<Vec<ExtEl>> = vec![frames.points.to_vec()];
    for i in 1..=(small - delta) {
        let prev = &frob[i - 1];
        frob.push(prev.iter().map(|p| ext.frobenius(p)).collect());
    }
    let mut basis = Vec::with_capacity(big * (small - delta + 1));
    for fr in frob.iter().take(small - delta + 1) {
        for b in 0..big {
            let coeff = ext.monomial(b);
            let mut m = Matrix::zero(f, big, small);
            for (j, pt) in fr.iter().enumerate() {
                let val = ext.mul(&coeff, pt);
                // coordinates of val in the row basis
                for r in 0..big {
                    let mut acc = 0u8;
                    for (kk, &v) in val.iter().enumerate() {
                        acc = f.add(acc, f.mul(frames.to_coords.get(r, kk), v));
                    }
                    m.set(r, j, acc);
                }
            }
            basis.push(m);
        }
    }
    basis
}

/// Linear MRD code of dimension `max(m,n) * (min(m,n) - delta + 1)` with
/// minimum rank distance exactly `delta`: evaluations of linearized
/// polynomials of q-degree below `min(m,n) - delta + 1` at the fixed power
/// basis of GF(q^max(m,n)), transposed when `m < n`.  Deterministic for
/// fixed parameters.
pub fn gabidulin(m: usize, n: usize, delta: usize, q: u16) -> Result<LinearMatrixCode> {
    let field = Gf::new(q)?;
    let small = m.min(n);
    let big = m.max(n);
    if delta < 1 || delta > small {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} out of range for {m}x{n}"
        )));
    }
    let ext = ExtField::new(field, big);
    let frames = frames_default(&ext, small);
    let mut basis = gabidulin_basis(&ext, small, delta, &frames);
    if m < n {
        basis = basis.into_iter().map(|b| b.transpose()).collect();
    }
    Ok(LinearMatrixCode {
        field,
        rows: m,
        cols: n,
        basis,
        declared_delta: delta,
        support: None,
    })
}

/// Which way the diagram is read when carving a subcode out of an MRD code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    AsIs,
    Transposed,
}

/// Maps an m×n matrix supported on F to the equivalent n×m matrix
/// supported on the transposed diagram (transpose composed with the
/// reversal of both axes, which preserves rank).
pub fn reflect_transpose(m: &Matrix) -> Matrix {
    let mut out = Matrix::zero(m.field, m.cols, m.rows);
    for r in 0..m.rows {
        for c in 0..m.cols {
            out.set(m.cols - 1 - c, m.rows - 1 - r, m.get(r, c));
        }
    }
    out
}

fn subfilter_on(
    diagram: &FerrersDiagram,
    delta: usize,
    q: u16,
    frames: Option<Frames>,
) -> Result<LinearMatrixCode> {
    let field = Gf::new(q)?;
    let m = diagram.m();
    let n = diagram.n();
    if delta > m.min(n) {
        let code = LinearMatrixCode::zero_dimensional(field, m, n, delta);
        return code.with_support(diagram.clone());
    }
    // Build the ambient MRD code with matrices shaped m x n.  When the
    // diagram is wider than tall the evaluation happens on the transpose
    // and the basis is transposed back.
    let small = m.min(n);
    let big = m.max(n);
    let ext = ExtField::new(field, big);
    let frames = frames.unwrap_or_else(|| frames_default(&ext, small));
    let mut basis = gabidulin_basis(&ext, small, delta, &frames);
    if m < n {
        basis = basis.into_iter().map(|b| b.transpose()).collect();
    }
    let k = basis.len();
    // Constrain to zero outside the support: nullspace of the off-support
    // coordinate functionals.
    let off: Vec<(usize, usize)> = (0..m)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| !diagram.contains(r, c))
        .collect();
    let combos = if off.is_empty() {
        (0..k)
            .map(|i| {
                let mut e = vec![0u8; k];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        let mut sys = Matrix::zero(field, off.len(), k);
        for (row, &(r, c)) in off.iter().enumerate() {
            for (col, b) in basis.iter().enumerate() {
                sys.set(row, col, b.get(r, c));
            }
        }
        nullspace(&sys)
    };
    let sub_basis: Vec<Matrix> = combos
        .iter()
        .map(|coeffs| {
            let mut acc = Matrix::zero(field, m, n);
            for (b, &cf) in basis.iter().zip(coeffs) {
                acc.add_scaled_in_place(b, cf);
            }
            acc
        })
        .collect();
    let code = LinearMatrixCode {
        field,
        rows: m,
        cols: n,
        basis: sub_basis,
        declared_delta: delta,
        support: None,
    };
    code.with_support(diagram.clone())
}

/// Basis of the nullspace of `m` (solutions of m*x = 0), deterministic.
pub fn nullspace(m: &Matrix) -> Vec<Vec<u8>> {
    let f = m.field;
    let (r, pivots) = m.rref();
    let mut free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.sort_unstable();
    let mut out = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0u8; m.cols];
        v[fc] = 1;
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(pi, fc));
        }
        out.push(v);
    }
    out
}

/// Intersects a Gabidulin code with the matrices vanishing outside `F`.
/// `Transposed` runs the construction on the transposed diagram and maps
/// the result back, so the returned code is always supported on `F`.
pub fn mrd_subfilter(
    diagram: &FerrersDiagram,
    delta: usize,
    q: u16,
    orientation: Orientation,
) -> Result<LinearMatrixCode> {
    match orientation {
        Orientation::AsIs => subfilter_on(diagram, delta, q, None),
        Orientation::Transposed => {
            let t = diagram.transpose();
            let code = subfilter_on(&t, delta, q, None)?;
            let basis = code.basis.iter().map(reflect_transpose).collect();
            let out = LinearMatrixCode {
                field: code.field,
                rows: diagram.m(),
                cols: diagram.n(),
                basis,
                declared_delta: delta,
                support: None,
            };
            out.with_support(diagram.clone())
        }
    }
}

/// Dedicated realization of the `[t,t,2t,2t,3t,3t]` staircase at `t = 2`
/// (the `[2,2,4,4,6,6]` diagram) with distance 4 and dimension 8 for any
/// supported q.  The evaluation points and the column flag are aligned
/// with the subfield tower GF(q^2) ⊂ GF(q^6): points (1, w, ν, νw) and row
/// basis (1, w, ν^q, ν^q w), where GF(q^2) = <1, w> and ν lies outside it.
/// Constraining the degree-<3 linearized polynomials to map <1,w> into
/// itself and <ν, νw> into <1, w, ν^q, ν^q w> leaves an 8-dimensional
/// solution space, which meets the diagram's dimension bound.
pub fn staircase_t2_code(q: u16) -> Result<LinearMatrixCode> {
    let field = Gf::new(q)?;
    let diagram = FerrersDiagram::new(vec![2, 2, 4, 4, 6, 6]).unwrap();
    let ext = ExtField::new(field, 6);
    let d = ext.degree;
    // the subfield GF(q^2): kernel of (x -> x^{q^2} - x)
    let mut frob2 = Matrix::zero(field, d, d);
    for j in 0..d {
        let img = ext.frobenius(&ext.frobenius(&ext.monomial(j)));
        for (r, &v) in img.iter().enumerate() {
            frob2.set(r, j, v);
        }
    }
    let minus_id = frob2.sub(&Matrix::identity(field, d))?;
    let kernel = nullspace(&minus_id);
    assert_eq!(kernel.len(), 2, "GF(q^2) has q-dimension 2 inside GF(q^6)");
    let one = ext.one();
    let w: ExtEl = kernel
        .iter()
        .map(|v| v.to_vec())
        .find(|v| !is_scalar_multiple(field, v, &one))
        .expect("subfield basis element beyond GF(q)");
    // ν: first power-basis element outside GF(q^2)
    let in_span = |cands: &[ExtEl], v: &ExtEl| -> bool {
        let mut rows: Vec<Vec<u8>> = cands.to_vec();
        rows.push(v.clone());
        let m = Matrix::from_rows(field, rows).unwrap();
        m.rank() == cands.len()
    };
    let q_basis = vec![one.clone(), w.clone()];
    let nu = (1..d)
        .map(|j| ext.monomial(j))
        .find(|el| !in_span(&q_basis, el))
        .expect("element outside GF(q^2)");
    let nu_q = ext.frobenius(&nu);

    let mut points = vec![one.clone(), w.clone(), nu.clone(), ext.mul(&nu, &w)];
    complete_basis(field, &ext, &mut points);
    let mut rows_basis = vec![one, w, nu_q.clone(), ext.mul(&nu_q, &ext.monomial(0))];
    rows_basis[3] = ext.mul(&nu_q, &rows_basis[1]);
    complete_basis(field, &ext, &mut rows_basis);

    let to_coords = invert_basis(&ext, &rows_basis)?;
    let frames = Frames { points, to_coords };
    subfilter_on(&diagram, 4, q, Some(frames))
}

fn is_scalar_multiple(field: Gf, v: &[u8], w: &[u8]) -> bool {
    let m = Matrix::from_rows(field, vec![v.to_vec(), w.to_vec()]).unwrap();
    m.rank() <= 1
}

fn complete_basis(field: Gf, ext: &ExtField, partial: &mut Vec<ExtEl>) {
    let d = ext.degree;
    for j in 0..d {
        if partial.len() == d {
            break;
        }
        let cand = ext.monomial(j);
        let mut rows: Vec<Vec<u8>> = partial.to_vec();
        rows.push(cand.clone());
        let m = Matrix::from_rows(field, rows).unwrap();
        if m.rank() == partial.len() + 1 {
            partial.push(cand);
        }
    }
    assert_eq!(partial.len(), d, "could not complete to a basis");
}

/// The paired block-diagonal combination: given codes of equal dimension
/// supported on the two diagonal blocks of `F = [[F1, D], [0, F2]]`, the
/// span of the matrices `[A_i, 0; 0, B_i]` has the same dimension and
/// minimum rank distance at least `delta_1 + delta_2`.
pub fn combine_codes(
    c1: &LinearMatrixCode,
    c2: &LinearMatrixCode,
    diagram: &FerrersDiagram,
) -> Result<LinearMatrixCode> {
    if c1.dim() != c2.dim() {
        return Err(Error::ShapeMismatch(format!(
            "combined codes must have equal dimension ({} vs {})",
            c1.dim(),
            c2.dim()
        )));
    }
    if c1.field != c2.field {
        return Err(Error::ShapeMismatch("field mismatch".into()));
    }
    let (m, n) = (diagram.m(), diagram.n());
    let (m1, n1) = (c1.rows, c1.cols);
    let (m2, n2) = (c2.rows, c2.cols);
    if n1 >= n || m2 >= m {
        return Err(Error::ShapeMismatch(
            "blocks do not fit in the diagram".into(),
        ));
    }
    let n3 = n - n1;
    let m3 = m - m2;
    if m3 < m1 || n3 < n2 {
        return Err(Error::ShapeMismatch(format!(
            "block form requires m3 >= m1 and n3 >= n2 (m3={m3}, m1={m1}, n3={n3}, n2={n2})"
        )));
    }
    let field = c1.field;
    let delta = c1.declared_delta + c2.declared_delta;
    let col_off = n1 + (n3 - n2);
    let mut basis = Vec::with_capacity(c1.dim());
    for (a, b) in c1.basis.iter().zip(&c2.basis) {
        let mut mtx = Matrix::zero(field, m, n);
        for r in 0..m1 {
            for c in 0..n1 {
                mtx.set(r, c, a.get(r, c));
            }
        }
        for r in 0..m2 {
            for c in 0..n2 {
                mtx.set(m3 + r, col_off + c, b.get(r, c));
            }
        }
        basis.push(mtx);
    }
    let code = LinearMatrixCode {
        field,
        rows: m,
        cols: n,
        basis,
        declared_delta: delta,
        support: None,
    };
    code.with_support(diagram.clone())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sigma {
    Identity,
    Transpose,
}

/// The `{[A, B; 0, σ(A)]}` construction: A ranges over `c1` (placed at the
/// top-left and, through σ, at the bottom-right corner), B over `c2`
/// (spanning the remaining top-right block).  Dimension is
/// `dim c1 + dim c2`; when the nonzero words of `c1` have full rank the
/// minimum rank is at least `min(2 δ1, δ2)`.
pub fn upper_block_pair(
    c1: &LinearMatrixCode,
    c2: &LinearMatrixCode,
    sigma: Sigma,
) -> Result<LinearMatrixCode> {
    if c1.field != c2.field {
        return Err(Error::ShapeMismatch("field mismatch".into()));
    }
    let field = c1.field;
    let (ra, ca) = (c1.rows, c1.cols);
    let (rs, cs) = match sigma {
        Sigma::Identity => (ra, ca),
        Sigma::Transpose => (ca, ra),
    };
    let (rb, cb) = (c2.rows, c2.cols);
    if cb < cs {
        return Err(Error::ShapeMismatch("mirrored block wider than B".into()));
    }
    let rows = rb + rs;
    let cols = ca + cb;
    if ra > rb {
        return Err(Error::ShapeMismatch("A taller than the B row band".into()));
    }
    let delta = (2 * c1.declared_delta).min(c2.declared_delta);
    let mut basis = Vec::with_capacity(c1.dim() + c2.dim());
    for a in &c1.basis {
        let mut mtx = Matrix::zero(field, rows, cols);
        for r in 0..ra {
            for c in 0..ca {
                mtx.set(r, c, a.get(r, c));
            }
        }
        for r in 0..rs {
            for c in 0..cs {
                let v = match sigma {
                    Sigma::Identity => a.get(r, c),
                    Sigma::Transpose => a.get(c, r),
                };
                mtx.set(rows - rs + r, cols - cs + c, v);
            }
        }
        basis.push(mtx);
    }
    for b in &c2.basis {
        let mut mtx = Matrix::zero(field, rows, cols);
        for r in 0..rb {
            for c in 0..cb {
                mtx.set(r, ca + c, b.get(r, c));
            }
        }
        basis.push(mtx);
    }
    Ok(LinearMatrixCode {
        field,
        rows,
        cols,
        basis,
        declared_delta: delta,
        support: None,
    })
}
