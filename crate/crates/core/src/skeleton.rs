//! Skeleton codes for the multilevel construction: identifying vectors
//! generated from one-factorizations of complete graphs via blockwise
//! extension, their quasi-pending block geometry, and the pending fill
//! assignment from small MRD codes.

use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::rank_metric::{gabidulin, LinearMatrixCode};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An immutable binary row vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryVector {
    bits: Vec<bool>,
}

impl BinaryVector {
    pub fn new(bits: Vec<bool>) -> BinaryVector {
        BinaryVector { bits }
    }

    pub fn zeros(len: usize) -> BinaryVector {
        BinaryVector {
            bits: vec![false; len],
        }
    }

    pub fn parse(s: &str) -> Result<BinaryVector> {
        let bits: Result<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit `{c}`"))),
            })
            .collect();
        Ok(BinaryVector { bits: bits? })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Indices of the ones, ascending, 0-based.
    pub fn support(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn hamming(&self, other: &BinaryVector) -> usize {
        assert_eq!(
            self.len(),
            other.len(),
            "length mismatch in Hamming distance"
        );
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn concat(&self, other: &BinaryVector) -> BinaryVector {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BinaryVector { bits }
    }

    pub fn append_zero(&self) -> BinaryVector {
        let mut bits = self.bits.clone();
        bits.push(false);
        BinaryVector { bits }
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Blockwise extension with ratio `t`: bit k becomes a run of `t` copies.
pub fn extend(v: &BinaryVector, t: usize) -> BinaryVector {
    assert!(t >= 1);
    let mut bits = Vec::with_capacity(v.len() * t);
    for &b in v.bits() {
        bits.extend(std::iter::repeat_n(b, t));
    }
    BinaryVector::new(bits)
}

/// Partition of all weight-2 vectors of length `m` into classes with
/// pairwise disjoint supports (the circle method, fixed labeling).
/// Even m: m-1 classes of m/2 vectors; odd m: m classes of (m-1)/2.
pub fn one_factorization(m: usize) -> Result<Vec<Vec<BinaryVector>>> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "one-factorization needs m >= 2".into(),
        ));
    }
    let mut classes = Vec::new();
    if m.is_multiple_of(2) {
        for r in 0..m - 1 {
            let mut class = Vec::with_capacity(m / 2);
            class.push(pair_vector(m, m - 1, r));
            for k in 1..m / 2 {
                let i = (r + k) % (m - 1);
                let j = (r + (m - 1) - k) % (m - 1);
                class.push(pair_vector(m, i, j));
            }
            class.sort_by_key(|v| v.support());
            classes.push(class);
        }
    } else {
        for r in 0..m {
            let mut class = Vec::with_capacity((m - 1) / 2);
            for k in 1..=(m - 1) / 2 {
                let i = (r + k) % m;
                let j = (r + m - k) % m;
                class.push(pair_vector(m, i, j));
            }
            class.sort_by_key(|v| v.support());
            classes.push(class);
        }
    }
    Ok(classes)
}

fn pair_vector(m: usize, i: usize, j: usize) -> BinaryVector {
    let mut bits = vec![false; m];
    bits[i] = true;
    bits[j] = true;
    BinaryVector::new(bits)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EntryClass {
    A,
    B {
        class_index: usize,
        pair: (usize, usize),
    },
    C {
        index: usize,
    },
    Extra {
        label: String,
    },
}

impl fmt::Display for EntryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryClass::A => write!(f, "A"),
            EntryClass::B { class_index, pair } => {
                write!(f, "B(class {}, pair ({},{}))", class_index, pair.0, pair.1)
            }
            EntryClass::C { index } => write!(f, "C({index})"),
            EntryClass::Extra { label } => write!(f, "EXTRA({label})"),
        }
    }
}

/// Quasi-pending block geometry and its fill assignment: a full
/// `rows x cols` rectangle in the leftmost columns of the entry's
/// Ferrers diagram, filled with the `fill_index`-th codeword of the
/// skeleton's fill code for that class.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PendingSpec {
    pub rows: usize,
    pub cols: usize,
    pub fill_index: usize,
}

#[derive(Clone, Debug)]
pub struct SkeletonEntry {
    pub vector: BinaryVector,
    pub class: EntryClass,
    pub pending: Option<PendingSpec>,
    /// Activity gate: the entry participates when q^t >= min_qt.
    pub min_qt: u64,
    /// Size exponent listed in the explicit tables, when applicable.
    pub listed_dim: Option<usize>,
}

impl SkeletonEntry {
    pub fn diagram(&self) -> Option<FerrersDiagram> {
        FerrersDiagram::of_vector(&self.vector)
    }

    /// The entry's diagram with the pending columns removed; `None` when
    /// nothing is left (a single-subspace component).
    pub fn remainder_diagram(&self) -> Option<FerrersDiagram> {
        let full = self.diagram()?;
        match &self.pending {
            None => Some(full),
            Some(p) => full.subdiagram(p.cols, 0).ok(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub q: u16,
    pub n: usize,
    pub t: usize,
    /// Ambient length (n+3)t, or the explicit target length.
    pub length: usize,
    /// Codeword dimension 3t.
    pub weight: usize,
    /// Number of one-factorization classes.
    pub s: usize,
    /// Explicit target length (17, 18 or 19) when table-driven.
    pub explicit: Option<usize>,
    pub entries: Vec<SkeletonEntry>,
    /// Fill code for the B-class pending blocks.
    pub fill_b: LinearMatrixCode,
    /// Fill code for the C-class pending blocks.
    pub fill_c: LinearMatrixCode,
}

impl Skeleton {
    pub fn a(&self) -> usize {
        self.t / 2
    }

    pub fn qt(&self) -> u128 {
        (self.q as u128).pow(self.t as u32)
    }

    /// The fill matrix assigned to an entry's pending block.
    pub fn fill_matrix(&self, entry: &SkeletonEntry) -> Option<crate::matrix::Matrix> {
        let p = entry.pending.as_ref()?;
        let code = match entry.class {
            EntryClass::B { .. } => &self.fill_b,
            EntryClass::C { .. } => &self.fill_c,
            _ => return None,
        };
        Some(code.codeword_by_index(p.fill_index as u64))
    }
}

fn s_of(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n - 1
    } else {
        n
    }
}

fn pow_u128(q: u16, e: usize) -> u128 {
    (q as u128).pow(e as u32)
}

/// The eight third-class suffix patterns over the half-blocks
/// α = 1^a 0^a and β = 0^a 1^a, in the paper's fixed order.
fn u_pattern(idx: usize, n: usize, t: usize) -> BinaryVector {
    let a = t / 2;
    // block pattern per index: false = α, true = β
    let blocks: [bool; 4] = match idx {
        1 => [false, false, false, false],
        2 => [true, true, false, false],
        3 => [true, false, true, false],
        4 => [true, false, false, true],
        5 => [false, true, false, true],
        6 => [false, false, true, true],
        7 => [false, true, true, false],
        8 => [true, true, true, true],
        _ => panic!("u index out of range"),
    };
    let mut bits = Vec::with_capacity(n * t);
    for &is_beta in &blocks {
        for pos in 0..t {
            let one = if is_beta { pos >= a } else { pos < a };
            bits.push(one);
        }
    }
    bits.extend(std::iter::repeat_n(false, (n - 4) * t));
    BinaryVector::new(bits)
}

/// Activity threshold on q^t for the third-class entry `idx`.
///
/// All eight entries are active once q^t >= 8.  When q^t = 4 only four
/// are kept: for n >= 6 the first four patterns; for n = 5 the fourth
/// pattern degrades (its diagram only supports a strictly smaller code)
/// and the fifth takes its place, which is what the counting formulas
/// require.
fn u_min_qt(idx: usize, n: usize) -> u64 {
    let always = if n == 5 { [1, 2, 3, 5] } else { [1, 2, 3, 4] };
    if always.contains(&idx) {
        0
    } else {
        8
    }
}

/// The skeleton of the ((n+3)t, 4t, 3t)_q construction.
pub fn skeleton_theorem31(q: u16, n: usize, t: usize) -> Result<Skeleton> {
    crate::field::Gf::new(q)?;
    if n < 5 {
        return Err(Error::Precondition("requires n >= 5".into()));
    }
    if t < 2 || !t.is_multiple_of(2) {
        return Err(Error::Precondition("requires even t >= 2".into()));
    }
    let s = s_of(n);
    if pow_u128(q, 2 * t) < s as u128 {
        return Err(Error::Precondition(format!(
            "requires q^(2t) >= s (q={q}, t={t}, s={s})"
        )));
    }
    let qt = pow_u128(q, t);
    debug_assert!(qt >= 4);

    let length = (n + 3) * t;
    let weight = 3 * t;
    let mut entries = Vec::new();

    // class A: 1^{3t} 0^{nt}
    let mut bits = vec![true; 3 * t];
    bits.extend(std::iter::repeat_n(false, n * t));
    entries.push(SkeletonEntry {
        vector: BinaryVector::new(bits),
        class: EntryClass::A,
        pending: None,
        min_qt: 0,
        listed_dim: None,
    });

    // class B: 1^t 0^{2t} || E_t(nu) over the one-factorization classes
    let prefix_b = {
        let mut bits = vec![true; t];
        bits.extend(std::iter::repeat_n(false, 2 * t));
        BinaryVector::new(bits)
    };
    let classes = one_factorization(n)?;
    for (l, class) in classes.iter().enumerate() {
        for nu in class {
            let sup = nu.support();
            let vector = prefix_b.concat(&extend(nu, t));
            entries.push(SkeletonEntry {
                vector,
                class: EntryClass::B {
                    class_index: l + 1,
                    pair: (sup[0] + 1, sup[1] + 1),
                },
                pending: Some(PendingSpec {
                    rows: t,
                    cols: 2 * t,
                    fill_index: 0,
                }),
                min_qt: 0,
                listed_dim: None,
            });
        }
    }

    // class C: 0^t 1^t 0^t || u_i, gated on q^t
    let prefix_c = {
        let mut bits = vec![false; t];
        bits.extend(std::iter::repeat_n(true, t));
        bits.extend(std::iter::repeat_n(false, t));
        BinaryVector::new(bits)
    };
    for idx in 1..=8 {
        let gate = u_min_qt(idx, n);
        if qt < gate as u128 {
            continue;
        }
        let vector = prefix_c.concat(&u_pattern(idx, n, t));
        entries.push(SkeletonEntry {
            vector,
            class: EntryClass::C { index: idx },
            pending: Some(PendingSpec {
                rows: t,
                cols: t,
                fill_index: 0,
            }),
            min_qt: gate,
            listed_dim: None,
        });
    }

    let fill_b = gabidulin(t, 2 * t, t, q)?;
    let fill_c = gabidulin(t, t, t, q)?;
    let mut sk = Skeleton {
        q,
        n,
        t,
        length,
        weight,
        s,
        explicit: None,
        entries,
        fill_b,
        fill_c,
    };
    assign_pending(&mut sk)?;
    Ok(sk)
}

/// (Re)assigns the pending fill indexes: every entry of B-class `l` gets
/// the l-th codeword of the B fill code (the same matrix within a class,
/// distinct across classes), and the i-th active C entry gets the i-th
/// codeword of the C fill code.
pub fn assign_pending(sk: &mut Skeleton) -> Result<()> {
    let b_cap = sk.fill_b.size_hint();
    let c_cap = sk.fill_c.size_hint();
    let mut c_pos = 0usize;
    let mut max_class = 0usize;
    for entry in &mut sk.entries {
        match (&entry.class, &mut entry.pending) {
            (EntryClass::B { class_index, .. }, Some(p)) => {
                if *class_index as u64 > b_cap {
                    return Err(Error::Precondition(
                        "not enough B fill codewords for the classes".into(),
                    ));
                }
                p.fill_index = class_index - 1;
                max_class = max_class.max(*class_index);
            }
            (EntryClass::C { .. }, Some(p)) => {
                if c_pos as u64 >= c_cap {
                    return Err(Error::Precondition(
                        "not enough C fill codewords for the active entries".into(),
                    ));
                }
                p.fill_index = c_pos;
                c_pos += 1;
            }
            _ => {}
        }
    }
    Ok(())
}

/// One row of the embedded explicit tables.
pub struct TableRow {
    pub class: char,
    pub vector: &'static str,
    pub exponent: usize,
}

/// The 19 identifying vectors for length 17 with their size exponents.
pub const TABLE_LEN17: [TableRow; 19] = [
    TableRow {
        class: 'A',
        vector: "11111100000000000",
        exponent: 33,
    },
    TableRow {
        class: 'B',
        vector: "11000011110000000",
        exponent: 21,
    },
    TableRow {
        class: 'B',
        vector: "11000011001100000",
        exponent: 17,
    },
    TableRow {
        class: 'B',
        vector: "11000011000011000",
        exponent: 13,
    },
    TableRow {
        class: 'B',
        vector: "11000011000000110",
        exponent: 9,
    },
    TableRow {
        class: 'B',
        vector: "11000000111100000",
        exponent: 14,
    },
    TableRow {
        class: 'B',
        vector: "11000000110011000",
        exponent: 10,
    },
    TableRow {
        class: 'B',
        vector: "11000000110000110",
        exponent: 6,
    },
    TableRow {
        class: 'B',
        vector: "11000000001111000",
        exponent: 6,
    },
    TableRow {
        class: 'B',
        vector: "11000000001100110",
        exponent: 4,
    },
    TableRow {
        class: 'B',
        vector: "11000000000011110",
        exponent: 0,
    },
    TableRow {
        class: 'C',
        vector: "00110010101010000",
        exponent: 15,
    },
    TableRow {
        class: 'C',
        vector: "00110001011010000",
        exponent: 14,
    },
    TableRow {
        class: 'C',
        vector: "00110001101001000",
        exponent: 14,
    },
    TableRow {
        class: 'C',
        vector: "00110001100110000",
        exponent: 14,
    },
    TableRow {
        class: 'C',
        vector: "00110010011001000",
        exponent: 13,
    },
    TableRow {
        class: 'C',
        vector: "00110010100101000",
        exponent: 13,
    },
    TableRow {
        class: 'C',
        vector: "00110010010110000",
        exponent: 13,
    },
    TableRow {
        class: 'C',
        vector: "00110001010101000",
        exponent: 12,
    },
];

/// The 26 identifying vectors for length 19 with their size exponents.
pub const TABLE_LEN19: [TableRow; 26] = [
    TableRow {
        class: 'A',
        vector: "1111110000000000000",
        exponent: 39,
    },
    TableRow {
        class: 'B',
        vector: "1100001111000000000",
        exponent: 27,
    },
    TableRow {
        class: 'B',
        vector: "1100001100110000000",
        exponent: 23,
    },
    TableRow {
        class: 'B',
        vector: "1100001100001100000",
        exponent: 19,
    },
    TableRow {
        class: 'B',
        vector: "1100001100000011000",
        exponent: 15,
    },
    TableRow {
        class: 'B',
        vector: "1100001100000000110",
        exponent: 11,
    },
    TableRow {
        class: 'B',
        vector: "1100000011110000000",
        exponent: 21,
    },
    TableRow {
        class: 'B',
        vector: "1100000011001100000",
        exponent: 17,
    },
    TableRow {
        class: 'B',
        vector: "1100000011000011000",
        exponent: 13,
    },
    TableRow {
        class: 'B',
        vector: "1100000011000000110",
        exponent: 9,
    },
    TableRow {
        class: 'B',
        vector: "1100000000111100000",
        exponent: 15,
    },
    TableRow {
        class: 'B',
        vector: "1100000000110011000",
        exponent: 11,
    },
    TableRow {
        class: 'B',
        vector: "1100000000110000110",
        exponent: 7,
    },
    TableRow {
        class: 'B',
        vector: "1100000000001111000",
        exponent: 7,
    },
    TableRow {
        class: 'B',
        vector: "1100000000001100110",
        exponent: 4,
    },
    TableRow {
        class: 'B',
        vector: "1100000000000011110",
        exponent: 0,
    },
    TableRow {
        class: 'C',
        vector: "0011001010101000000",
        exponent: 21,
    },
    TableRow {
        class: 'C',
        vector: "0011000101101000000",
        exponent: 20,
    },
    TableRow {
        class: 'C',
        vector: "0011000110100100000",
        exponent: 20,
    },
    TableRow {
        class: 'C',
        vector: "0011000110011000000",
        exponent: 20,
    },
    TableRow {
        class: 'C',
        vector: "0011001001100100000",
        exponent: 19,
    },
    TableRow {
        class: 'C',
        vector: "0011001010010100000",
        exponent: 19,
    },
    TableRow {
        class: 'C',
        vector: "0011001001011000000",
        exponent: 19,
    },
    TableRow {
        class: 'C',
        vector: "0011000101010100000",
        exponent: 18,
    },
    TableRow {
        class: 'C',
        vector: "0000111010000010100",
        exponent: 13,
    },
    TableRow {
        class: 'C',
        vector: "0000110101000001010",
        exponent: 10,
    },
];

/// The two additional identifying vectors adjoined at length 18, with
/// their FDRMC dimensions.
pub const EXTRA_LEN18: [(&str, usize); 2] = [("000011101000001010", 10), ("000011010100000101", 7)];

fn b_pair_from_vector(vector: &BinaryVector, n: usize, t: usize) -> (usize, usize) {
    // prefix is 1^t 0^{2t}; the extension occupies the next n*t bits
    let bits = vector.bits();
    let mut sup = Vec::new();
    for k in 0..n {
        if bits[3 * t + k * t] {
            sup.push(k + 1);
        }
    }
    assert_eq!(sup.len(), 2, "B vector must extend a weight-2 vector");
    (sup[0], sup[1])
}

/// Table-driven skeletons for ambient lengths 17, 18 and 19.
pub fn skeleton_explicit(target_length: usize, q: u16) -> Result<Skeleton> {
    crate::field::Gf::new(q)?;
    match target_length {
        17 | 19 => {
            let (rows, n, b_pending_cols): (&[TableRow], usize, usize) = if target_length == 17 {
                (&TABLE_LEN17, 5, 4)
            } else {
                (&TABLE_LEN19, 6, 3)
            };
            let t = 2;
            let qt = pow_u128(q, t);
            let classes = one_factorization(n)?;
            let class_of = |pair: (usize, usize)| -> usize {
                for (l, class) in classes.iter().enumerate() {
                    for v in class {
                        let sup = v.support();
                        if (sup[0] + 1, sup[1] + 1) == pair {
                            return l + 1;
                        }
                    }
                }
                panic!("pair not covered by the one-factorization");
            };
            let mut entries = Vec::new();
            let mut c_seen = 0usize;
            for row in rows {
                let vector = BinaryVector::parse(row.vector)?;
                debug_assert_eq!(vector.len(), target_length);
                match row.class {
                    'A' => entries.push(SkeletonEntry {
                        vector,
                        class: EntryClass::A,
                        pending: None,
                        min_qt: 0,
                        listed_dim: Some(row.exponent),
                    }),
                    'B' => {
                        let pair = b_pair_from_vector(&vector, n, t);
                        entries.push(SkeletonEntry {
                            vector,
                            class: EntryClass::B {
                                class_index: class_of(pair),
                                pair,
                            },
                            pending: Some(PendingSpec {
                                rows: t,
                                cols: b_pending_cols,
                                fill_index: 0,
                            }),
                            min_qt: 0,
                            listed_dim: Some(row.exponent),
                        });
                    }
                    'C' => {
                        c_seen += 1;
                        // at length 19 the last two C rows are unpaired extras
                        let is_extra = target_length == 19 && c_seen > 8;
                        if is_extra {
                            entries.push(SkeletonEntry {
                                vector,
                                class: EntryClass::Extra {
                                    label: format!("nu{}", c_seen - 8),
                                },
                                pending: None,
                                min_qt: 0,
                                listed_dim: Some(row.exponent),
                            });
                        } else {
                            let gate: u64 = if c_seen <= 4 { 0 } else { 8 };
                            if qt < gate as u128 {
                                continue;
                            }
                            entries.push(SkeletonEntry {
                                vector,
                                class: EntryClass::C { index: c_seen },
                                pending: Some(PendingSpec {
                                    rows: t,
                                    cols: t,
                                    fill_index: 0,
                                }),
                                min_qt: gate,
                                listed_dim: Some(row.exponent),
                            });
                        }
                    }
                    _ => unreachable!(),
                }
            }
            let fill_b = if target_length == 17 {
                gabidulin(t, 2 * t, t, q)?
            } else {
                gabidulin(2, 3, 2, q)?
            };
            let fill_c = gabidulin(t, t, t, q)?;
            let mut sk = Skeleton {
                q,
                n,
                t,
                length: target_length,
                weight: 3 * t,
                s: s_of(n),
                explicit: Some(target_length),
                entries,
                fill_b,
                fill_c,
            };
            assign_pending(&mut sk)?;
            Ok(sk)
        }
        18 => {
            let mut sk = skeleton_theorem31(q, 6, 2)?;
            sk.explicit = Some(18);
            for (pos, (vec, dim)) in EXTRA_LEN18.iter().enumerate() {
                sk.entries.push(SkeletonEntry {
                    vector: BinaryVector::parse(vec)?,
                    class: EntryClass::Extra {
                        label: format!("nu{}", pos + 1),
                    },
                    pending: None,
                    min_qt: 0,
                    listed_dim: Some(*dim),
                });
            }
            Ok(sk)
        }
        other => Err(Error::InvalidParameter(format!(
            "unsupported explicit target length {other} (expected 17, 18 or 19)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_example() {
        let v = BinaryVector::parse("10010").unwrap();
        assert_eq!(extend(&v, 3).to_string(), "111000000111000");
        let z = BinaryVector::zeros(4);
        assert_eq!(extend(&z, 5).weight(), 0);
    }

    #[test]
    fn extension_scales_distance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..10);
            let t = rng.gen_range(1..5);
            let u = BinaryVector::new((0..n).map(|_| rng.gen_bool(0.5)).collect());
            let v = BinaryVector::new((0..n).map(|_| rng.gen_bool(0.5)).collect());
            assert_eq!(extend(&u, t).hamming(&extend(&v, t)), t * u.hamming(&v));
        }
    }

    #[test]
    fn one_factorization_partition_invariants() {
        for m in 2..=40 {
            let classes = one_factorization(m).unwrap();
            let expected_classes = if m % 2 == 0 { m - 1 } else { m };
            let per_class = if m % 2 == 0 { m / 2 } else { (m - 1) / 2 };
            assert_eq!(classes.len(), expected_classes, "class count at m={m}");
            let mut all = std::collections::HashSet::new();
            for class in &classes {
                assert_eq!(class.len(), per_class, "class size at m={m}");
                let mut used = vec![false; m];
                for v in class {
                    assert_eq!(v.weight(), 2);
                    for i in v.support() {
                        assert!(!used[i], "supports must be disjoint within a class (m={m})");
                        used[i] = true;
                    }
                    assert!(all.insert(v.support()), "duplicate pair at m={m}");
                }
            }
            assert_eq!(all.len(), m * (m - 1) / 2, "coverage at m={m}");
        }
        assert!(one_factorization(1).is_err());
    }

    #[test]
    fn theorem31_entry_counts() {
        let sk = skeleton_theorem31(2, 5, 2).unwrap();
        assert_eq!(sk.entries.len(), 15); // 1 + 10 + 4
        let sk = skeleton_theorem31(3, 5, 2).unwrap();
        assert_eq!(sk.entries.len(), 19); // 1 + 10 + 8
        assert!(skeleton_theorem31(2, 18, 2).is_err()); // s = 17 > 16
        assert!(skeleton_theorem31(2, 5, 3).is_err()); // odd t
        assert!(skeleton_theorem31(2, 4, 2).is_err()); // n < 5
    }

    #[test]
    fn theorem31_weights_and_lengths() {
        for (q, n, t) in [(2u16, 5usize, 2usize), (3, 6, 2), (2, 7, 4)] {
            let sk = skeleton_theorem31(q, n, t).unwrap();
            for e in &sk.entries {
                assert_eq!(e.vector.len(), (n + 3) * t);
                assert_eq!(e.vector.weight(), 3 * t);
            }
            // entries pairwise distinct
            let set: std::collections::HashSet<String> =
                sk.entries.iter().map(|e| e.vector.to_string()).collect();
            assert_eq!(set.len(), sk.entries.len());
        }
    }

    #[test]
    fn pending_fills_distinct_and_far() {
        let sk = skeleton_theorem31(2, 5, 2).unwrap();
        // all assigned fills of a shared block differ pairwise by rank >= t
        let b_fills: Vec<_> = (0..sk.s as u64)
            .map(|i| sk.fill_b.codeword_by_index(i))
            .collect();
        for i in 0..b_fills.len() {
            for j in i + 1..b_fills.len() {
                let d = b_fills[i].sub(&b_fills[j]).unwrap().rank();
                assert!(d >= sk.t, "B fill rank distance {d} < t");
            }
        }
        let c_entries: Vec<_> = sk
            .entries
            .iter()
            .filter(|e| matches!(e.class, EntryClass::C { .. }))
            .collect();
        assert_eq!(c_entries.len(), 4);
        for i in 0..c_entries.len() {
            for j in i + 1..c_entries.len() {
                let fi = sk.fill_matrix(c_entries[i]).unwrap();
                let fj = sk.fill_matrix(c_entries[j]).unwrap();
                assert!(fi.sub(&fj).unwrap().rank() >= sk.t);
            }
        }
    }

    #[test]
    fn explicit_tables_well_formed() {
        for (rows, len) in [(&TABLE_LEN17[..], 17), (&TABLE_LEN19[..], 19)] {
            let mut seen = std::collections::HashSet::new();
            for row in rows {
                assert_eq!(row.vector.len(), len);
                let v = BinaryVector::parse(row.vector).unwrap();
                assert_eq!(v.weight(), 6, "table vector weight");
                assert!(seen.insert(row.vector), "duplicate table vector");
            }
        }
        assert_eq!(TABLE_LEN17.len(), 19);
        assert_eq!(TABLE_LEN19.len(), 26);
    }

    #[test]
    fn explicit_skeleton_counts() {
        assert_eq!(skeleton_explicit(17, 3).unwrap().entries.len(), 19);
        assert_eq!(skeleton_explicit(17, 2).unwrap().entries.len(), 15); // C gated to 4
        assert_eq!(skeleton_explicit(18, 2).unwrap().entries.len(), 22); // 1+15+4+2
        assert_eq!(skeleton_explicit(19, 4).unwrap().entries.len(), 26);
        assert_eq!(skeleton_explicit(19, 2).unwrap().entries.len(), 22); // C 5..8 gated
        assert!(skeleton_explicit(20, 2).is_err());
    }

    #[test]
    fn explicit_19_matches_structural_extension() {
        // appending a zero to every length-18 vector reproduces Table 4
        let sk18 = skeleton_explicit(18, 3).unwrap();
        let extended: std::collections::HashSet<String> = sk18
            .entries
            .iter()
            .map(|e| e.vector.append_zero().to_string())
            .collect();
        let table: std::collections::HashSet<String> =
            TABLE_LEN19.iter().map(|r| r.vector.to_string()).collect();
        assert_eq!(extended, table);
    }

    #[test]
    fn explicit_17_matches_structural_extension() {
        // Table 3 lists the length-16 skeleton vectors with a zero appended
        // (with all eight C patterns, as kept for q^t >= 8)
        let sk16 = skeleton_theorem31(3, 5, 2).unwrap();
        let extended: std::collections::HashSet<String> = sk16
            .entries
            .iter()
            .map(|e| e.vector.append_zero().to_string())
            .collect();
        let table: std::collections::HashSet<String> =
            TABLE_LEN17.iter().map(|r| r.vector.to_string()).collect();
        assert_eq!(extended, table);
    }
}
