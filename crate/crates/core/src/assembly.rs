//! Lifting, full code-plan construction, and the exact closed-form
//! cardinalities of the main counting theorem and its corollaries.

use crate::catalog::{
    component_dim_plan, explicit_justification, realize_fdrmc, FdrmcRecord, Method,
};
use crate::error::{Error, Result};
use crate::field::Gf;
use crate::matrix::Matrix;
use crate::skeleton::{
    skeleton_explicit, skeleton_theorem31, BinaryVector, PendingSpec, Skeleton, SkeletonEntry,
};
use crate::subspace::Subspace;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in q with small nonnegative coefficients, used for the
/// exact cardinality formulas.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    terms: BTreeMap<usize, u64>,
}

impl QPoly {
    pub fn new() -> QPoly {
        QPoly::default()
    }

    pub fn add_term(&mut self, exponent: usize, coefficient: u64) {
        if coefficient == 0 {
            return;
        }
        *self.terms.entry(exponent).or_insert(0) += coefficient;
    }

    pub fn add_poly(&mut self, other: &QPoly) {
        for (&e, &c) in &other.terms {
            self.add_term(e, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.terms.iter().rev().map(|(&e, &c)| (e, c))
    }

    pub fn eval(&self, q: u64) -> BigUint {
        let qb = BigUint::from(q);
        let mut acc = BigUint::zero();
        for (&e, &c) in &self.terms {
            acc += BigUint::from(c) * qb.pow(e as u32);
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, c) => write!(f, "{c}*q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, c) => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}

fn s_of(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n - 1
    } else {
        n
    }
}

fn check_theorem_hypotheses(q: u16, n: usize, t: usize) -> Result<()> {
    Gf::new(q)?;
    if n < 5 {
        return Err(Error::Precondition("requires n >= 5".into()));
    }
    if t < 2 || !t.is_multiple_of(2) {
        return Err(Error::Precondition("requires even t >= 2".into()));
    }
    let s = s_of(n);
    if (q as u128).pow(2 * t as u32) < s as u128 {
        return Err(Error::Precondition(format!(
            "requires q^{{2t}} >= s (q={q}, t={t}, s={s})"
        )));
    }
    Ok(())
}

/// |A| as a polynomial in q.
pub fn class_a_poly(n: usize, t: usize) -> QPoly {
    let mut p = QPoly::new();
    p.add_term(n * t * (t + 1), 1);
    p
}

/// |B| as a polynomial in q (branch on n, t, q).
pub fn class_b_poly(q: u16, n: usize, t: usize) -> QPoly {
    let mut p = QPoly::new();
    if n >= 6 {
        for i in 1..=n - 4 {
            for j in i + 1..=n {
                p.add_term((n - i - 1) * t + (n - j) * t * t, 1);
            }
        }
        p.add_term(2 * t * t + 2 * t, 1);
        p.add_term(t * t + 2 * t, 1);
        p.add_term(2 * t, 2);
        p.add_term(t, 1);
        p.add_term(0, 1);
    } else if t == 2 {
        for e in [18, 14, 10, 10, 8, 6, 4, 4, 2, 0] {
            p.add_term(e, 1);
        }
    } else {
        for j in 2..=5usize {
            p.add_term(3 * t + (5 - j) * t * t, 1);
        }
        p.add_term(t * t + 3 * t, 1);
        if q >= 4 {
            p.add_term(t * t + 2 * t, 1);
        } else {
            p.add_term(3 * t, 1);
        }
        p.add_term(2 * t, 2);
        p.add_term(t, 1);
        p.add_term(0, 1);
    }
    p
}

/// |C| as a polynomial in q (branch on n, t, q).
pub fn class_c_poly(q: u16, n: usize, t: usize) -> QPoly {
    let a = t / 2;
    let mut p = QPoly::new();
    if n >= 6 {
        if t == 2 {
            p.add_term(6 * n - 18, 1);
            p.add_term(6 * n - 19, 3);
            if q > 2 {
                p.add_term(6 * n - 20, 3);
                p.add_term(6 * n - 21, 1);
            }
        } else {
            let base = (t * t + t) * n;
            p.add_term(base - 13 * a * a - 5 * a, 1);
            p.add_term(base - 13 * a * a - 6 * a, 1);
            p.add_term(base - 14 * a * a - 5 * a, 2);
            p.add_term(base - 14 * a * a - 6 * a, 2);
            p.add_term(base - 15 * a * a - 5 * a, 1);
            p.add_term(base - 15 * a * a - 6 * a, 1);
        }
    } else if t == 2 {
        p.add_term(12, 1);
        if q > 2 {
            p.add_term(10, 5);
            p.add_term(9, 2);
        } else {
            p.add_term(10, 3);
        }
    } else {
        p.add_term(4 * a * a + 5 * a, 2);
        p.add_term(3 * a * a + 5 * a, 4);
        p.add_term(7 * a, 1);
        p.add_term(6 * a, 1);
    }
    p
}

/// The closed-form cardinality of the ((n+3)t, 4t, 3t)_q construction as
/// a polynomial in q.
pub fn theorem32_poly(q: u16, n: usize, t: usize) -> Result<QPoly> {
    check_theorem_hypotheses(q, n, t)?;
    let mut p = class_a_poly(n, t);
    p.add_poly(&class_b_poly(q, n, t));
    p.add_poly(&class_c_poly(q, n, t));
    Ok(p)
}

/// The closed-form cardinality, evaluated exactly.
pub fn cardinality_theorem32(q: u16, n: usize, t: usize) -> Result<BigUint> {
    Ok(theorem32_poly(q, n, t)?.eval(q as u64))
}

fn cor17_poly(q: u16) -> QPoly {
    let mut p = QPoly::new();
    let terms: &[(usize, u64)] = if q > 2 {
        &[
            (33, 1),
            (21, 1),
            (17, 1),
            (15, 1),
            (14, 4),
            (13, 4),
            (12, 1),
            (10, 1),
            (9, 1),
            (6, 2),
            (4, 1),
            (0, 1),
        ]
    } else {
        &[
            (33, 1),
            (21, 1),
            (17, 1),
            (15, 1),
            (14, 4),
            (13, 1),
            (10, 1),
            (9, 1),
            (6, 2),
            (4, 1),
            (0, 1),
        ]
    };
    for &(e, c) in terms {
        p.add_term(e, c);
    }
    p
}

fn cor19_poly(q: u16) -> QPoly {
    let mut p = QPoly::new();
    let terms: &[(usize, u64)] = if q > 2 {
        &[
            (39, 1),
            (27, 1),
            (23, 1),
            (21, 2),
            (20, 3),
            (19, 4),
            (18, 1),
            (17, 1),
            (15, 2),
            (13, 2),
            (11, 2),
            (10, 1),
            (9, 1),
            (7, 2),
            (4, 1),
            (0, 1),
        ]
    } else {
        &[
            (39, 1),
            (27, 1),
            (23, 1),
            (21, 2),
            (20, 3),
            (19, 1),
            (17, 1),
            (15, 2),
            (13, 2),
            (11, 2),
            (10, 1),
            (9, 1),
            (7, 2),
            (4, 1),
            (0, 1),
        ]
    };
    for &(e, c) in terms {
        p.add_term(e, c);
    }
    p
}

/// The new lower bound on the maximum code size for ambient lengths 16
/// through 19 (dimension 6, distance 8), as a polynomial in q.
pub fn corollary_poly(target_n: usize, q: u16) -> Result<QPoly> {
    Gf::new(q)?;
    match target_n {
        16 => theorem32_poly(q, 5, 2),
        17 => Ok(cor17_poly(q)),
        18 => {
            let mut p = theorem32_poly(q, 6, 2)?;
            p.add_term(10, 1);
            p.add_term(7, 1);
            Ok(p)
        }
        19 => Ok(cor19_poly(q)),
        other => Err(Error::InvalidParameter(format!(
            "no corollary for ambient length {other} (expected 16..=19)"
        ))),
    }
}

pub fn corollary_bound(target_n: usize, q: u16) -> Result<BigUint> {
    Ok(corollary_poly(target_n, q)?.eval(q as u64))
}

/// The twelve tabulated new lower bounds: (ambient length, q, value).
pub const TABLE5: [(usize, u16, &str); 12] = [
    (16, 2, "1074029925"),
    (16, 3, "205891525289719"),
    (16, 4, "1152921573619470865"),
    (17, 2, "8592270993"),
    (17, 3, "5559071196518677"),
    (17, 4, "73786980712498602241"),
    (18, 2, "68738312933"),
    (18, 3, "150094922568097420"),
    (18, 4, "4722366765651669963281"),
    (19, 2, "549906503441"),
    (19, 3, "4052562909338630152"),
    (19, 4, "302231473001706877649153"),
];

/// Builds the subspace whose RREF has pivots at the support of `vector`
/// and whose Ferrers tableaux entries are the pending fill followed by
/// the codeword.
pub fn lift(
    field: Gf,
    vector: &BinaryVector,
    pending: Option<(&PendingSpec, &Matrix)>,
    codeword: Option<&Matrix>,
) -> Result<Subspace> {
    let bits = vector.bits();
    let len = bits.len();
    let pivots = vector.support();
    let k = pivots.len();
    if k == 0 {
        return Err(Error::InvalidParameter(
            "cannot lift the zero vector".into(),
        ));
    }
    // per-row free positions: the zero coordinates after each pivot
    let mut frees: Vec<Vec<usize>> = Vec::with_capacity(k);
    for &p in &pivots {
        frees.push((p + 1..len).filter(|&j| !bits[j]).collect());
    }
    let width = frees[0].len();
    let pend_cols = pending.map_or(0, |(spec, _)| spec.cols);
    if let Some((spec, fill)) = pending {
        if fill.rows != spec.rows || fill.cols != spec.cols {
            return Err(Error::ShapeMismatch(format!(
                "pending fill is {}x{}, spec wants {}x{}",
                fill.rows, fill.cols, spec.rows, spec.cols
            )));
        }
    }
    if let Some(cw) = codeword {
        if cw.cols != width - pend_cols || cw.rows > k {
            return Err(Error::ShapeMismatch(format!(
                "codeword is {}x{}, tableaux remainder is {}x{}",
                cw.rows,
                cw.cols,
                k,
                width - pend_cols
            )));
        }
    }
    let mut gen = Matrix::zero(field, k, len);
    for (i, &p) in pivots.iter().enumerate() {
        gen.set(i, p, 1);
        let row_width = frees[i].len();
        for c in width - row_width..width {
            let value = if c < pend_cols {
                match pending {
                    Some((spec, fill)) if i < spec.rows => fill.get(i, c),
                    _ => 0,
                }
            } else {
                codeword.map_or(0, |cw| {
                    if i < cw.rows {
                        cw.get(i, c - pend_cols)
                    } else {
                        0
                    }
                })
            };
            let j = frees[i][c - (width - row_width)];
            gen.set(i, j, value);
        }
    }
    Ok(Subspace::from_rref_unchecked(gen, pivots))
}

#[derive(Clone, Debug)]
pub struct Gap {
    pub entry: usize,
    pub promised: usize,
    pub achieved: usize,
}

/// Skeleton plus per-entry dimension records, promised vs achieved
/// cardinality, and the honest list of construction shortfalls.
#[derive(Debug)]
pub struct CdcPlan {
    pub skeleton: Skeleton,
    pub records: Vec<FdrmcRecord>,
    pub promised_cardinality: BigUint,
    pub achieved_cardinality: Option<BigUint>,
    pub gaps: Vec<Gap>,
}

impl CdcPlan {
    pub fn delta(&self) -> usize {
        2 * self.skeleton.t
    }
}

fn promised_for_entry(sk: &Skeleton, entry: &SkeletonEntry, q: u16) -> Result<(usize, Method)> {
    if let Some(listed) = entry.listed_dim {
        let delta = 2 * sk.t;
        let method = match entry.remainder_diagram() {
            None => Method::Singleton,
            Some(rem) => match explicit_justification(&rem, delta) {
                Some((m, d)) if d == listed => m,
                _ => Method::Subfilter,
            },
        };
        return Ok((listed, method));
    }
    component_dim_plan(entry, q, sk.n, sk.t)
}

fn build_from_skeleton(sk: Skeleton, construct: bool) -> Result<CdcPlan> {
    let q = sk.q;
    let delta = 2 * sk.t;
    let qb = BigUint::from(q as u64);
    let mut records = Vec::with_capacity(sk.entries.len());
    let mut promised_cardinality = BigUint::zero();
    let mut achieved_cardinality = BigUint::zero();
    let mut gaps = Vec::new();
    for (idx, entry) in sk.entries.iter().enumerate() {
        let (promised, method) = promised_for_entry(&sk, entry, q)?;
        let diagram = entry.remainder_diagram();
        if let Some(d) = &diagram {
            let bound = d.vmin(delta)?;
            if promised > bound {
                return Err(Error::InvalidParameter(format!(
                    "planned dimension {promised} exceeds the bound {bound} for {d}"
                )));
            }
        } else if promised != 0 {
            return Err(Error::InvalidParameter(
                "empty diagram cannot promise a positive dimension".into(),
            ));
        }
        promised_cardinality += qb.pow(promised as u32);
        let mut record = FdrmcRecord {
            diagram: diagram.clone(),
            delta,
            promised_dim: promised,
            method,
            achieved_dim: None,
            code: None,
        };
        if construct {
            let realized = realize_fdrmc(diagram.as_ref(), delta, q, Some(promised))?;
            let achieved = realized.code.dim();
            achieved_cardinality += qb.pow(achieved as u32);
            if achieved < promised {
                gaps.push(Gap {
                    entry: idx,
                    promised,
                    achieved,
                });
            }
            record.achieved_dim = Some(achieved);
            record.code = Some(realized.code);
        }
        records.push(record);
    }
    Ok(CdcPlan {
        skeleton: sk,
        records,
        promised_cardinality,
        achieved_cardinality: construct.then_some(achieved_cardinality),
        gaps,
    })
}

/// Plans (and optionally constructs) the full ((n+3)t, 4t, 3t)_q code.
pub fn build_plan(q: u16, n: usize, t: usize, construct: bool) -> Result<CdcPlan> {
    build_from_skeleton(skeleton_theorem31(q, n, t)?, construct)
}

/// Plans (and optionally constructs) the explicit length-17/18/19 codes.
pub fn build_plan_explicit(target_length: usize, q: u16, construct: bool) -> Result<CdcPlan> {
    build_from_skeleton(skeleton_explicit(target_length, q)?, construct)
}

/// Lifts one codeword of a constructed entry.
pub fn lift_entry(plan: &CdcPlan, entry_idx: usize, coeffs: &[u8]) -> Result<Subspace> {
    let sk = &plan.skeleton;
    let entry = &sk.entries[entry_idx];
    let record = &plan.records[entry_idx];
    let field = Gf::new(sk.q)?;
    let fill = sk.fill_matrix(entry);
    let pending = entry.pending.as_ref().zip(fill.as_ref());
    let code = record
        .code
        .as_ref()
        .ok_or_else(|| Error::Precondition("entry has no constructed basis".into()))?;
    if code.dim() == 0 {
        lift(field, &entry.vector, pending, None)
    } else {
        let cw = code.codeword_from_coeffs(coeffs);
        lift(field, &entry.vector, pending, Some(&cw))
    }
}

/// Lazily enumerates every lifted subspace of one entry.
pub fn entry_subspaces<'a>(
    plan: &'a CdcPlan,
    entry_idx: usize,
) -> impl Iterator<Item = Subspace> + 'a {
    let record = &plan.records[entry_idx];
    let k = record.code.as_ref().map_or(0, |c| c.dim());
    let q = plan.skeleton.q as u8;
    let mut coeffs = vec![0u8; k];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = lift_entry(plan, entry_idx, &coeffs).ok();
        // odometer increment in base q
        let mut pos = 0;
        loop {
            if pos == coeffs.len() {
                done = true;
                break;
            }
            coeffs[pos] = (coeffs[pos] + 1) % q;
            if coeffs[pos] != 0 {
                break;
            }
            pos += 1;
        }
        if coeffs.is_empty() {
            done = true;
        }
        out
    })
}

/// JSON manifest of a plan (decimal strings for the large counts).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanManifest {
    pub q: u16,
    pub n: usize,
    pub t: usize,
    pub length: usize,
    pub weight: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<usize>,
    pub entries: Vec<EntryManifest>,
    pub promised_cardinality: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_cardinality: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gaps: Vec<GapManifest>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryManifest {
    pub vector: String,
    pub class: crate::skeleton::EntryClass,
    pub pending: Option<PendingSpec>,
    pub diagram: Option<Vec<usize>>,
    pub delta: usize,
    pub promised_dim: usize,
    pub method: Method,
    pub achieved_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapManifest {
    pub entry: usize,
    pub promised: usize,
    pub achieved: usize,
}

pub fn to_manifest(plan: &CdcPlan) -> PlanManifest {
    let sk = &plan.skeleton;
    let entries = sk
        .entries
        .iter()
        .zip(&plan.records)
        .map(|(e, r)| EntryManifest {
            vector: e.vector.to_string(),
            class: e.class.clone(),
            pending: e.pending.clone(),
            diagram: r.diagram.as_ref().map(|d| d.cols().to_vec()),
            delta: r.delta,
            promised_dim: r.promised_dim,
            method: r.method,
            achieved_dim: r.achieved_dim,
        })
        .collect();
    PlanManifest {
        q: sk.q,
        n: sk.n,
        t: sk.t,
        length: sk.length,
        weight: sk.weight,
        explicit: sk.explicit,
        entries,
        promised_cardinality: plan.promised_cardinality.to_str_radix(10),
        achieved_cardinality: plan
            .achieved_cardinality
            .as_ref()
            .map(|c| c.to_str_radix(10)),
        gaps: plan
            .gaps
            .iter()
            .map(|g| GapManifest {
                entry: g.entry,
                promised: g.promised,
                achieved: g.achieved,
            })
            .collect(),
    }
}
