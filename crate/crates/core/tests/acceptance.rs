//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion summary.

use cdc_core::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::str::FromStr;
use std::time::Instant;

const SEED: u64 = 0xCDC0DE;

/// The evaluation grid: every (q, n, t) in {2,3,4,5} x {5..9} x {2,4}
/// satisfying q^(2t) >= s.
fn grid() -> Vec<(u16, usize, usize)> {
    let mut out = Vec::new();
    for q in [2u16, 3, 4, 5] {
        for n in 5..=9usize {
            for t in [2usize, 4] {
                let s = if n % 2 == 0 { n - 1 } else { n };
                if (q as u128).pow(2 * t as u32) >= s as u128 {
                    out.push((q, n, t));
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_table5_exactness() {
    let start = Instant::now();
    let report = verify_table5();
    assert!(report.all_pass(), "{report}");
    assert_eq!(report.checks.len(), 12);
    // spot-pin the two endpoints
    assert_eq!(
        corollary_bound(16, 2).unwrap(),
        BigUint::from_str("1074029925").unwrap()
    );
    assert_eq!(
        corollary_bound(19, 4).unwrap(),
        BigUint::from_str("302231473001706877649153").unwrap()
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "table reproduction took {elapsed:?}"
    );
    println!("criterion 1 (table5 exactness, 12 values, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_closed_form_consistency() {
    let grid = grid();
    assert_eq!(grid.len(), 40, "the full grid satisfies the hypotheses");
    for &(q, n, t) in &grid {
        let plan = build_plan(q, n, t, false).unwrap();
        let formula = cardinality_theorem32(q, n, t).unwrap();
        assert_eq!(
            plan.promised_cardinality, formula,
            "per-entry sum != closed form at ({q},{n},{t})"
        );
        let report = verify_consistency(q, n, t).unwrap();
        assert!(report.all_pass(), "({q},{n},{t}):\n{report}");
    }
    println!(
        "criterion 2 (closed-form consistency on {} grid points): PASS",
        grid.len()
    );
}

#[test]
fn criterion_3_constructive_distance_2_5_2() {
    let start = Instant::now();
    let plan = build_plan(2, 5, 2, true).unwrap();
    assert!(
        plan.gaps.is_empty(),
        "no construction gaps expected at (2,5,2): {:?}",
        plan.gaps
    );
    assert_eq!(
        plan.achieved_cardinality.as_ref(),
        Some(&plan.promised_cardinality),
        "achieved cardinality must match the promise"
    );

    let mut largest_enumerable = 0usize;
    for (i, record) in plan.records.iter().enumerate() {
        let code = record.code.as_ref().unwrap();
        let is_a = matches!(plan.skeleton.entries[i].class, EntryClass::A);
        if is_a {
            // dimension-30 component: sampled check
            assert_eq!(code.dim(), 30);
            match code_min_rank(code, 100_000, SEED, 1) {
                MinRankVerdict::Sampled {
                    min_observed,
                    samples,
                    ..
                } => {
                    assert_eq!(samples, 100_000);
                    assert!(
                        min_observed >= 4,
                        "A component sampled min rank {min_observed}"
                    );
                }
                other => panic!("expected sampled verdict for the A component, got {other:?}"),
            }
        } else {
            assert!(
                code.size_hint() <= 1 << 20,
                "B/C components stay enumerable"
            );
            match code_min_rank(code, 1 << 20, SEED, 1) {
                MinRankVerdict::Exact(r) => {
                    assert!(r >= 4, "entry {i} exact min rank {r} < 4");
                    largest_enumerable = largest_enumerable.max(code.dim());
                }
                MinRankVerdict::Vacuous => {}
                other => panic!("expected exact verdict for entry {i}, got {other:?}"),
            }
        }
    }
    assert_eq!(
        largest_enumerable, 18,
        "largest enumerated component dimension"
    );

    let report = verify_cross_sampled(&plan, 100_000, SEED);
    assert!(report.all_pass(), "{report}");
    let min_ds = report
        .checks
        .iter()
        .find(|c| c.name == "cross-distance-sampled")
        .and_then(|c| c.min_observed)
        .unwrap();
    assert_eq!(
        min_ds, 8,
        "minimum sampled subspace distance must be met and attained"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "constructive verification took {elapsed:?}"
    );
    println!(
        "criterion 3 (constructive distance at (2,5,2), min d_S = {min_ds}, {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_4_skeleton_certification() {
    let mut count = 0;
    for (q, n, t) in grid() {
        let sk = skeleton_theorem31(q, n, t).unwrap();
        let report = verify_skeleton(&sk);
        assert!(
            report.all_pass(),
            "skeleton ({q},{n},{t}) failed:\n{report}"
        );
        count += 1;
    }
    for l in [17usize, 18, 19] {
        for q in [2u16, 3, 4, 5] {
            let sk = skeleton_explicit(l, q).unwrap();
            let report = verify_skeleton(&sk);
            assert!(
                report.all_pass(),
                "explicit skeleton ({l},{q}) failed:\n{report}"
            );
            count += 1;
        }
    }
    println!("criterion 4 (skeleton certification, {count} skeletons): PASS");
}

#[test]
fn criterion_5_mrd_properties() {
    let mut checked = 0;
    for q in SUPPORTED_Q {
        for m in 1..=8usize {
            for n in 1..=8usize {
                for delta in 1..=m.min(n) {
                    let dim = m.max(n) * (m.min(n) - delta + 1);
                    let words = (q as u128).checked_pow(dim as u32);
                    if words.is_none_or(|w| w > 1 << 16) {
                        continue;
                    }
                    let code = gabidulin(m, n, delta, q).unwrap();
                    assert_eq!(
                        code.dim(),
                        dim,
                        "dimension formula at ({m},{n},{delta},{q})"
                    );
                    assert!(code.basis_independent());
                    match code_min_rank(&code, 1 << 16, SEED, 1) {
                        MinRankVerdict::Exact(r) => {
                            assert_eq!(r, delta, "min rank at ({m},{n},{delta},{q})")
                        }
                        other => panic!("expected exhaustive verdict, got {other:?}"),
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(
        checked >= 50,
        "expected a substantive instance census, got {checked}"
    );
    println!("criterion 5 (MRD dimension and exact distance on {checked} instances): PASS");
}

/// Enumerate all Ferrers diagrams with at most `max_dots` dots (and at
/// most 5 columns/rows to keep the census small).
fn small_diagrams(max_dots: usize) -> Vec<FerrersDiagram> {
    let mut out = Vec::new();
    fn rec(cols: &mut Vec<usize>, budget: usize, out: &mut Vec<FerrersDiagram>) {
        if !cols.is_empty() && *cols.last().unwrap() <= 5 {
            out.push(FerrersDiagram::new(cols.clone()).unwrap());
        }
        if cols.len() == 5 {
            return;
        }
        let lo = cols.last().copied().unwrap_or(1);
        for h in lo..=budget {
            cols.push(h);
            rec(cols, budget - h, out);
            cols.pop();
        }
    }
    let mut cols = Vec::new();
    rec(&mut cols, max_dots, &mut out);
    out
}

#[test]
fn criterion_6_oracle_agreement() {
    // pinned examples
    assert_eq!(
        oracle_optimal_dim(&FerrersDiagram::new(vec![1, 2]).unwrap(), 2, 2, 1 << 22).unwrap(),
        OracleOutcome::Exact(1)
    );
    assert_eq!(
        oracle_optimal_dim(
            &FerrersDiagram::new(vec![2, 2, 4, 4]).unwrap(),
            4,
            2,
            1 << 22
        )
        .unwrap(),
        OracleOutcome::Exact(2)
    );
    assert_eq!(
        FerrersDiagram::new(vec![2, 2, 4, 4])
            .unwrap()
            .vmin(4)
            .unwrap(),
        2
    );

    let mut agreed = 0;
    for f in small_diagrams(10) {
        for delta in 1..=f.m().min(f.n()) {
            let promise = check_firstcons(&f, delta)
                .or_else(|| check_stcons(&f, delta))
                .or_else(|| check_firstcons(&f.transpose(), delta))
                .or_else(|| check_stcons(&f.transpose(), delta));
            let Some(promise) = promise else { continue };
            let vmin = f.vmin(delta).unwrap();
            assert_eq!(
                promise, vmin,
                "optimal promises meet the bound for {f} delta={delta}"
            );
            match oracle_optimal_dim(&f, delta, 2, 1 << 22).unwrap() {
                OracleOutcome::Exact(d) => {
                    assert_eq!(
                        d, promise,
                        "oracle disagrees with the lemma on {f} delta={delta}"
                    );
                    agreed += 1;
                }
                OracleOutcome::Unknown { visited } => {
                    panic!("oracle budget exhausted on {f} delta={delta} after {visited} nodes")
                }
            }
        }
    }
    assert!(
        agreed >= 50,
        "expected a substantive diagram census, got {agreed}"
    );
    println!("criterion 6 (oracle agreement on {agreed} lemma instances): PASS");
}

#[test]
fn criterion_7_property_suites() {
    let mut rng = ChaCha12Rng::seed_from_u64(SEED);

    // v_min transpose symmetry on 500 random diagrams
    for _ in 0..500 {
        let ncols = rng.gen_range(1..8);
        let mut cols = Vec::with_capacity(ncols);
        let mut h = 0usize;
        for _ in 0..ncols {
            h += rng.gen_range(0..4);
            cols.push(h.max(1));
        }
        let f = FerrersDiagram::new(cols).unwrap();
        for delta in 1..=f.m().min(f.n()) {
            assert_eq!(f.vmin(delta).unwrap(), f.transpose().vmin(delta).unwrap());
        }
    }

    // extension distance scaling on 1000 random pairs
    for _ in 0..1000 {
        let n = rng.gen_range(1..12);
        let t = rng.gen_range(1..6);
        let u = BinaryVector::new((0..n).map(|_| rng.gen_bool(0.5)).collect());
        let v = BinaryVector::new((0..n).map(|_| rng.gen_bool(0.5)).collect());
        assert_eq!(extend(&u, t).hamming(&extend(&v, t)), t * u.hamming(&v));
    }

    // d_S >= d_H on identifying vectors, and the equal-vector equality
    // d_S = 2 d_R, on 1000 random subspace pairs in GF(2)^10
    let f2 = Gf::new(2).unwrap();
    for round in 0..1000 {
        let k1 = rng.gen_range(1..6);
        let k2 = rng.gen_range(1..6);
        let m1 = Matrix::random(f2, k1, 10, &mut rng);
        let m2 = Matrix::random(f2, k2, 10, &mut rng);
        let u = Subspace::from_matrix(&m1);
        let v = Subspace::from_matrix(&m2);
        if u.dim() == 0 || v.dim() == 0 {
            continue;
        }
        let d = subspace_distance(&u, &v).unwrap();
        assert!(
            d >= u.identifying_vector().hamming(&v.identifying_vector()),
            "round {round}: d_S below the Hamming bound"
        );
        // same identifying vector: rebuild u's echelon form with random
        // values in the free cells
        let (gen, pivots) = u.generator().rref();
        let mut altered = gen.clone();
        for r in 0..altered.rows {
            for c in 0..altered.cols {
                if !pivots.contains(&c) && c > pivots[r] && rng.gen_bool(0.5) {
                    altered.set(r, c, rng.gen_range(0..2) as u8);
                }
            }
        }
        let w = Subspace::from_matrix(&altered);
        if w.identifying_vector() == u.identifying_vector() {
            let d_uw = subspace_distance(&u, &w).unwrap();
            let rank = u.generator().sub(w.generator()).unwrap().rank();
            assert_eq!(d_uw, 2 * rank, "equal-vector distance equality");
        }
    }

    // lift / identifying-vector round trip on 100 random entries
    let plans = [
        build_plan(2, 5, 2, true).unwrap(),
        build_plan(3, 5, 2, true).unwrap(),
    ];
    for i in 0..100 {
        let plan = &plans[i % 2];
        let idx = rng.gen_range(0..plan.records.len());
        let k = plan.records[idx].code.as_ref().unwrap().dim();
        let coeffs: Vec<u8> = (0..k)
            .map(|_| rng.gen_range(0..plan.skeleton.q) as u8)
            .collect();
        let s = assembly::lift_entry(plan, idx, &coeffs).unwrap();
        assert_eq!(
            s.identifying_vector(),
            plan.skeleton.entries[idx].vector,
            "lift round trip at entry {idx}"
        );
        assert_eq!(s.dim(), plan.skeleton.weight);
        // the diagram of the lifted subspace reproduces the entry's diagram
        let rebuilt = FerrersDiagram::of_vector(&s.identifying_vector());
        assert_eq!(rebuilt, plan.skeleton.entries[idx].diagram());
    }

    println!("criterion 7 (property suites: vmin symmetry, extension scaling, distance bounds, lift round trip): PASS");
}
