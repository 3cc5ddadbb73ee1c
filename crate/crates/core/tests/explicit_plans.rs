//! Cross-checks of the explicit length-17/18/19 skeletons: per-entry
//! listed sizes against the resolved lemma routes and the dimension
//! bound, and the plan totals against the corollary polynomials.

use cdc_core::catalog::explicit_justification;
use cdc_core::*;

#[test]
fn explicit_plan_totals_match_corollary_bounds() {
    for l in [17usize, 18, 19] {
        for q in [2u16, 3, 4, 5] {
            let plan = build_plan_explicit(l, q, false).unwrap();
            assert_eq!(
                plan.promised_cardinality,
                corollary_bound(l, q).unwrap(),
                "explicit plan total at length {l}, q={q}"
            );
        }
    }
}

#[test]
fn length_18_bound_is_base_plus_extras() {
    for q in [2u16, 3, 4, 5] {
        let base = cardinality_theorem32(q, 6, 2).unwrap();
        let qb = num_bigint::BigUint::from(q as u64);
        assert_eq!(
            corollary_bound(18, q).unwrap(),
            base + qb.pow(10) + qb.pow(7)
        );
    }
}

#[test]
fn listed_sizes_are_justified_and_bounded() {
    for l in [17usize, 19] {
        let sk = skeleton_explicit(l, 3).unwrap();
        for e in &sk.entries {
            let listed = e.listed_dim.expect("explicit entries carry sizes");
            match e.remainder_diagram() {
                None => assert_eq!(listed, 0, "empty diagram lists size 1 = q^0"),
                Some(rem) => {
                    let vmin = rem.vmin(4).unwrap();
                    assert!(
                        listed <= vmin,
                        "listed {listed} above bound {vmin} for {rem}"
                    );
                    let (method, dim) = explicit_justification(&rem, 4)
                        .unwrap_or_else(|| panic!("no route for {rem}"));
                    assert_eq!(
                        dim, listed,
                        "route {method} justifies {dim}, table lists {listed} for {rem}"
                    );
                }
            }
        }
    }
    // the two adjoined length-18 vectors resolve through the transposed
    // first construction
    let sk = skeleton_explicit(18, 2).unwrap();
    for e in sk
        .entries
        .iter()
        .filter(|e| matches!(e.class, EntryClass::Extra { .. }))
    {
        let rem = e.remainder_diagram().unwrap();
        let (_, dim) = explicit_justification(&rem, 4).unwrap();
        assert_eq!(dim, e.listed_dim.unwrap());
    }
}

#[test]
fn length_18_extra_diagrams_match_their_vectors() {
    let sk = skeleton_explicit(18, 2).unwrap();
    let extras: Vec<_> = sk
        .entries
        .iter()
        .filter(|e| matches!(e.class, EntryClass::Extra { .. }))
        .collect();
    assert_eq!(extras.len(), 2);
    assert_eq!(
        extras[0].diagram().unwrap().cols(),
        &[3, 4, 4, 4, 4, 4, 5, 6]
    );
    assert_eq!(
        extras[1].diagram().unwrap().cols(),
        &[2, 3, 4, 4, 4, 4, 4, 5]
    );
    // their distances to every other entry stay at 4t
    for e in &extras {
        for other in &sk.entries {
            if other.vector != e.vector {
                assert!(e.vector.hamming(&other.vector) >= 8);
            }
        }
    }
}

#[test]
fn cross_sampling_is_reproducible_from_seed() {
    let plan = build_plan(2, 5, 2, true).unwrap();
    let a = verify_cross_sampled(&plan, 2_000, 99);
    let b = verify_cross_sampled(&plan, 2_000, 99);
    let render = |r: &VerificationReport| format!("{r}");
    assert_eq!(render(&a), render(&b));
    assert!(a.all_pass());
}
