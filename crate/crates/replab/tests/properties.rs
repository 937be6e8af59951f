//! Property tests for the spec invariants that aren't tied to a single
//! published number: closure laws, symmetry, identities, monotonicity.

mod common;

use common::{brute_find_violation, brute_minimal_period, spec};
use proptest::prelude::*;
use replab::enumeration::{count_avoiding, growth_upper, minimal_forbidden};
use replab::morphism::{squarefree_ternary, MorphismRegistry};
use replab::tree::{explore, SearchOutcome};
use replab::{find_violation, max_exponent, minimal_period, AvoidanceSpec, Rational, Word};

fn any_spec() -> impl Strategy<Value = AvoidanceSpec> {
    prop_oneof![
        Just(spec(2, "inf")),
        Just(spec(3, "3")),
        Just(spec(3, "3+")),
        Just(spec(4, "5/2")),
        Just(spec(4, "5/2+")),
        Just(spec(7, "7/3")),
        Just(spec(7, "7/3+")),
        Just(spec(1, "2")),
    ]
}

proptest! {
    #[test]
    fn violation_scan_matches_oracle(symbols in proptest::collection::vec(0u8..2, 0..24), s in any_spec()) {
        let word = Word::binary(symbols.clone()).unwrap();
        prop_assert_eq!(find_violation(&word, &s), brute_find_violation(&symbols, &s));
    }

    #[test]
    fn factor_closure(symbols in proptest::collection::vec(0u8..2, 0..30), s in any_spec()) {
        let word = Word::binary(symbols.clone()).unwrap();
        if find_violation(&word, &s).is_none() {
            for start in 0..=symbols.len() {
                for end in start..=symbols.len() {
                    let factor = Word::binary(symbols[start..end].to_vec()).unwrap();
                    prop_assert_eq!(find_violation(&factor, &s), None);
                }
            }
        }
    }

    #[test]
    fn complement_symmetry(symbols in proptest::collection::vec(0u8..2, 0..24), s in any_spec()) {
        let word = Word::binary(symbols).unwrap();
        prop_assert_eq!(
            find_violation(&word, &s).is_some(),
            find_violation(&word.complemented(), &s).is_some()
        );
    }

    #[test]
    fn exponent_identity(symbols in proptest::collection::vec(0u8..2, 1..24)) {
        let word = Word::binary(symbols.clone()).unwrap();
        let period = minimal_period(&word).unwrap();
        prop_assert_eq!(period, brute_minimal_period(&symbols));
        let exponent = max_exponent(&word).unwrap();
        prop_assert_eq!(exponent, Rational::new(symbols.len() as u64, period as u64).unwrap());
        prop_assert!(exponent >= Rational::integer(1));
    }

    #[test]
    fn fixed_point_prefix_stability(short in 0usize..400, extra in 0usize..400) {
        let long = squarefree_ternary(short + extra);
        prop_assert_eq!(long.prefix(short), squarefree_ternary(short));
    }

    #[test]
    fn homomorphism_law(
        u in proptest::collection::vec(0u8..3, 0..10),
        v in proptest::collection::vec(0u8..3, 0..10),
    ) {
        let registry = MorphismRegistry::builtin();
        let f = registry.get("f").unwrap();
        let u = Word::new(u, 3).unwrap();
        let v = Word::new(v, 3).unwrap();
        let image = f.apply(&u.concat(&v).unwrap()).unwrap();
        prop_assert_eq!(image, f.apply(&u).unwrap().concat(&f.apply(&v).unwrap()).unwrap());
    }

    #[test]
    fn composition_law(w in proptest::collection::vec(0u8..3, 0..8)) {
        let registry = MorphismRegistry::builtin();
        let h1 = registry.get("h1").unwrap();
        let h2 = registry.get("h2").unwrap();
        let w = Word::new(w, 3).unwrap();
        let composed = h1.compose(h2).unwrap();
        prop_assert_eq!(
            composed.apply(&w).unwrap(),
            h1.apply(&h2.apply(&w).unwrap()).unwrap()
        );
    }

    #[test]
    fn count_table_shape(n_max in 1usize..14) {
        let table = count_avoiding(spec(3, "3+"), n_max);
        prop_assert_eq!(table.counts[0], 1);
        for n in 1..=n_max {
            prop_assert_eq!(table.counts[n] % 2, 0);
            prop_assert!(table.counts[n] <= 2 * table.counts[n - 1]);
        }
    }
}

#[test]
fn growth_upper_is_monotone_in_the_forbidden_cap() {
    // Longer minimal-forbidden lists refine the language, so the dominant
    // eigenvalue can only drop.
    let s = spec(3, "3+");
    let mut previous = f64::INFINITY;
    for cap in [4usize, 8, 12] {
        let estimate = growth_upper(&minimal_forbidden(s, cap).unwrap()).unwrap();
        assert!(
            estimate.value <= previous + 1e-9,
            "cap {cap} raised the bound: {} > {previous}",
            estimate.value
        );
        previous = estimate.value;
    }
}

#[test]
fn relaxing_the_spec_grows_the_tree() {
    // Relaxing (larger l, weaker power constraint) never shrinks n or h
    // across the published rows.
    let report = |l: usize, p: &str| match explore(spec(l, p), 200).unwrap() {
        SearchOutcome::Finite(r) => r,
        SearchOutcome::Inconclusive { .. } => panic!("finite rows only"),
    };
    let r2 = report(2, "inf");
    let r3 = report(3, "3");
    let r4 = report(4, "5/2");
    let r5 = report(5, "5/2");
    let r7 = report(7, "7/3");
    assert!(r3.leaves >= r2.leaves && r3.height >= r2.height);
    assert!(r5.leaves >= r4.leaves && r5.height >= r4.height);
    // Inclusive -> exclusive relaxation makes the tree infinite outright.
    assert!(matches!(
        explore(spec(3, "3+"), 120).unwrap(),
        SearchOutcome::Inconclusive { .. }
    ));
    assert!(r7.leaves > 0);
}

#[test]
fn explore_is_deterministic() {
    let a = explore(spec(7, "7/3"), 200).unwrap();
    let b = explore(spec(7, "7/3"), 200).unwrap();
    assert_eq!(a, b);
}
