//! Synthesized words checked against independent certificates.

use dehnword_core::search::Budget;
use dehnword_core::symplectic::lefschetz_certify;
use dehnword_core::synthesis::{run_method, synthesize_with, SynthesisOptions};
use dehnword_core::tables::{self, Algorithm};
use dehnword_core::{dataset, DataSet};
use proptest::prelude::*;

fn no_search() -> SynthesisOptions {
    SynthesisOptions { search: false, budget: Budget::default() }
}

#[test]
fn enumerated_data_sets_without_search() {
    // Covered counts per genus; the genus-three gap is the symplectic rows.
    for (g, want) in [(1, 6), (2, 17), (3, 31), (4, 50)] {
        let mut covered = 0;
        for d in dataset::enumerate(g, None) {
            let Ok(s) = synthesize_with(&d, &no_search()) else { continue };
            covered += 1;
            assert!(s.certificate.strong(), "{d}");
            assert!(lefschetz_certify(&s.word, &d).strong(), "{d}: {}", s.word);
            assert_eq!(s.word.genus(), g, "{d}");
            if let Some(p) = &s.plan {
                assert!(p.bookkeeping_ok(false), "{d}");
                assert_eq!(p.genus(), g, "{d}");
            }
        }
        assert!(covered >= want, "genus {g}: {covered} < {want}");
    }
}

#[test]
fn table_rows_match_their_method() {
    for g in 1..=3 {
        for row in tables::rows(g).unwrap() {
            if row.algorithm == Algorithm::Symplectic {
                continue;
            }
            let s = synthesize_with(&row.data_set, &no_search()).unwrap();
            assert_eq!(s.method.family(), row.algorithm.family(), "{}", row.data_set);
            let own = run_method(row.algorithm.method(), &row.data_set, &no_search())
                .unwrap_or_else(|e| panic!("{}: {e}", row.data_set));
            assert!(own.certificate.strong(), "{}", row.data_set);
        }
    }
}

fn realizable(max_genus: u32) -> Vec<DataSet> {
    (2..=max_genus)
        .flat_map(|g| dataset::enumerate(g, None))
        .filter(|d| synthesize_with(d, &no_search()).is_ok())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_word_realizes_inverse_data_set(i in any::<prop::sample::Index>()) {
        let all = realizable(4);
        let d = i.get(&all);
        let s = synthesize_with(d, &no_search()).unwrap();
        let inv = d.power(d.n - 1).unwrap();
        prop_assert!(lefschetz_certify(&s.word.inverse(), &inv).strong(), "{}", d);
    }

    #[test]
    fn coprime_powers_realize_power_data_sets(i in any::<prop::sample::Index>(), k in 1u32..12) {
        let all = realizable(3);
        let d = i.get(&all);
        prop_assume!(num_integer::gcd(k, d.n) == 1);
        let s = synthesize_with(d, &no_search()).unwrap();
        prop_assert!(lefschetz_certify(&s.word.power(k as i64), &d.power(k).unwrap()).strong(), "{} ^ {}", d, k);
    }
}
