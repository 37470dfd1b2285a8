use proptest::prelude::*;

use lawvere::catalog;
use lawvere::distlaw::semantics::{eval, Mat2};
use lawvere::distlaw::{
    check_law_axioms, check_yang_baxter, composite_theory_checked, mutant_ring_law, pointed_abgroup_mutant,
    ring3_mutant_series, ring_law, sample_layered,
};
use lawvere::sampler::Sampler;
use lawvere::term::normalize_layered;

fn small(seed: u64, samples: usize) -> Sampler {
    Sampler::default().with_seed(seed).with_samples(samples)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn valid_laws_pass_for_every_seed(seed in any::<u64>()) {
        for name in ["ring", "nonunital-ring", "monoid", "pointed-abgroup"] {
            let r = check_law_axioms(&catalog::law(name).unwrap(), &small(seed, 40));
            prop_assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn mutants_fail_for_every_seed(seed in any::<u64>()) {
        prop_assert!(!check_law_axioms(&mutant_ring_law(), &small(seed, 200)).passed());
        prop_assert!(!check_law_axioms(&pointed_abgroup_mutant(), &small(seed, 200)).passed());
    }

    /// The law rewrites a layered term to one with the same matrix value.
    #[test]
    fn ring_law_preserves_matrix_values(seed in any::<u64>(), entries in prop::collection::vec(-5i64..6, 16)) {
        let law = ring_law();
        let sampler = small(seed, 1);
        let mut rng = sampler.rng();
        let layers = [law.inner().clone(), law.outer().clone()];
        let t = sample_layered(&mut rng, &sampler, &layers, 4);
        let env: Vec<Mat2> = entries.chunks(4).map(|c| Mat2([c[0], c[1], c[2], c[3]])).collect();
        let swapped = law.apply(&normalize_layered(&layers, &t).unwrap()).unwrap();
        prop_assert_eq!(eval(&swapped, &env), eval(&t, &env));
    }
}

#[test]
fn hexagon_fails_for_the_mutant_series() {
    let r = check_yang_baxter(&ring3_mutant_series(), &small(0, 60));
    assert!(!r.passed());
}

#[test]
fn checked_composite_rejects_the_mutant() {
    assert!(composite_theory_checked(&mutant_ring_law(), &small(0, 100)).is_err());
    assert!(composite_theory_checked(&ring_law(), &small(0, 100)).is_ok());
}

#[test]
fn reports_are_deterministic() {
    let a = check_law_axioms(&ring_law(), &small(7, 50)).to_json();
    let b = check_law_axioms(&ring_law(), &small(7, 50)).to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"seed\": 7"));
}
