use proptest::prelude::*;

use lawvere::distlaw::ring_theory;
use lawvere::factorization::{
    alternatives, canonicalize, check_fs_over_F, check_strict_fs, factorize, recompose, zigzag_equivalent,
    FactorizationPair,
};
use lawvere::profcat::FiniteCategory;
use lawvere::term::ops::{ADD, MUL, NEG, UNIT, ZERO};
use lawvere::term::{Term, TheorySpec};
use lawvere::theory::{AffineTheory, LawvereTheory, TheoryMorphism};

const K: usize = 3;

fn ring_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0..K).prop_map(Term::var), Just(Term::constant(UNIT)), Just(Term::constant(ZERO))];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::binary(MUL, l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::binary(ADD, l, r)),
            inner.prop_map(|t| Term::unary(NEG, t)),
        ]
    })
}

fn ring_morphism() -> impl Strategy<Value = TheoryMorphism> {
    prop::collection::vec(ring_term(), 1..=2).prop_map(|ts| {
        let ring = ring_theory();
        TheoryMorphism::from_parts(K, ts.iter().map(|t| ring.normalize(t).unwrap()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorize_is_a_section_of_compose(f in ring_morphism()) {
        let ring = ring_theory();
        let p = factorize(&ring, &f).unwrap();
        prop_assert_eq!(recompose(&ring, &p).unwrap(), f);
    }

    #[test]
    fn canonicalize_is_idempotent(f in ring_morphism()) {
        let ring = ring_theory();
        let p = factorize(&ring, &f).unwrap();
        prop_assert_eq!(canonicalize(&ring, &p).unwrap(), p.clone());
        for a in alternatives(&ring, &p).unwrap().iter().take(8) {
            let c = canonicalize(&ring, a).unwrap();
            prop_assert_eq!(canonicalize(&ring, &c).unwrap(), c.clone());
            prop_assert_eq!(c, p.clone());
        }
    }

    #[test]
    fn zigzag_equivalence_is_an_equivalence(f in ring_morphism()) {
        let ring = ring_theory();
        let p = factorize(&ring, &f).unwrap();
        let alts: Vec<FactorizationPair> = alternatives(&ring, &p).unwrap().into_iter().take(4).collect();
        prop_assert!(zigzag_equivalent(&ring, &p, &p, 0).unwrap().equivalent);
        for a in &alts {
            let there = zigzag_equivalent(&ring, &p, a, 2).unwrap();
            let back = zigzag_equivalent(&ring, a, &p, 0).unwrap();
            prop_assert!(there.equivalent && back.equivalent);
            if let Some(w) = there.witness {
                prop_assert!(w.validate(&ring).is_ok());
                prop_assert!(w.reversed().validate(&ring).is_ok());
            }
            for b in &alts {
                prop_assert!(zigzag_equivalent(&ring, a, b, 0).unwrap().equivalent);
            }
        }
    }

    #[test]
    fn different_morphisms_are_never_equivalent(f in ring_morphism(), g in ring_morphism()) {
        prop_assume!(f != g && f.target == g.target);
        let ring = ring_theory();
        let (p, q) = (factorize(&ring, &f).unwrap(), factorize(&ring, &g).unwrap());
        prop_assert!(!zigzag_equivalent(&ring, &p, &q, 0).unwrap().equivalent);
    }
}

#[test]
fn ring_has_factorizations_over_finite_sets() {
    let report = check_fs_over_F(&ring_theory(), 2, 4);
    assert!(report.passed(), "{report}");
}

#[test]
fn non_composite_theory_is_rejected() {
    let monoid = TheorySpec::monoid();
    let f = TheoryMorphism::from_parts(1, vec![Term::var(0)]);
    assert!(factorize(&monoid, &f).is_err());
}

#[test]
fn iso_pair_is_not_strict() {
    let c = FiniteCategory::iso_pair();
    let all: Vec<usize> = (0..c.morphism_count()).collect();
    let report = check_strict_fs(&c, &all, &all);
    assert!(report.failures_of("uniqueness").next().is_some(), "{report}");
}

#[test]
fn trivial_classes_on_a_chain_fail_existence() {
    let c = FiniteCategory::chain(2);
    let ids = c.identities().to_vec();
    let report = check_strict_fs(&c, &ids, &ids);
    assert!(report.failures_of("existence").next().is_some(), "{report}");
}

#[test]
fn affine_theory_is_not_a_lawvere_theory() {
    let affine = AffineTheory(LawvereTheory::new(TheorySpec::monoid()));
    let report = lawvere::theory::check_product_structure(&affine, 1, 1, &Default::default());
    assert!(!report.passed());
}
