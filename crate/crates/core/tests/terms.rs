use proptest::prelude::*;

use lawvere::distlaw::ring_theory;
use lawvere::distlaw::semantics::{eval, Mat2};
use lawvere::syntax::{parse_term, print_term};
use lawvere::term::ops::{ADD, MUL, NEG, UNIT, ZERO};
use lawvere::term::{enumerate_terms, substitute, Op, Term, TheorySpec};

const K: usize = 3;

fn term_over(leaves: Vec<Op>, binary: Vec<Op>, unary: Vec<Op>) -> impl Strategy<Value = Term> {
    let mut leaf = vec![(0..K).prop_map(Term::var).boxed()];
    for c in leaves {
        leaf.push(Just(Term::constant(c)).boxed());
    }
    prop::strategy::Union::new(leaf).prop_recursive(4, 24, 2, move |inner| {
        let mut nodes = Vec::new();
        for &op in &binary {
            nodes.push((inner.clone(), inner.clone()).prop_map(move |(l, r)| Term::binary(op, l, r)).boxed());
        }
        for &op in &unary {
            nodes.push(inner.clone().prop_map(move |t| Term::unary(op, t)).boxed());
        }
        prop::strategy::Union::new(nodes)
    })
}

fn ring_term() -> impl Strategy<Value = Term> {
    term_over(vec![UNIT, ZERO], vec![MUL, ADD], vec![NEG])
}

fn monoid_term() -> impl Strategy<Value = Term> {
    term_over(vec![UNIT], vec![MUL], vec![])
}

fn matrix() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-9i64..10).prop_map(Mat2)
}

proptest! {
    #[test]
    fn ring_normal_form_has_the_same_value(t in ring_term(), env in prop::collection::vec(matrix(), K)) {
        let n = ring_theory().normalize(&t).unwrap();
        prop_assert_eq!(eval(&n, &env), eval(&t, &env));
    }

    #[test]
    fn normalization_is_idempotent(t in ring_term()) {
        let ring = ring_theory();
        let n = ring.normalize(&t).unwrap();
        prop_assert!(ring.is_normal(&n));
        prop_assert_eq!(ring.normalize(&n).unwrap(), n);
    }

    #[test]
    fn print_then_parse_is_the_identity(t in ring_term()) {
        let ring = ring_theory();
        let n = ring.normalize(&t).unwrap();
        prop_assert_eq!(parse_term(&print_term(&n), &ring, K).unwrap(), n);
    }

    #[test]
    fn monoid_normal_form_is_the_variable_word(t in monoid_term()) {
        let n = TheorySpec::monoid().normalize(&t).unwrap();
        let word: String = t.var_sequence().iter().map(|&i| (b'a' + i as u8) as char).collect();
        let expected = if word.is_empty() { "1".to_string() } else { word };
        prop_assert_eq!(print_term(&n), expected);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        t in ring_term(),
        sigma in prop::collection::vec(ring_term(), K),
        env in prop::collection::vec(matrix(), K),
    ) {
        let ring = ring_theory();
        let values: Vec<Mat2> = sigma.iter().map(|s| eval(s, &env).unwrap()).collect();
        let composite = ring.normalize(&substitute(&t, &sigma).unwrap()).unwrap();
        prop_assert_eq!(eval(&composite, &env), eval(&t, &values));
    }
}

#[test]
fn enumerated_normal_forms_are_distinct_and_round_trip() {
    let ring = ring_theory();
    let terms = enumerate_terms(&ring, 2, 5).unwrap();
    let mut printed: Vec<String> = terms.iter().map(print_term).collect();
    for (t, s) in terms.iter().zip(&printed) {
        assert_eq!(&parse_term(s, &ring, 2).unwrap(), t, "{s}");
    }
    printed.sort();
    printed.dedup();
    assert_eq!(printed.len(), terms.len());
}

#[test]
fn parse_errors_carry_positions() {
    let ring = ring_theory();
    let e = parse_term("ab+", &ring, 2).unwrap_err().to_string();
    assert!(e.contains("position 3"), "{e}");
    let e = parse_term("ac", &ring, 2).unwrap_err().to_string();
    assert!(e.contains("`c`"), "{e}");
    assert_eq!(parse_term("a", &ring, 1).unwrap(), Term::var(0));
}
