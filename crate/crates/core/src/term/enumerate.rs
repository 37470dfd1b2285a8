use super::{Op, Term, TermError, TheorySpec};

/// Every syntactic term over `k` variables built from `signature` with at
/// most `size_bound` nodes, grouped by size. Index `s` of the result holds
/// the terms of size exactly `s`.
pub fn enumerate_raw_terms(signature: &[Op], k: usize, size_bound: usize) -> Vec<Vec<Term>> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); size_bound + 1];
    if size_bound == 0 {
        return by_size;
    }
    by_size[1].extend((0..k).map(Term::Var));
    by_size[1].extend(signature.iter().filter(|op| op.arity == 0).map(|&op| Term::constant(op)));
    for s in 2..=size_bound {
        let mut level = Vec::new();
        for op in signature.iter().filter(|op| op.arity > 0) {
            for split in compositions(s - 1, op.arity) {
                let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
                for &part in &split {
                    let mut next = Vec::with_capacity(acc.len() * by_size[part].len());
                    for prefix in &acc {
                        for t in &by_size[part] {
                            let mut args = prefix.clone();
                            args.push(t.clone());
                            next.push(args);
                        }
                    }
                    acc = next;
                }
                level.extend(acc.into_iter().map(|args| Term::App(*op, args)));
            }
        }
        by_size[s] = level;
    }
    by_size
}

/// Ordered ways of writing `total` as `parts` positive summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All normal forms over `k` variables with at most `size_bound` nodes, each
/// exactly once, ordered by size and then structurally.
///
/// A normal form of size `s` is itself a syntactic term of size `s`, so the
/// fixed points of the normalizer among raw terms are exactly the wanted set.
pub fn enumerate_terms(theory: &TheorySpec, k: usize, size_bound: usize) -> Result<Vec<Term>, TermError> {
    let raw = enumerate_raw_terms(theory.signature(), k, size_bound);
    let mut out = Vec::new();
    for level in raw {
        let mut fixed: Vec<Term> = Vec::new();
        for t in level {
            if theory.normalize(&t)? == t {
                fixed.push(t);
            }
        }
        fixed.sort();
        fixed.dedup();
        out.extend(fixed);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(1, 2).is_empty());
    }

    #[test]
    fn monoid_words_up_to_length_two() {
        // Word oracle: all words of length <= 2 over {a, b}.
        let oracle: Vec<Vec<usize>> = std::iter::once(vec![])
            .chain((0..2).map(|a| vec![a]))
            .chain((0..2).flat_map(|a| (0..2).map(move |b| vec![a, b])))
            .collect();
        let terms = enumerate_terms(&TheorySpec::monoid(), 2, 3).unwrap();
        assert_eq!(terms.len(), oracle.len());
        assert_eq!(terms.len(), 7);
        let mut words: Vec<Vec<usize>> = terms.iter().map(Term::var_sequence).collect();
        words.sort();
        let mut expected = oracle;
        expected.sort();
        assert_eq!(words, expected);
    }

    #[test]
    fn nullary_bound_zero_is_empty() {
        for th in [TheorySpec::monoid(), TheorySpec::abelian_group(), TheorySpec::pointed()] {
            assert!(enumerate_terms(&th, 0, 0).unwrap().is_empty());
        }
    }

    #[test]
    fn pointed_has_two_unary_terms() {
        for bound in 1..6 {
            let terms = enumerate_terms(&TheorySpec::pointed(), 1, bound).unwrap();
            assert_eq!(terms.len(), 2);
        }
    }

    #[test]
    fn enumeration_is_closed_and_distinct() {
        let g = TheorySpec::abelian_group();
        let terms = enumerate_terms(&g, 2, 6).unwrap();
        for t in &terms {
            assert!(g.is_normal(t));
        }
        let mut d = terms.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), terms.len());
    }
}
