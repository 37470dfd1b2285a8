//! Terms over a signature with positional variables.
//!
//! A term over `k` variables is either `Var(i)` with `i < k` or an operation
//! applied to exactly `arity` argument terms. Variables carry no names: the
//! ambient arity `k` is tracked by whoever owns the term (a
//! [`TheoryMorphism`](crate::theory::TheoryMorphism) records it as its source).

mod enumerate;
mod spec;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use enumerate::{enumerate_raw_terms, enumerate_terms};
pub use spec::{BaseTheory, Normalizer, Notation, TheorySpec};

/// An operation symbol. Two symbols are equal only if name, arity and owning
/// theory all agree, so the multiplication of monoids and the multiplication
/// of semigroups are different symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Op {
    pub name: &'static str,
    pub arity: usize,
    pub theory: &'static str,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}/{}", self.theory, self.name, self.arity)
    }
}

/// Operation symbols of the built-in theories.
pub mod ops {
    use super::Op;

    pub const MUL: Op = Op { name: "mul", arity: 2, theory: "monoid" };
    pub const UNIT: Op = Op { name: "unit", arity: 0, theory: "monoid" };
    pub const SEMI_MUL: Op = Op { name: "mul", arity: 2, theory: "semigroup" };
    pub const ADD: Op = Op { name: "add", arity: 2, theory: "abgroup" };
    pub const ZERO: Op = Op { name: "zero", arity: 0, theory: "abgroup" };
    pub const NEG: Op = Op { name: "neg", arity: 1, theory: "abgroup" };
    pub const POINT: Op = Op { name: "point", arity: 0, theory: "pointed" };
    pub const CADD: Op = Op { name: "add", arity: 2, theory: "cmonoid" };
    pub const CZERO: Op = Op { name: "zero", arity: 0, theory: "cmonoid" };
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("operation {op} is not in the signature of theory `{theory}`")]
    UnknownOperation { op: Op, theory: String },
    #[error("variable x{index} used with only {arity} variables in scope")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("operation {op} applied to {found} arguments")]
    WrongArgumentCount { op: Op, found: usize },
    #[error("substitution tuple has length {found}, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("layering violated: {0}")]
    Layering(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(Op, Vec<Term>),
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn constant(op: Op) -> Term {
        debug_assert_eq!(op.arity, 0);
        Term::App(op, Vec::new())
    }

    pub fn unary(op: Op, arg: Term) -> Term {
        debug_assert_eq!(op.arity, 1);
        Term::App(op, vec![arg])
    }

    pub fn binary(op: Op, lhs: Term, rhs: Term) -> Term {
        debug_assert_eq!(op.arity, 2);
        Term::App(op, vec![lhs, rhs])
    }

    /// The identity tuple `(x0, …, x_{k-1})`.
    pub fn variables(k: usize) -> Vec<Term> {
        (0..k).map(Term::Var).collect()
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn root(&self) -> Option<&Op> {
        match self {
            Term::Var(_) => None,
            Term::App(op, _) => Some(op),
        }
    }

    /// Node count of the syntax tree; the single size measure used for bounds.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Longest chain of operation nodes from the root; variables and constants
    /// count zero and one respectively.
    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// Number of variable occurrences (word length for monoid words).
    pub fn var_occurrences(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => args.iter().map(Term::var_occurrences).sum(),
        }
    }

    /// Variable indices in left-to-right order, with repetitions.
    pub fn var_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Checks argument counts and that every variable is below `arity`.
    pub fn check(&self, arity: usize) -> Result<(), TermError> {
        match self {
            Term::Var(i) if *i < arity => Ok(()),
            Term::Var(i) => Err(TermError::VariableOutOfRange { index: *i, arity }),
            Term::App(op, args) => {
                if args.len() != op.arity {
                    return Err(TermError::WrongArgumentCount { op: *op, found: args.len() });
                }
                args.iter().try_for_each(|a| a.check(arity))
            }
        }
    }

    pub fn any_op(&self, pred: &impl Fn(&Op) -> bool) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(op, args) => pred(op) || args.iter().any(|a| a.any_op(pred)),
        }
    }

    /// Replaces `Var(i)` by `Var(renaming[i])`. Panics if a variable has no image.
    pub fn rename(&self, renaming: &[usize]) -> Term {
        match self {
            Term::Var(i) => Term::Var(renaming[*i]),
            Term::App(op, args) => Term::App(*op, args.iter().map(|a| a.rename(renaming)).collect()),
        }
    }
}

/// Simultaneous replacement of `Var(i)` by `sigma[i]`. The result is not
/// normalized.
pub fn substitute(t: &Term, sigma: &[Term]) -> Result<Term, TermError> {
    match t {
        Term::Var(i) => sigma
            .get(*i)
            .cloned()
            .ok_or(TermError::VariableOutOfRange { index: *i, arity: sigma.len() }),
        Term::App(op, args) => Ok(Term::App(
            *op,
            args.iter().map(|a| substitute(a, sigma)).collect::<Result<_, _>>()?,
        )),
    }
}

/// Substitution with the ambient arity of `t` stated: `sigma` must have
/// exactly `arity` entries.
pub fn substitute_checked(t: &Term, arity: usize, sigma: &[Term]) -> Result<Term, TermError> {
    if sigma.len() != arity {
        return Err(TermError::TupleLength { expected: arity, found: sigma.len() });
    }
    t.check(arity)?;
    substitute(t, sigma)
}

/// Total order on terms used to sort the leaves of a layer: compare the
/// reversed variable sequences lexicographically, then fall back to the
/// structural order. For monoid words this is the colexicographic order, so
/// `(a+b)(c+d)` expands in the order `ac, bc, ad, bd` and `ab` precedes `c`.
pub fn compare_leaves(a: &Term, b: &Term) -> Ordering {
    let va = a.var_sequence();
    let vb = b.var_sequence();
    va.iter().rev().cmp(vb.iter().rev()).then_with(|| a.cmp(b))
}

/// Cuts `t` along the boundary of a layer. Operations accepted by `in_layer`
/// stay in the returned skeleton; every maximal subterm below them (including
/// bare variables) is replaced by a fresh variable. The replaced subterms are
/// pushed onto `atoms` without duplicates, in first-occurrence order, and the
/// fresh variable numbering continues from whatever `atoms` already holds.
pub fn split_layer(t: &Term, in_layer: &impl Fn(&Op) -> bool, atoms: &mut Vec<Term>) -> Term {
    let mut seen: HashMap<Term, usize> =
        atoms.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
    split_rec(t, in_layer, atoms, &mut seen)
}

fn split_rec(
    t: &Term,
    in_layer: &impl Fn(&Op) -> bool,
    atoms: &mut Vec<Term>,
    seen: &mut HashMap<Term, usize>,
) -> Term {
    match t {
        Term::App(op, args) if in_layer(op) => Term::App(
            *op,
            args.iter().map(|a| split_rec(a, in_layer, atoms, seen)).collect(),
        ),
        _ => {
            let next = atoms.len();
            let idx = *seen.entry(t.clone()).or_insert_with(|| {
                atoms.push(t.clone());
                next
            });
            Term::Var(idx)
        }
    }
}

/// Normalizes a term whose top layer belongs to `top`. The subterms below the
/// layer are normalized with `below`, deduplicated, sorted by
/// [`compare_leaves`], and the skeleton is normalized by `top` over them.
pub fn normalize_layer(
    top: &TheorySpec,
    t: &Term,
    below: &dyn Fn(&Term) -> Result<Term, TermError>,
) -> Result<Term, TermError> {
    let mut raw = Vec::new();
    let skeleton = split_layer(t, &|op| top.has_op(op), &mut raw);
    let normal = raw.iter().map(below).collect::<Result<Vec<_>, _>>()?;
    let mut distinct = normal.clone();
    distinct.sort_by(compare_leaves);
    distinct.dedup();
    let renaming: Vec<usize> = normal
        .iter()
        .map(|a| distinct.binary_search_by(|x| compare_leaves(x, a)).expect("atom present"))
        .collect();
    let top_nf = top.normalize(&skeleton.rename(&renaming))?;
    substitute(&top_nf, &distinct)
}

/// Normalizes a term layered by `theories` (outermost first): each maximal
/// region of one layer is normalized by that layer's theory, with the layers
/// below treated as atoms. Fails if an operation of an outer layer occurs
/// below an inner one.
pub fn normalize_layered(theories: &[TheorySpec], t: &Term) -> Result<Term, TermError> {
    match theories.split_first() {
        None => match t {
            Term::Var(_) => Ok(t.clone()),
            Term::App(op, _) => Err(TermError::Layering(format!(
                "operation {op} occurs below every declared layer"
            ))),
        },
        Some((top, rest)) => normalize_layer(top, t, &|s| normalize_layered(rest, s)),
    }
}

/// Checks that along every root-to-leaf path the layer index of operations
/// never decreases. `layer_of` returns `None` for operations that belong to
/// no layer.
pub fn check_layering(t: &Term, layer_of: &impl Fn(&Op) -> Option<usize>) -> Result<(), TermError> {
    fn go(
        t: &Term,
        floor: usize,
        layer_of: &impl Fn(&Op) -> Option<usize>,
    ) -> Result<(), TermError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                let layer = layer_of(op).ok_or_else(|| {
                    TermError::Layering(format!("operation {op} belongs to no layer"))
                })?;
                if layer < floor {
                    return Err(TermError::Layering(format!(
                        "operation {op} of layer {layer} occurs below layer {floor}"
                    )));
                }
                args.iter().try_for_each(|a| go(a, layer, layer_of))
            }
        }
    }
    go(t, 0, layer_of)
}

#[cfg(test)]
mod tests {
    use super::ops::*;
    use super::*;

    fn word(op: Op, vars: &[usize]) -> Term {
        let mut it = vars.iter().rev();
        let last = Term::Var(*it.next().unwrap());
        it.fold(last, |acc, v| Term::binary(op, Term::Var(*v), acc))
    }

    #[test]
    fn diagonal_substitution() {
        let t = Term::binary(MUL, Term::Var(0), Term::Var(1));
        let s = substitute_checked(&t, 2, &[Term::Var(0), Term::Var(0)]).unwrap();
        assert_eq!(s, Term::binary(MUL, Term::Var(0), Term::Var(0)));
    }

    #[test]
    fn identity_substitution_is_noop() {
        let t = word(MUL, &[0, 2, 1, 0]);
        assert_eq!(substitute_checked(&t, 3, &Term::variables(3)).unwrap(), t);
    }

    #[test]
    fn substitution_errors() {
        let t = Term::Var(2);
        assert_eq!(
            substitute_checked(&t, 2, &Term::variables(3)),
            Err(TermError::TupleLength { expected: 2, found: 3 })
        );
        assert!(matches!(
            substitute_checked(&t, 2, &Term::variables(2)),
            Err(TermError::VariableOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn colex_leaf_order() {
        let ac = word(MUL, &[0, 2]);
        let bc = word(MUL, &[1, 2]);
        let ad = word(MUL, &[0, 3]);
        let bd = word(MUL, &[1, 3]);
        let mut v = vec![bd.clone(), ad.clone(), bc.clone(), ac.clone()];
        v.sort_by(compare_leaves);
        assert_eq!(v, vec![ac, bc, ad, bd]);
        assert_eq!(compare_leaves(&word(MUL, &[0, 1]), &Term::Var(2)), Ordering::Less);
        assert_eq!(compare_leaves(&Term::constant(UNIT), &Term::Var(0)), Ordering::Less);
    }

    #[test]
    fn split_dedups_atoms() {
        let ab = word(MUL, &[0, 1]);
        let t = Term::binary(ADD, ab.clone(), Term::binary(ADD, Term::Var(2), ab.clone()));
        let mut atoms = Vec::new();
        let skel = split_layer(&t, &|op| op.theory == "abgroup", &mut atoms);
        assert_eq!(atoms, vec![ab, Term::Var(2)]);
        assert_eq!(
            skel,
            Term::binary(ADD, Term::Var(0), Term::binary(ADD, Term::Var(1), Term::Var(0)))
        );
    }

    #[test]
    fn layering_certificate() {
        let layer_of = |op: &Op| match op.theory {
            "abgroup" => Some(0),
            "monoid" => Some(1),
            _ => None,
        };
        let good = Term::binary(ADD, word(MUL, &[0, 1]), Term::Var(2));
        assert!(check_layering(&good, &layer_of).is_ok());
        let bad = Term::binary(MUL, Term::binary(ADD, Term::Var(0), Term::Var(1)), Term::Var(2));
        assert!(check_layering(&bad, &layer_of).is_err());
    }

    #[test]
    fn sizes() {
        let t = Term::binary(ADD, word(MUL, &[0, 1]), Term::unary(NEG, Term::Var(2)));
        assert_eq!(t.size(), 6);
        assert_eq!(t.height(), 2);
        assert_eq!(t.var_occurrences(), 3);
        assert_eq!(t.max_var(), Some(2));
    }
}
