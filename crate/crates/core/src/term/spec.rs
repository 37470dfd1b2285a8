use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::ops::*;
use super::{Op, Term, TermError};

/// Canonical-form engine of a theory. Implementations receive terms that
/// only use operations of the theory's signature.
pub trait Normalizer: Send + Sync {
    fn normalize(&self, t: &Term) -> Result<Term, TermError>;
}

/// Which operation symbols the text syntax binds to. Juxtaposition and `*`
/// map to `mul`, `1` to `one`, `+`/`-` to `add`/`neg`, `0` to `zero`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Notation {
    pub mul: Option<Op>,
    pub one: Option<Op>,
    pub add: Option<Op>,
    pub zero: Option<Op>,
    pub neg: Option<Op>,
}

impl Notation {
    /// Entries of `self` take precedence over those of `other`.
    pub fn merge(self, other: Notation) -> Notation {
        Notation {
            mul: self.mul.or(other.mul),
            one: self.one.or(other.one),
            add: self.add.or(other.add),
            zero: self.zero.or(other.zero),
            neg: self.neg.or(other.neg),
        }
    }
}

struct TheoryData {
    name: String,
    signature: Vec<Op>,
    notation: Notation,
    normalizer: Box<dyn Normalizer>,
    layers: Option<(TheorySpec, TheorySpec)>,
    identities: Vec<&'static str>,
}

/// An equational theory presented by a signature and a normalizer.
///
/// Cheap to clone; all clones share the same immutable data.
#[derive(Clone)]
pub struct TheorySpec(Arc<TheoryData>);

impl TheorySpec {
    pub fn new(
        name: impl Into<String>,
        signature: Vec<Op>,
        notation: Notation,
        normalizer: Box<dyn Normalizer>,
    ) -> TheorySpec {
        TheorySpec(Arc::new(TheoryData {
            name: name.into(),
            signature,
            notation,
            normalizer,
            layers: None,
            identities: Vec::new(),
        }))
    }

    /// A theory whose normal forms are `outer`-terms over `inner`-terms.
    pub fn layered(
        name: impl Into<String>,
        outer: TheorySpec,
        inner: TheorySpec,
        normalizer: Box<dyn Normalizer>,
    ) -> TheorySpec {
        let mut signature = outer.signature().to_vec();
        signature.extend_from_slice(inner.signature());
        let notation = outer.notation().merge(inner.notation());
        TheorySpec(Arc::new(TheoryData {
            name: name.into(),
            signature,
            notation,
            normalizer,
            layers: Some((outer, inner)),
            identities: Vec::new(),
        }))
    }

    fn base(kind: BaseTheory) -> TheorySpec {
        let (signature, notation, identities): (Vec<Op>, Notation, Vec<&'static str>) = match kind {
            BaseTheory::Identity => (vec![], Notation::default(), vec![]),
            BaseTheory::Monoid => (
                vec![MUL, UNIT],
                Notation { mul: Some(MUL), one: Some(UNIT), ..Default::default() },
                vec!["(xy)z = x(yz)", "1x = x = x1"],
            ),
            BaseTheory::Semigroup => (
                vec![SEMI_MUL],
                Notation { mul: Some(SEMI_MUL), ..Default::default() },
                vec!["(xy)z = x(yz)"],
            ),
            BaseTheory::AbelianGroup => (
                vec![ADD, ZERO, NEG],
                Notation { add: Some(ADD), zero: Some(ZERO), neg: Some(NEG), ..Default::default() },
                vec!["(x+y)+z = x+(y+z)", "x+y = y+x", "x+0 = x", "x+(-x) = 0"],
            ),
            BaseTheory::PointedSet => (
                vec![POINT],
                Notation { one: Some(POINT), ..Default::default() },
                vec![],
            ),
            BaseTheory::CommutativeMonoid => (
                vec![CADD, CZERO],
                Notation { add: Some(CADD), zero: Some(CZERO), ..Default::default() },
                vec!["(x+y)+z = x+(y+z)", "x+y = y+x", "x+0 = x"],
            ),
        };
        TheorySpec(Arc::new(TheoryData {
            name: kind.name().to_string(),
            signature,
            notation,
            normalizer: Box::new(kind),
            layers: None,
            identities,
        }))
    }

    /// The theory with no operations; its Lawvere theory is F^op itself.
    pub fn identity() -> TheorySpec {
        Self::base(BaseTheory::Identity)
    }

    pub fn monoid() -> TheorySpec {
        Self::base(BaseTheory::Monoid)
    }

    pub fn semigroup() -> TheorySpec {
        Self::base(BaseTheory::Semigroup)
    }

    pub fn abelian_group() -> TheorySpec {
        Self::base(BaseTheory::AbelianGroup)
    }

    pub fn pointed() -> TheorySpec {
        Self::base(BaseTheory::PointedSet)
    }

    pub fn commutative_monoid() -> TheorySpec {
        Self::base(BaseTheory::CommutativeMonoid)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn signature(&self) -> &[Op] {
        &self.0.signature
    }

    pub fn has_op(&self, op: &Op) -> bool {
        self.0.signature.contains(op)
    }

    pub fn notation(&self) -> Notation {
        self.0.notation
    }

    /// `(outer, inner)` for a composite theory.
    pub fn layers(&self) -> Option<(&TheorySpec, &TheorySpec)> {
        self.0.layers.as_ref().map(|(o, i)| (o, i))
    }

    /// Generating identities, for documentation and `--help` output.
    pub fn identities(&self) -> &[&'static str] {
        &self.0.identities
    }

    /// Rejects terms using operations outside the signature, then returns the
    /// canonical representative.
    pub fn normalize(&self, t: &Term) -> Result<Term, TermError> {
        self.check_signature(t)?;
        self.0.normalizer.normalize(t)
    }

    pub fn check_signature(&self, t: &Term) -> Result<(), TermError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                if !self.has_op(op) {
                    return Err(TermError::UnknownOperation { op: *op, theory: self.name().into() });
                }
                if args.len() != op.arity {
                    return Err(TermError::WrongArgumentCount { op: *op, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_signature(a))
            }
        }
    }

    pub fn is_normal(&self, t: &Term) -> bool {
        self.normalize(t).map(|n| &n == t).unwrap_or(false)
    }

    pub fn same_as(&self, other: &TheorySpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.name() == other.name()
    }
}

impl fmt::Debug for TheorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TheorySpec({})", self.name())
    }
}

/// The built-in single-layer theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseTheory {
    Identity,
    Monoid,
    Semigroup,
    AbelianGroup,
    PointedSet,
    CommutativeMonoid,
}

impl BaseTheory {
    pub fn name(self) -> &'static str {
        match self {
            BaseTheory::Identity => "identity",
            BaseTheory::Monoid => "monoid",
            BaseTheory::Semigroup => "semigroup",
            BaseTheory::AbelianGroup => "abgroup",
            BaseTheory::PointedSet => "pointed",
            BaseTheory::CommutativeMonoid => "cmonoid",
        }
    }
}

impl Normalizer for BaseTheory {
    fn normalize(&self, t: &Term) -> Result<Term, TermError> {
        match self {
            BaseTheory::Identity => match t {
                Term::Var(_) => Ok(t.clone()),
                Term::App(op, _) => {
                    Err(TermError::UnknownOperation { op: *op, theory: "identity".into() })
                }
            },
            BaseTheory::Monoid => {
                let mut w = Vec::new();
                flatten_word(t, &MUL, &mut w);
                Ok(word_term(MUL, Some(UNIT), &w))
            }
            BaseTheory::Semigroup => {
                let mut w = Vec::new();
                flatten_word(t, &SEMI_MUL, &mut w);
                Ok(word_term(SEMI_MUL, None, &w))
            }
            BaseTheory::AbelianGroup => {
                let mut coeffs = BTreeMap::new();
                linear_combination(t, 1, &mut coeffs);
                Ok(signed_sum(&coeffs))
            }
            BaseTheory::PointedSet => Ok(t.clone()),
            BaseTheory::CommutativeMonoid => {
                let mut vars = t.var_sequence();
                vars.sort_unstable();
                let mut it = vars.into_iter().rev().map(Term::Var);
                Ok(match it.next() {
                    None => Term::constant(CZERO),
                    Some(last) => it.fold(last, |acc, v| Term::binary(CADD, v, acc)),
                })
            }
        }
    }
}

fn flatten_word(t: &Term, mul: &Op, out: &mut Vec<usize>) {
    match t {
        Term::Var(i) => out.push(*i),
        Term::App(op, args) if op == mul => args.iter().for_each(|a| flatten_word(a, mul, out)),
        // the unit contributes nothing
        Term::App(_, _) => {}
    }
}

/// Right-nested product of the variables in `word`; the empty word becomes
/// `unit`. Panics on an empty word without a unit.
pub(crate) fn word_term(mul: Op, unit: Option<Op>, word: &[usize]) -> Term {
    let mut it = word.iter().rev().map(|&v| Term::Var(v));
    match it.next() {
        None => Term::constant(unit.expect("empty word in a theory without unit")),
        Some(last) => it.fold(last, |acc, v| Term::binary(mul, v, acc)),
    }
}

fn linear_combination(t: &Term, sign: i64, out: &mut BTreeMap<usize, i64>) {
    match t {
        Term::Var(i) => *out.entry(*i).or_insert(0) += sign,
        Term::App(op, args) if *op == ADD => {
            args.iter().for_each(|a| linear_combination(a, sign, out))
        }
        Term::App(op, args) if *op == NEG => linear_combination(&args[0], -sign, out),
        // zero
        Term::App(_, _) => {}
    }
}

/// Right-nested sum in which variable `v` with coefficient `c` appears `|c|`
/// times, negated when `c < 0`; zero coefficients vanish and the empty sum is
/// `zero`.
pub(crate) fn signed_sum(coeffs: &BTreeMap<usize, i64>) -> Term {
    let mut summands = Vec::new();
    for (&v, &c) in coeffs {
        let leaf = if c < 0 { Term::unary(NEG, Term::Var(v)) } else { Term::Var(v) };
        for _ in 0..c.unsigned_abs() {
            summands.push(leaf.clone());
        }
    }
    let mut it = summands.into_iter().rev();
    match it.next() {
        None => Term::constant(ZERO),
        Some(last) => it.fold(last, |acc, s| Term::binary(ADD, s, acc)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Term {
        Term::Var(i)
    }

    #[test]
    fn abelian_cancellation() {
        let g = TheorySpec::abelian_group();
        let t = Term::binary(ADD, v(0), Term::binary(ADD, v(1), Term::unary(NEG, v(0))));
        assert_eq!(g.normalize(&t).unwrap(), v(1));
    }

    #[test]
    fn abelian_coefficient_form() {
        let g = TheorySpec::abelian_group();
        let t = Term::binary(ADD, v(0), v(0));
        assert_eq!(g.normalize(&t).unwrap(), Term::binary(ADD, v(0), v(0)));
        let t = Term::binary(ADD, v(1), Term::unary(NEG, Term::binary(ADD, v(0), v(1))));
        assert_eq!(g.normalize(&t).unwrap(), Term::unary(NEG, v(0)));
    }

    #[test]
    fn monoid_flattening() {
        let m = TheorySpec::monoid();
        let t = Term::binary(MUL, Term::binary(MUL, v(0), v(1)), v(2));
        assert_eq!(m.normalize(&t).unwrap(), word_term(MUL, Some(UNIT), &[0, 1, 2]));
        let t = Term::binary(MUL, Term::constant(UNIT), Term::constant(UNIT));
        assert_eq!(m.normalize(&t).unwrap(), Term::constant(UNIT));
    }

    #[test]
    fn unknown_operation_rejected() {
        let m = TheorySpec::monoid();
        let t = Term::binary(ADD, v(0), v(1));
        assert!(matches!(m.normalize(&t), Err(TermError::UnknownOperation { .. })));
        let t = Term::App(MUL, vec![v(0)]);
        assert!(matches!(m.normalize(&t), Err(TermError::WrongArgumentCount { .. })));
    }

    #[test]
    fn commutative_monoid_sorts() {
        let c = TheorySpec::commutative_monoid();
        let t = Term::binary(CADD, v(2), Term::binary(CADD, Term::constant(CZERO), v(0)));
        assert_eq!(c.normalize(&t).unwrap(), Term::binary(CADD, v(0), v(2)));
    }

    #[test]
    fn pointed_and_identity() {
        let p = TheorySpec::pointed();
        assert_eq!(p.normalize(&Term::constant(POINT)).unwrap(), Term::constant(POINT));
        let id = TheorySpec::identity();
        assert_eq!(id.normalize(&v(3)).unwrap(), v(3));
        assert!(id.normalize(&Term::constant(POINT)).is_err());
    }
}
