//! The built-in laws and series.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::{composite_theory, DistributiveLawSpec, DistributiveSeries, Rewrite};
use crate::term::ops::*;
use crate::term::{split_layer, Op, Term, TermError, TheorySpec};

fn flatten(t: &Term, mul: &Op, out: &mut Vec<usize>) {
    match t {
        Term::App(op, args) if op == mul => args.iter().for_each(|a| flatten(a, mul, out)),
        Term::Var(i) => out.push(*i),
        // the unit of the multiplication
        Term::App(_, _) => {}
    }
}

fn linear(t: &Term, sign: i64, out: &mut BTreeMap<usize, i64>) -> Result<(), TermError> {
    match t {
        Term::Var(i) => *out.entry(*i).or_insert(0) += sign,
        Term::App(op, args) if *op == ADD => {
            linear(&args[0], sign, out)?;
            linear(&args[1], sign, out)?;
        }
        Term::App(op, args) if *op == NEG => linear(&args[0], -sign, out)?,
        Term::App(op, _) if *op == ZERO => {}
        Term::App(op, _) => {
            return Err(TermError::Layering(format!("{op} below the multiplicative layer")))
        }
    }
    Ok(())
}

/// A signed sum of the given leaves (each repeated `|c|` times).
fn signed_leaves(leaves: impl IntoIterator<Item = (Term, i64)>) -> Term {
    let mut summands = Vec::new();
    for (leaf, c) in leaves {
        let s = if c < 0 { Term::unary(NEG, leaf) } else { leaf };
        for _ in 0..c.unsigned_abs() {
            summands.push(s.clone());
        }
    }
    let mut it = summands.into_iter().rev();
    match it.next() {
        None => Term::constant(ZERO),
        Some(last) => it.fold(last, |acc, s| Term::binary(ADD, s, acc)),
    }
}

/// Distributes a product (of a monoid or semigroup) over abelian-group sums:
/// `(a+b)(c+d) ↦ ac+bc+ad+bd`, `(-a)b ↦ -(ab)`.
///
/// With `merge_repeats` set this is a deliberately broken variant: inside a
/// product of two or more factors, every factor first loses the multiplicity
/// of its summands (`(a+a)c ↦ ac`).
pub struct RingRewrite {
    pub mul: Op,
    pub unit: Option<Op>,
    pub merge_repeats: bool,
}

impl Rewrite for RingRewrite {
    fn rewrite(&self, t: &Term) -> Result<Term, TermError> {
        let mut atoms = Vec::new();
        let skeleton = split_layer(t, &|op| *op == self.mul || Some(*op) == self.unit, &mut atoms);
        let mut word = Vec::new();
        flatten(&skeleton, &self.mul, &mut word);
        let mut product: BTreeMap<Vec<usize>, i64> = BTreeMap::from([(Vec::new(), 1)]);
        for &a in &word {
            let mut factor = BTreeMap::new();
            linear(&atoms[a], 1, &mut factor)?;
            if self.merge_repeats && word.len() >= 2 {
                factor.values_mut().for_each(|c| *c = c.signum());
            }
            let mut next: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
            for (w, c) in &product {
                for (&x, &d) in &factor {
                    let mut w2 = w.clone();
                    w2.push(x);
                    *next.entry(w2).or_insert(0) += c * d;
                }
            }
            product = next;
        }
        let leaves = product.into_iter().map(|(w, c)| {
            let mut it = w.into_iter().rev().map(Term::Var);
            let leaf = match it.next() {
                None => Term::constant(self.unit.expect("empty product needs a unit")),
                Some(last) => it.fold(last, |acc, x| Term::binary(self.mul, x, acc)),
            };
            (leaf, c)
        });
        Ok(signed_leaves(leaves))
    }
}

/// Semigroup words over points and variables: drop the points, and send the
/// all-points word to the point.
struct DropPoints;

impl Rewrite for DropPoints {
    fn rewrite(&self, t: &Term) -> Result<Term, TermError> {
        let mut word = Vec::new();
        flatten(t, &SEMI_MUL, &mut word);
        let mut it = word.into_iter().rev().map(Term::Var);
        Ok(match it.next() {
            None => Term::constant(POINT),
            Some(last) => it.fold(last, |acc, x| Term::binary(SEMI_MUL, x, acc)),
        })
    }
}

/// For laws where one layer is always trivial: the term is already in the
/// target layering.
struct Unchanged;

impl Rewrite for Unchanged {
    fn rewrite(&self, t: &Term) -> Result<Term, TermError> {
        Ok(t.clone())
    }
}

/// A broken law of pointed sets over abelian groups that sends the point to zero.
struct PointToZero;

impl Rewrite for PointToZero {
    fn rewrite(&self, t: &Term) -> Result<Term, TermError> {
        Ok(match t {
            Term::App(op, _) if *op == POINT => Term::constant(ZERO),
            _ => t.clone(),
        })
    }
}

/// Monoids over abelian groups; the composite is the theory of rings.
pub fn ring_law() -> DistributiveLawSpec {
    DistributiveLawSpec::new(
        "ring",
        "ring",
        TheorySpec::monoid(),
        TheorySpec::abelian_group(),
        Arc::new(RingRewrite { mul: MUL, unit: Some(UNIT), merge_repeats: false }),
    )
}

/// Non-unital multiplication over abelian groups.
pub fn nonunital_ring_law() -> DistributiveLawSpec {
    DistributiveLawSpec::new(
        "nonunital-ring",
        "nonunital-ring",
        TheorySpec::semigroup(),
        TheorySpec::abelian_group(),
        Arc::new(RingRewrite { mul: SEMI_MUL, unit: None, merge_repeats: false }),
    )
}

/// The ring law with summand multiplicities forgotten inside products; not a
/// distributive law.
pub fn mutant_ring_law() -> DistributiveLawSpec {
    DistributiveLawSpec::new(
        "ring-mutant",
        "ring-mutant",
        TheorySpec::monoid(),
        TheorySpec::abelian_group(),
        Arc::new(RingRewrite { mul: MUL, unit: Some(UNIT), merge_repeats: true }),
    )
}

/// Non-unital semigroups under pointed sets; the composite is the theory of
/// monoids, with the point as the empty word.
pub fn pointed_semigroup_law() -> DistributiveLawSpec {
    DistributiveLawSpec::new(
        "monoid",
        "monoid-composite",
        TheorySpec::semigroup(),
        TheorySpec::pointed(),
        Arc::new(DropPoints),
    )
}

/// Pointed sets under abelian groups: the point becomes a generator.
pub fn pointed_abgroup_law() -> DistributiveLawSpec {
    DistributiveLawSpec::new(
        "pointed-abgroup",
        "pointed-abgroup",
        TheorySpec::pointed(),
        TheorySpec::abelian_group(),
        Arc::new(Unchanged),
    )
}

pub fn pointed_abgroup_mutant() -> DistributiveLawSpec {
    DistributiveLawSpec::new(
        "pointed-abgroup-mutant",
        "pointed-abgroup-mutant",
        TheorySpec::pointed(),
        TheorySpec::abelian_group(),
        Arc::new(PointToZero),
    )
}

/// The identity theory under `outer`; its composite is `outer`.
pub fn identity_inner_law(outer: TheorySpec) -> DistributiveLawSpec {
    let name = outer.name().to_string();
    DistributiveLawSpec::new(format!("identity-{name}"), name, TheorySpec::identity(), outer, Arc::new(Unchanged))
}

/// `inner` under the identity theory; its composite is `inner`.
pub fn identity_outer_law(inner: TheorySpec) -> DistributiveLawSpec {
    let name = inner.name().to_string();
    DistributiveLawSpec::new(format!("{name}-identity"), name, inner, TheorySpec::identity(), Arc::new(Unchanged))
}

/// Abelian groups, pointed sets and non-unital semigroups, outermost first.
pub fn ring3_series() -> DistributiveSeries {
    ring3_with(pointed_abgroup_law(), "ring3")
}

/// [`ring3_series`] with the pointed-set law replaced by one sending the point to zero.
pub fn ring3_mutant_series() -> DistributiveSeries {
    ring3_with(pointed_abgroup_mutant(), "ring3-mutant")
}

fn ring3_with(pointed_over_group: DistributiveLawSpec, name: &str) -> DistributiveSeries {
    let c = pointed_over_group.outer().clone();
    let b = pointed_over_group.inner().clone();
    let nonunital = nonunital_ring_law();
    let monoid = pointed_semigroup_law();
    let a = monoid.inner().clone();
    // Theories must be shared so that the series validation sees the same specs.
    let nonunital = DistributiveLawSpec { inner: a.clone(), outer: c.clone(), ..nonunital };
    let monoid = DistributiveLawSpec { inner: a.clone(), outer: b.clone(), ..monoid };
    DistributiveSeries::new(
        name,
        vec![c, b, a],
        vec![((1, 0), pointed_over_group), ((2, 0), nonunital), ((2, 1), monoid)],
    )
    .expect("ring3 series is well formed")
}

/// The theory of rings as the composite of the ring law; built once.
pub fn ring_theory() -> TheorySpec {
    static RING: OnceLock<TheorySpec> = OnceLock::new();
    RING.get_or_init(|| composite_theory(&ring_law()).expect("the ring law satisfies its axioms"))
        .clone()
}

/// Monoids as pointed sets over non-unital semigroups; built once.
pub fn composite_monoid_theory() -> TheorySpec {
    static MONOID: OnceLock<TheorySpec> = OnceLock::new();
    MONOID
        .get_or_init(|| composite_theory(&pointed_semigroup_law()).expect("the monoid law satisfies its axioms"))
        .clone()
}
