//! Distributive laws between term theories and the composite theories they
//! produce.
//!
//! A law of `S` over `T` rewrites `S`-terms over `T`-terms into `T`-terms
//! over `S`-terms. The composite theory has `T` outermost, so for the ring
//! law (`S` = monoids, `T` = abelian groups) normal forms are sums of words.

mod check;
mod laws;
pub mod semantics;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::report::{Failure, Report};
use crate::sampler::Sampler;
use crate::term::{
    check_layering, normalize_layered, split_layer, substitute, Normalizer, Op, Term, TermError,
    TheorySpec,
};

pub use check::{check_law_axioms, check_yang_baxter, sample_layered, DIAGRAMS};
pub use laws::{
    composite_monoid_theory, identity_inner_law, identity_outer_law, mutant_ring_law,
    nonunital_ring_law, pointed_abgroup_law, pointed_abgroup_mutant, pointed_semigroup_law,
    ring3_mutant_series, ring3_series, ring_law, ring_theory, RingRewrite,
};

/// The executable part of a law: `t` is an `S`-over-`T` term whose two layers
/// are already normal; the result must be a `T`-over-`S` term.
pub trait Rewrite: Send + Sync {
    fn rewrite(&self, t: &Term) -> Result<Term, TermError>;
}

#[derive(Debug, Error)]
pub enum DistLawError {
    #[error("law `{law}` fails its axioms: {failure:?}")]
    AxiomFailure { law: String, failure: Box<Failure>, report: Box<Report> },
    #[error("series laws must satisfy i > j and match the declared theories: {0}")]
    Series(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A distributive law `λ: ST ⇒ TS` of `inner` (`S`) over `outer` (`T`).
#[derive(Clone)]
pub struct DistributiveLawSpec {
    name: String,
    composite_name: String,
    inner: TheorySpec,
    outer: TheorySpec,
    rewrite: Arc<dyn Rewrite>,
}

impl fmt::Debug for DistributiveLawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DistributiveLawSpec({}: {} over {})", self.name, self.inner.name(), self.outer.name())
    }
}

impl DistributiveLawSpec {
    pub fn new(
        name: impl Into<String>,
        composite_name: impl Into<String>,
        inner: TheorySpec,
        outer: TheorySpec,
        rewrite: Arc<dyn Rewrite>,
    ) -> DistributiveLawSpec {
        DistributiveLawSpec {
            name: name.into(),
            composite_name: composite_name.into(),
            inner,
            outer,
            rewrite,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn composite_name(&self) -> &str {
        &self.composite_name
    }

    /// `S`.
    pub fn inner(&self) -> &TheorySpec {
        &self.inner
    }

    /// `T`.
    pub fn outer(&self) -> &TheorySpec {
        &self.outer
    }

    fn input_layer(&self, op: &Op) -> Option<usize> {
        if self.inner.has_op(op) {
            Some(0)
        } else if self.outer.has_op(op) {
            Some(1)
        } else {
            None
        }
    }

    /// Applies the law to an `S`-over-`T` term and returns the normal
    /// `T`-over-`S` term.
    pub fn apply(&self, t: &Term) -> Result<Term, TermError> {
        check_layering(t, &|op| self.input_layer(op))?;
        let input = normalize_layered(&[self.inner.clone(), self.outer.clone()], t)?;
        let out = self.rewrite.rewrite(&input)?;
        check_layering(&out, &|op| self.input_layer(op).map(|l| 1 - l))?;
        normalize_layered(&[self.outer.clone(), self.inner.clone()], &out)
    }
}

pub fn apply_law(law: &DistributiveLawSpec, t: &Term) -> Result<Term, TermError> {
    law.apply(t)
}

/// Applies `law` to layers `depth` and `depth + 1` of a term layered by
/// `layers` (outermost first). The law's inner theory must be
/// `layers[depth]` and its outer theory `layers[depth + 1]`; afterwards the
/// two layers are swapped.
pub fn apply_at(
    law: &DistributiveLawSpec,
    layers: &[TheorySpec],
    depth: usize,
    t: &Term,
) -> Result<Term, TermError> {
    if depth == 0 {
        let (s, o) = (&layers[0], &layers[1]);
        let mut atoms = Vec::new();
        let skeleton = split_layer(t, &|op| s.has_op(op) || o.has_op(op), &mut atoms);
        substitute(&law.apply(&skeleton)?, &atoms)
    } else {
        let top = &layers[0];
        let mut atoms = Vec::new();
        let skeleton = split_layer(t, &|op| top.has_op(op), &mut atoms);
        let rewritten = atoms
            .iter()
            .map(|a| apply_at(law, &layers[1..], depth - 1, a))
            .collect::<Result<Vec<_>, _>>()?;
        substitute(&skeleton, &rewritten)
    }
}

/// A law obtained by moving one layer past several others with pairwise
/// laws, as in an iterated distributive law. `steps` are applied in order;
/// each names the depth at which its law acts on the current layering.
pub struct LayeredRewrite {
    pub input_layers: Vec<TheorySpec>,
    pub steps: Vec<(usize, DistributiveLawSpec)>,
}

impl Rewrite for LayeredRewrite {
    fn rewrite(&self, t: &Term) -> Result<Term, TermError> {
        let mut layers = self.input_layers.clone();
        let mut cur = normalize_layered(&layers, t)?;
        for (depth, law) in &self.steps {
            cur = apply_at(law, &layers, *depth, &cur)?;
            layers.swap(*depth, depth + 1);
        }
        Ok(cur)
    }
}

struct CompositeNormalizer {
    law: DistributiveLawSpec,
}

impl CompositeNormalizer {
    fn nf(&self, t: &Term) -> Result<Term, TermError> {
        let (outer, inner) = (&self.law.outer, &self.law.inner);
        match t {
            Term::Var(_) => Ok(t.clone()),
            Term::App(op, args) => {
                let args = args.iter().map(|a| self.nf(a)).collect::<Result<Vec<_>, _>>()?;
                let layers = [outer.clone(), inner.clone()];
                if outer.has_op(op) {
                    normalize_layered(&layers, &Term::App(*op, args))
                } else if inner.has_op(op) {
                    // op over T-over-S children: cut the children below their T
                    // layer, distribute, and put the S-atoms back.
                    let mut atoms = Vec::new();
                    let skeletons =
                        args.iter().map(|a| split_layer(a, &|o| outer.has_op(o), &mut atoms)).collect();
                    let swapped = self.law.apply(&Term::App(*op, skeletons))?;
                    normalize_layered(&layers, &substitute(&swapped, &atoms)?)
                } else {
                    Err(TermError::UnknownOperation { op: *op, theory: self.law.composite_name.clone() })
                }
            }
        }
    }
}

impl Normalizer for CompositeNormalizer {
    fn normalize(&self, t: &Term) -> Result<Term, TermError> {
        self.nf(t)
    }
}

/// The composite theory `TS` of a law, after checking the four axioms on the
/// default sampler.
pub fn composite_theory(law: &DistributiveLawSpec) -> Result<TheorySpec, DistLawError> {
    composite_theory_checked(law, &Sampler::default())
}

pub fn composite_theory_checked(law: &DistributiveLawSpec, sampler: &Sampler) -> Result<TheorySpec, DistLawError> {
    let report = check_law_axioms(law, sampler);
    if let Some(failure) = report.failures.first() {
        return Err(DistLawError::AxiomFailure {
            law: law.name.clone(),
            failure: Box::new(failure.clone()),
            report: Box::new(report),
        });
    }
    Ok(composite_theory_unchecked(law))
}

/// The composite theory without checking the axioms. Its normalizer: rewrite
/// to `T`-over-`S` layering bottom-up with the law, then normalize each layer.
pub fn composite_theory_unchecked(law: &DistributiveLawSpec) -> TheorySpec {
    TheorySpec::layered(
        law.composite_name.clone(),
        law.outer.clone(),
        law.inner.clone(),
        Box::new(CompositeNormalizer { law: law.clone() }),
    )
}

/// Theories `T₁, …, Tₙ` (outermost first) with a law `λᵢⱼ: TᵢTⱼ ⇒ TⱼTᵢ`
/// for every `i > j`.
#[derive(Clone, Debug)]
pub struct DistributiveSeries {
    name: String,
    theories: Vec<TheorySpec>,
    laws: Vec<((usize, usize), DistributiveLawSpec)>,
}

impl DistributiveSeries {
    /// `laws` are indexed from zero; `(i, j)` needs `i > j`, inner theory
    /// `theories[i]` and outer theory `theories[j]`, and every pair must be
    /// present.
    pub fn new(
        name: impl Into<String>,
        theories: Vec<TheorySpec>,
        laws: Vec<((usize, usize), DistributiveLawSpec)>,
    ) -> Result<DistributiveSeries, DistLawError> {
        let n = theories.len();
        for ((i, j), law) in &laws {
            if i <= j || *i >= n {
                return Err(DistLawError::Series(format!("bad index pair ({i}, {j})")));
            }
            if !law.inner.same_as(&theories[*i]) || !law.outer.same_as(&theories[*j]) {
                return Err(DistLawError::Series(format!("law {} does not match ({i}, {j})", law.name)));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if !laws.iter().any(|(p, _)| *p == (i, j)) {
                    return Err(DistLawError::Series(format!("missing law ({i}, {j})")));
                }
            }
        }
        Ok(DistributiveSeries { name: name.into(), theories, laws })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn theories(&self) -> &[TheorySpec] {
        &self.theories
    }

    pub fn law(&self, i: usize, j: usize) -> &DistributiveLawSpec {
        &self.laws.iter().find(|(p, _)| *p == (i, j)).expect("validated series").1
    }

    pub fn laws(&self) -> impl Iterator<Item = &DistributiveLawSpec> {
        self.laws.iter().map(|(_, l)| l)
    }

    /// `T₁(T₂(⋯Tₙ))`: each new outer theory is moved from the bottom of the
    /// inner composite to its top.
    pub fn composite_right(&self) -> TheorySpec {
        let n = self.theories.len();
        let mut acc = self.theories[n - 1].clone();
        let mut fine: Vec<TheorySpec> = vec![acc.clone()];
        for i in (0..n - 1).rev() {
            let mut input_layers = fine.clone();
            input_layers.push(self.theories[i].clone());
            let last = fine.len();
            let steps = (0..last)
                .rev()
                .map(|d| (d, self.law(i + 1 + d, i).clone()))
                .collect();
            let law = DistributiveLawSpec::new(
                format!("{}-right-{}", self.name, i + 1),
                format!("{}:right:{}", self.name, i + 1),
                acc.clone(),
                self.theories[i].clone(),
                Arc::new(LayeredRewrite { input_layers, steps }),
            );
            acc = composite_theory_unchecked(&law);
            fine.insert(0, self.theories[i].clone());
        }
        acc
    }

    /// `((T₁T₂)⋯)Tₙ`: each new inner theory is moved from the top of the
    /// outer composite to its bottom.
    pub fn composite_left(&self) -> TheorySpec {
        let n = self.theories.len();
        let mut acc = self.theories[0].clone();
        let mut fine: Vec<TheorySpec> = vec![acc.clone()];
        for j in 1..n {
            let mut input_layers = vec![self.theories[j].clone()];
            input_layers.extend(fine.iter().cloned());
            let steps = (0..fine.len()).map(|d| (d, self.law(j, d).clone())).collect();
            let law = DistributiveLawSpec::new(
                format!("{}-left-{}", self.name, j + 1),
                format!("{}:left:{}", self.name, j + 1),
                self.theories[j].clone(),
                acc.clone(),
                Arc::new(LayeredRewrite { input_layers, steps }),
            );
            acc = composite_theory_unchecked(&law);
            fine.push(self.theories[j].clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_raw, print_term, Alphabet};
    use crate::term::ops::*;

    fn v(i: usize) -> Term {
        Term::Var(i)
    }

    #[test]
    fn ring_law_expands_product_of_sums() {
        let law = ring_law();
        let t = Term::binary(MUL, Term::binary(ADD, v(0), v(1)), Term::binary(ADD, v(2), v(3)));
        assert_eq!(print_term(&law.apply(&t).unwrap()), "ac+bc+ad+bd");
    }

    #[test]
    fn ring_law_signs() {
        let law = ring_law();
        let t = Term::binary(MUL, Term::unary(NEG, v(0)), v(1));
        assert_eq!(print_term(&law.apply(&t).unwrap()), "-ab");
    }

    #[test]
    fn pure_outer_term_is_unchanged() {
        let law = ring_law();
        let t = Term::binary(ADD, v(1), Term::unary(NEG, v(0)));
        assert_eq!(print_term(&law.apply(&t).unwrap()), "-a+b");
    }

    #[test]
    fn layering_violation_rejected() {
        let law = ring_law();
        let t = Term::binary(ADD, Term::binary(MUL, v(0), Term::binary(ADD, v(0), v(1))), v(1));
        assert!(matches!(law.apply(&t), Err(TermError::Layering(_))));
    }

    #[test]
    fn pointed_semigroup_deletes_points() {
        let law = pointed_semigroup_law();
        let t = Term::binary(SEMI_MUL, Term::constant(POINT), Term::binary(SEMI_MUL, v(1), Term::constant(POINT)));
        assert_eq!(law.apply(&t).unwrap(), v(1));
        let t = Term::binary(SEMI_MUL, Term::constant(POINT), Term::constant(POINT));
        assert_eq!(law.apply(&t).unwrap(), Term::constant(POINT));
    }

    #[test]
    fn ring_composite_normal_forms() {
        let ring = ring_theory();
        let t = parse_raw("(a-b)(a+b)", &ring, 2, Alphabet::Abc).unwrap();
        assert_eq!(print_term(&ring.normalize(&t).unwrap()), "aa-ba+ab-bb");
        let t = parse_raw("(1+1)a - a - a", &ring, 1, Alphabet::Abc).unwrap();
        assert_eq!(print_term(&ring.normalize(&t).unwrap()), "0");
    }

    #[test]
    fn monoid_composite_has_empty_word() {
        let th = composite_monoid_theory();
        let t = parse_raw("1a1", &th, 1, Alphabet::Abc).unwrap();
        assert_eq!(th.normalize(&t).unwrap(), v(0));
        let t = parse_raw("1*1", &th, 0, Alphabet::Abc);
        assert_eq!(th.normalize(&t.unwrap()).unwrap(), Term::constant(POINT));
    }

    #[test]
    fn identity_laws_give_the_other_theory() {
        let law = identity_outer_law(TheorySpec::monoid());
        let th = composite_theory(&law).unwrap();
        let t = Term::binary(MUL, Term::binary(MUL, v(0), v(1)), Term::constant(UNIT));
        assert_eq!(th.normalize(&t).unwrap(), TheorySpec::monoid().normalize(&t).unwrap());
    }

    #[test]
    fn mutant_is_rejected_as_composite() {
        assert!(matches!(composite_theory(&mutant_ring_law()), Err(DistLawError::AxiomFailure { .. })));
    }

    #[test]
    fn series_validation() {
        let s = ring3_series();
        assert_eq!(s.theories().len(), 3);
        let bad = DistributiveSeries::new("bad", s.theories().to_vec(), vec![]);
        assert!(bad.is_err());
    }
}
