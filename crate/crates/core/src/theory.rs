//! Lawvere theories presented by a term theory.
//!
//! A morphism `k → m` is an `m`-tuple of normal terms over `k` variables.
//! `compose(g, f)` substitutes the components of `f` into those of `g` and
//! normalizes, so the projections of F^op are tuples of variables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset;
use crate::report::{Failure, Report};
use crate::sampler::{SampleRng, Sampler};
use crate::syntax::{self, Alphabet, ParseError};
use crate::term::{enumerate_terms, substitute, Term, TermError, TheorySpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("cannot compose: source has {found} objects' worth of variables, expected {expected}")]
    ObjectMismatch { expected: usize, found: usize },
    #[error("component {index} ({term}) is not in normal form")]
    NotNormal { index: usize, term: String },
    #[error("value {value} of a function into [{target}] is out of range")]
    FunctionRange { value: usize, target: usize },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A function `[source] → [target]`; the morphisms of F, and (reversed) of F^op.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseFunction {
    pub source: usize,
    pub target: usize,
    pub table: Vec<usize>,
}

impl BaseFunction {
    pub fn new(target: usize, table: Vec<usize>) -> Result<BaseFunction, TheoryError> {
        if let Some(&value) = table.iter().find(|&&v| v >= target) {
            return Err(TheoryError::FunctionRange { value, target });
        }
        Ok(BaseFunction { source: table.len(), target, table })
    }

    pub fn identity(n: usize) -> BaseFunction {
        BaseFunction { source: n, target: n, table: finset::identity(n) }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BaseFunction) -> Result<BaseFunction, TheoryError> {
        if first.target != self.source {
            return Err(TheoryError::ObjectMismatch { expected: self.source, found: first.target });
        }
        Ok(BaseFunction {
            source: first.source,
            target: self.target,
            table: finset::compose(&self.table, &first.table),
        })
    }

    /// Every function `[source] → [target]`.
    pub fn all(source: usize, target: usize) -> impl Iterator<Item = BaseFunction> {
        finset::functions(source, target)
            .into_iter()
            .map(move |table| BaseFunction { source, target, table })
    }
}

/// A morphism `source → target` of a Lawvere theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoryMorphism {
    pub source: usize,
    pub target: usize,
    pub components: Vec<Term>,
}

/// The JSON shape of a morphism: components are printed terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: usize,
    pub target: usize,
    pub components: Vec<String>,
}

impl TheoryMorphism {
    /// No checks; see [`LawvereTheory::morphism`] for the validating constructor.
    pub fn from_parts(source: usize, components: Vec<Term>) -> TheoryMorphism {
        TheoryMorphism { source, target: components.len(), components }
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            source: self.source,
            target: self.target,
            components: self.components.iter().map(syntax::print_term).collect(),
        }
    }

    pub fn from_json(json: &MorphismJson, theory: &LawvereTheory) -> Result<TheoryMorphism, TheoryError> {
        let comps = json
            .components
            .iter()
            .map(|s| syntax::parse_term(s, theory.spec(), json.source))
            .collect::<Result<Vec<_>, _>>()?;
        if comps.len() != json.target {
            return Err(TheoryError::ObjectMismatch { expected: json.target, found: comps.len() });
        }
        theory.normal_morphism(json.source, comps)
    }

    pub fn display(&self, alphabet: Alphabet) -> String {
        syntax::print_tuple(&self.components, alphabet)
    }
}

impl std::fmt::Display for TheoryMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} -> {}", self.display(Alphabet::Abc), self.source, self.target)
    }
}

/// The Lawvere theory of a term theory. Hom-sets are never materialized;
/// they are described by the normal forms of the underlying theory.
#[derive(Clone, Debug)]
pub struct LawvereTheory {
    spec: TheorySpec,
}

impl LawvereTheory {
    pub fn new(spec: TheorySpec) -> LawvereTheory {
        LawvereTheory { spec }
    }

    pub fn spec(&self) -> &TheorySpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        self.spec.name()
    }

    /// Normalizes the components and checks they live over `source` variables.
    pub fn morphism(&self, source: usize, components: Vec<Term>) -> Result<TheoryMorphism, TheoryError> {
        let comps = components
            .iter()
            .map(|t| {
                t.check(source)?;
                self.spec.normalize(t)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TheoryMorphism::from_parts(source, comps))
    }

    /// Like [`morphism`](Self::morphism) but rejects components that are not already normal.
    pub fn normal_morphism(&self, source: usize, components: Vec<Term>) -> Result<TheoryMorphism, TheoryError> {
        for (index, t) in components.iter().enumerate() {
            t.check(source)?;
            if self.spec.normalize(t)? != *t {
                return Err(TheoryError::NotNormal { index, term: syntax::print_term(t) });
            }
        }
        Ok(TheoryMorphism::from_parts(source, components))
    }

    pub fn identity(&self, k: usize) -> TheoryMorphism {
        TheoryMorphism::from_parts(k, Term::variables(k))
    }

    /// `g ∘ f`: component `i` is the normal form of `g[i]` with `f` substituted.
    pub fn compose(&self, g: &TheoryMorphism, f: &TheoryMorphism) -> Result<TheoryMorphism, TheoryError> {
        if f.target != g.source {
            return Err(TheoryError::ObjectMismatch { expected: g.source, found: f.target });
        }
        let comps = g
            .components
            .iter()
            .map(|t| self.spec.normalize(&substitute(t, &f.components)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TheoryMorphism::from_parts(f.source, comps))
    }

    /// The image of `alpha: [m] → [k]` under F^op → L: the morphism `k → m`
    /// whose `i`-th component is the variable `alpha(i)`.
    pub fn basic(&self, alpha: &BaseFunction) -> TheoryMorphism {
        basic_morphism(alpha)
    }

    /// The product projections `k+m → k` and `k+m → m`.
    pub fn projections(&self, k: usize, m: usize) -> (TheoryMorphism, TheoryMorphism) {
        projections(k, m)
    }

    /// Normal forms `k → 1` of size at most `size_bound`.
    pub fn hom_terms(&self, k: usize, size_bound: usize) -> Result<Vec<Term>, TermError> {
        enumerate_terms(&self.spec, k, size_bound)
    }

    /// A sampled morphism `source → target`; `None` if no term over `source`
    /// variables exists.
    pub fn sample(
        &self,
        rng: &mut SampleRng,
        source: usize,
        target: usize,
        sampler: &Sampler,
    ) -> Option<TheoryMorphism> {
        let comps = (0..target)
            .map(|_| sampler.term(rng, self.spec.signature(), source))
            .collect::<Option<Vec<_>>>()?;
        self.morphism(source, comps).ok()
    }
}

pub fn identity_morphism(k: usize) -> TheoryMorphism {
    TheoryMorphism::from_parts(k, Term::variables(k))
}

pub fn basic_morphism(alpha: &BaseFunction) -> TheoryMorphism {
    TheoryMorphism::from_parts(alpha.target, alpha.table.iter().map(|&i| Term::Var(i)).collect())
}

fn projections(k: usize, m: usize) -> (TheoryMorphism, TheoryMorphism) {
    let p1 = TheoryMorphism::from_parts(k + m, (0..k).map(Term::Var).collect());
    let p2 = TheoryMorphism::from_parts(k + m, (k..k + m).map(Term::Var).collect());
    (p1, p2)
}

/// A category whose objects are natural numbers, tested for `k + m` being a
/// product of `k` and `m` with the tuple projections.
pub trait ProductCandidate: Sync {
    fn name(&self) -> String;
    /// Whether `f` is a morphism of the category.
    fn contains(&self, f: &TheoryMorphism) -> bool;
    fn compose(&self, g: &TheoryMorphism, f: &TheoryMorphism) -> Result<TheoryMorphism, TheoryError>;
    fn sample(&self, rng: &mut SampleRng, source: usize, target: usize, sampler: &Sampler)
        -> Option<TheoryMorphism>;
    /// The full hom-set when it is finite and small, for exhaustive checking.
    fn hom(&self, _source: usize, _target: usize) -> Option<Vec<TheoryMorphism>> {
        None
    }
}

/// Hom-sets larger than this are sampled rather than enumerated.
const EXHAUSTIVE_LIMIT: usize = 4096;

fn finite_hom(spec: &TheorySpec, source: usize, target: usize) -> Option<Vec<TheoryMorphism>> {
    if spec.signature().iter().any(|op| op.arity > 0) {
        return None;
    }
    let mut terms: Vec<Term> = (0..source).map(Term::Var).collect();
    terms.extend(spec.signature().iter().map(|&op| Term::constant(op)));
    if finset::count_functions(target, terms.len()) > EXHAUSTIVE_LIMIT {
        return None;
    }
    Some(
        finset::functions(target, terms.len())
            .into_iter()
            .map(|choice| {
                TheoryMorphism::from_parts(source, choice.into_iter().map(|i| terms[i].clone()).collect())
            })
            .collect(),
    )
}

impl ProductCandidate for LawvereTheory {
    fn name(&self) -> String {
        self.spec.name().to_string()
    }

    fn contains(&self, f: &TheoryMorphism) -> bool {
        f.components.len() == f.target
            && f.components.iter().all(|t| t.check(f.source).is_ok() && self.spec.is_normal(t))
    }

    fn compose(&self, g: &TheoryMorphism, f: &TheoryMorphism) -> Result<TheoryMorphism, TheoryError> {
        LawvereTheory::compose(self, g, f)
    }

    fn sample(&self, rng: &mut SampleRng, source: usize, target: usize, sampler: &Sampler)
        -> Option<TheoryMorphism> {
        LawvereTheory::sample(self, rng, source, target, sampler)
    }

    fn hom(&self, source: usize, target: usize) -> Option<Vec<TheoryMorphism>> {
        finite_hom(&self.spec, source, target)
    }
}

/// The subcategory of a theory in which no variable is used twice across a
/// tuple: diagonals are gone, so `k + m` is only a tensor product.
#[derive(Clone, Debug)]
pub struct AffineTheory(pub LawvereTheory);

fn is_affine(f: &TheoryMorphism) -> bool {
    let vars: Vec<usize> = f.components.iter().flat_map(Term::var_sequence).collect();
    finset::is_injective(&vars)
}

impl ProductCandidate for AffineTheory {
    fn name(&self) -> String {
        format!("affine {}", self.0.name())
    }

    fn contains(&self, f: &TheoryMorphism) -> bool {
        self.0.contains(f) && is_affine(f)
    }

    fn compose(&self, g: &TheoryMorphism, f: &TheoryMorphism) -> Result<TheoryMorphism, TheoryError> {
        self.0.compose(g, f)
    }

    fn sample(&self, rng: &mut SampleRng, source: usize, target: usize, sampler: &Sampler)
        -> Option<TheoryMorphism> {
        (0..32)
            .filter_map(|_| self.0.sample(rng, source, target, sampler))
            .find(is_affine)
    }

    fn hom(&self, source: usize, target: usize) -> Option<Vec<TheoryMorphism>> {
        Some(self.0.hom(source, target)?.into_iter().filter(is_affine).collect())
    }
}

/// Checks that `k + m` with the tuple projections is a product of `k` and `m`
/// for test objects `p = 0..=sampler.max_arity`.
///
/// For every pair `f: p → k`, `g: p → m` the concatenated tuple `⟨f, g⟩` must
/// be a morphism (`pairing`), satisfy both projection equations, and be the
/// only morphism doing so (`uniqueness`; exhaustive when the hom-set is small,
/// otherwise against sampled competitors). Every `h: p → k+m` must also equal
/// `⟨π₁h, π₂h⟩` (`surjective-pairing`).
pub fn check_product_structure(
    theory: &dyn ProductCandidate,
    k: usize,
    m: usize,
    sampler: &Sampler,
) -> Report {
    let mut report = Report::new(format!("product structure of {} at {k} x {m}", theory.name()))
        .with_bound("k", k)
        .with_bound("m", m)
        .with_bound("maxArity", sampler.max_arity)
        .with_seed(sampler.seed);
    for check in ["pairing", "projection-1", "projection-2", "uniqueness", "surjective-pairing"] {
        report.declare(check);
    }
    let (p1, p2) = projections(k, m);
    let per_object = sampler.samples.div_ceil(sampler.max_arity + 1);
    let mut rng = sampler.rng_for(1);

    for p in 0..=sampler.max_arity {
        let exhaustive = match (theory.hom(p, k), theory.hom(p, m), theory.hom(p, k + m)) {
            (Some(fs), Some(gs), Some(hs)) if fs.len() * gs.len() <= EXHAUSTIVE_LIMIT => Some((fs, gs, hs)),
            _ => None,
        };
        let (pairs, competitors): (Vec<(TheoryMorphism, TheoryMorphism)>, Vec<TheoryMorphism>) =
            match exhaustive {
                Some((fs, gs, hs)) => {
                    let pairs = fs.iter().flat_map(|f| gs.iter().map(move |g| (f.clone(), g.clone()))).collect();
                    (pairs, hs)
                }
                None => {
                    let mut pairs = Vec::new();
                    let mut comps = Vec::new();
                    for _ in 0..per_object {
                        let f = theory.sample(&mut rng, p, k, sampler);
                        let g = theory.sample(&mut rng, p, m, sampler);
                        if let (Some(f), Some(g)) = (f, g) {
                            pairs.push((f, g));
                        }
                        if let Some(h) = theory.sample(&mut rng, p, k + m, sampler) {
                            comps.push(h);
                        }
                    }
                    (pairs, comps)
                }
            };

        // Competitors grouped by their two projections.
        let mut by_projections: HashMap<(TheoryMorphism, TheoryMorphism), Vec<TheoryMorphism>> = HashMap::new();
        for h in &competitors {
            let input = h.display(Alphabet::Abc);
            match (theory.compose(&p1, h), theory.compose(&p2, h)) {
                (Ok(a), Ok(b)) => {
                    let mut joined = a.components.clone();
                    joined.extend(b.components.iter().cloned());
                    report.compare("surjective-pairing", &input, &syntax::print_tuple(&joined, Alphabet::Abc), &input);
                    by_projections.entry((a, b)).or_default().push(h.clone());
                }
                (Err(e), _) | (_, Err(e)) => {
                    report.fail(Failure::new("surjective-pairing", input, e.to_string(), "-"))
                }
            }
        }

        for (f, g) in pairs {
            let input = format!("f = {}, g = {}", f.display(Alphabet::Abc), g.display(Alphabet::Abc));
            let mut joined = f.components.clone();
            joined.extend(g.components.iter().cloned());
            let h = TheoryMorphism::from_parts(p, joined);
            if !theory.contains(&h) {
                report.fail(Failure::new(
                    "pairing",
                    input,
                    format!("{} is not a morphism", h.display(Alphabet::Abc)),
                    "a pairing",
                ));
                continue;
            }
            report.pass("pairing");
            let show = |r: Result<TheoryMorphism, TheoryError>| match r {
                Ok(x) => x.display(Alphabet::Abc),
                Err(e) => e.to_string(),
            };
            report.compare("projection-1", &input, &show(theory.compose(&p1, &h)), &f.display(Alphabet::Abc));
            report.compare("projection-2", &input, &show(theory.compose(&p2, &h)), &g.display(Alphabet::Abc));
            let others: Vec<&TheoryMorphism> = by_projections
                .get(&(f.clone(), g.clone()))
                .map(|v| v.iter().filter(|c| **c != h).collect())
                .unwrap_or_default();
            match others.first() {
                None => report.pass("uniqueness"),
                Some(other) => report.fail(Failure::new(
                    "uniqueness",
                    input,
                    h.display(Alphabet::Abc),
                    other.display(Alphabet::Abc),
                )),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn monoid() -> LawvereTheory {
        LawvereTheory::new(TheorySpec::monoid())
    }

    fn m(th: &LawvereTheory, k: usize, comps: &[&str]) -> TheoryMorphism {
        let terms = comps.iter().map(|s| parse_term(s, th.spec(), k).unwrap()).collect();
        th.morphism(k, terms).unwrap()
    }

    #[test]
    fn identities() {
        let th = monoid();
        assert!(th.identity(0).components.is_empty());
        assert_eq!(th.identity(1).components, vec![Term::Var(0)]);
        assert_eq!(th.identity(3).components, Term::variables(3));
    }

    #[test]
    fn composite_of_word_tuples() {
        let th = monoid();
        let g = m(&th, 2, &["aab"]);
        let f = m(&th, 3, &["abc", "abbcc"]);
        let gf = th.compose(&g, &f).unwrap();
        assert_eq!(gf.target, 1);
        assert_eq!(gf.source, 3);
        assert_eq!(syntax::print_term(&gf.components[0]), "abcabcabbcc");
    }

    #[test]
    fn diagonal_then_sum() {
        let th = LawvereTheory::new(TheorySpec::abelian_group());
        let g = m(&th, 2, &["a+b"]);
        let diag = th.basic(&BaseFunction::new(1, vec![0, 0]).unwrap());
        let r = th.compose(&g, &diag).unwrap();
        assert_eq!(syntax::print_term(&r.components[0]), "a+a");
    }

    #[test]
    fn composition_mismatch() {
        let th = monoid();
        let g = m(&th, 2, &["ab"]);
        let f = m(&th, 1, &["a"]);
        assert_eq!(th.compose(&g, &f), Err(TheoryError::ObjectMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn basic_morphisms() {
        let th = monoid();
        let proj = th.basic(&BaseFunction::new(3, vec![0]).unwrap());
        assert_eq!((proj.source, proj.target), (3, 1));
        assert_eq!(proj.components, vec![Term::Var(0)]);
        let diag = th.basic(&BaseFunction::new(1, vec![0, 0, 0]).unwrap());
        assert_eq!((diag.source, diag.target), (1, 3));
        assert_eq!(diag.components, vec![Term::Var(0); 3]);
        assert_eq!(th.basic(&BaseFunction::identity(2)), th.identity(2));
        assert!(BaseFunction::new(2, vec![2]).is_err());
    }

    #[test]
    fn basic_is_contravariant_functor() {
        let th = monoid();
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=2 {
                    for beta in BaseFunction::all(a, b) {
                        for alpha in BaseFunction::all(b, c) {
                            let lhs = th.basic(&alpha.after(&beta).unwrap());
                            let rhs = th.compose(&th.basic(&beta), &th.basic(&alpha)).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_op_has_products_exhaustively() {
        let th = LawvereTheory::new(TheorySpec::identity());
        let sampler = Sampler { max_arity: 3, ..Sampler::default() };
        for k in 0..=3 {
            for m in 0..=3 {
                let r = check_product_structure(&th, k, m, &sampler);
                assert!(r.passed(), "{r}");
                assert!(r.check_count("uniqueness") > 0 || k + m == 0 || r.check_count("pairing") == 0);
            }
        }
    }

    #[test]
    fn affine_variant_loses_pairing() {
        let th = AffineTheory(LawvereTheory::new(TheorySpec::identity()));
        let sampler = Sampler { max_arity: 2, ..Sampler::default() };
        let r = check_product_structure(&th, 1, 1, &sampler);
        assert!(!r.passed());
        let f = r.failures_of("pairing").next().expect("pairing failure");
        assert_eq!(f.input, "f = {a}, g = {a}");
    }

    #[test]
    fn json_shape() {
        let th = monoid();
        let f = m(&th, 3, &["abc", "c"]);
        let j = serde_json::to_value(f.to_json()).unwrap();
        assert_eq!(j, serde_json::json!({"source": 3, "target": 2, "components": ["abc", "c"]}));
        let back = TheoryMorphism::from_json(&f.to_json(), &th).unwrap();
        assert_eq!(back, f);
    }
}
