//! Factorizations of composite-theory morphisms as an inner-theory part
//! followed by an outer-theory part, zigzags of base functions between them,
//! and strict factorization systems on finite categories.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::finset;
use crate::profcat::FiniteCategory;
use crate::report::{Failure, Report};
use crate::syntax::{print_term_with, print_tuple, Alphabet};
use crate::term::{enumerate_terms, split_layer, substitute, Term, TermError, TheorySpec};
use crate::theory::{BaseFunction, LawvereTheory, TheoryError, TheoryMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("theory {0} is not a composite of two layers")]
    NotComposite(String),
    #[error("component {index} ({term}) is not a normal form of {theory}")]
    NotNormal { index: usize, term: String, theory: String },
    #[error("{part} component {index} ({term}) is not a term of {theory}")]
    Impure { part: &'static str, index: usize, term: String, theory: String },
    #[error("left part ends at {left}, right part starts at {right}")]
    Middle { left: usize, right: usize },
    #[error("factorizations of different shapes: {0}")]
    Endpoints(String),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Term(#[from] TermError),
}

fn layers(theory: &TheorySpec) -> Result<(&TheorySpec, &TheorySpec), FactorError> {
    theory.layers().ok_or_else(|| FactorError::NotComposite(theory.name().to_string()))
}

/// `k → middle → m` (left, then right), with `left` made of inner-theory terms and
/// `right` of outer-theory terms, both in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorizationPair {
    pub middle: usize,
    pub left: TheoryMorphism,
    pub right: TheoryMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationJson {
    pub middle: usize,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl FactorizationPair {
    /// Checks purity of both parts and normalizes each in its own theory.
    pub fn new(theory: &TheorySpec, left: TheoryMorphism, right: TheoryMorphism) -> Result<Self, FactorError> {
        let (outer, inner) = layers(theory)?;
        if left.target != right.source {
            return Err(FactorError::Middle { left: left.target, right: right.source });
        }
        let part = |name: &'static str, f: &TheoryMorphism, spec: &TheorySpec| {
            let comps = f
                .components
                .iter()
                .enumerate()
                .map(|(index, t)| {
                    t.check(f.source)?;
                    spec.check_signature(t).map_err(|_| FactorError::Impure {
                        part: name,
                        index,
                        term: print_term_with(t, Alphabet::Abc),
                        theory: spec.name().to_string(),
                    })?;
                    Ok(spec.normalize(t)?)
                })
                .collect::<Result<Vec<_>, FactorError>>()?;
            Ok::<_, FactorError>(TheoryMorphism::from_parts(f.source, comps))
        };
        Ok(FactorizationPair {
            middle: left.target,
            left: part("left", &left, inner)?,
            right: part("right", &right, outer)?,
        })
    }

    /// From component lists; the source of `left` is `source`.
    pub fn from_terms(theory: &TheorySpec, source: usize, left: Vec<Term>, right: Vec<Term>) -> Result<Self, FactorError> {
        let middle = left.len();
        Self::new(
            theory,
            TheoryMorphism::from_parts(source, left),
            TheoryMorphism::from_parts(middle, right),
        )
    }

    pub fn source(&self) -> usize {
        self.left.source
    }

    pub fn target(&self) -> usize {
        self.right.target
    }

    pub fn to_json(&self) -> FactorizationJson {
        FactorizationJson {
            middle: self.middle,
            left: self.left.components.iter().map(|t| print_term_with(t, Alphabet::Abc)).collect(),
            right: self.right.components.iter().map(|t| print_term_with(t, Alphabet::Xyz)).collect(),
        }
    }
}

impl std::fmt::Display for FactorizationPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{};{}",
            print_tuple(&self.left.components, Alphabet::Abc),
            print_tuple(&self.right.components, Alphabet::Xyz)
        )
    }
}

/// Cuts each component of `f` at its outer layer. The inner-layer leaves,
/// shared across components and numbered by first occurrence, form the left
/// part; the cut skeletons form the right part.
pub fn factorize(theory: &TheorySpec, f: &TheoryMorphism) -> Result<FactorizationPair, FactorError> {
    let (outer, inner) = layers(theory)?;
    let mut atoms = Vec::new();
    let mut skeletons = Vec::with_capacity(f.components.len());
    for (index, t) in f.components.iter().enumerate() {
        t.check(f.source)?;
        if theory.normalize(t)? != *t {
            return Err(FactorError::NotNormal {
                index,
                term: print_term_with(t, Alphabet::Abc),
                theory: theory.name().to_string(),
            });
        }
        skeletons.push(split_layer(t, &|op| outer.has_op(op), &mut atoms));
    }
    let right = skeletons.iter().map(|s| outer.normalize(s)).collect::<Result<Vec<_>, _>>()?;
    let left = atoms.iter().map(|a| inner.normalize(a)).collect::<Result<Vec<_>, _>>()?;
    Ok(FactorizationPair {
        middle: left.len(),
        left: TheoryMorphism::from_parts(f.source, left),
        right: TheoryMorphism::from_parts(atoms.len(), right),
    })
}

/// `right ∘ left` in the composite theory.
pub fn recompose(theory: &TheorySpec, p: &FactorizationPair) -> Result<TheoryMorphism, FactorError> {
    Ok(LawvereTheory::new(theory.clone()).compose(&p.right, &p.left)?)
}

/// The canonical representative of the zigzag class of `p`: unused middle
/// coordinates dropped, duplicates merged, coordinates ordered by first use
/// in the recomposed normal form.
pub fn canonicalize(theory: &TheorySpec, p: &FactorizationPair) -> Result<FactorizationPair, FactorError> {
    factorize(theory, &recompose(theory, p)?)
}

/// One step of a zigzag between consecutive pairs `x` and `y`. For a forward
/// step `alpha: [y.middle] → [x.middle]` is a morphism `x.middle → y.middle`
/// of F^op with `y.left = alpha ∘ x.left` and `y.right ∘ alpha = x.right`;
/// a backward step is the same with `x` and `y` exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagStep {
    pub alpha: BaseFunction,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagWitness {
    /// `pairs[0]` and the last pair are the two ends.
    pub pairs: Vec<FactorizationPair>,
    pub steps: Vec<ZigzagStep>,
}

impl ZigzagWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks every triangle, the left ones in the inner theory and the right
    /// ones in the outer theory.
    pub fn validate(&self, theory: &TheorySpec) -> Result<(), String> {
        if self.pairs.len() != self.steps.len() + 1 {
            return Err("a witness needs one more pair than steps".into());
        }
        let (outer, inner) = layers(theory).map_err(|e| e.to_string())?;
        for (i, step) in self.steps.iter().enumerate() {
            let (x, y) = if step.forward {
                (&self.pairs[i], &self.pairs[i + 1])
            } else {
                (&self.pairs[i + 1], &self.pairs[i])
            };
            if !step_holds(inner, outer, x, y, &step.alpha.table).map_err(|e| e.to_string())? {
                return Err(format!("step {i} does not commute: {x} to {y} along {:?}", step.alpha.table));
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> ZigzagWitness {
        ZigzagWitness {
            pairs: self.pairs.iter().rev().cloned().collect(),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| ZigzagStep { alpha: s.alpha.clone(), forward: !s.forward })
                .collect(),
        }
    }
}

/// Whether `alpha: [y.middle] → [x.middle]` is a forward step from `x` to `y`.
fn step_holds(
    inner: &TheorySpec,
    outer: &TheorySpec,
    x: &FactorizationPair,
    y: &FactorizationPair,
    alpha: &[usize],
) -> Result<bool, TermError> {
    if alpha.len() != y.middle || alpha.iter().any(|&a| a >= x.middle) || x.source() != y.source() {
        return Ok(false);
    }
    for (i, &a) in alpha.iter().enumerate() {
        if inner.normalize(&x.left.components[a])? != y.left.components[i] {
            return Ok(false);
        }
    }
    let vars: Vec<Term> = alpha.iter().map(|&a| Term::Var(a)).collect();
    for (r, s) in y.right.components.iter().zip(&x.right.components) {
        if outer.normalize(&substitute(r, &vars)?)? != *s {
            return Ok(false);
        }
    }
    Ok(y.right.target == x.right.target)
}

/// Functions `[choices.len()] → …` picking one entry of each list.
fn choices(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let radix: Vec<usize> = lists.iter().map(Vec::len).collect();
    let count: usize = radix.iter().product();
    (0..count)
        .map(|k| finset::decode(k, &radix).iter().zip(lists).map(|(&d, l)| l[d]).collect())
        .collect()
}

/// A forward step `x → y`, if one exists. Exhaustive over the functions
/// compatible with the left parts.
fn forward_step(theory: &TheorySpec, x: &FactorizationPair, y: &FactorizationPair) -> Result<Option<BaseFunction>, FactorError> {
    let (outer, inner) = layers(theory)?;
    if x.source() != y.source() || x.target() != y.target() {
        return Ok(None);
    }
    let lists: Vec<Vec<usize>> = y
        .left
        .components
        .iter()
        .map(|t| (0..x.middle).filter(|&j| x.left.components[j] == *t).collect())
        .collect();
    for alpha in choices(&lists) {
        if step_holds(inner, outer, x, y, &alpha)? {
            return Ok(Some(BaseFunction { source: y.middle, target: x.middle, table: alpha }));
        }
    }
    Ok(None)
}

/// A single zigzag step between `p` and `q` in either direction.
pub fn direct_step(theory: &TheorySpec, p: &FactorizationPair, q: &FactorizationPair) -> Result<Option<ZigzagStep>, FactorError> {
    if let Some(alpha) = forward_step(theory, p, q)? {
        return Ok(Some(ZigzagStep { alpha, forward: true }));
    }
    Ok(forward_step(theory, q, p)?.map(|alpha| ZigzagStep { alpha, forward: false }))
}

#[derive(Clone, Debug)]
pub struct ZigzagDecision {
    pub equivalent: bool,
    pub witness: Option<ZigzagWitness>,
}

/// Nodes visited by one witness search before it gives up.
pub const WITNESS_NODE_LIMIT: usize = 4000;
/// Neighbours generated from one node per middle size.
const NEIGHBOUR_LIMIT: usize = 2000;

/// Decides equivalence by comparing canonical forms. When the two are
/// equivalent and `bound > 0`, also looks breadth-first for a witness of at
/// most `bound` steps through middles of size at most `max(middles) + bound`.
pub fn zigzag_equivalent(
    theory: &TheorySpec,
    p: &FactorizationPair,
    q: &FactorizationPair,
    bound: usize,
) -> Result<ZigzagDecision, FactorError> {
    if p.source() != q.source() || p.target() != q.target() {
        return Err(FactorError::Endpoints(format!(
            "{} -> {} against {} -> {}",
            p.source(),
            p.target(),
            q.source(),
            q.target()
        )));
    }
    let equivalent = canonicalize(theory, p)? == canonicalize(theory, q)?;
    let witness = if equivalent && p == q {
        Some(ZigzagWitness { pairs: vec![p.clone()], steps: Vec::new() })
    } else if equivalent && bound > 0 {
        search_witness(theory, p, q, bound)?
    } else {
        None
    };
    Ok(ZigzagDecision { equivalent, witness })
}

/// Breadth-first search for a witness from `p` to `q` of at most `bound` steps.
pub fn search_witness(
    theory: &TheorySpec,
    p: &FactorizationPair,
    q: &FactorizationPair,
    bound: usize,
) -> Result<Option<ZigzagWitness>, FactorError> {
    if p == q {
        return Ok(Some(ZigzagWitness { pairs: vec![p.clone()], steps: Vec::new() }));
    }
    let cap = p.middle.max(q.middle) + bound;
    let mut pool: Vec<Term> = Vec::new();
    for t in p.left.components.iter().chain(&q.left.components) {
        if !pool.contains(t) {
            pool.push(t.clone());
        }
    }
    // node -> (parent, step into node)
    let mut parent: HashMap<FactorizationPair, Option<(FactorizationPair, ZigzagStep)>> = HashMap::new();
    parent.insert(p.clone(), None);
    let mut queue = VecDeque::from([(p.clone(), 0usize)]);
    let finish = |parent: &HashMap<_, Option<(FactorizationPair, ZigzagStep)>>, end: &FactorizationPair, last: ZigzagStep| {
        let mut pairs = vec![q.clone(), end.clone()];
        let mut steps = vec![last];
        let mut cur = end.clone();
        while let Some(Some((prev, step))) = parent.get(&cur) {
            pairs.push(prev.clone());
            steps.push(step.clone());
            cur = prev.clone();
        }
        pairs.reverse();
        steps.reverse();
        ZigzagWitness { pairs, steps }
    };
    while let Some((node, depth)) = queue.pop_front() {
        if let Some(step) = direct_step(theory, &node, q)? {
            return Ok(Some(finish(&parent, &node, step)));
        }
        if depth + 1 >= bound {
            continue;
        }
        for (next, step) in neighbours(theory, &node, cap, &pool)? {
            if parent.len() >= WITNESS_NODE_LIMIT {
                return Ok(None);
            }
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((node.clone(), step)));
            queue.push_back((next, depth + 1));
        }
    }
    Ok(None)
}

/// Pairs one step away from `x`: forward steps first, then backward ones,
/// each by increasing middle size.
fn neighbours(
    theory: &TheorySpec,
    x: &FactorizationPair,
    cap: usize,
    pool: &[Term],
) -> Result<Vec<(FactorizationPair, ZigzagStep)>, FactorError> {
    let (outer, _) = layers(theory)?;
    let mut out = Vec::new();
    let a = x.middle;
    // forward: left along alpha, right split over the preimages of alpha
    for b in 0..=cap {
        let mut produced = 0;
        for alpha in finset::functions(b, a) {
            let left: Vec<Term> = alpha.iter().map(|&i| x.left.components[i].clone()).collect();
            let preimages: Vec<Vec<usize>> = (0..a).map(|v| (0..b).filter(|&i| alpha[i] == v).collect()).collect();
            for right in split_occurrences(outer, &x.right.components, &preimages)? {
                let y = FactorizationPair {
                    middle: b,
                    left: TheoryMorphism::from_parts(x.source(), left.clone()),
                    right: TheoryMorphism::from_parts(b, right),
                };
                out.push((y, ZigzagStep { alpha: BaseFunction { source: b, target: a, table: alpha.clone() }, forward: true }));
                produced += 1;
            }
            if produced >= NEIGHBOUR_LIMIT {
                break;
            }
        }
    }
    // backward: a forward step y → x along alpha: [a] → [c]
    for c in 0..=cap {
        let mut produced = 0;
        for alpha in finset::functions(a, c) {
            let mut fixed: Vec<Option<&Term>> = vec![None; c];
            let consistent = alpha.iter().enumerate().all(|(i, &v)| match fixed[v] {
                Some(t) => *t == x.left.components[i],
                None => {
                    fixed[v] = Some(&x.left.components[i]);
                    true
                }
            });
            if !consistent {
                continue;
            }
            let vars: Vec<Term> = alpha.iter().map(|&v| Term::Var(v)).collect();
            let right = x
                .right
                .components
                .iter()
                .map(|r| Ok(outer.normalize(&substitute(r, &vars)?)?))
                .collect::<Result<Vec<_>, FactorError>>()?;
            let free: Vec<usize> = (0..c).filter(|&v| fixed[v].is_none()).collect();
            for fill in finset::functions(free.len(), pool.len()) {
                let mut left: Vec<Term> = fixed.iter().map(|t| t.cloned().unwrap_or(Term::Var(0))).collect();
                for (&v, &k) in free.iter().zip(&fill) {
                    left[v] = pool[k].clone();
                }
                let y = FactorizationPair {
                    middle: c,
                    left: TheoryMorphism::from_parts(x.source(), left),
                    right: TheoryMorphism::from_parts(c, right.clone()),
                };
                out.push((y, ZigzagStep { alpha: BaseFunction { source: a, target: c, table: alpha.clone() }, forward: false }));
                produced += 1;
                if produced >= NEIGHBOUR_LIMIT {
                    break;
                }
            }
            if produced >= NEIGHBOUR_LIMIT {
                break;
            }
        }
    }
    Ok(out)
}

/// Outer terms `r'` with `r'[x_i ↦ x_{alpha(i)}] = r`, obtained by sending
/// each variable occurrence of `r` to one of its preimages.
fn split_occurrences(
    outer: &TheorySpec,
    rights: &[Term],
    preimages: &[Vec<usize>],
) -> Result<Vec<Vec<Term>>, FactorError> {
    let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
    for r in rights {
        let occurrences = r.var_sequence();
        if occurrences.iter().any(|&v| preimages[v].is_empty()) {
            return Ok(Vec::new());
        }
        let lists: Vec<Vec<usize>> = occurrences.iter().map(|&v| preimages[v].clone()).collect();
        if lists.iter().map(Vec::len).product::<usize>() > NEIGHBOUR_LIMIT {
            return Ok(Vec::new());
        }
        let mut options: Vec<Term> = Vec::new();
        for choice in choices(&lists) {
            let t = outer.normalize(&replace_occurrences(r, &mut choice.into_iter()))?;
            if !options.contains(&t) {
                options.push(t);
            }
        }
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    Ok(acc)
}

fn replace_occurrences(t: &Term, next: &mut impl Iterator<Item = usize>) -> Term {
    match t {
        Term::Var(_) => Term::Var(next.next().expect("one choice per occurrence")),
        Term::App(op, args) => Term::App(*op, args.iter().map(|a| replace_occurrences(a, next)).collect()),
    }
}

/// Other factorizations of the morphism of `p`: an extra unused middle
/// coordinate, a duplicated coordinate taking over some occurrences, and a
/// permutation of the middle; and each of these applied twice.
pub fn alternatives(theory: &TheorySpec, p: &FactorizationPair) -> Result<Vec<FactorizationPair>, FactorError> {
    let once = |x: &FactorizationPair| -> Result<Vec<FactorizationPair>, FactorError> {
        let (outer, _) = layers(theory)?;
        let mut out = Vec::new();
        let a = x.middle;
        let spare = x.left.components.first().cloned().unwrap_or(Term::Var(0));
        let mut left = x.left.components.clone();
        left.push(spare);
        out.push(FactorizationPair {
            middle: a + 1,
            left: TheoryMorphism::from_parts(x.source(), left),
            right: TheoryMorphism::from_parts(a + 1, x.right.components.clone()),
        });
        for i in 0..a {
            let mut left = x.left.components.clone();
            left.push(x.left.components[i].clone());
            let mut preimages: Vec<Vec<usize>> = (0..a).map(|v| vec![v]).collect();
            preimages[i].push(a);
            for right in split_occurrences(outer, &x.right.components, &preimages)?.into_iter().take(4) {
                out.push(FactorizationPair {
                    middle: a + 1,
                    left: TheoryMorphism::from_parts(x.source(), left.clone()),
                    right: TheoryMorphism::from_parts(a + 1, right),
                });
            }
        }
        if a >= 2 {
            let mut perm = finset::identity(a);
            perm.swap(0, a - 1);
            let vars: Vec<Term> = perm.iter().map(|&v| Term::Var(v)).collect();
            let right = x
                .right
                .components
                .iter()
                .map(|r| Ok(outer.normalize(&substitute(r, &vars)?)?))
                .collect::<Result<Vec<_>, FactorError>>()?;
            let left = perm.iter().map(|&v| x.left.components[v].clone()).collect();
            out.push(FactorizationPair {
                middle: a,
                left: TheoryMorphism::from_parts(x.source(), left),
                right: TheoryMorphism::from_parts(a, right),
            });
        }
        Ok(out)
    };
    let first = once(p)?;
    let mut seen: HashSet<FactorizationPair> = HashSet::from([p.clone()]);
    let mut out = Vec::new();
    for x in &first {
        for y in std::iter::once(x.clone()).chain(once(x)?.into_iter().take(3)) {
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// Morphisms `k → 1` of the composite theory for `k ≤ arity_bound` with a
/// component of at most `size_bound` nodes, and `k → 2` with both components
/// of at most `PAIR_SIZE_BOUND` nodes.
pub const PAIR_SIZE_BOUND: usize = 3;

fn bounded_morphisms(theory: &TheorySpec, arity_bound: usize, size_bound: usize) -> Result<Vec<TheoryMorphism>, TermError> {
    let mut out = Vec::new();
    for k in 0..=arity_bound {
        let terms = enumerate_terms(theory, k, size_bound)?;
        out.extend(terms.iter().map(|t| TheoryMorphism::from_parts(k, vec![t.clone()])));
        let small: Vec<&Term> = terms.iter().filter(|t| t.size() <= PAIR_SIZE_BOUND).collect();
        for s in &small {
            for t in &small {
                out.push(TheoryMorphism::from_parts(k, vec![(*s).clone(), (*t).clone()]));
            }
        }
    }
    Ok(out)
}

/// Witness length used for the alternatives in [`check_fs_over_F`].
pub const ALTERNATIVE_WITNESS_BOUND: usize = 2;

/// Factorization over F^op on a composite theory, over every morphism
/// within the bounds (see [`PAIR_SIZE_BOUND`]).
///
/// Checks: `existence` (factorize succeeds and recomposes), `canonical`
/// (the factorization is a fixed point of canonicalize), `alternative-recomposes`,
/// `uniqueness` (every alternative canonicalizes to the factorization) and
/// `witness` (a zigzag of at most [`ALTERNATIVE_WITNESS_BOUND`] steps is found
/// and validates).
#[allow(non_snake_case)]
pub fn check_fs_over_F(theory: &TheorySpec, arity_bound: usize, size_bound: usize) -> Report {
    let mut report = Report::new(format!("factorization system over F^op on {}", theory.name()))
        .with_bound("arityBound", arity_bound)
        .with_bound("sizeBound", size_bound)
        .with_bound("pairSizeBound", PAIR_SIZE_BOUND)
        .with_bound("witnessBound", ALTERNATIVE_WITNESS_BOUND);
    for check in ["existence", "canonical", "alternative-recomposes", "uniqueness", "witness"] {
        report.declare(check);
    }
    let morphisms = match bounded_morphisms(theory, arity_bound, size_bound) {
        Ok(m) => m,
        Err(e) => {
            report.fail(Failure::new("existence", "enumeration", e.to_string(), "-"));
            return report;
        }
    };
    let parts: Vec<(Report, usize)> = morphisms.par_iter().map(|f| check_one(theory, f)).collect();
    let mut with_alternatives = 0;
    let mut alternative_count = 0;
    for (part, count) in parts {
        if count > 0 {
            with_alternatives += 1;
        }
        alternative_count += count;
        report.absorb(part);
    }
    report.detail("morphisms", morphisms.len());
    report.detail("morphismsWithAlternatives", with_alternatives);
    report.detail("alternatives", alternative_count);
    report
}

fn check_one(theory: &TheorySpec, f: &TheoryMorphism) -> (Report, usize) {
    let mut report = Report::new("morphism");
    let input = f.to_string();
    let p = match factorize(theory, f) {
        Ok(p) => p,
        Err(e) => {
            report.fail(Failure::new("existence", input, e.to_string(), "a factorization"));
            return (report, 0);
        }
    };
    let show = |r: Result<TheoryMorphism, FactorError>| match r {
        Ok(g) => g.to_string(),
        Err(e) => e.to_string(),
    };
    report.compare("existence", &input, &show(recompose(theory, &p)), &f.to_string());
    let canon = canonicalize(theory, &p).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
    report.compare("canonical", &input, &canon, &p.to_string());
    let alts = match alternatives(theory, &p) {
        Ok(a) => a,
        Err(e) => {
            report.fail(Failure::new("alternative-recomposes", input, e.to_string(), "-"));
            return (report, 0);
        }
    };
    for alt in &alts {
        let alt_input = format!("{input} via {alt}");
        report.compare("alternative-recomposes", &alt_input, &show(recompose(theory, alt)), &f.to_string());
        match zigzag_equivalent(theory, alt, &p, ALTERNATIVE_WITNESS_BOUND) {
            Ok(decision) => {
                report.compare("uniqueness", &alt_input, &decision.equivalent, &true);
                match decision.witness {
                    Some(w) => report.record(
                        "witness",
                        w.validate(theory).map_err(|e| Failure::new("witness", alt_input.clone(), e, "valid")),
                    ),
                    None => report.fail(Failure::new("witness", alt_input, "none found", "a witness")),
                }
            }
            Err(e) => report.fail(Failure::new("uniqueness", alt_input, e.to_string(), "-")),
        }
    }
    (report, alts.len())
}

/// Strict factorization system `(L, R)` on a finite category, with `L` and
/// `R` given as sets of morphism indices.
///
/// Checks `L-subcategory` and `R-subcategory` (identities, closure), then
/// `existence` and `uniqueness` of a factorization `r ∘ l` of every
/// morphism. When both hold, the rewrite `l ∘ r ↦ r' ∘ l'` is the induced
/// distributive law in Span; its axioms are checked on every composable
/// input as `unit-L`, `unit-R`, `mult-L` and `mult-R`.
pub fn check_strict_fs(c: &FiniteCategory, l: &[usize], r: &[usize]) -> Report {
    let mut report = Report::new("strict factorization system")
        .with_bound("objects", c.object_count())
        .with_bound("morphisms", c.morphism_count());
    for check in ["L-subcategory", "R-subcategory", "existence", "uniqueness"] {
        report.declare(check);
    }
    let in_l: HashSet<usize> = l.iter().copied().collect();
    let in_r: HashSet<usize> = r.iter().copied().collect();
    let name = |f: usize| c.morphism(f).name.clone();
    for (check, set) in [("L-subcategory", &in_l), ("R-subcategory", &in_r)] {
        for o in 0..c.object_count() {
            report.compare(check, &format!("identity of {}", c.objects()[o]), &set.contains(&c.identity(o)), &true);
        }
        for &f in set.iter().collect::<std::collections::BTreeSet<_>>() {
            for &g in set.iter().collect::<std::collections::BTreeSet<_>>() {
                if let Some(gf) = c.compose(g, f) {
                    report.compare(check, &format!("{} after {}", name(g), name(f)), &set.contains(&gf), &true);
                }
            }
        }
    }
    // factorizations[h] = every (l, r) with r ∘ l = h
    let mut factorizations: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.morphism_count()];
    let mut ls: Vec<usize> = in_l.iter().copied().collect();
    let mut rs: Vec<usize> = in_r.iter().copied().collect();
    ls.sort_unstable();
    rs.sort_unstable();
    for &lf in &ls {
        for &rf in &rs {
            if let Some(h) = c.compose(rf, lf) {
                factorizations[h].push((lf, rf));
            }
        }
    }
    for (h, fs) in factorizations.iter().enumerate() {
        report.compare("existence", &name(h), &!fs.is_empty(), &true);
        if !fs.is_empty() {
            let shown: Vec<String> = fs.iter().map(|&(a, b)| format!("{};{}", name(a), name(b))).collect();
            report.compare("uniqueness", &name(h), &shown.join(" | "), &shown[0]);
        }
    }
    if !report.passed() {
        return report;
    }
    for check in ["unit-L", "unit-R", "mult-L", "mult-R"] {
        report.declare(check);
    }
    let factor = |h: usize| factorizations[h][0];
    // λ(r, l) for r: a → b in R and l: b → c in L
    let law = |rf: usize, lf: usize| factor(c.compose(lf, rf).expect("composable"));
    let show = |(a, b): (usize, usize)| format!("{};{}", name(a), name(b));
    let mut entries = 0;
    for &rf in &rs {
        for &lf in &ls {
            if c.compose(lf, rf).is_none() {
                continue;
            }
            entries += 1;
            let input = format!("{};{}", name(rf), name(lf));
            if c.is_identity(rf) {
                report.compare("unit-R", &input, &show(law(rf, lf)), &show((lf, c.identity(c.target(lf)))));
            }
            if c.is_identity(lf) {
                report.compare("unit-L", &input, &show(law(rf, lf)), &show((c.identity(c.source(rf)), rf)));
            }
            // splitting l = l2 ∘ l1 inside L
            for &l1 in &ls {
                for &l2 in &ls {
                    if c.compose(l2, l1) != Some(lf) {
                        continue;
                    }
                    let (l1p, r1p) = law(rf, l1);
                    let (l2p, r2p) = law(r1p, l2);
                    let staged = (c.compose(l2p, l1p).expect("composable"), r2p);
                    report.compare("mult-L", &format!("{input} with {} after {}", name(l2), name(l1)), &show(staged), &show(law(rf, lf)));
                }
            }
            for &r1 in &rs {
                for &r2 in &rs {
                    if c.compose(r2, r1) != Some(rf) {
                        continue;
                    }
                    let (lp, r2p) = law(r2, lf);
                    let (lpp, r1p) = law(r1, lp);
                    let staged = (lpp, c.compose(r2p, r1p).expect("composable"));
                    report.compare("mult-R", &format!("{input} with {} after {}", name(r2), name(r1)), &show(staged), &show(law(rf, lf)));
                }
            }
        }
    }
    report.detail("spanLawEntries", entries);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlaw::ring_theory;
    use crate::syntax::parse_term;

    fn morphism(text: &str, k: usize) -> TheoryMorphism {
        let ring = ring_theory();
        TheoryMorphism::from_parts(k, vec![ring.normalize(&parse_term(text, &ring, k).unwrap()).unwrap()])
    }

    fn pair(left: &[&str], k: usize, right: &[&str]) -> FactorizationPair {
        let ring = ring_theory();
        let (outer, inner) = ring.layers().unwrap();
        let l = left.iter().map(|s| parse_term(s, inner, k).unwrap()).collect();
        let r = right
            .iter()
            .map(|s| crate::syntax::parse_term_with(s, outer, left.len(), Alphabet::Xyz).unwrap())
            .collect();
        FactorizationPair::from_terms(&ring, k, l, r).unwrap()
    }

    #[test]
    fn factorize_ab_plus_c() {
        let p = factorize(&ring_theory(), &morphism("ab+c", 3)).unwrap();
        assert_eq!(p.to_string(), "{ab, c};{x+y}");
    }

    #[test]
    fn projection_pair_is_one_step() {
        let ring = ring_theory();
        let p = pair(&["ab", "c"], 3, &["x+y"]);
        let q = pair(&["ab", "c", "abc"], 3, &["x+y"]);
        let step = direct_step(&ring, &p, &q).unwrap().unwrap();
        assert!(!step.forward);
        assert_eq!(step.alpha.table, vec![0, 1]);
    }

    #[test]
    fn doubled_square_needs_two_steps() {
        let ring = ring_theory();
        let p = pair(&["aa", "aa", "a"], 1, &["x+y"]);
        let q = pair(&["aa"], 1, &["x+x"]);
        assert!(direct_step(&ring, &p, &q).unwrap().is_none());
        let w = search_witness(&ring, &p, &q, 2).unwrap().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.pairs[1].to_string(), "{aa, aa};{x+y}");
        w.validate(&ring).unwrap();
    }

    #[test]
    fn chain_is_strict() {
        let c = FiniteCategory::chain(3);
        let step = |name: &str| c.find_morphism(name).unwrap();
        let ids: Vec<usize> = c.identities().to_vec();
        let mut l = ids.clone();
        l.push(step("0<1"));
        let mut r = ids;
        r.push(step("1<2"));
        let report = check_strict_fs(&c, &l, &r);
        assert!(report.passed(), "{report}");
        assert!(report.check_count("mult-L") > 0);
    }
}
