//! Finitary monads and Lawvere theories: the table `L(n, m) = Set(m, F n)`
//! of a monad, the monad `X ↦ ∫^n L(n, 1) × X^n` of a table, round trips,
//! composite theories against composite monads, and the composite
//! `I^* ∘ F_* ∘ I_*` of profunctors on finite sets.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distlaw::{composite_theory_unchecked, DistributiveLawSpec};
use crate::finset;
use crate::monad::{CompositeFragment, FinitaryMonad};
use crate::profcat::{
    compose_prof, prof_iso, Cat, FiniteCategory, FiniteFunctor, FiniteProfunctor, ProfError,
};
use crate::report::{Failure, Report};
use crate::sampler::Sampler;
use crate::syntax::print_term;
use crate::term::{enumerate_terms, Term, TermError};
use crate::theory::{check_product_structure, LawvereTheory, TheoryMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("arity {arity} is beyond the fragment bound {bound}")]
    Bound { arity: usize, bound: usize },
    #[error("{0} leaves the fragment")]
    Partial(String),
    #[error("hom-set {from} -> {to} has more than {limit} elements")]
    TooLarge { from: usize, to: usize, limit: usize },
    #[error(transparent)]
    Prof(#[from] ProfError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Hom-sets are enumerated only up to this many elements.
pub const HOM_LIMIT: usize = 1 << 16;

/// The Lawvere theory of a finitary monad on its fragment: a morphism
/// `n → m` is a function `[m] → F[n]`, i.e. `m` operations in `n` variables.
#[derive(Clone, Copy)]
pub struct LawvereTable<'a> {
    pub monad: &'a dyn FinitaryMonad,
}

pub fn phi(monad: &dyn FinitaryMonad) -> LawvereTable<'_> {
    LawvereTable { monad }
}

impl LawvereTable<'_> {
    fn arity(&self, n: usize) -> Result<(), CorrespondenceError> {
        let bound = self.monad.max_arity();
        if n > bound {
            return Err(CorrespondenceError::Bound { arity: n, bound });
        }
        Ok(())
    }

    pub fn hom_size(&self, n: usize, m: usize) -> Result<usize, CorrespondenceError> {
        self.arity(n)?;
        Ok(finset::count_functions(m, self.monad.size(n)))
    }

    pub fn hom(&self, n: usize, m: usize) -> Result<Vec<Vec<usize>>, CorrespondenceError> {
        if self.hom_size(n, m)? > HOM_LIMIT {
            return Err(CorrespondenceError::TooLarge { from: n, to: m, limit: HOM_LIMIT });
        }
        Ok(finset::functions(m, self.monad.size(n)))
    }

    /// `g ∘ f` for `f: k → n` and `g: n → m`: substitute `f` into each operation of `g`.
    pub fn compose(&self, k: usize, n: usize, g: &[usize], f: &[usize]) -> Result<Vec<usize>, CorrespondenceError> {
        self.arity(k)?;
        self.arity(n)?;
        g.iter()
            .map(|&x| {
                self.monad
                    .bind(n, x, k, f)
                    .ok_or_else(|| CorrespondenceError::Partial(format!("composite at {k} -> {n}")))
            })
            .collect()
    }

    /// The image of `alpha: [m] → [n]`, a morphism `n → m`.
    pub fn basic(&self, n: usize, alpha: &[usize]) -> Vec<usize> {
        alpha.iter().map(|&i| self.monad.unit(n, i)).collect()
    }

    pub fn show(&self, n: usize, f: &[usize]) -> String {
        let parts: Vec<String> = f.iter().map(|&x| self.monad.show(n, x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Unit laws and associativity of the table, and functoriality of the basic
/// morphisms, over objects `≤ bound`. Hom-sets up to `EXHAUSTIVE` elements
/// are used whole; larger ones are sampled.
pub fn check_table(table: &LawvereTable<'_>, bound: usize, sampler: &Sampler) -> Report {
    const EXHAUSTIVE: usize = 64;
    let mut report = Report::new(format!("Lawvere table of {}", table.monad.name()))
        .with_bound("objects", bound)
        .with_seed(sampler.seed);
    for check in ["unit-left", "unit-right", "associativity", "basic-functorial"] {
        report.declare(check);
    }
    let mut rng = sampler.rng_for(11);
    let mut pick = |n: usize, m: usize| -> Vec<Vec<usize>> {
        match table.hom(n, m) {
            Ok(all) if all.len() <= EXHAUSTIVE => all,
            _ => {
                let size = table.monad.size(n);
                if size == 0 && m > 0 {
                    return Vec::new();
                }
                (0..EXHAUSTIVE).map(|_| (0..m).map(|_| rng.random_range(0..size)).collect()).collect()
            }
        }
    };
    let show = |r: Result<Vec<usize>, CorrespondenceError>, n: usize| match r {
        Ok(f) => table.show(n, &f),
        Err(e) => e.to_string(),
    };
    for k in 0..=bound {
        for n in 0..=bound {
            for f in pick(k, n) {
                let input = table.show(k, &f);
                let id_n = table.basic(n, &finset::identity(n));
                let id_k = table.basic(k, &finset::identity(k));
                report.compare("unit-left", &input, &show(table.compose(k, n, &id_n, &f), k), &input);
                report.compare("unit-right", &input, &show(table.compose(k, k, &f, &id_k), k), &input);
                for m in 0..=bound.min(2) {
                    for g in pick(n, m).into_iter().take(8) {
                        for h in pick(m, 1).into_iter().take(4) {
                            let input = format!("{input} then {} then {}", table.show(n, &g), table.show(m, &h));
                            let left = table.compose(k, n, &g, &f).and_then(|gf| table.compose(k, m, &h, &gf));
                            let right = table.compose(n, m, &h, &g).and_then(|hg| table.compose(k, n, &hg, &f));
                            if let (Ok(l), Ok(r)) = (&left, &right) {
                                report.compare("associativity", &input, &table.show(k, l), &table.show(k, r));
                            }
                        }
                    }
                }
            }
        }
    }
    // basic(β ∘ α) = basic(α) ∘ basic(β) for α: [m] → [n], β: [n] → [k]
    for k in 0..=bound {
        for n in 0..=bound {
            for m in 0..=bound {
                if finset::count_functions(m, n) * finset::count_functions(n, k) > 512 {
                    continue;
                }
                for alpha in finset::functions(m, n) {
                    for beta in finset::functions(n, k) {
                        let direct = table.basic(k, &finset::compose(&beta, &alpha));
                        let staged = table.compose(k, n, &table.basic(n, &alpha), &table.basic(k, &beta));
                        report.compare(
                            "basic-functorial",
                            &format!("{alpha:?} then {beta:?}"),
                            &show(staged, k),
                            &table.show(k, &direct),
                        );
                    }
                }
            }
        }
    }
    report
}

/// Unit and associativity laws of a monad fragment, on substitutions into
/// objects `≤ bound`; products leaving the fragment are skipped.
pub fn check_monad_laws(monad: &dyn FinitaryMonad, bound: usize, sampler: &Sampler) -> Report {
    let table = phi(monad);
    let mut report = check_table(&table, bound.min(monad.max_arity()), sampler);
    report.subject = format!("monad laws of {}", monad.name());
    report
}

/// A family `τ_n: F[n] → G[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadMap {
    pub components: Vec<Vec<usize>>,
}

impl MonadMap {
    /// `τ_n(x)` given by a function of `(n, x)`, for `n ≤ bound`.
    pub fn from_fn(source: &dyn FinitaryMonad, bound: usize, f: impl Fn(usize, usize) -> usize) -> MonadMap {
        MonadMap { components: (0..=bound).map(|n| (0..source.size(n)).map(|x| f(n, x)).collect()).collect() }
    }

    pub fn identity(monad: &dyn FinitaryMonad, bound: usize) -> MonadMap {
        MonadMap::from_fn(monad, bound, |_, x| x)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonadMap) -> MonadMap {
        MonadMap {
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn bound(&self) -> usize {
        self.components.len().saturating_sub(1)
    }
}

/// Naturality, unit and multiplication of `τ: F ⇒ G` on the fragment.
pub fn check_monad_map(f: &dyn FinitaryMonad, g: &dyn FinitaryMonad, tau: &MonadMap) -> Report {
    let bound = tau.bound();
    let mut report = Report::new(format!("monad map {} => {}", f.name(), g.name())).with_bound("objects", bound);
    for check in ["naturality", "unit", "multiplication"] {
        report.declare(check);
    }
    for n in 0..=bound {
        for i in 0..n {
            report.compare("unit", &format!("{n}:{i}"), &tau.components[n][f.unit(n, i)], &g.unit(n, i));
        }
        for m in 0..=bound {
            for alpha in finset::functions(n, m) {
                for x in 0..f.size(n) {
                    let input = format!("{} along {alpha:?}", f.show(n, x));
                    let left = f.map(n, x, &alpha, m).map(|y| tau.components[m][y]);
                    let right = g.map(n, tau.components[n][x], &alpha, m);
                    if left.is_some() || right.is_some() {
                        report.compare("naturality", &input, &format!("{left:?}"), &format!("{right:?}"));
                    }
                }
            }
            if finset::count_functions(n, f.size(m)) > 256 {
                continue;
            }
            for sigma in finset::functions(n, f.size(m)) {
                let image: Vec<usize> = sigma.iter().map(|&s| tau.components[m][s]).collect();
                for x in 0..f.size(n) {
                    let left = f.bind(n, x, m, &sigma).map(|y| tau.components[m][y]);
                    let right = g.bind(n, tau.components[n][x], m, &image);
                    if left.is_some() || right.is_some() {
                        report.compare(
                            "multiplication",
                            &format!("{} with {sigma:?}", f.show(n, x)),
                            &format!("{left:?}"),
                            &format!("{right:?}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// `τ̄_{n,m}`: post-composition with `τ_n`.
pub fn phi_map(tau: &MonadMap, n: usize, f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| tau.components[n][x]).collect()
}

/// Hom-sets `(n, m)` with `n, m ≤ bound` small enough to enumerate.
fn small_homs(table: &LawvereTable<'_>, bound: usize) -> Vec<(usize, usize, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for n in 0..=bound.min(table.monad.max_arity()) {
        for m in 0..=bound {
            if let Ok(hom) = table.hom(n, m) {
                if hom.len() <= 4096 {
                    out.push((n, m, hom));
                }
            }
        }
    }
    out
}

/// `(τ ∘ σ)‾ = τ̄ ∘ σ̄` on every small hom-set of `F`, and `τ̄` preserves
/// composition and the basic morphisms.
pub fn check_phi_functorial(
    f: &dyn FinitaryMonad,
    g: &dyn FinitaryMonad,
    sigma: &MonadMap,
    tau: &MonadMap,
) -> Report {
    let bound = sigma.bound().min(tau.bound());
    let (tf, tg) = (phi(f), phi(g));
    let mut report = Report::new(format!("functoriality of phi on {}", f.name())).with_bound("objects", bound);
    for check in ["composite", "preserves-composition", "preserves-basic"] {
        report.declare(check);
    }
    let composite = tau.after(sigma);
    let homs = small_homs(&tf, bound);
    for (n, _, hom) in &homs {
        for t in hom {
            let input = tf.show(*n, t);
            report.compare(
                "composite",
                &input,
                &format!("{:?}", phi_map(&composite, *n, t)),
                &format!("{:?}", phi_map(tau, *n, &phi_map(sigma, *n, t))),
            );
        }
    }
    for (n, m, hom) in &homs {
        for alpha in finset::functions(*m, *n) {
            report.compare(
                "preserves-basic",
                &format!("{alpha:?}"),
                &format!("{:?}", phi_map(sigma, *n, &tf.basic(*n, &alpha))),
                &format!("{:?}", tg.basic(*n, &alpha)),
            );
        }
        // k → n → m with k ≤ bound and the first hom small
        for k in 0..=bound {
            let Ok(firsts) = tf.hom(k, *n) else { continue };
            for fk in firsts.iter().take(32) {
                for gm in hom.iter().take(32) {
                    let Ok(direct) = tf.compose(k, *n, gm, fk) else { continue };
                    let mapped = tg.compose(k, *n, &phi_map(sigma, *n, gm), &phi_map(sigma, k, fk));
                    report.compare(
                        "preserves-composition",
                        &format!("{} then {}", tf.show(k, fk), tf.show(*n, gm)),
                        &format!("{:?}", mapped.ok()),
                        &format!("{:?}", Some(phi_map(sigma, k, &direct))),
                    );
                }
            }
        }
    }
    report
}

/// Given a theory map `β` from the table of `F` to that of `G` (acting on
/// `[m] → F[n]`), rebuilds `α_n(x) = β_{n,1}(x)` and checks `β = ᾱ` on every
/// small hom-set and that `α` is a monad map.
pub fn reconstruct_monad_map(
    f: &dyn FinitaryMonad,
    g: &dyn FinitaryMonad,
    bound: usize,
    beta: &dyn Fn(usize, usize, &[usize]) -> Vec<usize>,
) -> (MonadMap, Report) {
    let alpha = MonadMap::from_fn(f, bound, |n, x| beta(n, 1, &[x])[0]);
    let mut report = Report::new(format!("fullness of phi from {} to {}", f.name(), g.name())).with_bound("objects", bound);
    report.declare("beta-is-post-composition");
    for (n, m, hom) in small_homs(&phi(f), bound) {
        for t in hom {
            report.compare(
                "beta-is-post-composition",
                &format!("{n} -> {m}: {t:?}"),
                &format!("{:?}", beta(n, m, &t)),
                &format!("{:?}", phi_map(&alpha, n, &t)),
            );
        }
    }
    report.absorb(check_monad_map(f, g, &alpha));
    (alpha, report)
}

/// `∫^{n ≤ t} L(n, 1) × X^n` for `X = [x]`, as a quotient of the triples
/// `(n, operation, tuple)`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TruncatedCoend {
    pub x: usize,
    pub truncation: usize,
    pub classes: usize,
    /// Whether the quotient does not change from `truncation` to `truncation + 1`.
    pub stable: bool,
    /// Least triple of each class.
    pub representatives: Vec<(usize, usize, Vec<usize>)>,
    #[serde(skip)]
    offsets: Vec<usize>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl TruncatedCoend {
    pub fn class(&self, n: usize, op: usize, tuple: &[usize]) -> usize {
        let radix = vec![self.x; tuple.len()];
        let per_op = finset::count_functions(n, self.x);
        self.class_of[self.offsets[n] + op * per_op + finset::encode(tuple, &radix)]
    }
}

fn coend_at(table: &LawvereTable<'_>, x: usize, t: usize) -> Result<TruncatedCoend, CorrespondenceError> {
    table.arity(t)?;
    let monad = table.monad;
    let mut offsets = Vec::with_capacity(t + 1);
    let mut total = 0;
    for n in 0..=t {
        offsets.push(total);
        total += monad.size(n) * finset::count_functions(n, x);
    }
    let index = |n: usize, op: usize, tuple: &[usize]| {
        offsets[n] + op * finset::count_functions(n, x) + finset::encode(tuple, &vec![x; n])
    };
    let mut uf = UnionFind::<usize>::new(total);
    // (n', op ∘ basic(α), xs) ~ (n, op, xs ∘ α) for α: [n] → [n']
    for n in 0..=t {
        for n2 in 0..=t {
            for alpha in finset::functions(n, n2) {
                let basic = table.basic(n2, &alpha);
                for op in 0..monad.size(n) {
                    let Ok(moved) = table.compose(n2, n, &[op], &basic) else { continue };
                    for xs in finset::functions(n2, x) {
                        let pulled = finset::compose(&xs, &alpha);
                        uf.union(index(n2, moved[0], &xs), index(n, op, &pulled));
                    }
                }
            }
        }
    }
    let mut class_of = vec![0; total];
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    for n in 0..=t {
        for op in 0..monad.size(n) {
            for xs in finset::functions(n, x) {
                let i = index(n, op, &xs);
                let next = representatives.len();
                class_of[i] = *root_class.entry(uf.find(i)).or_insert_with(|| {
                    representatives.push((n, op, xs.clone()));
                    next
                });
            }
        }
    }
    Ok(TruncatedCoend { x, truncation: t, classes: representatives.len(), stable: false, representatives, offsets, class_of })
}

/// The value at `[x]` of the monad of a table, truncated at arity `t` and
/// compared with truncation `t + 1`. Instability is reported, not an error;
/// the table must reach arity `t + 1`.
pub fn monad_from_theory(table: &LawvereTable<'_>, x: usize, t: usize) -> Result<TruncatedCoend, CorrespondenceError> {
    let mut coend = coend_at(table, x, t)?;
    let next = coend_at(table, x, t + 1)?;
    coend.stable = next.classes == coend.classes && next.representatives.iter().all(|(n, _, _)| *n <= t);
    Ok(coend)
}

/// The least truncation `≤ max_t` from which the coend is stable at every
/// level up to `max_t`.
pub fn stable_truncation(table: &LawvereTable<'_>, x: usize, max_t: usize) -> Result<Option<usize>, CorrespondenceError> {
    let flags = (0..=max_t).map(|t| monad_from_theory(table, x, t).map(|c| c.stable)).collect::<Result<Vec<_>, _>>()?;
    Ok((0..=max_t).find(|&t| flags[t..].iter().all(|&s| s)))
}

/// `∫^{n ≤ x_bound} F[n] × X^n ≅ F X` for `|X| ≤ x_bound`: the comparison
/// `(n, op, xs) ↦ F(xs)(op)` is constant on classes and bijective, and
/// natural in every function `X → Y` between tested sets.
pub fn roundtrip_check(monad: &dyn FinitaryMonad, x_bound: usize) -> Report {
    let table = phi(monad);
    let mut report = Report::new(format!("round trip of {}", monad.name()))
        .with_bound("xBound", x_bound)
        .with_bound("fragmentBound", monad.max_arity());
    for check in ["well-defined", "bijective", "natural"] {
        report.declare(check);
    }
    let mut coends = Vec::new();
    for x in 0..=x_bound {
        let coend = match monad_from_theory(&table, x, x_bound) {
            Ok(c) => c,
            Err(e) => {
                report.fail(Failure::new("bijective", format!("X = [{x}]"), e.to_string(), "a coend"));
                return report;
            }
        };
        report.set_stability(&format!("X={x},truncation={x_bound}"), coend.stable);
        let mut image: Vec<Option<usize>> = vec![None; coend.classes];
        let mut defined = true;
        for n in 0..=x_bound {
            for op in 0..monad.size(n) {
                for xs in finset::functions(n, x) {
                    let value = monad.map(n, op, &xs, x);
                    let class = coend.class(n, op, &xs);
                    let input = format!("{} at {xs:?}", monad.show(n, op));
                    match (value, image[class]) {
                        (None, _) => {
                            defined = false;
                            report.fail(Failure::new("well-defined", input, "outside the fragment", "an element"));
                        }
                        (Some(v), None) => {
                            image[class] = Some(v);
                            report.pass("well-defined");
                        }
                        (Some(v), Some(w)) => {
                            if v != w {
                                defined = false;
                            }
                            report.compare("well-defined", &input, &monad.show(x, v), &monad.show(x, w));
                        }
                    }
                }
            }
        }
        if defined {
            let mut values: Vec<usize> = image.iter().flatten().copied().collect();
            values.sort_unstable();
            values.dedup();
            report.compare(
                "bijective",
                &format!("X = [{x}]"),
                &format!("{} classes onto {} values", coend.classes, values.len()),
                &format!("{} classes onto {} values", monad.size(x), monad.size(x)),
            );
        }
        coends.push((coend, image));
    }
    // naturality in f: [x] → [y]
    for (x, (cx, image_x)) in coends.iter().enumerate() {
        for (y, (cy, image_y)) in coends.iter().enumerate() {
            for f in finset::functions(x, y) {
                for (class, (n, op, xs)) in cx.representatives.iter().enumerate() {
                    let moved = cy.class(*n, *op, &finset::compose(&f, xs));
                    let via_coend = image_y[moved];
                    let via_monad = image_x[class].and_then(|v| monad.map(x, v, &f, y));
                    report.compare(
                        "natural",
                        &format!("{} at {xs:?} along {f:?}", monad.show(*n, *op)),
                        &format!("{via_coend:?}"),
                        &format!("{via_monad:?}"),
                    );
                }
            }
        }
    }
    report.detail(
        "classes",
        coends.iter().map(|(c, _)| (c.x, c.classes, c.stable)).collect::<Vec<_>>(),
    );
    report
}

/// Hom-sets `k → 1` of the composite theory of `law` and of the table of
/// the composite monad built from `law` alone, for `k ≤ arity_bound` and
/// terms of at most `size_bound` nodes.
pub fn composite_hom_sets(
    law: &DistributiveLawSpec,
    arity_bound: usize,
    size_bound: usize,
) -> Result<(Vec<Vec<Term>>, CompositeFragment), CorrespondenceError> {
    let theory = composite_theory_unchecked(law);
    let homs = (0..=arity_bound)
        .map(|k| enumerate_terms(&theory, k, size_bound))
        .collect::<Result<Vec<_>, _>>()?;
    let fragment = CompositeFragment::new(law.clone(), arity_bound, size_bound)?;
    Ok((homs, fragment))
}

/// The composite theory of `law` against the table of its composite monad:
/// equal hom-sets `k → 1` (hence `k → m`) within the bounds, equal
/// composites on sampled pairs, and the product structure of the theory.
pub fn composite_correspondence_check(
    law: &DistributiveLawSpec,
    arity_bound: usize,
    size_bound: usize,
    sampler: &Sampler,
) -> Report {
    let mut report = Report::new(format!("composite correspondence for {}", law.name()))
        .with_bound("arityBound", arity_bound)
        .with_bound("sizeBound", size_bound)
        .with_seed(sampler.seed);
    for check in ["hom-bijection", "composition"] {
        report.declare(check);
    }
    let (homs, fragment) = match composite_hom_sets(law, arity_bound, size_bound) {
        Ok(x) => x,
        Err(e) => {
            report.fail(Failure::new("hom-bijection", law.name(), e.to_string(), "-"));
            return report;
        }
    };
    let theory = LawvereTheory::new(composite_theory_unchecked(law));
    for (k, terms) in homs.iter().enumerate() {
        let mut ours = fragment.elements(k).to_vec();
        ours.sort();
        let mut theirs = terms.clone();
        theirs.sort();
        let missing: Vec<String> = theirs.iter().filter(|t| ours.binary_search(t).is_err()).map(print_term).collect();
        let extra: Vec<String> = ours.iter().filter(|t| theirs.binary_search(t).is_err()).map(print_term).collect();
        report.compare(
            "hom-bijection",
            &format!("hom({k}, 1)"),
            &format!("{} elements, missing {missing:?}, extra {extra:?}", ours.len()),
            &format!("{} elements, missing [], extra []", theirs.len()),
        );
    }
    report.detail("homSizes", homs.iter().map(Vec::len).collect::<Vec<_>>());
    // g ∘ f for f: k → n, g: n → 1
    let table = phi(&fragment);
    let mut rng = sampler.rng_for(21);
    let mut skipped = 0;
    for _ in 0..sampler.samples {
        let k = rng.random_range(0..=arity_bound);
        let n = rng.random_range(0..=arity_bound);
        if fragment.size(n) == 0 || fragment.size(k) == 0 {
            continue;
        }
        let g = vec![rng.random_range(0..fragment.size(n))];
        let f: Vec<usize> = (0..n).map(|_| rng.random_range(0..fragment.size(k))).collect();
        let Ok(via_table) = table.compose(k, n, &g, &f) else {
            skipped += 1;
            continue;
        };
        let gm = TheoryMorphism::from_parts(n, vec![fragment.elements(n)[g[0]].clone()]);
        let fm = TheoryMorphism::from_parts(k, f.iter().map(|&i| fragment.elements(k)[i].clone()).collect());
        let input = format!("{} then {}", fm.display(crate::syntax::Alphabet::Abc), table.show(n, &g));
        match theory.compose(&gm, &fm) {
            Ok(h) => report.compare("composition", &input, &print_term(&h.components[0]), &table.monad.show(k, via_table[0])),
            Err(e) => report.fail(Failure::new("composition", input, e.to_string(), "-")),
        }
    }
    report.detail("compositionsOutsideFragment", skipped);
    let product_sampler = Sampler { samples: sampler.samples.min(200), max_arity: 2, ..sampler.clone() };
    report.absorb(check_product_structure(&theory, 1, 1, &product_sampler));
    report.absorb(check_product_structure(&theory, 2, 1, &product_sampler));
    report
}

/// `Φ(k, n) = Set(k, F n)` on finite sets `[0], …, [N]`, contravariant in `k`
/// by precomposition and covariant in `n` through `F`.
pub fn phi_profunctor(monad: &dyn FinitaryMonad, fin: &Cat) -> Result<FiniteProfunctor, CorrespondenceError> {
    let n_max = fin.object_count() - 1;
    phi(monad).arity(n_max)?;
    let tables: Vec<Vec<usize>> = (0..fin.morphism_count())
        .map(|f| fin.function_table(f).expect("a category of finite sets"))
        .collect();
    // F(g) for every morphism g
    let mut f_tables = Vec::with_capacity(tables.len());
    for (g, t) in tables.iter().enumerate() {
        let (a, b) = (fin.source(g), fin.target(g));
        let image = (0..monad.size(a))
            .map(|x| monad.map(a, x, t, b))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CorrespondenceError::Partial(format!("F of {t:?}")))?;
        f_tables.push(image);
    }
    let sizes: Vec<Vec<usize>> =
        (0..=n_max).map(|k| (0..=n_max).map(|n| finset::count_functions(k, monad.size(n))).collect()).collect();
    Ok(FiniteProfunctor::from_fns(
        fin.clone(),
        fin.clone(),
        sizes,
        |h, n, x| {
            let (k2, k) = (fin.source(h), fin.target(h));
            let s = monad.size(n);
            let t = finset::decode(x, &vec![s; k]);
            finset::encode(&finset::compose(&t, &tables[h]), &vec![s; k2])
        },
        |g, k, x| {
            let (a, b) = (fin.source(g), fin.target(g));
            let t = finset::decode(x, &vec![monad.size(a); k]);
            let moved: Vec<usize> = t.iter().map(|&v| f_tables[g][v]).collect();
            finset::encode(&moved, &vec![monad.size(b); k])
        },
    )?)
}

/// The functor `n ↦ F[n]` from `[0], …, [N]` into finite sets up to `u`.
fn fi_functor(monad: &dyn FinitaryMonad, fin: &Cat, set_u: &Cat) -> Result<FiniteFunctor, CorrespondenceError> {
    let objects: Vec<usize> = (0..fin.object_count()).map(|n| monad.size(n)).collect();
    let mut morphisms = Vec::with_capacity(fin.morphism_count());
    for g in 0..fin.morphism_count() {
        let t = fin.function_table(g).expect("a category of finite sets");
        let (a, b) = (fin.source(g), fin.target(g));
        let image = (0..monad.size(a))
            .map(|x| monad.map(a, x, &t, b))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CorrespondenceError::Partial(format!("F of {t:?}")))?;
        let name = format!("{}->{}:{image:?}", objects[a], objects[b]);
        morphisms.push(set_u.find_morphism(&name).expect("function in the universe"));
    }
    Ok(FiniteFunctor::new(fin.clone(), set_u.clone(), objects, morphisms)?)
}

/// The composite `I^* ∘ F_* ∘ I_*` on finite sets `[0], …, [N]`, computed as
/// `I^* ∘ (F I)_*` by a coend over all finite sets up to `max |F n|`.
///
/// Checks `cardinality` (`|F n|^k` at `(k, n)`), `iso-to-phi` (an
/// isomorphism with [`phi_profunctor`]), `phi-agreement` (the actions of
/// `Φ` are composition with basic morphisms in the table of `F`) and
/// `pasting` (`∫^m Set(k, F m) × Set(m, F n) = Set(k, F F n)` on the cells
/// where `|F n| ≤ N`).
pub fn istar_composite(monad: &dyn FinitaryMonad, n_bound: usize) -> Result<(FiniteProfunctor, Report), CorrespondenceError> {
    phi(monad).arity(n_bound)?;
    let universe = (0..=n_bound).map(|n| monad.size(n)).max().unwrap_or(0).max(n_bound);
    let fin: Cat = Arc::new(FiniteCategory::finite_sets(n_bound));
    let set_u: Cat = Arc::new(FiniteCategory::finite_sets(universe));
    let inclusion = FiniteFunctor::new(
        fin.clone(),
        set_u.clone(),
        (0..=n_bound).collect(),
        (0..fin.morphism_count())
            .map(|g| set_u.find_morphism(&fin.morphism(g).name).expect("function in the universe"))
            .collect(),
    )?;
    let fi = fi_functor(monad, &fin, &set_u)?;
    let i_upper = FiniteProfunctor::corepresentable(&inclusion);
    let fi_lower = FiniteProfunctor::representable(&fi);
    let composite = compose_prof(&i_upper, &fi_lower)?;
    let expected = phi_profunctor(monad, &fin)?;

    let mut report = Report::new(format!("I^* F_* I_* for {}", monad.name()))
        .with_bound("nBound", n_bound)
        .with_bound("universe", universe);
    for check in ["cardinality", "iso-to-phi", "phi-agreement", "pasting"] {
        report.declare(check);
    }
    for k in 0..=n_bound {
        for n in 0..=n_bound {
            report.compare("cardinality", &format!("({k}, {n})"), &composite.size(k, n), &finset::count_functions(k, monad.size(n)));
        }
    }
    match prof_iso(&composite, &expected)? {
        Some(_) => report.pass("iso-to-phi"),
        None => report.fail(Failure::new("iso-to-phi", "all cells", "no isomorphism", "an isomorphism")),
    }
    let table = phi(monad);
    for g in 0..fin.morphism_count() {
        let alpha = fin.function_table(g).expect("a category of finite sets");
        let (a, b) = (fin.source(g), fin.target(g));
        for n in 0..=n_bound {
            // precomposition with g: b ← a, i.e. basic(g) ∘ t for t ∈ L(n, b)
            let radix = vec![monad.size(n); b];
            for x in 0..expected.size(b, n) {
                let t = finset::decode(x, &radix);
                let via_table = table.compose(n, b, &table.basic(b, &alpha), &t);
                let via_prof = finset::decode(expected.act_contra(g, n, x), &vec![monad.size(n); a]);
                report.compare("phi-agreement", &format!("{t:?} before {alpha:?}"), &format!("{via_table:?}"), &format!("{:?}", Ok::<_, CorrespondenceError>(via_prof)));
            }
        }
        for k in 0..=n_bound {
            let radix = vec![monad.size(a); k];
            for x in 0..expected.size(k, a) {
                let t = finset::decode(x, &radix);
                let via_table = table.compose(b, a, &t, &table.basic(b, &alpha));
                let via_prof = finset::decode(expected.act_co(g, k, x), &vec![monad.size(b); k]);
                report.compare("phi-agreement", &format!("{t:?} along {alpha:?}"), &format!("{via_table:?}"), &format!("{:?}", Ok::<_, CorrespondenceError>(via_prof)));
            }
        }
    }
    let twice = compose_prof(&expected, &expected)?;
    for n in 0..=n_bound {
        let fn_size = monad.size(n);
        if fn_size > n_bound || fn_size > monad.max_arity() {
            continue;
        }
        for k in 0..=n_bound {
            report.compare(
                "pasting",
                &format!("({k}, {n})"),
                &twice.size(k, n),
                &finset::count_functions(k, monad.size(fn_size)),
            );
        }
    }
    Ok((composite, report))
}

/// Round trips of every built-in monad, each cell checked in parallel.
pub fn roundtrip_all(names: &[&str], bound: usize, x_bound: usize) -> Vec<Report> {
    names
        .par_iter()
        .map(|name| match crate::monad::builtin(name, bound) {
            Some(m) => roundtrip_check(m.as_ref(), x_bound),
            None => {
                let mut r = Report::new(format!("round trip of {name}"));
                r.fail(Failure::new("bijective", *name, "unknown monad", "-"));
                r
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{IdentityMonad, PointedMonad};

    #[test]
    fn pointed_hom_and_coend() {
        let pointed = PointedMonad { bound: 4 };
        let table = phi(&pointed);
        assert_eq!(table.hom_size(2, 1).unwrap(), 3);
        let coend = monad_from_theory(&table, 2, 2).unwrap();
        assert_eq!(coend.classes, 3);
        assert!(coend.stable);
        assert_eq!(stable_truncation(&table, 2, 3).unwrap(), Some(1));
    }

    #[test]
    fn identity_coend_is_x() {
        let id = IdentityMonad { bound: 4 };
        for x in 0..=3 {
            assert_eq!(monad_from_theory(&phi(&id), x, x).unwrap().classes, x);
        }
    }

    #[test]
    fn pointed_roundtrip() {
        let report = roundtrip_check(&PointedMonad { bound: 4 }, 3);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn istar_pointed() {
        let (composite, report) = istar_composite(&PointedMonad { bound: 4 }, 2).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(composite.size(2, 1), 4);
    }
}
