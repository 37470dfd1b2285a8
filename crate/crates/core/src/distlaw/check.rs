//! Sampled checks of the Beck axioms and of the Yang–Baxter hexagons.

use rand::Rng;
use rayon::prelude::*;

use super::{apply_at, DistributiveLawSpec, DistributiveSeries};
use crate::report::{Failure, Report};
use crate::sampler::{random_term, SampleRng, Sampler};
use crate::syntax::print_term;
use crate::term::{normalize_layered, split_layer, substitute, Term, TermError, TheorySpec};

/// Names of the checks reported by [`check_law_axioms`].
pub const DIAGRAMS: [&str; 5] = ["unit-S", "unit-T", "mult-S", "mult-T", "naturality"];

fn sample_term(rng: &mut SampleRng, sampler: &Sampler, theory: &TheorySpec, k: usize) -> Term {
    random_term(rng, theory.signature(), k, sampler.max_depth, sampler.max_width)
        .expect("at least one variable")
}

fn sample_tuple(
    rng: &mut SampleRng,
    sampler: &Sampler,
    theory: &TheorySpec,
    len: usize,
    k: usize,
) -> Vec<Term> {
    (0..len).map(|_| sample_term(rng, sampler, theory, k)).collect()
}

fn width(rng: &mut SampleRng, sampler: &Sampler) -> usize {
    rng.random_range(1..=sampler.max_width.max(1))
}

fn arity(rng: &mut SampleRng, sampler: &Sampler) -> usize {
    rng.random_range(1..=sampler.max_arity.max(1))
}

/// A raw term layered by `layers` (outermost first) over `k` variables:
/// one sampled term per layer, the variables of each layer filled by a
/// tuple from the layer below.
pub fn sample_layered(rng: &mut SampleRng, sampler: &Sampler, layers: &[TheorySpec], k: usize) -> Term {
    match layers.split_first() {
        None => Term::Var(rng.random_range(0..k)),
        Some((top, [])) => sample_term(rng, sampler, top, k),
        Some((top, rest)) => {
            let w = width(rng, sampler);
            let t = sample_term(rng, sampler, top, w);
            let below: Vec<Term> = (0..w).map(|_| sample_layered(rng, sampler, rest, k)).collect();
            substitute(&t, &below).expect("tuple matches width")
        }
    }
}

enum Case {
    UnitS(Term),
    UnitT(Term),
    MultS { outer: Term, middle: Vec<Term>, inner: Vec<Term> },
    MultT { outer: Term, middle: Vec<Term>, inner: Vec<Term> },
    Naturality { term: Term, renaming: Vec<usize> },
}

impl Case {
    fn diagram(&self) -> &'static str {
        match self {
            Case::UnitS(_) => DIAGRAMS[0],
            Case::UnitT(_) => DIAGRAMS[1],
            Case::MultS { .. } => DIAGRAMS[2],
            Case::MultT { .. } => DIAGRAMS[3],
            Case::Naturality { .. } => DIAGRAMS[4],
        }
    }

    fn input(&self) -> String {
        let nested = |outer: &Term, middle: &[Term], inner: &[Term]| {
            let m: Vec<Term> = middle.iter().map(|m| substitute(m, inner).expect("sampled arity")).collect();
            print_term(&substitute(outer, &m).expect("sampled arity"))
        };
        match self {
            Case::UnitS(t) | Case::UnitT(t) => print_term(t),
            Case::MultS { outer, middle, inner } | Case::MultT { outer, middle, inner } => {
                nested(outer, middle, inner)
            }
            Case::Naturality { term, renaming } => format!("{} along {:?}", print_term(term), renaming),
        }
    }
}

fn sample_case(rng: &mut SampleRng, sampler: &Sampler, law: &DistributiveLawSpec, diagram: usize) -> Case {
    let (s, t) = (law.inner(), law.outer());
    let k = arity(rng, sampler);
    match diagram {
        0 => Case::UnitS(sample_term(rng, sampler, t, k)),
        1 => Case::UnitT(sample_term(rng, sampler, s, k)),
        2 | 3 => {
            let (w1, w2) = (width(rng, sampler), width(rng, sampler));
            let outer = sample_term(rng, sampler, s, w1);
            let mid_theory = if diagram == 2 { s } else { t };
            let middle = sample_tuple(rng, sampler, mid_theory, w1, w2);
            let inner = sample_tuple(rng, sampler, t, w2, k);
            if diagram == 2 {
                Case::MultS { outer, middle, inner }
            } else {
                Case::MultT { outer, middle, inner }
            }
        }
        _ => {
            let term = sample_layered(rng, sampler, &[s.clone(), t.clone()], k);
            let target = arity(rng, sampler);
            let renaming = (0..k).map(|_| rng.random_range(0..target)).collect();
            Case::Naturality { term, renaming }
        }
    }
}

fn compose_tuple(middle: &[Term], inner: &[Term]) -> Result<Vec<Term>, TermError> {
    middle.iter().map(|m| substitute(m, inner)).collect()
}

/// Both legs of the diagram, as normal `T`-over-`S` terms.
fn legs(law: &DistributiveLawSpec, case: &Case) -> Result<(Term, Term), TermError> {
    let (s, t) = (law.inner(), law.outer());
    let ts = [t.clone(), s.clone()];
    match case {
        Case::UnitS(x) => Ok((law.apply(x)?, t.normalize(x)?)),
        Case::UnitT(x) => Ok((law.apply(x)?, s.normalize(x)?)),
        Case::MultS { outer, middle, inner } => {
            // λ ∘ μS  versus  Tμ ∘ λS ∘ Sλ
            let left = law.apply(&substitute(outer, &compose_tuple(middle, inner)?)?)?;
            let mut atoms = Vec::new();
            let mut skeletons = Vec::new();
            for m in middle {
                let swapped = law.apply(&substitute(m, inner)?)?;
                skeletons.push(split_layer(&swapped, &|op| t.has_op(op), &mut atoms));
            }
            let swapped = law.apply(&substitute(outer, &skeletons)?)?;
            let right = normalize_layered(&ts, &substitute(&swapped, &atoms)?)?;
            Ok((left, right))
        }
        Case::MultT { outer, middle, inner } => {
            // λ ∘ SμT  versus  μT ∘ Tλ ∘ λT
            let left = law.apply(&substitute(outer, &compose_tuple(middle, inner)?)?)?;
            let swapped = law.apply(&substitute(outer, middle)?)?;
            let mut atoms = Vec::new();
            let skeleton = split_layer(&swapped, &|op| t.has_op(op), &mut atoms);
            let atoms = atoms
                .iter()
                .map(|a| law.apply(&substitute(a, inner)?))
                .collect::<Result<Vec<_>, _>>()?;
            let right = normalize_layered(&ts, &substitute(&skeleton, &atoms)?)?;
            Ok((left, right))
        }
        Case::Naturality { term, renaming } => {
            let left = law.apply(&term.rename(renaming))?;
            let right = normalize_layered(&ts, &law.apply(term)?.rename(renaming))?;
            Ok((left, right))
        }
    }
}

fn outcome(check: &str, input: String, legs: Result<(Term, Term), TermError>) -> Result<(), Failure> {
    match legs {
        Ok((l, r)) if l == r => Ok(()),
        Ok((l, r)) => Err(Failure::new(check, input, print_term(&l), print_term(&r))),
        Err(e) => Err(Failure::new(check, input, format!("error: {e}"), "")),
    }
}

fn header(subject: String, sampler: &Sampler) -> Report {
    Report::new(subject)
        .with_seed(sampler.seed)
        .with_bound("samples", sampler.samples)
        .with_bound("maxDepth", sampler.max_depth)
        .with_bound("maxWidth", sampler.max_width)
        .with_bound("maxArity", sampler.max_arity)
}

/// Samples `sampler.samples` inputs for each of the two unit diagrams, the
/// two multiplication diagrams and naturality in the variables, and compares
/// the normal forms of both legs.
pub fn check_law_axioms(law: &DistributiveLawSpec, sampler: &Sampler) -> Report {
    crate::pool::deep(|| law_axioms(law, sampler))
}

fn law_axioms(law: &DistributiveLawSpec, sampler: &Sampler) -> Report {
    let mut report = header(format!("law {}", law.name()), sampler);
    let mut cases = Vec::new();
    for (d, name) in DIAGRAMS.iter().enumerate() {
        report.declare(name);
        let mut rng = sampler.rng_for(d as u64);
        cases.extend((0..sampler.samples).map(|_| sample_case(&mut rng, sampler, law, d)));
    }
    let outcomes: Vec<_> = cases
        .par_iter()
        .map(|c| outcome(c.diagram(), c.input(), legs(law, c)))
        .collect();
    for (case, o) in cases.iter().zip(outcomes) {
        report.record(case.diagram(), o);
    }
    report
}

/// Runs `steps` of `(law, depth)` on a term layered by `layers`, swapping
/// the two affected layers after each step.
fn path(
    mut layers: Vec<TheorySpec>,
    steps: &[(&DistributiveLawSpec, usize)],
    t: &Term,
) -> Result<Term, TermError> {
    let mut cur = normalize_layered(&layers, t)?;
    for (law, depth) in steps {
        cur = apply_at(law, &layers, *depth, &cur)?;
        layers.swap(*depth, depth + 1);
    }
    normalize_layered(&layers, &cur)
}

fn prefixed(mut report: Report, prefix: &str) -> Report {
    for c in &mut report.checks {
        c.name = format!("{prefix}{}", c.name);
    }
    for f in &mut report.failures {
        f.check = format!("{prefix}{}", f.check);
    }
    report
}

/// Checks the axioms of every law of the series, the hexagon for every
/// triple `i > j > k`, and that the two bracketings of the iterated
/// composite normalize the hexagon samples identically.
pub fn check_yang_baxter(series: &DistributiveSeries, sampler: &Sampler) -> Report {
    crate::pool::deep(|| yang_baxter(series, sampler))
}

fn yang_baxter(series: &DistributiveSeries, sampler: &Sampler) -> Report {
    let theories = series.theories();
    let n = theories.len();
    let mut report = header(format!("series {}", series.name()), sampler);
    for law in series.laws() {
        let r = law_axioms(law, sampler);
        report.absorb(prefixed(r, &format!("{}/", law.name())));
        report.subject = format!("series {}", series.name());
    }

    let mut bracket_samples = Vec::new();
    let mut stream = 100;
    for i in (0..n).rev() {
        for j in (0..i).rev() {
            for k in (0..j).rev() {
                let name = format!("hexagon-{}-{}-{}", i + 1, j + 1, k + 1);
                report.declare(&name);
                let layers = vec![theories[i].clone(), theories[j].clone(), theories[k].clone()];
                let mut rng = sampler.rng_for(stream);
                stream += 1;
                let samples: Vec<Term> = (0..sampler.samples)
                    .map(|_| {
                        let a = arity(&mut rng, sampler);
                        sample_layered(&mut rng, sampler, &layers, a)
                    })
                    .collect();
                let (lij, lik, ljk) = (series.law(i, j), series.law(i, k), series.law(j, k));
                let outcomes: Vec<_> = samples
                    .par_iter()
                    .map(|t| {
                        let legs = path(layers.clone(), &[(lij, 0), (lik, 1), (ljk, 0)], t).and_then(|l| {
                            Ok((l, path(layers.clone(), &[(ljk, 1), (lik, 0), (lij, 1)], t)?))
                        });
                        outcome(&name, print_term(t), legs)
                    })
                    .collect();
                outcomes.into_iter().for_each(|o| report.record(&name, o));
                if n == 3 {
                    bracket_samples = samples;
                }
            }
        }
    }

    if n != 3 {
        let reversed: Vec<TheorySpec> = theories.iter().rev().cloned().collect();
        let mut rng = sampler.rng_for(99);
        bracket_samples = (0..sampler.samples)
            .map(|_| {
                let a = arity(&mut rng, sampler);
                sample_layered(&mut rng, sampler, &reversed, a)
            })
            .collect();
    }
    report.declare("bracketing");
    let right = series.composite_right();
    let left = series.composite_left();
    let outcomes: Vec<_> = bracket_samples
        .par_iter()
        .map(|t| {
            let legs = right.normalize(t).and_then(|r| {
                let l = left.normalize(t)?;
                Ok((normalize_layered(theories, &r)?, normalize_layered(theories, &l)?))
            });
            outcome("bracketing", print_term(t), legs)
        })
        .collect();
    outcomes.into_iter().for_each(|o| report.record("bracketing", o));
    report
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn small() -> Sampler {
        Sampler::default().with_samples(60)
    }

    #[test]
    fn ring_law_passes_all_diagrams() {
        let r = check_law_axioms(&ring_law(), &small());
        assert!(r.passed(), "{r}");
        for d in DIAGRAMS {
            assert_eq!(r.check_count(d), 60);
        }
    }

    #[test]
    fn mutant_fails_mult_t() {
        let r = check_law_axioms(&mutant_ring_law(), &small());
        assert!(r.failures_of("mult-T").next().is_some(), "{r}");
        assert!(r.failures_of("unit-S").next().is_none());
    }

    #[test]
    fn identity_inner_is_vacuous() {
        let r = check_law_axioms(&identity_inner_law(TheorySpec::abelian_group()), &small());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn zero_samples_pass() {
        let r = check_law_axioms(&ring_law(), &Sampler::default().with_samples(0));
        assert!(r.passed());
        assert_eq!(r.sample_count, 0);
        assert_eq!(r.checks.len(), DIAGRAMS.len());
    }

    #[test]
    fn sampled_layering_is_valid() {
        let s = Sampler::default();
        let mut rng = s.rng();
        let layers = [TheorySpec::monoid(), TheorySpec::abelian_group()];
        for _ in 0..50 {
            let t = sample_layered(&mut rng, &s, &layers, 3);
            assert!(normalize_layered(&layers, &t).is_ok());
        }
    }

    #[test]
    fn ring3_hexagon_passes() {
        let r = check_yang_baxter(&ring3_series(), &Sampler::default().with_samples(40));
        assert!(r.passed(), "{r}");
        assert_eq!(r.check_count("hexagon-3-2-1"), 40);
        assert_eq!(r.check_count("bracketing"), 40);
    }

    #[test]
    fn ring3_mutant_fails_hexagon() {
        let r = check_yang_baxter(&ring3_mutant_series(), &Sampler::default().with_samples(40));
        assert!(r.failures_of("hexagon-3-2-1").next().is_some(), "{r}");
    }
}
