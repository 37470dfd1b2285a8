//! Named regression fixtures: the worked examples, each reproduced exactly.

use std::sync::Arc;

use crate::distlaw::{check_yang_baxter, ring3_series, ring_law, ring_theory};
use crate::factorization::{alternatives, direct_step, factorize, recompose, search_witness, FactorizationPair};
use crate::finset;
use crate::monad::{oplus, PointedMonad};
use crate::profcat::{Cat, FiniteCategory, FiniteFunctor, FiniteProfunctor};
use crate::report::{Failure, Report};
use crate::sampler::Sampler;
use crate::syntax::{parse_raw, parse_term, parse_term_with, print_term, Alphabet};
use crate::term::{enumerate_terms, TheorySpec};
use crate::theory::{BaseFunction, LawvereTheory, TheoryMorphism};

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    /// The observed value on success.
    pub run: fn() -> Result<String, String>,
}

fn expect(observed: String, expected: &str) -> Result<String, String> {
    if observed == expected {
        Ok(observed)
    } else {
        Err(format!("got {observed}, expected {expected}"))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ring_pair(left: &[&str], k: usize, right: &[&str]) -> Result<FactorizationPair, String> {
    let ring = ring_theory();
    let (outer, inner) = ring.layers().ok_or("ring is not layered")?;
    let l = left.iter().map(|s| parse_term(s, inner, k)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let r = right
        .iter()
        .map(|s| parse_term_with(s, outer, left.len(), Alphabet::Xyz))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    FactorizationPair::from_terms(&ring, k, l, r).map_err(err)
}

fn ring_morphism(text: &str, k: usize) -> Result<TheoryMorphism, String> {
    let ring = ring_theory();
    Ok(TheoryMorphism::from_parts(k, vec![parse_term(text, &ring, k).map_err(err)?]))
}

fn monoid_composite() -> Result<String, String> {
    let monoid = LawvereTheory::new(TheorySpec::monoid());
    let g = monoid.morphism(2, vec![parse_term("a^2 b", monoid.spec(), 2).map_err(err)?]).map_err(err)?;
    let f = monoid
        .morphism(3, vec![parse_term("abc", monoid.spec(), 3).map_err(err)?, parse_term("ab^2c^2", monoid.spec(), 3).map_err(err)?])
        .map_err(err)?;
    let h = monoid.compose(&g, &f).map_err(err)?;
    let expected = parse_term("abc abc ab^2c^2", monoid.spec(), 3).map_err(err)?;
    expect(print_term(&h.components[0]), &print_term(&expected))
}

fn projection() -> Result<String, String> {
    let alpha = BaseFunction::new(3, vec![0]).map_err(err)?;
    expect(LawvereTheory::new(TheorySpec::monoid()).basic(&alpha).to_string(), "{a}: 3 -> 1")
}

fn diagonal() -> Result<String, String> {
    let alpha = BaseFunction::new(1, vec![0, 0, 0]).map_err(err)?;
    expect(LawvereTheory::new(TheorySpec::monoid()).basic(&alpha).to_string(), "{a, a, a}: 1 -> 3")
}

fn ring_law_expands() -> Result<String, String> {
    let raw = parse_raw("(a+b)(c+d)", &ring_theory(), 4, Alphabet::Abc).map_err(err)?;
    expect(print_term(&ring_law().apply(&raw).map_err(err)?), "ac+bc+ad+bd")
}

fn ring_normal_forms() -> Result<String, String> {
    let ring = ring_theory();
    let terms = enumerate_terms(&ring, 2, 5).map_err(err)?;
    for t in &terms {
        let p = factorize(&ring, &TheoryMorphism::from_parts(2, vec![t.clone()])).map_err(err)?;
        for w in &p.left.components {
            if w.any_op(&|op| !TheorySpec::monoid().has_op(op)) {
                return Err(format!("{} has a non-word leaf {}", print_term(t), print_term(w)));
            }
        }
    }
    Ok(format!("{} normal forms over words", terms.len()))
}

fn ring3_hexagon() -> Result<String, String> {
    let report = check_yang_baxter(&ring3_series(), &Sampler::default().with_samples(300));
    if report.passed() {
        Ok(format!("{} samples", report.sample_count))
    } else {
        Err(report.to_string())
    }
}

fn factorize_ab_plus_c() -> Result<String, String> {
    let p = factorize(&ring_theory(), &ring_morphism("ab+c", 3)?).map_err(err)?;
    expect(p.to_string(), "{ab, c};{x+y}")
}

fn factorize_doubled_square() -> Result<String, String> {
    let p = factorize(&ring_theory(), &ring_morphism("a^2+a^2", 1)?).map_err(err)?;
    expect(p.to_string(), "{aa};{x+x}")
}

fn projection_pair_zigzag() -> Result<String, String> {
    let p = ring_pair(&["ab", "c"], 3, &["x+y"])?;
    let q = ring_pair(&["ab", "c", "abc"], 3, &["x+y"])?;
    match direct_step(&ring_theory(), &p, &q).map_err(err)? {
        Some(step) => expect(format!("{:?}", step.alpha.table), "[0, 1]"),
        None => Err("no single step".into()),
    }
}

fn doubled_square_zigzag() -> Result<String, String> {
    let ring = ring_theory();
    let p = ring_pair(&["aa", "aa", "a"], 1, &["x+y"])?;
    let q = ring_pair(&["aa"], 1, &["x+x"])?;
    if direct_step(&ring, &p, &q).map_err(err)?.is_some() {
        return Err("a single step exists".into());
    }
    let w = search_witness(&ring, &p, &q, 2).map_err(err)?.ok_or("no witness of length 2")?;
    w.validate(&ring)?;
    expect(format!("{} steps via {}", w.len(), w.pairs[1]), "2 steps via {aa, aa};{x+y}")
}

fn not_unique() -> Result<String, String> {
    let ring = ring_theory();
    let f = ring_morphism("ab+c", 3)?;
    let p = factorize(&ring, &f).map_err(err)?;
    let alts = alternatives(&ring, &p).map_err(err)?;
    let other = alts
        .iter()
        .find(|a| recompose(&ring, a).ok().as_ref() == Some(&f))
        .ok_or("no second factorization")?;
    Ok(format!("{p} and {other}"))
}

fn representable() -> Result<String, String> {
    let c: Cat = Arc::new(FiniteCategory::chain(2));
    let d: Cat = Arc::new(FiniteCategory::chain(3));
    let step = |name: &str| d.find_morphism(name).ok_or(format!("no {name}"));
    let f = FiniteFunctor::new(
        c.clone(),
        d.clone(),
        vec![0, 2],
        (0..c.morphism_count())
            .map(|m| {
                if c.is_identity(m) {
                    Ok(d.identity(if c.source(m) == 0 { 0 } else { 2 }))
                } else {
                    step("0<2")
                }
            })
            .collect::<Result<Vec<_>, _>>()?,
    )
    .map_err(err)?;
    let p = FiniteProfunctor::representable(&f);
    p.validate().map_err(err)?;
    for dd in 0..d.object_count() {
        for cc in 0..c.object_count() {
            if p.size(dd, cc) != d.hom(dd, f.objects[cc]).len() {
                return Err(format!("cell ({dd}, {cc})"));
            }
        }
    }
    Ok(format!("{:?}", p.sizes()))
}

fn oplus_unit() -> Result<String, String> {
    let pointed = PointedMonad { bound: 3 };
    for n in 0..=2 {
        for m in 0..=2 {
            for f in finset::functions(m, n + 1) {
                let right = oplus(&pointed, (n, &f), (0, &[])).ok_or("out of range")?;
                let left = oplus(&pointed, (0, &[]), (n, &f)).ok_or("out of range")?;
                if right != f || left != f {
                    return Err(format!("{f:?} gives {right:?} and {left:?}"));
                }
            }
        }
    }
    Ok("f + 0 = 0 + f = f".into())
}

fn parse_ab_plus_c() -> Result<String, String> {
    expect(print_term(&parse_term("ab+c", &ring_theory(), 3).map_err(err)?), "ab+c")
}

fn parse_product_of_sums() -> Result<String, String> {
    expect(print_term(&parse_term("(a+b)(c+d)", &ring_theory(), 4).map_err(err)?), "ac+bc+ad+bd")
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "monoid-composite-operation", description: "x²y after (abc, ab²c²) is abc·abc·ab²c²", run: monoid_composite },
        Fixture { name: "basic-projection", description: "[1] → [3], 0 ↦ 0 forgets all but the first variable", run: projection },
        Fixture { name: "basic-diagonal", description: "[3] → [1] repeats a variable three times", run: diagonal },
        Fixture { name: "ring-law-expands", description: "λ((a+b)(c+d)) = ac+bc+ad+bd", run: ring_law_expands },
        Fixture { name: "ring-normal-forms", description: "ring normal forms are integer combinations of words", run: ring_normal_forms },
        Fixture { name: "ring3-hexagon", description: "Yang–Baxter hexagon for abelian groups, pointed sets, semigroups", run: ring3_hexagon },
        Fixture { name: "factorize-ab-plus-c", description: "ab+c = (x+y) ∘ {ab, c}", run: factorize_ab_plus_c },
        Fixture { name: "factorize-doubled-square", description: "a²+a² canonicalizes to (x+x) ∘ {a²}", run: factorize_doubled_square },
        Fixture { name: "projection-pair-zigzag", description: "{ab,c} and {ab,c,abc} differ by one projection", run: projection_pair_zigzag },
        Fixture { name: "doubled-square-zigzag", description: "a²+a² needs a zigzag of length 2 through the diagonal", run: doubled_square_zigzag },
        Fixture { name: "factorization-not-unique", description: "ab+c has two different factorizations", run: not_unique },
        Fixture { name: "representable-profunctor", description: "F_*(d, c) = D(d, F c)", run: representable },
        Fixture { name: "oplus-unit", description: "f ⊕ 0 = 0 ⊕ f = f", run: oplus_unit },
        Fixture { name: "parse-ab-plus-c", description: "the ternary operation ab+c", run: parse_ab_plus_c },
        Fixture { name: "parse-product-of-sums", description: "(a+b)(c+d) normalizes to ac+bc+ad+bd", run: parse_product_of_sums },
    ]
}

/// Runs every fixture; one check per fixture name.
pub fn run_fixtures() -> Report {
    let mut report = Report::new("fixtures");
    for fixture in fixtures() {
        report.declare(fixture.name);
        match (fixture.run)() {
            Ok(observed) => {
                report.pass(fixture.name);
                report.detail(fixture.name, observed);
            }
            Err(message) => report.fail(Failure::new(fixture.name, fixture.description, message, "pass")),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_fixture_passes() {
        let report = super::run_fixtures();
        assert!(report.passed(), "{report}");
    }
}
