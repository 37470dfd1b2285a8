//! Acceptance run: one line per criterion, exit status 1 if any is red.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lawvere::correspondence::{composite_correspondence_check, roundtrip_check};
use lawvere::distlaw::{
    check_law_axioms, check_yang_baxter, composite_monoid_theory, mutant_ring_law, ring3_series, ring_law,
    ring_theory, DIAGRAMS,
};
use lawvere::factorization::{check_fs_over_F, check_strict_fs, direct_step, factorize, search_witness, FactorizationPair};
use lawvere::monad::{FinitaryMonad, IdentityMonad, PointedMonad};
use lawvere::profcat::{
    compose_prof, prof_iso, random_category, random_profunctor, verify_keyprop, Cat, FiniteCategory, FiniteFunctor,
    FiniteProfunctor,
};
use lawvere::report::Report;
use lawvere::sampler::Sampler;
use lawvere::syntax::{parse_raw, parse_term, parse_term_with, print_term, Alphabet};
use lawvere::term::{enumerate_terms, TheorySpec};
use lawvere::theory::{LawvereTheory, TheoryMorphism};

const LAW_SAMPLES: usize = 500;
const LAW_TIME: Duration = Duration::from_secs(10);
const HEXAGON_SAMPLES: usize = 300;
const HEXAGON_TIME: Duration = Duration::from_secs(30);
const KEYPROP_TIME: Duration = Duration::from_secs(60);
const PROF_TRIPLES: usize = 50;
const RING_SIZE: usize = 6;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn green(r: &Report) -> Result<(), String> {
    ensure(r.passed(), format!("{}", r).lines().take(8).collect::<Vec<_>>().join(" | "))
}

fn timed(limit: Duration, start: Instant) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(format!("{:.2}s < {}s", t.as_secs_f64(), limit.as_secs()))
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let sampler = Sampler::default().with_samples(LAW_SAMPLES);
    ensure(sampler.max_depth == 3 && sampler.max_arity == 4, "sampler bounds drifted")?;
    let r = check_law_axioms(&ring_law(), &sampler);
    green(&r)?;
    for d in &DIAGRAMS[..4] {
        ensure(r.check_count(d) >= LAW_SAMPLES, format!("{d} has {} samples", r.check_count(d)))?;
    }
    let mutant = check_law_axioms(&mutant_ring_law(), &sampler);
    let witness = mutant.failures.first().ok_or("mutant law passed")?;
    let time = timed(LAW_TIME, start)?;
    Ok(format!(
        "ring law {LAW_SAMPLES}/diagram clean; mutant fails {} at {} ({time})",
        witness.check, witness.input
    ))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let r = check_yang_baxter(&ring3_series(), &Sampler::default().with_samples(HEXAGON_SAMPLES));
    green(&r)?;
    let hexagon = r.checks.iter().find(|c| c.name.starts_with("hexagon")).ok_or("no hexagon check")?;
    ensure(hexagon.sample_count >= HEXAGON_SAMPLES, "too few hexagon samples")?;
    ensure(r.check_count("bracketing") == hexagon.sample_count, "bracketing ran on other samples")?;
    Ok(format!("{} hexagon samples, bracketings agree ({})", hexagon.sample_count, timed(HEXAGON_TIME, start)?))
}

fn ring_pair(left: &[&str], k: usize, right: &str) -> Result<FactorizationPair, String> {
    let ring = ring_theory();
    let (outer, inner) = ring.layers().ok_or("ring not layered")?;
    let l = left.iter().map(|s| parse_term(s, inner, k).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
    let r = parse_term_with(right, outer, left.len(), Alphabet::Xyz).map_err(|e| e.to_string())?;
    FactorizationPair::from_terms(&ring, k, l, vec![r]).map_err(|e| e.to_string())
}

fn criterion_3() -> Verdict {
    let ring = ring_theory();
    // (a)
    let raw = parse_raw("(a+b)(c+d)", &ring, 4, Alphabet::Abc).map_err(|e| e.to_string())?;
    let lambda = print_term(&ring_law().apply(&raw).map_err(|e| e.to_string())?);
    ensure(lambda == "ac+bc+ad+bd", format!("(a) {lambda}"))?;
    // (b)
    let monoid = LawvereTheory::new(TheorySpec::monoid());
    let m = |s: &str, k| parse_term(s, monoid.spec(), k).map_err(|e| e.to_string());
    let f = monoid.morphism(3, vec![m("abc", 3)?, m("abbcc", 3)?]).map_err(|e| e.to_string())?;
    let g = monoid.morphism(2, vec![m("aab", 2)?]).map_err(|e| e.to_string())?;
    let h = monoid.compose(&g, &f).map_err(|e| e.to_string())?;
    ensure(print_term(&h.components[0]) == "abcabcabbcc", format!("(b) {h}"))?;
    // (c)
    let f = TheoryMorphism::from_parts(3, vec![parse_term("ab+c", &ring, 3).map_err(|e| e.to_string())?]);
    let p = factorize(&ring, &f).map_err(|e| e.to_string())?;
    let json = p.to_json();
    ensure(json.middle == 2 && json.left == ["ab", "c"] && json.right == ["x+y"], format!("(c) {p}"))?;
    // (d) projection pair: one step
    let q = ring_pair(&["ab", "c", "abc"], 3, "x+y")?;
    ensure(direct_step(&ring, &p, &q).map_err(|e| e.to_string())?.is_some(), "(d) no step for the projection pair")?;
    // (d) a²+a²: no step either way, a witness of length 2 through middle 2
    let p2 = ring_pair(&["aa", "aa", "a"], 1, "x+y")?;
    let q2 = ring_pair(&["aa"], 1, "x+x")?;
    for (x, y) in [(&p2, &q2), (&q2, &p2)] {
        ensure(direct_step(&ring, x, y).map_err(|e| e.to_string())?.is_none(), "(d) length-1 witness exists")?;
    }
    let w = search_witness(&ring, &p2, &q2, 2).map_err(|e| e.to_string())?.ok_or("(d) no length-2 witness")?;
    w.validate(&ring)?;
    ensure(w.len() == 2 && w.pairs[1].middle == 2, format!("(d) witness of length {}", w.len()))?;
    Ok(format!("(a) {lambda}; (b) {}; (c) {p}; (d) 1 step and 2 steps via {}", print_term(&h.components[0]), w.pairs[1]))
}

fn criterion_4() -> Verdict {
    let r = check_fs_over_F(&ring_theory(), 2, 5);
    green(&r)?;
    let count = |key: &str| r.details.get(key).and_then(|v| v.as_u64()).unwrap_or(0) as usize;
    let morphisms = count("morphisms");
    ensure(morphisms > 0 && r.check_count("existence") == morphisms, "existence did not cover every morphism")?;
    let alternatives = count("alternatives");
    ensure(alternatives > 0 && r.check_count("uniqueness") == alternatives, "uniqueness did not cover every alternative")?;
    Ok(format!("existence {morphisms}/{morphisms}, zigzag uniqueness {alternatives}/{alternatives}"))
}

/// Words over two letters of length at most `l`, spelled as the printer does.
fn word_oracle(l: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::from(["1".to_string()]);
    let mut layer = vec![String::new()];
    for _ in 0..l {
        layer = layer.iter().flat_map(|w| ["a", "b"].map(|c| format!("{w}{c}"))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn criterion_5() -> Verdict {
    let th = composite_monoid_theory();
    let mut counts = Vec::new();
    for l in 0..=6usize {
        let size = (2 * l).saturating_sub(1).max(1);
        let found: BTreeSet<String> = enumerate_terms(&th, 2, size)
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|t| t.var_occurrences() <= l)
            .map(print_term)
            .collect();
        let oracle = word_oracle(l);
        ensure(found == oracle, format!("l = {l}: {} terms, oracle {}", found.len(), oracle.len()))?;
        ensure(found.len() == (1 << (l + 1)) - 1, format!("l = {l}: {}", found.len()))?;
        counts.push(found.len());
    }
    Ok(format!("hom(2,1) counts {counts:?}"))
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let mut cells = 0;
    let monads: [Box<dyn FinitaryMonad>; 2] = [Box::new(PointedMonad { bound: 4 }), Box::new(IdentityMonad { bound: 4 })];
    for m in &monads {
        let r = verify_keyprop(m.as_ref(), 3, 3);
        green(&r)?;
        ensure(r.stability.len() == 16 && r.stability.values().all(|&s| s), format!("{}: unstable cells", m.name()))?;
        cells += r.stability.len();
    }
    Ok(format!("pointed and identity, {cells} cells j,n <= 3 stable at level 2 ({})", timed(KEYPROP_TIME, start)?))
}

fn criterion_7() -> Verdict {
    let sampler = Sampler::default();
    let mut rng = sampler.rng_for(7);
    let iso = |p: &FiniteProfunctor, q: &FiniteProfunctor| prof_iso(p, q).map(|w| w.is_some()).map_err(|e| e.to_string());
    let mut representable = 0;
    for i in 0..PROF_TRIPLES {
        let cats: Vec<Cat> = (0..4).map(|_| Arc::new(random_category(&mut rng))).collect();
        ensure(cats.iter().all(|c| c.object_count() <= 3), "category too large")?;
        let p = random_profunctor(&mut rng, &cats[0], &cats[1]);
        let q = random_profunctor(&mut rng, &cats[1], &cats[2]);
        let r = random_profunctor(&mut rng, &cats[2], &cats[3]);
        let c = |g: &FiniteProfunctor, f: &FiniteProfunctor| compose_prof(g, f).map_err(|e| e.to_string());
        ensure(iso(&c(&c(&r, &q)?, &p)?, &c(&r, &c(&q, &p)?)?)?, format!("triple {i}: associativity"))?;
        ensure(iso(&c(&FiniteProfunctor::hom(&cats[1]), &p)?, &p)?, format!("triple {i}: left unit"))?;
        ensure(iso(&c(&p, &FiniteProfunctor::hom(&cats[0]))?, &p)?, format!("triple {i}: right unit"))?;
        if let (Some(f), Some(g)) =
            (FiniteFunctor::random(&mut rng, &cats[0], &cats[1]), FiniteFunctor::random(&mut rng, &cats[1], &cats[2]))
        {
            let gf = g.after(&f).map_err(|e| e.to_string())?;
            let composite = c(&FiniteProfunctor::representable(&g), &FiniteProfunctor::representable(&f))?;
            ensure(iso(&composite, &FiniteProfunctor::representable(&gf))?, format!("triple {i}: representables"))?;
            representable += 1;
        }
    }
    Ok(format!("{PROF_TRIPLES} triples associative and unital, {representable} representable composites"))
}

fn criterion_8() -> Verdict {
    let mut flags = 0;
    for name in ["identity", "pointed", "free-monoid"] {
        let m = lawvere::monad::builtin(name, 4).ok_or("unknown monad")?;
        let r = roundtrip_check(m.as_ref(), 3);
        green(&r)?;
        ensure(r.stability.len() == 4 && r.stability.values().all(|&s| s), format!("{name}: unstable"))?;
        flags += r.stability.len();
    }
    Ok(format!("identity, pointed, free-monoid for |X| <= 3, {flags} stabilization flags set"))
}

/// Size of the ring normal form of `Σ c_w w`: each unit copy of a word costs
/// its size, a negated copy one more, and copies are joined by binary sums.
fn poly_size(poly: &[(usize, i64)]) -> usize {
    let copies: usize = poly.iter().map(|&(_, c)| c.unsigned_abs() as usize).sum();
    if copies == 0 {
        return 1;
    }
    let body: usize = poly
        .iter()
        .map(|&(l, c)| c.unsigned_abs() as usize * ((2 * l).saturating_sub(1).max(1) + usize::from(c < 0)))
        .sum();
    body + copies - 1
}

/// Histogram by size of noncommutative integer polynomials in `k` variables
/// with normal-form size at most `bound`.
fn poly_oracle(k: usize, bound: usize) -> BTreeMap<usize, usize> {
    // only the length of a word enters its size; k^len words of each length
    let mut words = vec![0usize];
    let mut len = 1;
    while k > 0 && 2 * len - 1 <= bound {
        words.extend(std::iter::repeat_n(len, k.pow(len as u32)));
        len += 1;
    }
    let mut hist = BTreeMap::new();
    fn go(words: &[usize], i: usize, chosen: &mut Vec<(usize, i64)>, bound: usize, hist: &mut BTreeMap<usize, usize>) {
        if i == words.len() {
            *hist.entry(poly_size(chosen)).or_insert(0) += 1;
            return;
        }
        for c in -(bound as i64)..=(bound as i64) {
            chosen.push((words[i], c));
            if poly_size(chosen) <= bound {
                go(words, i + 1, chosen, bound, hist);
            }
            chosen.pop();
        }
    }
    go(&words, 0, &mut Vec::new(), bound, &mut hist);
    hist
}

fn criterion_9() -> Verdict {
    let ring = ring_theory();
    let mut sizes = Vec::new();
    for k in 0..=2 {
        let mut hist = BTreeMap::new();
        for t in enumerate_terms(&ring, k, RING_SIZE).map_err(|e| e.to_string())? {
            *hist.entry(t.size()).or_insert(0) += 1;
        }
        let oracle = poly_oracle(k, RING_SIZE);
        ensure(hist == oracle, format!("k = {k}: {hist:?} vs oracle {oracle:?}"))?;
        sizes.push(hist.values().sum::<usize>());
    }
    let r = composite_correspondence_check(&ring_law(), 2, RING_SIZE, &Sampler::default());
    green(&r)?;
    ensure(r.check_count("uniqueness") > 0 && r.check_count("surjective-pairing") > 0, "product structure not run")?;
    Ok(format!("hom(k,1) sizes {sizes:?} match the polynomial oracle; product structure holds"))
}

fn criterion_10() -> Verdict {
    let chain = FiniteCategory::chain(3);
    let class = |c: &FiniteCategory, names: &[&str]| {
        let mut ids = c.identities().to_vec();
        ids.extend(names.iter().map(|n| c.find_morphism(n).expect("named morphism")));
        ids
    };
    let r = check_strict_fs(&chain, &class(&chain, &["0<1"]), &class(&chain, &["1<2"]));
    green(&r)?;
    for axiom in ["unit-L", "unit-R", "mult-L", "mult-R"] {
        ensure(r.check_count(axiom) > 0, format!("{axiom} not checked"))?;
    }
    let iso = FiniteCategory::iso_pair();
    let all = class(&iso, &["u", "v"]);
    let bad = check_strict_fs(&iso, &all, &all);
    let witness = bad.failures_of("uniqueness").next().ok_or("iso pair passed uniqueness")?;
    Ok(format!("chain strict with {} span-law entries; iso pair fails uniqueness at {}", r.sample_count, witness.input))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("ring distributive law", criterion_1),
        ("Yang-Baxter hexagon", criterion_2),
        ("worked examples", criterion_3),
        ("factorization system over finite sets", criterion_4),
        ("monoid from pointed semigroups", criterion_5),
        ("PF composite against Set(n, Fj)", criterion_6),
        ("coend composition", criterion_7),
        ("monad round trip", criterion_8),
        ("ring composite correspondence", criterion_9),
        ("strict factorization systems", criterion_10),
    ];
    let mut red = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg}", i + 1),
            Err(msg) => {
                red += 1;
                println!("criterion {:>2} FAIL {name}: {msg}", i + 1);
            }
        }
    }
    if red == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
