//! The Kleisli data of P on the terminal category, and a brute-force check
//! that `μ ∘ PF: P1 ⇸ P1` is `(j, n) ↦ Set(n, F j)`.
//!
//! Objects of `P1` are naturals and an arrow `a → b` is a function
//! `[b] → [a]`. Objects of `P²1` are strings of naturals; an arrow
//! `(a_0 … a_{n-1}) → (b_0 … b_{m-1})` is `α: [m] → [n]` with functions
//! `β_i: [b_i] → [a_{α(i)}]`.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::finset;
use crate::monad::FinitaryMonad;
use crate::report::{Failure, Report};

/// `μ(k; k_1 … k_m) = P1(k, Σ k_i)` and `η(k) = P1(k, 1)` as function tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleisliData {
    pub mult: Vec<Vec<usize>>,
    pub unit: Vec<Vec<usize>>,
}

pub fn kleisli_unit_mult(k: usize, ks: &[usize]) -> KleisliData {
    let total = ks.iter().sum();
    KleisliData { mult: finset::functions(total, k), unit: finset::functions(1, k) }
}

/// Elements of the truncated coend: for each string `k⃗`, pairs of
/// `t ∈ P1(j, Σk)` (a function `[Σk] → [j]`) and `y ∈ PF(k⃗; l)`.
struct BoxLayout {
    j: usize,
    l: usize,
    strings: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    t_count: Vec<usize>,
    pf: Vec<PfLayout>,
    offset: Vec<usize>,
    total: usize,
}

/// `PF(k⃗; l)`: blocks indexed by `γ: [l] → [len k⃗]`, each a product of `F(k_{γ(p)})`.
struct PfLayout {
    blocks: Vec<(Vec<usize>, Vec<usize>, usize)>,
    size: usize,
}

impl PfLayout {
    fn new(monad: &dyn FinitaryMonad, k: &[usize], l: usize) -> PfLayout {
        let mut start = 0;
        let blocks = finset::functions(l, k.len())
            .into_iter()
            .map(|gamma| {
                let radix: Vec<usize> = gamma.iter().map(|&i| monad.size(k[i])).collect();
                let s = start;
                start += radix.iter().product::<usize>();
                (gamma, radix, s)
            })
            .collect();
        PfLayout { blocks, size: start }
    }

    fn decode(&self, y: usize) -> (&[usize], Vec<usize>) {
        let (gamma, radix, start) =
            self.blocks.iter().find(|(_, r, s)| *s <= y && y < s + r.iter().product::<usize>()).expect("in a block");
        (gamma, finset::decode(y - start, radix))
    }

    fn encode(&self, gamma: &[usize], digits: &[usize]) -> usize {
        let (_, radix, start) = self.blocks.iter().find(|(g, _, _)| g.as_slice() == gamma).expect("gamma");
        start + finset::encode(digits, radix)
    }
}

impl BoxLayout {
    fn new(monad: &dyn FinitaryMonad, j: usize, l: usize, max_value: usize, level: usize) -> BoxLayout {
        let strings: Vec<Vec<usize>> =
            (0..=level).flat_map(|len| finset::functions(len, max_value + 1)).collect();
        let index = strings.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let t_count: Vec<usize> = strings.iter().map(|s| finset::count_functions(s.iter().sum(), j)).collect();
        let pf: Vec<PfLayout> = strings.iter().map(|s| PfLayout::new(monad, s, l)).collect();
        let mut offset = Vec::with_capacity(strings.len());
        let mut total = 0;
        for i in 0..strings.len() {
            offset.push(total);
            total += t_count[i] * pf[i].size;
        }
        BoxLayout { j, l, strings, index, t_count, pf, offset, total }
    }

    fn element(&self, obj: usize, t: usize, y: usize) -> usize {
        self.offset[obj] + t * self.pf[obj].size + y
    }

    fn locate(&self, e: usize) -> (usize, usize, usize) {
        let obj = self.offset.partition_point(|&o| o <= e) - 1;
        // skip empty objects sharing the same offset
        let obj = (0..=obj).rev().find(|&o| e < self.offset[o] + self.t_count[o] * self.pf[o].size).expect("object");
        let r = e - self.offset[obj];
        (obj, r / self.pf[obj].size, r % self.pf[obj].size)
    }

    fn t_digits(&self, obj: usize, t: usize) -> Vec<usize> {
        let len: usize = self.strings[obj].iter().sum();
        finset::decode(t, &vec![self.j; len])
    }

    /// The comparison map to `Set(l, F j)`: `p ↦ F(t ∘ ι_{γ(p)})(x_p)`, encoded.
    fn value(&self, monad: &dyn FinitaryMonad, e: usize) -> Option<Vec<usize>> {
        let (obj, t, y) = self.locate(e);
        let k = &self.strings[obj];
        let tt = self.t_digits(obj, t);
        let (gamma, xs) = self.pf[obj].decode(y);
        let starts: Vec<usize> = k.iter().scan(0, |acc, &v| { let s = *acc; *acc += v; Some(s) }).collect();
        (0..self.l)
            .map(|p| {
                let i = gamma[p];
                let f = &tt[starts[i]..starts[i] + k[i]];
                monad.map(k[i], xs[p], f, self.j)
            })
            .collect()
    }
}

/// One generating arrow `a⃗ → b⃗` of the truncated `P²1`.
struct Generator {
    source: usize,
    target: usize,
    alpha: Vec<usize>,
    betas: Vec<Vec<usize>>,
}

/// Generators of the truncated `P²1`: the transposition and cycle of string
/// positions, duplicating and dropping the last entry, and in each position
/// the transposition, cycle, merge and inclusion of finite sets.
fn generators(layout: &BoxLayout, max_value: usize, level: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for (si, a) in layout.strings.iter().enumerate() {
        let n = a.len();
        let mut reindex = |alpha: Vec<usize>| {
            let b: Vec<usize> = alpha.iter().map(|&i| a[i]).collect();
            let betas = b.iter().map(|&v| finset::identity(v)).collect();
            if let Some(&ti) = layout.index.get(&b) {
                out.push(Generator { source: si, target: ti, alpha, betas });
            }
        };
        if n >= 2 {
            let mut swap = finset::identity(n);
            swap.swap(0, 1);
            reindex(swap);
        }
        if n >= 3 {
            reindex((0..n).map(|i| (i + 1) % n).collect());
        }
        if n >= 1 && n < level {
            let mut dup = finset::identity(n);
            dup.push(n - 1);
            reindex(dup);
        }
        if n >= 1 {
            reindex(finset::identity(n - 1));
        }
        for i in 0..n {
            let v = a[i];
            // functions β: [u] → [v] replacing position i by u
            let mut local: Vec<(usize, Vec<usize>)> = Vec::new();
            if v >= 2 {
                let mut swap = finset::identity(v);
                swap.swap(0, 1);
                local.push((v, swap));
            }
            if v >= 3 {
                local.push((v, (0..v).map(|q| (q + 1) % v).collect()));
            }
            if v >= 1 && v < max_value {
                let mut merge = finset::identity(v + 1);
                merge[v] = v - 1;
                local.push((v + 1, merge));
            }
            if v >= 1 {
                local.push((v - 1, finset::identity(v - 1)));
            }
            for (u, beta) in local {
                let mut b = a.clone();
                b[i] = u;
                let mut betas: Vec<Vec<usize>> = b.iter().map(|&w| finset::identity(w)).collect();
                betas[i] = beta;
                out.push(Generator { source: si, target: layout.index[&b], alpha: finset::identity(n), betas });
            }
        }
    }
    out
}

/// Union-find classes of the truncated coend; `None` if `F` is not defined
/// on some element that an arrow needs.
fn coend_classes(monad: &dyn FinitaryMonad, layout: &BoxLayout, gens: &[Generator]) -> Option<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(layout.total);
    for g in gens {
        let (a, b) = (&layout.strings[g.source], &layout.strings[g.target]);
        // μ(φ): t ↦ ((i, q) ↦ t(α(i), β_i(q)))
        let a_starts: Vec<usize> = a.iter().scan(0, |acc, &v| { let s = *acc; *acc += v; Some(s) }).collect();
        let mu: Vec<usize> = (0..layout.t_count[g.source])
            .map(|t| {
                let tt = layout.t_digits(g.source, t);
                let image: Vec<usize> = (0..b.len())
                    .flat_map(|i| g.betas[i].iter().map(move |&q| (i, q)))
                    .map(|(i, q)| tt[a_starts[g.alpha[i]] + q])
                    .collect();
                finset::encode(&image, &vec![layout.j; image.len()])
            })
            .collect();
        // PF(φ): (γ, x) ↦ (α ∘ γ, F(β_{γ(p)})(x_p))
        let pf_b = &layout.pf[g.target];
        let pf: Vec<usize> = (0..pf_b.size)
            .map(|y| {
                let (gamma, xs) = pf_b.decode(y);
                let new_gamma = finset::compose(&g.alpha, gamma);
                let new_xs = (0..layout.l)
                    .map(|p| {
                        let i = gamma[p];
                        monad.map(b[i], xs[p], &g.betas[i], a[g.alpha[i]])
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(layout.pf[g.source].encode(&new_gamma, &new_xs))
            })
            .collect::<Option<_>>()?;
        for (t, &t2) in mu.iter().enumerate() {
            for (y, &y2) in pf.iter().enumerate() {
                uf.union(layout.element(g.target, t2, y), layout.element(g.source, t, y2));
            }
        }
    }
    Some((0..layout.total).map(|e| uf.find(e)).collect())
}

struct CellResult {
    j: usize,
    l: usize,
    classes: usize,
    expected: usize,
    failures: Vec<Failure>,
    checks: Vec<&'static str>,
    stable: bool,
    /// A representative of each base-level class with its value.
    reps: Vec<(usize, Vec<usize>)>,
}

fn check_cell(monad: &dyn FinitaryMonad, j: usize, l: usize, max_value: usize) -> CellResult {
    let mut failures = Vec::new();
    let mut checks = Vec::new();
    let expected = finset::count_functions(l, monad.size(j));
    let input = format!("j={j}, n={l}");
    let base = BoxLayout::new(monad, j, l, max_value, 1);
    let next = BoxLayout::new(monad, j, l, max_value, 2);
    let (Some(roots1), Some(roots2)) = (
        coend_classes(monad, &base, &generators(&base, max_value, 1)),
        coend_classes(monad, &next, &generators(&next, max_value, 2)),
    ) else {
        failures.push(Failure::new("fragment-closed", input, "an arrow leaves the fragment", "closed"));
        return CellResult { j, l, classes: 0, expected, failures, checks: vec!["fragment-closed"], stable: false, reps: vec![] };
    };

    // classes at the base level, with representatives and values
    let mut class_value: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut reps = Vec::new();
    let mut well_defined = true;
    for e in 0..base.total {
        let Some(v) = base.value(monad, e) else {
            failures.push(Failure::new("well-defined", &input, format!("no value at element {e}"), "a value"));
            well_defined = false;
            continue;
        };
        match class_value.get(&roots1[e]) {
            Some(w) if *w != v => {
                if well_defined {
                    failures.push(Failure::new("well-defined", &input, format!("{w:?}"), format!("{v:?}")));
                }
                well_defined = false;
            }
            Some(_) => {}
            None => {
                class_value.insert(roots1[e], v.clone());
                reps.push((e, v));
            }
        }
    }
    checks.push("well-defined");
    let classes = reps.len();
    checks.push("cardinality");
    if classes != expected {
        failures.push(Failure::new("cardinality", &input, classes.to_string(), expected.to_string()));
    }
    checks.push("bijective");
    let mut values: Vec<&Vec<usize>> = reps.iter().map(|(_, v)| v).collect();
    values.sort();
    values.dedup();
    if values.len() != classes || classes != expected {
        failures.push(Failure::new(
            "bijective",
            &input,
            format!("{} distinct values over {classes} classes", values.len()),
            format!("{expected} distinct values"),
        ));
    }

    // the inclusion of the base level into the next is a bijection on classes
    checks.push("truncation-stability");
    let mut image: Vec<usize> = (0..base.total).map(|e| roots2[e]).collect();
    let base_rep_images: Vec<usize> = reps.iter().map(|(e, _)| roots2[*e]).collect();
    image.sort_unstable();
    image.dedup();
    let mut all2: Vec<usize> = roots2.clone();
    all2.sort_unstable();
    all2.dedup();
    let mut distinct_reps = base_rep_images.clone();
    distinct_reps.sort_unstable();
    distinct_reps.dedup();
    let stable = image.len() == all2.len() && distinct_reps.len() == classes;
    if !stable {
        failures.push(Failure::new(
            "truncation-stability",
            &input,
            format!("{classes} classes at length 1"),
            format!("{} classes at length 2", all2.len()),
        ));
    }
    CellResult { j, l, classes, expected, failures, checks, stable, reps }
}

/// Checks `μ ∘ PF ≅ Set(-, F =)` for all `j ≤ j_bound`, `n ≤ n_bound`.
///
/// Each coend is computed over strings of length at most 1 with entries at
/// most `j_bound`, and recomputed over strings of length at most 2 to
/// confirm that the quotient is stable. Actions are compared along the
/// generating functions of `F` on both variables.
pub fn verify_keyprop(monad: &dyn FinitaryMonad, j_bound: usize, n_bound: usize) -> Report {
    let mut report = Report::new(format!("composite of PF and the multiplication for the {} monad", monad.name()))
        .with_bound("jBound", j_bound)
        .with_bound("nBound", n_bound)
        .with_bound("truncationLevel", 1)
        .with_bound("stabilityLevel", 2);
    for c in ["cardinality", "well-defined", "bijective", "truncation-stability", "action-j", "action-n"] {
        report.declare(c);
    }
    if j_bound > monad.max_arity() {
        report.fail(Failure::new(
            "fragment-closed",
            format!("jBound={j_bound}"),
            format!("fragment stops at {}", monad.max_arity()),
            "covering fragment",
        ));
        return report;
    }
    let cells: Vec<(usize, usize)> = (0..=j_bound).flat_map(|j| (0..=n_bound).map(move |l| (j, l))).collect();
    let results: Vec<CellResult> = cells.par_iter().map(|&(j, l)| check_cell(monad, j, l, j_bound)).collect();
    let mut counts = Vec::new();
    for r in &results {
        let failed: Vec<&str> = r.failures.iter().map(|f| f.check.as_str()).collect();
        for c in &r.checks {
            if !failed.contains(c) {
                report.pass(c);
            }
        }
        for f in &r.failures {
            report.fail(f.clone());
        }
        report.set_stability(&format!("j={},n={}", r.j, r.l), r.stable);
        counts.push(serde_json::json!({"j": r.j, "n": r.l, "classes": r.classes, "expected": r.expected}));
    }
    report.detail("cells", counts);

    // actions: compare the induced action on representatives with Set(n, F j)
    let layouts: HashMap<(usize, usize), BoxLayout> =
        cells.iter().map(|&(j, l)| ((j, l), BoxLayout::new(monad, j, l, j_bound, 1))).collect();
    for r in &results {
        let layout = &layouts[&(r.j, r.l)];
        for (e, v) in &r.reps {
            let (obj, t, y) = layout.locate(*e);
            let tt = layout.t_digits(obj, t);
            // j-action along generating functions ε: [j] → [j']
            for (j2, eps) in base_functions(r.j, j_bound) {
                let target = &layouts[&(j2, r.l)];
                let t2: Vec<usize> = tt.iter().map(|&q| eps[q]).collect();
                let t2 = finset::encode(&t2, &vec![j2; t2.len()]);
                let moved = target.value(monad, target.element(obj, t2, y));
                let expected: Option<Vec<usize>> = v.iter().map(|&x| monad.map(r.j, x, &eps, j2)).collect();
                let input = format!("j={}, n={}, element {e}, along {eps:?}", r.j, r.l);
                report.compare("action-j", &input, &format!("{moved:?}"), &format!("{expected:?}"));
            }
            // n-action along δ: [l'] → [l], precomposition
            let (gamma, xs) = layout.pf[obj].decode(y);
            for (l2, delta) in base_functions_into(r.l, n_bound) {
                let target = &layouts[&(r.j, l2)];
                let g2 = finset::compose(gamma, &delta);
                let x2 = finset::compose(&xs, &delta);
                let moved = target.value(monad, target.element(obj, t, target.pf[obj].encode(&g2, &x2)));
                let expected: Vec<usize> = finset::compose(v, &delta);
                let input = format!("j={}, n={}, element {e}, along {delta:?}", r.j, r.l);
                report.compare("action-n", &input, &format!("{moved:?}"), &format!("{:?}", Some(expected)));
            }
        }
    }
    report
}

/// Generating functions `[n] → [m]` with `m ≤ bound`: transposition, cycle,
/// merge of the last two, inclusion.
fn base_functions(n: usize, bound: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    if n >= 2 {
        let mut swap = finset::identity(n);
        swap.swap(0, 1);
        out.push((n, swap));
        let mut merge = finset::identity(n);
        merge[n - 1] = n - 2;
        out.push((n - 1, merge));
    }
    if n >= 3 {
        out.push((n, (0..n).map(|i| (i + 1) % n).collect()));
    }
    if n < bound {
        out.push((n + 1, finset::identity(n)));
    }
    out
}

/// Generating functions `[m] → [n]` with `m ≤ bound`.
fn base_functions_into(n: usize, bound: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    if n >= 2 {
        let mut swap = finset::identity(n);
        swap.swap(0, 1);
        out.push((n, swap));
        out.push((n, (0..n).map(|i| (i + 1) % n).collect()));
    }
    if n >= 1 {
        out.push((n - 1, finset::identity(n - 1)));
        if n < bound {
            let mut merge = finset::identity(n + 1);
            merge[n] = n - 1;
            out.push((n + 1, merge));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{IdentityMonad, PointedMonad};

    #[test]
    fn kleisli_counts() {
        assert_eq!(kleisli_unit_mult(2, &[1, 1]).mult.len(), 4);
        assert_eq!(kleisli_unit_mult(1, &[]).mult.len(), 1);
        assert_eq!(kleisli_unit_mult(3, &[]).unit.len(), 3);
    }

    #[test]
    fn pointed_small() {
        let r = verify_keyprop(&PointedMonad { bound: 3 }, 1, 2);
        assert!(r.passed(), "{r}");
        let cells = &r.details["cells"];
        let cell = cells.as_array().unwrap().iter().find(|c| c["j"] == 1 && c["n"] == 2).unwrap();
        assert_eq!(cell["classes"], 4);
    }

    #[test]
    fn identity_counts() {
        let r = verify_keyprop(&IdentityMonad { bound: 3 }, 2, 2);
        assert!(r.passed(), "{r}");
        for c in r.details["cells"].as_array().unwrap() {
            let (j, n) = (c["j"].as_u64().unwrap() as u32, c["n"].as_u64().unwrap() as u32);
            assert_eq!(c["classes"].as_u64().unwrap(), (j as u64).pow(n));
        }
    }
}
