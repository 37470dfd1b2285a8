//! Finite categories as explicit composition tables, and functors between them.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ProfError;
use crate::finset;
use crate::sampler::SampleRng;

pub type Cat = Arc<FiniteCategory>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A category with finitely many objects and morphisms, stored as a full
/// composition table. The category laws are checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[g][f] = g ∘ f` when `f` ends where `g` starts.
    compose: Vec<Vec<Option<usize>>>,
    hom: Vec<Vec<Vec<usize>>>,
    generators: Vec<usize>,
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<FiniteCategory, ProfError> {
        let n = objects.len();
        let count = morphisms.len();
        let bad = |msg: String| Err(ProfError::Category(msg));
        if identities.len() != n {
            return bad(format!("{} identities for {n} objects", identities.len()));
        }
        if let Some(m) = morphisms.iter().find(|m| m.source >= n || m.target >= n) {
            return bad(format!("morphism {} has an endpoint out of range", m.name));
        }
        for (o, &id) in identities.iter().enumerate() {
            match morphisms.get(id) {
                Some(m) if m.source == o && m.target == o => {}
                _ => return bad(format!("identity of object {o} is not an endomorphism of it")),
            }
        }
        if compose.len() != count || compose.iter().any(|row| row.len() != count) {
            return bad("composition table has the wrong shape".to_string());
        }
        for g in 0..count {
            for f in 0..count {
                let (mg, mf) = (&morphisms[g], &morphisms[f]);
                match compose[g][f] {
                    None if mf.target == mg.source => {
                        return bad(format!("{} ∘ {} is missing", mg.name, mf.name))
                    }
                    Some(_) if mf.target != mg.source => {
                        return bad(format!("{} ∘ {} is not composable", mg.name, mf.name))
                    }
                    Some(h) if h >= count || morphisms[h].source != mf.source || morphisms[h].target != mg.target => {
                        return bad(format!("{} ∘ {} has the wrong type", mg.name, mf.name))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..count {
            let m = &morphisms[f];
            if compose[identities[m.target]][f] != Some(f) || compose[f][identities[m.source]] != Some(f) {
                return bad(format!("unit law fails at {}", m.name));
            }
        }
        for h in 0..count {
            for g in 0..count {
                let Some(hg) = compose[h][g] else { continue };
                for f in 0..count {
                    let Some(gf) = compose[g][f] else { continue };
                    if compose[hg][f] != compose[h][gf] {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            morphisms[h].name, morphisms[g].name, morphisms[f].name
                        ));
                    }
                }
            }
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.source][m.target].push(i);
        }
        let generators = (0..count).filter(|f| !identities.contains(f)).collect();
        Ok(FiniteCategory { objects, morphisms, identities, compose, hom, generators })
    }

    /// Builds the table from a composition function, called on composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteCategory, ProfError> {
        let count = morphisms.len();
        let table = (0..count)
            .map(|g| {
                (0..count)
                    .map(|f| (morphisms[f].target == morphisms[g].source).then(|| compose(g, f)))
                    .collect()
            })
            .collect();
        FiniteCategory::new(objects, morphisms, identities, table)
    }

    /// Replaces the generating set used by coend computations; fails unless
    /// the given morphisms generate every morphism under composition.
    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<FiniteCategory, ProfError> {
        let mut reached: BTreeSet<usize> = self.identities.iter().copied().collect();
        let mut frontier: Vec<usize> = reached.iter().copied().collect();
        while let Some(f) = frontier.pop() {
            for &g in &generators {
                if let Some(h) = self.compose[g][f] {
                    if reached.insert(h) {
                        frontier.push(h);
                    }
                }
            }
        }
        if reached.len() != self.morphisms.len() {
            return Err(ProfError::Category("generators do not generate the category".into()));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.source(f)] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Non-identity morphisms generating the category; all of them unless
    /// set with [`with_generators`](Self::with_generators).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn opposite(&self) -> FiniteCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), source: m.target, target: m.source })
            .collect();
        let count = self.morphisms.len();
        let compose = (0..count).map(|g| (0..count).map(|f| self.compose[f][g]).collect()).collect();
        let mut op = FiniteCategory::new(self.objects.clone(), morphisms, self.identities.clone(), compose)
            .expect("the opposite of a category is a category");
        op.generators = self.generators.clone();
        op
    }

    /// Whether `f` has a two-sided inverse.
    pub fn is_iso(&self, f: usize) -> bool {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a).iter().any(|&g| {
            self.compose(g, f) == Some(self.identity(a)) && self.compose(f, g) == Some(self.identity(b))
        })
    }

    pub fn discrete(n: usize) -> FiniteCategory {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let morphisms = (0..n).map(|i| Morphism { name: format!("id{i}"), source: i, target: i }).collect();
        FiniteCategory::from_fn(objects, morphisms, (0..n).collect(), |g, _| g).expect("discrete category")
    }

    /// The one-object category of a monoid: `table[g][f] = g·f`, `unit` the neutral element.
    pub fn monoid(elements: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<FiniteCategory, ProfError> {
        let morphisms = elements.into_iter().map(|name| Morphism { name, source: 0, target: 0 }).collect();
        FiniteCategory::from_fn(vec!["*".into()], morphisms, vec![unit], |g, f| table[g][f])
    }

    pub fn cyclic_group(n: usize) -> FiniteCategory {
        let elements = (0..n).map(|i| format!("r{i}")).collect();
        let table = (0..n).map(|g| (0..n).map(|f| (g + f) % n).collect()).collect();
        FiniteCategory::monoid(elements, table, 0).expect("cyclic group")
    }

    /// The monoid `{1, e}` with `e∘e = e`.
    pub fn idempotent() -> FiniteCategory {
        FiniteCategory::monoid(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]], 0)
            .expect("idempotent monoid")
    }

    /// The preorder on `0..n` given by `leq`, which must be reflexive and transitive.
    pub fn preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FiniteCategory, ProfError> {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut index = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index[a][b] = Some(morphisms.len());
                    let name = if a == b { format!("id{a}") } else { format!("{a}<{b}") };
                    morphisms.push(Morphism { name, source: a, target: b });
                }
            }
        }
        let identities = (0..n)
            .map(|a| index[a][a].ok_or_else(|| ProfError::Category("preorder is not reflexive".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let ms = morphisms.clone();
        let compose = |g: usize, f: usize| index[ms[f].source][ms[g].target];
        let count = morphisms.len();
        let table = (0..count)
            .map(|g| {
                (0..count)
                    .map(|f| if ms[f].target == ms[g].source { compose(g, f) } else { None })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        if table.iter().enumerate().any(|(g, row)| {
            row.iter().enumerate().any(|(f, c)| ms[f].target == ms[g].source && c.is_none())
        }) {
            return Err(ProfError::Category("preorder is not transitive".into()));
        }
        FiniteCategory::new(objects, morphisms, identities, table)
    }

    /// The chain `0 → 1 → ⋯ → n-1`, freely generated by its consecutive steps.
    pub fn chain(n: usize) -> FiniteCategory {
        let cat = FiniteCategory::preorder(n, |a, b| a <= b).expect("chain");
        let steps = (0..n.saturating_sub(1))
            .map(|a| cat.find_morphism(&format!("{a}<{}", a + 1)).expect("step"))
            .collect();
        cat.with_generators(steps).expect("steps generate the chain")
    }

    /// Two objects and a pair of mutually inverse morphisms between them.
    pub fn iso_pair() -> FiniteCategory {
        let objects = vec!["x".to_string(), "y".to_string()];
        let m = |name: &str, s, t| Morphism { name: name.into(), source: s, target: t };
        let morphisms = vec![m("idx", 0, 0), m("idy", 1, 1), m("u", 0, 1), m("v", 1, 0)];
        // composite of two morphisms determined by endpoints
        let by_ends = |s: usize, t: usize| match (s, t) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            _ => 3,
        };
        let ms = morphisms.clone();
        FiniteCategory::from_fn(objects, morphisms, vec![0, 1], move |g, f| by_ends(ms[f].source, ms[g].target))
            .expect("iso pair")
    }

    /// Two objects and two parallel morphisms `s, t: 0 → 1`.
    pub fn parallel_pair() -> FiniteCategory {
        let objects = vec!["0".to_string(), "1".to_string()];
        let m = |name: &str, s, t| Morphism { name: name.into(), source: s, target: t };
        let morphisms = vec![m("id0", 0, 0), m("id1", 1, 1), m("s", 0, 1), m("t", 0, 1)];
        let ids = [0, 1];
        FiniteCategory::from_fn(objects, morphisms, ids.to_vec(), |g, f| if ids.contains(&g) { f } else { g })
            .expect("parallel pair")
    }

    /// Finite sets `[0], …, [n]` and all functions between them. Generated
    /// by the transposition and cycle of each `[k]`, the merge `[k] → [k-1]`
    /// of the last two elements, and the inclusion `[k-1] → [k]`.
    pub fn finite_sets(n: usize) -> FiniteCategory {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut tables: Vec<Vec<usize>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut identities = vec![0; n + 1];
        for a in 0..=n {
            for b in 0..=n {
                for f in finset::functions(a, b) {
                    if a == b && f == finset::identity(a) {
                        identities[a] = morphisms.len();
                    }
                    index.insert((a, b, f.clone()), morphisms.len());
                    morphisms.push(Morphism { name: format!("{a}->{b}:{f:?}"), source: a, target: b });
                    tables.push(f);
                }
            }
        }
        let ms = morphisms.clone();
        let cat = FiniteCategory::from_fn(objects, morphisms, identities, |g, f| {
            let table = finset::compose(&tables[g], &tables[f]);
            index[&(ms[f].source, ms[g].target, table)]
        })
        .expect("finite sets");
        let mut gens = Vec::new();
        for k in 0..=n {
            let mut push = |a: usize, b: usize, t: Vec<usize>| {
                let id = index[&(a, b, t)];
                if !cat.is_identity(id) && !gens.contains(&id) {
                    gens.push(id);
                }
            };
            if k >= 2 {
                let mut swap = finset::identity(k);
                swap.swap(0, 1);
                push(k, k, swap);
                push(k, k, (0..k).map(|i| (i + 1) % k).collect());
                let mut merge = finset::identity(k);
                merge[k - 1] = k - 2;
                push(k, k - 1, merge);
            }
            if k >= 1 {
                push(k - 1, k, finset::identity(k - 1));
            }
        }
        cat.with_generators(gens).expect("generators of finite sets")
    }

    /// The function table of a morphism of [`finite_sets`](Self::finite_sets).
    pub fn function_table(&self, f: usize) -> Option<Vec<usize>> {
        let name = &self.morphisms[f].name;
        let list = name.split_once(':')?.1;
        let inner = list.trim_start_matches('[').trim_end_matches(']');
        if inner.is_empty() {
            return Some(Vec::new());
        }
        inner.split(',').map(|s| s.trim().parse().ok()).collect()
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    pub source: Cat,
    pub target: Cat,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FiniteFunctor {
    pub fn new(source: Cat, target: Cat, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<FiniteFunctor, ProfError> {
        let f = FiniteFunctor { source, target, objects, morphisms };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), ProfError> {
        let (c, d) = (&self.source, &self.target);
        let bad = |msg: String| Err(ProfError::Functor(msg));
        if self.objects.len() != c.object_count() || self.morphisms.len() != c.morphism_count() {
            return bad("object or morphism map has the wrong length".into());
        }
        for (f, &image) in self.morphisms.iter().enumerate() {
            if d.source(image) != self.objects[c.source(f)] || d.target(image) != self.objects[c.target(f)] {
                return bad(format!("image of {} has the wrong endpoints", c.morphism(f).name));
            }
        }
        for o in 0..c.object_count() {
            if self.morphisms[c.identity(o)] != d.identity(self.objects[o]) {
                return bad(format!("identity of {} is not preserved", c.objects()[o]));
            }
        }
        for g in 0..c.morphism_count() {
            for f in 0..c.morphism_count() {
                if let Some(gf) = c.compose(g, f) {
                    if d.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                        return bad(format!(
                            "{} ∘ {} is not preserved",
                            c.morphism(g).name,
                            c.morphism(f).name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &Cat) -> FiniteFunctor {
        FiniteFunctor {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FiniteFunctor) -> Result<FiniteFunctor, ProfError> {
        if !Arc::ptr_eq(&first.target, &self.source) && *first.target != *self.source {
            return Err(ProfError::Mismatch("functors are not composable".into()));
        }
        Ok(FiniteFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        })
    }

    /// Every functor `c → d`, in a deterministic order, stopping after `limit`.
    pub fn all(c: &Cat, d: &Cat, limit: usize) -> Vec<FiniteFunctor> {
        let mut out = Vec::new();
        for objects in finset::functions(c.object_count(), d.object_count()) {
            let mut morphisms = vec![usize::MAX; c.morphism_count()];
            for o in 0..c.object_count() {
                morphisms[c.identity(o)] = d.identity(objects[o]);
            }
            let free: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
            extend_functor(c, d, &objects, &free, 0, &mut morphisms, &mut out, limit);
            if out.len() >= limit {
                break;
            }
        }
        out
    }

    pub fn random(rng: &mut SampleRng, c: &Cat, d: &Cat) -> Option<FiniteFunctor> {
        let all = FiniteFunctor::all(c, d, 512);
        all.choose(rng).cloned()
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_functor(
    c: &Cat,
    d: &Cat,
    objects: &[usize],
    free: &[usize],
    next: usize,
    morphisms: &mut Vec<usize>,
    out: &mut Vec<FiniteFunctor>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if next == free.len() {
        out.push(FiniteFunctor {
            source: c.clone(),
            target: d.clone(),
            objects: objects.to_vec(),
            morphisms: morphisms.clone(),
        });
        return;
    }
    let f = free[next];
    for &image in d.hom(objects[c.source(f)], objects[c.target(f)]) {
        morphisms[f] = image;
        // check every composite whose three morphisms are already assigned
        let assigned = |x: usize| morphisms[x] != usize::MAX;
        let consistent = (0..c.morphism_count()).all(|g| {
            (0..c.morphism_count()).all(|h| match c.compose(g, h) {
                Some(gh) if assigned(g) && assigned(h) && assigned(gh) => {
                    d.compose(morphisms[g], morphisms[h]) == Some(morphisms[gh])
                }
                _ => true,
            })
        });
        if consistent {
            extend_functor(c, d, objects, free, next + 1, morphisms, out, limit);
        }
        morphisms[f] = usize::MAX;
    }
}

/// A small random category: a preorder on up to three objects, or one of a
/// few fixed categories with at most two non-identity morphisms per hom-set.
pub fn random_category(rng: &mut SampleRng) -> FiniteCategory {
    match rng.random_range(0..6) {
        0 => FiniteCategory::cyclic_group(2),
        1 => FiniteCategory::idempotent(),
        2 => FiniteCategory::parallel_pair(),
        3 => FiniteCategory::iso_pair(),
        _ => {
            let n = rng.random_range(1..=3);
            // a random order relation compatible with 0 < 1 < 2, then closed
            let mut rel = vec![vec![false; n]; n];
            for (a, row) in rel.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell = a == b || (a < b && rng.random_bool(0.6));
                }
            }
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if rel[a][k] && rel[k][b] {
                            rel[a][b] = true;
                        }
                    }
                }
            }
            FiniteCategory::preorder(n, |a, b| rel[a][b]).expect("closed relation")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_six_morphisms() {
        let c = FiniteCategory::chain(3);
        assert_eq!(c.morphism_count(), 6);
        assert_eq!(c.generators().len(), 2);
    }

    #[test]
    fn broken_table_rejected() {
        let r = FiniteCategory::monoid(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 0]], 1);
        assert!(r.is_err());
    }

    #[test]
    fn finite_sets_counts() {
        let c = FiniteCategory::finite_sets(2);
        // 1 + 0 + 0 + 1 + 1 + 1 + 1 + 2 + 4
        assert_eq!(c.morphism_count(), 11);
        let f = c.hom(2, 1)[0];
        assert_eq!(c.function_table(f), Some(vec![0, 0]));
    }

    #[test]
    fn functors_into_group() {
        let c: Cat = Arc::new(FiniteCategory::cyclic_group(2));
        let d: Cat = Arc::new(FiniteCategory::cyclic_group(4));
        // homomorphisms Z/2 → Z/4
        assert_eq!(FiniteFunctor::all(&c, &d, 100).len(), 2);
    }

    #[test]
    fn opposite_swaps_order() {
        let c = FiniteCategory::chain(2);
        let op = c.opposite();
        let f = op.find_morphism("0<1").unwrap();
        assert_eq!((op.source(f), op.target(f)), (1, 0));
    }

    #[test]
    fn iso_detection() {
        let c = FiniteCategory::iso_pair();
        assert!(c.is_iso(c.find_morphism("u").unwrap()));
        assert!(!FiniteCategory::idempotent().is_iso(1));
    }
}
