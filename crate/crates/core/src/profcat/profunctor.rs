//! Profunctors `C ⇸ D` as functors `D^op × C → FinSet` given by tables.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::Rng;
use rayon::prelude::*;

use super::category::{Cat, FiniteCategory, FiniteFunctor};
use super::ProfError;
use crate::sampler::SampleRng;

/// Elements of a single coend above this count are refused.
const COEND_LIMIT: usize = 40_000_000;

/// Node budget of the isomorphism search.
pub const ISO_SEARCH_LIMIT: usize = 2_000_000;

/// A profunctor `P: C ⇸ D`, that is a functor `D^op × C → Set` with finite
/// values `P(d, c) = {0, …, sizes[d][c] - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteProfunctor {
    pub source: Cat,
    pub target: Cat,
    sizes: Vec<Vec<usize>>,
    /// `contra[h][c]`, for `h: d' → d` in D, maps `P(d, c) → P(d', c)`.
    contra: Vec<Vec<Vec<usize>>>,
    /// `co[f][d]`, for `f: c → c'` in C, maps `P(d, c) → P(d, c')`.
    co: Vec<Vec<Vec<usize>>>,
    labels: Option<Vec<Vec<Vec<String>>>>,
}

pub(crate) fn same_category(a: &Cat, b: &Cat) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteProfunctor {
    /// Builds a profunctor from its action functions and checks the laws.
    pub fn new(
        source: Cat,
        target: Cat,
        sizes: Vec<Vec<usize>>,
        contra: impl Fn(usize, usize, usize) -> usize,
        co: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<FiniteProfunctor, ProfError> {
        let p = FiniteProfunctor::from_fns(source, target, sizes, contra, co)?;
        p.validate()?;
        Ok(p)
    }

    /// Like [`new`](Self::new) without the functoriality check; the tables
    /// are still checked to stay in range.
    pub(crate) fn from_fns(
        source: Cat,
        target: Cat,
        sizes: Vec<Vec<usize>>,
        contra: impl Fn(usize, usize, usize) -> usize,
        co: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<FiniteProfunctor, ProfError> {
        let (c, d) = (&source, &target);
        if sizes.len() != d.object_count() || sizes.iter().any(|r| r.len() != c.object_count()) {
            return Err(ProfError::Profunctor("size table has the wrong shape".into()));
        }
        let contra_t: Vec<Vec<Vec<usize>>> = (0..d.morphism_count())
            .map(|h| {
                let d0 = d.target(h);
                (0..c.object_count()).map(|ci| (0..sizes[d0][ci]).map(|x| contra(h, ci, x)).collect()).collect()
            })
            .collect();
        let co_t: Vec<Vec<Vec<usize>>> = (0..c.morphism_count())
            .map(|f| {
                let c0 = c.source(f);
                (0..d.object_count()).map(|di| (0..sizes[di][c0]).map(|x| co(f, di, x)).collect()).collect()
            })
            .collect();
        for h in 0..d.morphism_count() {
            for ci in 0..c.object_count() {
                let bound = sizes[d.source(h)][ci];
                if contra_t[h][ci].iter().any(|&y| y >= bound) {
                    return Err(ProfError::Profunctor(format!("action of {} leaves its set", d.morphism(h).name)));
                }
            }
        }
        for f in 0..c.morphism_count() {
            for di in 0..d.object_count() {
                let bound = sizes[di][c.target(f)];
                if co_t[f][di].iter().any(|&y| y >= bound) {
                    return Err(ProfError::Profunctor(format!("action of {} leaves its set", c.morphism(f).name)));
                }
            }
        }
        Ok(FiniteProfunctor { source, target, sizes, contra: contra_t, co: co_t, labels: None })
    }

    /// Checks identities, functoriality of both actions, and that they commute.
    pub fn validate(&self) -> Result<(), ProfError> {
        let (c, d) = (&self.source, &self.target);
        let bad = |msg: String| Err(ProfError::Profunctor(msg));
        for di in 0..d.object_count() {
            for ci in 0..c.object_count() {
                let n = self.sizes[di][ci];
                let idd = &self.contra[d.identity(di)][ci];
                let idc = &self.co[c.identity(ci)][di];
                if (0..n).any(|x| idd[x] != x || idc[x] != x) {
                    return bad(format!("identities do not act trivially at ({di}, {ci})"));
                }
            }
        }
        // contravariant: (h ∘ k)^* = k^* ∘ h^*
        for h in 0..d.morphism_count() {
            for k in 0..d.morphism_count() {
                let Some(hk) = d.compose(h, k) else { continue };
                for ci in 0..c.object_count() {
                    for x in 0..self.sizes[d.target(h)][ci] {
                        if self.contra[hk][ci][x] != self.contra[k][ci][self.contra[h][ci][x]] {
                            return bad(format!(
                                "contravariant action fails at {} ∘ {}",
                                d.morphism(h).name,
                                d.morphism(k).name
                            ));
                        }
                    }
                }
            }
        }
        for g in 0..c.morphism_count() {
            for f in 0..c.morphism_count() {
                let Some(gf) = c.compose(g, f) else { continue };
                for di in 0..d.object_count() {
                    for x in 0..self.sizes[di][c.source(f)] {
                        if self.co[gf][di][x] != self.co[g][di][self.co[f][di][x]] {
                            return bad(format!(
                                "covariant action fails at {} ∘ {}",
                                c.morphism(g).name,
                                c.morphism(f).name
                            ));
                        }
                    }
                }
            }
        }
        for h in 0..d.morphism_count() {
            for f in 0..c.morphism_count() {
                let (d1, d0) = (d.source(h), d.target(h));
                let (c0, c1) = (c.source(f), c.target(f));
                for x in 0..self.sizes[d0][c0] {
                    let a = self.co[f][d1][self.contra[h][c0][x]];
                    let b = self.contra[h][c1][self.co[f][d0][x]];
                    if a != b {
                        return bad(format!(
                            "actions of {} and {} do not commute",
                            d.morphism(h).name,
                            c.morphism(f).name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<Vec<Vec<String>>>) -> FiniteProfunctor {
        self.labels = Some(labels);
        self
    }

    pub fn size(&self, d: usize, c: usize) -> usize {
        self.sizes[d][c]
    }

    pub fn sizes(&self) -> &[Vec<usize>] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().flatten().sum()
    }

    /// `h^* x` for `h: d' → d` and `x ∈ P(d, c)`.
    pub fn act_contra(&self, h: usize, c: usize, x: usize) -> usize {
        self.contra[h][c][x]
    }

    /// `f_* x` for `f: c → c'` and `x ∈ P(d, c)`.
    pub fn act_co(&self, f: usize, d: usize, x: usize) -> usize {
        self.co[f][d][x]
    }

    pub fn label(&self, d: usize, c: usize, x: usize) -> String {
        match &self.labels {
            Some(l) => l[d][c][x].clone(),
            None => x.to_string(),
        }
    }

    /// The hom profunctor `C(-, =): C ⇸ C`.
    pub fn hom(c: &Cat) -> FiniteProfunctor {
        let n = c.object_count();
        let sizes = (0..n).map(|a| (0..n).map(|b| c.hom(a, b).len()).collect()).collect();
        let pos = |f: usize| c.hom(c.source(f), c.target(f)).iter().position(|&g| g == f).expect("in hom");
        let labels = (0..n)
            .map(|a| (0..n).map(|b| c.hom(a, b).iter().map(|&f| c.morphism(f).name.clone()).collect()).collect())
            .collect();
        FiniteProfunctor::from_fns(
            c.clone(),
            c.clone(),
            sizes,
            |h, b, x| {
                let f = c.hom(c.target(h), b)[x];
                pos(c.compose(f, h).expect("composable"))
            },
            |g, a, x| {
                let f = c.hom(a, c.source(g))[x];
                pos(c.compose(g, f).expect("composable"))
            },
        )
        .expect("hom profunctor")
        .with_labels(labels)
    }

    /// `F_*: C ⇸ D` with `F_*(d, c) = D(d, F c)`.
    pub fn representable(f: &FiniteFunctor) -> FiniteProfunctor {
        let (c, d) = (&f.source, &f.target);
        let sizes = (0..d.object_count())
            .map(|di| (0..c.object_count()).map(|ci| d.hom(di, f.objects[ci]).len()).collect())
            .collect();
        let pos = |m: usize| d.hom(d.source(m), d.target(m)).iter().position(|&g| g == m).expect("in hom");
        FiniteProfunctor::from_fns(
            c.clone(),
            d.clone(),
            sizes,
            |h, ci, x| {
                let m = d.hom(d.target(h), f.objects[ci])[x];
                pos(d.compose(m, h).expect("composable"))
            },
            |g, di, x| {
                let m = d.hom(di, f.objects[c.source(g)])[x];
                pos(d.compose(f.morphisms[g], m).expect("composable"))
            },
        )
        .expect("representable profunctor")
    }

    /// `F^*: D ⇸ C` with `F^*(c, d) = D(F c, d)`.
    pub fn corepresentable(f: &FiniteFunctor) -> FiniteProfunctor {
        let (c, d) = (&f.source, &f.target);
        let sizes = (0..c.object_count())
            .map(|ci| (0..d.object_count()).map(|di| d.hom(f.objects[ci], di).len()).collect())
            .collect();
        let pos = |m: usize| d.hom(d.source(m), d.target(m)).iter().position(|&g| g == m).expect("in hom");
        FiniteProfunctor::from_fns(
            d.clone(),
            c.clone(),
            sizes,
            |h, di, x| {
                let m = d.hom(f.objects[c.target(h)], di)[x];
                pos(d.compose(m, f.morphisms[h]).expect("composable"))
            },
            |g, ci, x| {
                let m = d.hom(f.objects[ci], d.source(g))[x];
                pos(d.compose(g, m).expect("composable"))
            },
        )
        .expect("corepresentable profunctor")
    }

    /// The constant profunctor with `n` elements everywhere and trivial actions.
    pub fn constant(source: &Cat, target: &Cat, n: usize) -> FiniteProfunctor {
        let sizes = vec![vec![n; source.object_count()]; target.object_count()];
        FiniteProfunctor::from_fns(source.clone(), target.clone(), sizes, |_, _, x| x, |_, _, x| x)
            .expect("constant profunctor")
    }

    /// Pointwise disjoint union: elements of `self` first.
    pub fn sum(&self, other: &FiniteProfunctor) -> Result<FiniteProfunctor, ProfError> {
        if !same_category(&self.source, &other.source) || !same_category(&self.target, &other.target) {
            return Err(ProfError::Mismatch("summands have different categories".into()));
        }
        let sizes = (0..self.sizes.len())
            .map(|d| (0..self.sizes[d].len()).map(|c| self.sizes[d][c] + other.sizes[d][c]).collect())
            .collect();
        let split = |n: usize, x: usize| if x < n { (true, x) } else { (false, x - n) };
        FiniteProfunctor::from_fns(
            self.source.clone(),
            self.target.clone(),
            sizes,
            |h, c, x| match split(self.sizes[self.target.target(h)][c], x) {
                (true, x) => self.contra[h][c][x],
                (false, x) => self.sizes[self.target.source(h)][c] + other.contra[h][c][x],
            },
            |f, d, x| match split(self.sizes[d][self.source.source(f)], x) {
                (true, x) => self.co[f][d][x],
                (false, x) => self.sizes[d][self.source.target(f)] + other.co[f][d][x],
            },
        )
    }

    /// `P ∘ (F × G)`-style restriction along functors: `(d, c) ↦ P(G d, F c)`.
    pub fn restrict(&self, f: &FiniteFunctor, g: &FiniteFunctor) -> Result<FiniteProfunctor, ProfError> {
        if !same_category(&f.target, &self.source) || !same_category(&g.target, &self.target) {
            return Err(ProfError::Mismatch("restriction functors do not land in the right categories".into()));
        }
        let sizes = (0..g.source.object_count())
            .map(|d| (0..f.source.object_count()).map(|c| self.sizes[g.objects[d]][f.objects[c]]).collect())
            .collect();
        FiniteProfunctor::from_fns(
            f.source.clone(),
            g.source.clone(),
            sizes,
            |h, c, x| self.contra[g.morphisms[h]][f.objects[c]][x],
            |m, d, x| self.co[f.morphisms[m]][g.objects[d]][x],
        )
    }
}

/// Per-`(e, c)` data of a coend: classes and a representative `(d, y, x)` of each.
struct CoendCell {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    reps: Vec<(usize, usize, usize)>,
}

/// `G ∘ F` for `F: C ⇸ D` and `G: D ⇸ E`, the coend `∫^d G(e, d) × F(d, c)`.
///
/// Elements are triples `(d, y, x)`; for each generating morphism
/// `φ: d → d'` of D the triples `(d', φ_* y, x)` and `(d, y, φ^* x)` are
/// identified. Classes are numbered by their least triple, with `d`, then
/// `y`, then `x` most significant.
pub fn compose_prof(g: &FiniteProfunctor, f: &FiniteProfunctor) -> Result<FiniteProfunctor, ProfError> {
    if !same_category(&f.target, &g.source) {
        return Err(ProfError::Mismatch("the middle categories differ".into()));
    }
    let (c, d, e) = (&f.source, &f.target, &g.target);
    let pairs: Vec<(usize, usize)> =
        (0..e.object_count()).flat_map(|ei| (0..c.object_count()).map(move |ci| (ei, ci))).collect();
    let cells: Vec<CoendCell> = pairs
        .par_iter()
        .map(|&(ei, ci)| coend_cell(g, f, d, ei, ci))
        .collect::<Result<_, _>>()?;
    let cell = |ei: usize, ci: usize| &cells[ei * c.object_count() + ci];
    let sizes = (0..e.object_count()).map(|ei| (0..c.object_count()).map(|ci| cell(ei, ci).reps.len()).collect()).collect();
    let total: usize = cells.iter().map(|k| k.reps.len()).sum();
    let composite = FiniteProfunctor::from_fns(
        c.clone(),
        e.clone(),
        sizes,
        |h, ci, x| {
            let (dd, y, xx) = cell(e.target(h), ci).reps[x];
            let target = cell(e.source(h), ci);
            let y2 = g.contra[h][dd][y];
            target.class_of[target.offsets[dd] + y2 * f.sizes[dd][ci] + xx]
        },
        |m, ei, x| {
            let (dd, y, xx) = cell(ei, c.source(m)).reps[x];
            let target = cell(ei, c.target(m));
            let x2 = f.co[m][dd][xx];
            target.class_of[target.offsets[dd] + y * f.sizes[dd][c.target(m)] + x2]
        },
    )?;
    if total <= 5000 {
        let labels = (0..e.object_count())
            .map(|ei| {
                (0..c.object_count())
                    .map(|ci| {
                        cell(ei, ci)
                            .reps
                            .iter()
                            .map(|&(dd, y, x)| {
                                format!("{}|{}|{}", d.objects()[dd], g.label(ei, dd, y), f.label(dd, ci, x))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        return Ok(composite.with_labels(labels));
    }
    Ok(composite)
}

fn coend_cell(
    g: &FiniteProfunctor,
    f: &FiniteProfunctor,
    d: &FiniteCategory,
    ei: usize,
    ci: usize,
) -> Result<CoendCell, ProfError> {
    let mut offsets = Vec::with_capacity(d.object_count());
    let mut total = 0usize;
    for di in 0..d.object_count() {
        offsets.push(total);
        total = g.sizes[ei][di]
            .checked_mul(f.sizes[di][ci])
            .and_then(|n| total.checked_add(n))
            .filter(|&n| n <= COEND_LIMIT)
            .ok_or_else(|| ProfError::TooLarge(format!("coend at ({ei}, {ci}) exceeds {COEND_LIMIT} elements")))?;
    }
    let index = |dd: usize, y: usize, x: usize| offsets[dd] + y * f.sizes[dd][ci] + x;
    let mut uf = UnionFind::<usize>::new(total);
    for &phi in d.generators() {
        let (d0, d1) = (d.source(phi), d.target(phi));
        for y in 0..g.sizes[ei][d0] {
            let y2 = g.co[phi][ei][y];
            for x in 0..f.sizes[d1][ci] {
                let x2 = f.contra[phi][ci][x];
                uf.union(index(d1, y2, x), index(d0, y, x2));
            }
        }
    }
    let mut class_of = vec![0; total];
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    for dd in 0..d.object_count() {
        for y in 0..g.sizes[ei][dd] {
            for x in 0..f.sizes[dd][ci] {
                let i = index(dd, y, x);
                let root = uf.find(i);
                let next = reps.len();
                let k = *root_class.entry(root).or_insert_with(|| {
                    reps.push((dd, y, x));
                    next
                });
                class_of[i] = k;
            }
        }
    }
    Ok(CoendCell { offsets, class_of, reps })
}

/// An isomorphism `P ≅ Q` of profunctors with the same categories, as a
/// bijection `P(d, c) → Q(d, c)` for every pair; `None` when none exists.
///
/// Backtracking over the elements of `P`; each choice is propagated along
/// the generating morphisms of both categories.
pub fn prof_iso(p: &FiniteProfunctor, q: &FiniteProfunctor) -> Result<Option<Vec<Vec<Vec<usize>>>>, ProfError> {
    if !same_category(&p.source, &q.source) || !same_category(&p.target, &q.target) {
        return Err(ProfError::Mismatch("profunctors have different categories".into()));
    }
    if p.sizes != q.sizes {
        return Ok(None);
    }
    let mut search = IsoSearch::new(p, q);
    let found = search.run(0)?;
    Ok(found.then_some(search.map))
}

struct IsoSearch<'a> {
    p: &'a FiniteProfunctor,
    q: &'a FiniteProfunctor,
    map: Vec<Vec<Vec<usize>>>,
    used: Vec<Vec<Vec<bool>>>,
    trail: Vec<(usize, usize, usize)>,
    order: Vec<(usize, usize, usize)>,
    /// Bitmask of the endomorphism generators fixing each element.
    fp_p: Vec<Vec<Vec<u64>>>,
    fp_q: Vec<Vec<Vec<u64>>>,
    nodes: usize,
}

const UNSET: usize = usize::MAX;

fn fingerprints(r: &FiniteProfunctor) -> Vec<Vec<Vec<u64>>> {
    let (c, d) = (&r.source, &r.target);
    let mut out: Vec<Vec<Vec<u64>>> =
        r.sizes.iter().map(|row| row.iter().map(|&n| vec![0; n]).collect()).collect();
    let mut bit = 0;
    for &h in d.generators() {
        if d.source(h) == d.target(h) {
            for ci in 0..c.object_count() {
                for (x, fp) in out[d.source(h)][ci].iter_mut().enumerate() {
                    if r.contra[h][ci][x] == x {
                        *fp |= 1 << (bit % 64);
                    }
                }
            }
            bit += 1;
        }
    }
    for &f in c.generators() {
        if c.source(f) == c.target(f) {
            for di in 0..d.object_count() {
                for (x, fp) in out[di][c.source(f)].iter_mut().enumerate() {
                    if r.co[f][di][x] == x {
                        *fp |= 1 << (bit % 64);
                    }
                }
            }
            bit += 1;
        }
    }
    out
}

impl<'a> IsoSearch<'a> {
    fn new(p: &'a FiniteProfunctor, q: &'a FiniteProfunctor) -> IsoSearch<'a> {
        let map = p.sizes.iter().map(|row| row.iter().map(|&n| vec![UNSET; n]).collect()).collect();
        let used = p.sizes.iter().map(|row| row.iter().map(|&n| vec![false; n]).collect()).collect();
        let mut order = Vec::new();
        for (d, row) in p.sizes.iter().enumerate() {
            for (c, &n) in row.iter().enumerate() {
                order.extend((0..n).map(|x| (d, c, x)));
            }
        }
        IsoSearch { p, q, map, used, trail: Vec::new(), order, fp_p: fingerprints(p), fp_q: fingerprints(q), nodes: 0 }
    }

    fn run(&mut self, from: usize) -> Result<bool, ProfError> {
        let Some(pos) = (from..self.order.len()).find(|&i| {
            let (d, c, x) = self.order[i];
            self.map[d][c][x] == UNSET
        }) else {
            return Ok(true);
        };
        let (d, c, x) = self.order[pos];
        for y in 0..self.q.sizes[d][c] {
            if self.used[d][c][y] || self.fp_p[d][c][x] != self.fp_q[d][c][y] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > ISO_SEARCH_LIMIT {
                return Err(ProfError::TooLarge("isomorphism search exceeded its node budget".into()));
            }
            let mark = self.trail.len();
            if self.assign(d, c, x, y) && self.run(pos + 1)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (d, c, x) = self.trail.pop().expect("nonempty trail");
            let y = self.map[d][c][x];
            self.used[d][c][y] = false;
            self.map[d][c][x] = UNSET;
        }
    }

    /// Assigns `x ↦ y` and everything it forces; false on a conflict.
    fn assign(&mut self, d: usize, c: usize, x: usize, y: usize) -> bool {
        let (cc, dc) = (self.p.source.clone(), self.p.target.clone());
        let mut stack = vec![(d, c, x, y)];
        while let Some((d, c, x, y)) = stack.pop() {
            let current = self.map[d][c][x];
            if current == y {
                continue;
            }
            if current != UNSET || self.used[d][c][y] {
                return false;
            }
            self.map[d][c][x] = y;
            self.used[d][c][y] = true;
            self.trail.push((d, c, x));
            for &h in dc.generators() {
                if dc.target(h) == d {
                    stack.push((dc.source(h), c, self.p.contra[h][c][x], self.q.contra[h][c][y]));
                }
            }
            for &f in cc.generators() {
                if cc.source(f) == c {
                    stack.push((d, cc.target(f), self.p.co[f][d][x], self.q.co[f][d][y]));
                }
            }
        }
        true
    }
}

/// A random profunctor between two categories: a sum of constants,
/// representables and corepresentables of random functors.
pub fn random_profunctor(rng: &mut SampleRng, c: &Cat, d: &Cat) -> FiniteProfunctor {
    let mut p = FiniteProfunctor::constant(c, d, rng.random_range(0..2));
    for _ in 0..rng.random_range(1..=2) {
        let q = match rng.random_range(0..3) {
            0 => FiniteFunctor::random(rng, c, d).map(|f| FiniteProfunctor::representable(&f)),
            1 => FiniteFunctor::random(rng, d, c).map(|f| FiniteProfunctor::corepresentable(&f)),
            _ => Some(FiniteProfunctor::constant(c, d, 1)),
        };
        if let Some(q) = q {
            p = p.sum(&q).expect("same categories");
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FiniteCategory) -> Cat {
        Arc::new(c)
    }

    #[test]
    fn hom_is_valid() {
        for c in [FiniteCategory::chain(3), FiniteCategory::iso_pair(), FiniteCategory::cyclic_group(3)] {
            FiniteProfunctor::hom(&arc(c)).validate().unwrap();
        }
    }

    #[test]
    fn hom_is_a_unit() {
        let c = arc(FiniteCategory::chain(3));
        let h = FiniteProfunctor::hom(&c);
        let hh = compose_prof(&h, &h).unwrap();
        hh.validate().unwrap();
        assert!(prof_iso(&hh, &h).unwrap().is_some());
    }

    #[test]
    fn iso_search_rejects_different_actions() {
        let c = arc(FiniteCategory::cyclic_group(2));
        let d = arc(FiniteCategory::discrete(1));
        let trivial = FiniteProfunctor::constant(&c, &d, 2);
        let swap = FiniteProfunctor::new(c.clone(), d.clone(), vec![vec![2]], |_, _, x| x, |f, _, x| {
            if f == 1 { 1 - x } else { x }
        })
        .unwrap();
        assert!(prof_iso(&trivial, &swap).unwrap().is_none());
        assert!(prof_iso(&swap, &swap).unwrap().is_some());
    }

    #[test]
    fn broken_action_rejected() {
        let c = arc(FiniteCategory::cyclic_group(3));
        let d = arc(FiniteCategory::discrete(1));
        // rotation by one for every nonidentity element is not a group action of Z/3
        let r = FiniteProfunctor::new(c, d, vec![vec![3]], |_, _, x| x, |f, _, x| if f == 0 { x } else { (x + 1) % 3 });
        assert!(r.is_err());
    }
}
