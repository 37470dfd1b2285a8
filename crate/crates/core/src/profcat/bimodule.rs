//! Monads in the bicategory of profunctors on a fixed category, and the
//! identity-on-objects functors they correspond to.

use std::sync::Arc;

use super::category::{Cat, FiniteCategory, FiniteFunctor, Morphism};
use super::profunctor::FiniteProfunctor;
use super::ProfError;

/// A monad `M: C ⇸ C` with unit `C(d, c) → M(d, c)` and multiplication
/// `M(e, d) × M(d, c) → M(e, c)`, balanced in `d`.
///
/// An element of `M(d, c)` is read as an arrow `d → c`; `mult(y, x)` is
/// "`x` after `y`".
#[derive(Clone, Debug)]
pub struct BimoduleMonad {
    pub profunctor: FiniteProfunctor,
    unit: Vec<usize>,
    /// `mult[e][d][c][y * |M(d, c)| + x]`.
    mult: Vec<Vec<Vec<Vec<usize>>>>,
}

impl BimoduleMonad {
    pub fn new(
        profunctor: FiniteProfunctor,
        unit: Vec<usize>,
        mult: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<BimoduleMonad, ProfError> {
        let c = profunctor.source.clone();
        if !Arc::ptr_eq(&c, &profunctor.target) && *c != *profunctor.target {
            return Err(ProfError::Monad("not an endo-profunctor".into()));
        }
        let n = c.object_count();
        let m = &profunctor;
        let table = (0..n)
            .map(|e| {
                (0..n)
                    .map(|d| {
                        (0..n)
                            .map(|cc| {
                                (0..m.size(e, d))
                                    .flat_map(|y| (0..m.size(d, cc)).map(move |x| (y, x)))
                                    .map(|(y, x)| mult(e, d, cc, y, x))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let monad = BimoduleMonad { profunctor, unit, mult: table };
        monad.check()?;
        Ok(monad)
    }

    pub fn category(&self) -> &Cat {
        &self.profunctor.source
    }

    pub fn unit(&self, f: usize) -> usize {
        self.unit[f]
    }

    pub fn mult(&self, e: usize, d: usize, c: usize, y: usize, x: usize) -> usize {
        self.mult[e][d][c][y * self.profunctor.size(d, c) + x]
    }

    fn check(&self) -> Result<(), ProfError> {
        let cat = self.category().clone();
        let m = &self.profunctor;
        let n = cat.object_count();
        let bad = |msg: &str| Err(ProfError::Monad(msg.to_string()));
        if self.unit.len() != cat.morphism_count() {
            return bad("unit has the wrong length");
        }
        for f in 0..cat.morphism_count() {
            let (a, b) = (cat.source(f), cat.target(f));
            if self.unit[f] >= m.size(a, b) {
                return bad("unit leaves its set");
            }
            for g in 0..cat.morphism_count() {
                if let Some(gf) = cat.compose(g, f) {
                    if self.unit[gf] != m.act_co(g, a, self.unit[f]) {
                        return bad("unit is not natural on the right");
                    }
                    if self.unit[gf] != m.act_contra(f, cat.target(g), self.unit[g]) {
                        return bad("unit is not natural on the left");
                    }
                }
            }
        }
        for e in 0..n {
            for d in 0..n {
                for c in 0..n {
                    for y in 0..m.size(e, d) {
                        for x in 0..m.size(d, c) {
                            if self.mult(e, d, c, y, x) >= m.size(e, c) {
                                return bad("multiplication leaves its set");
                            }
                        }
                    }
                }
            }
        }
        for phi in 0..cat.morphism_count() {
            let (d0, d1) = (cat.source(phi), cat.target(phi));
            for e in 0..n {
                for c in 0..n {
                    for y in 0..m.size(e, d0) {
                        for x in 0..m.size(d1, c) {
                            let left = self.mult(e, d1, c, m.act_co(phi, e, y), x);
                            let right = self.mult(e, d0, c, y, m.act_contra(phi, c, x));
                            if left != right {
                                return bad("multiplication is not balanced");
                            }
                        }
                    }
                }
            }
            // equivariance in the outer variables
            for d in 0..n {
                for c in 0..n {
                    for y in 0..m.size(d1, d) {
                        for x in 0..m.size(d, c) {
                            let left = m.act_contra(phi, c, self.mult(d1, d, c, y, x));
                            let right = self.mult(d0, d, c, m.act_contra(phi, d, y), x);
                            if left != right {
                                return bad("multiplication is not natural on the left");
                            }
                        }
                    }
                    for y in 0..m.size(c, d) {
                        for x in 0..m.size(d, d0) {
                            let left = m.act_co(phi, c, self.mult(c, d, d0, y, x));
                            let right = self.mult(c, d, d1, y, m.act_co(phi, d, x));
                            if left != right {
                                return bad("multiplication is not natural on the right");
                            }
                        }
                    }
                }
            }
        }
        for d in 0..n {
            for c in 0..n {
                for x in 0..m.size(d, c) {
                    if self.mult(d, d, c, self.unit[cat.identity(d)], x) != x
                        || self.mult(d, c, c, x, self.unit[cat.identity(c)]) != x
                    {
                        return bad("unit law fails");
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for z in 0..m.size(a, b) {
                            for y in 0..m.size(b, c) {
                                for x in 0..m.size(c, d) {
                                    let left = self.mult(a, c, d, self.mult(a, b, c, z, y), x);
                                    let right = self.mult(a, b, d, z, self.mult(b, c, d, y, x));
                                    if left != right {
                                        return bad("multiplication is not associative");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Kleisli category of `M`, with the same objects and `M(d, c)` as
/// arrows `d → c`, and the identity-on-objects functor from `C` into it.
pub fn monad_to_functor(monad: &BimoduleMonad) -> (Cat, FiniteFunctor) {
    let c = monad.category();
    let m = &monad.profunctor;
    let n = c.object_count();
    let mut morphisms = Vec::new();
    let mut index = vec![vec![Vec::new(); n]; n];
    for d in 0..n {
        for cc in 0..n {
            for x in 0..m.size(d, cc) {
                index[d][cc].push(morphisms.len());
                morphisms.push(Morphism { name: m.label(d, cc, x), source: d, target: cc });
            }
        }
    }
    let ids = (0..n).map(|o| index[o][o][monad.unit(c.identity(o))]).collect();
    let position: Vec<usize> = (0..n)
        .flat_map(|d| (0..n).flat_map(move |cc| (0..m.size(d, cc)).collect::<Vec<_>>()))
        .collect();
    let ms = morphisms.clone();
    let kleisli = FiniteCategory::from_fn(c.objects().to_vec(), morphisms, ids, |g, f| {
        let (e, d, cc) = (ms[f].source, ms[f].target, ms[g].target);
        index[e][cc][monad.mult(e, d, cc, position[f], position[g])]
    })
    .expect("the Kleisli category of a monad is a category");
    let kleisli: Cat = Arc::new(kleisli);
    let functor = FiniteFunctor {
        source: c.clone(),
        target: kleisli.clone(),
        objects: (0..n).collect(),
        morphisms: (0..c.morphism_count())
            .map(|f| index[c.source(f)][c.target(f)][monad.unit(f)])
            .collect(),
    };
    (kleisli, functor)
}

/// The monad `D(F -, F =)` of a functor `F: C → D`, with the action of `F`
/// as unit and composition in D as multiplication.
pub fn functor_to_monad(functor: &FiniteFunctor) -> Result<BimoduleMonad, ProfError> {
    let (c, d) = (&functor.source, &functor.target);
    let n = c.object_count();
    let fo = &functor.objects;
    let sizes = (0..n).map(|a| (0..n).map(|b| d.hom(fo[a], fo[b]).len()).collect()).collect();
    let pos = |h: usize| d.hom(d.source(h), d.target(h)).iter().position(|&g| g == h).expect("in hom");
    let labels = (0..n)
        .map(|a| (0..n).map(|b| d.hom(fo[a], fo[b]).iter().map(|&h| d.morphism(h).name.clone()).collect()).collect())
        .collect();
    let m = FiniteProfunctor::from_fns(
        c.clone(),
        c.clone(),
        sizes,
        |h, b, x| {
            let arrow = d.hom(fo[c.target(h)], fo[b])[x];
            pos(d.compose(arrow, functor.morphisms[h]).expect("composable"))
        },
        |g, a, x| {
            let arrow = d.hom(fo[a], fo[c.source(g)])[x];
            pos(d.compose(functor.morphisms[g], arrow).expect("composable"))
        },
    )?
    .with_labels(labels);
    let unit = (0..c.morphism_count()).map(|f| pos(functor.morphisms[f])).collect();
    BimoduleMonad::new(m, unit, |e, dd, cc, y, x| {
        let first = d.hom(fo[e], fo[dd])[y];
        let second = d.hom(fo[dd], fo[cc])[x];
        pos(d.compose(second, first).expect("composable"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_monad_gives_identity_functor() {
        let c: Cat = Arc::new(FiniteCategory::chain(3));
        let id = FiniteFunctor::identity(&c);
        let monad = functor_to_monad(&id).unwrap();
        let (k, f) = monad_to_functor(&monad);
        assert_eq!(k.morphism_count(), c.morphism_count());
        assert_eq!(f.objects, vec![0, 1, 2]);
    }

    #[test]
    fn monoid_quotient_monad() {
        // Z/4 → Z/2 is bijective on objects; its monad has two elements per hom
        let c: Cat = Arc::new(FiniteCategory::cyclic_group(4));
        let d: Cat = Arc::new(FiniteCategory::cyclic_group(2));
        let f = FiniteFunctor::new(c, d, vec![0], vec![0, 1, 0, 1]).unwrap();
        let monad = functor_to_monad(&f).unwrap();
        assert_eq!(monad.profunctor.size(0, 0), 2);
        let (k, g) = monad_to_functor(&monad);
        assert_eq!(k.morphism_count(), 2);
        assert_eq!(g.morphisms, vec![0, 1, 0, 1]);
    }
}
