//! Finitary monads on finite sets, given by their values on `[0], …, [N]`.
//!
//! Elements of `F[n]` are indices `0..size(n)`. Fragments of infinite
//! monads (terms up to a size bound) are partial: `bind` and `map` return
//! `None` when the result falls outside the fragment.

use std::collections::HashMap;

use crate::distlaw::{apply_law, DistributiveLawSpec};
use crate::syntax;
use crate::term::{
    check_layering, enumerate_raw_terms, normalize_layered, split_layer, substitute, Term, TermError, TheorySpec,
};

pub trait FinitaryMonad: Send + Sync {
    fn name(&self) -> String;
    /// Largest `n` for which `F[n]` is available.
    fn max_arity(&self) -> usize;
    fn size(&self, n: usize) -> usize;
    /// `η_n(i)`.
    fn unit(&self, n: usize, i: usize) -> usize;
    /// Kleisli extension of `sigma: [n] → F[m]` applied to `x ∈ F[n]`.
    fn bind(&self, n: usize, x: usize, m: usize, sigma: &[usize]) -> Option<usize>;
    fn show(&self, n: usize, x: usize) -> String;

    /// `F(f)(x)` for `f: [n] → [m]` given as a table.
    fn map(&self, n: usize, x: usize, f: &[usize], m: usize) -> Option<usize> {
        let sigma: Vec<usize> = f.iter().map(|&j| self.unit(m, j)).collect();
        self.bind(n, x, m, &sigma)
    }
}

/// `X ↦ X`.
#[derive(Clone, Debug)]
pub struct IdentityMonad {
    pub bound: usize,
}

impl FinitaryMonad for IdentityMonad {
    fn name(&self) -> String {
        "identity".into()
    }
    fn max_arity(&self) -> usize {
        self.bound
    }
    fn size(&self, n: usize) -> usize {
        n
    }
    fn unit(&self, _n: usize, i: usize) -> usize {
        i
    }
    fn bind(&self, _n: usize, x: usize, _m: usize, sigma: &[usize]) -> Option<usize> {
        Some(sigma[x])
    }
    fn show(&self, _n: usize, x: usize) -> String {
        letter(x)
    }
}

/// `X ↦ X + 1`; the extra element of `F[n]` is `n`, printed `*`.
#[derive(Clone, Debug)]
pub struct PointedMonad {
    pub bound: usize,
}

impl FinitaryMonad for PointedMonad {
    fn name(&self) -> String {
        "pointed".into()
    }
    fn max_arity(&self) -> usize {
        self.bound
    }
    fn size(&self, n: usize) -> usize {
        n + 1
    }
    fn unit(&self, _n: usize, i: usize) -> usize {
        i
    }
    fn bind(&self, n: usize, x: usize, m: usize, sigma: &[usize]) -> Option<usize> {
        Some(if x == n { m } else { sigma[x] })
    }
    fn show(&self, n: usize, x: usize) -> String {
        if x == n { "*".into() } else { letter(x) }
    }
}

fn letter(i: usize) -> String {
    if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") }
}

/// Normal terms of a theory with at most `size_bound` nodes.
#[derive(Clone, Debug)]
pub struct TermFragment {
    theory: TheorySpec,
    size_bound: usize,
    elements: Vec<Vec<Term>>,
    index: Vec<HashMap<Term, usize>>,
}

impl TermFragment {
    pub fn new(theory: TheorySpec, max_arity: usize, size_bound: usize) -> Result<TermFragment, TermError> {
        let elements = (0..=max_arity)
            .map(|n| crate::term::enumerate_terms(&theory, n, size_bound))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TermFragment::from_elements(theory, size_bound, elements))
    }

    fn from_elements(theory: TheorySpec, size_bound: usize, elements: Vec<Vec<Term>>) -> TermFragment {
        let index = elements
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        TermFragment { theory, size_bound, elements, index }
    }

    pub fn theory(&self) -> &TheorySpec {
        &self.theory
    }

    pub fn size_bound(&self) -> usize {
        self.size_bound
    }

    pub fn term(&self, n: usize, x: usize) -> &Term {
        &self.elements[n][x]
    }

    pub fn elements(&self, n: usize) -> &[Term] {
        &self.elements[n]
    }

    pub fn find(&self, n: usize, t: &Term) -> Option<usize> {
        self.index.get(n)?.get(t).copied()
    }
}

impl FinitaryMonad for TermFragment {
    fn name(&self) -> String {
        format!("{} terms of size <= {}", self.theory.name(), self.size_bound)
    }
    fn max_arity(&self) -> usize {
        self.elements.len() - 1
    }
    fn size(&self, n: usize) -> usize {
        self.elements[n].len()
    }
    fn unit(&self, n: usize, i: usize) -> usize {
        self.index[n][&Term::Var(i)]
    }
    fn bind(&self, n: usize, x: usize, m: usize, sigma: &[usize]) -> Option<usize> {
        let sub: Vec<Term> = sigma.iter().map(|&s| self.elements[m][s].clone()).collect();
        let t = substitute(&self.elements[n][x], &sub).ok()?;
        self.find(m, &self.theory.normalize(&t).ok()?)
    }
    fn show(&self, n: usize, x: usize) -> String {
        syntax::print_term(&self.elements[n][x])
    }
}

/// The composite monad `TS` of a distributive law `λ: ST ⇒ TS`, built from
/// the two theories and `λ` alone: elements of `TS[n]` are `T`-normal
/// skeletons over distinct `S`-normal leaves, and the multiplication pushes
/// `S` past `T` with `λ`.
#[derive(Clone, Debug)]
pub struct CompositeFragment {
    law: DistributiveLawSpec,
    size_bound: usize,
    elements: Vec<Vec<Term>>,
    index: Vec<HashMap<Term, usize>>,
}

impl CompositeFragment {
    pub fn new(law: DistributiveLawSpec, max_arity: usize, size_bound: usize) -> Result<CompositeFragment, TermError> {
        let (outer, inner) = (law.outer().clone(), law.inner().clone());
        let layers = [outer.clone(), inner.clone()];
        let mut signature = outer.signature().to_vec();
        signature.extend(inner.signature().iter().copied().filter(|op| !outer.has_op(op)));
        let layer_of = |op: &crate::term::Op| {
            if outer.has_op(op) {
                Some(0)
            } else if inner.has_op(op) {
                Some(1)
            } else {
                None
            }
        };
        let mut elements = Vec::new();
        for n in 0..=max_arity {
            let mut found = Vec::new();
            for level in enumerate_raw_terms(&signature, n, size_bound) {
                let mut fixed = Vec::new();
                for t in level {
                    if check_layering(&t, &layer_of).is_ok() && normalize_layered(&layers, &t)? == t {
                        fixed.push(t);
                    }
                }
                fixed.sort();
                fixed.dedup();
                found.extend(fixed);
            }
            elements.push(found);
        }
        let index = elements
            .iter()
            .map(|ts: &Vec<Term>| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        Ok(CompositeFragment { law, size_bound, elements, index })
    }

    pub fn law(&self) -> &DistributiveLawSpec {
        &self.law
    }

    pub fn elements(&self, n: usize) -> &[Term] {
        &self.elements[n]
    }

    pub fn find(&self, n: usize, t: &Term) -> Option<usize> {
        self.index.get(n)?.get(t).copied()
    }

    /// `x[σ]` computed through `λ`, then layer by layer.
    pub fn multiply(&self, x: &Term, sigma: &[Term]) -> Result<Term, TermError> {
        let (outer, inner) = (self.law.outer(), self.law.inner());
        let layers = [outer.clone(), inner.clone()];
        let mut leaves = Vec::new();
        let skeleton = split_layer(x, &|op| outer.has_op(op), &mut leaves);
        let pushed = leaves
            .iter()
            .map(|s| {
                // s[σ] is S over TS: cut it into S over T over S and apply λ to the S over T part
                let s_sub = substitute(s, sigma)?;
                let mut middle = Vec::new();
                let s_part = split_layer(&s_sub, &|op| inner.has_op(op), &mut middle);
                let mut bottom = Vec::new();
                let t_parts = middle
                    .iter()
                    .map(|w| split_layer(w, &|op| outer.has_op(op), &mut bottom))
                    .collect::<Vec<_>>();
                let st = substitute(&s_part, &t_parts)?;
                let ts = apply_law(&self.law, &st)?;
                substitute(&ts, &bottom)
            })
            .collect::<Result<Vec<_>, TermError>>()?;
        normalize_layered(&layers, &substitute(&skeleton, &pushed)?)
    }
}

impl FinitaryMonad for CompositeFragment {
    fn name(&self) -> String {
        format!("{} composite of size <= {}", self.law.name(), self.size_bound)
    }
    fn max_arity(&self) -> usize {
        self.elements.len() - 1
    }
    fn size(&self, n: usize) -> usize {
        self.elements[n].len()
    }
    fn unit(&self, n: usize, i: usize) -> usize {
        self.index[n][&Term::Var(i)]
    }
    fn bind(&self, n: usize, x: usize, m: usize, sigma: &[usize]) -> Option<usize> {
        let sub: Vec<Term> = sigma.iter().map(|&s| self.elements[m][s].clone()).collect();
        let t = self.multiply(&self.elements[n][x], &sub).ok()?;
        self.find(m, &t)
    }
    fn show(&self, n: usize, x: usize) -> String {
        syntax::print_term(&self.elements[n][x])
    }
}

/// `f₁ ⊕ f₂: m₁ + m₂ → F(n₁ + n₂)` for `f_i: m_i → F(n_i)`, through the
/// canonical map `F n₁ + F n₂ → F(n₁ + n₂)` induced by the two injections.
pub fn oplus(
    monad: &dyn FinitaryMonad,
    (n1, f1): (usize, &[usize]),
    (n2, f2): (usize, &[usize]),
) -> Option<Vec<usize>> {
    let n = n1 + n2;
    if n > monad.max_arity() {
        return None;
    }
    let left: Vec<usize> = (0..n1).collect();
    let right: Vec<usize> = (n1..n).collect();
    let mut out = Vec::with_capacity(f1.len() + f2.len());
    for &x in f1 {
        out.push(monad.map(n1, x, &left, n)?);
    }
    for &x in f2 {
        out.push(monad.map(n2, x, &right, n)?);
    }
    Some(out)
}

/// Built-in fragments by name: `identity`, `pointed`, `free-monoid`.
pub fn builtin(name: &str, bound: usize) -> Option<Box<dyn FinitaryMonad>> {
    match name {
        "identity" => Some(Box::new(IdentityMonad { bound })),
        "pointed" => Some(Box::new(PointedMonad { bound })),
        // words of length at most 2
        "free-monoid" => Some(Box::new(TermFragment::new(TheorySpec::monoid(), bound, 3).ok()?)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlaw::{pointed_semigroup_law, ring_law};
    use crate::syntax::parse_raw;

    #[test]
    fn pointed_sizes_and_bind() {
        let p = PointedMonad { bound: 3 };
        assert_eq!(p.size(2), 3);
        assert_eq!(p.bind(2, 2, 1, &[0, 0]), Some(1));
        assert_eq!(p.map(2, 1, &[0, 0], 1), Some(0));
    }

    #[test]
    fn oplus_pointed_example() {
        let p = PointedMonad { bound: 3 };
        // f1 = const *, f2 = inclusion, both 1 → F1
        let t = oplus(&p, (1, &[1]), (1, &[0])).unwrap();
        assert_eq!(t, vec![2, 1]);
        assert_eq!(oplus(&p, (1, &[1]), (0, &[])).unwrap(), vec![1]);
    }

    #[test]
    fn free_monoid_words() {
        let f = TermFragment::new(TheorySpec::monoid(), 2, 3).unwrap();
        let shown: Vec<String> = (0..f.size(2)).map(|x| f.show(2, x)).collect();
        assert_eq!(shown.len(), 7);
        assert!(shown.contains(&"ba".to_string()));
    }

    #[test]
    fn composite_fragment_multiplies_like_the_ring() {
        let c = CompositeFragment::new(ring_law(), 2, 5).unwrap();
        let th = crate::distlaw::ring_theory();
        let x = parse_raw("a*b", &th, 2, crate::syntax::Alphabet::Abc).unwrap();
        let sigma = vec![
            parse_raw("a+b", &th, 2, crate::syntax::Alphabet::Abc).unwrap(),
            parse_raw("a", &th, 2, crate::syntax::Alphabet::Abc).unwrap(),
        ];
        let got = c.multiply(&x, &sigma).unwrap();
        let want = th.normalize(&substitute(&x, &sigma).unwrap()).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn composite_monoid_elements() {
        let c = CompositeFragment::new(pointed_semigroup_law(), 1, 3).unwrap();
        // point, a, a·a
        assert_eq!(c.size(1), 3);
    }
}
