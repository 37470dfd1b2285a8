//! The free finite-product completion on strings, truncated by length, and
//! its extension to profunctors.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{Cat, FiniteCategory, Morphism};
use super::profunctor::FiniteProfunctor;
use super::ProfError;
use crate::finset;

/// Strings of objects of a base category of length at most `max_len`. An
/// arrow `(a_0 … a_{n-1}) → (b_0 … b_{m-1})` is a function `α: [m] → [n]`
/// with a base arrow `a_{α(i)} → b_i` for each `i`.
#[derive(Clone, Debug)]
pub struct PCategory {
    pub base: Cat,
    pub cat: Cat,
    pub strings: Vec<Vec<usize>>,
    /// `(α, components)` of each arrow.
    pub arrows: Vec<(Vec<usize>, Vec<usize>)>,
}

impl PCategory {
    pub fn find_string(&self, s: &[usize]) -> Option<usize> {
        self.strings.iter().position(|t| t == s)
    }
}

fn strings(objects: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0..=max_len).flat_map(|len| finset::functions(len, objects)).collect()
}

/// Fails when the category would have more than `limit` arrows.
pub fn p_category(base: &Cat, max_len: usize, limit: usize) -> Result<PCategory, ProfError> {
    let strings = strings(base.object_count(), max_len);
    let mut morphisms = Vec::new();
    let mut arrows = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut identities = vec![0; strings.len()];
    for (si, a) in strings.iter().enumerate() {
        for (ti, b) in strings.iter().enumerate() {
            for alpha in finset::functions(b.len(), a.len()) {
                let choices: Vec<&[usize]> = (0..b.len()).map(|i| base.hom(a[alpha[i]], b[i])).collect();
                let radix: Vec<usize> = choices.iter().map(|c| c.len()).collect();
                let count: usize = radix.iter().product();
                for k in 0..count {
                    let digits = finset::decode(k, &radix);
                    let comps: Vec<usize> = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
                    if si == ti && alpha == finset::identity(a.len()) && comps.iter().all(|&f| base.is_identity(f)) {
                        identities[si] = morphisms.len();
                    }
                    let names: Vec<&str> = comps.iter().map(|&f| base.morphism(f).name.as_str()).collect();
                    index.insert((si, ti, alpha.clone(), comps.clone()), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{alpha:?}{{{}}}", names.join(",")),
                        source: si,
                        target: ti,
                    });
                    arrows.push((alpha.clone(), comps));
                    if morphisms.len() > limit {
                        return Err(ProfError::TooLarge(format!("more than {limit} arrows")));
                    }
                }
            }
        }
    }
    let names = strings
        .iter()
        .map(|s| format!("({})", s.iter().map(|&o| base.objects()[o].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    let ms = morphisms.clone();
    let cat = FiniteCategory::from_fn(names, morphisms, identities, |g, f| {
        let (alpha, fc) = &arrows[f];
        let (beta, gc) = &arrows[g];
        let composite_alpha = finset::compose(alpha, beta);
        let comps = (0..beta.len())
            .map(|i| base.compose(gc[i], fc[beta[i]]).expect("composable components"))
            .collect();
        index[&(ms[f].source, ms[g].target, composite_alpha, comps)]
    })?;
    Ok(PCategory { base: base.clone(), cat: Arc::new(cat), strings, arrows })
}

/// The extension `PF: PA ⇸ PB` of `F: A ⇸ B`:
/// `PF(b_0 … b_{n-1}; a_0 … a_{m-1}) = ∐_{α: [m] → [n]} ∏_j F(b_{α(j)}, a_j)`.
pub fn p_on_prof(
    f: &FiniteProfunctor,
    pa: &PCategory,
    pb: &PCategory,
) -> Result<FiniteProfunctor, ProfError> {
    if !super::profunctor::same_category(&pa.base, &f.source) || !super::profunctor::same_category(&pb.base, &f.target) {
        return Err(ProfError::Mismatch("string categories are not over the profunctor's categories".into()));
    }
    // layout of PF(b, a): blocks per α, mixed radix inside
    let layout = |b: &[usize], a: &[usize]| -> Vec<(Vec<usize>, Vec<usize>, usize)> {
        let mut offset = 0;
        finset::functions(a.len(), b.len())
            .into_iter()
            .map(|alpha| {
                let radix: Vec<usize> = (0..a.len()).map(|j| f.size(b[alpha[j]], a[j])).collect();
                let start = offset;
                offset += radix.iter().product::<usize>();
                (alpha, radix, start)
            })
            .collect()
    };
    let layouts: Vec<Vec<Vec<(Vec<usize>, Vec<usize>, usize)>>> =
        pb.strings.iter().map(|b| pa.strings.iter().map(|a| layout(b, a)).collect()).collect();
    let block_size = |l: &(Vec<usize>, Vec<usize>, usize)| l.1.iter().product::<usize>();
    let sizes: Vec<Vec<usize>> =
        layouts.iter().map(|row| row.iter().map(|l| l.iter().map(block_size).sum()).collect()).collect();
    let locate = |bi: usize, ai: usize, x: usize| -> (&Vec<usize>, Vec<usize>) {
        let l = &layouts[bi][ai];
        let block = l.iter().find(|b| b.2 <= x && x < b.2 + block_size(b)).expect("element in a block");
        (&block.0, finset::decode(x - block.2, &block.1))
    };
    let place = |bi: usize, ai: usize, alpha: &[usize], digits: &[usize]| -> usize {
        let l = &layouts[bi][ai];
        let (_, radix, start) = l.iter().find(|(a, _, _)| a.as_slice() == alpha).expect("alpha in layout");
        start + finset::encode(digits, radix)
    };
    FiniteProfunctor::from_fns(
        pa.cat.clone(),
        pb.cat.clone(),
        sizes,
        |h, ai, x| {
            // h: b' → b in PB
            let (b1, b0) = (pb.cat.source(h), pb.cat.target(h));
            let (beta, hs) = &pb.arrows[h];
            let a = &pa.strings[ai];
            let (alpha, digits) = locate(b0, ai, x);
            let new_alpha = finset::compose(beta, alpha);
            let new_digits: Vec<usize> =
                (0..a.len()).map(|j| f.act_contra(hs[alpha[j]], a[j], digits[j])).collect();
            place(b1, ai, &new_alpha, &new_digits)
        },
        |g, bi, x| {
            // g: a → a' in PA
            let (a0, a1) = (pa.cat.source(g), pa.cat.target(g));
            let (delta, gs) = &pa.arrows[g];
            let b = &pb.strings[bi];
            let (alpha, digits) = locate(bi, a0, x);
            let new_alpha = finset::compose(alpha, delta);
            let new_digits: Vec<usize> = (0..delta.len())
                .map(|i| f.act_co(gs[i], b[alpha[delta[i]]], digits[delta[i]]))
                .collect();
            place(bi, a1, &new_alpha, &new_digits)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_of_terminal_is_finite_sets_op() {
        let one: Cat = Arc::new(FiniteCategory::discrete(1));
        let p = p_category(&one, 3, 10_000).unwrap();
        // arrows n → m are functions [m] → [n]
        let count: usize = (0..=3).flat_map(|n| (0..=3).map(move |m| finset::count_functions(m, n))).sum();
        assert_eq!(p.cat.morphism_count(), count);
    }

    #[test]
    fn p_of_constant_profunctor() {
        let one: Cat = Arc::new(FiniteCategory::discrete(1));
        let two = FiniteProfunctor::constant(&one, &one, 2);
        let pa = p_category(&one, 2, 10_000).unwrap();
        let pf = p_on_prof(&two, &pa, &pa).unwrap();
        pf.validate().unwrap();
        let b = pa.find_string(&[0, 0]).unwrap();
        let a = pa.find_string(&[0]).unwrap();
        assert_eq!(pf.size(b, a), 4);
    }
}
