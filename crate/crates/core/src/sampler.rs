//! Seeded random generation of terms and tuples for the property checks.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::term::{Op, Term};

pub type SampleRng = ChaCha8Rng;

/// Bounds and seed for sampled checks. Every report echoes these values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Sampler {
    pub seed: u64,
    pub samples: usize,
    /// Height bound for the term in each layer.
    pub max_depth: usize,
    /// Bound on tuple lengths between layers and on the leaves of a layer term.
    pub max_width: usize,
    /// Bound on the number of free variables.
    pub max_arity: usize,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler { seed: 0, samples: 500, max_depth: 3, max_width: 4, max_arity: 4 }
    }
}

impl Sampler {
    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn rng(&self) -> SampleRng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// A derived generator, so independent parts of a check do not share a stream.
    pub fn rng_for(&self, stream: u64) -> SampleRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// A term of height at most `max_depth` with at most `max_width` leaves.
    pub fn term(&self, rng: &mut SampleRng, signature: &[Op], k: usize) -> Option<Term> {
        random_term(rng, signature, k, self.max_depth, self.max_width)
    }
}

/// A random term over `k` variables. Returns `None` when no leaf exists
/// (no variables and no constants).
pub fn random_term(
    rng: &mut SampleRng,
    signature: &[Op],
    k: usize,
    depth: usize,
    max_leaves: usize,
) -> Option<Term> {
    let constants: Vec<Op> = signature.iter().copied().filter(|op| op.arity == 0).collect();
    if k == 0 && constants.is_empty() {
        return None;
    }
    let compound: Vec<Op> = signature.iter().copied().filter(|op| op.arity > 0).collect();
    Some(gen(rng, &constants, &compound, k, depth, max_leaves.max(1)))
}

fn gen(
    rng: &mut SampleRng,
    constants: &[Op],
    compound: &[Op],
    k: usize,
    depth: usize,
    budget: usize,
) -> Term {
    let usable: Vec<Op> = compound.iter().copied().filter(|op| op.arity <= budget).collect();
    if depth == 0 && k > 0 {
        // a constant would add one to the height
        return Term::Var(rng.random_range(0..k));
    }
    if depth == 0 || usable.is_empty() || rng.random_bool(0.35) {
        return leaf(rng, constants, k);
    }
    let op = *usable.choose(rng).expect("nonempty");
    // every child gets one leaf, the rest of the budget is spread at random
    let mut shares = vec![1usize; op.arity];
    for _ in 0..budget - op.arity {
        if rng.random_bool(0.5) {
            let i = rng.random_range(0..op.arity);
            shares[i] += 1;
        }
    }
    let args = shares.into_iter().map(|b| gen(rng, constants, compound, k, depth - 1, b)).collect();
    Term::App(op, args)
}

fn leaf(rng: &mut SampleRng, constants: &[Op], k: usize) -> Term {
    let n = k + constants.len();
    let i = rng.random_range(0..n);
    if i < k {
        Term::Var(i)
    } else {
        Term::constant(constants[i - k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::ops::*;

    #[test]
    fn respects_bounds() {
        let s = Sampler::default();
        let mut rng = s.rng();
        for _ in 0..200 {
            let t = s.term(&mut rng, &[MUL, UNIT, ADD, NEG, ZERO], 3).unwrap();
            assert!(t.height() <= s.max_depth);
            assert!(t.check(3).is_ok());
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let s = Sampler::default().with_seed(42);
        let a: Vec<Term> = {
            let mut rng = s.rng();
            (0..20).map(|_| s.term(&mut rng, &[MUL, ADD], 2).unwrap()).collect()
        };
        let b: Vec<Term> = {
            let mut rng = s.rng();
            (0..20).map(|_| s.term(&mut rng, &[MUL, ADD], 2).unwrap()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn no_leaves_available() {
        let mut rng = Sampler::default().rng();
        assert!(random_term(&mut rng, &[SEMI_MUL], 0, 3, 4).is_none());
    }
}
