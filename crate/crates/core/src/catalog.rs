//! Built-in theories, laws, series and monads by name.

use crate::distlaw::{
    composite_monoid_theory, composite_theory_unchecked, mutant_ring_law, nonunital_ring_law, pointed_abgroup_law,
    pointed_abgroup_mutant, pointed_semigroup_law, ring3_mutant_series, ring3_series, ring_law, ring_theory,
    DistributiveLawSpec, DistributiveSeries,
};
use crate::monad::{builtin, FinitaryMonad};
use crate::term::TheorySpec;

pub const THEORIES: &[&str] = &[
    "identity",
    "monoid",
    "semigroup",
    "abgroup",
    "pointed",
    "cmonoid",
    "ring",
    "nonunital-ring",
    "monoid-composite",
    "pointed-abgroup",
    "ring3",
];

pub const LAWS: &[&str] =
    &["ring", "nonunital-ring", "ring-mutant", "monoid", "pointed-abgroup", "pointed-abgroup-mutant"];

pub const SERIES: &[&str] = &["ring3", "ring3-mutant"];

pub const MONADS: &[&str] = &["identity", "pointed", "free-monoid"];

pub fn theory(name: &str) -> Option<TheorySpec> {
    Some(match name {
        "identity" => TheorySpec::identity(),
        "monoid" => TheorySpec::monoid(),
        "semigroup" => TheorySpec::semigroup(),
        "abgroup" => TheorySpec::abelian_group(),
        "pointed" => TheorySpec::pointed(),
        "cmonoid" => TheorySpec::commutative_monoid(),
        "ring" => ring_theory(),
        "nonunital-ring" => composite_theory_unchecked(&nonunital_ring_law()),
        "monoid-composite" => composite_monoid_theory(),
        "pointed-abgroup" => composite_theory_unchecked(&pointed_abgroup_law()),
        "ring3" => ring3_series().composite_right(),
        _ => return None,
    })
}

pub fn law(name: &str) -> Option<DistributiveLawSpec> {
    Some(match name {
        "ring" => ring_law(),
        "nonunital-ring" => nonunital_ring_law(),
        "ring-mutant" => mutant_ring_law(),
        "monoid" => pointed_semigroup_law(),
        "pointed-abgroup" => pointed_abgroup_law(),
        "pointed-abgroup-mutant" => pointed_abgroup_mutant(),
        _ => return None,
    })
}

pub fn series(name: &str) -> Option<DistributiveSeries> {
    match name {
        "ring3" => Some(ring3_series()),
        "ring3-mutant" => Some(ring3_mutant_series()),
        _ => None,
    }
}

/// A monad fragment on `[0], …, [bound]`.
pub fn monad(name: &str, bound: usize) -> Option<Box<dyn FinitaryMonad>> {
    builtin(name, bound)
}
