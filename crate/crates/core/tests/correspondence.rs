use proptest::prelude::*;

use lawvere::correspondence::{
    check_monad_laws, check_monad_map, check_phi_functorial, check_table, istar_composite, phi, phi_map,
    reconstruct_monad_map, roundtrip_all, stable_truncation, MonadMap,
};
use lawvere::monad::{builtin, FinitaryMonad, IdentityMonad, PointedMonad};
use lawvere::sampler::Sampler;

const POINTED: PointedMonad = PointedMonad { bound: 4 };
const IDENTITY: IdentityMonad = IdentityMonad { bound: 4 };

/// Composite in the Kleisli category of the pointed monad, with `n` the point of `[n] + 1`.
fn pointed_oracle(k: usize, n: usize, g: &[usize], f: &[usize]) -> Vec<usize> {
    g.iter().map(|&j| if j == n { k } else { f[j] }).collect()
}

proptest! {
    #[test]
    fn pointed_table_composes_like_partial_functions(
        (k, n, m) in (0..=3usize, 0..=3usize, 0..=3usize),
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<usize> = (0..n).map(|_| rng.random_range(0..=k)).collect();
        let g: Vec<usize> = (0..m).map(|_| rng.random_range(0..=n)).collect();
        let table = phi(&POINTED);
        prop_assert_eq!(table.compose(k, n, &g, &f).unwrap(), pointed_oracle(k, n, &g, &f));
    }

    #[test]
    fn basic_morphisms_are_units((n, alpha) in (1..=3usize).prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, 0..=3)))) {
        let table = phi(&POINTED);
        prop_assert_eq!(table.basic(n, &alpha), alpha);
    }

    #[test]
    fn hom_sizes_are_powers(n in 0..=3usize, m in 0..=3usize) {
        prop_assert_eq!(phi(&POINTED).hom_size(n, m).unwrap(), (n + 1).pow(m as u32));
        prop_assert_eq!(phi(&IDENTITY).hom_size(n, m).unwrap(), n.pow(m as u32));
    }
}

#[test]
fn builtin_monads_and_their_tables_are_lawful() {
    for name in ["identity", "pointed", "free-monoid"] {
        let m = builtin(name, 3).unwrap();
        let r = check_monad_laws(m.as_ref(), 3, &Sampler::default().with_samples(200));
        assert!(r.passed(), "{r}");
        let r = check_table(&phi(m.as_ref()), 3, &Sampler::default().with_samples(200));
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn inclusion_is_a_monad_map_and_phi_is_full_on_it() {
    let inclusion = MonadMap::from_fn(&IDENTITY, 3, |_, x| x);
    assert!(check_monad_map(&IDENTITY, &POINTED, &inclusion).passed());
    let id = MonadMap::identity(&IDENTITY, 3);
    let r = check_phi_functorial(&IDENTITY, &POINTED, &id, &inclusion);
    assert!(r.passed(), "{r}");
    let beta = |n: usize, _m: usize, f: &[usize]| phi_map(&inclusion, n, f);
    let (alpha, r) = reconstruct_monad_map(&IDENTITY, &POINTED, 3, &beta);
    assert!(r.passed(), "{r}");
    assert_eq!(alpha, inclusion);
}

#[test]
fn collapsing_to_the_point_is_not_a_monad_map() {
    let collapse = MonadMap::from_fn(&POINTED, 3, |n, _| n);
    assert!(!check_monad_map(&POINTED, &POINTED, &collapse).passed());
}

#[test]
fn pointed_coend_stabilizes_early() {
    assert_eq!(stable_truncation(&phi(&POINTED), 2, 3).unwrap(), Some(1));
}

#[test]
fn every_builtin_round_trips() {
    for r in roundtrip_all(&["identity", "pointed", "free-monoid"], 3, 2) {
        assert!(r.passed(), "{r}");
        assert!(r.stability.values().all(|&s| s), "{r}");
    }
}

#[test]
fn istar_composite_recovers_phi() {
    for m in [&IDENTITY as &dyn FinitaryMonad, &POINTED] {
        let (_, r) = istar_composite(m, 2).unwrap();
        assert!(r.passed(), "{r}");
    }
}
