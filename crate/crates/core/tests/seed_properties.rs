//! Randomized seed-level invariants at full stated coverage: skew-symmetry
//! preservation and involutivity over |I| <= 6, entries in [-3, 3].

use cluster_core::detrand::SplitMix64;

#[test]
fn mutation_preserves_skew_symmetry_and_is_involutive() {
    let mut rng = SplitMix64::new(600);
    let mut checks = 0u64;
    for _ in 0..10_000 {
        let s = rng.random_seed(6, 3, true);
        let labels: Vec<String> = s.non_frozen().cloned().collect();
        for k in &labels {
            let m = s.mutate(k).unwrap();
            assert!(m.validate().is_ok(), "skew-symmetry lost at {}:\n{}", k, s);
            assert_eq!(m.mutate(k).unwrap(), s, "involution failed at {}:\n{}", k, s);
            checks += 1;
        }
    }
    assert!(checks >= 10_000);
}

#[test]
fn frozen_data_is_never_touched() {
    let mut rng = SplitMix64::new(601);
    for _ in 0..2_000 {
        let s = rng.random_seed(6, 3, true);
        let labels: Vec<String> = s.non_frozen().cloned().collect();
        for k in &labels {
            let m = s.mutate(k).unwrap();
            assert_eq!(m.indices(), s.indices());
            assert_eq!(m.frozen(), s.frozen());
        }
    }
}
