//! Randomized surface invariants beyond the acceptance sizes: skew-symmetry
//! and the index-count formula for polygons with up to 10 marked points,
//! sampling triangulations by deterministic random flip walks.

use cluster_core::detrand::SplitMix64;
use cluster_core::surface::IdealTriangulation;

#[test]
fn m_seed_invariants_up_to_ten_vertices() {
    let mut rng = SplitMix64::new(900);
    for n in 4..=10 {
        // Random walk in the flip graph, checking every station.
        let mut tri = IdealTriangulation::polygon_fan(n);
        for _ in 0..12 {
            let ne = tri.edges().len();
            let nt = tri.triangles().len();
            for m in [2u32, 3, 4] {
                let seed = tri.m_seed(m).unwrap();
                assert!(seed.validate().is_ok(), "skew-symmetry at n={} m={}", n, m);
                let expect = ne * (m as usize - 1) + nt * ((m - 1) * (m - 2) / 2) as usize;
                assert_eq!(seed.size(), expect);
                let boundary = seed.size() - seed.non_frozen().count();
                assert_eq!(boundary, n * (m as usize - 1), "frozen count at m={}", m);
            }
            let internal = tri.internal_edges();
            let pick = internal[rng.below(internal.len() as u64) as usize].clone();
            let (next, _) = tri.flip(&pick.label).unwrap();
            tri = next;
        }
    }
}

#[test]
fn flip_involution_along_random_walks() {
    let mut rng = SplitMix64::new(901);
    for n in [5usize, 7, 10] {
        let mut tri = IdealTriangulation::polygon_zigzag(n);
        for _ in 0..20 {
            let internal = tri.internal_edges();
            let pick = internal[rng.below(internal.len() as u64) as usize].clone();
            let (once, c1) = tri.flip(&pick.label).unwrap();
            let (twice, c2) = once.flip(&c1.flipped_to).unwrap();
            assert_eq!(c2.flipped_to, pick.label);
            assert_eq!(twice.m_seed(2).unwrap(), tri.m_seed(2).unwrap());
            tri = once;
        }
    }
}
