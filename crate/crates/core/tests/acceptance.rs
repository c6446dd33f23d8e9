//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`). All checks
//! are exact rational arithmetic; there are no tolerances anywhere.

use std::collections::BTreeMap;

use cluster_core::cluster_maps::{
    a_mutation, aa_mutation, coord, d_mutation, d_mutation_sequence, iota_map, j_map, phi_map,
    pi_map, pp_map, swap_map, x_mutation, xx_mutation, ClusterMap, FrozenMode, TorusKind,
};
use cluster_core::detrand::SplitMix64;
use cluster_core::flagconfig::{reconstruct_double, ConfigError, DoubleConfig};
use cluster_core::rational::{rat_int, Rat};
use cluster_core::seed::Seed;
use cluster_core::surface::{polygon_triangulations, IdealTriangulation};
use num_traits::Zero;

#[test]
fn acceptance_1_mutation_involutivity() {
    let mut rng = SplitMix64::new(1);
    let trials = 10_000;
    let mut map_checks = 0u64;
    for _ in 0..trials {
        let s = rng.random_seed(5, 2, true);
        let labels: Vec<String> = s.non_frozen().cloned().collect();
        for k in &labels {
            let s1 = s.mutate(k).unwrap();
            assert_eq!(s1.mutate(k).unwrap(), s, "seed involutivity at {}", k);
            let pairs = [
                (a_mutation(&s, k).unwrap(), a_mutation(&s1, k).unwrap()),
                (x_mutation(&s, k).unwrap(), x_mutation(&s1, k).unwrap()),
                (d_mutation(&s, k).unwrap(), d_mutation(&s1, k).unwrap()),
            ];
            for (f, g) in pairs {
                assert!(
                    f.compose(&g).unwrap().is_identity(),
                    "map involutivity failed at {} on\n{}",
                    k,
                    s
                );
                map_checks += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 1 (mutation involutivity): PASS — {} seeds, {} map compositions, exact",
        trials, map_checks
    );
}

#[test]
fn acceptance_2_structural_map_suite() {
    let mut rng = SplitMix64::new(2);
    let trials = 1_000;
    let mode = FrozenMode::Strict;
    for _ in 0..trials {
        let s = rng.random_seed(4, 2, false);
        // (a) pi after phi equals p x p.
        let phi = phi_map(&s, mode).unwrap();
        let pi = pi_map(&s, mode).unwrap();
        assert_eq!(phi.compose(&pi).unwrap(), pp_map(&s, mode).unwrap());
        // (b) pi after j lands in the diagonal.
        let pj = j_map(&s, mode).unwrap().compose(&pi).unwrap();
        for label in s.non_frozen() {
            assert_eq!(
                pj.get(&coord("Xl", label)).unwrap(),
                pj.get(&coord("Xr", label)).unwrap()
            );
        }
        // (c) iota is an involution.
        let iota = iota_map(&s, mode).unwrap();
        assert!(iota.compose(&iota).unwrap().is_identity());
        // (d) pi after iota is the factor swap after pi.
        assert_eq!(
            iota.compose(&pi).unwrap(),
            pi.compose(&swap_map(&s).unwrap()).unwrap()
        );
        // (e) naturality of phi, pi, iota under one mutation step.
        for k in s.non_frozen() {
            let s1 = s.mutate(k).unwrap();
            let dmu = d_mutation(&s, k).unwrap();
            let phi_nat_lhs = aa_mutation(&s, k, mode)
                .unwrap()
                .compose(&phi_map(&s1, mode).unwrap())
                .unwrap();
            let phi_nat_rhs = phi.compose(&dmu).unwrap();
            assert_eq!(phi_nat_lhs, phi_nat_rhs, "phi naturality at {}:\n{}", k, s);

            let pi_nat_lhs = dmu.compose(&pi_map(&s1, mode).unwrap()).unwrap();
            let pi_nat_rhs = pi.compose(&xx_mutation(&s, k).unwrap()).unwrap();
            assert_eq!(pi_nat_lhs, pi_nat_rhs, "pi naturality at {}:\n{}", k, s);

            let iota_nat_lhs = dmu.compose(&iota_map(&s1, mode).unwrap()).unwrap();
            let iota_nat_rhs = iota.compose(&dmu).unwrap();
            assert_eq!(iota_nat_lhs, iota_nat_rhs, "iota naturality at {}:\n{}", k, s);
        }
    }
    println!(
        "ACCEPTANCE 2 (structural maps, Theorem 2.3 suite): PASS — {} seeds, parts a–e, exact",
        trials
    );
}

/// Pointwise evaluation of the printed d-mutation formulas; the independent
/// numeric oracle for the pentagon check. Returns None at a pole.
fn d_step_numeric(s: &Seed, k: &str, pt: &BTreeMap<String, Rat>) -> Option<BTreeMap<String, Rat>> {
    let kp = s.position(k).unwrap();
    let xk = pt[&coord("X", k)].clone();
    let one = rat_int(1);
    if xk.is_zero() || xk == rat_int(-1) {
        return None;
    }
    let mut out = BTreeMap::new();
    for label in s.non_frozen() {
        let i = s.position(label).unwrap();
        let e = s.eps_at(i, kp);
        let x = pt[&coord("X", label)].clone();
        let xv = if label == k {
            one.clone() / xk.clone()
        } else if e == 0 {
            x
        } else {
            let base = if e > 0 { &one + &(&one / &xk) } else { &one + &xk };
            if base.is_zero() {
                return None;
            }
            let mut f = one.clone();
            for _ in 0..e.abs() {
                f *= &base;
            }
            if e > 0 { x / f } else { x * f }
        };
        if xv.is_zero() {
            return None;
        }
        out.insert(coord("X", label), xv);
        let b = pt[&coord("B", label)].clone();
        let bv = if label == k {
            if b.is_zero() {
                return None;
            }
            let mut pos = one.clone();
            let mut neg = one.clone();
            for (j, lj) in s.indices().iter().enumerate() {
                if s.is_frozen(lj) {
                    continue;
                }
                let e = s.eps_at(kp, j);
                for _ in 0..e.abs() {
                    if e > 0 {
                        pos *= &pt[&coord("B", lj)];
                    } else {
                        neg *= &pt[&coord("B", lj)];
                    }
                }
            }
            (&xk * &pos + &neg) / ((&one + &xk) * &b)
        } else {
            b
        };
        if bv.is_zero() {
            return None;
        }
        out.insert(coord("B", label), bv);
    }
    Some(out)
}

#[test]
fn acceptance_3_pentagon_periodicity() {
    let s = Seed::a2();
    let composite = d_mutation_sequence(&s, &["1", "2", "1", "2", "1"]).unwrap();
    let sigma = composite
        .identity_permutation()
        .expect("pentagon composite is a coordinate permutation");
    assert_eq!(sigma["B_1"], "B_2");
    assert_eq!(sigma["B_2"], "B_1");
    assert_eq!(sigma["X_1"], "X_2");
    assert_eq!(sigma["X_2"], "X_1");

    // Numeric re-check at 20 random rational points via the independent
    // pointwise oracle.
    let mut rng = SplitMix64::new(3);
    let mut checked = 0;
    while checked < 20 {
        let mut pt = BTreeMap::new();
        for n in ["B_1", "B_2", "X_1", "X_2"] {
            pt.insert(n.to_string(), rng.nonzero_rational(20));
        }
        let mut cur = Some(pt.clone());
        let mut seed = s.clone();
        for k in ["1", "2", "1", "2", "1"] {
            cur = cur.and_then(|c| d_step_numeric(&seed, k, &c));
            seed = seed.mutate(k).unwrap();
        }
        let Some(cur) = cur else { continue };
        assert_eq!(composite.eval(&pt).unwrap(), cur);
        checked += 1;
    }
    println!(
        "ACCEPTANCE 3 (pentagon periodicity): PASS — symbolic transposition + 20 numeric points, exact"
    );
}

#[test]
fn acceptance_4_laurent_positivity() {
    fn dfs(
        seed: &Seed,
        map_so_far: &ClusterMap,
        depth: usize,
        last: Option<&str>,
        checked: &mut u64,
    ) {
        for (name, f) in map_so_far.entries() {
            let rep = f.laurent_report();
            assert!(
                rep.is_laurent && rep.numerator_positive,
                "coordinate {} is not a positive Laurent polynomial: {}",
                name,
                f
            );
            *checked += 1;
        }
        if depth == 8 {
            return;
        }
        let labels: Vec<String> = seed.non_frozen().cloned().collect();
        for k in &labels {
            if last == Some(k.as_str()) {
                continue;
            }
            let step = a_mutation(seed, k).unwrap();
            let next = map_so_far.compose(&step).unwrap();
            dfs(&seed.mutate(k).unwrap(), &next, depth + 1, Some(k), checked);
        }
    }
    let mut checked = 0u64;
    for s in [Seed::a2(), Seed::a3()] {
        let id = ClusterMap::identity(&TorusKind::A.vars(&s));
        dfs(&s, &id, 0, None, &mut checked);
    }
    println!(
        "ACCEPTANCE 4 (Laurent positivity): PASS — {} cluster variables along all length-<=8 sequences from A2 and A3, exact",
        checked
    );
}

#[test]
fn acceptance_5_surface_seed_agreement() {
    let mut flip_checks = 0u64;
    let mut count_checks = 0u64;
    for n in 3..=8 {
        for tri in polygon_triangulations(n) {
            for e in tri.internal_edges() {
                let verdict = tri.flip_mutation_check(&e.label, 2).unwrap();
                assert!(
                    verdict.equal,
                    "flip/mutation mismatch at {} on {}: {:?}",
                    e.label, tri, verdict.discrepancy
                );
                flip_checks += 1;
            }
            let ne = tri.edges().len();
            let nt = tri.triangles().len();
            for m in [2u32, 3, 4] {
                let seed = tri.m_seed(m).unwrap();
                assert!(seed.validate().is_ok(), "skew-symmetry at m={}", m);
                let expect = ne * (m as usize - 1) + nt * ((m - 1) * (m - 2) / 2) as usize;
                assert_eq!(seed.size(), expect, "|I| count at m={}", m);
                count_checks += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 5 (surface/seed agreement): PASS — {} flip checks at m=2, {} skew/count checks for m in {{2,3,4}}, all polygon triangulations n<=8",
        flip_checks, count_checks
    );
}

fn draw_coords(
    rng: &mut SplitMix64,
    tri: &IdealTriangulation,
) -> (BTreeMap<String, Rat>, BTreeMap<String, Rat>) {
    let mut bs = BTreeMap::new();
    let mut xs = BTreeMap::new();
    for e in tri.internal_edges() {
        bs.insert(e.label.clone(), rng.nonzero_rational(10));
        xs.insert(e.label.clone(), rng.nonzero_rational(10));
    }
    (bs, xs)
}

#[test]
fn acceptance_6_reconstruction_round_trip() {
    let mut rng = SplitMix64::new(6);
    let mut total = 0u64;
    let mut skipped = 0u64;
    for n in 4..=8 {
        for tri in polygon_triangulations(n) {
            for _ in 0..100 {
                total += 1;
                let (bs, xs) = draw_coords(&mut rng, &tri);
                match reconstruct_double(&tri, &bs, &xs) {
                    Ok(d) => {
                        let coords = d.double_coords().unwrap();
                        assert_eq!(coords.b, bs, "B round trip on {}", tri);
                        assert_eq!(coords.x, xs, "X round trip on {}", tri);
                    }
                    Err(ConfigError::Degenerate(_)) => skipped += 1,
                    Err(e) => panic!("unexpected reconstruction error: {e}"),
                }
            }
        }
    }
    let rate = skipped as f64 / total as f64;
    assert!(
        rate < 0.05,
        "degenerate skip rate {:.3} is not near zero",
        rate
    );
    println!(
        "ACCEPTANCE 6 (reconstruction round trip): PASS — {} trials over all triangulations n in 4..=8, {} degenerate draws skipped (rate {:.4}), exact",
        total, skipped, rate
    );
}

#[test]
fn acceptance_7_choice_independence() {
    let mut rng = SplitMix64::new(7);
    let mut checks = 0u64;
    for n in 4..=8 {
        for tri in [
            IdealTriangulation::polygon_fan(n),
            IdealTriangulation::polygon_zigzag(n),
        ] {
            // One generic configuration per triangulation.
            let d = loop {
                let (bs, xs) = draw_coords(&mut rng, &tri);
                match reconstruct_double(&tri, &bs, &xs) {
                    Ok(d) => break d,
                    Err(ConfigError::Degenerate(_)) => continue,
                    Err(e) => panic!("unexpected reconstruction error: {e}"),
                }
            };
            let before = d.double_coords().unwrap();
            for _ in 0..100 {
                let mut lambdas = BTreeMap::new();
                for v in tri.vertices() {
                    lambdas.insert(v.clone(), rng.nonzero_rational(12));
                }
                let rescaled = d.h_rescale(&lambdas).unwrap();
                assert_eq!(rescaled.double_coords().unwrap(), before);
                checks += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 7 (choice independence under the H-action): PASS — {} rescalings across fan/zigzag polygons n in 4..=8, exact",
        checks
    );
}

/// Shared helper for criterion 8: check that the coordinates of `d` in the
/// triangulation flipped at `edge` equal the mutation pullbacks evaluated at
/// the coordinates in the original triangulation. Returns false if the
/// flipped configuration is degenerate (caller skips).
fn check_flip_naturality(tri: &IdealTriangulation, d: &DoubleConfig, edge: &str) -> bool {
    let seed = tri.m_seed(2).unwrap();
    let before = d.double_coords().unwrap();
    let (flipped, corr) = tri.flip(edge).unwrap();
    let Ok(d2) = d.with_triangulation(flipped.clone()) else {
        return false;
    };
    let Ok(after) = d2.double_coords() else {
        return false;
    };
    let dmu = d_mutation(&seed, edge).unwrap();
    let mut point = BTreeMap::new();
    for (l, v) in &before.b {
        point.insert(coord("B", l), v.clone());
    }
    for (l, v) in &before.x {
        point.insert(coord("X", l), v.clone());
    }
    for old in tri.internal_edges() {
        let new_label = &corr.renames[&old.label];
        let eb = dmu.get(&coord("B", &old.label)).unwrap().eval(&point).unwrap();
        let ex = dmu.get(&coord("X", &old.label)).unwrap().eval(&point).unwrap();
        assert_eq!(after.b[new_label], eb, "B naturality at {}", old.label);
        assert_eq!(after.x[new_label], ex, "X naturality at {}", old.label);
    }

    // x- and a-coordinates alone transform by the x/a-mutation pullbacks.
    let front = d.front();
    let framed = front.framed().unwrap();
    let Ok(framed2) = framed.with_triangulation(flipped.clone()) else {
        return false;
    };
    let x_after = framed2.x_coords().unwrap();
    let xmu = x_mutation(&seed, edge).unwrap();
    let xpoint: BTreeMap<String, Rat> = before
        .x
        .iter()
        .map(|(l, v)| (coord("X", l), v.clone()))
        .collect();
    for old in tri.internal_edges() {
        let expect = xmu.get(&coord("X", &old.label)).unwrap().eval(&xpoint).unwrap();
        assert_eq!(x_after[&corr.renames[&old.label]], expect);
    }

    let a_before = front.a_coords().unwrap();
    let front2 = front.with_triangulation(flipped).unwrap();
    let a_after = front2.a_coords().unwrap();
    let amu = a_mutation(&seed, edge).unwrap();
    let apoint: BTreeMap<String, Rat> = a_before
        .iter()
        .map(|(l, v)| (coord("A", l), v.clone()))
        .collect();
    for e in tri.edges() {
        let expect = amu.get(&coord("A", &e.label)).unwrap().eval(&apoint).unwrap();
        assert_eq!(a_after[&corr.renames[&e.label]], expect);
    }
    true
}

#[test]
fn acceptance_8_coordinate_naturality_under_flips() {
    let mut rng = SplitMix64::new(8);
    let mut checks = 0u64;
    for n in 4..=7 {
        for tri in [
            IdealTriangulation::polygon_fan(n),
            IdealTriangulation::polygon_zigzag(n),
        ] {
            let mut done = 0;
            while done < 5 {
                let (bs, xs) = draw_coords(&mut rng, &tri);
                let Ok(d) = reconstruct_double(&tri, &bs, &xs) else {
                    continue;
                };
                let mut all = true;
                for e in tri.internal_edges() {
                    if check_flip_naturality(&tri, &d, &e.label) {
                        checks += 1;
                    } else {
                        all = false;
                    }
                }
                if all {
                    done += 1;
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 8 (coordinate naturality under flips): PASS — {} flip checks (d-, x-, and a-pullbacks), exact",
        checks
    );
}

#[test]
fn acceptance_9_mirror_x_identity() {
    // Convention regression fixture: the calibrated square values.
    let sq = IdealTriangulation::polygon_fan(4);
    let sq_seed = sq.m_seed(2).unwrap();
    assert_eq!(sq_seed.eps("p0-p2", "p0-p1").unwrap(), 1);
    assert_eq!(sq_seed.eps("p0-p2", "p1-p2").unwrap(), -1);
    let mut bs = BTreeMap::new();
    bs.insert("p0-p2".to_string(), rat_int(3));
    let mut xs = BTreeMap::new();
    xs.insert("p0-p2".to_string(), rat_int(2));
    let d = reconstruct_double(&sq, &bs, &xs).unwrap();
    assert_eq!(d.mirror_x_coords().unwrap()["p0-p2"], rat_int(2));

    let mut rng = SplitMix64::new(9);
    let mut checks = 0u64;
    for n in [5usize, 6] {
        for tri in polygon_triangulations(n) {
            let seed = tri.m_seed(2).unwrap();
            let mut done = 0;
            while done < 10 {
                let (bs, xs) = draw_coords(&mut rng, &tri);
                let Ok(d) = reconstruct_double(&tri, &bs, &xs) else {
                    continue;
                };
                let mirror = d.mirror_x_coords().unwrap();
                for (e, x) in &xs {
                    let mut expect = x.clone();
                    for (j, bj) in &bs {
                        let eps = seed.eps(e, j).unwrap();
                        for _ in 0..eps.abs() {
                            if eps > 0 {
                                expect *= bj;
                            } else {
                                expect /= bj;
                            }
                        }
                    }
                    assert_eq!(mirror[e], expect, "mirror identity at {} on {}", e, tri);
                    checks += 1;
                }
                done += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 9 (mirror X identity): PASS — square fixture + {} edge checks on pentagon/hexagon configurations, exact",
        checks
    );
}
