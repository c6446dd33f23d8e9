//! Property runners behind `map verify` and `coords roundtrip`.
//!
//! Trials are sequential and drawn from the fixed SplitMix64 stream, so a
//! failing trial index plus the `--seed` value reproduces the exact inputs
//! anywhere.

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{bail, Result};
use cluster_core::cluster_maps::{
    a_mutation, aa_mutation, coord, d_mutation, d_mutation_sequence, iota_map, j_map, phi_map,
    pi_map, pp_map, swap_map, x_mutation, xx_mutation, FrozenMode,
};
use cluster_core::detrand::SplitMix64;
use cluster_core::flagconfig::{reconstruct_double, ConfigError};
use cluster_core::rational::{format_rat, Rat};
use cluster_core::seed::Seed;
use cluster_core::surface::IdealTriangulation;

use crate::report::{fingerprint, Failure, VerificationReport};

pub const PROPERTIES: &[&str] = &[
    "involutivity",
    "pentagon",
    "iota",
    "phi-pi",
    "j-diagonal",
    "naturality",
];

pub fn run_property(property: &str, rank: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    if !PROPERTIES.contains(&property) {
        bail!(
            "unknown property {:?}; expected one of {}",
            property,
            PROPERTIES.join("|")
        );
    }
    let start = Instant::now();
    let mut rng = SplitMix64::new(seed);
    let mut failures = Vec::new();
    let fp = fingerprint(format!("{property}:rank={rank}:trials={trials}:seed={seed}").as_bytes());

    let seed_json = |s: &Seed| serde_json::to_value(s).expect("seed serializes");

    match property {
        "involutivity" => {
            for trial in 0..trials {
                let s = rng.random_seed(rank, 2, true);
                let labels: Vec<String> = s.non_frozen().cloned().collect();
                for k in &labels {
                    let s1 = s.mutate(k)?;
                    let seed_ok = s1.mutate(k)? == s;
                    let kinds: [(&str, bool); 3] = [
                        (
                            "A",
                            a_mutation(&s, k)?.compose(&a_mutation(&s1, k)?)?.is_identity(),
                        ),
                        (
                            "X",
                            x_mutation(&s, k)?.compose(&x_mutation(&s1, k)?)?.is_identity(),
                        ),
                        (
                            "D",
                            d_mutation(&s, k)?.compose(&d_mutation(&s1, k)?)?.is_identity(),
                        ),
                    ];
                    if !seed_ok || kinds.iter().any(|(_, ok)| !ok) {
                        failures.push(Failure {
                            trial,
                            counterexample: serde_json::json!({
                                "seed": seed_json(&s),
                                "k": k,
                                "seed_involution": seed_ok,
                                "torus_failures": kinds
                                    .iter()
                                    .filter(|(_, ok)| !ok)
                                    .map(|(t, _)| *t)
                                    .collect::<Vec<_>>(),
                            }),
                        });
                    }
                }
            }
        }
        "pentagon" => {
            let s = Seed::a2();
            let composite = d_mutation_sequence(&s, &["1", "2", "1", "2", "1"])?;
            let sigma_ok = composite
                .identity_permutation()
                .map(|sigma| {
                    sigma.get("B_1").map(String::as_str) == Some("B_2")
                        && sigma.get("B_2").map(String::as_str) == Some("B_1")
                        && sigma.get("X_1").map(String::as_str) == Some("X_2")
                        && sigma.get("X_2").map(String::as_str) == Some("X_1")
                })
                .unwrap_or(false);
            if !sigma_ok {
                failures.push(Failure {
                    trial: 0,
                    counterexample: serde_json::json!({
                        "symbolic": "composite is not the coordinate transposition"
                    }),
                });
            }
            // Numeric re-check at `trials` random points.
            let mut checked = 0u64;
            while checked < trials {
                let mut pt = BTreeMap::new();
                for n in ["B_1", "B_2", "X_1", "X_2"] {
                    pt.insert(n.to_string(), rng.nonzero_rational(20));
                }
                let symbolic = match composite.eval(&pt) {
                    Ok(v) => v,
                    Err(_) => continue, // pole: resample
                };
                let expect: BTreeMap<String, Rat> = [
                    ("B_1", &pt["B_2"]),
                    ("B_2", &pt["B_1"]),
                    ("X_1", &pt["X_2"]),
                    ("X_2", &pt["X_1"]),
                ]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
                if symbolic != expect {
                    failures.push(Failure {
                        trial: checked,
                        counterexample: serde_json::json!({
                            "point": pt
                                .iter()
                                .map(|(k, v)| (k.clone(), format_rat(v)))
                                .collect::<BTreeMap<_, _>>(),
                        }),
                    });
                }
                checked += 1;
            }
        }
        "iota" | "phi-pi" | "j-diagonal" | "naturality" => {
            let mode = FrozenMode::Strict;
            for trial in 0..trials {
                let s = rng.random_seed(rank, 2, false);
                let fail = |why: &str| Failure {
                    trial,
                    counterexample: serde_json::json!({"seed": seed_json(&s), "why": why}),
                };
                match property {
                    "iota" => {
                        let iota = iota_map(&s, mode)?;
                        if !iota.compose(&iota)?.is_identity() {
                            failures.push(fail("iota is not an involution"));
                        }
                        let pi = pi_map(&s, mode)?;
                        if iota.compose(&pi)? != pi.compose(&swap_map(&s)?)? {
                            failures.push(fail("pi after iota is not swap after pi"));
                        }
                    }
                    "phi-pi" => {
                        let lhs = phi_map(&s, mode)?.compose(&pi_map(&s, mode)?)?;
                        if lhs != pp_map(&s, mode)? {
                            failures.push(fail("pi after phi is not p x p"));
                        }
                    }
                    "j-diagonal" => {
                        let pj = j_map(&s, mode)?.compose(&pi_map(&s, mode)?)?;
                        for label in s.non_frozen() {
                            if pj.get(&coord("Xl", label)) != pj.get(&coord("Xr", label)) {
                                failures.push(fail("pi after j leaves the diagonal"));
                                break;
                            }
                        }
                    }
                    "naturality" => {
                        let phi = phi_map(&s, mode)?;
                        let pi = pi_map(&s, mode)?;
                        let iota = iota_map(&s, mode)?;
                        for k in s.non_frozen() {
                            let s1 = s.mutate(k)?;
                            let dmu = d_mutation(&s, k)?;
                            if aa_mutation(&s, k, mode)?.compose(&phi_map(&s1, mode)?)?
                                != phi.compose(&dmu)?
                            {
                                failures.push(fail("phi naturality"));
                            }
                            if dmu.compose(&pi_map(&s1, mode)?)?
                                != pi.compose(&xx_mutation(&s, k)?)?
                            {
                                failures.push(fail("pi naturality"));
                            }
                            if dmu.compose(&iota_map(&s1, mode)?)? != iota.compose(&dmu)? {
                                failures.push(fail("iota naturality"));
                            }
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
        _ => unreachable!(),
    }

    Ok(VerificationReport {
        property: property.to_string(),
        fingerprint: fp,
        trials,
        skipped: 0,
        failures,
        duration: start.elapsed(),
    })
}

/// Round-trip verification on a triangulation file: draw `(B, X)` per
/// internal edge (in edge order, B first), reconstruct, recompute, compare
/// exactly. Degenerate draws are detected and counted as skips.
pub fn run_roundtrip(
    tri: &IdealTriangulation,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = SplitMix64::new(seed);
    let mut failures = Vec::new();
    let mut skipped = 0u64;
    let tri_json = serde_json::to_string(&tri.to_data())?;
    let fp = fingerprint(format!("roundtrip:{tri_json}:trials={trials}:seed={seed}").as_bytes());

    for trial in 0..trials {
        let mut bs = BTreeMap::new();
        let mut xs = BTreeMap::new();
        for e in tri.internal_edges() {
            bs.insert(e.label.clone(), rng.nonzero_rational(10));
            xs.insert(e.label.clone(), rng.nonzero_rational(10));
        }
        let serialize_inputs = |bs: &BTreeMap<String, Rat>, xs: &BTreeMap<String, Rat>| {
            serde_json::json!({
                "B": bs.iter().map(|(k, v)| (k.clone(), format_rat(v))).collect::<BTreeMap<_, _>>(),
                "X": xs.iter().map(|(k, v)| (k.clone(), format_rat(v))).collect::<BTreeMap<_, _>>(),
            })
        };
        match reconstruct_double(tri, &bs, &xs) {
            Ok(d) => {
                let coords = d.double_coords()?;
                if coords.b != bs || coords.x != xs {
                    failures.push(Failure {
                        trial,
                        counterexample: serialize_inputs(&bs, &xs),
                    });
                }
            }
            Err(ConfigError::Degenerate(_)) => skipped += 1,
            Err(e) => {
                failures.push(Failure {
                    trial,
                    counterexample: serde_json::json!({
                        "inputs": serialize_inputs(&bs, &xs),
                        "error": e.to_string(),
                    }),
                });
            }
        }
    }

    Ok(VerificationReport {
        property: "roundtrip".to_string(),
        fingerprint: fp,
        trials,
        skipped,
        failures,
        duration: start.elapsed(),
    })
}
