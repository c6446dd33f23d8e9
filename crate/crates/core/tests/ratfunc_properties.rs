//! Property suite for the rational-function substrate.
//!
//! The canonical form is the equality oracle for everything downstream, so
//! it gets the strongest checks: value agreement at random points must
//! coincide with structural equality of canonical forms, substitution must
//! respect composition, and evaluation must commute with arithmetic.

use std::collections::BTreeMap;
use std::sync::Arc;

use cluster_core::detrand::SplitMix64;
use cluster_core::ratfunc::{RatFuncError, RationalFunction, VarSet};
use cluster_core::rational::{rat_int, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn vars2() -> Arc<VarSet> {
    VarSet::new(["x", "y"]).unwrap()
}

/// Random expression tree over x, y with small integer leaves, built from
/// the deterministic stream so failures reproduce.
fn random_expr(rng: &mut SplitMix64, depth: usize) -> RationalFunction {
    let vs = vars2();
    if depth == 0 {
        return match rng.below(3) {
            0 => RationalFunction::var(&vs, "x").unwrap(),
            1 => RationalFunction::var(&vs, "y").unwrap(),
            _ => RationalFunction::int(&vs, rng.int_in(-4, 4)),
        };
    }
    let a = random_expr(rng, depth - 1);
    let b = random_expr(rng, depth - 1);
    match rng.below(4) {
        0 => a.add(&b).unwrap(),
        1 => a.sub(&b).unwrap(),
        2 => a.mul(&b).unwrap(),
        _ => match a.div(&b) {
            Ok(f) => f,
            Err(RatFuncError::DivisionByZero) => a,
            Err(e) => panic!("unexpected error: {e}"),
        },
    }
}

#[test]
fn canonical_form_is_the_equality_oracle() {
    // 1000 random pairs: equal values at 5 random non-pole points iff the
    // canonical forms are structurally identical.
    let mut rng = SplitMix64::new(1001);
    let mut agreements = 0;
    for _ in 0..1000 {
        let f = random_expr(&mut rng, 3);
        let g = random_expr(&mut rng, 3);
        let mut sampled = 0;
        let mut all_equal = true;
        while sampled < 5 {
            let mut pt = BTreeMap::new();
            pt.insert("x".to_string(), rng.nonzero_rational(50));
            pt.insert("y".to_string(), rng.nonzero_rational(50));
            match (f.eval(&pt), g.eval(&pt)) {
                (Ok(a), Ok(b)) => {
                    sampled += 1;
                    if a != b {
                        all_equal = false;
                    }
                }
                _ => continue, // pole of either: resample
            }
        }
        assert_eq!(
            all_equal,
            f == g,
            "value agreement and canonical equality disagree for\n  f = {}\n  g = {}",
            f,
            g
        );
        if all_equal {
            agreements += 1;
        }
    }
    // Sanity: the generator does produce both equal and unequal pairs.
    assert!(agreements > 0 && agreements < 1000);
}

#[test]
fn substitution_respects_composition() {
    // Substituting sigma then tau equals substituting the composite.
    let mut rng = SplitMix64::new(1002);
    let vs = vars2();
    let mut done = 0;
    while done < 200 {
        let f = random_expr(&mut rng, 2);
        let sigma_x = random_expr(&mut rng, 2);
        let sigma_y = random_expr(&mut rng, 2);
        let tau_x = random_expr(&mut rng, 2);
        let tau_y = random_expr(&mut rng, 2);
        if sigma_x.is_zero() || sigma_y.is_zero() || tau_x.is_zero() || tau_y.is_zero() {
            continue;
        }
        let mut sigma = BTreeMap::new();
        sigma.insert("x".to_string(), sigma_x);
        sigma.insert("y".to_string(), sigma_y);
        let mut tau = BTreeMap::new();
        tau.insert("x".to_string(), tau_x);
        tau.insert("y".to_string(), tau_y);
        // tau ∘ sigma as an assignment.
        let composite: Result<BTreeMap<String, RationalFunction>, _> = sigma
            .iter()
            .map(|(k, v)| v.substitute(&tau, &vs).map(|r| (k.clone(), r)))
            .collect();
        let Ok(composite) = composite else { continue };
        if composite.values().any(|v| v.is_zero()) {
            continue;
        }
        let Ok(step1) = f.substitute(&sigma, &vs) else {
            continue;
        };
        let lhs = step1.substitute(&tau, &vs);
        let rhs = f.substitute(&composite, &vs);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a, b, "composition mismatch for f = {}", f);
                done += 1;
            }
            // One route can leave the domain exactly when the other does.
            (Err(RatFuncError::SubstitutionPole), Err(RatFuncError::SubstitutionPole)) => continue,
            (a, b) => panic!("asymmetric failure: {:?} vs {:?}", a, b),
        }
    }
}

proptest! {
    #[test]
    fn eval_commutes_with_arithmetic(
        ax in -20i64..20, ay in -20i64..20, c in -9i64..9,
        px in 1i64..40, py in 1i64..40,
    ) {
        let vs = vars2();
        let x = RationalFunction::var(&vs, "x").unwrap();
        let y = RationalFunction::var(&vs, "y").unwrap();
        let k = RationalFunction::int(&vs, c);
        // f = (a_x x + c)(y + a_y), g = x y + c
        let f = x
            .mul(&RationalFunction::int(&vs, ax))
            .unwrap()
            .add(&k)
            .unwrap()
            .mul(&y.add(&RationalFunction::int(&vs, ay)).unwrap())
            .unwrap();
        let g = x.mul(&y).unwrap().add(&k).unwrap();

        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), Rat::new(px.into(), 3.into()));
        pt.insert("y".to_string(), Rat::new(py.into(), 7.into()));

        let fv = f.eval(&pt).unwrap();
        let gv = g.eval(&pt).unwrap();
        prop_assert_eq!(f.add(&g).unwrap().eval(&pt).unwrap(), &fv + &gv);
        prop_assert_eq!(f.sub(&g).unwrap().eval(&pt).unwrap(), &fv - &gv);
        prop_assert_eq!(f.mul(&g).unwrap().eval(&pt).unwrap(), &fv * &gv);
        if !gv.is_zero() && !g.is_zero() {
            prop_assert_eq!(f.div(&g).unwrap().eval(&pt).unwrap(), &fv / &gv);
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication(e in 0u32..6, px in 1i64..10) {
        let vs = vars2();
        let x = RationalFunction::var(&vs, "x").unwrap();
        let one = RationalFunction::one(&vs);
        let f = x.add(&one).unwrap();
        let mut by_mul = one.clone();
        for _ in 0..e {
            by_mul = by_mul.mul(&f).unwrap();
        }
        prop_assert_eq!(f.pow(e as i64).unwrap(), by_mul.clone());
        // Negative power is the inverse.
        let neg = f.pow(-(e as i64)).unwrap();
        prop_assert!(neg.mul(&f.pow(e as i64).unwrap()).unwrap().is_one());
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), rat_int(px));
        pt.insert("y".to_string(), rat_int(1));
        prop_assert_eq!(
            by_mul.eval(&pt).unwrap(),
            f.pow(e as i64).unwrap().eval(&pt).unwrap()
        );
    }
}

