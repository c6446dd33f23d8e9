//! Multivariate polynomial gcd over the rationals.
//!
//! Primitive pseudo-remainder sequences with recursion on the content: the
//! classical exact algorithm. A monomial-content fast path handles the
//! dominant case in cluster computations, where one argument is a monomial
//! or both share a large monomial factor.

use num_traits::{One, Signed};

use super::poly::{Monomial, Polynomial};
use crate::rational::Rat;

/// Gcd of two polynomials, normalized to have coprime integer coefficients
/// and positive leading coefficient. `gcd(0, 0) = 0`; constants are units,
/// so coprime inputs give `1`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    debug_assert_eq!(a.nvars(), b.nvars());
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let (ma, pa) = a.split_monomial_content();
    let (mb, pb) = b.split_monomial_content();
    let shared = Monomial(
        ma.0.iter()
            .zip(&mb.0)
            .map(|(x, y)| *x.min(y))
            .collect::<Vec<_>>(),
    );
    let core = if pa.as_constant().is_some() || pb.as_constant().is_some() {
        Polynomial::one(a.nvars())
    } else {
        gcd_content_free(&pa, &pb)
    };
    normalize(&core.mul_term(&shared, &Rat::one()))
}

/// Divides out the rational content and fixes the leading sign.
fn normalize(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut q = p
        .div_exact(&Polynomial::constant(p.nvars(), p.rational_content()))
        .unwrap();
    if q.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        q = q.neg();
    }
    q
}

/// Gcd of two non-constant polynomials with trivial monomial content.
fn gcd_content_free(a: &Polynomial, b: &Polynomial) -> Polynomial {
    // Main variable: present in both, smallest worst-case degree.
    let mut main = None;
    for v in 0..a.nvars() {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        if da > 0 && db > 0 {
            let key = da.min(db);
            if main.map(|(_, k)| key < k).unwrap_or(true) {
                main = Some((v, key));
            }
        }
    }
    let v = match main {
        Some((v, _)) => v,
        // No shared variable: any common divisor is constant.
        None => return Polynomial::one(a.nvars()),
    };

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = poly_gcd(&ca, &cb);

    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let core = loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        if r.degree_in(v) == 0 {
            // Coprime in the main variable.
            break Polynomial::one(a.nvars());
        }
        f = g;
        let rc = content_in(&r, v);
        g = r.div_exact(&rc).expect("content divides");
    };
    core.mul(&cg)
}

/// Gcd of the coefficients of `p` viewed as univariate in `v`.
fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.nvars());
    for c in coeffs_in(p, v) {
        acc = poly_gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Coefficient polynomials of `p` in the variable `v` (each with `v`-exponent
/// zeroed out), in increasing `v`-degree order, skipping absent degrees.
fn coeffs_in(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let mut by_deg: std::collections::BTreeMap<u32, Vec<(Vec<u32>, Rat)>> = Default::default();
    for (m, c) in p.iter_terms() {
        let mut e = m.0.clone();
        let d = e[v];
        e[v] = 0;
        by_deg.entry(d).or_default().push((e, c.clone()));
    }
    by_deg
        .into_values()
        .map(|terms| Polynomial::from_terms(p.nvars(), terms))
        .collect()
}

fn lead_coeff_in(p: &Polynomial, v: usize) -> Polynomial {
    let d = p.degree_in(v);
    let terms: Vec<(Vec<u32>, Rat)> = p
        .iter_terms()
        .filter(|(m, _)| m.0[v] == d)
        .map(|(m, c)| {
            let mut e = m.0.clone();
            e[v] = 0;
            (e, c.clone())
        })
        .collect();
    Polynomial::from_terms(p.nvars(), terms)
}

/// Pseudo-remainder of `f` by `g` in the variable `v`: repeatedly cancels the
/// leading `v`-term after scaling by `g`'s leading coefficient. The result is
/// a scalar-polynomial multiple of the true remainder, which is all the
/// primitive PRS needs.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    let lg = lead_coeff_in(g, v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = lead_coeff_in(&r, v);
        let mut shift = vec![0; f.nvars()];
        shift[v] = dr - dg;
        r = r
            .mul(&lg)
            .sub(&g.mul(&lr).mul_term(&Monomial(shift), &Rat::one()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn p2(terms: &[(u32, u32, i64)]) -> Polynomial {
        Polynomial::from_terms(
            2,
            terms
                .iter()
                .map(|&(ex, ey, c)| (vec![ex, ey], rat_int(c)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn univariate_gcd() {
        // gcd(x^2 - 1, x - 1) = x - 1
        let a = p2(&[(2, 0, 1), (0, 0, -1)]);
        let b = p2(&[(1, 0, 1), (0, 0, -1)]);
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn coprime_gives_one() {
        let a = p2(&[(1, 0, 1), (0, 0, 1)]); // x + 1
        let b = p2(&[(0, 1, 1), (0, 0, 1)]); // y + 1
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn multivariate_common_factor() {
        // gcd((x+y)*(x-y), (x+y)*x) = x + y
        let s = p2(&[(1, 0, 1), (0, 1, 1)]);
        let d = p2(&[(1, 0, 1), (0, 1, -1)]);
        let x = p2(&[(1, 0, 1)]);
        assert_eq!(poly_gcd(&s.mul(&d), &s.mul(&x)), s);
    }

    #[test]
    fn monomial_contents() {
        // gcd(x^2*y, x*y^2) = x*y
        let a = p2(&[(2, 1, 3)]);
        let b = p2(&[(1, 2, 2)]);
        assert_eq!(poly_gcd(&a, &b), p2(&[(1, 1, 1)]));
    }

    #[test]
    fn gcd_normalizes_content_and_sign() {
        // gcd(-2x - 2, 4x + 4) = x + 1
        let a = p2(&[(1, 0, -2), (0, 0, -2)]);
        let b = p2(&[(1, 0, 4), (0, 0, 4)]);
        assert_eq!(poly_gcd(&a, &b), p2(&[(1, 0, 1), (0, 0, 1)]));
    }

    #[test]
    fn gcd_with_zero() {
        let a = p2(&[(1, 0, 2), (0, 0, 2)]);
        let z = Polynomial::zero(2);
        assert_eq!(poly_gcd(&a, &z), p2(&[(1, 0, 1), (0, 0, 1)]));
        assert!(poly_gcd(&z, &z).is_zero());
    }

    #[test]
    fn repeated_factors() {
        // gcd((x+1)^3*(x-2), (x+1)^2) = (x+1)^2
        let xp1 = p2(&[(1, 0, 1), (0, 0, 1)]);
        let xm2 = p2(&[(1, 0, 1), (0, 0, -2)]);
        let a = xp1.pow(3).mul(&xm2);
        let b = xp1.pow(2);
        assert_eq!(poly_gcd(&a, &b), xp1.pow(2));
    }
}
