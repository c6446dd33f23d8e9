//! Canonical-form multivariate rational functions over the rationals.
//!
//! This is the substrate every cluster transformation is represented and
//! compared on. The canonical form is the equality oracle for the whole
//! crate:
//!
//! - `gcd(numerator, denominator)` is a unit,
//! - both parts are integer polynomials whose joint integer content is 1,
//! - the denominator's leading coefficient (graded-lexicographic term order
//!   over the fixed variable order) is positive.
//!
//! Two rational functions are equal as functions iff their canonical forms
//! are structurally equal.

mod gcd;
mod poly;

pub use gcd::poly_gcd;
pub use poly::{Monomial, Polynomial};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rat, parse_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable name {0:?}")]
    UnknownVariable(String),
    #[error("operands live on different variable sets")]
    VarSetMismatch,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("variable {0:?} has no assigned value")]
    UnassignedVariable(String),
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("denominator vanishes identically after substitution")]
    SubstitutionPole,
    #[error("malformed serialized rational function: {0}")]
    Malformed(String),
}

/// Ordered set of distinct coordinate names. The order is fixed at
/// construction and determines the term order.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, RatFuncError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(RatFuncError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarSet { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

/// True when two (possibly distinct) `Arc<VarSet>`s denote the same set.
pub fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Rational function in canonical form over a fixed variable set.
#[derive(Clone)]
pub struct RationalFunction {
    vars: Arc<VarSet>,
    num: Polynomial,
    den: Polynomial,
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.num == other.num && self.den == other.den
    }
}

impl Eq for RationalFunction {}

impl RationalFunction {
    /// Builds `num/den` and reduces it to canonical form.
    pub fn new(
        vars: Arc<VarSet>,
        num: Polynomial,
        den: Polynomial,
    ) -> Result<Self, RatFuncError> {
        assert_eq!(num.nvars(), vars.len(), "numerator arity mismatch");
        assert_eq!(den.nvars(), vars.len(), "denominator arity mismatch");
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Polynomial::one(vars.len()),
                vars,
            });
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");

        // Joint content normalization: scale so both parts are integer
        // polynomials with coprime joint content and positive denominator
        // leading coefficient.
        let cn = num.rational_content();
        let cd = den.rational_content();
        let joint = Rat::new(
            num_integer::Integer::gcd(cn.numer(), cd.numer()),
            num_integer::Integer::lcm(cn.denom(), cd.denom()),
        );
        let scale = Polynomial::constant(vars.len(), joint);
        num = num.div_exact(&scale).expect("joint content divides");
        den = den.div_exact(&scale).expect("joint content divides");
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        debug_assert!(num
            .iter_terms()
            .chain(den.iter_terms())
            .all(|(_, c)| c.denom().is_one()));
        Ok(RationalFunction { vars, num, den })
    }

    pub fn from_polynomial(vars: Arc<VarSet>, p: Polynomial) -> Self {
        let one = Polynomial::one(vars.len());
        Self::new(vars, p, one).expect("denominator 1 is nonzero")
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rat) -> Self {
        Self::from_polynomial(vars.clone(), Polynomial::constant(vars.len(), c))
    }

    pub fn int(vars: &Arc<VarSet>, n: i64) -> Self {
        Self::constant(vars, Rat::from_integer(n.into()))
    }

    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Self::int(vars, 0)
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::int(vars, 1)
    }

    /// The coordinate function with the given name.
    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self, RatFuncError> {
        let i = vars
            .position(name)
            .ok_or_else(|| RatFuncError::UnknownVariable(name.to_string()))?;
        Ok(Self::from_polynomial(
            vars.clone(),
            Polynomial::var(vars.len(), i),
        ))
    }

    /// The Laurent monomial `∏ name^exp`; negative exponents go to the
    /// denominator.
    pub fn monomial(
        vars: &Arc<VarSet>,
        powers: &[(&str, i64)],
    ) -> Result<Self, RatFuncError> {
        let mut num_exp = vec![0u32; vars.len()];
        let mut den_exp = vec![0u32; vars.len()];
        for (name, e) in powers {
            let i = vars
                .position(name)
                .ok_or_else(|| RatFuncError::UnknownVariable(name.to_string()))?;
            if *e >= 0 {
                num_exp[i] += *e as u32;
            } else {
                den_exp[i] += (-*e) as u32;
            }
        }
        Self::new(
            vars.clone(),
            Polynomial::term(Monomial(num_exp), Rat::one()),
            Polynomial::term(Monomial(den_exp), Rat::one()),
        )
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(c) iff the function is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    /// Some(name) iff the function is exactly one coordinate.
    pub fn as_variable(&self) -> Option<&str> {
        if !self.den.is_one() || self.num.num_terms() != 1 {
            return None;
        }
        let (m, c) = self.num.leading().unwrap();
        if !c.is_one() || m.total_degree() != 1 {
            return None;
        }
        let idx = m.0.iter().position(|&e| e == 1).unwrap();
        Some(&self.vars.names()[idx])
    }

    fn check_same_vars(&self, other: &Self) -> Result<(), RatFuncError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(RatFuncError::VarSetMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RatFuncError> {
        self.check_same_vars(other)?;
        Self::new(
            self.vars.clone(),
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RatFuncError> {
        self.check_same_vars(other)?;
        Self::new(
            self.vars.clone(),
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RatFuncError> {
        self.check_same_vars(other)?;
        Self::new(
            self.vars.clone(),
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        self.check_same_vars(other)?;
        if other.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Self::new(
            self.vars.clone(),
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            vars: self.vars.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Self::new(self.vars.clone(), self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, RatFuncError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        Ok(RationalFunction {
            vars: self.vars.clone(),
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    /// Exact evaluation; every variable must be assigned and the point must
    /// avoid the poles.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, RatFuncError> {
        let mut coords = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let v = point
                .get(name)
                .ok_or_else(|| RatFuncError::UnassignedVariable(name.clone()))?;
            coords.push(v.clone());
        }
        let dv = self.den.eval(&coords);
        if dv.is_zero() {
            return Err(RatFuncError::Pole);
        }
        Ok(self.num.eval(&coords) / dv)
    }

    /// Substitutes a rational function (over `target`) for every variable.
    ///
    /// This is the workhorse for composing pullbacks; an identically-zero
    /// denominator after substitution signals a composition outside the
    /// birational map's domain of definition.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<String, RationalFunction>,
        target: &Arc<VarSet>,
    ) -> Result<Self, RatFuncError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let g = assignment
                .get(name)
                .ok_or_else(|| RatFuncError::UnassignedVariable(name.clone()))?;
            if !same_vars(g.vars(), target) {
                return Err(RatFuncError::VarSetMismatch);
            }
            values.push(g);
        }
        let (num_n, num_d) = apply_poly(&self.num, &values, target.len());
        let (den_n, den_d) = apply_poly(&self.den, &values, target.len());
        if den_n.is_zero() {
            return Err(RatFuncError::SubstitutionPole);
        }
        Self::new(target.clone(), num_n.mul(&den_d), den_n.mul(&num_d))
    }

    /// Laurent test: true iff the canonical denominator is a single
    /// monomial; also reports whether all numerator coefficients are
    /// positive.
    pub fn laurent_report(&self) -> LaurentReport {
        LaurentReport {
            is_laurent: self.den.is_monomial(),
            numerator_positive: !self.num.is_zero()
                && self.num.iter_terms().all(|(_, c)| c.is_positive()),
        }
    }

    pub fn to_data(&self) -> RationalFunctionData {
        RationalFunctionData {
            vars: self.vars.names().to_vec(),
            numerator: poly_to_data(&self.num),
            denominator: poly_to_data(&self.den),
        }
    }

    pub fn from_data(data: &RationalFunctionData) -> Result<Self, RatFuncError> {
        let vars = VarSet::new(data.vars.iter().cloned())?;
        let num = poly_from_data(&data.numerator, vars.len())?;
        let den = poly_from_data(&data.denominator, vars.len())?;
        Self::new(vars, num, den)
    }
}

/// Substitutes `values[i]` for variable `i` of `p`, returning the result as
/// a numerator/denominator pair of polynomials over the target variables.
///
/// Denominators are cleared in one pass: for each variable the substituted
/// denominator enters with exponent `max_i - e` so only a single canonical
/// reduction is needed by the caller.
fn apply_poly(
    p: &Polynomial,
    values: &[&RationalFunction],
    target_len: usize,
) -> (Polynomial, Polynomial) {
    if p.is_zero() {
        return (Polynomial::zero(target_len), Polynomial::one(target_len));
    }
    let maxes = p.max_exponents();
    // Power tables for each variable's numerator and denominator.
    let mut num_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(values.len());
    let mut den_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(values.len());
    for (v, g) in values.iter().enumerate() {
        let top = maxes[v] as usize;
        let mut np = Vec::with_capacity(top + 1);
        let mut dp = Vec::with_capacity(top + 1);
        np.push(Polynomial::one(target_len));
        dp.push(Polynomial::one(target_len));
        for k in 1..=top {
            np.push(np[k - 1].mul(g.numerator()));
            dp.push(dp[k - 1].mul(g.denominator()));
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut acc = Polynomial::zero(target_len);
    for (m, c) in p.iter_terms() {
        let mut t = Polynomial::constant(target_len, c.clone());
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&num_pows[v][e as usize]);
            }
            let co = maxes[v] - e;
            if co > 0 {
                t = t.mul(&den_pows[v][co as usize]);
            }
        }
        acc = acc.add(&t);
    }
    let mut den = Polynomial::one(target_len);
    for (v, &maxe) in maxes.iter().enumerate() {
        if maxe > 0 {
            den = den.mul(&den_pows[v][maxe as usize]);
        }
    }
    (acc, den)
}

/// Result of the Laurent test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaurentReport {
    pub is_laurent: bool,
    pub numerator_positive: bool,
}

/// Wire format: polynomials as term lists `(exponent vector, "p/q")` sorted
/// leading term first.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RationalFunctionData {
    pub vars: Vec<String>,
    pub numerator: Vec<(Vec<u32>, String)>,
    pub denominator: Vec<(Vec<u32>, String)>,
}

fn poly_to_data(p: &Polynomial) -> Vec<(Vec<u32>, String)> {
    p.iter_terms()
        .rev()
        .map(|(m, c)| (m.0.clone(), format_rat(c)))
        .collect()
}

fn poly_from_data(data: &[(Vec<u32>, String)], nvars: usize) -> Result<Polynomial, RatFuncError> {
    let mut terms = Vec::with_capacity(data.len());
    for (exps, coeff) in data {
        if exps.len() != nvars {
            return Err(RatFuncError::Malformed(format!(
                "exponent vector of length {} in a {}-variable polynomial",
                exps.len(),
                nvars
            )));
        }
        let c = parse_rat(coeff).map_err(|e| RatFuncError::Malformed(e.to_string()))?;
        terms.push((exps.clone(), c));
    }
    Ok(Polynomial::from_terms(nvars, terms))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.vars.names();
        if self.den.is_one() {
            write!(f, "{}", self.num.display_with(names))
        } else {
            write!(
                f,
                "({}) / ({})",
                self.num.display_with(names),
                self.den.display_with(names)
            )
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn xy() -> Arc<VarSet> {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn var(vs: &Arc<VarSet>, n: &str) -> RationalFunction {
        RationalFunction::var(vs, n).unwrap()
    }

    #[test]
    fn inverse_pair_cancels() {
        // ((x+y)/x) * (x/(x+y)) = 1
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let s = x.add(&y).unwrap();
        let a = s.div(&x).unwrap();
        let b = x.div(&s).unwrap();
        assert!(a.mul(&b).unwrap().is_one());
    }

    #[test]
    fn construction_cancels_gcd() {
        // (x^2 - 1)/(x - 1) = x + 1
        let vs = xy();
        let x = var(&vs, "x");
        let num = x.mul(&x).unwrap().sub(&RationalFunction::one(&vs)).unwrap();
        let den = x.sub(&RationalFunction::one(&vs)).unwrap();
        let f = num.div(&den).unwrap();
        let expect = x.add(&RationalFunction::one(&vs)).unwrap();
        assert_eq!(f, expect);
        assert!(f.denominator().is_one());
    }

    #[test]
    fn common_denominator_identity() {
        // 1/x + 1/y = (x+y)/(xy)
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let lhs = x.inverse().unwrap().add(&y.inverse().unwrap()).unwrap();
        let rhs = x.add(&y).unwrap().div(&x.mul(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn varset_mismatch_is_an_error() {
        let a = RationalFunction::one(&xy());
        let b = RationalFunction::one(&VarSet::new(["x", "z"]).unwrap());
        assert_eq!(a.add(&b), Err(RatFuncError::VarSetMismatch));
    }

    #[test]
    fn division_by_zero_function() {
        let vs = xy();
        let one = RationalFunction::one(&vs);
        let zero = RationalFunction::zero(&vs);
        assert_eq!(one.div(&zero), Err(RatFuncError::DivisionByZero));
    }

    #[test]
    fn substitute_one_plus_x_at_reciprocal() {
        // f = 1 + x, x -> 1/x gives (x+1)/x
        let vs = VarSet::new(["x"]).unwrap();
        let x = var(&vs, "x");
        let f = RationalFunction::one(&vs).add(&x).unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert("x".to_string(), x.inverse().unwrap());
        let g = f.substitute(&sigma, &vs).unwrap();
        let expect = x.add(&RationalFunction::one(&vs)).unwrap().div(&x).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn substitute_identity() {
        let vs = xy();
        let x = var(&vs, "x");
        let mut sigma = BTreeMap::new();
        sigma.insert("x".to_string(), var(&vs, "x"));
        sigma.insert("y".to_string(), var(&vs, "y"));
        let f = x.add(&var(&vs, "y")).unwrap().div(&x).unwrap();
        assert_eq!(f.substitute(&sigma, &vs).unwrap(), f);
    }

    #[test]
    fn substitute_product_example() {
        // f = x*y with x -> (1+y)/x, y -> y gives y(1+y)/x
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let f = x.mul(&y).unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert(
            "x".to_string(),
            RationalFunction::one(&vs).add(&y).unwrap().div(&x).unwrap(),
        );
        sigma.insert("y".to_string(), y.clone());
        let g = f.substitute(&sigma, &vs).unwrap();
        let expect = y
            .mul(&RationalFunction::one(&vs).add(&y).unwrap())
            .unwrap()
            .div(&x)
            .unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn substitution_pole_detected() {
        // f = 1/x with x -> 0 leaves the domain of definition.
        let vs = VarSet::new(["x"]).unwrap();
        let f = var(&vs, "x").inverse().unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert("x".to_string(), RationalFunction::zero(&vs));
        assert_eq!(
            f.substitute(&sigma, &vs),
            Err(RatFuncError::SubstitutionPole)
        );
    }

    #[test]
    fn eval_simple_and_pole() {
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let f = x.add(&y).unwrap().div(&x).unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), rat_int(2));
        pt.insert("y".to_string(), rat_int(2));
        assert_eq!(f.eval(&pt), Ok(rat_int(2)));

        let inv = var(&VarSet::new(["x"]).unwrap(), "x").inverse().unwrap();
        let mut at0 = BTreeMap::new();
        at0.insert("x".to_string(), rat_int(0));
        assert_eq!(inv.eval(&at0), Err(RatFuncError::Pole));
    }

    #[test]
    fn eval_through_removable_singularity() {
        // (x^2-1)/(x-1) canonicalizes to x+1, which evaluates at x = 1.
        let vs = VarSet::new(["x"]).unwrap();
        let x = var(&vs, "x");
        let one = RationalFunction::one(&vs);
        let f = x
            .mul(&x)
            .unwrap()
            .sub(&one)
            .unwrap()
            .div(&x.sub(&one).unwrap())
            .unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), rat_int(1));
        assert_eq!(f.eval(&pt), Ok(rat_int(2)));
    }

    #[test]
    fn laurent_reports() {
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let one = RationalFunction::one(&vs);

        // (x+1)/x: Laurent, positive.
        let f = x.add(&one).unwrap().div(&x).unwrap();
        let r = f.laurent_report();
        assert!(r.is_laurent && r.numerator_positive);

        // 1/(x+1): not Laurent.
        let g = one.div(&x.add(&one).unwrap()).unwrap();
        assert!(!g.laurent_report().is_laurent);

        // (x^2 + xy + y)/(x y^2): Laurent, positive.
        let num = x
            .mul(&x)
            .unwrap()
            .add(&x.mul(&y).unwrap())
            .unwrap()
            .add(&y)
            .unwrap();
        let den = x.mul(&y.mul(&y).unwrap()).unwrap();
        let h = num.div(&den).unwrap();
        let r = h.laurent_report();
        assert!(r.is_laurent && r.numerator_positive);
    }

    #[test]
    fn canonical_content_normalization() {
        // (2x)/(4y) canonicalizes to x/(2y).
        let vs = xy();
        let f = RationalFunction::new(
            vs.clone(),
            Polynomial::from_terms(2, vec![(vec![1, 0], rat_int(2))]),
            Polynomial::from_terms(2, vec![(vec![0, 1], rat_int(4))]),
        )
        .unwrap();
        let num: Vec<_> = f.numerator().iter_terms().collect();
        let den: Vec<_> = f.denominator().iter_terms().collect();
        assert_eq!(num[0].1, &rat_int(1));
        assert_eq!(den[0].1, &rat_int(2));
    }

    #[test]
    fn canonical_denominator_sign() {
        // 1/(-x) canonicalizes to -1/x.
        let vs = VarSet::new(["x"]).unwrap();
        let f = RationalFunction::new(
            vs.clone(),
            Polynomial::one(1),
            Polynomial::from_terms(1, vec![(vec![1], rat_int(-1))]),
        )
        .unwrap();
        assert_eq!(f.numerator().leading().unwrap().1, &rat_int(-1));
        assert_eq!(f.denominator().leading().unwrap().1, &rat_int(1));
    }

    #[test]
    fn serialization_round_trip() {
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let f = x
            .add(&y)
            .unwrap()
            .div(&x.mul(&y).unwrap())
            .unwrap()
            .mul(&RationalFunction::constant(&vs, rat(3, 7)))
            .unwrap();
        let data = f.to_data();
        let back = RationalFunction::from_data(&data).unwrap();
        assert_eq!(f, back);
        let json = serde_json::to_string(&data).unwrap();
        let data2: RationalFunctionData = serde_json::from_str(&json).unwrap();
        assert_eq!(data, data2);
    }
}
