//! Cluster transformations as composable symbolic pullbacks.
//!
//! A [`ClusterMap`] stores a birational map between coordinate tori the way
//! the mutation formulas present it: one rational function per *target*
//! coordinate, written in the *source* coordinates. Geometric composition is
//! therefore reversed substitution: `compose(f, g)` is "f then g" and
//! substitutes f's pullbacks into g's.
//!
//! Coordinate names are derived from seed index labels with the fixed
//! prefixes `A_`, `Ao_` (second factor of the A-double), `X_`, `B_`, and
//! `Xl_`/`Xr_` (factors of the X-double).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratfunc::{same_vars, RatFuncError, RationalFunction, RationalFunctionData, VarSet};
use crate::rational::Rat;
use crate::seed::{Seed, SeedError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error("structural map on a seed with frozen indices requires permissive mode")]
    FrozenIndicesPresent,
    #[error("composition mismatch: g's source torus differs from f's target torus")]
    ComposeMismatch,
    #[error("missing pullback for coordinate {0:?}")]
    MissingPullback(String),
    #[error("pullback for {0:?} is the zero function")]
    ZeroPullback(String),
}

/// The three coordinate tori attached to a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusKind {
    /// Coordinates `A_i` over all of I.
    A,
    /// Coordinates `X_j` over the non-frozen set J.
    X,
    /// Coordinate pairs `(B_j, X_j)` over J; always 2|J| coordinates.
    D,
}

impl TorusKind {
    /// Coordinate names of this torus for the given seed, in canonical order.
    pub fn coordinate_names(&self, seed: &Seed) -> Vec<String> {
        match self {
            TorusKind::A => seed.indices().iter().map(|l| coord("A", l)).collect(),
            TorusKind::X => seed.non_frozen().map(|l| coord("X", l)).collect(),
            TorusKind::D => {
                let mut names: Vec<String> = seed.non_frozen().map(|l| coord("B", l)).collect();
                names.extend(seed.non_frozen().map(|l| coord("X", l)));
                names
            }
        }
    }

    pub fn vars(&self, seed: &Seed) -> Arc<VarSet> {
        VarSet::new(self.coordinate_names(seed)).expect("seed labels are unique")
    }
}

/// How structural maps treat frozen indices. `Strict` matches the theorem
/// hypothesis (no frozen elements) and errors otherwise; `Permissive`
/// extends by `B_i = 1` and `A_i° = A_i` on frozen indices, which is what
/// the moduli construction needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrozenMode {
    #[default]
    Strict,
    Permissive,
}

pub fn coord(prefix: &str, label: &str) -> String {
    format!("{}_{}", prefix, label)
}

/// Variables of A x A: `A_i` over I, then `Ao_i` (second factor). In
/// permissive mode the second factor only carries non-frozen coordinates.
pub fn aa_vars(seed: &Seed, mode: FrozenMode) -> Arc<VarSet> {
    let mut names: Vec<String> = seed.indices().iter().map(|l| coord("A", l)).collect();
    match mode {
        FrozenMode::Strict => names.extend(seed.indices().iter().map(|l| coord("Ao", l))),
        FrozenMode::Permissive => names.extend(seed.non_frozen().map(|l| coord("Ao", l))),
    }
    VarSet::new(names).expect("seed labels are unique")
}

/// Variables of X x X: `Xl_j` then `Xr_j` over J.
pub fn xx_vars(seed: &Seed) -> Arc<VarSet> {
    let mut names: Vec<String> = seed.non_frozen().map(|l| coord("Xl", l)).collect();
    names.extend(seed.non_frozen().map(|l| coord("Xr", l)));
    VarSet::new(names).expect("seed labels are unique")
}

/// Named-coordinate pullback between tori: one rational function in the
/// source coordinates per target coordinate.
#[derive(Clone)]
pub struct ClusterMap {
    source: Arc<VarSet>,
    target: Arc<VarSet>,
    pullback: Vec<RationalFunction>,
    source_seed: Option<Seed>,
    target_seed: Option<Seed>,
}

impl PartialEq for ClusterMap {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.source, &other.source)
            && same_vars(&self.target, &other.target)
            && self.pullback == other.pullback
    }
}

impl Eq for ClusterMap {}

impl ClusterMap {
    /// Builds a map from per-coordinate pullbacks; every target coordinate
    /// needs exactly one nonzero entry over the source variables.
    pub fn new(
        source: Arc<VarSet>,
        target: Arc<VarSet>,
        entries: BTreeMap<String, RationalFunction>,
    ) -> Result<Self, MapError> {
        let mut pullback = Vec::with_capacity(target.len());
        for name in target.names() {
            let f = entries
                .get(name)
                .ok_or_else(|| MapError::MissingPullback(name.clone()))?;
            if !same_vars(f.vars(), &source) {
                return Err(MapError::RatFunc(RatFuncError::VarSetMismatch));
            }
            if f.is_zero() {
                return Err(MapError::ZeroPullback(name.clone()));
            }
            pullback.push(f.clone());
        }
        Ok(ClusterMap {
            source,
            target,
            pullback,
            source_seed: None,
            target_seed: None,
        })
    }

    /// The identity map of a torus.
    pub fn identity(vars: &Arc<VarSet>) -> Self {
        let pullback = vars
            .names()
            .iter()
            .map(|n| RationalFunction::var(vars, n).expect("own name"))
            .collect();
        ClusterMap {
            source: vars.clone(),
            target: vars.clone(),
            pullback,
            source_seed: None,
            target_seed: None,
        }
    }

    pub fn with_seeds(mut self, source: Option<Seed>, target: Option<Seed>) -> Self {
        self.source_seed = source;
        self.target_seed = target;
        self
    }

    pub fn source_vars(&self) -> &Arc<VarSet> {
        &self.source
    }

    pub fn target_vars(&self) -> &Arc<VarSet> {
        &self.target
    }

    pub fn source_seed(&self) -> Option<&Seed> {
        self.source_seed.as_ref()
    }

    pub fn target_seed(&self) -> Option<&Seed> {
        self.target_seed.as_ref()
    }

    /// Pullback of the named target coordinate.
    pub fn get(&self, name: &str) -> Option<&RationalFunction> {
        self.target.position(name).map(|i| &self.pullback[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &RationalFunction)> {
        self.target.names().iter().zip(self.pullback.iter())
    }

    /// Geometric composition "self then g": substitutes self's pullbacks
    /// into g's. Fails if a substituted denominator vanishes identically,
    /// which signals leaving the maps' common domain of definition.
    pub fn compose(&self, g: &ClusterMap) -> Result<ClusterMap, MapError> {
        if !same_vars(&g.source, &self.target) {
            return Err(MapError::ComposeMismatch);
        }
        let assignment: BTreeMap<String, RationalFunction> = self
            .target
            .names()
            .iter()
            .cloned()
            .zip(self.pullback.iter().cloned())
            .collect();
        let mut pullback = Vec::with_capacity(g.target.len());
        for f in &g.pullback {
            pullback.push(f.substitute(&assignment, &self.source)?);
        }
        Ok(ClusterMap {
            source: self.source.clone(),
            target: g.target.clone(),
            pullback,
            source_seed: self.source_seed.clone(),
            target_seed: g.target_seed.clone(),
        })
    }

    /// Evaluates the map at a source point, producing the target point.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<BTreeMap<String, Rat>, MapError> {
        let mut out = BTreeMap::new();
        for (name, f) in self.entries() {
            out.insert(name.clone(), f.eval(point)?);
        }
        Ok(out)
    }

    /// If every pullback entry is exactly one source coordinate and the
    /// assignment is a bijection, returns that permutation as a map from
    /// target names to source names.
    pub fn identity_permutation(&self) -> Option<BTreeMap<String, String>> {
        if self.source.len() != self.target.len() {
            return None;
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut sigma = BTreeMap::new();
        for (name, f) in self.entries() {
            let v = f.as_variable()?;
            if !seen.insert(v.to_string()) {
                return None;
            }
            sigma.insert(name.clone(), v.to_string());
        }
        Some(sigma)
    }

    /// True iff the map is the identity on matching coordinate names.
    pub fn is_identity(&self) -> bool {
        same_vars(&self.source, &self.target)
            && self
                .entries()
                .all(|(name, f)| f.as_variable() == Some(name.as_str()))
    }

    pub fn to_data(&self) -> ClusterMapData {
        ClusterMapData {
            source_vars: self.source.names().to_vec(),
            target_vars: self.target.names().to_vec(),
            pullback: self
                .entries()
                .map(|(n, f)| (n.clone(), f.to_data()))
                .collect(),
            source_seed: self.source_seed.clone(),
            target_seed: self.target_seed.clone(),
        }
    }

    pub fn from_data(data: &ClusterMapData) -> Result<Self, MapError> {
        let source = VarSet::new(data.source_vars.iter().cloned())?;
        let target = VarSet::new(data.target_vars.iter().cloned())?;
        let mut entries = BTreeMap::new();
        for (name, rf) in &data.pullback {
            let f = RationalFunction::from_data(rf)?;
            if !same_vars(f.vars(), &source) {
                return Err(MapError::RatFunc(RatFuncError::VarSetMismatch));
            }
            entries.insert(name.clone(), f);
        }
        Ok(
            Self::new(source, target, entries)?
                .with_seeds(data.source_seed.clone(), data.target_seed.clone()),
        )
    }
}

impl fmt::Debug for ClusterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ClusterMap {{")?;
        for (name, rf) in self.entries() {
            writeln!(f, "  {} <- {}", name, rf)?;
        }
        write!(f, "}}")
    }
}

/// Wire format: ordered (target name, rational function) pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterMapData {
    pub source_vars: Vec<String>,
    pub target_vars: Vec<String>,
    pub pullback: Vec<(String, RationalFunctionData)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_seed: Option<Seed>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_seed: Option<Seed>,
}

fn require_unfrozen(seed: &Seed, mode: FrozenMode) -> Result<(), MapError> {
    if mode == FrozenMode::Strict && !seed.frozen().is_empty() {
        return Err(MapError::FrozenIndicesPresent);
    }
    Ok(())
}

/// `∏_j prefix_j^{row_j}` over the given labels, skipping zero exponents.
fn monomial_over(
    vars: &Arc<VarSet>,
    powers: impl IntoIterator<Item = (String, i64)>,
) -> RationalFunction {
    let collected: Vec<(String, i64)> = powers.into_iter().filter(|(_, e)| *e != 0).collect();
    let borrowed: Vec<(&str, i64)> = collected.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    RationalFunction::monomial(vars, &borrowed).expect("coordinate names exist")
}

/// Mutation pullback on the A-torus: the exchange relation at `k`, identity
/// elsewhere. Source is the A-torus of `s`, target the A-torus of `μ_k(s)`.
pub fn a_mutation(s: &Seed, k: &str) -> Result<ClusterMap, MapError> {
    let target_seed = s.mutate(k)?;
    let vars = TorusKind::A.vars(s);
    let kp = s.position(k).expect("mutate checked the label");
    let mut entries = BTreeMap::new();
    for (i, label) in s.indices().iter().enumerate() {
        let name = coord("A", label);
        let f = if i == kp {
            let pos = monomial_over(
                &vars,
                s.indices().iter().enumerate().filter_map(|(j, lj)| {
                    let e = s.eps_at(kp, j);
                    (e > 0).then(|| (coord("A", lj), e))
                }),
            );
            let neg = monomial_over(
                &vars,
                s.indices().iter().enumerate().filter_map(|(j, lj)| {
                    let e = s.eps_at(kp, j);
                    (e < 0).then(|| (coord("A", lj), -e))
                }),
            );
            let ak = RationalFunction::var(&vars, &name)?;
            pos.add(&neg)?.div(&ak)?
        } else {
            RationalFunction::var(&vars, &name)?
        };
        entries.insert(name, f);
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?
        .with_seeds(Some(s.clone()), Some(target_seed)))
}

/// The X-mutation factor `(1 + X_k^{-sgn(e)})^{-e}` for `e = ε_ik`, with the
/// convention that `e = 0` yields 1.
fn x_factor(
    vars: &Arc<VarSet>,
    xk: &RationalFunction,
    e: i64,
) -> Result<RationalFunction, MapError> {
    if e == 0 {
        return Ok(RationalFunction::one(vars));
    }
    let one = RationalFunction::one(vars);
    let base = if e > 0 {
        one.add(&xk.inverse()?)?
    } else {
        one.add(xk)?
    };
    Ok(base.pow(-e)?)
}

/// Mutation pullback on the X-torus.
pub fn x_mutation(s: &Seed, k: &str) -> Result<ClusterMap, MapError> {
    let target_seed = s.mutate(k)?;
    let vars = TorusKind::X.vars(s);
    let kp = s.position(k).expect("mutate checked the label");
    let xk = RationalFunction::var(&vars, &coord("X", k))?;
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let name = coord("X", label);
        let f = if label == k {
            xk.inverse()?
        } else {
            let e = s.eps_at(s.position(label).unwrap(), kp);
            RationalFunction::var(&vars, &name)?.mul(&x_factor(&vars, &xk, e)?)?
        };
        entries.insert(name, f);
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?
        .with_seeds(Some(s.clone()), Some(target_seed)))
}

/// Mutation pullback on the symplectic-double torus: X-components as in
/// [`x_mutation`], B-components by the double exchange relation. Frozen
/// `B_j` are treated as 1 inside the products.
pub fn d_mutation(s: &Seed, k: &str) -> Result<ClusterMap, MapError> {
    let target_seed = s.mutate(k)?;
    let vars = TorusKind::D.vars(s);
    let kp = s.position(k).expect("mutate checked the label");
    let xk = RationalFunction::var(&vars, &coord("X", k))?;
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let xname = coord("X", label);
        let xf = if label == k {
            xk.inverse()?
        } else {
            let e = s.eps_at(s.position(label).unwrap(), kp);
            RationalFunction::var(&vars, &xname)?.mul(&x_factor(&vars, &xk, e)?)?
        };
        entries.insert(xname, xf);

        let bname = coord("B", label);
        let bf = if label == k {
            let pos = monomial_over(
                &vars,
                s.indices().iter().enumerate().filter_map(|(j, lj)| {
                    let e = s.eps_at(kp, j);
                    (e > 0 && !s.is_frozen(lj)).then(|| (coord("B", lj), e))
                }),
            );
            let neg = monomial_over(
                &vars,
                s.indices().iter().enumerate().filter_map(|(j, lj)| {
                    let e = s.eps_at(kp, j);
                    (e < 0 && !s.is_frozen(lj)).then(|| (coord("B", lj), -e))
                }),
            );
            let bk = RationalFunction::var(&vars, &bname)?;
            let one = RationalFunction::one(&vars);
            let num = xk.mul(&pos)?.add(&neg)?;
            let den = one.add(&xk)?.mul(&bk)?;
            num.div(&den)?
        } else {
            RationalFunction::var(&vars, &bname)?
        };
        entries.insert(bname, bf);
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?
        .with_seeds(Some(s.clone()), Some(target_seed)))
}

/// The map p: A -> X, `p*(X_i) = ∏_{j∈I} A_j^{ε_ij}`.
pub fn p_map(s: &Seed) -> Result<ClusterMap, MapError> {
    let source = TorusKind::A.vars(s);
    let target = TorusKind::X.vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let i = s.position(label).unwrap();
        let f = monomial_over(
            &source,
            s.indices()
                .iter()
                .enumerate()
                .map(|(j, lj)| (coord("A", lj), s.eps_at(i, j))),
        );
        entries.insert(coord("X", label), f);
    }
    Ok(ClusterMap::new(source, target, entries)?.with_seeds(Some(s.clone()), Some(s.clone())))
}

/// The map φ: A x A -> D, `φ*(X_i) = ∏_j A_j^{ε_ij}`, `φ*(B_i) = Ao_i/A_i`.
pub fn phi_map(s: &Seed, mode: FrozenMode) -> Result<ClusterMap, MapError> {
    require_unfrozen(s, mode)?;
    let source = aa_vars(s, mode);
    let target = TorusKind::D.vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let i = s.position(label).unwrap();
        let xf = monomial_over(
            &source,
            s.indices()
                .iter()
                .enumerate()
                .map(|(j, lj)| (coord("A", lj), s.eps_at(i, j))),
        );
        entries.insert(coord("X", label), xf);
        let bf = RationalFunction::var(&source, &coord("Ao", label))?
            .div(&RationalFunction::var(&source, &coord("A", label))?)?;
        entries.insert(coord("B", label), bf);
    }
    Ok(ClusterMap::new(source, target, entries)?.with_seeds(Some(s.clone()), Some(s.clone())))
}

/// The map π: D -> X x X, `π*(Xl_i) = X_i`,
/// `π*(Xr_i) = X_i ∏_{j∈J} B_j^{ε_ij}`.
pub fn pi_map(s: &Seed, mode: FrozenMode) -> Result<ClusterMap, MapError> {
    require_unfrozen(s, mode)?;
    let source = TorusKind::D.vars(s);
    let target = xx_vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let i = s.position(label).unwrap();
        let xi = RationalFunction::var(&source, &coord("X", label))?;
        entries.insert(coord("Xl", label), xi.clone());
        let bprod = monomial_over(
            &source,
            s.non_frozen()
                .map(|lj| (coord("B", lj), s.eps_at(i, s.position(lj).unwrap()))),
        );
        entries.insert(coord("Xr", label), xi.mul(&bprod)?);
    }
    Ok(ClusterMap::new(source, target, entries)?.with_seeds(Some(s.clone()), Some(s.clone())))
}

/// The involution ι: D -> D, `ι*(B_i) = B_i^{-1}`,
/// `ι*(X_i) = X_i ∏_{j∈J} B_j^{ε_ij}`.
pub fn iota_map(s: &Seed, mode: FrozenMode) -> Result<ClusterMap, MapError> {
    require_unfrozen(s, mode)?;
    let vars = TorusKind::D.vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let i = s.position(label).unwrap();
        entries.insert(
            coord("B", label),
            RationalFunction::var(&vars, &coord("B", label))?.inverse()?,
        );
        let bprod = monomial_over(
            &vars,
            s.non_frozen()
                .map(|lj| (coord("B", lj), s.eps_at(i, s.position(lj).unwrap()))),
        );
        entries.insert(
            coord("X", label),
            RationalFunction::var(&vars, &coord("X", label))?.mul(&bprod)?,
        );
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?
        .with_seeds(Some(s.clone()), Some(s.clone())))
}

/// The embedding j: X -> D along `B_i = 1`.
pub fn j_map(s: &Seed, mode: FrozenMode) -> Result<ClusterMap, MapError> {
    require_unfrozen(s, mode)?;
    let source = TorusKind::X.vars(s);
    let target = TorusKind::D.vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        entries.insert(coord("B", label), RationalFunction::one(&source));
        entries.insert(
            coord("X", label),
            RationalFunction::var(&source, &coord("X", label))?,
        );
    }
    Ok(ClusterMap::new(source, target, entries)?.with_seeds(Some(s.clone()), Some(s.clone())))
}

/// The product map p x p: A x A -> X x X.
pub fn pp_map(s: &Seed, mode: FrozenMode) -> Result<ClusterMap, MapError> {
    require_unfrozen(s, mode)?;
    let source = aa_vars(s, mode);
    let target = xx_vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        let i = s.position(label).unwrap();
        let left = monomial_over(
            &source,
            s.indices()
                .iter()
                .enumerate()
                .map(|(j, lj)| (coord("A", lj), s.eps_at(i, j))),
        );
        entries.insert(coord("Xl", label), left);
        // Second factor: frozen indices have Ao_i = A_i in permissive mode.
        let right = monomial_over(
            &source,
            s.indices().iter().enumerate().map(|(j, lj)| {
                let prefix = if mode == FrozenMode::Permissive && s.is_frozen(lj) {
                    "A"
                } else {
                    "Ao"
                };
                (coord(prefix, lj), s.eps_at(i, j))
            }),
        );
        entries.insert(coord("Xr", label), right);
    }
    Ok(ClusterMap::new(source, target, entries)?.with_seeds(Some(s.clone()), Some(s.clone())))
}

/// The factor swap of X x X.
pub fn swap_map(s: &Seed) -> Result<ClusterMap, MapError> {
    let vars = xx_vars(s);
    let mut entries = BTreeMap::new();
    for label in s.non_frozen() {
        entries.insert(
            coord("Xl", label),
            RationalFunction::var(&vars, &coord("Xr", label))?,
        );
        entries.insert(
            coord("Xr", label),
            RationalFunction::var(&vars, &coord("Xl", label))?,
        );
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?)
}

/// Mutation on both factors of A x A.
pub fn aa_mutation(s: &Seed, k: &str, mode: FrozenMode) -> Result<ClusterMap, MapError> {
    let target_seed = s.mutate(k)?;
    let vars = aa_vars(s, mode);
    let kp = s.position(k).expect("mutate checked the label");
    // Name of the second-factor coordinate for index `lj`.
    let ao = |lj: &str| {
        if mode == FrozenMode::Permissive && s.is_frozen(lj) {
            coord("A", lj)
        } else {
            coord("Ao", lj)
        }
    };
    let mut entries = BTreeMap::new();
    let factors: Vec<(Box<dyn Fn(&str) -> String>, bool)> = vec![
        (Box::new(|l: &str| coord("A", l)), true),
        (Box::new(ao), false),
    ];
    for (namer, is_first) in &factors {
        for (i, label) in s.indices().iter().enumerate() {
            if !is_first && mode == FrozenMode::Permissive && s.is_frozen(label) {
                continue;
            }
            let name = namer(label);
            let f = if i == kp {
                let pos = monomial_over(
                    &vars,
                    s.indices().iter().enumerate().filter_map(|(j, lj)| {
                        let e = s.eps_at(kp, j);
                        (e > 0).then(|| (namer(lj), e))
                    }),
                );
                let neg = monomial_over(
                    &vars,
                    s.indices().iter().enumerate().filter_map(|(j, lj)| {
                        let e = s.eps_at(kp, j);
                        (e < 0).then(|| (namer(lj), -e))
                    }),
                );
                let ak = RationalFunction::var(&vars, &name)?;
                pos.add(&neg)?.div(&ak)?
            } else {
                RationalFunction::var(&vars, &name)?
            };
            entries.insert(name, f);
        }
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?
        .with_seeds(Some(s.clone()), Some(target_seed)))
}

/// Mutation on both factors of X x X.
pub fn xx_mutation(s: &Seed, k: &str) -> Result<ClusterMap, MapError> {
    let target_seed = s.mutate(k)?;
    let vars = xx_vars(s);
    let kp = s.position(k).expect("mutate checked the label");
    let mut entries = BTreeMap::new();
    for prefix in ["Xl", "Xr"] {
        let xk = RationalFunction::var(&vars, &coord(prefix, k))?;
        for label in s.non_frozen() {
            let name = coord(prefix, label);
            let f = if label == k {
                xk.inverse()?
            } else {
                let e = s.eps_at(s.position(label).unwrap(), kp);
                RationalFunction::var(&vars, &name)?.mul(&x_factor(&vars, &xk, e)?)?
            };
            entries.insert(name, f);
        }
    }
    Ok(ClusterMap::new(vars.clone(), vars, entries)?
        .with_seeds(Some(s.clone()), Some(target_seed)))
}

/// Composite of d-mutations along a left-to-right sequence of directions.
pub fn d_mutation_sequence(s: &Seed, ks: &[&str]) -> Result<ClusterMap, MapError> {
    let mut seed = s.clone();
    let mut acc: Option<ClusterMap> = None;
    for k in ks {
        let step = d_mutation(&seed, k)?;
        seed = seed.mutate(k)?;
        acc = Some(match acc {
            None => step,
            Some(prev) => prev.compose(&step)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ClusterMap::identity(&TorusKind::D.vars(s))))
}
