//! Exact-arithmetic engine for cluster varieties of surfaces.
//!
//! Everything here is computed over the rationals with no floating point:
//! seeds and matrix mutation, the A/X/D cluster transformations and the
//! structural maps between their tori as symbolic birational maps,
//! triangulated surfaces with their m-triangulation seeds, and a concrete
//! realization of the symplectic-double coordinates `B_j = A_j°/A_j` on
//! triangulated polygons (m = 2) with an exact reconstruction round trip.
//!
//! Module map:
//! - [`ratfunc`]: canonical-form multivariate rational functions, the
//!   substrate every symbolic identity is checked on.
//! - [`seed`]: seeds (index set, frozen subset, skew-symmetric exchange
//!   matrix) and matrix mutation.
//! - [`cluster_maps`]: mutation pullbacks on the A/X/D tori, the structural
//!   maps `p`, `φ`, `π`, `ι`, `j`, and composition machinery.
//! - [`surface`]: ideal triangulations, flips, and the seed of an
//!   m-triangulation.
//! - [`flagconfig`]: decorated flag configurations on polygons, the
//!   `B = A°/A` coordinates, and the reconstruction maps.
//! - [`detrand`]: the fixed deterministic generator used for reproducible
//!   randomized verification.

pub mod cluster_maps;
pub mod detrand;
pub mod flagconfig;
pub mod ratfunc;
pub mod rational;
pub mod seed;
pub mod surface;

pub use cluster_maps::{ClusterMap, FrozenMode, TorusKind};
pub use flagconfig::{
    DecoratedConfig, DoubleConfig, DoubleCoords, FramedConfig, ProjPoint,
};
pub use ratfunc::{Polynomial, RationalFunction, VarSet};
pub use rational::Rat;
pub use seed::Seed;
pub use surface::IdealTriangulation;
