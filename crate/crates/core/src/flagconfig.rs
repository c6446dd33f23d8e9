//! Flag configurations on triangulated polygons and the symplectic-double
//! coordinates `B_j = A_j°/A_j`, all in exact rational arithmetic.
//!
//! Here m = 2: a flag is a point of the projective line, a decorated flag is
//! a nonzero 2-vector spanning it, the A-coordinate of an edge is a 2x2
//! determinant, and the X-coordinate of an internal edge is a cross-ratio of
//! the four flags around its quadrilateral. Everything is defined only
//! generically; vanishing determinants raise a domain error instead of
//! being perturbed.
//!
//! Sign convention: with the quadrilateral `(p, q, r, s)` read off the two
//! triangles adjacent to the diagonal `p-r` in the surface orientation,
//!
//! ```text
//! x_coord = CROSS_RATIO_SIGN * det(v_p,v_q) det(v_r,v_s)
//!                              / (det(v_q,v_r) det(v_s,v_p))
//! ```
//!
//! with `CROSS_RATIO_SIGN = -1`. This is the unique choice for which the
//! p-map identity `X_e = ∏_j A_j^{ε_ej}` holds exactly against the surface
//! module's exchange-matrix convention; the pair of conventions is locked
//! together by a regression test. On the mirror polygon (reversed
//! orientation) the exchange matrix flips sign, so the mirror X-coordinate
//! is the reciprocal of the same formula evaluated on the back
//! triangulation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rat, parse_rat, Rat};
use crate::surface::{EdgeKind, IdealTriangulation, SurfaceError, TriangulationData};

/// The one-place calibration constant described in the module docs.
const CROSS_RATIO_SIGN: i64 = -1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("not a triangulated polygon: {0}")]
    NotPolygon(String),
    #[error("vertex {0:?} has no flag")]
    MissingFlag(String),
    #[error("vertex {0:?} has no lift")]
    MissingLift(String),
    #[error("lift at vertex {0:?} is the zero vector")]
    ZeroLift(String),
    #[error("lift at vertex {0:?} does not span its flag")]
    LiftFlagMismatch(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("missing coordinate for edge {0:?}")]
    MissingCoordinate(String),
    #[error("coordinate for edge {0:?} must be nonzero")]
    ZeroCoordinate(String),
    #[error("front and back disagree on boundary edge {0:?} (A != A°)")]
    FrozenMismatch(String),
    #[error("front and back configurations live on different polygons")]
    VertexMismatch,
    #[error("zero rescaling factor at vertex {0:?}")]
    ZeroRescale(String),
    #[error("malformed configuration data: {0}")]
    Malformed(String),
}

/// A point of the projective line over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjPoint {
    Finite(Rat),
    Infinity,
}

impl ProjPoint {
    /// The canonical lift: `(r, 1)` for finite `r`, `(1, 0)` for infinity.
    pub fn unit_lift(&self) -> [Rat; 2] {
        match self {
            ProjPoint::Finite(r) => [r.clone(), Rat::one()],
            ProjPoint::Infinity => [Rat::one(), Rat::zero()],
        }
    }

    pub fn from_lift(v: &[Rat; 2]) -> Result<Self, ConfigError> {
        if v[0].is_zero() && v[1].is_zero() {
            return Err(ConfigError::Malformed("zero vector has no flag".into()));
        }
        if v[1].is_zero() {
            Ok(ProjPoint::Infinity)
        } else {
            Ok(ProjPoint::Finite(&v[0] / &v[1]))
        }
    }

    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(ProjPoint::Infinity);
        }
        parse_rat(t)
            .map(ProjPoint::Finite)
            .map_err(|e| ConfigError::Malformed(e.to_string()))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(r) => write!(f, "{}", format_rat(r)),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Determinant of the 2x2 matrix with columns `a`, `b`.
pub fn det2(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn scale2(v: &[Rat; 2], c: &Rat) -> [Rat; 2] {
    [&v[0] * c, &v[1] * c]
}

fn add2(a: &[Rat; 2], b: &[Rat; 2]) -> [Rat; 2] {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

/// Checks that the triangulation is a triangulated polygon whose boundary
/// cycle agrees with the vertex list order; returns true for the forward
/// orientation, false for the mirrored one.
fn polygon_orientation(tri: &IdealTriangulation) -> Result<bool, ConfigError> {
    let n = tri.vertices().len();
    if n < 3 {
        return Err(ConfigError::NotPolygon("fewer than 3 vertices".into()));
    }
    let report = tri.validate();
    if !report.is_valid() {
        return Err(ConfigError::NotPolygon(report.issues.join("; ")));
    }
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    for e in tri.edges() {
        if let EdgeKind::Boundary(_) = e.kind {
            let sref = e.sides[0];
            let tri_corners = tri.triangles()[sref.0];
            let a = tri_corners[sref.1];
            let b = tri_corners[(sref.1 + 1) % 3];
            if next.insert(a, b).is_some() {
                return Err(ConfigError::NotPolygon(
                    "boundary is not a simple cycle".into(),
                ));
            }
        }
    }
    if next.len() != n {
        return Err(ConfigError::NotPolygon(format!(
            "{} boundary edges for {} vertices",
            next.len(),
            n
        )));
    }
    let forward = (0..n).all(|i| next.get(&i) == Some(&((i + 1) % n)));
    let mirrored = (0..n).all(|i| next.get(&i) == Some(&((i + n - 1) % n)));
    if forward || mirrored {
        Ok(forward)
    } else {
        Err(ConfigError::NotPolygon(
            "vertex list order does not match the boundary cycle".into(),
        ))
    }
}

/// The quadrilateral `(p, q, r, s)` around an internal edge, with the edge
/// as the diagonal `p-r`, read in the surface orientation.
fn quad_of(tri: &IdealTriangulation, sides: &[(usize, usize)]) -> [usize; 4] {
    let (ta, sa) = sides[0];
    let (tb, sb) = sides[1];
    let a = tri.triangles()[ta];
    let b = tri.triangles()[tb];
    let u = a[sa];
    let v = a[(sa + 1) % 3];
    let c1 = a[(sa + 2) % 3];
    debug_assert_eq!(b[sb], v);
    debug_assert_eq!(b[(sb + 1) % 3], u);
    let w = b[(sb + 2) % 3];
    [v, c1, u, w]
}

/// Framed configuration: a flag (projective point) at each polygon vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedConfig {
    tri: IdealTriangulation,
    flags: Vec<ProjPoint>,
}

impl FramedConfig {
    /// Builds a framed configuration, checking that the triangulation is a
    /// polygon and that the two flags on every edge are distinct.
    pub fn new(
        tri: IdealTriangulation,
        flags: BTreeMap<String, ProjPoint>,
    ) -> Result<Self, ConfigError> {
        polygon_orientation(&tri)?;
        let mut ordered = Vec::with_capacity(tri.vertices().len());
        for v in tri.vertices() {
            let f = flags
                .get(v)
                .ok_or_else(|| ConfigError::MissingFlag(v.clone()))?;
            ordered.push(f.clone());
        }
        let cfg = FramedConfig {
            tri,
            flags: ordered,
        };
        cfg.check_generic()?;
        Ok(cfg)
    }

    fn check_generic(&self) -> Result<(), ConfigError> {
        for e in self.tri.edges() {
            if self.flags[e.endpoints.0] == self.flags[e.endpoints.1] {
                return Err(ConfigError::Degenerate(format!(
                    "flags coincide across edge {:?}",
                    e.label
                )));
            }
        }
        Ok(())
    }

    pub fn triangulation(&self) -> &IdealTriangulation {
        &self.tri
    }

    pub fn flag(&self, vertex: &str) -> Option<&ProjPoint> {
        let i = self.tri.vertices().iter().position(|v| v == vertex)?;
        Some(&self.flags[i])
    }

    pub fn flags(&self) -> BTreeMap<String, ProjPoint> {
        self.tri
            .vertices()
            .iter()
            .cloned()
            .zip(self.flags.iter().cloned())
            .collect()
    }

    /// Reinterprets the same flags on another triangulation of the same
    /// polygon (e.g. after a flip).
    pub fn with_triangulation(&self, tri: IdealTriangulation) -> Result<Self, ConfigError> {
        if tri.vertices() != self.tri.vertices() {
            return Err(ConfigError::VertexMismatch);
        }
        let cfg = FramedConfig {
            tri,
            flags: self.flags.clone(),
        };
        polygon_orientation(&cfg.tri)?;
        cfg.check_generic()?;
        Ok(cfg)
    }

    /// Cross-ratio coordinate of an internal edge; independent of the lift
    /// choice because each lift appears once above and once below.
    pub fn x_coord(&self, edge_label: &str) -> Result<Rat, ConfigError> {
        let edge = self.tri.edge_by_label(edge_label)?;
        if !edge.is_internal() {
            return Err(ConfigError::Malformed(format!(
                "edge {:?} is a boundary edge and has no X-coordinate",
                edge_label
            )));
        }
        let [p, q, r, s] = quad_of(&self.tri, &edge.sides);
        let lifts: Vec<[Rat; 2]> = [p, q, r, s]
            .iter()
            .map(|&i| self.flags[i].unit_lift())
            .collect();
        let d_pq = det2(&lifts[0], &lifts[1]);
        let d_rs = det2(&lifts[2], &lifts[3]);
        let d_qr = det2(&lifts[1], &lifts[2]);
        let d_sp = det2(&lifts[3], &lifts[0]);
        if d_qr.is_zero() || d_sp.is_zero() || d_pq.is_zero() || d_rs.is_zero() {
            return Err(ConfigError::Degenerate(format!(
                "coincident flags around edge {:?}",
                edge_label
            )));
        }
        Ok(Rat::from_integer(CROSS_RATIO_SIGN.into()) * d_pq * d_rs / (d_qr * d_sp))
    }

    /// X-coordinates of all internal edges.
    pub fn x_coords(&self) -> Result<BTreeMap<String, Rat>, ConfigError> {
        let mut out = BTreeMap::new();
        for e in self.tri.internal_edges() {
            out.insert(e.label.clone(), self.x_coord(&e.label)?);
        }
        Ok(out)
    }
}

/// Decorated configuration: a nonzero 2-vector (decorated flag) at each
/// vertex; the flags are the spanned lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedConfig {
    tri: IdealTriangulation,
    lifts: Vec<[Rat; 2]>,
}

impl DecoratedConfig {
    pub fn new(
        tri: IdealTriangulation,
        lifts: BTreeMap<String, [Rat; 2]>,
    ) -> Result<Self, ConfigError> {
        polygon_orientation(&tri)?;
        let mut ordered = Vec::with_capacity(tri.vertices().len());
        for v in tri.vertices() {
            let l = lifts
                .get(v)
                .ok_or_else(|| ConfigError::MissingLift(v.clone()))?;
            if l[0].is_zero() && l[1].is_zero() {
                return Err(ConfigError::ZeroLift(v.clone()));
            }
            ordered.push(l.clone());
        }
        Ok(DecoratedConfig {
            tri,
            lifts: ordered,
        })
    }

    pub fn triangulation(&self) -> &IdealTriangulation {
        &self.tri
    }

    pub fn lift(&self, vertex: &str) -> Option<&[Rat; 2]> {
        let i = self.tri.vertices().iter().position(|v| v == vertex)?;
        Some(&self.lifts[i])
    }

    pub fn lifts(&self) -> BTreeMap<String, [Rat; 2]> {
        self.tri
            .vertices()
            .iter()
            .cloned()
            .zip(self.lifts.iter().cloned())
            .collect()
    }

    /// The underlying framed configuration (flags spanned by the lifts).
    pub fn framed(&self) -> Result<FramedConfig, ConfigError> {
        let mut flags = BTreeMap::new();
        for (v, l) in self.tri.vertices().iter().zip(&self.lifts) {
            flags.insert(v.clone(), ProjPoint::from_lift(l)?);
        }
        FramedConfig::new(self.tri.clone(), flags)
    }

    pub fn with_triangulation(&self, tri: IdealTriangulation) -> Result<Self, ConfigError> {
        if tri.vertices() != self.tri.vertices() {
            return Err(ConfigError::VertexMismatch);
        }
        polygon_orientation(&tri)?;
        Ok(DecoratedConfig {
            tri,
            lifts: self.lifts.clone(),
        })
    }

    /// Decorated-flag coordinate of an edge: the determinant with columns
    /// ordered by the global endpoint order.
    pub fn a_coord(&self, edge_label: &str) -> Result<Rat, ConfigError> {
        let edge = self.tri.edge_by_label(edge_label)?;
        let d = det2(&self.lifts[edge.endpoints.0], &self.lifts[edge.endpoints.1]);
        if d.is_zero() {
            return Err(ConfigError::Degenerate(format!(
                "zero determinant on edge {:?}",
                edge_label
            )));
        }
        Ok(d)
    }

    /// A-coordinates of all edges.
    pub fn a_coords(&self) -> Result<BTreeMap<String, Rat>, ConfigError> {
        let mut out = BTreeMap::new();
        for e in self.tri.edges() {
            out.insert(e.label.clone(), self.a_coord(&e.label)?);
        }
        Ok(out)
    }
}

/// Pair of decorated configurations on a polygon and its mirror, with the
/// vertexwise lift correspondence. The frozen condition `A_i = A_i°` holds
/// on every boundary edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleConfig {
    front: DecoratedConfig,
    back: DecoratedConfig,
}

/// The coordinates of a double configuration on the internal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoords {
    pub b: BTreeMap<String, Rat>,
    pub x: BTreeMap<String, Rat>,
}

impl DoubleConfig {
    /// Validates the mirror relation between the triangulations and the
    /// frozen condition on boundary edges.
    pub fn new(front: DecoratedConfig, back: DecoratedConfig) -> Result<Self, ConfigError> {
        if front.tri.vertices() != back.tri.vertices() {
            return Err(ConfigError::VertexMismatch);
        }
        if back.tri != front.tri.mirror() {
            return Err(ConfigError::NotPolygon(
                "back triangulation is not the mirror of the front".into(),
            ));
        }
        let d = DoubleConfig { front, back };
        for e in d.front.tri.edges() {
            if !e.is_internal() {
                let a = d.front.a_coord(&e.label)?;
                let ao = d.back.a_coord(&e.label)?;
                if a != ao {
                    return Err(ConfigError::FrozenMismatch(e.label.clone()));
                }
            }
        }
        Ok(d)
    }

    pub fn front(&self) -> &DecoratedConfig {
        &self.front
    }

    pub fn back(&self) -> &DecoratedConfig {
        &self.back
    }

    /// Reinterprets the same lifts on another triangulation of the polygon.
    pub fn with_triangulation(&self, tri: IdealTriangulation) -> Result<Self, ConfigError> {
        let front = self.front.with_triangulation(tri.clone())?;
        let back = self.back.with_triangulation(tri.mirror())?;
        DoubleConfig::new(front, back)
    }

    /// The symplectic-double coordinates: `X_j` from the front framing,
    /// `B_j = A_j°/A_j`, over the internal edges.
    pub fn double_coords(&self) -> Result<DoubleCoords, ConfigError> {
        let framed = self.front.framed()?;
        let mut b = BTreeMap::new();
        let mut x = BTreeMap::new();
        for e in self.front.tri.internal_edges() {
            x.insert(e.label.clone(), framed.x_coord(&e.label)?);
            let a = self.front.a_coord(&e.label)?;
            let ao = self.back.a_coord(&e.label)?;
            b.insert(e.label.clone(), ao / a);
        }
        Ok(DoubleCoords { b, x })
    }

    /// Simultaneously rescales the front and back lifts at each vertex
    /// (the H-action); all coordinates are invariant.
    pub fn h_rescale(&self, lambdas: &BTreeMap<String, Rat>) -> Result<Self, ConfigError> {
        let mut front = self.front.clone();
        let mut back = self.back.clone();
        for (vertex, l) in lambdas {
            if l.is_zero() {
                return Err(ConfigError::ZeroRescale(vertex.clone()));
            }
            let i = front
                .tri
                .vertices()
                .iter()
                .position(|v| v == vertex)
                .ok_or_else(|| ConfigError::Malformed(format!("unknown vertex {:?}", vertex)))?;
            front.lifts[i] = scale2(&front.lifts[i], l);
            back.lifts[i] = scale2(&back.lifts[i], l);
        }
        DoubleConfig::new(front, back)
    }

    /// X-coordinates of the back configuration, in the mirrored orientation
    /// convention: the reciprocal of the cross-ratio formula evaluated on
    /// the back triangulation (whose exchange matrix is the negative of the
    /// front one).
    pub fn mirror_x_coords(&self) -> Result<BTreeMap<String, Rat>, ConfigError> {
        let framed = self.back.framed()?;
        let mut out = BTreeMap::new();
        for e in self.back.tri.internal_edges() {
            let naive = framed.x_coord(&e.label)?;
            out.insert(e.label.clone(), Rat::one() / naive);
        }
        Ok(out)
    }

    pub fn to_data(&self) -> ConfigData {
        let framed_flags: BTreeMap<String, String> = self
            .front
            .tri
            .vertices()
            .iter()
            .zip(&self.front.lifts)
            .map(|(v, l)| {
                let flag = ProjPoint::from_lift(l).expect("lifts are nonzero");
                (v.clone(), flag.to_string())
            })
            .collect();
        ConfigData {
            triangulation: self.front.tri.to_data(),
            flags: framed_flags,
            lifts: self
                .front
                .lifts()
                .into_iter()
                .map(|(v, l)| (v, [format_rat(&l[0]), format_rat(&l[1])]))
                .collect(),
            back_lifts: self
                .back
                .lifts()
                .into_iter()
                .map(|(v, l)| (v, [format_rat(&l[0]), format_rat(&l[1])]))
                .collect(),
        }
    }

    pub fn from_data(data: &ConfigData) -> Result<Self, ConfigError> {
        let tri = IdealTriangulation::from_data(&data.triangulation)?;
        let parse_lifts = |m: &BTreeMap<String, [String; 2]>| -> Result<BTreeMap<String, [Rat; 2]>, ConfigError> {
            m.iter()
                .map(|(v, l)| {
                    let a = parse_rat(&l[0]).map_err(|e| ConfigError::Malformed(e.to_string()))?;
                    let b = parse_rat(&l[1]).map_err(|e| ConfigError::Malformed(e.to_string()))?;
                    Ok((v.clone(), [a, b]))
                })
                .collect()
        };
        let front = DecoratedConfig::new(tri.clone(), parse_lifts(&data.lifts)?)?;
        let back = DecoratedConfig::new(tri.mirror(), parse_lifts(&data.back_lifts)?)?;
        // When flags are given too, they must match the lifts.
        for (v, s) in &data.flags {
            let want = ProjPoint::parse(s)?;
            let l = front
                .lift(v)
                .ok_or_else(|| ConfigError::Malformed(format!("unknown vertex {:?}", v)))?;
            if ProjPoint::from_lift(l)? != want {
                return Err(ConfigError::LiftFlagMismatch(v.clone()));
            }
        }
        DoubleConfig::new(front, back)
    }
}

/// Configuration file format: flags as `"p/q"`/`"inf"`, lifts as vector
/// pairs. `flags` is redundant when `lifts` is present but kept readable.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConfigData {
    pub triangulation: TriangulationData,
    #[serde(default)]
    pub flags: BTreeMap<String, String>,
    #[serde(default)]
    pub lifts: BTreeMap<String, [String; 2]>,
    #[serde(default)]
    pub back_lifts: BTreeMap<String, [String; 2]>,
}

/// Coordinate file format: `{"B": {edge: "p/q"}, "X": {edge: "p/q"}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoordsData {
    #[serde(rename = "B")]
    pub b: BTreeMap<String, String>,
    #[serde(rename = "X")]
    pub x: BTreeMap<String, String>,
}

impl CoordsData {
    pub fn from_coords(c: &DoubleCoords) -> Self {
        CoordsData {
            b: c.b.iter().map(|(k, v)| (k.clone(), format_rat(v))).collect(),
            x: c.x.iter().map(|(k, v)| (k.clone(), format_rat(v))).collect(),
        }
    }

    pub fn parse(&self) -> Result<DoubleCoords, ConfigError> {
        let conv = |m: &BTreeMap<String, String>| -> Result<BTreeMap<String, Rat>, ConfigError> {
            m.iter()
                .map(|(k, v)| {
                    parse_rat(v)
                        .map(|r| (k.clone(), r))
                        .map_err(|e| ConfigError::Malformed(e.to_string()))
                })
                .collect()
        };
        Ok(DoubleCoords {
            b: conv(&self.b)?,
            x: conv(&self.x)?,
        })
    }
}

/// Solves for the flags of a framed configuration with the prescribed
/// X-coordinates: the base triangle is pinned at `(∞, 0, -1)` and the
/// remaining flags propagate across the dual tree, each solved from one
/// cross-ratio equation.
pub fn reconstruct_framed(
    tri: &IdealTriangulation,
    xs: &BTreeMap<String, Rat>,
) -> Result<FramedConfig, ConfigError> {
    polygon_orientation(tri)?;
    for e in tri.internal_edges() {
        match xs.get(&e.label) {
            None => return Err(ConfigError::MissingCoordinate(e.label.clone())),
            Some(v) if v.is_zero() => return Err(ConfigError::ZeroCoordinate(e.label.clone())),
            _ => {}
        }
    }
    let n = tri.vertices().len();
    let mut lifts: Vec<Option<[Rat; 2]>> = vec![None; n];
    let base = tri.triangles()[0];
    lifts[base[0]] = Some([Rat::one(), Rat::zero()]); // ∞
    lifts[base[1]] = Some([Rat::zero(), Rat::one()]); // 0
    lifts[base[2]] = Some([-Rat::one(), Rat::one()]); // -1

    let sign = Rat::from_integer(CROSS_RATIO_SIGN.into());
    let edges = tri.internal_edges();
    // Propagate until every vertex is resolved: find a gluing whose one
    // side's triangle is fully known and whose other side has exactly the
    // far corner unknown.
    loop {
        let mut progressed = false;
        let mut done = true;
        for e in &edges {
            let x = &xs[&e.label];
            // Try both orientations of the gluing pair.
            for (known_side, new_side) in
                [(e.sides[0], e.sides[1]), (e.sides[1], e.sides[0])]
            {
                let (ta, sa) = known_side;
                let (tb, sb) = new_side;
                let a = tri.triangles()[ta];
                let b = tri.triangles()[tb];
                let u = a[sa];
                let v = a[(sa + 1) % 3];
                let c1 = a[(sa + 2) % 3];
                let w = b[(sb + 2) % 3];
                if lifts[u].is_none() || lifts[v].is_none() || lifts[c1].is_none() {
                    done = false;
                    continue;
                }
                if lifts[w].is_some() {
                    continue;
                }
                done = false;
                // Quadrilateral (p, q, r, s) = (v, c1, u, w), unknown at s:
                // w = x d(q,r) v_p + sign d(p,q) v_r.
                let vp = lifts[v].clone().unwrap();
                let vq = lifts[c1].clone().unwrap();
                let vr = lifts[u].clone().unwrap();
                let d_pq = det2(&vp, &vq);
                let d_qr = det2(&vq, &vr);
                if d_pq.is_zero() || d_qr.is_zero() {
                    return Err(ConfigError::Degenerate(format!(
                        "coincident flags while solving across edge {:?}",
                        e.label
                    )));
                }
                let lift_w = add2(&scale2(&vp, &(x * &d_qr)), &scale2(&vr, &(&sign * &d_pq)));
                if lift_w[0].is_zero() && lift_w[1].is_zero() {
                    return Err(ConfigError::Degenerate(format!(
                        "vanishing solution across edge {:?}",
                        e.label
                    )));
                }
                lifts[w] = Some(lift_w);
                progressed = true;
            }
        }
        if done || !progressed {
            break;
        }
    }
    let mut flags = BTreeMap::new();
    for (i, v) in tri.vertices().iter().enumerate() {
        let l = lifts[i]
            .clone()
            .ok_or_else(|| ConfigError::NotPolygon(format!("vertex {:?} unreachable", v)))?;
        flags.insert(v.clone(), ProjPoint::from_lift(&l)?);
    }
    // FramedConfig::new re-checks genericity on every edge.
    FramedConfig::new(tri.clone(), flags)
}

/// Solves for lifts with the prescribed A-coordinates on every edge: the
/// base edge frame is `a_p = (A, 0)`, `a_q = (0, 1)`, and each further lift
/// is the unique solution of two linear determinant equations.
pub fn reconstruct_decorated(
    tri: &IdealTriangulation,
    a_values: &BTreeMap<String, Rat>,
) -> Result<DecoratedConfig, ConfigError> {
    polygon_orientation(tri)?;
    let edges = tri.edges();
    for e in &edges {
        match a_values.get(&e.label) {
            None => return Err(ConfigError::MissingCoordinate(e.label.clone())),
            Some(v) if v.is_zero() => return Err(ConfigError::ZeroCoordinate(e.label.clone())),
            _ => {}
        }
    }
    // Prescribed det for an ordered vertex pair.
    let mut det_of: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for e in &edges {
        let a = a_values[&e.label].clone();
        det_of.insert(e.endpoints, a.clone());
        det_of.insert((e.endpoints.1, e.endpoints.0), -a);
    }

    let n = tri.vertices().len();
    let mut lifts: Vec<Option<[Rat; 2]>> = vec![None; n];
    let base = tri.triangles()[0];
    let (p, q) = {
        let (a, b) = (base[0], base[1]);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    lifts[p] = Some([det_of[&(p, q)].clone(), Rat::zero()]);
    lifts[q] = Some([Rat::zero(), Rat::one()]);

    loop {
        let mut progressed = false;
        let mut remaining = false;
        for t in tri.triangles() {
            let known: Vec<usize> = t.iter().copied().filter(|&v| lifts[v].is_some()).collect();
            if known.len() == 2 {
                let w = *t.iter().find(|&&v| lifts[v].is_none()).unwrap();
                let (u, v) = (known[0], known[1]);
                let au = lifts[u].clone().unwrap();
                let av = lifts[v].clone().unwrap();
                let d = det2(&au, &av);
                if d.is_zero() {
                    return Err(ConfigError::Degenerate(
                        "dependent lifts while propagating".into(),
                    ));
                }
                let rhs_u = det_of
                    .get(&(u, w))
                    .ok_or_else(|| ConfigError::Degenerate("missing edge constraint".into()))?
                    .clone();
                let rhs_v = det_of
                    .get(&(v, w))
                    .ok_or_else(|| ConfigError::Degenerate("missing edge constraint".into()))?
                    .clone();
                // a_w = α a_u + β a_v with det(a_u, a_w) = rhs_u,
                // det(a_v, a_w) = rhs_v.
                let beta = &rhs_u / &d;
                let alpha = -(&rhs_v / &d);
                let lift_w = add2(&scale2(&au, &alpha), &scale2(&av, &beta));
                lifts[w] = Some(lift_w);
                progressed = true;
            } else if known.len() < 3 {
                remaining = true;
            }
        }
        if !remaining || !progressed {
            break;
        }
    }
    let mut out = BTreeMap::new();
    for (i, v) in tri.vertices().iter().enumerate() {
        let l = lifts[i]
            .clone()
            .ok_or_else(|| ConfigError::NotPolygon(format!("vertex {:?} unreachable", v)))?;
        out.insert(v.clone(), l);
    }
    let cfg = DecoratedConfig::new(tri.clone(), out)?;
    debug_assert_eq!(&cfg.a_coords().unwrap(), a_values);
    Ok(cfg)
}

/// Builds the double configuration with the prescribed `(B_j, X_j)`: the
/// front framed part from the X's with canonical (unit) lifts, the back by
/// decorated reconstruction from `A° = B·A` on the mirror polygon, with
/// `B = 1` on boundary edges.
pub fn reconstruct_double(
    tri: &IdealTriangulation,
    bs: &BTreeMap<String, Rat>,
    xs: &BTreeMap<String, Rat>,
) -> Result<DoubleConfig, ConfigError> {
    for e in tri.internal_edges() {
        match bs.get(&e.label) {
            None => return Err(ConfigError::MissingCoordinate(e.label.clone())),
            Some(v) if v.is_zero() => return Err(ConfigError::ZeroCoordinate(e.label.clone())),
            _ => {}
        }
    }
    let framed = reconstruct_framed(tri, xs)?;
    let lifts: BTreeMap<String, [Rat; 2]> = framed
        .flags()
        .into_iter()
        .map(|(v, f)| (v, f.unit_lift()))
        .collect();
    let front = DecoratedConfig::new(tri.clone(), lifts)?;
    let mut back_a = BTreeMap::new();
    for e in tri.edges() {
        let a = front.a_coord(&e.label)?;
        let b = match e.kind {
            EdgeKind::Internal(_) => bs[&e.label].clone(),
            EdgeKind::Boundary(_) => Rat::one(),
        };
        back_a.insert(e.label.clone(), a * b);
    }
    let back = reconstruct_decorated(&tri.mirror(), &back_a)?;
    DoubleConfig::new(front, back)
}
