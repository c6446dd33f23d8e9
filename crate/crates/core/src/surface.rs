//! Ideal triangulations of decorated surfaces, flips, and m-triangulation
//! seeds.
//!
//! Surfaces are purely combinatorial: triangles are ordered corner triples
//! (the listed cyclic order is the orientation), and triangle sides are
//! either glued in pairs (internal edges) or marked boundary (external
//! edges). Side `s` of a triangle runs from corner `s` to corner `s + 1`
//! (mod 3), so a consistent orientation means glued sides are traversed in
//! opposite directions.
//!
//! The exchange matrix of the m-triangulation counts oriented small edges.
//! Orientation convention: inside each triangle, the upward small triangle
//! with corners `P1 = (a+1,b,c)`, `P2 = (a,b+1,c)`, `P3 = (a,b,c+1)`
//! (`a+b+c = m-1`) is traversed `P1 -> P3 -> P2`; each small edge interior
//! to the triangle lies in exactly one upward triangle and inherits that
//! direction. Small edges lying on edges of the ideal triangulation
//! contribute nothing. The traversal direction is the calibration that makes
//! the seed of the square with one diagonal have
//! `ε_e = (+1, -1, +1, -1)` against the cyclic boundary edges, and it is
//! locked against the flag-configuration cross-ratio convention by the
//! p-map identity.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed::Seed;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid triangulation: {0}")]
    Invalid(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("cannot flip boundary edge {0:?}")]
    BoundaryFlip(String),
    #[error("flip at {0:?} is not regular")]
    NonRegularFlip(String),
    #[error("triangulation has a self-folded triangle")]
    SelfFolded,
    #[error("m = {0} is not supported here (m = 2 only)")]
    UnsupportedM(u32),
    #[error("m must be at least 2, got {0}")]
    MTooSmall(u32),
}

/// A triangle side: `(triangle index, side index 0..3)`.
pub type SideRef = (usize, usize);

/// Combinatorial ideal triangulation of a decorated surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTriangulation {
    vertices: Vec<String>,
    triangles: Vec<[usize; 3]>,
    gluings: Vec<[SideRef; 2]>,
    boundary: Vec<SideRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Index into the gluing list.
    Internal(usize),
    /// Index into the boundary list.
    Boundary(usize),
}

/// An edge of the triangulation with its derived label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub kind: EdgeKind,
    /// Vertex ids in canonical order (the global vertex order; for loops,
    /// the direction of the first side reference).
    pub endpoints: (usize, usize),
    /// Side references: one for boundary edges, two for internal ones.
    pub sides: Vec<SideRef>,
}

impl Edge {
    pub fn is_internal(&self) -> bool {
        matches!(self.kind, EdgeKind::Internal(_))
    }
}

/// Outcome of [`IdealTriangulation::validate`].
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub issues: Vec<String>,
    pub self_folded: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Edge correspondence returned by a flip: identity on every edge except
/// the flipped one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipCorrespondence {
    pub flipped_from: String,
    pub flipped_to: String,
    /// Old edge label -> new edge label, for every edge.
    pub renames: BTreeMap<String, String>,
}

/// Verdict of the flip/mutation agreement check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipCheckVerdict {
    pub edge: String,
    pub equal: bool,
    /// First disagreeing entry `(i, j, mutated value, flipped value)`.
    pub discrepancy: Option<(String, String, i64, i64)>,
}

impl IdealTriangulation {
    pub fn new(
        vertices: Vec<String>,
        triangles: Vec<[usize; 3]>,
        gluings: Vec<[SideRef; 2]>,
        boundary: Vec<SideRef>,
    ) -> Result<Self, SurfaceError> {
        let t = IdealTriangulation {
            vertices,
            triangles,
            gluings,
            boundary,
        };
        let report = t.validate();
        if !report.is_valid() {
            return Err(SurfaceError::Invalid(report.issues.join("; ")));
        }
        Ok(t)
    }

    /// Builds a triangulation from oriented triangles alone, pairing sides
    /// by their vertex sets. Fails if some vertex pair supports more than
    /// one edge (fine for polygons and simple surfaces).
    pub fn from_triangles(
        vertices: Vec<String>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, SurfaceError> {
        let mut first: BTreeMap<(usize, usize), SideRef> = BTreeMap::new();
        let mut gluings = Vec::new();
        let mut matched: Vec<SideRef> = Vec::new();
        for (ti, tri) in triangles.iter().enumerate() {
            for s in 0..3 {
                let a = tri[s];
                let b = tri[(s + 1) % 3];
                let key = (a.min(b), a.max(b));
                match first.remove(&key) {
                    None => {
                        first.insert(key, (ti, s));
                    }
                    Some(other) => {
                        gluings.push([other, (ti, s)]);
                        matched.push(other);
                        matched.push((ti, s));
                    }
                }
            }
        }
        let mut boundary = Vec::new();
        for (ti, tri) in triangles.iter().enumerate() {
            for s in 0..3 {
                let a = tri[s];
                let b = tri[(s + 1) % 3];
                let key = (a.min(b), a.max(b));
                if first.get(&key) == Some(&(ti, s)) {
                    boundary.push((ti, s));
                }
            }
        }
        Self::new(vertices, triangles, gluings, boundary)
    }

    /// Fan triangulation of the convex n-gon `p0..p(n-1)`: all diagonals
    /// from `p0`.
    pub fn polygon_fan(n: usize) -> Self {
        assert!(n >= 3);
        let vertices = (0..n).map(|i| format!("p{}", i)).collect();
        let triangles = (1..n - 1).map(|i| [0, i, i + 1]).collect();
        Self::from_triangles(vertices, triangles).expect("fan is valid")
    }

    /// Zig-zag (snake) triangulation of the convex n-gon.
    pub fn polygon_zigzag(n: usize) -> Self {
        assert!(n >= 3);
        let vertices = (0..n).map(|i| format!("p{}", i)).collect();
        // Peel triangles alternately from the low and high ends.
        let mut lo = 0usize;
        let mut hi = n - 1;
        let mut from_low = true;
        let mut triangles = Vec::new();
        while hi - lo >= 2 {
            if from_low {
                triangles.push([lo, lo + 1, hi]);
                lo += 1;
            } else {
                triangles.push([lo, hi - 1, hi]);
                hi -= 1;
            }
            from_low = !from_low;
        }
        Self::from_triangles(vertices, triangles).expect("zigzag is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn gluings(&self) -> &[[SideRef; 2]] {
        &self.gluings
    }

    pub fn boundary(&self) -> &[SideRef] {
        &self.boundary
    }

    fn side_vertices(&self, (t, s): SideRef) -> (usize, usize) {
        let tri = self.triangles[t];
        (tri[s], tri[(s + 1) % 3])
    }

    /// All edges in deterministic order: internal edges in gluing-list
    /// order, then boundary edges in boundary-list order. Labels are
    /// `"va-vb"` with endpoints in global vertex order; coincident endpoint
    /// pairs are disambiguated with `#2`, `#3`, ... in listing order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut label_count: BTreeMap<String, usize> = BTreeMap::new();
        let mut push = |kind: EdgeKind, sides: Vec<SideRef>, t: &Self, out: &mut Vec<Edge>| {
            let (a, b) = t.side_vertices(sides[0]);
            let endpoints = if a <= b { (a, b) } else { (b, a) };
            let base = format!("{}-{}", t.vertices[endpoints.0], t.vertices[endpoints.1]);
            let n = label_count.entry(base.clone()).or_insert(0);
            *n += 1;
            let label = if *n == 1 {
                base
            } else {
                format!("{}#{}", base, n)
            };
            out.push(Edge {
                label,
                kind,
                endpoints,
                sides,
            });
        };
        for (g, pair) in self.gluings.iter().enumerate() {
            push(EdgeKind::Internal(g), pair.to_vec(), self, &mut out);
        }
        for (b, side) in self.boundary.iter().enumerate() {
            push(EdgeKind::Boundary(b), vec![*side], self, &mut out);
        }
        out
    }

    pub fn edge_by_label(&self, label: &str) -> Result<Edge, SurfaceError> {
        self.edges()
            .into_iter()
            .find(|e| e.label == label)
            .ok_or_else(|| SurfaceError::UnknownEdge(label.to_string()))
    }

    pub fn internal_edges(&self) -> Vec<Edge> {
        self.edges().into_iter().filter(Edge::is_internal).collect()
    }

    /// Map from side reference to edge index (into `edges()` order).
    fn side_index(&self) -> BTreeMap<SideRef, usize> {
        let mut out = BTreeMap::new();
        for (i, e) in self.edges().iter().enumerate() {
            for s in &e.sides {
                out.insert(*s, i);
            }
        }
        out
    }

    /// Checks all structural invariants; report-valued, never fails.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let nt = self.triangles.len();
        for (ti, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                if v >= self.vertices.len() {
                    report
                        .issues
                        .push(format!("triangle {} references unknown vertex {}", ti, v));
                }
            }
        }
        let mut seen = vec![[0usize; 3]; nt];
        let mut mark = |r: SideRef, report: &mut ValidationReport| {
            if r.0 >= nt || r.1 >= 3 {
                report.issues.push(format!("side reference {:?} out of range", r));
            } else {
                seen[r.0][r.1] += 1;
            }
        };
        for pair in &self.gluings {
            mark(pair[0], &mut report);
            mark(pair[1], &mut report);
            if pair[0] == pair[1] {
                report
                    .issues
                    .push(format!("side {:?} glued to itself", pair[0]));
            }
        }
        for side in &self.boundary {
            mark(*side, &mut report);
        }
        for (ti, counts) in seen.iter().enumerate() {
            for (s, &c) in counts.iter().enumerate() {
                if c != 1 {
                    report.issues.push(format!(
                        "side ({}, {}) referenced {} times (must be exactly once)",
                        ti, s, c
                    ));
                }
            }
        }
        if !report.issues.is_empty() {
            return report;
        }
        for pair in &self.gluings {
            let (a1, b1) = self.side_vertices(pair[0]);
            let (a2, b2) = self.side_vertices(pair[1]);
            if (a1, b1) != (b2, a2) {
                if (a1, b1) == (a2, b2) {
                    report.issues.push(format!(
                        "gluing {:?} traverses both sides in the same direction (non-orientable)",
                        pair
                    ));
                } else {
                    report.issues.push(format!(
                        "gluing {:?} joins sides with different endpoints",
                        pair
                    ));
                }
            }
            if pair[0].0 == pair[1].0 {
                report.self_folded.push(pair[0].0);
            }
        }
        report.self_folded.sort_unstable();
        report.self_folded.dedup();
        report
    }

    pub fn has_self_folded(&self) -> bool {
        self.gluings.iter().any(|pair| pair[0].0 == pair[1].0)
    }

    fn triangle_is_self_folded(&self, t: usize) -> bool {
        self.gluings
            .iter()
            .any(|pair| pair[0].0 == t && pair[1].0 == t)
    }

    /// Flips the internal edge with the given label, replacing the two
    /// adjacent triangles by the other diagonal's pair. Returns the new
    /// triangulation and the canonical edge correspondence (identity away
    /// from the flipped edge).
    pub fn flip(&self, label: &str) -> Result<(Self, FlipCorrespondence), SurfaceError> {
        let edge = self.edge_by_label(label)?;
        let g = match edge.kind {
            EdgeKind::Internal(g) => g,
            EdgeKind::Boundary(_) => return Err(SurfaceError::BoundaryFlip(label.to_string())),
        };
        let [(t1, s1), (t2, s2)] = self.gluings[g];
        if t1 == t2 || self.triangle_is_self_folded(t1) || self.triangle_is_self_folded(t2) {
            return Err(SurfaceError::NonRegularFlip(label.to_string()));
        }
        let tri1 = self.triangles[t1];
        let tri2 = self.triangles[t2];
        let u = tri1[s1];
        let v = tri1[(s1 + 1) % 3];
        let c1 = tri1[(s1 + 2) % 3];
        debug_assert_eq!(tri2[s2], v);
        debug_assert_eq!(tri2[(s2 + 1) % 3], u);
        let w = tri2[(s2 + 2) % 3];

        // New triangles on the other diagonal c1-w.
        let mut triangles = self.triangles.clone();
        triangles[t1] = [c1, u, w];
        triangles[t2] = [w, v, c1];

        // Remap the four outer sides; the flipped gluing becomes the new
        // diagonal at side 2 of both triangles.
        let remap = |r: SideRef| -> SideRef {
            if r == (t1, (s1 + 1) % 3) {
                (t2, 1)
            } else if r == (t1, (s1 + 2) % 3) {
                (t1, 0)
            } else if r == (t2, (s2 + 1) % 3) {
                (t1, 1)
            } else if r == (t2, (s2 + 2) % 3) {
                (t2, 0)
            } else {
                r
            }
        };
        let mut gluings: Vec<[SideRef; 2]> = self
            .gluings
            .iter()
            .map(|pair| [remap(pair[0]), remap(pair[1])])
            .collect();
        gluings[g] = [(t1, 2), (t2, 2)];
        let boundary: Vec<SideRef> = self.boundary.iter().map(|r| remap(*r)).collect();

        let flipped = IdealTriangulation {
            vertices: self.vertices.clone(),
            triangles,
            gluings,
            boundary,
        };
        debug_assert!(flipped.validate().is_valid());

        // Edge lists share positions, so the correspondence is positional.
        let old_edges = self.edges();
        let new_edges = flipped.edges();
        let renames: BTreeMap<String, String> = old_edges
            .iter()
            .zip(new_edges.iter())
            .map(|(o, n)| (o.label.clone(), n.label.clone()))
            .collect();
        let corr = FlipCorrespondence {
            flipped_from: edge.label.clone(),
            flipped_to: renames[&edge.label].clone(),
            renames,
        };
        Ok((flipped, corr))
    }

    /// The same surface with reversed orientation: every triangle's corner
    /// order is reversed (side `s` maps to side `2 - s`).
    pub fn mirror(&self) -> Self {
        let triangles: Vec<[usize; 3]> = self
            .triangles
            .iter()
            .map(|t| [t[0], t[2], t[1]])
            .collect();
        let remap = |r: SideRef| -> SideRef { (r.0, 2 - r.1) };
        let out = IdealTriangulation {
            vertices: self.vertices.clone(),
            triangles,
            gluings: self
                .gluings
                .iter()
                .map(|p| [remap(p[0]), remap(p[1])])
                .collect(),
            boundary: self.boundary.iter().map(|r| remap(*r)).collect(),
        };
        debug_assert!(out.validate().is_valid());
        out
    }

    /// The seed of the m-triangulation: indices are the m-triangulation
    /// vertices away from the original vertices, boundary-edge labels are
    /// frozen, and the exchange matrix counts oriented small edges per the
    /// module convention.
    pub fn m_seed(&self, m: u32) -> Result<Seed, SurfaceError> {
        if m < 2 {
            return Err(SurfaceError::MTooSmall(m));
        }
        let report = self.validate();
        if !report.is_valid() {
            return Err(SurfaceError::Invalid(report.issues.join("; ")));
        }
        if self.has_self_folded() {
            return Err(SurfaceError::SelfFolded);
        }
        let edges = self.edges();
        let side_idx = self.side_index();

        // Per side reference: does the side direction agree with the edge's
        // canonical endpoint order?
        let mut side_forward: BTreeMap<SideRef, bool> = BTreeMap::new();
        for e in &edges {
            for (k, &sref) in e.sides.iter().enumerate() {
                let (a, b) = self.side_vertices(sref);
                let fwd = if a == b {
                    k == 0 // loop: first reference counts as forward
                } else {
                    (a, b) == e.endpoints
                };
                side_forward.insert(sref, fwd);
            }
        }

        // Index labels: edge-interior points, then triangle-interior points.
        let mut labels: Vec<String> = Vec::new();
        let mut frozen: Vec<String> = Vec::new();
        let mut edge_point: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        for (ei, e) in edges.iter().enumerate() {
            for pos in 1..m {
                let label = if m == 2 {
                    e.label.clone()
                } else {
                    format!("{}:{}", e.label, pos)
                };
                edge_point.insert((ei, pos), labels.len());
                if !e.is_internal() {
                    frozen.push(label.clone());
                }
                labels.push(label);
            }
        }
        let mut tri_point: BTreeMap<(usize, (u32, u32, u32)), usize> = BTreeMap::new();
        for ti in 0..self.triangles.len() {
            for x in 1..m {
                for y in 1..m {
                    if x + y >= m {
                        continue;
                    }
                    let z = m - x - y;
                    debug_assert!(z >= 1);
                    tri_point.insert((ti, (x, y, z)), labels.len());
                    labels.push(format!("t{}:{},{},{}", ti, x, y, z));
                }
            }
        }

        // Resolve a barycentric point of triangle `ti` to its global index;
        // None for corners (vertices of the ideal triangulation).
        let resolve = |ti: usize, p: (u32, u32, u32)| -> Option<usize> {
            let zeros = [p.0, p.1, p.2].iter().filter(|&&c| c == 0).count();
            match zeros {
                2 => None,
                1 => {
                    // Exactly one zero coordinate: the point sits on a side.
                    // z = 0 -> side 0 (corners 0,1), distance from corner 0 is y;
                    // x = 0 -> side 1 (corners 1,2), distance from corner 1 is z;
                    // y = 0 -> side 2 (corners 2,0), distance from corner 2 is x.
                    let (s, d) = if p.2 == 0 {
                        (0, p.1)
                    } else if p.0 == 0 {
                        (1, p.2)
                    } else {
                        (2, p.0)
                    };
                    let sref = (ti, s);
                    let ei = side_idx[&sref];
                    let pos = if side_forward[&sref] { d } else { m - d };
                    Some(edge_point[&(ei, pos)])
                }
                _ => Some(tri_point[&(ti, p)]),
            }
        };

        let n = labels.len();
        let mut eps = vec![vec![0i64; n]; n];
        for ti in 0..self.triangles.len() {
            for a in 0..m {
                for b in 0..m {
                    if a + b >= m {
                        continue;
                    }
                    let c = m - 1 - a - b;
                    let p1 = (a + 1, b, c);
                    let p2 = (a, b + 1, c);
                    let p3 = (a, b, c + 1);
                    // Reversed traversal of the upward triangle.
                    for (from, to) in [(p1, p3), (p3, p2), (p2, p1)] {
                        // Skip small edges lying on an edge of the ideal
                        // triangulation (shared zero coordinate).
                        let f = [from.0, from.1, from.2];
                        let t = [to.0, to.1, to.2];
                        if (0..3).any(|i| f[i] == 0 && t[i] == 0) {
                            continue;
                        }
                        let i = resolve(ti, from).expect("not a corner");
                        let j = resolve(ti, to).expect("not a corner");
                        eps[i][j] += 1;
                        eps[j][i] -= 1;
                    }
                }
            }
        }
        Seed::new(labels, frozen, eps).map_err(|e| SurfaceError::Invalid(e.to_string()))
    }

    /// Verifies that flipping at `label` and mutating the m = 2 seed at the
    /// same label produce the same exchange matrix under the canonical edge
    /// correspondence.
    pub fn flip_mutation_check(&self, label: &str, m: u32) -> Result<FlipCheckVerdict, SurfaceError> {
        if m != 2 {
            return Err(SurfaceError::UnsupportedM(m));
        }
        let seed = self.m_seed(2)?;
        let mutated = seed
            .mutate(label)
            .map_err(|e| SurfaceError::Invalid(e.to_string()))?;
        let (flipped, corr) = self.flip(label)?;
        let flipped_seed = flipped.m_seed(2)?;
        let old_labels: Vec<String> = seed.indices().to_vec();
        for i in &old_labels {
            for j in &old_labels {
                let want = mutated.eps(i, j).unwrap();
                let got = flipped_seed
                    .eps(&corr.renames[i], &corr.renames[j])
                    .map_err(|e| SurfaceError::Invalid(e.to_string()))?;
                if want != got {
                    return Ok(FlipCheckVerdict {
                        edge: label.to_string(),
                        equal: false,
                        discrepancy: Some((i.clone(), j.clone(), want, got)),
                    });
                }
            }
        }
        Ok(FlipCheckVerdict {
            edge: label.to_string(),
            equal: true,
            discrepancy: None,
        })
    }

    pub fn to_data(&self) -> TriangulationData {
        TriangulationData {
            vertices: self.vertices.clone(),
            triangles: self
                .triangles
                .iter()
                .map(|t| {
                    [
                        self.vertices[t[0]].clone(),
                        self.vertices[t[1]].clone(),
                        self.vertices[t[2]].clone(),
                    ]
                })
                .collect(),
            gluings: self
                .gluings
                .iter()
                .map(|p| [[p[0].0, p[0].1], [p[1].0, p[1].1]])
                .collect(),
            boundary: self.boundary.iter().map(|r| [r.0, r.1]).collect(),
        }
    }

    pub fn from_data(data: &TriangulationData) -> Result<Self, SurfaceError> {
        let pos: BTreeMap<&String, usize> = data
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        if pos.len() != data.vertices.len() {
            return Err(SurfaceError::Invalid("duplicate vertex labels".into()));
        }
        let mut triangles = Vec::with_capacity(data.triangles.len());
        for t in &data.triangles {
            let mut tri = [0usize; 3];
            for (slot, name) in tri.iter_mut().zip(t.iter()) {
                *slot = *pos
                    .get(name)
                    .ok_or_else(|| SurfaceError::Invalid(format!("unknown vertex {:?}", name)))?;
            }
            triangles.push(tri);
        }
        Self::new(
            data.vertices.clone(),
            triangles,
            data.gluings
                .iter()
                .map(|p| [(p[0][0], p[0][1]), (p[1][0], p[1][1])])
                .collect(),
            data.boundary.iter().map(|r| (r[0], r[1])).collect(),
        )
    }
}

/// Wire format for the triangulation file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TriangulationData {
    pub vertices: Vec<String>,
    pub triangles: Vec<[String; 3]>,
    pub gluings: Vec<[[usize; 2]; 2]>,
    pub boundary: Vec<[usize; 2]>,
}

impl fmt::Display for IdealTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tris: Vec<String> = self
            .triangles
            .iter()
            .map(|t| {
                format!(
                    "({},{},{})",
                    self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]
                )
            })
            .collect();
        write!(f, "triangulation[{}]", tris.join(" "))
    }
}

/// All triangulations of the convex n-gon `p0..p(n-1)` (Catalan-many),
/// deterministically ordered.
pub fn polygon_triangulations(n: usize) -> Vec<IdealTriangulation> {
    assert!(n >= 3);
    fn rec(lo: usize, hi: usize) -> Vec<Vec<[usize; 3]>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for mid in (lo + 1)..hi {
            for left in rec(lo, mid) {
                for right in rec(mid, hi) {
                    let mut tris = left.clone();
                    tris.push([lo, mid, hi]);
                    tris.extend(right);
                    out.push(tris);
                }
            }
        }
        out
    }
    let vertices: Vec<String> = (0..n).map(|i| format!("p{}", i)).collect();
    rec(0, n - 1)
        .into_iter()
        .map(|tris| {
            IdealTriangulation::from_triangles(vertices.clone(), tris).expect("polygon is valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn square() -> IdealTriangulation {
        IdealTriangulation::polygon_fan(4)
    }

    #[test]
    fn square_structure() {
        let t = square();
        assert!(t.validate().is_valid());
        let edges = t.edges();
        assert_eq!(edges.len(), 5);
        assert_eq!(t.internal_edges().len(), 1);
        assert_eq!(t.internal_edges()[0].label, "p0-p2");
    }

    #[test]
    fn self_folded_detected() {
        // A triangle glued to itself along two sides.
        let t = IdealTriangulation {
            vertices: vec!["a".into(), "b".into()],
            triangles: vec![[0, 1, 0]],
            gluings: vec![[(0, 0), (0, 1)]],
            boundary: vec![(0, 2)],
        };
        let report = t.validate();
        assert!(report.is_valid());
        assert_eq!(report.self_folded, vec![0]);
        assert!(t.has_self_folded());
        assert_eq!(t.m_seed(2), Err(SurfaceError::SelfFolded));
    }

    #[test]
    fn inconsistent_orientation_flagged() {
        // Second triangle listed clockwise: glued sides run the same way.
        let t = IdealTriangulation {
            vertices: (0..4).map(|i| format!("p{}", i)).collect(),
            triangles: vec![[0, 1, 2], [0, 3, 2]],
            gluings: vec![[(0, 2), (1, 2)]],
            boundary: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        };
        let report = t.validate();
        assert!(!report.is_valid());
        assert!(report.issues[0].contains("non-orientable"));
    }

    #[test]
    fn flip_square_diagonal() {
        let t = square();
        let (f, corr) = t.flip("p0-p2").unwrap();
        assert_eq!(corr.flipped_to, "p1-p3");
        assert!(f.validate().is_valid());
        assert_eq!(f.internal_edges()[0].label, "p1-p3");
        // All boundary labels unchanged.
        for e in t.edges() {
            if e.label != "p0-p2" {
                assert_eq!(corr.renames[&e.label], e.label);
            }
        }
    }

    #[test]
    fn flip_is_an_involution_up_to_correspondence() {
        let t = square();
        let (f1, c1) = t.flip("p0-p2").unwrap();
        let (f2, c2) = f1.flip(&c1.flipped_to).unwrap();
        assert_eq!(c2.flipped_to, "p0-p2");
        // Same triangles as cyclic triples.
        let norm = |tri: &[usize; 3]| {
            let mut best = *tri;
            for r in 0..3 {
                let rot = [tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]];
                if rot < best {
                    best = rot;
                }
            }
            best
        };
        let set1: BTreeSet<_> = t.triangles().iter().map(norm).collect();
        let set2: BTreeSet<_> = f2.triangles().iter().map(norm).collect();
        assert_eq!(set1, set2);
    }

    #[test]
    fn boundary_flip_rejected() {
        let t = square();
        assert_eq!(
            t.flip("p0-p1"),
            Err(SurfaceError::BoundaryFlip("p0-p1".into()))
        );
    }

    #[test]
    fn pentagon_flip_graph_has_five_nodes() {
        // Catalan number C3 = 5 triangulations of the pentagon, reachable
        // by flips from any one of them.
        let start = IdealTriangulation::polygon_fan(5);
        let key = |t: &IdealTriangulation| -> BTreeSet<(usize, usize)> {
            t.internal_edges().iter().map(|e| e.endpoints).collect()
        };
        let mut seen = BTreeSet::new();
        let mut queue = vec![start.clone()];
        seen.insert(key(&start));
        while let Some(t) = queue.pop() {
            for e in t.internal_edges() {
                let (f, _) = t.flip(&e.label).unwrap();
                if seen.insert(key(&f)) {
                    queue.push(f);
                }
            }
        }
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(polygon_triangulations(4).len(), 2);
        assert_eq!(polygon_triangulations(5).len(), 5);
        assert_eq!(polygon_triangulations(6).len(), 14);
        assert_eq!(polygon_triangulations(7).len(), 42);
        assert_eq!(polygon_triangulations(8).len(), 132);
    }

    #[test]
    fn square_m2_seed() {
        let seed = square().m_seed(2).unwrap();
        assert_eq!(seed.size(), 5);
        assert_eq!(seed.non_frozen().count(), 1);
        // The diagonal's row against the cyclic boundary edges.
        assert_eq!(seed.eps("p0-p2", "p0-p1").unwrap(), 1);
        assert_eq!(seed.eps("p0-p2", "p1-p2").unwrap(), -1);
        assert_eq!(seed.eps("p0-p2", "p2-p3").unwrap(), 1);
        assert_eq!(seed.eps("p0-p2", "p0-p3").unwrap(), -1);
    }

    #[test]
    fn single_triangle_m2_seed_is_cyclic() {
        let t = IdealTriangulation::polygon_fan(3);
        let seed = t.m_seed(2).unwrap();
        assert_eq!(seed.size(), 3);
        assert_eq!(seed.non_frozen().count(), 0);
        // Side midpoints in boundary order p0-p1, p1-p2, p0-p2.
        assert_eq!(
            *seed.matrix(),
            vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]
        );
    }

    #[test]
    fn single_triangle_m3_counts() {
        let t = IdealTriangulation::polygon_fan(3);
        let seed = t.m_seed(3).unwrap();
        assert_eq!(seed.size(), 7);
        assert_eq!(seed.non_frozen().count(), 1);
    }

    #[test]
    fn m_seed_counting_formula() {
        // |I| = (#edges)(m-1) + (#triangles)(m-1)(m-2)/2.
        for n in [4, 5, 6] {
            for t in polygon_triangulations(n) {
                let ne = t.edges().len();
                let nt = t.triangles().len();
                for m in [2u32, 3, 4] {
                    let seed = t.m_seed(m).unwrap();
                    let expect =
                        ne * (m as usize - 1) + nt * ((m - 1) * (m - 2) / 2) as usize;
                    assert_eq!(seed.size(), expect);
                    assert!(seed.validate().is_ok());
                }
            }
        }
    }

    #[test]
    fn flip_mutation_agreement_small_cases() {
        let sq = square();
        assert!(sq.flip_mutation_check("p0-p2", 2).unwrap().equal);

        let pent = IdealTriangulation::polygon_fan(5);
        for e in pent.internal_edges() {
            assert!(pent.flip_mutation_check(&e.label, 2).unwrap().equal);
        }

        let hex = IdealTriangulation::polygon_zigzag(6);
        for e in hex.internal_edges() {
            assert!(hex.flip_mutation_check(&e.label, 2).unwrap().equal);
        }

        assert_eq!(
            sq.flip_mutation_check("p0-p2", 3),
            Err(SurfaceError::UnsupportedM(3))
        );
    }

    #[test]
    fn mirror_reverses_orientation() {
        let t = square();
        let m = t.mirror();
        assert!(m.validate().is_valid());
        // Same edges under the same labels.
        let l1: Vec<String> = t.edges().into_iter().map(|e| e.label).collect();
        let l2: Vec<String> = m.edges().into_iter().map(|e| e.label).collect();
        assert_eq!(l1, l2);
        // The m = 2 exchange matrix flips sign under orientation reversal.
        let s = t.m_seed(2).unwrap();
        let sm = m.m_seed(2).unwrap();
        for i in s.indices() {
            for j in s.indices() {
                assert_eq!(s.eps(i, j).unwrap(), -sm.eps(i, j).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = IdealTriangulation::polygon_zigzag(6);
        let data = t.to_data();
        let json = serde_json::to_string(&data).unwrap();
        let data2: TriangulationData = serde_json::from_str(&json).unwrap();
        let back = IdealTriangulation::from_data(&data2).unwrap();
        assert_eq!(back, t);
        assert_eq!(serde_json::to_string(&back.to_data()).unwrap(), json);
    }
}
