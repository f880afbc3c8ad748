//! Triangulated convex surface: OFF ingestion, adjacency, per-face planar
//! frames and the across-edge unfolding motions everything else builds on.

use crate::geom::{v2, v3, Motion2, V2, V3};
use crate::tol;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("OFF parse error: {0}")]
    Parse(String),
    #[error("non-manifold edge ({0}, {1}): {2} incident faces")]
    NonManifold(usize, usize, usize),
    #[error("degenerate face {0} (area below threshold)")]
    DegenerateFace(usize),
    #[error("vertex index {0} out of range")]
    BadIndex(usize),
    #[error("Euler relation violated: V={v} E={e} F={f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("point outside face {0}")]
    OutsideFace(usize),
    #[error("edge {0} not incident to face {1}")]
    EdgeNotIncident(usize, usize),
    #[error("unsupported source point class: polyhedron vertex")]
    VertexSource,
    #[error("degeneracy: {0}")]
    Degenerate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    /// Endpoint vertex ids, ascending.
    pub v: [usize; 2],
    /// The two incident faces, in discovery order.
    pub faces: [usize; 2],
}

#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub origin: V3,
    pub ex: V3,
    pub ey: V3,
    pub normal: V3,
}

impl Frame {
    pub fn to2d(&self, p: V3) -> V2 {
        let d = p - self.origin;
        v2(d.dot(self.ex), d.dot(self.ey))
    }
    pub fn to3d(&self, p: V2) -> V3 {
        self.origin + self.ex * p.x + self.ey * p.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PointClass {
    Vertex(usize),
    EdgeInterior(usize),
    FaceInterior,
}

/// A point on the surface: a face, local coordinates in that face's frame,
/// and its dimension class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub face: usize,
    pub xy: V2,
    pub class: PointClass,
}

#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    /// Vertex positions, normalized to unit diameter.
    pub vertices: Vec<V3>,
    pub faces: Vec<[usize; 3]>,
    pub edges: Vec<Edge>,
    /// Per face, edge id of side (corner k, corner k+1 mod 3).
    pub face_edges: Vec<[usize; 3]>,
    pub frames: Vec<Frame>,
    /// Face corner coordinates in the face's own frame.
    pub corners2d: Vec<[V2; 3]>,
    pub vertex_faces: Vec<Vec<usize>>,
    /// Original diameter; multiply internal lengths by this to recover input units.
    pub scale: f64,
}

impl SurfaceMesh {
    pub fn from_parts(vertices: Vec<V3>, faces_in: Vec<Vec<usize>>) -> Result<SurfaceMesh, MeshError> {
        let nv = vertices.len();
        if nv < 4 {
            return Err(MeshError::Parse(format!("too few vertices: {nv}")));
        }
        let mut faces: Vec<[usize; 3]> = Vec::new();
        for poly in &faces_in {
            if poly.len() < 3 {
                return Err(MeshError::Parse(format!("face with {} vertices", poly.len())));
            }
            for &i in poly {
                if i >= nv {
                    return Err(MeshError::BadIndex(i));
                }
            }
            // fan triangulation from the first vertex
            for k in 1..poly.len() - 1 {
                faces.push([poly[0], poly[k], poly[k + 1]]);
            }
        }

        // normalize to unit diameter
        let mut diam: f64 = 0.0;
        for i in 0..nv {
            for j in i + 1..nv {
                diam = diam.max(vertices[i].dist(vertices[j]));
            }
        }
        if diam <= 0.0 {
            return Err(MeshError::Parse("zero-diameter vertex set".into()));
        }
        let vertices: Vec<V3> = vertices.into_iter().map(|p| p / diam).collect();

        // orient all faces outward (convex: away from the centroid)
        let centroid = vertices.iter().fold(v3(0.0, 0.0, 0.0), |a, &p| a + p) / nv as f64;
        for f in faces.iter_mut() {
            let [a, b, c] = *f;
            let n = (vertices[b] - vertices[a]).cross(vertices[c] - vertices[a]);
            let fc = (vertices[a] + vertices[b] + vertices[c]) / 3.0;
            if n.dot(fc - centroid) < 0.0 {
                f.swap(1, 2);
            }
        }

        for (fi, f) in faces.iter().enumerate() {
            let [a, b, c] = *f;
            let n = (vertices[b] - vertices[a]).cross(vertices[c] - vertices[a]);
            if n.norm() * 0.5 < tol::TOL_AREA {
                return Err(MeshError::DegenerateFace(fi));
            }
        }

        // derive edges
        let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                edge_map.entry(key).or_default().push(fi);
            }
        }
        let mut edges = Vec::with_capacity(edge_map.len());
        let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (key, inc) in &edge_map {
            if inc.len() != 2 {
                return Err(MeshError::NonManifold(key.0, key.1, inc.len()));
            }
            edge_ids.insert(*key, edges.len());
            edges.push(Edge { v: [key.0, key.1], faces: [inc[0], inc[1]] });
        }

        let (v, e, f) = (nv, edges.len(), faces.len());
        if v + f != e + 2 {
            return Err(MeshError::Euler { v, e, f });
        }

        let face_edges: Vec<[usize; 3]> = faces
            .iter()
            .map(|f| {
                [0, 1, 2].map(|k| {
                    let (a, b) = (f[k], f[(k + 1) % 3]);
                    edge_ids[&(a.min(b), a.max(b))]
                })
            })
            .collect();

        let frames: Vec<Frame> = faces
            .iter()
            .map(|f| {
                let [a, b, c] = *f;
                let origin = vertices[a];
                let ex = (vertices[b] - vertices[a]).normalized();
                let normal = (vertices[b] - vertices[a]).cross(vertices[c] - vertices[a]).normalized();
                let ey = normal.cross(ex);
                Frame { origin, ex, ey, normal }
            })
            .collect();

        let corners2d: Vec<[V2; 3]> = faces
            .iter()
            .zip(&frames)
            .map(|(f, fr)| [0, 1, 2].map(|k| fr.to2d(vertices[f[k]])))
            .collect();

        let mut vertex_faces = vec![Vec::new(); nv];
        for (fi, f) in faces.iter().enumerate() {
            for &vi in f {
                vertex_faces[vi].push(fi);
            }
        }

        Ok(SurfaceMesh {
            vertices,
            faces,
            edges,
            face_edges,
            frames,
            corners2d,
            vertex_faces,
            scale: diam,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn other_face(&self, edge: usize, face: usize) -> usize {
        let e = &self.edges[edge];
        if e.faces[0] == face {
            e.faces[1]
        } else {
            e.faces[0]
        }
    }

    pub fn face_has_edge(&self, face: usize, edge: usize) -> bool {
        self.face_edges[face].contains(&edge)
    }

    /// The face corner not on `edge`.
    pub fn opposite_corner(&self, face: usize, edge: usize) -> usize {
        let ev = self.edges[edge].v;
        for k in 0..3 {
            let vi = self.faces[face][k];
            if vi != ev[0] && vi != ev[1] {
                return k;
            }
        }
        unreachable!("edge not on face")
    }

    /// Endpoints of `edge` (in edge.v order) in `face`'s frame.
    pub fn edge_in_face(&self, edge: usize, face: usize) -> (V2, V2) {
        let e = &self.edges[edge];
        let fr = &self.frames[face];
        (fr.to2d(self.vertices[e.v[0]]), fr.to2d(self.vertices[e.v[1]]))
    }

    /// A vertex of `face` in its frame.
    pub fn vertex_in_face(&self, vertex: usize, face: usize) -> V2 {
        self.frames[face].to2d(self.vertices[vertex])
    }

    /// The point at parameter t along `edge` (from v[0] to v[1]) as a
    /// SurfacePoint in the frame of the edge's first incident face.
    pub fn edge_point(&self, edge: usize, t: f64) -> SurfacePoint {
        let e = &self.edges[edge];
        let face = e.faces[0];
        let (a, b) = self.edge_in_face(edge, face);
        let xy = a.lerp(b, t);
        let class = if t.abs() <= tol::TOL_PT {
            PointClass::Vertex(e.v[0])
        } else if (1.0 - t).abs() <= tol::TOL_PT {
            PointClass::Vertex(e.v[1])
        } else {
            PointClass::EdgeInterior(edge)
        };
        SurfacePoint { face, xy, class }
    }

    /// Parameter of an edge-interior point along its edge.
    pub fn edge_param(&self, p: &SurfacePoint) -> Option<f64> {
        match p.class {
            PointClass::EdgeInterior(e) => {
                let (a, b) = self.edge_in_face(e, p.face);
                let ab = b - a;
                Some((p.xy - a).dot(ab) / ab.norm2())
            }
            _ => None,
        }
    }

    pub fn vertex_point(&self, vertex: usize) -> SurfacePoint {
        let face = self.vertex_faces[vertex][0];
        SurfacePoint {
            face,
            xy: self.vertex_in_face(vertex, face),
            class: PointClass::Vertex(vertex),
        }
    }

    pub fn face_centroid(&self, face: usize) -> SurfacePoint {
        let c = self.corners2d[face];
        SurfacePoint {
            face,
            xy: (c[0] + c[1] + c[2]) / 3.0,
            class: PointClass::FaceInterior,
        }
    }

    pub fn point3(&self, p: &SurfacePoint) -> V3 {
        self.frames[p.face].to3d(p.xy)
    }

    /// Express a surface point lying on `to_face` (on its boundary or a
    /// shared edge) in that face's frame.
    pub fn transfer(&self, p: &SurfacePoint, to_face: usize) -> V2 {
        self.frames[to_face].to2d(self.point3(p))
    }

    /// Does this surface point lie on `face`? (same face, shared edge, or a
    /// vertex of the face)
    pub fn point_on_face(&self, p: &SurfacePoint, face: usize) -> bool {
        if p.face == face {
            return true;
        }
        match p.class {
            PointClass::Vertex(v) => self.faces[face].contains(&v),
            PointClass::EdgeInterior(e) => self.face_has_edge(face, e),
            PointClass::FaceInterior => false,
        }
    }

    /// The rigid motion taking the frame coordinates of the face across
    /// `shared_edge` into `from_face`'s frame, flattening the dihedral.
    pub fn unfold_across(&self, from_face: usize, shared_edge: usize) -> Result<Motion2, MeshError> {
        if !self.face_has_edge(from_face, shared_edge) {
            return Err(MeshError::EdgeNotIncident(shared_edge, from_face));
        }
        let g = self.other_face(shared_edge, from_face);
        let (a_f, b_f) = self.edge_in_face(shared_edge, from_face);
        let (a_g, b_g) = self.edge_in_face(shared_edge, g);
        Ok(Motion2::mapping(a_g, b_g, a_f, b_f))
    }

    /// Total face angle at a vertex; 2π − this is the angle deficit.
    pub fn vertex_angle(&self, vertex: usize) -> f64 {
        let mut total = 0.0;
        for &f in &self.vertex_faces[vertex] {
            let k = self.faces[f].iter().position(|&v| v == vertex).unwrap();
            let c = self.corners2d[f];
            let u = c[(k + 1) % 3] - c[k];
            let w = c[(k + 2) % 3] - c[k];
            total += (u.dot(w) / (u.norm() * w.norm())).clamp(-1.0, 1.0).acos();
        }
        total
    }

    /// Classify local coordinates on a face.
    pub fn locate(&self, face: usize, xy: V2) -> Result<SurfacePoint, MeshError> {
        let c = self.corners2d[face];
        // barycentric containment with slack
        let area = crate::geom::orient2d(c[0], c[1], c[2]);
        for k in 0..3 {
            let s = crate::geom::orient2d(c[k], c[(k + 1) % 3], xy) / area;
            if s < -tol::TOL_PT {
                return Err(MeshError::OutsideFace(face));
            }
        }
        for k in 0..3 {
            if xy.dist(c[k]) <= tol::TOL_PT {
                return Ok(SurfacePoint { face, xy, class: PointClass::Vertex(self.faces[face][k]) });
            }
        }
        for k in 0..3 {
            if crate::geom::point_seg_dist(xy, c[k], c[(k + 1) % 3]) <= tol::TOL_PT {
                return Ok(SurfacePoint {
                    face,
                    xy,
                    class: PointClass::EdgeInterior(self.face_edges[face][k]),
                });
            }
        }
        Ok(SurfacePoint { face, xy, class: PointClass::FaceInterior })
    }

    pub fn diameter_original(&self) -> f64 {
        self.scale
    }

    /// Locate a 3-D point given in original (input) units on the surface.
    pub fn surface_point_at(&self, p_original: V3) -> Option<SurfacePoint> {
        let q = p_original / self.scale;
        for f in 0..self.n_faces() {
            let xy = self.frames[f].to2d(q);
            if self.frames[f].to3d(xy).dist(q) > tol::TOL_PT {
                continue;
            }
            if let Ok(sp) = self.locate(f, xy) {
                return Some(sp);
            }
        }
        None
    }

    /// A point a touch off vertex `v` toward the centroid of one of its
    /// incident faces; stands in for the vertex as a source.
    pub fn perturbed_vertex_point(&self, v: usize, eps: f64) -> SurfacePoint {
        let f = self.vertex_faces[v][0];
        let vloc = self.vertex_in_face(v, f);
        let c = self.corners2d[f];
        let centroid = (c[0] + c[1] + c[2]) / 3.0;
        let xy = vloc + (centroid - vloc).normalized() * eps;
        self.locate(f, xy).expect("perturbed point stays on the face")
    }
}

/// Result of the convexity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub pass: bool,
    /// (vertex, face) pairs with the vertex beyond the face plane.
    pub violations: Vec<(usize, usize, f64)>,
}

pub fn validate_convex(mesh: &SurfaceMesh) -> ConvexityReport {
    let mut violations = Vec::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        let fr = &mesh.frames[fi];
        let p0 = mesh.vertices[f[0]];
        for (vi, &v) in mesh.vertices.iter().enumerate() {
            let d = (v - p0).dot(fr.normal);
            if d > tol::TOL_PLANE {
                violations.push((vi, fi, d));
            }
        }
    }
    ConvexityReport { pass: violations.is_empty(), violations }
}

pub fn load_off(text: &str) -> Result<SurfaceMesh, MeshError> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();
    let header = tokens.next().ok_or_else(|| MeshError::Parse("empty document".into()))?;
    if header != "OFF" {
        return Err(MeshError::Parse(format!("expected OFF header, got {header:?}")));
    }
    let mut next_num = |what: &str| -> Result<f64, MeshError> {
        tokens
            .next()
            .ok_or_else(|| MeshError::Parse(format!("unexpected end of input reading {what}")))?
            .parse::<f64>()
            .map_err(|e| MeshError::Parse(format!("bad {what}: {e}")))
    };
    let nv = next_num("vertex count")? as usize;
    let nf = next_num("face count")? as usize;
    let _ne = next_num("edge count")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let x = next_num("coordinate")?;
        let y = next_num("coordinate")?;
        let z = next_num("coordinate")?;
        vertices.push(v3(x, y, z));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let k = next_num("face size")? as usize;
        let mut poly = Vec::with_capacity(k);
        for _ in 0..k {
            poly.push(next_num("face index")? as usize);
        }
        faces.push(poly);
    }
    SurfaceMesh::from_parts(vertices, faces)
}

/// Serialize back to OFF in original units. Byte-stable for a given mesh.
pub fn write_off(mesh: &SurfaceMesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} {}\n", mesh.n_vertices(), mesh.n_faces(), mesh.n_edges()));
    for v in &mesh.vertices {
        let p = *v * mesh.scale;
        out.push_str(&format!("{:.17} {:.17} {:.17}\n", p.x, p.y, p.z));
    }
    for f in &mesh.faces {
        out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
    }
    out
}
