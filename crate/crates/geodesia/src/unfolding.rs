//! Edge-sequence algebra: composing unfolding motions along a sequence,
//! realizing candidate geodesics as straight segments, and source images.

use crate::geom::{line_intersect_param, Motion2, V2};
use crate::mesh::{MeshError, PointClass, SurfaceMesh, SurfacePoint};
use crate::tol;
use serde::{Deserialize, Serialize};

/// An ordered list of crossed edges, anchored at the face containing the
/// start of the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSequence {
    pub edges: Vec<usize>,
    pub anchor_face: usize,
}

impl EdgeSequence {
    pub fn new(anchor_face: usize, edges: Vec<usize>) -> EdgeSequence {
        EdgeSequence { edges, anchor_face }
    }

    pub fn empty(anchor_face: usize) -> EdgeSequence {
        EdgeSequence { edges: Vec::new(), anchor_face }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Adjacency: consecutive edges share a face reachable by crossing, and
    /// the first edge bounds the anchor face.
    pub fn is_adjacent(&self, mesh: &SurfaceMesh) -> bool {
        let mut face = self.anchor_face;
        for &e in &self.edges {
            if !mesh.face_has_edge(face, e) {
                return false;
            }
            face = mesh.other_face(e, face);
        }
        true
    }

    pub fn has_repeats(&self) -> bool {
        for i in 0..self.edges.len() {
            if self.edges[i + 1..].contains(&self.edges[i]) {
                return true;
            }
        }
        false
    }

    /// The face reached after crossing every edge.
    pub fn last_face(&self, mesh: &SurfaceMesh) -> usize {
        let mut face = self.anchor_face;
        for &e in &self.edges {
            face = mesh.other_face(e, face);
        }
        face
    }

    /// The sequence of faces visited, starting at the anchor.
    pub fn face_chain(&self, mesh: &SurfaceMesh) -> Vec<usize> {
        let mut chain = vec![self.anchor_face];
        for &e in &self.edges {
            chain.push(mesh.other_face(e, *chain.last().unwrap()));
        }
        chain
    }

    pub fn reversed(&self, mesh: &SurfaceMesh) -> EdgeSequence {
        let mut edges: Vec<usize> = self.edges.clone();
        edges.reverse();
        EdgeSequence { edges, anchor_face: self.last_face(mesh) }
    }
}

/// All faces of a sequence unfolded into the anchor face's plane.
#[derive(Debug, Clone)]
pub struct UnfoldedStrip {
    pub seq: EdgeSequence,
    /// Faces visited (len = edges + 1, starts with the anchor).
    pub faces: Vec<usize>,
    /// Motion taking each face's frame coordinates into the anchor plane.
    pub motions: Vec<Motion2>,
    /// Unfolded crossed-edge endpoints, in each edge's `v` order.
    pub edges2d: Vec<(V2, V2)>,
    /// Outer boundary of the union of unfolded faces, counterclockwise.
    pub polygon: Vec<V2>,
}

/// A realized straight path in an unfolded strip.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeodesicPath {
    pub source: SurfacePoint,
    pub target: SurfacePoint,
    pub seq: EdgeSequence,
    pub crossings: Vec<SurfacePoint>,
    pub length: f64,
}

pub fn compose_unfolding(mesh: &SurfaceMesh, seq: &EdgeSequence) -> Result<UnfoldedStrip, MeshError> {
    let mut faces = vec![seq.anchor_face];
    let mut motions = vec![Motion2::IDENTITY];
    let mut edges2d = Vec::with_capacity(seq.edges.len());
    let c = mesh.corners2d[seq.anchor_face];
    let mut polygon: Vec<V2> = c.to_vec();

    for &e in &seq.edges {
        let face = *faces.last().unwrap();
        if !mesh.face_has_edge(face, e) {
            return Err(MeshError::EdgeNotIncident(e, face));
        }
        let m = *motions.last().unwrap();
        let step = mesh.unfold_across(face, e)?;
        let g = mesh.other_face(e, face);
        let mg = m.compose(step);

        let (a, b) = mesh.edge_in_face(e, face);
        let (ai, bi) = (m.apply(a), m.apply(b));
        edges2d.push((ai, bi));

        // glue g's third corner into the boundary polygon between the shared
        // edge's endpoint images
        let ck = mesh.opposite_corner(g, e);
        let third = mg.apply(mesh.corners2d[g][ck]);
        let np = polygon.len();
        let mut inserted = false;
        for i in 0..np {
            let (p, q) = (polygon[i], polygon[(i + 1) % np]);
            let close = |u: V2, v: V2| u.dist(v) < 1e-9;
            if (close(p, ai) && close(q, bi)) || (close(p, bi) && close(q, ai)) {
                polygon.insert(i + 1, third);
                inserted = true;
                break;
            }
        }
        if !inserted {
            return Err(MeshError::Degenerate(format!(
                "edge {e} image is not a free boundary side of the strip"
            )));
        }

        faces.push(g);
        motions.push(mg);
    }

    Ok(UnfoldedStrip { seq: seq.clone(), faces, motions, edges2d, polygon })
}

impl UnfoldedStrip {
    /// Image of a point on face `faces[k]` in the anchor plane.
    pub fn image(&self, k: usize, local: V2) -> V2 {
        self.motions[k].apply(local)
    }
}

/// Realize the straight path s→t through the strip of `seq`, or None when
/// the segment does not cross exactly the strip's shared edges in order,
/// each in its open interior.
pub fn realize_geodesic(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    t: &SurfacePoint,
    seq: &EdgeSequence,
) -> Result<Option<GeodesicPath>, MeshError> {
    if !mesh.point_on_face(s, seq.anchor_face) {
        return Err(MeshError::OutsideFace(seq.anchor_face));
    }
    let strip = compose_unfolding(mesh, seq)?;
    let last = *strip.faces.last().unwrap();
    if !mesh.point_on_face(t, last) {
        return Err(MeshError::OutsideFace(last));
    }
    let s_img = mesh.transfer(s, seq.anchor_face);
    let t_img = strip.image(strip.faces.len() - 1, mesh.transfer(t, last));

    let dir = t_img - s_img;
    let total = dir.norm();
    if total < tol::TOL_PT {
        if seq.is_empty() {
            return Ok(Some(GeodesicPath {
                source: *s,
                target: *t,
                seq: seq.clone(),
                crossings: Vec::new(),
                length: 0.0,
            }));
        }
        return Ok(None);
    }

    let mut crossings = Vec::with_capacity(seq.edges.len());
    let mut prev_ta = 0.0;
    for (k, &e) in seq.edges.iter().enumerate() {
        let (a, b) = strip.edges2d[k];
        let ta = match line_intersect_param(s_img, t_img, a, b) {
            Some(v) => v,
            None => return Ok(None),
        };
        let tb = match line_intersect_param(a, b, s_img, t_img) {
            Some(v) => v,
            None => return Ok(None),
        };
        // crossing must advance along the ray and hit the open edge interior
        // with endpoint clearance
        if ta <= prev_ta || ta >= 1.0 {
            return Ok(None);
        }
        let hit = a.lerp(b, tb);
        if hit.dist(a) <= tol::TOL_PT || hit.dist(b) <= tol::TOL_PT || !(0.0..=1.0).contains(&tb) {
            return Ok(None);
        }
        prev_ta = ta;
        crossings.push(mesh.edge_point(e, tb));
    }

    // vertex avoidance: the open segment keeps clear of every unfolded strip
    // corner except at its own endpoints
    for (k, &f) in strip.faces.iter().enumerate() {
        for corner in mesh.corners2d[f] {
            let img = strip.image(k, corner);
            if img.dist(s_img) <= tol::TOL_PT || img.dist(t_img) <= tol::TOL_PT {
                continue;
            }
            if crate::geom::point_seg_dist(img, s_img, t_img) <= tol::TOL_PT {
                return Ok(None);
            }
        }
    }

    Ok(Some(GeodesicPath {
        source: *s,
        target: *t,
        seq: seq.clone(),
        crossings,
        length: total,
    }))
}

/// Image of the source point in the final face's frame: the inverse strip
/// motion applied to s. Linear in s's local coordinates.
pub fn source_image(mesh: &SurfaceMesh, s: &SurfacePoint, seq: &EdgeSequence) -> Result<V2, MeshError> {
    if !mesh.point_on_face(s, seq.anchor_face) {
        return Err(MeshError::OutsideFace(seq.anchor_face));
    }
    let strip = compose_unfolding(mesh, seq)?;
    let s_img = mesh.transfer(s, seq.anchor_face);
    Ok(strip.motions.last().unwrap().inverse().apply(s_img))
}

/// Length of the path measured face by face (crossing point to crossing
/// point in 3-D); equals the unfolded length for genuine geodesics.
pub fn chain_length(mesh: &SurfaceMesh, path: &GeodesicPath) -> f64 {
    let mut pts = vec![mesh.point3(&path.source)];
    for c in &path.crossings {
        pts.push(mesh.point3(c));
    }
    pts.push(mesh.point3(&path.target));
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Check that a surface point is not a polyhedron vertex (callers perturb).
pub fn reject_vertex_source(p: &SurfacePoint) -> Result<(), MeshError> {
    if matches!(p.class, PointClass::Vertex(_)) {
        Err(MeshError::VertexSource)
    } else {
        Ok(())
    }
}
