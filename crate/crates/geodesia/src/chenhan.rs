//! Sequence-tree propagation from a source point: exact geodesic distances
//! and shortest vertex paths via "one angle one split" occupancy pruning,
//! plus the face-constrained variant and admissible interval sets.
//!
//! All node geometry lives in local face frames: a node's source image is
//! expressed in the frame of the face the node's edge was crossed into, so
//! competing nodes on the same (edge, face) key are directly comparable.

use crate::geom::V2;
use crate::mesh::{MeshError, PointClass, SurfaceMesh, SurfacePoint};
use crate::tol;
use crate::unfolding::{realize_geodesic, reject_vertex_source, EdgeSequence, GeodesicPath};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct CHNode {
    /// The edge this node crossed.
    pub edge: usize,
    /// Face the path traveled through before crossing `edge`.
    pub from_face: usize,
    /// Face on the far side of `edge`.
    pub entered_face: usize,
    /// Unfolded source image, in `entered_face`'s frame.
    pub src: V2,
    /// Projection interval on `edge`, parameterized along edge.v[0]→v[1].
    pub interval: (f64, f64),
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub depth: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct VertexHit {
    pub dist: f64,
    /// Node whose projection covers the vertex; None for a direct in-face hit.
    pub node: Option<usize>,
    /// Anchor face of the hit's (possibly empty) sequence.
    pub anchor_face: usize,
}

#[derive(Debug, Clone)]
pub struct CHTree {
    pub source: SurfacePoint,
    pub nodes: Vec<CHNode>,
    pub roots: Vec<usize>,
    pub alive: Vec<bool>,
    /// Best covering candidates per polyhedron vertex, ascending distance.
    pub vertex_hits: Vec<Vec<VertexHit>>,
    pub degeneracies: Vec<String>,
    pub max_depth: usize,
}

/// One interval on a target edge with its constrained sequence and source
/// image (in the approach face's frame).
#[derive(Debug, Clone)]
pub struct AdmissibleInterval {
    pub interval: (f64, f64),
    pub seq: EdgeSequence,
    pub src: V2,
}

pub type IntervalSet = Vec<AdmissibleInterval>;

const INTERVAL_MIN: f64 = 1e-14;
const NODE_CAP: usize = 2_000_000;

/// Clip the cone (apex `src`, through window w0..w1) against the segment
/// p..q; returns the illuminated parameter interval on [0,1].
fn clip_cone(src: V2, w0: V2, w1: V2, p: V2, q: V2) -> Option<(f64, f64)> {
    let base = crate::geom::orient2d(src, w0, w1);
    if base.abs() < 1e-300 {
        // flat unfolding: the source image sits on the edge's supporting
        // line; open-interval semantics drop the cone
        return None;
    }
    let sgn = base.signum();
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    // half-plane through src and w, oriented so the window side is positive
    for (w, s) in [(w0, sgn), (w1, -sgn)] {
        let c0 = (w - src).cross(p - src) * s;
        let c1 = (w - src).cross(q - p) * s;
        if c1.abs() < 1e-300 {
            if c0 < 0.0 {
                return None;
            }
            continue;
        }
        let t = -c0 / c1;
        if c1 > 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
    }
    if hi - lo <= INTERVAL_MIN {
        None
    } else {
        Some((lo, hi))
    }
}

/// Is point y inside the cone, with tolerance?
fn cone_contains(src: V2, w0: V2, w1: V2, y: V2, eps: f64) -> bool {
    let base = crate::geom::orient2d(src, w0, w1);
    if base.abs() < 1e-300 {
        return false;
    }
    let sgn = base.signum();
    crate::geom::orient2d(src, w0, y) * sgn >= -eps && crate::geom::orient2d(src, w1, y) * (-sgn) >= -eps
}

fn faces_of_point(mesh: &SurfaceMesh, p: &SurfacePoint) -> Vec<usize> {
    match p.class {
        PointClass::Vertex(v) => mesh.vertex_faces[v].clone(),
        PointClass::EdgeInterior(e) => mesh.edges[e].faces.to_vec(),
        PointClass::FaceInterior => vec![p.face],
    }
}

impl CHTree {
    /// Edge sequence of a node, including the node's own edge.
    pub fn sequence(&self, node: usize) -> EdgeSequence {
        let mut edges = Vec::new();
        let mut cur = Some(node);
        let mut anchor = self.nodes[node].from_face;
        while let Some(i) = cur {
            edges.push(self.nodes[i].edge);
            anchor = self.nodes[i].from_face;
            cur = self.nodes[i].parent;
        }
        edges.reverse();
        EdgeSequence { edges, anchor_face: anchor }
    }

    /// Alive node count per depth level.
    pub fn level_sizes(&self) -> Vec<usize> {
        let deepest = self.nodes.iter().map(|n| n.depth).max().unwrap_or(0);
        let mut out = vec![0usize; deepest + 1];
        for (i, n) in self.nodes.iter().enumerate() {
            if self.alive[i] {
                out[n.depth] += 1;
            }
        }
        out
    }

    fn kill_subtree(&mut self, root: usize) {
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            self.alive[i] = false;
            stack.extend(self.nodes[i].children.iter().copied());
        }
    }

    fn has_ancestor_edge(&self, node: usize, edge: usize) -> bool {
        let mut cur = self.nodes[node].parent;
        while let Some(i) = cur {
            if self.nodes[i].edge == edge {
                return true;
            }
            cur = self.nodes[i].parent;
        }
        false
    }
}

/// Build the propagation tree level by level for `max_depth` iterations.
/// When `forbidden_face` is given, nodes entering that face are created but
/// never expanded (constrained propagation).
pub fn build_ch_tree(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    forbidden_face: Option<usize>,
    max_depth: usize,
) -> Result<CHTree, MeshError> {
    reject_vertex_source(s)?;

    let mut tree = CHTree {
        source: *s,
        nodes: Vec::new(),
        roots: Vec::new(),
        alive: Vec::new(),
        vertex_hits: vec![Vec::new(); mesh.n_vertices()],
        degeneracies: Vec::new(),
        max_depth,
    };

    // direct in-face hits on the corners of the source face(s)
    for f in faces_of_point(mesh, s) {
        let sl = mesh.transfer(s, f);
        for k in 0..3 {
            let v = mesh.faces[f][k];
            tree.vertex_hits[v].push(VertexHit {
                dist: sl.dist(mesh.corners2d[f][k]),
                node: None,
                anchor_face: f,
            });
        }
    }

    // roots: every edge of every source face not containing the source
    let source_edge = match s.class {
        PointClass::EdgeInterior(e) => Some(e),
        _ => None,
    };
    for f in faces_of_point(mesh, s) {
        let sl = mesh.transfer(s, f);
        for &e in &mesh.face_edges[f] {
            if Some(e) == source_edge {
                continue;
            }
            let g = mesh.other_face(e, f);
            let step = mesh.unfold_across(f, e)?;
            let src_g = step.inverse().apply(sl);
            let id = tree.nodes.len();
            tree.nodes.push(CHNode {
                edge: e,
                from_face: f,
                entered_face: g,
                src: src_g,
                interval: (0.0, 1.0),
                parent: None,
                children: Vec::new(),
                depth: 1,
            });
            tree.alive.push(true);
            tree.roots.push(id);
        }
    }

    // (edge, entered_face) -> (occupying node, distance to opposite vertex)
    let mut occupancy: HashMap<(usize, usize), (usize, f64)> = HashMap::new();

    let mut level: Vec<usize> = tree.roots.clone();
    for depth in 1..=max_depth {
        let mut next: Vec<usize> = Vec::new();
        for &ni in &level {
            if !tree.alive[ni] {
                continue;
            }
            let node = tree.nodes[ni].clone();
            if Some(node.entered_face) == forbidden_face {
                continue;
            }
            let f = node.entered_face;
            let (v0f, v1f) = mesh.edge_in_face(node.edge, f);
            let w0 = v0f.lerp(v1f, node.interval.0);
            let w1 = v0f.lerp(v1f, node.interval.1);
            let k_opp = mesh.opposite_corner(f, node.edge);
            let c_f = mesh.corners2d[f][k_opp];
            let vc = mesh.faces[f][k_opp];

            // vertex coverage (tolerant, for the per-vertex candidate lists)
            if cone_contains(node.src, w0, w1, c_f, 1e-12) {
                let anchor = tree.sequence(ni).anchor_face;
                tree.vertex_hits[vc].push(VertexHit {
                    dist: node.src.dist(c_f),
                    node: Some(ni),
                    anchor_face: anchor,
                });
            }

            // candidate children on the two side edges
            let mut side: Vec<(usize, (f64, f64))> = Vec::new();
            for &e2 in &mesh.face_edges[f] {
                if e2 == node.edge {
                    continue;
                }
                let (p, q) = mesh.edge_in_face(e2, f);
                if let Some(iv) = clip_cone(node.src, w0, w1, p, q) {
                    side.push((e2, iv));
                }
            }

            // one angle one split: both children nonempty means this node's
            // projection covers the opposite vertex; contest the occupancy
            let mut allowed: Vec<(usize, (f64, f64))> = side.clone();
            if side.len() == 2 {
                let dist_c = node.src.dist(c_f);
                let key = (node.edge, f);
                let dir = v1f - v0f;
                // side-edge ids: the child edge containing edge.v[0] is the
                // "low" side
                let side_edge_of = |vertex: usize| -> usize {
                    *mesh.face_edges[f]
                        .iter()
                        .find(|&&e2| e2 != node.edge && mesh.edges[e2].v.contains(&vertex))
                        .unwrap()
                };
                let low_edge = side_edge_of(mesh.edges[node.edge].v[0]);
                let high_edge = side_edge_of(mesh.edges[node.edge].v[1]);

                match occupancy.get(&key).copied() {
                    None => {
                        occupancy.insert(key, (ni, dist_c));
                    }
                    Some((old, old_dist)) => {
                        let tie = (dist_c - old_dist).abs() <= tol::TOL_TIE;
                        if tie {
                            tree.degeneracies.push(format!(
                                "occupancy tie at edge {} face {} (non-generic source)",
                                node.edge, f
                            ));
                        }
                        let old_src = tree.nodes[old].src;
                        let new_wins = if tie {
                            // deterministic: lexicographically smaller image
                            (node.src.x, node.src.y) < (old_src.x, old_src.y)
                        } else {
                            dist_c < old_dist
                        };
                        // which side each competitor sits on, along the edge
                        let new_low = node.src.dot(dir) < old_src.dot(dir);
                        if new_wins {
                            occupancy.insert(key, (ni, dist_c));
                            // old loser keeps only its own side; kill the
                            // contested child subtree if it already exists
                            let contested = if new_low { low_edge } else { high_edge };
                            let victim = tree.nodes[old]
                                .children
                                .iter()
                                .copied()
                                .find(|&c| tree.nodes[c].edge == contested);
                            if let Some(v) = victim {
                                tree.kill_subtree(v);
                            }
                        } else {
                            // this node is the loser: keep only its own side
                            let keep = if new_low { low_edge } else { high_edge };
                            allowed.retain(|&(e2, _)| e2 == keep);
                        }
                    }
                }
            }

            for (e2, iv) in allowed {
                if tree.nodes.len() >= NODE_CAP {
                    return Err(MeshError::Degenerate("propagation node cap exceeded".into()));
                }
                let g = mesh.other_face(e2, f);
                let step = mesh.unfold_across(f, e2)?;
                let src_g = step.inverse().apply(node.src);
                let id = tree.nodes.len();
                tree.nodes.push(CHNode {
                    edge: e2,
                    from_face: f,
                    entered_face: g,
                    src: src_g,
                    interval: iv,
                    parent: Some(ni),
                    children: Vec::new(),
                    depth: depth + 1,
                });
                tree.alive.push(true);
                tree.nodes[ni].children.push(id);
                next.push(id);
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }

    for hits in tree.vertex_hits.iter_mut() {
        hits.sort_by(|a, b| a.dist.partial_cmp(&b.dist).unwrap());
    }
    Ok(tree)
}

/// Minimum-length realized geodesic between two surface points.
pub fn geodesic_distance(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    t: &SurfacePoint,
) -> Result<(f64, GeodesicPath), MeshError> {
    geodesic_distance_with(mesh, s, t, None)
}

/// As `geodesic_distance`, reusing a prebuilt tree for `s` when available.
pub fn geodesic_distance_with(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    t: &SurfacePoint,
    tree: Option<&CHTree>,
) -> Result<(f64, GeodesicPath), MeshError> {
    let owned;
    let tree = match tree {
        Some(t) => t,
        None => {
            owned = build_ch_tree(mesh, s, None, mesh.n_faces())?;
            &owned
        }
    };

    let t_faces = faces_of_point(mesh, t);
    // (estimated length, sequence)
    let mut candidates: Vec<(f64, EdgeSequence)> = Vec::new();
    for f in faces_of_point(mesh, s) {
        if t_faces.contains(&f) {
            let d = mesh.transfer(s, f).dist(mesh.transfer(t, f));
            candidates.push((d, EdgeSequence::empty(f)));
        }
    }
    for (ni, node) in tree.nodes.iter().enumerate() {
        if !tree.alive[ni] || !t_faces.contains(&node.entered_face) {
            continue;
        }
        let tl = mesh.transfer(t, node.entered_face);
        candidates.push((node.src.dist(tl), tree.sequence(ni)));
    }
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    for (est, seq) in candidates {
        if let Some(p) = realize_geodesic(mesh, s, t, &seq)? {
            debug_assert!((p.length - est).abs() < 1e-9);
            return Ok((p.length, p));
        }
    }
    Err(MeshError::Degenerate("no realizable geodesic found".into()))
}

/// One realized shortest path per polyhedron vertex, plus degeneracy notes
/// (ties mean the source is not generic).
pub struct VertexPaths {
    pub paths: Vec<GeodesicPath>,
    pub degeneracies: Vec<String>,
}

pub fn shortest_vertex_paths(mesh: &SurfaceMesh, s: &SurfacePoint) -> Result<VertexPaths, MeshError> {
    let tree = build_ch_tree(mesh, s, None, mesh.n_faces())?;
    shortest_vertex_paths_with(mesh, s, &tree)
}

pub fn shortest_vertex_paths_with(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    tree: &CHTree,
) -> Result<VertexPaths, MeshError> {
    let mut paths = Vec::with_capacity(mesh.n_vertices());
    let mut degeneracies = Vec::new();
    for v in 0..mesh.n_vertices() {
        let tp = mesh.vertex_point(v);
        let hits = &tree.vertex_hits[v];
        if hits.is_empty() {
            return Err(MeshError::Degenerate(format!("vertex {v} never covered")));
        }
        let mut chosen: Option<GeodesicPath> = None;
        for (i, h) in hits.iter().enumerate() {
            if let Some(ref c) = chosen {
                if h.dist > c.length + tol::TOL_TIE {
                    break;
                }
            }
            let seq = match h.node {
                Some(n) => {
                    if !tree.alive[n] {
                        continue;
                    }
                    tree.sequence(n)
                }
                None => EdgeSequence::empty(h.anchor_face),
            };
            if let Some(p) = realize_geodesic(mesh, s, &tp, &seq)? {
                match chosen {
                    None => {
                        chosen = Some(p);
                        // look one step ahead for a tie with a different
                        // sequence
                        if let Some(nh) = hits.get(i + 1) {
                            if (nh.dist - hits[i].dist).abs() <= tol::TOL_TIE {
                                degeneracies.push(format!(
                                    "vertex {v}: two shortest-path candidates within tie tolerance"
                                ));
                            }
                        }
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
        let p = chosen.ok_or_else(|| {
            MeshError::Degenerate(format!("no candidate path to vertex {v} realized"))
        })?;
        paths.push(p);
    }
    Ok(VertexPaths { paths, degeneracies })
}

/// f1-constrained interval set on a target edge, with Observation-1 style
/// post-pruning (drop a node when an ancestor already crossed the target).
pub fn admissible_intervals(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    target_edge: usize,
    constrained_face: usize,
) -> Result<IntervalSet, MeshError> {
    let f1 = constrained_face;
    assert!(mesh.face_has_edge(f1, target_edge), "constrained face must bound the target edge");
    let f2 = mesh.other_face(target_edge, f1);
    let tree = build_ch_tree(mesh, s, Some(f2), mesh.n_faces())?;

    let back = mesh.unfold_across(f1, target_edge)?;
    let mut out = Vec::new();
    for (ni, node) in tree.nodes.iter().enumerate() {
        if !tree.alive[ni] || node.edge != target_edge || node.entered_face != f2 {
            continue;
        }
        if tree.has_ancestor_edge(ni, target_edge) {
            continue; // post-pruning
        }
        let mut seq = tree.sequence(ni);
        seq.edges.pop(); // the target edge itself is not crossed
        out.push(AdmissibleInterval {
            interval: node.interval,
            seq,
            src: back.apply(node.src),
        });
    }
    Ok(out)
}
