//! Independent ground-truth generators: graph Dijkstra with Steiner points
//! (upper bounds), exhaustive edge-sequence enumeration (exact on small
//! meshes), and dense parametric sampling of ridge-tree signatures.

use crate::geom::{Motion2, V2, V3};
use crate::mesh::{MeshError, SurfaceMesh, SurfacePoint};
use crate::unfolding::{realize_geodesic, EdgeSequence, GeodesicPath};
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Guarantee {
    Exact,
    UpperBound,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Witness {
    Sequence(EdgeSequence),
    GraphPath(Vec<V3>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResult {
    pub distance: f64,
    pub witness: Witness,
    pub method: &'static str,
    pub guarantee: Guarantee,
}

/// Faces a surface point lies on (its own face plus neighbors through its
/// edge / vertex, when the point sits on the boundary).
fn faces_of(mesh: &SurfaceMesh, p: &SurfacePoint) -> Vec<usize> {
    use crate::mesh::PointClass::*;
    match p.class {
        Vertex(v) => mesh.vertex_faces[v].clone(),
        EdgeInterior(e) => mesh.edges[e].faces.to_vec(),
        FaceInterior => vec![p.face],
    }
}

/// Shortest path in the graph on polyhedron vertices, k uniform Steiner
/// points per edge, s and t, with all-pairs connections inside each face.
pub fn dijkstra_oracle(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    t: &SurfacePoint,
    steiner_per_edge: usize,
) -> OracleResult {
    let k = steiner_per_edge;
    let mut nodes: Vec<V3> = mesh.vertices.clone();
    // per face, node ids on that face
    let mut face_nodes: Vec<Vec<usize>> = mesh.faces.iter().map(|f| f.to_vec()).collect();
    for (ei, e) in mesh.edges.iter().enumerate() {
        for i in 0..k {
            let tpar = (i + 1) as f64 / (k + 1) as f64;
            let p = mesh.vertices[e.v[0]].lerp(mesh.vertices[e.v[1]], tpar);
            let id = nodes.len();
            nodes.push(p);
            for &f in &mesh.edges[ei].faces {
                face_nodes[f].push(id);
            }
        }
    }
    let s_id = nodes.len();
    nodes.push(mesh.point3(s));
    for f in faces_of(mesh, s) {
        face_nodes[f].push(s_id);
    }
    let t_id = nodes.len();
    nodes.push(mesh.point3(t));
    for f in faces_of(mesh, t) {
        face_nodes[f].push(t_id);
    }

    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nodes.len()];
    for fl in &face_nodes {
        for i in 0..fl.len() {
            for j in i + 1..fl.len() {
                let (a, b) = (fl[i], fl[j]);
                if a == b {
                    continue;
                }
                let w = nodes[a].dist(nodes[b]);
                adj[a].push((b, w));
                adj[b].push((a, w));
            }
        }
    }

    #[derive(PartialEq)]
    struct Item(f64, usize);
    impl Eq for Item {}
    impl PartialOrd for Item {
        fn partial_cmp(&self, o: &Item) -> Option<std::cmp::Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Item {
        fn cmp(&self, o: &Item) -> std::cmp::Ordering {
            o.0.partial_cmp(&self.0).unwrap()
        }
    }

    let mut dist = vec![f64::INFINITY; nodes.len()];
    let mut prev = vec![usize::MAX; nodes.len()];
    dist[s_id] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Item(0.0, s_id));
    while let Some(Item(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if u == t_id {
            break;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                prev[v] = u;
                heap.push(Item(nd, v));
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = t_id;
    while cur != usize::MAX {
        path.push(nodes[cur]);
        if cur == s_id {
            break;
        }
        cur = prev[cur];
    }
    path.reverse();
    OracleResult {
        distance: dist[t_id],
        witness: Witness::GraphPath(path),
        method: "dijkstra-steiner",
        guarantee: Guarantee::UpperBound,
    }
}

/// Exhaustive enumeration of non-repeating adjacent edge sequences of length
/// at most `max_len`, realizing each candidate. Exact whenever `max_len`
/// covers the true sequence length; breadth-first with branch-and-bound on
/// the unfolded straight-line lower bound.
pub fn bruteforce_distance(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    t: &SurfacePoint,
    max_len: usize,
) -> Result<OracleResult, MeshError> {
    const EXPLOSION_GUARD: usize = 10_000_000;

    let t_faces = faces_of(mesh, t);
    let mut best: f64 = f64::INFINITY;
    let mut best_path: Option<GeodesicPath> = None;

    struct State {
        face: usize,
        seq: EdgeSequence,
        /// motion taking `face` frame coords into the anchor plane
        motion: Motion2,
        s_img: V2,
    }

    let mut frontier: Vec<State> = Vec::new();
    for f in faces_of(mesh, s) {
        let seq = EdgeSequence::empty(f);
        frontier.push(State {
            face: f,
            seq,
            motion: Motion2::IDENTITY,
            s_img: mesh.transfer(s, f),
        });
    }

    let mut expanded = 0usize;
    while !frontier.is_empty() {
        let mut next: Vec<State> = Vec::new();
        for st in &frontier {
            expanded += 1;
            if expanded > EXPLOSION_GUARD {
                return Err(MeshError::Degenerate(
                    "bruteforce sequence explosion guard tripped".into(),
                ));
            }
            // candidate: t reachable on this face
            if t_faces.contains(&st.face) {
                if let Some(p) = realize_geodesic(mesh, s, t, &st.seq)? {
                    if p.length < best {
                        best = p.length;
                        best_path = Some(p);
                    }
                }
            }
            if st.seq.len() >= max_len {
                continue;
            }
            for &e in &mesh.face_edges[st.face] {
                if st.seq.edges.contains(&e) {
                    continue;
                }
                let (a, b) = mesh.edge_in_face(e, st.face);
                let (ai, bi) = (st.motion.apply(a), st.motion.apply(b));
                // lower bound on any path continuing through e
                if crate::geom::point_seg_dist(st.s_img, ai, bi) >= best {
                    continue;
                }
                let step = mesh.unfold_across(st.face, e)?;
                let mut seq = st.seq.clone();
                seq.edges.push(e);
                next.push(State {
                    face: mesh.other_face(e, st.face),
                    seq,
                    motion: st.motion.compose(step),
                    s_img: st.s_img,
                });
            }
        }
        frontier = next;
    }

    let path = best_path.ok_or_else(|| MeshError::Degenerate("no realizable sequence found".into()))?;
    Ok(OracleResult {
        distance: best,
        witness: Witness::Sequence(path.seq),
        method: "bruteforce-enumeration",
        guarantee: Guarantee::Exact,
    })
}

/// Full brute-force path (not just the distance).
pub fn bruteforce_path(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    t: &SurfacePoint,
    max_len: usize,
) -> Result<GeodesicPath, MeshError> {
    let r = bruteforce_distance(mesh, s, t, max_len)?;
    match r.witness {
        Witness::Sequence(seq) => Ok(realize_geodesic(mesh, s, t, &seq)?
            .expect("winning sequence realizes")),
        _ => unreachable!(),
    }
}

/// Topological signatures of T_s at the given edge parameters; adjacent
/// equal signatures mean no event was detected between them at this
/// resolution.
pub fn sample_ridge_signature(
    mesh: &SurfaceMesh,
    edge: usize,
    parameters: &[f64],
) -> Result<Vec<String>, MeshError> {
    let mut out = Vec::with_capacity(parameters.len());
    for &u in parameters {
        let mut got = None;
        // degenerate samples get resampled with a tiny jitter
        for attempt in 0..4 {
            let uu = u + attempt as f64 * 1e-9;
            let s = mesh.edge_point(edge, uu);
            match crate::ridge::build_ridge_tree(mesh, &s) {
                Ok(rt) => {
                    got = Some(rt.signature());
                    break;
                }
                Err(_) => continue,
            }
        }
        out.push(got.ok_or_else(|| {
            MeshError::Degenerate(format!("persistent degeneracy sampling edge {edge} at u={u}"))
        })?);
    }
    Ok(out)
}
