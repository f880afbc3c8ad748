//! Event-driven sweep of a source point along a polyhedron edge: maintain
//! the ridge tree T_s as s = e(u) moves, detect topology-changing events,
//! and accumulate the sequence tree Ψ(e) of shortest-path edge sequences.
//!
//! Within a topologically stable stretch of the sweep all plate motions of
//! the star unfolding are constant, so every source image moves affinely in
//! u. Candidate events are roots of low-degree functions of those affine
//! trajectories, isolated by scanning plus bisection. Every accepted event
//! is verified against a freshly built ridge tree, and a signature check
//! over each stretch recovers any event the candidate generation missed.

use crate::geom::{circumcenter, point_seg_dist, V2};
use crate::mesh::{MeshError, SurfaceMesh};
use crate::ridge::{build_ridge_tree_with, RidgeTree, RidgeVertexClass};
use crate::seqtree::SequenceTree;
use crate::star::{build_star_unfolding, SideKind, StarUnfolding};
use crate::tol;
use std::collections::HashMap;

/// Sweep start/end offset from the edge endpoints (vertex sources are not
/// propagatable).
pub const START_OFFSET: f64 = 1e-6;
/// Parameter offset used to step past a processed event.
/// Parameter resolution of the sweep: stretches narrower than `2 * DELTA`
/// are below resolution and contribute no sequences, and neither does the
/// terminal zone `u >= 1 - START_OFFSET - DELTA` where the star collapses.
pub const DELTA: f64 = 1e-6;
/// Scan resolution for candidate root isolation.
const GRID: usize = 512;
/// Bisection iterations for candidate roots (parameter precision 1e-12).
const BISECT_ITERS: usize = 80;

/// A source image is identified across parameters by its two adjacent
/// polyhedron vertices on the star boundary.
pub type ImgLabel = (usize, usize);

/// Combinatorial identity of a ridge-tree vertex, stable within a sweep
/// stretch.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertLabel {
    Leaf(usize),
    /// Crossing of a polyhedron edge by the bisector of two images.
    Cross(usize, ImgLabel, ImgLabel),
    /// Voronoi vertex of three or more images (sorted labels).
    Node(Vec<ImgLabel>),
}

fn vert_id(l: &VertLabel) -> String {
    match l {
        VertLabel::Leaf(w) => format!("L{w}"),
        VertLabel::Cross(pe, a, b) => format!("X{pe}:{}-{}|{}-{}", a.0, a.1, b.0, b.1),
        VertLabel::Node(v) => {
            let parts: Vec<String> = v.iter().map(|l| format!("{}-{}", l.0, l.1)).collect();
            format!("N{}", parts.join(","))
        }
    }
}

/// A fully rebuilt view of the sweep at one parameter.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub u: f64,
    pub star: StarUnfolding,
    pub tree: RidgeTree,
    /// Per ridge-tree vertex, its combinatorial label.
    pub labels: Vec<VertLabel>,
    /// Canonical form of the labeled tree, constant between events.
    pub sig: String,
}

fn image_label(star: &StarUnfolding, site: usize) -> ImgLabel {
    star.source_images[site].adj
}

fn vertex_label(star: &StarUnfolding, tree: &RidgeTree, v: usize) -> VertLabel {
    match tree.verts[v].class {
        RidgeVertexClass::Leaf(w) => VertLabel::Leaf(w),
        RidgeVertexClass::EdgeCross(pe) => {
            let mut ls: Vec<ImgLabel> =
                tree.verts[v].images.iter().map(|&i| image_label(star, i)).collect();
            ls.sort();
            ls.dedup();
            let a = ls.first().copied().unwrap_or((usize::MAX, usize::MAX));
            let b = ls.get(1).copied().unwrap_or(a);
            VertLabel::Cross(pe, a, b)
        }
        RidgeVertexClass::Internal => {
            let mut ls: Vec<ImgLabel> =
                tree.verts[v].images.iter().map(|&i| image_label(star, i)).collect();
            ls.sort();
            ls.dedup();
            VertLabel::Node(ls)
        }
    }
}

/// Builds the star unfolding and ridge tree at parameter `u` of `edge` and
/// labels every tree vertex.
pub fn snapshot(mesh: &SurfaceMesh, edge: usize, u: f64) -> Result<Snapshot, MeshError> {
    let s = mesh.edge_point(edge, u);
    let star = build_star_unfolding(mesh, &s)?;
    let tree = build_ridge_tree_with(mesh, &star)?;
    let labels: Vec<VertLabel> =
        (0..tree.verts.len()).map(|v| vertex_label(&star, &tree, v)).collect();
    // canonical labeled-adjacency form: one line per vertex, sorted
    let mut lines: Vec<String> = (0..tree.verts.len())
        .map(|v| {
            let mut ns: Vec<String> =
                tree.neighbors(v).into_iter().map(|w| vert_id(&labels[w])).collect();
            ns.sort();
            format!("{}>{}", vert_id(&labels[v]), ns.join(";"))
        })
        .collect();
    lines.sort();
    let sig = lines.join("\n");
    Ok(Snapshot { u, star, tree, labels, sig })
}

/// Snapshot with small fallback nudges around a possibly degenerate `u`.
fn snapshot_near(mesh: &SurfaceMesh, edge: usize, u: f64) -> Result<Snapshot, MeshError> {
    let mut last = None;
    // a slow contraction keeps the shrinking ridge edge below the merge
    // tolerance over a zone of width ~(tolerance / velocity), which can
    // reach ~1e-4 in u; the ladder must be able to step past it
    for off in [
        0.0, 1e-9, -1e-9, 1e-8, -1e-8, 1e-7, -1e-7, 3e-7, -3e-7, 1e-6, -1e-6, 3e-6, -3e-6,
        1e-5, -1e-5, 3e-5, -3e-5, 1e-4, -1e-4, 3e-4, -3e-4, 1e-3, -1e-3,
    ] {
        let uu = (u + off).clamp(START_OFFSET * 0.5, 1.0 - START_OFFSET * 0.5);
        match snapshot(mesh, edge, uu) {
            Ok(s) => return Ok(s),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Affine trajectories of the source images over the current stretch.
#[derive(Debug, Clone)]
pub struct MotionMap {
    pub u0: f64,
    /// Per image label: position at `u0` and velocity d pos / d u.
    pub vel: HashMap<ImgLabel, (V2, V2)>,
}

impl MotionMap {
    pub fn at(&self, l: ImgLabel, u: f64) -> Option<V2> {
        self.vel.get(&l).map(|&(p, v)| p + v * (u - self.u0))
    }
}

/// Derives image velocities by finite differences from a second star build
/// close to the snapshot (exact within the stretch: motions are affine).
fn derive_motion(mesh: &SurfaceMesh, edge: usize, snap: &Snapshot) -> Result<MotionMap, MeshError> {
    let base: HashMap<ImgLabel, V2> =
        snap.star.source_images.iter().map(|si| (si.adj, si.pos)).collect();
    for step in [1e-5, 1e-6, 3e-7] {
        let u2 = if snap.u + step < 1.0 - START_OFFSET * 0.5 { snap.u + step } else { snap.u - step };
        let Ok(star2) = build_star_unfolding(mesh, &mesh.edge_point(edge, u2)) else { continue };
        let other: HashMap<ImgLabel, V2> =
            star2.source_images.iter().map(|si| (si.adj, si.pos)).collect();
        if other.len() != base.len() || !base.keys().all(|k| other.contains_key(k)) {
            continue; // an event sits between the probes; tighten
        }
        let vel = base
            .iter()
            .map(|(&l, &p)| (l, (p, (other[&l] - p) * (1.0 / (u2 - snap.u)))))
            .collect();
        return Ok(MotionMap { u0: snap.u, vel });
    }
    Err(MeshError::Degenerate(format!(
        "no stable probe for image motion near u = {}",
        snap.u
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EventKind {
    Contraction,
    Crossing,
}

impl EventKind {
    pub fn type_code(&self) -> u8 {
        match self {
            EventKind::Contraction => 1,
            EventKind::Crossing => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub u_star: f64,
    pub kind: EventKind,
    pub ids: Vec<String>,
    /// Transversal velocity of the root (near-zero means grazing contact).
    pub velocity: f64,
}

#[derive(Debug, Clone)]
pub struct EventRecord {
    pub u: f64,
    pub kind: EventKind,
    pub ids: Vec<String>,
    pub psi_nodes_added: usize,
    /// True when the event was found by the signature fallback rather than
    /// a queued candidate.
    pub recovered: bool,
}

fn log_line(r: &EventRecord) -> String {
    serde_json::json!({
        "u": r.u,
        "type": r.kind.type_code(),
        "ids": r.ids,
        "psi_nodes_added": r.psi_nodes_added,
    })
    .to_string()
}

/// First sign-change root of `f` in `(lo, hi]`, bisected to 1e-12, together
/// with the local slope.
fn first_root<F: Fn(f64) -> Option<f64>>(f: F, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if hi <= lo {
        return None;
    }
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=GRID {
        let u = lo + (hi - lo) * k as f64 / GRID as f64;
        let Some(v) = f(u) else {
            prev = None;
            continue;
        };
        if let Some((pu, pv)) = prev {
            if pv * v < 0.0 {
                let (mut a, mut b, mut fa) = (pu, u, pv);
                for _ in 0..BISECT_ITERS {
                    let m = 0.5 * (a + b);
                    let Some(fm) = f(m) else { break };
                    if fa * fm <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                        fa = fm;
                    }
                }
                let root = 0.5 * (a + b);
                let h = 1e-7;
                let slope = match (f(root - h), f(root + h)) {
                    (Some(l), Some(r)) => (r - l) / (2.0 * h),
                    _ => 0.0,
                };
                return Some((root, slope));
            }
        }
        prev = Some((u, v));
    }
    None
}

/// Plane endpoints of the image of polyhedron edge `pe` whose segment
/// carries the point `at`.
fn edge_image_line(star: &StarUnfolding, pe: usize, at: V2) -> Option<(V2, V2)> {
    for plate in &star.plates {
        let n = plate.verts.len();
        for (i, side) in plate.sides.iter().enumerate() {
            if *side != SideKind::OnEdge(pe) {
                continue;
            }
            let a = plate.motion.apply(plate.verts[i].0);
            let b = plate.motion.apply(plate.verts[(i + 1) % n].0);
            if point_seg_dist(at, a, b) <= 1e-6 {
                return Some((a, b));
            }
        }
    }
    None
}

/// Candidate event for one ridge-tree edge, from the current motion.
/// Returns `None` when the edge cannot produce an event (for example both
/// endpoints already share their defining images, or no root lies ahead).
fn candidate_for(
    mesh: &SurfaceMesh,
    snap: &Snapshot,
    motion: &MotionMap,
    xi: usize,
) -> Option<Candidate> {
    let _ = mesh;
    let tree = &snap.tree;
    let e = &tree.edges[xi];
    let (la, lb) = (&snap.labels[e.a], &snap.labels[e.b]);
    let li = image_label(&snap.star, e.images.0);
    let lj = image_label(&snap.star, e.images.1);
    let (lo, hi) = (snap.u, 1.0 - START_OFFSET);

    let extra_of = |l: &VertLabel| -> Option<ImgLabel> {
        match l {
            VertLabel::Node(imgs) => imgs.iter().copied().find(|&x| x != li && x != lj),
            _ => None,
        }
    };

    match (la, lb) {
        (VertLabel::Node(_), VertLabel::Node(_)) => {
            let (xa, xb) = (extra_of(la)?, extra_of(lb)?);
            if xa == xb {
                return None; // identical defining triples: no relative motion
            }
            // signed separation of the two Voronoi vertices along the
            // shared bisector
            let f = |u: f64| -> Option<f64> {
                let (pi, pj) = (motion.at(li, u)?, motion.at(lj, u)?);
                let (pa, pb) = (motion.at(xa, u)?, motion.at(xb, u)?);
                let ca = circumcenter(pi, pj, pa)?;
                let cb = circumcenter(pi, pj, pb)?;
                let dir = (pj - pi).perp().normalized();
                Some((ca - cb).dot(dir))
            };
            let (root, slope) = first_root(f, lo, hi)?;
            Some(Candidate {
                u_star: root,
                kind: EventKind::Contraction,
                ids: vec![vert_id(la), vert_id(lb)],
                velocity: slope,
            })
        }
        (VertLabel::Node(_), VertLabel::Leaf(w)) | (VertLabel::Leaf(w), VertLabel::Node(_)) => {
            let node = if matches!(la, VertLabel::Node(_)) { la } else { lb };
            let extra = extra_of(node)?;
            let k = snap.star.kernel_vertices.iter().position(|&kv| kv == *w)?;
            let kpos = snap.star.kernel[k];
            // the inner Voronoi vertex reaches the kernel corner when the
            // extra image becomes equidistant there
            let f = |u: f64| -> Option<f64> {
                Some(kpos.dist(motion.at(extra, u)?) - kpos.dist(motion.at(li, u)?))
            };
            let (root, slope) = first_root(f, lo, hi)?;
            Some(Candidate {
                u_star: root,
                kind: EventKind::Contraction,
                ids: vec![vert_id(la), vert_id(lb)],
                velocity: slope,
            })
        }
        (VertLabel::Node(imgs), VertLabel::Cross(pe, _, _))
        | (VertLabel::Cross(pe, _, _), VertLabel::Node(imgs)) => {
            let cross_v = if matches!(la, VertLabel::Cross(..)) { e.a } else { e.b };
            let (q0, q1) = edge_image_line(&snap.star, *pe, tree.verts[cross_v].pos)?;
            let ln = (q1 - q0).norm();
            if ln <= 1e-12 || imgs.len() < 3 {
                return None;
            }
            let (i0, i1, i2) = (imgs[0], imgs[1], imgs[2]);
            let f = |u: f64| -> Option<f64> {
                let c = circumcenter(motion.at(i0, u)?, motion.at(i1, u)?, motion.at(i2, u)?)?;
                Some((q1 - q0).cross(c - q0) / ln)
            };
            let (root, slope) = first_root(f, lo, hi)?;
            Some(Candidate {
                u_star: root,
                kind: EventKind::Crossing,
                ids: vec![vert_id(la), vert_id(lb)],
                velocity: slope,
            })
        }
        (VertLabel::Leaf(w), VertLabel::Cross(pe, _, _))
        | (VertLabel::Cross(pe, _, _), VertLabel::Leaf(w)) => {
            // the crossing point slides along pe; event when it reaches the
            // corner at w
            if !mesh.edges[*pe].v.contains(w) {
                return None;
            }
            let cross_v = if matches!(la, VertLabel::Cross(..)) { e.a } else { e.b };
            let (q0, q1) = edge_image_line(&snap.star, *pe, tree.verts[cross_v].pos)?;
            let k = snap.star.kernel_vertices.iter().position(|&kv| kv == *w)?;
            let kpos = snap.star.kernel[k];
            let dir = (q1 - q0).normalized();
            let f = |u: f64| -> Option<f64> {
                // intersection of the moving bisector with the fixed line
                let (pi, pj) = (motion.at(li, u)?, motion.at(lj, u)?);
                let mid = (pi + pj) * 0.5;
                let bd = (pj - pi).perp();
                // solve (mid + t·bd − q0) × dir = 0
                let den = bd.cross(dir);
                if den.abs() < 1e-14 {
                    return None;
                }
                let t = (q0 - mid).cross(dir) / den;
                let x = mid + bd * t;
                Some((x - kpos).dot(dir))
            };
            let (root, slope) = first_root(f, lo, hi)?;
            Some(Candidate {
                u_star: root,
                kind: EventKind::Crossing,
                ids: vec![vert_id(la), vert_id(lb)],
                velocity: slope,
            })
        }
        _ => None,
    }
}

/// The per-stretch candidate queue H_s: one candidate per qualifying ridge
/// tree edge, ordered by event parameter with the deterministic tie order
/// (type 2 before type 1, then by ids).
fn gen_candidates(mesh: &SurfaceMesh, snap: &Snapshot, motion: &MotionMap) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = (0..snap.tree.edges.len())
        .filter_map(|xi| candidate_for(mesh, snap, motion, xi))
        .collect();
    out.sort_by(|a, b| {
        a.u_star
            .partial_cmp(&b.u_star)
            .unwrap()
            .then(b.kind.type_code().cmp(&a.kind.type_code()))
            .then(a.ids.cmp(&b.ids))
    });
    out
}

/// State of a sweep in progress.
pub struct SweepState {
    pub edge: usize,
    /// Parameter of the current stretch's snapshot.
    pub u: f64,
    pub snap: Snapshot,
    pub motion: MotionMap,
    /// Pending candidates (H_s) for the current stretch.
    pub queue: Vec<Candidate>,
    pub psi: SequenceTree,
    /// Degree-3 vertex label -> sequence-tree node per defining image.
    pub assoc: HashMap<VertLabel, Vec<usize>>,
    pub events: Vec<EventRecord>,
    pub degeneracies: Vec<String>,
}

/// Inserts the edge sequences of all degree-3 ridge vertices at the current
/// snapshot into Ψ; returns the node count delta and the associations.
fn insert_sequences(
    mesh: &SurfaceMesh,
    edge: usize,
    snap: &Snapshot,
    psi: &mut SequenceTree,
    degeneracies: &mut Vec<String>,
) -> (usize, HashMap<VertLabel, Vec<usize>>) {
    let before = psi.len();
    let mut assoc = HashMap::new();
    if snap.u >= 1.0 - START_OFFSET - DELTA {
        // sub-resolution zone at the far endpoint: the source is about to
        // become a vertex and the star collapses toward full symmetry
        return (0, assoc);
    }
    for v in 0..snap.tree.verts.len() {
        if snap.tree.verts[v].class != RidgeVertexClass::Internal {
            continue;
        }
        let mut nodes = Vec::new();
        for &i in &snap.tree.verts[v].images {
            let Some(seq) = snap.star.path_sequence(mesh, i, snap.tree.verts[v].pos) else {
                degeneracies.push(format!(
                    "u = {}: no plate path from image {i} to ridge vertex {v}",
                    snap.u
                ));
                continue;
            };
            let mut full = vec![edge];
            full.extend(seq.edges.iter().copied());
            // canonical form when the vertex sits on (or within the merge
            // radius of) the last crossed edge: the target is reached
            // before the crossing, so drop the trailing edge
            let pos = snap.tree.verts[v].pos;
            while full.len() > 1 {
                let last = *full.last().unwrap();
                let on_edge = edge_image_line(&snap.star, last, pos)
                    .is_some_and(|(q0, q1)| point_seg_dist(pos, q0, q1) <= 1e-6);
                if on_edge {
                    full.pop();
                } else {
                    break;
                }
            }
            match psi.insert(mesh, &full) {
                Ok(id) => nodes.push(id),
                Err(err) => degeneracies.push(format!("u = {}: {err}", snap.u)),
            }
        }
        assoc.insert(snap.labels[v].clone(), nodes);
    }
    (psi.len() - before, assoc)
}

/// The exposed form of `candidate_for` keyed by a ridge-tree edge index:
/// smallest event parameter ahead of the current position, if any.
pub fn candidate_contraction(mesh: &SurfaceMesh, state: &SweepState, xi: usize) -> Option<f64> {
    let c = candidate_for(mesh, &state.snap, &state.motion, xi)?;
    (c.kind == EventKind::Contraction).then_some(c.u_star)
}

/// Crossing candidate for the ridge-tree edge joining vertices `v` (degree
/// ≥ 3) and `vp` (a degree-2 edge crossing).
pub fn candidate_crossing(mesh: &SurfaceMesh, state: &SweepState, v: usize, vp: usize) -> Option<f64> {
    let xi = state
        .snap
        .tree
        .edges
        .iter()
        .position(|e| (e.a == v && e.b == vp) || (e.a == vp && e.b == v))?;
    let c = candidate_for(mesh, &state.snap, &state.motion, xi)?;
    (c.kind == EventKind::Crossing).then_some(c.u_star)
}

fn establish(
    mesh: &SurfaceMesh,
    edge: usize,
    u: f64,
    psi: &mut SequenceTree,
    degeneracies: &mut Vec<String>,
) -> Result<(Snapshot, MotionMap, Vec<Candidate>, HashMap<VertLabel, Vec<usize>>, usize), MeshError>
{
    let snap = snapshot_near(mesh, edge, u)?;
    let motion = derive_motion(mesh, edge, &snap)?;
    let (added, assoc) = insert_sequences(mesh, edge, &snap, psi, degeneracies);
    let queue = gen_candidates(mesh, &snap, &motion);
    Ok((snap, motion, queue, assoc, added))
}

/// Starts a sweep of `edge` at the perturbed endpoint, retrying the start
/// perturbation when it lands on a degenerate source.
pub fn init_sweep(mesh: &SurfaceMesh, edge: usize) -> Result<SweepState, MeshError> {
    let mut psi = SequenceTree::new(edge);
    let mut degeneracies = Vec::new();
    let mut last = None;
    for attempt in 1..=3 {
        let u0 = START_OFFSET * attempt as f64;
        match establish(mesh, edge, u0, &mut psi, &mut degeneracies) {
            Ok((snap, motion, queue, assoc, _)) => {
                if attempt > 1 {
                    degeneracies.push(format!("start perturbation retried {} times", attempt - 1));
                }
                let u = snap.u;
                return Ok(SweepState {
                    edge,
                    u,
                    snap,
                    motion,
                    queue,
                    psi,
                    assoc,
                    events: Vec::new(),
                    degeneracies,
                });
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Locates a signature change in `(lo, hi)` by bisection; `lo` carries
/// `sig_lo`.
fn bisect_signature(
    mesh: &SurfaceMesh,
    edge: usize,
    mut lo: f64,
    mut hi: f64,
    sig_lo: &str,
) -> Result<f64, MeshError> {
    for _ in 0..48 {
        if hi - lo <= tol::TOL_PARAM {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let snap = snapshot_near(mesh, edge, mid)?;
        if snap.sig == sig_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Classifies a recovered event by comparing the edge-crossing labels on
/// both sides: a changed crossing set means a type-2 event.
fn classify_change(before: &Snapshot, after: &Snapshot) -> (EventKind, Vec<String>) {
    let crossings = |s: &Snapshot| -> Vec<String> {
        let mut v: Vec<String> = s
            .labels
            .iter()
            .filter(|l| matches!(l, VertLabel::Cross(..)))
            .map(vert_id)
            .collect();
        v.sort();
        v
    };
    let (cb, ca) = (crossings(before), crossings(after));
    let kind = if cb == ca { EventKind::Contraction } else { EventKind::Crossing };
    let mut ids: Vec<String> = cb
        .iter()
        .filter(|x| !ca.contains(x))
        .chain(ca.iter().filter(|x| !cb.contains(x)))
        .cloned()
        .collect();
    if ids.is_empty() {
        // fall back to the changed internal-vertex labels
        let nodes = |s: &Snapshot| -> Vec<String> {
            let mut v: Vec<String> = s
                .labels
                .iter()
                .filter(|l| matches!(l, VertLabel::Node(_)))
                .map(vert_id)
                .collect();
            v.sort();
            v
        };
        let (nb, na) = (nodes(before), nodes(after));
        ids = nb
            .iter()
            .filter(|x| !na.contains(x))
            .chain(na.iter().filter(|x| !nb.contains(x)))
            .cloned()
            .collect();
    }
    ids.truncate(6);
    (kind, ids)
}

/// Advances the sweep to the next actual event. Candidates are validated
/// lazily: a popped candidate whose parameter produces no topology change is
/// dropped, and a signature change with no matching candidate is recovered
/// by bisection. Returns `None` once the far endpoint is reached.
pub fn process_event(
    mesh: &SurfaceMesh,
    state: &mut SweepState,
) -> Result<Option<EventRecord>, MeshError> {
    let u_end = 1.0 - START_OFFSET;
    loop {
        state.queue.retain(|c| c.u_star > state.u + tol::TOL_PARAM && c.u_star < u_end);
        let cand = state.queue.first().cloned();
        // constancy check up to just before the candidate (or the far end)
        let u_check = match &cand {
            Some(c) => (c.u_star - DELTA).max(state.u),
            None => u_end,
        };
        let chk = snapshot_near(mesh, state.edge, u_check)?;
        if chk.sig != state.snap.sig {
            // missed event inside the stretch: recover it
            let u_star = bisect_signature(mesh, state.edge, state.u, u_check, &state.snap.sig)?;
            let after = snapshot_near(mesh, state.edge, (u_star + DELTA).min(u_end))?;
            let (kind, ids) = classify_change(&state.snap, &after);
            state
                .degeneracies
                .push(format!("event at u = {u_star} recovered by signature bisection"));
            return accept(mesh, state, u_star, kind, ids, true);
        }
        let Some(c) = cand else {
            return Ok(None); // reached the far endpoint without changes
        };
        state.queue.remove(0);
        // lazy validation: the candidate must actually change the topology
        let after = snapshot_near(mesh, state.edge, (c.u_star + DELTA).min(u_end))?;
        if after.sig == chk.sig {
            continue; // stale or spurious candidate
        }
        if c.velocity.abs() < tol::TOL_EVENT {
            state.degeneracies.push(format!(
                "grazing contact at u = {}: transversal velocity {:.3e}",
                c.u_star, c.velocity
            ));
        }
        // simultaneous candidates within the event tolerance
        let simultaneous: Vec<Candidate> = state
            .queue
            .iter()
            .filter(|o| (o.u_star - c.u_star).abs() <= tol::TOL_EVENT)
            .cloned()
            .collect();
        if !simultaneous.is_empty() {
            let mut all = vec![c.clone()];
            all.extend(simultaneous);
            all.sort_by(|a, b| {
                b.kind.type_code().cmp(&a.kind.type_code()).then(a.ids.cmp(&b.ids))
            });
            let listed: Vec<String> = all.iter().flat_map(|x| x.ids.clone()).collect();
            state.degeneracies.push(format!(
                "{} simultaneous events at u = {} involving {}",
                all.len(),
                c.u_star,
                listed.join(" ")
            ));
        }
        return accept(mesh, state, c.u_star, c.kind, c.ids, false);
    }
}

/// Commits an event: re-establishes the state just past it and logs it.
fn accept(
    mesh: &SurfaceMesh,
    state: &mut SweepState,
    u_star: f64,
    kind: EventKind,
    ids: Vec<String>,
    recovered: bool,
) -> Result<Option<EventRecord>, MeshError> {
    let u_end = 1.0 - START_OFFSET;
    // step past the event; grow the offset when it lands in a degenerate
    // zone wider than the default step
    let mut placed = None;
    let mut u_next = u_star;
    for off in [DELTA, 3e-6, 1e-5, 3e-5, 1e-4] {
        u_next = (u_star + off).min(u_end);
        match establish(mesh, state.edge, u_next, &mut state.psi, &mut state.degeneracies) {
            Ok(p) => {
                placed = Some(p);
                break;
            }
            Err(_) => continue,
        }
    }
    let Some((snap, motion, queue, assoc, added)) = placed else {
        return Err(MeshError::Degenerate(format!(
            "cannot re-establish the sweep past the event at u = {u_star}"
        )));
    };
    state.snap = snap;
    state.motion = motion;
    state.queue = queue;
    state.assoc = assoc;
    state.u = u_next;
    // the log parameter sequence must stay strictly increasing
    let u_log = match state.events.last() {
        Some(prev) if u_star <= prev.u => prev.u + tol::TOL_PARAM,
        _ => u_star,
    };
    let rec = EventRecord { u: u_log, kind, ids, psi_nodes_added: added, recovered };
    state.events.push(rec.clone());
    Ok(Some(rec))
}

/// The result of sweeping one full edge.
pub struct SweepOutcome {
    pub events: Vec<EventRecord>,
    pub psi: SequenceTree,
    /// Ridge-tree topology breakpoints: the sorted event parameters.
    pub breakpoints: Vec<f64>,
    /// JSON-lines event log.
    pub log: String,
    pub degeneracies: Vec<String>,
}

/// Sweeps the source along `edge` end to end, emitting every event and the
/// accumulated sequence tree Ψ(edge).
pub fn sweep_edge(mesh: &SurfaceMesh, edge: usize) -> Result<SweepOutcome, MeshError> {
    let mut state = init_sweep(mesh, edge)?;
    while process_event(mesh, &mut state)?.is_some() {}
    let breakpoints: Vec<f64> = state.events.iter().map(|e| e.u).collect();
    // a second sample per stretch, at its midpoint: the per-event samples
    // sit just past each event, where a fresh crossing can still be inside
    // the merge radius and a path sequence can come out short
    let mut cuts = vec![START_OFFSET];
    cuts.extend(breakpoints.iter().copied());
    cuts.push(1.0 - START_OFFSET);
    for w in cuts.windows(2) {
        if w[1] - w[0] <= 2.0 * DELTA {
            continue;
        }
        if let Ok(snap) = snapshot_near(mesh, edge, 0.5 * (w[0] + w[1])) {
            insert_sequences(mesh, edge, &snap, &mut state.psi, &mut state.degeneracies);
        }
    }
    let log = state.events.iter().map(log_line).collect::<Vec<_>>().join("\n");
    Ok(SweepOutcome {
        events: state.events,
        psi: state.psi,
        breakpoints,
        log,
        degeneracies: state.degeneracies,
    })
}

/// Independent sampling oracle: the union of the degree-3 shortest-path
/// sequence sets over `samples` uniformly placed parameters, as a trie over
/// the same root edge. Degenerate samples are skipped after small nudges.
pub fn sample_sigma(
    mesh: &SurfaceMesh,
    edge: usize,
    samples: usize,
) -> Result<SequenceTree, MeshError> {
    let span = 1.0 - 2.0 * START_OFFSET;
    let us: Vec<f64> = (0..samples)
        .map(|k| START_OFFSET + span * (k as f64 + 0.5) / samples as f64)
        .collect();
    sample_sigma_at(mesh, edge, &us)
}

/// The same sampling oracle over an explicit parameter list.
pub fn sample_sigma_at(
    mesh: &SurfaceMesh,
    edge: usize,
    us: &[f64],
) -> Result<SequenceTree, MeshError> {
    let mut psi = SequenceTree::new(edge);
    let mut degeneracies = Vec::new();
    for &u in us {
        let Ok(snap) = snapshot_near(mesh, edge, u) else { continue };
        insert_sequences(mesh, edge, &snap, &mut psi, &mut degeneracies);
    }
    Ok(psi)
}
