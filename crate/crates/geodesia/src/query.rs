//! Shortest-path query structures.
//!
//! Two layers are provided. [`OnePointStructure`] fixes a generic source on
//! an edge and partitions every polyhedron edge into intervals on which the
//! realizing source image is constant, so a distance query is a binary
//! search plus one Euclidean evaluation. [`EdgeQueryStructure`] sweeps the
//! source along a whole edge: the edge is cut into segments on which the
//! ridge-tree topology is constant, and the per-edge interval maps are kept
//! in a partially persistent vector (path copying, one version per
//! segment). Interval endpoints are not stored as numbers; every interval
//! carries the affine motion of its source image as a function of the sweep
//! parameter, and boundaries are evaluated at query time.

use crate::geom::{Motion2, V2};
use crate::mesh::{MeshError, PointClass, SurfaceMesh, SurfacePoint};
use crate::ridge::build_ridge_tree_with;
use crate::seqtree::SequenceTree;
use crate::star::build_star_unfolding;
use crate::sweep::{sweep_edge, START_OFFSET};
use crate::unfolding::{compose_unfolding, realize_geodesic, EdgeSequence, GeodesicPath};

/// Two query evaluations within this distance of a breakpoint are both
/// tried and the minimum returned.
const TOL_TIE: f64 = 1e-9;
/// Breakpoints on an edge closer than this are merged.
const BP_MERGE: f64 = 1e-9;
/// Build-time self-check: unfolded image distance vs. the star-plane
/// distance for the interval midpoint.
const TOL_CHECK: f64 = 1e-6;

/// One interval of a polyhedron edge on which a single source image
/// realizes the shortest path.
#[derive(Debug, Clone)]
pub struct Interval {
    /// Parameter range along the edge.
    pub t0: f64,
    pub t1: f64,
    /// Index of the realizing source image in the source's star unfolding.
    pub image: usize,
    /// Crossed edges from the source to this interval (source-anchored).
    pub seq: EdgeSequence,
    /// Image of the source unfolded into the frame of `faces[0]` of the
    /// interval's edge; the distance to any t in the interval is the plain
    /// Euclidean distance to t's coordinates in that frame.
    pub s_img: V2,
    /// Node of the owning structure's sequence trie spelling `seq`.
    pub psi_node: Option<usize>,
}

/// Per-edge interval decomposition for one fixed source point.
#[derive(Debug, Clone)]
pub struct OnePointStructure {
    pub source: SurfacePoint,
    /// `intervals[e]` tiles edge `e`, sorted by parameter.
    pub intervals: Vec<Vec<Interval>>,
    /// Trie over the stored edge sequences, rooted at the source's edge.
    pub psi: SequenceTree,
    pub degeneracies: Vec<String>,
}

/// Result of a point query.
#[derive(Debug, Clone)]
pub struct QueryAnswer {
    pub length: f64,
    /// Crossed edges of the reported path (source side first).
    pub seq: EdgeSequence,
    /// Realized path; `None` when the straight segment grazes the strip
    /// boundary within tolerance.
    pub path: Option<GeodesicPath>,
    /// Comparisons performed by the binary searches.
    pub probes: usize,
}

/// Unfold the source across `seq` into the frame of `faces[0]` of `target`
/// and return the images of `mesh.edge_point(src_edge, 0)` and the unit
/// parameter step, so the source image at parameter u is `a + b * u`.
fn unfolded_source_motion(
    mesh: &SurfaceMesh,
    src_edge: usize,
    seq: &EdgeSequence,
    target: usize,
) -> Result<(V2, V2), MeshError> {
    let end_face = seq.last_face(mesh);
    let rev = seq.reversed(mesh);
    let strip = compose_unfolding(mesh, &rev)?;
    let k = strip.faces.len() - 1;
    debug_assert_eq!(strip.faces[k], seq.anchor_face);
    let p0 = mesh.transfer(&mesh.edge_point(src_edge, 0.0), seq.anchor_face);
    let p1 = mesh.transfer(&mesh.edge_point(src_edge, 1.0), seq.anchor_face);
    let mut a = strip.image(k, p0);
    let mut a1 = strip.image(k, p1);
    let f0 = mesh.edges[target].faces[0];
    if end_face != f0 {
        if !mesh.face_has_edge(end_face, target) {
            return Err(MeshError::EdgeNotIncident(target, end_face));
        }
        let m: Motion2 = mesh.unfold_across(f0, target)?;
        a = m.apply(a);
        a1 = m.apply(a1);
    }
    Ok((a, a1 - a))
}

/// Build the per-edge interval decomposition for a generic source on an
/// edge, using its ridge tree to cut every edge at the points where the
/// realizing source image changes.
pub fn build_one_point(mesh: &SurfaceMesh, s: &SurfacePoint) -> Result<OnePointStructure, MeshError> {
    let (src_edge, src_t) = match s.class {
        PointClass::EdgeInterior(e) => {
            let f0 = mesh.edges[e].faces[0];
            let (qa, qb) = mesh.edge_in_face(e, f0);
            let x = mesh.transfer(s, f0);
            ((e), (x - qa).dot(qb - qa) / (qb - qa).norm2())
        }
        _ => {
            return Err(MeshError::Degenerate("one-point source must lie on an edge".into()));
        }
    };
    let star = build_star_unfolding(mesh, s)?;
    let tree = build_ridge_tree_with(mesh, &star)?;
    let mut degeneracies = tree.degeneracies.clone();
    let mut psi = SequenceTree::new(src_edge);
    let mut intervals = Vec::with_capacity(mesh.n_edges());
    for e2 in 0..mesh.n_edges() {
        if e2 == src_edge {
            // points on the source's own edge: the along-edge path equals
            // the 3-D chord, so it is shortest everywhere and the edge is
            // one interval with the source as its own image
            let f0 = mesh.edges[e2].faces[0];
            let seq = EdgeSequence::empty(f0);
            let psi_node = psi.insert(mesh, &[src_edge]).ok();
            intervals.push(vec![Interval {
                t0: 0.0,
                t1: 1.0,
                image: 0,
                seq,
                s_img: mesh.transfer(s, f0),
                psi_node,
            }]);
            continue;
        }
        let mut bps = tree.edge_breakpoints(mesh, e2);
        bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bps.retain(|&t| t > BP_MERGE && t < 1.0 - BP_MERGE);
        bps.dedup_by(|a, b| (*a - *b).abs() <= BP_MERGE);
        let mut cuts = vec![0.0];
        cuts.extend(bps);
        cuts.push(1.0);
        let mut list: Vec<Interval> = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            let tm = 0.5 * (t0 + t1);
            let x = mesh.edge_point(e2, tm);
            let Some((d, image)) = star.one_point_distance(mesh, &x) else {
                degeneracies.push(format!("edge {e2}: no image for interval midpoint {tm}"));
                continue;
            };
            let Some((_, ximg)) = star.locate_image(mesh, &x) else {
                degeneracies.push(format!("edge {e2}: interval midpoint {tm} not on any plate"));
                continue;
            };
            let Some(seq) = star.path_sequence(mesh, image, ximg) else {
                degeneracies.push(format!("edge {e2}: no plate path to interval midpoint {tm}"));
                continue;
            };
            let (a, b) = match unfolded_source_motion(mesh, src_edge, &seq, e2) {
                Ok(v) => v,
                Err(err) => {
                    degeneracies.push(format!("edge {e2} at {tm}: {err}"));
                    continue;
                }
            };
            let s_img = a + b * src_t;
            let f0 = mesh.edges[e2].faces[0];
            let x_local = mesh.transfer(&x, f0);
            if (s_img.dist(x_local) - d).abs() > TOL_CHECK {
                degeneracies.push(format!(
                    "edge {e2} at {tm}: unfolded distance {} vs star distance {d}",
                    s_img.dist(x_local)
                ));
            }
            // merge with the previous interval when the breakpoint turned
            // out not to change the sequence (grazing ridge contact)
            if let Some(prev) = list.last_mut() {
                if prev.seq.edges == seq.edges && prev.image == image {
                    prev.t1 = t1;
                    continue;
                }
            }
            let mut full = vec![src_edge];
            full.extend(seq.edges.iter().copied());
            let psi_node = psi.insert(mesh, &full).ok();
            list.push(Interval { t0, t1, image, seq, s_img, psi_node });
        }
        if let Some(first) = list.first_mut() {
            first.t0 = 0.0;
        }
        if let Some(last) = list.last_mut() {
            last.t1 = 1.0;
        }
        intervals.push(list);
    }
    Ok(OnePointStructure { source: *s, intervals, psi, degeneracies })
}

impl OnePointStructure {
    /// Distance from the source to the point at parameter `t` of `edge`,
    /// by binary search over the edge's intervals. A query within the tie
    /// tolerance of a breakpoint evaluates both sides and keeps the
    /// minimum.
    pub fn query(&self, mesh: &SurfaceMesh, edge: usize, t: f64) -> Option<QueryAnswer> {
        let list = &self.intervals[edge];
        if list.is_empty() {
            return None;
        }
        let mut probes = 0usize;
        let (mut lo, mut hi) = (0usize, list.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            probes += 1;
            if list[mid].t1 < t {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut cand = vec![lo];
        if lo > 0 && (t - list[lo].t0).abs() <= TOL_TIE {
            cand.push(lo - 1);
        }
        if lo + 1 < list.len() && (list[lo].t1 - t).abs() <= TOL_TIE {
            cand.push(lo + 1);
        }
        let x = mesh.edge_point(edge, t);
        let f0 = mesh.edges[edge].faces[0];
        let x_local = mesh.transfer(&x, f0);
        let best = cand
            .into_iter()
            .map(|k| (list[k].s_img.dist(x_local), k))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())?;
        let iv = &list[best.1];
        let path = realize_geodesic(mesh, &self.source, &x, &iv.seq).ok().flatten();
        Some(QueryAnswer { length: best.0, seq: iv.seq.clone(), path, probes })
    }
}

/// One interval of a polyhedron edge, with the source image parameterized
/// by the sweep position u: the image in the frame of `faces[0]` of the
/// interval's edge is `a + b * u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamInterval {
    pub a: V2,
    pub b: V2,
    /// Source-anchored crossed-edge sequence identifying the interval.
    pub seq: EdgeSequence,
    /// Node of the swept sequence trie spelling the full sequence.
    pub psi_node: Option<usize>,
}

/// How one version's interval maps differ from the previous version's.
#[derive(Debug, Clone, PartialEq)]
pub enum VersionDelta {
    /// No edge map changed (type-1 event between the segments).
    Unchanged,
    /// Exactly one entry inserted on one edge's map.
    Insert { edge: usize, index: usize },
    /// Exactly one entry removed from one edge's map.
    Remove { edge: usize, index: usize },
    /// Exactly one entry replaced in place on one edge's map.
    Replace { edge: usize, index: usize },
    /// The diff was not a single entry; the affected maps were rebuilt.
    Rebuilt { edges: Vec<usize> },
}

/// Two-point query structure for sources on one fixed edge: the edge's
/// sweep segments, one persistent version of the per-edge interval maps
/// per segment, and the swept sequence trie with per-node motions.
#[derive(Debug, Clone)]
pub struct EdgeQueryStructure {
    pub edge: usize,
    /// Segment boundaries along the swept edge (first = start offset,
    /// last = 1 − start offset, interior = sweep event parameters).
    pub cuts: Vec<f64>,
    /// `versions[k][e2]`: interval map of edge `e2` valid for sources in
    /// segment k. Versions share structure by path copying.
    pub versions: Vec<Vec<im::Vector<ParamInterval>>>,
    /// One delta per segment transition (`versions.len() − 1` entries).
    pub deltas: Vec<VersionDelta>,
    pub psi: SequenceTree,
    pub degeneracies: Vec<String>,
}

enum Edit {
    Ins(usize),
    Del(usize),
    Rep(usize),
}

/// Locate the single insert, remove, or in-place replacement turning `old`
/// into `new`, matching intervals by their edge sequence and motion.
fn single_edit(old: &im::Vector<ParamInterval>, new: &[ParamInterval]) -> Option<Edit> {
    let (no, nn) = (old.len(), new.len());
    let same = |o: &ParamInterval, n: &ParamInterval| {
        o.seq.edges == n.seq.edges && o.a.dist(n.a) <= 1e-9 && o.b.dist(n.b) <= 1e-9
    };
    if nn == no + 1 {
        let mut k = 0;
        while k < no && same(&old[k], &new[k]) {
            k += 1;
        }
        (k..no).all(|i| same(&old[i], &new[i + 1])).then_some(Edit::Ins(k))
    } else if nn + 1 == no {
        let mut k = 0;
        while k < nn && same(&old[k], &new[k]) {
            k += 1;
        }
        (k..nn).all(|i| same(&old[i + 1], &new[i])).then_some(Edit::Del(k))
    } else if nn == no {
        let diff: Vec<usize> = (0..no).filter(|&i| !same(&old[i], &new[i])).collect();
        (diff.len() == 1).then(|| Edit::Rep(diff[0]))
    } else {
        None
    }
}

fn to_param_intervals(
    mesh: &SurfaceMesh,
    src_edge: usize,
    op: &OnePointStructure,
    e2: usize,
    psi: &mut SequenceTree,
    degeneracies: &mut Vec<String>,
) -> Vec<ParamInterval> {
    let mut out = Vec::with_capacity(op.intervals[e2].len());
    for iv in &op.intervals[e2] {
        match unfolded_source_motion(mesh, src_edge, &iv.seq, e2) {
            Ok((a, b)) => {
                let mut full = vec![src_edge];
                full.extend(iv.seq.edges.iter().copied());
                let psi_node = psi.insert(mesh, &full).ok();
                out.push(ParamInterval { a, b, seq: iv.seq.clone(), psi_node });
            }
            Err(err) => degeneracies.push(format!("edge {e2}: {err}")),
        }
    }
    out
}

/// Build the two-point structure for sources on `edge` by sweeping the
/// edge and deriving one persistent version of the interval maps per
/// sweep segment.
pub fn build_edge_structure(mesh: &SurfaceMesh, edge: usize) -> Result<EdgeQueryStructure, MeshError> {
    let out = sweep_edge(mesh, edge)?;
    let mut cuts = vec![START_OFFSET];
    cuts.extend(out.breakpoints.iter().copied());
    cuts.push(1.0 - START_OFFSET);
    let mut psi = out.psi;
    let mut degeneracies = out.degeneracies;
    let mut versions: Vec<Vec<im::Vector<ParamInterval>>> = Vec::with_capacity(cuts.len() - 1);
    let mut deltas = Vec::new();
    for w in cuts.windows(2) {
        // the representative source may sit on an isolated non-generic
        // alignment; retry at other positions inside the segment
        let mut picked = None;
        let mut u_mid = 0.5 * (w[0] + w[1]);
        for frac in [0.5, 0.45, 0.55, 0.35, 0.65, 0.25, 0.75] {
            let u = w[0] + (w[1] - w[0]) * frac;
            match build_one_point(mesh, &mesh.edge_point(edge, u)) {
                Ok(op) => {
                    if frac != 0.5 {
                        degeneracies
                            .push(format!("segment [{}, {}]: representative moved to u = {u}", w[0], w[1]));
                    }
                    u_mid = u;
                    picked = Some(op);
                    break;
                }
                Err(_) => continue,
            }
        }
        let Some(op) = picked else {
            // a sub-resolution degenerate zone between near-simultaneous
            // events: keep the previous version for the whole micro segment
            if let Some(prev) = versions.last() {
                degeneracies.push(format!(
                    "degenerate zone [{}, {}]: previous version reused",
                    w[0], w[1]
                ));
                versions.push(prev.clone());
                deltas.push(VersionDelta::Unchanged);
                continue;
            }
            return Err(MeshError::Degenerate(format!(
                "no generic representative source in segment [{}, {}]",
                w[0], w[1]
            )));
        };
        let fresh: Vec<Vec<ParamInterval>> = (0..mesh.n_edges())
            .map(|e2| to_param_intervals(mesh, edge, &op, e2, &mut psi, &mut degeneracies))
            .collect();
        match versions.last() {
            None => {
                versions.push(fresh.into_iter().map(im::Vector::from).collect());
            }
            Some(prev) => {
                let mut next: Vec<im::Vector<ParamInterval>> = prev.clone();
                let mut delta = VersionDelta::Unchanged;
                let mut rebuilt = Vec::new();
                for (e2, new_list) in fresh.iter().enumerate() {
                    let unchanged = prev[e2].len() == new_list.len()
                        && prev[e2].iter().zip(new_list).all(|(o, n)| {
                            o.seq.edges == n.seq.edges
                                && o.a.dist(n.a) <= 1e-9
                                && o.b.dist(n.b) <= 1e-9
                        });
                    if unchanged {
                        continue;
                    }
                    match single_edit(&prev[e2], new_list) {
                        Some(Edit::Ins(k)) if delta == VersionDelta::Unchanged => {
                            next[e2].insert(k, new_list[k].clone());
                            delta = VersionDelta::Insert { edge: e2, index: k };
                        }
                        Some(Edit::Del(k)) if delta == VersionDelta::Unchanged => {
                            next[e2].remove(k);
                            delta = VersionDelta::Remove { edge: e2, index: k };
                        }
                        Some(Edit::Rep(k)) if delta == VersionDelta::Unchanged => {
                            next[e2].set(k, new_list[k].clone());
                            delta = VersionDelta::Replace { edge: e2, index: k };
                        }
                        _ => {
                            next[e2] = im::Vector::from(new_list.clone());
                            rebuilt.push(e2);
                        }
                    }
                }
                if !rebuilt.is_empty() {
                    if let VersionDelta::Insert { edge: e2, .. }
                    | VersionDelta::Remove { edge: e2, .. }
                    | VersionDelta::Replace { edge: e2, .. } = delta
                    {
                        rebuilt.push(e2);
                    }
                    degeneracies.push(format!(
                        "segment at u = {u_mid}: non-minimal map diff on edges {rebuilt:?}"
                    ));
                    delta = VersionDelta::Rebuilt { edges: rebuilt };
                }
                deltas.push(delta);
                versions.push(next);
            }
        }
    }
    Ok(EdgeQueryStructure { edge, cuts, versions, deltas, psi, degeneracies })
}

impl EdgeQueryStructure {
    /// Index of the segment containing sweep parameter `u` (clamped to the
    /// swept range), by binary search; increments `probes` per comparison.
    pub fn segment_of(&self, u: f64, probes: &mut usize) -> usize {
        let (mut lo, mut hi) = (0usize, self.versions.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            *probes += 1;
            if self.cuts[mid + 1] < u {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Boundary parameter on `edge` between intervals k and k+1 of `list`,
    /// evaluated for a source at sweep parameter `u`: the bisector of the
    /// two source images intersected with the edge.
    fn boundary(
        &self,
        list: &im::Vector<ParamInterval>,
        k: usize,
        u: f64,
        qa: V2,
        dq: V2,
    ) -> f64 {
        let ia = list[k].a + list[k].b * u;
        let ib = list[k + 1].a + list[k + 1].b * u;
        let d = ib - ia;
        let denom = dq.dot(d);
        if denom.abs() < 1e-300 {
            return 0.5;
        }
        (0.5 * (ib.norm2() - ia.norm2()) - qa.dot(d)) / denom
    }

    /// Distance (and path) from the source at parameter `u` of the swept
    /// edge to the point at parameter `t` of `edge2`.
    pub fn query(
        &self,
        mesh: &SurfaceMesh,
        u: f64,
        edge2: usize,
        t: f64,
    ) -> Option<QueryAnswer> {
        let mut probes = 0usize;
        let u = u.clamp(self.cuts[0], *self.cuts.last().unwrap());
        let seg = self.segment_of(u, &mut probes);
        let list = &self.versions[seg][edge2];
        if list.is_empty() {
            return None;
        }
        let f0 = mesh.edges[edge2].faces[0];
        let (qa, qb) = mesh.edge_in_face(edge2, f0);
        let dq = qb - qa;
        let (mut lo, mut hi) = (0usize, list.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            probes += 1;
            if self.boundary(list, mid, u, qa, dq) < t {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut cand = vec![lo];
        if lo > 0 && (t - self.boundary(list, lo - 1, u, qa, dq)).abs() <= TOL_TIE {
            cand.push(lo - 1);
        }
        if lo + 1 < list.len() && (self.boundary(list, lo, u, qa, dq) - t).abs() <= TOL_TIE {
            cand.push(lo + 1);
        }
        let x_local = qa + dq * t;
        let best = cand
            .into_iter()
            .map(|k| ((list[k].a + list[k].b * u).dist(x_local), k))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())?;
        let iv = &list[best.1];
        let s = mesh.edge_point(self.edge, u);
        let x = mesh.edge_point(edge2, t);
        let path = realize_geodesic(mesh, &s, &x, &iv.seq).ok().flatten();
        Some(QueryAnswer { length: best.0, seq: iv.seq.clone(), path, probes })
    }
}

// ---------------------------------------------------------------------------
// Binary container ("GEOQ1", little-endian).
//
// Layout:
//   magic            5 bytes "GEOQ1"
//   format version   u8 (= 1)
//   edge             u32
//   n_edges          u32
//   n_segments       u32
//   cuts             u32 count, then f64 × count
//   trie             u32 node count, then per node:
//                      parent i64 (−1 at root), edge u32,
//                      face i64 (−1 = none), motion f64 × 4 (c, s, t.x, t.y)
//   maps             per segment, per edge:
//                      u32 count, or u32::MAX meaning "same map as the
//                      previous segment" (restores structural sharing on
//                      load); then per interval:
//                        a f64 × 2, b f64 × 2, psi_node i64 (−1 = none),
//                        anchor_face u32, seq length u32, seq edges u32 × len
//
// Deltas and degeneracy notes are derived data and are not serialized.
// ---------------------------------------------------------------------------

const MAGIC: &[u8; 5] = b"GEOQ1";
const SAME_AS_PREV: u32 = u32::MAX;

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], MeshError> {
        if self.at + n > self.buf.len() {
            return Err(MeshError::Degenerate("truncated GEOQ1 container".into()));
        }
        let s = &self.buf[self.at..self.at + n];
        self.at += n;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8, MeshError> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32, MeshError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn i64(&mut self) -> Result<i64, MeshError> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f64(&mut self) -> Result<f64, MeshError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

fn w_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}
fn w_i64(out: &mut Vec<u8>, v: i64) {
    out.extend_from_slice(&v.to_le_bytes());
}
fn w_f64(out: &mut Vec<u8>, v: f64) {
    out.extend_from_slice(&v.to_le_bytes());
}

/// Serialize an [`EdgeQueryStructure`] to the GEOQ1 container.
pub fn save_edge_structure(eqs: &EdgeQueryStructure) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(1u8);
    w_u32(&mut out, eqs.edge as u32);
    let n_edges = eqs.versions.first().map_or(0, |v| v.len());
    w_u32(&mut out, n_edges as u32);
    w_u32(&mut out, eqs.versions.len() as u32);
    w_u32(&mut out, eqs.cuts.len() as u32);
    for &c in &eqs.cuts {
        w_f64(&mut out, c);
    }
    w_u32(&mut out, eqs.psi.nodes.len() as u32);
    for n in &eqs.psi.nodes {
        w_i64(&mut out, n.parent.map_or(-1, |p| p as i64));
        w_u32(&mut out, n.edge as u32);
        w_i64(&mut out, n.face.map_or(-1, |f| f as i64));
        w_f64(&mut out, n.motion.c);
        w_f64(&mut out, n.motion.s);
        w_f64(&mut out, n.motion.t.x);
        w_f64(&mut out, n.motion.t.y);
    }
    for (k, seg) in eqs.versions.iter().enumerate() {
        for (e2, list) in seg.iter().enumerate() {
            let same = k > 0 && eqs.versions[k - 1][e2] == *list;
            if same {
                w_u32(&mut out, SAME_AS_PREV);
                continue;
            }
            w_u32(&mut out, list.len() as u32);
            for iv in list {
                w_f64(&mut out, iv.a.x);
                w_f64(&mut out, iv.a.y);
                w_f64(&mut out, iv.b.x);
                w_f64(&mut out, iv.b.y);
                w_i64(&mut out, iv.psi_node.map_or(-1, |p| p as i64));
                w_u32(&mut out, iv.seq.anchor_face as u32);
                w_u32(&mut out, iv.seq.edges.len() as u32);
                for &e in &iv.seq.edges {
                    w_u32(&mut out, e as u32);
                }
            }
        }
    }
    out
}

/// Deserialize a GEOQ1 container. Maps flagged as unchanged share
/// structure with the previous segment's maps, as in the original build.
pub fn load_edge_structure(buf: &[u8]) -> Result<EdgeQueryStructure, MeshError> {
    let mut r = Reader { buf, at: 0 };
    if r.take(5)? != MAGIC {
        return Err(MeshError::Degenerate("bad GEOQ1 magic".into()));
    }
    if r.u8()? != 1 {
        return Err(MeshError::Degenerate("unsupported GEOQ1 format version".into()));
    }
    let edge = r.u32()? as usize;
    let n_edges = r.u32()? as usize;
    let n_segments = r.u32()? as usize;
    let n_cuts = r.u32()? as usize;
    let mut cuts = Vec::with_capacity(n_cuts);
    for _ in 0..n_cuts {
        cuts.push(r.f64()?);
    }
    let n_nodes = r.u32()? as usize;
    let mut psi = SequenceTree::new(0);
    psi.nodes.clear();
    for _ in 0..n_nodes {
        let parent = r.i64()?;
        let edge = r.u32()? as usize;
        let face = r.i64()?;
        let motion = Motion2 {
            c: r.f64()?,
            s: r.f64()?,
            t: crate::geom::v2(r.f64()?, r.f64()?),
        };
        psi.nodes.push(crate::seqtree::PsiNode {
            edge,
            parent: (parent >= 0).then_some(parent as usize),
            children: Vec::new(),
            face: (face >= 0).then_some(face as usize),
            motion,
        });
    }
    for i in 0..psi.nodes.len() {
        if let Some(p) = psi.nodes[i].parent {
            psi.nodes[p].children.push(i);
        }
    }
    let mut versions: Vec<Vec<im::Vector<ParamInterval>>> = Vec::with_capacity(n_segments);
    for k in 0..n_segments {
        let mut seg = Vec::with_capacity(n_edges);
        for e2 in 0..n_edges {
            let count = r.u32()?;
            if count == SAME_AS_PREV {
                if k == 0 {
                    return Err(MeshError::Degenerate("GEOQ1: first segment marked shared".into()));
                }
                let prev: &im::Vector<ParamInterval> = &versions[k - 1][e2];
                seg.push(prev.clone());
                continue;
            }
            let mut list = im::Vector::new();
            for _ in 0..count {
                let a = crate::geom::v2(r.f64()?, r.f64()?);
                let b = crate::geom::v2(r.f64()?, r.f64()?);
                let psi_node = r.i64()?;
                let anchor = r.u32()? as usize;
                let len = r.u32()? as usize;
                let mut edges = Vec::with_capacity(len);
                for _ in 0..len {
                    edges.push(r.u32()? as usize);
                }
                list.push_back(ParamInterval {
                    a,
                    b,
                    seq: EdgeSequence { edges, anchor_face: anchor },
                    psi_node: (psi_node >= 0).then_some(psi_node as usize),
                });
            }
            seg.push(list);
        }
        versions.push(seg);
    }
    Ok(EdgeQueryStructure {
        edge,
        cuts,
        versions,
        deltas: Vec::new(),
        psi,
        degeneracies: Vec::new(),
    })
}
