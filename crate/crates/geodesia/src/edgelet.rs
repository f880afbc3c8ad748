//! Edgelet partition of the polyhedron edges and the stable-source-image
//! classification over edge segments.
//!
//! The ridge trees of all polyhedron vertices cut every edge into maximal
//! generic sub-segments ("edgelets"). Within one edgelet the star unfolding
//! keeps a fixed combinatorial structure, so a source image is *stable* over
//! a segment exactly when its two adjacent vertex images on the star
//! boundary never change while the source moves along the segment.

use crate::mesh::{MeshError, SurfaceMesh};
use crate::ridge::{build_ridge_tree, RidgeTree};
use crate::star::build_star_unfolding;

/// Offset (fraction of the unit diameter) used to push a vertex source into
/// an incident face; a vertex itself is never a valid propagation source.
const VERTEX_OFFSET: f64 = 1e-6;
/// Breakpoints closer than this merge into one edgelet boundary.
const BP_MERGE: f64 = 1e-9;

/// Partition of every polyhedron edge into edgelets by the vertex ridge
/// trees.
#[derive(Debug, Clone)]
pub struct EdgeletPartition {
    /// Per edge: strictly increasing interior breakpoint parameters in
    /// (0, 1). An edge with `k` breakpoints has `k + 1` edgelets.
    pub breakpoints: Vec<Vec<f64>>,
    /// Degeneracy notes bubbled up from the per-vertex ridge-tree builds.
    pub degeneracies: Vec<String>,
}

impl EdgeletPartition {
    /// Total number of edgelets over all edges.
    pub fn edgelet_count(&self) -> usize {
        self.breakpoints.iter().map(|b| b.len() + 1).sum()
    }

    /// Index of the edgelet on `edge` containing parameter `t`.
    pub fn locate(&self, edge: usize, t: f64) -> usize {
        self.breakpoints[edge].partition_point(|&b| b < t)
    }

    /// Parameter interval of edgelet `i` on `edge`.
    pub fn bounds(&self, edge: usize, i: usize) -> (f64, f64) {
        let b = &self.breakpoints[edge];
        let lo = if i == 0 { 0.0 } else { b[i - 1] };
        let hi = if i == b.len() { 1.0 } else { b[i] };
        (lo, hi)
    }
}

/// The ridge tree of polyhedron vertex `v`, computed from a source pushed
/// `VERTEX_OFFSET` off `v` into an incident face.
pub fn vertex_ridge_tree(mesh: &SurfaceMesh, v: usize) -> Result<RidgeTree, MeshError> {
    let s = mesh.perturbed_vertex_point(v, VERTEX_OFFSET);
    build_ridge_tree(mesh, &s)
}

/// Computes the edgelet partition: for each vertex `v`, build its ridge tree
/// T_v, intersect it with every edge, and merge the breakpoints per edge.
pub fn compute_edgelets(mesh: &SurfaceMesh) -> Result<EdgeletPartition, MeshError> {
    let mut raw: Vec<Vec<f64>> = vec![Vec::new(); mesh.n_edges()];
    let mut degeneracies = Vec::new();
    for v in 0..mesh.n_vertices() {
        let tree = vertex_ridge_tree(mesh, v)?;
        degeneracies.extend(tree.degeneracies.iter().cloned());
        for (e, bps) in raw.iter_mut().enumerate() {
            bps.extend(tree.edge_breakpoints(mesh, e));
        }
    }
    let breakpoints = raw
        .into_iter()
        .map(|mut b| {
            b.sort_by(|x, y| x.partial_cmp(y).unwrap());
            b.retain(|&t| t > BP_MERGE && t < 1.0 - BP_MERGE);
            b.dedup_by(|a, b| (*a - *b).abs() <= BP_MERGE);
            b
        })
        .collect();
    Ok(EdgeletPartition { breakpoints, degeneracies })
}

/// Source images stable over an edge segment, identified both by index (in
/// the star unfolding at the first probe) and by the pair of polyhedron
/// vertices adjacent on the star boundary. The pairs are what stay
/// comparable across different segments.
#[derive(Debug, Clone)]
pub struct StableImages {
    /// Indices into `StarUnfolding::source_images` at the first probe.
    pub indices: Vec<usize>,
    /// The (previous, next) adjacent polyhedron vertices of each stable
    /// image, parallel to `indices`.
    pub pairs: Vec<(usize, usize)>,
}

/// Classifies the source images of the star unfolding as the source moves
/// over the segment `[t0, t1]` of `edge`, probing `m >= 2` points. An image
/// is stable when the same adjacent-vertex pair appears at every probe.
///
/// A probe that fails to build (non-generic source) is resampled nearby.
pub fn stable_source_images(
    mesh: &SurfaceMesh,
    edge: usize,
    t0: f64,
    t1: f64,
    m: usize,
) -> Result<StableImages, MeshError> {
    assert!(m >= 2, "need at least two probes");
    assert!(t0 < t1 && t0 > 0.0 && t1 < 1.0, "segment must be interior to the edge");
    let probes: Vec<f64> =
        (0..m).map(|k| t0 + (t1 - t0) * (k as f64 + 0.5) / m as f64).collect();
    stable_source_images_at(mesh, edge, &probes)
}

/// As [`stable_source_images`], but with explicit probe positions. Probing
/// the interior of every edgelet overlapping the segment makes the result
/// exact: an image's adjacent-vertex pair can only change across an edgelet
/// boundary, so per-edgelet probes cannot miss a change.
pub fn stable_source_images_at(
    mesh: &SurfaceMesh,
    edge: usize,
    probes: &[f64],
) -> Result<StableImages, MeshError> {
    assert!(probes.len() >= 2, "need at least two probes");
    let span = probes.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - probes.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut reference: Option<Vec<(usize, usize)>> = None;
    let mut alive: Vec<bool> = Vec::new();
    for &p in probes {
        let mut t = p;
        let star = {
            let mut attempt = 0;
            loop {
                match build_star_unfolding(mesh, &mesh.edge_point(edge, t)) {
                    Ok(star) => break star,
                    Err(e) if attempt >= 3 => return Err(e),
                    Err(_) => {
                        // resample the probe slightly off the degenerate spot
                        attempt += 1;
                        t += span * 1e-5 * attempt as f64;
                    }
                }
            }
        };
        let pairs: Vec<(usize, usize)> = star.source_images.iter().map(|si| si.adj).collect();
        match &reference {
            None => {
                alive = vec![true; pairs.len()];
                reference = Some(pairs);
            }
            Some(r) => {
                for (i, a) in alive.iter_mut().enumerate() {
                    *a = *a && pairs.contains(&r[i]);
                }
            }
        }
    }
    let r = reference.unwrap();
    let indices: Vec<usize> = (0..r.len()).filter(|&i| alive[i]).collect();
    let pairs = indices.iter().map(|&i| r[i]).collect();
    Ok(StableImages { indices, pairs })
}
