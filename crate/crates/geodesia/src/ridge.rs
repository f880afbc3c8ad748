//! Ridge tree: the locus of points with two or more shortest paths from the
//! source, realized as the Voronoi diagram of the star-unfolding source
//! images clipped to the kernel and pulled back to the surface.

use crate::geom::{point_in_polygon, seg_intersect, V2};
use crate::mesh::{MeshError, SurfaceMesh, SurfacePoint};
use crate::star::{build_star_unfolding, SideKind, StarUnfolding};
use crate::tol;

const MERGE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RidgeVertexClass {
    /// Polyhedron vertex (kernel corner); always degree 1.
    Leaf(usize),
    /// Degree-2 vertex where the tree crosses a polyhedron edge.
    EdgeCross(usize),
    /// Voronoi vertex of three (or more) source images.
    Internal,
}

#[derive(Debug, Clone)]
pub struct RidgeVertex {
    /// Position in the star plane.
    pub pos: V2,
    pub class: RidgeVertexClass,
    /// Embedded surface position.
    pub surface: Option<SurfacePoint>,
    /// Source images at minimum (equal) distance.
    pub images: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RidgeEdge {
    pub a: usize,
    pub b: usize,
    /// The two source images whose bisector carries this edge.
    pub images: (usize, usize),
    /// Face containing the open segment on the surface.
    pub face: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RidgeTree {
    pub source: SurfacePoint,
    /// Source the geometry was actually built from (jittered away from
    /// `source` when that was non-generic).
    pub effective_source: SurfacePoint,
    pub verts: Vec<RidgeVertex>,
    pub edges: Vec<RidgeEdge>,
    pub degeneracies: Vec<String>,
}

impl RidgeTree {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.verts.len())
            .filter(|&v| matches!(self.verts[v].class, RidgeVertexClass::Leaf(_)))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.a == v {
                out.push(e.b);
            } else if e.b == v {
                out.push(e.a);
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        let nv = self.verts.len();
        if nv == 0 || self.edges.len() + 1 != nv {
            return false;
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == nv
    }

    /// Breakpoints where the tree crosses polyhedron edge `e`, as edge
    /// parameters (along edge.v order), sorted.
    pub fn edge_breakpoints(&self, mesh: &SurfaceMesh, e: usize) -> Vec<f64> {
        let mut out = Vec::new();
        for v in &self.verts {
            if v.class != RidgeVertexClass::EdgeCross(e) {
                continue;
            }
            if let Some(sp) = v.surface {
                if let Some(t) = mesh.edge_param(&sp) {
                    out.push(t);
                }
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    /// Canonical topological signature: AHU encoding with vertex-class
    /// labels, rooted at the tree center (minimum over both centers when the
    /// center is an edge).
    pub fn signature(&self) -> String {
        let nv = self.verts.len();
        if nv == 0 {
            return String::new();
        }
        // tree center by iterative leaf stripping
        let mut deg: Vec<usize> = (0..nv).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; nv];
        let mut remaining = nv;
        let mut frontier: Vec<usize> = (0..nv).filter(|&v| deg[v] <= 1).collect();
        while remaining > 2 {
            let mut next = Vec::new();
            for &v in &frontier {
                if removed[v] {
                    continue;
                }
                removed[v] = true;
                remaining -= 1;
                for w in self.neighbors(v) {
                    if !removed[w] {
                        deg[w] -= 1;
                        if deg[w] <= 1 {
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
        }
        let centers: Vec<usize> = (0..nv).filter(|&v| !removed[v]).collect();
        centers
            .iter()
            .map(|&c| self.rooted_encoding(c, usize::MAX))
            .min()
            .unwrap_or_default()
    }

    fn rooted_encoding(&self, v: usize, parent: usize) -> String {
        let label = match self.verts[v].class {
            RidgeVertexClass::Leaf(p) => format!("L{p}"),
            RidgeVertexClass::EdgeCross(e) => format!("E{e}"),
            RidgeVertexClass::Internal => "I".to_string(),
        };
        let mut subs: Vec<String> = self
            .neighbors(v)
            .into_iter()
            .filter(|&w| w != parent)
            .map(|w| self.rooted_encoding(w, v))
            .collect();
        subs.sort();
        format!("{label}({})", subs.join(","))
    }
}

/// Build the ridge tree for `s`. A non-generic source (symmetric shortest
/// paths) collapses Voronoi edges onto the kernel boundary; such failures
/// are retried with a deterministic tiny source jitter and reported as
/// degeneracies.
pub fn build_ridge_tree(mesh: &SurfaceMesh, s: &SurfacePoint) -> Result<RidgeTree, MeshError> {
    let mut notes: Vec<String> = Vec::new();
    let mut last_err = None;
    for k in 0..4 {
        let sk = if k == 0 {
            Some(*s)
        } else {
            // jitter well above the vertex-merge tolerance, or symmetric
            // configurations collapse right back when snapped
            let o = 1e-6 * 10f64.powi(k - 1);
            [(o, 1.37 * o), (-o, 1.37 * o), (o, -1.37 * o), (-o, -1.37 * o)]
                .iter()
                .find_map(|&(dx, dy)| mesh.locate(s.face, s.xy + crate::geom::v2(dx, dy)).ok())
        };
        let Some(sk) = sk else { continue };
        let star = match build_star_unfolding(mesh, &sk) {
            Ok(st) => st,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match build_ridge_tree_with(mesh, &star) {
            Ok(mut tree) => {
                tree.source = *s;
                tree.degeneracies.extend(notes);
                return Ok(tree);
            }
            Err(e) => {
                notes.push(format!("attempt {k}: {e}; retrying with jittered source"));
                last_err = Some(e);
            }
        }
    }
    Err(last_err.unwrap_or_else(|| MeshError::Degenerate("ridge tree build failed".into())))
}

pub fn build_ridge_tree_with(mesh: &SurfaceMesh, star: &StarUnfolding) -> Result<RidgeTree, MeshError> {
    let n = star.n();
    let sites: Vec<V2> = star.source_images.iter().map(|si| si.pos).collect();
    let mut degeneracies = star.degeneracies.clone();

    // polyhedron-edge images inside the star plane, for degree-2 crossings
    let mut edge_images: Vec<(usize, V2, V2)> = Vec::new();
    for plate in &star.plates {
        let nv = plate.verts.len();
        for si in 0..nv {
            if let SideKind::OnEdge(e) = plate.sides[si] {
                edge_images.push((
                    e,
                    plate.motion.apply(plate.verts[si].0),
                    plate.motion.apply(plate.verts[(si + 1) % nv].0),
                ));
            }
        }
    }

    // Voronoi edge of images (i, j): the bisector line clipped by the
    // closer-to-i-than-k half-planes, then restricted to the kernel
    let span = 10.0 * sites.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let mut raw_segments: Vec<(usize, usize, V2, V2)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let si = sites[i];
            let sj = sites[j];
            if si.dist(sj) <= MERGE {
                degeneracies.push(format!("coincident source images {i} and {j}"));
                continue;
            }
            let mid = (si + sj) * 0.5;
            let dir = (sj - si).perp().normalized();
            let (mut lo, mut hi) = (-span, span);
            let mut empty = false;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // closer to s_i than s_k: 2 x·(s_k - s_i) <= |s_k|^2 - |s_i|^2
                let nk = (sites[k] - si) * 2.0;
                let dk = sites[k].norm2() - si.norm2();
                let c0 = nk.dot(mid) - dk;
                let c1 = nk.dot(dir);
                if c1.abs() < 1e-300 {
                    if c0 > tol::TOL_RIDGE {
                        empty = true;
                        break;
                    }
                    continue;
                }
                let t = -c0 / c1;
                if c1 > 0.0 {
                    hi = hi.min(t);
                } else {
                    lo = lo.max(t);
                }
                if hi - lo <= 1e-12 {
                    empty = true;
                    break;
                }
            }
            if !empty {
                raw_segments.push((i, j, mid + dir * lo, mid + dir * hi));
            }
        }
    }

    // restrict each Voronoi segment to the kernel
    let kernel = &star.kernel;
    let nk = kernel.len();
    let mut segments: Vec<(usize, usize, V2, V2)> = Vec::new();
    for &(i, j, a, b) in &raw_segments {
        let mut ts = vec![0.0f64, 1.0];
        for k in 0..nk {
            if let Some((t, _)) = seg_intersect(a, b, kernel[k], kernel[(k + 1) % nk]) {
                ts.push(t);
            }
            // a leaf bisector passes exactly through its kernel corner, which
            // seg_intersect can miss at the knife edge; split there explicitly
            let ab = b - a;
            let t = (kernel[k] - a).dot(ab) / ab.norm2();
            if (0.0..=1.0).contains(&t) && a.lerp(b, t).dist(kernel[k]) <= MERGE {
                ts.push(t);
            }
        }
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for w in ts.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            if t1 - t0 <= 1e-9 {
                continue;
            }
            let mid = a.lerp(b, (t0 + t1) * 0.5);
            if point_in_polygon(mid, kernel, 1e-12) {
                segments.push((i, j, a.lerp(b, t0), a.lerp(b, t1)));
            }
        }
    }

    // assemble the graph, snapping endpoints to kernel vertices and merging
    // coincident points
    let mut tree = RidgeTree {
        source: star.source,
        effective_source: star.source,
        verts: Vec::new(),
        edges: Vec::new(),
        degeneracies: Vec::new(),
    };
    let snap_kernel = |p: V2| -> V2 {
        for k in 0..nk {
            if p.dist(kernel[k]) <= MERGE {
                return kernel[k];
            }
        }
        p
    };
    let add_vertex = |tree: &mut RidgeTree, p: V2| -> usize {
        let p = snap_kernel(p);
        if let Some(v) = tree.verts.iter().position(|v| v.pos.dist(p) <= MERGE) {
            return v;
        }
        tree.verts.push(RidgeVertex {
            pos: p,
            class: RidgeVertexClass::Internal,
            surface: None,
            images: Vec::new(),
        });
        tree.verts.len() - 1
    };

    for &(i, j, a, b) in &segments {
        // split at polyhedron-edge image crossings (degree-2 vertices)
        let mut cuts: Vec<(f64, usize)> = Vec::new();
        for &(e, p, q) in &edge_images {
            if let Some((t, u)) = seg_intersect(a, b, p, q) {
                if t > 1e-9 && t < 1.0 - 1e-9 && u > -1e-9 && u < 1.0 + 1e-9 {
                    cuts.push((t, e));
                }
            }
        }
        cuts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        cuts.dedup_by(|x, y| (x.0 - y.0).abs() <= 1e-9);

        let mut chain = vec![(0.0, None)];
        chain.extend(cuts.iter().map(|&(t, e)| (t, Some(e))));
        chain.push((1.0, None));
        for w in chain.windows(2) {
            let (t0, _) = w[0];
            let (t1, cls1) = w[1];
            if t1 - t0 <= 1e-9 {
                continue;
            }
            let va = add_vertex(&mut tree, a.lerp(b, t0));
            let vb = add_vertex(&mut tree, a.lerp(b, t1));
            if va == vb {
                continue;
            }
            if let Some(e) = cls1 {
                tree.verts[vb].class = RidgeVertexClass::EdgeCross(e);
            }
            if !tree.edges.iter().any(|re| (re.a == va && re.b == vb) || (re.a == vb && re.b == va)) {
                tree.edges.push(RidgeEdge { a: va, b: vb, images: (i, j), face: None });
            }
        }
    }

    // vertex classification and attributes
    for v in 0..tree.verts.len() {
        let pos = tree.verts[v].pos;
        // leaf: coincides with a kernel corner
        for k in 0..nk {
            if pos.dist(kernel[k]) <= MERGE {
                tree.verts[v].class = RidgeVertexClass::Leaf(star.kernel_vertices[k]);
                tree.verts[v].surface = Some(mesh.vertex_point(star.kernel_vertices[k]));
                break;
            }
        }
        // equidistant images
        let dists: Vec<f64> = sites.iter().map(|s| s.dist(pos)).collect();
        let dmin = dists.iter().cloned().fold(f64::INFINITY, f64::min);
        let images: Vec<usize> =
            (0..n).filter(|&i| dists[i] - dmin <= tol::TOL_RIDGE).collect();
        if images.len() >= 4 && tree.verts[v].class == RidgeVertexClass::Internal {
            tree.degeneracies.push(format!(
                "{} cocircular source images at ridge vertex {v}",
                images.len()
            ));
        }
        tree.verts[v].images = images;
        if tree.verts[v].surface.is_none() {
            tree.verts[v].surface = star.pull_back(mesh, pos);
        }
    }

    // face containment of each edge (midpoint pull-back)
    for e in 0..tree.edges.len() {
        let mid = tree.verts[tree.edges[e].a].pos.lerp(tree.verts[tree.edges[e].b].pos, 0.5);
        tree.edges[e].face = star.pull_back(mesh, mid).map(|sp| sp.face);
    }

    tree.degeneracies.extend(degeneracies);

    if !tree.is_tree() {
        return Err(MeshError::Degenerate(format!(
            "ridge graph is not a tree: {} vertices, {} edges",
            tree.verts.len(),
            tree.edges.len()
        )));
    }
    // every kernel vertex must be a leaf (degenerate sources violate this
    // by sending Voronoi edges along the kernel boundary)
    for &kv in &star.kernel_vertices {
        let ok = tree
            .verts
            .iter()
            .enumerate()
            .any(|(vi, v)| v.class == RidgeVertexClass::Leaf(kv) && tree.degree(vi) == 1);
        if !ok {
            return Err(MeshError::Degenerate(format!(
                "polyhedron vertex {kv} is not a ridge-tree leaf (non-generic source)"
            )));
        }
    }
    // a crossing point within the merge radius of a Voronoi vertex collapses
    // onto it; the combined vertex is an ordinary internal vertex (the
    // crossing re-emerges as soon as the two separate beyond the radius)
    for v in 0..tree.verts.len() {
        if matches!(tree.verts[v].class, RidgeVertexClass::EdgeCross(_)) && tree.degree(v) >= 3 {
            tree.degeneracies.push(format!(
                "edge crossing absorbed into degree-{} ridge vertex {v}",
                tree.degree(v)
            ));
            tree.verts[v].class = RidgeVertexClass::Internal;
        }
    }
    for v in 0..tree.verts.len() {
        let d = tree.degree(v);
        let bad = match tree.verts[v].class {
            RidgeVertexClass::Leaf(_) => d != 1,
            RidgeVertexClass::EdgeCross(_) => d != 2,
            RidgeVertexClass::Internal => d < 3,
        };
        if bad {
            return Err(MeshError::Degenerate(format!(
                "ridge vertex {v} has degree {d} inconsistent with class {:?}",
                tree.verts[v].class
            )));
        }
    }
    Ok(tree)
}
