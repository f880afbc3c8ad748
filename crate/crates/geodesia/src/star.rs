//! Star unfolding: cut the surface open along the shortest paths from the
//! source to every vertex, flatten the result into the plane, and keep the
//! full plate decomposition (faces cut into pieces by the cut paths), the
//! pasting tree, the boundary cycle, the kernel and the source images.

use crate::chenhan::{build_ch_tree, shortest_vertex_paths_with, CHTree};
use crate::geom::{point_in_polygon, point_seg_dist, polygon_area, Motion2, V2};
use crate::mesh::{MeshError, PointClass, SurfaceMesh, SurfacePoint};
use crate::unfolding::{EdgeSequence, GeodesicPath};

const SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideKind {
    /// Sub-segment of a polyhedron edge.
    OnEdge(usize),
    /// Along the cut path to vertex j (part of the star polygon boundary).
    Cut(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertKind {
    MeshVertex(usize),
    /// Crossing of cut path j over a polyhedron edge.
    CutCross(usize),
    /// The source point itself.
    Source,
    Plain,
}

#[derive(Debug, Clone)]
pub struct Plate {
    pub face: usize,
    /// Polygon in the face's frame, counterclockwise (always convex: faces
    /// are triangles and every cut is a straight chord).
    pub verts: Vec<(V2, VertKind)>,
    /// sides[i] runs from verts[i] to verts[i+1].
    pub sides: Vec<SideKind>,
    /// Motion from the face frame into the star plane.
    pub motion: Motion2,
}

impl Plate {
    pub fn poly_local(&self) -> Vec<V2> {
        self.verts.iter().map(|v| v.0).collect()
    }
    pub fn poly_plane(&self) -> Vec<V2> {
        self.verts.iter().map(|v| self.motion.apply(v.0)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SourceImage {
    pub pos: V2,
    /// Polyhedron vertices at the two adjacent boundary corners (previous,
    /// next in boundary order); the pair identifies the image.
    pub adj: (usize, usize),
    /// A plate incident to this image; its face contains the source.
    pub plate: usize,
}

#[derive(Debug, Clone)]
pub struct StarUnfolding {
    pub source: SurfacePoint,
    pub plates: Vec<Plate>,
    /// Glued plate pairs with the polyhedron edge they share.
    pub pasting: Vec<(usize, usize, usize)>,
    pub root_plate: usize,
    /// Boundary corners in the star plane: alternating source images and
    /// vertex images, starting with a source image.
    pub boundary: Vec<(V2, VertKind)>,
    /// Source images in boundary order.
    pub source_images: Vec<SourceImage>,
    /// Kernel polygon (the vertex images), same cyclic order.
    pub kernel: Vec<V2>,
    /// Polyhedron vertex ids at the kernel corners.
    pub kernel_vertices: Vec<usize>,
    pub cut_paths: Vec<GeodesicPath>,
    pub degeneracies: Vec<String>,
}

// ---------------------------------------------------------------------------
// face splitting

#[derive(Debug, Clone)]
struct PPoly {
    verts: Vec<(V2, VertKind)>,
    sides: Vec<SideKind>,
}

impl PPoly {
    fn find_vertex(&self, p: V2) -> Option<usize> {
        self.verts.iter().position(|v| v.0.dist(p) <= SNAP)
    }

    /// Insert a point on the boundary, splitting the side it lies on; an
    /// existing vertex within tolerance is reused (upgrading a Plain kind).
    fn insert_on_boundary(&mut self, p: V2, kind: VertKind) -> Option<usize> {
        if let Some(i) = self.find_vertex(p) {
            if self.verts[i].1 == VertKind::Plain {
                self.verts[i].1 = kind;
            }
            return Some(i);
        }
        let n = self.verts.len();
        for i in 0..n {
            let (a, b) = (self.verts[i].0, self.verts[(i + 1) % n].0);
            if point_seg_dist(p, a, b) <= SNAP {
                self.verts.insert(i + 1, (p, kind));
                self.sides.insert(i + 1, self.sides[i]);
                return Some(i + 1);
            }
        }
        None
    }

    fn contains_strict(&self, p: V2) -> bool {
        let poly: Vec<V2> = self.verts.iter().map(|v| v.0).collect();
        for i in 0..poly.len() {
            if point_seg_dist(p, poly[i], poly[(i + 1) % poly.len()]) <= SNAP {
                return false;
            }
        }
        point_in_polygon(p, &poly, 0.0)
    }

    /// Split along the chord between vertex indices va and vb.
    fn split(&self, va: usize, vb: usize, cut: SideKind) -> (PPoly, PPoly) {
        let n = self.verts.len();
        let walk = |from: usize, to: usize| -> PPoly {
            let mut verts = Vec::new();
            let mut sides = Vec::new();
            let mut i = from;
            loop {
                verts.push(self.verts[i]);
                if i == to {
                    break;
                }
                sides.push(self.sides[i]);
                i = (i + 1) % n;
            }
            sides.push(cut);
            PPoly { verts, sides }
        };
        (walk(va, vb), walk(vb, va))
    }
}

#[derive(Debug, Clone)]
struct Chord {
    path: usize,
    a: (V2, VertKind),
    b: (V2, VertKind),
}

/// Distribute cut-path geometry over faces: for each face, the chords of
/// the paths crossing it. Paths that run along the source edge contribute
/// no chords (they cut the gluing instead).
fn collect_chords(mesh: &SurfaceMesh, paths: &[GeodesicPath]) -> Result<Vec<Vec<Chord>>, MeshError> {
    let mut per_face: Vec<Vec<Chord>> = vec![Vec::new(); mesh.n_faces()];
    for (j, path) in paths.iter().enumerate() {
        let tv = match path.target.class {
            PointClass::Vertex(v) => v,
            _ => return Err(MeshError::Degenerate("cut path must end at a vertex".into())),
        };
        if path.crossings.is_empty() {
            if let PointClass::EdgeInterior(e0) = path.source.class {
                if mesh.edges[e0].v.contains(&tv) {
                    continue;
                }
            }
        }
        let chain = path.seq.face_chain(mesh);
        let mut pts: Vec<(SurfacePoint, VertKind)> = Vec::with_capacity(path.crossings.len() + 2);
        pts.push((path.source, VertKind::Source));
        for c in &path.crossings {
            pts.push((*c, VertKind::CutCross(j)));
        }
        pts.push((path.target, VertKind::MeshVertex(tv)));
        for (k, &f) in chain.iter().enumerate() {
            per_face[f].push(Chord {
                path: j,
                a: (mesh.transfer(&pts[k].0, f), pts[k].1),
                b: (mesh.transfer(&pts[k + 1].0, f), pts[k + 1].1),
            });
        }
    }
    Ok(per_face)
}

/// Split one face into plates by its chords. `preinsert` seeds an extra
/// boundary vertex (the source, when it lies on an edge of this face);
/// `radial_center` switches to the wedge decomposition used when the source
/// is interior to this face (all chords radiate from it).
fn split_face(
    mesh: &SurfaceMesh,
    face: usize,
    chords: &[Chord],
    radial_center: Option<V2>,
    preinsert: Option<V2>,
) -> Result<Vec<PPoly>, MeshError> {
    let corners = mesh.corners2d[face];
    let mut base = PPoly {
        verts: (0..3).map(|k| (corners[k], VertKind::MeshVertex(mesh.faces[face][k]))).collect(),
        sides: (0..3).map(|k| SideKind::OnEdge(mesh.face_edges[face][k])).collect(),
    };
    if let Some(p) = preinsert {
        base.insert_on_boundary(p, VertKind::Source)
            .ok_or_else(|| MeshError::Degenerate("source not on face boundary".into()))?;
    }

    if let Some(center) = radial_center {
        let mut boundary = base;
        let mut fans: Vec<(f64, usize, V2)> = Vec::new(); // (angle, chord, far point)
        for (ci, ch) in chords.iter().enumerate() {
            let (far, fark) = if ch.a.0.dist(center) <= SNAP { ch.b } else { ch.a };
            if ch.a.0.dist(center) > SNAP && ch.b.0.dist(center) > SNAP {
                return Err(MeshError::Degenerate(format!(
                    "non-radial chord of cut {} in the source face",
                    ch.path
                )));
            }
            boundary
                .insert_on_boundary(far, fark)
                .ok_or_else(|| MeshError::Degenerate("chord endpoint off face boundary".into()))?;
            fans.push(((far - center).angle(), ci, far));
        }
        fans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let m = fans.len();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let (_, ci, far_i) = fans[i];
            let (_, cj, far_j) = fans[(i + 1) % m];
            let vi = boundary.find_vertex(far_i).unwrap();
            let vj = boundary.find_vertex(far_j).unwrap();
            let mut verts = vec![(center, VertKind::Source)];
            let mut sides = vec![SideKind::Cut(chords[ci].path)];
            let nb = boundary.verts.len();
            let mut k = vi;
            loop {
                verts.push(boundary.verts[k]);
                if k == vj {
                    break;
                }
                sides.push(boundary.sides[k]);
                k = (k + 1) % nb;
            }
            sides.push(SideKind::Cut(chords[cj].path));
            out.push(PPoly { verts, sides });
        }
        return Ok(out);
    }

    let mut polys = vec![base];
    for ch in chords {
        if std::env::var("STAR_DEBUG").is_ok() && face == 5 {
            eprintln!("--- face {face} chord of cut {} : {:?} -> {:?}", ch.path, ch.a.0, ch.b.0);
            for (k, p) in polys.iter().enumerate() {
                eprintln!("  poly {k}: {:?}", p.verts.iter().map(|v| v.0).collect::<Vec<_>>());
            }
        }
        let mid = (ch.a.0 + ch.b.0) * 0.5;
        let mut placed = false;
        for pi in 0..polys.len() {
            if !polys[pi].contains_strict(mid) {
                continue;
            }
            let va = polys[pi].insert_on_boundary(ch.a.0, ch.a.1);
            let vb = polys[pi].insert_on_boundary(ch.b.0, ch.b.1);
            // inserting b may shift a's index: re-resolve both by position
            let va = va.and_then(|_| polys[pi].find_vertex(ch.a.0));
            let vb = vb.and_then(|_| polys[pi].find_vertex(ch.b.0));
            let (va, vb) = match (va, vb) {
                (Some(a), Some(b)) if a != b => (a, b),
                _ => {
                    return Err(MeshError::Degenerate(format!(
                        "chord of cut {} does not span face {}: a=({},{})->{:?} b=({},{})->{:?}",
                        ch.path, face, ch.a.0.x, ch.a.0.y, va, ch.b.0.x, ch.b.0.y, vb
                    )))
                }
            };
            let (p1, p2) = polys[pi].split(va, vb, SideKind::Cut(ch.path));
            polys[pi] = p1;
            polys.push(p2);
            placed = true;
            break;
        }
        if !placed {
            return Err(MeshError::Degenerate(format!(
                "no plate contains the chord of cut {} in face {}",
                ch.path, face
            )));
        }
    }
    Ok(polys)
}

// ---------------------------------------------------------------------------
// assembly

pub fn build_star_unfolding(mesh: &SurfaceMesh, s: &SurfacePoint) -> Result<StarUnfolding, MeshError> {
    let tree = build_ch_tree(mesh, s, None, mesh.n_faces())?;
    build_star_unfolding_with(mesh, s, &tree)
}

pub fn build_star_unfolding_with(
    mesh: &SurfaceMesh,
    s: &SurfacePoint,
    tree: &CHTree,
) -> Result<StarUnfolding, MeshError> {
    let vp = shortest_vertex_paths_with(mesh, s, tree)?;
    let mut degeneracies = vp.degeneracies.clone();
    degeneracies.extend(tree.degeneracies.iter().cloned());
    let per_face = collect_chords(mesh, &vp.paths)?;

    // the source edge (if any) is fully cut open by the two edge-run paths
    let cut_edge = match s.class {
        PointClass::EdgeInterior(e) => Some(e),
        _ => None,
    };

    let mut plates: Vec<Plate> = Vec::new();
    for f in 0..mesh.n_faces() {
        let radial = if s.class == PointClass::FaceInterior && s.face == f && !per_face[f].is_empty()
        {
            Some(s.xy)
        } else {
            None
        };
        let preinsert = match cut_edge {
            Some(e) if mesh.face_has_edge(f, e) => Some(mesh.transfer(s, f)),
            _ => None,
        };
        for p in split_face(mesh, f, &per_face[f], radial, preinsert)? {
            plates.push(Plate { face: f, verts: p.verts, sides: p.sides, motion: Motion2::IDENTITY });
        }
    }

    // glue plates across polyhedron-edge sub-intervals
    struct GlueSide {
        plate: usize,
        t0: f64,
        t1: f64,
    }
    let mut pasting: Vec<(usize, usize, usize)> = Vec::new();
    for e in 0..mesh.n_edges() {
        if Some(e) == cut_edge {
            continue;
        }
        let mut by_face: [Vec<GlueSide>; 2] = [Vec::new(), Vec::new()];
        for (pi, plate) in plates.iter().enumerate() {
            let fslot = match mesh.edges[e].faces.iter().position(|&f| f == plate.face) {
                Some(k) => k,
                None => continue,
            };
            let (e0, e1) = mesh.edge_in_face(e, plate.face);
            let dir = e1 - e0;
            let t_of = |p: V2| (p - e0).dot(dir) / dir.norm2();
            let nv = plate.verts.len();
            for si in 0..nv {
                if plate.sides[si] != SideKind::OnEdge(e) {
                    continue;
                }
                let (ta, tb) = (t_of(plate.verts[si].0), t_of(plate.verts[(si + 1) % nv].0));
                by_face[fslot].push(GlueSide { plate: pi, t0: ta.min(tb), t1: ta.max(tb) });
            }
        }
        let [mut la, mut lb] = by_face;
        la.sort_by(|x, y| (x.t0 + x.t1).partial_cmp(&(y.t0 + y.t1)).unwrap());
        lb.sort_by(|x, y| (x.t0 + x.t1).partial_cmp(&(y.t0 + y.t1)).unwrap());
        if la.len() != lb.len() {
            return Err(MeshError::Degenerate(format!(
                "edge {e}: mismatched glue intervals ({} vs {})",
                la.len(),
                lb.len()
            )));
        }
        for (ga, gb) in la.iter().zip(&lb) {
            if (ga.t0 - gb.t0).abs() > 1e-7 || (ga.t1 - gb.t1).abs() > 1e-7 {
                return Err(MeshError::Degenerate(format!("edge {e}: glue intervals misaligned")));
            }
            pasting.push((ga.plate, gb.plate, e));
        }
    }

    if pasting.len() + 1 != plates.len() {
        return Err(MeshError::Degenerate(format!(
            "pasting graph is not a tree: {} plates, {} glue edges",
            plates.len(),
            pasting.len()
        )));
    }

    // BFS from a plate incident to the source, assigning plane motions
    let root_plate = plates
        .iter()
        .position(|p| mesh.point_on_face(s, p.face) && p.verts.iter().any(|v| v.1 == VertKind::Source))
        .or_else(|| plates.iter().position(|p| mesh.point_on_face(s, p.face)))
        .ok_or_else(|| MeshError::Degenerate("no plate touches the source".into()))?;

    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); plates.len()];
    for &(a, b, e) in &pasting {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut seen = vec![false; plates.len()];
    let mut queue = std::collections::VecDeque::new();
    seen[root_plate] = true;
    queue.push_back(root_plate);
    let mut reached = 1;
    while let Some(p) = queue.pop_front() {
        let pm = plates[p].motion;
        let pface = plates[p].face;
        for &(q, e) in &adj[p] {
            if seen[q] {
                continue;
            }
            seen[q] = true;
            reached += 1;
            plates[q].motion = pm.compose(mesh.unfold_across(pface, e)?);
            queue.push_back(q);
        }
    }
    if reached != plates.len() {
        return Err(MeshError::Degenerate("pasting graph is disconnected".into()));
    }

    // boundary: unglued sides chained in the star plane; plate polygons are
    // counterclockwise, so the boundary runs counterclockwise too
    let mut segs: Vec<(V2, V2, VertKind)> = Vec::new();
    for plate in &plates {
        let nv = plate.verts.len();
        for si in 0..nv {
            let keep = match plate.sides[si] {
                SideKind::Cut(_) => true,
                SideKind::OnEdge(e) => Some(e) == cut_edge,
            };
            if keep {
                segs.push((
                    plate.motion.apply(plate.verts[si].0),
                    plate.motion.apply(plate.verts[(si + 1) % nv].0),
                    plate.verts[si].1,
                ));
            }
        }
    }
    let m = segs.len();
    if m == 0 {
        return Err(MeshError::Degenerate("empty star boundary".into()));
    }
    let mut used = vec![false; m];
    let mut order = Vec::with_capacity(m);
    let mut cur = 0usize;
    used[0] = true;
    order.push(0);
    for _ in 1..m {
        let end = segs[cur].1;
        let next = (0..m)
            .filter(|&i| !used[i])
            .min_by(|&i, &j| segs[i].0.dist(end).partial_cmp(&segs[j].0.dist(end)).unwrap())
            .ok_or_else(|| MeshError::Degenerate("boundary chain broke".into()))?;
        if segs[next].0.dist(end) > 1e-7 {
            return Err(MeshError::Degenerate("boundary chain broke".into()));
        }
        used[next] = true;
        order.push(next);
        cur = next;
    }
    if segs[cur].1.dist(segs[order[0]].0) > 1e-7 {
        return Err(MeshError::Degenerate("boundary chain does not close".into()));
    }

    // corner extraction: source and vertex images only
    let mut corners: Vec<(V2, VertKind)> = Vec::new();
    for &i in &order {
        match segs[i].2 {
            VertKind::Source | VertKind::MeshVertex(_) => corners.push((segs[i].0, segs[i].2)),
            _ => {}
        }
    }
    let n = mesh.n_vertices();
    if corners.len() != 2 * n {
        return Err(MeshError::Degenerate(format!(
            "boundary has {} corners, expected {}",
            corners.len(),
            2 * n
        )));
    }
    let start = corners
        .iter()
        .position(|c| c.1 == VertKind::Source)
        .ok_or_else(|| MeshError::Degenerate("no source image on boundary".into()))?;
    corners.rotate_left(start);
    let mut kernel = Vec::with_capacity(n);
    let mut kernel_vertices = Vec::with_capacity(n);
    let mut source_pos = Vec::with_capacity(n);
    for (i, c) in corners.iter().enumerate() {
        match (i % 2, c.1) {
            (0, VertKind::Source) => source_pos.push(c.0),
            (1, VertKind::MeshVertex(v)) => {
                kernel.push(c.0);
                kernel_vertices.push(v);
            }
            _ => return Err(MeshError::Degenerate("boundary does not alternate s,p".into())),
        }
    }

    // source image i sits between kernel vertices i-1 and i
    let mut source_images = Vec::with_capacity(n);
    for (i, &pos) in source_pos.iter().enumerate() {
        let plate = plates
            .iter()
            .position(|p| {
                p.verts
                    .iter()
                    .any(|v| v.1 == VertKind::Source && p.motion.apply(v.0).dist(pos) <= 1e-7)
            })
            .ok_or_else(|| MeshError::Degenerate("source image without incident plate".into()))?;
        source_images.push(SourceImage {
            pos,
            adj: (kernel_vertices[(i + n - 1) % n], kernel_vertices[i]),
            plate,
        });
    }

    Ok(StarUnfolding {
        source: *s,
        plates,
        pasting,
        root_plate,
        boundary: corners,
        source_images,
        kernel,
        kernel_vertices,
        cut_paths: vp.paths,
        degeneracies,
    })
}

// ---------------------------------------------------------------------------
// queries on the unfolding

impl StarUnfolding {
    pub fn n(&self) -> usize {
        self.kernel.len()
    }

    /// Total unfolded area (sum of plate areas; equals the surface area).
    pub fn area(&self) -> f64 {
        self.plates.iter().map(|p| polygon_area(&p.poly_local())).sum()
    }

    /// Image of a surface point in the star plane, with the plate used.
    /// Points on a cut have several images; an arbitrary one is returned.
    pub fn locate_image(&self, mesh: &SurfaceMesh, p: &SurfacePoint) -> Option<(usize, V2)> {
        for (pi, plate) in self.plates.iter().enumerate() {
            if !mesh.point_on_face(p, plate.face) {
                continue;
            }
            let local = mesh.transfer(p, plate.face);
            if point_in_polygon(local, &plate.poly_local(), SNAP) {
                return Some((pi, plate.motion.apply(local)));
            }
        }
        None
    }

    pub fn in_kernel(&self, x: V2) -> bool {
        point_in_polygon(x, &self.kernel, SNAP)
    }

    /// Pull a star-plane point back to the surface through a plate whose
    /// image contains it.
    pub fn pull_back(&self, mesh: &SurfaceMesh, x: V2) -> Option<SurfacePoint> {
        for plate in &self.plates {
            if point_in_polygon(x, &plate.poly_plane(), SNAP) {
                let local = plate.motion.inverse().apply(x);
                if let Ok(sp) = mesh.locate(plate.face, local) {
                    return Some(sp);
                }
            }
        }
        None
    }

    /// Edge sequence of the straight plane segment from source image `i` to
    /// the star-plane point `x`, read off the plates the segment traverses.
    /// Plates are convex, so each one clips the segment to an interval.
    pub fn path_sequence(&self, mesh: &SurfaceMesh, i: usize, x: V2) -> Option<EdgeSequence> {
        let s_img = self.source_images[i].pos;
        if s_img.dist(x) <= SNAP {
            return Some(EdgeSequence::empty(self.plates[self.source_images[i].plate].face));
        }
        let d = x - s_img;
        // (entry parameter, plate, crossed polyhedron edge on entry)
        let mut entries: Vec<(f64, usize, Option<usize>)> = Vec::new();
        for (pi, plate) in self.plates.iter().enumerate() {
            let poly = plate.poly_plane();
            let np = poly.len();
            let mut t_in = 0.0f64;
            let mut t_out = 1.0f64;
            let mut entry_side = None;
            let mut empty = false;
            for si in 0..np {
                // inward half-plane of side si (polygon is counterclockwise)
                let nrm = (poly[(si + 1) % np] - poly[si]).perp();
                let c0 = nrm.dot(s_img - poly[si]);
                let c1 = nrm.dot(d);
                if c1.abs() < 1e-300 {
                    if c0 < -SNAP {
                        empty = true;
                        break;
                    }
                    continue;
                }
                let t = -c0 / c1;
                if c1 > 0.0 {
                    if t > t_in {
                        t_in = t;
                        entry_side = Some(si);
                    }
                } else {
                    t_out = t_out.min(t);
                }
            }
            if empty || t_out - t_in <= SNAP {
                continue;
            }
            let entry_edge = match entry_side {
                Some(si) if t_in > SNAP => match plate.sides[si] {
                    SideKind::OnEdge(e) => Some(e),
                    SideKind::Cut(_) => return None, // segment leaves the star
                },
                _ => None,
            };
            entries.push((t_in, pi, entry_edge));
        }
        if entries.is_empty() {
            return None;
        }
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let anchor = self.plates[entries[0].1].face;
        let mut edges = Vec::new();
        for e in entries.iter().skip(1) {
            edges.push((*e).2?);
        }
        let seq = EdgeSequence { edges, anchor_face: anchor };
        if !seq.is_adjacent(mesh) || seq.has_repeats() {
            return None;
        }
        Some(seq)
    }

    /// Distance from the source to `t` via the unfolding: nearest source
    /// image for kernel points, apex distance inside a source triangle.
    /// Returns the distance and the index of the realizing source image.
    pub fn one_point_distance(&self, mesh: &SurfaceMesh, t: &SurfacePoint) -> Option<(f64, usize)> {
        let (_, x) = self.locate_image(mesh, t)?;
        if self.in_kernel(x) {
            return self.nearest_image(x);
        }
        let n = self.n();
        for i in 0..n {
            let tri = [self.kernel[(i + n - 1) % n], self.source_images[i].pos, self.kernel[i]];
            if point_in_polygon(x, &tri, SNAP) {
                return Some((self.source_images[i].pos.dist(x), i));
            }
        }
        // numerically between regions: nearest image still applies
        self.nearest_image(x)
    }

    fn nearest_image(&self, x: V2) -> Option<(f64, usize)> {
        self.source_images
            .iter()
            .enumerate()
            .map(|(i, si)| (si.pos.dist(x), i))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
    }
}

/// Convenience wrapper matching the one-point operation name.
pub fn one_point_distance(
    star: &StarUnfolding,
    mesh: &SurfaceMesh,
    t: &SurfacePoint,
) -> Option<(f64, usize)> {
    star.one_point_distance(mesh, t)
}
