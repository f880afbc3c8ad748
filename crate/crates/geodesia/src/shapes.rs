//! Canonical test meshes and seeded random convex hulls.

use crate::geom::{v3, V3};
use crate::mesh::SurfaceMesh;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Regular tetrahedron with unit edge length.
pub fn tetrahedron() -> SurfaceMesh {
    let s = 1.0 / 2.0_f64.sqrt();
    let verts = vec![
        v3(1.0, 0.0, -s),
        v3(-1.0, 0.0, -s),
        v3(0.0, 1.0, s),
        v3(0.0, -1.0, s),
    ]
    .into_iter()
    .map(|p| p * 0.5)
    .collect();
    let faces = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
    SurfaceMesh::from_parts(verts, faces).expect("tetrahedron is valid")
}

/// Axis-aligned unit cube, quad faces (exercises fan triangulation).
pub fn cube() -> SurfaceMesh {
    let verts = (0..8)
        .map(|i| v3((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64))
        .collect();
    let faces = vec![
        vec![0, 2, 3, 1], // z=0
        vec![4, 5, 7, 6], // z=1
        vec![0, 1, 5, 4], // y=0
        vec![2, 6, 7, 3], // y=1
        vec![0, 4, 6, 2], // x=0
        vec![1, 3, 7, 5], // x=1
    ];
    SurfaceMesh::from_parts(verts, faces).expect("cube is valid")
}

/// Regular octahedron with unit "radius".
pub fn octahedron() -> SurfaceMesh {
    let verts = vec![
        v3(1.0, 0.0, 0.0),
        v3(-1.0, 0.0, 0.0),
        v3(0.0, 1.0, 0.0),
        v3(0.0, -1.0, 0.0),
        v3(0.0, 0.0, 1.0),
        v3(0.0, 0.0, -1.0),
    ];
    let faces = vec![
        vec![0, 2, 4],
        vec![2, 1, 4],
        vec![1, 3, 4],
        vec![3, 0, 4],
        vec![2, 0, 5],
        vec![1, 2, 5],
        vec![3, 1, 5],
        vec![0, 3, 5],
    ];
    SurfaceMesh::from_parts(verts, faces).expect("octahedron is valid")
}

/// Convex hull of `n` seeded random points on the unit sphere. All points
/// land on the hull, so the mesh has exactly `n` vertices.
pub fn random_hull(n: usize, seed: u64) -> SurfaceMesh {
    assert!(n >= 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<V3> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = v3(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let r = p.norm();
        if r < 1e-3 || r > 1.0 {
            continue;
        }
        let q = p / r;
        // keep points angularly separated so hulls stay non-degenerate
        if pts.iter().any(|&o| o.dist(q) < 0.15) {
            continue;
        }
        pts.push(q);
    }
    let faces = convex_hull_faces(&pts);
    let faces: Vec<Vec<usize>> = faces.into_iter().map(|f| f.to_vec()).collect();
    SurfaceMesh::from_parts(pts, faces).expect("hull of sphere points is valid")
}

/// Incremental 3-D convex hull; returns outward-oriented triangles.
pub fn convex_hull_faces(pts: &[V3]) -> Vec<[usize; 3]> {
    let n = pts.len();
    assert!(n >= 4);
    let eps = 1e-12;

    // initial simplex: spread out as much as possible
    let i0 = 0;
    let i1 = (0..n).max_by(|&a, &b| cmp(pts[a].dist(pts[i0]), pts[b].dist(pts[i0]))).unwrap();
    let i2 = (0..n)
        .max_by(|&a, &b| {
            let area = |i: usize| (pts[i1] - pts[i0]).cross(pts[i] - pts[i0]).norm();
            cmp(area(a), area(b))
        })
        .unwrap();
    let base_n = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]);
    let i3 = (0..n)
        .max_by(|&a, &b| cmp((pts[a] - pts[i0]).dot(base_n).abs(), (pts[b] - pts[i0]).dot(base_n).abs()))
        .unwrap();
    assert!(
        (pts[i3] - pts[i0]).dot(base_n).abs() > eps,
        "degenerate (coplanar) point set"
    );

    let mut faces: Vec<[usize; 3]> = if (pts[i3] - pts[i0]).dot(base_n) < 0.0 {
        vec![[i0, i1, i2], [i0, i3, i1], [i1, i3, i2], [i2, i3, i0]]
    } else {
        vec![[i0, i2, i1], [i0, i1, i3], [i1, i2, i3], [i2, i0, i3]]
    };

    let visible = |f: &[usize; 3], p: V3| -> bool {
        let nrm = (pts[f[1]] - pts[f[0]]).cross(pts[f[2]] - pts[f[0]]);
        (p - pts[f[0]]).dot(nrm) > eps
    };

    for p in 0..n {
        if [i0, i1, i2, i3].contains(&p) {
            continue;
        }
        let vis: Vec<bool> = faces.iter().map(|f| visible(f, pts[p])).collect();
        if !vis.iter().any(|&v| v) {
            continue;
        }
        // horizon: directed edges of visible faces whose twin lies on an
        // invisible face
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        use std::collections::HashMap;
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                owner.insert((f[k], f[(k + 1) % 3]), fi);
            }
        }
        for (fi, f) in faces.iter().enumerate() {
            if !vis[fi] {
                continue;
            }
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let twin = owner[&(b, a)];
                if !vis[twin] {
                    horizon.push((a, b));
                }
            }
        }
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .zip(&vis)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        for (a, b) in horizon {
            next.push([a, b, p]);
        }
        faces = next;
    }
    faces
}

fn cmp(a: f64, b: f64) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap()
}

/// Seeded random surface point, uniform over a random face's barycentric
/// interior (kept away from the boundary so the class is face-interior).
pub fn random_surface_point<R: Rng>(mesh: &SurfaceMesh, rng: &mut R) -> crate::mesh::SurfacePoint {
    loop {
        let f = rng.gen_range(0..mesh.n_faces());
        let (mut a, mut b) = (rng.gen::<f64>(), rng.gen::<f64>());
        if a + b > 1.0 {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        let margin = 0.02;
        let c = 1.0 - a - b;
        if a < margin || b < margin || c < margin {
            continue;
        }
        let co = mesh.corners2d[f];
        let xy = co[0] * c + co[1] * a + co[2] * b;
        if let Ok(sp) = mesh.locate(f, xy) {
            return sp;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate_convex;

    #[test]
    fn canonical_shapes_valid() {
        for (m, v, e, f) in [
            (tetrahedron(), 4, 6, 4),
            (cube(), 8, 18, 12),
            (octahedron(), 6, 12, 8),
        ] {
            assert_eq!(m.n_vertices(), v);
            assert_eq!(m.n_edges(), e);
            assert_eq!(m.n_faces(), f);
            assert!(validate_convex(&m).pass);
        }
    }

    #[test]
    fn random_hulls_convex_and_exact_size() {
        for seed in 0..5 {
            for n in [8, 12, 20] {
                let m = random_hull(n, seed);
                assert_eq!(m.n_vertices(), n, "n={n} seed={seed}");
                assert!(validate_convex(&m).pass, "n={n} seed={seed}");
            }
        }
    }
}
