//! Ridge-tree validity: tree structure, vertex classes, equidistance of
//! source images at sampled tree points, and separation from shortest paths.

use geodesia::chenhan::geodesic_distance;
use geodesia::geom::v3;
use geodesia::ridge::{build_ridge_tree, RidgeVertexClass};
use geodesia::shapes::{cube, octahedron, random_hull, random_surface_point, tetrahedron};
use geodesia::star::build_star_unfolding;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn tetra_centroid_shape() {
    let m = tetrahedron();
    let s = m.face_centroid(0);
    let t = build_ridge_tree(&m, &s).unwrap();
    assert!(t.is_tree());
    let leaves = t.leaves();
    assert_eq!(leaves.len(), 4);
    // a tree with 4 leaves and internal degrees 3 has exactly 2 internal
    // degree-3 vertices
    let deg3 = (0..t.verts.len())
        .filter(|&v| t.verts[v].class == RidgeVertexClass::Internal && t.degree(v) >= 3)
        .count();
    assert_eq!(deg3, 2);
    for &l in &leaves {
        assert_eq!(t.degree(l), 1);
    }
}

#[test]
fn cube_face_center_leaves_are_all_vertices() {
    let m = cube();
    let s = m.surface_point_at(v3(0.5, 0.5, 0.0)).unwrap();
    let t = build_ridge_tree(&m, &s).unwrap();
    assert!(t.is_tree());
    let mut leaf_vs: Vec<usize> = t
        .leaves()
        .iter()
        .map(|&l| match t.verts[l].class {
            RidgeVertexClass::Leaf(v) => v,
            _ => unreachable!(),
        })
        .collect();
    leaf_vs.sort();
    assert_eq!(leaf_vs, (0..8).collect::<Vec<_>>());
}

#[test]
fn structure_and_equidistance_on_random_sources() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for m in [tetrahedron(), cube(), octahedron(), random_hull(12, 4), random_hull(16, 5)] {
        let n = m.n_vertices();
        for _ in 0..3 {
            let s = random_surface_point(&m, &mut rng);
            let star = build_star_unfolding(&m, &s).unwrap();
            let t = geodesia::ridge::build_ridge_tree_with(&m, &star).unwrap();
            assert!(t.is_tree());
            assert!(t.leaves().len() <= n);
            let deg3 = (0..t.verts.len()).filter(|&v| t.degree(v) >= 3).count();
            assert!(deg3 <= n - 2, "{deg3} high-degree vertices, n = {n}");
            // degree-2 vertices are exactly the edge crossings
            for v in 0..t.verts.len() {
                match t.verts[v].class {
                    RidgeVertexClass::Leaf(_) => assert_eq!(t.degree(v), 1),
                    RidgeVertexClass::EdgeCross(_) => assert_eq!(t.degree(v), 2),
                    RidgeVertexClass::Internal => assert!(t.degree(v) >= 3),
                }
            }
            // equidistance at sampled points of every tree edge
            let sites: Vec<_> = star.source_images.iter().map(|si| si.pos).collect();
            for e in &t.edges {
                for k in 1..4 {
                    let x = t.verts[e.a].pos.lerp(t.verts[e.b].pos, k as f64 / 4.0);
                    let mut d: Vec<f64> = sites.iter().map(|s| s.dist(x)).collect();
                    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    assert!(d[1] - d[0] <= 1e-8, "not equidistant: {} vs {}", d[0], d[1]);
                    // the bisector pair attains the minimum
                    let da = sites[e.images.0].dist(x);
                    let db = sites[e.images.1].dist(x);
                    assert!((da - db).abs() <= 1e-8);
                    assert!(da - d[0] <= 1e-8);
                }
            }
            // each ridge (maximal path between leaf/high-degree vertices)
            // crosses a given polyhedron edge at most once
            for start in 0..t.verts.len() {
                if matches!(t.verts[start].class, RidgeVertexClass::EdgeCross(_)) {
                    continue;
                }
                for mut prev_next in t.neighbors(start).into_iter().map(|w| (start, w)) {
                    let mut crossed = Vec::new();
                    loop {
                        let (prev, cur) = prev_next;
                        if let RidgeVertexClass::EdgeCross(pe) = t.verts[cur].class {
                            assert!(!crossed.contains(&pe), "ridge crosses edge {pe} twice");
                            crossed.push(pe);
                        } else {
                            break;
                        }
                        let next = t
                            .neighbors(cur)
                            .into_iter()
                            .find(|&w| w != prev)
                            .expect("degree-2 vertex has a continuation");
                        prev_next = (cur, next);
                    }
                }
            }
        }
    }
}

#[test]
fn ridge_points_match_geodesic_distance() {
    // a ridge point's image distance equals its true geodesic distance
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for m in [cube(), random_hull(10, 8)] {
        let s = random_surface_point(&m, &mut rng);
        let star = build_star_unfolding(&m, &s).unwrap();
        let t = geodesia::ridge::build_ridge_tree_with(&m, &star).unwrap();
        let mut checked = 0;
        for e in &t.edges {
            let x = t.verts[e.a].pos.lerp(t.verts[e.b].pos, 0.5);
            let Some(sp) = star.pull_back(&m, x) else { continue };
            let d_img = star
                .source_images
                .iter()
                .map(|si| si.pos.dist(x))
                .fold(f64::INFINITY, f64::min);
            let (d, _) = geodesic_distance(&m, &s, &sp).unwrap();
            assert!((d_img - d).abs() < 1e-7, "image {d_img} vs geodesic {d}");
            checked += 1;
        }
        assert!(checked >= 5);
    }
}

#[test]
fn shortest_paths_avoid_the_ridge_interior() {
    // crossing points of realized shortest paths keep clearance from T_s
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let m = octahedron();
    let s = random_surface_point(&m, &mut rng);
    let star = build_star_unfolding(&m, &s).unwrap();
    let t = geodesia::ridge::build_ridge_tree_with(&m, &star).unwrap();
    for _ in 0..40 {
        let q = random_surface_point(&m, &mut rng);
        let (_, path) = geodesic_distance(&m, &s, &q).unwrap();
        for c in &path.crossings {
            // the crossing's distance from s must be strictly below the
            // ridge distance at that point (it lies on s's side)
            let (dc, _) = star.one_point_distance(&m, c).unwrap();
            let mut second = f64::INFINITY;
            if let Some((_, x)) = star.locate_image(&m, c) {
                let mut ds: Vec<f64> =
                    star.source_images.iter().map(|si| si.pos.dist(x)).collect();
                ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
                second = ds[1];
            }
            assert!(second - dc > 1e-9, "crossing on or past the ridge");
        }
    }
    let _ = t;
}

#[test]
fn signature_stable_under_source_jitter() {
    let m = octahedron();
    let s = m.locate(0, m.face_centroid(0).xy + geodesia::geom::v2(1e-3, 2e-3)).unwrap();
    let base = build_ridge_tree(&m, &s).unwrap().signature();
    for k in 1..4 {
        let eps = 1e-7 * k as f64;
        let s2 = m.locate(0, s.xy + geodesia::geom::v2(eps, -eps)).unwrap();
        let sig = build_ridge_tree(&m, &s2).unwrap().signature();
        assert_eq!(base, sig);
    }
}
