//! Cross-validation of the main distance path against the independent
//! oracles, plus the frozen golden values.

use geodesia::chenhan::geodesic_distance;
use geodesia::geom::v3;
use geodesia::oracle::{bruteforce_distance, dijkstra_oracle, Guarantee};
use geodesia::shapes::{cube, octahedron, random_hull, random_surface_point, tetrahedron};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn golden_cube_opposite_face_centers() {
    let m = cube();
    let s = m.surface_point_at(v3(0.5, 0.5, 0.0)).unwrap();
    let t = m.surface_point_at(v3(0.5, 0.5, 1.0)).unwrap();
    let oracle = bruteforce_distance(&m, &s, &t, 4).unwrap();
    assert!((oracle.distance * m.scale - 2.0).abs() < 1e-9, "oracle: {}", oracle.distance * m.scale);
    let (d, _) = geodesic_distance(&m, &s, &t).unwrap();
    assert!((d * m.scale - 2.0).abs() < 1e-9, "main: {}", d * m.scale);
}

#[test]
fn golden_cube_near_opposite_corners() {
    let m = cube();
    // corners perturbed inward by 1e-6 of the diameter
    let s = m.perturbed_vertex_point(0, 1e-6);
    let t = m.perturbed_vertex_point(7, 1e-6);
    let expect = 5.0f64.sqrt();
    let oracle = bruteforce_distance(&m, &s, &t, 4).unwrap();
    assert!((oracle.distance * m.scale - expect).abs() < 1e-4);
    let (d, _) = geodesic_distance(&m, &s, &t).unwrap();
    assert!((d * m.scale - expect).abs() < 1e-4, "main: {}", d * m.scale);
}

#[test]
fn golden_tetra_opposite_edge_midpoints() {
    let m = tetrahedron();
    // edges (0,1) and (2,3) are opposite
    let e01 = m.edges.iter().position(|e| e.v == [0, 1]).unwrap();
    let e23 = m.edges.iter().position(|e| e.v == [2, 3]).unwrap();
    let s = m.edge_point(e01, 0.5);
    let t = m.edge_point(e23, 0.5);
    let oracle = bruteforce_distance(&m, &s, &t, 3).unwrap();
    assert!((oracle.distance * m.scale - 1.0).abs() < 1e-9, "oracle: {}", oracle.distance * m.scale);
    let (d, _) = geodesic_distance(&m, &s, &t).unwrap();
    assert!((d * m.scale - 1.0).abs() < 1e-9, "main: {}", d * m.scale);
}

#[test]
fn main_path_matches_bruteforce_small_meshes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, m) in [
        ("tetra", tetrahedron()),
        ("cube", cube()),
        ("oct", octahedron()),
        ("hull10", random_hull(10, 3)),
    ] {
        for trial in 0..12 {
            let s = random_surface_point(&m, &mut rng);
            let t = random_surface_point(&m, &mut rng);
            let oracle = bruteforce_distance(&m, &s, &t, 8).unwrap();
            let (d, _) = geodesic_distance(&m, &s, &t).unwrap();
            assert!(
                (d - oracle.distance).abs() < 1e-9,
                "{name} trial {trial}: main {d} vs oracle {}",
                oracle.distance
            );
        }
    }
}

#[test]
fn dijkstra_sandwich_and_convergence() {
    let m = cube();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..8 {
        let s = random_surface_point(&m, &mut rng);
        let t = random_surface_point(&m, &mut rng);
        let exact = bruteforce_distance(&m, &s, &t, 5).unwrap();
        assert_eq!(exact.guarantee, Guarantee::Exact);
        let mut last = f64::INFINITY;
        // k+1 = 1, 3, 9, 27: each subdivision nests in the next, so the
        // upper bounds are genuinely monotone
        for k in [0, 2, 8, 26] {
            let ub = dijkstra_oracle(&m, &s, &t, k);
            assert_eq!(ub.guarantee, Guarantee::UpperBound);
            assert!(ub.distance >= exact.distance - 1e-9, "upper bound below exact");
            assert!(ub.distance <= last + 1e-12, "refinement not monotone");
            last = ub.distance;
        }
    }
}

#[test]
fn dijkstra_cofacial_exact_and_cube_centers_close() {
    let m = cube();
    let s = m.face_centroid(0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // same-face pairs are exact for any k
    loop {
        let t = random_surface_point(&m, &mut rng);
        if t.face != 0 {
            continue;
        }
        let d = dijkstra_oracle(&m, &s, &t, 0).distance;
        let direct = m.transfer(&s, 0).dist(m.transfer(&t, 0));
        assert!((d - direct).abs() < 1e-12);
        break;
    }
    // opposite face centers within 1% at k = 32
    let s = m.surface_point_at(v3(0.5, 0.5, 0.0)).unwrap();
    let t = m.surface_point_at(v3(0.5, 0.5, 1.0)).unwrap();
    let ub = dijkstra_oracle(&m, &s, &t, 32).distance * m.scale;
    assert!(ub >= 2.0 - 1e-9 && ub <= 2.02, "k=32 upper bound {ub}");
}

#[test]
fn bruteforce_symmetry_and_lower_bound() {
    let m = random_hull(8, 9);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..6 {
        let s = random_surface_point(&m, &mut rng);
        let t = random_surface_point(&m, &mut rng);
        let d_st = bruteforce_distance(&m, &s, &t, 8).unwrap().distance;
        let d_ts = bruteforce_distance(&m, &t, &s, 8).unwrap().distance;
        assert!((d_st - d_ts).abs() < 1e-9);
        // chordal lower bound
        assert!(d_st >= m.point3(&s).dist(m.point3(&t)) - 1e-12);
    }
}
