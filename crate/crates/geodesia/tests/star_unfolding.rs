//! Structural and metric checks of the star unfolding: area preservation,
//! boundary shape, and agreement of the unfolding distance with the
//! propagation distance.

use geodesia::chenhan::geodesic_distance;
use geodesia::geom::{polygon_area, polygon_is_simple, v3};
use geodesia::shapes::{cube, octahedron, random_hull, random_surface_point, tetrahedron};
use geodesia::star::build_star_unfolding;
use geodesia::unfolding::realize_geodesic;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn surface_area(m: &geodesia::mesh::SurfaceMesh) -> f64 {
    (0..m.n_faces()).map(|f| polygon_area(&m.corners2d[f])).sum()
}

#[test]
fn star_structure_on_canonical_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (name, m) in [
        ("tetra", tetrahedron()),
        ("cube", cube()),
        ("oct", octahedron()),
        ("hull12", random_hull(12, 4)),
    ] {
        for trial in 0..4 {
            let s = random_surface_point(&m, &mut rng);
            let star = build_star_unfolding(&m, &s).unwrap();
            let n = m.n_vertices();
            assert_eq!(star.n(), n, "{name} trial {trial}");
            assert_eq!(star.boundary.len(), 2 * n);
            assert!(
                (star.area() - surface_area(&m)).abs() < 1e-9,
                "{name} trial {trial}: area {} vs {}",
                star.area(),
                surface_area(&m)
            );
            // the star polygon is simple and its area matches too
            let poly: Vec<_> = star.boundary.iter().map(|b| b.0).collect();
            assert!(polygon_is_simple(&poly, 1e-9), "{name} trial {trial}");
            assert!((polygon_area(&poly) - surface_area(&m)).abs() < 1e-9);
            // every kernel vertex distance matches the cut path length
            for (i, &v) in star.kernel_vertices.iter().enumerate() {
                let d_img = star
                    .source_images
                    .iter()
                    .map(|si| si.pos.dist(star.kernel[i]))
                    .fold(f64::INFINITY, f64::min);
                let d_path = star.cut_paths.iter().find(|p| {
                    matches!(p.target.class, geodesia::mesh::PointClass::Vertex(w) if w == v)
                });
                assert!(
                    (d_img - d_path.unwrap().length).abs() < 1e-7,
                    "{name} trial {trial} vertex {v}: {d_img} vs {}",
                    d_path.unwrap().length
                );
            }
        }
    }
}

#[test]
fn star_cube_face_center_degenerate_source() {
    // the cube face center is a non-generic source (mirror-symmetric
    // shortest paths); the build must still succeed deterministically
    let m = cube();
    let s = m.surface_point_at(v3(0.5, 0.5, 0.0)).unwrap();
    let star = build_star_unfolding(&m, &s).unwrap();
    assert_eq!(star.n(), 8);
    assert!((star.area() - surface_area(&m)).abs() < 1e-9);
    // distance to the opposite face center through the unfolding
    let t = m.surface_point_at(v3(0.5, 0.5, 1.0)).unwrap();
    let (d, _) = star.one_point_distance(&m, &t).unwrap();
    assert!((d * m.scale - 2.0).abs() < 1e-9, "{}", d * m.scale);
}

#[test]
fn one_point_distance_matches_propagation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for m in [tetrahedron(), cube(), octahedron(), random_hull(14, 6)] {
        let s = random_surface_point(&m, &mut rng);
        let star = build_star_unfolding(&m, &s).unwrap();
        for _ in 0..20 {
            let t = random_surface_point(&m, &mut rng);
            let (d_star, _) = star.one_point_distance(&m, &t).unwrap();
            let (d, _) = geodesic_distance(&m, &s, &t).unwrap();
            assert!((d_star - d).abs() < 1e-9, "star {d_star} vs propagation {d}");
        }
    }
}

#[test]
fn path_sequence_realizes_to_the_same_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for m in [cube(), octahedron(), random_hull(10, 8)] {
        let s = random_surface_point(&m, &mut rng);
        let star = build_star_unfolding(&m, &s).unwrap();
        let mut checked = 0;
        for _ in 0..30 {
            let t = random_surface_point(&m, &mut rng);
            let Some((_, x)) = star.locate_image(&m, &t) else { continue };
            let Some((d_star, i)) = star.one_point_distance(&m, &t) else { continue };
            let Some(seq) = star.path_sequence(&m, i, x) else { continue };
            if let Ok(Some(p)) = realize_geodesic(&m, &s, &t, &seq) {
                assert!((p.length - d_star).abs() < 1e-9);
                checked += 1;
            }
        }
        assert!(checked >= 20, "only {checked} sequences realized");
    }
}
