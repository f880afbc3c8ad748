//! Golden-file and determinism tests for the SVG export.

use geodesia::ridge::build_ridge_tree_with;
use geodesia::shapes::{random_hull, tetrahedron};
use geodesia::star::build_star_unfolding;
use geodesia::svg::star_svg;

#[test]
fn tetrahedron_star_matches_the_golden_file() {
    let m = tetrahedron();
    let s = m.edge_point(0, 0.375);
    let star = build_star_unfolding(&m, &s).unwrap();
    let tree = build_ridge_tree_with(&m, &star).unwrap();
    let svg = star_svg(&star, Some(&tree));
    let golden = include_str!("golden/star_tetrahedron.svg");
    assert_eq!(svg, golden);
}

#[test]
fn rendering_is_deterministic() {
    let m = random_hull(10, 3);
    let s = m.edge_point(5, 0.42);
    let a = {
        let star = build_star_unfolding(&m, &s).unwrap();
        let tree = build_ridge_tree_with(&m, &star).unwrap();
        star_svg(&star, Some(&tree))
    };
    let b = {
        let star = build_star_unfolding(&m, &s).unwrap();
        let tree = build_ridge_tree_with(&m, &star).unwrap();
        star_svg(&star, Some(&tree))
    };
    assert_eq!(a, b);
}

#[test]
fn drawing_contains_all_layers() {
    let m = random_hull(8, 2);
    let s = m.edge_point(2, 0.6);
    let star = build_star_unfolding(&m, &s).unwrap();
    let tree = build_ridge_tree_with(&m, &star).unwrap();
    let svg = star_svg(&star, Some(&tree));
    assert_eq!(svg.matches("class=\"plate\"").count(), star.plates.len());
    assert_eq!(svg.matches("class=\"source-tri\"").count(), star.n());
    assert_eq!(svg.matches("class=\"kernel\"").count(), 1);
    assert_eq!(svg.matches("class=\"ridge\"").count(), tree.edges.len());
    assert_eq!(svg.matches("class=\"source\"").count(), star.source_images.len());
    // coordinates carry exactly six decimals
    assert!(!svg.contains("0.0000001"));
    // without the overlay no ridge elements appear
    let plain = star_svg(&star, None);
    assert_eq!(plain.matches("<line").count(), 0);
}
