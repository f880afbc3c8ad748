//! Edgelet partitions from vertex ridge trees, and stability of source
//! images over edge segments, including the hierarchical decomposition of
//! stable sets over nested segment cuttings.

use geodesia::edgelet::{compute_edgelets, stable_source_images, EdgeletPartition};
use geodesia::shapes::{octahedron, random_hull, tetrahedron};
use std::collections::BTreeSet;

fn pair_set(s: &geodesia::edgelet::StableImages) -> BTreeSet<(usize, usize)> {
    s.pairs.iter().copied().collect()
}

#[test]
fn edgelet_partition_structure_and_scaling() {
    let mut counts = Vec::new();
    for m in [tetrahedron(), octahedron(), random_hull(10, 3)] {
        let part = compute_edgelets(&m).unwrap();
        assert_eq!(part.breakpoints.len(), m.n_edges());
        for b in &part.breakpoints {
            for w in b.windows(2) {
                assert!(w[0] < w[1], "breakpoints not strictly increasing");
            }
            for &t in b {
                assert!(t > 0.0 && t < 1.0);
            }
        }
        let n = m.n_vertices();
        assert!(part.edgelet_count() <= 2 * n * n * n, "count {}", part.edgelet_count());
        counts.push((n, part.edgelet_count()));
    }
    // larger meshes have at least as many edgelets
    for w in counts.windows(2) {
        assert!(w[0].0 < w[1].0);
        assert!(w[0].1 <= w[1].1, "edgelet counts not monotone: {counts:?}");
    }
}

#[test]
fn edgelet_locate_and_bounds_are_consistent() {
    let m = octahedron();
    let part = compute_edgelets(&m).unwrap();
    for e in 0..m.n_edges() {
        let k = part.breakpoints[e].len();
        for i in 0..=k {
            let (lo, hi) = part.bounds(e, i);
            assert!(lo < hi);
            let mid = 0.5 * (lo + hi);
            assert_eq!(part.locate(e, mid), i);
        }
        assert_eq!(part.bounds(e, 0).0, 0.0);
        assert_eq!(part.bounds(e, k).1, 1.0);
    }
}

/// Returns an edge with at least one interior breakpoint and the index of a
/// breakpoint with some room on both sides.
fn edge_with_breakpoint(part: &EdgeletPartition) -> (usize, f64, f64, f64) {
    for (e, b) in part.breakpoints.iter().enumerate() {
        for (i, &t) in b.iter().enumerate() {
            let lo = if i == 0 { 0.0 } else { b[i - 1] };
            let hi = if i + 1 == b.len() { 1.0 } else { b[i + 1] };
            if t - lo > 0.02 && hi - t > 0.02 {
                return (e, lo, t, hi);
            }
        }
    }
    panic!("no usable breakpoint found");
}

#[test]
fn all_images_stable_inside_one_edgelet() {
    for m in [tetrahedron(), octahedron()] {
        let part = compute_edgelets(&m).unwrap();
        let (e, lo, t, _) = edge_with_breakpoint(&part);
        // a segment strictly inside the edgelet left of the breakpoint
        let (a, b) = (lo + 0.3 * (t - lo), lo + 0.7 * (t - lo));
        let stable = stable_source_images(&m, e, a, b, 5).unwrap();
        assert_eq!(stable.indices.len(), m.n_vertices(), "unstable inside an edgelet");
    }
}

#[test]
fn crossing_one_edgelet_boundary_changes_at_most_four() {
    for m in [octahedron(), random_hull(10, 3)] {
        let n = m.n_vertices();
        let part = compute_edgelets(&m).unwrap();
        let (e, lo, t, hi) = edge_with_breakpoint(&part);
        let d = 0.4 * (t - lo).min(hi - t);
        let stable = stable_source_images(&m, e, t - d, t + d, 6).unwrap();
        assert!(
            stable.indices.len() >= n - 4,
            "only {} of {n} images stable across one boundary",
            stable.indices.len()
        );
    }
}

#[test]
fn stability_is_monotone_under_nesting() {
    let m = octahedron();
    let part = compute_edgelets(&m).unwrap();
    let (e, lo, t, hi) = edge_with_breakpoint(&part);
    let d = 0.4 * (t - lo).min(hi - t);
    let outer = stable_source_images(&m, e, t - d, t + d, 8).unwrap();
    let inner = stable_source_images(&m, e, t - d, t - 0.2 * d, 8).unwrap();
    let (so, si) = (pair_set(&outer), pair_set(&inner));
    assert!(so.is_subset(&si), "outer stable set not contained in inner");
}

#[test]
fn stable_sets_decompose_over_a_segment_hierarchy() {
    // three-level binary hierarchy over a stretch of one edge: each leaf's
    // stable set is exactly the union of the newly-stable sets of its
    // ancestors, and each newly-stable set is small when the parent contains
    // few edgelet boundaries
    let m = octahedron();
    let part = compute_edgelets(&m).unwrap();
    let (e, _, _, _) = edge_with_breakpoint(&part);
    let (a, b) = (0.05, 0.95);
    let probes = 8;
    let stable =
        |lo: f64, hi: f64| pair_set(&stable_source_images(&m, e, lo, hi, probes).unwrap());
    let inside =
        |lo: f64, hi: f64| part.breakpoints[e].iter().filter(|&&t| t > lo && t < hi).count();

    let cells1 = [(a, 0.5 * (a + b)), (0.5 * (a + b), b)];
    let mut checked = 0;
    for &(l1, h1) in &cells1 {
        let s1 = stable(l1, h1);
        for (l2, h2) in [(l1, 0.5 * (l1 + h1)), (0.5 * (l1 + h1), h1)] {
            let s2 = stable(l2, h2);
            assert!(s1.is_subset(&s2));
            let new2: BTreeSet<_> = s2.difference(&s1).copied().collect();
            assert!(new2.len() <= inside(l1, h1) + 4, "level-2 increment too large");
            for (l3, h3) in [(l2, 0.5 * (l2 + h2)), (0.5 * (l2 + h2), h2)] {
                let s3 = stable(l3, h3);
                assert!(s2.is_subset(&s3));
                let new3: BTreeSet<_> = s3.difference(&s2).copied().collect();
                assert!(new3.len() <= inside(l2, h2) + 4, "level-3 increment too large");
                // exact decomposition: leaf set = union of ancestor increments
                let union: BTreeSet<_> =
                    s1.union(&new2).copied().collect::<BTreeSet<_>>().union(&new3).copied().collect();
                assert_eq!(union, s3, "leaf stable set is not the union of increments");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 8);
}
