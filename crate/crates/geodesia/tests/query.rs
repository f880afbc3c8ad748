//! Integration tests for the one-point and edge-edge query structures,
//! cross-checked against the wavefront-propagation distance oracle.

use geodesia::chenhan::{build_ch_tree, geodesic_distance_with};
use geodesia::query::{
    build_edge_structure, build_one_point, load_edge_structure, save_edge_structure, VersionDelta,
};
use geodesia::shapes::{random_hull, tetrahedron};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Agreement tolerance against the independent distance oracle.
const TOL_ORACLE: f64 = 1e-7;
/// Agreement tolerance for continuity checks at interval boundaries.
const TOL_CONT: f64 = 1e-9;

#[test]
fn one_point_intervals_tile_every_edge() {
    let m = random_hull(10, 3);
    let s = m.edge_point(2, 0.3811);
    let op = build_one_point(&m, &s).unwrap();
    assert_eq!(op.intervals.len(), m.n_edges());
    for (e2, list) in op.intervals.iter().enumerate() {
        assert!(!list.is_empty(), "edge {e2} uncovered");
        assert_eq!(list[0].t0, 0.0);
        assert_eq!(list.last().unwrap().t1, 1.0);
        for w in list.windows(2) {
            assert!((w[0].t1 - w[1].t0).abs() <= 1e-12, "edge {e2}: gap in tiling");
            assert_ne!(w[0].seq.edges, w[1].seq.edges, "edge {e2}: adjacent equal sequences");
        }
        for iv in list {
            assert!(iv.psi_node.is_some(), "edge {e2}: unlinked interval");
        }
    }
    // the trie stores exactly the interval sequences plus their prefixes
    for seq in op.psi.sequences() {
        for k in 1..seq.len() {
            assert!(op.psi.contains(&seq[..k]));
        }
    }
}

#[test]
fn one_point_queries_match_the_distance_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [tetrahedron(), random_hull(8, 2), random_hull(10, 3)] {
        let s = m.edge_point(1, 0.2731);
        let op = build_one_point(&m, &s).unwrap();
        let tree = build_ch_tree(&m, &s, None, m.n_faces()).unwrap();
        for _ in 0..350 {
            let e2 = rng.gen_range(0..m.n_edges());
            let t = rng.gen_range(0.02..0.98);
            let ans = op.query(&m, e2, t).unwrap();
            let x = m.edge_point(e2, t);
            let (d, _) = geodesic_distance_with(&m, &s, &x, Some(&tree)).unwrap();
            assert!(
                (ans.length - d).abs() <= TOL_ORACLE,
                "edge {e2} t {t}: {} vs {d}",
                ans.length
            );
            let count = op.intervals[e2].len().max(2);
            let bound = (count as f64).log2().ceil() as usize + 2;
            assert!(ans.probes <= bound, "edge {e2}: {} probes for {count} intervals", ans.probes);
            if let Some(path) = &ans.path {
                assert_eq!(path.seq.edges, ans.seq.edges);
                assert!((path.length - ans.length).abs() <= TOL_ORACLE);
            }
        }
    }
}

#[test]
fn one_point_interval_boundaries_are_continuous() {
    let m = random_hull(10, 3);
    let s = m.edge_point(4, 0.61);
    let op = build_one_point(&m, &s).unwrap();
    let mut checked = 0;
    for e2 in 0..m.n_edges() {
        let f0 = m.edges[e2].faces[0];
        let list = &op.intervals[e2];
        for w in list.windows(2) {
            let t = w[0].t1;
            let x_local = m.transfer(&m.edge_point(e2, t), f0);
            let da = w[0].s_img.dist(x_local);
            let db = w[1].s_img.dist(x_local);
            assert!((da - db).abs() <= TOL_CONT, "edge {e2} breakpoint {t}: {da} vs {db}");
            // a query exactly at the breakpoint evaluates both sides
            let ans = op.query(&m, e2, t).unwrap();
            assert!(ans.length <= da.min(db) + TOL_CONT);
            checked += 1;
        }
    }
    assert!(checked >= 5, "mesh produced no interior breakpoints");
}

#[test]
fn source_edge_and_shared_face_queries_are_euclidean() {
    let m = random_hull(8, 2);
    let e = 3;
    let s = m.edge_point(e, 0.44);
    let op = build_one_point(&m, &s).unwrap();
    // the source's own edge is a single interval with the chord metric
    assert_eq!(op.intervals[e].len(), 1);
    let len_e = m.vertices[m.edges[e].v[0]].dist(m.vertices[m.edges[e].v[1]]);
    for t in [0.1, 0.44, 0.9] {
        let ans = op.query(&m, e, t).unwrap();
        assert!((ans.length - (t - 0.44f64).abs() * len_e).abs() <= 1e-9);
    }
    // targets on the boundary of a face containing s: the chord of the
    // convex face is the geodesic
    for &f in &m.edges[e].faces {
        for e2 in 0..m.n_edges() {
            if e2 == e || !m.face_has_edge(f, e2) {
                continue;
            }
            for t in [0.2, 0.5, 0.8] {
                let x = m.edge_point(e2, t);
                let euclid = m.transfer(&s, f).dist(m.transfer(&x, f));
                let ans = op.query(&m, e2, t).unwrap();
                assert!(
                    (ans.length - euclid).abs() <= 1e-9,
                    "edge {e2} t {t}: {} vs chord {euclid}",
                    ans.length
                );
            }
        }
    }
}

#[test]
fn edge_structure_versions_are_single_entry_updates() {
    let m = random_hull(10, 3);
    let eqs = build_edge_structure(&m, 0).unwrap();
    assert_eq!(eqs.versions.len(), eqs.cuts.len() - 1);
    assert_eq!(eqs.deltas.len(), eqs.versions.len() - 1);
    let compound = eqs
        .degeneracies
        .iter()
        .filter(|d| d.contains("simultaneous") || d.contains("non-minimal"))
        .count();
    let rebuilt = eqs
        .deltas
        .iter()
        .filter(|d| matches!(d, VersionDelta::Rebuilt { .. }))
        .count();
    assert!(
        rebuilt <= compound,
        "{rebuilt} multi-entry transitions but only {compound} reported degeneracies"
    );
    for d in &eqs.deltas {
        match d {
            VersionDelta::Unchanged
            | VersionDelta::Insert { .. }
            | VersionDelta::Remove { .. }
            | VersionDelta::Replace { .. }
            | VersionDelta::Rebuilt { .. } => {}
        }
    }
}

#[test]
fn edge_versions_replay_fresh_builds() {
    let m = random_hull(8, 2);
    let e = 1;
    let eqs = build_edge_structure(&m, e).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let seg = rng.gen_range(0..eqs.versions.len());
        let (lo, hi) = (eqs.cuts[seg], eqs.cuts[seg + 1]);
        let u = rng.gen_range(0.2..0.8) * (hi - lo) + lo;
        let s = m.edge_point(e, u);
        // isolated non-generic alignments are not the structure's fault
        let Ok(fresh) = build_one_point(&m, &s) else { continue };
        for e2 in 0..m.n_edges() {
            let ver = &eqs.versions[seg][e2];
            assert_eq!(ver.len(), fresh.intervals[e2].len(), "segment {seg} edge {e2} at u = {u}");
            // same sequences in the same order along the edge
            for (a, b) in ver.iter().zip(&fresh.intervals[e2]) {
                assert_eq!(a.seq.edges, b.seq.edges, "segment {seg} edge {e2} at u = {u}");
            }
            // distances agree with the fresh structure
            for t in [0.17, 0.52, 0.93] {
                let a = eqs.query(&m, u, e2, t).unwrap();
                let b = fresh.query(&m, e2, t).unwrap();
                assert!((a.length - b.length).abs() <= TOL_CONT);
            }
        }
    }
}

#[test]
fn two_point_queries_match_the_distance_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let m = random_hull(10, 3);
    let eqs = build_edge_structure(&m, 0).unwrap();
    let n = m.vertices.len();
    let probe_bound = 4.0 * (n as f64).log2() + 8.0;
    for _ in 0..300 {
        let u = rng.gen_range(0.01..0.99);
        let e2 = rng.gen_range(0..m.n_edges());
        let t = rng.gen_range(0.02..0.98);
        let ans = eqs.query(&m, u, e2, t).unwrap();
        let s = m.edge_point(0, u);
        let x = m.edge_point(e2, t);
        let (d, _) = geodesic_distance_with(&m, &s, &x, None).unwrap();
        assert!((ans.length - d).abs() <= TOL_ORACLE, "u {u} edge {e2} t {t}");
        assert!((ans.probes as f64) <= probe_bound, "{} probes", ans.probes);
        if let Some(path) = &ans.path {
            // reconstruction reports exactly the crossings of the path
            assert_eq!(path.crossings.len(), ans.seq.edges.len());
        }
    }
}

#[test]
fn two_point_queries_are_symmetric() {
    let m = random_hull(8, 2);
    let (ea, eb) = (2, 7);
    let qa = build_edge_structure(&m, ea).unwrap();
    let qb = build_edge_structure(&m, eb).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let u = rng.gen_range(0.02..0.98);
        let t = rng.gen_range(0.02..0.98);
        let fwd = qa.query(&m, u, eb, t).unwrap();
        let rev = qb.query(&m, t, ea, u).unwrap();
        assert!((fwd.length - rev.length).abs() <= TOL_ORACLE, "u {u} t {t}");
    }
}

#[test]
fn geoq1_container_roundtrips() {
    let m = random_hull(8, 2);
    let eqs = build_edge_structure(&m, 4).unwrap();
    let bytes = save_edge_structure(&eqs);
    assert_eq!(&bytes[..5], b"GEOQ1");
    let back = load_edge_structure(&bytes).unwrap();
    assert_eq!(back.edge, eqs.edge);
    assert_eq!(back.cuts, eqs.cuts);
    assert_eq!(back.versions.len(), eqs.versions.len());
    assert_eq!(back.psi.nodes.len(), eqs.psi.nodes.len());
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let u = rng.gen_range(0.01..0.99);
        let e2 = rng.gen_range(0..m.n_edges());
        let t = rng.gen_range(0.02..0.98);
        let a = eqs.query(&m, u, e2, t).unwrap();
        let b = back.query(&m, u, e2, t).unwrap();
        assert_eq!(a.length.to_bits(), b.length.to_bits(), "roundtrip changed an answer");
        assert_eq!(a.probes, b.probes);
        assert_eq!(a.seq.edges, b.seq.edges);
    }
    // persistence integrity: replaying the stored deltas from version 0
    // reproduces every later version
    let mut replay: Vec<_> = eqs.versions[0].clone();
    for (k, d) in eqs.deltas.iter().enumerate() {
        match d {
            VersionDelta::Unchanged => {}
            VersionDelta::Insert { edge, index } => {
                replay[*edge].insert(*index, eqs.versions[k + 1][*edge][*index].clone());
            }
            VersionDelta::Remove { edge, index } => {
                replay[*edge].remove(*index);
            }
            VersionDelta::Replace { edge, index } => {
                replay[*edge].set(*index, eqs.versions[k + 1][*edge][*index].clone());
            }
            VersionDelta::Rebuilt { edges } => {
                for &e2 in edges {
                    replay[e2] = eqs.versions[k + 1][e2].clone();
                }
            }
        }
        for e2 in 0..m.n_edges() {
            assert_eq!(replay[e2], eqs.versions[k + 1][e2], "replay diverged at version {}", k + 1);
        }
    }
}
