//! SVG export of a star unfolding: plate outlines, kernel, source
//! triangles, source images, and an optional ridge-tree overlay.
//!
//! Output is deterministic: a fixed stylesheet and all coordinates rounded
//! to 1e-6, so renders are stable enough for golden-file comparison.

use crate::geom::V2;
use crate::ridge::RidgeTree;
use crate::star::StarUnfolding;
use std::fmt::Write;

/// Margin around the drawing, as a fraction of its larger dimension.
const MARGIN: f64 = 0.05;

const STYLE: &str = "\
  .plate { fill: #f8f8f4; stroke: #b9b9ae; stroke-width: 0.0025; }\n\
  .source-tri { fill: #fdeeda; stroke: #dca96f; stroke-width: 0.0025; }\n\
  .kernel { fill: #dceaf7; fill-opacity: 0.8; stroke: #4a7fb5; stroke-width: 0.004; }\n\
  .ridge { stroke: #bf3a2b; stroke-width: 0.004; fill: none; }\n\
  .ridge-vertex { fill: #bf3a2b; }\n\
  .source { fill: #273747; }\n";

fn coord(out: &mut String, v: f64) {
    // normalize negative zero so rounding cannot flip output bytes
    let v = if v == 0.0 { 0.0 } else { v };
    write!(out, "{v:.6}").unwrap();
}

fn points_attr(poly: &[V2]) -> String {
    let mut s = String::new();
    for (k, p) in poly.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        coord(&mut s, p.x);
        s.push(',');
        coord(&mut s, p.y);
    }
    s
}

/// Render a star unfolding, with the ridge tree drawn on top when given.
pub fn star_svg(star: &StarUnfolding, tree: Option<&RidgeTree>) -> String {
    let mut pts: Vec<V2> = star.plates.iter().flat_map(|p| p.poly_plane()).collect();
    pts.extend(star.source_images.iter().map(|si| si.pos));
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    let m = MARGIN * (hi.x - lo.x).max(hi.y - lo.y);
    let (x0, y0) = (lo.x - m, lo.y - m);
    let (w, h) = (hi.x - lo.x + 2.0 * m, hi.y - lo.y + 2.0 * m);

    let mut svg = String::new();
    svg.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"");
    for (k, v) in [x0, -y0 - h, w, h].iter().enumerate() {
        if k > 0 {
            svg.push(' ');
        }
        coord(&mut svg, *v);
    }
    svg.push_str("\">\n<style>\n");
    svg.push_str(STYLE);
    svg.push_str("</style>\n<g transform=\"scale(1,-1)\">\n");

    for plate in &star.plates {
        let _ = writeln!(svg, "<polygon class=\"plate\" points=\"{}\"/>", points_attr(&plate.poly_plane()));
    }
    let n = star.n();
    for i in 0..n {
        let tri = [star.kernel[(i + n - 1) % n], star.source_images[i].pos, star.kernel[i]];
        let _ = writeln!(svg, "<polygon class=\"source-tri\" points=\"{}\"/>", points_attr(&tri));
    }
    let _ = writeln!(svg, "<polygon class=\"kernel\" points=\"{}\"/>", points_attr(&star.kernel));
    if let Some(tree) = tree {
        for e in &tree.edges {
            let (a, b) = (tree.verts[e.a].pos, tree.verts[e.b].pos);
            let mut attrs = String::new();
            coord(&mut attrs, a.x);
            attrs.push_str("\" y1=\"");
            coord(&mut attrs, a.y);
            attrs.push_str("\" x2=\"");
            coord(&mut attrs, b.x);
            attrs.push_str("\" y2=\"");
            coord(&mut attrs, b.y);
            let _ = writeln!(svg, "<line class=\"ridge\" x1=\"{attrs}\"/>");
        }
        for v in &tree.verts {
            let mut c = String::new();
            coord(&mut c, v.pos.x);
            c.push_str("\" cy=\"");
            coord(&mut c, v.pos.y);
            let _ = writeln!(svg, "<circle class=\"ridge-vertex\" cx=\"{c}\" r=\"0.006\"/>");
        }
    }
    for si in &star.source_images {
        let mut c = String::new();
        coord(&mut c, si.pos.x);
        c.push_str("\" cy=\"");
        coord(&mut c, si.pos.y);
        let _ = writeln!(svg, "<circle class=\"source\" cx=\"{c}\" r=\"0.008\"/>");
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}
