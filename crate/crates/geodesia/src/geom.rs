//! Plain 2-D/3-D vector types, rigid plane motions and the handful of
//! geometric predicates the rest of the crate leans on.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct V2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct V3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn v2(x: f64, y: f64) -> V2 {
    V2 { x, y }
}

pub const fn v3(x: f64, y: f64, z: f64) -> V3 {
    V3 { x, y, z }
}

impl V2 {
    pub fn dot(self, o: V2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    /// z-component of the cross product, i.e. the signed parallelogram area.
    pub fn cross(self, o: V2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }
    pub fn dist(self, o: V2) -> f64 {
        (self - o).norm()
    }
    pub fn normalized(self) -> V2 {
        let n = self.norm();
        v2(self.x / n, self.y / n)
    }
    /// Counterclockwise perpendicular.
    pub fn perp(self) -> V2 {
        v2(-self.y, self.x)
    }
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
    pub fn lerp(self, o: V2, t: f64) -> V2 {
        self + (o - self) * t
    }
}

impl V3 {
    pub fn dot(self, o: V3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }
    pub fn cross(self, o: V3) -> V3 {
        v3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
    pub fn dist(self, o: V3) -> f64 {
        (self - o).norm()
    }
    pub fn normalized(self) -> V3 {
        let n = self.norm();
        v3(self.x / n, self.y / n, self.z / n)
    }
    pub fn lerp(self, o: V3, t: f64) -> V3 {
        self + (o - self) * t
    }
}

macro_rules! vec_ops {
    ($t:ty, $($f:ident),+) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t { Self { $($f: self.$f + o.$f),+ } }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t { Self { $($f: self.$f - o.$f),+ } }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            fn mul(self, s: f64) -> $t { Self { $($f: self.$f * s),+ } }
        }
        impl Div<f64> for $t {
            type Output = $t;
            fn div(self, s: f64) -> $t { Self { $($f: self.$f / s),+ } }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { Self { $($f: -self.$f),+ } }
        }
    };
}
vec_ops!(V2, x, y);
vec_ops!(V3, x, y, z);

/// Orientation-preserving rigid motion of the plane: rotation (cos, sin)
/// followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Motion2 {
    pub c: f64,
    pub s: f64,
    pub t: V2,
}

impl Motion2 {
    pub const IDENTITY: Motion2 = Motion2 {
        c: 1.0,
        s: 0.0,
        t: V2 { x: 0.0, y: 0.0 },
    };

    pub fn rotation_about(angle: f64, center: V2) -> Motion2 {
        let (s, c) = angle.sin_cos();
        let r = Motion2 { c, s, t: v2(0.0, 0.0) };
        Motion2 { c, s, t: center - r.apply(center) }
    }

    /// The unique det=+1 motion taking (a0, a1) onto (b0, b1); the segments
    /// must have (nearly) equal length.
    pub fn mapping(a0: V2, a1: V2, b0: V2, b1: V2) -> Motion2 {
        let da = (a1 - a0).normalized();
        let db = (b1 - b0).normalized();
        let c = da.dot(db);
        let s = da.cross(db);
        let r = Motion2 { c, s, t: v2(0.0, 0.0) };
        Motion2 { c, s, t: b0 - r.apply(a0) }
    }

    pub fn apply(self, p: V2) -> V2 {
        v2(self.c * p.x - self.s * p.y, self.s * p.x + self.c * p.y) + self.t
    }

    /// Rotate a direction vector (no translation).
    pub fn apply_dir(self, p: V2) -> V2 {
        v2(self.c * p.x - self.s * p.y, self.s * p.x + self.c * p.y)
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(self, other: Motion2) -> Motion2 {
        Motion2 {
            c: self.c * other.c - self.s * other.s,
            s: self.s * other.c + self.c * other.s,
            t: self.apply(other.t),
        }
    }

    pub fn inverse(self) -> Motion2 {
        let inv = Motion2 { c: self.c, s: -self.s, t: v2(0.0, 0.0) };
        Motion2 { c: self.c, s: -self.s, t: -inv.apply(self.t) }
    }
}

/// Signed area of the triangle a,b,c (positive when counterclockwise).
pub fn orient2d(a: V2, b: V2, c: V2) -> f64 {
    (b - a).cross(c - a)
}

/// Circumcenter of three points; None when (nearly) collinear.
pub fn circumcenter(a: V2, b: V2, c: V2) -> Option<V2> {
    let d = 2.0 * ((b - a).cross(c - a));
    if d.abs() < 1e-300 {
        return None;
    }
    let a2 = a.norm2();
    let b2 = b.norm2();
    let c2 = c.norm2();
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    Some(v2(ux, uy))
}

/// Intersection of segments [a0,a1] and [b0,b1] as interior parameters.
/// Returns (t on a, t on b) when the open segments cross transversally.
pub fn seg_intersect(a0: V2, a1: V2, b0: V2, b1: V2) -> Option<(f64, f64)> {
    let da = a1 - a0;
    let db = b1 - b0;
    let den = da.cross(db);
    if den.abs() < 1e-300 {
        return None;
    }
    let d = b0 - a0;
    let ta = d.cross(db) / den;
    let tb = d.cross(da) / den;
    if (0.0..=1.0).contains(&ta) && (0.0..=1.0).contains(&tb) {
        Some((ta, tb))
    } else {
        None
    }
}

/// Parameter of the intersection of line (a0,a1) with line (b0,b1) on the
/// first line, or None for parallel lines.
pub fn line_intersect_param(a0: V2, a1: V2, b0: V2, b1: V2) -> Option<f64> {
    let da = a1 - a0;
    let db = b1 - b0;
    let den = da.cross(db);
    if den.abs() < 1e-300 {
        return None;
    }
    Some((b0 - a0).cross(db) / den)
}

/// Squared distance from p to segment [a,b].
pub fn point_seg_dist(p: V2, a: V2, b: V2) -> f64 {
    let ab = b - a;
    let n2 = ab.norm2();
    if n2 < 1e-300 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / n2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Signed area of a simple polygon (positive when counterclockwise).
pub fn polygon_area(poly: &[V2]) -> f64 {
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc += poly[i].cross(poly[j]);
    }
    acc * 0.5
}

/// Point in (closed) simple polygon, tolerance pulls the boundary inward.
pub fn point_in_polygon(p: V2, poly: &[V2], tol: f64) -> bool {
    // boundary proximity counts as inside
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        if point_seg_dist(p, poly[i], poly[j]) <= tol {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < xi {
                inside = !inside;
            }
        }
    }
    inside
}

/// Clip a convex or simple polygon by the half-plane { x : n·x <= d }.
/// Works for simple polygons when the cut line meets the boundary twice.
pub fn clip_polygon_halfplane(poly: &[V2], n: V2, d: f64) -> Vec<V2> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let fa = n.dot(a) - d;
        let fb = n.dot(b) - d;
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            let t = fa / (fa - fb);
            out.push(a.lerp(b, t));
        }
    }
    out
}

/// True when the closed polyline is a simple polygon (no edge pair crosses
/// except consecutive edges at their shared endpoint).
pub fn polygon_is_simple(poly: &[V2], tol: f64) -> bool {
    let m = poly.len();
    for i in 0..m {
        let (a0, a1) = (poly[i], poly[(i + 1) % m]);
        for j in i + 1..m {
            if j == i || (j + 1) % m == i || (i + 1) % m == j {
                continue;
            }
            let (b0, b1) = (poly[j], poly[(j + 1) % m]);
            if let Some((ta, tb)) = seg_intersect(a0, a1, b0, b1) {
                let p = a0.lerp(a1, ta);
                let q = b0.lerp(b1, tb);
                // shared endpoints of non-adjacent edges would already be
                // non-simple; any transversal interior crossing certainly is
                if ta > tol && ta < 1.0 - tol && tb > tol && tb < 1.0 - tol && p.dist(q) < tol {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motion_roundtrip() {
        let m = Motion2::mapping(v2(0.0, 0.0), v2(1.0, 0.0), v2(3.0, 1.0), v2(3.0, 2.0));
        assert!(m.apply(v2(0.0, 0.0)).dist(v2(3.0, 1.0)) < 1e-12);
        assert!(m.apply(v2(1.0, 0.0)).dist(v2(3.0, 2.0)) < 1e-12);
        let inv = m.inverse();
        let p = v2(0.3, -0.7);
        assert!(inv.apply(m.apply(p)).dist(p) < 1e-12);
        let id = m.compose(inv);
        assert!(id.apply(p).dist(p) < 1e-12);
    }

    #[test]
    fn motion_preserves_distance() {
        let m = Motion2::rotation_about(1.234, v2(0.5, -2.0));
        let a = v2(0.1, 0.2);
        let b = v2(-3.0, 4.0);
        assert!((m.apply(a).dist(m.apply(b)) - a.dist(b)).abs() < 1e-12);
    }

    #[test]
    fn circumcenter_equidistant() {
        let (a, b, c) = (v2(0.0, 0.0), v2(2.0, 0.0), v2(0.5, 1.5));
        let cc = circumcenter(a, b, c).unwrap();
        assert!((cc.dist(a) - cc.dist(b)).abs() < 1e-12);
        assert!((cc.dist(a) - cc.dist(c)).abs() < 1e-12);
        assert!(circumcenter(a, b, v2(1.0, 0.0)).is_none());
    }

    #[test]
    fn polygon_predicates() {
        let sq = [v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)];
        assert!((polygon_area(&sq) - 1.0).abs() < 1e-15);
        assert!(point_in_polygon(v2(0.5, 0.5), &sq, 1e-12));
        assert!(!point_in_polygon(v2(1.5, 0.5), &sq, 1e-12));
        assert!(polygon_is_simple(&sq, 1e-12));
        let bow = [v2(0.0, 0.0), v2(1.0, 1.0), v2(1.0, 0.0), v2(0.0, 1.0)];
        assert!(!polygon_is_simple(&bow, 1e-12));
        let cut = clip_polygon_halfplane(&sq, v2(1.0, 0.0), 0.5);
        assert!((polygon_area(&cut) - 0.5).abs() < 1e-12);
    }
}
