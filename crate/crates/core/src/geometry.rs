//! Planar predicates: orientation and segment intersection, plus the simplicity tests built on them.
//!
//! Exact versions work on rational points; float versions take an explicit
//! tolerance and are used for developed (unfolded) polygons.

use num_traits::{Signed, Zero};

use crate::Q;

pub type QPoint = [Q; 2];

fn cross_q(o: &QPoint, a: &QPoint, b: &QPoint) -> Q {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn sign(q: Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn on_segment_q(p: &QPoint, a: &QPoint, b: &QPoint) -> bool {
    let within = |x: Q, y: Q, z: Q| (x.min(y)) <= z && z <= x.max(y);
    within(a[0], b[0], p[0]) && within(a[1], b[1], p[1])
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect_q(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> bool {
    let d1 = sign(cross_q(c, d, a));
    let d2 = sign(cross_q(c, d, b));
    let d3 = sign(cross_q(a, b, c));
    let d4 = sign(cross_q(a, b, d));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment_q(a, c, d))
        || (d2 == 0 && on_segment_q(b, c, d))
        || (d3 == 0 && on_segment_q(c, a, b))
        || (d4 == 0 && on_segment_q(d, a, b))
}

/// Twice the signed area (positive for counterclockwise).
pub fn signed_area2_q(points: &[QPoint]) -> Q {
    let n = points.len();
    (0..n).fold(Q::zero(), |acc, i| {
        let (p, q) = (&points[i], &points[(i + 1) % n]);
        acc + p[0] * q[1] - p[1] * q[0]
    })
}

/// Adjacent edges may only share their common endpoint (and must not fold
/// back over each other); nonadjacent edges must be disjoint.
pub fn is_simple_q(points: &[QPoint]) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a, b) = (&points[i], &points[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (&points[j], &points[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // shared vertex is `b` (or `a` when wrapping); reject overlap
                let (shared, other_1, other_2) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if cross_q(shared, other_1, other_2).is_zero() {
                    // collinear: overlapping iff the far endpoints are on the same side
                    let dot = (other_1[0] - shared[0]) * (other_2[0] - shared[0])
                        + (other_1[1] - shared[1]) * (other_2[1] - shared[1]);
                    if dot.is_positive() {
                        return false;
                    }
                }
            } else if segments_intersect_q(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn cross_f(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist_point_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0) };
    let (x, y) = (a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
    (x * x + y * y).sqrt()
}

/// Closed segments come within `tol` of each other.
pub fn segments_touch_f(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2], tol: f64) -> bool {
    let d1 = cross_f(c, d, a);
    let d2 = cross_f(c, d, b);
    let d3 = cross_f(a, b, c);
    let d4 = cross_f(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    dist_point_segment(a, c, d) <= tol
        || dist_point_segment(b, c, d) <= tol
        || dist_point_segment(c, a, b) <= tol
        || dist_point_segment(d, a, b) <= tol
}

/// Float simplicity test: nonadjacent edges stay farther than `tol` apart and
/// adjacent edges do not fold back onto each other.
pub fn is_simple_f(points: &[[f64; 2]], tol: f64) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a, b) = (points[i], points[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (points[j], points[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                let (shared, o1, o2) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                let (u, v) = ([o1[0] - shared[0], o1[1] - shared[1]], [o2[0] - shared[0], o2[1] - shared[1]]);
                let (lu, lv) = ((u[0] * u[0] + u[1] * u[1]).sqrt(), (v[0] * v[0] + v[1] * v[1]).sqrt());
                let cross = (u[0] * v[1] - u[1] * v[0]) / (lu * lv);
                let dot = u[0] * v[0] + u[1] * v[1];
                if cross.abs() <= tol && dot > 0.0 {
                    return false;
                }
            } else if segments_touch_f(a, b, c, d, tol) {
                return false;
            }
        }
    }
    true
}

pub fn signed_area_f(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum::<f64>()
}
