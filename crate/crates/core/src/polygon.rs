//! Polygons described by their metric boundary: a cyclic list of
//! `(edge length, vertex angle)` pairs. Vertex `v_i` is followed by edge
//! `e_i`, which runs from `v_i` to `v_{i+1}`.

use std::f64::consts::PI;

use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::angle::{q_to_f64, Angle, DEFAULT_EPSILON};
use crate::geometry::{is_simple_q, signed_area2_q, QPoint};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("zero-length edge at vertex {0}")]
    DegenerateEdge(usize),
    #[error("polygon boundary self-intersects")]
    NonSimple,
    #[error("vertices are listed clockwise; reverse them")]
    ClockwiseInput,
    #[error("turning angles sum to {0} instead of 2π")]
    AngleClosureViolation(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// An edge length; `exact == false` marks a rational stand-in for an
/// irrational length computed from coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Length {
    pub value: Q,
    pub exact: bool,
}

impl Length {
    pub fn exact(value: Q) -> Self {
        Length { value, exact: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonSpec {
    lengths: Vec<Length>,
    angles: Vec<Angle>,
    epsilon: f64,
}

impl PolygonSpec {
    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn length(&self, edge: usize) -> Q {
        self.lengths[edge % self.n()].value
    }

    pub fn lengths(&self) -> &[Length] {
        &self.lengths
    }

    pub fn angle(&self, vertex: usize) -> &Angle {
        &self.angles[vertex % self.n()]
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn perimeter(&self) -> Q {
        self.lengths.iter().fold(Q::zero(), |acc, l| acc + l.value)
    }

    /// All lengths and angles are exact.
    pub fn is_exact(&self) -> bool {
        self.lengths.iter().all(|l| l.exact) && self.angles.iter().all(Angle::is_exact)
    }

    /// Position of vertex `v_i` along the boundary, measured from `v_0`.
    pub fn vertex_offset(&self, i: usize) -> Q {
        self.lengths[..i % self.n()].iter().fold(Q::zero(), |acc, l| acc + l.value)
    }

    /// Sum of turning angles `Σ(π − angle)` as a multiple of π, if exact.
    pub fn turning_sum_pi(&self) -> Option<Q> {
        let mut s = Q::zero();
        for a in &self.angles {
            s += Q::one() - a.pi_fraction()?;
        }
        Some(s)
    }

    /// Vertices with angle exactly π (marked boundary points).
    pub fn marked_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.angles[i].is_straight(self.epsilon)).collect()
    }

    fn check_closure(&self) -> Result<(), PolygonError> {
        match self.turning_sum_pi() {
            Some(s) if s == Q::from_integer(2) => Ok(()),
            Some(s) => Err(PolygonError::AngleClosureViolation(format!("{}π", s))),
            None => {
                let s: f64 = self.angles.iter().map(|a| PI - a.radians()).sum();
                if (s - 2.0 * PI).abs() <= self.epsilon.max(DEFAULT_EPSILON) * self.n() as f64 {
                    Ok(())
                } else {
                    Err(PolygonError::AngleClosureViolation(format!("{:.9}rad", s)))
                }
            }
        }
    }
}

/// Build a polygon from its metric boundary. No planar embedding is computed.
pub fn polygon_from_boundary(items: &[(Q, Angle)]) -> Result<PolygonSpec, PolygonError> {
    if items.len() < 3 {
        return Err(PolygonError::TooFewVertices(items.len()));
    }
    for (i, (len, angle)) in items.iter().enumerate() {
        if !len.is_positive() {
            return Err(PolygonError::DegenerateEdge(i));
        }
        if !angle.in_range(0.0) {
            return Err(PolygonError::BadParameter(format!("angle {} at vertex {} outside (0, 2π)", angle, i)));
        }
    }
    let spec = PolygonSpec {
        lengths: items.iter().map(|(l, _)| Length::exact(*l)).collect(),
        angles: items.iter().map(|(_, a)| *a).collect(),
        epsilon: DEFAULT_EPSILON,
    };
    spec.check_closure()?;
    Ok(spec)
}

/// Convenience: boundary with all angles given as exact multiples of π.
pub fn polygon_from_exact(items: &[(Q, Q)]) -> Result<PolygonSpec, PolygonError> {
    let v: Vec<(Q, Angle)> = items.iter().map(|(l, a)| (*l, Angle::from_pi(*a))).collect();
    polygon_from_boundary(&v)
}

fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (*q.numer(), *q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (rn * rn == n && rd * rd == d).then(|| Q::new(rn, rd))
}

/// Rational stand-in for an irrational value, precise to about 1e-12.
fn approximate(x: f64) -> Q {
    const DEN: i128 = 1 << 40;
    Q::new((x * DEN as f64).round() as i128, DEN)
}

/// Direction index in multiples of π/4 when `(dx, dy)` is axis-aligned or diagonal.
fn compass(dx: Q, dy: Q) -> Option<i64> {
    let table = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
    let sgn = |q: Q| if q.is_positive() { 1 } else if q.is_negative() { -1 } else { 0 };
    if !(dx.is_zero() || dy.is_zero() || dx.abs() == dy.abs()) {
        return None;
    }
    let key = (sgn(dx), sgn(dy));
    table.iter().position(|t| *t == key).map(|i| i as i64)
}

/// Build a polygon from counterclockwise rational coordinates.
///
/// Lengths are exact when the squared length is a rational square; angles are
/// exact when both incident edges run along the eight compass directions.
pub fn polygon_from_coordinates(points: &[QPoint]) -> Result<PolygonSpec, PolygonError> {
    let n = points.len();
    if n < 3 {
        return Err(PolygonError::TooFewVertices(n));
    }
    for i in 0..n {
        if points[i] == points[(i + 1) % n] {
            return Err(PolygonError::DegenerateEdge(i));
        }
        for j in (i + 1)..n {
            if points[i] == points[j] {
                return Err(PolygonError::NonSimple);
            }
        }
    }
    if !is_simple_q(points) {
        return Err(PolygonError::NonSimple);
    }
    if !signed_area2_q(points).is_positive() {
        return Err(PolygonError::ClockwiseInput);
    }
    let mut lengths = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&points[i], &points[(i + 1) % n]);
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let sq = dx * dx + dy * dy;
        lengths.push(match rational_sqrt(&sq) {
            Some(l) => Length::exact(l),
            None => Length { value: approximate(q_to_f64(&sq).sqrt()), exact: false },
        });
    }
    for i in 0..n {
        let (prev, cur, next) = (&points[(i + n - 1) % n], &points[i], &points[(i + 1) % n]);
        let (ix, iy) = (cur[0] - prev[0], cur[1] - prev[1]);
        let (ox, oy) = (next[0] - cur[0], next[1] - cur[1]);
        let angle = match (compass(ix, iy), compass(ox, oy)) {
            (Some(d_in), Some(d_out)) => {
                // turn in (-π, π) in eighths of a turn-half
                let mut turn = (d_out - d_in).rem_euclid(8);
                if turn > 4 {
                    turn -= 8;
                }
                Angle::from_pi(Q::one() - Q::new(turn as i128, 4))
            }
            _ => {
                let f = |q: Q| q_to_f64(&q);
                let cross = f(ix) * f(oy) - f(iy) * f(ox);
                let dot = f(ix) * f(ox) + f(iy) * f(oy);
                Angle::from_radians(PI - cross.atan2(dot))
            }
        };
        angles.push(angle);
    }
    let spec = PolygonSpec { lengths, angles, epsilon: DEFAULT_EPSILON };
    spec.check_closure()?;
    Ok(spec)
}

/// Vertex `i` is convex (angle ≤ π) for every `i`.
pub fn is_convex(p: &PolygonSpec) -> bool {
    p.angles.iter().all(|a| a.is_convex(p.epsilon))
}

fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn rectangle(a: Q, b: Q) -> Result<PolygonSpec, PolygonError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(PolygonError::BadParameter(format!("rectangle sides must be positive, got {a} × {b}")));
    }
    let half = Q::new(1, 2);
    polygon_from_exact(&[(a, half), (b, half), (a, half), (b, half)])
}

pub fn regular_ngon(n: usize) -> Result<PolygonSpec, PolygonError> {
    if n < 3 {
        return Err(PolygonError::BadParameter(format!("regular polygon needs n ≥ 3, got {n}")));
    }
    let angle = Q::new(n as i128 - 2, n as i128);
    polygon_from_exact(&vec![(Q::one(), angle); n])
}

pub fn equilateral_triangle() -> PolygonSpec {
    regular_ngon(3).expect("n = 3 is valid")
}

pub fn unit_square() -> PolygonSpec {
    regular_ngon(4).expect("n = 4 is valid")
}

/// Coordinates of the six-square Latin cross.
pub fn latin_cross_coordinates() -> Vec<QPoint> {
    [(0, 0), (1, 0), (1, 2), (2, 2), (2, 3), (1, 3), (1, 4), (0, 4), (0, 3), (-1, 3), (-1, 2), (0, 2)]
        .iter()
        .map(|&(x, y)| [qi(x), qi(y)])
        .collect()
}

pub fn latin_cross() -> PolygonSpec {
    polygon_from_coordinates(&latin_cross_coordinates()).expect("the Latin cross is a valid polygon")
}

/// A ten-sided rectilinear polygon with no Aleksandrov gluing at all.
/// Found by random search over staircase polyominoes with uneven grid
/// spacing; the exhaustive enumeration on it comes back empty.
pub fn unfoldable_witness_coordinates() -> Vec<QPoint> {
    [(0, 0), (25, 0), (25, 8), (14, 8), (14, 16), (7, 16), (7, 20), (5, 20), (5, 16), (0, 16)]
        .iter()
        .map(|&(x, y)| [qi(x), qi(y)])
        .collect()
}

pub fn unfoldable_witness() -> PolygonSpec {
    polygon_from_coordinates(&unfoldable_witness_coordinates()).expect("the witness is a valid polygon")
}

/// Default small angle of the m-star: `π / (m(m−1))`.
pub fn m_star_default_alpha(m: usize) -> Q {
    Q::new(1, (m * (m - 1)) as i128)
}

/// Centrally symmetric star with `m` small angles `α` alternating with `m`
/// reflex angles `β`, unit edges, and two marked points `x = v_0` and
/// `y = v_{m+1}` at edge midpoints, half the perimeter apart.
///
/// Boundary order from `x`: β, α, β, α, …, α, y, β, α, …, α.
pub fn m_star(m: usize) -> Result<PolygonSpec, PolygonError> {
    if m < 4 {
        return Err(PolygonError::BadParameter(format!("m-star needs m ≥ 4, got {m}")));
    }
    m_star_with_alpha(m, m_star_default_alpha(m))
}

pub fn m_star_with_alpha(m: usize, alpha: Q) -> Result<PolygonSpec, PolygonError> {
    if m < 4 || m % 2 == 1 {
        return Err(PolygonError::BadParameter(format!("m-star needs even m ≥ 4, got {m}")));
    }
    let beta = Q::new(2 * m as i128 - 2, m as i128) - alpha;
    if !alpha.is_positive() || Q::from_integer(m as i128) * alpha + beta >= qi(2) {
        return Err(PolygonError::BadParameter(format!("α = {alpha}π too large for m = {m}")));
    }
    let half = Q::new(1, 2);
    let mut items = Vec::with_capacity(2 * m + 2);
    for _ in 0..2 {
        // marked point, then β/α alternating; the edge after the marked point is half length
        items.push((half, Q::one()));
        for j in 0..m {
            let angle = if j % 2 == 0 { beta } else { alpha };
            let len = if j == m - 1 { half } else { Q::one() };
            items.push((len, angle));
        }
    }
    polygon_from_exact(&items)
}

/// One boundary automorphism: `v_i ↦ v_{shift ± i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    pub shift: usize,
    pub reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { shift: 0, reflect: false };

    pub fn map_vertex(&self, i: usize, n: usize) -> usize {
        if self.reflect {
            (self.shift + n - i % n) % n
        } else {
            (self.shift + i) % n
        }
    }

    /// Edge `e_i = (v_i, v_{i+1})` maps to the edge between the images.
    pub fn map_edge(&self, i: usize, n: usize) -> usize {
        if self.reflect {
            (self.shift + 2 * n - i % n - 1) % n
        } else {
            (self.shift + i) % n
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Symmetry, n: usize) -> Symmetry {
        let v0 = self.map_vertex(other.map_vertex(0, n), n);
        Symmetry { shift: v0, reflect: self.reflect != other.reflect }
    }

    pub fn inverse(&self, n: usize) -> Symmetry {
        if self.reflect {
            *self
        } else {
            Symmetry { shift: (n - self.shift) % n, reflect: false }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub n: usize,
    pub elements: Vec<Symmetry>,
}

impl SymmetryGroup {
    pub fn trivial(n: usize) -> Self {
        SymmetryGroup { n, elements: vec![Symmetry::IDENTITY] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_closed(&self) -> bool {
        let has = |s: &Symmetry| self.elements.contains(s);
        has(&Symmetry::IDENTITY)
            && self.elements.iter().all(|a| {
                has(&a.inverse(self.n)) && self.elements.iter().all(|b| has(&a.compose(b, self.n)))
            })
    }
}

fn preserves(p: &PolygonSpec, s: &Symmetry) -> bool {
    let n = p.n();
    let eps = p.epsilon;
    (0..n).all(|i| {
        p.angle(s.map_vertex(i, n)).approx_eq(p.angle(i), eps)
            && p.lengths[s.map_edge(i, n)].value == p.lengths[i].value
    })
}

/// Every rotation/reflection of the boundary sequence that fixes it.
pub fn symmetry_group(p: &PolygonSpec) -> SymmetryGroup {
    let n = p.n();
    let elements = [false, true]
        .iter()
        .flat_map(|&reflect| (0..n).map(move |shift| Symmetry { shift, reflect }))
        .filter(|s| preserves(p, s))
        .collect();
    SymmetryGroup { n, elements }
}
