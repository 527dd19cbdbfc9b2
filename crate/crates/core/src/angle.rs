//! Angles stored as exact rational multiples of π when possible.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::Q;

/// Default tolerance for float-backed angle comparisons.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// An interior angle in `(0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    pi_fraction: Option<Q>,
    radians: f64,
}

impl Angle {
    /// `fraction · π`, exact.
    pub fn from_pi(fraction: Q) -> Self {
        Angle { pi_fraction: Some(fraction), radians: q_to_f64(&fraction) * PI }
    }

    pub fn from_radians(radians: f64) -> Self {
        Angle { pi_fraction: None, radians }
    }

    pub fn pi_fraction(&self) -> Option<Q> {
        self.pi_fraction
    }

    pub fn is_exact(&self) -> bool {
        self.pi_fraction.is_some()
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn straight() -> Self {
        Angle::from_pi(Q::from_integer(1))
    }

    /// Within `(0, 2π)`.
    pub fn in_range(&self, eps: f64) -> bool {
        match self.pi_fraction {
            Some(f) => f > Q::zero() && f < Q::from_integer(2),
            None => self.radians > eps && self.radians < 2.0 * PI - eps,
        }
    }

    /// `self ≤ π`; exact when possible.
    pub fn is_convex(&self, eps: f64) -> bool {
        match self.pi_fraction {
            Some(f) => f <= Q::from_integer(1),
            None => self.radians <= PI + eps,
        }
    }

    pub fn is_straight(&self, eps: f64) -> bool {
        match self.pi_fraction {
            Some(f) => f == Q::from_integer(1),
            None => (self.radians - PI).abs() <= eps,
        }
    }

    pub fn approx_eq(&self, other: &Angle, eps: f64) -> bool {
        match (self.pi_fraction, other.pi_fraction) {
            (Some(a), Some(b)) => a == b,
            _ => (self.radians - other.radians).abs() <= eps,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_fraction {
            Some(q) => write!(f, "{}π", q),
            None => write!(f, "{:.9}rad", self.radians),
        }
    }
}

pub fn q_to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Running total of glued face angle. Exact while every summand is exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleSum {
    exact: Q,
    inexact: f64,
    has_inexact: bool,
}

impl Default for AngleSum {
    fn default() -> Self {
        AngleSum { exact: Q::zero(), inexact: 0.0, has_inexact: false }
    }
}

impl AngleSum {
    pub fn add(mut self, a: &Angle) -> Self {
        match a.pi_fraction {
            Some(f) => self.exact += f,
            None => {
                self.inexact += a.radians;
                self.has_inexact = true;
            }
        }
        self
    }

    pub fn merge(mut self, other: AngleSum) -> Self {
        self.exact += other.exact;
        self.inexact += other.inexact;
        self.has_inexact |= other.has_inexact;
        self
    }

    pub fn add_straight(self) -> Self {
        self.add(&Angle::straight())
    }

    pub fn is_exact(&self) -> bool {
        !self.has_inexact
    }

    /// Total as a multiple of π, when exact.
    pub fn pi_fraction(&self) -> Option<Q> {
        self.is_exact().then_some(self.exact)
    }

    pub fn radians(&self) -> f64 {
        q_to_f64(&self.exact) * PI + self.inexact
    }

    /// Total `≤ 2π` (with `eps` slack when inexact).
    pub fn within_full_turn(&self, eps: f64) -> bool {
        if self.is_exact() {
            self.exact <= Q::from_integer(2)
        } else {
            self.radians() <= 2.0 * PI + eps
        }
    }

    /// Total exactly `2π` (within `eps` when inexact).
    pub fn is_full_turn(&self, eps: f64) -> bool {
        if self.is_exact() {
            self.exact == Q::from_integer(2)
        } else {
            (self.radians() - 2.0 * PI).abs() <= eps
        }
    }
}

impl fmt::Display for AngleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_fraction() {
            Some(q) => write!(f, "{}π", q),
            None => write!(f, "{:.9}rad", self.radians()),
        }
    }
}
