//! Enumerate Aleksandrov gluings of polygons as labeled gluing trees, and
//! unfold truncated cones along exponentially many cut trees.

pub mod angle;
pub mod catalog;
pub mod cone;
pub mod enumerate;
pub mod geometry;
pub mod gluing;
pub mod param;
pub mod polygon;

/// Exact rational scalar used for lengths, offsets and angle fractions.
pub type Q = num_rational::Ratio<i128>;
