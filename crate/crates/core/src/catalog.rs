//! JSON file formats: polygon input and gluing catalogs.
//!
//! Rationals are written as `"p/q"` strings (integers also accepted as JSON
//! numbers), so every exact value survives a round trip unchanged.

use std::f64::consts::PI;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{Angle, AngleSum};
use crate::geometry::QPoint;
use crate::gluing::{
    check_aleksandrov, structural_check, Belt, BoundaryPoint, Element, GluingNode, GluingTree, Seam, Shape,
};
use crate::param::{Affine, ParamRegion};
use crate::polygon::{polygon_from_boundary, polygon_from_coordinates, PolygonError, PolygonSpec};
use crate::Q;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad number {0:?}")]
    Number(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// A rational as it appears in files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    pub fn value(&self) -> Result<Q, CatalogError> {
        match self {
            Rational::Int(i) => Ok(Q::from_integer(*i as i128)),
            Rational::Text(s) => parse_q(s),
        }
    }
}

impl From<Q> for Rational {
    fn from(q: Q) -> Self {
        Rational::Text(q.to_string())
    }
}

pub fn parse_q(s: &str) -> Result<Q, CatalogError> {
    let bad = || CatalogError::Number(s.to_string());
    let t = s.trim();
    let q = match t.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (i128::from_str(n.trim()).map_err(|_| bad())?, i128::from_str(d.trim()).map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Q::new(n, d)
        }
        None => match t.split_once('.') {
            // decimal literal, read exactly
            Some((w, f)) if f.chars().all(|c| c.is_ascii_digit()) && f.len() <= 18 => {
                let neg = w.starts_with('-');
                let whole = i128::from_str(w.trim_start_matches('-')).map_err(|_| bad())?;
                let frac = if f.is_empty() { 0 } else { i128::from_str(f).map_err(|_| bad())? };
                let scale = 10i128.pow(f.len() as u32);
                let q = Q::new(whole * scale + frac, scale);
                if neg {
                    -q
                } else {
                    q
                }
            }
            _ => Q::from_integer(i128::from_str(t).map_err(|_| bad())?),
        },
    };
    Ok(q)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundaryItem {
    pub len: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_pi: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_rad: Option<f64>,
}

/// Polygon input: either counterclockwise coordinates or the metric boundary.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct PolygonFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[Rational; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<BoundaryItem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl PolygonFile {
    pub fn to_polygon(&self) -> Result<PolygonSpec, CatalogError> {
        let p = match (&self.coords, &self.boundary) {
            (Some(c), None) => {
                let pts: Vec<QPoint> =
                    c.iter().map(|[x, y]| Ok([x.value()?, y.value()?])).collect::<Result<_, CatalogError>>()?;
                polygon_from_coordinates(&pts)?
            }
            (None, Some(b)) => {
                let items = b
                    .iter()
                    .map(|it| {
                        let angle = match (&it.angle_pi, it.angle_rad) {
                            (Some(a), None) => Angle::from_pi(a.value()?),
                            (None, Some(r)) => Angle::from_radians(r),
                            _ => return Err(CatalogError::Format("each boundary item needs angle_pi or angle_rad".into())),
                        };
                        Ok((it.len.value()?, angle))
                    })
                    .collect::<Result<Vec<_>, CatalogError>>()?;
                polygon_from_boundary(&items)?
            }
            _ => return Err(CatalogError::Format("polygon needs exactly one of coords or boundary".into())),
        };
        Ok(match self.epsilon {
            Some(e) if e > 0.0 => p.with_epsilon(e),
            Some(e) => return Err(CatalogError::Format(format!("epsilon must be positive, got {e}"))),
            None => p,
        })
    }

    /// Boundary form of `p`. Inexact lengths keep their rational stand-in.
    pub fn from_polygon(p: &PolygonSpec) -> PolygonFile {
        let boundary = (0..p.n())
            .map(|i| {
                let a = p.angle(i);
                BoundaryItem {
                    len: p.length(i).into(),
                    angle_pi: a.pi_fraction().map(Rational::from),
                    angle_rad: if a.is_exact() { None } else { Some(a.radians()) },
                }
            })
            .collect();
        PolygonFile { coords: None, boundary: Some(boundary), epsilon: None }
    }
}

pub fn read_polygon(json: &str) -> Result<PolygonSpec, CatalogError> {
    serde_json::from_str::<PolygonFile>(json)?.to_polygon()
}

pub fn write_polygon(p: &PolygonSpec) -> String {
    serde_json::to_string_pretty(&PolygonFile::from_polygon(p)).expect("plain data serializes")
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BeltEntry {
    /// Edges of the belt's fold leaves, as `e1`, `e2`, ...
    pub edges: Vec<String>,
    /// Range of the first leaf's offset along its edge.
    pub interval: [Rational; 2],
    #[serde(default)]
    pub leaves: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NodeEntry {
    pub labels: Vec<String>,
    /// Total angle in units of π: a rational, or a decimal when inexact.
    pub angle_sum_pi: String,
    /// Boundary positions measured from `v1`, at the representative.
    #[serde(default)]
    pub points: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntry {
    pub key: String,
    pub shape: String,
    pub leaves: usize,
    pub belts: Vec<BeltEntry>,
    pub nodes: Vec<NodeEntry>,
    #[serde(default)]
    pub arcs: Vec<[usize; 2]>,
    /// `[a, b, c, d]`: interval `[a, b]` glued in reverse to `[c, d]`.
    #[serde(default)]
    pub seams: Vec<[Rational; 4]>,
}

fn angle_text(s: &AngleSum) -> String {
    match s.pi_fraction() {
        Some(q) => q.to_string(),
        None => format!("{:.12}", s.radians() / PI),
    }
}

impl CatalogEntry {
    pub fn from_tree(t: &GluingTree, p: &PolygonSpec) -> CatalogEntry {
        let at = &t.representative;
        let l = p.perimeter();
        let pos = |bp: &BoundaryPoint| -> Rational {
            let x = bp.position(p, at);
            (if x >= l { x - l } else { x }).into()
        };
        CatalogEntry {
            key: t.canonical_key().0,
            shape: t.shape().symbol().to_string(),
            leaves: t.leaf_count(),
            belts: t
                .belts
                .iter()
                .map(|b| BeltEntry {
                    edges: b.edges.iter().map(|&e| Element::Edge(e).to_string()).collect(),
                    interval: [b.interval.0.into(), b.interval.1.into()],
                    leaves: b.leaves.clone(),
                })
                .collect(),
            nodes: t
                .nodes
                .iter()
                .map(|nd| NodeEntry {
                    labels: nd.label.iter().map(Element::to_string).collect(),
                    angle_sum_pi: angle_text(&nd.angle_sum),
                    points: nd.points.iter().map(pos).collect(),
                })
                .collect(),
            arcs: t.arcs.iter().map(|&(a, b)| [a, b]).collect(),
            seams: t
                .seams
                .iter()
                .map(|s| [pos(&s.first[0]), pos(&s.first[1]), pos(&s.second[0]), pos(&s.second[1])])
                .collect(),
        }
    }

    /// Rebuild a concrete (parameter-free) tree from the stored geometry.
    /// Labels and angle sums are recomputed from the polygon.
    pub fn to_tree(&self, p: &PolygonSpec) -> Result<GluingTree, CatalogError> {
        let l = p.perimeter();
        let point = |r: &Rational| -> Result<BoundaryPoint, CatalogError> {
            let mut x = r.value()?;
            if x.is_negative() || x > l {
                return Err(CatalogError::Format(format!("position {x} outside [0, {l}]")));
            }
            if x == l {
                x = Q::zero();
            }
            let e = (0..p.n()).rev().find(|&e| p.vertex_offset(e) <= x).unwrap_or(0);
            let off = x - p.vertex_offset(e);
            Ok(if off.is_zero() { BoundaryPoint::vertex(e) } else { BoundaryPoint::interior(e, Affine::constant(off)) })
        };
        let nodes = self
            .nodes
            .iter()
            .map(|nd| Ok(GluingNode::new(nd.points.iter().map(point).collect::<Result<_, CatalogError>>()?, p)))
            .collect::<Result<Vec<_>, CatalogError>>()?;
        let k = nodes.len();
        if self.arcs.iter().any(|a| a[0] >= k || a[1] >= k) {
            return Err(CatalogError::Format("arc refers to a missing node".into()));
        }
        if self.arcs.len() != self.seams.len() {
            return Err(CatalogError::Format("every arc needs exactly one seam".into()));
        }
        let seams = self
            .seams
            .iter()
            .map(|s| Ok(Seam { first: [point(&s[0])?, point(&s[1])?], second: [point(&s[2])?, point(&s[3])?] }))
            .collect::<Result<Vec<_>, CatalogError>>()?;
        let mut belts = Vec::new();
        for b in &self.belts {
            if b.leaves.iter().any(|&i| i >= k) {
                return Err(CatalogError::Format("belt refers to a missing node".into()));
            }
            let edges = b
                .edges
                .iter()
                .map(|e| match Element::parse(e) {
                    Some(Element::Edge(i)) if i < p.n() => Ok(i),
                    _ => Err(CatalogError::Format(format!("bad belt edge {e:?}"))),
                })
                .collect::<Result<_, CatalogError>>()?;
            belts.push(Belt { leaves: b.leaves.clone(), edges, interval: (b.interval[0].value()?, b.interval[1].value()?) });
        }
        Ok(GluingTree {
            n: p.n(),
            nodes,
            arcs: self.arcs.iter().map(|a| (a[0], a[1])).collect(),
            seams,
            region: ParamRegion::new(0),
            representative: Vec::new(),
            belts,
        })
    }
}

pub fn catalog_entries(trees: &[GluingTree], p: &PolygonSpec) -> Vec<CatalogEntry> {
    trees.iter().map(|t| CatalogEntry::from_tree(t, p)).collect()
}

pub fn write_catalog(trees: &[GluingTree], p: &PolygonSpec) -> String {
    let mut s = serde_json::to_string_pretty(&catalog_entries(trees, p)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_catalog(json: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    Ok(serde_json::from_str(json)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryReport {
    pub index: usize,
    pub key: String,
    pub issues: Vec<String>,
}

impl EntryReport {
    pub fn valid(&self) -> bool {
        self.issues.is_empty()
    }
}

fn stored_angle_matches(text: &str, actual: &AngleSum, eps: f64) -> Result<bool, CatalogError> {
    Ok(match actual.pi_fraction() {
        Some(q) => parse_q(text)? == q,
        None => {
            let v: f64 = text.trim().parse().map_err(|_| CatalogError::Number(text.to_string()))?;
            (v * PI - actual.radians()).abs() <= eps.max(1e-9)
        }
    })
}

/// Re-run both checkers on one stored entry and compare every stored claim
/// (labels, angle sums, key, shape, leaf count) with what the seams imply.
/// Structural damage that prevents rebuilding the tree is an `Err`.
pub fn validate_entry(index: usize, e: &CatalogEntry, p: &PolygonSpec) -> Result<EntryReport, CatalogError> {
    let t = e.to_tree(p)?;
    let mut issues = Vec::new();
    let eps = p.epsilon();
    for (i, (stored, nd)) in e.nodes.iter().zip(&t.nodes).enumerate() {
        let labels: Vec<String> = nd.label.iter().map(Element::to_string).collect();
        let mut claimed = stored.labels.clone();
        claimed.sort_by_key(|s| Element::parse(s));
        if claimed != labels {
            issues.push(format!("node {i}: labels {:?} but the points give {:?}", stored.labels, labels));
        }
        if !stored_angle_matches(&stored.angle_sum_pi, &nd.angle_sum, eps)? {
            issues.push(format!("node {i}: stored angle {}π, actual {}", stored.angle_sum_pi, nd.angle_sum));
        }
        let over = match parse_q(&stored.angle_sum_pi) {
            Ok(q) => q > Q::from_integer(2),
            Err(_) => stored.angle_sum_pi.trim().parse::<f64>().map(|v| v * PI > 2.0 * PI + eps).unwrap_or(true),
        };
        if over {
            issues.push(format!("node {i}: stored angle {}π exceeds 2π", stored.angle_sum_pi));
        }
    }
    match check_aleksandrov(&t, p) {
        Ok(r) => issues.extend(r.issues.iter().cloned().chain((!r.angles_ok).then(|| "angle above 2π".to_string()))),
        Err(err) => issues.push(err.to_string()),
    }
    if t.nodes.len() != t.arcs.len() + 1 {
        issues.push("node and arc counts do not form a tree".into());
    } else {
        let key = t.canonical_key().0;
        if key != e.key {
            issues.push(format!("stored key {} differs from recomputed {}", e.key, key));
        }
        if Shape::from_symbol(&e.shape) != Some(t.shape()) {
            issues.push(format!("stored shape {} differs from {}", e.shape, t.shape()));
        }
        if e.leaves != t.leaf_count() {
            issues.push(format!("stored {} leaves, tree has {}", e.leaves, t.leaf_count()));
        }
        issues.extend(structural_check(&t, p).violations);
    }
    Ok(EntryReport { index, key: e.key.clone(), issues })
}

pub fn validate_catalog(entries: &[CatalogEntry], p: &PolygonSpec) -> Result<Vec<EntryReport>, CatalogError> {
    entries.iter().enumerate().map(|(i, e)| validate_entry(i, e, p)).collect()
}
