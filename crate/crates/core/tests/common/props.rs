//! Randomized properties, each run for `CASES` cases from the fixed seed.
//! Shared by the property tests and the acceptance report.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

use foldtree::angle::q_to_f64;
use foldtree::cone::{develop_faces, development_boundary, volcano_cut_tree, Frustum, SurfaceVertex};
use foldtree::enumerate::{enumerate_gluings, EnumerateOptions, Seed};
use foldtree::gluing::{check_aleksandrov, orbit_key, relabeled_key, GluingTree};
use foldtree::polygon::*;
use foldtree::Q;

use super::{config, hex_polygon_strategy, keys, q, staircase, CASES};

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(config(CASES));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn frustum_and_bits() -> impl Strategy<Value = (Frustum, Vec<bool>)> {
    (3usize..10, 2i128..5, 1i128..8, 1i128..6, any::<u64>()).prop_map(|(k, rb, rt, h, mask)| {
        // r_top = rt/8 of r_bottom, so r_bottom > r_top > 0
        let r_bottom = Q::from_integer(rb);
        let f = Frustum::new(k, r_bottom, r_bottom * q(rt, 8), q(h, 2)).unwrap();
        let bits = (0..k - 1).map(|i| mask >> i & 1 == 1).collect();
        (f, bits)
    })
}

fn d2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn d3(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn tri_area3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let (u, v) = ([b[0] - a[0], b[1] - a[1], b[2] - a[2]], [c[0] - a[0], c[1] - a[1], c[2] - a[2]]);
    let x = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// Every face image is congruent to the face, keeps its orientation, and
/// the images of faces joined by an uncut edge share that edge.
pub fn development_isometry() -> Result<(), String> {
    run(frustum_and_bits(), |(f, bits)| {
        let t = volcano_cut_tree(&f, &bits).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let images = develop_faces(&f, &t).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let tol = 1e-9 * q_to_f64(&f.r_bottom);
        let faces = f.faces();
        let mut placed: BTreeMap<SurfaceVertex, Vec<[f64; 2]>> = BTreeMap::new();
        for (vs, img) in faces.iter().zip(&images) {
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let (a, b) = (d2(img[i], img[j]), d3(f.point(vs[i]), f.point(vs[j])));
                    prop_assert!((a - b).abs() <= tol, "face distance {} vs {}", a, b);
                }
                placed.entry(vs[i]).or_default().push(img[i]);
            }
            let area2: f64 = (0..img.len())
                .map(|i| {
                    let (a, b) = (img[i], img[(i + 1) % img.len()]);
                    a[0] * b[1] - a[1] * b[0]
                })
                .sum();
            prop_assert!(area2 > 0.0, "face image reversed");
        }
        // a vertex appears as many times on the boundary as its cut degree,
        // so the number of distinct images is at most max(degree, 1)
        let deg = t.degrees(&f);
        for (v, pts) in &placed {
            let mut distinct: Vec<[f64; 2]> = Vec::new();
            for p in pts {
                if !distinct.iter().any(|d| d2(*d, *p) <= 1e3 * tol) {
                    distinct.push(*p);
                }
            }
            prop_assert!(distinct.len() <= deg.get(v).copied().unwrap_or(1).max(1), "{:?} placed {} times", v, distinct.len());
        }
        Ok(())
    })
}

/// The developed boundary has twice the cut length, and the development
/// has the surface area of the frustum.
pub fn boundary_twice_cut() -> Result<(), String> {
    run(frustum_and_bits(), |(f, bits)| {
        let t = volcano_cut_tree(&f, &bits).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let poly = development_boundary(&f, &t).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let scale = q_to_f64(&f.r_bottom);
        let (lhs, rhs) = (poly.perimeter(), 2.0 * t.cut_length(&f));
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale * t.edges.len() as f64, "{} vs {}", lhs, rhs);
        let surface: f64 = f
            .faces()
            .iter()
            .map(|vs| {
                let p: Vec<[f64; 3]> = vs.iter().map(|&v| f.point(v)).collect();
                (1..p.len() - 1).map(|i| tri_area3(p[0], p[i], p[i + 1])).sum::<f64>()
            })
            .sum();
        prop_assert!((poly.area() - surface).abs() <= 1e-8 * scale * scale, "area {} vs {}", poly.area(), surface);
        Ok(())
    })
}

struct Catalog {
    polygon: PolygonSpec,
    group: SymmetryGroup,
    trees: Vec<GluingTree>,
    by_key: BTreeMap<String, usize>,
}

fn catalogs() -> &'static Vec<Catalog> {
    static C: OnceLock<Vec<Catalog>> = OnceLock::new();
    C.get_or_init(|| {
        [
            equilateral_triangle(),
            unit_square(),
            rectangle(q(2, 1), q(1, 1)).unwrap(),
            regular_ngon(5).unwrap(),
            regular_ngon(6).unwrap(),
            latin_cross(),
        ]
        .into_iter()
        .map(|polygon| {
            let trees = enumerate_gluings(&polygon, &EnumerateOptions::default()).trees;
            let by_key = trees.iter().enumerate().map(|(i, t)| (t.canonical_key().0, i)).collect();
            Catalog { group: symmetry_group(&polygon), polygon, trees, by_key }
        })
        .collect()
    })
}

/// Relabeling by a boundary symmetry maps the catalog onto itself,
/// composes like the group, preserves orbit keys and validity.
pub fn relabeling_congruence() -> Result<(), String> {
    let cats = catalogs();
    let pick = (0..cats.len(), any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>());
    run(pick, |(c, ti, si, ri)| {
        let cat = &cats[c];
        let n = cat.polygon.n();
        let t = &cat.trees[ti.index(cat.trees.len())];
        let s = cat.group.elements[si.index(cat.group.order())];
        let r = cat.group.elements[ri.index(cat.group.order())];
        let image = relabeled_key(t, &s).0;
        let u = match cat.by_key.get(&image) {
            Some(&i) => &cat.trees[i],
            None => return Err(TestCaseError::fail(format!("image {image} not in the catalog"))),
        };
        prop_assert_eq!(relabeled_key(u, &r), relabeled_key(t, &r.compose(&s, n)));
        prop_assert_eq!(relabeled_key(u, &s.inverse(n)), t.canonical_key());
        prop_assert_eq!(orbit_key(u, &cat.group), orbit_key(t, &cat.group));
        prop_assert!(check_aleksandrov(u, &cat.polygon).unwrap().valid);
        Ok(())
    })
}

fn seed_polygon() -> impl Strategy<Value = PolygonSpec> {
    prop_oneof![
        Just(equilateral_triangle()),
        Just(unit_square()),
        Just(rectangle(q(2, 1), q(1, 1)).unwrap()),
        Just(regular_ngon(5).unwrap()),
        hex_polygon_strategy(),
        prop::collection::vec(1i128..4, 2..4).prop_filter_map("staircase", |h| staircase(&h)),
    ]
}

/// A seed set containing any vertex seed reaches every gluing; fold seeds
/// alone reach exactly the gluings with a fold leaf on their edges. Either
/// way the deduplicated set does not depend on which other seeds are added.
pub fn seed_independence() -> Result<(), String> {
    let strategy = seed_polygon().prop_flat_map(|p| {
        let n = p.n();
        (Just(p), prop::collection::vec(any::<bool>(), 2 * n).prop_filter("nonempty", |m| m.iter().any(|&b| b)))
    });
    run(strategy, |(p, mask)| {
        let n = p.n();
        let seeds: Vec<Seed> = (0..2 * n)
            .filter(|&i| mask[i])
            .map(|i| if i < n { Seed::Vertex(i) } else { Seed::FoldPoint(i - n) })
            .collect();
        let base = enumerate_gluings(&p, &EnumerateOptions::default());
        let got = keys(&enumerate_gluings(&p, &EnumerateOptions { seeds: Some(seeds.clone()), ..Default::default() }).trees);
        let expect: BTreeSet<String> = if seeds.iter().any(|s| matches!(s, Seed::Vertex(_))) {
            keys(&base.trees)
        } else {
            let edges: BTreeSet<usize> = seeds.iter().map(|s| if let Seed::FoldPoint(j) = s { *j } else { unreachable!() }).collect();
            base.trees
                .iter()
                .filter(|t| t.fold_leaves().iter().any(|&l| edges.contains(&t.nodes[l].points[0].edge)))
                .map(|t| t.canonical_key().0)
                .collect()
        };
        prop_assert_eq!(got, expect);
        Ok(())
    })
}
