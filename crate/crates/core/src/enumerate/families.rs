//! Gluings built directly rather than searched for.

use num_traits::{One, Zero};

use crate::gluing::{check_aleksandrov, BoundaryPoint, GluingTree, Seam};
use crate::param::{Affine, Constraint, ParamRegion};
use crate::polygon::{m_star, rectangle, PolygonError, PolygonSpec};
use crate::Q;

/// Boundary point at perimeter position `z` (reduced mod the perimeter).
fn point_at(p: &PolygonSpec, z: Q) -> BoundaryPoint {
    let l = p.perimeter();
    let mut z = z % l;
    if z < Q::zero() {
        z += l;
    }
    let mut start = Q::zero();
    for e in 0..p.n() {
        let end = start + p.length(e);
        if z == start {
            return BoundaryPoint::vertex(e);
        }
        if z < end {
            return BoundaryPoint::interior(e, Affine::constant(z - start));
        }
        start = end;
    }
    BoundaryPoint::vertex(0)
}

/// Build a parameter-free gluing tree from seams given by perimeter
/// positions `[a, b, c, d]`: `[a, b]` glued in reverse to `[c, d]`.
/// Nodes are the classes of seam endpoints that are vertices, branch points
/// or leaves.
pub fn tree_from_concrete_seams(p: &PolygonSpec, seams: &[[Q; 4]]) -> GluingTree {
    let l = p.perimeter();
    let norm = |z: Q| {
        let r = z % l;
        if r < Q::zero() {
            r + l
        } else {
            r
        }
    };
    let mut pos: Vec<Q> = Vec::new();
    let id_of = |z: Q, pos: &mut Vec<Q>| -> usize {
        let z = norm(z);
        match pos.iter().position(|&w| w == z) {
            Some(i) => i,
            None => {
                pos.push(z);
                pos.len() - 1
            }
        }
    };
    let ends: Vec<[usize; 4]> = seams.iter().map(|s| s.map(|z| id_of(z, &mut pos))).collect();
    let mut parent: Vec<usize> = (0..pos.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for e in &ends {
        for (x, y) in [(e[0], e[3]), (e[1], e[2])] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
    }
    let mut class_ids: Vec<usize> = Vec::new();
    let mut node_of_point = vec![0; pos.len()];
    for i in 0..pos.len() {
        let r = find(&mut parent, i);
        let k = match class_ids.iter().position(|&c| c == r) {
            Some(k) => k,
            None => {
                class_ids.push(r);
                class_ids.len() - 1
            }
        };
        node_of_point[i] = k;
    }
    let mut nodes: Vec<Vec<(Q, BoundaryPoint)>> = vec![Vec::new(); class_ids.len()];
    for (i, &z) in pos.iter().enumerate() {
        nodes[node_of_point[i]].push((z, point_at(p, z)));
    }
    let node_points: Vec<Vec<BoundaryPoint>> = nodes
        .into_iter()
        .map(|mut v| {
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v.into_iter().map(|(_, bp)| bp).collect()
        })
        .collect();
    let arcs = ends.iter().map(|e| (node_of_point[e[0]], node_of_point[e[1]])).collect();
    let seam_list = seams
        .iter()
        .map(|s| Seam { first: [point_at(p, s[0]), point_at(p, s[1])], second: [point_at(p, s[2]), point_at(p, s[3])] })
        .collect();
    GluingTree::assemble(p, node_points, arcs, seam_list, ParamRegion::new(0)).expect("an empty region is feasible")
}

/// Seams that glue a closed curve to itself by perimeter halving. The
/// curve is the concatenation of `pieces` (actual boundary intervals) and is
/// folded in half starting from the start of the first piece.
fn halving_seams(p: &PolygonSpec, pieces: &[(Q, Q)]) -> Vec<[Q; 4]> {
    // reduced coordinate of each piece start
    let mut starts = Vec::with_capacity(pieces.len());
    let mut total = Q::zero();
    for &(s, e) in pieces {
        starts.push(total);
        total += e - s;
    }
    let half = total / Q::from_integer(2);
    let mut marks = vec![Q::zero(), half];
    for (k, &(s, e)) in pieces.iter().enumerate() {
        for v in 0..p.n() {
            let mut z = p.vertex_offset(v);
            // vertices may sit past the wrap point of a piece
            while z < s {
                z += p.perimeter();
            }
            if z <= e {
                let r = starts[k] + (z - s);
                marks.push(r);
            }
        }
        marks.push(starts[k]);
    }
    let mut folded: Vec<Q> = marks.into_iter().map(|r| if r > half { total - r } else { r }).collect();
    folded.sort();
    folded.dedup();
    let actual = |r: Q, at_end: bool| -> Q {
        // an interval ending at a piece boundary ends in the earlier piece
        let k = if at_end {
            starts.iter().rposition(|&s| s < r).unwrap_or(0)
        } else {
            starts.iter().rposition(|&s| s <= r).unwrap_or(0)
        };
        pieces[k].0 + (r - starts[k])
    };
    folded
        .windows(2)
        .map(|w| {
            let (u0, u1) = (w[0], w[1]);
            [actual(u0, false), actual(u1, true), actual(total - u1, false), actual(total - u0, true)]
        })
        .collect()
}

/// Glue the boundary to itself by folding it in half at perimeter position
/// `x`: the points `x + s` and `x − s` are identified.
pub fn perimeter_halving(p: &PolygonSpec, x: Q) -> GluingTree {
    let l = p.perimeter();
    let mut x = x % l;
    if x < Q::zero() {
        x += l;
    }
    tree_from_concrete_seams(p, &halving_seams(p, &[(x, x + l)]))
}

fn bits_of(word: &str, len: usize, what: &str) -> Result<Vec<bool>, PolygonError> {
    if word.len() != len || !word.chars().all(|c| c == '0' || c == '1') {
        return Err(PolygonError::BadParameter(format!("{what} needs {len} binary digits, got {word:?}")));
    }
    Ok(word.chars().map(|c| c == '1').collect())
}

/// One member of the contraction family on the m-star. Digit `j` of each
/// word contracts the `j`-th reflex vertex of that chain, counted from the
/// marked point: its two unit edges are folded onto each other. The rest of
/// the boundary is then halved from `x`. Returns `Ok(None)` when the result
/// violates the angle condition.
pub fn star_contraction_family(m: usize, top: &str, bottom: &str) -> Result<Option<GluingTree>, PolygonError> {
    let p = m_star(m)?;
    let top = bits_of(top, m / 2, "top word")?;
    let bottom = bits_of(bottom, m / 2, "bottom word")?;
    if top[0] || bottom[0] {
        return Err(PolygonError::BadParameter("vertices next to x or y cannot be contracted".into()));
    }
    let mut centers: Vec<Q> = Vec::new();
    for (j, &b) in top.iter().enumerate() {
        if b {
            centers.push(p.vertex_offset(1 + 2 * j));
        }
    }
    for (j, &b) in bottom.iter().enumerate() {
        if b {
            centers.push(p.vertex_offset(m + 2 + 2 * j));
        }
    }
    let one = Q::one();
    let mut seams: Vec<[Q; 4]> = centers.iter().map(|&q| [q - one, q, q, q + one]).collect();
    // what survives, as pieces starting from x = 0
    let mut pieces = Vec::new();
    let mut cur = Q::zero();
    for &q in &centers {
        if q - one > cur {
            pieces.push((cur, q - one));
        }
        cur = q + one;
    }
    pieces.push((cur, p.perimeter()));
    seams.extend(halving_seams(&p, &pieces));
    let t = tree_from_concrete_seams(&p, &seams);
    let report = check_aleksandrov(&t, &p).expect("constructed seams are consistent");
    Ok(report.valid.then_some(t))
}

/// The continuous family of gluings of an `a × b` rectangle into a doubly
/// covered tube with two caps, at position `t ∈ [0, a + b]`. On `(0, a)` the
/// sides `e2`, `e4` are glued into a tube and `e1`, `e3` each fold around a
/// point at offset `t`; on `(a, a + b)` the roles swap. The endpoints give
/// perimeter halvings.
pub fn fold_rectangle_family(a: Q, b: Q, t: Q) -> Result<GluingTree, PolygonError> {
    let p = rectangle(a, b)?;
    if t < Q::zero() || t > a + b {
        return Err(PolygonError::BadParameter(format!("t = {t} outside [0, {}]", a + b)));
    }
    let two = Q::from_integer(2);
    if t.is_zero() || t == a {
        return Ok(perimeter_halving(&p, a / two));
    }
    if t == a + b {
        return Ok(perimeter_halving(&p, a + b / two));
    }
    // (first folded edge, its length, offset along it)
    let (e, len, s) = if t < a { (0, a, t) } else { (1, b, t - a) };
    let f = e + 2;
    let (t1, t2) = (Affine::param(0), Affine::param(1));
    let mut region = ParamRegion::new(2);
    for v in [&t1, &t2] {
        region.push(Constraint::positive(v.clone()));
        region.push(Constraint::positive(Affine::constant(len).sub(v)));
    }
    let vx = BoundaryPoint::vertex;
    let pt = |edge: usize, off: Affine| BoundaryPoint::interior(edge, off);
    let half = Q::one() / two;
    let fold_lo = |v: &Affine| v.scale(half);
    let fold_hi = |v: &Affine| v.add_const(len).scale(half);
    let nodes = vec![
        vec![vx(e), pt(e, t1.clone()), vx(e + 1)],
        vec![vx(f), pt(f, t2.clone()), vx((f + 1) % 4)],
        vec![pt(e, fold_lo(&t1))],
        vec![pt(e, fold_hi(&t1))],
        vec![pt(f, fold_lo(&t2))],
        vec![pt(f, fold_hi(&t2))],
    ];
    let seam = |a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint, d: BoundaryPoint| Seam {
        first: [a, b],
        second: [c, d],
    };
    let seams = vec![
        seam(vx(e + 1), vx(f), vx((f + 1) % 4), vx(e)),
        seam(vx(e), pt(e, fold_lo(&t1)), pt(e, fold_lo(&t1)), pt(e, t1.clone())),
        seam(pt(e, t1.clone()), pt(e, fold_hi(&t1)), pt(e, fold_hi(&t1)), vx(e + 1)),
        seam(vx(f), pt(f, fold_lo(&t2)), pt(f, fold_lo(&t2)), pt(f, t2.clone())),
        seam(pt(f, t2.clone()), pt(f, fold_hi(&t2)), pt(f, fold_hi(&t2)), vx((f + 1) % 4)),
    ];
    let arcs = vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)];
    let mut tree = GluingTree::assemble(&p, nodes, arcs, seams, region).expect("the family region is a box");
    // the central image of the fold point on e1 sits at the same offset on e3
    tree.representative = vec![s, s];
    Ok(tree)
}
