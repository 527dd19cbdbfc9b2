//! Affine expressions over belt parameters and the feasible regions they live in.
//!
//! Regions are open (or half-open) convex polyhedra described by linear
//! inequalities with rational coefficients. Feasibility and bounds are
//! decided by Fourier-Motzkin elimination, which is exact and entirely
//! adequate for the one- or two-parameter families a gluing can have.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Q;

/// `constant + Σ coef[i]·t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: Q,
    pub coef: Vec<Q>,
}

impl Affine {
    pub fn constant(c: Q) -> Self {
        Affine { constant: c, coef: Vec::new() }
    }

    pub fn zero() -> Self {
        Affine::constant(Q::zero())
    }

    /// The bare parameter `t_index`.
    pub fn param(index: usize) -> Self {
        let mut coef = vec![Q::zero(); index + 1];
        coef[index] = Q::one();
        Affine { constant: Q::zero(), coef }
    }

    pub fn coefficient(&self, i: usize) -> Q {
        self.coef.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coef.iter().all(Zero::is_zero)
    }

    /// Constant value, if the expression does not depend on any parameter.
    pub fn as_constant(&self) -> Option<Q> {
        self.is_constant().then(|| self.constant)
    }

    pub fn dims(&self) -> usize {
        self.coef.len()
    }

    fn trimmed(mut self) -> Self {
        while self.coef.last().is_some_and(Zero::is_zero) {
            self.coef.pop();
        }
        self
    }

    pub fn add(&self, other: &Affine) -> Affine {
        let n = self.coef.len().max(other.coef.len());
        let coef = (0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect();
        Affine { constant: self.constant + other.constant, coef }.trimmed()
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        self.add(&other.scale(-Q::one()))
    }

    pub fn add_const(&self, c: Q) -> Affine {
        Affine { constant: self.constant + c, coef: self.coef.clone() }
    }

    pub fn scale(&self, k: Q) -> Affine {
        Affine {
            constant: self.constant * k,
            coef: self.coef.iter().map(|c| *c * k).collect(),
        }
        .trimmed()
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.coef
            .iter()
            .enumerate()
            .fold(self.constant, |acc, (i, c)| acc + *c * point.get(i).cloned().unwrap_or_else(Q::zero))
    }

    /// Replace `t_var` by `expr` (which must not mention `t_var`).
    pub fn substitute(&self, var: usize, expr: &Affine) -> Affine {
        let k = self.coefficient(var);
        if k.is_zero() {
            return self.clone();
        }
        let mut base = self.clone();
        base.coef[var] = Q::zero();
        base.add(&expr.scale(k))
    }

    /// Parameters with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coef.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    /// Renumber parameters: `map[old] = Some(new)`.
    pub fn remap(&self, map: &[Option<usize>]) -> Affine {
        let mut coef = Vec::new();
        for (i, c) in self.coef.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = map[i].expect("remap drops a live parameter");
            if coef.len() <= j {
                coef.resize(j + 1, Q::zero());
            }
            coef[j] = *c;
        }
        Affine { constant: self.constant, coef }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (i, c) in self.coef.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, " - {}·t{}", -*c, i + 1)?;
            } else {
                write!(f, " + {}·t{}", c, i + 1)?;
            }
        }
        Ok(())
    }
}

/// `expr > 0` (strict) or `expr >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub expr: Affine,
    pub strict: bool,
}

impl Constraint {
    pub fn positive(expr: Affine) -> Self {
        Constraint { expr, strict: true }
    }

    pub fn nonnegative(expr: Affine) -> Self {
        Constraint { expr, strict: false }
    }
}

/// Feasible parameter set of a gluing family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamRegion {
    pub params: usize,
    pub constraints: Vec<Constraint>,
}

/// Integer row `a·x + c (>|>=) 0` used inside elimination.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Row {
    a: Vec<i128>,
    c: i128,
    strict: bool,
}

impl Row {
    fn from_constraint(con: &Constraint, dims: usize) -> Row {
        let mut den = *con.expr.constant.denom();
        for i in 0..dims {
            den = den.lcm(con.expr.coefficient(i).denom());
        }
        let scale = |q: Q| -> i128 { *(q * Q::from_integer(den)).numer() };
        let mut row = Row {
            a: (0..dims).map(|i| scale(con.expr.coefficient(i))).collect(),
            c: scale(con.expr.constant),
            strict: con.strict,
        };
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        let g = self.a.iter().fold(self.c.abs(), |g, x| g.gcd(x));
        if g > 1 {
            for x in &mut self.a {
                *x /= g;
            }
            self.c /= g;
        }
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(|x| *x == 0)
    }

    fn trivially_holds(&self) -> bool {
        if self.strict {
            self.c > 0
        } else {
            self.c >= 0
        }
    }
}

/// Eliminate variable `k` from the system.
fn eliminate(rows: &[Row], k: usize) -> Vec<Row> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for r in rows {
        match r.a[k].cmp(&0) {
            Ordering::Greater => pos.push(r),
            Ordering::Less => neg.push(r),
            Ordering::Equal => out.push(r.clone()),
        }
    }
    for p in &pos {
        for q in &neg {
            let (mp, mq) = (-q.a[k], p.a[k]);
            let mut row = Row {
                a: p.a.iter().zip(&q.a).map(|(x, y)| x * mp + y * mq).collect(),
                c: p.c * mp + q.c * mq,
                strict: p.strict || q.strict,
            };
            row.a[k] = 0;
            row.normalize();
            out.push(row);
        }
    }
    dedup_rows(out)
}

fn dedup_rows(mut rows: Vec<Row>) -> Vec<Row> {
    rows.retain(|r| !(r.is_trivial() && r.trivially_holds()));
    rows.sort_by(|x, y| (&x.a, x.c, x.strict).cmp(&(&y.a, y.c, y.strict)));
    rows.dedup();
    // Among parallel rows keep only the tightest.
    let mut kept: Vec<Row> = Vec::with_capacity(rows.len());
    for r in rows {
        if let Some(last) = kept.last_mut() {
            if last.a == r.a && !r.is_trivial() {
                // same normal: smaller constant is tighter; on ties strict wins
                if r.c < last.c || (r.c == last.c && r.strict) {
                    *last = r;
                }
                continue;
            }
        }
        kept.push(r);
    }
    kept
}

fn rows_consistent(rows: &[Row]) -> bool {
    rows.iter().all(|r| !r.is_trivial() || r.trivially_holds())
}

/// Bounds `(lower, lower_strict, upper, upper_strict)` on variable `k` implied
/// by rows that only involve variables already fixed to `fixed`.
fn var_bounds(rows: &[Row], k: usize, fixed: &[Q]) -> (Option<(Q, bool)>, Option<(Q, bool)>) {
    let mut lo: Option<(Q, bool)> = None;
    let mut hi: Option<(Q, bool)> = None;
    for r in rows {
        if r.a[k] == 0 {
            continue;
        }
        let mut rest = Q::from_integer(r.c);
        for (i, v) in fixed.iter().enumerate() {
            rest += Q::from_integer(r.a[i]) * *v;
        }
        let bound = -rest / Q::from_integer(r.a[k]);
        if r.a[k] > 0 {
            // x > bound
            let better = match &lo {
                None => true,
                Some((b, s)) => bound > *b || (bound == *b && r.strict && !*s),
            };
            if better {
                lo = Some((bound, r.strict));
            }
        } else {
            let better = match &hi {
                None => true,
                Some((b, s)) => bound < *b || (bound == *b && r.strict && !*s),
            };
            if better {
                hi = Some((bound, r.strict));
            }
        }
    }
    (lo, hi)
}

impl ParamRegion {
    pub fn new(params: usize) -> Self {
        ParamRegion { params, constraints: Vec::new() }
    }

    pub fn push(&mut self, c: Constraint) {
        if c.expr.dims() > self.params {
            self.params = c.expr.dims();
        }
        self.constraints.push(c);
    }

    fn rows(&self) -> Vec<Row> {
        self.constraints.iter().map(|c| Row::from_constraint(c, self.params)).collect()
    }

    /// Elimination stages: `stages[k]` mentions only variables `0..k`.
    fn stages(&self) -> Vec<Vec<Row>> {
        let mut stages = vec![Vec::new(); self.params + 1];
        let mut rows = dedup_rows(self.rows());
        for k in (0..self.params).rev() {
            stages[k + 1] = rows.clone();
            rows = eliminate(&rows, k);
        }
        stages[0] = rows;
        stages
    }

    pub fn is_feasible(&self) -> bool {
        let mut rows = dedup_rows(self.rows());
        if !rows_consistent(&rows) {
            return false;
        }
        for k in (0..self.params).rev() {
            rows = eliminate(&rows, k);
            if !rows_consistent(&rows) {
                return false;
            }
        }
        true
    }

    /// A rational point satisfying every constraint, chosen as the midpoint of
    /// each successive one-dimensional slice.
    pub fn representative(&self) -> Option<Vec<Q>> {
        let stages = self.stages();
        if !rows_consistent(&stages[0]) {
            return None;
        }
        let mut point: Vec<Q> = Vec::with_capacity(self.params);
        for k in 0..self.params {
            let (lo, hi) = var_bounds(&stages[k + 1], k, &point);
            let two = Q::from_integer(2);
            let v = match (lo, hi) {
                (Some((l, ls)), Some((h, hs))) => {
                    if l > h || (l == h && (ls || hs)) {
                        return None;
                    }
                    (l + h) / two
                }
                (Some((l, _)), None) => l + Q::one(),
                (None, Some((h, _))) => h - Q::one(),
                (None, None) => Q::zero(),
            };
            point.push(v);
        }
        self.contains(&point).then_some(point)
    }

    pub fn contains(&self, point: &[Q]) -> bool {
        self.constraints.iter().all(|c| {
            let v = c.expr.eval(point);
            if c.strict {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        })
    }

    /// Infimum and supremum of `expr` over the region (`None` = unbounded).
    pub fn bounds(&self, expr: &Affine) -> (Option<Q>, Option<Q>) {
        // z = expr as an extra leading variable, then eliminate the rest
        let d = self.params;
        let shift = |e: &Affine| -> Affine {
            let mut coef = vec![Q::zero()];
            coef.extend((0..d).map(|i| e.coefficient(i)));
            Affine { constant: e.constant, coef }
        };
        let mut ext = ParamRegion::new(d + 1);
        for c in &self.constraints {
            ext.push(Constraint { expr: shift(&c.expr), strict: c.strict });
        }
        let z = Affine::param(0);
        let diff = z.sub(&shift(expr));
        ext.push(Constraint::nonnegative(diff.clone()));
        ext.push(Constraint::nonnegative(diff.scale(-Q::one())));
        let stages = ext.stages();
        let (lo, hi) = var_bounds(&stages[1], 0, &[]);
        (lo.map(|x| x.0), hi.map(|x| x.0))
    }

    /// Substitute `t_var := expr` into every constraint.
    pub fn substitute(&mut self, var: usize, expr: &Affine) {
        for c in &mut self.constraints {
            c.expr = c.expr.substitute(var, expr);
        }
    }

    /// Drop constraints without parameters that hold, and duplicates.
    pub fn simplify(&mut self) {
        self.constraints.retain(|c| {
            !(c.expr.is_constant() && {
                let v = c.expr.constant;
                if c.strict {
                    v.is_positive()
                } else {
                    !v.is_negative()
                }
            })
        });
        let mut seen = std::collections::HashSet::new();
        self.constraints.retain(|c| seen.insert(c.clone()));
    }

    pub fn remap(&self, map: &[Option<usize>], params: usize) -> ParamRegion {
        ParamRegion {
            params,
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint { expr: c.expr.remap(map), strict: c.strict })
                .collect(),
        }
    }
}

/// Solve `expr = 0` for one parameter: returns `(var, value)` with `value`
/// free of `var`. `None` when `expr` is constant.
pub fn solve_for_param(expr: &Affine) -> Option<(usize, Affine)> {
    let var = expr.support().last()?;
    let k = expr.coefficient(var);
    let mut rest = expr.clone();
    rest.coef[var] = Q::zero();
    Some((var, rest.scale(-Q::one() / k)))
}
