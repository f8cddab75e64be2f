//! Bottleneck and Wasserstein distances between extended diagrams.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Float, Signed};


use crate::persistence::{ExtendedDiagram, PersistencePoint, PointClass};
use crate::value::{half, to_f64, Value};

/// A partial matching between the points of two diagrams, by index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

pub fn linf(x: &PersistencePoint, y: &PersistencePoint) -> Value {
    (x.birth - y.birth).abs().max((x.death - y.death).abs())
}

/// Cost of sending a point to the diagonal.
pub fn diag_cost(x: &PersistencePoint) -> Value {
    half((x.birth - x.death).abs())
}

/// Largest matched distance or half-persistence of an unmatched point.
pub fn matching_cost(a: &[PersistencePoint], b: &[PersistencePoint], m: &Matching) -> Value {
    let mut used_a = alloc::vec![false; a.len()];
    let mut used_b = alloc::vec![false; b.len()];
    let mut cost = Value::default();
    for &(i, j) in &m.pairs {
        used_a[i] = true;
        used_b[j] = true;
        cost = cost.max(linf(&a[i], &b[j]));
    }
    for (i, x) in a.iter().enumerate() {
        if !used_a[i] {
            cost = cost.max(diag_cost(x));
        }
    }
    for (j, y) in b.iter().enumerate() {
        if !used_b[j] {
            cost = cost.max(diag_cost(y));
        }
    }
    cost
}

/// Kuhn's augmenting-path matching on the diagonal-augmented graph:
/// left = `a` then one diagonal slot per `b` point, right = `b` then one
/// diagonal slot per `a` point.
fn feasible(a: &[PersistencePoint], b: &[PersistencePoint], t: Value) -> Option<Matching> {
    let (n1, n2) = (a.len(), b.len());
    let n = n1 + n2;
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for i in 0..n1 {
        for j in 0..n2 {
            if linf(&a[i], &b[j]) <= t {
                adj[i].push(j);
            }
        }
        if diag_cost(&a[i]) <= t {
            adj[i].push(n2 + i);
        }
    }
    for j in 0..n2 {
        if diag_cost(&b[j]) <= t {
            adj[n1 + j].push(j);
        }
        adj[n1 + j].extend(n2..n2 + n1);
    }
    let mut match_r = alloc::vec![usize::MAX; n];
    for l in 0..n {
        let mut seen = alloc::vec![false; n];
        if !augment(l, &adj, &mut match_r, &mut seen) {
            return None;
        }
    }
    let mut m = Matching::default();
    for j in 0..n2 {
        if match_r[j] < n1 {
            m.pairs.push((match_r[j], j));
        }
    }
    m.pairs.sort_unstable();
    Some(m)
}

fn augment(l: usize, adj: &[Vec<usize>], match_r: &mut [usize], seen: &mut [bool]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_r[r] == usize::MAX || augment(match_r[r], adj, match_r, seen) {
            match_r[r] = l;
            return true;
        }
    }
    false
}

/// Exact bottleneck distance between point sets (classes ignored), with an
/// optimal matching.
pub fn bottleneck_points(a: &[PersistencePoint], b: &[PersistencePoint]) -> (Value, Matching) {
    let mut cands: Vec<Value> = alloc::vec![Value::default()];
    for x in a {
        cands.push(diag_cost(x));
        for y in b {
            cands.push(linf(x, y));
        }
    }
    cands.extend(b.iter().map(diag_cost));
    cands.sort();
    cands.dedup();
    // smallest feasible candidate; the largest one is always feasible
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(a, b, cands[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let m = feasible(a, b, cands[lo]).expect("largest candidate is feasible");
    (cands[lo], m)
}

/// `d_b`: class labels ignored.
pub fn bottleneck_ungraded(d1: &ExtendedDiagram, d2: &ExtendedDiagram) -> Value {
    bottleneck_points(&d1.points, &d2.points).0
}

/// Bottleneck restricted to one class.
pub fn bottleneck_class(d1: &ExtendedDiagram, d2: &ExtendedDiagram, c: PointClass) -> Value {
    bottleneck_points(&d1.class(c), &d2.class(c)).0
}

/// `d_B`: the largest of the four classwise distances.
pub fn bottleneck_graded(d1: &ExtendedDiagram, d2: &ExtendedDiagram) -> Value {
    PointClass::ALL.iter().map(|&c| bottleneck_class(d1, d2, c)).max().unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub enum WassersteinError {
    DegreeBelowOne,
}

impl fmt::Display for WassersteinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Wasserstein degree must be at least 1")
    }
}

/// Square assignment problem, minimum total cost, by the shortest
/// augmenting path method with potentials. `None` entries are forbidden.
pub fn assignment<T>(cost: &[Vec<Option<T>>]) -> (T, Vec<usize>)
where
    T: Copy + PartialOrd + Default + core::ops::Add<Output = T> + core::ops::Sub<Output = T>,
{
    let n = cost.len();
    // a big-M stand-in for forbidden cells: one more than all finite costs
    let mut big = T::default();
    let mut any = false;
    for row in cost {
        for c in row.iter().flatten() {
            big = big + *c;
            any = true;
        }
    }
    let one_more = |x: T| if any { x + x } else { x };
    let big = one_more(big);
    let c = |i: usize, j: usize| cost[i][j].unwrap_or(big);
    let zero = T::default();
    let mut u = alloc::vec![zero; n + 1];
    let mut v = alloc::vec![zero; n + 1];
    let mut p = alloc::vec![0usize; n + 1];
    let mut way = alloc::vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<T>> = alloc::vec![None; n + 1];
        let mut used = alloc::vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                if minv[j].is_none_or(|m| cur < m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].unwrap();
                if delta.is_none_or(|d| mj < d) {
                    delta = Some(mj);
                    j1 = j;
                }
            }
            let delta = delta.unwrap_or(zero);
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]] + delta;
                    v[j] = v[j] - delta;
                } else if let Some(m) = minv[j] {
                    minv[j] = Some(m - delta);
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = alloc::vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    let mut total = zero;
    for (i, &j) in assign.iter().enumerate() {
        total = total + c(i, j);
    }
    (total, assign)
}

fn augmented<T: Copy>(
    a: &[PersistencePoint],
    b: &[PersistencePoint],
    f: impl Fn(Value) -> T,
    zero: T,
) -> Vec<Vec<Option<T>>> {
    let (n1, n2) = (a.len(), b.len());
    let mut m = alloc::vec![alloc::vec![None; n1 + n2]; n1 + n2];
    for i in 0..n1 {
        for j in 0..n2 {
            m[i][j] = Some(f(linf(&a[i], &b[j])));
        }
        m[i][n2 + i] = Some(f(diag_cost(&a[i])));
    }
    for j in 0..n2 {
        m[n1 + j][j] = Some(f(diag_cost(&b[j])));
        for i in 0..n1 {
            m[n1 + j][n2 + i] = Some(zero);
        }
    }
    m
}

/// Sum of `q`-th powers of an optimal diagonal-augmented assignment.
fn wq_sum(a: &[PersistencePoint], b: &[PersistencePoint], q: f64, scale: f64) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let m = augmented(a, b, |x| Float::powf(to_f64(x) / scale, q), 0.0);
    assignment(&m).0
}

/// Degree-`q` Wasserstein distance. Graded mode only pairs points of the
/// same class; the classwise sums of `q`-th powers are added.
pub fn wasserstein(d1: &ExtendedDiagram, d2: &ExtendedDiagram, q: f64, graded: bool) -> Result<f64, WassersteinError> {
    if q.is_nan() || q < 1.0 {
        return Err(WassersteinError::DegreeBelowOne);
    }
    // normalise by the largest coordinate gap so high powers stay finite
    let mut scale = 0.0f64;
    for x in d1.points.iter().chain(&d2.points) {
        for y in d1.points.iter().chain(&d2.points) {
            scale = scale.max(to_f64(linf(x, y)));
        }
        scale = scale.max(to_f64(diag_cost(x)));
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    let total = if graded {
        PointClass::ALL.iter().map(|&c| wq_sum(&d1.class(c), &d2.class(c), q, scale)).sum()
    } else {
        wq_sum(&d1.points, &d2.points, q, scale)
    };
    Ok(Float::powf(total, 1.0 / q) * scale)
}

/// Exact degree-1 Wasserstein distance.
pub fn wasserstein1_exact(d1: &ExtendedDiagram, d2: &ExtendedDiagram, graded: bool) -> Value {
    let run = |a: &[PersistencePoint], b: &[PersistencePoint]| {
        if a.is_empty() && b.is_empty() {
            return Value::default();
        }
        assignment(&augmented(a, b, |x| x, Value::default())).0
    };
    if graded {
        PointClass::ALL.iter().map(|&c| run(&d1.class(c), &d2.class(c))).sum()
    } else {
        run(&d1.points, &d2.points)
    }
}
