//! Every proven inequality between the distances, checked at bracket
//! resolution on a pair of Reeb graphs, plus the component-matching
//! convention for disconnected graphs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::edit::{edit_search, universal_bounds_with, EditError, ZigzagCertificate, ZigzagError};
use crate::fdd::{fdd_bounds_with, FddError, MapCertificate};
use crate::field::{linf_distance, FieldError, ScalarField};
use crate::graph::ReebGraph;
use crate::interleaving::{default_tol, interleaving_distance, truncated_interleaving_distance, InterleaveError, DEFAULT_BUDGET};
use crate::metrics::{bottleneck_graded, bottleneck_ungraded};
use crate::persistence::{extended_diagram, DiagramError};
use crate::value::{format_value, frac, int, Bracket, Ext, Value};

/// One pair to compare, with whatever certificates are at hand.
#[derive(Clone, Debug, Default)]
pub struct PairInput {
    pub name: String,
    pub a: ReebGraph,
    pub b: ReebGraph,
    /// Both fields on one complex; enables the stability rows.
    pub fields: Option<(ScalarField, ScalarField)>,
    pub fdd_certificates: Vec<MapCertificate>,
    pub zigzags: Vec<ZigzagCertificate>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub tol: Value,
    pub budget: u64,
    /// Truncation slopes `m` for `d_I^m`.
    pub truncations: Vec<Value>,
    /// Node budget of the edit search; zero skips `d_E`.
    pub edit_budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: default_tol(),
            budget: DEFAULT_BUDGET,
            truncations: alloc::vec![frac(1, 4), frac(1, 2)],
            edit_budget: 50_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances {
    pub ungraded: Value,
    pub graded: Value,
    pub interleaving: Bracket,
    /// `(m, d_I^m)` in increasing `m`.
    pub truncated: Vec<(Value, Bracket)>,
    pub fdd: Bracket,
    /// `None` where `d_E` is undefined or was skipped.
    pub edit: Option<Bracket>,
    pub universal: Bracket,
    pub linf: Option<Value>,
    /// Both graphs are loop-free, so the contour-tree bounds apply.
    pub trees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
    /// The brackets overlap; neither confirmed nor refuted.
    Indeterminate,
}

/// `lhs <= factor · rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub relation: String,
    pub lhs: Bracket,
    pub factor: Value,
    pub rhs: Bracket,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub name: String,
    pub distances: Distances,
    pub checks: Vec<Check>,
}

impl DistanceReport {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Violated)
    }

    pub fn indeterminate(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Indeterminate)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LandscapeError {
    Diagram(DiagramError),
    Interleave(InterleaveError),
    Fdd(FddError),
    Zigzag(ZigzagError),
    Field(FieldError),
}

impl fmt::Display for LandscapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LandscapeError::Diagram(e) => write!(f, "{}", e),
            LandscapeError::Interleave(e) => write!(f, "{}", e),
            LandscapeError::Fdd(e) => write!(f, "{}", e),
            LandscapeError::Zigzag(e) => write!(f, "{}", e),
            LandscapeError::Field(e) => write!(f, "{}", e),
        }
    }
}

/// Bracket comparison: a violation needs `lhs.lo > factor · rhs.hi`, a
/// confirmation needs `lhs.hi <= factor · rhs.lo`.
pub fn compare(lhs: Bracket, factor: Value, rhs: Bracket) -> Outcome {
    if lhs.lo > rhs.hi.scale(factor) {
        Outcome::Violated
    } else if lhs.hi <= rhs.lo.scale(factor) {
        Outcome::Holds
    } else {
        Outcome::Indeterminate
    }
}

/// Computes every distance the pair supports.
pub fn measure(input: &PairInput, opts: &Options) -> Result<Distances, LandscapeError> {
    let (a, b) = (&input.a, &input.b);
    let da = extended_diagram(a).map_err(LandscapeError::Diagram)?;
    let db = extended_diagram(b).map_err(LandscapeError::Diagram)?;
    let interleaving = interleaving_distance(a, b, opts.tol, opts.budget).map_err(LandscapeError::Interleave)?.bracket;
    let mut ms = opts.truncations.clone();
    ms.sort();
    ms.dedup();
    let mut truncated = Vec::new();
    for m in ms {
        if m == Value::default() {
            continue;
        }
        let t = truncated_interleaving_distance(a, b, m, opts.tol, opts.budget).map_err(LandscapeError::Interleave)?;
        truncated.push((m, t.bracket));
    }
    let fdd = fdd_bounds_with(a, b, &input.fdd_certificates, interleaving).map_err(LandscapeError::Fdd)?.bracket;
    let search = if opts.edit_budget == 0 {
        None
    } else {
        match edit_search(a, b, opts.edit_budget) {
            Ok(r) => Some(r),
            Err(EditError::Undefined { .. } | EditError::NotGeneric | EditError::Step { .. }) => None,
        }
    };
    let universal = universal_bounds_with(a, b, &input.zigzags, fdd.lo, search.as_ref())
        .map_err(LandscapeError::Zigzag)?
        .bracket;
    let linf = match &input.fields {
        Some((f, g)) => Some(linf_distance(f, g).map_err(LandscapeError::Field)?),
        None => None,
    };
    Ok(Distances {
        ungraded: bottleneck_ungraded(&da, &db),
        graded: bottleneck_graded(&da, &db),
        interleaving,
        truncated,
        fdd,
        edit: search.map(|r| r.bracket),
        universal,
        linf,
        trees: a.betti1() == 0 && b.betti1() == 0,
    })
}

fn label(name: &str, factor: Value) -> String {
    if factor == int(1) {
        String::from(name)
    } else {
        format!("{}*{}", format_value(factor), name)
    }
}

/// Evaluates every applicable relation. Pure: violations are data.
pub fn validate(name: &str, d: Distances) -> DistanceReport {
    let mut checks = Vec::new();
    let mut push = |l: (&str, Bracket), factor: Value, r: (&str, Bracket)| {
        checks.push(Check {
            relation: format!("{} <= {}", l.0, label(r.0, factor)),
            lhs: l.1,
            factor,
            rhs: r.1,
            outcome: compare(l.1, factor, r.1),
        });
    };
    let one = int(1);
    let db = ("d_b", Bracket::exact(d.ungraded));
    let dbg = ("d_B", Bracket::exact(d.graded));
    let di = ("d_I", d.interleaving);
    let dfd = ("d_FD", d.fdd);
    let de = ("delta_E", d.universal);

    push(db, one, dbg);
    push(db, int(2), di);
    push(dbg, int(9), di);
    push(di, one, dfd);
    push(dfd, int(3), di);
    push(dbg, int(3), dfd);
    for l in [db, dbg, di, dfd] {
        push(l, one, de);
    }
    if let Some(e) = d.edit {
        let e = ("d_E", e);
        push(dbg, one, e);
        push(di, one, e);
        push(dfd, one, e);
    }
    if d.trees {
        push(dbg, one, dfd);
        push(dbg, int(3), di);
    }

    let names: Vec<String> = d.truncated.iter().map(|(m, _)| format!("d_I^{}", format_value(*m))).collect();
    let mut chain: Vec<(Value, &str, Bracket)> = alloc::vec![(Value::default(), "d_I", d.interleaving)];
    for ((m, t), n) in d.truncated.iter().zip(&names) {
        let k = one / (one - *m);
        push(dbg, int(9) * k, (n, *t));
        push(db, int(2) * k, (n, *t));
        if d.trees {
            push(dbg, int(3) * k, (n, *t));
        }
        chain.push((*m, n, *t));
    }
    for (i, &(mi, ni, ti)) in chain.iter().enumerate() {
        for &(mj, nj, tj) in &chain[i + 1..] {
            push((ni, ti), one, (nj, tj));
            push((nj, tj), (one - mi) / (one - mj), (ni, ti));
        }
    }

    if let Some(n) = d.linf {
        let norm = ("|f-g|", Bracket::exact(n));
        for l in [db, dbg, di, dfd, de] {
            push(l, one, norm);
        }
        for ((m, t), name) in d.truncated.iter().zip(&names) {
            push((name, *t), one / (one - *m), norm);
        }
    }
    DistanceReport { name: String::from(name), distances: d, checks }
}

pub fn run(input: &PairInput, opts: &Options) -> Result<DistanceReport, LandscapeError> {
    Ok(validate(&input.name, measure(input, opts)?))
}

/// Min over component bijections of the max per-pair distance. Counts
/// that differ give `+∞`. Brackets combine endpoint-wise, which keeps them
/// valid: the optimum lies between the optima of the endpoint matrices.
pub fn component_convention<E>(
    a: &ReebGraph,
    b: &ReebGraph,
    mut metric: impl FnMut(&ReebGraph, &ReebGraph) -> Result<Bracket, E>,
) -> Result<Bracket, E> {
    let (ca, cb) = (a.component_subgraphs(), b.component_subgraphs());
    if ca.len() != cb.len() {
        return Ok(Bracket::infinite());
    }
    if ca.len() <= 1 {
        return metric(a, b);
    }
    let mut lo = Vec::with_capacity(ca.len());
    let mut hi = Vec::with_capacity(ca.len());
    for x in &ca {
        let (mut rl, mut rh) = (Vec::new(), Vec::new());
        for y in &cb {
            let d = metric(x, y)?;
            rl.push(d.lo);
            rh.push(d.hi);
        }
        lo.push(rl);
        hi.push(rh);
    }
    Ok(Bracket { lo: bottleneck_assignment(&lo), hi: bottleneck_assignment(&hi) })
}

/// Smallest `t` admitting a perfect matching of a square matrix using
/// entries `<= t`.
pub fn bottleneck_assignment(cost: &[Vec<Ext>]) -> Ext {
    let n = cost.len();
    if n == 0 {
        return Ext::Finite(Value::default());
    }
    let mut cands: Vec<Ext> = cost.iter().flatten().copied().collect();
    cands.sort();
    cands.dedup();
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect(cost, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

fn perfect(cost: &[Vec<Ext>], t: Ext) -> bool {
    fn augment(u: usize, cost: &[Vec<Ext>], t: Ext, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for v in 0..cost.len() {
            if cost[u][v] <= t && !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, cost, t, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let n = cost.len();
    let mut owner = alloc::vec![None; n];
    (0..n).all(|u| augment(u, cost, t, &mut alloc::vec![false; n], &mut owner))
}

/// The four worked examples with their certificates.
pub fn example_pairs() -> Vec<PairInput> {
    use crate::edit::transcribe;
    use crate::fixtures;
    let pair = |name: &str, (a, b): (ReebGraph, ReebGraph), fdd: MapCertificate, zz: ZigzagCertificate| PairInput {
        name: String::from(name),
        a,
        b,
        fields: None,
        fdd_certificates: alloc::vec![fdd],
        zigzags: alloc::vec![zz],
    };
    let t = |s: crate::edit::EditSequence| transcribe(&s, s.concrete_delta()).expect("fixture sequences transcribe");
    alloc::vec![
        pair("example1", fixtures::example1(), fixtures::example1_fdd(frac(1, 1000)), fixtures::example1_zigzag()),
        pair("example2", fixtures::example2(), fixtures::example2_fdd(), t(fixtures::example2_sequence())),
        pair("example3", fixtures::example3(), fixtures::example3_fdd(), fixtures::example3_zigzag()),
        pair("example4", fixtures::example4(), fixtures::example4_fdd(), t(fixtures::example4_sequence())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::metrics::bottleneck_graded;

    fn zero() -> Bracket {
        Bracket::exact(Value::default())
    }

    #[test]
    fn bracket_semantics() {
        let b = |lo: i128, hi: i128| Bracket { lo: Ext::Finite(int(lo)), hi: Ext::Finite(int(hi)) };
        assert_eq!(compare(b(1, 2), int(1), b(2, 3)), Outcome::Holds);
        assert_eq!(compare(b(1, 3), int(1), b(2, 4)), Outcome::Indeterminate);
        assert_eq!(compare(b(5, 6), int(2), b(1, 2)), Outcome::Violated);
        assert_eq!(compare(b(5, 6), int(1), Bracket { lo: Ext::Finite(int(0)), hi: Ext::Infinite }), Outcome::Indeterminate);
        assert_eq!(compare(Bracket::infinite(), int(1), Bracket::infinite()), Outcome::Holds);
    }

    #[test]
    fn identical_inputs_give_a_zero_row() {
        for g in [fixtures::fig4(), fixtures::example1().0, fixtures::torus_graph()] {
            let input = PairInput { name: "same".into(), a: g.clone(), b: g, ..Default::default() };
            let r = run(&input, &Options::default()).unwrap();
            let d = &r.distances;
            assert_eq!((d.ungraded, d.graded), (Value::default(), Value::default()));
            for x in [d.interleaving, d.fdd, d.universal, d.edit.unwrap()] {
                assert_eq!(x, zero());
            }
            assert!(d.truncated.iter().all(|(_, t)| *t == zero()));
            assert!(r.checks.iter().all(|c| c.outcome == Outcome::Holds), "{:?}", r.checks);
        }
    }

    #[test]
    fn fabricated_violations_are_caught() {
        let d = Distances {
            ungraded: int(1),
            graded: int(3),
            interleaving: Bracket { lo: Ext::Finite(frac(1, 4)), hi: Ext::Finite(frac(1, 4)) },
            truncated: alloc::vec![(frac(1, 2), Bracket::exact(frac(1, 8)))],
            fdd: Bracket::exact(frac(1, 2)),
            edit: None,
            universal: Bracket { lo: Ext::Finite(int(0)), hi: Ext::Infinite },
            linf: Some(frac(1, 2)),
            trees: false,
        };
        let r = validate("bad", d);
        let bad: Vec<&str> = r.violations().map(|c| c.relation.as_str()).collect();
        // d_b <= 2 d_I fails (1 > 1/2), d_B <= 9 d_I fails (3 > 9/4), d_B <= 3 d_FD fails (3 > 3/2),
        // d_I <= d_I^0.5 fails (1/4 > 1/8), both bottlenecks exceed the norm
        for rel in ["d_b <= 2*d_I", "d_B <= 9*d_I", "d_B <= 3*d_FD", "d_I <= d_I^0.5", "d_b <= |f-g|", "d_B <= |f-g|"] {
            assert!(bad.contains(&rel), "{} not in {:?}", rel, bad);
        }
        assert!(!r.is_clean());
    }

    #[test]
    fn examples_respect_the_landscape() {
        for p in example_pairs() {
            let r = run(&p, &Options::default()).unwrap();
            let bad: Vec<_> = r.violations().collect();
            assert!(bad.is_empty(), "{}: {:?}", p.name, bad);
        }
    }

    #[test]
    fn convention_on_connected_and_matched_pieces() {
        let (f, g) = fixtures::example2();
        let direct = |x: &ReebGraph, y: &ReebGraph| -> Result<Bracket, ()> {
            Ok(Bracket::exact(bottleneck_graded(&extended_diagram(x).unwrap(), &extended_diagram(y).unwrap())))
        };
        assert_eq!(component_convention(&f, &g, direct).unwrap(), direct(&f, &g).unwrap());
        let two = f.disjoint_union(&fixtures::fig4());
        let swapped = fixtures::fig4().disjoint_union(&f);
        assert_eq!(component_convention(&two, &swapped, direct).unwrap(), zero());
        assert_eq!(component_convention(&f, &two, direct).unwrap(), Bracket::infinite());
    }

    #[test]
    fn union_bottleneck_is_below_the_convention() {
        // pairing the pieces crosswise is cheaper than any bijection
        let (f, g) = fixtures::example2();
        let h = fixtures::fig4().map_values(|v| *v + int(20));
        let a = f.disjoint_union(&h);
        let b = g.disjoint_union(&h.map_values(|v| *v + frac(1, 3)));
        let direct = |x: &ReebGraph, y: &ReebGraph| -> Result<Bracket, ()> {
            Ok(Bracket::exact(bottleneck_graded(&extended_diagram(x).unwrap(), &extended_diagram(y).unwrap())))
        };
        let union = direct(&a, &b).unwrap().hi;
        let conv = component_convention(&a, &b, direct).unwrap().lo;
        assert!(union <= conv);
        assert_eq!(conv, Ext::Finite(frac(2, 5)));
    }

    #[test]
    fn assignment_picks_the_bottleneck() {
        let f = |v: i128| Ext::Finite(int(v));
        let m = alloc::vec![alloc::vec![f(1), f(9)], alloc::vec![f(8), f(2)]];
        assert_eq!(bottleneck_assignment(&m), f(2));
        let m = alloc::vec![alloc::vec![f(1), Ext::Infinite], alloc::vec![Ext::Infinite, Ext::Infinite]];
        assert_eq!(bottleneck_assignment(&m), Ext::Infinite);
        assert_eq!(bottleneck_assignment(&[]), f(0));
    }
}
