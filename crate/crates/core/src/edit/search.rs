//! Best-first search for cheap edit sequences.
//!
//! States are labeled graphs reached from `a`; the search stops at the first
//! finishing move that lands on `b`. Moves:
//!
//! * finish: a relabel onto `b` through a direction-preserving isomorphism,
//!   optionally flattening up to two surplus leaves to width `2δ` and then
//!   removing them;
//! * deaths of existing leaves;
//! * births of `2δ`-leaves at the midpoint of each leaf of `b`;
//! * K-moves with the two vertices meeting near their midpoint.
//!
//! Labels therefore stay in the critical values of both graphs, their
//! midpoints, and `±δ` offsets of those; the reported upper bound is the
//! standard part of the best cost.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{apply, lift, step_cost, Applied, Deformation, EditError, EditGraph, EditSequence};
use crate::graph::ReebGraph;
use crate::metrics::bottleneck_graded;
use crate::persistence::extended_diagram;
use crate::value::{int, Bracket, DVal, Ext, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EditSearchResult {
    /// `[d_B, best cost as δ → 0]`.
    pub bracket: Bracket,
    pub cost: Option<DVal>,
    pub sequence: Option<EditSequence>,
    /// The bracket collapsed.
    pub exact: bool,
    /// The search finished within its budget.
    pub complete: bool,
    pub expanded: u64,
}

type Key = (Vec<DVal>, Vec<(usize, usize)>);

fn key(g: &EditGraph) -> Key {
    let c = g.canonicalize();
    (c.values, c.edges)
}

fn d(x: DVal, y: DVal) -> DVal {
    (x - y).abs()
}

fn directed_mult(g: &EditGraph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &e in &g.edges {
        *m.entry(e).or_insert(0) += 1;
    }
    m
}

/// Direction-preserving isomorphism `h → b` minimizing the largest label
/// change, by branch and bound.
pub(crate) fn best_directed_iso(h: &EditGraph, b: &EditGraph) -> Option<(Vec<usize>, DVal)> {
    let n = h.values.len();
    if n != b.values.len() || h.edges.len() != b.edges.len() {
        return None;
    }
    let (uh, ub) = (h.up_down(), b.up_down());
    let mut s1 = uh.clone();
    let mut s2 = ub.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let (mh, mb) = (directed_mult(h), directed_mult(b));
    let m = |mm: &BTreeMap<(usize, usize), usize>, x: usize, y: usize| mm.get(&(x, y)).copied().unwrap_or(0);
    // visit vertices so that each one after the first has a placed neighbor
    let adj = {
        let mut a = alloc::vec![Vec::new(); n];
        for &(x, y) in &h.edges {
            a[x].push(y);
            a[y].push(x);
        }
        a
    };
    let mut order = Vec::with_capacity(n);
    let mut seen = alloc::vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut c: Vec<usize> = (0..n).filter(|&w| ub[w] == uh[v]).collect();
            c.sort_by_key(|&w| d(h.values[v], b.values[w]));
            c
        })
        .collect();

    struct Ctx<'a> {
        h: &'a EditGraph,
        b: &'a EditGraph,
        order: Vec<usize>,
        cands: Vec<Vec<usize>>,
        phi: Vec<usize>,
        used: Vec<bool>,
        best: Option<(Vec<usize>, DVal)>,
    }
    fn go<'a>(
        c: &mut Ctx<'a>,
        i: usize,
        cur: DVal,
        m: &dyn Fn(bool, usize, usize) -> usize,
    ) {
        if let Some((_, b)) = &c.best {
            if cur >= *b {
                return;
            }
        }
        if i == c.order.len() {
            c.best = Some((c.phi.clone(), cur));
            return;
        }
        let v = c.order[i];
        for k in 0..c.cands[v].len() {
            let w = c.cands[v][k];
            if c.used[w] {
                continue;
            }
            let cost = cur.max(d(c.h.values[v], c.b.values[w]));
            if let Some((_, b)) = &c.best {
                if cost >= *b {
                    break; // candidates are sorted by displacement
                }
            }
            let ok = c.order[..i].iter().all(|&u| {
                let pu = c.phi[u];
                m(true, v, u) == m(false, w, pu) && m(true, u, v) == m(false, pu, w)
            });
            if !ok {
                continue;
            }
            c.phi[v] = w;
            c.used[w] = true;
            go(c, i + 1, cost, m);
            c.used[w] = false;
        }
    }
    let mult = |in_h: bool, x: usize, y: usize| if in_h { m(&mh, x, y) } else { m(&mb, x, y) };
    let mut ctx = Ctx { h, b, order, cands, phi: alloc::vec![usize::MAX; n], used: alloc::vec![false; n], best: None };
    go(&mut ctx, 0, DVal::default(), &mult);
    ctx.best
}

fn leaves(g: &EditGraph) -> Vec<(usize, usize)> {
    let inc = g.incidence();
    (0..g.values.len())
        .filter(|&t| inc[t].len() == 1)
        .filter_map(|t| {
            let (x, y) = g.edges[inc[t][0]];
            let r = if x == t { y } else { x };
            (inc[r].len() == 3).then_some((t, r))
        })
        .collect()
}

fn delta() -> DVal {
    DVal::new(Value::default(), int(1))
}

/// Flattens the leaves `tips` to width `2δ`, relabels the rest onto `b`,
/// then removes the flattened leaves. `None` if the pattern does not fit.
fn finish(g: &EditGraph, b: &EditGraph, tips: &[usize]) -> Option<(Vec<Deformation>, DVal)> {
    // structure after the deaths, to match against b
    let mut h = g.clone();
    let mut map: Vec<Option<usize>> = (0..g.values.len()).map(Some).collect();
    for &t in tips {
        let cur = map[t]?;
        let Applied { graph, vertex_map } = apply(&Deformation::Death { tip: cur }, &h).ok()?;
        for m in map.iter_mut() {
            *m = m.and_then(|x| vertex_map[x]);
        }
        h = graph;
    }
    let (phi, _) = best_directed_iso(&h, b)?;
    let mut values = Vec::new();
    for v in 0..g.values.len() {
        if let Some(x) = map[v] {
            values.push((v, b.values[phi[x]]));
        }
    }
    let inc = g.incidence();
    for (k, &t) in tips.iter().enumerate() {
        let e = inc[t][0];
        let r = if g.edges[e].0 == t { g.edges[e].1 } else { g.edges[e].0 };
        // the edge r sits on after the death
        let mut nb: Vec<usize> = inc[r].iter().filter(|&&x| x != e).map(|&x| {
            let (p, q) = g.edges[x];
            if p == r { q } else { p }
        }).collect();
        nb.sort_by_key(|&x| g.values[x]);
        let img = |x: usize| -> Option<DVal> {
            if let Some(y) = map[x] {
                Some(b.values[phi[y]])
            } else {
                // neighbor is itself a flattened vertex
                values.iter().find(|p| p.0 == x).map(|p| p.1)
            }
        };
        let (lo, hi) = (img(nb[0])?, img(nb[1])?);
        let down = g.values[t] < g.values[r];
        let s = DVal::new(Value::default(), int(1 + 2 * k as i128));
        let m = DVal::new((g.values[t].std + g.values[r].std) / int(2), Value::default());
        let mut root = if down { m + s } else { m - s };
        if root <= lo {
            root = lo + s;
        }
        if root >= hi {
            root = hi - s;
        }
        let tip = if down { root - delta() - delta() } else { root + delta() + delta() };
        values.push((r, root));
        values.push((t, tip));
    }
    let mut steps = alloc::vec![Deformation::Relabel { values }];
    let mut cur = g.clone();
    let mut map: Vec<Option<usize>> = (0..g.values.len()).map(Some).collect();
    let mut cost = DVal::default();
    let mut deaths: Vec<Deformation> = Vec::new();
    let first = apply(&steps[0], &cur).ok()?;
    cost = cost + step_cost(&steps[0], &cur, &first);
    cur = first.graph;
    for &t in tips {
        let step = Deformation::Death { tip: map[t]? };
        let next = apply(&step, &cur).ok()?;
        cost = cost + step_cost(&step, &cur, &next);
        for m in map.iter_mut() {
            *m = m.and_then(|x| next.vertex_map[x]);
        }
        cur = next.graph;
        deaths.push(step);
    }
    steps.extend(deaths);
    if cur.canonicalize() != b.canonicalize() {
        return None;
    }
    Some((steps, cost))
}

fn moves(g: &EditGraph, b: &EditGraph, cap: usize, grid: &BTreeSet<Value>) -> Vec<Deformation> {
    let mut out = Vec::new();
    let ls = leaves(g);
    for &(t, _) in &ls {
        out.push(Deformation::Death { tip: t });
    }
    if g.values.len() + 2 <= cap {
        for (t, r) in leaves(b) {
            let m = DVal::exact((b.values[t].std + b.values[r].std) / int(2));
            let down = b.values[t] < b.values[r];
            let (root, tip) = if down { (m + delta(), m - delta()) } else { (m - delta(), m + delta()) };
            for (e, &(x, y)) in g.edges.iter().enumerate() {
                if g.values[x] < root && root < g.values[y] {
                    out.push(Deformation::Birth { edge: e, root, tip });
                }
            }
        }
    }
    let ud = g.up_down();
    let inc = g.incidence();
    for (k, &(p, q)) in g.edges.iter().enumerate() {
        let mu = DVal::exact((g.values[p].std + g.values[q].std) / int(2));
        if !grid.contains(&mu.std) {
            continue;
        }
        if ud[p] == (1, 2) && ud[q] == (2, 1) {
            out.push(Deformation::K3 { lower: p, upper: q, lower_to: mu + delta(), upper_to: mu - delta() });
        }
        if ud[p] == (2, 1) && ud[q] == (1, 2) {
            for &de in inc[p].iter().filter(|&&e| g.edges[e].1 == p) {
                for &ue in inc[q].iter().filter(|&&e| g.edges[e].0 == q && e != k) {
                    out.push(Deformation::K2 {
                        lower: p,
                        upper: q,
                        down_edge: de,
                        up_edge: ue,
                        lower_to: mu + delta(),
                        upper_to: mu - delta(),
                    });
                }
            }
        }
    }
    for &(t, r) in &ls {
        let leaf = inc[t][0];
        for &c in &inc[r] {
            let s = if g.edges[c].0 == r { g.edges[c].1 } else { g.edges[c].0 };
            for &onto in &inc[s] {
                if onto == c {
                    continue;
                }
                let t2 = if g.edges[onto].0 == s { g.edges[onto].1 } else { g.edges[onto].0 };
                let mid = (g.values[s].std + g.values[t2].std) / int(2);
                for root_to in [g.values[r], DVal::exact(mid)] {
                    if !grid.contains(&root_to.std) {
                        continue;
                    }
                    out.push(Deformation::K1 { root: r, leaf, onto, root_to, tip_to: g.values[t] });
                }
            }
        }
    }
    out
}

struct Node {
    graph: EditGraph,
    parent: Option<usize>,
    steps: Vec<Deformation>,
    goal: bool,
}

/// Searches for a cheap sequence carrying `a` to `b`, expanding at most
/// `budget` states.
pub fn edit_search(a: &ReebGraph, b: &ReebGraph, budget: u64) -> Result<EditSearchResult, EditError> {
    if a.check_generic().is_err() || b.check_generic().is_err() {
        return Err(EditError::NotGeneric);
    }
    let (ba, bb) = (a.betti1(), b.betti1());
    let (ca, cb) = (a.component_count(), b.component_count());
    if ba != bb || ca != cb {
        return Err(EditError::Undefined { betti: (ba, bb), components: (ca, cb) });
    }
    let lower = match (extended_diagram(a), extended_diagram(b)) {
        (Ok(x), Ok(y)) => bottleneck_graded(&x, &y),
        _ => Value::default(),
    };
    let (ga, gb) = (lift(&a.canonicalize()), lift(&b.canonicalize()));
    let cap = ga.values.len().max(gb.values.len()) + 2;
    // labels stay on critical values and their midpoints
    let crit: BTreeSet<Value> = a.values.iter().chain(b.values.iter()).copied().collect();
    let mut grid = crit.clone();
    for x in &crit {
        for y in &crit {
            grid.insert((*x + *y) / int(2));
        }
    }

    let mut nodes = alloc::vec![Node { graph: ga.clone(), parent: None, steps: Vec::new(), goal: false }];
    let mut best: BTreeMap<Key, DVal> = BTreeMap::new();
    best.insert(key(&ga), DVal::default());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((DVal::default(), false, key(&ga), 0usize)));
    let mut expanded = 0u64;
    let mut found: Option<(usize, DVal)> = None;
    let mut goal_best: Option<DVal> = None;

    while let Some(Reverse((cost, is_goal, k, id))) = heap.pop() {
        if is_goal {
            found = Some((id, cost));
            break;
        }
        if best.get(&k).is_some_and(|&c| c < cost) {
            continue;
        }
        if expanded >= budget {
            break;
        }
        expanded += 1;
        let g = nodes[id].graph.clone();
        let ls = leaves(&g);
        let mut subsets: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        let surplus = g.values.len().saturating_sub(gb.values.len()) / 2;
        if surplus >= 1 {
            for i in 0..ls.len() {
                subsets.push(alloc::vec![ls[i].0]);
                if surplus >= 2 {
                    for j in i + 1..ls.len() {
                        subsets.push(alloc::vec![ls[i].0, ls[j].0]);
                    }
                }
            }
        }
        for tips in subsets.iter().filter(|t| g.values.len() == gb.values.len() + 2 * t.len()) {
            if let Some((steps, c)) = finish(&g, &gb, tips) {
                let total = cost + c;
                if goal_best.is_none_or(|x| total < x) {
                    goal_best = Some(total);
                    nodes.push(Node { graph: gb.clone(), parent: Some(id), steps, goal: true });
                    heap.push(Reverse((total, true, (Vec::new(), Vec::new()), nodes.len() - 1)));
                }
            }
        }
        for step in moves(&g, &gb, cap, &grid) {
            let Ok(next) = apply(&step, &g) else { continue };
            let c = cost + step_cost(&step, &g, &next);
            if goal_best.is_some_and(|x| c >= x) {
                continue;
            }
            let nk = key(&next.graph);
            if best.get(&nk).is_some_and(|&x| x <= c) {
                continue;
            }
            best.insert(nk.clone(), c);
            nodes.push(Node { graph: next.graph, parent: Some(id), steps: alloc::vec![step], goal: false });
            heap.push(Reverse((c, false, nk, nodes.len() - 1)));
        }
    }

    let complete = found.is_some() || heap.is_empty();
    let (sequence, cost) = match found {
        Some((id, c)) => {
            let mut chain = Vec::new();
            let mut cur = Some(id);
            while let Some(i) = cur {
                chain.push(i);
                cur = nodes[i].parent;
            }
            chain.reverse();
            let mut seq = EditSequence::new(ga.clone());
            for i in chain {
                debug_assert!(!nodes[i].goal || nodes[i].graph == gb);
                seq.steps.extend(nodes[i].steps.iter().cloned());
            }
            (Some(seq), Some(c))
        }
        None => (None, None),
    };
    let hi = cost.map_or(Ext::Infinite, |c| Ext::Finite(c.std));
    let bracket = Bracket { lo: Ext::Finite(lower), hi };
    Ok(EditSearchResult { bracket, cost, sequence, exact: bracket.is_collapsed(), complete, expanded })
}
