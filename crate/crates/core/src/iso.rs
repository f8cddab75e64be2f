//! Function-preserving isomorphism of labeled multigraphs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Vertex and edge bijections `a -> b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

fn multiplicities<V>(g: &Graph<V>) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &(a, b) in &g.edges {
        *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    m
}

fn adjacency<V>(g: &Graph<V>) -> Vec<Vec<usize>> {
    let mut adj = alloc::vec![Vec::new(); g.values.len()];
    for &(a, b) in &g.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    adj
}

/// Label-preserving isomorphism (`a.values[v] == b.values[α(v)]`).
pub fn is_isomorphic<V: Ord + Clone>(a: &Graph<V>, b: &Graph<V>) -> Option<IsoWitness> {
    isomorphism_by(a, b, |x, y| x == y)
}

/// Plain multigraph isomorphism, labels ignored.
pub fn is_graph_isomorphic<V: Ord + Clone>(a: &Graph<V>, b: &Graph<V>) -> Option<IsoWitness> {
    isomorphism_by(a, b, |_, _| true)
}

/// Backtracking search pruned by degree and the label predicate.
pub fn isomorphism_by<V: Ord + Clone>(
    a: &Graph<V>,
    b: &Graph<V>,
    same: impl Fn(&V, &V) -> bool,
) -> Option<IsoWitness> {
    let n = a.values.len();
    if n != b.values.len() || a.edges.len() != b.edges.len() {
        return None;
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let (ma, mb) = (multiplicities(a), multiplicities(b));
    let (adj_a, adj_b) = (adjacency(a), adjacency(b));
    let loops_a: Vec<usize> = (0..n).map(|v| ma.get(&(v, v)).copied().unwrap_or(0)).collect();
    let loops_b: Vec<usize> = (0..n).map(|v| mb.get(&(v, v)).copied().unwrap_or(0)).collect();

    // BFS order so that most vertices have a mapped neighbour when placed.
    let mut order = Vec::with_capacity(n);
    let mut seen = alloc::vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| core::cmp::Reverse(da[v]));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = alloc::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in &adj_a[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }

    let mut map = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    let ctx = Ctx { a, b, same: &same, da: &da, db: &db, ma: &ma, mb: &mb, adj_a: &adj_a, adj_b: &adj_b, loops_a: &loops_a, loops_b: &loops_b, order: &order };
    if !ctx.search(0, &mut map, &mut used) {
        return None;
    }
    // edges: bucket b's edges by endpoint pair and hand them out in order
    let mut buckets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &(x, y)) in b.edges.iter().enumerate().rev() {
        buckets.entry((x.min(y), x.max(y))).or_default().push(i);
    }
    let mut edge = Vec::with_capacity(a.edges.len());
    for &(x, y) in &a.edges {
        let (p, q) = (map[x], map[y]);
        edge.push(buckets.get_mut(&(p.min(q), p.max(q)))?.pop()?);
    }
    Some(IsoWitness { vertex: map, edge })
}

struct Ctx<'a, V, F> {
    a: &'a Graph<V>,
    b: &'a Graph<V>,
    same: &'a F,
    da: &'a [usize],
    db: &'a [usize],
    ma: &'a BTreeMap<(usize, usize), usize>,
    mb: &'a BTreeMap<(usize, usize), usize>,
    adj_a: &'a [Vec<usize>],
    adj_b: &'a [Vec<usize>],
    loops_a: &'a [usize],
    loops_b: &'a [usize],
    order: &'a [usize],
}

impl<V, F: Fn(&V, &V) -> bool> Ctx<'_, V, F> {
    fn search(&self, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let anchor = self.adj_a[v].iter().copied().find(|&w| map[w] != usize::MAX);
        let cands: Vec<usize> = match anchor {
            Some(w) => self.adj_b[map[w]].clone(),
            None => (0..self.b.values.len()).collect(),
        };
        for c in cands {
            if used[c]
                || self.db[c] != self.da[v]
                || self.loops_b[c] != self.loops_a[v]
                || !(self.same)(&self.a.values[v], &self.b.values[c])
            {
                continue;
            }
            let ok = self.adj_a[v].iter().all(|&w| {
                map[w] == usize::MAX || {
                    let p = map[w];
                    self.ma.get(&(v.min(w), v.max(w))) == self.mb.get(&(c.min(p), c.max(p)))
                }
            }) && self.adj_b[c].iter().all(|&p| {
                // a mapped b-neighbour must come from an a-neighbour
                !used[p] || self.adj_a[v].iter().any(|&w| map[w] == p)
            });
            if !ok {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if self.search(k + 1, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[c] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ReebGraph;
    use crate::value::int;

    fn g(vals: &[i128], edges: &[(usize, usize)]) -> ReebGraph {
        Graph::from_parts(vals.iter().map(|&v| int(v)).collect(), edges).unwrap()
    }

    #[test]
    fn self_iso_is_identity_for_distinct_values() {
        let a = g(&[1, 2, 3, 4], &[(0, 1), (1, 2), (1, 2), (2, 3)]);
        let w = is_isomorphic(&a, &a).unwrap();
        assert_eq!(w.vertex, alloc::vec![0, 1, 2, 3]);
    }

    #[test]
    fn labels_matter() {
        let a = g(&[1, 2, 3], &[(0, 1), (1, 2)]);
        let b = g(&[1, 5, 3], &[(0, 1), (1, 2)]);
        assert!(is_isomorphic(&a, &b).is_none());
        assert!(is_graph_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn multiplicity_matters() {
        let a = g(&[1, 2, 3, 4], &[(0, 1), (1, 2), (1, 2), (2, 3)]);
        let b = g(&[1, 2, 3, 4], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(is_graph_isomorphic(&a, &b).is_none());
    }
}
