//! Labeled multigraphs and Reeb graphs.

use alloc::vec::Vec;
use core::fmt;

use crate::uf::UnionFind;
use crate::value::Value;

/// A multigraph whose vertices carry an ordered label. Edges are stored as
/// `(lower, upper)` with the lower-valued endpoint first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph<V> {
    pub values: Vec<V>,
    pub edges: Vec<(usize, usize)>,
}

pub type ReebGraph = Graph<Value>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    MissingVertex(usize),
    FlatEdge(usize),
    RepeatedValue(usize, usize),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::MissingVertex(v) => write!(f, "edge references missing vertex {}", v),
            GraphError::FlatEdge(e) => write!(f, "edge {} joins two vertices of equal value", e),
            GraphError::RepeatedValue(a, b) => {
                write!(f, "vertices {} and {} share a value (non-generic)", a, b)
            }
        }
    }
}

/// A point of a Reeb graph: a vertex, or an interior point of an edge
/// addressed by its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(usize),
    Edge(usize, Value),
}

impl<V: Ord + Clone> Graph<V> {
    pub fn new() -> Self {
        Graph { values: Vec::new(), edges: Vec::new() }
    }

    /// Builds a graph, orienting every edge low to high.
    pub fn from_parts(values: Vec<V>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph { values, edges: Vec::with_capacity(edges.len()) };
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= g.values.len() {
                return Err(GraphError::MissingVertex(a));
            }
            if b >= g.values.len() {
                return Err(GraphError::MissingVertex(b));
            }
            match g.values[a].cmp(&g.values[b]) {
                core::cmp::Ordering::Less => g.edges.push((a, b)),
                core::cmp::Ordering::Greater => g.edges.push((b, a)),
                core::cmp::Ordering::Equal => return Err(GraphError::FlatEdge(i)),
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self, v: V) -> usize {
        self.values.push(v);
        self.values.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        let e = if self.values[a] < self.values[b] { (a, b) } else { (b, a) };
        debug_assert!(self.values[e.0] < self.values[e.1]);
        self.edges.push(e);
        self.edges.len() - 1
    }

    /// Incident edges per vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = alloc::vec![Vec::new(); self.values.len()];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(i);
            inc[b].push(i);
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.values.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// `(down-degree, up-degree)` per vertex.
    pub fn up_down(&self) -> Vec<(usize, usize)> {
        let mut d = alloc::vec![(0, 0); self.values.len()];
        for &(a, b) in &self.edges {
            d[a].1 += 1;
            d[b].0 += 1;
        }
        d
    }

    /// Component label per vertex and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.values.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let keep = alloc::vec![true; self.values.len()];
        let (lab, k) = uf.labels(&keep);
        (lab.into_iter().map(|x| x.unwrap()).collect(), k)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn betti1(&self) -> usize {
        self.edges.len() + self.component_count() - self.values.len()
    }

    pub fn is_tree_like(&self) -> bool {
        self.betti1() == 0
    }

    pub fn check_generic(&self) -> Result<(), GraphError> {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
        for w in idx.windows(2) {
            if self.values[w[0]] == self.values[w[1]] {
                return Err(GraphError::RepeatedValue(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        Ok(())
    }

    /// True for a degree-2 vertex with one edge below and one above.
    pub fn is_regular(&self, v: usize, up_down: &[(usize, usize)]) -> bool {
        up_down[v] == (1, 1)
    }

    /// Removes regular degree-2 vertices and renumbers vertices by
    /// `(value, old index)`. Edges come out sorted. Idempotent.
    pub fn canonicalize(&self) -> Self {
        let n = self.values.len();
        let mut alive = alloc::vec![true; n];
        let mut edges: Vec<Option<(usize, usize)>> = self.edges.iter().map(|&e| Some(e)).collect();
        let mut inc = self.incidence();
        let mut ud = self.up_down();
        for v in 0..n {
            if ud[v] != (1, 1) {
                continue;
            }
            let (e1, e2) = (inc[v][0], inc[v][1]);
            let (lo_e, hi_e) = if edges[e1].unwrap().1 == v { (e1, e2) } else { (e2, e1) };
            let lo = edges[lo_e].unwrap().0;
            let hi = edges[hi_e].unwrap().1;
            edges[lo_e] = Some((lo, hi));
            edges[hi_e] = None;
            // hi now sees lo_e instead of hi_e
            for x in inc[hi].iter_mut() {
                if *x == hi_e {
                    *x = lo_e;
                }
            }
            alive[v] = false;
            inc[v].clear();
            ud[v] = (0, 0);
        }
        let mut order: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        order.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]).then(a.cmp(&b)));
        let mut new_id = alloc::vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let values = order.iter().map(|&v| self.values[v].clone()).collect();
        let mut es: Vec<(usize, usize)> =
            edges.into_iter().flatten().map(|(a, b)| (new_id[a], new_id[b])).collect();
        es.sort_unstable();
        Graph { values, edges: es }
    }

    /// Sorted distinct vertex values.
    pub fn critical_values(&self) -> Vec<V> {
        let mut vs = self.values.clone();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn value_range(&self) -> Option<(V, V)> {
        let lo = self.values.iter().min()?.clone();
        let hi = self.values.iter().max()?.clone();
        Some((lo, hi))
    }

    /// Relabels values through `f`; the edge orientation is recomputed.
    pub fn map_values<W: Ord + Clone>(&self, f: impl Fn(&V) -> W) -> Graph<W> {
        let values: Vec<W> = self.values.iter().map(f).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| if values[a] < values[b] { (a, b) } else { (b, a) })
            .collect();
        Graph { values, edges }
    }

    /// Disjoint union; vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let k = self.values.len();
        let mut g = self.clone();
        g.values.extend(other.values.iter().cloned());
        g.edges.extend(other.edges.iter().map(|&(a, b)| (a + k, b + k)));
        g
    }

    /// The subgraph induced on one component, vertices renumbered in order.
    pub fn component_subgraphs(&self) -> Vec<Self> {
        let (lab, k) = self.components();
        let mut out: Vec<Self> = (0..k).map(|_| Graph::new()).collect();
        let mut local = alloc::vec![0; self.values.len()];
        for v in 0..self.values.len() {
            local[v] = out[lab[v]].values.len();
            out[lab[v]].values.push(self.values[v].clone());
        }
        for &(a, b) in &self.edges {
            out[lab[a]].edges.push((local[a], local[b]));
        }
        out
    }
}

impl ReebGraph {
    pub fn value_of(&self, p: Point) -> Value {
        match p {
            Point::Vertex(v) => self.values[v],
            Point::Edge(_, t) => t,
        }
    }

    /// Normalizes an edge point sitting on an endpoint to that vertex.
    pub fn normalize_point(&self, p: Point) -> Point {
        match p {
            Point::Edge(e, t) => {
                let (a, b) = self.edges[e];
                if t == self.values[a] {
                    Point::Vertex(a)
                } else if t == self.values[b] {
                    Point::Vertex(b)
                } else {
                    p
                }
            }
            v => v,
        }
    }

    pub fn point_is_valid(&self, p: Point) -> bool {
        match p {
            Point::Vertex(v) => v < self.values.len(),
            Point::Edge(e, t) => {
                e < self.edges.len() && {
                    let (a, b) = self.edges[e];
                    self.values[a] <= t && t <= self.values[b]
                }
            }
        }
    }

    /// Replaces each edge by a path through a vertex at its midpoint.
    pub fn subdivide_midpoints(&self) -> ReebGraph {
        let mut g = Graph { values: self.values.clone(), edges: Vec::new() };
        for &(a, b) in &self.edges {
            let m = g.add_vertex((self.values[a] + self.values[b]) / Value::from_integer(2));
            g.edges.push((a, m));
            g.edges.push((m, b));
        }
        g
    }

    /// Splits edges at the given values (each strictly inside some edge).
    pub fn subdivide_at(&self, cuts: &[Value]) -> ReebGraph {
        let mut g = Graph { values: self.values.clone(), edges: Vec::new() };
        for &(a, b) in &self.edges {
            let (lo, hi) = (self.values[a], self.values[b]);
            let mut prev = a;
            for &c in cuts.iter().filter(|&&c| lo < c && c < hi) {
                let m = g.add_vertex(c);
                g.edges.push((prev, m));
                prev = m;
            }
            g.edges.push((prev, b));
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::int;

    fn path(vals: &[i128]) -> ReebGraph {
        let values = vals.iter().map(|&v| int(v)).collect();
        let edges: Vec<(usize, usize)> = (1..vals.len()).map(|i| (i - 1, i)).collect();
        Graph::from_parts(values, &edges).unwrap()
    }

    #[test]
    fn canonicalize_removes_regular_vertices() {
        let g = path(&[0, 1, 2, 3, 4, 5, 6]);
        let c = g.canonicalize();
        assert_eq!(c.values, alloc::vec![int(0), int(6)]);
        assert_eq!(c.edges, alloc::vec![(0, 1)]);
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn loop_keeps_saddles() {
        let g = Graph::from_parts(
            alloc::vec![int(1), int(2), int(3), int(4)],
            &[(0, 1), (1, 2), (1, 2), (2, 3)],
        )
        .unwrap();
        assert_eq!(g.canonicalize().vertex_count(), 4);
        assert_eq!(g.betti1(), 1);
    }

    #[test]
    fn rejects_flat_edges() {
        let e = Graph::from_parts(alloc::vec![int(1), int(1)], &[(0, 1)]);
        assert_eq!(e, Err(GraphError::FlatEdge(0)));
    }

    #[test]
    fn subdivision_then_canonicalize_is_identity() {
        let g = path(&[0, 10]);
        let s = g.subdivide_at(&[int(2), int(4), int(5), int(7), int(9)]);
        assert_eq!(s.vertex_count(), 7);
        assert_eq!(s.canonicalize(), g.canonicalize());
    }
}
