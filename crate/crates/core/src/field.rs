//! PL scalar fields on simplicial complexes of dimension at most two, and
//! the sweep that turns them into Reeb graphs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::graph::{Graph, ReebGraph};
use crate::uf::UnionFind;
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ScalarField {
    pub values: Vec<Value>,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    MissingVertex(usize),
    DegenerateSimplex,
    DuplicateEdge(usize, usize),
    MissingFace(usize, usize),
    RepeatedValue(usize, usize),
    DifferentComplex,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::MissingVertex(v) => write!(f, "simplex references missing vertex {}", v),
            FieldError::DegenerateSimplex => f.write_str("simplex repeats a vertex"),
            FieldError::DuplicateEdge(a, b) => write!(f, "edge {}-{} listed twice", a, b),
            FieldError::MissingFace(a, b) => {
                write!(f, "triangle face {}-{} is not in the edge list", a, b)
            }
            FieldError::RepeatedValue(a, b) => write!(
                f,
                "vertices {} and {} share a value; rerun with ties allowed for symbolic perturbation",
                a, b
            ),
            FieldError::DifferentComplex => f.write_str("fields live on different complexes"),
        }
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl ScalarField {
    /// Builds a field from triangles plus extra edges, adding the missing
    /// faces.
    pub fn from_triangles(values: Vec<Value>, triangles: &[[usize; 3]], extra_edges: &[(usize, usize)]) -> Self {
        let mut set = alloc::collections::BTreeSet::new();
        for t in triangles {
            set.insert(key(t[0], t[1]));
            set.insert(key(t[1], t[2]));
            set.insert(key(t[0], t[2]));
        }
        for &(a, b) in extra_edges {
            set.insert(key(a, b));
        }
        ScalarField { values, edges: set.into_iter().collect(), triangles: triangles.to_vec() }
    }

    /// The 1-complex underlying a graph, with the graph's labels.
    pub fn from_graph(g: &ReebGraph) -> Self {
        ScalarField { values: g.values.clone(), edges: g.edges.clone(), triangles: Vec::new() }
    }

    pub fn validate(&self, allow_ties: bool) -> Result<(), FieldError> {
        let n = self.values.len();
        let mut set = BTreeMap::new();
        for &(a, b) in &self.edges {
            if a >= n || b >= n {
                return Err(FieldError::MissingVertex(a.max(b)));
            }
            if a == b {
                return Err(FieldError::DegenerateSimplex);
            }
            if set.insert(key(a, b), ()).is_some() {
                return Err(FieldError::DuplicateEdge(a, b));
            }
        }
        for t in &self.triangles {
            for &v in t {
                if v >= n {
                    return Err(FieldError::MissingVertex(v));
                }
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(FieldError::DegenerateSimplex);
            }
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if !set.contains_key(&key(a, b)) {
                    return Err(FieldError::MissingFace(a, b));
                }
            }
        }
        if !allow_ties {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
            for w in idx.windows(2) {
                if self.values[w[0]] == self.values[w[1]] {
                    return Err(FieldError::RepeatedValue(w[0].min(w[1]), w[0].max(w[1])));
                }
            }
        }
        Ok(())
    }

    pub fn same_complex(&self, other: &ScalarField) -> bool {
        let norm = |f: &ScalarField| {
            let mut e: Vec<_> = f.edges.iter().map(|&(a, b)| key(a, b)).collect();
            e.sort_unstable();
            let mut t: Vec<[usize; 3]> = f
                .triangles
                .iter()
                .map(|t| {
                    let mut s = *t;
                    s.sort_unstable();
                    s
                })
                .collect();
            t.sort_unstable();
            (f.values.len(), e, t)
        };
        norm(self) == norm(other)
    }

    /// First Betti number of the complex (over Z/2, via ranks of the
    /// boundary maps).
    pub fn betti1(&self) -> usize {
        let n = self.values.len();
        let mut uf = UnionFind::new(n);
        let mut comps = n;
        for &(a, b) in &self.edges {
            if uf.union(a, b) {
                comps -= 1;
            }
        }
        let rank1 = n - comps;
        let z1 = self.edges.len() - rank1;
        let idx: BTreeMap<(usize, usize), usize> =
            self.edges.iter().enumerate().map(|(i, &(a, b))| (key(a, b), i)).collect();
        let rows: Vec<Vec<usize>> = self
            .triangles
            .iter()
            .map(|t| {
                let mut r = alloc::vec![idx[&key(t[0], t[1])], idx[&key(t[1], t[2])], idx[&key(t[0], t[2])]];
                r.sort_unstable();
                r
            })
            .collect();
        z1 - crate::persistence::gf2_rank(rows)
    }
}

/// `max |f - g|` over vertices, exact for PL functions on one complex.
pub fn linf_distance(f: &ScalarField, g: &ScalarField) -> Result<Value, FieldError> {
    if !f.same_complex(g) {
        return Err(FieldError::DifferentComplex);
    }
    Ok(f.values.iter().zip(&g.values).map(|(a, b)| (a - b).abs()).max().unwrap_or_default())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Accept repeated values, resolved by the `(value, id)` order.
    pub allow_ties: bool,
}

/// Reeb graph of a PL field.
///
/// Sweeps the vertices in `(value, id)` order. Level components at a
/// vertex consist of the vertex plus the edges crossing its level, glued by
/// triangles; slab components between consecutive vertices are edges glued
/// the same way. Every level component becomes a node and every slab
/// component an arc. With ties allowed, arcs between equal values are
/// contracted afterwards, which yields the graph of the unperturbed field.
pub fn build_reeb(field: &ScalarField, opts: BuildOptions) -> Result<ReebGraph, FieldError> {
    field.validate(opts.allow_ties)?;
    let n = field.values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| field.values[a].cmp(&field.values[b]).then(a.cmp(&b)));
    let mut rank = alloc::vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // edges oriented by rank
    let edges: Vec<(usize, usize)> = field
        .edges
        .iter()
        .map(|&(a, b)| if rank[a] < rank[b] { (rank[a], rank[b]) } else { (rank[b], rank[a]) })
        .collect();
    let eidx: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // triangles as rank triples plus (ab, bc, ac) edge ids
    let tris: Vec<([usize; 3], [usize; 3])> = field
        .triangles
        .iter()
        .map(|t| {
            let mut r = [rank[t[0]], rank[t[1]], rank[t[2]]];
            r.sort_unstable();
            let ids = [eidx[&(r[0], r[1])], eidx[&(r[1], r[2])], eidx[&(r[0], r[2])]];
            (r, ids)
        })
        .collect();
    let m = edges.len();

    let mut node_value: Vec<Value> = Vec::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    // node of the vertex / of each crossing edge at the previous level
    let mut prev_vertex_node = usize::MAX;
    let mut prev_edge_node = alloc::vec![usize::MAX; m];
    let mut cur_edge_node = alloc::vec![usize::MAX; m];

    for i in 0..n {
        // level i
        let mut uf = UnionFind::new(m + 1);
        let mut keep = alloc::vec![false; m + 1];
        keep[0] = true;
        for (e, &(lo, hi)) in edges.iter().enumerate() {
            if lo < i && i < hi {
                keep[e + 1] = true;
            }
        }
        for &(r, ids) in &tris {
            if r[1] == i {
                uf.union(0, ids[2] + 1);
            } else if r[0] < i && i < r[2] {
                if r[1] < i {
                    uf.union(ids[1] + 1, ids[2] + 1);
                } else {
                    uf.union(ids[0] + 1, ids[2] + 1);
                }
            }
        }
        let (lab, k) = uf.labels(&keep);
        let base = node_value.len();
        node_value.extend(core::iter::repeat_n(field.values[order[i]], k));
        let vertex_node = base + lab[0].unwrap();
        for e in 0..m {
            cur_edge_node[e] = lab[e + 1].map_or(usize::MAX, |l| base + l);
        }

        // slab (i-1, i)
        if i > 0 {
            let mut uf = UnionFind::new(m);
            let mut keep = alloc::vec![false; m];
            for (e, &(lo, hi)) in edges.iter().enumerate() {
                if lo < i && hi >= i {
                    keep[e] = true;
                }
            }
            for &(r, ids) in &tris {
                if r[0] < i && r[2] >= i {
                    if r[1] < i {
                        uf.union(ids[1], ids[2]);
                    } else {
                        uf.union(ids[0], ids[2]);
                    }
                }
            }
            let (lab, k) = uf.labels(&keep);
            let mut rep = alloc::vec![usize::MAX; k];
            for e in 0..m {
                if let Some(l) = lab[e] {
                    if rep[l] == usize::MAX {
                        rep[l] = e;
                    }
                }
            }
            for &e in &rep {
                let (lo, hi) = edges[e];
                let bottom = if lo == i - 1 { prev_vertex_node } else { prev_edge_node[e] };
                let top = if hi == i { vertex_node } else { cur_edge_node[e] };
                arcs.push((bottom, top));
            }
        }
        prev_vertex_node = vertex_node;
        core::mem::swap(&mut prev_edge_node, &mut cur_edge_node);
    }

    let g = if opts.allow_ties {
        contract_flat(&node_value, &arcs)
    } else {
        Graph::from_parts(node_value, &arcs).expect("sweep arcs join distinct values")
    };
    Ok(g.canonicalize())
}

/// Identifies endpoints of arcs with equal values and drops the arcs.
pub(crate) fn contract_flat(values: &[Value], arcs: &[(usize, usize)]) -> ReebGraph {
    let mut uf = UnionFind::new(values.len());
    for &(a, b) in arcs {
        if values[a] == values[b] {
            uf.union(a, b);
        }
    }
    let keep = alloc::vec![true; values.len()];
    let (lab, k) = uf.labels(&keep);
    let mut vals = alloc::vec![Value::default(); k];
    for v in 0..values.len() {
        vals[lab[v].unwrap()] = values[v];
    }
    let es: Vec<(usize, usize)> = arcs
        .iter()
        .filter(|&&(a, b)| values[a] != values[b])
        .map(|&(a, b)| (lab[a].unwrap(), lab[b].unwrap()))
        .collect();
    Graph::from_parts(vals, &es).expect("non-flat arcs keep distinct values")
}
