//! Disjoint-set forest with path halving and union by rank.

use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: alloc::vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Dense labels `0..k` for the classes of the elements in `keep`;
    /// elements outside `keep` get `None`.
    pub fn labels(&mut self, keep: &[bool]) -> (Vec<Option<usize>>, usize) {
        let n = self.len();
        let mut root_label = alloc::vec![usize::MAX; n];
        let mut out = alloc::vec![None; n];
        let mut k = 0;
        for i in 0..n {
            if !keep[i] {
                continue;
            }
            let r = self.find(i);
            if root_label[r] == usize::MAX {
                root_label[r] = k;
                k += 1;
            }
            out[i] = Some(root_label[r]);
        }
        (out, k)
    }
}
