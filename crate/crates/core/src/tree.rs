//! Undirected labeled trees.
//!
//! Labels are 1-based in every public method; storage is a 0-based adjacency list with
//! each neighbor list kept sorted.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

/// Parameters `(s, t, p)` of the Rose tree: a path on `s + t + 1` vertices whose vertex
/// `s + 1` is joined to the center of a star with `p` leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RoseParams {
    pub s: usize,
    pub t: usize,
    pub p: usize,
}

impl RoseParams {
    pub fn new(s: usize, t: usize, p: usize) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::BadParam("rose tree needs s >= 1 and t >= 1"));
        }
        Ok(RoseParams { s, t, p })
    }

    pub fn order(&self) -> usize {
        self.s + self.t + self.p + 2
    }

    /// Label of the star center, `s + t + 2`.
    pub fn center(&self) -> usize {
        self.s + self.t + 2
    }

    /// Labels of the star leaves.
    pub fn star_leaves(&self) -> core::ops::RangeInclusive<usize> {
        self.s + self.t + 3..=self.s + self.t + self.p + 2
    }
}

impl Tree {
    /// Builds a tree from 1-based edges, rejecting anything that is not a spanning tree.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::BadParam("a tree needs at least one vertex"));
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::BadLabel { label: w, n });
                }
            }
            if u == v {
                return Err(Error::NotATree("self-loop"));
            }
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree("edge count is not n - 1"));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::NotATree("duplicate edge"));
            }
        }
        let tree = Tree { adj };
        if tree.bfs0(0).contains(&usize::MAX) {
            return Err(Error::NotATree("disconnected (so it has a cycle)"));
        }
        Ok(tree)
    }

    /// Assembles a tree from 0-based edges known to form a tree.
    pub(crate) fn from_edges0_unchecked(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Tree {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Tree { adj }
    }

    pub fn path(n: usize) -> Result<Tree> {
        if n == 0 {
            return Err(Error::BadParam("path needs n >= 1"));
        }
        Ok(Tree::from_edges0_unchecked(n, (1..n).map(|i| (i - 1, i))))
    }

    /// Star with center 1 and leaves `2..=p+1`.
    pub fn star(p: usize) -> Result<Tree> {
        if p == 0 {
            return Err(Error::BadParam("star needs p >= 1"));
        }
        Ok(Tree::from_edges0_unchecked(p + 1, (1..=p).map(|i| (0, i))))
    }

    /// Rose tree with the labeling path `1..=s+t+1`, center `s+t+2`, leaves after it.
    pub fn rose(params: RoseParams) -> Result<Tree> {
        let RoseParams { s, t, p } = RoseParams::new(params.s, params.t, params.p)?;
        let path_len = s + t + 1;
        let c = path_len; // 0-based center
        let edges =
            (1..path_len).map(|i| (i - 1, i)).chain(core::iter::once((s, c))).chain((1..=p).map(|k| (c, c + k)));
        Ok(Tree::from_edges0_unchecked(params.order(), edges))
    }

    /// Star-like tree: path `1..=n+1` whose end `n+1` also carries `p` extra leaves.
    pub fn starlike(n: usize, p: usize) -> Result<Tree> {
        if n == 0 || p == 0 {
            return Err(Error::BadParam("star-like tree needs n >= 1 and p >= 1"));
        }
        let hub = n;
        let edges = (1..=n).map(|i| (i - 1, i)).chain((1..=p).map(|k| (hub, hub + k)));
        Ok(Tree::from_edges0_unchecked(n + 1 + p, edges))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn check(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.order() {
            Err(Error::BadLabel { label: v, n: self.order() })
        } else {
            Ok(v - 1)
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.adj[self.check(v)?].len())
    }

    /// Sorted neighbor labels of `v`.
    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>> {
        Ok(self.adj[self.check(v)?].iter().map(|&w| w + 1).collect())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.order().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&w| w > u).map(|&w| (u + 1, w + 1)));
        }
        out
    }

    pub(crate) fn adjacency0(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// BFS distances from a 0-based source; `usize::MAX` marks unreachable vertices.
    pub(crate) fn bfs0(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::with_capacity(self.order());
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distances from `v` to every vertex; entry `i` holds the distance to label `i + 1`.
    pub fn distances_from(&self, v: usize) -> Result<Vec<usize>> {
        Ok(self.bfs0(self.check(v)?))
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        let (u0, v0) = (self.check(u)?, self.check(v)?);
        Ok(self.bfs0(u0)[v0])
    }

    fn farthest0(dist: &[usize]) -> usize {
        // first maximum, so the sweep is deterministic
        let mut best = 0;
        for (i, &d) in dist.iter().enumerate() {
            if d > dist[best] {
                best = i;
            }
        }
        best
    }

    /// Endpoints of a longest path (0-based) and its length, by double BFS.
    fn diametral0(&self) -> (usize, usize, usize) {
        let a = Self::farthest0(&self.bfs0(0));
        let from_a = self.bfs0(a);
        let b = Self::farthest0(&from_a);
        (a, b, from_a[b])
    }

    pub fn diameter(&self) -> usize {
        self.diametral0().2
    }

    /// Degree-1 vertices, in label order. The single vertex of the 1-vertex tree counts as a leaf.
    pub fn leaves(&self) -> Vec<usize> {
        if self.order() == 1 {
            return vec![1];
        }
        (0..self.order()).filter(|&v| self.adj[v].len() == 1).map(|v| v + 1).collect()
    }

    pub fn is_leaf(&self, v: usize) -> Result<bool> {
        let v0 = self.check(v)?;
        Ok(self.adj[v0].len() <= 1)
    }

    /// New tree with vertex `n + 1` hanging off `v`.
    pub fn add_pendant(&self, v: usize) -> Result<Tree> {
        let v0 = self.check(v)?;
        let n = self.order();
        let mut adj = self.adj.clone();
        adj[v0].push(n); // n is the largest label, so the list stays sorted
        adj.push(vec![v0]);
        Ok(Tree { adj })
    }

    /// Deletes leaf `v` and relabels the remaining vertices `1..n-1` preserving order.
    pub fn remove_leaf(&self, v: usize) -> Result<Tree> {
        let v0 = self.check(v)?;
        let n = self.order();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        if self.adj[v0].len() != 1 {
            return Err(Error::NotALeaf(v));
        }
        let shift = |w: usize| if w > v0 { w - 1 } else { w };
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v0)
            .map(|(_, list)| list.iter().filter(|&&w| w != v0).map(|&w| shift(w)).collect())
            .collect();
        Ok(Tree { adj })
    }

    /// One or two central vertices (labels) of a longest path.
    pub fn centers(&self) -> Vec<usize> {
        let (a, b, d) = self.diametral0();
        // walk back from b towards a along decreasing distance-from-a
        let from_a = self.bfs0(a);
        let mut path = Vec::with_capacity(d + 1);
        let mut cur = b;
        path.push(cur);
        while cur != a {
            cur = *self.adj[cur].iter().find(|&&w| from_a[w] + 1 == from_a[cur]).expect("bfs parent");
            path.push(cur);
        }
        if d % 2 == 0 {
            vec![path[d / 2] + 1]
        } else {
            let mut c = vec![path[d / 2] + 1, path[d / 2 + 1] + 1];
            c.sort_unstable();
            c
        }
    }

    /// AHU code of the tree rooted at a 0-based vertex: `(` children-codes-sorted `)`.
    fn rooted_code0(&self, root: usize) -> Vec<u8> {
        let n = self.order();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        parent[root] = root;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        let mut child_codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
        let mut root_code = Vec::new();
        for &u in order.iter().rev() {
            let mut kids = core::mem::take(&mut child_codes[u]);
            kids.sort_unstable();
            let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
            code.push(b'(');
            for k in kids {
                code.extend_from_slice(&k);
            }
            code.push(b')');
            if u == root {
                root_code = code;
            } else {
                child_codes[parent[u]].push(code);
            }
        }
        root_code
    }

    /// Labeling-invariant code: AHU form rooted at the center, or the smaller of the two
    /// codes for a bicentral tree. Two trees are isomorphic iff their codes are equal.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.centers().into_iter().map(|c| self.rooted_code0(c - 1)).min().expect("at least one center")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(s: usize, t: usize, p: usize) -> Tree {
        Tree::rose(RoseParams::new(s, t, p).unwrap()).unwrap()
    }

    #[test]
    fn edge_list_constructor() {
        let p2 = Tree::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(p2, Tree::path(2).unwrap());
        let star = Tree::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(star, Tree::star(3).unwrap());
        assert!(matches!(Tree::from_edges(4, &[(1, 2), (3, 4)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::from_edges(3, &[(1, 2), (2, 4)]), Err(Error::BadLabel { label: 4, .. })));
        assert!(matches!(Tree::from_edges(3, &[(1, 2), (1, 2)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::from_edges(4, &[(1, 2), (2, 3), (3, 1)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::from_edges(2, &[(1, 1)]), Err(Error::NotATree(_))));
    }

    #[test]
    fn families() {
        assert_eq!(Tree::path(1).unwrap().order(), 1);
        assert_eq!(Tree::path(5).unwrap().diameter(), 4);
        assert!(Tree::path(0).is_err());

        assert_eq!(Tree::star(1).unwrap(), Tree::path(2).unwrap());
        assert_eq!(Tree::star(3).unwrap().diameter(), 2);
        let s4 = Tree::star(4).unwrap();
        let degs: Vec<_> = (1..=5).map(|v| s4.degree(v).unwrap()).collect();
        assert_eq!(degs, [4, 1, 1, 1, 1]);
        assert!(Tree::star(0).is_err());

        assert_eq!(rose(3, 3, 4).order(), 12);
        assert_eq!(rose(3, 4, 2).diameter(), 7);
        let small = rose(1, 1, 0);
        assert_eq!(small.edges(), [(1, 2), (2, 3), (2, 4)]);
        assert!(RoseParams::new(0, 3, 1).is_err());

        assert_eq!(Tree::starlike(1, 1).unwrap(), Tree::path(3).unwrap());
        let sl = Tree::starlike(3, 4).unwrap();
        assert_eq!(sl.order(), 8);
        assert_eq!((1..=8).filter(|&v| sl.degree(v).unwrap() == 5).count(), 1);
        assert_eq!(Tree::starlike(2, 2).unwrap().diameter(), 3);
        assert!(Tree::starlike(0, 2).is_err());
    }

    #[test]
    fn rose_labeling() {
        let t = rose(3, 3, 2);
        let params = RoseParams::new(3, 3, 2).unwrap();
        assert_eq!(params.center(), 8);
        assert_eq!(t.neighbors(8).unwrap(), [4, 9, 10]);
        assert_eq!(t.neighbors(4).unwrap(), [3, 5, 8]);
        assert_eq!(t.leaves(), [1, 7, 9, 10]);
    }

    #[test]
    fn distances() {
        let p5 = Tree::path(5).unwrap();
        assert_eq!(p5.distance(1, 5).unwrap(), 4);
        assert_eq!(p5.distance(3, 3).unwrap(), 0);
        assert_eq!(rose(3, 3, 4).distance(1, 7).unwrap(), 6);
        assert!(matches!(p5.distance(0, 2), Err(Error::BadLabel { .. })));
        assert_eq!(Tree::path(1).unwrap().diameter(), 0);
        assert_eq!(Tree::star(7).unwrap().diameter(), 2);
    }

    #[test]
    fn rose_diameter_grid() {
        for s in 3..=8 {
            for t in 3..=8 {
                for p in 0..=10 {
                    assert_eq!(rose(s, t, p).diameter(), s + t, "R({s},{t},{p})");
                }
            }
        }
    }

    #[test]
    fn leaves_and_pendants() {
        assert_eq!(Tree::path(4).unwrap().leaves(), [1, 4]);
        assert_eq!(Tree::star(4).unwrap().leaves(), [2, 3, 4, 5]);
        assert_eq!(Tree::path(1).unwrap().leaves(), [1]);

        assert_eq!(Tree::path(2).unwrap().add_pendant(2).unwrap(), Tree::path(3).unwrap());
        assert_eq!(Tree::star(3).unwrap().add_pendant(1).unwrap(), Tree::star(4).unwrap());
        assert!(Tree::path(2).unwrap().add_pendant(3).is_err());

        assert_eq!(Tree::path(3).unwrap().remove_leaf(3).unwrap(), Tree::path(2).unwrap());
        assert_eq!(Tree::star(3).unwrap().remove_leaf(2).unwrap(), Tree::star(2).unwrap());
        assert_eq!(Tree::path(3).unwrap().remove_leaf(2), Err(Error::NotALeaf(2)));
        assert!(matches!(Tree::path(1).unwrap().remove_leaf(1), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn remove_relabels_by_compaction() {
        // path 1-2-3-4 plus leaf 5 on 2; drop leaf 1
        let t = Tree::from_edges(5, &[(1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        let r = t.remove_leaf(1).unwrap();
        assert_eq!(r.edges(), [(1, 2), (1, 4), (2, 3)]);
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(Tree::path(5).unwrap().centers(), [3]);
        assert_eq!(Tree::path(4).unwrap().centers(), [2, 3]);
        assert_eq!(Tree::star(5).unwrap().centers(), [1]);
    }

    #[test]
    fn canonical_code_examples() {
        let a = Tree::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Tree::from_edges(4, &[(2, 4), (4, 1), (1, 3)]).unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());
        assert_ne!(a.canonical_code(), Tree::star(3).unwrap().canonical_code());

        let r = rose(3, 3, 4);
        let mut rev = r.edges();
        rev.reverse();
        let r2 = Tree::from_edges(12, &rev).unwrap();
        assert_eq!(r.canonical_code(), r2.canonical_code());
        assert_eq!(Tree::path(1).unwrap().canonical_code(), b"()");
    }
}
