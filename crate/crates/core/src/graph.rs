//! Immutable simple undirected graphs with bit-vector adjacency rows.

use std::collections::VecDeque;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..order`.
///
/// Adjacency is held twice: as packed bit rows for set algebra and as sorted
/// neighbor lists for traversal. Optional labels are display-only.
#[derive(Clone, Debug)]
pub struct Graph {
    rows: Vec<VertexSet>,
    nbrs: Vec<Vec<u32>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; loops are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if order == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut rows = vec![VertexSet::new(order); order];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(Error::VertexOutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let nbrs: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v as u32).collect())
            .collect();
        let edge_count = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            rows,
            nbrs,
            edge_count,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.order() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nbrs.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order())
    }

    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, vertices: I) -> VertexSet {
        VertexSet::from_vertices(self.order(), vertices)
    }

    pub fn min_degree(&self) -> usize {
        self.nbrs.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        self.nbrs.iter().all(|n| n.len() == k).then_some(k)
    }

    /// Open neighborhood `N(U)`: every vertex adjacent to `U`, minus `U` itself.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in set {
            out.union_with(&self.rows[v]);
        }
        out.difference_with(set);
        out
    }

    /// `U ∪ N(U)`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for v in set {
            out.union_with(&self.rows[v]);
        }
        out
    }

    /// Connected components of `G - removed`, ordered by smallest member.
    pub fn components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = removed.clone();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = self.empty_set();
            seen.insert(start);
            comp.insert(start);
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &y in &self.nbrs[x] {
                    let y = y as usize;
                    if seen.insert(y) {
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(&self.empty_set()).len() == 1
    }

    /// Whether the vertices of `set` induce a connected subgraph (false when empty).
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.nbrs[x] {
                let y = y as usize;
                if set.contains(y) && seen.insert(y) {
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == set.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// `cn(G; u, v) = |N(u) ∩ N(v)|`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(self.rows[u].intersection_len(&self.rows[v]))
    }

    /// `|N({u, v})|`, the boundary of a two-vertex set.
    pub fn pair_boundary(&self, u: usize, v: usize) -> usize {
        let mut n = self.rows[u].union_len(&self.rows[v]);
        if self.has_edge(u, v) {
            n -= 2;
        }
        n
    }

    /// Fills `counts[v] = cn(G; u, v)` for every `v` at distance two or less and
    /// returns the touched vertices. `counts` must be zeroed on entry.
    pub(crate) fn two_hop_counts(&self, u: usize, counts: &mut [u32], touched: &mut Vec<u32>) {
        touched.clear();
        for &w in &self.nbrs[u] {
            for &x in &self.nbrs[w as usize] {
                if x as usize != u {
                    if counts[x as usize] == 0 {
                        touched.push(x);
                    }
                    counts[x as usize] += 1;
                }
            }
        }
    }

    fn pair_maxima(&self) -> (usize, Option<usize>) {
        let n = self.order();
        let mut counts = vec![0u32; n];
        let mut touched = Vec::new();
        let mut cn = 0usize;
        let mut l: Option<usize> = None;
        for u in 0..n {
            self.two_hop_counts(u, &mut counts, &mut touched);
            for &x in &touched {
                let c = counts[x as usize] as usize;
                cn = cn.max(c);
                if self.has_edge(u, x as usize) {
                    l = Some(l.map_or(c, |l| l.max(c)));
                }
                counts[x as usize] = 0;
            }
            if self.degree(u) > 0 && l.is_none() {
                l = Some(0);
            }
        }
        (cn, l)
    }

    /// `cn(G)`: maximum common-neighbor count over all vertex pairs.
    pub fn cn_max(&self) -> Result<usize> {
        if self.order() < 2 {
            return Err(Error::TooFewVertices {
                needed: 2,
                actual: self.order(),
            });
        }
        Ok(self.pair_maxima().0)
    }

    /// `l(G)`: maximum common-neighbor count over adjacent pairs.
    pub fn l_max(&self) -> Result<usize> {
        if self.edge_count == 0 {
            return Err(Error::NoEdges);
        }
        Ok(self.pair_maxima().1.unwrap_or(0))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best = usize::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[root] = 0;
            parent[root] = u32::MAX;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(x) = queue.pop_front() {
                // no shorter cycle can close beyond this depth
                if 2 * dist[x] as usize + 1 >= best {
                    break;
                }
                for &y in &self.nbrs[x] {
                    let y = y as usize;
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x as u32;
                        queue.push_back(y);
                    } else if parent[x] != y as u32 {
                        best = best.min((dist[x] + dist[y] + 1) as usize);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 3 {
                break;
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Whether `G` contains a cycle of exactly `len` vertices (not necessarily induced).
    pub fn has_cycle_of_length(&self, len: usize) -> bool {
        if len < 3 || len > self.order() {
            return false;
        }
        let mut on_path = self.empty_set();
        (0..self.order()).any(|start| {
            on_path.insert(start);
            let found = self.cycle_dfs(start, start, 1, len, &mut on_path);
            on_path.remove(start);
            found
        })
    }

    fn cycle_dfs(&self, start: usize, at: usize, depth: usize, len: usize, on_path: &mut VertexSet) -> bool {
        for &y in &self.nbrs[at] {
            let y = y as usize;
            if depth == len {
                if y == start {
                    return true;
                }
                continue;
            }
            // the start is the smallest vertex of the cycle
            if y <= start || on_path.contains(y) {
                continue;
            }
            on_path.insert(y);
            let found = self.cycle_dfs(start, y, depth + 1, len, on_path);
            on_path.remove(y);
            if found {
                return true;
            }
        }
        false
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` in ascending order.
    pub fn induced(&self, set: &VertexSet) -> Result<Graph> {
        let members = set.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in members.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| set.contains(u) && set.contains(v))
            .map(|(u, v)| (index[u], index[v]));
        let g = Graph::from_edges(members.len(), edges)?;
        match &self.labels {
            Some(labels) => g.with_labels(members.iter().map(|&v| labels[v].clone()).collect()),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::from_edges(0, []).unwrap_err(), Error::EmptyGraph);
        assert_eq!(Graph::from_edges(3, [(1, 1)]).unwrap_err(), Error::SelfLoop(1));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn neighborhood_of_triangle_vertex() {
        let g = complete(3);
        assert_eq!(g.neighborhood(&g.vertex_set([0])).to_vec(), vec![1, 2]);
        assert!(g.neighborhood(&g.empty_set()).is_empty());
    }

    #[test]
    fn neighborhood_of_antipodes_on_8_cycle() {
        let g = cycle(8);
        assert_eq!(g.neighborhood(&g.vertex_set([0, 4])).to_vec(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn components_of_cycle_minus_antipodes() {
        let g = cycle(8);
        let comps = g.components(&g.vertex_set([0, 4]));
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![1, 2, 3]);
        assert_eq!(comps[1].to_vec(), vec![5, 6, 7]);
        assert!(g.components(&VertexSet::full(8)).is_empty());
        assert_eq!(g.components(&g.empty_set()).len(), 1);
    }

    #[test]
    fn common_neighbor_errors() {
        let g = cycle(4);
        assert_eq!(g.common_neighbors(1, 1), Err(Error::SameVertex(1)));
        assert_eq!(g.common_neighbors(0, 2), Ok(2));
        assert_eq!(g.common_neighbors(0, 1), Ok(0));
        let single = Graph::from_edges(1, []).unwrap();
        assert!(single.cn_max().is_err());
        assert_eq!(single.l_max(), Err(Error::NoEdges));
    }

    #[test]
    fn pair_boundary_of_four_cycle_edge() {
        let g = cycle(4);
        assert_eq!(g.pair_boundary(0, 1), 2);
        assert_eq!(g.pair_boundary(0, 2), 2);
    }

    #[test]
    fn girth_and_cycles() {
        assert_eq!(cycle(8).girth(), Some(8));
        assert_eq!(complete(4).girth(), Some(3));
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
        assert!(cycle(5).has_cycle_of_length(5));
        assert!(!cycle(5).has_cycle_of_length(4));
        assert!(complete(5).has_cycle_of_length(4));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = cycle(6).with_labels((0..6).map(|i| format!("v{i}")).collect()).unwrap();
        let h = g.induced(&g.vertex_set([1, 2, 3])).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.label(0), Some("v1"));
    }

    #[test]
    fn connectivity_of_induced_sets() {
        let g = cycle(6);
        assert!(g.induces_connected(&g.vertex_set([0, 1, 5])));
        assert!(!g.induces_connected(&g.vertex_set([0, 2])));
        assert!(!g.induces_connected(&g.empty_set()));
    }
}
