//! Enumeration of connected vertex sets with closed-neighborhood pruning.
//!
//! Every connected set is produced exactly once, rooted at its smallest vertex
//! (the extension-set scheme of Wernicke's ESU). Seeds are searched in fixed
//! chunks and reduced in seed order, so results and node counts do not depend
//! on the number of worker threads.

use crate::graph::Graph;
use crate::par;

/// Seeds per parallel batch.
const CHUNK: usize = 64;

/// What the search does after visiting a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    /// Keep growing this set.
    Continue,
    /// Do not grow this set; siblings are still visited.
    Prune,
    /// Abandon the current seed.
    Stop,
}

/// Callback for each connected set reached from one seed.
pub trait SetVisitor {
    type Found: Send;

    /// `set` lists the vertices in insertion order (the seed first);
    /// `closed` is `|N[set]|`, so `|N(set)| = closed - set.len()`.
    fn visit(&mut self, g: &Graph, set: &[usize], closed: usize) -> Flow;

    /// What this seed found, if anything.
    fn finish(self) -> Option<Self::Found>;
}

/// Result of a scan over all seeds.
#[derive(Clone, Debug)]
pub struct SeedScan<R> {
    /// Per-seed findings in seed order.
    pub hits: Vec<(usize, R)>,
    /// Connected sets visited, summed in seed order up to where the scan ended.
    pub searched: u64,
    /// The node budget ran out before the scan finished.
    pub exhausted: bool,
}

struct Walker<'g, V> {
    g: &'g Graph,
    visitor: V,
    cover: Vec<u16>,
    closed: usize,
    set: Vec<usize>,
    max_size: usize,
    nodes: u64,
    cap: u64,
    halted: bool,
    exhausted: bool,
}

impl<V: SetVisitor> Walker<'_, V> {
    fn add(&mut self, v: usize) {
        self.set.push(v);
        for w in std::iter::once(v).chain(self.g.neighbors(v).iter().map(|&w| w as usize)) {
            if self.cover[w] == 0 {
                self.closed += 1;
            }
            self.cover[w] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        self.set.pop();
        for w in std::iter::once(v).chain(self.g.neighbors(v).iter().map(|&w| w as usize)) {
            self.cover[w] -= 1;
            if self.cover[w] == 0 {
                self.closed -= 1;
            }
        }
    }

    /// Adds `v`, visits, and reports whether the set may grow further.
    fn enter(&mut self, v: usize) -> bool {
        self.add(v);
        self.nodes += 1;
        if self.nodes > self.cap {
            self.halted = true;
            self.exhausted = true;
            return false;
        }
        match self.visitor.visit(self.g, &self.set, self.closed) {
            Flow::Continue => self.set.len() < self.max_size,
            Flow::Prune => false,
            Flow::Stop => {
                self.halted = true;
                false
            }
        }
    }

    fn extend(&mut self, ext: &mut Vec<usize>, root: usize) {
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(
                self.g
                    .neighbors(w)
                    .iter()
                    .map(|&u| u as usize)
                    .filter(|&u| u > root && self.cover[u] == 0),
            );
            if self.enter(w) {
                self.extend(&mut next, root);
            }
            self.remove(w);
            if self.halted {
                return;
            }
        }
    }
}

/// Visits every connected set of at most `max_size` vertices whose smallest
/// vertex is `seed`, giving up after `cap` sets. Returns the visitor's finding,
/// the number of sets visited and whether the cap was hit.
pub fn search_seed<V: SetVisitor>(
    g: &Graph,
    seed: usize,
    max_size: usize,
    cap: u64,
    visitor: V,
) -> (Option<V::Found>, u64, bool) {
    let mut walker = Walker {
        g,
        visitor,
        cover: vec![0; g.order()],
        closed: 0,
        set: Vec::with_capacity(max_size),
        max_size,
        nodes: 0,
        cap,
        halted: false,
        exhausted: false,
    };
    if max_size > 0 && walker.enter(seed) {
        let mut ext: Vec<usize> = g.neighbors(seed).iter().map(|&u| u as usize).filter(|&u| u > seed).collect();
        walker.extend(&mut ext, seed);
    }
    let (nodes, exhausted) = (walker.nodes.min(cap), walker.exhausted);
    (walker.visitor.finish(), nodes, exhausted)
}

/// Runs [`search_seed`] from every vertex. With `first_only` the scan ends at
/// the first seed that finds something. The budget caps the total number of
/// sets visited.
pub fn scan_seeds<V, F>(g: &Graph, max_size: usize, budget: u64, first_only: bool, make: F) -> SeedScan<V::Found>
where
    V: SetVisitor,
    F: Fn(usize) -> V + Sync + Send,
{
    let n = g.order();
    let mut scan = SeedScan {
        hits: Vec::new(),
        searched: 0,
        exhausted: false,
    };
    for start in (0..n).step_by(CHUNK) {
        let remaining = budget - scan.searched;
        let results = par::map_range(start..n.min(start + CHUNK), |seed| {
            search_seed(g, seed, max_size, remaining, make(seed))
        });
        for (offset, (found, nodes, exhausted)) in results.into_iter().enumerate() {
            scan.searched += nodes;
            if exhausted || scan.searched > budget {
                scan.searched = scan.searched.min(budget);
                scan.exhausted = true;
                return scan;
            }
            if let Some(found) = found {
                scan.hits.push((start + offset, found));
                if first_only {
                    return scan;
                }
            }
        }
    }
    scan
}

/// Counts connected sets by size; a visitor mainly useful for testing.
#[derive(Clone, Debug, Default)]
pub struct SizeCensus {
    pub counts: Vec<u64>,
}

impl SetVisitor for SizeCensus {
    type Found = Vec<u64>;

    fn visit(&mut self, _g: &Graph, set: &[usize], _closed: usize) -> Flow {
        if self.counts.len() <= set.len() {
            self.counts.resize(set.len() + 1, 0);
        }
        self.counts[set.len()] += 1;
        Flow::Continue
    }

    fn finish(self) -> Option<Vec<u64>> {
        Some(self.counts)
    }
}

/// Number of connected induced subgraphs of each size up to `max_size`.
pub fn connected_set_counts(g: &Graph, max_size: usize) -> Vec<u64> {
    let scan = scan_seeds(g, max_size, u64::MAX, false, |_| SizeCensus::default());
    let mut total = vec![0; max_size + 1];
    for (_, counts) in scan.hits {
        for (size, c) in counts.into_iter().enumerate() {
            total[size] += c;
        }
    }
    total
}
