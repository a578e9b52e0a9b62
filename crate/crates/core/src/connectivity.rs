//! Exact vertex connectivity via unit-capacity vertex-disjoint path flows.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

/// Split-vertex flow network: vertex `v` becomes `2v` (in) and `2v + 1` (out),
/// joined by a unit arc; each graph edge yields unit arcs out→in both ways.
struct SplitNetwork {
    start: Vec<u32>,
    to: Vec<u32>,
    rev: Vec<u32>,
    cap: Vec<u8>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let nodes = 2 * g.order();
        let mut forward: Vec<(usize, usize)> = (0..g.order()).map(|v| (2 * v, 2 * v + 1)).collect();
        for (u, v) in g.edges() {
            forward.push((2 * u + 1, 2 * v));
            forward.push((2 * v + 1, 2 * u));
        }
        let mut start = vec![0u32; nodes + 1];
        for &(a, b) in &forward {
            start[a + 1] += 1;
            start[b + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let arcs = start[nodes] as usize;
        let mut pos: Vec<u32> = start[..nodes].to_vec();
        let (mut to, mut rev, mut cap) = (vec![0u32; arcs], vec![0u32; arcs], vec![0u8; arcs]);
        for &(a, b) in &forward {
            let (i, j) = (pos[a] as usize, pos[b] as usize);
            pos[a] += 1;
            pos[b] += 1;
            to[i] = b as u32;
            cap[i] = 1;
            rev[i] = j as u32;
            to[j] = a as u32;
            rev[j] = i as u32;
        }
        SplitNetwork { start, to, rev, cap }
    }

    /// Number of internally vertex-disjoint `s`–`t` paths, capped at `limit`.
    fn local_connectivity(&self, s: usize, t: usize, limit: usize, scratch: &mut FlowScratch) -> usize {
        scratch.residual.clear();
        scratch.residual.extend_from_slice(&self.cap);
        let (source, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < limit {
            scratch.pred.iter_mut().for_each(|p| *p = u32::MAX);
            scratch.queue.clear();
            scratch.queue.push_back(source as u32);
            scratch.pred[source] = u32::MAX - 1;
            let mut reached = false;
            'bfs: while let Some(x) = scratch.queue.pop_front() {
                let x = x as usize;
                for i in self.start[x] as usize..self.start[x + 1] as usize {
                    let y = self.to[i] as usize;
                    if scratch.residual[i] > 0 && scratch.pred[y] == u32::MAX {
                        scratch.pred[y] = i as u32;
                        if y == sink {
                            reached = true;
                            break 'bfs;
                        }
                        scratch.queue.push_back(y as u32);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut y = sink;
            while y != source {
                let i = scratch.pred[y] as usize;
                scratch.residual[i] -= 1;
                scratch.residual[self.rev[i] as usize] += 1;
                y = self.to[self.rev[i] as usize] as usize;
            }
            flow += 1;
        }
        flow
    }
}

struct FlowScratch {
    residual: Vec<u8>,
    pred: Vec<u32>,
    queue: VecDeque<u32>,
}

impl FlowScratch {
    fn new(net: &SplitNetwork) -> Self {
        FlowScratch {
            residual: Vec::with_capacity(net.cap.len()),
            pred: vec![u32::MAX; net.start.len() - 1],
            queue: VecDeque::new(),
        }
    }
}

/// `κ(G)`, the minimum number of vertices whose removal disconnects `G` or
/// leaves a single vertex; `κ(K_m) = m - 1`.
///
/// Runs the minimum-degree reduction: with `v` of minimum degree, `κ` is the
/// least of `δ`, the local connectivities between `v` and every non-neighbor,
/// and those between non-adjacent pairs of neighbors of `v`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let delta = g.min_degree();
    if delta == n - 1 {
        return Ok(n - 1);
    }
    let v = (0..n).find(|&v| g.degree(v) == delta).expect("nonempty");
    let net = SplitNetwork::new(g);

    let mut pairs: Vec<(usize, usize)> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).map(|w| (v, w)).collect();
    let nv = g.neighbors(v);
    for (i, &x) in nv.iter().enumerate() {
        for &y in &nv[i + 1..] {
            if !g.has_edge(x as usize, y as usize) {
                pairs.push((x as usize, y as usize));
            }
        }
    }

    let best = par::chunked_min(
        &pairs,
        || FlowScratch::new(&net),
        |scratch, &(s, t)| net.local_connectivity(s, t, delta, scratch),
    );
    Ok(best.map_or(delta, |b| b.min(delta)))
}
