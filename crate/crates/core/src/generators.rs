//! Graph construction for every family, plus the recursive decompositions the
//! structural lemmas are stated over.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;
use crate::perm::{Permutation, PositionMap, SignedPermutation};
use crate::topology::TopologySpec;

/// Builds the family member described by `spec`, with readable vertex labels.
pub fn build(spec: &TopologySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n();
    match spec {
        TopologySpec::AlternatingGroupGraph { .. } => cayley(n, &alternating_group_generators(n)?, true),
        TopologySpec::AlternatingGroupNetwork { .. } => cayley(n, &alternating_network_generators(n)?, true),
        TopologySpec::SplitStar { .. } => cayley(n, &split_star_generators(n)?, false),
        TopologySpec::TranspositionTree { tree } => {
            let gens = tree
                .edges()
                .iter()
                .map(|&(a, b)| PositionMap::transposition(n, a as usize, b as usize))
                .collect::<Result<Vec<_>>>()?;
            cayley(n, &gens, false)
        }
        TopologySpec::TwoTree { twotree } => {
            let mut gens = Vec::new();
            for [a, b, c] in twotree.triangles() {
                let g = PositionMap::from_cycles(n, &[&[a as usize, b as usize, c as usize]])?;
                gens.push(g.inverse());
                gens.push(g);
            }
            cayley(n, &gens, true)
        }
        TopologySpec::BcHypercube { .. } => {
            let order = 1usize << n;
            let edges = (0..order).flat_map(|v| (0..n).map(move |j| (v, v ^ 1 << j)).filter(|&(u, w)| u < w));
            Graph::from_edges(order, edges)?.with_labels(binary_labels(n))
        }
        TopologySpec::BcRandom { seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let edges = random_bc_edges(n, &mut rng);
            Graph::from_edges(1 << n, edges)?.with_labels(binary_labels(n))
        }
        TopologySpec::KAryCube { k, .. } => kary_cube(n, *k),
        TopologySpec::BurntPancake { .. } => burnt_pancake(n),
    }
}

/// `(1 2 i)` and `(1 i 2)` for `3 <= i <= n`.
pub fn alternating_group_generators(n: usize) -> Result<Vec<PositionMap>> {
    let mut gens = Vec::new();
    for i in 3..=n {
        gens.push(PositionMap::from_cycles(n, &[&[1, 2, i]])?);
        gens.push(PositionMap::from_cycles(n, &[&[1, i, 2]])?);
    }
    Ok(gens)
}

/// `(1 2 3)`, `(1 3 2)` and `(1 2)(3 i)` for `4 <= i <= n`.
pub fn alternating_network_generators(n: usize) -> Result<Vec<PositionMap>> {
    let mut gens = vec![
        PositionMap::from_cycles(n, &[&[1, 2, 3]])?,
        PositionMap::from_cycles(n, &[&[1, 3, 2]])?,
    ];
    for i in 4..=n {
        gens.push(PositionMap::from_cycles(n, &[&[1, 2], &[3, i]])?);
    }
    Ok(gens)
}

/// `(1 2)`, `(1 2 k)` and `(1 k 2)` for `3 <= k <= n`.
pub fn split_star_generators(n: usize) -> Result<Vec<PositionMap>> {
    let mut gens = vec![PositionMap::transposition(n, 1, 2)?];
    for k in 3..=n {
        gens.push(PositionMap::from_cycles(n, &[&[1, 2, k]])?);
        gens.push(PositionMap::from_cycles(n, &[&[1, k, 2]])?);
    }
    Ok(gens)
}

/// Index of a permutation in the dense numbering used by [`build`]: the
/// Lehmer rank over `S_n`, or half of it over `A_n`.
pub fn permutation_index(p: &Permutation, alternating: bool) -> usize {
    if alternating {
        p.rank() / 2
    } else {
        p.rank()
    }
}

/// Inverse of [`permutation_index`].
pub fn permutation_at(n: usize, index: usize, alternating: bool) -> Permutation {
    if !alternating {
        return Permutation::unrank(n, index);
    }
    // ranks 2i and 2i+1 always differ in parity
    let p = Permutation::unrank(n, 2 * index);
    if p.is_even() {
        p
    } else {
        Permutation::unrank(n, 2 * index + 1)
    }
}

fn cayley(n: usize, gens: &[PositionMap], alternating: bool) -> Result<Graph> {
    let order = if alternating {
        crate::perm::factorial(n) / 2
    } else {
        crate::perm::factorial(n)
    };
    let rows = par::map_range(0..order, |v| {
        let p = permutation_at(n, v, alternating);
        let nbrs: Vec<usize> = gens.iter().map(|g| permutation_index(&p.act(g), alternating)).collect();
        (p.to_string(), nbrs)
    });
    let mut labels = Vec::with_capacity(order);
    let mut edges = Vec::new();
    for (v, (label, nbrs)) in rows.into_iter().enumerate() {
        labels.push(label);
        edges.extend(nbrs.into_iter().filter(|&w| v < w).map(|w| (v, w)));
    }
    Graph::from_edges(order, edges)?.with_labels(labels)
}

fn binary_labels(n: usize) -> Vec<String> {
    (0..1usize << n).map(|v| format!("{v:0n$b}")).collect()
}

/// Two independent copies of `X_{n-1}` joined by a uniformly random perfect
/// matching, drawing from `rng` in a fixed order.
fn random_bc_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![(0, 1)];
    }
    let half = 1usize << (n - 1);
    let mut edges = random_bc_edges(n - 1, rng);
    let upper = random_bc_edges(n - 1, rng);
    edges.extend(upper.into_iter().map(|(u, v)| (u + half, v + half)));
    let mut matching: Vec<usize> = (0..half).collect();
    matching.shuffle(rng);
    edges.extend(matching.into_iter().enumerate().map(|(i, j)| (i, half + j)));
    edges
}

fn kary_cube(n: usize, k: usize) -> Result<Graph> {
    let order = k.pow(n as u32);
    let mut edges = Vec::new();
    for v in 0..order {
        let mut place = 1;
        for _ in 0..n {
            let digit = v / place % k;
            let up = v - digit * place + (digit + 1) % k * place;
            edges.push((v.min(up), v.max(up)));
            place *= k;
        }
    }
    let labels = (0..order)
        .map(|v| {
            let digits: Vec<String> = (0..n).rev().map(|j| (v / k.pow(j as u32) % k).to_string()).collect();
            digits.join(if k > 10 { "," } else { "" })
        })
        .collect();
    Graph::from_edges(order, edges)?.with_labels(labels)
}

fn burnt_pancake(n: usize) -> Result<Graph> {
    let order = crate::perm::factorial(n) << n;
    let rows = par::map_range(0..order, |v| {
        let p = SignedPermutation::from_index(n, v);
        let nbrs: Vec<usize> = (1..=n).map(|i| p.prefix_reversal(i).index()).collect();
        (p.to_string(), nbrs)
    });
    let mut labels = Vec::with_capacity(order);
    let mut edges = Vec::new();
    for (v, (label, nbrs)) in rows.into_iter().enumerate() {
        labels.push(label);
        edges.extend(nbrs.into_iter().filter(|&w| v < w).map(|w| (v, w)));
    }
    Graph::from_edges(order, edges)?.with_labels(labels)
}

/// A partition of the vertices into the copies of the recursive decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: usize,
    pub part_of: Vec<u32>,
    /// What the part index records, e.g. `last symbol`.
    pub key: String,
}

impl Decomposition {
    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.parts];
        for &p in &self.part_of {
            sizes[p as usize] += 1;
        }
        sizes
    }

    /// Neighbors of `v` outside its own part.
    pub fn outside_neighbors(&self, g: &Graph, v: usize) -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| self.part_of[w] != self.part_of[v])
            .collect()
    }

    /// Symmetric matrix of edge counts between distinct parts; the diagonal is zero.
    pub fn cross_edge_census(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.parts]; self.parts];
        for (u, v) in g.edges() {
            let (a, b) = (self.part_of[u] as usize, self.part_of[v] as usize);
            if a != b {
                m[a][b] += 1;
                m[b][a] += 1;
            }
        }
        m
    }

    /// Each part induced as its own graph, in part order.
    pub fn part_graphs(&self, g: &Graph) -> Result<Vec<Graph>> {
        (0..self.parts)
            .map(|p| g.induced(&g.vertex_set((0..g.order()).filter(|&v| self.part_of[v] as usize == p))))
            .collect()
    }
}

/// The standard recursive decomposition of a family member built by [`build`]:
///
/// * `AG`, `AN`, split-star, 2-tree: `n` parts by the last symbol.
/// * transposition tree: `n` parts by the symbol at the largest leaf position.
/// * `BC`: two halves by the top coordinate.
/// * `Q_n^k`: `k` parts by the top digit.
/// * `BP`: `2n` parts by the last signed symbol, `i > 0` to part `i - 1` and
///   `-i` to part `n + i - 1`.
pub fn decomposition(spec: &TopologySpec, g: &Graph) -> Result<Decomposition> {
    let n = spec.n();
    if Some(g.order()) != spec.expected_order() {
        return Err(Error::InvalidArgument(format!(
            "graph has {} vertices, {} has {:?}",
            g.order(),
            spec.name(),
            spec.expected_order()
        )));
    }
    let order = g.order();
    let by_symbol = |position: usize, alternating: bool| -> Vec<u32> {
        par::map_range(0..order, |v| permutation_at(n, v, alternating).at(position) as u32 - 1)
    };
    let (parts, part_of, key) = match spec {
        TopologySpec::AlternatingGroupGraph { .. }
        | TopologySpec::AlternatingGroupNetwork { .. }
        | TopologySpec::TwoTree { .. } => (n, by_symbol(n, true), "last symbol".to_string()),
        TopologySpec::SplitStar { .. } => (n, by_symbol(n, false), "last symbol".to_string()),
        TopologySpec::TranspositionTree { tree } => {
            let leaf = tree.last_leaf() as usize;
            (n, by_symbol(leaf, false), format!("symbol at position {leaf}"))
        }
        TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => (
            2,
            (0..order).map(|v| (v >> (n - 1)) as u32).collect(),
            "top coordinate".to_string(),
        ),
        TopologySpec::KAryCube { k, .. } => (
            *k,
            (0..order).map(|v| (v / k.pow(n as u32 - 1)) as u32).collect(),
            "top digit".to_string(),
        ),
        TopologySpec::BurntPancake { .. } => {
            let part_of = (0..order)
                .map(|v| {
                    let s = SignedPermutation::from_index(n, v).word()[n - 1];
                    if s > 0 {
                        s as u32 - 1
                    } else {
                        (n as i32 - s as i32 - 1) as u32
                    }
                })
                .collect();
            (2 * n, part_of, "last signed symbol".to_string())
        }
    };
    Ok(Decomposition { parts, part_of, key })
}

/// Even/odd split of a transposition-generated Cayley graph on `S_n`.
pub fn parity_partition(spec: &TopologySpec, g: &Graph) -> Result<Decomposition> {
    match spec {
        TopologySpec::SplitStar { .. } | TopologySpec::TranspositionTree { .. } => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "parity partition applies to S_n families, not {}",
                spec.name()
            )))
        }
    }
    if Some(g.order()) != spec.expected_order() {
        return Err(Error::InvalidArgument("graph does not match spec".into()));
    }
    let n = spec.n();
    let part_of = par::map_range(0..g.order(), |v| u32::from(!Permutation::unrank(n, v).is_even()));
    Ok(Decomposition {
        parts: 2,
        part_of,
        key: "parity".to_string(),
    })
}
