//! Brute-force oracles shared by the integration tests. They work on plain
//! adjacency bitmasks and never call into the search code they check.

#![allow(dead_code)]

use topodiag_core::Graph;

/// Adjacency rows as `u64` masks; graphs here have at most 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.order() <= 64, "oracle graphs have at most 64 vertices");
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Components of the graph induced on `alive`, each as a mask.
pub fn components(adj: &[u64], alive: u64) -> Vec<u64> {
    let mut left = alive;
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut rest = comp;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grown |= adj[v] & alive;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

pub fn neighborhood(adj: &[u64], set: u64) -> u64 {
    let mut nb = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        nb |= adj[v];
    }
    nb & !set
}

/// Calls `f` on every `k`-subset of `0..n` as a mask, stopping when it returns true.
pub fn any_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, mask: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(mask);
        }
        (start..=n - k).any(|v| rec(v + 1, n, k - 1, mask | 1 << v, f))
    }
    k <= n && rec(0, n, k, 0, &mut f)
}

/// `κ₁`: the fewest vertices whose removal disconnects the graph with no
/// isolated vertex left.
pub fn kappa1(g: &Graph) -> Option<usize> {
    let adj = masks(g);
    let n = g.order();
    (0..n).find(|&s| {
        any_subset(n, s, |f| {
            let comps = components(&adj, full(n) & !f);
            comps.len() >= 2 && comps.iter().all(|c| c.count_ones() >= 2)
        })
    })
}

/// Whether `g` is t/t-diagnosable, straight from the characterization: every
/// `S` with `|S| <= t - 1` leaves at most one isolated vertex, and every other
/// component of `G - S` has more than `2(t - |S|)` vertices.
pub fn tt_diagnosable(g: &Graph, t: usize) -> bool {
    let adj = masks(g);
    let n = g.order();
    (0..t.min(n + 1)).all(|p| {
        !any_subset(n, p, |s| {
            let comps = components(&adj, full(n) & !s);
            let trivial = comps.iter().filter(|c| c.count_ones() == 1).count();
            trivial >= 2
                || comps
                    .iter()
                    .any(|c| c.count_ones() >= 2 && c.count_ones() as usize <= 2 * (t - p))
        })
    })
}

/// Largest t with t/t-diagnosability (0 if not even 1/1).
pub fn tp(g: &Graph) -> usize {
    let mut t = 0;
    while tt_diagnosable(g, t + 1) {
        t += 1;
    }
    t
}

/// Minimum of `|N(U)|` over all `m`-subsets.
pub fn min_boundary(g: &Graph, m: usize) -> usize {
    let adj = masks(g);
    let mut best = usize::MAX;
    any_subset(g.order(), m, |u| {
        best = best.min(neighborhood(&adj, u).count_ones() as usize);
        false
    });
    best
}

/// Signed symbols of a vertex label such as `1-23` or `4132`.
pub fn word(label: &str) -> Vec<i32> {
    let mut out = Vec::new();
    let mut negative = false;
    for c in label.chars() {
        if c == '-' {
            negative = true;
        } else {
            let d = c.to_digit(10).expect("digit") as i32;
            out.push(if negative { -d } else { d });
            negative = false;
        }
    }
    out
}

/// Parity of an unsigned permutation word: true when even.
pub fn is_even(word: &[i32]) -> bool {
    let inversions = (0..word.len())
        .flat_map(|i| (i + 1..word.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| word[i] > word[j])
        .count();
    inversions % 2 == 0
}

/// Undirected edge counts between the classes `part(v)` assigns.
pub fn cross_counts(g: &Graph, parts: usize, part: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut counts = vec![vec![0; parts]; parts];
    for (u, v) in g.edges() {
        let (a, b) = (part(u), part(v));
        if a != b {
            counts[a][b] += 1;
            counts[b][a] += 1;
        }
    }
    counts
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    Graph::from_edges(n, (0..n).flat_map(|v| (0..d).map(move |j| (v, v ^ 1 << j))).filter(|(a, b)| a < b)).unwrap()
}
