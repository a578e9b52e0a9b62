//! Boundary minima, extra connectivity, and the expansion and cut-structure
//! checks, each reported as a [`LemmaVerdict`].

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::connectivity::vertex_connectivity;
use crate::enumerate::{scan_seeds, search_seed, Flow, SetVisitor};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

/// Default node budget for one check.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    BudgetExhausted,
    Inapplicable,
}

/// Which predicate a verdict's witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `|N(witness)| = measured < bound`.
    Boundary,
    /// `cn(witness pair) = measured > bound`.
    CommonNeighbors,
    /// Removing `cut` (`|cut| <= bound`) leaves a component structure the rule forbids.
    CutStructure,
    /// A plain numeric condition; no witness set.
    Arithmetic,
}

/// A cut the rule explicitly tolerates, recorded for the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutException {
    pub cut: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

/// Outcome of one lemma or condition check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub id: String,
    pub status: Status,
    pub bound: usize,
    pub witness: Option<Vec<usize>>,
    pub searched: u64,
    pub kind: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exceptions: Vec<CutException>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl LemmaVerdict {
    pub fn new(id: impl Into<String>, kind: CheckKind, bound: usize) -> Self {
        LemmaVerdict {
            id: id.into(),
            status: Status::Holds,
            bound,
            witness: None,
            searched: 0,
            kind,
            measured: None,
            cut: None,
            exceptions: Vec::new(),
            note: String::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    fn violated(mut self, witness: Vec<usize>, measured: Option<usize>) -> Self {
        self.status = Status::Violated;
        self.witness = Some(witness);
        self.measured = measured;
        self
    }

    fn exhausted(mut self, note: impl Into<String>) -> Self {
        self.status = Status::BudgetExhausted;
        self.note = note.into();
        self
    }

    pub(crate) fn inapplicable(mut self, note: impl Into<String>) -> Self {
        self.status = Status::Inapplicable;
        self.note = note.into();
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Re-evaluates the violated predicate on the stored witness. Verdicts
    /// without a witness recheck trivially. `rule` is needed for cut verdicts.
    pub fn recheck(&self, g: &Graph, rule: Option<&CutRule>) -> bool {
        let Some(witness) = &self.witness else {
            return self.status != Status::Violated;
        };
        if witness.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let set = g.vertex_set(witness.iter().copied());
        match self.kind {
            CheckKind::Boundary => {
                let b = g.neighborhood(&set).len();
                Some(b) == self.measured && b < self.bound
            }
            CheckKind::CommonNeighbors => {
                witness.len() == 2
                    && g.common_neighbors(witness[0], witness[1]).ok() == self.measured
                    && self.measured.is_some_and(|m| m > self.bound)
            }
            CheckKind::CutStructure => {
                let (Some(cut), Some(rule)) = (&self.cut, rule) else {
                    return false;
                };
                let f = g.vertex_set(cut.iter().copied());
                f.len() <= rule.bound
                    && f.is_disjoint(&set)
                    && g.components(&f).contains(&set)
                    && matches!(classify_cut(g, &f, rule), CutOutcome::Violation(_))
            }
            CheckKind::Arithmetic => false,
        }
    }
}

// ---------------------------------------------------------------------------
// boundary minimum

/// Minimum of `|N(U)|` over all `m`-subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMin {
    pub m: usize,
    pub value: usize,
    pub witness: Vec<usize>,
    /// The search finished; otherwise `value` is only an upper bound.
    pub exact: bool,
    pub searched: u64,
}

struct SubsetSearch<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    m: usize,
    cover: Vec<u16>,
    closed: usize,
    decided: Vec<bool>,
    closed_decided: usize,
    chosen: Vec<usize>,
    best: usize,
    best_set: Option<Vec<usize>>,
    nodes: u64,
    cap: u64,
    exhausted: bool,
}

impl SubsetSearch<'_> {
    fn decide(&mut self, v: usize) {
        self.decided[v] = true;
        if self.cover[v] > 0 {
            self.closed_decided += 1;
        }
    }

    fn undecide(&mut self, v: usize) {
        self.decided[v] = false;
        if self.cover[v] > 0 {
            self.closed_decided -= 1;
        }
    }

    fn include(&mut self, v: usize) {
        self.decide(v);
        self.chosen.push(v);
        for w in std::iter::once(v).chain(self.g.neighbors(v).iter().map(|&w| w as usize)) {
            if self.cover[w] == 0 {
                self.closed += 1;
                if self.decided[w] {
                    self.closed_decided += 1;
                }
            }
            self.cover[w] += 1;
        }
    }

    fn exclude_chosen(&mut self, v: usize) {
        self.chosen.pop();
        for w in std::iter::once(v).chain(self.g.neighbors(v).iter().map(|&w| w as usize)) {
            self.cover[w] -= 1;
            if self.cover[w] == 0 {
                self.closed -= 1;
                if self.decided[w] {
                    self.closed_decided -= 1;
                }
            }
        }
        self.undecide(v);
    }

    /// Boundary vertices already fixed plus the unavoidable part of the rest.
    fn lower_bound(&self) -> usize {
        let s = self.chosen.len();
        let fixed = self.closed_decided - s;
        let open = self.closed - s - fixed;
        fixed + open.saturating_sub(self.m - s)
    }

    fn descend(&mut self, from: usize) {
        let s = self.chosen.len();
        if s == self.m {
            let value = self.closed - s;
            if value < self.best {
                self.best = value;
                let mut set = self.chosen.clone();
                set.sort_unstable();
                self.best_set = Some(set);
            }
            return;
        }
        let mut skipped = Vec::new();
        for i in from..self.order.len() {
            if self.order.len() - i < self.m - s || self.lower_bound() >= self.best {
                break;
            }
            let v = self.order[i];
            self.nodes += 1;
            if self.nodes > self.cap {
                self.exhausted = true;
                break;
            }
            self.include(v);
            if self.lower_bound() < self.best {
                self.descend(i + 1);
            }
            self.exclude_chosen(v);
            if self.exhausted {
                break;
            }
            self.decide(v);
            skipped.push(v);
        }
        for v in skipped {
            self.undecide(v);
        }
    }
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in g.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    order.push(y as usize);
                }
            }
        }
    }
    order
}

/// Grows a connected set from `start`, each step adding the neighbor that
/// keeps the boundary smallest.
fn greedy_boundary(g: &Graph, start: usize, m: usize) -> (usize, Vec<usize>) {
    let mut set = g.empty_set();
    set.insert(start);
    while set.len() < m {
        let boundary = g.neighborhood(&set);
        let pool: Vec<usize> = if boundary.is_empty() {
            (0..g.order()).filter(|&v| !set.contains(v)).take(1).collect()
        } else {
            boundary.to_vec()
        };
        let next = pool
            .into_iter()
            .min_by_key(|&v| {
                let mut s = set.clone();
                s.insert(v);
                (g.neighborhood(&s).len(), v)
            })
            .expect("m < order");
        set.insert(next);
    }
    (g.neighborhood(&set).len(), set.to_vec())
}

/// Exact `min |N(U)|` over all `U` with `|U| = m`, connected or not.
///
/// Branch and bound over vertices in breadth-first order, splitting the root
/// by the first chosen vertex. The first branch runs alone and its optimum
/// seeds every other branch, which then only look for strict improvements.
pub fn min_boundary(g: &Graph, m: usize, budget: u64) -> Result<BoundaryMin> {
    let n = g.order();
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!("set size {m} must be in 1..{n}")));
    }
    let order = bfs_order(g);
    let (greedy, greedy_set) = greedy_boundary(g, order[0], m);
    let run = |first: usize, incumbent: usize, cap: u64| {
        let mut search = SubsetSearch {
            g,
            order: order.clone(),
            m,
            cover: vec![0; n],
            closed: 0,
            decided: vec![false; n],
            closed_decided: 0,
            chosen: Vec::with_capacity(m),
            best: incumbent,
            best_set: None,
            nodes: 0,
            cap,
            exhausted: false,
        };
        for &v in &order[..first] {
            search.decide(v);
        }
        search.nodes += 1;
        if search.nodes <= cap {
            search.include(order[first]);
            search.descend(first + 1);
        } else {
            search.exhausted = true;
        }
        (search.best_set.map(|s| (search.best, s)), search.nodes.min(cap), search.exhausted)
    };

    let mut best = (greedy, greedy_set);
    let (found, nodes, exhausted) = run(0, greedy + 1, budget);
    let mut searched = nodes;
    if let Some(f) = found {
        best = f;
    }
    let mut finished = !exhausted;
    let last_first = n - m;
    let mut start = 1;
    while finished && start <= last_first {
        let end = (start + 64).min(last_first + 1);
        let remaining = budget - searched;
        let incumbent = best.0;
        let results = par::map_range(start..end, |first| run(first, incumbent, remaining));
        for (found, nodes, exhausted) in results {
            searched += nodes;
            if exhausted || searched > budget {
                searched = searched.min(budget);
                finished = false;
                break;
            }
            if let Some(f) = found {
                if f.0 < best.0 {
                    best = f;
                }
            }
        }
        start = end;
    }
    Ok(BoundaryMin {
        m,
        value: best.0,
        witness: best.1,
        exact: finished,
        searched,
    })
}

/// Checks `|N(U)| >= bound` for every size in `sizes` with [`min_boundary`];
/// the witness is the minimizer of the first failing size.
pub fn expansion_by_minimum(
    g: &Graph,
    id: &str,
    sizes: std::ops::RangeInclusive<usize>,
    bound: usize,
    budget: u64,
) -> Result<(LemmaVerdict, Vec<BoundaryMin>)> {
    let mut verdict = LemmaVerdict::new(id, CheckKind::Boundary, bound);
    let mut rows = Vec::new();
    let mut first_failure: Option<BoundaryMin> = None;
    let mut incomplete = Vec::new();
    for m in sizes {
        if m >= g.order() {
            break;
        }
        let row = min_boundary(g, m, budget.saturating_sub(verdict.searched).max(1))?;
        verdict.searched += row.searched;
        if row.value < bound && first_failure.is_none() {
            first_failure = Some(row.clone());
        }
        if !row.exact {
            incomplete.push(m);
        }
        rows.push(row);
    }
    let verdict = if let Some(f) = first_failure {
        let note = format!("|N(U)| = {} < {} at |U| = {}", f.value, bound, f.m);
        verdict.violated(f.witness, Some(f.value)).with_note(note)
    } else if !incomplete.is_empty() {
        verdict.exhausted(format!("minimum not certified for |U| in {incomplete:?}"))
    } else {
        verdict
    };
    Ok((verdict, rows))
}

// ---------------------------------------------------------------------------
// threshold expansion via connected sets

/// First non-adjacent pair (lexicographic) with `|N({u,v})| < bound`.
fn small_pair(g: &Graph, bound: usize, adjacent_too: bool) -> Option<(usize, usize, usize)> {
    let n = g.order();
    par::map_range(0..n, |u| {
        (u + 1..n)
            .filter(|&v| adjacent_too || !g.has_edge(u, v))
            .map(|v| (v, g.pair_boundary(u, v)))
            .find(|&(_, b)| b < bound)
            .map(|(v, b)| (u, v, b))
    })
    .into_iter()
    .flatten()
    .next()
}

struct ThinSet {
    max_size: usize,
    bound: usize,
    found: Option<(Vec<usize>, usize)>,
}

impl SetVisitor for ThinSet {
    type Found = (Vec<usize>, usize);

    fn visit(&mut self, _g: &Graph, set: &[usize], closed: usize) -> Flow {
        if closed >= self.max_size + self.bound {
            return Flow::Prune;
        }
        let boundary = closed - set.len();
        if set.len() >= 2 && boundary < self.bound {
            let mut s = set.to_vec();
            s.sort_unstable();
            self.found = Some((s, boundary));
            return Flow::Stop;
        }
        Flow::Continue
    }

    fn finish(self) -> Option<(Vec<usize>, usize)> {
        self.found
    }
}

/// Decides whether `|N(U)| >= bound` for every `U` with `2 <= |U| <= max_size`.
///
/// Any such `U` either contains a connected component `C` of size at least two,
/// whose boundary is contained in `N(U)`, or is independent, so any two of its
/// vertices already have boundary inside `N(U)`. It therefore suffices to check
/// non-adjacent pairs and connected sets.
pub fn expansion_check(g: &Graph, id: &str, max_size: usize, bound: usize, budget: u64) -> LemmaVerdict {
    let verdict = LemmaVerdict::new(id, CheckKind::Boundary, bound);
    if max_size < 2 {
        return verdict;
    }
    if let Some((u, v, b)) = small_pair(g, bound, false) {
        return verdict.violated(vec![u, v], Some(b));
    }
    let max_size = max_size.min(g.order());
    let scan = scan_seeds(g, max_size, budget, true, |_| ThinSet {
        max_size,
        bound,
        found: None,
    });
    let mut verdict = verdict;
    verdict.searched = scan.searched;
    if let Some((_, (set, b))) = scan.hits.into_iter().next() {
        return verdict.violated(set, Some(b));
    }
    if scan.exhausted {
        return verdict.exhausted("connected-set scan ran out of budget");
    }
    verdict
}

/// `|N({u,v})| >= 2k - 2 - l` for all pairs, given `cn(G) <= 2`.
pub fn pair_boundary_check(g: &Graph, k: usize, l: usize) -> Result<LemmaVerdict> {
    let bound = (2 * k).saturating_sub(2 + l);
    let verdict = LemmaVerdict::new("lem-3.1", CheckKind::Boundary, bound);
    let cn = g.cn_max()?;
    if cn > 2 {
        return Ok(verdict.inapplicable(format!("cn(G) = {cn} > 2")));
    }
    let n = g.order() as u64;
    let mut verdict = verdict;
    verdict.searched = n * (n - 1) / 2;
    Ok(match small_pair(g, bound, true) {
        Some((u, v, b)) => verdict.violated(vec![u, v], Some(b)),
        None => verdict,
    })
}

/// `cn(G) <= bound`, with the first offending pair as witness.
pub fn common_neighbor_check(g: &Graph, id: &str, bound: usize) -> LemmaVerdict {
    let verdict = LemmaVerdict::new(id, CheckKind::CommonNeighbors, bound);
    let n = g.order();
    let hit = par::map_range(0..n, |u| {
        (u + 1..n)
            .map(|v| (v, g.row(u).intersection_len(g.row(v))))
            .find(|&(_, c)| c > bound)
            .map(|(v, c)| (u, v, c))
    })
    .into_iter()
    .flatten()
    .next();
    match hit {
        Some((u, v, c)) => verdict.violated(vec![u, v], Some(c)),
        None => verdict,
    }
}

// ---------------------------------------------------------------------------
// boundary against connectivity

/// Grows a random connected set of `size` vertices one frontier vertex at a
/// time; returns it with `|N(set)|`.
fn random_connected_set(g: &Graph, size: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, usize) {
    let mut seen = vec![false; g.order()];
    let mut set = Vec::with_capacity(size);
    let mut frontier = Vec::new();
    let mut add = |v: usize, set: &mut Vec<usize>, frontier: &mut Vec<usize>| {
        seen[v] = true;
        set.push(v);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !seen[w] {
                seen[w] = true;
                frontier.push(w);
            }
        }
    };
    add(rng.gen_range(0..g.order()), &mut set, &mut frontier);
    while set.len() < size && !frontier.is_empty() {
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        add(v, &mut set, &mut frontier);
    }
    // every seen vertex outside the set is still on the frontier
    let boundary = frontier.len();
    (set, boundary)
}

/// For connected `U` with `|V - U| >= κ`, `|N(U)| >= κ`: exhaustive for
/// `|U| <= 3` on graphs with at most 60 vertices, then `samples` random
/// connected sets drawn from `seed`.
pub fn connectivity_boundary_check(g: &Graph, samples: usize, seed: u64, budget: u64) -> Result<LemmaVerdict> {
    let kappa = vertex_connectivity(g)?;
    let n = g.order();
    let mut verdict = LemmaVerdict::new("lem-3.3", CheckKind::Boundary, kappa);

    struct Small {
        n: usize,
        kappa: usize,
        found: Option<(Vec<usize>, usize)>,
    }
    impl SetVisitor for Small {
        type Found = (Vec<usize>, usize);
        fn visit(&mut self, _g: &Graph, set: &[usize], closed: usize) -> Flow {
            let boundary = closed - set.len();
            if self.n - set.len() >= self.kappa && boundary < self.kappa {
                let mut s = set.to_vec();
                s.sort_unstable();
                self.found = Some((s, boundary));
                return Flow::Stop;
            }
            Flow::Continue
        }
        fn finish(self) -> Option<(Vec<usize>, usize)> {
            self.found
        }
    }

    if n <= 60 {
        let scan = scan_seeds(g, 3, budget, true, |_| Small { n, kappa, found: None });
        verdict.searched = scan.searched;
        if let Some((_, (set, b))) = scan.hits.into_iter().next() {
            return Ok(verdict.violated(set, Some(b)));
        }
        if scan.exhausted {
            return Ok(verdict.exhausted("exhaustive part ran out of budget"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n > kappa {
        for _ in 0..samples {
            let size = rng.gen_range(1..=n - kappa);
            let (set, boundary) = random_connected_set(g, size, &mut rng);
            verdict.searched += 1;
            if boundary < kappa {
                let mut set = set;
                set.sort_unstable();
                return Ok(verdict.violated(set, Some(boundary)));
            }
        }
    }
    Ok(verdict)
}

// ---------------------------------------------------------------------------
// extra connectivity

/// Whether `G - F` is disconnected with every component of at least `h + 1` vertices.
pub fn is_extra_cut(g: &Graph, f: &VertexSet, h: usize) -> bool {
    let comps = g.components(f);
    comps.len() >= 2 && comps.iter().all(|c| c.len() > h)
}

/// A constructive `h`-extra cut: the boundary of a connected set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraCut {
    pub size: usize,
    pub component: Vec<usize>,
    pub cut: Vec<usize>,
}

struct ExtraCutVisitor {
    h: usize,
    cap: usize,
    best: usize,
    found: Option<ExtraCut>,
}

impl SetVisitor for ExtraCutVisitor {
    type Found = ExtraCut;

    fn visit(&mut self, g: &Graph, set: &[usize], closed: usize) -> Flow {
        if closed >= self.cap.saturating_add(self.best) {
            return Flow::Prune;
        }
        let boundary = closed - set.len();
        if set.len() > self.h && boundary < self.best {
            let c = g.vertex_set(set.iter().copied());
            let f = g.neighborhood(&c);
            if is_extra_cut(g, &f, self.h) {
                self.best = boundary;
                self.found = Some(ExtraCut {
                    size: boundary,
                    component: c.to_vec(),
                    cut: f.to_vec(),
                });
            }
        }
        Flow::Continue
    }

    fn finish(self) -> Option<ExtraCut> {
        self.found
    }
}

/// Smallest `|N(C)|` over connected `C` with `h + 1 <= |C| <= size_cap` such
/// that `N(C)` is an `h`-extra cut. An upper bound on `κ_h`; `None` when no
/// candidate exists within the cap.
pub fn kappa_h_upper(g: &Graph, h: usize, size_cap: usize, budget: u64) -> (Option<ExtraCut>, u64, bool) {
    let cap = size_cap.min(g.order());
    let make = |best| ExtraCutVisitor {
        h,
        cap,
        best,
        found: None,
    };
    let (first, nodes, exhausted) = search_seed(g, 0, cap, budget, make(usize::MAX));
    if exhausted {
        return (first, nodes, true);
    }
    let incumbent = first.as_ref().map_or(usize::MAX, |c| c.size);
    let scan = scan_seeds(g, cap, budget - nodes, false, |_| make(incumbent));
    let mut best = first;
    for (_, cut) in scan.hits {
        if best.as_ref().is_none_or(|b| cut.size < b.size) {
            best = Some(cut);
        }
    }
    (best, nodes + scan.searched, scan.exhausted)
}

/// Exact `κ_h` by trying every vertex set smaller than `upper`.
/// Returns `(value, exact)`; when the subsets outnumber `budget` the upper
/// bound comes back unchanged with `exact = false`.
pub fn kappa_h_exact(g: &Graph, h: usize, upper: usize, budget: u64) -> (usize, bool) {
    let n = g.order();
    let mut total: u64 = 0;
    for s in 0..upper.min(n + 1) {
        total = total.saturating_add(binomial(n as u64, s as u64));
    }
    if total > budget {
        return (upper, false);
    }
    for s in 0..upper.min(n + 1) {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            if is_extra_cut(g, &g.vertex_set(idx.iter().copied()), h) {
                return (s, true);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    (upper, true)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// cut structure

/// Which small component a cut of size at most `bound` may leave beside the large one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallSide {
    /// A single vertex only.
    Trivial,
    /// A single vertex, or an edge; an edge at `|F| = bound` must have `F = N(edge)`.
    Edge,
    /// A single vertex, or an edge only when `F = N(edge)` and `|F| = bound`.
    EdgeAtBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRule {
    pub bound: usize,
    pub small_side: SmallSide,
    /// Tolerate two components where one is a 4-cycle and the other a 4-cycle
    /// (`|F| = 4`) or a 3-vertex path (`|F| = 5`).
    pub four_cycle_exceptions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum CutOutcome {
    NotACut,
    Allowed,
    Exception(Vec<VertexSet>),
    Violation(VertexSet),
}

fn is_cycle4(g: &Graph, c: &VertexSet) -> bool {
    c.len() == 4 && c.iter().all(|v| g.row(v).intersection_len(c) == 2) && g.induces_connected(c)
}

fn is_path3(g: &Graph, c: &VertexSet) -> bool {
    let degrees: Vec<usize> = c.iter().map(|v| g.row(v).intersection_len(c)).collect();
    c.len() == 3 && degrees.iter().sum::<usize>() == 4
}

/// Classifies `G - F` against `rule`.
pub(crate) fn classify_cut(g: &Graph, f: &VertexSet, rule: &CutRule) -> CutOutcome {
    let comps = g.components(f);
    if comps.len() < 2 {
        return CutOutcome::NotACut;
    }
    let smallest = comps
        .iter()
        .min_by_key(|c| c.len())
        .cloned()
        .expect("two components");
    if comps.len() > 2 {
        return CutOutcome::Violation(smallest);
    }
    if f.len() > rule.bound {
        return CutOutcome::Allowed;
    }
    let edge_ok = |c: &VertexSet| {
        c.len() == 2 && {
            let is_boundary = g.neighborhood(c) == *f;
            match rule.small_side {
                SmallSide::Trivial => false,
                SmallSide::Edge => f.len() < rule.bound || is_boundary,
                SmallSide::EdgeAtBound => f.len() == rule.bound && is_boundary,
            }
        }
    };
    if comps.iter().any(|c| c.len() == 1 || edge_ok(c)) {
        return CutOutcome::Allowed;
    }
    if rule.four_cycle_exceptions {
        let (a, b) = (&comps[0], &comps[1]);
        let shape = |x: &VertexSet, y: &VertexSet| {
            is_cycle4(g, x) && ((f.len() == 4 && is_cycle4(g, y)) || (f.len() == 5 && is_path3(g, y)))
        };
        if shape(a, b) || shape(b, a) {
            return CutOutcome::Exception(comps);
        }
    }
    CutOutcome::Violation(smallest)
}

struct CutVisitor<'r> {
    rule: &'r CutRule,
    cap: usize,
    violation: Option<(Vec<usize>, Vec<usize>)>,
    exceptions: Vec<(Vec<usize>, Vec<Vec<usize>>)>,
}

impl SetVisitor for CutVisitor<'_> {
    type Found = (Option<(Vec<usize>, Vec<usize>)>, Vec<(Vec<usize>, Vec<Vec<usize>>)>);

    fn visit(&mut self, g: &Graph, set: &[usize], closed: usize) -> Flow {
        if closed > self.cap + self.rule.bound {
            return Flow::Prune;
        }
        let boundary = closed - set.len();
        if set.len() >= 2 && boundary <= self.rule.bound && closed < g.order() {
            let c = g.vertex_set(set.iter().copied());
            let f = g.neighborhood(&c);
            match classify_cut(g, &f, self.rule) {
                CutOutcome::Violation(comp) => {
                    self.violation = Some((comp.to_vec(), f.to_vec()));
                    return Flow::Stop;
                }
                CutOutcome::Exception(comps) => {
                    self.exceptions.push((f.to_vec(), comps.iter().map(VertexSet::to_vec).collect()));
                }
                CutOutcome::Allowed | CutOutcome::NotACut => {}
            }
        }
        Flow::Continue
    }

    fn finish(self) -> Option<Self::Found> {
        if self.violation.is_none() && self.exceptions.is_empty() {
            None
        } else {
            Some((self.violation, self.exceptions))
        }
    }
}

/// Small pieces a cut may legitimately isolate: single vertices, plus edges
/// when the rule allows them.
fn allowed_pieces(g: &Graph, rule: &CutRule) -> Vec<VertexSet> {
    let mut pieces: Vec<VertexSet> = (0..g.order()).map(|v| g.vertex_set([v])).collect();
    if rule.small_side != SmallSide::Trivial {
        pieces.extend(g.edges().map(|(u, v)| g.vertex_set([u, v])));
    }
    pieces
}

/// Checks the small-side consequence of a cut-structure rule:
///
/// * every vertex (and allowed edge) `C` with `|N(C)| <= bound` leaves a
///   connected remainder;
/// * every connected `C` with `2 <= |C| <= small_side_cap`, `|N(C)| <= bound`
///   and something beyond `C ∪ N(C)` is an allowed piece or a tolerated exception;
/// * no two disjoint non-adjacent allowed pieces have a joint boundary within
///   the bound while leaving further vertices.
///
/// Cuts whose every component exceeds the cap are outside the scan.
pub fn cut_structure_scan(g: &Graph, id: &str, rule: &CutRule, small_side_cap: usize, budget: u64) -> LemmaVerdict {
    let mut verdict = LemmaVerdict::new(id, CheckKind::CutStructure, rule.bound);
    let mut exceptions: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    let violation = |verdict: LemmaVerdict, comp: Vec<usize>, cut: Vec<usize>| {
        let size = cut.len();
        let mut v = verdict.violated(comp, Some(size));
        v.cut = Some(cut);
        v
    };

    // pieces alone
    let pieces = allowed_pieces(g, rule);
    let single = par::map_range(0..pieces.len(), |i| {
        let f = g.neighborhood(&pieces[i]);
        if f.len() > rule.bound || f.len() + pieces[i].len() == g.order() {
            return None;
        }
        match classify_cut(g, &f, rule) {
            CutOutcome::Violation(comp) => Some((comp.to_vec(), f.to_vec())),
            _ => None,
        }
    });
    verdict.searched += pieces.len() as u64;
    if let Some((comp, cut)) = single.into_iter().flatten().next() {
        return violation(verdict, comp, cut);
    }

    // pairs of pieces
    let boundaries: Vec<VertexSet> = pieces.iter().map(|c| g.neighborhood(c)).collect();
    let pair_hits = par::map_range(0..pieces.len(), |i| {
        let (a, na) = (&pieces[i], &boundaries[i]);
        for j in i + 1..pieces.len() {
            let (b, nb) = (&pieces[j], &boundaries[j]);
            if !b.is_disjoint(na) || !b.is_disjoint(a) || na.union_len(nb) > rule.bound {
                continue;
            }
            let mut f = na.clone();
            f.union_with(nb);
            if f.len() + a.len() + b.len() == g.order() {
                continue;
            }
            if let CutOutcome::Violation(comp) = classify_cut(g, &f, rule) {
                return Some((comp.to_vec(), f.to_vec()));
            }
        }
        None
    });
    let p = pieces.len() as u64;
    verdict.searched += p * p.saturating_sub(1) / 2;
    if let Some((comp, cut)) = pair_hits.into_iter().flatten().next() {
        return violation(verdict, comp, cut);
    }

    // connected small sides
    let cap = small_side_cap.min(g.order());
    let scan = scan_seeds(g, cap, budget, true, |_| CutVisitor {
        rule,
        cap,
        violation: None,
        exceptions: Vec::new(),
    });
    verdict.searched += scan.searched;
    for (_, (hit, excs)) in scan.hits {
        for (cut, comps) in excs {
            exceptions.entry(cut).or_insert(comps);
        }
        if let Some((comp, cut)) = hit {
            return violation(verdict, comp, cut);
        }
    }
    verdict.exceptions = exceptions
        .into_iter()
        .map(|(cut, components)| CutException { cut, components })
        .collect();
    if scan.exhausted {
        return verdict.exhausted("connected-set scan ran out of budget");
    }
    verdict
}

/// Checks the rule against every vertex set of size at most `bound`. Only
/// sensible for small graphs; runs out of budget otherwise.
pub fn cut_structure_full(g: &Graph, id: &str, rule: &CutRule, budget: u64) -> LemmaVerdict {
    let n = g.order();
    let mut verdict = LemmaVerdict::new(id, CheckKind::CutStructure, rule.bound);
    let total: u64 = (0..=rule.bound.min(n)).map(|s| binomial(n as u64, s as u64)).fold(0, u64::saturating_add);
    if total > budget {
        verdict.searched = budget;
        return verdict.exhausted(format!("{total} subsets exceed the budget"));
    }
    let mut exceptions = Vec::new();
    for s in 1..=rule.bound.min(n) {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let f = g.vertex_set(idx.iter().copied());
            match classify_cut(g, &f, rule) {
                CutOutcome::Violation(comp) => {
                    verdict.searched += 1;
                    let mut v = verdict.violated(comp.to_vec(), Some(s));
                    v.cut = Some(f.to_vec());
                    return v;
                }
                CutOutcome::Exception(comps) => exceptions.push(CutException {
                    cut: f.to_vec(),
                    components: comps.iter().map(VertexSet::to_vec).collect(),
                }),
                CutOutcome::Allowed | CutOutcome::NotACut => {}
            }
            verdict.searched += 1;
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    verdict.exceptions = exceptions;
    verdict
}

// ---------------------------------------------------------------------------
// summary report

/// Measured parameters of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub edges: usize,
    /// Common degree, `None` if the graph is not regular.
    pub k: Option<usize>,
    pub kappa: usize,
    pub girth: Option<usize>,
    pub cn_max: usize,
    pub l_max: usize,
    pub kappa1_upper: Option<usize>,
    pub kappa1_witness: Option<ExtraCut>,
    /// `κ₁` certified by exhaustive search.
    pub kappa1_exact: bool,
    pub kappa1: Option<usize>,
    pub searched: u64,
    pub budget_exhausted: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub budget: u64,
    /// Largest component tried for the `κ₁` upper bound.
    pub kappa1_cap: usize,
    /// Subset budget for exhaustive `κ₁`.
    pub exact_budget: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            budget: DEFAULT_BUDGET,
            kappa1_cap: 4,
            exact_budget: 2_000_000,
        }
    }
}

pub fn analyze(g: &Graph, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let kappa = vertex_connectivity(g)?;
    let mut notes = Vec::new();
    let (cut, searched, exhausted) = kappa_h_upper(g, 1, opts.kappa1_cap, opts.budget);
    if exhausted {
        notes.push("kappa1 upper-bound scan ran out of budget".to_string());
    }
    let upper = cut.as_ref().map(|c| c.size);
    let (kappa1, kappa1_exact) = match upper {
        Some(u) => {
            let (value, exact) = kappa_h_exact(g, 1, u, opts.exact_budget);
            if !exact {
                notes.push(format!("kappa1 <= {u}; exhaustive certification exceeds the subset budget"));
            }
            (exact.then_some(value), exact)
        }
        None => {
            notes.push(format!("no 1-extra cut with a component of at most {} vertices", opts.kappa1_cap));
            (None, false)
        }
    };
    Ok(AnalysisReport {
        order: g.order(),
        edges: g.edge_count(),
        k: g.regular_degree(),
        kappa,
        girth: g.girth(),
        cn_max: g.cn_max()?,
        l_max: g.l_max()?,
        kappa1_upper: upper,
        kappa1_witness: cut,
        kappa1_exact,
        kappa1,
        searched,
        budget_exhausted: exhausted,
        notes,
    })
}
