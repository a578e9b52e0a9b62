//! t/t-diagnosability under the PMC model and the pessimistic diagnosability `t_p`.
//!
//! `G` fails t/t-diagnosability exactly when one of these exists:
//!
//! * (A) non-adjacent `u, v` with `|N({u,v})| <= t - 1`; `S = N({u,v})` leaves
//!   two trivial components;
//! * (B) a connected `C`, `|C| >= 2`, with `|C| + 2|N(C)| <= 2t`; `S = N(C)`
//!   leaves `C` as a nontrivial component that is too small;
//! * (C) `2 <= |V| <= 2t`, with `S` empty.
//!
//! Any violating `S` contains the boundary of one of its offending components,
//! so the three cases are complete.

use serde::{Deserialize, Serialize};

use crate::analysis::{binomial, next_combination};
use crate::connectivity::vertex_connectivity;
use crate::enumerate::{scan_seeds, Flow, SetVisitor};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    None,
    /// Two trivial components.
    TwinTrivial,
    /// A nontrivial component with at most `2(t - p)` vertices.
    SmallComponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosisVerdict {
    pub t: usize,
    pub diagnosable: bool,
    pub violation_kind: ViolationKind,
    /// The faulty-set candidate `S`.
    pub witness_s: Vec<usize>,
    /// The offending component; both vertices for twin trivial components.
    pub witness_component: Vec<usize>,
    /// `|S|`.
    pub p: usize,
    pub searched: u64,
}

impl DiagnosisVerdict {
    fn pass(t: usize, searched: u64) -> Self {
        DiagnosisVerdict {
            t,
            diagnosable: true,
            violation_kind: ViolationKind::None,
            witness_s: Vec::new(),
            witness_component: Vec::new(),
            p: 0,
            searched,
        }
    }

    fn fail(t: usize, kind: ViolationKind, s: Vec<usize>, component: Vec<usize>, searched: u64) -> Self {
        DiagnosisVerdict {
            t,
            diagnosable: false,
            violation_kind: kind,
            p: s.len(),
            witness_s: s,
            witness_component: component,
            searched,
        }
    }

    /// Whether the witness really breaks the t/t condition: `|S| <= t - 1` and
    /// `G - S` has two trivial components or a nontrivial one of at most
    /// `2(t - |S|)` vertices containing the stored component.
    pub fn recheck(&self, g: &Graph) -> bool {
        if self.diagnosable {
            return self.violation_kind == ViolationKind::None;
        }
        let p = self.witness_s.len();
        if p + 1 > self.t || self.witness_s.iter().chain(&self.witness_component).any(|&v| v >= g.order()) {
            return false;
        }
        let comps = g.components(&g.vertex_set(self.witness_s.iter().copied()));
        match self.violation_kind {
            ViolationKind::TwinTrivial => {
                comps.iter().filter(|c| c.len() == 1).count() >= 2
                    && self
                        .witness_component
                        .iter()
                        .all(|&v| comps.iter().any(|c| c.len() == 1 && c.contains(v)))
            }
            ViolationKind::SmallComponent => {
                let target = g.vertex_set(self.witness_component.iter().copied());
                comps.contains(&target) && target.len() >= 2 && target.len() <= 2 * (self.t - p)
            }
            ViolationKind::None => false,
        }
    }
}

struct SmallComponentSearch {
    t: usize,
    cap: usize,
    best: Option<Vec<usize>>,
}

impl SetVisitor for SmallComponentSearch {
    type Found = Vec<usize>;

    fn visit(&mut self, _g: &Graph, set: &[usize], closed: usize) -> Flow {
        // 2|N(C')| + |C'| = 2|N[C']| - |C'| >= 2|N[C]| - cap for supersets C'
        if 2 * closed > 2 * self.t + self.cap {
            return Flow::Prune;
        }
        let boundary = closed - set.len();
        if set.len() >= 2 && set.len() + 2 * boundary <= 2 * self.t {
            let mut s = set.to_vec();
            s.sort_unstable();
            if self.best.as_ref().is_none_or(|b| s < *b) {
                self.best = Some(s);
            }
        }
        Flow::Continue
    }

    fn finish(self) -> Option<Vec<usize>> {
        self.best
    }
}

/// Decides t/t-diagnosability for one graph at several `t`, caching `κ(G)`.
#[derive(Debug)]
pub struct Diagnoser<'g> {
    g: &'g Graph,
    kappa: usize,
    budget: u64,
}

impl<'g> Diagnoser<'g> {
    pub fn new(g: &'g Graph, budget: u64) -> Result<Self> {
        let kappa = vertex_connectivity(g)?;
        Ok(Diagnoser { g, kappa, budget })
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Exact decision; witnesses are the lexicographically first offending pair,
    /// then the lexicographically smallest offending component.
    pub fn is_tt_diagnosable(&self, t: usize) -> Result<DiagnosisVerdict> {
        if t == 0 {
            return Err(Error::InvalidArgument("t must be at least 1".into()));
        }
        let g = self.g;
        let n = g.order();

        let pair = par::map_range(0..n, |u| {
            (u + 1..n)
                .find(|&v| !g.has_edge(u, v) && g.pair_boundary(u, v) < t)
                .map(|v| (u, v))
        })
        .into_iter()
        .flatten()
        .next();
        let pairs_checked = (n as u64) * (n as u64 - 1) / 2;
        if let Some((u, v)) = pair {
            let s = g.neighborhood(&g.vertex_set([u, v])).to_vec();
            return Ok(DiagnosisVerdict::fail(t, ViolationKind::TwinTrivial, s, vec![u, v], pairs_checked));
        }

        let cap = if n > 2 * t { 2 * t.saturating_sub(self.kappa) } else { n };
        let mut searched = pairs_checked;
        if cap >= 2 {
            let scan = scan_seeds(g, cap, self.budget, true, |_| SmallComponentSearch { t, cap, best: None });
            searched += scan.searched;
            if let Some((_, comp)) = scan.hits.into_iter().next() {
                let s = g.neighborhood(&g.vertex_set(comp.iter().copied())).to_vec();
                return Ok(DiagnosisVerdict::fail(t, ViolationKind::SmallComponent, s, comp, searched));
            }
            if scan.exhausted {
                return Err(Error::BudgetExceeded(self.budget));
            }
        }

        if n >= 2 && n <= 2 * t {
            return Ok(DiagnosisVerdict::fail(
                t,
                ViolationKind::SmallComponent,
                Vec::new(),
                (0..n).collect(),
                searched,
            ));
        }
        Ok(DiagnosisVerdict::pass(t, searched))
    }

    /// Largest `t` with t/t-diagnosability, scanning upward from `κ(G)`, or
    /// from 1 when the graph already fails at `κ(G)`.
    pub fn pessimistic_diagnosability(&self) -> Result<TpResult> {
        let start = self.kappa.max(1);
        let mut searched = 0;
        let first = self.is_tt_diagnosable(start)?;
        searched += first.searched;
        let (mut t, mut last_pass) = if first.diagnosable { (start, Some(first)) } else { (0, None) };
        loop {
            let v = self.is_tt_diagnosable(t + 1)?;
            searched += v.searched;
            if !v.diagnosable {
                return Ok(TpResult {
                    tp: t,
                    kappa: self.kappa,
                    not_even_one: t == 0,
                    at_tp: last_pass,
                    failure: v,
                    searched,
                });
            }
            t += 1;
            last_pass = Some(v);
        }
    }
}

/// `t_p(G)` together with the failing verdict at `t_p + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpResult {
    pub tp: usize,
    pub kappa: usize,
    /// The graph is not even 1/1-diagnosable; `tp` is reported as 0.
    pub not_even_one: bool,
    pub at_tp: Option<DiagnosisVerdict>,
    pub failure: DiagnosisVerdict,
    pub searched: u64,
}

pub fn is_tt_diagnosable(g: &Graph, t: usize, budget: u64) -> Result<DiagnosisVerdict> {
    Diagnoser::new(g, budget)?.is_tt_diagnosable(t)
}

pub fn pessimistic_diagnosability(g: &Graph, budget: u64) -> Result<TpResult> {
    if g.order() < 3 {
        return Err(Error::TooFewVertices {
            needed: 3,
            actual: g.order(),
        });
    }
    Diagnoser::new(g, budget)?.pessimistic_diagnosability()
}

/// The literal quantifier form: every `S` with `|S| <= t - 1` leaves at most
/// one trivial component and only nontrivial components of more than
/// `2(t - |S|)` vertices. Fails with [`Error::BudgetExceeded`] when the
/// number of candidate sets exceeds `budget`.
pub fn naive_tt_oracle(g: &Graph, t: usize, budget: u64) -> Result<bool> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let n = g.order();
    let top = (t - 1).min(n);
    let total = (0..=top).map(|p| binomial(n as u64, p as u64)).fold(0u64, u64::saturating_add);
    if total > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    for p in 0..=top {
        let mut idx: Vec<usize> = (0..p).collect();
        loop {
            let comps = g.components(&g.vertex_set(idx.iter().copied()));
            let trivial = comps.iter().filter(|c| c.len() == 1).count();
            if trivial > 1 || comps.iter().any(|c| c.len() >= 2 && c.len() < 2 * (t - p) + 1) {
                return Ok(false);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(true)
}

/// `min |N({u,v})|` over edges with the most common neighbors: `t_p` never
/// exceeds it.
pub fn edge_upper_bound(g: &Graph) -> Result<usize> {
    let l = g.l_max()?;
    Ok(g.edges()
        .filter(|&(u, v)| g.row(u).intersection_len(g.row(v)) == l)
        .map(|(u, v)| g.pair_boundary(u, v))
        .min()
        .expect("graph has edges"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle};

    #[test]
    fn triangle_and_cycle() {
        let k3 = complete(3);
        assert!(naive_tt_oracle(&k3, 1, 100).unwrap());
        assert!(!naive_tt_oracle(&k3, 2, 100).unwrap());
        assert!(is_tt_diagnosable(&k3, 1, 100).unwrap().diagnosable);
        let v = is_tt_diagnosable(&k3, 2, 100).unwrap();
        assert!(!v.diagnosable);
        assert!(v.recheck(&k3));
        assert_eq!(pessimistic_diagnosability(&k3, 100).unwrap().tp, 1);
    }

    #[test]
    fn reduction_matches_oracle_on_small_graphs() {
        let petersen = Graph::from_edges(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]),
        )
        .unwrap();
        for g in [cycle(5), cycle(8), complete(5), petersen] {
            let d = Diagnoser::new(&g, u64::MAX).unwrap();
            for t in 1..=g.max_degree() + 3 {
                let v = d.is_tt_diagnosable(t).unwrap();
                assert_eq!(v.diagnosable, naive_tt_oracle(&g, t, u64::MAX).unwrap(), "t = {t}");
                assert!(v.recheck(&g));
            }
        }
    }

    #[test]
    fn path_is_not_one_one_diagnosable_when_short() {
        let p2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(pessimistic_diagnosability(&p2, 10).is_err());
        let d = Diagnoser::new(&p2, 10).unwrap().pessimistic_diagnosability().unwrap();
        assert_eq!(d.tp, 0);
        assert!(d.not_even_one);
    }

    #[test]
    fn edge_bound() {
        assert_eq!(edge_upper_bound(&cycle(8)).unwrap(), 2);
        assert!(edge_upper_bound(&cycle(8)).unwrap() >= pessimistic_diagnosability(&cycle(8), 100).unwrap().tp);
    }
}
