//! Sufficient conditions for `t_p(G) = 2k - 2 - l = κ₁(G)` on a `k`-regular
//! `k`-connected graph, and the per-family predictions they yield.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    common_neighbor_check, cut_structure_scan, expansion_check, kappa_h_upper, CheckKind, CutRule, LemmaVerdict,
    SmallSide, Status,
};
use crate::connectivity::vertex_connectivity;
use crate::diagnosability::pessimistic_diagnosability;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::topology::{Family, TopologySpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub k: usize,
    pub l: usize,
    pub order: usize,
    pub kappa: usize,
    /// `k >= 5` and `κ(G) = k`.
    pub applicable: bool,
    pub cond1: LemmaVerdict,
    pub cond2: LemmaVerdict,
    pub cond3: LemmaVerdict,
    pub cond4: LemmaVerdict,
    /// `2k - 2 - l`.
    pub predicted: usize,
    pub tp_computed: Option<usize>,
    pub kappa1_upper: Option<usize>,
    /// All four conditions hold and every search completed.
    pub certified: bool,
    pub note: String,
}

impl TheoremReport {
    pub fn conditions(&self) -> [&LemmaVerdict; 4] {
        [&self.cond1, &self.cond2, &self.cond3, &self.cond4]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TheoremOptions {
    pub budget: u64,
    /// Also compute `t_p` directly.
    pub compute_tp: bool,
    /// Also compute the constructive `κ₁` upper bound.
    pub compute_kappa1: bool,
    pub kappa1_cap: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions {
            budget: crate::analysis::DEFAULT_BUDGET,
            compute_tp: true,
            compute_kappa1: true,
            kappa1_cap: 4,
        }
    }
}

fn arithmetic(id: &str, measured: usize, bound: usize) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(id, CheckKind::Arithmetic, bound);
    v.measured = Some(measured);
    if measured < bound {
        v.status = Status::Violated;
        v.witness = Some(Vec::new());
    }
    v
}

/// Checks the four conditions on `g`, measuring `k` and `l` from the graph.
///
/// 1. `N >= 4k - 2`;
/// 2. `cn(G) <= 2`;
/// 3. `|N(U)| >= 2k - 2 - l` whenever `2 <= |U| <= 2(2k - 4 - l)`;
/// 4. every cut of at most `2k - 3 - l` vertices leaves exactly a large and a
///    trivial component, scanned over connected small sides of at most
///    `2(2k - 4 - l)` vertices.
pub fn check_conditions(g: &Graph, opts: &TheoremOptions) -> Result<TheoremReport> {
    let k = g.regular_degree().ok_or(Error::NotRegular)?;
    let l = g.l_max()?;
    let kappa = vertex_connectivity(g)?;
    let order = g.order();
    let predicted = (2 * k).saturating_sub(2 + l);
    let applicable = k >= 5 && kappa == k;
    let max_u = 2 * (2 * k).saturating_sub(4 + l);
    let cut_bound = (2 * k).saturating_sub(3 + l);

    if !applicable {
        let why = if k < 5 {
            format!("k = {k} < 5")
        } else {
            format!("kappa = {kappa} < k = {k}")
        };
        let na = |id: &str, kind, bound| LemmaVerdict::new(id, kind, bound).inapplicable(why.clone());
        return Ok(TheoremReport {
            k,
            l,
            order,
            kappa,
            applicable,
            cond1: na("cond1", CheckKind::Arithmetic, 4 * k - 2),
            cond2: na("cond2", CheckKind::CommonNeighbors, 2),
            cond3: na("cond3", CheckKind::Boundary, predicted),
            cond4: na("cond4", CheckKind::CutStructure, cut_bound),
            predicted,
            tp_computed: None,
            kappa1_upper: None,
            certified: false,
            note: format!("hypothesis fails: {why}"),
        });
    }

    let cond1 = arithmetic("cond1", order, 4 * k - 2);
    let cond2 = common_neighbor_check(g, "cond2", 2);
    let cond3 = expansion_check(g, "cond3", max_u, predicted, opts.budget);
    let rule = CutRule {
        bound: cut_bound,
        small_side: SmallSide::Trivial,
        four_cycle_exceptions: false,
    };
    let cond4 = cut_structure_scan(g, "cond4", &rule, max_u, opts.budget);
    let certified = [&cond1, &cond2, &cond3, &cond4].iter().all(|c| c.holds());

    let tp_computed = if opts.compute_tp {
        Some(pessimistic_diagnosability(g, opts.budget)?.tp)
    } else {
        None
    };
    let kappa1_upper = if opts.compute_kappa1 {
        kappa_h_upper(g, 1, opts.kappa1_cap, opts.budget).0.map(|c| c.size)
    } else {
        None
    };
    let mut notes = Vec::new();
    for c in [&cond1, &cond2, &cond3, &cond4] {
        match c.status {
            Status::Holds | Status::Inapplicable => {}
            Status::Violated => notes.push(format!("{} violated", c.id)),
            Status::BudgetExhausted => notes.push(format!("{} incomplete: {}", c.id, c.note)),
        }
    }
    if certified {
        notes.push(format!(
            "kappa1 = {predicted} from the conditions; cond4 scanned small sides of at most {max_u} vertices"
        ));
    }
    Ok(TheoremReport {
        k,
        l,
        order,
        kappa,
        applicable,
        cond1,
        cond2,
        cond3,
        cond4,
        predicted,
        tp_computed,
        kappa1_upper,
        certified,
        note: notes.join("; "),
    })
}

/// Like [`check_conditions`], but first requires the measured `k` and `l` to
/// match what the family predicts.
pub fn check_family(spec: &TopologySpec, g: &Graph, opts: &TheoremOptions) -> Result<TheoremReport> {
    verify_family_parameters(spec, g)?;
    check_conditions(g, opts)
}

pub fn verify_family_parameters(spec: &TopologySpec, g: &Graph) -> Result<()> {
    let k = g.regular_degree().ok_or(Error::NotRegular)?;
    if k != spec.expected_regularity() {
        return Err(Error::FamilyMismatch {
            what: "k",
            measured: k,
            expected: spec.expected_regularity(),
        });
    }
    let l = g.l_max()?;
    if l != spec.expected_l() {
        return Err(Error::FamilyMismatch {
            what: "l",
            measured: l,
            expected: spec.expected_l(),
        });
    }
    Ok(())
}

/// Closed-form `t_p = κ₁` for one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPrediction {
    pub family: Family,
    pub name: String,
    pub n: usize,
    /// Arity for `Q_n^k`.
    pub k: Option<usize>,
    pub formula: String,
    pub value: usize,
    /// Smallest `n` the formula is asserted for.
    pub threshold: usize,
    pub asserted: bool,
}

/// The predicted value for `spec`, flagged when `n` is below the family threshold.
pub fn prediction(spec: &TopologySpec) -> FamilyPrediction {
    let n = spec.n();
    let (formula, value, threshold) = match spec {
        TopologySpec::AlternatingGroupGraph { .. } => ("4n-11", (4 * n).saturating_sub(11), 5),
        TopologySpec::AlternatingGroupNetwork { .. } => ("2n-5", (2 * n).saturating_sub(5), 6),
        TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => ("2n-2", (2 * n).saturating_sub(2), 5),
        TopologySpec::KAryCube { k: 2, .. } => ("2n-2", (2 * n).saturating_sub(2), 5),
        TopologySpec::KAryCube { k: 3, .. } => ("4n-3", (4 * n).saturating_sub(3), 3),
        TopologySpec::KAryCube { .. } => ("4n-2", (4 * n).saturating_sub(2), 3),
        TopologySpec::SplitStar { .. } => ("4n-9", (4 * n).saturating_sub(9), 4),
        TopologySpec::TranspositionTree { .. } => ("2n-4", (2 * n).saturating_sub(4), 6),
        TopologySpec::TwoTree { .. } => ("4n-11", (4 * n).saturating_sub(11), 5),
        TopologySpec::BurntPancake { .. } => ("2n-2", (2 * n).saturating_sub(2), 5),
    };
    FamilyPrediction {
        family: spec.family(),
        name: spec.name(),
        n,
        k: spec.arity(),
        formula: formula.to_string(),
        value,
        threshold,
        asserted: n >= threshold,
    }
}

/// The smallest instance of each family the formulas are asserted for.
pub fn default_instances() -> Vec<TopologySpec> {
    use crate::topology::{TranspositionTree, TwoTree};
    vec![
        TopologySpec::AlternatingGroupGraph { n: 5 },
        TopologySpec::AlternatingGroupNetwork { n: 6 },
        TopologySpec::BcHypercube { n: 5 },
        TopologySpec::KAryCube { n: 5, k: 2 },
        TopologySpec::KAryCube { n: 3, k: 3 },
        TopologySpec::KAryCube { n: 3, k: 4 },
        TopologySpec::SplitStar { n: 4 },
        TopologySpec::TranspositionTree {
            tree: TranspositionTree::star(6).expect("valid"),
        },
        TopologySpec::TranspositionTree {
            tree: TranspositionTree::path(6).expect("valid"),
        },
        TopologySpec::TwoTree {
            twotree: TwoTree::path(5).expect("valid"),
        },
        TopologySpec::BurntPancake { n: 5 },
    ]
}

/// Predictions for `specs`, in order.
pub fn family_table(specs: &[TopologySpec]) -> Vec<FamilyPrediction> {
    specs.iter().map(prediction).collect()
}
