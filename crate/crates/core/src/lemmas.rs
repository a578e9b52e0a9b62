//! Registry of the per-family expansion and cut-structure statements, keyed by
//! the ids the command line accepts.

use std::fmt;
use std::str::FromStr;

use crate::analysis::{
    connectivity_boundary_check, cut_structure_full, cut_structure_scan, expansion_by_minimum, pair_boundary_check,
    CutRule, LemmaVerdict, SmallSide,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::topology::{Family, TopologySpec, TranspositionTree, TwoTree};

/// Family group a lemma is stated for; both BC variants share one group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaFamily {
    Ag,
    An,
    Bc,
    Qnk,
    SplitStar,
    Gamma,
    TwoTree,
    Bp,
}

impl LemmaFamily {
    pub const ALL: [LemmaFamily; 8] = [
        LemmaFamily::Ag,
        LemmaFamily::An,
        LemmaFamily::Bc,
        LemmaFamily::Qnk,
        LemmaFamily::SplitStar,
        LemmaFamily::Gamma,
        LemmaFamily::TwoTree,
        LemmaFamily::Bp,
    ];

    fn tag(self) -> &'static str {
        match self {
            LemmaFamily::Ag => "AG",
            LemmaFamily::An => "AN",
            LemmaFamily::Bc => "BC",
            LemmaFamily::Qnk => "QNK",
            LemmaFamily::SplitStar => "SPLITSTAR",
            LemmaFamily::Gamma => "GAMMA",
            LemmaFamily::TwoTree => "2TREE",
            LemmaFamily::Bp => "BP",
        }
    }

    pub fn of(family: Family) -> LemmaFamily {
        match family {
            Family::AlternatingGroupGraph => LemmaFamily::Ag,
            Family::AlternatingGroupNetwork => LemmaFamily::An,
            Family::BcHypercube | Family::BcRandom => LemmaFamily::Bc,
            Family::KAryCube => LemmaFamily::Qnk,
            Family::SplitStar => LemmaFamily::SplitStar,
            Family::TranspositionTree => LemmaFamily::Gamma,
            Family::TwoTree => LemmaFamily::TwoTree,
            Family::BurntPancake => LemmaFamily::Bp,
        }
    }

    /// Member of the family at dimension `n` (star tree, path 2-tree, arity 3).
    pub fn spec(self, n: usize) -> Result<TopologySpec> {
        let spec = match self {
            LemmaFamily::Ag => TopologySpec::AlternatingGroupGraph { n },
            LemmaFamily::An => TopologySpec::AlternatingGroupNetwork { n },
            LemmaFamily::Bc => TopologySpec::BcHypercube { n },
            LemmaFamily::Qnk => TopologySpec::KAryCube { n, k: 3 },
            LemmaFamily::SplitStar => TopologySpec::SplitStar { n },
            LemmaFamily::Gamma => TopologySpec::TranspositionTree {
                tree: TranspositionTree::star(n)?,
            },
            LemmaFamily::TwoTree => TopologySpec::TwoTree {
                twotree: TwoTree::path(n)?,
            },
            LemmaFamily::Bp => TopologySpec::BurntPancake { n },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// Pair boundary `|N({u,v})| >= 2k - 2 - l`.
    PairBound,
    /// Boundary of connected sets against `κ(G)`.
    ConnectivityBoundary,
    Expansion(LemmaFamily),
    CutStructure(LemmaFamily),
    Theorem,
}

impl LemmaId {
    pub fn all() -> Vec<LemmaId> {
        let mut ids = vec![LemmaId::PairBound, LemmaId::ConnectivityBoundary];
        ids.extend(LemmaFamily::ALL.iter().map(|&f| LemmaId::Expansion(f)));
        ids.extend(LemmaFamily::ALL.iter().map(|&f| LemmaId::CutStructure(f)));
        ids.push(LemmaId::Theorem);
        ids
    }

    pub fn family(self) -> Option<LemmaFamily> {
        match self {
            LemmaId::Expansion(f) | LemmaId::CutStructure(f) => Some(f),
            _ => None,
        }
    }

    /// Instance checked when no dimension is given.
    pub fn default_spec(self) -> Option<TopologySpec> {
        let (family, n) = match self {
            LemmaId::Expansion(f) => (
                f,
                match f {
                    LemmaFamily::An => 5,
                    LemmaFamily::Qnk | LemmaFamily::Bp => 3,
                    _ => 4,
                },
            ),
            LemmaId::CutStructure(f) => (
                f,
                match f {
                    LemmaFamily::Ag | LemmaFamily::An => 5,
                    LemmaFamily::Qnk => 3,
                    _ => 4,
                },
            ),
            _ => return None,
        };
        family.spec(n).ok()
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaId::PairBound => f.write_str("lem-3.1"),
            LemmaId::ConnectivityBoundary => f.write_str("lem-3.3"),
            LemmaId::Expansion(fam) => write!(f, "exp-{}", fam.tag()),
            LemmaId::CutStructure(fam) => write!(f, "cut-{}", fam.tag()),
            LemmaId::Theorem => f.write_str("theorem"),
        }
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        let wanted = s.trim().to_ascii_uppercase();
        LemmaId::all()
            .into_iter()
            .find(|id| id.to_string().to_ascii_uppercase() == wanted)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown lemma id `{s}`")))
    }
}

/// `2 <= |U| <= max_size` implies `|N(U)| >= bound`, valid from `min_n` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionStatement {
    pub max_size: usize,
    pub bound: usize,
    pub min_n: usize,
}

pub fn expansion_statement(spec: &TopologySpec) -> ExpansionStatement {
    let n = spec.n() as isize;
    let (max_size, bound, min_n) = match spec {
        TopologySpec::AlternatingGroupGraph { .. } => (8 * n - 25, 4 * n - 11, 4),
        TopologySpec::AlternatingGroupNetwork { .. } => (4 * n - 14, 2 * n - 5, 4),
        TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => (4 * n - 8, 2 * n - 2, 3),
        TopologySpec::KAryCube { k: 2, .. } => (4 * n - 8, 2 * n - 2, 3),
        TopologySpec::KAryCube { k: 3, .. } => (8 * n - 10, 4 * n - 3, 3),
        TopologySpec::KAryCube { .. } => (8 * n - 8, 4 * n - 2, 3),
        TopologySpec::SplitStar { .. } => (8 * n - 22, 4 * n - 9, 4),
        TopologySpec::TranspositionTree { .. } => (4 * n - 12, 2 * n - 4, 4),
        TopologySpec::TwoTree { .. } => (8 * n - 26, 4 * n - 11, 4),
        TopologySpec::BurntPancake { .. } => (4 * n - 8, 2 * n - 2, 3),
    };
    ExpansionStatement {
        max_size: max_size.max(0) as usize,
        bound: bound.max(0) as usize,
        min_n,
    }
}

/// The cut-structure rule for `spec` and the smallest `n` it is stated for.
pub fn cut_statement(spec: &TopologySpec) -> (CutRule, usize) {
    let n = spec.n();
    let rule = |bound: usize, small_side| CutRule {
        bound,
        small_side,
        four_cycle_exceptions: false,
    };
    match spec {
        TopologySpec::AlternatingGroupGraph { .. } => (rule((4 * n).saturating_sub(11), SmallSide::Edge), 5),
        TopologySpec::AlternatingGroupNetwork { .. } => (rule((2 * n).saturating_sub(5), SmallSide::Edge), 5),
        TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => {
            (rule((2 * n).saturating_sub(3), SmallSide::Trivial), 2)
        }
        TopologySpec::KAryCube { k: 2, .. } => (rule((2 * n).saturating_sub(3), SmallSide::Trivial), 2),
        TopologySpec::KAryCube { k: 3, .. } => (rule((4 * n).saturating_sub(4), SmallSide::Trivial), 2),
        TopologySpec::KAryCube { .. } => (rule((4 * n).saturating_sub(3), SmallSide::Trivial), 2),
        TopologySpec::SplitStar { .. } => (rule((4 * n).saturating_sub(10), SmallSide::Trivial), 4),
        TopologySpec::TranspositionTree { .. } => (rule((2 * n).saturating_sub(5), SmallSide::Trivial), 4),
        TopologySpec::TwoTree { .. } => (
            CutRule {
                bound: (4 * n).saturating_sub(11),
                small_side: SmallSide::EdgeAtBound,
                four_cycle_exceptions: n == 4,
            },
            4,
        ),
        TopologySpec::BurntPancake { .. } => (rule((2 * n).saturating_sub(2), SmallSide::EdgeAtBound), 4),
    }
}

/// Small-side cap used by the connected-set part of cut scans.
pub const CUT_SCAN_CAP: usize = 8;

/// Largest graph the cut rule is also checked against every vertex subset.
pub const FULL_CUT_ORDER: usize = 24;

/// Runs a family lemma on `g`, which must be built from `spec`. Expansion
/// lemmas return one verdict; cut lemmas return the connected-set scan and,
/// on graphs of at most [`FULL_CUT_ORDER`] vertices, the full-subset check.
pub fn run_family_lemma(id: LemmaId, spec: &TopologySpec, g: &Graph, budget: u64) -> Result<Vec<LemmaVerdict>> {
    let family = id
        .family()
        .ok_or_else(|| Error::InvalidArgument(format!("{id} is not a family lemma")))?;
    if LemmaFamily::of(spec.family()) != family {
        return Err(Error::InvalidArgument(format!("{id} does not apply to {}", spec.name())));
    }
    let name = format!("{id}({})", spec.name());
    match id {
        LemmaId::Expansion(_) => {
            let st = expansion_statement(spec);
            let base = LemmaVerdict::new(&name, crate::analysis::CheckKind::Boundary, st.bound);
            if spec.n() < st.min_n {
                return Ok(vec![base.inapplicable(format!("stated for n >= {}", st.min_n))]);
            }
            let (verdict, _) = expansion_by_minimum(g, &name, 2..=st.max_size, st.bound, budget)?;
            Ok(vec![verdict])
        }
        LemmaId::CutStructure(_) => {
            let (rule, min_n) = cut_statement(spec);
            if spec.n() < min_n {
                let base = LemmaVerdict::new(&name, crate::analysis::CheckKind::CutStructure, rule.bound);
                return Ok(vec![base.inapplicable(format!("stated for n >= {min_n}"))]);
            }
            let mut out = vec![cut_structure_scan(g, &name, &rule, CUT_SCAN_CAP, budget)];
            if g.order() <= FULL_CUT_ORDER {
                out.push(cut_structure_full(g, &format!("{name}/all-subsets"), &rule, budget));
            }
            Ok(out)
        }
        _ => unreachable!("family lemmas only"),
    }
}

/// Runs one of the graph-generic statements.
pub fn run_generic_lemma(id: LemmaId, g: &Graph, budget: u64, seed: u64) -> Result<LemmaVerdict> {
    match id {
        LemmaId::PairBound => {
            let k = g.regular_degree().ok_or(Error::NotRegular)?;
            pair_boundary_check(g, k, g.l_max()?)
        }
        LemmaId::ConnectivityBoundary => connectivity_boundary_check(g, 2000, seed, budget),
        other => Err(Error::InvalidArgument(format!("{other} needs a family instance"))),
    }
}
