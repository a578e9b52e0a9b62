//! Topology descriptions: family tags, parameters, transposition trees and 2-trees.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count any generator will build (adjacency rows are `order²` bits).
pub const MAX_ORDER: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "AG")]
    AlternatingGroupGraph,
    #[serde(rename = "AN")]
    AlternatingGroupNetwork,
    #[serde(rename = "BC_HYPERCUBE")]
    BcHypercube,
    #[serde(rename = "BC_RANDOM")]
    BcRandom,
    #[serde(rename = "QNK")]
    KAryCube,
    #[serde(rename = "SPLIT_STAR")]
    SplitStar,
    #[serde(rename = "TRANS_TREE")]
    TranspositionTree,
    #[serde(rename = "TWO_TREE")]
    TwoTree,
    #[serde(rename = "BP")]
    BurntPancake,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::AlternatingGroupGraph,
        Family::AlternatingGroupNetwork,
        Family::BcHypercube,
        Family::BcRandom,
        Family::KAryCube,
        Family::SplitStar,
        Family::TranspositionTree,
        Family::TwoTree,
        Family::BurntPancake,
    ];

    /// Short command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::AlternatingGroupGraph => "ag",
            Family::AlternatingGroupNetwork => "an",
            Family::BcHypercube => "bc",
            Family::BcRandom => "bc-random",
            Family::KAryCube => "qnk",
            Family::SplitStar => "splitstar",
            Family::TranspositionTree => "gamma",
            Family::TwoTree => "2tree",
            Family::BurntPancake => "bp",
        }
    }

    /// Smallest `n` the family is defined for.
    pub fn min_n(self) -> usize {
        match self {
            Family::AlternatingGroupGraph | Family::AlternatingGroupNetwork => 3,
            Family::BcHypercube | Family::BcRandom | Family::KAryCube | Family::BurntPancake => 1,
            Family::SplitStar => 2,
            Family::TranspositionTree | Family::TwoTree => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let family = match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ag" => Family::AlternatingGroupGraph,
            "an" => Family::AlternatingGroupNetwork,
            "bc" | "hypercube" | "bc-hypercube" => Family::BcHypercube,
            "bc-random" | "bcrandom" => Family::BcRandom,
            "qnk" | "kary" => Family::KAryCube,
            "splitstar" | "split-star" => Family::SplitStar,
            "gamma" | "trans-tree" | "transtree" => Family::TranspositionTree,
            "2tree" | "two-tree" | "twotree" => Family::TwoTree,
            "bp" => Family::BurntPancake,
            other => return Err(Error::InvalidSpec(format!("unknown family `{other}`"))),
        };
        Ok(family)
    }
}

/// A tree on the symbols `1..=n`; its edges, read as transpositions, generate `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranspositionTree {
    n: usize,
    edges: Vec<(u8, u8)>,
}

impl TranspositionTree {
    pub fn new(n: usize, edges: Vec<(u8, u8)>) -> Result<Self> {
        if !(2..=9).contains(&n) {
            return Err(Error::InvalidSpec(format!("transposition tree needs 2 <= n <= 9, got {n}")));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidSpec(format!(
                "a tree on {n} symbols has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut root: Vec<usize> = (0..=n).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (a, b) = (a as usize, b as usize);
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::InvalidSpec(format!("bad tree edge {a}-{b} for n = {n}")));
            }
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra == rb {
                return Err(Error::InvalidSpec(format!("tree edge {a}-{b} closes a cycle")));
            }
            root[ra] = rb;
        }
        Ok(TranspositionTree { n, edges })
    }

    pub fn star(n: usize) -> Result<Self> {
        Self::new(n, (2..=n as u8).map(|i| (1, i)).collect())
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n as u8).map(|i| (i, i + 1)).collect())
    }

    /// Parses `star`, `path` or an edge list such as `1-2,2-3,2-4`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        match text.trim() {
            "star" => Self::star(n),
            "path" => Self::path(n),
            list => Self::new(n, parse_pairs(list)?),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn degree(&self, symbol: u8) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == symbol || b == symbol).count()
    }

    /// Largest symbol of degree one; the recursive decomposition fixes its position.
    pub fn last_leaf(&self) -> u8 {
        (1..=self.n as u8).rev().find(|&s| self.degree(s) == 1).expect("trees have leaves")
    }

    pub fn is_star(&self) -> bool {
        (1..=self.n as u8).any(|s| self.degree(s) == self.n - 1)
    }
}

impl fmt::Display for TranspositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// A 2-tree on `1..=n`: the triangle `{1,2,3}`, then each vertex `4..=n` in turn
/// joined to both ends of an existing edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTree {
    n: usize,
    attachments: Vec<(u8, u8)>,
}

impl TwoTree {
    /// `attachments[i]` is the edge vertex `i + 4` attaches to.
    pub fn new(n: usize, attachments: Vec<(u8, u8)>) -> Result<Self> {
        if !(3..=9).contains(&n) {
            return Err(Error::InvalidSpec(format!("2-tree needs 3 <= n <= 9, got {n}")));
        }
        if attachments.len() != n - 3 {
            return Err(Error::InvalidSpec(format!(
                "2-tree on {n} vertices needs {} attachments, got {}",
                n - 3,
                attachments.len()
            )));
        }
        let mut edges: BTreeSet<(u8, u8)> = [(1, 2), (1, 3), (2, 3)].into();
        for (i, &(a, b)) in attachments.iter().enumerate() {
            let v = (i + 4) as u8;
            let key = (a.min(b), a.max(b));
            if !edges.contains(&key) {
                return Err(Error::InvalidSpec(format!("vertex {v} attaches to {a}-{b}, which is not an edge yet")));
            }
            edges.insert((a.min(v), a.max(v)));
            edges.insert((b.min(v), b.max(v)));
        }
        Ok(TwoTree { n, attachments })
    }

    /// Every vertex on the edge `1-2`; the generated graph is `AG_n`.
    pub fn star(n: usize) -> Result<Self> {
        Self::new(n, (4..=n).map(|_| (1, 2)).collect())
    }

    /// Vertex `v` on the edge `(v-2)-(v-1)`: a strip of triangles.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (4..=n as u8).map(|v| (v - 2, v - 1)).collect())
    }

    /// Parses `star`, `path` or an attachment list such as `4:1-2,5:2-3`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        match text.trim() {
            "star" | "fan" => Self::star(n),
            "path" => Self::path(n),
            list => {
                let mut attachments = Vec::new();
                for (i, item) in list.split(',').enumerate() {
                    let (vertex, pair) = item
                        .split_once(':')
                        .ok_or_else(|| Error::InvalidSpec(format!("expected `vertex:a-b`, got `{item}`")))?;
                    let vertex: usize = vertex
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidSpec(format!("bad vertex in `{item}`")))?;
                    if vertex != i + 4 {
                        return Err(Error::InvalidSpec(format!(
                            "attachments must list vertices 4, 5, ... in order; got {vertex} at position {}",
                            i + 1
                        )));
                    }
                    attachments.extend(parse_pairs(pair)?);
                }
                Self::new(n, attachments)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The `n - 2` triangles, each read as a 3-cycle and its inverse.
    pub fn triangles(&self) -> Vec<[u8; 3]> {
        let mut t = vec![[1, 2, 3]];
        for (i, &(a, b)) in self.attachments.iter().enumerate() {
            t.push([a, b, (i + 4) as u8]);
        }
        t
    }
}

impl fmt::Display for TwoTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .attachments
            .iter()
            .enumerate()
            .map(|(i, (a, b))| format!("{}:{a}-{b}", i + 4))
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(u8, u8)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::InvalidSpec(format!("expected `a-b`, got `{item}`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidSpec(format!("bad symbol `{s}` in `{item}`")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// Which family member to build, with exactly the parameters that family needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum TopologySpec {
    #[serde(rename = "AG")]
    AlternatingGroupGraph { n: usize },
    #[serde(rename = "AN")]
    AlternatingGroupNetwork { n: usize },
    #[serde(rename = "BC_HYPERCUBE")]
    BcHypercube { n: usize },
    #[serde(rename = "BC_RANDOM")]
    BcRandom { n: usize, seed: u64 },
    #[serde(rename = "QNK")]
    KAryCube { n: usize, k: usize },
    #[serde(rename = "SPLIT_STAR")]
    SplitStar { n: usize },
    #[serde(rename = "TRANS_TREE")]
    TranspositionTree { tree: TranspositionTree },
    #[serde(rename = "TWO_TREE")]
    TwoTree { twotree: TwoTree },
    #[serde(rename = "BP")]
    BurntPancake { n: usize },
}

impl TopologySpec {
    pub fn family(&self) -> Family {
        match self {
            TopologySpec::AlternatingGroupGraph { .. } => Family::AlternatingGroupGraph,
            TopologySpec::AlternatingGroupNetwork { .. } => Family::AlternatingGroupNetwork,
            TopologySpec::BcHypercube { .. } => Family::BcHypercube,
            TopologySpec::BcRandom { .. } => Family::BcRandom,
            TopologySpec::KAryCube { .. } => Family::KAryCube,
            TopologySpec::SplitStar { .. } => Family::SplitStar,
            TopologySpec::TranspositionTree { .. } => Family::TranspositionTree,
            TopologySpec::TwoTree { .. } => Family::TwoTree,
            TopologySpec::BurntPancake { .. } => Family::BurntPancake,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            TopologySpec::AlternatingGroupGraph { n }
            | TopologySpec::AlternatingGroupNetwork { n }
            | TopologySpec::BcHypercube { n }
            | TopologySpec::BcRandom { n, .. }
            | TopologySpec::KAryCube { n, .. }
            | TopologySpec::SplitStar { n }
            | TopologySpec::BurntPancake { n } => *n,
            TopologySpec::TranspositionTree { tree } => tree.n(),
            TopologySpec::TwoTree { twotree } => twotree.n(),
        }
    }

    /// Arity for `Q_n^k`, `None` elsewhere.
    pub fn arity(&self) -> Option<usize> {
        match self {
            TopologySpec::KAryCube { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// Assembles a spec from loose command-line style parameters, rejecting
    /// parameters the family does not take.
    pub fn from_parts(
        family: Family,
        n: usize,
        k: Option<usize>,
        tree: Option<&str>,
        twotree: Option<&str>,
        seed: Option<u64>,
    ) -> Result<Self> {
        let reject = |what: &str, present: bool| {
            if present {
                Err(Error::InvalidSpec(format!("family {family} does not take {what}")))
            } else {
                Ok(())
            }
        };
        if family != Family::KAryCube {
            reject("--k", k.is_some())?;
        }
        if family != Family::TranspositionTree {
            reject("--tree", tree.is_some())?;
        }
        if family != Family::TwoTree {
            reject("--twotree", twotree.is_some())?;
        }
        if family != Family::BcRandom {
            reject("--seed", seed.is_some())?;
        }
        let spec = match family {
            Family::AlternatingGroupGraph => TopologySpec::AlternatingGroupGraph { n },
            Family::AlternatingGroupNetwork => TopologySpec::AlternatingGroupNetwork { n },
            Family::BcHypercube => TopologySpec::BcHypercube { n },
            Family::BcRandom => TopologySpec::BcRandom {
                n,
                seed: seed.ok_or_else(|| Error::InvalidSpec("bc-random requires --seed".into()))?,
            },
            Family::KAryCube => TopologySpec::KAryCube {
                n,
                k: k.ok_or_else(|| Error::InvalidSpec("qnk requires --k".into()))?,
            },
            Family::SplitStar => TopologySpec::SplitStar { n },
            Family::TranspositionTree => TopologySpec::TranspositionTree {
                tree: TranspositionTree::parse(tree.unwrap_or("star"), n)?,
            },
            Family::TwoTree => TopologySpec::TwoTree {
                twotree: TwoTree::parse(twotree.unwrap_or("path"), n)?,
            },
            Family::BurntPancake => TopologySpec::BurntPancake { n },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let family = self.family();
        if n < family.min_n() {
            return Err(Error::InvalidSpec(format!("{family} needs n >= {}, got {n}", family.min_n())));
        }
        if let TopologySpec::KAryCube { k, .. } = self {
            if *k < 2 {
                return Err(Error::InvalidSpec(format!("qnk needs k >= 2, got {k}")));
            }
        }
        match self.expected_order() {
            Some(order) if order <= MAX_ORDER => Ok(()),
            _ => Err(Error::InvalidSpec(format!(
                "{} would exceed the {MAX_ORDER}-vertex limit",
                self.name()
            ))),
        }
    }

    /// Vertex count, `None` on overflow.
    pub fn expected_order(&self) -> Option<usize> {
        let n = self.n();
        let fact = || (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i));
        match self {
            TopologySpec::AlternatingGroupGraph { .. }
            | TopologySpec::AlternatingGroupNetwork { .. }
            | TopologySpec::TwoTree { .. } => fact().map(|f| f / 2),
            TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => 1usize.checked_shl(n as u32),
            TopologySpec::KAryCube { k, .. } => k.checked_pow(n as u32),
            TopologySpec::SplitStar { .. } | TopologySpec::TranspositionTree { .. } => fact(),
            TopologySpec::BurntPancake { .. } => fact().and_then(|f| f.checked_mul(1usize.checked_shl(n as u32)?)),
        }
    }

    /// Degree every vertex of the family member has.
    pub fn expected_regularity(&self) -> usize {
        let n = self.n();
        match self {
            TopologySpec::AlternatingGroupGraph { .. } => 2 * n - 4,
            TopologySpec::AlternatingGroupNetwork { .. } => {
                if n == 3 {
                    2
                } else {
                    n - 1
                }
            }
            TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => n,
            TopologySpec::KAryCube { k, .. } => {
                if *k == 2 {
                    n
                } else {
                    2 * n
                }
            }
            TopologySpec::SplitStar { .. } => 2 * n - 3,
            TopologySpec::TranspositionTree { .. } => n - 1,
            TopologySpec::TwoTree { .. } => 2 * n - 4,
            TopologySpec::BurntPancake { .. } => n,
        }
    }

    /// Expected `l(G)` for the family (common neighbors of adjacent vertices).
    pub fn expected_l(&self) -> usize {
        match self {
            TopologySpec::AlternatingGroupGraph { .. }
            | TopologySpec::AlternatingGroupNetwork { .. }
            | TopologySpec::SplitStar { .. }
            | TopologySpec::TwoTree { .. } => usize::from(self.n() >= 3),
            TopologySpec::KAryCube { k, .. } => usize::from(*k == 3),
            _ => 0,
        }
    }

    /// Short display name, e.g. `AG_5`, `Q_3^4`, `Γ_6(star)`.
    pub fn name(&self) -> String {
        let n = self.n();
        match self {
            TopologySpec::AlternatingGroupGraph { .. } => format!("AG_{n}"),
            TopologySpec::AlternatingGroupNetwork { .. } => format!("AN_{n}"),
            TopologySpec::BcHypercube { .. } => format!("X_{n}(hypercube)"),
            TopologySpec::BcRandom { seed, .. } => format!("X_{n}(seed={seed})"),
            TopologySpec::KAryCube { k, .. } => format!("Q_{n}^{k}"),
            TopologySpec::SplitStar { .. } => format!("S_{n}^2"),
            TopologySpec::TranspositionTree { tree } => {
                if *tree == TranspositionTree::star(n).expect("valid") {
                    format!("Gamma_{n}(star)")
                } else if *tree == TranspositionTree::path(n).expect("valid") {
                    format!("Gamma_{n}(path)")
                } else {
                    format!("Gamma_{n}({tree})")
                }
            }
            TopologySpec::TwoTree { twotree } => format!("Gamma_{n}(Delta:{twotree})"),
            TopologySpec::BurntPancake { .. } => format!("BP_{n}"),
        }
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
