//! Human-readable output.

use std::fmt::Write as _;

use topodiag_core::analysis::AnalysisReport;
use topodiag_core::diagnosability::{TpResult, ViolationKind};
use topodiag_core::{Graph, LemmaVerdict, Status, TopologySpec};

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn gen_summary(spec: &TopologySpec, g: &Graph) -> String {
    let degree = match g.regular_degree() {
        Some(k) => format!("{k}-regular"),
        None => format!("degrees {}..{}", g.min_degree(), g.max_degree()),
    };
    format!("{}: {} vertices, {} edges, {degree}", spec.name(), g.order(), g.edge_count())
}

pub fn analysis(spec: Option<&TopologySpec>, a: &AnalysisReport) -> String {
    let mut s = String::new();
    let name = spec.map_or_else(|| "input".to_string(), TopologySpec::name);
    let _ = writeln!(s, "graph     {name}");
    let _ = writeln!(s, "order     {}", a.order);
    let _ = writeln!(s, "edges     {}", a.edges);
    let _ = writeln!(s, "k         {}", a.k.map_or_else(|| "not regular".into(), |k| k.to_string()));
    let _ = writeln!(s, "kappa     {}", a.kappa);
    let _ = writeln!(s, "girth     {}", a.girth.map_or_else(|| "acyclic".into(), |g| g.to_string()));
    let _ = writeln!(s, "cn_max    {}", a.cn_max);
    let _ = writeln!(s, "l_max     {}", a.l_max);
    let kappa1 = match (a.kappa1_upper, a.kappa1) {
        (_, Some(exact)) => format!("{exact} (exact)"),
        (Some(upper), None) => format!("<= {upper}"),
        (None, None) => "-".into(),
    };
    let _ = writeln!(s, "kappa1    {kappa1}");
    if let Some(w) = &a.kappa1_witness {
        let _ = writeln!(s, "  cut       {}", list(&w.cut));
        let _ = writeln!(s, "  component {}", list(&w.component));
    }
    let _ = writeln!(s, "searched  {}", a.searched);
    if a.budget_exhausted {
        let _ = writeln!(s, "budget    exhausted");
    }
    for note in &a.notes {
        let _ = writeln!(s, "note      {note}");
    }
    s
}

pub fn tp(spec: Option<&TopologySpec>, r: &TpResult) -> String {
    let mut s = String::new();
    let name = spec.map_or_else(|| "input".to_string(), TopologySpec::name);
    let _ = writeln!(s, "{name}: t_p = {} (kappa = {})", r.tp, r.kappa);
    if r.not_even_one {
        let _ = writeln!(s, "not 1/1-diagnosable; t_p reported as 0");
    }
    let f = &r.failure;
    let kind = match f.violation_kind {
        ViolationKind::TwinTrivial => "two trivial components",
        ViolationKind::SmallComponent => "small nontrivial component",
        ViolationKind::None => "none",
    };
    let _ = writeln!(s, "fails at t = {}: {kind}", f.t);
    let _ = writeln!(s, "  S         {} (|S| = {})", list(&f.witness_s), f.p);
    let _ = writeln!(s, "  component {}", list(&f.witness_component));
    s
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Violated => "VIOLATED",
        Status::BudgetExhausted => "budget exhausted",
        Status::Inapplicable => "inapplicable",
    }
}

pub fn verdict(v: &LemmaVerdict) -> String {
    let mut s = format!("{}: {} (bound {}", v.id, status(v.status), v.bound);
    if let Some(m) = v.measured {
        let _ = write!(s, ", measured {m}");
    }
    let _ = write!(s, ", searched {})", v.searched);
    if let Some(w) = &v.witness {
        if !w.is_empty() {
            let _ = write!(s, "\n  witness {}", list(w));
        }
    }
    if let Some(cut) = &v.cut {
        let _ = write!(s, "\n  cut     {}", list(cut));
    }
    if !v.exceptions.is_empty() {
        let _ = write!(s, "\n  {} tolerated exception(s)", v.exceptions.len());
        for e in &v.exceptions {
            let parts: Vec<String> = e.components.iter().map(|c| list(c)).collect();
            let _ = write!(s, "\n    cut {} -> {}", list(&e.cut), parts.join(" + "));
        }
    }
    if !v.note.is_empty() {
        let _ = write!(s, "\n  note    {}", v.note);
    }
    s
}

pub struct TableRow {
    pub label: String,
    pub name: String,
    pub formula: String,
    pub predicted: usize,
    pub tp: Option<usize>,
    pub kappa1_upper: Option<usize>,
    pub matched: bool,
}

pub fn table_label(spec: &TopologySpec) -> String {
    let n = spec.n();
    match spec {
        TopologySpec::AlternatingGroupGraph { .. } => format!("AG n={n}"),
        TopologySpec::AlternatingGroupNetwork { .. } => format!("AN n={n}"),
        TopologySpec::BcHypercube { .. } | TopologySpec::BcRandom { .. } => format!("BC n={n}"),
        TopologySpec::KAryCube { k, .. } => format!("Q^{k} n={n}"),
        TopologySpec::SplitStar { .. } => format!("S^2 n={n}"),
        TopologySpec::TranspositionTree { .. } | TopologySpec::TwoTree { .. } => {
            let name = spec.name();
            let (head, rest) = name.split_once('_').unwrap_or((name.as_str(), ""));
            let shape = rest.find('(').map_or("", |i| &rest[i..]);
            format!("{head}{shape} n={n}")
        }
        TopologySpec::BurntPancake { .. } => format!("BP n={n}"),
    }
}

pub fn table_row(r: &TableRow) -> String {
    format!(
        "{}: predicted {} ({}), t_p {}, κ₁≤{}, {}",
        r.label,
        r.predicted,
        r.formula,
        opt(r.tp),
        opt(r.kappa1_upper),
        if r.matched { "match" } else { "MISMATCH" }
    )
}
