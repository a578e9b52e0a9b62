//! The stable JSON report.

use serde::{Deserialize, Serialize};

use crate::analysis::{AnalysisReport, LemmaVerdict};
use crate::topology::TopologySpec;

/// One graph's parameters and any verdicts, with fixed field names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// Family tag such as `AG`; `null` for graphs read from a file.
    pub family: Option<String>,
    pub n: Option<usize>,
    pub order: usize,
    pub k: Option<usize>,
    pub kappa: usize,
    pub girth: Option<usize>,
    pub cn_max: usize,
    pub l_max: usize,
    pub kappa1_upper: Option<usize>,
    /// `κ₁` when certified by exhaustive search, else `null`.
    pub kappa1_exact: Option<usize>,
    pub tp: Option<usize>,
    pub verdicts: Vec<LemmaVerdict>,
}

impl Report {
    pub fn new(spec: Option<&TopologySpec>, analysis: &AnalysisReport) -> Self {
        Report {
            family: spec.map(|s| family_tag(s).to_string()),
            n: spec.map(TopologySpec::n),
            order: analysis.order,
            k: analysis.k,
            kappa: analysis.kappa,
            girth: analysis.girth,
            cn_max: analysis.cn_max,
            l_max: analysis.l_max,
            kappa1_upper: analysis.kappa1_upper,
            kappa1_exact: analysis.kappa1,
            tp: None,
            verdicts: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn family_tag(spec: &TopologySpec) -> &'static str {
    use crate::topology::Family::*;
    match spec.family() {
        AlternatingGroupGraph => "AG",
        AlternatingGroupNetwork => "AN",
        BcHypercube => "BC_HYPERCUBE",
        BcRandom => "BC_RANDOM",
        KAryCube => "QNK",
        SplitStar => "SPLIT_STAR",
        TranspositionTree => "TRANS_TREE",
        TwoTree => "TWO_TREE",
        BurntPancake => "BP",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, AnalysisOptions};
    use crate::generators::build;

    #[test]
    fn json_roundtrip_and_field_names() {
        let spec = TopologySpec::KAryCube { n: 3, k: 2 };
        let g = build(&spec).unwrap();
        let report = Report::new(Some(&spec), &analyze(&g, &AnalysisOptions::default()).unwrap());
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        for key in [
            "family", "n", "order", "k", "kappa", "girth", "cn_max", "l_max", "kappa1_upper", "kappa1_exact", "tp",
            "verdicts",
        ] {
            assert!(keys.contains(&key), "{key}");
        }
        assert_eq!(serde_json::from_str::<Report>(&json).unwrap(), report);
        assert_eq!(report.kappa1_exact, Some(4));
    }
}
