//! Interconnection-network topologies, extra connectivity and pessimistic
//! diagnosability under the PMC model.

pub mod analysis;
pub mod bitset;
pub mod connectivity;
pub mod diagnosability;
pub mod edgelist;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod lemmas;
mod par;
pub mod perm;
pub mod report;
pub mod theorem;
pub mod topology;

pub use analysis::{AnalysisReport, LemmaVerdict, Status, DEFAULT_BUDGET};
pub use bitset::VertexSet;
pub use connectivity::vertex_connectivity;
pub use diagnosability::{naive_tt_oracle, pessimistic_diagnosability, DiagnosisVerdict, Diagnoser};
pub use error::{Error, Result};
pub use generators::{build, decomposition, Decomposition};
pub use graph::Graph;
pub use par::configure_threads;
pub use report::Report;
pub use theorem::{check_conditions, TheoremReport};
pub use topology::{Family, TopologySpec, TranspositionTree, TwoTree, MAX_ORDER};
