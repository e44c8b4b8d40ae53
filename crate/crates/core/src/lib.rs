//! Exact Ramsey-arrowing decisions with machine-checkable certificates,
//! clique-hypergraph co-degree evaluation, certified log-scale verification
//! of the bound chain behind exponential Folkman-number estimates, and
//! brute-force oracles for the density and counting facts on small hosts.

pub mod arrow;
pub mod bounds;
pub mod coloring;
pub mod density;
pub mod dichotomy;
pub mod gnp;
pub mod graph;
pub mod graph6;
pub mod hypergraph;
pub mod interval;
pub mod mc;

pub use arrow::{arrows, is_folkman, ArrowCertificate, ArrowVerdict, Budget, SearchMode};
pub use coloring::{find_monochromatic_clique, EdgeColoring, MonoClique};
pub use graph::{Graph, VertexSet};
pub use interval::{Interval, LogInterval, Verdict};
