//! Maximum flows, flow decomposition, arc-disjoint path sequences and the
//! flow-based group centrality measures built on them.
//!
//! The crate works on networks over the complete digraph of a finite vertex
//! set with nonnegative integer capacities. For a source `y`, sink `z` and
//! vertex set `X` it computes
//!
//! * the drop in maximum flow value when every arc touching `X` is removed
//!   ([`quantities::phi_pair`]),
//! * the minimum number of paths that meet `X` in a maximum arc-disjoint path
//!   sequence ([`quantities::lambda_pair`]),
//! * the minimum flow through `X` over all maximum flows
//!   ([`quantities::delta_pair`]),
//!
//! and sums the first two over all pairs into the full flow vitality and full
//! flow betweenness of `X` ([`centrality`]). The [`oracle`] module holds
//! brute-force reference implementations used to check the solvers.

pub mod centrality;
pub mod error;
pub mod figures;
pub mod fixtures;
pub mod flow;
pub mod network;
pub mod oracle;
pub mod path;
pub mod quantities;
pub mod report;

pub use centrality::{CentralityOptions, CentralityReport, Rational};
pub use error::{Error, Result};
pub use flow::{Decomposition, Flow};
pub use network::{Arc, Network, VertexId, VertexSet};
pub use path::{ArcDisjointSequence, ArcFunction, Cycle, Direction, GeneralizedPath, Path, Walk};
pub use quantities::{LambdaMode, PairOptions, PairQuantities};
