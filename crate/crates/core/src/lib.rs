//! Exact power indices and false-name manipulation analysis for weighted
//! voting games.
//!
//! A game `[q; w1, ..., wn]` is a [`WeightedVotingGame`]. The [`indices`]
//! module computes swing counts, Banzhaf and Shapley-Shubik indices by
//! enumeration or by pseudo-polynomial DP; [`manipulation`] evaluates
//! splitting, merging and annexation; [`instances`] builds reduction
//! instances and game families; [`format`] reads and writes games and
//! reports.

pub mod error;
pub mod format;
pub mod game;
pub mod indices;
pub mod instances;
pub mod manipulation;

pub use error::{Error, Result};
pub use game::{Coalition, PlayerId, WeightedVotingGame};
pub use indices::{
    compute_banzhaf, compute_shapley, eta_dp, eta_enum, is_dummy, power_index, BanzhafIndices,
    CriticalityCounts, IndexKind, Method, PowerIndexVector, ShapleyIndices, ShapleyRawCounts,
};
pub use manipulation::{ManipulationReport, MergeAction, SplitAction};
