//! Swing counts and the Banzhaf and Shapley-Shubik power indices.
//!
//! Two independent engines compute the raw counts: exhaustive enumeration
//! ([`Method::Enumeration`]) and the pseudo-polynomial counting DP
//! ([`Method::DynamicProgramming`]). All results are exact.

mod dp;
mod enumerate;
mod table;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{PlayerId, WeightedVotingGame};

pub use dp::{Route, MAX_TABLE_LEN};
pub use enumerate::DEFAULT_ENUMERATION_LIMIT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexKind {
    BanzhafNormalized,
    BanzhafProbabilistic,
    ShapleyShubik,
}

impl IndexKind {
    /// Whether payoffs of this kind can be compared across games with
    /// different player counts. Probabilistic Banzhaf values are scaled by
    /// `2^(n-1)` and are not.
    pub fn is_cross_game_comparable(self) -> bool {
        !matches!(self, IndexKind::BanzhafProbabilistic)
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::BanzhafNormalized => "banzhaf",
            IndexKind::BanzhafProbabilistic => "banzhaf-probabilistic",
            IndexKind::ShapleyShubik => "shapley-shubik",
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumeration { limit: usize },
    DynamicProgramming,
}

impl Method {
    pub fn enumeration() -> Self {
        Method::Enumeration {
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

/// `eta[i]`: number of coalitions for which player `i` is critical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityCounts {
    eta: Vec<BigUint>,
}

impl CriticalityCounts {
    pub fn eta(&self) -> &[BigUint] {
        &self.eta
    }

    pub fn get(&self, id: PlayerId) -> &BigUint {
        &self.eta[id.index()]
    }

    pub fn total(&self) -> BigUint {
        self.eta.iter().sum()
    }
}

/// `kappa[i] = phi_i * n!`, the number of orderings in which `i` is pivotal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyRawCounts {
    kappa: Vec<BigUint>,
}

impl ShapleyRawCounts {
    pub fn kappa(&self) -> &[BigUint] {
        &self.kappa
    }

    pub fn get(&self, id: PlayerId) -> &BigUint {
        &self.kappa[id.index()]
    }

    pub fn total(&self) -> BigUint {
        self.kappa.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerIndexVector {
    kind: IndexKind,
    values: Vec<BigRational>,
}

impl PowerIndexVector {
    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, id: PlayerId) -> &BigRational {
        &self.values[id.index()]
    }

    pub fn sum(&self) -> BigRational {
        self.values.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BanzhafIndices {
    pub counts: CriticalityCounts,
    pub normalized: PowerIndexVector,
    pub probabilistic: PowerIndexVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyIndices {
    pub counts: ShapleyRawCounts,
    pub index: PowerIndexVector,
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn eta_enum(game: &WeightedVotingGame) -> Result<CriticalityCounts> {
    eta_enum_with_limit(game, DEFAULT_ENUMERATION_LIMIT)
}

pub fn eta_enum_with_limit(game: &WeightedVotingGame, limit: usize) -> Result<CriticalityCounts> {
    let tally = enumerate::tally(game, limit)?;
    let eta = tally
        .swings
        .iter()
        .map(|by_size| by_size.iter().map(|&c| BigUint::from(c)).sum())
        .collect();
    Ok(CriticalityCounts { eta })
}

pub fn eta_dp(game: &WeightedVotingGame) -> Result<CriticalityCounts> {
    eta_dp_via(game, Route::Deconvolution)
}

pub fn eta_dp_via(game: &WeightedVotingGame, route: Route) -> Result<CriticalityCounts> {
    Ok(CriticalityCounts {
        eta: dp::eta(game, route)?,
    })
}

pub fn kappa_enum_with_limit(game: &WeightedVotingGame, limit: usize) -> Result<ShapleyRawCounts> {
    let n = game.players();
    let tally = enumerate::tally(game, limit)?;
    let weights: Vec<BigUint> = (0..n)
        .map(|s| factorial(s) * factorial(n - 1 - s))
        .collect();
    let kappa = tally
        .swings
        .iter()
        .map(|by_size| {
            by_size
                .iter()
                .zip(&weights)
                .map(|(&c, w)| w * BigUint::from(c))
                .sum()
        })
        .collect();
    Ok(ShapleyRawCounts { kappa })
}

pub fn kappa_dp_via(game: &WeightedVotingGame, route: Route) -> Result<ShapleyRawCounts> {
    Ok(ShapleyRawCounts {
        kappa: dp::kappa(game, route)?,
    })
}

fn counts_by(game: &WeightedVotingGame, method: Method) -> Result<CriticalityCounts> {
    match method {
        Method::Enumeration { limit } => eta_enum_with_limit(game, limit),
        Method::DynamicProgramming => eta_dp(game),
    }
}

pub fn banzhaf_from_counts(counts: CriticalityCounts) -> BanzhafIndices {
    let n = counts.eta.len();
    let total = counts.total();
    let scale = BigUint::from(1u8) << (n - 1);
    let normalized = counts.eta.iter().map(|e| ratio(e, &total)).collect();
    let probabilistic = counts.eta.iter().map(|e| ratio(e, &scale)).collect();
    BanzhafIndices {
        counts,
        normalized: PowerIndexVector {
            kind: IndexKind::BanzhafNormalized,
            values: normalized,
        },
        probabilistic: PowerIndexVector {
            kind: IndexKind::BanzhafProbabilistic,
            values: probabilistic,
        },
    }
}

pub fn compute_banzhaf(game: &WeightedVotingGame, method: Method) -> Result<BanzhafIndices> {
    Ok(banzhaf_from_counts(counts_by(game, method)?))
}

pub fn compute_shapley(game: &WeightedVotingGame, method: Method) -> Result<ShapleyIndices> {
    let counts = match method {
        Method::Enumeration { limit } => kappa_enum_with_limit(game, limit)?,
        Method::DynamicProgramming => kappa_dp_via(game, Route::Deconvolution)?,
    };
    let total = factorial(game.players());
    let values = counts.kappa.iter().map(|k| ratio(k, &total)).collect();
    Ok(ShapleyIndices {
        counts,
        index: PowerIndexVector {
            kind: IndexKind::ShapleyShubik,
            values,
        },
    })
}

/// DP when the quota gives a manageable table, otherwise enumeration.
pub fn preferred_method(game: &WeightedVotingGame, kind: IndexKind) -> Method {
    let len = game.quota().to_usize().unwrap_or(usize::MAX);
    let feasible = match kind {
        IndexKind::ShapleyShubik => len.saturating_mul(game.players() + 1) <= 1 << 26,
        _ => len <= 1 << 28,
    };
    if feasible || game.players() > DEFAULT_ENUMERATION_LIMIT {
        Method::DynamicProgramming
    } else {
        Method::enumeration()
    }
}

/// The requested index for every player, computed by [`preferred_method`].
pub fn power_index(game: &WeightedVotingGame, kind: IndexKind) -> Result<PowerIndexVector> {
    let method = preferred_method(game, kind);
    Ok(match kind {
        IndexKind::BanzhafNormalized => compute_banzhaf(game, method)?.normalized,
        IndexKind::BanzhafProbabilistic => compute_banzhaf(game, method)?.probabilistic,
        IndexKind::ShapleyShubik => compute_shapley(game, method)?.index,
    })
}

pub fn criticality_counts(game: &WeightedVotingGame) -> Result<CriticalityCounts> {
    counts_by(game, preferred_method(game, IndexKind::BanzhafNormalized))
}

/// A dummy is critical for no coalition.
pub fn is_dummy(game: &WeightedVotingGame, id: PlayerId) -> Result<bool> {
    game.check_player(id)?;
    // A zero-weight player can never swing when q >= 1.
    if game.weights()[id.index()].is_zero() {
        return Ok(true);
    }
    Ok(criticality_counts(game)?.get(id).is_zero())
}

/// Rough floating-point view, for display and trend checks only.
pub fn approx(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
