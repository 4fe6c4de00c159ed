//! Game constructions: the PARTITION reductions for each manipulation
//! problem, named game families, and seeded random games.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{PlayerId, WeightedVotingGame};
use crate::indices::IndexKind;
use crate::manipulation::{
    evaluate_annexation, evaluate_merge, evaluate_split, Action, ManipulationReport, MergeAction,
    SplitAction,
};

/// A PARTITION instance: can `values` be split into two equal-sum halves?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::ParameterOutOfRange(
                "partition values must be non-empty and positive".into(),
            ));
        }
        Ok(PartitionInstance { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Exhaustive subset-sum check; exponential in the number of values.
    pub fn has_equal_split(&self) -> bool {
        let total: u64 = self.values.iter().sum();
        if total % 2 == 1 {
            return false;
        }
        let k = self.values.len();
        (0u64..1 << k).any(|mask| {
            let s: u64 = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.values[i])
                .sum();
            2 * s == total
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionVariant {
    Split,
    Merge,
    Annex,
    ShapleyMerge,
}

impl ReductionVariant {
    /// The payoff the reduced question is asked about.
    pub fn index_kind(self) -> IndexKind {
        match self {
            ReductionVariant::ShapleyMerge => IndexKind::ShapleyShubik,
            _ => IndexKind::BanzhafNormalized,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub game: WeightedVotingGame,
    /// The manipulation whose benefit encodes the PARTITION answer.
    pub focus: Action,
    pub variant: ReductionVariant,
}

impl ReductionOutput {
    pub fn evaluate(&self) -> Result<ManipulationReport> {
        let kind = self.variant.index_kind();
        match &self.focus {
            Action::Split(a) => evaluate_split(&self.game, a, kind),
            Action::Merge(MergeAction::Merge { members }) => {
                evaluate_merge(&self.game, members, kind)
            }
            Action::Merge(MergeAction::Annex { annexer, annexed }) => {
                evaluate_annexation(&self.game, *annexer, annexed, kind)
            }
        }
    }

    /// Players whose dummy status a no-instance forces.
    pub fn focus_players(&self) -> Vec<PlayerId> {
        match &self.focus {
            Action::Split(a) => vec![a.player()],
            Action::Merge(m) => m.bloc().map(|c| c.members().to_vec()).unwrap_or_default(),
        }
    }
}

/// Weights `8 a_1, ..., 8 a_k` followed by the variant's small players, with
/// quota `4 sum(a) + 2`.
pub fn partition_reduction(
    instance: &PartitionInstance,
    variant: ReductionVariant,
) -> Result<ReductionOutput> {
    let k = instance.values.len();
    let quota = BigUint::from(4u32)
        * instance
            .values
            .iter()
            .map(|&a| BigUint::from(a))
            .sum::<BigUint>()
        + 2u32;
    let mut weights: Vec<BigUint> = instance
        .values
        .iter()
        .map(|&a| BigUint::from(a) * 8u32)
        .collect();
    let focus = match variant {
        ReductionVariant::Split => {
            weights.push(2u32.into());
            Action::Split(SplitAction::new(PlayerId::new(k + 1), [1u32, 1])?)
        }
        ReductionVariant::Merge | ReductionVariant::ShapleyMerge => {
            weights.extend([1u32, 1, 1].map(BigUint::from));
            let n = k + 3;
            Action::Merge(MergeAction::Merge {
                members: crate::game::Coalition::new(n, [n - 1, n])?,
            })
        }
        ReductionVariant::Annex => {
            weights.extend([1u32, 1].map(BigUint::from));
            let n = k + 2;
            Action::Merge(MergeAction::Annex {
                annexer: PlayerId::new(n),
                annexed: crate::game::Coalition::new(n, [n - 1])?,
            })
        }
    };
    Ok(ReductionOutput {
        game: WeightedVotingGame::from_unsigned(quota, weights)?,
        focus,
        variant,
    })
}

/// `[n; 2, 1, ..., 1]` with `n` unit players.
pub fn tight_split_family(n: u64) -> Result<WeightedVotingGame> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!("need n >= 3 (got {n})")));
    }
    let mut weights = vec![2u64];
    weights.extend(std::iter::repeat_n(1, n as usize));
    WeightedVotingGame::from_u64(n, &weights)
}

/// `[3n/2; 2n, 1, ..., 1]` on `n` players; player 1 is a dictator.
pub fn dictator_family(n: u64) -> Result<WeightedVotingGame> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "need an even n >= 4 (got {n})"
        )));
    }
    let mut weights = vec![2 * n];
    weights.extend(std::iter::repeat_n(1, n as usize - 1));
    WeightedVotingGame::from_u64(3 * n / 2, &weights)
}

pub fn unanimity_game(weights: &[u64]) -> Result<WeightedVotingGame> {
    if weights.is_empty() || weights.contains(&0) {
        return Err(Error::ParameterOutOfRange(
            "unanimity weights must be non-empty and positive".into(),
        ));
    }
    WeightedVotingGame::from_u64(weights.iter().sum(), weights)
}

/// Weights uniform on `1..=max_weight`, then the quota uniform on `1..=sum`
/// (or on the proper range `sum/2 + 1..=sum`). The stream is ChaCha8 seeded
/// through `SeedableRng::seed_from_u64`, so a seed reproduces the same game
/// on every platform.
pub fn random_game(
    n: usize,
    max_weight: u64,
    seed: u64,
    proper_only: bool,
) -> Result<WeightedVotingGame> {
    if n == 0 || max_weight == 0 {
        return Err(Error::ParameterOutOfRange(
            "random games need n >= 1 and max_weight >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
    let total: u64 = weights
        .iter()
        .try_fold(0u64, |acc, &w| acc.checked_add(w))
        .ok_or_else(|| Error::ParameterOutOfRange("total weight overflows u64".into()))?;
    let low = if proper_only { total / 2 + 1 } else { 1 };
    let quota = rng.gen_range(low..=total);
    WeightedVotingGame::from_u64(quota, &weights)
}
