//! Checks of the known limits on what splitting, merging and annexation can
//! achieve, evaluated on concrete games.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use super::{merge_game, split_game, SplitAction};
use crate::error::{Error, Result};
use crate::game::{Coalition, PlayerId, WeightedVotingGame};
use crate::indices::{banzhaf_from_counts, criticality_counts, power_index, IndexKind};

/// Two-way split of one player: swing counts before and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBoundCheck {
    pub eta_before: BigUint,
    pub eta_parts: [BigUint; 2],
    pub banzhaf_before: BigRational,
    pub banzhaf_parts: BigRational,
    /// Every other player's swing count is at least its old value.
    pub others_gain_swings: bool,
}

impl SplitBoundCheck {
    /// The two halves together swing exactly twice as often as the original.
    pub fn doubling_holds(&self) -> bool {
        &self.eta_parts[0] + &self.eta_parts[1] == &self.eta_before * 2u32
    }

    /// Sub-players' total Banzhaf index is at most twice the original.
    pub fn bound_holds(&self) -> bool {
        self.banzhaf_parts <= &self.banzhaf_before * BigRational::from_integer(2.into())
    }
}

pub fn check_split_bound(
    game: &WeightedVotingGame,
    action: &SplitAction,
) -> Result<SplitBoundCheck> {
    if action.parts().len() != 2 {
        return Err(Error::ParameterOutOfRange(
            "the split bound applies to two-way splits".into(),
        ));
    }
    let player = action.player();
    let (after_game, remap) = split_game(game, action)?;
    let before = banzhaf_from_counts(criticality_counts(game)?);
    let after = banzhaf_from_counts(criticality_counts(&after_game)?);
    let parts = remap.targets(player);
    let others_gain_swings = game.player_ids().filter(|&x| x != player).all(|x| {
        let new = remap.targets(x)[0];
        after.counts.get(new) >= before.counts.get(x)
    });
    Ok(SplitBoundCheck {
        eta_before: before.counts.get(player).clone(),
        eta_parts: [
            after.counts.get(parts[0]).clone(),
            after.counts.get(parts[1]).clone(),
        ],
        banzhaf_before: before.normalized.get(player).clone(),
        banzhaf_parts: parts
            .iter()
            .map(|&id| after.normalized.get(id).clone())
            .sum(),
        others_gain_swings,
    })
}

/// Pairwise merge of `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeBoundCheck {
    /// `(beta_i + beta_j) / 2` in the original game.
    pub lower: BigRational,
    /// Banzhaf index of the bloc in the merged game.
    pub bloc: BigRational,
    /// No other player's swing count went up.
    pub others_lose_swings: bool,
}

impl MergeBoundCheck {
    pub fn holds(&self) -> bool {
        self.lower <= self.bloc && self.bloc <= BigRational::one()
    }
}

pub fn check_merge_bound(
    game: &WeightedVotingGame,
    i: PlayerId,
    j: PlayerId,
) -> Result<MergeBoundCheck> {
    let pair = game.coalition([i.get(), j.get()])?;
    let (merged, bloc, remap) = merge_game(game, &pair)?;
    let before = banzhaf_from_counts(criticality_counts(game)?);
    let after = banzhaf_from_counts(criticality_counts(&merged)?);
    let half = BigRational::new(1.into(), 2.into());
    let others_lose_swings = remap
        .iter()
        .filter(|&(new, _)| new != bloc)
        .all(|(new, from)| after.counts.get(new) <= before.counts.get(from[0]));
    Ok(MergeBoundCheck {
        lower: (before.normalized.get(i) + before.normalized.get(j)) * half,
        bloc: after.normalized.get(bloc).clone(),
        others_lose_swings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyAnnexationCheck {
    pub before: BigRational,
    pub after: BigRational,
}

impl ShapleyAnnexationCheck {
    /// Annexation never lowers the annexer's Shapley-Shubik index.
    pub fn holds(&self) -> bool {
        self.after >= self.before && self.after <= BigRational::one()
    }
}

pub fn check_shapley_annexation(
    game: &WeightedVotingGame,
    annexer: PlayerId,
    annexed: &Coalition,
) -> Result<ShapleyAnnexationCheck> {
    let report = super::evaluate_annexation(game, annexer, annexed, IndexKind::ShapleyShubik)?;
    debug_assert_eq!(
        report.before,
        power_index(game, IndexKind::ShapleyShubik)?
            .get(annexer)
            .clone()
    );
    Ok(ShapleyAnnexationCheck {
        before: report.before,
        after: report.after,
    })
}
