//! False-name manipulations: splitting a player into several identities,
//! merging players into a bloc, and one player annexing others.
//!
//! Every evaluation produces a [`ManipulationReport`] comparing the
//! manipulators' payoff before and after. "Beneficial" always means strictly
//! better; a neutral outcome reports a zero delta.

mod bounds;
mod merge;
mod split;
mod transform;
mod unanimity;

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Coalition, PlayerId, WeightedVotingGame};
use crate::indices::IndexKind;

pub use bounds::{
    check_merge_bound, check_shapley_annexation, check_split_bound, MergeBoundCheck,
    ShapleyAnnexationCheck, SplitBoundCheck,
};
pub use merge::{
    annexation_advisor, annexation_payoffs, evaluate_annexation, evaluate_merge,
    scan_annexation_nonmonotonicity,
};
pub use split::{best_split, enumerate_partitions, evaluate_split};
pub use transform::{merge_game, split_game};
pub use unanimity::{unanimity_payoffs, UnanimityVariant};

/// Player `player` splits its weight into `parts` (kept non-increasing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitAction {
    player: PlayerId,
    parts: Vec<BigUint>,
}

impl SplitAction {
    pub fn new<I, W>(player: PlayerId, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: Into<BigUint>,
    {
        let mut parts: Vec<BigUint> = parts.into_iter().map(Into::into).collect();
        if parts.iter().any(Zero::is_zero) {
            return Err(Error::ZeroPart);
        }
        if parts.len() < 2 {
            return Err(Error::TooFewParts);
        }
        parts.sort_by(|a, b| b.cmp(a));
        Ok(SplitAction { player, parts })
    }

    pub fn player(&self) -> PlayerId {
        self.player
    }

    pub fn parts(&self) -> &[BigUint] {
        &self.parts
    }
}

impl fmt::Display for SplitAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "split player {} into (", self.player)?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeAction {
    /// Players in `members` voluntarily form one bloc.
    Merge { members: Coalition },
    /// `annexer` takes over the weight of every player in `annexed`.
    Annex {
        annexer: PlayerId,
        annexed: Coalition,
    },
}

impl MergeAction {
    /// All players that end up in the bloc.
    pub fn bloc(&self) -> Result<Coalition> {
        match self {
            MergeAction::Merge { members } => Ok(members.clone()),
            MergeAction::Annex { annexer, annexed } => Coalition::new(
                annexed.players(),
                annexed
                    .members()
                    .iter()
                    .map(|id| id.get())
                    .chain([annexer.get()]),
            ),
        }
    }
}

impl fmt::Display for MergeAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MergeAction::Merge { members } => write!(f, "merge {members}"),
            MergeAction::Annex { annexer, annexed } => {
                write!(f, "player {annexer} annexes {annexed}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Split(SplitAction),
    Merge(MergeAction),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Split(a) => a.fmt(f),
            Action::Merge(a) => a.fmt(f),
        }
    }
}

/// Origins of every player of a transformed game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remap {
    /// `origins[k]`: players of the original game that became new player `k + 1`.
    origins: Vec<Vec<PlayerId>>,
}

impl Remap {
    pub(crate) fn new(origins: Vec<Vec<PlayerId>>) -> Self {
        Remap { origins }
    }

    pub fn origins(&self, new: PlayerId) -> &[PlayerId] {
        &self.origins[new.index()]
    }

    /// New players that original player `old` maps to.
    pub fn targets(&self, old: PlayerId) -> Vec<PlayerId> {
        self.origins
            .iter()
            .enumerate()
            .filter(|(_, from)| from.contains(&old))
            .map(|(k, _)| PlayerId::from_index(k))
            .collect()
    }

    pub fn new_players(&self) -> usize {
        self.origins.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PlayerId, &[PlayerId])> {
        self.origins
            .iter()
            .enumerate()
            .map(|(k, from)| (PlayerId::from_index(k), from.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationReport {
    pub action: Action,
    pub index_kind: IndexKind,
    /// Payoff of the manipulator(s) in the original game.
    pub before: BigRational,
    /// Payoff of the resulting player(s) in the transformed game.
    pub after: BigRational,
    pub delta: BigRational,
    pub beneficial: bool,
    pub remap: Remap,
    pub game_after: WeightedVotingGame,
}

impl ManipulationReport {
    pub(crate) fn new(
        action: Action,
        index_kind: IndexKind,
        before: BigRational,
        after: BigRational,
        remap: Remap,
        game_after: WeightedVotingGame,
    ) -> Self {
        let delta = &after - &before;
        let beneficial = delta.is_positive();
        ManipulationReport {
            action,
            index_kind,
            before,
            after,
            delta,
            beneficial,
            remap,
            game_after,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.beneficial {
            Verdict::Beneficial
        } else if self.delta.is_zero() {
            Verdict::Neutral
        } else {
            Verdict::Harmful
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Beneficial,
    Neutral,
    Harmful,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Beneficial => "beneficial",
            Verdict::Neutral => "not beneficial (neutral)",
            Verdict::Harmful => "not beneficial",
        })
    }
}
