use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{split_game, Action, ManipulationReport, SplitAction};
use crate::error::{Error, Result};
use crate::game::{PlayerId, WeightedVotingGame};
use crate::indices::{power_index, IndexKind};

/// All partitions of `total` into exactly `parts` positive parts, each
/// non-increasing, in decreasing lexicographic order.
pub fn enumerate_partitions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if parts == 0 || parts as u64 > total {
        return out;
    }
    let mut prefix = Vec::with_capacity(parts);
    fill(total, parts, total, &mut prefix, &mut out);
    out
}

fn fill(remaining: u64, slots: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if slots == 1 {
        if remaining <= cap {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    let slots_u = slots as u64;
    // Largest admissible first part leaves 1 for every later slot; the
    // smallest keeps the rest within `first` each.
    let hi = cap.min(remaining - (slots_u - 1));
    let lo = remaining.div_ceil(slots_u);
    for first in (lo..=hi).rev() {
        prefix.push(first);
        fill(remaining - first, slots - 1, first, prefix, out);
        prefix.pop();
    }
}

fn bloc_payoff(
    game: &WeightedVotingGame,
    action: &SplitAction,
    kind: IndexKind,
) -> Result<(BigRational, super::Remap, WeightedVotingGame)> {
    let (after_game, remap) = split_game(game, action)?;
    let index = power_index(&after_game, kind)?;
    let payoff = remap
        .targets(action.player())
        .into_iter()
        .map(|id| index.get(id).clone())
        .sum();
    Ok((payoff, remap, after_game))
}

/// Compares the splitting player's payoff with the total payoff of its
/// sub-players.
pub fn evaluate_split(
    game: &WeightedVotingGame,
    action: &SplitAction,
    kind: IndexKind,
) -> Result<ManipulationReport> {
    game.check_player(action.player())?;
    let before = power_index(game, kind)?.get(action.player()).clone();
    let (after, remap, game_after) = bloc_payoff(game, action, kind)?;
    Ok(ManipulationReport::new(
        Action::Split(action.clone()),
        kind,
        before,
        after,
        remap,
        game_after,
    ))
}

/// Searches every split of player `player` into 2 to `max_parts` integer
/// parts and returns the one with the highest total payoff, or `None` if no
/// split is strictly beneficial. Ties go to the first candidate in
/// enumeration order: fewer parts first, then decreasing lexicographic.
pub fn best_split(
    game: &WeightedVotingGame,
    player: PlayerId,
    max_parts: usize,
    kind: IndexKind,
) -> Result<Option<ManipulationReport>> {
    let weight = game.weight(player)?;
    if weight < &BigUint::from(2u32) {
        return Err(Error::WeightTooSmallToSplit(weight.clone()));
    }
    if max_parts < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "max parts must be at least 2 (got {max_parts})"
        )));
    }
    let total = weight.to_u64().ok_or_else(|| {
        Error::ParameterOutOfRange(format!("weight {weight} is too large to enumerate splits"))
    })?;
    let before = power_index(game, kind)?.get(player).clone();

    let upper = (max_parts as u64).min(total) as usize;
    let candidates: Vec<Vec<u64>> = (2..=upper)
        .flat_map(|j| enumerate_partitions(total, j))
        .collect();
    let payoffs = candidates
        .par_iter()
        .map(|parts| {
            let action = SplitAction::new(player, parts.iter().copied())?;
            bloc_payoff(game, &action, kind).map(|(payoff, _, _)| payoff)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best: Option<usize> = None;
    for (k, payoff) in payoffs.iter().enumerate() {
        if best.is_none_or(|b| payoff > &payoffs[b]) {
            best = Some(k);
        }
    }
    match best {
        Some(k) if payoffs[k] > before => {
            let action = SplitAction::new(player, candidates[k].iter().copied())?;
            let (after, remap, game_after) = bloc_payoff(game, &action, kind)?;
            debug_assert_eq!(after, payoffs[k]);
            Ok(Some(ManipulationReport::new(
                Action::Split(action),
                kind,
                before,
                after,
                remap,
                game_after,
            )))
        }
        _ => Ok(None),
    }
}
