use num_bigint::BigUint;

use super::{Remap, SplitAction};
use crate::error::{Error, Result};
use crate::game::{Coalition, PlayerId, WeightedVotingGame};

/// Replaces the splitting player by its sub-players, in part order, at the
/// same position. The quota is unchanged.
pub fn split_game(
    game: &WeightedVotingGame,
    action: &SplitAction,
) -> Result<(WeightedVotingGame, Remap)> {
    let player = action.player();
    let weight = game.weight(player)?;
    let parts_total: BigUint = action.parts().iter().sum();
    if &parts_total != weight {
        return Err(Error::PartsDoNotSumToWeight {
            parts: parts_total,
            weight: weight.clone(),
        });
    }
    let mut weights = Vec::with_capacity(game.players() + action.parts().len() - 1);
    let mut origins = Vec::with_capacity(weights.capacity());
    for id in game.player_ids() {
        if id == player {
            for part in action.parts() {
                weights.push(part.clone());
                origins.push(vec![id]);
            }
        } else {
            weights.push(game.weights()[id.index()].clone());
            origins.push(vec![id]);
        }
    }
    Ok((game.with_weights(weights)?, Remap::new(origins)))
}

/// Merges `members` into one bloc carrying their total weight, placed at the
/// position of the lowest member id. Returns the bloc's id in the new game.
pub fn merge_game(
    game: &WeightedVotingGame,
    members: &Coalition,
) -> Result<(WeightedVotingGame, PlayerId, Remap)> {
    for &id in members.members() {
        game.check_player(id)?;
    }
    if members.len() < 2 {
        return Err(Error::SingletonOrEmptyMerge);
    }
    let first = members.members()[0];
    let mut weights = Vec::with_capacity(game.players() - members.len() + 1);
    let mut origins = Vec::with_capacity(weights.capacity());
    let mut bloc = first;
    for id in game.player_ids() {
        if id == first {
            bloc = PlayerId::from_index(weights.len());
            weights.push(game.coalition_weight(members)?);
            origins.push(members.members().to_vec());
        } else if !members.contains(id) {
            weights.push(game.weights()[id.index()].clone());
            origins.push(vec![id]);
        }
    }
    Ok((game.with_weights(weights)?, bloc, Remap::new(origins)))
}
