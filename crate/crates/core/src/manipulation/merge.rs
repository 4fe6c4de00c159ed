use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{merge_game, Action, ManipulationReport, MergeAction};
use crate::error::{Error, Result};
use crate::game::{Coalition, PlayerId, WeightedVotingGame};
use crate::indices::{power_index, IndexKind};

fn bloc_report(
    game: &WeightedVotingGame,
    action: MergeAction,
    before_players: &[PlayerId],
    kind: IndexKind,
) -> Result<ManipulationReport> {
    let members = action.bloc()?;
    let (after_game, bloc, remap) = merge_game(game, &members)?;
    let index = power_index(game, kind)?;
    let before = before_players.iter().map(|&id| index.get(id).clone()).sum();
    let after = power_index(&after_game, kind)?.get(bloc).clone();
    Ok(ManipulationReport::new(
        Action::Merge(action),
        kind,
        before,
        after,
        remap,
        after_game,
    ))
}

/// Voluntary merge: the bloc's payoff against the members' combined payoff.
pub fn evaluate_merge(
    game: &WeightedVotingGame,
    members: &Coalition,
    kind: IndexKind,
) -> Result<ManipulationReport> {
    for &id in members.members() {
        game.check_player(id)?;
    }
    if members.len() < 2 {
        return Err(Error::SingletonOrEmptyMerge);
    }
    let action = MergeAction::Merge {
        members: members.clone(),
    };
    bloc_report(game, action, members.members(), kind)
}

/// Annexation: the bloc's payoff against the annexer's own payoff.
pub fn evaluate_annexation(
    game: &WeightedVotingGame,
    annexer: PlayerId,
    annexed: &Coalition,
    kind: IndexKind,
) -> Result<ManipulationReport> {
    game.check_player(annexer)?;
    for &id in annexed.members() {
        game.check_player(id)?;
    }
    if annexed.is_empty() || annexed.contains(annexer) {
        return Err(Error::InvalidAnnexation);
    }
    let action = MergeAction::Annex {
        annexer,
        annexed: annexed.clone(),
    };
    bloc_report(game, action, &[annexer], kind)
}

/// Payoff of the bloc `&{annexer, k}` for every other player `k`, in player
/// order. The annexer's own slot is `None`.
pub fn annexation_payoffs(
    game: &WeightedVotingGame,
    annexer: PlayerId,
    kind: IndexKind,
) -> Result<Vec<Option<BigRational>>> {
    game.check_player(annexer)?;
    game.player_ids()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            if k == annexer {
                return Ok(None);
            }
            let pair = game.coalition([annexer.get(), k.get()])?;
            let (merged, bloc, _) = merge_game(game, &pair)?;
            Ok(Some(power_index(&merged, kind)?.get(bloc).clone()))
        })
        .collect()
}

/// Ordered pairs `(j, k)` of players other than `annexer` where `j` is at
/// least as heavy as `k`, yet annexing `k` pays strictly more than annexing
/// `j`.
pub fn scan_annexation_nonmonotonicity(
    game: &WeightedVotingGame,
    annexer: PlayerId,
    kind: IndexKind,
) -> Result<Vec<(PlayerId, PlayerId)>> {
    let payoffs = annexation_payoffs(game, annexer, kind)?;
    let weights = game.weights();
    let mut witnesses = Vec::new();
    for j in game.player_ids() {
        for k in game.player_ids() {
            if j == k {
                continue;
            }
            let (Some(pj), Some(pk)) = (&payoffs[j.index()], &payoffs[k.index()]) else {
                continue;
            };
            if weights[j.index()] >= weights[k.index()] && pk > pj {
                witnesses.push((j, k));
            }
        }
    }
    Ok(witnesses)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pick {
    count: usize,
    ids: Vec<usize>,
}

/// Heuristic annexation target: spend as much of `budget` as possible, using
/// as few players as possible to get there, breaking ties towards smaller
/// ids. For a given total weight, fewer and heavier annexed players raise
/// the other players' swing counts less.
pub fn annexation_advisor(
    game: &WeightedVotingGame,
    annexer: PlayerId,
    budget: &BigUint,
) -> Result<Coalition> {
    game.check_player(annexer)?;
    // best[t]: preferred subset with total weight exactly t.
    let mut best: BTreeMap<BigUint, Pick> = BTreeMap::new();
    best.insert(
        BigUint::zero(),
        Pick {
            count: 0,
            ids: Vec::new(),
        },
    );
    for id in game.player_ids().filter(|&id| id != annexer) {
        let w = &game.weights()[id.index()];
        if w.is_zero() {
            continue;
        }
        let extended: Vec<(BigUint, Pick)> = best
            .iter()
            .filter_map(|(total, pick)| {
                let t = total + w;
                (&t <= budget).then(|| {
                    let mut ids = pick.ids.clone();
                    ids.push(id.get());
                    (
                        t,
                        Pick {
                            count: pick.count + 1,
                            ids,
                        },
                    )
                })
            })
            .collect();
        for (t, pick) in extended {
            match best.get(&t) {
                Some(current) if current <= &pick => {}
                _ => {
                    best.insert(t, pick);
                }
            }
        }
    }
    let (_, pick) = best.into_iter().next_back().expect("empty set always fits");
    game.coalition(pick.ids)
}
