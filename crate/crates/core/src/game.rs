//! Weighted voting games, coalitions and the winning/critical predicates.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 1-based player identifier, as used in `[q; w1, ..., wn]` notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerId(usize);

impl PlayerId {
    /// Panics on 0; ids start at 1.
    pub fn new(id: usize) -> Self {
        assert!(id >= 1, "player ids are 1-based");
        PlayerId(id)
    }

    pub fn from_index(index: usize) -> Self {
        PlayerId(index + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Zero-based position in the weight list.
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `[q; w1, ..., wn]`: a coalition wins iff its total weight reaches the quota.
///
/// Construction enforces `n >= 1` and `1 <= q <= sum(w)`, so the empty
/// coalition always loses and the grand coalition always wins. Weights may be
/// zero and need not be sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedVotingGame {
    quota: BigUint,
    weights: Vec<BigUint>,
}

fn to_unsigned(value: BigInt) -> Option<BigUint> {
    match value.sign() {
        Sign::Minus => None,
        _ => value.to_biguint(),
    }
}

impl WeightedVotingGame {
    /// Validating constructor for signed input.
    pub fn new<Q, W, I>(quota: Q, weights: I) -> Result<Self>
    where
        Q: Into<BigInt>,
        W: Into<BigInt>,
        I: IntoIterator<Item = W>,
    {
        let quota = quota.into();
        if quota.sign() != Sign::Plus {
            return Err(Error::ZeroOrNegativeQuota(quota.to_string()));
        }
        let mut unsigned = Vec::new();
        for (index, w) in weights.into_iter().enumerate() {
            let w = w.into();
            match to_unsigned(w.clone()) {
                Some(w) => unsigned.push(w),
                None => {
                    return Err(Error::NegativeWeight {
                        player: index + 1,
                        weight: w.to_string(),
                    })
                }
            }
        }
        Self::from_unsigned(quota.to_biguint().expect("positive"), unsigned)
    }

    pub fn from_unsigned(quota: BigUint, weights: Vec<BigUint>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyPlayerList);
        }
        if quota.is_zero() {
            return Err(Error::ZeroOrNegativeQuota("0".into()));
        }
        let total: BigUint = weights.iter().sum();
        if quota > total {
            return Err(Error::QuotaExceedsTotalWeight { quota, total });
        }
        Ok(WeightedVotingGame { quota, weights })
    }

    pub fn from_u64(quota: u64, weights: &[u64]) -> Result<Self> {
        Self::from_unsigned(
            BigUint::from(quota),
            weights.iter().map(|&w| BigUint::from(w)).collect(),
        )
    }

    pub fn quota(&self) -> &BigUint {
        &self.quota
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn players(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> BigUint {
        self.weights.iter().sum()
    }

    pub fn player_ids(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.players()).map(PlayerId::from_index)
    }

    pub fn check_player(&self, id: PlayerId) -> Result<()> {
        if id.get() > self.players() {
            Err(Error::InvalidPlayerId {
                id: id.get(),
                players: self.players(),
            })
        } else {
            Ok(())
        }
    }

    pub fn weight(&self, id: PlayerId) -> Result<&BigUint> {
        self.check_player(id)?;
        Ok(&self.weights[id.index()])
    }

    /// Builds a coalition of this game from 1-based ids.
    pub fn coalition<I: IntoIterator<Item = usize>>(&self, ids: I) -> Result<Coalition> {
        Coalition::new(self.players(), ids)
    }

    pub fn coalition_weight(&self, coalition: &Coalition) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for &id in coalition.members() {
            total += self.weight(id)?;
        }
        Ok(total)
    }

    pub fn is_winning(&self, coalition: &Coalition) -> Result<bool> {
        Ok(self.coalition_weight(coalition)? >= self.quota)
    }

    /// For a winning coalition, the members whose removal makes it lose; for a
    /// losing one, the outsiders whose addition makes it win.
    pub fn critical_players(&self, coalition: &Coalition) -> Result<Vec<PlayerId>> {
        let weight = self.coalition_weight(coalition)?;
        let critical = if weight >= self.quota {
            coalition
                .members()
                .iter()
                .copied()
                .filter(|&id| &weight - &self.weights[id.index()] < self.quota)
                .collect()
        } else {
            self.player_ids()
                .filter(|&id| !coalition.contains(id))
                .filter(|&id| &weight + &self.weights[id.index()] >= self.quota)
                .collect()
        };
        Ok(critical)
    }

    /// No two disjoint coalitions can both win: `2q > sum(w)`.
    pub fn is_proper(&self) -> bool {
        &self.quota * 2u32 > self.total_weight()
    }

    pub fn is_unanimity(&self) -> bool {
        self.quota == self.total_weight()
    }

    pub fn is_dictator(&self, id: PlayerId) -> Result<bool> {
        let own = self.weight(id)?;
        let rest = self.total_weight() - own;
        Ok(own >= &self.quota && rest < self.quota)
    }

    /// Stable sort by non-increasing weight. `perm[k]` is the original id of
    /// the player now at position `k`.
    pub fn canonicalize(&self) -> (WeightedVotingGame, Vec<PlayerId>) {
        let mut order: Vec<usize> = (0..self.players()).collect();
        order.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]));
        let weights = order.iter().map(|&k| self.weights[k].clone()).collect();
        let game = WeightedVotingGame {
            quota: self.quota.clone(),
            weights,
        };
        (game, order.into_iter().map(PlayerId::from_index).collect())
    }

    /// Weight capped at the quota. A player at or above the quota wins on its
    /// own, so capping never changes which coalitions win.
    pub(crate) fn capped_weight(&self, index: usize) -> &BigUint {
        std::cmp::min(&self.weights[index], &self.quota)
    }

    pub(crate) fn with_weights(&self, weights: Vec<BigUint>) -> Result<WeightedVotingGame> {
        Self::from_unsigned(self.quota.clone(), weights)
    }
}

impl fmt::Display for WeightedVotingGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.quota)?;
        for (k, w) in self.weights.iter().enumerate() {
            if k == 0 {
                write!(f, " {w}")?;
            } else {
                write!(f, ", {w}")?;
            }
        }
        write!(f, "]")
    }
}

/// A set of distinct players of one game, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coalition {
    players: usize,
    members: Vec<PlayerId>,
}

impl Coalition {
    pub fn new<I: IntoIterator<Item = usize>>(players: usize, ids: I) -> Result<Self> {
        let mut members = Vec::new();
        for id in ids {
            if id == 0 || id > players {
                return Err(Error::InvalidPlayerId { id, players });
            }
            members.push(PlayerId(id));
        }
        members.sort();
        if let Some(pair) = members.windows(2).find(|pair| pair[0] == pair[1]) {
            return Err(Error::DuplicatePlayer(pair[0].get()));
        }
        Ok(Coalition { players, members })
    }

    pub fn empty(players: usize) -> Self {
        Coalition {
            players,
            members: Vec::new(),
        }
    }

    pub fn grand(players: usize) -> Self {
        Coalition {
            players,
            members: (0..players).map(PlayerId::from_index).collect(),
        }
    }

    pub fn members(&self) -> &[PlayerId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: PlayerId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// Size of the game this coalition belongs to.
    pub fn players(&self) -> usize {
        self.players
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}
