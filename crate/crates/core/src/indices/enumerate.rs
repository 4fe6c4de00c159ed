//! Exhaustive swing counting over all `2^n` coalitions.
//!
//! Coalitions are visited in Gray-code order so each step adds or removes a
//! single player and the running weight is updated incrementally. For every
//! losing coalition we record, per outside player that would turn it into a
//! winner, the coalition size. That single tally yields both the Banzhaf
//! swing counts and the Shapley-Shubik numerators.

use std::ops::{AddAssign, Sub, SubAssign};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::game::WeightedVotingGame;

/// Default largest `n` accepted by the enumeration engine.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 26;

/// Hard ceiling imposed by the 64-bit coalition mask.
const MASK_BITS: usize = 63;

/// `swings[i][s]`: losing coalitions of size `s` not containing `i` that `i`
/// turns into winning ones.
pub(crate) struct SwingTally {
    pub(crate) swings: Vec<Vec<u64>>,
}

pub(crate) fn tally(game: &WeightedVotingGame, limit: usize) -> Result<SwingTally> {
    let n = game.players();
    let limit = limit.min(MASK_BITS);
    if n > limit {
        return Err(Error::TooManyPlayersForEnumeration { players: n, limit });
    }
    let weights: Vec<BigUint> = (0..n).map(|k| game.capped_weight(k).clone()).collect();
    // Capped weights are at most q each, so with q < 2^64 every partial sum
    // stays below n * 2^64 and fits comfortably in a u128.
    let swings = match game.quota().to_u64() {
        Some(q) => {
            let small: Vec<u128> = weights.iter().map(|w| w.to_u128().unwrap()).collect();
            tally_with(q as u128, &small)
        }
        None => tally_with(game.quota().clone(), &weights),
    };
    Ok(SwingTally { swings })
}

fn tally_with<T>(quota: T, weights: &[T]) -> Vec<Vec<u64>>
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    let n = weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));

    let mut swings = vec![vec![0u64; n]; n];
    let mut mask: u64 = 0;
    let mut size = 0usize;
    let mut sum = T::zero();
    for step in 0u64..(1u64 << n) {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            if mask >> bit & 1 == 1 {
                sum -= &weights[bit];
                size -= 1;
            } else {
                sum += &weights[bit];
                size += 1;
            }
            mask ^= 1 << bit;
        }
        if sum < quota {
            let deficit = &quota - &sum;
            for &k in &order {
                if weights[k] < deficit {
                    break;
                }
                if mask >> k & 1 == 0 {
                    swings[k][size] += 1;
                }
            }
        }
    }
    swings
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_enforced() {
        let game = WeightedVotingGame::from_u64(3, &[1; 5]).unwrap();
        assert_eq!(
            tally(&game, 4).err(),
            Some(Error::TooManyPlayersForEnumeration {
                players: 5,
                limit: 4
            })
        );
        assert!(tally(&game, 5).is_ok());
    }

    #[test]
    fn big_and_small_paths_agree() {
        let small = tally_with(5u128, &[2, 2, 1, 1, 3]);
        let big = tally_with(BigUint::from(5u32), &[2u32, 2, 1, 1, 3].map(BigUint::from));
        assert_eq!(small, big);
    }

    #[test]
    fn huge_quota_uses_bignum_path() {
        let q: BigUint = BigUint::from(1u8) << 100u32;
        let game = WeightedVotingGame::from_unsigned(
            q.clone(),
            vec![q.clone(), q.clone() >> 1u32, q >> 1u32],
        )
        .unwrap();
        let t = tally(&game, 26).unwrap();
        let eta: Vec<u64> = t.swings.iter().map(|row| row.iter().sum()).collect();
        assert_eq!(eta, vec![3, 1, 1]);
    }
}
