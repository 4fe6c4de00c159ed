//! Fixed workloads shared by the criterion benches.

use wvg_core::instances::{random_game, tight_split_family};
use wvg_core::WeightedVotingGame;

/// A proper random game on `n` players with weights up to `max_weight`.
/// The seed is fixed so every run measures the same game.
pub fn fixture(n: usize, max_weight: u64) -> WeightedVotingGame {
    random_game(n, max_weight, 0x5eed + n as u64, true).expect("valid parameters")
}

/// Sizes where both methods are practical.
pub const SHARED_SIZES: [usize; 4] = [8, 12, 16, 20];

/// DP-only sizes.
pub const LARGE_SIZES: [usize; 3] = [50, 100, 200];

pub fn tight(n: u64) -> WeightedVotingGame {
    tight_split_family(n).expect("n >= 3")
}
