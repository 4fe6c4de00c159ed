//! Pseudo-polynomial swing counting.
//!
//! `N(w)` counts coalitions of total weight exactly `w < q`. Player `i` swings
//! a losing coalition `S` (not containing `i`) iff `q - w_i <= w(S) <= q - 1`,
//! so `eta_i = sum_{w = max(0, q - w_i)}^{q - 1} N_i(w)` where `N_i` is the
//! table built without `i`. The Shapley-Shubik numerators use the same idea
//! with tables split by coalition size.
//!
//! `N_i` is obtained from the global table by exact deconvolution,
//! `N_i(w) = N(w) - N_i(w - w_i)`, or by rebuilding it from scratch. Both
//! routes are kept so they can be checked against each other.
//!
//! Zero-weight players are factored out: each one doubles every count
//! (Banzhaf) or spreads counts over sizes binomially (Shapley-Shubik), and is
//! itself never pivotal.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::table::{limbs_for, CountRow, SizedCountTable};
use crate::error::{Error, Result};
use crate::game::WeightedVotingGame;

/// Largest quota for which a counting table is allocated.
pub const MAX_TABLE_LEN: usize = 1 << 30;

/// Largest Shapley-Shubik table, in 64-bit words.
const MAX_SIZED_TABLE_WORDS: usize = 1 << 27;

/// Below this amount of work (players x table length) the per-player loop
/// runs sequentially.
const PARALLEL_THRESHOLD: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Deconvolution,
    Recomputation,
}

struct Layout {
    len: usize,
    limbs: usize,
    /// Per player: `Some(shift)` for positive weights, `None` for zero weight.
    shifts: Vec<Option<usize>>,
    zero_weight: usize,
}

impl Layout {
    fn new(game: &WeightedVotingGame) -> Result<Self> {
        let len = game
            .quota()
            .to_usize()
            .filter(|&q| q <= MAX_TABLE_LEN)
            .ok_or_else(|| Error::QuotaTooLargeForTable(game.quota().clone()))?;
        let shifts: Vec<Option<usize>> = (0..game.players())
            .map(|k| {
                let w = game.capped_weight(k);
                if w.is_zero() {
                    None
                } else {
                    Some(w.to_usize().expect("capped at quota"))
                }
            })
            .collect();
        let zero_weight = shifts.iter().filter(|s| s.is_none()).count();
        Ok(Layout {
            len,
            limbs: limbs_for(game.players()),
            shifts,
            zero_weight,
        })
    }

    fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        self.shifts.iter().flatten().copied()
    }

    fn positive_count(&self) -> usize {
        self.shifts.len() - self.zero_weight
    }

    fn parallel(&self) -> bool {
        self.shifts.len().saturating_mul(self.len) >= PARALLEL_THRESHOLD
    }
}

fn map_players<T, F>(layout: &Layout, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let n = layout.shifts.len();
    if layout.parallel() {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

pub(crate) fn eta(game: &WeightedVotingGame, route: Route) -> Result<Vec<BigUint>> {
    let layout = Layout::new(game)?;
    let global = match route {
        Route::Deconvolution => {
            let mut row = CountRow::unit(layout.len, layout.limbs);
            for shift in layout.positive() {
                row.include(shift);
            }
            Some(row)
        }
        Route::Recomputation => None,
    };
    let eta = map_players(&layout, |i| {
        let Some(shift) = layout.shifts[i] else {
            return BigUint::zero();
        };
        let without = match &global {
            Some(row) => {
                let mut out = CountRow::zeros(layout.len, layout.limbs);
                row.exclude_into(shift, &mut out);
                out
            }
            None => {
                let mut row = CountRow::unit(layout.len, layout.limbs);
                for (k, s) in layout.shifts.iter().enumerate() {
                    if let (true, Some(s)) = (k != i, s) {
                        row.include(*s);
                    }
                }
                row
            }
        };
        without.tail_sum(layout.len.saturating_sub(shift)) << layout.zero_weight
    });
    Ok(eta)
}

fn factorials(n: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::from(1u32)];
    for k in 1..=n {
        let next = &f[k - 1] * BigUint::from(k);
        f.push(next);
    }
    f
}

/// Weight of a swing by a positive-weight player on a coalition with
/// `positive` positive-weight members, summed over every way of adding
/// zero-weight players: `sum_t C(z, t) (s + t)! (n - 1 - s - t)!`.
fn size_coefficients(n: usize, zero_weight: usize) -> Vec<BigUint> {
    let fact = factorials(n);
    let p = n - zero_weight;
    let mut binom = vec![BigUint::from(1u32)];
    for t in 1..=zero_weight {
        let next = &binom[t - 1] * BigUint::from(zero_weight - t + 1) / BigUint::from(t);
        binom.push(next);
    }
    (0..p)
        .map(|s| {
            (0..=zero_weight)
                .map(|t| &binom[t] * &fact[s + t] * &fact[n - 1 - s - t])
                .sum()
        })
        .collect()
}

pub(crate) fn kappa(game: &WeightedVotingGame, route: Route) -> Result<Vec<BigUint>> {
    let layout = Layout::new(game)?;
    let p = layout.positive_count();
    let words = (p + 1)
        .saturating_mul(layout.len)
        .saturating_mul(layout.limbs);
    if words > MAX_SIZED_TABLE_WORDS {
        return Err(Error::QuotaTooLargeForTable(game.quota().clone()));
    }
    let coeff = size_coefficients(game.players(), layout.zero_weight);
    let global = match route {
        Route::Deconvolution => {
            let mut table = SizedCountTable::unit(p, layout.len, layout.limbs);
            for shift in layout.positive() {
                table.include(shift);
            }
            Some(table)
        }
        Route::Recomputation => None,
    };
    let kappa = map_players(&layout, |i| {
        let Some(shift) = layout.shifts[i] else {
            return BigUint::zero();
        };
        let without = match &global {
            Some(table) => {
                let mut out = SizedCountTable::unit(p, layout.len, layout.limbs);
                table.exclude_into(shift, &mut out);
                out
            }
            None => {
                let mut table = SizedCountTable::unit(p, layout.len, layout.limbs);
                for (k, s) in layout.shifts.iter().enumerate() {
                    if let (true, Some(s)) = (k != i, s) {
                        table.include(*s);
                    }
                }
                table
            }
        };
        let lo = layout.len.saturating_sub(shift);
        (0..p.min(without.sizes()))
            .map(|s| without.row(s).tail_sum(lo) * &coeff[s])
            .sum()
    });
    Ok(kappa)
}
