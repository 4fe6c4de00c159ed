//! Fixed-width multi-limb counting tables for the subset-sum DP.
//!
//! Every entry counts subsets of at most `n` players, so it is bounded by
//! `2^n` and fits in `n / 64 + 1` little-endian `u64` limbs. Keeping the
//! limbs inline in one flat buffer avoids a heap allocation per entry, which
//! is what makes `n = 100` games with six-digit quotas cheap.

use num_bigint::BigUint;
use num_traits::Zero;

pub(crate) fn limbs_for(players: usize) -> usize {
    players / 64 + 1
}

#[inline]
fn add_assign(dst: &mut [u64], src: &[u64]) {
    let mut carry = false;
    for (d, &s) in dst.iter_mut().zip(src) {
        let (sum, c1) = d.overflowing_add(s);
        let (sum, c2) = sum.overflowing_add(carry as u64);
        *d = sum;
        carry = c1 | c2;
    }
    debug_assert!(!carry, "count table overflow");
}

/// `dst = minuend - subtrahend`; the result is non-negative by construction.
#[inline]
fn sub_into(dst: &mut [u64], minuend: &[u64], subtrahend: &[u64]) {
    let mut borrow = false;
    for ((d, &m), &s) in dst.iter_mut().zip(minuend).zip(subtrahend) {
        let (diff, b1) = m.overflowing_sub(s);
        let (diff, b2) = diff.overflowing_sub(borrow as u64);
        *d = diff;
        borrow = b1 | b2;
    }
    debug_assert!(!borrow, "count table underflow");
}

fn to_biguint(limbs: &[u64]) -> BigUint {
    let digits: Vec<u32> = limbs
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    BigUint::new(digits)
}

/// One row of counts indexed by total weight `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CountRow {
    limbs: usize,
    len: usize,
    data: Vec<u64>,
}

impl CountRow {
    pub(crate) fn zeros(len: usize, limbs: usize) -> Self {
        CountRow {
            limbs,
            len,
            data: vec![0; len * limbs],
        }
    }

    /// The row for the empty player set: one subset of weight 0.
    pub(crate) fn unit(len: usize, limbs: usize) -> Self {
        let mut row = Self::zeros(len, limbs);
        if len > 0 {
            row.data[0] = 1;
        }
        row
    }

    pub(crate) fn entry(&self, w: usize) -> &[u64] {
        &self.data[w * self.limbs..(w + 1) * self.limbs]
    }

    /// Adds one player of weight `shift >= 1`: `N(w) += N(w - shift)`.
    /// Weights at or beyond `len` leave every tracked entry unchanged.
    pub(crate) fn include(&mut self, shift: usize) {
        debug_assert!(shift >= 1);
        let l = self.limbs;
        for w in (shift..self.len).rev() {
            let (lo, hi) = self.data.split_at_mut(w * l);
            let src = &lo[(w - shift) * l..(w - shift + 1) * l];
            add_assign(&mut hi[..l], src);
        }
    }

    /// Removes one player of weight `shift >= 1` from `self`, writing into
    /// `out`: `out(w) = N(w) - out(w - shift)`, ascending in `w`.
    pub(crate) fn exclude_into(&self, shift: usize, out: &mut CountRow) {
        debug_assert!(shift >= 1);
        debug_assert_eq!((self.len, self.limbs), (out.len, out.limbs));
        let l = self.limbs;
        let split = shift.min(self.len) * l;
        out.data[..split].copy_from_slice(&self.data[..split]);
        for w in shift..self.len {
            let (lo, hi) = out.data.split_at_mut(w * l);
            let sub = &lo[(w - shift) * l..(w - shift + 1) * l];
            sub_into(&mut hi[..l], &self.data[w * l..(w + 1) * l], sub);
        }
    }

    /// Sum of entries `lo..self.len`.
    pub(crate) fn tail_sum(&self, lo: usize) -> BigUint {
        // Entries are bounded by 2^n and there are at most 2^n subsets in
        // total, so an extra limb of headroom keeps the sum exact.
        let mut acc = vec![0u64; self.limbs + 1];
        for w in lo..self.len {
            add_widening(&mut acc, self.entry(w));
        }
        if acc.iter().all(|&l| l == 0) {
            BigUint::zero()
        } else {
            to_biguint(&acc)
        }
    }

    #[cfg(test)]
    pub(crate) fn to_big(&self) -> Vec<BigUint> {
        (0..self.len).map(|w| to_biguint(self.entry(w))).collect()
    }
}

/// `acc += src` where `acc` has more limbs than `src`.
fn add_widening(acc: &mut [u64], src: &[u64]) {
    let mut carry = false;
    for (k, d) in acc.iter_mut().enumerate() {
        let s = src.get(k).copied().unwrap_or(0);
        if k >= src.len() && !carry {
            break;
        }
        let (sum, c1) = d.overflowing_add(s);
        let (sum, c2) = sum.overflowing_add(carry as u64);
        *d = sum;
        carry = c1 | c2;
    }
    debug_assert!(!carry, "accumulator overflow");
}

/// Counts indexed by (coalition size, total weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SizedCountTable {
    rows: Vec<CountRow>,
}

impl SizedCountTable {
    /// Table for the empty player set, able to hold sizes `0..=max_size`.
    pub(crate) fn unit(max_size: usize, len: usize, limbs: usize) -> Self {
        let mut rows = vec![CountRow::zeros(len, limbs); max_size + 1];
        rows[0] = CountRow::unit(len, limbs);
        SizedCountTable { rows }
    }

    pub(crate) fn row(&self, size: usize) -> &CountRow {
        &self.rows[size]
    }

    pub(crate) fn sizes(&self) -> usize {
        self.rows.len()
    }

    /// `N(s, w) += N(s - 1, w - shift)`, processing sizes downward so each
    /// read sees the table before this player was added.
    pub(crate) fn include(&mut self, shift: usize) {
        debug_assert!(shift >= 1);
        let limbs = self.rows[0].limbs;
        let len = self.rows[0].len;
        for s in (1..self.rows.len()).rev() {
            let (lower, upper) = self.rows.split_at_mut(s);
            let src = &lower[s - 1];
            let dst = &mut upper[0];
            for w in shift..len {
                let from = src.entry(w - shift);
                add_assign(&mut dst.data[w * limbs..(w + 1) * limbs], from);
            }
        }
    }

    /// `out(s, w) = N(s, w) - out(s - 1, w - shift)`, ascending in `s`.
    pub(crate) fn exclude_into(&self, shift: usize, out: &mut SizedCountTable) {
        debug_assert!(shift >= 1);
        let limbs = self.rows[0].limbs;
        let len = self.rows[0].len;
        out.rows[0].data.copy_from_slice(&self.rows[0].data);
        for s in 1..self.rows.len() {
            let (lower, upper) = out.rows.split_at_mut(s);
            let prev = &lower[s - 1];
            let dst = &mut upper[0];
            let full = &self.rows[s];
            let split = shift.min(len) * limbs;
            dst.data[..split].copy_from_slice(&full.data[..split]);
            for w in shift..len {
                sub_into(
                    &mut dst.data[w * limbs..(w + 1) * limbs],
                    full.entry(w),
                    prev.entry(w - shift),
                );
            }
        }
    }
}
