use num_rational::BigRational;

use crate::error::{Error, Result};

/// In a unanimity game every player gets `1/n` under both indices, so the
/// effect of each manipulation has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnanimityVariant {
    /// One player becomes `m + 1` players.
    Split { m: usize },
    /// `k` players merge into a bloc.
    Merge { k: usize },
    /// One player annexes `k - 1` others.
    Annex { k: usize },
}

fn frac(num: usize, den: usize) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `(before, after)` payoffs of the manipulators in an `n`-player unanimity
/// game. Identical for Banzhaf and Shapley-Shubik.
pub fn unanimity_payoffs(
    n: usize,
    variant: UnanimityVariant,
) -> Result<(BigRational, BigRational)> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("need n >= 2 (got {n})")));
    }
    match variant {
        UnanimityVariant::Split { m } if m >= 1 => Ok((frac(1, n), frac(m + 1, n + m))),
        UnanimityVariant::Merge { k } if (2..=n).contains(&k) => {
            Ok((frac(k, n), frac(1, n - k + 1)))
        }
        UnanimityVariant::Annex { k } if (2..=n).contains(&k) => {
            Ok((frac(1, n), frac(1, n - k + 1)))
        }
        _ => Err(Error::ParameterOutOfRange(format!(
            "{variant:?} is not valid for n = {n}"
        ))),
    }
}
