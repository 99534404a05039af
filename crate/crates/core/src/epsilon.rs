//! Exact rational slack parameter and the integer threshold tests built on it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `eps = num / den` with `0 < eps < 1/6`. All size thresholds are compared
/// by cross-multiplication, never in floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Default for Epsilon {
    fn default() -> Self {
        Epsilon { num: 1, den: 10 }
    }
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || 6 * num >= den {
            return Err(Error::InvalidParameter(format!(
                "epsilon {num}/{den} must satisfy 0 < eps < 1/6"
            )));
        }
        Ok(Epsilon { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `size <= (1/2 - eps) n`.
    #[inline]
    pub fn is_small(&self, size: usize, n: usize) -> bool {
        2 * self.den * size as u64 <= (self.den - 2 * self.num) * n as u64
    }

    /// Largest size accepted by [`Epsilon::is_small`], `floor((1/2 - eps) n)`.
    pub fn small_threshold(&self, n: usize) -> usize {
        ((self.den - 2 * self.num) * n as u64 / (2 * self.den)) as usize
    }

    /// `y < (1/4 + 3 eps / 2) n`, the range of guessed set sizes.
    #[inline]
    pub fn within_branch_range(&self, y: usize, n: usize) -> bool {
        4 * self.den * (y as u64) < (self.den + 6 * self.num) * n as u64
    }

    /// `size < 2 eps n`.
    #[inline]
    pub fn below_two_eps(&self, size: usize, n: usize) -> bool {
        self.den * (size as u64) < 2 * self.num * n as u64
    }

    /// `size < (1/2 + eps) n - offset`.
    #[inline]
    pub fn below_half_plus(&self, size: usize, offset: usize, n: usize) -> bool {
        2 * self.den * ((size + offset) as u64) < (self.den + 2 * self.num) * n as u64
    }

    /// `size < (1/4 + eps / 2) n - q / 2`.
    #[inline]
    pub fn below_quarter_plus(&self, size: usize, q: usize, n: usize) -> bool {
        self.den * ((4 * size + 2 * q) as u64) < (self.den + 2 * self.num) * n as u64
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("epsilon `{s}` is not of the form num/den"));
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        Epsilon::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )
    }
}

/// A tree-depth value or an upper bound on one; `INFINITE` compares above
/// every finite height and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bound(u32);

impl Bound {
    pub const INFINITE: Bound = Bound(u32::MAX);

    pub fn finite(v: u32) -> Self {
        debug_assert!(v != u32::MAX);
        Bound(v)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INFINITE
    }

    pub fn get(self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn from_raw(v: u32) -> Self {
        Bound(v)
    }

    pub fn plus_one(self) -> Self {
        if self.is_finite() {
            Bound(self.0 + 1)
        } else {
            self
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        assert_eq!("1/10".parse::<Epsilon>().unwrap(), Epsilon::default());
        assert!("1/6".parse::<Epsilon>().is_err());
        assert!("0/5".parse::<Epsilon>().is_err());
        assert!("1/7".parse::<Epsilon>().is_ok());
        assert!("0.1".parse::<Epsilon>().is_err());
    }

    #[test]
    fn thresholds_are_exact() {
        let e = Epsilon::default();
        // (1/2 - 1/10) * 5 = 2
        assert_eq!(e.small_threshold(5), 2);
        assert!(e.is_small(2, 5));
        assert!(!e.is_small(3, 5));
        // (0.4) * 20 = 8 exactly
        assert_eq!(e.small_threshold(20), 8);
        assert!(e.is_small(8, 20));
        // y < 0.4 n: 8 is excluded at n = 20
        assert!(e.within_branch_range(7, 20));
        assert!(!e.within_branch_range(8, 20));
        // 2 eps n = 1.2 at n = 6
        assert!(e.below_two_eps(1, 6));
        assert!(!e.below_two_eps(2, 6));
        // (1/2 + 1/10) 10 - 2 = 4
        assert!(e.below_half_plus(3, 2, 10));
        assert!(!e.below_half_plus(4, 2, 10));
        // (1/4 + 1/20) 10 - 1 = 2
        assert!(e.below_quarter_plus(1, 2, 10));
        assert!(!e.below_quarter_plus(2, 2, 10));
    }

    #[test]
    fn threshold_agrees_with_predicate() {
        for (num, den) in [(1, 10), (1, 8), (1, 7), (2, 13)] {
            let e = Epsilon::new(num, den).unwrap();
            for n in 1..60 {
                let t = e.small_threshold(n);
                assert!(e.is_small(t, n));
                assert!(!e.is_small(t + 1, n));
            }
        }
    }

    #[test]
    fn bound_saturates() {
        assert!(Bound::INFINITE > Bound::finite(1_000_000));
        assert_eq!(Bound::INFINITE.plus_one(), Bound::INFINITE);
        assert_eq!(Bound::finite(3).plus_one(), Bound::finite(4));
        assert_eq!(Bound::INFINITE.get(), None);
    }
}
