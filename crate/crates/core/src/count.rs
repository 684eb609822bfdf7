//! Realization counts: exact big integers plus an explicit infinity.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A nonnegative count that may be infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BigCount {
    Finite(BigUint),
    Infinite,
}

impl BigCount {
    pub fn zero() -> Self {
        BigCount::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount::Finite(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BigCount::Finite(v) if v.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BigCount::Infinite)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            BigCount::Finite(v) => Some(v),
            BigCount::Infinite => None,
        }
    }
}

impl Default for BigCount {
    fn default() -> Self {
        BigCount::zero()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount::Finite(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount::Finite(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        matches!(self, BigCount::Finite(v) if *v == BigUint::from(*other))
    }
}

impl Add for BigCount {
    type Output = BigCount;

    fn add(self, rhs: BigCount) -> BigCount {
        match (self, rhs) {
            (BigCount::Finite(a), BigCount::Finite(b)) => BigCount::Finite(a + b),
            _ => BigCount::Infinite,
        }
    }
}

impl Mul for BigCount {
    type Output = BigCount;

    fn mul(self, rhs: BigCount) -> BigCount {
        match (self, rhs) {
            (BigCount::Finite(a), BigCount::Finite(b)) => BigCount::Finite(a * b),
            (BigCount::Finite(a), BigCount::Infinite) | (BigCount::Infinite, BigCount::Finite(a)) if a.is_zero() => {
                BigCount::zero()
            }
            _ => BigCount::Infinite,
        }
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigCount::Finite(v) => write!(f, "{v}"),
            BigCount::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for BigCount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(BigCount::Infinite),
            t => t
                .parse::<BigUint>()
                .map(BigCount::Finite)
                .map_err(|e| format!("invalid count {t:?}: {e}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_positive_operands() {
        let inf = BigCount::Infinite;
        assert!((inf.clone() + BigCount::from(3)).is_infinite());
        assert!((inf.clone() * BigCount::from(2)).is_infinite());
        assert!((inf * BigCount::zero()).is_zero());
    }

    #[test]
    fn display_round_trip() {
        for c in [BigCount::from(0), BigCount::from(30), BigCount::Infinite] {
            assert_eq!(c.to_string().parse::<BigCount>().unwrap(), c);
        }
        let big = BigCount::from(u64::MAX) * BigCount::from(u64::MAX);
        assert_eq!(big.to_string().parse::<BigCount>().unwrap(), big);
    }
}
