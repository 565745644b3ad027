use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// A cardinal coarsened to four levels: finite, `ℵ₀`, `𝔠`, and anything larger.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(BigUint),
    Aleph0,
    Continuum,
    AboveContinuum,
}

impl Cardinal {
    pub fn zero() -> Self {
        Cardinal::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        Cardinal::Finite(BigUint::one())
    }

    pub fn finite(n: u64) -> Self {
        Cardinal::Finite(BigUint::from(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cardinal::Finite(n) if n.is_zero())
    }

    /// The value as a machine integer, if finite and small enough.
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => u64::try_from(n).ok(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a + b),
            _ => self.clone().max(other.clone()),
        }
    }

    pub fn mul(&self, other: &Cardinal) -> Cardinal {
        if self.is_zero() || other.is_zero() {
            return Cardinal::zero();
        }
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a * b),
            _ => self.clone().max(other.clone()),
        }
    }

    /// Size of a direct sum of `copies` groups of size `self`.
    pub fn power_sum(&self, copies: &Cardinal) -> Cardinal {
        if copies.is_zero() || *self == Cardinal::one() {
            return Cardinal::one();
        }
        match (self, copies) {
            (Cardinal::Finite(a), Cardinal::Finite(n)) => {
                let n = u32::try_from(n).expect("finite multiplicities fit in 32 bits");
                Cardinal::Finite(a.pow(n))
            }
            _ => self.clone().max(copies.clone()).max(Cardinal::Aleph0),
        }
    }

    pub fn token(&self) -> String {
        match self {
            Cardinal::Finite(n) => n.to_string(),
            Cardinal::Aleph0 => "aleph0".into(),
            Cardinal::Continuum => "continuum".into(),
            Cardinal::AboveContinuum => "abovecontinuum".into(),
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for Cardinal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aleph0" => Ok(Cardinal::Aleph0),
            "continuum" => Ok(Cardinal::Continuum),
            "abovecontinuum" => Ok(Cardinal::AboveContinuum),
            _ if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => {
                Ok(Cardinal::Finite(s.parse().map_err(|_| s.to_string())?))
            }
            _ => Err(format!("{:?} is not a cardinal", s)),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.token())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_arithmetic() {
        let three = Cardinal::finite(3);
        assert!(three < Cardinal::Aleph0);
        assert!(Cardinal::Aleph0 < Cardinal::Continuum);
        assert!(Cardinal::Continuum < Cardinal::AboveContinuum);
        assert_eq!(three.add(&Cardinal::finite(4)), Cardinal::finite(7));
        assert_eq!(three.add(&Cardinal::Continuum), Cardinal::Continuum);
        assert_eq!(Cardinal::zero().mul(&Cardinal::Continuum), Cardinal::zero());
        assert_eq!(Cardinal::finite(2).power_sum(&three), Cardinal::finite(8));
        assert_eq!(
            Cardinal::finite(2).power_sum(&Cardinal::Aleph0),
            Cardinal::Aleph0
        );
        assert_eq!(
            Cardinal::one().power_sum(&Cardinal::Continuum),
            Cardinal::one()
        );
    }

    #[test]
    fn tokens_round_trip() {
        for c in [
            Cardinal::finite(12),
            Cardinal::Aleph0,
            Cardinal::Continuum,
            Cardinal::AboveContinuum,
        ] {
            assert_eq!(c.token().parse::<Cardinal>().unwrap(), c);
        }
        assert!("aleph1".parse::<Cardinal>().is_err());
    }
}
