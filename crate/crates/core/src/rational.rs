//! Exact rationals for trace values, rendered as `num/den`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn recip(&self) -> Self {
        Self(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Self::new(n, d))
    }
}

impl std::ops::Add for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_renders() {
        let r = Rational::new(382, 36);
        assert_eq!(r, Rational::new(191, 18));
        assert_eq!(r.to_string(), "191/18");
        assert_eq!(Rational::new(6, -3).to_string(), "-2");
        assert_eq!("63/10".parse::<Rational>().unwrap(), Rational::new(126, 20));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(&Rational::new(67, 15) + &Rational::new(11, 6), Rational::new(63, 10));
        assert!((Rational::new(36, 382).to_f64() - 0.094241).abs() < 1e-6);
    }
}
