//! Exact arithmetic over ℚ(i): scalars, polynomials and rational functions in
//! one variable `z`, with the conjugation involution `σ`.

mod gaussian;
mod poly;
mod ratfunc;
mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use gaussian::{GaussianRational, ParseGaussianError};
pub use poly::Poly;
pub use ratfunc::{Order, RatFunc};
pub use roots::{count_real_roots, rational_roots, real_roots_in, RootReport};

pub(crate) use gaussian::{parse_ratio, ratio_string};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("order {order} is below the requested shift {shift}: inconsistent filtration level")]
    Pole { order: i64, shift: i64 },
}

/// An exact rational point on the real axis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(BigRational);

impl RationalPoint {
    pub fn new(x: BigRational) -> Self {
        Self(x)
    }

    /// Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn signum(&self) -> i8 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::real(self.0.clone())
    }

    /// Lossy conversion for rendering only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for RationalPoint {
    fn from(x: BigRational) -> Self {
        Self(x)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ratio_string(&self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}` (expected p, p/q or a decimal)")]
pub struct ParseRationalError(pub String);

impl FromStr for RationalPoint {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ratio(s).map(Self).ok_or_else(|| ParseRationalError(s.to_string()))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&ratio_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
