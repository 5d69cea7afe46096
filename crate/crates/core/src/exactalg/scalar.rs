use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

use crate::error::Error;

/// Coefficient field for the series types.
///
/// Only exact fields implement this; every quantity handled by the crate is
/// rational, so there is no floating-point instance.
pub trait Scalar:
    Num + Clone + Debug + Display + PartialEq + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl Scalar for Ratio<i128> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }
}

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_int(n)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if let Some((_, d)) = s.split_once('/') {
        if d.trim()
            .trim_start_matches(['+', '-'])
            .chars()
            .all(|c| c == '0')
        {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rat::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// `n!` as a scalar.
pub fn factorial<S: Scalar>(n: u32) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_int(k))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Catalan numbers with `C_0 = 1`.
pub fn catalan(m: u64) -> u64 {
    binomial(2 * m, m) / (m + 1)
}
