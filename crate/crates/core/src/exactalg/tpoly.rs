use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Polynomial in the face-counting variable `t`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPolyOf<S> {
    coeffs: BTreeMap<u32, S>,
}

impl<S: Scalar> Default for TPolyOf<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> TPolyOf<S> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn monomial(c: S, e: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, S)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(old) => {
                *old = old.clone() + c;
                if old.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: u32) -> S {
        self.coeffs.get(&e).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &S)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some((c, e))` when the polynomial is the single term `c t^e`.
    pub fn as_monomial(&self) -> Option<(S, u32)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (*e, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (e + k, v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, t: &S) -> S {
        let mut acc = S::zero();
        let mut pow = S::one();
        let mut cur = 0u32;
        for (e, c) in &self.coeffs {
            while cur < *e {
                pow = pow * t.clone();
                cur += 1;
            }
            acc = acc + c.clone() * pow.clone();
        }
        acc
    }
}

impl<S: Scalar> Add for &TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn add(self, rhs: Self) -> TPolyOf<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn sub(self, rhs: Self) -> TPolyOf<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn mul(self, rhs: Self) -> TPolyOf<S> {
        let mut out = TPolyOf::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn neg(self) -> TPolyOf<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Add for TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn add(self, rhs: Self) -> TPolyOf<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn sub(self, rhs: Self) -> TPolyOf<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for TPolyOf<S> {
    type Output = TPolyOf<S>;
    fn mul(self, rhs: Self) -> TPolyOf<S> {
        &self * &rhs
    }
}

/// Writes a coefficient and a list of factors as `c * f1 * f2`, dropping a
/// unit coefficient when factors are present.
pub(crate) fn write_term<S: Scalar>(
    f: &mut fmt::Formatter<'_>,
    c: &S,
    factors: &[String],
) -> fmt::Result {
    if factors.is_empty() {
        return write!(f, "{c}");
    }
    if c.is_one() {
        write!(f, "{}", factors.join(" * "))
    } else if (-c.clone()).is_one() {
        write!(f, "-{}", factors.join(" * "))
    } else {
        write!(f, "{c} * {}", factors.join(" * "))
    }
}

pub(crate) fn power_factor(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl<S: Scalar> fmt::Display for TPolyOf<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = power_factor("t", *e as i64).into_iter().collect();
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {}", factors[0])?;
            }
        }
        Ok(())
    }
}
