use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use super::tpoly::{power_factor, write_term};
use crate::error::{Error, Result};

/// Truncation value meaning "no terms were dropped".
pub const EXACT: i64 = i64::MAX / 4;

/// Moves a truncation bound by `-by`, leaving [`EXACT`] fixed.
pub fn lower_trunc(trunc: i64, by: i64) -> i64 {
    if trunc >= EXACT {
        EXACT
    } else {
        trunc - by
    }
}

/// `t^a gs^b g_{k1} g_{k2} ...` with the coupling indices kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CouplingMonomial {
    couplings: Vec<u32>,
    pub t_power: u32,
    pub gs_power: i32,
}

impl CouplingMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(mut couplings: Vec<u32>, t_power: u32, gs_power: i32) -> Self {
        assert!(
            couplings.iter().all(|&k| k >= 1),
            "coupling indices start at 1"
        );
        couplings.sort_unstable();
        Self {
            couplings,
            t_power,
            gs_power,
        }
    }

    pub fn g(k: u32) -> Self {
        Self::new(vec![k], 0, 0)
    }

    pub fn t(e: u32) -> Self {
        Self::new(vec![], e, 0)
    }

    pub fn gs(e: i32) -> Self {
        Self::new(vec![], 0, e)
    }

    pub fn couplings(&self) -> &[u32] {
        &self.couplings
    }

    /// Sum of the coupling indices.
    pub fn weight(&self) -> i64 {
        self.couplings.iter().map(|&k| k as i64).sum()
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.couplings.iter().filter(|&&c| c == k).count() as u32
    }

    /// Removes one factor `g_k`; `None` if absent.
    pub fn without(&self, k: u32) -> Option<Self> {
        let pos = self.couplings.iter().position(|&c| c == k)?;
        let mut out = self.clone();
        out.couplings.remove(pos);
        Some(out)
    }

    pub fn with(&self, k: u32) -> Self {
        let mut out = self.clone();
        let pos = out.couplings.partition_point(|&c| c <= k);
        out.couplings.insert(pos, k);
        out
    }

    fn key(&self) -> (i64, &[u32], u32, i32) {
        (self.weight(), &self.couplings, self.t_power, self.gs_power)
    }

    fn factors(&self) -> Vec<String> {
        let mut out: Vec<String> = power_factor("t", self.t_power as i64).into_iter().collect();
        let mut i = 0;
        while i < self.couplings.len() {
            let k = self.couplings[i];
            let m = self.multiplicity(k);
            out.extend(power_factor(&format!("g{k}"), m as i64));
            i += m as usize;
        }
        out.extend(power_factor("gs", self.gs_power as i64));
        out
    }
}

impl Mul for &CouplingMonomial {
    type Output = CouplingMonomial;
    fn mul(self, rhs: Self) -> CouplingMonomial {
        let mut couplings = Vec::with_capacity(self.couplings.len() + rhs.couplings.len());
        couplings.extend_from_slice(&self.couplings);
        couplings.extend_from_slice(&rhs.couplings);
        couplings.sort_unstable();
        CouplingMonomial {
            couplings,
            t_power: self.t_power + rhs.t_power,
            gs_power: self.gs_power + rhs.gs_power,
        }
    }
}

impl Ord for CouplingMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CouplingMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CouplingMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" * "))
        }
    }
}

/// Series in `t`, `gs^{±1}` and the couplings `g_k`, graded by coupling weight.
///
/// Every term of weight at most `trunc` is exact; heavier terms are never
/// stored. Binary operations take the smaller truncation of their inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingSeriesOf<S> {
    terms: BTreeMap<CouplingMonomial, S>,
    trunc: i64,
}

impl<S: Scalar> CouplingSeriesOf<S> {
    pub fn zero(trunc: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(CouplingMonomial::one(), S::one(), trunc)
    }

    pub fn monomial(m: CouplingMonomial, c: S, trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(m, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CouplingMonomial, S)>, trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * m`, silently dropping it when heavier than the truncation.
    pub fn add_term(&mut self, m: CouplingMonomial, c: S) {
        if c.is_zero() || m.weight() > self.trunc {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = old.clone() + c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, m: &CouplingMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CouplingMonomial, &S)> {
        self.terms.iter()
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            trunc,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, mono: &CouplingMonomial, c: &S) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, v) in &self.terms {
            out.add_term(m * mono, v.clone() * c.clone());
        }
        out
    }

    /// `∂/∂g_k`; lowers the truncation by `k`.
    pub fn derivative(&self, k: u32) -> Self {
        let mut out = Self::zero(lower_trunc(self.trunc, k as i64));
        for (m, v) in &self.terms {
            let mult = m.multiplicity(k);
            if mult > 0 {
                out.add_term(m.without(k).unwrap(), v.clone() * S::from_int(mult as i64));
            }
        }
        out
    }

    /// Sets `gs = 1`.
    pub fn at_gs_one(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, v) in &self.terms {
            let mut m = m.clone();
            m.gs_power = 0;
            out.add_term(m, v.clone());
        }
        out
    }

    /// Exponential of a series whose every term has positive coupling weight.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.keys().any(|m| m.weight() <= 0) {
            return Err(Error::NonNilpotent);
        }
        if self.trunc >= EXACT {
            return Err(Error::InvalidArgument(
                "exp needs a finite truncation".into(),
            ));
        }
        let mut out = Self::one(self.trunc);
        let mut term = Self::one(self.trunc);
        let mut k = 1i64;
        loop {
            term = (&term * self).scale(&(S::one() / S::from_int(k)));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
            k += 1;
        }
        Ok(out)
    }

    /// Logarithm of `1 + f` where every term of `f` has positive weight.
    pub fn log(&self) -> Result<Self> {
        let one = CouplingMonomial::one();
        if !self.coeff(&one).is_one() {
            return Err(Error::NonUnitInversion);
        }
        let mut f = self.clone();
        f.terms.remove(&one);
        if f.terms.keys().any(|m| m.weight() <= 0) {
            return Err(Error::NonNilpotent);
        }
        if self.trunc >= EXACT {
            return Err(Error::InvalidArgument(
                "log needs a finite truncation".into(),
            ));
        }
        let mut out = Self::zero(self.trunc);
        let mut pow = Self::one(self.trunc);
        let mut k = 1i64;
        loop {
            pow = &pow * &f;
            if pow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { S::one() } else { -S::one() };
            out = &out + &pow.scale(&(sign / S::from_int(k)));
            k += 1;
        }
        Ok(out)
    }

    /// Keeps only the terms with the given coupling weight.
    pub fn weight_part(&self, w: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            trunc: self.trunc,
        }
    }
}

impl<S: Scalar> Add for &CouplingSeriesOf<S> {
    type Output = CouplingSeriesOf<S>;
    fn add(self, rhs: Self) -> CouplingSeriesOf<S> {
        let mut out = self.truncate(rhs.trunc);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &CouplingSeriesOf<S> {
    type Output = CouplingSeriesOf<S>;
    fn sub(self, rhs: Self) -> CouplingSeriesOf<S> {
        let mut out = self.truncate(rhs.trunc);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &CouplingSeriesOf<S> {
    type Output = CouplingSeriesOf<S>;
    fn neg(self) -> CouplingSeriesOf<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &CouplingSeriesOf<S> {
    type Output = CouplingSeriesOf<S>;
    fn mul(self, rhs: Self) -> CouplingSeriesOf<S> {
        let mut out = CouplingSeriesOf::zero(self.trunc.min(rhs.trunc));
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            for (mb, cb) in &rhs.terms {
                if wa + mb.weight() <= out.trunc {
                    out.add_term(ma * mb, ca.clone() * cb.clone());
                }
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for CouplingSeriesOf<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_term(f, c, &m.factors())?;
        }
        Ok(())
    }
}
