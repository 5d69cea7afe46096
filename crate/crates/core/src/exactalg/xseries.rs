use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::coupling::{lower_trunc, EXACT};
use super::scalar::Scalar;
use super::tpoly::{power_factor, write_term, TPolyOf};
use crate::error::{Error, Result};

/// A formal variable. `Var::X` is the lone variable of single-variable
/// series, `Var::x(i)` are the numbered variables and `U`, `V` are the
/// auxiliary pair used by the diagonal map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub const X: Var = Var(0);
    pub const U: Var = Var(u32::MAX - 1);
    pub const V: Var = Var(u32::MAX);

    pub fn x(i: u32) -> Var {
        assert!((1..u32::MAX - 1).contains(&i));
        Var(i)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X => write!(f, "x"),
            Var::U => write!(f, "u"),
            Var::V => write!(f, "v"),
            Var(i) => write!(f, "x{i}"),
        }
    }
}

/// Laurent monomial, sorted by variable with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct XMono(Vec<(Var, i32)>);

impl XMono {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(exps: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in exps {
            *map.entry(v).or_insert(0) += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn var(v: Var, e: i32) -> Self {
        Self::new([(v, e)])
    }

    pub fn exps(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp_of(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &XMono) -> XMono {
        XMono::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> XMono {
        XMono::new(self.0.iter().map(|&(v, e)| (f(v), e)))
    }

    fn factors(&self) -> Vec<String> {
        self.0
            .iter()
            .filter_map(|&(v, e)| power_factor(&v.to_string(), e as i64))
            .collect()
    }
}

impl fmt::Display for XMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" * "))
        }
    }
}

/// Laurent series in several variables with coefficients in `Q[t]`, plus
/// optional `log` slots.
///
/// `precision = K` means every term of total degree `>= -K` is exact; lower
/// terms are never stored. Log terms are always exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeriesOf<S> {
    terms: BTreeMap<XMono, TPolyOf<S>>,
    logs: BTreeMap<Var, TPolyOf<S>>,
    precision: i64,
}

impl<S: Scalar> XSeriesOf<S> {
    pub fn zero(precision: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            logs: BTreeMap::new(),
            precision,
        }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(XMono::one(), TPolyOf::one(), precision)
    }

    pub fn monomial(m: XMono, c: TPolyOf<S>, precision: i64) -> Self {
        let mut s = Self::zero(precision);
        s.add_term(m, c);
        s
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.logs.is_empty()
    }

    pub fn has_logs(&self) -> bool {
        !self.logs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XMono, &TPolyOf<S>)> {
        self.terms.iter()
    }

    pub fn logs(&self) -> impl Iterator<Item = (&Var, &TPolyOf<S>)> {
        self.logs.iter()
    }

    pub fn coeff(&self, m: &XMono) -> TPolyOf<S> {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn log_coeff(&self, v: Var) -> TPolyOf<S> {
        self.logs.get(&v).cloned().unwrap_or_default()
    }

    /// Adds `c * m`, dropping it when below the precision.
    pub fn add_term(&mut self, m: XMono, c: TPolyOf<S>) {
        if c.is_zero() || m.degree() < -self.precision {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Adds `c * log(v)`.
    pub fn add_log(&mut self, v: Var, c: TPolyOf<S>) {
        let entry = self.logs.entry(v).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.logs.remove(&v);
        }
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(XMono::degree).max()
    }

    pub fn truncate(&self, precision: i64) -> Self {
        let precision = precision.min(self.precision);
        let mut out = Self::zero(precision);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out.logs = self.logs.clone();
        out
    }

    pub fn scale(&self, c: &TPolyOf<S>) -> Self {
        let mut out = Self::zero(self.precision);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        for (v, l) in &self.logs {
            out.add_log(*v, l * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &S) -> Self {
        self.scale(&TPolyOf::constant(c.clone()))
    }

    /// Multiplies by a monomial of degree `d`; the precision moves by `-d`.
    pub fn mul_mono(&self, mono: &XMono) -> Result<Self> {
        if self.has_logs() {
            return Err(Error::LogSlotPresent);
        }
        let mut out = Self::zero(lower_trunc(self.precision, mono.degree()));
        for (m, v) in &self.terms {
            out.add_term(m.mul(mono), v.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.has_logs() || rhs.has_logs() {
            return Err(Error::LogSlotPresent);
        }
        let mut precision = self.precision.saturating_add(rhs.precision).min(EXACT);
        if let Some(d) = rhs.max_degree() {
            precision = precision.min(lower_trunc(self.precision, d));
        }
        if let Some(d) = self.max_degree() {
            precision = precision.min(lower_trunc(rhs.precision, d));
        }
        let mut out = Self::zero(precision);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &rhs.terms {
                if da + mb.degree() >= -precision {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// `∂/∂v`. `log v` contributes `v^{-1}`.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero(lower_trunc(self.precision, -1));
        for (m, c) in &self.terms {
            let e = m.exp_of(v);
            if e != 0 {
                out.add_term(m.mul(&XMono::var(v, -1)), c.scale(&S::from_int(e as i64)));
            }
        }
        if let Some(l) = self.logs.get(&v) {
            out.add_term(XMono::var(v, -1), l.clone());
        }
        out
    }

    /// Renames variables; log slots follow their variable.
    pub fn rename(&self, f: impl Fn(Var) -> Var + Copy) -> Self {
        let mut out = Self::zero(self.precision);
        for (m, c) in &self.terms {
            out.add_term(m.rename(f), c.clone());
        }
        for (v, l) in &self.logs {
            out.add_log(f(*v), l.clone());
        }
        out
    }

    /// `f(u, v, ...) ↦ x^{-1} f(x, x, ...)`.
    pub fn diag(&self, u: Var, v: Var, x: Var) -> Result<Self> {
        if self.logs.contains_key(&u) || self.logs.contains_key(&v) {
            return Err(Error::LogSlotPresent);
        }
        let mut out = Self::zero(lower_trunc(self.precision, -1));
        for (m, c) in &self.terms {
            let sub = m.rename(|w| if w == u || w == v { x } else { w });
            out.add_term(sub.mul(&XMono::var(x, -1)), c.clone());
        }
        for (w, l) in &self.logs {
            out.add_log(*w, l.clone());
        }
        Ok(out)
    }

    /// The two-variable operator `D_{from,to}`:
    /// `from^{-(m+1)} ↦ Σ_{k+l=m} (l+1) from^{-(k+2)} to^{-(l+2)}`.
    pub fn op_d(&self, from: Var, to: Var) -> Result<Self> {
        if self.has_logs() {
            return Err(Error::LogSlotPresent);
        }
        let mut out = Self::zero(lower_trunc(self.precision, -3));
        for (mono, c) in &self.terms {
            let e = mono.exp_of(from);
            if e >= 0 {
                return Err(Error::NotPureTail(format!(
                    "{from} (term {mono} has exponent {e})"
                )));
            }
            let m = -e - 1;
            let rest = mono.mul(&XMono::var(from, -e));
            for k in 0..=m {
                let l = m - k;
                let img = rest.mul(&XMono::new([(from, -(k + 2)), (to, -(l + 2))]));
                out.add_term(img, c.scale(&S::from_int(l as i64 + 1)));
            }
        }
        Ok(out)
    }

    /// Inverse of `1 + tail` where the tail only contains negative powers of
    /// `v`. Keeps the precision of the input.
    pub fn invert(&self, v: Var) -> Result<Self> {
        if self.has_logs() {
            return Err(Error::LogSlotPresent);
        }
        if !self.coeff(&XMono::one()).is_one() {
            return Err(Error::NonUnitInversion);
        }
        let mut h = Self::zero(self.precision);
        for (m, c) in &self.terms {
            if m.is_one() {
                continue;
            }
            if m.exps().len() != 1 || m.exps()[0].0 != v || m.exps()[0].1 >= 0 {
                return Err(Error::NotPureTail(format!("{v} (term {m})")));
            }
            h.add_term(m.clone(), -c);
        }
        if h.terms.is_empty() {
            return Ok(Self::one(self.precision));
        }
        if self.precision >= EXACT {
            return Err(Error::InvalidArgument(
                "inverting an infinite series needs a finite precision".into(),
            ));
        }
        let one = Self::one(EXACT);
        let mut g = Self::one(EXACT);
        for _ in 0..=self.precision {
            let next = &one + &h.mul(&g)?;
            if next == g {
                break;
            }
            g = next;
        }
        Ok(g)
    }

    /// Terms of the given total degree.
    pub fn degree_part(&self, d: i64) -> Vec<(&XMono, &TPolyOf<S>)> {
        self.terms.iter().filter(|(m, _)| m.degree() == d).collect()
    }
}

impl<S: Scalar> Add for &XSeriesOf<S> {
    type Output = XSeriesOf<S>;
    fn add(self, rhs: Self) -> XSeriesOf<S> {
        let mut out = self.truncate(rhs.precision);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        for (v, l) in &rhs.logs {
            out.add_log(*v, l.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &XSeriesOf<S> {
    type Output = XSeriesOf<S>;
    fn neg(self) -> XSeriesOf<S> {
        self.scale_scalar(&-S::one())
    }
}

impl<S: Scalar> Sub for &XSeriesOf<S> {
    type Output = XSeriesOf<S>;
    fn sub(self, rhs: Self) -> XSeriesOf<S> {
        self + &-rhs
    }
}

impl<S: Scalar> fmt::Display for XSeriesOf<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, l) in &self.logs {
            first = false;
            write!(f, "({l}) * log({v})")?;
        }
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            for (i, (e, s)) in c.terms().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                let mut factors: Vec<String> = power_factor("t", e as i64).into_iter().collect();
                factors.extend(m.factors());
                write_term(f, s, &factors)?;
            }
        }
        Ok(())
    }
}
