//! Differential operators on coupling series: the fat Virasoro operators,
//! their `gs = 1` variants used by the cut-and-join operator, and the
//! realized Heisenberg generators.

mod checks;

use std::fmt;

use num_traits::Zero;

pub use checks::{
    commutator_check, coupling_probes, heisenberg_check, spectral_curve_check, verify_commutators,
    verify_heisenberg, verify_virasoro, y_squared_negative_part,
};

use crate::error::{Error, Result};
use crate::exactalg::{int, lower_trunc, CouplingMonomial, EXACT};
use crate::{CouplingSeries, Rat};

/// Differential part of an operator term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Identity,
    /// `∂/∂g_k`
    D1(u32),
    /// `∂²/∂g_k∂g_l`
    D2(u32, u32),
    /// `Σ_{k>=1} (k+m) g_k ∂/∂g_{k+m}`
    Shift(i64),
}

impl Action {
    /// How far the action lowers the coupling weight (negative: raises).
    fn lowering(self) -> i64 {
        match self {
            Action::Identity => 0,
            Action::D1(k) => k as i64,
            Action::D2(k, l) => (k + l) as i64,
            Action::Shift(m) => m,
        }
    }

    fn apply(self, f: &CouplingSeries) -> CouplingSeries {
        match self {
            Action::Identity => f.clone(),
            Action::D1(k) => f.derivative(k),
            Action::D2(k, l) => f.derivative(k).derivative(l),
            Action::Shift(m) => {
                let trunc = lower_trunc(f.trunc(), m.max(0));
                let mut out = CouplingSeries::zero(trunc);
                for (mono, c) in f.terms() {
                    let mut seen = None;
                    for &k in mono.couplings() {
                        if seen == Some(k) {
                            continue;
                        }
                        seen = Some(k);
                        let j = k as i64 - m;
                        if j < 1 {
                            continue;
                        }
                        let factor = int(k as i64 * mono.multiplicity(k) as i64);
                        let img = mono.without(k).unwrap().with(j as u32);
                        out.add_term(img, c * &factor);
                    }
                }
                out
            }
        }
    }
}

/// `coeff * mul * action`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpTerm {
    pub coeff: Rat,
    pub mul: CouplingMonomial,
    pub action: Action,
}

/// Finite sum of operator terms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearOp {
    pub terms: Vec<OpTerm>,
}

impl LinearOp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coeff: Rat, mul: CouplingMonomial, action: Action) -> Self {
        if !coeff.is_zero() {
            self.terms.push(OpTerm { coeff, mul, action });
        }
        self
    }

    pub fn plus(mut self, other: &LinearOp) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self.terms.retain(|t| !t.coeff.is_zero());
        self
    }

    /// Multiplies every term on the left by a monomial.
    pub fn times(mut self, mono: &CouplingMonomial) -> Self {
        for t in &mut self.terms {
            t.mul = &t.mul * mono;
        }
        self
    }

    /// Largest weight drop over all terms.
    pub fn max_lowering(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| t.action.lowering() - t.mul.weight())
            .max()
            .unwrap_or(0)
    }

    /// Applies the operator. The result is exact up to the input truncation
    /// minus the largest weight drop of any term.
    pub fn apply(&self, f: &CouplingSeries) -> CouplingSeries {
        let mut trunc = f.trunc();
        let mut pieces = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let acted = t.action.apply(f);
            let piece_trunc = acted
                .trunc()
                .saturating_add(t.mul.weight())
                .min(EXACT)
                .min(f.trunc());
            trunc = trunc.min(piece_trunc);
            let mut out = CouplingSeries::zero(piece_trunc);
            for (m, c) in acted.terms() {
                out.add_term(&t.mul * m, c * &t.coeff);
            }
            pieces.push(out);
        }
        let mut out = CouplingSeries::zero(trunc);
        for p in &pieces {
            out = &out + p;
        }
        out
    }

    pub fn apply_monomial(&self, m: &CouplingMonomial) -> CouplingSeries {
        self.apply(&CouplingSeries::monomial(m.clone(), int(1), EXACT))
    }
}

impl fmt::Display for OpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", self.coeff, self.mul)?;
        match self.action {
            Action::Identity => Ok(()),
            Action::D1(k) => write!(f, " d{k}"),
            Action::D2(k, l) => write!(f, " d{k} d{l}"),
            Action::Shift(m) => write!(f, " shift({m})"),
        }
    }
}

fn g(k: u32) -> CouplingMonomial {
    CouplingMonomial::g(k)
}

fn common_part(m: i64, with_gs: bool) -> LinearOp {
    let one = CouplingMonomial::one();
    let mut op = LinearOp::new().term(int(1), one.clone(), Action::Shift(m));
    let gs2 = if with_gs {
        CouplingMonomial::gs(2)
    } else {
        one.clone()
    };
    for k in 1..m {
        let l = m - k;
        op = op.term(int(k * l), gs2.clone(), Action::D2(k as u32, l as u32));
    }
    if m >= 1 {
        op = op.term(int(2 * m), CouplingMonomial::t(1), Action::D1(m as u32));
    }
    let gsm2 = if with_gs {
        CouplingMonomial::gs(-2)
    } else {
        one
    };
    match m {
        -1 => op.term(
            int(1),
            &(&CouplingMonomial::t(1) * &g(1)) * &gsm2,
            Action::Identity,
        ),
        0 => op.term(int(1), &CouplingMonomial::t(2) * &gsm2, Action::Identity),
        _ => op,
    }
}

/// The fat Virasoro operator `L_m`, `m >= -1`.
pub fn virasoro_l(m: i64) -> Result<LinearOp> {
    if m < -1 {
        return Err(Error::InvalidArgument(format!(
            "L_{m} is undefined below m = -1"
        )));
    }
    Ok(common_part(m, true).term(
        int(-(m + 2)),
        CouplingMonomial::one(),
        Action::D1((m + 2) as u32),
    ))
}

/// `L'_m`: `L_m` at `gs = 1` without the `-(m+2) ∂_{m+2}` term.
pub fn virasoro_l_prime(m: i64) -> Result<LinearOp> {
    if m < -1 {
        return Err(Error::InvalidArgument(format!(
            "L'_{m} is undefined below m = -1"
        )));
    }
    Ok(common_part(m, false))
}

pub fn apply_l(m: i64, f: &CouplingSeries) -> Result<CouplingSeries> {
    Ok(virasoro_l(m)?.apply(f))
}

/// Realized Heisenberg generator `β̃_n` without its `√2` factor, and the
/// exponent `e` of that factor: the true operator is `2^{e/2}` times the
/// returned one.
pub fn heisenberg(n: i64) -> Result<(LinearOp, i32)> {
    if n == 0 {
        return Err(Error::InvalidArgument("zero Heisenberg index".into()));
    }
    let k = n.unsigned_abs() as u32;
    if n < 0 {
        let gsm1 = CouplingMonomial::gs(-1);
        let mut op = LinearOp::new().term(int(1), &gsm1 * &g(k), Action::Identity);
        if k == 2 {
            op = op.term(int(-1), gsm1, Action::Identity);
        }
        Ok((op, -1))
    } else {
        let op = LinearOp::new().term(int(n), CouplingMonomial::gs(1), Action::D1(k));
        Ok((op, 1))
    }
}
