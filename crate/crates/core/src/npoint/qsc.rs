use super::s_function;
use crate::correlators::Correlators;
use crate::error::Result;
use crate::exactalg::{int, rat};
use crate::report::Report;
use crate::{Rat, TPoly, Var, XMono, XSeries};

fn d(f: &XSeries) -> XSeries {
    f.derivative(Var::X)
}

fn constant(c: Rat, e: u32) -> XSeries {
    XSeries::monomial(XMono::one(), TPoly::monomial(c, e), i64::MAX / 4)
}

fn check_range(report: &mut Report, label: &str, r: &XSeries, k: u32) {
    let lowest = k as i64 - 2;
    if r.precision() < lowest {
        report.violation(format!("{label}: only exact to x^-{}", r.precision()));
    }
    for (m, c) in r.terms() {
        if m.degree() >= -lowest {
            report.violation(format!("{label}: x^{} coefficient {c}", m.degree()));
        }
    }
}

/// Order-`ħ^m` part of `(ħ² d² + ħ x d + t) exp(Σ ħ^{m-1} S_m) = 0`:
/// `x S_m' + S_{m-1}'' + Σ_{i+j=m} S_i' S_j' + t δ_{m,0}`.
fn unshifted(s: &[XSeries], m: usize) -> Result<XSeries> {
    let mut r = d(&s[m]).mul_mono(&XMono::var(Var::X, 1))?;
    if m >= 1 {
        r = &r + &d(&d(&s[m - 1]));
    }
    for i in 0..=m {
        r = &r + &d(&s[i]).mul(&d(&s[m - i]))?;
    }
    if m == 0 {
        r = &r + &constant(int(1), 1);
    }
    Ok(r)
}

/// Same expansion for `Φ = exp(x²/4ħ) Ψ` under
/// `ħ² d² - x²/4 + t - c ħ`.
fn shifted(s: &[XSeries], m: usize, c: &Rat) -> Result<XSeries> {
    let mut s = s.to_vec();
    s[0].add_term(XMono::var(Var::X, 2), TPoly::constant(rat(1, 4)));
    let mut r = XSeries::zero(i64::MAX / 4);
    if m >= 1 {
        r = &r + &d(&d(&s[m - 1]));
    }
    for i in 0..=m {
        r = &r + &d(&s[i]).mul(&d(&s[m - i]))?;
    }
    match m {
        0 => {
            r = &r + &constant(int(1), 1);
            r.add_term(XMono::var(Var::X, 2), TPoly::constant(rat(-1, 4)));
        }
        1 => r = &r + &constant(-c.clone(), 0),
        _ => {}
    }
    Ok(r)
}

/// Checks the unshifted identity for every `m < s.len()` through `x^{-(k-2)}`.
pub fn qsc_check(s: &[XSeries], k: u32) -> Result<Report> {
    let mut report = Report::new("qsc")
        .param("m_max", s.len() as i64 - 1)
        .param("K", k);
    for m in 0..s.len() {
        check_range(&mut report, &format!("m={m}"), &unshifted(s, m)?, k);
    }
    Ok(report)
}

/// Unshifted identity for `0 <= m <= m_max`, plus the shifted form with the
/// `-ħ/2` term. The residual of the shifted operator without that term is
/// recorded as a note.
pub fn qsc_residual(table: &Correlators, m_max: u32, k: u32) -> Result<Report> {
    let s: Vec<XSeries> = (0..=m_max)
        .map(|m| s_function(table, m, k))
        .collect::<Result<_>>()?;
    let mut report = qsc_check(&s, k)?;
    let half = rat(1, 2);
    for m in 0..s.len() {
        check_range(
            &mut report,
            &format!("shifted m={m}"),
            &shifted(&s, m, &half)?,
            k,
        );
    }
    if s.len() >= 2 {
        let raw = shifted(&s, 1, &int(0))?.truncate(k as i64 - 2);
        report.note(format!(
            "shifted operator without the -hbar/2 term leaves {raw} at order hbar; \
             with it every order vanishes"
        ));
    }
    Ok(report)
}
