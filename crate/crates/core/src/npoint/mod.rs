//! n-point functions `W_{g,n}`: assembled from correlators, or built by the
//! quadratic recursion in the `x_i`; the averaged functions `S_m` and the
//! Schrödinger-type identity they satisfy.

mod qsc;
mod recursion;

pub use qsc::{qsc_check, qsc_residual};
pub use recursion::{verify_npoint, w_recursion, WSolver};

pub use crate::correlators::compositions;
use crate::correlators::Correlators;
use crate::error::{Error, Result};
use crate::exactalg::{catalan, factorial, int};
use crate::{Rat, TPoly, Var, XMono, XSeries};

fn check_key(g: i64, n: usize) -> Result<()> {
    if g < 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "no n-point function for g={g}, n={n}"
        )));
    }
    Ok(())
}

/// `t/x_1 + Σ_m C_m t^{m+1} x_1^{-2m-1}` for `2m <= k`, the genus-zero
/// one-point function in closed form.
pub fn w01_closed_form(k: u32) -> XSeries {
    let mut w = XSeries::zero(k as i64 + 1);
    for m in 0..=(k / 2) {
        let c = int(catalan(m as u64) as i64);
        w.add_term(
            XMono::var(Var::x(1), -(2 * m as i32) - 1),
            TPoly::monomial(c, m + 1),
        );
    }
    w
}

/// `W_{g,n}(x_1, ..., x_n) = Σ_{|mu| <= k} <p_mu>_g ∏ x_i^{-mu_i-1}` with
/// `<p_mu> = (∏ mu_i) F_g^mu`, plus `t/x_1` for `(0, 1)`.
pub fn w_from_correlators(table: &Correlators, g: i64, n: usize, k: u32) -> Result<XSeries> {
    check_key(g, n)?;
    let mut w = XSeries::zero(k as i64 + n as i64);
    if g == 0 && n == 1 {
        w.add_term(XMono::var(Var::x(1), -1), TPoly::t());
    }
    for mu in compositions(n, k as usize) {
        let f = table.get(g, &mu)?;
        if f.is_zero() {
            continue;
        }
        let weight: i64 = mu.iter().map(|&m| m as i64).product();
        let mono = XMono::new(
            mu.iter()
                .enumerate()
                .map(|(i, &m)| (Var::x(i as u32 + 1), -(m as i32) - 1)),
        );
        w.add_term(mono, f.scale(&int(weight)));
    }
    Ok(w)
}

/// `D_{x_1, x_j}` applied to a tail in `x_1`.
pub fn op_d(f: &XSeries, j: u32) -> Result<XSeries> {
    f.op_d(Var::x(1), Var::x(j))
}

/// `S_{g,n}(x) = (1/n!) Σ_{|mu| <= k} F_g^mu x^{-|mu|}` over ordered `mu`;
/// `S_{0,1}` also carries `-t log x`.
pub fn s_gn(table: &Correlators, g: i64, n: usize, k: u32) -> Result<XSeries> {
    check_key(g, n)?;
    let mut s = XSeries::zero(k as i64);
    if g == 0 && n == 1 {
        s.add_log(Var::X, -&TPoly::t());
    }
    let norm = int(1) / factorial::<Rat>(n as u32);
    for mu in compositions(n, k as usize) {
        let f = table.get(g, &mu)?;
        if !f.is_zero() {
            let total: usize = mu.iter().sum();
            s.add_term(XMono::var(Var::X, -(total as i32)), f.scale(&norm));
        }
    }
    Ok(s)
}

/// `S_m = Σ_{2g-1+n=m} S_{g,n}`.
pub fn s_function(table: &Correlators, m: u32, k: u32) -> Result<XSeries> {
    let mut s = XSeries::zero(k as i64);
    for g in 0..=((m as i64 + 1) / 2) {
        let n = m as i64 + 1 - 2 * g;
        if n >= 1 {
            s = &s + &s_gn(table, g, n as usize, k)?;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x1(e: i32) -> XMono {
        XMono::var(Var::x(1), e)
    }

    fn tm(c: Rat, e: u32) -> TPoly {
        TPoly::monomial(c, e)
    }

    #[test]
    fn catalan_one_point() {
        let table = Correlators::new();
        let w = w_from_correlators(&table, 0, 1, 9).unwrap();
        let expect = [(1, 1), (3, 1), (5, 2), (7, 5), (9, 14)];
        for (i, &(e, c)) in expect.iter().enumerate() {
            assert_eq!(w.coeff(&x1(-e)), tm(int(c), i as u32 + 1));
        }
        assert_eq!(w.terms().count(), 5);
        assert_eq!(w, w01_closed_form(9));
    }

    #[test]
    fn low_cells() {
        let table = Correlators::new();
        let w02 = w_from_correlators(&table, 0, 2, 6).unwrap();
        let m = |a, b| XMono::new([(Var::x(1), a), (Var::x(2), b)]);
        assert_eq!(w02.coeff(&m(-3, -3)), tm(int(2), 2));
        assert_eq!(w02.coeff(&m(-2, -4)), tm(int(3), 2));
        let w11 = w_from_correlators(&table, 1, 1, 6).unwrap();
        assert_eq!(w11.coeff(&x1(-5)), TPoly::t());
    }

    #[test]
    fn d_operator() {
        let one = |e| XSeries::monomial(x1(e), TPoly::one(), 10);
        let m = |a, b| XMono::new([(Var::x(1), a), (Var::x(3), b)]);
        assert_eq!(
            op_d(&one(-1), 3).unwrap(),
            XSeries::monomial(m(-2, -2), TPoly::one(), 13)
        );
        let d = op_d(&one(-3), 3).unwrap();
        assert_eq!(d.coeff(&m(-4, -2)), TPoly::one());
        assert_eq!(d.coeff(&m(-3, -3)), tm(int(2), 0));
        assert_eq!(d.coeff(&m(-2, -4)), tm(int(3), 0));
        assert_eq!(d.terms().count(), 3);
        let d = op_d(&one(-2), 3).unwrap();
        assert_eq!(d.coeff(&m(-3, -2)), TPoly::one());
        assert_eq!(d.coeff(&m(-2, -3)), tm(int(2), 0));
    }

    #[test]
    fn averaged_functions() {
        let table = Correlators::new();
        let s0 = s_function(&table, 0, 6).unwrap();
        assert_eq!(s0.log_coeff(Var::X), -&TPoly::t());
        let xm = |e| XMono::var(Var::X, e);
        assert_eq!(s0.coeff(&xm(-2)), tm(rat(1, 2), 2));
        assert_eq!(s0.coeff(&xm(-4)), tm(rat(1, 2), 3));
        assert_eq!(s0.coeff(&xm(-6)), tm(rat(5, 6), 4));
        let s1 = s_function(&table, 1, 6).unwrap();
        assert_eq!(s1.coeff(&xm(-2)), tm(rat(1, 2), 1));
        assert_eq!(s1.coeff(&xm(-4)), tm(rat(5, 4), 2));
        assert!(!s1.has_logs());
    }
}
