use std::collections::HashMap;

use super::{check_key, w01_closed_form, w_from_correlators};
use crate::correlators::Correlators;
use crate::error::{Error, Result};
use crate::exactalg::int;
use crate::report::Report;
use crate::{Var, XMono, XSeries};

/// Builds `W_{g,n}` from `W_{0,1}` alone:
///
/// `(1 - 2 x_1^{-1} W_{0,1}(x_1)) W_{g,n} = Σ_j D_{x_1,x_j} W_{g,n-1}
///   + x_1^{-1} W_{g-1,n+1}(x_1, x_1, ...) + x_1^{-1} Σ^s W_{g_1} W_{g_2}`
///
/// where `Σ^s` skips the splittings with a `W_{0,1}` factor. Every `W_{g,n}`
/// is kept exact for `Σ mu_i <= k`.
pub struct WSolver {
    k: u32,
    inverse: XSeries,
    memo: HashMap<(i64, usize), XSeries>,
}

impl WSolver {
    pub fn new(k: u32) -> Result<Self> {
        // 1 - 2 x^{-1} W_{0,1}, inverted as a tail in x_1^{-1}
        let w01 = w01_closed_form(k + 2);
        let mut denom = XSeries::one(k as i64 + 4);
        denom = &denom
            - &w01
                .mul_mono(&XMono::var(Var::x(1), -1))?
                .scale_scalar(&int(2));
        let inverse = denom.invert(Var::x(1))?;
        let mut memo = HashMap::new();
        memo.insert((0, 1), w01_closed_form(k));
        Ok(Self { k, inverse, memo })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `W_{g,n}` in the variables `x_1, ..., x_n`.
    pub fn get(&mut self, g: i64, n: usize) -> Result<XSeries> {
        check_key(g, n)?;
        if let Some(w) = self.memo.get(&(g, n)) {
            return Ok(w.clone());
        }
        let w = self.solve(g, n)?;
        self.memo.insert((g, n), w.clone());
        Ok(w)
    }

    /// `W_{g,m}` with `x_i` renamed to `vars[i-1]`.
    fn placed(&mut self, g: i64, vars: &[Var]) -> Result<XSeries> {
        let w = self.get(g, vars.len())?;
        Ok(w.rename(|v| vars[v.0 as usize - 1]))
    }

    fn solve(&mut self, g: i64, n: usize) -> Result<XSeries> {
        let precision = self.k as i64 + n as i64;
        let x1 = Var::x(1);
        let rest: Vec<Var> = (2..=n as u32).map(Var::x).collect();
        let mut rhs = XSeries::zero(precision);

        for (j, &xj) in rest.iter().enumerate() {
            let mut vars = vec![x1];
            vars.extend(
                rest.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &v)| v),
            );
            let sub = self.placed(g, &vars)?;
            rhs = &rhs + &sub.op_d(x1, xj)?;
        }

        let mut quad = XSeries::zero(precision + 1);
        if g >= 1 {
            let mut vars = vec![Var::U, Var::V];
            vars.extend(&rest);
            let sub = self.placed(g - 1, &vars)?;
            // diag already carries the x_1^{-1}
            rhs = &rhs + &sub.diag(Var::U, Var::V, x1)?;
        }
        for mask in 0u32..(1 << rest.len()) {
            let (mut left, mut right) = (vec![x1], vec![x1]);
            for (p, &v) in rest.iter().enumerate() {
                if mask >> p & 1 == 1 {
                    left.push(v);
                } else {
                    right.push(v);
                }
            }
            for g1 in 0..=g {
                let g2 = g - g1;
                if (g1 == 0 && left.len() == 1) || (g2 == 0 && right.len() == 1) {
                    continue;
                }
                let a = self.placed(g1, &left)?;
                let b = self.placed(g2, &right)?;
                quad = &quad + &a.mul(&b)?;
            }
        }
        rhs = &rhs + &quad.mul_mono(&XMono::var(x1, -1))?;

        Ok(self.inverse.mul(&rhs)?.truncate(precision))
    }
}

/// `W_{g,n}` from the recursion, exact for `Σ mu_i <= k`.
pub fn w_recursion(g: i64, n: usize, k: u32) -> Result<XSeries> {
    check_key(g, n)?;
    if (g, n) == (0, 1) {
        return Err(Error::BaseCase);
    }
    WSolver::new(k)?.get(g, n)
}

/// Cells compared by [`verify_npoint`].
pub const CHECKED_CELLS: [(i64, usize); 5] = [(0, 2), (0, 3), (1, 1), (1, 2), (2, 1)];

/// Recursion against correlator assembly on the standard cells.
pub fn verify_npoint(table: &Correlators, k: u32) -> Result<Report> {
    let mut report = Report::new("npoint").param("K", k);
    let mut solver = WSolver::new(k)?;
    for (g, n) in CHECKED_CELLS {
        let lhs = solver.get(g, n)?;
        let rhs = w_from_correlators(table, g, n, k)?;
        let diff = &lhs - &rhs;
        for (m, c) in diff.terms() {
            report.violation(format!("W_{{{g},{n}}} at {m}: {c}"));
        }
        if lhs.precision() < rhs.precision() {
            report.violation(format!(
                "W_{{{g},{n}}} only exact to degree -{}",
                lhs.precision()
            ));
        }
    }
    Ok(report)
}
