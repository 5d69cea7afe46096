//! The cut-and-join operator `M = ½ Σ_{m>=-1} g_{m+2} L'_m` and the
//! representation `Z|_{gs=1} = e^M(1)`.

use crate::correlators::Correlators;
use crate::error::Result;
use crate::exactalg::{int, rat, CouplingMonomial};
use crate::report::Report;
use crate::virasoro::{virasoro_l_prime, LinearOp};
use crate::CouplingSeries;

/// `M` with the `m`-sum cut at `g_{m+2}`, `m + 2 <= max_index`. Higher terms
/// only produce monomials containing `g_k` with `k > max_index`.
pub fn cut_join_operator(max_index: u32) -> LinearOp {
    let mut op = LinearOp::new();
    for m in -1..=(max_index as i64 - 2) {
        let lp = virasoro_l_prime(m).expect("m >= -1");
        op = op.plus(&lp.times(&CouplingMonomial::g((m + 2) as u32)));
    }
    op.scale(&rat(1, 2))
}

/// `M(f)`, exact up to the truncation of `f`. Every term of `M` raises the
/// weight by 2.
pub fn apply_m(f: &CouplingSeries) -> CouplingSeries {
    // L'_m kills every monomial of weight below m
    let top = f.terms().map(|(m, _)| m.weight()).max().unwrap_or(0);
    let cap = (top + 2).min(f.trunc()).max(1) as u32;
    cut_join_operator(cap).apply(f).truncate(f.trunc())
}

/// `Σ_{k<=d} M^k(1)/k!`, through weight `2d`.
pub fn exp_m_vacuum(d: u32) -> CouplingSeries {
    let trunc = 2 * d as i64;
    let mut z_k = CouplingSeries::one(trunc);
    let mut total = z_k.clone();
    for k in 0..d {
        z_k = apply_m(&z_k).scale(&(int(1) / int(k as i64 + 1)));
        total = &total + &z_k;
    }
    total
}

/// Compares `e^M(1)` with the recursion-built `Z` at `gs = 1` through
/// weight `2d`.
pub fn verify_cut_join(table: &Correlators, d: u32) -> Result<Report> {
    let mut report = Report::new("cutjoin").param("D", d);
    let lhs = exp_m_vacuum(d);
    let rhs = table.partition_function(2 * d)?.at_gs_one();
    let diff = &lhs - &rhs;
    for (mono, c) in diff.terms() {
        report.violation(format!("weight {}: {c} * {mono}", mono.weight()));
    }
    Ok(report)
}
