use std::collections::BTreeMap;

use super::{heisenberg, virasoro_l};
use crate::correlators::{partitions_up_to, Correlators};
use crate::error::{Error, Result};
use crate::exactalg::{int, CouplingMonomial, EXACT};
use crate::report::Report;
use crate::{CouplingSeries, TPoly};

/// Checks `L_m Z = 0` for `-1 <= m <= m_max` on every component of weight at
/// most `d - m - 2`; one report per `m`.
pub fn verify_virasoro(table: &Correlators, m_max: i64, d: u32) -> Result<Vec<Report>> {
    let z = table.partition_function(d)?;
    let mut out = Vec::new();
    for m in -1..=m_max {
        let mut report = Report::new("virasoro").param("m", m).param("D", d);
        let lz = virasoro_l(m)?.apply(&z);
        let bound = d as i64 - m - 2;
        if lz.trunc() < bound {
            report.violation(format!(
                "result only exact to weight {}, need {bound}",
                lz.trunc()
            ));
        }
        for (mono, c) in lz.terms() {
            if mono.weight() <= bound {
                report.violation(format!("weight {}: {c} * {mono}", mono.weight()));
            }
        }
        out.push(report);
    }
    Ok(out)
}

/// `[L_m, L_n] - (m - n) L_{m+n}` applied to `probe` vanishes.
pub fn commutator_check(m: i64, n: i64, probe: &CouplingMonomial) -> Result<bool> {
    let f = CouplingSeries::monomial(probe.clone(), int(1), EXACT);
    let lm = virasoro_l(m)?;
    let ln = virasoro_l(n)?;
    let mut r = &lm.apply(&ln.apply(&f)) - &ln.apply(&lm.apply(&f));
    if m != n {
        r = &r - &virasoro_l(m + n)?.apply(&f).scale(&int(m - n));
    }
    Ok(r.is_zero())
}

/// `[β̃_m, β̃_n](probe) = m δ_{m+n,0} probe`.
pub fn heisenberg_check(m: i64, n: i64, probe: &CouplingMonomial) -> Result<bool> {
    let f = CouplingSeries::monomial(probe.clone(), int(1), EXACT);
    let (bm, em) = heisenberg(m)?;
    let (bn, en) = heisenberg(n)?;
    let raw = &bm.apply(&bn.apply(&f)) - &bn.apply(&bm.apply(&f));
    // the √2 factors combine to 2^{(em+en)/2} with em + en even
    let factor = match em + en {
        -2 => int(1) / int(2),
        0 => int(1),
        2 => int(2),
        _ => unreachable!("markers are ±1"),
    };
    let lhs = raw.scale(&factor);
    let rhs = if m + n == 0 {
        f.scale(&int(m))
    } else {
        CouplingSeries::zero(EXACT)
    };
    Ok((&lhs - &rhs).is_zero())
}

/// Coupling monomials without `t` or `gs`, of weight at most `max_weight`
/// and subscripts at most `max_index`, starting with `1`.
pub fn coupling_probes(max_weight: usize, max_index: usize) -> Vec<CouplingMonomial> {
    let mut out = vec![CouplingMonomial::one()];
    for p in partitions_up_to(max_weight) {
        if p.iter().all(|&k| k <= max_index) {
            out.push(CouplingMonomial::new(
                p.iter().map(|&k| k as u32).collect(),
                0,
                0,
            ));
        }
    }
    out
}

/// [`commutator_check`] for `-1 <= m, n <= m_max` on every probe.
pub fn verify_commutators(m_max: i64, probes: &[CouplingMonomial]) -> Result<Report> {
    let mut report = Report::new("commutators")
        .param("m_max", m_max)
        .param("probes", probes.len());
    for m in -1..=m_max {
        for n in -1..=m_max {
            for p in probes {
                if !commutator_check(m, n, p)? {
                    report.violation(format!("[L_{m}, L_{n}] on {p}"));
                }
            }
        }
    }
    Ok(report)
}

/// [`heisenberg_check`] for `1 <= |m|, |n| <= bound` on every probe.
pub fn verify_heisenberg(bound: i64, probes: &[CouplingMonomial]) -> Result<Report> {
    let mut report = Report::new("heisenberg")
        .param("bound", bound)
        .param("probes", probes.len());
    let idx: Vec<i64> = (-bound..=bound).filter(|&i| i != 0).collect();
    for &m in &idx {
        for &n in &idx {
            for p in probes {
                if !heisenberg_check(m, n, p)? {
                    report.violation(format!("[b_{m}, b_{n}] on {p}"));
                }
            }
        }
    }
    Ok(report)
}

/// Laurent polynomial in `z` with coupling-series coefficients.
type ZSeries = BTreeMap<i64, CouplingSeries>;

fn z_add(acc: &mut ZSeries, k: i64, c: CouplingSeries) {
    let entry = acc.entry(k).or_insert_with(|| CouplingSeries::zero(EXACT));
    *entry = &*entry + &c;
}

fn z_mul(a: &ZSeries, b: &ZSeries) -> ZSeries {
    let mut out = ZSeries::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            z_add(&mut out, ka + kb, ca * cb);
        }
    }
    out
}

fn z_scale(a: &ZSeries, c: i64) -> ZSeries {
    a.iter().map(|(k, v)| (*k, v.scale(&int(c)))).collect()
}

/// `P(z) = Σ_{n>=0} (g_{n+1} - δ_{n,1}) z^n`, kept for `n <= n_max`.
fn p_series(n_max: i64) -> ZSeries {
    let mut p = ZSeries::new();
    for n in 0..=n_max {
        let mut c = CouplingSeries::monomial(CouplingMonomial::g(n as u32 + 1), int(1), EXACT);
        if n == 1 {
            c.add_term(CouplingMonomial::one(), int(-1));
        }
        p.insert(n, c);
    }
    p
}

/// `Q(z) = t z^{-1} + Σ_{n>=1} n ∂F_0/∂g_n z^{-n-1}`, kept for `n <= n_max`.
fn q_series(f0: &CouplingSeries, n_max: i64) -> ZSeries {
    let mut q = ZSeries::new();
    q.insert(
        -1,
        CouplingSeries::monomial(CouplingMonomial::t(1), int(1), EXACT),
    );
    for n in 1..=n_max {
        q.insert(-n - 1, f0.derivative(n as u32).scale(&int(n)));
    }
    q
}

/// Negative part of `y^2 = P^2/2 + 2PQ + 2Q^2` (the `√2` normalizations
/// cancel) vanishes at coupling weight `<= d - 2` for `z^{-1} .. z^{-k}`.
pub fn y_squared_negative_part(table: &Correlators, d: u32, k: u32) -> Result<Report> {
    if d < 2 || k < 2 {
        return Err(Error::InvalidArgument("need D >= 2 and K >= 2".into()));
    }
    let mut report = Report::new("deformation").param("D", d).param("K", k);
    let (d, k) = (d as i64, k as i64);
    // ∂_n lowers the truncation by n; computing F_0 deeper keeps every
    // derivative below exact at the target weight
    let f0 = table.free_energy(0, (2 * d + k) as u32)?;
    let p = p_series(d);
    let q = q_series(&f0, d + k);
    // P^2 has no negative powers
    let pq = z_scale(&z_mul(&p, &q), 2);
    let qq = z_scale(&z_mul(&q, &q), 2);
    let target = d - 2;
    for j in 1..=k {
        let mut c = CouplingSeries::zero(EXACT);
        for part in [&pq, &qq] {
            if let Some(v) = part.get(&-j) {
                c = &c + v;
            }
        }
        if c.trunc() < target {
            report.violation(format!("z^-{j}: only exact to weight {}", c.trunc()));
        }
        for (mono, v) in c.terms() {
            if mono.weight() <= target {
                report.violation(format!("z^-{j}: {v} * {mono}"));
            }
        }
    }
    Ok(report)
}

/// At zero couplings `2y^2 - z^2 + 4t = -4(zQ - t) + 4Q^2` vanishes in every
/// `z`-degree above `-k`, with `Q` built from the one-point correlators.
pub fn spectral_curve_check(table: &Correlators, k: u32) -> Result<Report> {
    if k < 2 {
        return Err(Error::InvalidArgument("need K >= 2".into()));
    }
    let mut report = Report::new("spectral").param("K", k);
    let k = k as i64;
    // Q as a Laurent polynomial in z with t-polynomial coefficients
    let mut q: BTreeMap<i64, TPoly> = BTreeMap::new();
    q.insert(-1, TPoly::t());
    for n in 1..=k {
        let f = table.get(0, &[n as usize])?;
        q.insert(-n - 1, f.scale(&int(n)));
    }
    let mut total: BTreeMap<i64, TPoly> = BTreeMap::new();
    let mut add = |deg: i64, c: TPoly| {
        let e = total.entry(deg).or_default();
        *e = &*e + &c;
    };
    // -4 z Q + 4 t
    for (deg, c) in &q {
        add(deg + 1, c.scale(&int(-4)));
    }
    add(0, TPoly::monomial(int(4), 1));
    for (da, ca) in &q {
        for (db, cb) in &q {
            add(da + db, (ca * cb).scale(&int(4)));
        }
    }
    for (deg, c) in total.range(-k + 1..) {
        if !c.is_zero() {
            report.violation(format!("z^{deg}: {c}"));
        }
    }
    Ok(report)
}
