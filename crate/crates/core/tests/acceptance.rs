//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fatrec_core::correlators::{compositions, partitions_up_to, t_exponent, Correlators};
use fatrec_core::cutjoin::exp_m_vacuum;
use fatrec_core::exactalg::{catalan, int, rat};
use fatrec_core::graphspace::{
    abstract_rhs, contract_k1, oracle_all_genera, verify_abstract_range, AbstractCorrelators,
    GraphSum,
};
use fatrec_core::npoint::{qsc_residual, verify_npoint, w_from_correlators, w_recursion};
use fatrec_core::virasoro::{
    coupling_probes, spectral_curve_check, verify_commutators, verify_heisenberg, verify_virasoro,
    y_squared_negative_part,
};
use fatrec_core::{CouplingMonomial, Rat, TPoly, Var, XMono};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tm(c: Rat, e: u32) -> TPoly {
    TPoly::monomial(c, e)
}

fn cat(m: u32) -> Rat {
    int(catalan(m as u64) as i64)
}

fn c1_catalan_table() -> Outcome {
    let table = Correlators::new();
    for m in 1..=8u32 {
        let got = table.get(0, &[2 * m as usize]).map_err(|e| e.to_string())?;
        let want = tm(cat(m) / int(2 * m as i64), m + 1);
        ensure(got == want, || {
            format!("F_0^({}) = {got}, want {want}", 2 * m)
        })?;
    }
    let printed = [
        (4, rat(1, 2), 3),
        (6, rat(5, 6), 4),
        (8, rat(7, 4), 5),
        (10, rat(21, 5), 6),
    ];
    for (mu, c, e) in printed {
        let got = table.get(0, &[mu]).unwrap();
        ensure(got == tm(c.clone(), e), || format!("F_0^({mu}) = {got}"))?;
    }
    Ok("m = 1..8".into())
}

fn c2_two_point() -> Outcome {
    let table = Correlators::new();
    let get = |a: usize, b: usize| table.get(0, &[a, b]).unwrap();
    for m in 0..=6u32 {
        let mu = 2 * m as usize;
        let want = tm(cat(m), m + 1);
        ensure(get(1, mu + 1) == want, || format!("F_0^(1,{})", mu + 1))?;
        if m >= 1 {
            let want = tm(cat(m) / int(2), m + 1);
            ensure(get(2, mu) == want, || {
                format!("F_0^(2,{mu}) = {}", get(2, mu))
            })?;
            let want = tm(cat(m) / int(3) + cat(m - 1) * rat(2, 3), m + 1);
            ensure(get(3, mu - 1) == want, || {
                format!("F_0^(3,{}) = {}", mu - 1, get(3, mu - 1))
            })?;
        }
    }
    Ok("m <= 6".into())
}

fn c3_oracle() -> Outcome {
    let table = Correlators::new();
    let mut shapes = 0;
    let mut ordered = 0;
    for lambda in partitions_up_to(12) {
        let size: usize = lambda.iter().sum();
        if lambda.len() > 4 || size % 2 == 1 {
            continue;
        }
        let oracle = oracle_all_genera(&lambda).map_err(|e| e.to_string())?;
        shapes += 1;
        let mut perms: Vec<Vec<usize>> = compositions(lambda.len(), size)
            .into_iter()
            .filter(|c| {
                let mut s = c.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s == lambda
            })
            .collect();
        perms.dedup();
        for mu in &perms {
            ordered += 1;
            for g in 0..=(size as i64 / 4 + 1) {
                let got = table.get(g, mu).map_err(|e| e.to_string())?;
                let want = oracle.get(&g).cloned().unwrap_or_default();
                ensure(got == want, || {
                    format!("g={g} mu={mu:?}: {got} vs oracle {want}")
                })?;
            }
        }
        for g in oracle.keys() {
            ensure(t_exponent(*g, &lambda).is_some(), || {
                format!("oracle has graphs at g={g} mu={lambda:?} outside the selection rule")
            })?;
        }
    }
    Ok(format!("{shapes} shapes, {ordered} ordered profiles"))
}

fn published_free_energy_terms() -> Vec<(i64, Vec<u32>, u32, Rat)> {
    vec![
        (0, vec![1, 1], 1, rat(1, 2)),
        (0, vec![1, 1, 2], 1, rat(1, 2)),
        (0, vec![1, 1, 2, 2], 1, rat(1, 2)),
        (0, vec![1, 1, 1, 3], 1, rat(1, 3)),
        (0, vec![2], 2, rat(1, 2)),
        (0, vec![2, 2], 2, rat(1, 4)),
        (0, vec![1, 3], 2, int(1)),
        (0, vec![2, 2, 2], 2, rat(1, 6)),
        (0, vec![4], 3, rat(1, 2)),
        (0, vec![3, 3], 3, rat(2, 3)),
        (0, vec![6], 4, rat(5, 6)),
        (0, vec![8], 5, rat(7, 4)),
        (1, vec![4], 1, rat(1, 4)),
        (1, vec![1, 5], 1, int(1)),
        (1, vec![2, 4], 1, rat(1, 2)),
        (1, vec![6], 2, rat(5, 3)),
    ]
}

fn c4_free_energy() -> Outcome {
    let table = Correlators::new();
    let f = [
        table.free_energy(0, 8).unwrap(),
        table.free_energy(1, 8).unwrap(),
    ];
    let terms = published_free_energy_terms();
    for (g, ks, e, c) in &terms {
        let mono = CouplingMonomial::new(ks.clone(), *e, 0);
        let got = f[*g as usize].coeff(&mono);
        ensure(&got == c, || {
            format!("F_{g}: coefficient of {mono} is {got}, printed {c}")
        })?;
    }
    Ok(format!("{} printed terms", terms.len()))
}

fn c5_abstract_recursion() -> Outcome {
    let r = verify_abstract_range(8, 3).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())?;
    let mut fs = AbstractCorrelators::new();
    // K_1 F_0^(4,1,1) as five explicit graph sums
    let lhs = contract_k1(&fs.get(0, &[4, 1, 1]).unwrap()).unwrap();
    let mut rhs = fs.get(0, &[3, 1]).unwrap().scale(&int(6));
    for (dot, labels) in [(2, [1, 3, 4]), (1, [2, 3, 4])] {
        let f = fs.labelled(0, &[2, 1, 1], &labels).unwrap();
        rhs = &rhs
            + &GraphSum::dot(dot)
                .disjoint_product(&f)
                .unwrap()
                .scale(&int(2));
    }
    for (a, b) in [([1, 3], [2, 4]), ([1, 4], [2, 3])] {
        let fa = fs.labelled(0, &[1, 1], &a).unwrap();
        rhs = &rhs
            + &fa
                .disjoint_product(&fs.labelled(0, &[1, 1], &b).unwrap())
                .unwrap();
    }
    ensure(lhs == rhs, || {
        "K_1 F_0^(4,1,1) differs from the five-term sum".into()
    })?;
    ensure(abstract_rhs(&mut fs, 0, &[4, 1, 1]).unwrap() == rhs, || {
        "recursion RHS differs from the five-term sum".into()
    })?;
    Ok(r.notes.join("; "))
}

fn c6_virasoro() -> Outcome {
    let table = Correlators::new();
    let reports = verify_virasoro(&table, 4, 6).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(r.passed(), || r.to_string())?;
    }
    Ok("m = -1..4 at D = 6".into())
}

fn c7_commutators() -> Outcome {
    let probes = coupling_probes(8, 6);
    let a = verify_commutators(4, &probes).map_err(|e| e.to_string())?;
    ensure(a.passed(), || a.to_string())?;
    let b = verify_heisenberg(6, &probes).map_err(|e| e.to_string())?;
    ensure(b.passed(), || b.to_string())?;
    Ok(format!("{} probes", probes.len()))
}

fn c8_cut_join() -> Outcome {
    let table = Correlators::new();
    let lhs = exp_m_vacuum(4);
    let z = table.partition_function(8).unwrap().at_gs_one();
    ensure(lhs == z, || format!("e^M(1) - Z = {}", &lhs - &z))?;
    // the weight <= 4 part against partition_function(4)
    let z4 = table.partition_function(4).unwrap().at_gs_one();
    ensure(lhs.truncate(4) == z4, || "weight <= 4 part differs".into())?;
    Ok(format!("{} monomials through weight 8", lhs.len()))
}

fn c9_npoint() -> Outcome {
    let table = Correlators::new();
    let w = w_recursion(0, 2, 6).map_err(|e| e.to_string())?;
    let mono = |a, b| XMono::new([(Var::x(1), a), (Var::x(2), b)]);
    let printed = [
        ((-2, -2), int(1), 1),
        ((-2, -4), int(3), 2),
        ((-4, -2), int(3), 2),
        ((-3, -3), int(2), 2),
        ((-2, -6), int(10), 3),
        ((-6, -2), int(10), 3),
        ((-3, -5), int(8), 3),
        ((-5, -3), int(8), 3),
        ((-4, -4), int(12), 3),
    ];
    for ((a, b), c, e) in printed {
        let got = w.coeff(&mono(a, b));
        ensure(got == tm(c.clone(), e), || {
            format!("W_0,2 at x1^{a} x2^{b}: {got}")
        })?;
    }
    ensure(w == w_from_correlators(&table, 0, 2, 6).unwrap(), || {
        "W_0,2 at K=6".into()
    })?;
    for k in [4, 7, 10] {
        let r = verify_npoint(&table, k).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    Ok("5 cells at K = 4, 7, 10".into())
}

fn c10_qsc() -> Outcome {
    let table = Correlators::new();
    let r = qsc_residual(&table, 3, 10).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())?;
    ensure(!r.notes.is_empty(), || {
        "shifted-form discrepancy not recorded".into()
    })?;
    Ok(r.notes.join("; "))
}

fn c11_spectral() -> Outcome {
    let table = Correlators::new();
    let a = spectral_curve_check(&table, 12).map_err(|e| e.to_string())?;
    ensure(a.passed(), || a.to_string())?;
    let b = y_squared_negative_part(&table, 4, 6).map_err(|e| e.to_string())?;
    ensure(b.passed(), || b.to_string())?;
    Ok("K = 12; D = 4, K = 6".into())
}

fn c12_scope() -> Outcome {
    Ok(
        "not computed: finite-N matrix integrals, KP tau-function status, \
        topological-recursion residues; covered through criteria 3, 5-11"
            .into(),
    )
}

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "Catalan one-point table", Some(1), c1_catalan_table),
        (2, "two-point closed forms", Some(1), c2_two_point),
        (3, "oracle equivalence", Some(60), c3_oracle),
        (4, "free-energy fixtures", None, c4_free_energy),
        (5, "abstract recursion", Some(30), c5_abstract_recursion),
        (6, "Virasoro constraints", Some(30), c6_virasoro),
        (7, "commutation relations", None, c7_commutators),
        (8, "cut-and-join", None, c8_cut_join),
        (9, "n-point fixtures", Some(60), c9_npoint),
        (10, "quantum spectral curve", None, c10_qsc),
        (11, "spectral geometry", None, c11_spectral),
        (12, "out-of-scope results", None, c12_scope),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if took > Duration::from_secs(secs) {
                outcome = Err(format!("took {took:.2?}, limit {secs} s"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
