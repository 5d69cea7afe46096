use std::collections::HashMap;

use super::contract::contract_k1;
use super::enumerate::enumerate;
use super::graphsum::GraphSum;
use crate::correlators::{compositions, t_exponent};
use crate::error::Result;
use crate::exactalg::int;
use crate::report::Report;

/// Memoized `F_{g,I}^mu` as labelled graph sums.
#[derive(Default)]
pub struct AbstractCorrelators {
    memo: HashMap<(i64, Vec<usize>), GraphSum>,
}

impl AbstractCorrelators {
    pub fn new() -> Self {
        Self::default()
    }

    /// `F_g^mu` with labels `1..n`; `mu = (0)` is the dot at genus 0.
    pub fn get(&mut self, g: i64, mu: &[usize]) -> Result<GraphSum> {
        if g < 0 {
            return Ok(GraphSum::zero());
        }
        let key = (g, mu.to_vec());
        if let Some(s) = self.memo.get(&key) {
            return Ok(s.clone());
        }
        let s = enumerate(g, mu)?;
        self.memo.insert(key, s.clone());
        Ok(s)
    }

    /// `F_{g,I}^mu`.
    pub fn labelled(&mut self, g: i64, mu: &[usize], labels: &[u32]) -> Result<GraphSum> {
        self.get(g, mu)?.relabel(labels)
    }
}

/// The right-hand side of the quadratic recursion for `K_1 F_g^mu`.
pub fn abstract_rhs(fs: &mut AbstractCorrelators, g: i64, mu: &[usize]) -> Result<GraphSum> {
    let n = mu.len();
    let m1 = mu[0];
    let rest = &mu[1..];
    let mut out = GraphSum::zero();
    let dot = |k: u32| GraphSum::dot(k);
    let range = |lo: u32, hi: u32| (lo..=hi).collect::<Vec<u32>>();

    if g == 0 && n == 1 && m1 == 2 {
        out = &out + &dot(1).disjoint_product(&dot(2))?;
    }

    for j in 1..n {
        let s = m1 + mu[j] - 2;
        let others: Vec<usize> = (1..n).filter(|&i| i != j).map(|i| mu[i]).collect();
        if s > 0 {
            let mut v = vec![s];
            v.extend(&others);
            out = &out + &fs.get(g, &v)?.scale(&int(s as i64));
        } else if n == 2 && g == 0 {
            // the contracted dumbbell is the dot itself
            out = &out + &dot(1);
        }
    }

    if m1 >= 4 {
        for a in 1..m1 - 2 {
            let b = m1 - 2 - a;
            let w = int((a * b) as i64);
            let mut v = vec![a, b];
            v.extend(rest);
            out = &out + &fs.get(g - 1, &v)?.scale(&w);
            // every split of positions 2..n into I and J
            for mask in 0u32..(1 << rest.len()) {
                let mut mu_i = vec![a];
                let mut mu_j = vec![b];
                let mut lab_i = vec![1u32];
                let mut lab_j = vec![2u32];
                for (p, &m) in rest.iter().enumerate() {
                    let label = p as u32 + 3;
                    if mask >> p & 1 == 1 {
                        mu_i.push(m);
                        lab_i.push(label);
                    } else {
                        mu_j.push(m);
                        lab_j.push(label);
                    }
                }
                for g1 in 0..=g {
                    let left = fs.labelled(g1, &mu_i, &lab_i)?;
                    if left.is_empty() {
                        continue;
                    }
                    let right = fs.labelled(g - g1, &mu_j, &lab_j)?;
                    out = &out + &left.disjoint_product(&right)?.scale(&w);
                }
            }
        }
    }

    if m1 >= 3 {
        let w = int(m1 as i64 - 2);
        let mut v = vec![m1 - 2];
        v.extend(rest);
        let top = n as u32 + 1;
        let without_1: Vec<u32> = range(2, top);
        let without_2: Vec<u32> = std::iter::once(1).chain(range(3, top)).collect();
        let a = fs.labelled(g, &v, &without_1)?;
        out = &out + &dot(1).disjoint_product(&a)?.scale(&w);
        let b = fs.labelled(g, &v, &without_2)?;
        out = &out + &dot(2).disjoint_product(&b)?.scale(&w);
    }
    Ok(out)
}

/// Compares `K_1 F_g^mu` with the recursion's right-hand side graph by graph.
pub fn verify_abstract_recursion(
    fs: &mut AbstractCorrelators,
    g: i64,
    mu: &[usize],
) -> Result<Report> {
    let mu_json: Vec<u64> = mu.iter().map(|&m| m as u64).collect();
    let mut report = Report::new("abstract-rec")
        .param("g", g)
        .param("mu", mu_json);
    let lhs = contract_k1(&fs.get(g, mu)?)?;
    let rhs = abstract_rhs(fs, g, mu)?;
    let diff = &lhs - &rhs;
    for (graph, c) in diff.terms() {
        report.violation(format!("LHS - RHS has {c} [{graph}]"));
    }
    Ok(report)
}

/// [`verify_abstract_recursion`] over every ordered profile with
/// `|mu| <= max_size`, at most `max_n` entries, and every genus allowed by
/// the selection rule.
pub fn verify_abstract_range(max_size: usize, max_n: usize) -> Result<Report> {
    let mut report = Report::new("abstract-rec")
        .param("max_weight", max_size)
        .param("max_n", max_n);
    let mut fs = AbstractCorrelators::new();
    let mut cases = 0;
    for n in 1..=max_n {
        for mu in compositions(n, max_size) {
            let size: usize = mu.iter().sum();
            for g in 0..=(size as i64 / 4) {
                if t_exponent(g, &mu).is_none() {
                    continue;
                }
                cases += 1;
                for v in verify_abstract_recursion(&mut fs, g, &mu)?.violations {
                    report.violation(format!("g={g} mu={mu:?}: {v}"));
                }
            }
        }
    }
    report.note(format!("{cases} cases"));
    Ok(report)
}
