use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::graphsum::GraphSum;
use crate::correlators::{compositions, partitions_up_to, Correlators};
use crate::error::{Error, Result};
use crate::exactalg::Rat;
use crate::report::Report;
use crate::ribbon::FatGraph;
use crate::TPoly;

const FREE: usize = usize::MAX;

/// Fixed vertex structure shared by every matching of a valence vector.
struct Shape {
    valences: Vec<usize>,
    sigma: Vec<usize>,
    owner: Vec<usize>,
    isolated: usize,
}

/// Face count, component count and genus of one matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingStats {
    pub faces: usize,
    pub components: usize,
    pub genus: i64,
}

impl Shape {
    fn new(valences: &[usize]) -> Self {
        let mut sigma = Vec::new();
        let mut owner = Vec::new();
        let mut off = 0;
        for (v, &m) in valences.iter().enumerate() {
            for p in 0..m {
                sigma.push(off + (p + 1) % m);
                owner.push(v);
            }
            off += m;
        }
        Self {
            valences: valences.to_vec(),
            sigma,
            owner,
            isolated: valences.iter().filter(|&&m| m == 0).count(),
        }
    }

    fn stats(&self, alpha: &[usize], seen: &mut [bool], parent: &mut [usize]) -> MatchingStats {
        let n = self.valences.len();
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = n;
        for (h, &a) in alpha.iter().enumerate() {
            if h < a {
                let x = find(parent, self.owner[h]);
                let y = find(parent, self.owner[a]);
                if x != y {
                    parent[x.max(y)] = x.min(y);
                    components -= 1;
                }
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut faces = self.isolated;
        for start in 0..alpha.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.sigma[alpha[h]];
            }
        }
        let v = n as i64;
        let e = (alpha.len() / 2) as i64;
        let k = components as i64;
        // Σ_i (2 - V_i + E_i - F_i)/2 - k + 1
        let genus = (2 * k - v + e - faces as i64) / 2 - k + 1;
        MatchingStats {
            faces,
            components,
            genus,
        }
    }
}

fn check_valences(mu: &[usize]) -> Result<()> {
    if mu.is_empty() {
        return Err(Error::InvalidArgument("empty valence vector".into()));
    }
    if mu.len() > 1 && mu.contains(&0) {
        return Err(Error::ZeroValenceInside);
    }
    Ok(())
}

fn backtrack(alpha: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let Some(i) = alpha.iter().position(|&a| a == FREE) else {
        visit(alpha);
        return;
    };
    for j in i + 1..alpha.len() {
        if alpha[j] == FREE {
            alpha[i] = j;
            alpha[j] = i;
            backtrack(alpha, visit);
            alpha[i] = FREE;
            alpha[j] = FREE;
        }
    }
}

/// Visits every fixed-point-free involution on the half-edges of `mu`
/// together with its statistics. Work is split on the partner of half-edge
/// 1; each part folds into its own accumulator.
pub fn fold_matchings<T, I, F>(mu: &[usize], init: I, visit: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[usize], MatchingStats) + Sync,
{
    let shape = Shape::new(mu);
    let h: usize = mu.iter().sum();
    if h % 2 == 1 {
        return Vec::new();
    }
    let run = |first: Option<usize>| {
        let mut acc = init();
        let mut alpha = vec![FREE; h];
        if let Some(p) = first {
            alpha[0] = p;
            alpha[p] = 0;
        }
        let mut seen = vec![false; h];
        let mut parent = vec![0; mu.len()];
        backtrack(&mut alpha, &mut |a| {
            let st = shape.stats(a, &mut seen, &mut parent);
            visit(&mut acc, a, st);
        });
        acc
    };
    if h == 0 {
        vec![run(None)]
    } else {
        (1..h).into_par_iter().map(|p| run(Some(p))).collect()
    }
}

/// Connected genus-`g` fat graphs of valence profile `mu`, each with
/// coefficient `1/|Aut|`.
pub fn enumerate(g: i64, mu: &[usize]) -> Result<GraphSum> {
    check_valences(mu)?;
    let parts = fold_matchings(mu, BTreeSet::new, |acc, alpha, st| {
        if st.components == 1 && st.genus == g {
            let graph = FatGraph::new(mu.to_vec(), alpha.to_vec()).unwrap();
            acc.insert(graph.canonical());
        }
    });
    let classes: BTreeSet<FatGraph> = parts.into_iter().flatten().collect();
    let mut out = GraphSum::zero();
    for graph in classes {
        let aut = graph.aut_order();
        out.insert_canonical(graph, Rat::new(BigInt::from(1), BigInt::from(aut)));
    }
    Ok(out)
}

/// Brute-force correlators for every genus at once: connected matchings
/// weighted by `t^faces`, divided by the size of the rotation group.
pub fn oracle_all_genera(mu: &[usize]) -> Result<BTreeMap<i64, TPoly>> {
    check_valences(mu)?;
    let parts = fold_matchings(mu, BTreeMap::<(i64, usize), u64>::new, |acc, _, st| {
        if st.components == 1 {
            *acc.entry((st.genus, st.faces)).or_insert(0) += 1;
        }
    });
    let mut counts: BTreeMap<(i64, usize), u64> = BTreeMap::new();
    for part in parts {
        for (k, c) in part {
            *counts.entry(k).or_insert(0) += c;
        }
    }
    let group: u64 = mu.iter().map(|&m| m.max(1) as u64).product();
    let mut out: BTreeMap<i64, TPoly> = BTreeMap::new();
    for ((genus, faces), c) in counts {
        let coeff = Rat::new(BigInt::from(c), BigInt::from(group));
        out.entry(genus).or_default().add_term(faces as u32, coeff);
    }
    Ok(out)
}

/// Independent oracle for `F_g^mu(t)`.
pub fn oracle_correlator(g: i64, mu: &[usize]) -> Result<TPoly> {
    Ok(oracle_all_genera(mu)?.remove(&g).unwrap_or_default())
}

/// Recursion against brute force for every ordered profile with
/// `|mu| <= max_size` and at most `max_n` entries, all genera.
pub fn verify_oracle(table: &Correlators, max_size: usize, max_n: usize) -> Result<Report> {
    let mut report = Report::new("oracle")
        .param("max_weight", max_size)
        .param("max_n", max_n);
    for lambda in partitions_up_to(max_size) {
        let size: usize = lambda.iter().sum();
        if lambda.len() > max_n || size % 2 == 1 {
            continue;
        }
        let oracle = oracle_all_genera(&lambda)?;
        for mu in compositions(lambda.len(), size) {
            let mut sorted = mu.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted != lambda {
                continue;
            }
            for g in 0..=(size as i64 / 4 + 1) {
                let got = table.get(g, &mu)?;
                let want = oracle.get(&g).cloned().unwrap_or_default();
                if got != want {
                    report.violation(format!("g={g} mu={mu:?}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(report)
}

/// `Σ coeff · t^faces` over the classes of a graph sum.
pub fn graph_sum_to_tpoly(s: &GraphSum) -> TPoly {
    let mut out = TPoly::zero();
    for (g, c) in s.terms() {
        out.add_term(g.face_count() as u32, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn small_enumerations() {
        let s = enumerate(0, &[2]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms().next().unwrap().1, &rat(1, 2));

        let s = enumerate(0, &[6]).unwrap();
        let mut coeffs: Vec<Rat> = s.terms().map(|(_, c)| c.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![rat(1, 3), rat(1, 2)]);

        assert!(enumerate(1, &[2]).unwrap().is_empty());
        assert!(enumerate(0, &[3]).unwrap().is_empty());
        assert!(enumerate(0, &[2, 0]).is_err());
    }

    #[test]
    fn dot_is_the_genus_zero_single_vertex() {
        let s = enumerate(0, &[0]).unwrap();
        assert_eq!(s, GraphSum::dot(1));
        assert_eq!(oracle_correlator(0, &[0]).unwrap(), TPoly::t());
    }

    #[test]
    fn oracle_values() {
        assert_eq!(
            oracle_correlator(0, &[4]).unwrap(),
            TPoly::monomial(rat(1, 2), 3)
        );
        assert_eq!(
            oracle_correlator(1, &[4]).unwrap(),
            TPoly::monomial(rat(1, 4), 1)
        );
        assert_eq!(
            oracle_correlator(0, &[3, 3]).unwrap(),
            TPoly::monomial(rat(4, 3), 3)
        );
    }

    #[test]
    fn matching_stats_agree_with_fat_graph() {
        fold_matchings(
            &[3, 2, 1],
            || (),
            |_, alpha, st| {
                let g = FatGraph::new(vec![3, 2, 1], alpha.to_vec()).unwrap();
                assert_eq!(st.faces, g.face_count());
                assert_eq!(st.components, g.components().len());
                assert_eq!(st.genus, g.genus());
            },
        );
    }
}
