//! Hermitian one-matrix-model correlators `F_g^mu(t)` from the quadratic
//! recursion, and the free energies and partition function built from them.

mod cache;

use std::collections::HashMap;
use std::sync::RwLock;

pub use cache::{CacheEntry, CacheFile, CacheLock, CACHE_VERSION};

use crate::error::{Error, Result};
use crate::exactalg::{factorial, int, CouplingMonomial};
use crate::{CouplingSeries, Rat, TPoly};

/// Genus and valence vector sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    pub g: i64,
    pub mu: Vec<usize>,
}

impl CorrelatorKey {
    pub fn new(g: i64, mu: &[usize]) -> Self {
        let mut mu = mu.to_vec();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        Self { g, mu }
    }
}

/// Exponent of `t` allowed by the selection rule, if any.
pub fn t_exponent(g: i64, mu: &[usize]) -> Option<u32> {
    let total: usize = mu.iter().sum();
    if total % 2 == 1 {
        return None;
    }
    let e = 2 - 2 * g - mu.len() as i64 + (total / 2) as i64;
    (e >= 1).then_some(e as u32)
}

/// Memoized solver for the correlator recursion. Safe to share between
/// threads: lookups take a read lock, insertions a short write lock.
#[derive(Default)]
pub struct Correlators {
    memo: RwLock<HashMap<CorrelatorKey, TPoly>>,
}

impl Correlators {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All memoized values, sorted by key.
    pub fn entries(&self) -> Vec<(CorrelatorKey, TPoly)> {
        let mut out: Vec<_> = self
            .memo
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn insert(&self, key: CorrelatorKey, value: TPoly) {
        self.memo.write().unwrap().insert(key, value);
    }

    /// `F_g^mu(t)`.
    pub fn get(&self, g: i64, mu: &[usize]) -> Result<TPoly> {
        if mu.is_empty() {
            return Err(Error::InvalidArgument("empty valence vector".into()));
        }
        if mu.len() > 1 && mu.contains(&0) {
            return Err(Error::ZeroValenceInside);
        }
        if g < 0 {
            return Ok(TPoly::zero());
        }
        if mu == [0] {
            return Ok(if g == 0 { TPoly::t() } else { TPoly::zero() });
        }
        if t_exponent(g, mu).is_none() {
            return Ok(TPoly::zero());
        }
        let key = CorrelatorKey::new(g, mu);
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let value = self.solve(g, &key.mu)?;
        self.insert(key, value.clone());
        Ok(value)
    }

    /// One step of the recursion with the largest entry in front.
    fn solve(&self, g: i64, mu: &[usize]) -> Result<TPoly> {
        let n = mu.len();
        let m1 = mu[0];
        let rest = &mu[1..];
        let t = TPoly::t();
        let mut sum = TPoly::zero();

        for j in 1..n {
            let s = m1 + mu[j] - 2;
            if s > 0 {
                let mut v = vec![s];
                v.extend((1..n).filter(|&i| i != j).map(|i| mu[i]));
                sum = &sum + &self.get(g, &v)?.scale(&int(s as i64));
            } else if n == 2 && g == 0 {
                sum = &sum + &t;
            }
        }

        if m1 >= 4 {
            for a in 1..m1 - 2 {
                let b = m1 - 2 - a;
                let w = int((a * b) as i64);
                let mut v = vec![a, b];
                v.extend(rest);
                let mut inner = self.get(g - 1, &v)?;
                for mask in 0u32..(1 << rest.len()) {
                    let mut mu_i = vec![a];
                    let mut mu_j = vec![b];
                    for (p, &m) in rest.iter().enumerate() {
                        if mask >> p & 1 == 1 {
                            mu_i.push(m);
                        } else {
                            mu_j.push(m);
                        }
                    }
                    for g1 in 0..=g {
                        let left = self.get(g1, &mu_i)?;
                        if left.is_zero() {
                            continue;
                        }
                        inner = &inner + &(&left * &self.get(g - g1, &mu_j)?);
                    }
                }
                sum = &sum + &inner.scale(&w);
            }
        }

        if m1 >= 3 {
            let mut v = vec![m1 - 2];
            v.extend(rest);
            let w = int(2 * (m1 as i64 - 2));
            sum = &sum + &(&t * &self.get(g, &v)?).scale(&w);
        }

        if n == 1 && g == 0 && m1 == 2 {
            sum = &sum + &TPoly::monomial(int(1), 2);
        }
        Ok(sum.scale(&(int(1) / int(m1 as i64))))
    }

    /// `F_g` as a coupling series: every partition `lambda` with
    /// `|lambda| <= d` contributes `F_g^lambda g_lambda / prod m_j!`.
    pub fn free_energy(&self, g: i64, d: u32) -> Result<CouplingSeries> {
        let mut out = CouplingSeries::zero(d as i64);
        for lambda in partitions_up_to(d as usize) {
            if t_exponent(g, &lambda).is_none() {
                continue;
            }
            let f = self.get(g, &lambda)?;
            let mut sym = int(1);
            let mut i = 0;
            while i < lambda.len() {
                let m = lambda.iter().filter(|&&x| x == lambda[i]).count();
                sym *= factorial::<Rat>(m as u32);
                i += m;
            }
            let couplings: Vec<u32> = lambda.iter().map(|&k| k as u32).collect();
            for (e, c) in f.terms() {
                out.add_term(CouplingMonomial::new(couplings.clone(), e, 0), c / &sym);
            }
        }
        Ok(out)
    }

    /// `exp(Σ_g gs^{2g-2} F_g)` truncated at weight `d`.
    pub fn partition_function(&self, d: u32) -> Result<CouplingSeries> {
        let mut log = CouplingSeries::zero(d as i64);
        for g in 0..=(d as i64 / 4) {
            let f = self.free_energy(g, d)?;
            log = &log + &f.mul_monomial(&CouplingMonomial::gs(2 * g as i32 - 2), &int(1));
        }
        log.exp()
    }
}

/// Ordered tuples of `n` positive integers with sum at most `max_sum`.
pub fn compositions(n: usize, max_sum: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let slots = n - cur.len() - 1;
        for a in 1..=left.saturating_sub(slots) {
            cur.push(a);
            go(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 && max_sum >= n {
        go(n, max_sum, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions (parts sorted decreasingly) of every size from 1 to `d`.
pub fn partitions_up_to(d: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// `F_g^mu(t)` from a fresh table.
pub fn correlator(g: i64, mu: &[usize]) -> Result<TPoly> {
    Correlators::new().get(g, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(1, 3), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(compositions(2, 3).len(), 3);
        assert!(compositions(3, 2).is_empty());
        // C(k, n) tuples with sum <= k
        assert_eq!(compositions(3, 7).len(), 35);
    }

    fn mono(c: Rat, e: u32) -> TPoly {
        TPoly::monomial(c, e)
    }

    #[test]
    fn examples() {
        let c = Correlators::new();
        assert_eq!(c.get(0, &[10]).unwrap(), mono(rat(21, 5), 6));
        assert_eq!(c.get(0, &[2, 6]).unwrap(), mono(rat(5, 2), 4));
        assert_eq!(c.get(1, &[6]).unwrap(), mono(rat(5, 3), 2));
        assert_eq!(c.get(0, &[1, 1]).unwrap(), TPoly::t());
        assert_eq!(c.get(0, &[3, 1]).unwrap(), mono(rat(1, 1), 2));
        assert_eq!(c.get(-1, &[4]).unwrap(), TPoly::zero());
        assert!(matches!(c.get(0, &[2, 0]), Err(Error::ZeroValenceInside)));
    }

    #[test]
    fn partitions_count() {
        // p(1)+...+p(6) = 1+2+3+5+7+11
        assert_eq!(partitions_up_to(6).len(), 29);
    }

    #[test]
    fn free_energy_small() {
        let c = Correlators::new();
        let f0 = c.free_energy(0, 4).unwrap();
        let g = |ks: Vec<u32>, e| CouplingMonomial::new(ks, e, 0);
        assert_eq!(f0.coeff(&g(vec![1, 1], 1)), rat(1, 2));
        assert_eq!(f0.coeff(&g(vec![2], 2)), rat(1, 2));
        assert_eq!(f0.coeff(&g(vec![2, 2], 2)), rat(1, 4));
        assert_eq!(f0.coeff(&g(vec![1, 3], 2)), rat(1, 1));
        let f1 = c.free_energy(1, 4).unwrap();
        assert_eq!(f1.coeff(&g(vec![4], 1)), rat(1, 4));
        assert!(c.free_energy(2, 2).unwrap().is_zero());
    }

    #[test]
    fn partition_function_small() {
        let c = Correlators::new();
        assert_eq!(c.partition_function(0).unwrap(), CouplingSeries::one(0));
        let z = c.partition_function(4).unwrap();
        assert_eq!(
            z.coeff(&CouplingMonomial::new(vec![1, 1], 1, -2)),
            rat(1, 2)
        );
        assert_eq!(
            z.coeff(&CouplingMonomial::new(vec![1, 1, 1, 1], 2, -4)),
            rat(1, 8)
        );
    }
}
