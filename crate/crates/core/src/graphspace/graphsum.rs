use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::Rat;
use crate::ribbon::FatGraph;

/// Finite formal combination of fat graphs, keyed by canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSum {
    terms: BTreeMap<FatGraph, Rat>,
}

impl GraphSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: FatGraph, c: Rat) -> Self {
        let mut s = Self::zero();
        s.add_term(g, c);
        s
    }

    /// The valence-0 vertex with the given label, coefficient 1.
    pub fn dot(label: u32) -> Self {
        Self::single(FatGraph::dot(label), Rat::one())
    }

    pub fn add_term(&mut self, g: FatGraph, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = g.canonical();
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Inserts a graph already known to be canonical.
    pub(crate) fn insert_canonical(&mut self, g: FatGraph, c: Rat) {
        self.terms.insert(g, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FatGraph, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &FatGraph) -> Rat {
        self.terms
            .get(&g.canonical())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    /// Product by disjoint union. Labels of the two factors must be disjoint.
    pub fn disjoint_product(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.disjoint_union(b)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Replaces the labels of every graph, in vertex order, by `labels`
    /// (sorted increasingly first).
    pub fn relabel(&self, labels: &[u32]) -> Result<Self> {
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            if g.n_vertices() != sorted.len() {
                return Err(Error::LabelMismatch(format!(
                    "{} labels for a graph with {} vertices",
                    sorted.len(),
                    g.n_vertices()
                )));
            }
            out.add_term(g.relabel(&sorted)?, c.clone());
        }
        Ok(out)
    }
}

impl Add for &GraphSum {
    type Output = GraphSum;
    fn add(self, rhs: Self) -> GraphSum {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

impl Add for GraphSum {
    type Output = GraphSum;
    fn add(self, rhs: Self) -> GraphSum {
        &self + &rhs
    }
}

impl Sub for &GraphSum {
    type Output = GraphSum;
    fn sub(self, rhs: Self) -> GraphSum {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), -c.clone());
        }
        out
    }
}

impl fmt::Display for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} [{g}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn terms_merge_by_isomorphism_class() {
        let a: FatGraph = "n=1; mu=4; alpha=(1 4)(2 3)".parse().unwrap();
        let b: FatGraph = "n=1; mu=4; alpha=(1 2)(3 4)".parse().unwrap();
        let mut s = GraphSum::single(a, rat(1, 2));
        s.add_term(b, rat(1, 2));
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms().next().unwrap().1, &rat(1, 1));
    }

    #[test]
    fn relabel_composes() {
        let s: GraphSum = GraphSum::single("n=2; mu=1,1; alpha=(1 2)".parse().unwrap(), rat(1, 1));
        let once = s.relabel(&[1, 3]).unwrap();
        assert_eq!(once.terms().next().unwrap().0.labels(), &[1, 3]);
        assert_eq!(once.relabel(&[1, 2]).unwrap(), s);
        assert_eq!(s.relabel(&[1, 2]).unwrap(), s);
        assert!(s.relabel(&[1]).is_err());
    }
}
