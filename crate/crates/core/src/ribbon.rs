//! Fat graphs as a pair of permutations on half-edges.
//!
//! Vertex `i` owns the contiguous block of half-edges
//! `offset(i) .. offset(i) + valence(i)`, traversed cyclically by `sigma`.
//! `alpha` pairs half-edges into edges. Vertices carry positive labels,
//! stored in increasing order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FatGraph {
    labels: Vec<u32>,
    valences: Vec<usize>,
    alpha: Vec<usize>,
}

impl FatGraph {
    /// Builds a graph with labels `1..=n`. `alpha` is 0-based.
    pub fn new(valences: Vec<usize>, alpha: Vec<usize>) -> Result<Self> {
        let labels = (1..=valences.len() as u32).collect();
        Self::with_labels(labels, valences, alpha)
    }

    pub fn with_labels(labels: Vec<u32>, valences: Vec<usize>, alpha: Vec<usize>) -> Result<Self> {
        if labels.len() != valences.len() {
            return Err(Error::LabelMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                valences.len()
            )));
        }
        if labels.is_empty() {
            return Err(Error::InvalidArgument("a fat graph needs a vertex".into()));
        }
        if labels[0] == 0 || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::LabelMismatch(format!(
                "labels must be positive and increasing, got {labels:?}"
            )));
        }
        let h: usize = valences.iter().sum();
        if h % 2 == 1 {
            return Err(Error::OddHalfEdges(h));
        }
        if alpha.len() != h {
            return Err(Error::InvalidInvolution(format!(
                "expected {h} entries, got {}",
                alpha.len()
            )));
        }
        for (i, &a) in alpha.iter().enumerate() {
            if a >= h || a == i || alpha[a] != i {
                return Err(Error::InvalidInvolution(format!(
                    "half-edge {} maps to {}",
                    i + 1,
                    a + 1
                )));
            }
        }
        Ok(Self {
            labels,
            valences,
            alpha,
        })
    }

    /// The lone valence-0 vertex.
    pub fn dot(label: u32) -> Self {
        Self::with_labels(vec![label], vec![0], vec![]).unwrap()
    }

    pub fn n_vertices(&self) -> usize {
        self.valences.len()
    }

    pub fn n_half_edges(&self) -> usize {
        self.alpha.len()
    }

    pub fn n_edges(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn valences(&self) -> &[usize] {
        &self.valences
    }

    pub fn alpha_word(&self) -> &[usize] {
        &self.alpha
    }

    pub fn alpha(&self, h: usize) -> usize {
        self.alpha[h]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.valences[..v].iter().sum()
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        let mut acc = 0;
        for (v, &m) in self.valences.iter().enumerate() {
            acc += m;
            if h < acc {
                return v;
            }
        }
        panic!("half-edge {h} out of range");
    }

    /// Next half-edge around the same vertex.
    pub fn sigma(&self, h: usize) -> usize {
        let v = self.vertex_of(h);
        let off = self.offset(v);
        off + (h - off + 1) % self.valences[v]
    }

    fn sigma_table(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.alpha.len());
        let mut off = 0;
        for &m in &self.valences {
            for p in 0..m {
                out.push(off + (p + 1) % m);
            }
            off += m;
        }
        out
    }

    /// Face cycles: orbits of `sigma ∘ alpha`, plus an empty cycle for each
    /// valence-0 vertex.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let sigma = self.sigma_table();
        let mut seen = vec![false; self.alpha.len()];
        let mut out = Vec::new();
        for start in 0..self.alpha.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = sigma[self.alpha[h]];
            }
            out.push(cycle);
        }
        out.extend(
            self.valences
                .iter()
                .filter(|&&m| m == 0)
                .map(|_| Vec::new()),
        );
        out
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// Vertex index for each vertex's component root, and component count.
    fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.valences.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let owner: Vec<usize> = (0..self.alpha.len()).map(|h| self.vertex_of(h)).collect();
        for h in 0..self.alpha.len() {
            let a = find(&mut parent, owner[h]);
            let b = find(&mut parent, owner[self.alpha[h]]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            let r = find(&mut parent, v);
            if ids[r] == usize::MAX {
                ids[r] = count;
                count += 1;
            }
            ids[v] = ids[r];
        }
        (ids, count)
    }

    /// Connected components as lists of vertex indices, in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (ids, count) = self.component_ids();
        let mut out = vec![Vec::new(); count];
        for (v, &c) in ids.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().1 == 1
    }

    /// Genus of each component.
    pub fn component_genera(&self) -> Vec<i64> {
        let (ids, count) = self.component_ids();
        let mut edges = vec![0i64; count];
        for h in 0..self.alpha.len() {
            if h < self.alpha[h] {
                edges[ids[self.vertex_of(h)]] += 1;
            }
        }
        let mut faces = vec![0i64; count];
        for cycle in self.faces().iter().filter(|c| !c.is_empty()) {
            faces[ids[self.vertex_of(cycle[0])]] += 1;
        }
        let mut verts = vec![0i64; count];
        for v in 0..self.valences.len() {
            verts[ids[v]] += 1;
            if self.valences[v] == 0 {
                faces[ids[v]] += 1;
            }
        }
        (0..count)
            .map(|c| {
                let twice = 2 - verts[c] + edges[c] - faces[c];
                debug_assert!(twice >= 0 && twice % 2 == 0, "inconsistent Euler count");
                twice / 2
            })
            .collect()
    }

    /// Genus; for `k` components this is `Σ g_i - k + 1`, which is negative
    /// for some disconnected graphs.
    pub fn genus(&self) -> i64 {
        let gs = self.component_genera();
        gs.iter().sum::<i64>() - gs.len() as i64 + 1
    }

    /// Applies a rotation `r[i]` to each vertex block: the half-edge at
    /// position `p` moves to position `p + r[i]`.
    pub fn rotate(&self, r: &[usize]) -> Self {
        let rho = self.rotation_map(r);
        let mut alpha = vec![0; self.alpha.len()];
        for h in 0..self.alpha.len() {
            alpha[rho[h]] = rho[self.alpha[h]];
        }
        Self {
            labels: self.labels.clone(),
            valences: self.valences.clone(),
            alpha,
        }
    }

    fn rotation_map(&self, r: &[usize]) -> Vec<usize> {
        let mut rho = Vec::with_capacity(self.alpha.len());
        let mut off = 0;
        for (i, &m) in self.valences.iter().enumerate() {
            for p in 0..m {
                rho.push(off + (p + r[i]) % m);
            }
            off += m;
        }
        rho
    }

    /// Minimal alpha word over the rotation group and the stabilizer size.
    fn orbit_scan(&self) -> (Vec<usize>, u64) {
        let n = self.valences.len();
        let mut r = vec![0usize; n];
        let mut best = self.alpha.clone();
        let mut stab = 0u64;
        let mut word = vec![0usize; self.alpha.len()];
        loop {
            let rho = self.rotation_map(&r);
            for h in 0..self.alpha.len() {
                word[rho[h]] = rho[self.alpha[h]];
            }
            if word == self.alpha {
                stab += 1;
            }
            if word < best {
                best.clone_from(&word);
            }
            // advance the mixed-radix counter
            let mut i = 0;
            loop {
                if i == n {
                    return (best, stab);
                }
                if self.valences[i] > 1 {
                    r[i] += 1;
                    if r[i] < self.valences[i] {
                        break;
                    }
                    r[i] = 0;
                }
                i += 1;
            }
        }
    }

    /// Representative of the isomorphism class: same labels and valences,
    /// lexicographically minimal alpha over all block rotations.
    pub fn canonical(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            valences: self.valences.clone(),
            alpha: self.orbit_scan().0,
        }
    }

    /// Byte encoding of the canonical form.
    pub fn canonical_encoding(&self) -> Vec<u8> {
        let c = self.canonical();
        let mut out = Vec::new();
        for part in [
            std::slice::from_ref(&(c.labels.len() as u32)),
            &c.labels[..],
        ] {
            for x in part {
                out.extend_from_slice(&x.to_be_bytes());
            }
        }
        for x in c.valences.iter().chain(c.alpha.iter()) {
            out.extend_from_slice(&(*x as u32).to_be_bytes());
        }
        out
    }

    pub fn aut_order(&self) -> u64 {
        self.orbit_scan().1
    }

    /// Replaces the labels, keeping vertex order.
    pub fn relabel(&self, labels: &[u32]) -> Result<Self> {
        Self::with_labels(labels.to_vec(), self.valences.clone(), self.alpha.clone())
    }

    /// Disjoint union; vertex labels must not collide.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let mut verts: Vec<(u32, &Self, usize)> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, self, i))
            .chain(other.labels.iter().enumerate().map(|(i, &l)| (l, other, i)))
            .collect();
        verts.sort_by_key(|v| v.0);
        if verts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::LabelMismatch(format!(
                "labels {:?} and {:?} overlap",
                self.labels, other.labels
            )));
        }
        // new position of every half-edge of each source graph
        let mut map_self = vec![0; self.alpha.len()];
        let mut map_other = vec![0; other.alpha.len()];
        let mut off = 0;
        for &(_, g, i) in &verts {
            let src = g.offset(i);
            let map = if std::ptr::eq(g, self) {
                &mut map_self
            } else {
                &mut map_other
            };
            for p in 0..g.valences[i] {
                map[src + p] = off + p;
            }
            off += g.valences[i];
        }
        let mut alpha = vec![0; off];
        for h in 0..self.alpha.len() {
            alpha[map_self[h]] = map_self[self.alpha[h]];
        }
        for h in 0..other.alpha.len() {
            alpha[map_other[h]] = map_other[other.alpha[h]];
        }
        Self::with_labels(
            verts.iter().map(|v| v.0).collect(),
            verts.iter().map(|v| v.1.valences[v.2]).collect(),
            alpha,
        )
    }

    /// `alpha` in 1-based cycle notation, e.g. `(1 4)(2 5)(3 6)`.
    pub fn alpha_cycles(&self) -> String {
        let mut s = String::new();
        for (h, &a) in self.alpha.iter().enumerate() {
            if h < a {
                s.push_str(&format!("({} {})", h + 1, a + 1));
            }
        }
        s
    }
}

impl fmt::Display for FatGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: Vec<String>| xs.join(",");
        write!(
            f,
            "n={}; mu={}; alpha={}",
            self.valences.len(),
            join(self.valences.iter().map(|m| m.to_string()).collect()),
            self.alpha_cycles()
        )?;
        let default: Vec<u32> = (1..=self.labels.len() as u32).collect();
        if self.labels != default {
            write!(
                f,
                "; labels={}",
                join(self.labels.iter().map(|l| l.to_string()).collect())
            )?;
        }
        Ok(())
    }
}

impl FromStr for FatGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let mut n = None;
        let mut mu = None;
        let mut alpha_text = None;
        let mut labels = None;
        for field in s.split(';') {
            let (key, value) = field.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let value = value.trim();
            let list = |v: &str| -> Result<Vec<u64>> {
                v.split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| bad("bad integer")))
                    .collect()
            };
            match key.trim() {
                "n" => n = Some(value.parse::<usize>().map_err(|_| bad("bad n"))?),
                "mu" => mu = Some(list(value)?),
                "alpha" => alpha_text = Some(value.to_string()),
                "labels" => labels = Some(list(value)?),
                _ => return Err(bad("unknown field")),
            }
        }
        let mu: Vec<usize> = mu
            .ok_or_else(|| bad("missing mu"))?
            .into_iter()
            .map(|m| m as usize)
            .collect();
        if n != Some(mu.len()) {
            return Err(bad("n does not match mu"));
        }
        let h: usize = mu.iter().sum();
        let mut alpha = vec![usize::MAX; h];
        let text = alpha_text.ok_or_else(|| bad("missing alpha"))?;
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let body = rest_trim
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('"))?;
            let (pair, after) = body.split_once(')').ok_or_else(|| bad("expected ')'"))?;
            let ends: Vec<usize> = pair
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| bad("bad half-edge")))
                .collect::<Result<_>>()?;
            if ends.len() != 2 || ends.iter().any(|&e| e == 0 || e > h) {
                return Err(bad("bad transposition"));
            }
            let (a, b) = (ends[0] - 1, ends[1] - 1);
            if alpha[a] != usize::MAX || alpha[b] != usize::MAX {
                return Err(bad("half-edge used twice"));
            }
            alpha[a] = b;
            alpha[b] = a;
            rest = after.trim_start();
        }
        if h % 2 == 1 {
            return Err(Error::OddHalfEdges(h));
        }
        if alpha.contains(&usize::MAX) {
            return Err(bad("unpaired half-edge"));
        }
        let labels = match labels {
            Some(ls) => ls.into_iter().map(|l| l as u32).collect(),
            None => (1..=mu.len() as u32).collect(),
        };
        Self::with_labels(labels, mu, alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FatGraph {
        s.parse().unwrap()
    }

    #[test]
    fn face_counts() {
        assert_eq!(g("n=1; mu=2; alpha=(1 2)").face_count(), 2);
        assert_eq!(g("n=1; mu=4; alpha=(1 4)(2 3)").face_count(), 3);
        assert_eq!(g("n=2; mu=3,3; alpha=(1 4)(2 6)(3 5)").face_count(), 3);
    }

    #[test]
    fn genus_values() {
        assert_eq!(g("n=1; mu=4; alpha=(1 4)(2 3)").genus(), 0);
        assert_eq!(g("n=1; mu=4; alpha=(1 3)(2 4)").genus(), 1);
        assert_eq!(FatGraph::dot(1).genus(), 0);
        let two_dots = FatGraph::dot(1).disjoint_union(&FatGraph::dot(2)).unwrap();
        assert_eq!(two_dots.genus(), -1);
    }

    #[test]
    fn components_counted() {
        assert_eq!(
            g("n=2; mu=3,3; alpha=(1 4)(2 6)(3 5)").components().len(),
            1
        );
        assert_eq!(g("n=2; mu=2,2; alpha=(1 2)(3 4)").components().len(), 2);
        assert_eq!(
            g("n=3; mu=1,1,0; alpha=(1 2)").components(),
            vec![vec![0, 1], vec![2]]
        );
    }

    #[test]
    fn automorphisms() {
        assert_eq!(g("n=1; mu=2; alpha=(1 2)").aut_order(), 2);
        assert_eq!(g("n=2; mu=3,3; alpha=(1 4)(2 6)(3 5)").aut_order(), 3);
        assert_eq!(g("n=2; mu=1,1; alpha=(1 2)").aut_order(), 1);
    }

    #[test]
    fn nested_and_crossing_differ() {
        let a = g("n=1; mu=4; alpha=(1 4)(2 3)");
        let b = g("n=1; mu=4; alpha=(1 3)(2 4)");
        assert_ne!(a.canonical_encoding(), b.canonical_encoding());
        let c = g("n=1; mu=4; alpha=(1 2)(3 4)");
        assert_eq!(a.canonical(), c.canonical());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            FatGraph::new(vec![3], vec![1, 0, 2]),
            Err(Error::OddHalfEdges(3))
        ));
        assert!(matches!(
            FatGraph::new(vec![2], vec![0, 1]),
            Err(Error::InvalidInvolution(_))
        ));
        assert!("n=1; mu=2".parse::<FatGraph>().is_err());
        assert!("n=2; mu=2; alpha=(1 2)".parse::<FatGraph>().is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "n=2; mu=3,3; alpha=(1 4)(2 5)(3 6)",
            "n=1; mu=0; alpha=",
            "n=2; mu=1,1; alpha=(1 2); labels=2,5",
        ] {
            assert_eq!(g(s).to_string(), s);
        }
    }

    #[test]
    fn disjoint_union_interleaves_labels() {
        let a = g("n=2; mu=1,1; alpha=(1 2); labels=1,3");
        let b = g("n=1; mu=2; alpha=(1 2); labels=2");
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.to_string(), "n=3; mu=1,2,1; alpha=(1 4)(2 3)");
        assert!(a.disjoint_union(&a).is_err());
    }
}
