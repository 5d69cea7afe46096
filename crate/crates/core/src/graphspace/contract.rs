use super::graphsum::GraphSum;
use crate::error::{Error, Result};
use crate::ribbon::FatGraph;

/// Builds a graph from vertex blocks listing old half-edge ids in cyclic
/// order; `old_alpha` is restricted to the surviving half-edges.
fn rebuild(blocks: &[Vec<usize>], old_alpha: &[usize]) -> FatGraph {
    let mut new_id = vec![usize::MAX; old_alpha.len()];
    let mut next = 0;
    for block in blocks {
        for &h in block {
            new_id[h] = next;
            next += 1;
        }
    }
    let mut alpha = vec![0; next];
    for block in blocks {
        for &h in block {
            alpha[new_id[h]] = new_id[old_alpha[h]];
        }
    }
    FatGraph::new(blocks.iter().map(Vec::len).collect(), alpha)
        .expect("contraction preserves validity")
}

/// Cyclic order at the vertex of `h`, starting right after `h` and stopping
/// before `h`.
fn after(g: &FatGraph, h: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut x = g.sigma(h);
    while x != h {
        out.push(x);
        x = g.sigma(x);
    }
    out
}

/// The graphs `Γ^h` for every half-edge `h` at the vertex labelled 1.
///
/// Contracting a non-loop edge merges its endpoints into vertex 1; the
/// remaining vertices keep their order. Contracting a loop splits vertex 1
/// into the side following `h` (new vertex 1) and the side following
/// `alpha(h)` (new vertex 2); old vertices shift up by one.
pub fn contract_graph(g: &FatGraph) -> Result<Vec<FatGraph>> {
    let n = g.n_vertices();
    let expected: Vec<u32> = (1..=n as u32).collect();
    if g.labels() != expected {
        return Err(Error::LabelMismatch(format!(
            "contraction needs labels 1..{n}, got {:?}",
            g.labels()
        )));
    }
    if g.valences()[0] == 0 {
        return Err(Error::NothingToContract);
    }
    let block = |v: usize| -> Vec<usize> {
        let off = g.offset(v);
        (off..off + g.valences()[v]).collect()
    };
    let mut out = Vec::new();
    for h in 0..g.valences()[0] {
        let hp = g.alpha(h);
        let w = g.vertex_of(hp);
        let mut blocks = Vec::with_capacity(n + 1);
        if w == 0 {
            let ring = after(g, h);
            let split = ring.iter().position(|&x| x == hp).unwrap();
            blocks.push(ring[..split].to_vec());
            blocks.push(ring[split + 1..].to_vec());
            blocks.extend((1..n).map(block));
        } else {
            let mut merged = after(g, h);
            merged.extend(after(g, hp));
            blocks.push(merged);
            blocks.extend((1..n).filter(|&v| v != w).map(block));
        }
        out.push(rebuild(&blocks, g.alpha_word()));
    }
    Ok(out)
}

/// Linear extension of [`contract_graph`].
pub fn contract_k1(s: &GraphSum) -> Result<GraphSum> {
    let mut out = GraphSum::zero();
    for (g, c) in s.terms() {
        for gh in contract_graph(g)? {
            out.add_term(gh, c.clone());
        }
    }
    Ok(out)
}
