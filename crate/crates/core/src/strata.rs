//! Enumeration of the boundary stratification.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::graph::{splits_compatible, KStableGraph};
use crate::labels::LabelSet;

/// Which strata to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codim {
    Exact(usize),
    All,
}

/// Partitions of `remaining` into faces of the complex. Each block contains
/// the least marking not yet placed.
pub(crate) fn face_partitions(complex: &SimplicialComplex) -> Vec<Vec<LabelSet>> {
    fn go(k: &SimplicialComplex, remaining: LabelSet, cur: &mut Vec<LabelSet>, out: &mut Vec<Vec<LabelSet>>) {
        let Some(first) = remaining.min() else {
            out.push(cur.clone());
            return;
        };
        let rest = remaining.difference(LabelSet::singleton(first));
        for extra in rest.subsets() {
            let block = extra.with(first);
            if k.is_face(block) {
                cur.push(block);
                go(k, remaining.difference(block), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(complex, complex.universe(), &mut Vec::new(), &mut out);
    out
}

/// Admissible edges over a fixed partition: bipartitions of the blocks with
/// at least two blocks per side and neither side a face. Returned as the side
/// containing the first block (which holds marking 0).
fn candidate_splits(complex: &SimplicialComplex, blocks: &[LabelSet]) -> Vec<LabelSet> {
    let b = blocks.len();
    if b < 4 {
        return Vec::new();
    }
    let u = complex.universe();
    let mut out = Vec::new();
    // subsets of blocks 1..b joined with block 0
    for mask in 0u32..(1 << (b - 1)) {
        let count = mask.count_ones() as usize + 1;
        if count < 2 || b - count < 2 {
            continue;
        }
        let side = (0..b - 1)
            .filter(|i| mask >> i & 1 == 1)
            .fold(blocks[0], |acc, i| acc.union(blocks[i + 1]));
        if !complex.is_face(side) && !complex.is_face(side.complement(u)) {
            out.push(side);
        }
    }
    out.sort();
    out
}

fn compatible_families(
    u: LabelSet,
    cands: &[LabelSet],
    want: Option<usize>,
    max: usize,
    start: usize,
    cur: &mut Vec<LabelSet>,
    out: &mut Vec<Vec<LabelSet>>,
) {
    if want.map_or(true, |w| w == cur.len()) {
        out.push(cur.clone());
    }
    if cur.len() == max || want.is_some_and(|w| cur.len() >= w) {
        return;
    }
    for i in start..cands.len() {
        let c = cands[i];
        if cur.iter().all(|&x| splits_compatible(x, c, u)) {
            cur.push(c);
            compatible_families(u, cands, want, max, i + 1, cur, out);
            cur.pop();
        }
    }
}

/// All 𝒦-stable graphs of the requested codimension, in canonical order.
pub fn enumerate_graphs(complex: &SimplicialComplex, codim: Codim) -> Result<Vec<KStableGraph>> {
    complex.ensure_triparted()?;
    let n = complex.n();
    let u = complex.universe();
    if let Codim::Exact(d) = codim {
        if d > n - 3 {
            return Ok(Vec::new());
        }
    }
    let partitions = face_partitions(complex);
    let mut graphs: Vec<KStableGraph> = partitions
        .par_iter()
        .flat_map_iter(|blocks| {
            let b = blocks.len();
            let lost = n - b;
            let want = match codim {
                Codim::Exact(d) if d < lost || d - lost > b.saturating_sub(3) => return Vec::new(),
                Codim::Exact(d) => Some(d - lost),
                Codim::All => None,
            };
            let cands = if want == Some(0) { Vec::new() } else { candidate_splits(complex, blocks) };
            let mut families = Vec::new();
            compatible_families(u, &cands, want, b.saturating_sub(3), 0, &mut Vec::new(), &mut families);
            families
                .into_iter()
                .map(|splits| KStableGraph::from_parts_unchecked(u, blocks.clone(), splits))
                .filter(|g| g.is_valid(complex))
                .collect::<Vec<_>>()
        })
        .collect();
    graphs.sort();
    Ok(graphs)
}

/// Covering relations of the stratification poset: pairs `(lower, upper)` of
/// indices into `graphs` with `lower ≤ upper` and codimensions differing by one.
///
/// A cover drops exactly one edge or splits exactly one collision block in
/// two, so the candidates are generated directly and looked up.
pub fn hasse_edges(graphs: &[KStableGraph]) -> Vec<(usize, usize)> {
    let index: HashMap<&KStableGraph, usize> = graphs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut edges = Vec::new();
    for (i, lo) in graphs.iter().enumerate() {
        let u = lo.universe();
        let mut ups = Vec::new();
        for drop in 0..lo.splits().len() {
            let mut splits = lo.splits().to_vec();
            splits.remove(drop);
            ups.push(KStableGraph::from_parts_unchecked(u, lo.blocks().to_vec(), splits));
        }
        for (b, &block) in lo.blocks().iter().enumerate() {
            let Some(first) = block.min() else { continue };
            let rest = block.difference(LabelSet::singleton(first));
            for part in rest.subsets().filter(|p| *p != rest) {
                let mut blocks = lo.blocks().to_vec();
                blocks[b] = part.with(first);
                blocks.push(rest.difference(part));
                ups.push(KStableGraph::from_parts_unchecked(u, blocks, lo.splits().to_vec()));
            }
        }
        let mut found: Vec<usize> = ups.iter().filter_map(|g| index.get(g).copied()).collect();
        found.sort_unstable();
        edges.extend(found.into_iter().map(|j| (i, j)));
    }
    edges
}
