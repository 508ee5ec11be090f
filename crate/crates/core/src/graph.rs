//! Genus-0 𝒦-stable graphs encoded as a marking partition plus a split
//! system.
//!
//! Blocks are the fibres of the leg map; every edge of the tree is recorded
//! by the bipartition of the markings it induces. Legs of a genus-0 stable
//! tree carry no automorphisms, so two graphs are isomorphic exactly when
//! their encodings agree.

use std::cmp::Ordering;
use std::fmt;

use crate::complex::{permute_set, GroundSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::labels::LabelSet;

/// A boundary stratum. Splits are stored by their side containing the first
/// marking of the ground order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KStableGraph {
    universe: LabelSet,
    blocks: Vec<LabelSet>,
    splits: Vec<LabelSet>,
}

/// One vertex of the tree reconstructed from a split system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexView {
    pub id: usize,
    /// Indices into [`KStableGraph::blocks`] of the legs at this vertex.
    pub legs: Vec<usize>,
    /// Incident edges: split index and the markings on the far side.
    pub edges: Vec<(usize, LabelSet)>,
}

impl VertexView {
    /// Number of half edges at the vertex.
    pub fn valence(&self) -> usize {
        self.legs.len() + self.edges.len()
    }
}

/// Which defining condition a graph violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFailure {
    /// 1: connected tree (splits pairwise compatible), 2: blocks are faces,
    /// 3: leaf condition, 4: stability.
    pub condition: u8,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ConditionFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_conditions(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.failures.iter().map(|f| f.condition).collect();
        c.dedup();
        c
    }

    fn fail(&mut self, condition: u8, detail: String) {
        self.failures.push(ConditionFailure { condition, detail });
    }
}

/// Two bipartitions of `universe`, given by sides that both contain the
/// first marking, are compatible when one side is nested in the other or
/// the sides cover everything.
pub(crate) fn splits_compatible(a: LabelSet, b: LabelSet, universe: LabelSet) -> bool {
    a.is_subset(b) || b.is_subset(a) || a.union(b) == universe
}

/// Normalise a bipartition side to the side holding the lowest marking.
pub(crate) fn canonical_side(side: LabelSet, universe: LabelSet) -> LabelSet {
    if side.contains(0) {
        side
    } else {
        side.complement(universe)
    }
}

impl KStableGraph {
    /// Build a graph, checking only that the data is well formed: blocks
    /// partition the markings, and every split is a proper bipartition whose
    /// sides are unions of blocks. Stability is checked by [`Self::validate`].
    pub fn new(universe: LabelSet, blocks: Vec<LabelSet>, splits: Vec<LabelSet>) -> Result<Self> {
        if !universe.contains(0) || universe != LabelSet::full(universe.len()) {
            return Err(Error::Structure("universe must be an initial segment".into()));
        }
        let mut covered = LabelSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::Structure("empty block".into()));
            }
            if !b.is_subset(universe) {
                return Err(Error::Structure(format!("block {b:?} leaves the ground set")));
            }
            if !b.is_disjoint(covered) {
                return Err(Error::Structure(format!("block {b:?} overlaps another block")));
            }
            covered = covered.union(b);
        }
        if covered != universe {
            return Err(Error::Structure("blocks do not cover the ground set".into()));
        }
        let mut canon = Vec::with_capacity(splits.len());
        for &s in &splits {
            let side = canonical_side(s, universe);
            if side == universe || !side.is_subset(universe) {
                return Err(Error::Structure(format!("split {s:?} is not a proper bipartition")));
            }
            if let Some(b) = blocks
                .iter()
                .find(|b| !b.is_subset(side) && !b.is_disjoint(side))
            {
                return Err(Error::Structure(format!(
                    "split {side:?} cuts through block {b:?}"
                )));
            }
            canon.push(side);
        }
        canon.sort();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structure("repeated split".into()));
        }
        let mut blocks = blocks;
        blocks.sort();
        Ok(KStableGraph { universe, blocks, splits: canon })
    }

    /// The graph of the open stratum: one vertex, every marking on its own leg.
    pub fn open_stratum(n: usize) -> Self {
        KStableGraph {
            universe: LabelSet::full(n),
            blocks: (0..n).map(LabelSet::singleton).collect(),
            splits: Vec::new(),
        }
    }

    pub(crate) fn from_parts_unchecked(universe: LabelSet, mut blocks: Vec<LabelSet>, mut splits: Vec<LabelSet>) -> Self {
        blocks.sort();
        splits.sort();
        KStableGraph { universe, blocks, splits }
    }

    pub fn universe(&self) -> LabelSet {
        self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    /// Canonical split sides (each contains the first marking).
    pub fn splits(&self) -> &[LabelSet] {
        &self.splits
    }

    /// Both sides of split `i`, canonical side first.
    pub fn split_sides(&self, i: usize) -> (LabelSet, LabelSet) {
        let a = self.splits[i];
        (a, a.complement(self.universe))
    }

    /// Number of edges plus the number of markings lost to collisions.
    pub fn codimension(&self) -> usize {
        self.splits.len() + self.n() - self.blocks.len()
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(i))
    }

    fn splits_pairwise_compatible(&self) -> bool {
        self.splits.iter().enumerate().all(|(a, &x)| {
            self.splits[a + 1..]
                .iter()
                .all(|&y| splits_compatible(x, y, self.universe))
        })
    }

    /// Rebuild the tree. Vertex 0 is the root (the vertex carrying the
    /// first marking's side of every edge); vertex `i + 1` is the endpoint of
    /// split `i` on the side away from the root.
    pub fn vertices(&self) -> Result<Vec<VertexView>> {
        if !self.splits_pairwise_compatible() {
            return Err(Error::Structure("splits are not pairwise compatible".into()));
        }
        let u = self.universe;
        let clades: Vec<LabelSet> = self.splits.iter().map(|s| s.complement(u)).collect();
        // smallest clade strictly containing `set` (by size), as a vertex id
        let owner = |set: LabelSet, skip: Option<usize>| -> usize {
            clades
                .iter()
                .enumerate()
                .filter(|&(i, c)| Some(i) != skip && set.is_subset(*c) && set != *c)
                .min_by_key(|(_, c)| c.len())
                .map(|(i, _)| i + 1)
                .unwrap_or(0)
        };
        let mut verts: Vec<VertexView> = (0..=clades.len())
            .map(|id| VertexView { id, legs: Vec::new(), edges: Vec::new() })
            .collect();
        for (i, &c) in clades.iter().enumerate() {
            let parent = owner(c, Some(i));
            verts[i + 1].edges.push((i, c.complement(u)));
            verts[parent].edges.push((i, c));
        }
        for (bi, &b) in self.blocks.iter().enumerate() {
            let v = clades
                .iter()
                .enumerate()
                .filter(|(_, c)| b.is_subset(**c))
                .min_by_key(|(_, c)| c.len())
                .map(|(i, _)| i + 1)
                .unwrap_or(0);
            verts[v].legs.push(bi);
        }
        Ok(verts)
    }

    /// Check the four defining conditions against `complex`.
    pub fn validate(&self, complex: &SimplicialComplex) -> Result<ValidationReport> {
        if complex.universe() != self.universe {
            return Err(Error::Structure("graph and complex have different ground sets".into()));
        }
        let g = complex.ground();
        let mut report = ValidationReport::default();
        let compatible = self.splits_pairwise_compatible();
        if !compatible {
            report.fail(1, "splits are not pairwise compatible, so they do not form a tree".into());
        }
        for &b in &self.blocks {
            if !complex.is_face(b) {
                report.fail(2, format!("block {} is not a face", g.format_set(b)));
            }
        }
        if self.splits.is_empty() {
            if complex.is_face(self.universe) {
                report.fail(3, "the single vertex carries a face".into());
            }
        } else {
            for i in 0..self.splits.len() {
                let (a, b) = self.split_sides(i);
                for side in [a, b] {
                    if complex.is_face(side) {
                        report.fail(3, format!("split side {} is a face", g.format_set(side)));
                    }
                }
            }
        }
        if compatible {
            for v in self.vertices()? {
                if v.valence() < 3 {
                    report.fail(4, format!("vertex {} has only {} half edges", v.id, v.valence()));
                }
            }
        }
        Ok(report)
    }

    pub fn is_valid(&self, complex: &SimplicialComplex) -> bool {
        self.validate(complex).map(|r| r.is_valid()).unwrap_or(false)
    }

    /// `self ≤ other`: `self` refines `other` (coarser partition, more edges).
    pub fn leq(&self, other: &KStableGraph) -> bool {
        self.universe == other.universe
            && self.splits.len() >= other.splits.len()
            && self.blocks.len() <= other.blocks.len()
            && other.splits.iter().all(|s| self.splits.binary_search(s).is_ok())
            && other
                .blocks
                .iter()
                .all(|b| self.blocks.iter().any(|c| b.is_subset(*c)))
    }

    /// Whether the graph keeps `{i,j}` together and away from `{k,l}`: either
    /// pair shares a leg, or some edge cuts the two pairs apart.
    pub fn separates(&self, i: usize, j: usize, k: usize, l: usize) -> Result<bool> {
        let quad = [i, j, k, l];
        if quad.iter().any(|&x| !self.universe.contains(x)) {
            return Err(Error::Domain("label outside the ground set".into()));
        }
        if LabelSet::from_indices(quad).len() != 4 {
            return Err(Error::Domain("separation needs four distinct labels".into()));
        }
        let same_leg = |a, b| self.blocks.iter().any(|blk| blk.contains(a) && blk.contains(b));
        if same_leg(i, j) || same_leg(k, l) {
            return Ok(true);
        }
        let ij = LabelSet::from_indices([i, j]);
        let kl = LabelSet::from_indices([k, l]);
        Ok(self.splits.iter().any(|&a| {
            let b = a.complement(self.universe);
            (ij.is_subset(a) && kl.is_subset(b)) || (ij.is_subset(b) && kl.is_subset(a))
        }))
    }

    /// Relabel markings by `i -> perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let blocks = self.blocks.iter().map(|&b| permute_set(b, perm)).collect();
        let splits = self
            .splits
            .iter()
            .map(|&s| canonical_side(permute_set(s, perm), self.universe))
            .collect();
        Self::from_parts_unchecked(self.universe, blocks, splits)
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .filter(|b| b.len() > 1)
            .map(|&b| ground.format_set(b))
            .collect();
        let splits: Vec<String> = (0..self.splits.len())
            .map(|i| {
                let (a, b) = self.split_sides(i);
                format!("{}|{}", ground.format_set(a), ground.format_set(b))
            })
            .collect();
        format!("collisions[{}] edges[{}]", blocks.join(" "), splits.join(" "))
    }
}

impl Ord for KStableGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.codimension()
            .cmp(&other.codimension())
            .then_with(|| self.blocks.cmp(&other.blocks))
            .then_with(|| self.splits.cmp(&other.splits))
    }
}

impl PartialOrd for KStableGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KStableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph{{blocks: {:?}, splits: {:?}}}", self.blocks, self.splits)
    }
}

/// The complex 𝒦(v) on the half edges at `v`: legs may collide when the
/// markings they carry form a face of 𝒦; edge half edges only appear as
/// singletons. Elements are ordered legs first, then edges.
pub fn induced_complex(complex: &SimplicialComplex, graph: &KStableGraph, v: &VertexView) -> Result<SimplicialComplex> {
    let g = complex.ground();
    let mut labels: Vec<String> = v.legs.iter().map(|&b| g.format_set(graph.blocks()[b])).collect();
    labels.extend(v.edges.iter().map(|&(e, far)| format!("e{e}:{}", g.format_set(far))));
    let ground = GroundSet::new(labels)?;
    let leg_sets = LabelSet::full(v.legs.len());
    let faces = leg_sets.subsets().filter(|a| {
        let markings = a
            .iter()
            .fold(LabelSet::EMPTY, |acc, i| acc.union(graph.blocks()[v.legs[i]]));
        !a.is_empty() && complex.is_face(markings)
    });
    SimplicialComplex::from_faces(ground, faces.collect::<Vec<_>>())
}

/// All generic (G1, G2)-graphs: the coarsest common refinement of the
/// collision data together with the union of the edges. Empty when that
/// candidate is not a 𝒦-stable graph; never longer than one in genus 0.
pub fn generic_meet(complex: &SimplicialComplex, a: &KStableGraph, b: &KStableGraph) -> Vec<KStableGraph> {
    let u = a.universe();
    if b.universe() != u || complex.universe() != u {
        return Vec::new();
    }
    // merge blocks that share a marking in either graph
    let mut merged: Vec<LabelSet> = Vec::new();
    for &blk in a.blocks().iter().chain(b.blocks()) {
        let mut cur = blk;
        merged.retain(|&m| {
            if m.is_disjoint(cur) {
                true
            } else {
                cur = cur.union(m);
                false
            }
        });
        merged.push(cur);
    }
    let mut splits: Vec<LabelSet> = a.splits().iter().chain(b.splits()).copied().collect();
    splits.sort();
    splits.dedup();
    match KStableGraph::new(u, merged, splits) {
        Ok(g) if g.is_valid(complex) => vec![g],
        _ => Vec::new(),
    }
}
