//! Codimension-one strata and the contraction of Keel divisors.

use std::cmp::Ordering;
use std::fmt;

use crate::complex::{GroundSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{canonical_side, generic_meet, splits_compatible, KStableGraph};
use crate::labels::LabelSet;

/// The two shapes of a boundary divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorKind {
    /// Two components, markings `I` on one and the rest on the other. `I` is
    /// the side containing the first marking.
    Pi(LabelSet),
    /// Markings `s < t` collided at one point of an irreducible curve.
    Sigma(usize, usize),
}

impl DivisorKind {
    fn rank(&self) -> u8 {
        match self {
            DivisorKind::Pi(_) => 0,
            DivisorKind::Sigma(..) => 1,
        }
    }
}

impl Ord for DivisorKind {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (DivisorKind::Pi(a), DivisorKind::Pi(b)) => a.cmp(b),
            (DivisorKind::Sigma(a, b), DivisorKind::Sigma(c, d)) => (a, b).cmp(&(c, d)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for DivisorKind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoundaryDivisor {
    kind: DivisorKind,
    graph: KStableGraph,
}

impl BoundaryDivisor {
    /// `Π_I`; `I` and its complement name the same divisor.
    pub fn pi(complex: &SimplicialComplex, side: LabelSet) -> Result<Self> {
        complex.ground().check_subset(side)?;
        let u = complex.universe();
        let n = complex.n();
        if side.len() < 2 || side.len() + 2 > n {
            return Err(Error::Domain(format!(
                "Pi needs 2 <= #I <= {}, got #I = {}",
                n.saturating_sub(2),
                side.len()
            )));
        }
        let canon = canonical_side(side, u);
        if complex.is_face(canon) || complex.is_face(canon.complement(u)) {
            return Err(Error::Domain(format!(
                "Pi{} is not a divisor: one side is a face",
                complex.ground().format_set(canon)
            )));
        }
        let blocks = (0..n).map(LabelSet::singleton).collect();
        let graph = KStableGraph::new(u, blocks, vec![canon])?;
        Ok(BoundaryDivisor { kind: DivisorKind::Pi(canon), graph })
    }

    /// `Σ_st`: markings `s` and `t` collide.
    pub fn sigma(complex: &SimplicialComplex, s: usize, t: usize) -> Result<Self> {
        let n = complex.n();
        if s == t || s >= n || t >= n {
            return Err(Error::Domain("Sigma needs two distinct markings".into()));
        }
        let (s, t) = (s.min(t), s.max(t));
        let pair = LabelSet::from_indices([s, t]);
        if !complex.is_face(pair) {
            return Err(Error::Domain(format!(
                "Sigma{} is not a divisor: the pair is not a face",
                complex.ground().format_set(pair)
            )));
        }
        if n < 4 {
            return Err(Error::Domain("Sigma needs at least 4 markings".into()));
        }
        let mut blocks: Vec<LabelSet> = (0..n)
            .filter(|&i| i != s && i != t)
            .map(LabelSet::singleton)
            .collect();
        blocks.push(pair);
        let graph = KStableGraph::new(complex.universe(), blocks, Vec::new())?;
        Ok(BoundaryDivisor { kind: DivisorKind::Sigma(s, t), graph })
    }

    /// Recognise a codimension-one graph.
    pub fn from_graph(complex: &SimplicialComplex, graph: &KStableGraph) -> Result<Self> {
        if graph.codimension() != 1 {
            return Err(Error::Domain("divisors have codimension 1".into()));
        }
        match graph.splits() {
            [side] => Self::pi(complex, *side),
            [] => {
                let pair = graph
                    .blocks()
                    .iter()
                    .find(|b| b.len() == 2)
                    .expect("codimension 1 without edges has one pair");
                let mut it = pair.iter();
                Self::sigma(complex, it.next().unwrap(), it.next().unwrap())
            }
            _ => unreachable!("codimension 1 has at most one edge"),
        }
    }

    pub fn kind(&self) -> DivisorKind {
        self.kind
    }

    pub fn graph(&self) -> &KStableGraph {
        &self.graph
    }

    /// `Pi{1,2}` / `Sigma{1,2}`.
    pub fn name(&self, ground: &GroundSet) -> String {
        match self.kind {
            DivisorKind::Pi(side) => format!("Pi{}", ground.format_set(side)),
            DivisorKind::Sigma(s, t) => format!("Sigma{}", ground.format_set(LabelSet::from_indices([s, t]))),
        }
    }
}

impl Ord for BoundaryDivisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind.cmp(&other.kind)
    }
}

impl PartialOrd for BoundaryDivisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BoundaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)
    }
}

/// Every boundary divisor: all `Π_I` in lexicographic order of `I`, then all
/// `Σ_st` in lexicographic order.
pub fn divisors(complex: &SimplicialComplex) -> Result<Vec<BoundaryDivisor>> {
    complex.ensure_triparted()?;
    let n = complex.n();
    let u = complex.universe();
    let mut out = Vec::new();
    let rest = u.difference(LabelSet::singleton(0));
    let mut sides: Vec<LabelSet> = rest
        .subsets()
        .map(|s| s.with(0))
        .filter(|s| s.len() >= 2 && s.len() + 2 <= n)
        .filter(|&s| !complex.is_face(s) && !complex.is_face(s.complement(u)))
        .collect();
    sides.sort();
    for side in sides {
        out.push(BoundaryDivisor::pi(complex, side)?);
    }
    if n >= 4 {
        for s in 0..n {
            for t in s + 1..n {
                if complex.is_face(LabelSet::from_indices([s, t])) {
                    out.push(BoundaryDivisor::sigma(complex, s, t)?);
                }
            }
        }
    }
    Ok(out)
}

/// Whether the two divisors do not meet, decided by the generic meet.
pub fn disjoint(complex: &SimplicialComplex, a: &BoundaryDivisor, b: &BoundaryDivisor) -> Result<bool> {
    if a == b {
        return Err(Error::Domain("a divisor is never disjoint from itself".into()));
    }
    Ok(generic_meet(complex, a.graph(), b.graph()).is_empty())
}

/// The case list for disjoint divisor pairs: two collisions sharing a marking
/// whose triple is not a face; a collision whose pair is separated by a
/// two-component divisor; two two-component divisors without a common
/// three-part refinement.
pub fn disjoint_by_cases(complex: &SimplicialComplex, a: &BoundaryDivisor, b: &BoundaryDivisor) -> bool {
    let u = complex.universe();
    match (a.kind(), b.kind()) {
        (DivisorKind::Sigma(s, t), DivisorKind::Sigma(p, q)) => {
            let x = LabelSet::from_indices([s, t]);
            let y = LabelSet::from_indices([p, q]);
            x.intersection(y).len() == 1 && !complex.is_face(x.union(y))
        }
        (DivisorKind::Sigma(s, t), DivisorKind::Pi(side)) | (DivisorKind::Pi(side), DivisorKind::Sigma(s, t)) => {
            side.contains(s) != side.contains(t)
        }
        (DivisorKind::Pi(x), DivisorKind::Pi(y)) => !splits_compatible(x, y, u),
    }
}

/// Pairs on which [`disjoint`] and [`disjoint_by_cases`] disagree.
pub fn disjointness_mismatches(
    complex: &SimplicialComplex,
) -> Result<Vec<(BoundaryDivisor, BoundaryDivisor, bool)>> {
    let ds = divisors(complex)?;
    let mut out = Vec::new();
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i + 1..] {
            let by_meet = disjoint(complex, a, b)?;
            if by_meet != disjoint_by_cases(complex, a, b) {
                out.push((a.clone(), b.clone(), by_meet));
            }
        }
    }
    Ok(out)
}

/// Image of the Keel divisor `D_I` under the contraction from the moduli of
/// distinct points: `Π_I` when neither side is a face, `Σ_st` when one side is
/// the face `{s,t}`, and `None` (pushforward zero) when one side is a face
/// with three or more markings, whose image has codimension at least 2.
pub fn pushforward_divisor(complex: &SimplicialComplex, side: LabelSet) -> Result<Option<BoundaryDivisor>> {
    complex.ground().check_subset(side)?;
    let n = complex.n();
    if side.len() < 2 || side.len() + 2 > n {
        return Err(Error::Domain(format!(
            "D_I needs 2 <= #I <= {}, got #I = {}",
            n.saturating_sub(2),
            side.len()
        )));
    }
    let u = complex.universe();
    for part in [side, side.complement(u)] {
        if complex.is_face(part) {
            if part.len() == 2 {
                let mut it = part.iter();
                return BoundaryDivisor::sigma(complex, it.next().unwrap(), it.next().unwrap()).map(Some);
            }
            return Ok(None);
        }
    }
    BoundaryDivisor::pi(complex, side).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{enumerate_graphs, Codim};

    fn ground(n: usize) -> GroundSet {
        GroundSet::numbered(n).unwrap()
    }

    fn s(labels: &[usize]) -> LabelSet {
        LabelSet::from_indices(labels.iter().map(|l| l - 1))
    }

    fn complex(n: usize, faces: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_faces(ground(n), faces.iter().map(|f| s(f)).collect::<Vec<_>>()).unwrap()
    }

    fn names(k: &SimplicialComplex) -> Vec<String> {
        divisors(k).unwrap().iter().map(|d| d.name(k.ground())).collect()
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(names(&complex(4, &[&[1, 2]])), vec!["Pi{1,3}", "Pi{1,4}", "Sigma{1,2}"]);
        assert!(names(&complex(3, &[])).is_empty());
        assert_eq!(names(&complex(5, &[])).len(), 10);
        assert_eq!(names(&complex(6, &[])).len(), 25);
    }

    #[test]
    fn divisors_match_codim_one_strata() {
        for k in [complex(5, &[&[3, 4, 5]]), complex(5, &[&[1, 2], &[3, 4]]), complex(6, &[&[1, 2], &[2, 3]])] {
            let mut from_graphs: Vec<KStableGraph> = enumerate_graphs(&k, Codim::Exact(1)).unwrap();
            let mut from_divs: Vec<KStableGraph> = divisors(&k).unwrap().iter().map(|d| d.graph().clone()).collect();
            from_graphs.sort();
            from_divs.sort();
            assert_eq!(from_graphs, from_divs);
        }
    }

    #[test]
    fn pi_is_complement_invariant() {
        let k = complex(5, &[]);
        let a = BoundaryDivisor::pi(&k, s(&[1, 2])).unwrap();
        let b = BoundaryDivisor::pi(&k, s(&[3, 4, 5])).unwrap();
        assert_eq!(a, b);
        assert!(BoundaryDivisor::pi(&k, s(&[1])).is_err());
    }

    #[test]
    fn degenerate_pi_on_four_markings() {
        let k = complex(4, &[&[1, 2]]);
        assert!(BoundaryDivisor::pi(&k, s(&[1, 2])).is_err());
        assert!(BoundaryDivisor::pi(&k, s(&[1, 3])).is_ok());
    }

    #[test]
    fn disjoint_examples() {
        let k = complex(4, &[]);
        let p12 = BoundaryDivisor::pi(&k, s(&[1, 2])).unwrap();
        let p13 = BoundaryDivisor::pi(&k, s(&[1, 3])).unwrap();
        assert!(disjoint(&k, &p12, &p13).unwrap());
        assert!(disjoint(&k, &p12, &p12).is_err());

        let k = complex(4, &[&[1, 2]]);
        let s12 = BoundaryDivisor::sigma(&k, 0, 1).unwrap();
        let p13 = BoundaryDivisor::pi(&k, s(&[1, 3])).unwrap();
        assert!(disjoint(&k, &s12, &p13).unwrap());

        let k = complex(6, &[]);
        let p12 = BoundaryDivisor::pi(&k, s(&[1, 2])).unwrap();
        let p34 = BoundaryDivisor::pi(&k, s(&[3, 4])).unwrap();
        assert!(!disjoint(&k, &p12, &p34).unwrap());
    }

    #[test]
    fn case_list_agrees_with_meets() {
        for k in [
            complex(4, &[&[1, 2]]),
            complex(5, &[&[3, 4, 5]]),
            complex(5, &[&[1, 2], &[2, 3]]),
            complex(6, &[&[1, 2], &[3, 4], &[5, 6]]),
        ] {
            assert!(disjointness_mismatches(&k).unwrap().is_empty(), "{k:?}");
        }
    }

    #[test]
    fn pushforward_examples() {
        let k = complex(5, &[]);
        assert_eq!(
            pushforward_divisor(&k, s(&[1, 3])).unwrap().unwrap(),
            BoundaryDivisor::pi(&k, s(&[1, 3])).unwrap()
        );
        let k = complex(5, &[&[1, 2]]);
        let sigma = BoundaryDivisor::sigma(&k, 0, 1).unwrap();
        assert_eq!(pushforward_divisor(&k, s(&[1, 2])).unwrap(), Some(sigma.clone()));
        assert_eq!(pushforward_divisor(&k, s(&[3, 4, 5])).unwrap(), Some(sigma));
        let k = complex(5, &[&[1, 2, 3]]);
        assert!(pushforward_divisor(&k, s(&[4, 5])).unwrap().is_none());
        assert!(pushforward_divisor(&k, s(&[1, 2, 3])).unwrap().is_none());
        assert!(pushforward_divisor(&k, s(&[1])).is_err());
    }
}
