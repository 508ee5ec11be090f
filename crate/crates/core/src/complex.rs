//! Simplicial complexes on a finite marking set.
//!
//! A complex is stored by its facets; a set is a face exactly when it is
//! contained in some facet. Every singleton is required to be a face.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::labels::{LabelSet, MAX_LABELS};

/// The ordered marking set. Its order fixes every canonical ordering
/// downstream.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, T>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 3 {
            return Err(Error::Invalid(format!(
                "ground set needs at least 3 labels, got {}",
                labels.len()
            )));
        }
        if labels.len() > MAX_LABELS {
            return Err(Error::Invalid(format!(
                "at most {MAX_LABELS} labels are supported, got {}",
                labels.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Invalid("empty label".into()));
            }
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    /// The ground set `{1, ..., n}`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn universe(&self) -> LabelSet {
        LabelSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Domain(format!("unknown label {label:?}")))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<LabelSet> {
        let mut set = LabelSet::EMPTY;
        for l in labels {
            let i = self.index_of(l.as_ref())?;
            if set.contains(i) {
                return Err(Error::Domain(format!("label {:?} repeated", l.as_ref())));
            }
            set = set.with(i);
        }
        Ok(set)
    }

    pub fn names(&self, set: LabelSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b,c}` rendering of a subset.
    pub fn format_set(&self, set: LabelSet) -> String {
        format!("{{{}}}", self.names(set).join(","))
    }

    pub(crate) fn check_subset(&self, set: LabelSet) -> Result<()> {
        if set.is_subset(self.universe()) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "subset {set:?} is not contained in a ground set of size {}",
                self.len()
            )))
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// Hassett weight data: one rational weight in `(0, 1]` per marking, total
/// weight above 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HassettWeights {
    ground: GroundSet,
    weights: Vec<BigRational>,
}

impl HassettWeights {
    pub fn new(ground: GroundSet, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != ground.len() {
            return Err(Error::Invalid(format!(
                "{} weights for {} labels",
                weights.len(),
                ground.len()
            )));
        }
        for (i, w) in weights.iter().enumerate() {
            if !(w > &BigRational::zero() && w <= &BigRational::one()) {
                return Err(Error::Invalid(format!(
                    "weight of label {:?} is {w}, not in (0, 1]",
                    ground.label(i)
                )));
            }
        }
        let total: BigRational = weights.iter().sum();
        if total <= BigRational::from_integer(2.into()) {
            return Err(Error::Invalid(format!(
                "total weight {total} does not exceed 2"
            )));
        }
        Ok(HassettWeights { ground, weights })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }
}

/// A simplicial complex on a [`GroundSet`], stored by facets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground: GroundSet,
    facets: Vec<LabelSet>,
}

impl SimplicialComplex {
    /// Build from an explicit facet list. Facets must be pairwise non-nested
    /// and cover every singleton.
    pub fn from_facets(ground: GroundSet, facets: Vec<LabelSet>) -> Result<Self> {
        for &f in &facets {
            ground.check_subset(f)?;
            if f.is_empty() {
                return Err(Error::Invalid("empty facet".into()));
            }
        }
        for (a, &f) in facets.iter().enumerate() {
            for (b, &g) in facets.iter().enumerate() {
                if a != b && f.is_subset(g) {
                    return Err(Error::Invalid(format!(
                        "facet {} is contained in facet {}",
                        ground.format_set(f),
                        ground.format_set(g)
                    )));
                }
            }
        }
        let covered = facets.iter().fold(LabelSet::EMPTY, |acc, &f| acc.union(f));
        if let Some(missing) = ground.universe().difference(covered).min() {
            return Err(Error::Invalid(format!(
                "singleton {{{}}} is not a face",
                ground.label(missing)
            )));
        }
        let mut facets = facets;
        facets.sort();
        Ok(SimplicialComplex { ground, facets })
    }

    /// Build from any generating family of faces: singletons are adjoined and
    /// only the maximal sets are kept.
    pub fn from_faces<I: IntoIterator<Item = LabelSet>>(ground: GroundSet, faces: I) -> Result<Self> {
        let mut all: Vec<LabelSet> = faces.into_iter().collect();
        for &f in &all {
            ground.check_subset(f)?;
        }
        all.extend((0..ground.len()).map(LabelSet::singleton));
        all.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut facets: Vec<LabelSet> = Vec::new();
        for f in all {
            if !f.is_empty() && !facets.iter().any(|&g| f.is_subset(g)) {
                facets.push(f);
            }
        }
        facets.sort();
        Ok(SimplicialComplex { ground, facets })
    }

    /// The complex whose facets are the singletons.
    pub fn discrete(ground: GroundSet) -> Self {
        let facets = (0..ground.len()).map(LabelSet::singleton).collect();
        SimplicialComplex { ground, facets }
    }

    /// The complex `{T : sum of weights over T < 1}`, with every singleton
    /// adjoined (a weight-1 marking still occupies its own point).
    pub fn from_hassett_weights(weights: &HassettWeights) -> Self {
        let ground = weights.ground().clone();
        let w = weights.weights();
        let one = BigRational::one();
        let mut faces = Vec::new();
        // depth-first over light sets, extending only with larger indices
        let mut stack = vec![(LabelSet::EMPTY, BigRational::zero(), 0usize)];
        while let Some((set, sum, next)) = stack.pop() {
            let mut extended = false;
            for i in next..ground.len() {
                let s = &sum + &w[i];
                if s < one {
                    stack.push((set.with(i), s, i + 1));
                    extended = true;
                }
            }
            if !extended && !set.is_empty() {
                faces.push(set);
            }
        }
        Self::from_faces(ground, faces).expect("faces lie in the ground set")
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn universe(&self) -> LabelSet {
        self.ground.universe()
    }

    pub fn facets(&self) -> &[LabelSet] {
        &self.facets
    }

    /// Face membership for a set already known to lie in the ground set.
    pub fn is_face(&self, set: LabelSet) -> bool {
        self.facets.iter().any(|&f| set.is_subset(f))
    }

    /// Face membership, rejecting sets with elements outside the ground set.
    pub fn contains(&self, set: LabelSet) -> Result<bool> {
        self.ground.check_subset(set)?;
        Ok(self.is_face(set))
    }

    pub fn contains_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        Ok(self.is_face(self.ground.set_of(labels)?))
    }

    pub fn is_discrete(&self) -> bool {
        self.facets.iter().all(|f| f.len() == 1)
    }

    /// Every partition of the ground set into faces has at least three parts.
    ///
    /// A partition into at most two faces exists iff the whole set is a face
    /// or some facet has a face as complement.
    pub fn is_at_least_triparted(&self) -> bool {
        let s = self.universe();
        !self.is_face(s)
            && !self
                .facets
                .iter()
                .any(|&f| self.is_face(f.complement(s)))
    }

    pub fn ensure_triparted(&self) -> Result<()> {
        if self.is_at_least_triparted() {
            Ok(())
        } else {
            Err(Error::NotTriparted)
        }
    }

    /// Image of the complex under a relabelling `i -> perm[i]` of the ground
    /// order (labels are kept in place).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let facets: Vec<LabelSet> = self.facets.iter().map(|&f| permute_set(f, perm)).collect();
        Self::from_faces(self.ground.clone(), facets).expect("permutation of the ground set")
    }

    /// Permutations of the ground order that map the complex onto itself.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut img: Vec<LabelSet> = self.facets.iter().map(|&f| permute_set(f, p)).collect();
            img.sort();
            if img == self.facets {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }
}

pub(crate) fn permute_set(set: LabelSet, perm: &[usize]) -> LabelSet {
    LabelSet::from_indices(set.iter().map(|i| perm[i]))
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|&s| self.ground.format_set(s)).collect();
        write!(f, "K[{}]", facets.join(" "))
    }
}
