//! The presented ring: one generator per boundary divisor, modulo products of
//! disjoint divisors and the WDVV relations, computed degree by degree over ℤ.
//!
//! Products of disjoint divisors generate a monomial ideal, so degree `d` of
//! the quotient by them is free on the *standard* monomials (those whose
//! factors pairwise meet). Each degree is then the cokernel of the WDVV
//! lattice times standard monomials of degree `d - 1`, reduced to Hermite
//! normal form under the graded monomial order with the largest monomials
//! eliminated first.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::element::{Monomial, RingElement};
use super::linalg::{Coeff, Echelon, Row};
use crate::complex::SimplicialComplex;
use crate::divisor::{self, BoundaryDivisor, DivisorKind};
use crate::error::{Error, Result};
use crate::graph::{canonical_side, KStableGraph};
use crate::labels::LabelSet;

/// Boundary divisors in canonical order with a reverse index.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    divisors: Vec<BoundaryDivisor>,
    index: HashMap<DivisorKind, usize>,
}

impl GeneratorTable {
    pub fn new(complex: &SimplicialComplex) -> Result<Self> {
        let divisors = divisor::divisors(complex)?;
        let index = divisors.iter().enumerate().map(|(i, d)| (d.kind(), i)).collect();
        Ok(GeneratorTable { divisors, index })
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn get(&self, i: usize) -> &BoundaryDivisor {
        &self.divisors[i]
    }

    pub fn divisors(&self) -> &[BoundaryDivisor] {
        &self.divisors
    }

    pub fn index_of(&self, kind: DivisorKind) -> Option<usize> {
        self.index.get(&kind).copied()
    }
}

/// A WDVV element together with the labels `(i, j, k, l)` that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdvvRelation {
    pub labels: [usize; 4],
    pub element: RingElement,
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    /// Pairs `g < h` of generators whose divisors are disjoint.
    pub quadratic: Vec<(usize, usize)>,
    /// All three pairing differences for every 4-subset of markings.
    pub linear: Vec<WdvvRelation>,
}

/// Rank and torsion of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRank {
    pub rank: usize,
    /// Elementary divisors greater than one.
    pub torsion: Vec<BigInt>,
}

/// Ranks and torsion in degrees `0..=#S-3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareProfile {
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl PoincareProfile {
    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    pub fn is_palindromic(&self) -> bool {
        self.ranks.iter().eq(self.ranks.iter().rev())
    }
}

#[derive(Debug)]
struct DegreeComponent {
    /// Standard monomials, largest first; position = column.
    monomials: Vec<Monomial>,
    column: HashMap<Monomial, u32>,
    echelon: Echelon<BigInt>,
    torsion: Vec<BigInt>,
}

impl DegreeComponent {
    fn rank(&self) -> usize {
        self.monomials.len() - self.echelon.rank()
    }
}

pub struct Presentation {
    complex: SimplicialComplex,
    generators: GeneratorTable,
    /// `meets[g][h]`: the divisors intersect (always true on the diagonal).
    meets: Vec<Vec<bool>>,
    relations: RelationSet,
    components: Vec<OnceLock<Arc<DegreeComponent>>>,
}

impl Presentation {
    pub fn new(complex: &SimplicialComplex) -> Result<Self> {
        complex.ensure_triparted()?;
        let generators = GeneratorTable::new(complex)?;
        let m = generators.len();
        let mut meets = vec![vec![true; m]; m];
        let mut quadratic = Vec::new();
        for g in 0..m {
            for h in g + 1..m {
                if divisor::disjoint(complex, generators.get(g), generators.get(h))? {
                    meets[g][h] = false;
                    meets[h][g] = false;
                    quadratic.push((g, h));
                }
            }
        }
        let mut pres = Presentation {
            complex: complex.clone(),
            generators,
            meets,
            relations: RelationSet { quadratic, linear: Vec::new() },
            components: (0..=complex.n() - 3).map(|_| OnceLock::new()).collect(),
        };
        let n = complex.n();
        let mut linear = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        for labels in [[a, b, c, d], [a, c, d, b], [a, d, b, c]] {
                            let [i, j, k, l] = labels;
                            linear.push(WdvvRelation { labels, element: pres.wdvv(i, j, k, l)? });
                        }
                    }
                }
            }
        }
        pres.relations.linear = linear;
        Ok(pres)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn generators(&self) -> &GeneratorTable {
        &self.generators
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    /// Dimension of the moduli space, `#S - 3`.
    pub fn top_degree(&self) -> usize {
        self.complex.n() - 3
    }

    pub fn generator_name(&self, g: usize) -> String {
        self.generators.get(g).name(self.complex.ground())
    }

    pub fn generator_element(&self, kind: DivisorKind) -> Result<RingElement> {
        self.generators
            .index_of(kind)
            .map(RingElement::generator)
            .ok_or_else(|| Error::Domain(format!("{kind:?} is not a boundary divisor")))
    }

    fn divisors_meet(&self, g: usize, h: usize) -> bool {
        self.meets[g][h]
    }

    /// No two factors are disjoint divisors.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        let f = m.raw();
        f.iter()
            .enumerate()
            .all(|(a, &g)| f[a + 1..].iter().all(|&h| self.divisors_meet(g as usize, h as usize)))
    }

    /// Standard monomials of degree `d` in ascending monomial order.
    pub fn standard_monomials(&self, d: usize) -> Vec<Monomial> {
        fn go(p: &Presentation, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
            if cur.len() == d {
                out.push(Monomial::from_indices(cur.iter().copied()));
                return;
            }
            for g in start..p.generators.len() {
                if cur.iter().all(|&h| p.divisors_meet(g, h)) {
                    cur.push(g);
                    go(p, d, g, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, d, 0, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    fn check_quad(&self, quad: [usize; 4]) -> Result<()> {
        if quad.iter().any(|&x| x >= self.complex.n()) {
            return Err(Error::Domain("label outside the ground set".into()));
        }
        if LabelSet::from_indices(quad).len() != 4 {
            return Err(Error::Domain("WDVV needs four distinct labels".into()));
        }
        Ok(())
    }

    /// `Σ_{ijΔkl} δ − Σ_{ikΔjl} δ` over codimension-one graphs, through the
    /// separation predicate.
    pub fn wdvv(&self, i: usize, j: usize, k: usize, l: usize) -> Result<RingElement> {
        self.check_quad([i, j, k, l])?;
        let mut e = RingElement::zero();
        for (g, d) in self.generators.divisors().iter().enumerate() {
            if d.graph().separates(i, j, k, l)? {
                e.add_term(Monomial::generator(g), BigInt::one());
            }
            if d.graph().separates(i, k, j, l)? {
                e.add_term(Monomial::generator(g), -BigInt::one());
            }
        }
        Ok(e)
    }

    /// The same relation written with collision classes `E_st` (zero when
    /// `{s,t}` is not a face) and two-component classes `D_I`:
    /// `E_ij + E_kl + Σ_{i,j∈I; k,l∉I} D_I − (E_ik + E_jl + Σ_{i,k∈I; j,l∉I} D_I)`.
    pub fn wdvv_keel_form(&self, i: usize, j: usize, k: usize, l: usize) -> Result<RingElement> {
        self.check_quad([i, j, k, l])?;
        let k_ = &self.complex;
        let u = k_.universe();
        let collision = |s: usize, t: usize| -> RingElement {
            let kind = DivisorKind::Sigma(s.min(t), s.max(t));
            self.generators
                .index_of(kind)
                .map(RingElement::generator)
                .unwrap_or_default()
        };
        let two_component = |a: usize, b: usize, c: usize, d: usize| -> RingElement {
            let inside = LabelSet::from_indices([a, b]);
            let outside = LabelSet::from_indices([c, d]);
            let free = u.difference(inside).difference(outside);
            let mut e = RingElement::zero();
            for extra in free.subsets() {
                let side = inside.union(extra);
                if !k_.is_face(side) && !k_.is_face(side.complement(u)) {
                    let kind = DivisorKind::Pi(canonical_side(side, u));
                    let g = self.generators.index_of(kind).expect("valid two-component divisor");
                    e.add_term(Monomial::generator(g), BigInt::one());
                }
            }
            e
        };
        let lhs = &(&collision(i, j) + &collision(k, l)) + &two_component(i, j, k, l);
        let rhs = &(&collision(i, k) + &collision(j, l)) + &two_component(i, k, j, l);
        Ok(&lhs - &rhs)
    }

    /// Class of the image of the Keel divisor `D_I`.
    pub fn pushforward(&self, side: LabelSet) -> Result<RingElement> {
        match divisor::pushforward_divisor(&self.complex, side)? {
            Some(d) => self.generator_element(d.kind()),
            None => Ok(RingElement::zero()),
        }
    }

    fn component(&self, d: usize) -> Result<Arc<DegreeComponent>> {
        match self.components.get(d) {
            Some(cell) => {
                if let Some(c) = cell.get() {
                    return Ok(c.clone());
                }
                let c = Arc::new(self.compute_component(d)?);
                Ok(cell.get_or_init(|| c).clone())
            }
            None => Ok(Arc::new(self.compute_component(d)?)),
        }
    }

    fn relation_rows<C: Coeff>(&self, d: usize, column: &HashMap<Monomial, u32>) -> Result<Option<Vec<Row<C>>>> {
        let to_row = |terms: Vec<(u32, BigInt)>| -> Option<Row<C>> {
            let mut r: Row<C> = Vec::with_capacity(terms.len());
            for (c, v) in terms {
                r.push((c, C::from_big(&v)?));
            }
            r.sort_by_key(|&(c, _)| c);
            Some(r)
        };
        let mut rows = Vec::new();
        match d {
            0 => {}
            1 => {
                for rel in &self.relations.linear {
                    let terms = rel
                        .element
                        .terms()
                        .map(|(m, c)| (column[m], c.clone()))
                        .collect();
                    match to_row(terms) {
                        Some(r) => rows.push(r),
                        None => return Ok(None),
                    }
                }
            }
            _ => {
                let linear = self.component(1)?;
                let lattice: Vec<Vec<(usize, BigInt)>> = linear
                    .echelon
                    .rows_by_pivot()
                    .into_iter()
                    .map(|row| {
                        row.iter()
                            .map(|(c, v)| (linear.monomials[*c as usize].raw()[0] as usize, v.clone()))
                            .collect()
                    })
                    .collect();
                for m in self.standard_monomials(d - 1) {
                    for l in &lattice {
                        let terms: Vec<(u32, BigInt)> = l
                            .iter()
                            .filter(|(g, _)| m.factors().all(|h| self.divisors_meet(*g, h)))
                            .map(|(g, v)| (column[&m.times_generator(*g)], v.clone()))
                            .collect();
                        if terms.is_empty() {
                            continue;
                        }
                        match to_row(terms) {
                            Some(r) => rows.push(r),
                            None => return Ok(None),
                        }
                    }
                }
            }
        }
        Ok(Some(rows))
    }

    fn eliminate<C: Coeff>(&self, d: usize, column: &HashMap<Monomial, u32>, ncols: usize) -> Result<Option<Echelon<C>>> {
        let Some(mut rows) = self.relation_rows::<C>(d, column)? else {
            return Ok(None);
        };
        rows.sort_by_key(|r| (std::cmp::Reverse(r[0].0), r.len()));
        let mut ech = Echelon::new(ncols);
        for r in rows {
            if ech.insert(r).is_none() {
                return Ok(None);
            }
        }
        Ok(ech.finish().map(|_| ech))
    }

    fn compute_component(&self, d: usize) -> Result<DegreeComponent> {
        let mut monomials = self.standard_monomials(d);
        monomials.reverse();
        let column: HashMap<Monomial, u32> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let ncols = monomials.len();
        let echelon = match self.eliminate::<i64>(d, &column, ncols)? {
            Some(e) => e.to_big(),
            None => self
                .eliminate::<BigInt>(d, &column, ncols)?
                .expect("big integer elimination cannot overflow"),
        };
        let torsion = echelon.torsion();
        Ok(DegreeComponent { monomials, column, echelon, torsion })
    }

    /// Rank and torsion of degree `d`. Degrees above `#S - 3` must vanish;
    /// a nonzero answer there is reported as an inconsistency.
    pub fn graded_rank(&self, d: usize) -> Result<GradedRank> {
        let c = self.component(d)?;
        let out = GradedRank { rank: c.rank(), torsion: c.torsion.clone() };
        if d > self.top_degree() && (out.rank != 0 || !out.torsion.is_empty()) {
            return Err(Error::Inconsistency(format!(
                "degree {d} exceeds the dimension {} but is nonzero",
                self.top_degree()
            )));
        }
        Ok(out)
    }

    /// Number of standard monomials (matrix columns) in degree `d`.
    pub fn column_count(&self, d: usize) -> usize {
        self.standard_monomials(d).len()
    }

    pub fn poincare_profile(&self) -> Result<PoincareProfile> {
        let top = self.top_degree();
        if top >= 1 {
            self.component(1)?;
        }
        let pieces: Vec<GradedRank> = (0..=top)
            .into_par_iter()
            .map(|d| self.graded_rank(d))
            .collect::<Result<_>>()?;
        Ok(PoincareProfile {
            ranks: pieces.iter().map(|p| p.rank).collect(),
            torsion: pieces.into_iter().map(|p| p.torsion).collect(),
        })
    }

    /// Canonical representative modulo the relations. Components above the
    /// top degree vanish.
    pub fn normal_form(&self, x: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for d in x.degrees() {
            if d > self.top_degree() {
                continue;
            }
            let comp = self.component(d)?;
            let mut v: Row<BigInt> = x
                .terms()
                .filter(|(m, _)| m.degree() == d)
                .filter_map(|(m, c)| comp.column.get(m).map(|&col| (col, c.clone())))
                .collect();
            v.sort_by_key(|&(c, _)| c);
            let reduced = comp.echelon.reduce(v).expect("big integers do not overflow");
            for (col, c) in reduced {
                out.add_term(comp.monomials[col as usize].clone(), c);
            }
        }
        Ok(out)
    }

    /// Product in the ring, in normal form.
    pub fn multiply(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        let top = self.top_degree();
        let mut prod = RingElement::zero();
        for (a, p) in x.terms() {
            for (b, q) in y.terms() {
                let m = a.times(b);
                if m.degree() <= top && self.is_standard(&m) {
                    prod.add_term(m, p * q);
                }
            }
        }
        self.normal_form(&prod)
    }

    /// One generator per edge and, for each leg carrying markings
    /// `b0 < b1 < ... < bk`, the collisions `Σ_{b0 b1}, ..., Σ_{b0 bk}`.
    pub fn stratum_factors(&self, graph: &KStableGraph) -> Result<Vec<usize>> {
        let report = graph.validate(&self.complex)?;
        if !report.is_valid() {
            return Err(Error::Domain(format!(
                "not a stable graph (conditions {:?} fail)",
                report.failed_conditions()
            )));
        }
        let lookup = |kind: DivisorKind| {
            self.generators
                .index_of(kind)
                .ok_or_else(|| Error::Inconsistency(format!("{kind:?} missing from the generators")))
        };
        let mut factors = Vec::new();
        for &side in graph.splits() {
            factors.push(lookup(DivisorKind::Pi(side))?);
        }
        for &block in graph.blocks() {
            let mut it = block.iter();
            let b0 = it.next().expect("blocks are nonempty");
            for b in it {
                factors.push(lookup(DivisorKind::Sigma(b0, b))?);
            }
        }
        Ok(factors)
    }

    /// Class of the closed stratum of `graph`, as the product of its factors.
    pub fn stratum_class(&self, graph: &KStableGraph) -> Result<RingElement> {
        let mut acc = RingElement::one();
        for g in self.stratum_factors(graph)? {
            acc = self.multiply(&acc, &RingElement::generator(g))?;
        }
        Ok(acc)
    }

    /// Generator permutation induced by a relabelling `i -> perm[i]` that
    /// fixes the complex.
    pub fn generator_permutation(&self, perm: &[usize]) -> Result<Vec<usize>> {
        if self.complex.permuted(perm) != self.complex {
            return Err(Error::Domain("permutation does not fix the complex".into()));
        }
        self.generators
            .divisors()
            .iter()
            .map(|d| {
                let img = BoundaryDivisor::from_graph(&self.complex, &d.graph().permuted(perm))?;
                self.generators
                    .index_of(img.kind())
                    .ok_or_else(|| Error::Inconsistency("image of a divisor is missing".into()))
            })
            .collect()
    }

    /// Reduced Hermite basis of the relation lattice in degree `d`, as ring
    /// elements.
    pub fn relation_basis(&self, d: usize) -> Result<Vec<RingElement>> {
        let comp = self.component(d)?;
        Ok(comp
            .echelon
            .rows_by_pivot()
            .into_iter()
            .map(|row| {
                RingElement::from_terms(
                    row.iter()
                        .map(|(c, v)| (comp.monomials[*c as usize].clone(), v.clone())),
                )
            })
            .collect())
    }
}
