use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A monomial in the generators: the sorted multiset of generator indices.
///
/// Ordered by degree, then lexicographically on the sorted index list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Monomial(vec![g as u32])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut v: Vec<u32> = it.into_iter().map(|g| g as u32).collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Generator indices with repetition, ascending.
    pub fn factors(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&g| g as usize)
    }

    /// `(generator, exponent)` pairs, ascending.
    pub fn exponents(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &g in &self.0 {
            match out.last_mut() {
                Some((h, e)) if *h == g as usize => *e += 1,
                _ => out.push((g as usize, 1)),
            }
        }
        out
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] <= other.0[j]) {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        Monomial(v)
    }

    pub fn times_generator(&self, g: usize) -> Monomial {
        let g = g as u32;
        let mut v = self.0.clone();
        let at = v.partition_point(|&x| x <= g);
        v.insert(at, g);
        Monomial(v)
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.0)
    }
}

/// An integer combination of monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), BigInt::one())
    }

    pub fn generator(g: usize) -> Self {
        Self::monomial(Monomial::generator(g), BigInt::one())
    }

    pub fn monomial(m: Monomial, coeff: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(m, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest degree present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> RingElement {
        RingElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.degree()).collect();
        d.dedup();
        d
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        if k.is_zero() {
            return Self::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Apply a map on generator indices to every monomial.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> RingElement {
        Self::from_terms(
            self.terms()
                .map(|(m, c)| (Monomial::from_indices(m.factors().map(&f)), c.clone())),
        )
    }

    /// Keep only the terms whose monomial satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-BigInt::one())
    }
}

/// Free (unreduced) product.
impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a.times(b), x * y);
            }
        }
        out
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}{:?}", c.abs(), m)?;
        }
        Ok(())
    }
}
