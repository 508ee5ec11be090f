//! Exact integer row reduction: sparse Hermite normal form and dense Smith
//! normal form.
//!
//! Elimination runs first over checked `i64` arithmetic; any overflow aborts
//! and the caller reruns over `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient arithmetic. Operations return `None` on overflow.
pub(crate) trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero_value(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_one_value(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Floor division by a positive divisor.
    fn div_floor(&self, o: &Self) -> Option<Self>;
    fn divides(&self, o: &Self) -> bool;
    /// `(g, s, t)` with `g = gcd(a, b) > 0 = s a + t b`.
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)>;
}

impl Coeff for i64 {
    fn zero_value() -> Self {
        0
    }
    fn one_value() -> Self {
        1
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero_value(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_one_value(&self) -> bool {
        *self == 1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        self.checked_div_euclid(*o)
    }
    fn divides(&self, o: &Self) -> bool {
        *self != 0 && o.checked_rem(*self) == Some(0)
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let (mut r0, mut r1) = (*a, *b);
        let (mut s0, mut s1) = (1i64, 0i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0.checked_div(r1)?;
            (r0, r1) = (r1, r0.checked_sub(q.checked_mul(r1)?)?);
            (s0, s1) = (s1, s0.checked_sub(q.checked_mul(s1)?)?);
            (t0, t1) = (t1, t0.checked_sub(q.checked_mul(t1)?)?);
        }
        if r0 < 0 {
            Some((r0.checked_neg()?, s0.checked_neg()?, t0.checked_neg()?))
        } else {
            Some((r0, s0, t0))
        }
    }
}

impl Coeff for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_one_value(&self) -> bool {
        One::is_one(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, o))
    }
    fn divides(&self, o: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(o % self))
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = a.extended_gcd(b);
        if Signed::is_negative(&e.gcd) {
            Some((-e.gcd, -e.x, -e.y))
        } else {
            Some((e.gcd, e.x, e.y))
        }
    }
}

/// Sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub(crate) type Row<C> = Vec<(u32, C)>;

/// `ca * a + cb * b`.
pub(crate) fn lincomb<C: Coeff>(a: &[(u32, C)], ca: &C, b: &[(u32, C)], cb: &C) -> Option<Row<C>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (col, v) = if take_a {
            let r = (a[i].0, a[i].1.mul(ca)?);
            i += 1;
            r
        } else if take_b {
            let r = (b[j].0, b[j].1.mul(cb)?);
            j += 1;
            r
        } else {
            let r = (a[i].0, a[i].1.mul(ca)?.add(&b[j].1.mul(cb)?)?);
            i += 1;
            j += 1;
            r
        };
        if !v.is_zero_value() {
            out.push((col, v));
        }
    }
    Some(out)
}

/// Row-style Hermite normal form of a lattice in `Z^ncols`: rows have
/// positive leading entries at distinct columns and, once finished, every
/// entry above a pivot lies in `[0, pivot)`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<C> {
    ncols: usize,
    rows: Vec<Row<C>>,
    slot_of_col: Vec<Option<u32>>,
}

impl<C: Coeff> Echelon<C> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), slot_of_col: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add a generator of the lattice.
    pub fn insert(&mut self, mut row: Row<C>) -> Option<()> {
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                return Some(());
            };
            match self.slot_of_col[col as usize] {
                None => {
                    if lead.is_neg() {
                        let m1 = C::one_value().neg()?;
                        row = lincomb(&row, &m1, &[], &C::zero_value())?;
                    }
                    self.slot_of_col[col as usize] = Some(self.rows.len() as u32);
                    self.rows.push(row);
                    return Some(());
                }
                Some(slot) => {
                    let basis = &self.rows[slot as usize];
                    let p = basis[0].1.clone();
                    if p.divides(&lead) {
                        let q = lead.div_floor(&p)?.neg()?;
                        row = lincomb(&row, &C::one_value(), basis, &q)?;
                    } else {
                        let (g, s, t) = C::ext_gcd(&lead, &p)?;
                        let a_g = lead.div_floor(&g)?;
                        let p_g = p.div_floor(&g)?;
                        let new_basis = lincomb(&row, &s, basis, &t)?;
                        let rest = lincomb(&row, &p_g, basis, &a_g.neg()?)?;
                        self.rows[slot as usize] = new_basis;
                        row = rest;
                    }
                }
            }
        }
    }

    /// Reduce entries above pivots, making the basis the unique reduced HNF.
    pub fn finish(&mut self) -> Option<()> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&s| std::cmp::Reverse(self.rows[s][0].0));
        for s in order {
            let mut row = std::mem::take(&mut self.rows[s]);
            let mut idx = 1;
            while idx < row.len() {
                let (col, x) = row[idx].clone();
                if let Some(other) = self.slot_of_col[col as usize] {
                    let basis = &self.rows[other as usize];
                    let q = x.div_floor(&basis[0].1)?;
                    if !q.is_zero_value() {
                        row = lincomb(&row, &C::one_value(), basis, &q.neg()?)?;
                    }
                }
                idx = row.partition_point(|&(c, _)| c <= col);
            }
            self.rows[s] = row;
        }
        Some(())
    }

    /// Reduce a vector modulo the lattice (requires [`Self::finish`]).
    pub fn reduce(&self, mut v: Row<C>) -> Option<Row<C>> {
        let mut idx = 0;
        while idx < v.len() {
            let (col, x) = v[idx].clone();
            if let Some(slot) = self.slot_of_col[col as usize] {
                let basis = &self.rows[slot as usize];
                let q = x.div_floor(&basis[0].1)?;
                if !q.is_zero_value() {
                    v = lincomb(&v, &C::one_value(), basis, &q.neg()?)?;
                }
            }
            idx = v.partition_point(|&(c, _)| c <= col);
        }
        Some(v)
    }

    /// Rows sorted by pivot column.
    pub fn rows_by_pivot(&self) -> Vec<&Row<C>> {
        let mut r: Vec<&Row<C>> = self.rows.iter().collect();
        r.sort_by_key(|row| row[0].0);
        r
    }

    pub fn to_big(&self) -> Echelon<BigInt> {
        Echelon {
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, v.to_big())).collect())
                .collect(),
            slot_of_col: self.slot_of_col.clone(),
        }
    }

    /// Elementary divisors greater than one of the cokernel `Z^ncols / rows`.
    ///
    /// Unit pivots of a reduced HNF are alone in their column, so their rows
    /// and columns split off; the rest goes through a dense Smith form.
    pub fn torsion(&self) -> Vec<BigInt> {
        let hard: Vec<&Row<C>> = self.rows.iter().filter(|r| !r[0].1.is_one_value()).collect();
        if hard.is_empty() {
            return Vec::new();
        }
        let unit_cols: std::collections::HashSet<u32> = self
            .rows
            .iter()
            .filter(|r| r[0].1.is_one_value())
            .map(|r| r[0].0)
            .collect();
        let mut cols: Vec<u32> = hard
            .iter()
            .flat_map(|r| r.iter().map(|(c, _)| *c))
            .filter(|c| !unit_cols.contains(c))
            .collect();
        cols.sort_unstable();
        cols.dedup();
        let mut dense: Vec<Vec<BigInt>> = vec![vec![<BigInt as Zero>::zero(); cols.len()]; hard.len()];
        for (i, r) in hard.iter().enumerate() {
            for (c, v) in r.iter() {
                if let Ok(j) = cols.binary_search(c) {
                    dense[i][j] = v.to_big();
                }
            }
        }
        smith_diagonal(dense).into_iter().filter(|d| !One::is_one(d)).collect()
    }
}

/// Nonzero diagonal of the Smith normal form (each entry divides the next).
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..m {
            if !a[i][t].is_zero() {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                for j in t..n {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..n {
            if !a[t][j].is_zero() {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                for i in t..m {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the whole remaining block
        let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = offender {
            let src = a[i].clone();
            for (dst, v) in a[t].iter_mut().zip(src) {
                *dst += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
