//! Point counts over finite fields, summed over the boundary stratification.
//!
//! Each open stratum is a product over vertices of configuration spaces of
//! `n(v)` distinct points on a line modulo automorphisms, which have
//! `(q-2)(q-3)...(q-n(v)+2)` points over a field with `q` elements. The total
//! is a polynomial in `q` whose coefficients are compared against the graded
//! ranks of the presented ring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ring::{PoincareProfile, Presentation};
use crate::strata::{enumerate_graphs, Codim};

/// Integer coefficients `c_0..c_D` of the point count in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCountPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl PointCountPolynomial {
    pub fn evaluate(&self, q: u64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn is_prime_power(q: u64) -> bool {
    (2..=q).find(|d| q % d == 0).is_some_and(|p| {
        let mut r = q;
        while r % p == 0 {
            r /= p;
        }
        r == 1
    })
}

/// Points of the moduli of `n` distinct points on the line over `F_q`:
/// `∏_{i=2}^{n-2} (q - i)`.
pub fn open_moduli_count(n: usize, q: u64) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    if !is_prime_power(q) {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    if q + 1 < n as u64 {
        return Err(Error::Domain(format!("q = {q} is too small for {n} points")));
    }
    Ok((2..=n as u64 - 2).fold(BigInt::one(), |acc, i| acc * BigInt::from(q - i)))
}

/// Valences of the vertices of every stratum.
pub fn stratum_valences(complex: &SimplicialComplex) -> Result<Vec<Vec<usize>>> {
    enumerate_graphs(complex, Codim::All)?
        .iter()
        .map(|g| Ok(g.vertices()?.iter().map(|v| v.valence()).collect()))
        .collect()
}

fn count_with(valences: &[Vec<usize>], q: u64) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for vs in valences {
        let mut term = BigInt::one();
        for &v in vs {
            term *= open_moduli_count(v, q)?;
        }
        total += term;
    }
    Ok(total)
}

/// Number of `F_q`-points, as a sum over strata.
pub fn count_points(complex: &SimplicialComplex, q: u64) -> Result<BigInt> {
    if q + 1 < complex.n() as u64 {
        return Err(Error::Domain(format!(
            "q = {q} is too small for {} markings (need q >= {})",
            complex.n(),
            complex.n() - 1
        )));
    }
    count_with(&stratum_valences(complex)?, q)
}

/// The `count` smallest primes not below `from`.
pub fn evaluation_primes(from: u64, count: usize) -> Vec<u64> {
    (from.max(2)..).filter(|&p| is_prime(p)).take(count).collect()
}

/// Solve for the coefficients of the degree-`points.len()-1` polynomial
/// through `(x, y)` pairs, exactly.
pub(crate) fn interpolate(points: &[(u64, BigInt)]) -> Vec<BigRational> {
    let m = points.len();
    // Vandermonde system, Gauss-Jordan over the rationals
    let mut a: Vec<Vec<BigRational>> = points
        .iter()
        .map(|(x, y)| {
            let x = BigRational::from_integer(BigInt::from(*x));
            let mut row: Vec<BigRational> = Vec::with_capacity(m + 1);
            let mut p = BigRational::one();
            for _ in 0..m {
                row.push(p.clone());
                p *= &x;
            }
            row.push(BigRational::from_integer(y.clone()));
            row
        })
        .collect();
    for c in 0..m {
        let piv = (c..m).find(|&r| !a[r][c].is_zero()).expect("distinct nodes");
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..=m {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[m].clone()).collect()
}

/// Interpolate the point count at the `#S-2` smallest primes `>= #S-1` and
/// check that the result is an integral, nonnegative, palindromic polynomial
/// with constant and leading coefficient 1.
pub fn interpolate_profile(complex: &SimplicialComplex) -> Result<PointCountPolynomial> {
    let dim = complex.n() - 3;
    let valences = stratum_valences(complex)?;
    let primes = evaluation_primes(complex.n() as u64 - 1, dim + 1);
    let points: Vec<(u64, BigInt)> = primes
        .par_iter()
        .map(|&q| count_with(&valences, q).map(|c| (q, c)))
        .collect::<Result<_>>()?;
    let mut coeffs = Vec::with_capacity(dim + 1);
    for c in interpolate(&points) {
        if !c.is_integer() {
            return Err(Error::Inconsistency(format!("non-integral point-count coefficient {c}")));
        }
        coeffs.push(c.to_integer());
    }
    let poly = PointCountPolynomial { coeffs };
    if poly.coeffs.iter().any(|c| c.is_negative()) {
        return Err(Error::Inconsistency(format!("negative point-count coefficient in {:?}", poly.coeffs)));
    }
    if !poly.coeffs[0].is_one() || !poly.coeffs[dim].is_one() || !poly.is_palindromic() {
        return Err(Error::Inconsistency(format!("point count {:?} is not a palindromic monic polynomial", poly.coeffs)));
    }
    Ok(poly)
}

/// Point-count coefficients against presentation ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub point_count_coeffs: Vec<BigInt>,
    pub presentation_ranks: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub matches: bool,
}

pub fn compare(presentation: &Presentation) -> Result<OracleReport> {
    let poly = interpolate_profile(presentation.complex())?;
    let PoincareProfile { ranks, torsion } = presentation.poincare_profile()?;
    let matches = poly.coeffs.len() == ranks.len()
        && poly.coeffs.iter().zip(&ranks).all(|(c, r)| *c == BigInt::from(*r));
    Ok(OracleReport { point_count_coeffs: poly.coeffs, presentation_ranks: ranks, torsion, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::GroundSet;
    use crate::labels::LabelSet;

    fn complex(n: usize, faces: &[&[usize]]) -> SimplicialComplex {
        let faces: Vec<LabelSet> = faces
            .iter()
            .map(|f| LabelSet::from_indices(f.iter().map(|l| l - 1)))
            .collect();
        SimplicialComplex::from_faces(GroundSet::numbered(n).unwrap(), faces).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn open_counts() {
        assert_eq!(open_moduli_count(3, 2).unwrap(), BigInt::from(1));
        assert_eq!(open_moduli_count(4, 5).unwrap(), BigInt::from(3));
        assert_eq!(open_moduli_count(5, 7).unwrap(), BigInt::from(20));
        assert!(open_moduli_count(6, 4).is_err());
        assert!(open_moduli_count(4, 6).is_err(), "6 is not a prime power");
        assert_eq!(open_moduli_count(4, 4).unwrap(), BigInt::from(2));
    }

    #[test]
    fn stratum_sums() {
        assert_eq!(count_points(&complex(4, &[]), 5).unwrap(), BigInt::from(6));
        assert_eq!(count_points(&complex(5, &[]), 5).unwrap(), BigInt::from(51));
        assert_eq!(count_points(&complex(4, &[&[1, 2]]), 5).unwrap(), BigInt::from(6));
        assert!(count_points(&complex(6, &[]), 3).is_err());
    }

    #[test]
    fn interpolated_profiles() {
        assert_eq!(interpolate_profile(&complex(5, &[])).unwrap().coeffs, ints(&[1, 5, 1]));
        assert_eq!(interpolate_profile(&complex(6, &[])).unwrap().coeffs, ints(&[1, 16, 16, 1]));
        assert_eq!(interpolate_profile(&complex(5, &[&[3, 4, 5]])).unwrap().coeffs, ints(&[1, 4, 1]));
        assert_eq!(interpolate_profile(&complex(3, &[])).unwrap().coeffs, ints(&[1]));
    }

    #[test]
    fn polynomial_predicts_fresh_fields() {
        let k = complex(6, &[&[1, 2], &[3, 4]]);
        let poly = interpolate_profile(&k).unwrap();
        for q in [16u64, 23, 27, 101] {
            assert_eq!(poly.evaluate(q), count_points(&k, q).unwrap());
        }
    }

    #[test]
    fn interpolation_is_exact() {
        let pts: Vec<(u64, BigInt)> = [2u64, 3, 5].iter().map(|&x| (x, BigInt::from(x * x + 3 * x + 7))).collect();
        let c = interpolate(&pts);
        assert_eq!(c, ints(&[7, 3, 1]).into_iter().map(BigRational::from_integer).collect::<Vec<_>>());
    }
}
