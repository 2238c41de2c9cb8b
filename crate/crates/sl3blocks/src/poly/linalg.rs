use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polynomial::{Monomial, SparsePolynomial};
use super::PolyError;

pub type RationalMatrix = Vec<Vec<BigRational>>;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Exact inverse by Gauss–Jordan elimination over `ℚ`.
pub fn invert_rational(m: &RationalMatrix) -> Result<RationalMatrix, PolyError> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(PolyError::Singular)?;
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sign and natural log of `|det m|` by partial-pivoting LU in `f64`;
/// a singular matrix gives sign `0` and `-∞`.
pub fn log_abs_det_f64(m: &[Vec<f64>]) -> (f64, f64) {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut sign = 1.0;
    let mut log = 0.0;
    for k in 0..n {
        let (piv, best) =
            (k..n)
                .map(|i| (i, a[i][k].abs()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        let pk = a[k][k];
        if pk < 0.0 {
            sign = -sign;
        }
        log += pk.abs().ln();
        for i in k + 1..n {
            let f = a[i][k] / pk;
            if f != 0.0 {
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
    }
    (sign, log)
}

pub fn det_f64(m: &[Vec<f64>]) -> f64 {
    let (s, l) = log_abs_det_f64(m);
    s * l.exp()
}

/// Rank of the coefficient matrix of a list of polynomials.
pub fn rank_of(polys: &[SparsePolynomial]) -> usize {
    let basis: BTreeSet<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    let basis: Vec<Monomial> = basis.into_iter().collect();
    let rows: Vec<Vec<BigInt>> = polys.iter().map(|p| p.integer_row(&basis)).collect();
    rank_bareiss(rows)
}

#[allow(dead_code)]
pub(crate) fn max_abs(m: &RationalMatrix) -> BigRational {
    m.iter()
        .flatten()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}
