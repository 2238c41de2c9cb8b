use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::graph::DimerGraph;
use super::DimerError;
use crate::combinatorics::{row_content, Filling, Signature};
use crate::poly::{specht, SparsePolynomial};
use crate::serde_util;
use crate::webs::{matrix_m, ChangeOfBasis};

/// Determinant arithmetic for the finite-size computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Backend {
    /// Fraction-free elimination over the integers.
    Exact,
    /// Log-determinants from partial-pivoting LU in `f64`.
    Float,
}

fn removed_for_color(t: &Filling, g: &DimerGraph, a: usize) -> Vec<bool> {
    let c = row_content(t, a);
    (1..=g.signature.d()).map(|j| !c.contains(&j)).collect()
}

/// `Z(e_T) = Z_1 Z_2 Z_3`, where `Z_a` counts dimer covers of the graph with
/// the boundary vertices `v_j`, `j ∉ C_a`, removed.
pub fn z_tableau(t: &Filling, g: &DimerGraph) -> BigInt {
    (1..=3)
        .map(|a| g.dimer_partition(&removed_for_color(t, g, a)))
        .product()
}

/// `ln Z(e_T)`, or `-∞` when it vanishes.
pub fn z_tableau_log(t: &Filling, g: &DimerGraph) -> f64 {
    (1..=3)
        .map(|a| g.log_dimer_partition(&removed_for_color(t, g, a)))
        .sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectionRow {
    /// 1-based index of the reduced web.
    pub lambda: usize,
    /// `Pr_λ^T`, present on the exact backend.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub finite: Option<BigRational>,
    pub finite_f64: f64,
    /// `P_λ^T` at the supplied points, if any.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub limit: Option<BigRational>,
    pub rel_err: Option<f64>,
}

fn serialize_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => serde_util::rational(r, s),
        None => s.serialize_none(),
    }
}

/// Finite-size connection probabilities `Pr_λ^T` for one reference tableau.
#[derive(Debug, Clone, Serialize)]
pub struct ConnectionReport {
    pub signature: Vec<u8>,
    /// 1-based index of the reference tableau.
    pub tableau: usize,
    pub backend: Backend,
    pub rows: Vec<ConnectionRow>,
}

impl ConnectionReport {
    /// `Σ_λ Pr_λ^T` on the exact backend.
    pub fn exact_total(&self) -> Option<BigRational> {
        self.rows.iter().map(|r| r.finite.clone()).sum()
    }

    /// Fills in limit values at `x` together with relative errors.
    pub fn attach_limits(&mut self, basis: &ChangeOfBasis, x: &[BigRational]) -> Result<(), DimerError> {
        for row in &mut self.rows {
            let p = limit_probability(basis, row.lambda, self.tableau, x)?;
            let pf = p.to_f64().unwrap_or(f64::NAN);
            let diff = (row.finite_f64 - pf).abs();
            row.rel_err = Some(if pf == 0.0 { diff } else { diff / pf.abs() });
            row.limit = Some(p);
        }
        Ok(())
    }
}

fn tableau_index(basis: &ChangeOfBasis, t: usize) -> Result<usize, DimerError> {
    if t == 0 || t > basis.size() {
        return Err(DimerError::TableauOutOfRange {
            index: t,
            max: basis.size(),
        });
    }
    Ok(t - 1)
}

/// `Pr_λ^T = C_λ M_{Tλ} / Z(e_T)` with `C = M⁻¹ Z(e_·)`, for the 1-based
/// reference tableau `t`, on the exact backend.
pub fn finite_connection_probabilities(g: &DimerGraph, t: usize) -> Result<ConnectionReport, DimerError> {
    let basis = matrix_m(&g.signature)?;
    finite_connection_probabilities_with(&basis, g, t, Backend::Exact)
}

pub fn finite_connection_probabilities_with(
    basis: &ChangeOfBasis,
    g: &DimerGraph,
    t: usize,
    backend: Backend,
) -> Result<ConnectionReport, DimerError> {
    let ti = tableau_index(basis, t)?;
    let n = basis.size();
    let rows = match backend {
        Backend::Exact => {
            let z: Vec<BigRational> = basis
                .tableaux
                .iter()
                .map(|u| BigRational::from_integer(z_tableau(u, g)))
                .collect();
            if z[ti].is_zero() {
                return Err(DimerError::ZeroPartition);
            }
            (0..n)
                .map(|l| {
                    let c: BigRational = (0..n).map(|u| &basis.m_inv[l][u] * &z[u]).sum();
                    let pr = c * BigRational::from_integer(basis.m[ti][l].clone()) / &z[ti];
                    ConnectionRow {
                        lambda: l + 1,
                        finite_f64: pr.to_f64().unwrap_or(f64::NAN),
                        finite: Some(pr),
                        limit: None,
                        rel_err: None,
                    }
                })
                .collect()
        }
        Backend::Float => {
            let logs: Vec<f64> = basis.tableaux.iter().map(|u| z_tableau_log(u, g)).collect();
            if logs[ti] == f64::NEG_INFINITY {
                return Err(DimerError::ZeroPartition);
            }
            (0..n)
                .map(|l| {
                    let c: f64 = (0..n)
                        .map(|u| basis.m_inv[l][u].to_f64().unwrap_or(f64::NAN) * (logs[u] - logs[ti]).exp())
                        .sum();
                    ConnectionRow {
                        lambda: l + 1,
                        finite: None,
                        finite_f64: c * basis.m[ti][l].to_f64().unwrap_or(f64::NAN),
                        limit: None,
                        rel_err: None,
                    }
                })
                .collect()
        }
    };
    Ok(ConnectionReport {
        signature: g.signature.s().to_vec(),
        tableau: t,
        backend,
        rows,
    })
}

/// The scaling limit `P_λ^T` as a quotient of polynomials: the numerator
/// `M_{Tλ} Σ_U M⁻¹_{λU} specht(Uᵗ)` and the denominator `specht(Tᵗ)`, with
/// `λ` and `t` 1-based.
pub fn limit_probability_parts(
    basis: &ChangeOfBasis,
    lambda: usize,
    t: usize,
) -> Result<(SparsePolynomial, SparsePolynomial), DimerError> {
    let ti = tableau_index(basis, t)?;
    let li = tableau_index(basis, lambda)?;
    let d = basis.signature.d();
    let mut num = SparsePolynomial::zero(d);
    let m = BigRational::from_integer(basis.m[ti][li].clone());
    if !m.is_zero() {
        for (u, tab) in basis.tableaux.iter().enumerate() {
            let c = &basis.m_inv[li][u] * &m;
            if !c.is_zero() {
                num = num + specht(&tab.transpose(), d).scale(&c);
            }
        }
    }
    let den = specht(&basis.tableaux[ti].transpose(), d);
    Ok((num, den))
}

/// `P_λ^T` at strictly increasing points `x`.
pub fn limit_probability(
    basis: &ChangeOfBasis,
    lambda: usize,
    t: usize,
    x: &[BigRational],
) -> Result<BigRational, DimerError> {
    let d = basis.signature.d();
    if x.len() != d {
        return Err(DimerError::WrongPointCount {
            expected: d,
            found: x.len(),
        });
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DimerError::CollidingPoints);
    }
    let (num, den) = limit_probability_parts(basis, lambda, t)?;
    Ok(num.eval(x) / den.eval(x))
}

/// Row and column index sets (0-based) of the Cauchy matrix for colour `a`:
/// rows `i ∈ C_a \ S`, columns `j ∈ S \ C_a`, with `S` the last `k` indices.
fn cauchy_indices(t: &Filling, a: usize, sig: &Signature) -> (Vec<usize>, Vec<usize>) {
    let c = row_content(t, a);
    let d = sig.d();
    let first_s = d - sig.k();
    let rows = (0..first_s).filter(|i| c.contains(&(i + 1))).collect();
    let cols = (first_s..d).filter(|j| !c.contains(&(j + 1))).collect();
    (rows, cols)
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            let f = &m[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

fn check_points(sig: &Signature, x: &[BigRational]) -> Result<(), DimerError> {
    if x.len() != sig.d() {
        return Err(DimerError::WrongPointCount {
            expected: sig.d(),
            found: x.len(),
        });
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DimerError::CollidingPoints);
    }
    Ok(())
}

/// `|det (1/(x_j − x_i))|` over the Cauchy index rectangle of colour `a`.
pub fn cauchy_limit_ratio(
    t: &Filling,
    a: usize,
    sig: &Signature,
    x: &[BigRational],
) -> Result<BigRational, DimerError> {
    check_points(sig, x)?;
    let (rows, cols) = cauchy_indices(t, a, sig);
    if rows.len() != cols.len() {
        return Err(DimerError::NonSquareIndexSet {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let m = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| (&x[j] - &x[i]).recip()).collect())
        .collect();
    Ok(rational_det(m).abs())
}

/// The same magnitude from the product formula
/// `Π_{i<i'} |x_i − x_{i'}| Π_{j<j'} |x_j − x_{j'}| / Π_{i,j} |x_j − x_i|`.
pub fn cauchy_product_formula(
    t: &Filling,
    a: usize,
    sig: &Signature,
    x: &[BigRational],
) -> Result<BigRational, DimerError> {
    check_points(sig, x)?;
    let (rows, cols) = cauchy_indices(t, a, sig);
    if rows.len() != cols.len() {
        return Err(DimerError::NonSquareIndexSet {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let mut v = BigRational::one();
    for set in [&rows, &cols] {
        for (p, &i) in set.iter().enumerate() {
            for &j in &set[p + 1..] {
                v *= (&x[j] - &x[i]).abs();
            }
        }
    }
    for &i in &rows {
        for &j in &cols {
            v /= (&x[j] - &x[i]).abs();
        }
    }
    Ok(v)
}
