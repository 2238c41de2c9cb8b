use num_rational::BigRational;
use serde::Serialize;

use super::BlocksError;
use crate::combinatorics::{standardize, Filling, Reading, Signature, TableauKind};
use crate::poly::qf;

/// The exponents of a block `U = Π_{i<j} (x_j − x_i)^{α(i,j)}`, stored as the
/// integers `3α(i,j)`. The diagonal holds `−s_i²` so that row sums of `α`
/// carry the self-pairing term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    signature: Signature,
    three_alpha: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct ExponentJson {
    signature: Vec<u8>,
    alpha: Vec<Vec<String>>,
}

impl Serialize for ExponentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExponentJson {
            signature: self.signature.s().to_vec(),
            alpha: (0..self.d())
                .map(|i| (0..self.d()).map(|j| self.alpha(i, j).to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl ExponentMatrix {
    /// Builds the matrix from off-diagonal values of `3α`; the diagonal is
    /// overwritten with `−s_i²`.
    pub fn from_three_alpha(signature: Signature, mut three_alpha: Vec<Vec<i64>>) -> Self {
        let d = signature.d();
        assert_eq!(three_alpha.len(), d);
        for i in 0..d {
            assert_eq!(three_alpha[i].len(), d);
            for j in 0..i {
                assert_eq!(
                    three_alpha[i][j], three_alpha[j][i],
                    "exponents must be symmetric"
                );
            }
            let s = signature.s()[i] as i64;
            three_alpha[i][i] = -s * s;
        }
        Self {
            signature,
            three_alpha,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn d(&self) -> usize {
        self.signature.d()
    }

    /// `3α(i, j)` for 0-based indices.
    pub fn three_alpha(&self, i: usize, j: usize) -> i64 {
        self.three_alpha[i][j]
    }

    pub fn alpha(&self, i: usize, j: usize) -> BigRational {
        qf(self.three_alpha[i][j], 3)
    }

    /// `Σ_k α(j, k)` including the diagonal.
    pub fn row_sum(&self, j: usize) -> BigRational {
        qf(self.three_alpha[j].iter().sum(), 3)
    }

    /// `Σ_{i<j} α(i, j)`, the homogeneity degree of the block.
    pub fn pair_sum(&self) -> BigRational {
        let mut t = 0;
        for i in 0..self.d() {
            for j in i + 1..self.d() {
                t += self.three_alpha[i][j];
            }
        }
        qf(t, 3)
    }

    /// Checks `α(i,j)² = 2/9 + q_i q_j α(i,j)/3` for `i ≠ j`, the row sums
    /// `Σ_k α(j,k) = −s_j` and the homogeneity `Σ_{i<j} α(i,j) = −d/3`.
    /// Returns a description of every failure.
    pub fn identity_failures(&self) -> Vec<String> {
        let d = self.d();
        let s = self.signature.s();
        let qv = self.signature.q();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let a = self.alpha(i, j);
                let rhs = qf(2, 9) + qf(qv[i] * qv[j], 3) * &a;
                if &a * &a != rhs {
                    out.push(format!("α({},{})² ≠ 2/9 + q q α/3", i + 1, j + 1));
                }
            }
            if self.row_sum(i) != qf(-3 * s[i] as i64, 3) {
                out.push(format!("row {} sums to {}", i + 1, self.row_sum(i)));
            }
        }
        if self.pair_sum() != qf(-(d as i64), 3) {
            out.push(format!("homogeneity {} ≠ −{d}/3", self.pair_sum()));
        }
        out
    }

    pub fn max_abs_alpha(&self) -> BigRational {
        let m = self
            .three_alpha
            .iter()
            .flatten()
            .map(|v| v.abs())
            .max()
            .unwrap_or(0);
        qf(m, 3)
    }
}

fn check_tableau(t: &Filling, sig: &Signature, allow_nonrectangular: bool) -> Result<(), BlocksError> {
    if t.content() != sig.content() || !t.is_kind(TableauKind::Rsyt) {
        return Err(BlocksError::NotRowStrict);
    }
    let ok = if allow_nonrectangular {
        t.shape().num_rows() <= 3
    } else {
        t.shape() == &sig.pi()
    };
    if !ok {
        return Err(BlocksError::ShapeNotAllowed(t.shape().parts().to_vec()));
    }
    Ok(())
}

/// `α(i,j) = ψ(i,j) − s_i s_j / 3`, where `ψ(i,j)` counts the rows of the
/// row-strict tableau `t` holding both `i` and `j`. With
/// `allow_nonrectangular`, any shape with at most three rows is accepted.
pub fn block_exponents(
    t: &Filling,
    sig: &Signature,
    allow_nonrectangular: bool,
) -> Result<ExponentMatrix, BlocksError> {
    check_tableau(t, sig, allow_nonrectangular)?;
    let d = sig.d();
    let s = sig.s();
    let mut m = vec![vec![0i64; d]; d];
    for row in t.rows() {
        for (a, &i) in row.iter().enumerate() {
            for &j in &row[a + 1..] {
                m[i - 1][j - 1] += 3;
                m[j - 1][i - 1] += 3;
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            if i != j {
                m[i][j] -= s[i] as i64 * s[j] as i64;
            }
        }
    }
    Ok(ExponentMatrix::from_three_alpha(sig.clone(), m))
}

/// Builds the exponents by lifting to `n` points: the standardized tableau
/// gives a block in the all-ones signature, group-mates are multiplied by
/// `(x_b − x_a)^{1/3}`, and each group is then collapsed onto one point.
pub fn second_representation(t: &Filling, sig: &Signature) -> Result<ExponentMatrix, BlocksError> {
    check_tableau(t, sig, false)?;
    let n = sig.n();
    let lifted_t = standardize(t, Reading::ColumnWise)?;
    let ones = Signature::new(&vec![1; n])?;
    let lifted = block_exponents(&lifted_t, &ones, false)?;
    let mut group = Vec::with_capacity(n);
    for (k, &s) in sig.s().iter().enumerate() {
        group.extend(std::iter::repeat_n(k, s as usize));
    }
    let d = sig.d();
    let mut m = vec![vec![0i64; d]; d];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (i, j) = (group[a], group[b]);
            if i == j {
                if lifted.three_alpha(a, b) + 1 != 0 {
                    return Err(BlocksError::InconsistentLift);
                }
            } else {
                m[i][j] += lifted.three_alpha(a, b);
            }
        }
    }
    Ok(ExponentMatrix::from_three_alpha(sig.clone(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_tableaux;
    use crate::poly::{q, specht, SparsePolynomial};

    fn f(rows: &[&[usize]]) -> Filling {
        Filling::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn rsyt(sig: &Signature) -> Vec<Filling> {
        enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt).unwrap()
    }

    /// Reads exponents off the factored prefactor times Specht polynomial:
    /// `Π_{i<j}(x_j−x_i)^{−s_i s_j/3}` times `specht(Tᵗ)`, with the Specht
    /// polynomial factored by trial division into differences.
    fn exponents_by_factoring(t: &Filling, sig: &Signature) -> Vec<Vec<i64>> {
        let d = sig.d();
        let mut p = specht(&t.transpose(), d);
        let mut m = vec![vec![0i64; d]; d];
        for i in 0..d {
            for j in i + 1..d {
                loop {
                    let root: Vec<_> = (0..d)
                        .map(|k| {
                            if k == i || k == j {
                                q(7)
                            } else {
                                q(3 + 5 * k as i64)
                            }
                        })
                        .collect();
                    if !p.eval(&root).is_zero() {
                        break;
                    }
                    p = divide_by_difference(&p, i, j);
                    m[i][j] += 3;
                }
                m[i][j] -= sig.s()[i] as i64 * sig.s()[j] as i64;
                m[j][i] = m[i][j];
            }
        }
        assert_eq!(p.total_degree(), Some(0), "leftover factor {p}");
        m
    }

    /// Exact division of `p` by `x_j − x_i`: synthetic division in the
    /// variable `x_j` with root `x_i`.
    fn divide_by_difference(p: &SparsePolynomial, i: usize, j: usize) -> SparsePolynomial {
        let d = p.nvars();
        let deg = p.terms().map(|(m, _)| m[j]).max().unwrap_or(0);
        let mut slices: Vec<SparsePolynomial> = vec![SparsePolynomial::zero(d); deg as usize + 1];
        for (m, c) in p.terms() {
            let mut m2 = m.clone();
            m2[j] = 0;
            slices[m[j] as usize].add_term(m2, c.clone());
        }
        let xi = SparsePolynomial::var(d, i);
        let mut quotient = SparsePolynomial::zero(d);
        let mut carry = SparsePolynomial::zero(d);
        for e in (1..=deg as usize).rev() {
            carry = &slices[e] + &(&carry * &xi);
            let mut mono = vec![0u32; d];
            mono[j] = (e - 1) as u32;
            quotient = &quotient + &(&carry * &SparsePolynomial::from_terms(d, [(mono, q(1))]));
        }
        let remainder = &slices[0] + &(&carry * &xi);
        assert!(remainder.is_zero());
        quotient
    }

    use num_traits::Zero;

    #[test]
    fn first_tableau_of_1122() {
        let sig = Signature::new(&[1, 1, 2, 2]).unwrap();
        let t1 = f(&[&[1, 2], &[3, 4], &[3, 4]]);
        let a = block_exponents(&t1, &sig, false).unwrap();
        assert_eq!(a.alpha(0, 1), qf(2, 3));
        assert_eq!(a.alpha(2, 3), qf(2, 3));
        for (i, j) in [(0, 2), (1, 2), (0, 3), (1, 3)] {
            assert_eq!(a.alpha(i, j), qf(-2, 3));
        }
    }

    #[test]
    fn last_tableau_of_all_ones() {
        let sig = Signature::new(&[1; 6]).unwrap();
        let t5 = f(&[&[1, 4], &[2, 5], &[3, 6]]);
        let a = block_exponents(&t5, &sig, false).unwrap();
        for i in 0..6 {
            for j in i + 1..6 {
                let expected = if j == i + 3 { qf(2, 3) } else { qf(-1, 3) };
                assert_eq!(a.alpha(i, j), expected, "{i} {j}");
            }
        }
    }

    #[test]
    fn exponents_match_factored_specht_prefactor() {
        for w in [&[1u8, 1, 2, 2][..], &[1; 6], &[1, 2, 1, 2, 1, 2], &[2, 1, 1, 2]] {
            let sig = Signature::new(w).unwrap();
            for t in rsyt(&sig) {
                let a = block_exponents(&t, &sig, false).unwrap();
                let oracle = exponents_by_factoring(&t, &sig);
                for i in 0..sig.d() {
                    for j in 0..sig.d() {
                        if i != j {
                            assert_eq!(a.three_alpha(i, j), oracle[i][j], "{t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lower_bound_and_rejections() {
        let sig = Signature::new(&[1, 2, 1, 2, 1, 2]).unwrap();
        for t in rsyt(&sig) {
            let a = block_exponents(&t, &sig, false).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    if i != j {
                        let s = (sig.s()[i] * sig.s()[j]) as i64;
                        assert!(a.three_alpha(i, j) >= -s);
                    }
                }
            }
        }
        let bad = f(&[&[2, 1], &[3, 4], &[3, 4]]);
        let s4 = Signature::new(&[1, 1, 2, 2]).unwrap();
        assert_eq!(block_exponents(&bad, &s4, false), Err(BlocksError::NotRowStrict));
        let ones = Signature::new(&[1; 6]).unwrap();
        let wide = f(&[&[1, 2, 3, 4], &[5], &[6]]);
        assert!(matches!(
            block_exponents(&wide, &ones, false),
            Err(BlocksError::ShapeNotAllowed(_))
        ));
        assert!(block_exponents(&wide, &ones, true).is_ok());
    }

    #[test]
    fn second_representation_agrees() {
        for w in [
            &[1u8, 1, 2, 2][..],
            &[1; 6],
            &[1, 2, 1, 2, 1, 2],
            &[2, 2, 1, 1],
            &[2, 1],
        ] {
            let sig = Signature::new(w).unwrap();
            for t in rsyt(&sig) {
                assert_eq!(
                    second_representation(&t, &sig).unwrap(),
                    block_exponents(&t, &sig, false).unwrap(),
                    "{t}"
                );
            }
        }
    }

    #[test]
    fn alpha_identities_hold_on_gold_blocks() {
        for word in [
            &[1u8, 1, 2, 2][..],
            &[1; 6],
            &[1, 2, 1, 2, 1, 2],
            &[2, 2, 1, 1, 1, 2],
        ] {
            let sig = Signature::new(word).unwrap();
            for t in rsyt(&sig) {
                let a = block_exponents(&t, &sig, false).unwrap();
                assert!(
                    a.identity_failures().is_empty(),
                    "{t}: {:?}",
                    a.identity_failures()
                );
            }
        }
        let sig = Signature::new(&[1, 1, 1]).unwrap();
        let bad = ExponentMatrix::from_three_alpha(sig, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(!bad.identity_failures().is_empty());
    }
}
