use num_traits::One;

use super::group::Permutation;
use super::polynomial::{q, SparsePolynomial};
use super::PolyError;
use crate::combinatorics::{Filling, Signature};

/// `Π_{j<k} (x_{i_j} − x_{i_k})` for 1-based variable indices; a single index
/// gives the constant `1`.
pub fn vandermonde(nvars: usize, indices: &[usize]) -> Result<SparsePolynomial, PolyError> {
    for (a, &i) in indices.iter().enumerate() {
        if indices[a + 1..].contains(&i) {
            return Err(PolyError::RepeatedIndex(i));
        }
    }
    let mut p = SparsePolynomial::one(nvars);
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            p = &p * &SparsePolynomial::difference(nvars, indices[a] - 1, indices[b] - 1);
        }
    }
    Ok(p)
}

/// Product over the columns of `f` of the Vandermonde of the column read
/// bottom to top. A column with a repeated entry contributes zero.
pub fn specht(f: &Filling, nvars: usize) -> SparsePolynomial {
    let mut p = SparsePolynomial::one(nvars);
    for col in f.columns() {
        let rev: Vec<usize> = col.iter().rev().copied().collect();
        match vandermonde(nvars, &rev) {
            Ok(v) => p = &p * &v,
            Err(_) => return SparsePolynomial::zero(nvars),
        }
    }
    p
}

/// The signed orbit sum `Σ_{σ ∈ Q} sgn(σ) Π_boxes x_{σ·entry}^{row − 1}` over
/// the column group `Q` of `t`, built monomial by monomial.
pub fn specht_expanded(t: &Filling, nvars: usize) -> SparsePolynomial {
    let columns = t.columns();
    let perms: Vec<Vec<(Vec<usize>, i64)>> = columns.iter().map(|c| signed_perms(c.len())).collect();
    let mut out = SparsePolynomial::zero(nvars);
    let mut choice = vec![0usize; columns.len()];
    loop {
        let mut mono = vec![0u32; nvars];
        let mut sign = 1i64;
        for (ci, col) in columns.iter().enumerate() {
            let (perm, sg) = &perms[ci][choice[ci]];
            sign *= sg;
            for (row, &src) in perm.iter().enumerate() {
                mono[col[src] - 1] += row as u32;
            }
        }
        out.add_term(mono, q(sign));
        let mut k = 0;
        loop {
            if k == columns.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < perms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn signed_perms(r: usize) -> Vec<(Vec<usize>, i64)> {
    Permutation::all(r)
        .into_iter()
        .map(|p| {
            let s = p.sign();
            (p.images().to_vec(), s)
        })
        .collect()
}

/// Collapses the `s_k` variables `x_{p_k}, …, x_{p_k + s_k − 1}` of a polynomial
/// in `n` variables onto the single variable `x_k`.
pub fn eval_identify(p: &SparsePolynomial, sig: &Signature) -> SparsePolynomial {
    assert_eq!(p.nvars(), sig.n(), "polynomial must live in n variables");
    let mut map = Vec::with_capacity(sig.n());
    for (k, &s) in sig.s().iter().enumerate() {
        for _ in 0..s {
            map.push(k);
        }
    }
    p.rename(&map, sig.d())
}

#[allow(dead_code)]
pub(crate) fn is_one(p: &SparsePolynomial) -> bool {
    p.num_terms() == 1 && p.coefficient(&vec![0; p.nvars()]).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_tableaux, standardize, Partition, Reading, TableauKind};

    fn f(rows: &[&[usize]]) -> Filling {
        Filling::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn poly(n: usize, text: &str) -> SparsePolynomial {
        SparsePolynomial::from_text(n, text).unwrap()
    }

    #[test]
    fn vandermonde_small_cases() {
        assert!(is_one(&vandermonde(5, &[5]).unwrap()));
        assert_eq!(vandermonde(2, &[2, 1]).unwrap(), poly(2, "1 * x2\n-1 * x1"));
        let direct = &(&SparsePolynomial::difference(3, 2, 1) * &SparsePolynomial::difference(3, 2, 0))
            * &SparsePolynomial::difference(3, 1, 0);
        assert_eq!(vandermonde(3, &[3, 2, 1]).unwrap(), direct);
        assert_eq!(vandermonde(3, &[1, 2, 1]), Err(PolyError::RepeatedIndex(1)));
    }

    #[test]
    fn specht_with_repeated_entries_in_rows() {
        let p = specht(&f(&[&[1, 1, 4], &[3, 3], &[2]]), 4);
        let d31 = SparsePolynomial::difference(4, 2, 0);
        let expected = &(&(&d31 * &d31) * &SparsePolynomial::difference(4, 1, 0))
            * &SparsePolynomial::difference(4, 1, 2);
        assert_eq!(p, expected);
    }

    #[test]
    fn specht_of_transposed_first_tableau() {
        let t1 = f(&[&[1, 2], &[3, 4], &[3, 4]]);
        let p = specht(&t1.transpose(), 4);
        let d43 = SparsePolynomial::difference(4, 3, 2);
        assert_eq!(p, &(&SparsePolynomial::difference(4, 1, 0) * &d43) * &d43);
    }

    #[test]
    fn single_row_gives_one() {
        assert!(is_one(&specht(&f(&[&[1, 2, 3]]), 3)));
        assert!(is_one(&specht_expanded(&f(&[&[1, 2, 3]]), 3)));
    }

    #[test]
    fn single_column_expansion_has_six_terms() {
        let t = f(&[&[1], &[2], &[3]]);
        let e = specht_expanded(&t, 3);
        assert_eq!(e.num_terms(), 6);
        assert_eq!(e, vandermonde(3, &[3, 2, 1]).unwrap());
    }

    #[test]
    fn expanded_matches_factored_on_three_column_shapes() {
        for n in 1..=6 {
            for shape in Partition::all_of(n).into_iter().filter(|s| s.num_cols() <= 3) {
                for t in enumerate_tableaux(&shape, &vec![1; n], TableauKind::Syt).unwrap() {
                    assert_eq!(specht_expanded(&t, n), specht(&t, n), "{t}");
                }
            }
        }
    }

    #[test]
    fn lex_minimal_monomial_has_unit_coefficient() {
        let sig = Signature::new(&[1, 2, 1, 2, 1, 2]).unwrap();
        for t in enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt).unwrap() {
            let tt = t.transpose();
            let p = specht(&tt, sig.d());
            let mono: Vec<u32> = (1..=sig.d())
                .map(|i| (tt.row_number_sum(i) - sig.s()[i - 1] as usize) as u32)
                .collect();
            let (lead, c) = p.terms().next().unwrap();
            assert_eq!(lead, &mono);
            assert!(c.is_one());
        }
    }

    #[test]
    fn eval_commutes_with_standardization() {
        let sig = Signature::new(&[1, 1, 2, 2]).unwrap();
        for t in enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt).unwrap() {
            let tt = t.transpose();
            let std = standardize(&tt, Reading::RowWise).unwrap();
            assert_eq!(eval_identify(&specht(&std, 6), &sig), specht(&tt, 4));
        }
    }

    #[test]
    fn eval_kills_group_mates_in_one_column() {
        let sig = Signature::new(&[1, 2]).unwrap();
        let p = SparsePolynomial::difference(3, 1, 2);
        assert!(eval_identify(&p, &sig).is_zero());
        let u = f(&[&[1, 2], &[3]]);
        assert!(!specht(&u, 3).is_zero());
        let bad = f(&[&[1], &[2], &[3]]);
        assert!(eval_identify(&specht(&bad, 3), &sig).is_zero());
    }
}
