use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::BlocksError;
use crate::combinatorics::Filling;
use crate::poly::{specht, RationalFunction, SparsePolynomial};

/// Residual of the `M`-column operator at point `m` applied to a Specht
/// polynomial, kept as `numerator / Π_{i≠m} (x_i − x_m)`.
#[derive(Debug, Clone)]
pub struct SpechtResidual {
    numerator: SparsePolynomial,
    point: usize,
}

impl SpechtResidual {
    pub fn numerator(&self) -> &SparsePolynomial {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        let n = self.numerator.nvars();
        let mut r = RationalFunction::from_polynomial(&self.numerator);
        for i in (0..n).filter(|&i| i != self.point) {
            r = &r * &RationalFunction::inverse_difference(n, i, self.point, 1);
        }
        r
    }
}

/// Applies
/// `∂_m^M + Σ_{k=1}^{M} (1/k!) Σ_{i_1,…,i_k} Π_l (x_{i_l} − x_m)^{-1}
///  Σ_{c_0+…+c_k = M−k} ∂_m^{c_0} ∂_{i_1}^{c_1} ⋯ ∂_{i_k}^{c_k}`
/// (distinct indices different from `m`) to `specht(numbering)`.
///
/// Ordered tuples are summed as sets, which absorbs the `1/k!`, and the
/// whole expression is multiplied by `Π_{i≠m} (x_i − x_m)` so that the
/// residual is a polynomial.
pub fn specht_pde_residual(
    numbering: &Filling,
    m: usize,
    columns: usize,
) -> Result<SpechtResidual, BlocksError> {
    let n = numbering.shape().size();
    let mut seen = vec![false; n + 1];
    for &e in numbering.rows().iter().flatten() {
        if e > n || seen[e] {
            return Err(BlocksError::NotNumbering);
        }
        seen[e] = true;
    }
    if m == 0 || m > n {
        return Err(BlocksError::IndexOutOfRange { index: m, max: n });
    }
    let found = numbering.shape().num_cols();
    if found > columns {
        return Err(BlocksError::ColumnCountMismatch { found, max: columns });
    }
    let m = m - 1;
    let p = specht(numbering, n);
    let numerator = if n <= PackedPoly::MAX_VARS {
        residual_packed(&p, m, columns)
    } else {
        residual_generic(&p, m, columns)
    };
    Ok(SpechtResidual { numerator, point: m })
}

/// Subsets of the indices other than `m` with at most `columns` elements.
fn subsets(n: usize, m: usize, columns: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..n).filter(|&i| i != m).collect();
    (0u32..(1 << others.len()))
        .filter(|mask| mask.count_ones() as usize <= columns)
        .map(|mask| {
            (0..others.len())
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| others[b])
                .collect()
        })
        .collect()
}

fn residual_generic(p: &SparsePolynomial, m: usize, columns: usize) -> SparsePolynomial {
    let n = p.nvars();
    let diffs: Vec<SparsePolynomial> = (0..n).map(|i| SparsePolynomial::difference(n, i, m)).collect();
    let mut derivs: HashMap<Vec<u32>, SparsePolynomial> = HashMap::new();
    let mut deriv = |orders: &[u32]| -> SparsePolynomial {
        derivs
            .entry(orders.to_vec())
            .or_insert_with(|| {
                let mut q = p.clone();
                for (v, &o) in orders.iter().enumerate() {
                    if o > 0 {
                        q = q.derivative(v, o);
                        if q.is_zero() {
                            break;
                        }
                    }
                }
                q
            })
            .clone()
    };

    let mut numerator = SparsePolynomial::zero(n);
    for subset in subsets(n, m, columns) {
        let budget = (columns - subset.len()) as u32;
        let mut inner = SparsePolynomial::zero(n);
        let mut orders = vec![0u32; n];
        distribute(budget, &subset, m, &mut orders, &mut |o| {
            inner = &inner + &deriv(o);
        });
        if inner.is_zero() {
            continue;
        }
        for i in (0..n).filter(|i| *i != m && !subset.contains(i)) {
            inner = &inner * &diffs[i];
        }
        numerator = &numerator + &inner;
    }
    numerator
}

/// Integer polynomial with up to sixteen variables, exponents packed one byte
/// each into a `u128` key so that monomial multiplication is integer addition.
/// Terms are kept sorted by key with no zero coefficients; since shifting all
/// keys by a constant preserves their order, every operation is a linear merge.
#[derive(Debug, Clone, Default)]
struct PackedPoly {
    terms: Vec<(u128, i128)>,
}

impl PackedPoly {
    const MAX_VARS: usize = 16;

    fn from_sparse(p: &SparsePolynomial) -> Self {
        let mut terms: Vec<(u128, i128)> = p
            .terms()
            .map(|(mono, c)| {
                assert!(c.is_integer(), "Specht polynomials have integer coefficients");
                let key = mono.iter().enumerate().fold(0u128, |acc, (v, &e)| {
                    assert!(e < 128, "exponent too large to pack");
                    acc | (u128::from(e) << (8 * v))
                });
                (
                    key,
                    i128::try_from(c.to_integer()).expect("coefficient fits in i128"),
                )
            })
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        Self { terms }
    }

    fn to_sparse(&self, nvars: usize) -> SparsePolynomial {
        SparsePolynomial::from_terms(
            nvars,
            self.terms.iter().map(|&(key, c)| {
                let mono = (0..nvars).map(|v| ((key >> (8 * v)) & 0xff) as u32).collect();
                (mono, BigRational::from_integer(BigInt::from(c)))
            }),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn merge(a: impl Iterator<Item = (u128, i128)>, b: impl Iterator<Item = (u128, i128)>) -> Self {
        let (mut a, mut b) = (a.peekable(), b.peekable());
        let mut terms = Vec::new();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        a.next()
                    } else if y.0 < x.0 {
                        b.next()
                    } else {
                        let (k, c) = a.next().unwrap();
                        let (_, d) = b.next().unwrap();
                        Some((k, c + d))
                    }
                }
            };
            if let Some(t) = next.filter(|t| t.1 != 0) {
                terms.push(t);
            }
        }
        Self { terms }
    }

    fn plus(&self, other: &PackedPoly) -> Self {
        Self::merge(self.terms.iter().copied(), other.terms.iter().copied())
    }

    fn derivative(&self, var: usize, order: u32) -> Self {
        let shift = 8 * var;
        let drop = u128::from(order) << shift;
        let terms = self
            .terms
            .iter()
            .filter_map(|&(key, c)| {
                let e = ((key >> shift) & 0xff) as u32;
                (e >= order).then(|| {
                    let falling: i128 = (0..order).map(|t| i128::from(e - t)).product();
                    (key - drop, c * falling)
                })
            })
            .collect();
        Self { terms }
    }

    /// Multiplies by `x_i − x_m`.
    fn times_difference(&self, i: usize, m: usize) -> Self {
        let (bi, bm) = (1u128 << (8 * i), 1u128 << (8 * m));
        Self::merge(
            self.terms.iter().map(|&(k, c)| (k + bi, c)),
            self.terms.iter().map(|&(k, c)| (k + bm, -c)),
        )
    }
}

/// Same sum as [`residual_generic`], organised as a binary recursion over
/// the indices other than `m`: each index is either added to the subset or
/// contributes its factor `x_i − x_m`, and that factor multiplies the whole
/// partial sum of the branch at once.
fn residual_packed(p: &SparsePolynomial, m: usize, columns: usize) -> SparsePolynomial {
    struct Search<'a> {
        p: PackedPoly,
        n: usize,
        m: usize,
        columns: usize,
        others: &'a [usize],
        derivs: HashMap<Vec<u32>, PackedPoly>,
    }

    impl Search<'_> {
        fn inner(&mut self, subset: &[usize]) -> PackedPoly {
            let budget = (self.columns - subset.len()) as u32;
            let mut orders = vec![0u32; self.n];
            let mut keys = Vec::new();
            distribute(budget, subset, self.m, &mut orders, &mut |o| {
                keys.push(o.to_vec())
            });
            let mut sum = PackedPoly::default();
            for key in keys {
                let p = &self.p;
                let d = self.derivs.entry(key).or_insert_with_key(|o| {
                    let mut q = p.clone();
                    for (v, &k) in o.iter().enumerate() {
                        if k > 0 && !q.is_zero() {
                            q = q.derivative(v, k);
                        }
                    }
                    q
                });
                sum = sum.plus(d);
            }
            sum
        }

        fn run(&mut self, idx: usize, chosen: &mut Vec<usize>) -> PackedPoly {
            if idx == self.others.len() {
                return self.inner(chosen);
            }
            let o = self.others[idx];
            let mut total = self.run(idx + 1, chosen).times_difference(o, self.m);
            if chosen.len() < self.columns {
                chosen.push(o);
                total = total.plus(&self.run(idx + 1, chosen));
                chosen.pop();
            }
            total
        }
    }

    let n = p.nvars();
    let others: Vec<usize> = (0..n).filter(|&i| i != m).collect();
    let mut search = Search {
        p: PackedPoly::from_sparse(p),
        n,
        m,
        columns,
        others: &others,
        derivs: HashMap::new(),
    };
    search.run(0, &mut Vec::new()).to_sparse(n)
}

/// Calls `f` with every assignment of orders `c_i ≥ 0` to the subset and
/// `c_0` to `m` such that `c_0 + Σ c_i = budget`.
fn distribute(budget: u32, subset: &[usize], m: usize, orders: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    match subset.split_first() {
        None => {
            orders[m] = budget;
            f(orders);
            orders[m] = 0;
        }
        Some((&i, rest)) => {
            for c in 0..=budget {
                orders[i] = c;
                distribute(budget - c, rest, m, orders, f);
            }
            orders[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::random_sample_points;
    use crate::combinatorics::{enumerate_tableaux, Partition, TableauKind};
    use crate::poly::q;

    fn f(rows: &[&[usize]]) -> Filling {
        Filling::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_row_and_single_column() {
        for m in 1..=3 {
            assert!(specht_pde_residual(&f(&[&[1, 2, 3]]), m, 3).unwrap().is_zero());
        }
        assert!(specht_pde_residual(&f(&[&[1], &[2], &[3]]), 1, 3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn column_count_is_enforced() {
        assert_eq!(
            specht_pde_residual(&f(&[&[1, 2, 3]]), 1, 2).unwrap_err(),
            BlocksError::ColumnCountMismatch { found: 3, max: 2 }
        );
        assert_eq!(
            specht_pde_residual(&f(&[&[1, 1]]), 1, 3).unwrap_err(),
            BlocksError::NotNumbering
        );
    }

    #[test]
    fn three_column_shapes_up_to_six_boxes() {
        for n in 1..=6 {
            for shape in Partition::all_of(n).into_iter().filter(|s| s.num_cols() <= 3) {
                for t in enumerate_tableaux(&shape, &vec![1; n], TableauKind::Syt).unwrap() {
                    for m in 1..=n {
                        assert!(specht_pde_residual(&t, m, 3).unwrap().is_zero(), "{t} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn packed_and_generic_paths_agree() {
        for shape in [vec![3, 2, 1], vec![2, 2, 1], vec![1, 1, 1, 1], vec![4, 1]] {
            let shape = Partition::new(shape).unwrap();
            let n = shape.size();
            for t in enumerate_tableaux(&shape, &vec![1; n], TableauKind::Syt)
                .unwrap()
                .into_iter()
                .take(4)
            {
                let p = specht(&t, n);
                for m in 0..n {
                    for cols in [2, 3, 4] {
                        assert_eq!(
                            residual_packed(&p, m, cols),
                            residual_generic(&p, m, cols),
                            "{t} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn two_column_operator_on_a_square() {
        let t = f(&[&[1, 3], &[2, 4]]);
        for m in 1..=4 {
            assert!(specht_pde_residual(&t, m, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_form_agrees_with_direct_evaluation() {
        let t = f(&[&[1, 3], &[2]]);
        let r = specht_pde_residual(&t, 2, 1);
        assert!(matches!(r, Err(BlocksError::ColumnCountMismatch { .. })));
        let r = specht_pde_residual(&t, 2, 3).unwrap();
        let pt = random_sample_points(3, 1, 1).remove(0);
        assert_eq!(r.to_rational_function().eval(&pt), Some(q(0)));
    }
}
