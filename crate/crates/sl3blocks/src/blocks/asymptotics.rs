use num_rational::BigRational;
use serde::Serialize;

use super::{BlocksError, ExponentMatrix};
use crate::combinatorics::{Filling, Signature};
use crate::poly::qf;

/// Behaviour of `(x_{j+1} − x_j)^{κ} U` as `x_{j+1} → x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LimitValue {
    /// The rescaled block tends to zero.
    Zero,
    /// Both points disappear and nothing is left.
    Trivial,
    /// A block on the merged or reduced set of points.
    Block(ExponentMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryLimit {
    /// The rescaling exponent `κ`.
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub exponent: BigRational,
    pub limit: LimitValue,
}

/// The limit of a tableau under the same collision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitTableau {
    Zero,
    Empty,
    Tableau(Filling, Signature),
}

fn check_pair(j: usize, d: usize) -> Result<(), BlocksError> {
    if j == 0 || j + 1 > d {
        return Err(BlocksError::IndexOutOfRange {
            index: j,
            max: d.saturating_sub(1),
        });
    }
    Ok(())
}

/// Collision of points `j` and `j+1` (1-based), read off the exponents alone.
///
/// The rescaling exponent is `1/3` for equal valences and `2/3` otherwise.
/// The limit vanishes when `α(j, j+1)` exceeds `−κ`; otherwise the two points
/// fuse into one of valence `2` (from `1+1`), one of valence `1` (from `2+2`),
/// or disappear (from `1+2`), with exponents added.
pub fn boundary_limit(alpha: &ExponentMatrix, j: usize) -> Result<BoundaryLimit, BlocksError> {
    let d = alpha.d();
    check_pair(j, d)?;
    let (a, b) = (j - 1, j);
    let s = alpha.signature().s();
    let three_kappa: i64 = if s[a] == s[b] { 1 } else { 2 };
    let exponent = qf(three_kappa, 3);
    let three_ab = alpha.three_alpha(a, b);
    if three_ab > -three_kappa {
        return Ok(BoundaryLimit {
            exponent,
            limit: LimitValue::Zero,
        });
    }
    assert_eq!(three_ab, -three_kappa, "exponent below the admissible range");

    let others: Vec<usize> = (0..d).filter(|&k| k != a && k != b).collect();
    if s[a] != s[b] {
        if others.is_empty() {
            return Ok(BoundaryLimit {
                exponent,
                limit: LimitValue::Trivial,
            });
        }
        let sig = Signature::new(&others.iter().map(|&k| s[k]).collect::<Vec<_>>())?;
        let m: Vec<Vec<i64>> = others
            .iter()
            .map(|&r| others.iter().map(|&c| alpha.three_alpha(r, c)).collect())
            .collect();
        return Ok(BoundaryLimit {
            exponent,
            limit: LimitValue::Block(ExponentMatrix::from_three_alpha(sig, m)),
        });
    }

    let merged_s = if s[a] == 1 { 2 } else { 1 };
    let order: Vec<Option<usize>> = (0..d)
        .filter(|&k| k != b)
        .map(|k| if k == a { None } else { Some(k) })
        .collect();
    let new_s: Vec<u8> = order.iter().map(|o| o.map_or(merged_s, |k| s[k])).collect();
    let entry = |o: &Option<usize>, p: &Option<usize>| -> i64 {
        match (o, p) {
            (None, None) => 0,
            (None, Some(k)) | (Some(k), None) => alpha.three_alpha(a, *k) + alpha.three_alpha(b, *k),
            (Some(k), Some(l)) => alpha.three_alpha(*k, *l),
        }
    };
    let m: Vec<Vec<i64>> = order
        .iter()
        .map(|o| order.iter().map(|p| entry(o, p)).collect())
        .collect();
    Ok(BoundaryLimit {
        exponent,
        limit: LimitValue::Block(ExponentMatrix::from_three_alpha(Signature::new(&new_s)?, m)),
    })
}

/// The same collision performed on a row-strict tableau: equal valences one
/// merge into a single entry (`j+1` renamed `j`), valences two keep a single
/// box in their shared row, and mixed valences lose all their boxes. Later
/// entries are renumbered to close the gap.
pub fn boundary_limit_tableau(t: &Filling, sig: &Signature, j: usize) -> Result<LimitTableau, BlocksError> {
    let d = sig.d();
    check_pair(j, d)?;
    let s = sig.s();
    let (sj, sk) = (s[j - 1], s[j]);
    let rows_of = |e: usize| -> Vec<usize> {
        (0..t.rows().len())
            .filter(|&r| t.rows()[r].contains(&e))
            .collect()
    };
    let rj = rows_of(j);
    let rk = rows_of(j + 1);
    let shared: Vec<usize> = rj.iter().copied().filter(|r| rk.contains(r)).collect();

    let shift = |e: usize, by: usize| if e > j + 1 { e - by } else { e };
    let (rows, new_s): (Vec<Vec<usize>>, Vec<u8>) = match (sj, sk) {
        (1, 1) => {
            if !shared.is_empty() {
                return Ok(LimitTableau::Zero);
            }
            let rows = t
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&e| if e == j + 1 { j } else { shift(e, 1) })
                        .collect()
                })
                .collect();
            let mut ns = s.to_vec();
            ns.splice(j - 1..=j, [2]);
            (rows, ns)
        }
        (2, 2) => {
            if shared.len() != 1 {
                return Ok(LimitTableau::Zero);
            }
            let keep = shared[0];
            let rows = t
                .rows()
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .filter(|&&e| {
                            if r == keep {
                                e != j + 1
                            } else {
                                e != j && e != j + 1
                            }
                        })
                        .map(|&e| shift(e, 1))
                        .collect()
                })
                .collect();
            let mut ns = s.to_vec();
            ns.splice(j - 1..=j, [1]);
            (rows, ns)
        }
        _ => {
            if !shared.is_empty() {
                return Ok(LimitTableau::Zero);
            }
            let rows = t
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .filter(|&&e| e != j && e != j + 1)
                        .map(|&e| shift(e, 2))
                        .collect()
                })
                .collect();
            let mut ns = s.to_vec();
            ns.drain(j - 1..=j);
            (rows, ns)
        }
    };
    if new_s.is_empty() {
        return Ok(LimitTableau::Empty);
    }
    let rows: Vec<Vec<usize>> = rows
        .into_iter()
        .map(|mut r: Vec<usize>| {
            r.sort_unstable();
            r
        })
        .collect();
    Ok(LimitTableau::Tableau(
        Filling::from_rows(rows)?,
        Signature::new(&new_s)?,
    ))
}

/// Whether the collision of `j, j+1` computed from the exponents of `t`
/// agrees with the collision of the tableau: same rescaling exponent (`1/3`
/// for equal valences, `2/3` otherwise) and the block of the limit tableau,
/// or zero on both sides.
pub fn boundary_limit_matches_tableau(t: &Filling, sig: &Signature, j: usize) -> Result<bool, BlocksError> {
    let alpha = super::block_exponents(t, sig, false)?;
    let lim = boundary_limit(&alpha, j)?;
    let s = sig.s();
    let kappa = if s[j - 1] == s[j] { qf(1, 3) } else { qf(2, 3) };
    if lim.exponent != kappa {
        return Ok(false);
    }
    Ok(match (boundary_limit_tableau(t, sig, j)?, &lim.limit) {
        (LimitTableau::Zero, LimitValue::Zero) => true,
        (LimitTableau::Empty, LimitValue::Trivial) => true,
        (LimitTableau::Tableau(tp, sp), LimitValue::Block(b)) => {
            &super::block_exponents(&tp, &sp, false)? == b
        }
        _ => false,
    })
}
