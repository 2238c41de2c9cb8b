use num_rational::BigRational;
use num_traits::One;

use super::calculus::{BlockCalculus, Residual};
use super::{BlocksError, CftParams, ExponentMatrix};
use crate::poly::{q, qf, RationalFunction};

fn inv(d: usize, a: usize, b: usize, p: u32) -> RationalFunction {
    RationalFunction::inverse_difference(d, a, b, p)
}

fn check_index(index: usize, max: usize) -> Result<(), BlocksError> {
    if index == 0 || index > max {
        return Err(BlocksError::IndexOutOfRange { index, max });
    }
    Ok(())
}

/// The third-order operator attached to point `m` (1-based), applied to the
/// block and divided by it.
pub fn bpz_residual(m: usize, alpha: &ExponentMatrix, params: &CftParams) -> Result<Residual, BlocksError> {
    let d = alpha.d();
    check_index(m, d)?;
    let m = m - 1;
    let h = &params.h;
    let qv: Vec<BigRational> = params.q().into_iter().map(q).collect();
    let hp1 = h + BigRational::one();
    let mut c = BlockCalculus::new(alpha);
    let mut r = c.ratio(&[m, m, m]).scale(&qv[m]);

    let c1 = q(3) * &hp1 / q(4);
    let c2 = q(3) * &hp1 / q(32);
    let c3 = q(3) * &hp1 * &hp1 / q(8);
    let c4 = h * &hp1 * (h + q(5)) / q(16);
    let c5 = q(3) * h * &hp1 * &hp1 / q(8);
    let f_m = c.ratio(&[m]);

    for i in (0..d).filter(|&i| i != m) {
        let first = &c.ratio(&[m, i]).scale(&qv[m]) + &c.ratio(&[i, i]).scale(&qv[i]);
        r.add_assign_ref(&(&first * &inv(d, i, m, 1)).scale(&c1));

        let ki = (q(5) + h) * &qv[m] - (q(5) * h + q(1)) * &qv[i];
        let km = -(q(4) * (q(2) * h * &qv[m] + &hp1 * &qv[i]));
        let second = &c.ratio(&[i]).scale(&ki) + &f_m.scale(&km);
        r.add_assign_ref(&(&second * &inv(d, i, m, 2)).scale(&c2));

        let cubic = &qv[i] + q(3) * &qv[m];
        r.add_assign_ref(&inv(d, i, m, 3).scale(&-(&c4 * cubic)));

        for j in (0..d).filter(|&j| j != i && j != m) {
            let pair = &inv(d, m, i, 1) * &inv(d, j, i, 1);
            r.add_assign_ref(&(&c.ratio(&[j]) * &pair).scale(&-(&c3 * &qv[i])));
            let pair2 = &inv(d, m, i, 1) * &inv(d, j, i, 2);
            r.add_assign_ref(&pair2.scale(&(&c5 * &qv[i])));
        }
    }
    Ok(Residual::new(r))
}

/// The `m`-th second-order Ward operator, `1 ≤ m ≤ 5`.
pub fn ward_residual(m: usize, alpha: &ExponentMatrix, params: &CftParams) -> Result<Residual, BlocksError> {
    check_index(m, 5)?;
    let d = alpha.d();
    let h = &params.h;
    let qv: Vec<BigRational> = params.q().into_iter().map(q).collect();
    let hp1 = h + BigRational::one();
    let mut c = BlockCalculus::new(alpha);
    let pw = |i: usize, e: usize| RationalFunction::power_of_var(d, i, e as u32);
    let mut r = RationalFunction::zero(d);
    for i in 0..d {
        let xi = pw(i, m - 1);
        r.add_assign_ref(&(&c.ratio(&[i, i]) * &xi).scale(&qv[i]));
        for j in (0..d).filter(|&j| j != i) {
            let inner = &inv(d, j, i, 2).scale(h) - &(&c.ratio(&[j]) * &inv(d, j, i, 1));
            let coeff = -(&hp1 * &qv[i]) / q(2);
            r.add_assign_ref(&(&inner * &xi).scale(&coeff));
        }
        if m >= 2 {
            let coeff = qf(m as i64 - 1, 8) * (q(5) * h + q(1)) * &qv[i];
            r.add_assign_ref(&(&c.ratio(&[i]) * &pw(i, m - 2)).scale(&coeff));
        }
        if m >= 3 {
            let coeff = qf(((m - 1) * (m - 2)) as i64, 24) * h * (q(5) * h + q(1)) * &qv[i];
            r.add_assign_ref(&pw(i, m - 3).scale(&coeff));
        }
    }
    Ok(Residual::new(r))
}

/// The three first-order operators `Σ ∂_k`, `Σ (x_k ∂_k + h)` and
/// `Σ (x_k² ∂_k + 2h x_k)`, for `k = 1, 2, 3`.
pub fn global_ward_residual(
    k: usize,
    alpha: &ExponentMatrix,
    params: &CftParams,
) -> Result<Residual, BlocksError> {
    check_index(k, 3)?;
    let d = alpha.d();
    let h = &params.h;
    let mut c = BlockCalculus::new(alpha);
    let mut r = RationalFunction::zero(d);
    for i in 0..d {
        let di = c.ratio(&[i]);
        match k {
            1 => r.add_assign_ref(&di),
            2 => {
                r.add_assign_ref(&(&di * &RationalFunction::power_of_var(d, i, 1)));
                r.add_assign_ref(&RationalFunction::constant(d, h.clone()));
            }
            _ => {
                r.add_assign_ref(&(&di * &RationalFunction::power_of_var(d, i, 2)));
                r.add_assign_ref(&RationalFunction::power_of_var(d, i, 1).scale(&(q(2) * h)));
            }
        }
    }
    Ok(Residual::new(r))
}
