use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::BlocksError;
use crate::combinatorics::Signature;
use crate::poly::{q, qf};

/// Central charge and conformal weight attached to a value of `β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CftParams {
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub beta: BigRational,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub c: BigRational,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub h: BigRational,
    pub signature: Signature,
}

/// `c = 2 − 24 (β − 1/β)²` and `h = 4β²/3 − 1`.
pub fn params_from_beta(beta: BigRational, signature: Signature) -> Result<CftParams, BlocksError> {
    if beta.is_zero() {
        return Err(BlocksError::ZeroBeta);
    }
    let shift = &beta - beta.recip();
    let c = q(2) - q(24) * &shift * &shift;
    let h = qf(4, 3) * &beta * &beta - BigRational::one();
    Ok(CftParams {
        beta,
        c,
        h,
        signature,
    })
}

impl CftParams {
    /// The central-charge-two point `β = 1`.
    pub fn at_c2(signature: Signature) -> Self {
        params_from_beta(BigRational::one(), signature).expect("β = 1 is nonzero")
    }

    pub fn q(&self) -> Vec<i64> {
        self.signature.q()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(&[1, 1, 1]).unwrap()
    }

    #[test]
    fn beta_one_gives_c_two() {
        let p = params_from_beta(q(1), sig()).unwrap();
        assert_eq!(p.c, q(2));
        assert_eq!(p.h, qf(1, 3));
        assert_eq!(q(3) * (&p.h + q(1)) / q(4), q(1));
    }

    #[test]
    fn central_charge_is_symmetric_under_inversion() {
        for (a, b) in [(2, 3), (5, 7), (1, 4)] {
            let x = qf(a, b);
            let c1 = params_from_beta(x.clone(), sig()).unwrap().c;
            let c2 = params_from_beta(x.recip(), sig()).unwrap().c;
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn zero_beta_is_rejected() {
        assert_eq!(params_from_beta(q(0), sig()), Err(BlocksError::ZeroBeta));
    }
}
