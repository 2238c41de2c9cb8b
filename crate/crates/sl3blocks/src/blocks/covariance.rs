use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_sample_points, BlocksError, ExponentMatrix};
use crate::poly::qf;

/// `φ(x) = (a x + b) / (c x + d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Mobius {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self, BlocksError> {
        let m = Self { a, b, c, d };
        if m.determinant().is_zero() {
            return Err(BlocksError::DegenerateMobius);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self {
            a: BigRational::one(),
            b: BigRational::zero(),
            c: BigRational::zero(),
            d: BigRational::one(),
        }
    }

    pub fn determinant(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `None` at the pole.
    pub fn apply(&self, x: &BigRational) -> Option<BigRational> {
        let den = &self.c * x + &self.d;
        if den.is_zero() {
            return None;
        }
        Some((&self.a * x + &self.b) / den)
    }

    pub fn derivative(&self, x: &BigRational) -> Option<BigRational> {
        let den = &self.c * x + &self.d;
        if den.is_zero() {
            return None;
        }
        Some(self.determinant() / (&den * &den))
    }
}

/// `Π_{i<j} (x_j − x_i)^{3α(i,j)}`, i.e. the cube of the block, for sorted `x`.
fn block_cubed(alpha: &ExponentMatrix, x: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let diff = &x[j] - &x[i];
            let e = alpha.three_alpha(i, j);
            let p = num_traits::pow(diff, e.unsigned_abs() as usize);
            acc = if e >= 0 { acc * p } else { acc / p };
        }
    }
    acc
}

/// Checks `U(φ(x))³ · Π φ′(x_i) = U(x)³` exactly at every sample point.
/// Points must be strictly increasing and stay strictly increasing under
/// `φ` (no pole in between); otherwise the check reports `false`.
pub fn covariance_check(
    alpha: &ExponentMatrix,
    phi: &Mobius,
    sample: &[Vec<BigRational>],
) -> Result<bool, BlocksError> {
    if phi.determinant().is_zero() {
        return Err(BlocksError::DegenerateMobius);
    }
    for x in sample {
        if x.len() != alpha.d() || !x.windows(2).all(|w| w[0] < w[1]) {
            return Ok(false);
        }
        let Some(y) = x.iter().map(|v| phi.apply(v)).collect::<Option<Vec<_>>>() else {
            return Ok(false);
        };
        if !y.windows(2).all(|w| w[0] < w[1]) {
            return Ok(false);
        }
        let mut lhs = block_cubed(alpha, &y);
        for v in x {
            lhs *= phi.derivative(v).expect("pole excluded above");
        }
        let rhs = block_cubed(alpha, x);
        if !rhs.is_positive() || lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `count` Möbius maps with small integer coefficients and `ad − bc > 0`,
/// drawn from a seeded generator.
pub fn seeded_mobius_maps(count: usize, seed: u64) -> Vec<Mobius> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut c = || BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
        let (a, b, cc, d) = (c(), c(), c(), c());
        if let Ok(m) = Mobius::new(a, b, cc, d) {
            if m.determinant().is_positive() {
                out.push(m);
            }
        }
    }
    out
}

/// `count` strictly increasing points in `ℚ^d` on which `phi` is finite and
/// increasing: all to the right of the pole, or anywhere for an affine map.
pub fn mobius_sample(phi: &Mobius, d: usize, count: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let base = if phi.c.is_zero() {
        BigRational::zero()
    } else {
        -(&phi.d / &phi.c)
    };
    random_sample_points(d, count, seed)
        .into_iter()
        .map(|p| {
            let mut v: Vec<BigRational> = p.into_iter().map(|x| &base + x.abs() + qf(1, 1000)).collect();
            v.sort();
            v
        })
        .filter(|v| v.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{block_exponents, random_sample_points};
    use crate::combinatorics::{Filling, Signature};
    use crate::poly::q;

    #[test]
    fn seeded_maps_pass_on_all_gold_blocks() {
        use crate::combinatorics::{enumerate_tableaux, TableauKind};
        for word in [&[1u8, 1, 2, 2][..], &[1, 2, 1, 2, 1, 2]] {
            let sig = Signature::new(word).unwrap();
            for t in enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt).unwrap() {
                let a = block_exponents(&t, &sig, false).unwrap();
                for (i, phi) in seeded_mobius_maps(5, 7).iter().enumerate() {
                    let pts = mobius_sample(phi, sig.d(), 25, i as u64);
                    assert_eq!(pts.len(), 25);
                    assert!(covariance_check(&a, phi, &pts).unwrap());
                }
            }
        }
        assert_eq!(seeded_mobius_maps(3, 1), seeded_mobius_maps(3, 1));
    }

    fn t1() -> ExponentMatrix {
        let sig = Signature::new(&[1, 1, 2, 2]).unwrap();
        let t = Filling::from_rows(vec![vec![1, 2], vec![3, 4], vec![3, 4]]).unwrap();
        block_exponents(&t, &sig, false).unwrap()
    }

    #[test]
    fn identity_and_translation() {
        let x = vec![vec![q(0), q(1), q(2), q(3)]];
        assert!(covariance_check(&t1(), &Mobius::identity(), &x).unwrap());
        let shift = Mobius::new(q(1), q(7), q(0), q(1)).unwrap();
        assert!(covariance_check(&t1(), &shift, &x).unwrap());
    }

    #[test]
    fn fractional_linear_map() {
        let phi = Mobius::new(q(2), q(0), q(1), q(5)).unwrap();
        let pts: Vec<Vec<BigRational>> = random_sample_points(4, 25, 5)
            .into_iter()
            .map(|p| p.into_iter().map(|v| v.abs() + qf(1, 7)).collect::<Vec<_>>())
            .map(|mut p: Vec<BigRational>| {
                p.sort();
                p
            })
            .filter(|p: &Vec<BigRational>| p.windows(2).all(|w| w[0] < w[1]))
            .collect();
        assert!(!pts.is_empty());
        assert!(covariance_check(&t1(), &phi, &pts).unwrap());
    }

    #[test]
    fn degenerate_map_is_rejected() {
        assert_eq!(
            Mobius::new(q(1), q(2), q(2), q(4)),
            Err(BlocksError::DegenerateMobius)
        );
    }

    #[test]
    fn pole_inside_the_sample_fails() {
        let phi = Mobius::new(q(0), q(1), q(1), q(0)).unwrap();
        let x = vec![vec![q(-2), q(-1), q(1), q(2)]];
        assert!(!covariance_check(&t1(), &phi, &x).unwrap());
    }

    #[test]
    fn scaling_detects_wrong_exponents() {
        let sig = Signature::new(&[1, 1, 2, 2]).unwrap();
        let bad = ExponentMatrix::from_three_alpha(
            sig,
            vec![
                vec![0, 3, -2, -2],
                vec![3, 0, -2, -2],
                vec![-2, -2, 0, 2],
                vec![-2, -2, 2, 0],
            ],
        );
        let dilation = Mobius::new(q(3), q(0), q(0), q(1)).unwrap();
        let x = vec![vec![q(0), q(1), q(2), q(3)]];
        assert!(!covariance_check(&bad, &dilation, &x).unwrap());
    }
}
