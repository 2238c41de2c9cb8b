use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExponentMatrix;
use crate::poly::RationalFunction;

/// Derivatives of a power-product block, divided by the block itself.
///
/// With `L_i = ∂_i log U = Σ_{k≠i} α(i,k) / (x_i − x_k)`, the twisted
/// derivation `D_i(R) = ∂_i R + R · L_i` satisfies `∂_i(R U) = D_i(R) U`, so
/// `∂^β U / U` is obtained by applying the corresponding `D`'s to `1`.
pub struct BlockCalculus {
    d: usize,
    log_derivative: Vec<RationalFunction>,
    cache: HashMap<Vec<u8>, RationalFunction>,
}

impl BlockCalculus {
    pub fn new(alpha: &ExponentMatrix) -> Self {
        let d = alpha.d();
        let log_derivative = (0..d)
            .map(|i| {
                let mut l = RationalFunction::zero(d);
                for k in (0..d).filter(|&k| k != i) {
                    l.add_scaled(
                        &RationalFunction::inverse_difference(d, i, k, 1),
                        &alpha.alpha(i, k),
                    );
                }
                l
            })
            .collect();
        Self {
            d,
            log_derivative,
            cache: HashMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.d
    }

    /// `D_i(R)`.
    pub fn twisted(&self, i: usize, r: &RationalFunction) -> RationalFunction {
        let mut out = r.derivative(i);
        out.add_assign_ref(&(r * &self.log_derivative[i]));
        out
    }

    /// `∂_{i_1} ⋯ ∂_{i_k} U / U` for 0-based indices, memoized on the multiset.
    pub fn ratio(&mut self, indices: &[usize]) -> RationalFunction {
        let mut counts = vec![0u8; self.d];
        for &i in indices {
            counts[i] += 1;
        }
        self.ratio_counts(&counts)
    }

    fn ratio_counts(&mut self, counts: &[u8]) -> RationalFunction {
        if let Some(r) = self.cache.get(counts) {
            return r.clone();
        }
        let r = match counts.iter().position(|&c| c > 0) {
            None => RationalFunction::one(self.d),
            Some(i) => {
                let mut rest = counts.to_vec();
                rest[i] -= 1;
                let inner = self.ratio_counts(&rest);
                self.twisted(i, &inner)
            }
        };
        self.cache.insert(counts.to_vec(), r.clone());
        r
    }
}

/// `(𝒟 U) / U` for a differential operator `𝒟`.
#[derive(Debug, Clone)]
pub struct Residual {
    function: RationalFunction,
}

impl Residual {
    pub fn new(function: RationalFunction) -> Self {
        Self { function }
    }

    pub fn function(&self) -> &RationalFunction {
        &self.function
    }

    /// The residual in partial-fraction normal form.
    pub fn canonical(&self) -> RationalFunction {
        self.function.canonical()
    }

    /// Deterministic decision through the canonical form.
    pub fn is_zero(&self) -> bool {
        self.function.is_zero()
    }

    /// Evaluates at seeded random rational points; `false` as soon as one
    /// value is nonzero. A `true` answer is only probabilistic evidence.
    pub fn vanishes_at_random_points(&self, count: usize, seed: u64) -> bool {
        let pts = random_sample_points(self.function.nvars(), count, seed);
        pts.iter()
            .all(|p| self.function.eval(p).is_none_or(|v| v.is_zero()))
    }

    /// Random pre-pass followed by the deterministic decision.
    pub fn is_zero_checked(&self, seed: u64) -> bool {
        self.vanishes_at_random_points(20, seed) && self.is_zero()
    }
}

/// `count` points in `ℚ^d` with strictly increasing coordinates whose
/// numerators and denominators are at most 1000.
pub fn random_sample_points(d: usize, count: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let mut v: Vec<BigRational> = (0..d)
                .map(|_| {
                    let num: i64 = rng.gen_range(-1000..=1000);
                    let den: i64 = rng.gen_range(1..=1000);
                    BigRational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            v.sort();
            if v.windows(2).all(|w| w[0] < w[1]) {
                break v;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_exponents;
    use crate::combinatorics::{enumerate_tableaux, Signature, TableauKind};

    fn gold_blocks() -> Vec<ExponentMatrix> {
        let mut out = Vec::new();
        for w in [&[1u8, 1, 2, 2][..], &[1; 6]] {
            let sig = Signature::new(w).unwrap();
            for t in enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt).unwrap() {
                out.push(block_exponents(&t, &sig, false).unwrap());
            }
        }
        out
    }

    #[test]
    fn mixed_partials_commute() {
        for a in gold_blocks().into_iter().take(4) {
            let c = BlockCalculus::new(&a);
            let one = RationalFunction::one(a.d());
            for i in 0..a.d() {
                for m in 0..a.d() {
                    let im = c.twisted(i, &c.twisted(m, &one));
                    let mi = c.twisted(m, &c.twisted(i, &one));
                    assert!((&im - &mi).is_zero());
                }
            }
        }
    }

    #[test]
    fn first_ratio_matches_numeric_log_derivative() {
        let a = &gold_blocks()[0];
        let mut c = BlockCalculus::new(a);
        let r = c.ratio(&[0]);
        let pt = random_sample_points(a.d(), 1, 3).remove(0);
        let expected: BigRational = (1..a.d()).map(|k| a.alpha(0, k) / (&pt[0] - &pt[k])).sum();
        assert_eq!(r.eval(&pt).unwrap(), expected);
    }

    #[test]
    fn sample_points_are_increasing_and_reproducible() {
        let a = random_sample_points(5, 4, 11);
        assert_eq!(a, random_sample_points(5, 4, 11));
        for p in &a {
            assert!(p.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
