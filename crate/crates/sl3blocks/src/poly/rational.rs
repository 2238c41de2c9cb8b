use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::{q, Monomial, SparsePolynomial};

/// Denominator of a term: `Π (x_j − x_i)^e` over pairs `i < j` (0-based),
/// kept sorted by pair.
type PairPowers = Vec<(u16, u16, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct TermKey {
    den: PairPowers,
    mono: Monomial,
}

/// A rational function whose denominator is a product of differences
/// `x_j − x_i`, represented as a sum of terms `c · x^m / Π (x_j − x_i)^e`.
///
/// Arithmetic never combines terms over a common denominator. Zero testing
/// goes through [`RationalFunction::canonical`], an iterated partial-fraction
/// normal form: working from the last variable down, each term carries at
/// most one pole `(x_v − x_u)^{-e}` with `u < v` per variable `x_v`, and
/// carries no positive power of `x_v` when it carries such a pole. These
/// products form a basis of the localized ring, so a function is zero exactly
/// when its canonical form has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    nvars: usize,
    terms: BTreeMap<TermKey, BigRational>,
}

fn add_to(map: &mut BTreeMap<TermKey, BigRational>, k: TermKey, c: BigRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn bump_pair(den: &mut PairPowers, i: u16, j: u16, by: i64) {
    match den.binary_search_by(|&(a, b, _)| (a, b).cmp(&(i, j))) {
        Ok(pos) => {
            let e = den[pos].2 as i64 + by;
            assert!(e >= 0, "negative pole order");
            if e == 0 {
                den.remove(pos);
            } else {
                den[pos].2 = e as u32;
            }
        }
        Err(pos) => {
            assert!(by > 0, "negative pole order");
            den.insert(pos, (i, j, by as u32));
        }
    }
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut r = Self::zero(nvars);
        add_to(
            &mut r.terms,
            TermKey {
                den: Vec::new(),
                mono: vec![0; nvars],
            },
            c,
        );
        r
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn from_polynomial(p: &SparsePolynomial) -> Self {
        let mut r = Self::zero(p.nvars());
        for (m, c) in p.terms() {
            add_to(
                &mut r.terms,
                TermKey {
                    den: Vec::new(),
                    mono: m.clone(),
                },
                c.clone(),
            );
        }
        r
    }

    /// `1 / (x_a − x_b)^power` for distinct 0-based indices `a`, `b`.
    pub fn inverse_difference(nvars: usize, a: usize, b: usize, power: u32) -> Self {
        assert_ne!(a, b, "a difference of a variable with itself has no inverse");
        let (i, j, sign) = if a > b {
            (b, a, 1)
        } else {
            (a, b, if power.is_multiple_of(2) { 1 } else { -1 })
        };
        let mut r = Self::zero(nvars);
        add_to(
            &mut r.terms,
            TermKey {
                den: vec![(i as u16, j as u16, power)],
                mono: vec![0; nvars],
            },
            q(sign),
        );
        r
    }

    /// The monomial `x_{var+1}^power`.
    pub fn power_of_var(nvars: usize, var: usize, power: u32) -> Self {
        let mut mono = vec![0; nvars];
        mono[var] = power;
        let mut r = Self::zero(nvars);
        add_to(
            &mut r.terms,
            TermKey {
                den: Vec::new(),
                mono,
            },
            BigRational::one(),
        );
        r
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored terms (not canonicalized).
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &RationalFunction) {
        assert_eq!(self.nvars, other.nvars);
        for (k, c) in &other.terms {
            add_to(&mut self.terms, k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &RationalFunction, c: &BigRational) {
        assert_eq!(self.nvars, other.nvars);
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            add_to(&mut self.terms, k.clone(), v * c);
        }
    }

    /// `∂ / ∂x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        let v = var as u16;
        for (k, c) in &self.terms {
            let e = k.mono[var];
            if e > 0 {
                let mut nk = k.clone();
                nk.mono[var] -= 1;
                add_to(&mut out.terms, nk, c * q(e as i64));
            }
            for &(i, j, p) in &k.den {
                if i != v && j != v {
                    continue;
                }
                let sign: i64 = if j == v { -1 } else { 1 };
                let mut nk = k.clone();
                bump_pair(&mut nk.den, i, j, 1);
                add_to(&mut out.terms, nk, c * q(sign * p as i64));
            }
        }
        out
    }

    /// Exact evaluation; `None` when a denominator vanishes.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&k.mono) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            for &(i, j, p) in &k.den {
                let diff = &point[j as usize] - &point[i as usize];
                if diff.is_zero() {
                    return None;
                }
                t /= num_traits::pow(diff, p as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// The iterated partial-fraction normal form described on the type.
    pub fn canonical(&self) -> RationalFunction {
        let mut cur = self.terms.clone();
        for v in (1..self.nvars).rev() {
            let v16 = v as u16;
            let mut done: BTreeMap<TermKey, BigRational> = BTreeMap::new();
            let mut pending = cur;
            while !pending.is_empty() {
                let mut next: BTreeMap<TermKey, BigRational> = BTreeMap::new();
                for (k, c) in pending {
                    let poles: Vec<(u16, u32)> = k
                        .den
                        .iter()
                        .filter(|&&(_, j, _)| j == v16)
                        .map(|&(i, _, p)| (i, p))
                        .collect();
                    if poles.len() >= 2 {
                        let (a, _) = poles[0];
                        let (b, _) = poles[1];
                        // 1/((x_v-x_a)(x_v-x_b)) = (1/(x_b-x_a)) (1/(x_v-x_b) - 1/(x_v-x_a))
                        let mut k1 = k.clone();
                        bump_pair(&mut k1.den, a, v16, -1);
                        bump_pair(&mut k1.den, a, b, 1);
                        let mut k2 = k.clone();
                        bump_pair(&mut k2.den, b, v16, -1);
                        bump_pair(&mut k2.den, a, b, 1);
                        add_to(&mut next, k1, c.clone());
                        add_to(&mut next, k2, -c);
                    } else if poles.len() == 1 && k.mono[v] > 0 {
                        // x_v / (x_v-x_a)^e = 1/(x_v-x_a)^(e-1) + x_a/(x_v-x_a)^e
                        let (a, _) = poles[0];
                        let mut k1 = k.clone();
                        k1.mono[v] -= 1;
                        bump_pair(&mut k1.den, a, v16, -1);
                        let mut k2 = k.clone();
                        k2.mono[v] -= 1;
                        k2.mono[a as usize] += 1;
                        add_to(&mut next, k1, c.clone());
                        add_to(&mut next, k2, c);
                    } else {
                        add_to(&mut done, k, c);
                    }
                }
                pending = next;
            }
            cur = done;
        }
        RationalFunction {
            nvars: self.nvars,
            terms: cur,
        }
    }

    /// Deterministic zero test through the canonical form.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.canonical().terms.is_empty()
    }

    /// Largest pole order attained by any single pair.
    pub fn max_pole_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.den.iter().map(|&(_, _, p)| p))
            .max()
            .unwrap_or(0)
    }

    /// Writes the function as `numerator / Π (x_j − x_i)^{e_ij}`, with each
    /// exponent the largest order of that pole among the terms.
    pub fn numerator_denominator(&self) -> (SparsePolynomial, SparsePolynomial) {
        let mut max: BTreeMap<(u16, u16), u32> = BTreeMap::new();
        for k in self.terms.keys() {
            for &(i, j, p) in &k.den {
                let e = max.entry((i, j)).or_insert(0);
                *e = (*e).max(p);
            }
        }
        self.over_common_denominator(&max)
    }

    /// Clears denominators against `Π_{i<j} (x_j − x_i)^3`; panics when some
    /// pole has order larger than three.
    pub fn numerator_over_cubed_discriminant(&self) -> SparsePolynomial {
        assert!(
            self.max_pole_order() <= 3,
            "pole of order {} exceeds the cubed discriminant",
            self.max_pole_order()
        );
        let mut all = BTreeMap::new();
        for i in 0..self.nvars {
            for j in i + 1..self.nvars {
                all.insert((i as u16, j as u16), 3);
            }
        }
        self.over_common_denominator(&all).0
    }

    fn over_common_denominator(
        &self,
        max: &BTreeMap<(u16, u16), u32>,
    ) -> (SparsePolynomial, SparsePolynomial) {
        let n = self.nvars;
        let mut cache: BTreeMap<(u16, u16, u32), SparsePolynomial> = BTreeMap::new();
        let mut diff_pow = |i: u16, j: u16, e: u32| -> SparsePolynomial {
            cache
                .entry((i, j, e))
                .or_insert_with(|| SparsePolynomial::difference(n, j as usize, i as usize).pow(e))
                .clone()
        };
        let mut den = SparsePolynomial::one(n);
        for (&(i, j), &e) in max {
            den = &den * &diff_pow(i, j, e);
        }
        let mut num = SparsePolynomial::zero(n);
        for (k, c) in &self.terms {
            let mut t = SparsePolynomial::from_terms(n, [(k.mono.clone(), c.clone())]);
            for (&(i, j), &e) in max {
                let have = k
                    .den
                    .iter()
                    .find(|&&(a, b, _)| a == i && b == j)
                    .map_or(0, |&(_, _, p)| p);
                if e > have {
                    t = &t * &diff_pow(i, j, e - have);
                }
            }
            num = &num + &t;
        }
        (num, den)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.scale(&-BigRational::one())
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = RationalFunction::zero(self.nvars);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mono: Monomial = ka.mono.iter().zip(&kb.mono).map(|(a, b)| a + b).collect();
                let mut den = ka.den.clone();
                for &(i, j, p) in &kb.den {
                    bump_pair(&mut den, i, j, p as i64);
                }
                add_to(&mut out.terms, TermKey { den, mono }, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polynomial::qf;
    use proptest::prelude::*;

    fn inv(n: usize, a: usize, b: usize) -> RationalFunction {
        RationalFunction::inverse_difference(n, a, b, 1)
    }

    #[test]
    fn arnold_relation_is_zero() {
        let n = 3;
        let lhs = &(&inv(n, 0, 1) * &inv(n, 1, 2)) + &(&inv(n, 1, 2) * &inv(n, 2, 0));
        let total = &lhs + &(&inv(n, 2, 0) * &inv(n, 0, 1));
        assert!(total.is_zero());
        assert!(!lhs.is_zero());
    }

    #[test]
    fn difference_times_inverse_is_one() {
        let n = 4;
        let d = RationalFunction::from_polynomial(&SparsePolynomial::difference(n, 3, 1));
        let prod = &d * &RationalFunction::inverse_difference(n, 3, 1, 1);
        assert!((&prod - &RationalFunction::one(n)).is_zero());
        let sq = &(&d * &d) * &RationalFunction::inverse_difference(n, 1, 3, 2);
        assert!((&sq - &RationalFunction::one(n)).is_zero());
    }

    #[test]
    fn derivative_of_inverse() {
        let n = 2;
        let r = inv(n, 0, 1);
        let d = r.derivative(0);
        let expected = RationalFunction::inverse_difference(n, 0, 1, 2).scale(&q(-1));
        assert!((&d - &expected).is_zero());
    }

    #[test]
    fn numerator_denominator_round_trip() {
        let n = 3;
        let r = &(&inv(n, 0, 1) * &inv(n, 1, 2)) + &RationalFunction::power_of_var(n, 2, 2);
        let (num, den) = r.numerator_denominator();
        let pt = [q(0), q(2), q(7)];
        assert_eq!(r.eval(&pt).unwrap(), num.eval(&pt) / den.eval(&pt));
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        let n = 4;
        prop::collection::vec(
            (0usize..4, 0usize..4, 1u32..3, 0usize..4, 0u32..3, -4i64..5),
            1..5,
        )
        .prop_map(move |items| {
            let mut acc = RationalFunction::zero(n);
            for (a, b, p, v, e, c) in items {
                let mut t = RationalFunction::power_of_var(n, v, e).scale(&qf(c, 1));
                if a != b {
                    t = &t * &RationalFunction::inverse_difference(n, a, b, p);
                }
                acc.add_assign_ref(&t);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn canonical_form_preserves_values(r in arb_rf()) {
            let pt = [q(-3), q(1), q(4), q(9)];
            prop_assert_eq!(r.eval(&pt), r.canonical().eval(&pt));
        }

        #[test]
        fn canonical_zero_agrees_with_numerator(r in arb_rf(), s in arb_rf()) {
            let prod = &(&r * &s) - &(&s * &r);
            prop_assert!(prod.is_zero());
            let (num, _) = r.numerator_denominator();
            prop_assert_eq!(r.is_zero(), num.is_zero());
        }
    }
}
