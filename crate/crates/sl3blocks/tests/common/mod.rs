//! Closed-form scaling-limit connection probabilities for the three worked
//! signatures, written as products of differences so they can be compared
//! with the library's rational functions as polynomial identities.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use sl3blocks::combinatorics::Signature;
use sl3blocks::dimer::limit_probability_parts;
use sl3blocks::poly::SparsePolynomial;
use sl3blocks::webs::matrix_m;

/// `coefficient · Π (x_a − x_b) / Π (x_a − x_b)` over the listed 1-based pairs.
pub struct ClosedForm {
    pub signature: &'static [u8],
    pub tableau: usize,
    pub lambda: usize,
    pub coefficient: i64,
    pub numerator: &'static [(usize, usize)],
    pub denominator: &'static [(usize, usize)],
}

const D6: &[(usize, usize)] = &[(1, 3), (1, 5), (2, 4), (2, 6), (3, 5), (4, 6)];

pub const CLOSED_FORMS: &[ClosedForm] = &[
    ClosedForm {
        signature: &[1, 1, 2, 2],
        tableau: 2,
        lambda: 1,
        coefficient: 1,
        numerator: &[(2, 1), (4, 3)],
        denominator: &[(3, 1), (4, 2)],
    },
    ClosedForm {
        signature: &[1, 1, 2, 2],
        tableau: 2,
        lambda: 2,
        coefficient: 1,
        numerator: &[(3, 2), (4, 1)],
        denominator: &[(3, 1), (4, 2)],
    },
    ClosedForm {
        signature: &[1, 1, 1, 1, 1, 1],
        tableau: 5,
        lambda: 1,
        coefficient: 1,
        numerator: &[(2, 1), (4, 3), (6, 5)],
        denominator: &[(4, 1), (5, 2), (6, 3)],
    },
    ClosedForm {
        signature: &[1, 1, 1, 1, 1, 1],
        tableau: 5,
        lambda: 2,
        coefficient: 1,
        numerator: &[(2, 1), (5, 4)],
        denominator: &[(4, 1), (5, 2)],
    },
    ClosedForm {
        signature: &[1, 1, 1, 1, 1, 1],
        tableau: 5,
        lambda: 3,
        coefficient: 1,
        numerator: &[(3, 2), (6, 5)],
        denominator: &[(5, 2), (6, 3)],
    },
    ClosedForm {
        signature: &[1, 1, 1, 1, 1, 1],
        tableau: 5,
        lambda: 4,
        coefficient: 1,
        numerator: &[(3, 2), (5, 4), (6, 1)],
        denominator: &[(4, 1), (5, 2), (6, 3)],
    },
    ClosedForm {
        signature: &[1, 1, 1, 1, 1, 1],
        tableau: 5,
        lambda: 5,
        coefficient: 1,
        numerator: &[(4, 3), (6, 1)],
        denominator: &[(4, 1), (6, 3)],
    },
    ClosedForm {
        signature: &[1, 2, 1, 2, 1, 2],
        tableau: 6,
        lambda: 1,
        coefficient: 1,
        numerator: &[(2, 1), (3, 2), (4, 5), (5, 6)],
        denominator: &[(1, 5), (2, 4), (2, 6), (3, 5)],
    },
    ClosedForm {
        signature: &[1, 2, 1, 2, 1, 2],
        tableau: 6,
        lambda: 2,
        coefficient: 2,
        numerator: &[(1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)],
        denominator: D6,
    },
    ClosedForm {
        signature: &[1, 2, 1, 2, 1, 2],
        tableau: 6,
        lambda: 3,
        coefficient: 1,
        numerator: &[(1, 2), (1, 4), (2, 5), (3, 4), (3, 6), (5, 6)],
        denominator: D6,
    },
    ClosedForm {
        signature: &[1, 2, 1, 2, 1, 2],
        tableau: 6,
        lambda: 4,
        coefficient: 1,
        numerator: &[(1, 2), (1, 6), (3, 4), (4, 5)],
        denominator: &[(1, 3), (1, 5), (2, 4), (4, 6)],
    },
    ClosedForm {
        signature: &[1, 2, 1, 2, 1, 2],
        tableau: 6,
        lambda: 5,
        coefficient: 1,
        numerator: &[(1, 6), (3, 2), (3, 4), (5, 6)],
        denominator: &[(1, 3), (2, 6), (3, 5), (6, 4)],
    },
    ClosedForm {
        signature: &[1, 2, 1, 2, 1, 2],
        tableau: 6,
        lambda: 6,
        coefficient: 1,
        numerator: &[(1, 4), (1, 6), (2, 3), (2, 5), (3, 6), (4, 5)],
        denominator: D6,
    },
];

fn product_of_differences(nvars: usize, pairs: &[(usize, usize)]) -> SparsePolynomial {
    pairs.iter().fold(SparsePolynomial::one(nvars), |acc, &(a, b)| {
        &acc * &SparsePolynomial::difference(nvars, a - 1, b - 1)
    })
}

impl ClosedForm {
    /// Whether `limit_probability` agrees with this expression identically,
    /// checked by cross-multiplying numerators and denominators.
    pub fn matches_library(&self) -> bool {
        let sig = Signature::new(self.signature).expect("valid signature");
        let basis = matrix_m(&sig).expect("change of basis");
        let (num, den) = limit_probability_parts(&basis, self.lambda, self.tableau).expect("in range");
        let d = sig.d();
        let c = BigRational::from_integer(BigInt::from(self.coefficient));
        let lhs = &num * &product_of_differences(d, self.denominator);
        let rhs = (&den * &product_of_differences(d, self.numerator)).scale(&c);
        (&lhs - &rhs).is_zero()
    }
}
