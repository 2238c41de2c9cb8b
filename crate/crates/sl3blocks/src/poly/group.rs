use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::{q, SparsePolynomial};
use super::PolyError;

/// A permutation of `{0, …, n−1}` stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Swaps the 0-based letters `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// Every permutation of `n` letters, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == used.len() {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// A formal rational combination of permutations of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: Vec<(Permutation, BigRational)>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: Vec::new(),
        }
    }

    pub fn from_permutation(p: Permutation) -> Self {
        Self {
            degree: p.degree(),
            terms: vec![(p, BigRational::one())],
        }
    }

    pub fn from_terms(degree: usize, terms: Vec<(Permutation, BigRational)>) -> Self {
        assert!(terms.iter().all(|(p, _)| p.degree() == degree));
        Self { degree, terms }
    }

    /// `Σ σ` over all permutations of the given 0-based sites, fixing the rest.
    pub fn symmetrizer(degree: usize, sites: &[usize]) -> Self {
        Self::site_sum(degree, sites, false)
    }

    /// `Σ sgn(σ) σ` over all permutations of the given sites.
    pub fn antisymmetrizer(degree: usize, sites: &[usize]) -> Self {
        Self::site_sum(degree, sites, true)
    }

    fn site_sum(degree: usize, sites: &[usize], signed: bool) -> Self {
        let terms = Permutation::all(sites.len())
            .into_iter()
            .map(|local| {
                let mut images: Vec<usize> = (0..degree).collect();
                for (a, &site) in sites.iter().enumerate() {
                    images[site] = sites[local.apply(a)];
                }
                let c = if signed {
                    q(local.sign())
                } else {
                    BigRational::one()
                };
                (Permutation::new(images), c)
            })
            .collect();
        Self { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Permutation, BigRational)] {
        &self.terms
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.degree, other.degree);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self {
            degree: self.degree,
            terms,
        }
    }

    /// Product in the group algebra, `(Σ a_σ σ)(Σ b_τ τ) = Σ a_σ b_τ (σ∘τ)`.
    pub fn mul(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.degree, other.degree);
        let mut terms = Vec::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                terms.push((s.compose(t), a * b));
            }
        }
        Self {
            degree: self.degree,
            terms,
        }
    }
}

/// Acts by `σ · x_i = x_{σ(i)}`, multiplying by `sgn(σ)` when `signed`, and
/// sums with the element's coefficients.
pub fn apply_group_algebra(
    g: &GroupAlgebraElement,
    p: &SparsePolynomial,
    signed: bool,
) -> Result<SparsePolynomial, PolyError> {
    if g.degree != p.nvars() {
        return Err(PolyError::DegreeMismatch {
            perm: g.degree,
            vars: p.nvars(),
        });
    }
    let mut out = SparsePolynomial::zero(p.nvars());
    for (perm, c) in &g.terms {
        if c.is_zero() {
            continue;
        }
        let mut coeff = c.clone();
        if signed && perm.sign() < 0 {
            coeff = -coeff;
        }
        out = &out + &p.rename(perm.images(), p.nvars()).scale(&coeff);
    }
    Ok(out)
}
