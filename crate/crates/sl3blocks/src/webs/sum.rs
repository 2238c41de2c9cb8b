use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::web::{VertexKind, Web, WebKey};
use super::WebsError;

/// A formal linear combination of webs with rational coefficients, indexed
/// by canonical key. Zero coefficients are never stored.
#[derive(Debug, Clone, Default)]
pub struct WebSum {
    terms: BTreeMap<WebKey, (Web, BigRational)>,
}

impl PartialEq for WebSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, (_, ca)), (kb, (_, cb)))| ka == kb && ca == cb)
    }
}

impl Eq for WebSum {}

impl WebSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The web as a one-term sum, after smoothing bivalent vertices and
    /// evaluating closed components.
    pub fn from_web(web: &Web) -> Self {
        let mut s = Self::zero();
        s.add_web(&BigRational::one(), web);
        s
    }

    pub fn add_web(&mut self, coefficient: &BigRational, web: &Web) {
        let (factor, normal) = web.normalize();
        let c = coefficient * BigRational::from_integer(factor);
        self.add_normalized(c, normal);
    }

    pub(crate) fn add_normalized(&mut self, c: BigRational, web: Web) {
        if c.is_zero() {
            return;
        }
        let key = web.key();
        match self.terms.get_mut(&key) {
            Some((_, old)) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (web, c));
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Web, &BigRational)> {
        self.terms.values().map(|(w, c)| (w, c))
    }

    pub fn coefficient_of(&self, web: &Web) -> BigRational {
        let (factor, normal) = web.normalize();
        if factor.is_zero() {
            return BigRational::zero();
        }
        self.terms
            .get(&normal.key())
            .map_or_else(BigRational::zero, |(_, c)| c / BigRational::from_integer(factor))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, (w, x))| (k.clone(), (w.clone(), x * c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_normalized(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// The strip-algebra product `upper · lower`: every term of `upper`
    /// stacked on every term of `lower`.
    pub fn concatenate(upper: &Self, lower: &Self) -> Result<Self, WebsError> {
        let mut out = Self::zero();
        for (wu, cu) in upper.terms() {
            for (wl, cl) in lower.terms() {
                let (factor, w) = stack(wl, wu)?;
                out.add_normalized(cu * cl * BigRational::from_integer(factor), w);
            }
        }
        Ok(out)
    }

    /// Every web reduced, like terms collected.
    pub fn reduce(&self) -> Self {
        super::reduce::reduce_sum(self, None)
    }

    /// Reduction applying the rewrite rules in a seeded random order.
    pub fn reduce_in_random_order(&self, seed: u64) -> Self {
        super::reduce::reduce_sum(self, Some(seed))
    }

    /// Equality in the web quotient: the difference reduces to zero.
    pub fn reduce_equal(&self, other: &Self) -> bool {
        self.sub(other).reduce().is_zero()
    }
}

impl fmt::Display for WebSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·[{} vertices, {} edges]", w.num_internal(), w.num_edges())?;
        }
        Ok(())
    }
}

/// Places `upper` on top of `lower`, identifying the top marked points of
/// `lower` with the bottom marked points of `upper`. The result is
/// normalized; the returned integer collects the values of closed loops and
/// closed components created by the gluing.
pub fn stack(lower: &Web, upper: &Web) -> Result<(BigInt, Web), WebsError> {
    if lower.top != upper.bottom {
        return Err(WebsError::BoundaryMismatch {
            lower_top: lower.top.clone(),
            upper_bottom: upper.bottom.clone(),
        });
    }
    let nv = lower.kinds.len();
    let nh = lower.half.len();
    let mut kinds = lower.kinds.clone();
    kinds.extend(upper.kinds.iter().copied());
    let mut rot = lower.rot.clone();
    rot.extend(upper.rot.iter().map(|r| r.iter().map(|&h| h + nh).collect()));
    let mut half = lower.half.clone();
    half.extend(upper.half.iter().map(|e| super::web::HalfEdge {
        vertex: e.vertex + nv,
        twin: e.twin + nh,
        outgoing: e.outgoing,
    }));
    let mut removed = vec![false; kinds.len()];
    let mut lower_top = vec![0; lower.top.len()];
    let mut upper_bottom = vec![0; upper.bottom.len()];
    for (v, k) in kinds.iter().enumerate() {
        match (*k, v < nv) {
            (VertexKind::Top(j), true) => {
                removed[v] = true;
                lower_top[j] = rot[v][0];
            }
            (VertexKind::Bottom(j), false) => {
                removed[v] = true;
                upper_bottom[j] = rot[v][0];
            }
            _ => {}
        }
    }
    let mut pass = HashMap::new();
    for (a, b) in lower_top.iter().zip(&upper_bottom) {
        pass.insert(*a, *b);
        pass.insert(*b, *a);
    }
    let glued = Web {
        bottom: lower.bottom.clone(),
        top: upper.top.clone(),
        kinds,
        rot,
        half,
    };
    let (loops, w) = glued.splice(&removed, &pass);
    let (factor, w) = w.normalize();
    Ok((factor * BigInt::from(3u32).pow(loops), w))
}
