use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sum::WebSum;
use super::web::{Web, WebKey};

/// A face of length two or four that a relation can remove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducible {
    Digon(Vec<usize>),
    Square(Vec<usize>),
}

/// Internal digons and squares with distinct vertices, digons first.
pub fn reducible_faces(web: &Web) -> Vec<Reducible> {
    let mut digons = Vec::new();
    let mut squares = Vec::new();
    for face in web.internal_faces() {
        let mut verts: Vec<usize> = face.iter().map(|&d| web.half[d].vertex).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != face.len() {
            continue;
        }
        match face.len() {
            2 => digons.push(Reducible::Digon(face)),
            4 => squares.push(Reducible::Square(face)),
            _ => {}
        }
    }
    digons.extend(squares);
    digons
}

/// Whether the web has no closed component, digon or square face.
pub fn is_reduced(web: &Web) -> bool {
    let (factor, w) = web.normalize();
    factor.is_one() && w.num_vertices() == web.num_vertices() && reducible_faces(&w).is_empty()
}

/// The half-edge at the face vertex `face[k]` that is not on the face.
fn external(web: &Web, face: &[usize], k: usize) -> usize {
    let l = face.len();
    let inc = web.half[face[(k + l - 1) % l]].twin;
    let out = face[k];
    let v = web.half[out].vertex;
    *web.rot[v]
        .iter()
        .find(|&&h| h != inc && h != out)
        .expect("trivalent face vertex")
}

/// Two face positions to join, twice over.
type Rejoin = [(usize, usize); 2];

/// Applies the relation at `r`; each output web comes with its scalar.
pub fn apply(web: &Web, r: &Reducible) -> Vec<(BigInt, Web)> {
    let (face, pairings): (&Vec<usize>, Vec<Rejoin>) = match r {
        Reducible::Digon(f) => (f, vec![[(0, 1), (0, 1)]]),
        Reducible::Square(f) => (f, vec![[(0, 1), (2, 3)], [(1, 2), (3, 0)]]),
    };
    let mut removed = vec![false; web.num_vertices()];
    for &d in face {
        removed[web.half[d].vertex] = true;
    }
    let ext: Vec<usize> = (0..face.len()).map(|k| external(web, face, k)).collect();
    let base = match r {
        Reducible::Digon(_) => BigInt::from(2),
        Reducible::Square(_) => BigInt::one(),
    };
    pairings
        .into_iter()
        .map(|pairs| {
            let mut pass = HashMap::new();
            for (a, b) in pairs {
                pass.insert(ext[a], ext[b]);
                pass.insert(ext[b], ext[a]);
            }
            let (loops, w) = web.splice(&removed, &pass);
            let (f, w) = w.normalize();
            (&base * f * BigInt::from(3u32).pow(loops), w)
        })
        .collect()
}

struct Reducer {
    memo: HashMap<WebKey, WebSum>,
    rng: Option<ChaCha8Rng>,
}

impl Reducer {
    fn reduce_normalized(&mut self, web: Web) -> WebSum {
        let key = web.key();
        if self.rng.is_none() {
            if let Some(r) = self.memo.get(&key) {
                return r.clone();
            }
        }
        let faces = reducible_faces(&web);
        let result = if faces.is_empty() {
            let mut s = WebSum::zero();
            s.add_normalized(BigRational::one(), web);
            s
        } else {
            let pick = match &mut self.rng {
                Some(rng) => rng.gen_range(0..faces.len()),
                None => 0,
            };
            let mut acc = WebSum::zero();
            for (f, w) in apply(&web, &faces[pick]) {
                if f.is_zero() {
                    continue;
                }
                let part = self.reduce_normalized(w);
                acc = acc.add(&part.scale(&BigRational::from_integer(f)));
            }
            acc
        };
        if self.rng.is_none() {
            self.memo.insert(key, result.clone());
        }
        result
    }
}

pub(crate) fn reduce_sum(ws: &WebSum, seed: Option<u64>) -> WebSum {
    let mut r = Reducer {
        memo: HashMap::new(),
        rng: seed.map(ChaCha8Rng::seed_from_u64),
    };
    let mut out = WebSum::zero();
    for (w, c) in ws.terms() {
        out = out.add(&r.reduce_normalized(w.clone()).scale(c));
    }
    out
}

/// Reduces a single web.
pub fn reduce(web: &Web) -> WebSum {
    WebSum::from_web(web).reduce()
}
