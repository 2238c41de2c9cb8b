use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::builder::{cap_web, h_web, merge_web};
use super::reduce::is_reduced;
use super::sum::{stack, WebSum};
use super::web::{colorings_with_fixed, VertexKind, Web, WebKey};
use super::WebsError;
use crate::combinatorics::{enumerate_tableaux, kostka, row_number_tuples, Filling, Signature, TableauKind};
use crate::poly::{invert_rational, RationalMatrix};

/// `λ(e_T)`: the number of edge colourings of the half-plane web `λ` by
/// `{1,2,3}`, distinct at every trivalent vertex, in which the leg at a
/// valence-one point `i` carries the row number in `K_i` and the leg at a
/// valence-two point carries the row number missing from `K_i`.
pub fn tensor_value(web: &Web, t: &Filling, sig: &Signature) -> Result<BigInt, WebsError> {
    if !web.top.is_empty() || web.bottom != sig.s() || t.content() != sig.content() {
        return Err(WebsError::ContentMismatch);
    }
    let k = row_number_tuples(t);
    let mut pinned = Vec::new();
    for (v, kind) in web.kinds.iter().enumerate() {
        if let VertexKind::Bottom(i) = *kind {
            let color = match k[i].as_slice() {
                [a] => *a,
                [a, b] if a != b && *a <= 3 && *b <= 3 => 6 - a - b,
                _ => return Err(WebsError::ContentMismatch),
            };
            pinned.push((web.rot[v][0], color as u8));
        }
    }
    Ok(colorings_with_fixed(web, &pinned))
}

/// The reduced half-plane webs with a given boundary word, in canonical key
/// order.
#[derive(Default)]
struct Harvester {
    memo: HashMap<Vec<u8>, BTreeMap<WebKey, Web>>,
}

impl Harvester {
    fn get(&mut self, word: &[u8]) -> Result<BTreeMap<WebKey, Web>, WebsError> {
        if !self.memo.contains_key(word) {
            self.fill_class(word)?;
        }
        Ok(self.memo[word].clone())
    }

    fn absorb(set: &mut BTreeMap<WebKey, Web>, reduced: &WebSum) -> bool {
        let mut grew = false;
        for (w, _) in reduced.terms() {
            let key = w.key();
            if let std::collections::btree_map::Entry::Vacant(e) = set.entry(key) {
                e.insert(w.clone());
                grew = true;
            }
        }
        grew
    }

    fn grow(set: &mut BTreeMap<WebKey, Web>, mv: &Web, inner: &[Web]) -> Result<bool, WebsError> {
        let mut grew = false;
        for w in inner {
            let (f, glued) = stack(mv, w)?;
            if f.is_zero() {
                continue;
            }
            let mut s = WebSum::zero();
            s.add_normalized(BigRational::one(), glued);
            grew |= Self::absorb(set, &s.reduce());
        }
        Ok(grew)
    }

    /// Fills every rearrangement of `word` at once, since the sideways H
    /// moves only permute letters.
    fn fill_class(&mut self, word: &[u8]) -> Result<(), WebsError> {
        let n: usize = word.iter().map(|&s| s as usize).sum();
        let class = arrangements(word);
        if !n.is_multiple_of(3) {
            for w in class {
                self.memo.insert(w, BTreeMap::new());
            }
            return Ok(());
        }
        if word.is_empty() {
            let mut set = BTreeMap::new();
            let e = Web::empty();
            set.insert(e.key(), e);
            self.memo.insert(Vec::new(), set);
            return Ok(());
        }
        let mut sets: HashMap<Vec<u8>, BTreeMap<WebKey, Web>> = HashMap::new();
        for w in &class {
            let mut set = BTreeMap::new();
            for i in 1..w.len() {
                let mv = if w[i - 1] == w[i] {
                    merge_web(w, i)?
                } else {
                    cap_web(w, i)?
                };
                let inner: Vec<Web> = self.get(&mv.top)?.into_values().collect();
                Self::grow(&mut set, &mv, &inner)?;
            }
            sets.insert(w.clone(), set);
        }
        loop {
            let mut grew = false;
            for w in &class {
                for i in 1..w.len() {
                    if w[i - 1] == w[i] {
                        continue;
                    }
                    let mv = h_web(w, i)?;
                    let inner: Vec<Web> = sets[&mv.top].values().cloned().collect();
                    let set = sets.get_mut(w).expect("class member");
                    grew |= Self::grow(set, &mv, &inner)?;
                }
            }
            if !grew {
                break;
            }
        }
        self.memo.extend(sets);
        Ok(())
    }
}

fn arrangements(word: &[u8]) -> Vec<Vec<u8>> {
    let ones = word.iter().filter(|&&s| s == 1).count();
    let len = word.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << len) {
        if mask.count_ones() as usize == ones {
            out.push(
                (0..len)
                    .map(|b| if mask & (1 << b) != 0 { 1 } else { 2 })
                    .collect(),
            );
        }
    }
    out
}

/// Reduced half-plane webs with boundary word `ς`, generated by stacking
/// caps, merges and sideways H's on smaller reduced webs and reducing.
/// Fails unless the count reaches the Kostka number `K_{π,ς}`.
pub fn harvest_reduced(sig: &Signature) -> Result<Vec<Web>, WebsError> {
    let mut h = Harvester::default();
    let webs: Vec<Web> = h.get(sig.s())?.into_values().collect();
    let expected = kostka(&sig.pi(), &sig.content())?;
    if webs.len() != expected {
        return Err(WebsError::HarvestIncomplete {
            found: webs.len(),
            expected,
        });
    }
    debug_assert!(webs.iter().all(is_reduced));
    Ok(webs)
}

/// The matrix `M_{Tλ} = λ(e_T)` together with its inverse. Rows follow the
/// tableau enumeration order; columns are the reduced webs, ordered so that
/// `M` is unit lower triangular.
#[derive(Debug, Clone, Serialize)]
pub struct ChangeOfBasis {
    #[serde(skip)]
    pub signature: Signature,
    #[serde(serialize_with = "serialize_fillings")]
    pub tableaux: Vec<Filling>,
    #[serde(skip)]
    pub webs: Vec<Web>,
    #[serde(serialize_with = "serialize_int_matrix")]
    pub m: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "serialize_rat_matrix")]
    pub m_inv: RationalMatrix,
}

fn serialize_fillings<S: serde::Serializer>(v: &[Filling], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|f| f.rows().to_vec()))
}

fn serialize_int_matrix<S: serde::Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        m.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
}

fn serialize_rat_matrix<S: serde::Serializer>(m: &RationalMatrix, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        m.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
}

impl ChangeOfBasis {
    /// Row `λ` of `M⁻¹`: the coefficients of the pure partition function
    /// `𝒵_λ = Σ_U M⁻¹_{λU} U_U` in the block basis.
    pub fn pure_partition_row(&self, lambda: usize) -> &[BigRational] {
        &self.m_inv[lambda]
    }

    pub fn size(&self) -> usize {
        self.tableaux.len()
    }

    pub fn m_as_i64(&self) -> Vec<Vec<i64>> {
        self.m
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("small entry")).collect())
            .collect()
    }
}

pub fn matrix_m(sig: &Signature) -> Result<ChangeOfBasis, WebsError> {
    let webs = harvest_reduced(sig)?;
    let tableaux = enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt)?;
    let values: Vec<Vec<BigInt>> = tableaux
        .iter()
        .map(|t| webs.iter().map(|w| tensor_value(w, t, sig)).collect())
        .collect::<Result<_, _>>()?;
    let mut remaining: Vec<usize> = (0..webs.len()).collect();
    let mut order = Vec::with_capacity(webs.len());
    for row in &values {
        let hits: Vec<usize> = remaining.iter().copied().filter(|&c| !row[c].is_zero()).collect();
        match hits.as_slice() {
            [c] if row[*c].is_one() => {
                order.push(*c);
                remaining.retain(|x| x != c);
            }
            _ => return Err(WebsError::SingularM),
        }
    }
    let m: Vec<Vec<BigInt>> = values
        .iter()
        .map(|row| order.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let mq: RationalMatrix = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let m_inv = invert_rational(&mq).map_err(|_| WebsError::SingularM)?;
    Ok(ChangeOfBasis {
        signature: sig.clone(),
        tableaux,
        webs: order.into_iter().map(|c| webs[c].clone()).collect(),
        m,
        m_inv,
    })
}

/// Rows of `M⁻¹`.
pub fn pure_partition_coeffs(sig: &Signature) -> Result<RationalMatrix, WebsError> {
    Ok(matrix_m(sig)?.m_inv)
}
