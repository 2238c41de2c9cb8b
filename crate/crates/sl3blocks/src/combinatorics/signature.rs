use serde::{Deserialize, Serialize};

use super::{CombinatoricsError, Partition};

/// A valence word `(s_1, …, s_d)` with every `s_i ∈ {1, 2}` and `n = Σ s_i`
/// divisible by three.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Signature {
    s: Vec<u8>,
}

impl Signature {
    pub fn new(s: &[u8]) -> Result<Self, CombinatoricsError> {
        if s.is_empty() {
            return Err(CombinatoricsError::EmptySignature);
        }
        if let Some(&bad) = s.iter().find(|&&v| v != 1 && v != 2) {
            return Err(CombinatoricsError::BadValence(bad));
        }
        let n: usize = s.iter().map(|&v| v as usize).sum();
        if !n.is_multiple_of(3) {
            return Err(CombinatoricsError::NotDivisibleByThree(n));
        }
        Ok(Self { s: s.to_vec() })
    }

    /// Parses a comma separated word such as `1,1,2,2`.
    pub fn parse(word: &str) -> Result<Self, CombinatoricsError> {
        let mut s = Vec::new();
        for tok in word.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: u8 = tok.parse().map_err(|_| CombinatoricsError::BadValence(0))?;
            s.push(v);
        }
        Self::new(&s)
    }

    pub fn s(&self) -> &[u8] {
        &self.s
    }

    pub fn d(&self) -> usize {
        self.s.len()
    }

    pub fn n(&self) -> usize {
        self.s.iter().map(|&v| v as usize).sum()
    }

    /// `q_i = +1` for valence one and `−1` for valence two.
    pub fn q(&self) -> Vec<i64> {
        self.s.iter().map(|&v| if v == 1 { 1 } else { -1 }).collect()
    }

    /// Offsets `p_1 = 1, p_{i+1} = p_i + s_i`; the returned vector has `d + 1`
    /// entries so that `p_{d+1} = n + 1`.
    pub fn p(&self) -> Vec<usize> {
        offsets(&self.content())
    }

    /// The multiplicity word as `usize`s.
    pub fn content(&self) -> Vec<usize> {
        self.s.iter().map(|&v| v as usize).collect()
    }

    /// The three-row rectangle `(n/3, n/3, n/3)`.
    pub fn pi(&self) -> Partition {
        Partition::rectangle(3, self.n() / 3)
    }

    /// `k = n / 3`, the number of columns of `π`.
    pub fn k(&self) -> usize {
        self.n() / 3
    }

    pub fn word(&self) -> String {
        self.s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl TryFrom<Vec<u8>> for Signature {
    type Error = CombinatoricsError;
    fn try_from(v: Vec<u8>) -> Result<Self, Self::Error> {
        Signature::new(&v)
    }
}

impl From<Signature> for Vec<u8> {
    fn from(s: Signature) -> Vec<u8> {
        s.s
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.word())
    }
}

/// `p_i = 1 + Σ_{j<i} c_j` for a general multiplicity word.
pub(crate) fn offsets(content: &[usize]) -> Vec<usize> {
    let mut p = Vec::with_capacity(content.len() + 1);
    let mut acc = 1;
    p.push(acc);
    for &c in content {
        acc += c;
        p.push(acc);
    }
    p
}
