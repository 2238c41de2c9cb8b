use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::DimerError;
use crate::combinatorics::Signature;
use crate::poly::{det_bareiss, log_abs_det_f64};

/// Which marked points receive the two-step pendant (a white vertex followed
/// by the black boundary vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SMode {
    /// The last `k` indices.
    LastK,
    /// The indices of valence-two points.
    ValenceTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    Interior,
    /// The boundary vertex `v_i` (0-based `i`).
    Boundary(usize),
    /// The white vertex between `v_i` and the grid.
    Connector(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct DimerVertex {
    pub position: (i64, i64),
    pub black: bool,
    pub role: Role,
}

/// A rectangular grid with pendant boundary vertices below its bottom row.
///
/// Grid vertices are the integer points of `[0, width] × [0, height]`,
/// black when `x + y` is even. When the grid has an odd number of vertices
/// its top-left corner is removed so that it balances. Boundary vertex `v_i`
/// hangs below the bottom-row vertex at column `attach[i]`, directly for
/// `i ∉ S` and through an extra white vertex for `i ∈ S`.
#[derive(Debug, Clone, Serialize)]
pub struct DimerGraph {
    pub width: usize,
    pub height: usize,
    #[serde(serialize_with = "serialize_signature")]
    pub signature: Signature,
    pub mode: SMode,
    pub in_s: Vec<bool>,
    pub attach: Vec<usize>,
    pub vertices: Vec<DimerVertex>,
    /// Edges as `(black, white)` vertex pairs.
    pub edges: Vec<(usize, usize)>,
    pub boundary: Vec<usize>,
}

fn serialize_signature<S: serde::Serializer>(sig: &Signature, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(sig.s().iter())
}

/// Evenly spread columns with the colour each pendant needs, pushed right
/// where two would collide. `build_graph` rejects the result if it leaves
/// the grid.
pub fn default_anchors(width: usize, sig: &Signature, mode: SMode) -> Vec<usize> {
    let d = sig.d();
    let in_s = s_membership(sig, mode);
    let mut out: Vec<usize> = Vec::with_capacity(d);
    for i in 0..d {
        let target = ((i + 1) * width) as f64 / (d + 1) as f64;
        let mut c = target.round() as usize;
        if c.is_multiple_of(2) != in_s[i] {
            c = if target >= c as f64 || c == 0 {
                c + 1
            } else {
                c - 1
            };
        }
        while out.last().is_some_and(|&p| c <= p) {
            c += 2;
        }
        out.push(c);
    }
    out
}

fn s_membership(sig: &Signature, mode: SMode) -> Vec<bool> {
    let d = sig.d();
    let k = sig.k();
    match mode {
        SMode::LastK => (0..d).map(|i| i + k >= d).collect(),
        SMode::ValenceTwo => sig.s().iter().map(|&s| s == 2).collect(),
    }
}

/// Builds the graph. `anchors[i]` is the bottom-row column `v_i` attaches
/// to; it must hold a white vertex for `i ∉ S` and a black one for `i ∈ S`
/// (odd and even columns respectively).
pub fn build_graph(
    width: usize,
    height: usize,
    sig: &Signature,
    anchors: &[usize],
    mode: SMode,
) -> Result<DimerGraph, DimerError> {
    let d = sig.d();
    let in_s = s_membership(sig, mode);
    if in_s.iter().filter(|&&b| b).count() != sig.k() {
        return Err(DimerError::ParityInfeasible(format!(
            "{} pendants with a connector, excedance {}",
            in_s.iter().filter(|&&b| b).count(),
            sig.k()
        )));
    }
    if height == 0 || anchors.len() != d || anchors.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DimerError::AnchorsOutOfRange);
    }
    for (i, &c) in anchors.iter().enumerate() {
        if c > width || (c % 2 == 0) != in_s[i] {
            return Err(DimerError::AnchorsOutOfRange);
        }
    }
    let drop_corner = (width + 1) * (height + 1) % 2 == 1;
    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    for y in 0..=height as i64 {
        for x in 0..=width as i64 {
            if drop_corner && x == 0 && y == height as i64 {
                continue;
            }
            index.insert((x, y), vertices.len());
            vertices.push(DimerVertex {
                position: (x, y),
                black: (x + y) % 2 == 0,
                role: Role::Interior,
            });
        }
    }
    let mut edges = Vec::new();
    let mut add = |a: usize, b: usize, vs: &[DimerVertex]| {
        if vs[a].black {
            edges.push((a, b));
        } else {
            edges.push((b, a));
        }
    };
    for (&(x, y), &v) in &index {
        for (dx, dy) in [(1, 0), (0, 1)] {
            if let Some(&u) = index.get(&(x + dx, y + dy)) {
                add(v, u, &vertices);
            }
        }
    }
    let mut boundary = Vec::with_capacity(d);
    for i in 0..d {
        let c = anchors[i] as i64;
        let grid = index[&(c, 0)];
        if in_s[i] {
            let w = vertices.len();
            vertices.push(DimerVertex {
                position: (c, -1),
                black: false,
                role: Role::Connector(i),
            });
            let v = vertices.len();
            vertices.push(DimerVertex {
                position: (c, -2),
                black: true,
                role: Role::Boundary(i),
            });
            add(grid, w, &vertices);
            add(v, w, &vertices);
            boundary.push(v);
        } else {
            let v = vertices.len();
            vertices.push(DimerVertex {
                position: (c, -1),
                black: true,
                role: Role::Boundary(i),
            });
            add(v, grid, &vertices);
            boundary.push(v);
        }
    }
    edges.sort_unstable();
    Ok(DimerGraph {
        width,
        height,
        signature: sig.clone(),
        mode,
        in_s,
        attach: anchors.to_vec(),
        vertices,
        edges,
        boundary,
    })
}

impl DimerGraph {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Interior white minus interior black vertices.
    pub fn excedance(&self) -> i64 {
        self.vertices
            .iter()
            .filter(|v| !matches!(v.role, Role::Boundary(_)))
            .map(|v| if v.black { -1 } else { 1 })
            .sum()
    }

    /// Kasteleyn sign of an edge: vertical grid edges in odd columns are
    /// negative, every other edge positive.
    fn sign(&self, b: usize, w: usize) -> i64 {
        let (pb, pw) = (self.vertices[b].position, self.vertices[w].position);
        let grid = pb.1 >= 0 && pw.1 >= 0;
        if grid && pb.0 == pw.0 && pb.0 % 2 != 0 {
            -1
        } else {
            1
        }
    }

    /// The signed white-by-black adjacency matrix of the graph with the
    /// boundary vertices `v_j`, `removed[j]`, deleted. `None` when the
    /// colour classes have different sizes.
    pub fn kasteleyn(&self, removed: &[bool]) -> Option<Vec<Vec<i64>>> {
        let gone = |v: usize| matches!(self.vertices[v].role, Role::Boundary(j) if removed[j]);
        let mut wi = HashMap::new();
        let mut bi = HashMap::new();
        for (v, info) in self.vertices.iter().enumerate() {
            if gone(v) {
                continue;
            }
            if info.black {
                bi.insert(v, bi.len());
            } else {
                wi.insert(v, wi.len());
            }
        }
        if wi.len() != bi.len() {
            return None;
        }
        let mut k = vec![vec![0i64; bi.len()]; wi.len()];
        for &(b, w) in &self.edges {
            if let (Some(&r), Some(&c)) = (wi.get(&w), bi.get(&b)) {
                k[r][c] = self.sign(b, w);
            }
        }
        Some(k)
    }

    /// Number of perfect matchings after deleting the marked boundary
    /// vertices, as `|det K|`.
    pub fn dimer_partition(&self, removed: &[bool]) -> BigInt {
        match self.kasteleyn(removed) {
            None => BigInt::from(0),
            Some(k) => det_bareiss(
                k.into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            )
            .abs(),
        }
    }

    /// `ln` of the same count in floating point; `-∞` for zero.
    pub fn log_dimer_partition(&self, removed: &[bool]) -> f64 {
        match self.kasteleyn(removed) {
            None => f64::NEG_INFINITY,
            Some(k) => {
                let m: Vec<Vec<f64>> = k
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| x as f64).collect())
                    .collect();
                log_abs_det_f64(&m).1
            }
        }
    }

    /// Perfect matchings by exhaustive search; for checking small graphs.
    pub fn count_matchings_brute_force(&self, removed: &[bool]) -> u64 {
        let gone = |v: usize| matches!(self.vertices[v].role, Role::Boundary(j) if removed[j]);
        let alive: Vec<usize> = (0..self.vertices.len()).filter(|&v| !gone(v)).collect();
        let mut nbrs: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(b, w) in &self.edges {
            if !gone(b) && !gone(w) {
                nbrs.entry(b).or_default().push(w);
                nbrs.entry(w).or_default().push(b);
            }
        }
        fn go(alive: &[usize], used: &mut HashMap<usize, bool>, nbrs: &HashMap<usize, Vec<usize>>) -> u64 {
            let Some(&v) = alive.iter().find(|v| !used[v]) else {
                return 1;
            };
            used.insert(v, true);
            let mut total = 0;
            for &u in nbrs.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if !used[&u] {
                    used.insert(u, true);
                    total += go(alive, used, nbrs);
                    used.insert(u, false);
                }
            }
            used.insert(v, false);
            total
        }
        let mut used: HashMap<usize, bool> = alive.iter().map(|&v| (v, false)).collect();
        go(&alive, &mut used, &nbrs)
    }
}
