use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::WebsError;

/// Role of a vertex in a strip web. Boundary indices are 0-based and count
/// from the left on both boundary lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Bottom(usize),
    Top(usize),
    /// A trivalent source or sink, or (before normalization) a bivalent
    /// point subdividing an edge.
    Internal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub vertex: usize,
    pub twin: usize,
    /// Whether the edge points away from `vertex`.
    pub outgoing: bool,
}

/// An sl₃ web in the strip `ℝ × [0, 1]`, stored as a combinatorial map.
///
/// `rot[v]` lists the half-edges at `v` in counterclockwise order. Marked
/// points carry valences: at the bottom line a valence-one point emits its
/// edge and a valence-two point absorbs it, and the reverse holds on the top
/// line. A web with an empty top word is a half-plane web.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Web {
    pub(crate) bottom: Vec<u8>,
    pub(crate) top: Vec<u8>,
    pub(crate) kinds: Vec<VertexKind>,
    pub(crate) rot: Vec<Vec<usize>>,
    pub(crate) half: Vec<HalfEdge>,
}

/// Canonical encoding of a normalized web; equal keys mean isotopic webs.
pub type WebKey = Vec<u32>;

impl Web {
    /// Assembles a web from raw parts, checking only that the pieces refer to
    /// each other consistently. Use [`Web::validate`] for the web axioms.
    pub fn from_parts(
        bottom: Vec<u8>,
        top: Vec<u8>,
        kinds: Vec<VertexKind>,
        rot: Vec<Vec<usize>>,
        half: Vec<HalfEdge>,
    ) -> Result<Self, WebsError> {
        let w = Self {
            bottom,
            top,
            kinds,
            rot,
            half,
        };
        w.check_map().map_err(WebsError::Invalid)?;
        Ok(w)
    }

    /// The web with no vertices and no marked points.
    pub fn empty() -> Self {
        Self {
            bottom: Vec::new(),
            top: Vec::new(),
            kinds: Vec::new(),
            rot: Vec::new(),
            half: Vec::new(),
        }
    }

    pub fn bottom(&self) -> &[u8] {
        &self.bottom
    }

    pub fn top(&self) -> &[u8] {
        &self.top
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_edges(&self) -> usize {
        self.half.len() / 2
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn half_edge(&self, h: usize) -> HalfEdge {
        self.half[h]
    }

    pub fn num_internal(&self) -> usize {
        self.kinds.iter().filter(|k| **k == VertexKind::Internal).count()
    }

    /// Boundary vertices in counterclockwise disk order: bottom left to
    /// right, then top right to left.
    pub fn boundary_cycle(&self) -> Vec<usize> {
        let mut bottom = vec![usize::MAX; self.bottom.len()];
        let mut top = vec![usize::MAX; self.top.len()];
        for (v, k) in self.kinds.iter().enumerate() {
            match *k {
                VertexKind::Bottom(i) => bottom[i] = v,
                VertexKind::Top(i) => top[i] = v,
                VertexKind::Internal => {}
            }
        }
        bottom.into_iter().chain(top.into_iter().rev()).collect()
    }

    fn check_map(&self) -> Result<(), String> {
        if self.rot.len() != self.kinds.len() {
            return Err("rotation list count differs from vertex count".into());
        }
        let mut seen = vec![false; self.half.len()];
        for (v, r) in self.rot.iter().enumerate() {
            for &h in r {
                if h >= self.half.len() || seen[h] {
                    return Err(format!("half-edge {h} listed twice or out of range"));
                }
                seen[h] = true;
                if self.half[h].vertex != v {
                    return Err(format!("half-edge {h} does not belong to vertex {v}"));
                }
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return Err(format!("half-edge {h} missing from every rotation"));
        }
        for (h, e) in self.half.iter().enumerate() {
            if e.twin >= self.half.len() || e.twin == h || self.half[e.twin].twin != h {
                return Err(format!("twin of half-edge {h} is not an involution"));
            }
            if self.half[e.twin].outgoing == e.outgoing {
                return Err(format!("edge at half-edge {h} has inconsistent orientation"));
            }
        }
        let mut bottom_seen = vec![false; self.bottom.len()];
        let mut top_seen = vec![false; self.top.len()];
        for k in &self.kinds {
            let slot = match *k {
                VertexKind::Bottom(i) => bottom_seen.get_mut(i),
                VertexKind::Top(i) => top_seen.get_mut(i),
                VertexKind::Internal => continue,
            };
            match slot {
                Some(s) if !*s => *s = true,
                _ => return Err(format!("boundary vertex {k:?} repeated or out of range")),
            }
        }
        if bottom_seen.iter().chain(&top_seen).any(|s| !s) {
            return Err("a marked point has no vertex".into());
        }
        Ok(())
    }

    /// Checks the web axioms: trivalent internal vertices are sources or
    /// sinks (bivalent ones pass orientation through), marked points are
    /// univalent with the orientation fixed by their valence and side, and
    /// the map with the boundary circle added satisfies Euler's formula.
    pub fn validate(&self) -> Result<(), String> {
        self.check_map()?;
        for (v, k) in self.kinds.iter().enumerate() {
            let outs: Vec<bool> = self.rot[v].iter().map(|&h| self.half[h].outgoing).collect();
            match *k {
                VertexKind::Internal => match outs.len() {
                    3 if outs.iter().all(|&o| o) || outs.iter().all(|&o| !o) => {}
                    2 if outs[0] != outs[1] => {}
                    _ => {
                        return Err(format!(
                            "internal vertex {v} has {} edges with orientations {outs:?}",
                            outs.len()
                        ))
                    }
                },
                VertexKind::Bottom(i) | VertexKind::Top(i) => {
                    if outs.len() != 1 {
                        return Err(format!("marked point at vertex {v} is not univalent"));
                    }
                    let s = match *k {
                        VertexKind::Bottom(_) => self.bottom[i],
                        _ => self.top[i],
                    };
                    let expect_out = matches!((*k, s), (VertexKind::Bottom(_), 1) | (VertexKind::Top(_), 2));
                    if outs[0] != expect_out {
                        return Err(format!("marked point {k:?} has the wrong orientation"));
                    }
                }
            }
        }
        let aug = Augmented::new(self);
        let v = self.kinds.len() as i64;
        let e = (aug.twin.len() / 2) as i64;
        let f = aug.faces().len() as i64;
        let c = aug.components() as i64;
        if v - e + f != 2 * c {
            return Err(format!("Euler characteristic V−E+F = {} ≠ {}", v - e + f, 2 * c));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Faces of the web that do not touch the boundary, as dart cycles
    /// `d_0, …, d_{L−1}` with `d_{k+1}` leaving the head of `d_k`.
    pub fn internal_faces(&self) -> Vec<Vec<usize>> {
        let aug = Augmented::new(self);
        let nh = self.half.len();
        aug.faces()
            .into_iter()
            .filter(|f| f.iter().all(|&d| d < nh))
            .collect()
    }

    /// Removes `removed` vertices and reconnects the surviving half-edges
    /// along strands: a strand enters a removed vertex through a half-edge
    /// `h` and leaves through `pass[h]`. Strands that never reach a surviving
    /// vertex form closed loops, whose number is returned.
    pub(crate) fn splice(&self, removed: &[bool], pass: &HashMap<usize, usize>) -> (u32, Web) {
        let nh = self.half.len();
        let alive = |h: usize| !removed[self.half[h].vertex];
        let mut new_twin = vec![usize::MAX; nh];
        let mut visited = vec![false; nh];
        for h in 0..nh {
            if !alive(h) {
                continue;
            }
            let mut cur = self.half[h].twin;
            while !alive(cur) {
                visited[cur] = true;
                let p = *pass
                    .get(&cur)
                    .unwrap_or_else(|| panic!("strand through half-edge {cur} has no continuation"));
                visited[p] = true;
                cur = self.half[p].twin;
            }
            new_twin[h] = cur;
        }
        let mut loops = 0;
        let mut keys: Vec<usize> = pass.keys().copied().collect();
        keys.sort_unstable();
        for start in keys {
            if visited[start] {
                continue;
            }
            let mut cur = start;
            loop {
                visited[cur] = true;
                let p = pass[&cur];
                visited[p] = true;
                cur = self.half[p].twin;
                if cur == start || visited[cur] {
                    break;
                }
            }
            loops += 1;
        }

        let mut vmap = vec![usize::MAX; self.kinds.len()];
        let mut kinds = Vec::new();
        for (v, k) in self.kinds.iter().enumerate() {
            if !removed[v] {
                vmap[v] = kinds.len();
                kinds.push(*k);
            }
        }
        let mut hmap = vec![usize::MAX; nh];
        let mut count = 0;
        for h in 0..nh {
            if alive(h) {
                hmap[h] = count;
                count += 1;
            }
        }
        let mut half = Vec::with_capacity(count);
        for h in 0..nh {
            if alive(h) {
                let e = self.half[h];
                half.push(HalfEdge {
                    vertex: vmap[e.vertex],
                    twin: hmap[new_twin[h]],
                    outgoing: e.outgoing,
                });
            }
        }
        let rot = (0..self.kinds.len())
            .filter(|&v| !removed[v])
            .map(|v| self.rot[v].iter().map(|&h| hmap[h]).collect())
            .collect();
        (
            loops,
            Web {
                bottom: self.bottom.clone(),
                top: self.top.clone(),
                kinds,
                rot,
                half,
            },
        )
    }

    /// Smooths bivalent vertices and evaluates closed components (connected
    /// components without marked points). Returns the scalar produced and
    /// the remaining web, in which every component reaches the boundary.
    pub fn normalize(&self) -> (BigInt, Web) {
        let mut factor = BigInt::one();
        let removed: Vec<bool> = (0..self.kinds.len())
            .map(|v| self.kinds[v] == VertexKind::Internal && self.rot[v].len() == 2)
            .collect();
        let mut web = if removed.iter().any(|&r| r) {
            let mut pass = HashMap::new();
            for (v, r) in removed.iter().enumerate() {
                if *r {
                    let (a, b) = (self.rot[v][0], self.rot[v][1]);
                    pass.insert(a, b);
                    pass.insert(b, a);
                }
            }
            let (loops, w) = self.splice(&removed, &pass);
            factor *= BigInt::from(3u32).pow(loops);
            w
        } else {
            self.clone()
        };

        let reach = web.reachable_from_boundary();
        if reach.iter().any(|r| !r) {
            let closed: Vec<bool> = reach.iter().map(|r| !r).collect();
            for comp in web.components_among(&closed) {
                factor *= web.tait_colorings(&comp);
                if factor.is_zero() {
                    break;
                }
            }
            let (_, w) = web.splice(&closed, &HashMap::new());
            web = w;
        }
        (factor, web)
    }

    fn reachable_from_boundary(&self) -> Vec<bool> {
        let mut seen = vec![false; self.kinds.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (v, k) in self.kinds.iter().enumerate() {
            if *k != VertexKind::Internal {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &h in &self.rot[v] {
                let u = self.half[self.half[h].twin].vertex;
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    fn components_among(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.kinds.len()];
        let mut out = Vec::new();
        for s in 0..self.kinds.len() {
            if !mask[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &h in &self.rot[v] {
                    let u = self.half[self.half[h].twin].vertex;
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Number of colourings of the edges among `vertices` by `{1,2,3}` with
    /// three distinct colours at every trivalent vertex.
    pub(crate) fn tait_colorings(&self, vertices: &[usize]) -> BigInt {
        let mut edges: Vec<usize> = Vec::new();
        let mut edge_of = HashMap::new();
        for &v in vertices {
            for &h in &self.rot[v] {
                let t = self.half[h].twin;
                let key = h.min(t);
                if let std::collections::hash_map::Entry::Vacant(e) = edge_of.entry(key) {
                    e.insert(edges.len());
                    edges.push(key);
                }
            }
        }
        let incident: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                self.rot[v]
                    .iter()
                    .map(|&h| edge_of[&h.min(self.half[h].twin)])
                    .collect()
            })
            .collect();
        let mut at_edge: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (vi, inc) in incident.iter().enumerate() {
            for &e in inc {
                at_edge[e].push(vi);
            }
        }
        let mut colors = vec![0u8; edges.len()];
        count_colorings(0, &mut colors, &incident, &at_edge, &[])
    }

    /// Canonical key of a normalized web (every vertex reachable from the
    /// boundary). Vertices are labelled in breadth-first order starting from
    /// the marked points in disk order, each rotation read from the
    /// half-edge through which the vertex was discovered.
    pub fn key(&self) -> WebKey {
        let n = self.kinds.len();
        let mut label = vec![u32::MAX; n];
        let mut start = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for v in self.boundary_cycle() {
            if label[v] == u32::MAX {
                label[v] = order.len() as u32;
                order.push(v);
                queue.push_back(v);
            }
            while let Some(x) = queue.pop_front() {
                let deg = self.rot[x].len();
                for k in 0..deg {
                    let h = self.rot[x][(start[x] + k) % deg];
                    let t = self.half[h].twin;
                    let u = self.half[t].vertex;
                    if label[u] == u32::MAX {
                        label[u] = order.len() as u32;
                        order.push(u);
                        start[u] = self.rot[u]
                            .iter()
                            .position(|&g| g == t)
                            .expect("twin in rotation");
                        queue.push_back(u);
                    }
                }
            }
        }
        assert_eq!(order.len(), n, "canonical key requires a normalized web");
        let mut key: WebKey = Vec::new();
        key.push(self.bottom.len() as u32);
        key.extend(self.bottom.iter().map(|&s| s as u32));
        key.push(self.top.len() as u32);
        key.extend(self.top.iter().map(|&s| s as u32));
        for &v in &order {
            match self.kinds[v] {
                VertexKind::Internal => key.push(0),
                VertexKind::Bottom(i) => key.extend([1, i as u32]),
                VertexKind::Top(i) => key.extend([2, i as u32]),
            }
            let deg = self.rot[v].len();
            key.push(deg as u32);
            for k in 0..deg {
                let h = self.rot[v][(start[v] + k) % deg];
                let t = self.half[h].twin;
                let u = self.half[t].vertex;
                let du = self.rot[u].len();
                let pos = self.rot[u]
                    .iter()
                    .position(|&g| g == t)
                    .expect("twin in rotation");
                key.push(label[u]);
                key.push(((pos + du - start[u]) % du) as u32);
                key.push(self.half[h].outgoing as u32);
            }
        }
        key
    }

    /// A closed loop: one bivalent vertex carrying an edge to itself.
    pub fn closed_loop() -> Web {
        Web {
            bottom: Vec::new(),
            top: Vec::new(),
            kinds: vec![VertexKind::Internal],
            rot: vec![vec![0, 1]],
            half: vec![
                HalfEdge {
                    vertex: 0,
                    twin: 1,
                    outgoing: true,
                },
                HalfEdge {
                    vertex: 0,
                    twin: 0,
                    outgoing: false,
                },
            ],
        }
    }

    /// The theta graph: a source and a sink joined by three edges.
    pub fn theta() -> Web {
        let half = (0..6)
            .map(|h| HalfEdge {
                vertex: h % 2,
                twin: h ^ 1,
                outgoing: h % 2 == 0,
            })
            .collect();
        Web {
            bottom: Vec::new(),
            top: Vec::new(),
            kinds: vec![VertexKind::Internal; 2],
            rot: vec![vec![0, 2, 4], vec![5, 3, 1]],
            half,
        }
    }

    /// Juxtaposition: `other` placed to the right of `self`.
    pub fn beside(&self, other: &Web) -> Web {
        let (nb, nt) = (self.bottom.len(), self.top.len());
        let nv = self.kinds.len();
        let nh = self.half.len();
        let mut w = self.clone();
        w.bottom.extend(&other.bottom);
        w.top.extend(&other.top);
        w.kinds.extend(other.kinds.iter().map(|k| match *k {
            VertexKind::Bottom(i) => VertexKind::Bottom(i + nb),
            VertexKind::Top(i) => VertexKind::Top(i + nt),
            VertexKind::Internal => VertexKind::Internal,
        }));
        w.rot
            .extend(other.rot.iter().map(|r| r.iter().map(|&h| h + nh).collect()));
        w.half.extend(other.half.iter().map(|e| HalfEdge {
            vertex: e.vertex + nv,
            twin: e.twin + nh,
            outgoing: e.outgoing,
        }));
        w
    }

    /// Mirror image across a vertical line: the word order reverses, the
    /// rotations reverse, orientations are kept.
    pub fn mirror(&self) -> Web {
        let nb = self.bottom.len();
        let nt = self.top.len();
        let kinds = self
            .kinds
            .iter()
            .map(|k| match *k {
                VertexKind::Bottom(i) => VertexKind::Bottom(nb - 1 - i),
                VertexKind::Top(i) => VertexKind::Top(nt - 1 - i),
                VertexKind::Internal => VertexKind::Internal,
            })
            .collect();
        Web {
            bottom: self.bottom.iter().rev().copied().collect(),
            top: self.top.iter().rev().copied().collect(),
            kinds,
            rot: self
                .rot
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            half: self.half.clone(),
        }
    }
}

fn count_colorings(
    e: usize,
    colors: &mut Vec<u8>,
    incident: &[Vec<usize>],
    at_edge: &[Vec<usize>],
    fixed: &[(usize, u8)],
) -> BigInt {
    if e == colors.len() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    let forced = fixed.iter().find(|(fe, _)| *fe == e).map(|&(_, c)| c);
    for c in 1..=3u8 {
        if forced.is_some_and(|f| f != c) {
            continue;
        }
        colors[e] = c;
        let ok = at_edge[e].iter().all(|&vi| vertex_ok(&incident[vi], colors));
        if ok {
            total += count_colorings(e + 1, colors, incident, at_edge, fixed);
        }
    }
    colors[e] = 0;
    total
}

fn vertex_ok(inc: &[usize], colors: &[u8]) -> bool {
    let cs: Vec<u8> = inc.iter().map(|&e| colors[e]).filter(|&c| c != 0).collect();
    match inc.len() {
        2 => cs.len() < 2 || cs[0] == cs[1],
        _ => {
            for a in 0..cs.len() {
                for b in a + 1..cs.len() {
                    if cs[a] == cs[b] {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Edge colourings of a web with some edges pinned to colours.
pub(crate) fn colorings_with_fixed(web: &Web, pinned: &[(usize, u8)]) -> BigInt {
    let mut edges: Vec<usize> = Vec::new();
    let mut edge_of = HashMap::new();
    for h in 0..web.half.len() {
        let key = h.min(web.half[h].twin);
        if let std::collections::hash_map::Entry::Vacant(e) = edge_of.entry(key) {
            e.insert(edges.len());
            edges.push(key);
        }
    }
    let internal: Vec<usize> = (0..web.kinds.len())
        .filter(|&v| web.kinds[v] == VertexKind::Internal)
        .collect();
    let incident: Vec<Vec<usize>> = internal
        .iter()
        .map(|&v| {
            web.rot[v]
                .iter()
                .map(|&h| edge_of[&h.min(web.half[h].twin)])
                .collect()
        })
        .collect();
    let mut at_edge: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (vi, inc) in incident.iter().enumerate() {
        for &e in inc {
            at_edge[e].push(vi);
        }
    }
    let fixed: Vec<(usize, u8)> = pinned
        .iter()
        .map(|&(h, c)| (edge_of[&h.min(web.half[h].twin)], c))
        .collect();
    for (i, a) in fixed.iter().enumerate() {
        if fixed[i + 1..].iter().any(|b| b.0 == a.0 && b.1 != a.1) {
            return BigInt::zero();
        }
    }
    let mut colors = vec![0u8; edges.len()];
    count_colorings(0, &mut colors, &incident, &at_edge, &fixed)
}

/// The web's map with the boundary circle added as extra edges through the
/// marked points in disk order.
struct Augmented {
    twin: Vec<usize>,
    vertex: Vec<usize>,
    rot: Vec<Vec<usize>>,
}

impl Augmented {
    fn new(w: &Web) -> Self {
        let nh = w.half.len();
        let mut twin: Vec<usize> = w.half.iter().map(|e| e.twin).collect();
        let mut vertex: Vec<usize> = w.half.iter().map(|e| e.vertex).collect();
        let mut rot = w.rot.clone();
        let cycle = w.boundary_cycle();
        let m = cycle.len();
        if m > 0 {
            // arc k runs from cycle[k] to cycle[k+1]: dart nh+2k at its tail,
            // dart nh+2k+1 at its head.
            for k in 0..m {
                let a = nh + 2 * k;
                twin.extend([a + 1, a]);
                vertex.extend([cycle[k], cycle[(k + 1) % m]]);
            }
            for (k, &v) in cycle.iter().enumerate() {
                let next = nh + 2 * k;
                let prev = nh + 2 * ((k + m - 1) % m) + 1;
                let mut r = vec![next];
                r.extend(w.rot[v].iter().copied());
                r.push(prev);
                rot[v] = r;
            }
        }
        Self { twin, vertex, rot }
    }

    fn sigma(&self, d: usize) -> usize {
        let r = &self.rot[self.vertex[d]];
        let pos = r.iter().position(|&x| x == d).expect("dart in rotation");
        r[(pos + 1) % r.len()]
    }

    fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.twin.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut f = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                f.push(d);
                d = self.sigma(self.twin[d]);
            }
            out.push(f);
        }
        out
    }

    fn components(&self) -> usize {
        let nv = self.rot.len();
        let mut seen = vec![false; nv];
        let mut c = 0;
        for s in 0..nv {
            if seen[s] {
                continue;
            }
            c += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &d in &self.rot[v] {
                    let u = self.vertex[self.twin[d]];
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        c
    }
}
