use super::web::{HalfEdge, VertexKind, Web};
use super::WebsError;

/// A vertex of a web under construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Bottom(usize),
    Top(usize),
    Internal(usize),
}

/// Builds a web from a straight-line drawing with integer coordinates.
///
/// Bottom marked point `j` sits at `(6j, 0)` and top marked point `j` at
/// `(6j, height)`. The rotation at each internal vertex is read off the
/// drawing; marked points are univalent and need no rotation.
#[derive(Debug, Clone)]
pub struct WebBuilder {
    bottom: Vec<u8>,
    top: Vec<u8>,
    height: i64,
    internal: Vec<(i64, i64)>,
    edges: Vec<(Node, Node)>,
    placed: Vec<(Node, (i64, i64))>,
}

impl WebBuilder {
    pub fn new(bottom: &[u8], top: &[u8]) -> Self {
        Self {
            bottom: bottom.to_vec(),
            top: top.to_vec(),
            height: 6,
            internal: Vec::new(),
            edges: Vec::new(),
            placed: Vec::new(),
        }
    }

    pub fn with_height(mut self, height: i64) -> Self {
        self.height = height;
        self
    }

    /// Moves a marked point away from its default position.
    pub fn place(&mut self, point: Node, x: i64, y: i64) -> &mut Self {
        self.placed.push((point, (x, y)));
        self
    }

    pub fn vertex(&mut self, x: i64, y: i64) -> Node {
        self.internal.push((x, y));
        Node::Internal(self.internal.len() - 1)
    }

    /// Adds an edge oriented from `from` to `to`.
    pub fn edge(&mut self, from: Node, to: Node) -> &mut Self {
        self.edges.push((from, to));
        self
    }

    /// Adds an edge at a marked point, oriented as the point's valence and
    /// side require.
    pub fn leg(&mut self, point: Node, other: Node) -> &mut Self {
        let emits = match point {
            Node::Bottom(j) => self.bottom[j] == 1,
            Node::Top(j) => self.top[j] == 2,
            Node::Internal(_) => panic!("a leg starts at a marked point"),
        };
        if emits {
            self.edge(point, other)
        } else {
            self.edge(other, point)
        }
    }

    fn position(&self, n: Node) -> (i64, i64) {
        if let Some((_, p)) = self.placed.iter().rev().find(|(m, _)| *m == n) {
            return *p;
        }
        match n {
            Node::Bottom(j) => (6 * j as i64, 0),
            Node::Top(j) => (6 * j as i64, self.height),
            Node::Internal(i) => self.internal[i],
        }
    }

    pub fn build(&self) -> Result<Web, WebsError> {
        let nb = self.bottom.len();
        let nt = self.top.len();
        let index = |n: Node| match n {
            Node::Bottom(j) => j,
            Node::Top(j) => nb + j,
            Node::Internal(i) => nb + nt + i,
        };
        let nv = nb + nt + self.internal.len();
        let mut kinds: Vec<VertexKind> = (0..nb).map(VertexKind::Bottom).collect();
        kinds.extend((0..nt).map(VertexKind::Top));
        kinds.extend(self.internal.iter().map(|_| VertexKind::Internal));

        let mut half = Vec::with_capacity(2 * self.edges.len());
        let mut around: Vec<Vec<(f64, usize)>> = vec![Vec::new(); nv];
        for &(a, b) in &self.edges {
            for n in [a, b] {
                if let Node::Bottom(j) = n {
                    if j >= nb {
                        return Err(WebsError::IndexOutOfRange { index: j, max: nb });
                    }
                }
                if let Node::Top(j) = n {
                    if j >= nt {
                        return Err(WebsError::IndexOutOfRange { index: j, max: nt });
                    }
                }
            }
            let h = half.len();
            half.push(HalfEdge {
                vertex: index(a),
                twin: h + 1,
                outgoing: true,
            });
            half.push(HalfEdge {
                vertex: index(b),
                twin: h,
                outgoing: false,
            });
            let (pa, pb) = (self.position(a), self.position(b));
            let angle = |p: (i64, i64), q: (i64, i64)| ((q.1 - p.1) as f64).atan2((q.0 - p.0) as f64);
            around[index(a)].push((angle(pa, pb), h));
            around[index(b)].push((angle(pb, pa), h + 1));
        }
        let mut rot = Vec::with_capacity(nv);
        for (v, mut list) in around.into_iter().enumerate() {
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(WebsError::NonPlanar(format!(
                    "two edges leave vertex {v} in the same direction"
                )));
            }
            rot.push(list.into_iter().map(|(_, h)| h).collect());
        }
        let web = Web::from_parts(self.bottom.clone(), self.top.clone(), kinds, rot, half)?;
        web.validate().map_err(WebsError::Invalid)?;
        Ok(web)
    }
}

fn check_position(word: &[u8], i: usize) -> Result<usize, WebsError> {
    if i == 0 || i >= word.len() {
        return Err(WebsError::IndexOutOfRange {
            index: i,
            max: word.len().saturating_sub(1),
        });
    }
    Ok(i - 1)
}

/// Vertical strands joining equal marked points: the unit of the strip algebra.
pub fn identity_web(word: &[u8]) -> Web {
    let mut b = WebBuilder::new(word, word);
    for j in 0..word.len() {
        b.leg(Node::Bottom(j), Node::Top(j));
    }
    b.build().expect("vertical strands form a web")
}

/// The H-shaped web on positions `i, i+1` (1-based). For equal valences the
/// two legs at the bottom meet, the two at the top meet and the two vertices
/// are joined; the words at both ends agree. For different valences the H
/// lies on its side and the top word has the two letters exchanged.
pub fn h_web(word: &[u8], i: usize) -> Result<Web, WebsError> {
    let a = check_position(word, i)?;
    let x = 6 * a as i64;
    let mut top = word.to_vec();
    if word[a] != word[a + 1] {
        top.swap(a, a + 1);
    }
    let mut b = WebBuilder::new(word, &top);
    for j in (0..word.len()).filter(|&j| j != a && j != a + 1) {
        b.leg(Node::Bottom(j), Node::Top(j));
    }
    if word[a] == word[a + 1] {
        let low = b.vertex(x + 3, 2);
        let high = b.vertex(x + 3, 4);
        for p in [
            Node::Bottom(a),
            Node::Bottom(a + 1),
            Node::Top(a),
            Node::Top(a + 1),
        ] {
            let v = if matches!(p, Node::Bottom(_)) { low } else { high };
            b.leg(p, v);
        }
        if word[a] == 1 {
            b.edge(high, low);
        } else {
            b.edge(low, high);
        }
    } else {
        let left = b.vertex(x + 2, 3);
        let right = b.vertex(x + 4, 3);
        b.leg(Node::Bottom(a), left).leg(Node::Top(a), left);
        b.leg(Node::Bottom(a + 1), right).leg(Node::Top(a + 1), right);
        if word[a] == 1 {
            b.edge(right, left);
        } else {
            b.edge(left, right);
        }
    }
    b.build()
}

/// Joins marked points `i, i+1` (1-based) of different valences by an arc;
/// the other points continue to the top line.
pub fn cap_web(word: &[u8], i: usize) -> Result<Web, WebsError> {
    let a = check_position(word, i)?;
    if word[a] == word[a + 1] {
        return Err(WebsError::Invalid(
            "a cap joins points of different valences".into(),
        ));
    }
    let top: Vec<u8> = word[..a].iter().chain(&word[a + 2..]).copied().collect();
    let mut b = WebBuilder::new(word, &top);
    for j in 0..word.len() {
        match j.cmp(&a) {
            std::cmp::Ordering::Less => {
                b.leg(Node::Bottom(j), Node::Top(j));
            }
            std::cmp::Ordering::Equal => {
                b.leg(Node::Bottom(a), Node::Bottom(a + 1));
            }
            _ if j > a + 1 => {
                b.leg(Node::Bottom(j), Node::Top(j - 2));
            }
            _ => {}
        }
    }
    b.build()
}

/// Merges marked points `i, i+1` (1-based) of equal valence `s` at a
/// trivalent vertex whose third edge reaches the top line as a point of
/// valence `3 − s`.
pub fn merge_web(word: &[u8], i: usize) -> Result<Web, WebsError> {
    let a = check_position(word, i)?;
    if word[a] != word[a + 1] {
        return Err(WebsError::Invalid("a merge joins points of equal valence".into()));
    }
    let mut top: Vec<u8> = word.to_vec();
    top.splice(a..=a + 1, [3 - word[a]]);
    let mut b = WebBuilder::new(word, &top);
    let v = b.vertex(6 * a as i64 + 3, 3);
    for j in 0..word.len() {
        if j == a || j == a + 1 {
            b.leg(Node::Bottom(j), v);
        } else {
            let t = if j < a { j } else { j - 1 };
            b.leg(Node::Bottom(j), Node::Top(t));
        }
    }
    b.leg(Node::Top(a), v);
    b.build()
}
