use serde::{Deserialize, Serialize};

use super::web::{HalfEdge, VertexKind, Web};
use super::WebsError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPointJson {
    pub side: String,
    pub index: usize,
    pub s: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub rotation: Vec<usize>,
}

/// Interchange form of a web. Each edge is `[h1, h2, o]` with `o = 1` when
/// the edge runs from the vertex of `h1` to the vertex of `h2` and `o = -1`
/// for the reverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebJson {
    pub boundary: Vec<BoundaryPointJson>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<(usize, usize, i8)>,
}

impl From<&Web> for WebJson {
    fn from(w: &Web) -> Self {
        let mut boundary: Vec<BoundaryPointJson> = w
            .bottom
            .iter()
            .enumerate()
            .map(|(index, &s)| BoundaryPointJson {
                side: "bottom".into(),
                index,
                s,
            })
            .collect();
        boundary.extend(w.top.iter().enumerate().map(|(index, &s)| BoundaryPointJson {
            side: "top".into(),
            index,
            s,
        }));
        let vertices = w
            .kinds
            .iter()
            .zip(&w.rot)
            .map(|(k, r)| {
                let (kind, index) = match *k {
                    VertexKind::Bottom(i) => ("bottom", Some(i)),
                    VertexKind::Top(i) => ("top", Some(i)),
                    VertexKind::Internal => ("internal", None),
                };
                VertexJson {
                    kind: kind.into(),
                    index,
                    rotation: r.clone(),
                }
            })
            .collect();
        let edges = (0..w.half.len())
            .filter(|&h| w.half[h].outgoing)
            .map(|h| (h, w.half[h].twin, 1))
            .collect();
        Self {
            boundary,
            vertices,
            edges,
        }
    }
}

impl TryFrom<&WebJson> for Web {
    type Error = WebsError;

    fn try_from(j: &WebJson) -> Result<Self, WebsError> {
        let mut bottom = Vec::new();
        let mut top = Vec::new();
        for p in &j.boundary {
            let line = match p.side.as_str() {
                "bottom" => &mut bottom,
                "top" => &mut top,
                other => return Err(WebsError::Invalid(format!("unknown side `{other}`"))),
            };
            if p.index != line.len() || !(1..=2).contains(&p.s) {
                return Err(WebsError::Invalid("boundary points out of order".into()));
            }
            line.push(p.s);
        }
        let kinds = j
            .vertices
            .iter()
            .map(|v| match (v.kind.as_str(), v.index) {
                ("bottom", Some(i)) => Ok(VertexKind::Bottom(i)),
                ("top", Some(i)) => Ok(VertexKind::Top(i)),
                ("internal", None) => Ok(VertexKind::Internal),
                (k, _) => Err(WebsError::Invalid(format!("bad vertex kind `{k}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let nh = 2 * j.edges.len();
        let mut half = vec![
            HalfEdge {
                vertex: usize::MAX,
                twin: usize::MAX,
                outgoing: false,
            };
            nh
        ];
        for &(a, b, o) in &j.edges {
            if a >= nh || b >= nh || a == b || !(o == 1 || o == -1) {
                return Err(WebsError::Invalid("malformed edge".into()));
            }
            half[a].twin = b;
            half[b].twin = a;
            half[a].outgoing = o == 1;
            half[b].outgoing = o != 1;
        }
        for (v, vert) in j.vertices.iter().enumerate() {
            for &h in &vert.rotation {
                if h >= nh {
                    return Err(WebsError::Invalid(format!("half-edge {h} out of range")));
                }
                half[h].vertex = v;
            }
        }
        if half
            .iter()
            .any(|e| e.vertex == usize::MAX || e.twin == usize::MAX)
        {
            return Err(WebsError::Invalid("half-edge without vertex or twin".into()));
        }
        let rot = j.vertices.iter().map(|v| v.rotation.clone()).collect();
        Web::from_parts(bottom, top, kinds, rot, half)
    }
}

impl Serialize for Web {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WebJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Web {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = WebJson::deserialize(d)?;
        Web::try_from(&j).map_err(serde::de::Error::custom)
    }
}
