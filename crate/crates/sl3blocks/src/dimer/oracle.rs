use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graph::{DimerGraph, Role};
use super::DimerError;
use crate::webs::{ChangeOfBasis, Node, WebBuilder, WebSum, WebsError};

/// Largest edge count `multiweb_oracle` accepts unless told otherwise.
pub const DEFAULT_EDGE_BUDGET: usize = 18;

/// Multiweb enumeration summed in the reduced basis.
#[derive(Debug, Clone)]
pub struct MultiwebTally {
    /// Number of edge-multiplicity assignments found.
    pub multiwebs: usize,
    /// `C_λ`, indexed like the columns of the change-of-basis matrix.
    pub coefficients: Vec<BigRational>,
}

impl MultiwebTally {
    /// `Σ_λ C_λ λ(e_T)` for the tableau in row `t` of `basis`.
    pub fn pairing(&self, basis: &ChangeOfBasis, t: usize) -> BigRational {
        self.coefficients
            .iter()
            .zip(&basis.m[t])
            .map(|(c, m)| c * BigRational::from_integer(m.clone()))
            .sum()
    }
}

/// Enumerates every assignment of multiplicities in `{0,1,2,3}` to the
/// edges of `graph` with sum 3 at every non-boundary vertex and `s_i` at
/// `v_i`, turns each into a web and expands it in the reduced basis.
pub fn multiweb_oracle(
    graph: &DimerGraph,
    basis: &ChangeOfBasis,
    budget: usize,
) -> Result<MultiwebTally, DimerError> {
    if graph.num_edges() > budget {
        return Err(DimerError::TooLarge {
            edges: graph.num_edges(),
            budget,
        });
    }
    let sig = graph.signature.s();
    let need: Vec<u8> = graph
        .vertices
        .iter()
        .map(|v| match v.role {
            Role::Boundary(i) => sig[i],
            _ => 3,
        })
        .collect();
    let order = edge_order(graph);
    let mut assignments = Vec::new();
    let mut left_edges = vec![0usize; graph.vertices.len()];
    for &(b, w) in &graph.edges {
        left_edges[b] += 1;
        left_edges[w] += 1;
    }
    let mut state = Search {
        graph,
        order: &order,
        need,
        left_edges,
        mult: vec![0; graph.edges.len()],
        found: &mut assignments,
    };
    state.run(0);

    let mut sum = WebSum::zero();
    for mult in &assignments {
        sum.add_web(&BigRational::one(), &multiweb_to_web(graph, mult)?);
    }
    let reduced = sum.reduce();
    let index: HashMap<_, _> = basis.webs.iter().enumerate().map(|(i, w)| (w.key(), i)).collect();
    let mut coefficients = vec![BigRational::zero(); basis.webs.len()];
    for (web, c) in reduced.terms() {
        let i = index
            .get(&web.key())
            .ok_or_else(|| WebsError::Invalid("reduced multiweb outside the harvested basis".into()))?;
        coefficients[*i] += c;
    }
    Ok(MultiwebTally {
        multiwebs: assignments.len(),
        coefficients,
    })
}

/// Edges in breadth-first order from the boundary, so that vertices are
/// completed early and the search prunes well.
fn edge_order(graph: &DimerGraph) -> Vec<usize> {
    let n = graph.vertices.len();
    let mut incident = vec![Vec::new(); n];
    for (e, &(b, w)) in graph.edges.iter().enumerate() {
        incident[b].push(e);
        incident[w].push(e);
    }
    let mut seen_v = vec![false; n];
    let mut seen_e = vec![false; graph.edges.len()];
    let mut queue: std::collections::VecDeque<usize> = graph.boundary.iter().copied().collect();
    for &v in &graph.boundary {
        seen_v[v] = true;
    }
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            if !seen_e[e] {
                seen_e[e] = true;
                order.push(e);
            }
            let (b, w) = graph.edges[e];
            let u = if b == v { w } else { b };
            if !seen_v[u] {
                seen_v[u] = true;
                queue.push_back(u);
            }
        }
    }
    order.extend((0..graph.edges.len()).filter(|&e| !seen_e[e]));
    order
}

struct Search<'a> {
    graph: &'a DimerGraph,
    order: &'a [usize],
    need: Vec<u8>,
    left_edges: Vec<usize>,
    mult: Vec<u8>,
    found: &'a mut Vec<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        if pos == self.order.len() {
            if self.need.iter().all(|&r| r == 0) {
                self.found.push(self.mult.clone());
            }
            return;
        }
        let e = self.order[pos];
        let (b, w) = self.graph.edges[e];
        let hi = self.need[b].min(self.need[w]);
        self.left_edges[b] -= 1;
        self.left_edges[w] -= 1;
        for m in 0..=hi {
            if (self.left_edges[b] == 0 && m != self.need[b])
                || (self.left_edges[w] == 0 && m != self.need[w])
            {
                continue;
            }
            self.mult[e] = m;
            self.need[b] -= m;
            self.need[w] -= m;
            self.run(pos + 1);
            self.need[b] += m;
            self.need[w] += m;
        }
        self.mult[e] = 0;
        self.left_edges[b] += 1;
        self.left_edges[w] += 1;
    }
}

/// Drops edges of multiplicity 0 and 3, orients simple edges from black to
/// white and doubled edges from white to black, and draws the result at the
/// lattice positions.
fn multiweb_to_web(graph: &DimerGraph, mult: &[u8]) -> Result<crate::webs::Web, DimerError> {
    let sig = graph.signature.s();
    let mut b = WebBuilder::new(sig, &[]);
    let mut node: Vec<Option<Node>> = vec![None; graph.vertices.len()];
    for (v, info) in graph.vertices.iter().enumerate() {
        let (x, y) = info.position;
        if let Role::Boundary(i) = info.role {
            b.place(Node::Bottom(i), x, y);
            node[v] = Some(Node::Bottom(i));
        }
    }
    let mut get = |v: usize, b: &mut WebBuilder| -> Node {
        *node[v].get_or_insert_with(|| {
            let (x, y) = graph.vertices[v].position;
            b.vertex(x, y)
        })
    };
    for (e, &(black, white)) in graph.edges.iter().enumerate() {
        match mult[e] {
            1 => {
                let (p, q) = (get(black, &mut b), get(white, &mut b));
                b.edge(p, q);
            }
            2 => {
                let (p, q) = (get(white, &mut b), get(black, &mut b));
                b.edge(p, q);
            }
            _ => {}
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::super::graph::{build_graph, SMode};
    use super::super::probability::z_tableau;
    use super::*;
    use crate::combinatorics::Signature;
    use crate::webs::matrix_m;

    fn check_oracle(
        word: &[u8],
        width: usize,
        height: usize,
        anchors: &[usize],
        budget: usize,
    ) -> MultiwebTally {
        let sig = Signature::new(word).unwrap();
        let g = build_graph(width, height, &sig, anchors, SMode::LastK).unwrap();
        let basis = matrix_m(&sig).unwrap();
        let tally = multiweb_oracle(&g, &basis, budget).unwrap();
        for (t, tab) in basis.tableaux.iter().enumerate() {
            let z = z_tableau(tab, &g);
            assert_eq!(
                tally.pairing(&basis, t),
                BigRational::from_integer(z),
                "tableau {t}"
            );
        }
        assert!(tally.coefficients.iter().all(|c| *c >= BigRational::zero()));
        tally
    }

    #[test]
    fn tiny_three_point_graph() {
        let t = check_oracle(&[1, 1, 1], 4, 1, &[1, 3, 4], DEFAULT_EDGE_BUDGET);
        assert!(t.multiwebs > 0);
        assert!(t.coefficients[0] > BigRational::zero());
    }

    #[test]
    fn other_small_graphs() {
        check_oracle(&[1, 1, 1], 4, 2, &[1, 3, 4], 30);
        check_oracle(&[1, 1, 1], 6, 1, &[1, 3, 6], 30);
        check_oracle(&[2, 2, 2], 4, 1, &[1, 2, 4], 30);
    }

    #[test]
    fn four_point_graph() {
        let t = check_oracle(&[1, 1, 2, 2], 6, 1, &[1, 3, 4, 6], 40);
        assert!(t.coefficients[0].is_zero() && t.coefficients[1] > BigRational::zero());
        let t = check_oracle(&[1, 1, 2, 2], 6, 2, &[1, 3, 4, 6], 40);
        assert!(t.coefficients.iter().all(|c| *c > BigRational::zero()));
    }

    #[test]
    fn budget_is_enforced() {
        let sig = Signature::new(&[1, 1, 2, 2]).unwrap();
        let g = build_graph(6, 1, &sig, &[1, 3, 4, 6], SMode::LastK).unwrap();
        let basis = matrix_m(&sig).unwrap();
        assert!(matches!(
            multiweb_oracle(&g, &basis, DEFAULT_EDGE_BUDGET),
            Err(DimerError::TooLarge { .. })
        ));
    }

    #[test]
    fn every_small_graph_agrees() {
        let sig = Signature::new(&[1, 1, 1]).unwrap();
        let basis = matrix_m(&sig).unwrap();
        let mut tested = 0;
        for width in 2..=6 {
            for height in 1..=2 {
                for a in 0..=width {
                    for b in a + 1..=width {
                        for c in b + 1..=width {
                            let Ok(g) = build_graph(width, height, &sig, &[a, b, c], SMode::LastK) else {
                                continue;
                            };
                            if g.num_edges() > DEFAULT_EDGE_BUDGET {
                                continue;
                            }
                            let t = multiweb_oracle(&g, &basis, DEFAULT_EDGE_BUDGET).unwrap();
                            let z = z_tableau(&basis.tableaux[0], &g);
                            assert_eq!(t.pairing(&basis, 0), BigRational::from_integer(z.clone()));
                            assert_eq!(t.multiwebs == 0, z == BigInt::from(0));
                            tested += 1;
                        }
                    }
                }
            }
        }
        assert!(tested > 0);
    }
}
