//! Brick-wall hexagonal tori and their cut variants.
//!
//! `H^T(n, m)` has vertices `A(i, j)` and `B(i, j)` for `0 ≤ i ≤ m`,
//! `0 ≤ j ≤ n`, with id `2(i(n+1) + j)` for `A` and one more for `B`. Each
//! `A(i, j)` is joined to `B(i, j)`, to `B(i, j−1)` (a *row* edge, wrapping at
//! `j = 0`) and to `B(i−1, j)` (a *rung* edge, wrapping at `i = 0`), indices
//! taken mod `n+1` and `m+1`.
//!
//! Cutting a wrap edge replaces it by two pendant edges, one at each former
//! endpoint; a half cut keeps only the pendant at the `A` end. Cut-set
//! pendants are appended after the torus vertices, rungs first.

use crate::graph::{GraphBuilder, MultiGraph, VertexId};
use crate::linegraph::line_graph;

/// What happens to the wrap edges in one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wrap {
    Keep,
    /// Two pendant edges (`f`, `f*`).
    Cut,
    /// Only the pendant at the `A` end.
    HalfCut,
}

#[derive(Clone, Debug)]
pub struct HexGraph {
    pub graph: MultiGraph,
    /// The torus has a parallel edge (a zero parameter).
    pub degenerate: bool,
}

pub fn a(n: usize, i: usize, j: usize) -> VertexId {
    VertexId(2 * (i * (n + 1) + j))
}

pub fn b(n: usize, i: usize, j: usize) -> VertexId {
    VertexId(2 * (i * (n + 1) + j) + 1)
}

/// `H^T(n, m)` with the given treatment of rung wraps (`n+1` edges) and row
/// wraps (`m+1` edges). Zero parameters give a degenerate multigraph.
pub fn hex_variant(n: usize, m: usize, rungs: Wrap, rows: Wrap) -> HexGraph {
    let cells = (m + 1) * (n + 1);
    let mut g = GraphBuilder::new(2 * cells);
    let mut rung_wraps = Vec::new();
    let mut row_wraps = Vec::new();
    for i in 0..=m {
        for j in 0..=n {
            g.add_edge(a(n, i, j), b(n, i, j));
            let row = (a(n, i, j), b(n, i, (j + n) % (n + 1)));
            if j == 0 {
                row_wraps.push(row);
            } else {
                g.add_edge(row.0, row.1);
            }
            let rung = (a(n, i, j), b(n, (i + m) % (m + 1), j));
            if i == 0 {
                rung_wraps.push(rung);
            } else {
                g.add_edge(rung.0, rung.1);
            }
        }
    }
    for (wraps, how) in [(rung_wraps, rungs), (row_wraps, rows)] {
        for (x, y) in wraps {
            match how {
                Wrap::Keep => {
                    g.add_edge(x, y);
                }
                Wrap::Cut => {
                    let f = g.add_vertex();
                    let f_star = g.add_vertex();
                    g.add_edge(x, f);
                    g.add_edge(y, f_star);
                }
                Wrap::HalfCut => {
                    let f = g.add_vertex();
                    g.add_edge(x, f);
                }
            }
        }
    }
    let graph = g.build();
    HexGraph {
        degenerate: !graph.is_simple(),
        graph,
    }
}

/// `H^T(n, m)`: connected, cubic, `2(m+1)(n+1)` vertices.
pub fn hex_torus(n: usize, m: usize) -> HexGraph {
    let h = hex_variant(n, m, Wrap::Keep, Wrap::Keep);
    let cells = (m + 1) * (n + 1);
    assert_eq!(h.graph.num_vertices(), 2 * cells);
    assert_eq!(h.graph.num_edges(), 3 * cells);
    assert!(h.graph.is_cubic() && h.graph.is_connected());
    h
}

/// Subdivides every edge with no degree-1 endpoint once.
pub fn star(g: &MultiGraph) -> MultiGraph {
    let deg = g.degrees();
    let mut out = GraphBuilder::new(g.num_vertices());
    for &(u, v) in g.edges() {
        if deg[u.0] == 1 || deg[v.0] == 1 {
            out.add_edge(u, v);
        } else {
            let x = out.add_vertex();
            out.add_edge(u, x);
            out.add_edge(x, v);
        }
    }
    out.build()
}

/// `H₁`: rung wraps cut into pendant pairs.
pub fn hex_cylinder_cut(n: usize, m: usize) -> MultiGraph {
    hex_variant(n, m, Wrap::Cut, Wrap::Keep).graph
}

/// `H₂`: rung and row wraps cut into pendant pairs.
pub fn hex_free_cut(n: usize, m: usize) -> MultiGraph {
    hex_variant(n, m, Wrap::Cut, Wrap::Cut).graph
}

/// `H₃`: `H₂` without its two double-pendant corners `A(0,0)`, `B(m,n)` and
/// their four pendants. A verification aid for the free 3.12.12 lattice.
pub fn hex_free_core(n: usize, m: usize) -> MultiGraph {
    let h2 = hex_free_cut(n, m);
    let deg = h2.degrees();
    let corners = [a(n, 0, 0), b(n, m, n)];
    let mut doomed = corners.to_vec();
    for c in corners {
        for (_, w) in h2.incident_edges(c).expect("corner exists") {
            if deg[w.0] == 1 {
                doomed.push(w);
            }
        }
    }
    assert_eq!(doomed.len(), 6, "both corners carry two pendants");
    h2.remove_vertices(&doomed).graph
}

/// `R^T(n, m) = L(S(H^T(n, m)))`.
pub fn r_torus(n: usize, m: usize) -> MultiGraph {
    line_graph(&crate::linegraph::subdivide_all(&hex_torus(n, m).graph)).graph
}

/// `R^C(n, m) = L(H₁⋆)`.
pub fn r_cylinder(n: usize, m: usize) -> MultiGraph {
    line_graph(&star(&hex_cylinder_cut(n, m))).graph
}

/// `R^F(n, m) = L(H₂⋆)`.
pub fn r_free(n: usize, m: usize) -> MultiGraph {
    line_graph(&star(&hex_free_cut(n, m))).graph
}

/// The hexagonal graph whose line graph is the Kagomé lattice: `H^T(n−1,
/// 2m−1)` with rung wraps (`C`) or rung and row wraps (`F`) reduced to a
/// single pendant at the `A` end.
pub fn kagome_preimage(bc: super::Boundary, n: usize, m: usize) -> HexGraph {
    use super::Boundary::*;
    let (n1, m1) = (n - 1, 2 * m - 1);
    match bc {
        Torus => hex_torus(n1, m1),
        Cylinder => hex_variant(n1, m1, Wrap::HalfCut, Wrap::Keep),
        Free => hex_variant(n1, m1, Wrap::HalfCut, Wrap::HalfCut),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_shape() {
        let h = hex_torus(1, 1);
        assert_eq!(h.graph.num_vertices(), 8);
        assert_eq!(h.graph.num_edges(), 12);
        assert!(!h.degenerate);
        for (n, m) in [(1, 2), (2, 3), (3, 1)] {
            let h = hex_torus(n, m);
            let census = h.graph.degree_census();
            assert_eq!(
                census.into_iter().collect::<Vec<_>>(),
                [(3, 2 * (m + 1) * (n + 1))]
            );
        }
        assert!(hex_torus(0, 1).degenerate);
        assert_eq!(hex_torus(0, 0).graph.num_edges(), 3);
    }

    #[test]
    fn cut_censuses() {
        let (n, m) = (2, 3);
        let h1 = hex_cylinder_cut(n, m);
        assert_eq!(h1.degree_census().get(&1), Some(&(2 * (n + 1))));
        assert!(h1.is_connected());
        let h2 = hex_free_cut(n, m);
        assert_eq!(
            h2.degree_census().get(&1),
            Some(&(2 * (n + 1) + 2 * (m + 1)))
        );
        let h3 = hex_free_core(n, m);
        let census = h3.degree_census();
        assert_eq!(census[&3], 2 * m * n + 2 * m + 2 * n - 2);
        assert_eq!(census[&1], 2 * m + 2 * n);
        assert!(h3.is_connected());
    }
}
