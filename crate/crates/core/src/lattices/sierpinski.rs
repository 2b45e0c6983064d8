//! Sierpinski gasket companions: `SG₂(n) = L(Gₙ)`.

use crate::graph::{GraphBuilder, MultiGraph, VertexId};
use crate::linegraph::line_graph;

#[derive(Clone, Debug)]
pub struct Companion {
    pub graph: MultiGraph,
    /// The three pendant corners, labeled 1, 2, 3.
    pub corners: [VertexId; 3],
}

fn neighbor(g: &MultiGraph, pendant: VertexId) -> VertexId {
    g.incident_edges(pendant).expect("corner exists")[0].1
}

/// `Gₙ`. `G₀ = K₁,₃`; stage `n+1` takes copies `A`, `B`, `C` of stage `n` and
/// merges corner pairs `A₂–B₁`, `B₂–C₁`, `C₂–A₁`: both pendants go and their
/// neighbors are joined. The unmerged corners `A₃`, `B₃`, `C₃` become corners
/// 1, 2, 3.
pub fn companion(stage: usize) -> Companion {
    let mut cur = Companion {
        graph: MultiGraph::star(3),
        corners: [VertexId(1), VertexId(2), VertexId(3)],
    };
    for _ in 0..stage {
        cur = juxtapose(&cur);
    }
    let g = &cur.graph;
    let cells = 3usize.pow(stage as u32);
    assert_eq!(g.num_vertices(), cells + 3);
    assert_eq!(2 * g.num_edges(), 3 * (cells + 1));
    let census = g.degree_census();
    assert_eq!(census.get(&3).copied().unwrap_or(0), cells);
    assert_eq!(census.get(&1), Some(&3));
    cur
}

fn juxtapose(prev: &Companion) -> Companion {
    let g = &prev.graph;
    let size = g.num_vertices();
    let shift = |copy: usize, v: VertexId| VertexId(copy * size + v.0);
    let mut doomed = Vec::new();
    let mut joins = Vec::new();
    for (x, y) in [(0, 1), (1, 2), (2, 0)] {
        let (px, py) = (prev.corners[1], prev.corners[0]);
        doomed.extend([shift(x, px), shift(y, py)]);
        joins.push((shift(x, neighbor(g, px)), shift(y, neighbor(g, py))));
    }
    let mut triple = GraphBuilder::new(3 * size);
    for copy in 0..3 {
        for &(u, v) in g.edges() {
            triple.add_edge(shift(copy, u), shift(copy, v));
        }
    }
    for (u, v) in joins {
        triple.add_edge(u, v);
    }
    let compact = triple.build().remove_vertices(&doomed);
    let corners = [0, 1, 2].map(|copy| {
        compact.vertex_map[shift(copy, prev.corners[2]).0].expect("outer corners survive")
    });
    Companion {
        graph: compact.graph,
        corners,
    }
}

/// `SG₂(n)`: `(3/2)(3ⁿ+1)` vertices and `3ⁿ⁺¹` edges.
pub fn gasket(stage: usize) -> MultiGraph {
    let g = line_graph(&companion(stage).graph).graph;
    let cells = 3usize.pow(stage as u32);
    assert_eq!(2 * g.num_vertices(), 3 * (cells + 1));
    assert_eq!(g.num_edges(), 3 * cells);
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn early_stages() {
        let g0 = companion(0).graph;
        assert_eq!(g0, MultiGraph::star(3));
        let g1 = companion(1).graph;
        assert_eq!((g1.num_vertices(), g1.num_edges()), (6, 6));
        assert_eq!(
            g1.degree_census().into_iter().collect::<Vec<_>>(),
            [(1, 3), (3, 3)]
        );
        let g2 = companion(2).graph;
        assert_eq!((g2.num_vertices(), g2.num_edges()), (12, 15));
        assert!(g2.is_simple() && g2.is_connected());
        let s = gasket(0);
        assert_eq!((s.num_vertices(), s.num_edges()), (3, 3));
        assert_eq!(gasket(3).num_vertices(), 42);
    }

    #[test]
    fn gasket_degrees() {
        // Corners of the gasket have degree 2, every other vertex degree 4.
        let g = gasket(2);
        let census = g.degree_census();
        assert_eq!(census[&2], 3);
        assert_eq!(census[&4], g.num_vertices() - 3);
    }
}
