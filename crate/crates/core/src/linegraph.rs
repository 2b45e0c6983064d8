//! Line graphs, full subdivisions and clique-inserted graphs.

use serde::Serialize;

use crate::error::LineGraphError;
use crate::graph::{EdgeId, GraphBuilder, MultiGraph, VertexId};

/// `L(G)` together with the edge of `G` behind every vertex of `L(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct LineGraphResult {
    pub graph: MultiGraph,
    /// `origin_edge[x]` is the edge of `G` that vertex `x` of `L(G)` stands for.
    pub origin_edge: Vec<EdgeId>,
}

/// Builds `L(G)`. Two vertices are joined by one edge per shared endpoint, so
/// parallel edges of `G` become doubled edges of `L(G)`.
pub fn line_graph(g: &MultiGraph) -> LineGraphResult {
    let mut b = GraphBuilder::new(g.num_edges());
    for incident in g.incidence() {
        for (i, &(e, _)) in incident.iter().enumerate() {
            for &(f, _) in &incident[i + 1..] {
                b.add_edge(VertexId(e.0), VertexId(f.0));
            }
        }
    }
    LineGraphResult {
        graph: b.build(),
        origin_edge: g.edge_ids().collect(),
    }
}

/// `S(G)`: every edge `i = (u, v)` becomes `u – x_i – v` where `x_i` has id
/// `|V| + i`.
pub fn subdivide_all(g: &MultiGraph) -> MultiGraph {
    let n = g.num_vertices();
    let mut b = GraphBuilder::new(n + g.num_edges());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let x = VertexId(n + i);
        b.add_edge(u, x);
        b.add_edge(x, v);
    }
    b.build()
}

fn require_cubic(g: &MultiGraph) -> Result<(), LineGraphError> {
    if let Some((v, &d)) = g.degrees().iter().enumerate().find(|(_, &d)| d != 3) {
        return Err(LineGraphError::NotCubic {
            vertex: v,
            degree: d,
        });
    }
    Ok(())
}

/// `L(S(G))` for a connected cubic `G`: every vertex is replaced by a triangle.
pub fn clique_inserted(g: &MultiGraph) -> Result<MultiGraph, LineGraphError> {
    require_cubic(g)?;
    if !g.is_connected() {
        return Err(LineGraphError::Disconnected);
    }
    Ok(line_graph(&subdivide_all(g)).graph)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    IsK4,
    /// `g = L(S(preimage))`.
    CliqueInserted(MultiGraph),
    NotALineGraph,
}

/// Classifies a connected cubic simple graph: `K_4`, a clique-inserted graph
/// (with its cubic preimage), or not a line graph at all.
pub fn recognize_cubic_line_graph(g: &MultiGraph) -> Result<Recognition, LineGraphError> {
    require_cubic(g)?;
    if !g.is_connected() {
        return Err(LineGraphError::Disconnected);
    }
    if !g.is_simple() {
        return Err(LineGraphError::NotSimple);
    }
    if g.num_vertices() == 4 {
        // Cubic and simple on four vertices forces K_4.
        return Ok(Recognition::IsK4);
    }

    let n = g.num_vertices();
    let mut adj = vec![Vec::with_capacity(3); n];
    for &(u, v) in g.edges() {
        adj[u.0].push(v.0);
        adj[v.0].push(u.0);
    }
    // Triangles through each vertex, as sorted triples.
    let mut through: Vec<Vec<[usize; 3]>> = vec![Vec::new(); n];
    for a in 0..n {
        for &b in &adj[a] {
            for &c in &adj[a] {
                if a < b && b < c && adj[b].contains(&c) {
                    let t = [a, b, c];
                    for &x in &t {
                        through[x].push(t);
                    }
                }
            }
        }
    }

    let mut owner = vec![usize::MAX; n];
    let mut chosen = Vec::new();
    let mut found: Vec<Vec<[usize; 3]>> = Vec::new();
    partition(0, &through, &mut owner, &mut chosen, &mut found);
    match found.len() {
        0 => Ok(Recognition::NotALineGraph),
        1 => {
            let tris = &found[0];
            let mut tri_of = vec![0; n];
            for (k, t) in tris.iter().enumerate() {
                for &x in t {
                    tri_of[x] = k;
                }
            }
            let mut b = GraphBuilder::new(tris.len());
            for &(u, v) in g.edges() {
                let (tu, tv) = (tri_of[u.0], tri_of[v.0]);
                if tu != tv {
                    b.add_edge(VertexId(tu), VertexId(tv));
                }
            }
            Ok(Recognition::CliqueInserted(b.build()))
        }
        _ => Err(LineGraphError::AmbiguousPartition),
    }
}

/// Backtracking search for partitions of the vertex set into triangles. Stops
/// after two are found; a second one means the uniqueness argument failed.
fn partition(
    start: usize,
    through: &[Vec<[usize; 3]>],
    owner: &mut [usize],
    chosen: &mut Vec<[usize; 3]>,
    found: &mut Vec<Vec<[usize; 3]>>,
) {
    if found.len() >= 2 {
        return;
    }
    let Some(v) = (start..owner.len()).find(|&x| owner[x] == usize::MAX) else {
        found.push(chosen.clone());
        return;
    };
    for t in &through[v] {
        if t.iter().all(|&x| owner[x] == usize::MAX) {
            for &x in t {
                owner[x] = chosen.len();
            }
            chosen.push(*t);
            partition(v + 1, through, owner, chosen, found);
            chosen.pop();
            for &x in t {
                owner[x] = usize::MAX;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_edges(g: &MultiGraph) -> Vec<(usize, usize)> {
        g.canonical_edges()
    }

    #[test]
    fn star_becomes_triangle() {
        let l = line_graph(&MultiGraph::star(3));
        assert_eq!(sorted_edges(&l.graph), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(l.origin_edge, vec![EdgeId(0), EdgeId(1), EdgeId(2)]);
    }

    #[test]
    fn parallel_edges_double_up() {
        let l = line_graph(&MultiGraph::bond(2));
        assert_eq!(l.graph.num_vertices(), 2);
        assert_eq!(l.graph.multiplicity(VertexId(0), VertexId(1)), 2);
    }

    #[test]
    fn cycle_is_its_own_line_graph() {
        let l = line_graph(&MultiGraph::cycle(6)).graph;
        assert_eq!(l.num_vertices(), 6);
        assert_eq!(l.num_edges(), 6);
        assert!(l.is_connected());
        assert!(l.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn subdivisions() {
        let s = subdivide_all(&MultiGraph::cycle(3));
        assert_eq!((s.num_vertices(), s.num_edges()), (6, 6));
        assert!(s.degrees().iter().all(|&d| d == 2) && s.is_connected());

        let s = subdivide_all(&MultiGraph::complete(4));
        assert_eq!((s.num_vertices(), s.num_edges()), (10, 12));

        let theta = subdivide_all(&MultiGraph::bond(3));
        assert_eq!((theta.num_vertices(), theta.num_edges()), (5, 6));
        assert!(theta.is_simple());
    }

    #[test]
    fn clique_inserted_shapes() {
        let k4 = clique_inserted(&MultiGraph::complete(4)).unwrap();
        assert_eq!(k4.num_vertices(), 12);
        assert!(k4.is_cubic());

        let prism = clique_inserted(&MultiGraph::bond(3)).unwrap();
        assert_eq!((prism.num_vertices(), prism.num_edges()), (6, 9));
        assert!(prism.is_cubic() && prism.is_simple());

        assert!(matches!(
            clique_inserted(&MultiGraph::cycle(4)),
            Err(LineGraphError::NotCubic { .. })
        ));
    }

    #[test]
    fn recognition_examples() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(recognize_cubic_line_graph(&k4).unwrap(), Recognition::IsK4);

        let ci = clique_inserted(&k4).unwrap();
        match recognize_cubic_line_graph(&ci).unwrap() {
            Recognition::CliqueInserted(pre) => {
                assert_eq!(pre.num_vertices(), 4);
                assert_eq!(pre.canonical_edges(), k4.canonical_edges());
            }
            other => panic!("unexpected {other:?}"),
        }

        let k33 = MultiGraph::new(
            6,
            [
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert_eq!(
            recognize_cubic_line_graph(&k33).unwrap(),
            Recognition::NotALineGraph
        );

        match recognize_cubic_line_graph(&clique_inserted(&MultiGraph::bond(3)).unwrap()).unwrap() {
            Recognition::CliqueInserted(pre) => assert_eq!(pre.canonical_edges(), vec![(0, 1); 3]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn recognition_errors() {
        assert!(matches!(
            recognize_cubic_line_graph(&MultiGraph::cycle(5)),
            Err(LineGraphError::NotCubic { .. })
        ));
        let two = MultiGraph::complete(4).disjoint_union(&MultiGraph::complete(4));
        assert_eq!(
            recognize_cubic_line_graph(&two),
            Err(LineGraphError::Disconnected)
        );
    }
}
