//! Loop-free multigraphs with stable vertex and edge identities.
//!
//! Edges are stored as an explicit ordered list, so parallel edges are
//! first-class values and `EdgeId`s stay meaningful across queries. Adjacency
//! lists are a derived view built on demand.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense 0-based vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

/// Dense 0-based edge index; position in the edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A loop-free multigraph. Immutable once built; use [`GraphBuilder`] to
/// assemble one incrementally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct MultiGraph {
    num_vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
}

/// Wire form of the canonical JSON graph format.
#[derive(Serialize, Deserialize)]
struct RawGraph {
    num_vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        MultiGraph::new(raw.num_vertices, raw.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<MultiGraph> for RawGraph {
    fn from(g: MultiGraph) -> Self {
        RawGraph {
            num_vertices: g.num_vertices,
            edges: g.edges.iter().map(|&(u, v)| [u.0, v.0]).collect(),
        }
    }
}

/// Result of deleting vertices: the compacted graph plus the old→new maps.
#[derive(Clone, Debug)]
pub struct Compacted {
    pub graph: MultiGraph,
    /// `vertex_map[old] = Some(new)` for surviving vertices.
    pub vertex_map: Vec<Option<VertexId>>,
    /// `edge_map[old] = Some(new)` for surviving edges.
    pub edge_map: Vec<Option<EdgeId>>,
}

impl MultiGraph {
    /// Builds a graph from endpoint pairs, rejecting loops and out-of-range ids.
    pub fn new<I>(num_vertices: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = Vec::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(GraphError::VertexOutOfRange {
                    edge: i,
                    vertex: u.max(v),
                    num_vertices,
                });
            }
            if u == v {
                return Err(GraphError::Loop { edge: i, vertex: u });
            }
            out.push((VertexId(u), VertexId(v)));
        }
        Ok(MultiGraph {
            num_vertices,
            edges: out,
        })
    }

    pub fn empty(num_vertices: usize) -> Self {
        MultiGraph {
            num_vertices,
            edges: Vec::new(),
        }
    }

    /// Cycle on `k` vertices. `k == 2` gives a double edge.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 2, "a loop-free cycle needs at least two vertices");
        let edges = (0..k).map(|i| (i, (i + 1) % k));
        MultiGraph::new(k, edges).expect("cycle edges are valid")
    }

    pub fn path(k: usize) -> Self {
        let edges = (1..k).map(|i| (i - 1, i));
        MultiGraph::new(k, edges).expect("path edges are valid")
    }

    pub fn complete(k: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        MultiGraph::new(k, edges).expect("complete graph edges are valid")
    }

    /// `K_{1,k}` with the center at vertex 0.
    pub fn star(k: usize) -> Self {
        MultiGraph::new(k + 1, (1..=k).map(|i| (0, i))).expect("star edges are valid")
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn bond(k: usize) -> Self {
        MultiGraph::new(2, std::iter::repeat_n((0, 1), k)).expect("bond edges are valid")
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        self.edges.get(e.0).copied().ok_or(GraphError::InvalidEdge {
            edge: e.0,
            num_edges: self.edges.len(),
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.num_vertices {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v.0,
                num_vertices: self.num_vertices,
            })
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            deg[u.0] += 1;
            deg[v.0] += 1;
        }
        deg
    }

    /// For every vertex, the incident edges in edge-id order paired with the
    /// opposite endpoint.
    pub fn incidence(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u.0].push((EdgeId(i), v));
            inc[v.0].push((EdgeId(i), u));
        }
        inc
    }

    pub fn incident_edges(&self, v: VertexId) -> Result<Vec<(EdgeId, VertexId)>, GraphError> {
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(a, b))| {
                if a == v {
                    Some((EdgeId(i), b))
                } else if b == v {
                    Some((EdgeId(i), a))
                } else {
                    None
                }
            })
            .collect())
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a == u && b == v) || (a == v && b == u))
            .count()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Connected-component label per vertex, labels assigned in order of the
    /// lowest vertex id of each component.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let inc = self.incidence();
        let mut label = vec![usize::MAX; self.num_vertices];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.num_vertices {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(_, y) in &inc[x] {
                    if label[y.0] == usize::MAX {
                        label[y.0] = count;
                        stack.push(y.0);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// True iff there is at most one component. The empty graph is connected.
    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    /// Edges whose removal increases the number of components. Parallel edges
    /// are never bridges because the lowlink walk skips only the edge id it
    /// arrived by, not every edge to the parent.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let inc = self.incidence();
        let n = self.num_vertices;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = Vec::new();
        // (vertex, edge used to enter, next incidence index)
        let mut stack: Vec<(usize, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, None, 0));
            while let Some(&(v, via, next)) = stack.last() {
                if next < inc[v].len() {
                    let (e, w) = inc[v][next];
                    stack.last_mut().unwrap().2 += 1;
                    if Some(e) == via {
                        continue;
                    }
                    if disc[w.0] == usize::MAX {
                        disc[w.0] = timer;
                        low[w.0] = timer;
                        timer += 1;
                        stack.push((w.0, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w.0]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_bridge(&self, e: EdgeId) -> bool {
        self.bridges().binary_search(&e).is_ok()
    }

    /// Histogram of vertex degrees.
    pub fn degree_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for d in self.degrees() {
            *census.entry(d).or_insert(0) += 1;
        }
        census
    }

    /// Number of degree-3 vertices.
    pub fn cubic_vertex_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 3).count()
    }

    pub fn is_cubic(&self) -> bool {
        self.degrees().iter().all(|&d| d == 3)
    }

    /// Deletes the given vertices (and their incident edges), renumbering the
    /// survivors densely in their original order.
    pub fn remove_vertices(&self, doomed: &[VertexId]) -> Compacted {
        let mut dead = vec![false; self.num_vertices];
        for v in doomed {
            dead[v.0] = true;
        }
        let mut vertex_map = vec![None; self.num_vertices];
        let mut next = 0;
        for (old, slot) in vertex_map.iter_mut().enumerate() {
            if !dead[old] {
                *slot = Some(VertexId(next));
                next += 1;
            }
        }
        let mut edges = Vec::new();
        let mut edge_map = vec![None; self.edges.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (vertex_map[u.0], vertex_map[v.0]) {
                edge_map[i] = Some(EdgeId(edges.len()));
                edges.push((a, b));
            }
        }
        Compacted {
            graph: MultiGraph {
                num_vertices: next,
                edges,
            },
            vertex_map,
            edge_map,
        }
    }

    /// Deletes edges by id, keeping every vertex.
    pub fn remove_edges(&self, doomed: &[EdgeId]) -> (MultiGraph, Vec<Option<EdgeId>>) {
        let mut dead = vec![false; self.edges.len()];
        for e in doomed {
            dead[e.0] = true;
        }
        let mut edges = Vec::new();
        let mut map = vec![None; self.edges.len()];
        for (i, &uv) in self.edges.iter().enumerate() {
            if !dead[i] {
                map[i] = Some(EdgeId(edges.len()));
                edges.push(uv);
            }
        }
        (
            MultiGraph {
                num_vertices: self.num_vertices,
                edges,
            },
            map,
        )
    }

    /// Disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let off = self.num_vertices;
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|&(u, v)| (VertexId(u.0 + off), VertexId(v.0 + off))),
        );
        MultiGraph {
            num_vertices: off + other.num_vertices,
            edges,
        }
    }

    /// Same graph with edges permuted: `order[k]` is the old id placed at k.
    pub fn permute_edges(&self, order: &[usize]) -> MultiGraph {
        assert_eq!(order.len(), self.edges.len());
        MultiGraph {
            num_vertices: self.num_vertices,
            edges: order.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    /// Sorted multiset of normalized endpoint pairs.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.0.min(v.0), u.0.max(v.0)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn builder(&self) -> GraphBuilder {
        GraphBuilder {
            num_vertices: self.num_vertices,
            edges: self.edges.clone(),
        }
    }
}

/// Single-owner mutable assembly of a [`MultiGraph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    num_vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn new(num_vertices: usize) -> Self {
        GraphBuilder {
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.num_vertices += 1;
        VertexId(self.num_vertices - 1)
    }

    /// Panics on loops or unknown vertices; builders are internal plumbing
    /// whose callers construct ids themselves.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert!(u != v, "loop at {u}");
        assert!(
            u.0 < self.num_vertices && v.0 < self.num_vertices,
            "edge ({u}, {v}) out of range"
        );
        self.edges.push((u, v));
        EdgeId(self.edges.len() - 1)
    }

    pub fn build(self) -> MultiGraph {
        MultiGraph {
            num_vertices: self.num_vertices,
            edges: self.edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles_bridged() -> MultiGraph {
        MultiGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn degrees() {
        let tri = MultiGraph::cycle(3);
        assert!(tri.vertices().all(|v| tri.degree(v).unwrap() == 2));
        let bond = MultiGraph::bond(3);
        assert_eq!(bond.degree(VertexId(0)).unwrap(), 3);
        assert_eq!(bond.degree(VertexId(1)).unwrap(), 3);
        let k4 = MultiGraph::complete(4);
        assert!(k4.vertices().all(|v| k4.degree(v).unwrap() == 3));
        assert!(matches!(
            k4.degree(VertexId(4)),
            Err(GraphError::InvalidVertex { .. })
        ));
    }

    #[test]
    fn loops_rejected() {
        assert!(matches!(
            MultiGraph::new(2, [(0, 1), (1, 1)]),
            Err(GraphError::Loop { edge: 1, vertex: 1 })
        ));
        assert!(matches!(
            MultiGraph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn connectivity() {
        let two = MultiGraph::cycle(3).disjoint_union(&MultiGraph::cycle(3));
        assert!(!two.is_connected());
        assert!(MultiGraph::cycle(6).is_connected());
        assert!(MultiGraph::empty(1).is_connected());
        assert!(MultiGraph::empty(0).is_connected());
        assert!(!MultiGraph::empty(2).is_connected());
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(MultiGraph::path(3).bridges(), vec![EdgeId(0), EdgeId(1)]);
        assert!(MultiGraph::cycle(6).bridges().is_empty());
        assert_eq!(two_triangles_bridged().bridges(), vec![EdgeId(6)]);
        assert!(MultiGraph::bond(2).bridges().is_empty());
        assert_eq!(MultiGraph::bond(1).bridges(), vec![EdgeId(0)]);
    }

    #[test]
    fn parallel_copy_kills_bridge() {
        let g = two_triangles_bridged();
        let mut b = g.builder();
        b.add_edge(VertexId(3), VertexId(2));
        assert!(b.build().bridges().is_empty());
    }

    #[test]
    fn census() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(k4.degree_census(), BTreeMap::from([(3, 4)]));
        let star = MultiGraph::star(3);
        assert_eq!(star.degree_census(), BTreeMap::from([(1, 3), (3, 1)]));
    }

    #[test]
    fn remove_vertices_compacts() {
        let g = two_triangles_bridged();
        let c = g.remove_vertices(&[VertexId(2)]);
        assert_eq!(c.graph.num_vertices(), 5);
        assert_eq!(c.graph.num_edges(), 4);
        assert_eq!(c.vertex_map[3], Some(VertexId(2)));
        assert_eq!(c.vertex_map[2], None);
        assert_eq!(c.edge_map[6], None);
        assert_eq!(c.edge_map[3], Some(EdgeId(1)));
    }

    #[test]
    fn json_shape() {
        let g = MultiGraph::bond(2);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"num_vertices":2,"edges":[[0,1],[0,1]]}"#);
        let back: MultiGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(
            serde_json::from_str::<MultiGraph>(r#"{"num_vertices":2,"edges":[[1,1]]}"#).is_err()
        );
    }
}
