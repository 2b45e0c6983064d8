//! Count-preserving rewrites: vertex splitting, edge subdivision and the
//! pendant reduction (with its parallel-edge fix).
//!
//! Every rewrite returns the new graph together with dense old→new maps for
//! vertices and edges, so callers can follow distinguished elements across
//! steps. Fresh vertices always take the next dense ids, in a fixed order.

use serde::{Deserialize, Serialize};

use crate::error::TransformError;
use crate::graph::{EdgeId, GraphBuilder, MultiGraph, VertexId};

#[derive(Clone, Debug)]
pub struct Rewritten {
    pub graph: MultiGraph,
    pub vertex_map: Vec<Option<VertexId>>,
    pub edge_map: Vec<Option<EdgeId>>,
    /// Vertices created by the rewrite, in creation order.
    pub fresh: Vec<VertexId>,
}

/// Partition of the edges at `vertex` into the `u′` side and the `u″` side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub vertex: VertexId,
    pub partition_x: Vec<EdgeId>,
    pub partition_y: Vec<EdgeId>,
}

impl SplitSpec {
    fn validate(&self, g: &MultiGraph) -> Result<(), TransformError> {
        let incident = g.incident_edges(self.vertex)?;
        let mut side = vec![0u8; g.num_edges()];
        for &e in self.partition_x.iter().chain(&self.partition_y) {
            g.endpoints(e)?;
            if !incident.iter().any(|&(f, _)| f == e) {
                return Err(TransformError::NotIncident {
                    vertex: self.vertex.0,
                    edge: e.0,
                });
            }
            side[e.0] += 1;
            if side[e.0] > 1 {
                return Err(TransformError::PartitionOverlap { edge: e.0 });
            }
        }
        if let Some(&(e, _)) = incident.iter().find(|(e, _)| side[e.0] == 0) {
            return Err(TransformError::PartitionIncomplete {
                vertex: self.vertex.0,
                edge: e.0,
            });
        }
        Ok(())
    }
}

/// Removes `u` and inserts `u′`, `u″`, `x` (the next three ids after
/// compaction, in that order) with `x` adjacent to both; edges of the X side
/// move to `u′`, edges of the Y side to `u″`. Preserves the number of perfect
/// matchings.
pub fn split_vertex(g: &MultiGraph, spec: &SplitSpec) -> Result<Rewritten, TransformError> {
    spec.validate(g)?;
    let u = spec.vertex;
    let compact = g.remove_vertices(&[u]);
    let base = compact.graph.num_vertices();
    let (u1, u2, x) = (VertexId(base), VertexId(base + 1), VertexId(base + 2));

    let mut on_x = vec![false; g.num_edges()];
    for e in &spec.partition_x {
        on_x[e.0] = true;
    }
    let mut b = GraphBuilder::new(base + 3);
    let mut edge_map = Vec::with_capacity(g.num_edges());
    for (i, &(a, c)) in g.edges().iter().enumerate() {
        let side = if on_x[i] { u1 } else { u2 };
        let map = |w: VertexId| {
            if w == u {
                side
            } else {
                compact.vertex_map[w.0].expect("only u was removed")
            }
        };
        edge_map.push(Some(b.add_edge(map(a), map(c))));
    }
    b.add_edge(x, u1);
    b.add_edge(x, u2);

    let mut vertex_map = compact.vertex_map;
    vertex_map[u.0] = None;
    Ok(Rewritten {
        graph: b.build(),
        vertex_map,
        edge_map,
        fresh: vec![u1, u2, x],
    })
}

/// Replaces edge `e = (u, v)` by a path `u – w₁ – … – w_times – v`. The first
/// segment keeps the id of `e`; the others are appended.
pub fn subdivide_edge(
    g: &MultiGraph,
    e: EdgeId,
    times: usize,
) -> Result<Rewritten, TransformError> {
    let (u, v) = g.endpoints(e)?;
    let n = g.num_vertices();
    let fresh: Vec<VertexId> = (n..n + times).map(VertexId).collect();
    let mut out = GraphBuilder::new(n + times);
    for (i, &(a, c)) in g.edges().iter().enumerate() {
        if i == e.0 && times > 0 {
            out.add_edge(u, fresh[0]);
        } else {
            out.add_edge(a, c);
        }
    }
    if times > 0 {
        for w in fresh.windows(2) {
            out.add_edge(w[0], w[1]);
        }
        out.add_edge(fresh[times - 1], v);
    }
    Ok(Rewritten {
        graph: out.build(),
        vertex_map: (0..n).map(|i| Some(VertexId(i))).collect(),
        edge_map: (0..g.num_edges()).map(|i| Some(EdgeId(i))).collect(),
        fresh,
    })
}

/// The pendant edge at `u` plus the two other edges at its neighbor.
struct PendantSite {
    v: VertexId,
    others: [(EdgeId, VertexId); 2],
}

fn pendant_site(g: &MultiGraph, u: VertexId) -> Result<PendantSite, TransformError> {
    let at_u = g.incident_edges(u)?;
    if at_u.len() != 1 {
        return Err(TransformError::Degree {
            vertex: u.0,
            degree: at_u.len(),
            expected: 1,
        });
    }
    let (pendant, v) = at_u[0];
    let at_v = g.incident_edges(v)?;
    if at_v.len() != 3 {
        return Err(TransformError::Degree {
            vertex: v.0,
            degree: at_v.len(),
            expected: 3,
        });
    }
    let mut others = at_v.into_iter().filter(|&(e, _)| e != pendant);
    let a = others.next().expect("degree 3");
    let c = others.next().expect("degree 3");
    Ok(PendantSite { v, others: [a, c] })
}

/// Deletes the pendant vertex `u` and its degree-3 neighbor `v`, joining the
/// two other neighbors of `v` by a fresh edge (appended last). Preserves the
/// number of perfect matchings of the line graph. Refuses when the two other
/// edges at `v` are parallel.
pub fn pendant_reduce(g: &MultiGraph, u: VertexId) -> Result<Rewritten, TransformError> {
    let site = pendant_site(g, u)?;
    let [(_, v1), (_, v2)] = site.others;
    if v1 == v2 {
        return Err(TransformError::ParallelRemainder { vertex: site.v.0 });
    }
    let compact = g.remove_vertices(&[u, site.v]);
    let mut b = compact.graph.builder();
    b.add_edge(
        compact.vertex_map[v1.0].expect("v1 survives"),
        compact.vertex_map[v2.0].expect("v2 survives"),
    );
    Ok(Rewritten {
        graph: b.build(),
        vertex_map: compact.vertex_map,
        edge_map: compact.edge_map,
        fresh: Vec::new(),
    })
}

/// Degree-1 vertices where [`pendant_reduce`] applies directly.
pub fn pendant_sites(g: &MultiGraph) -> Vec<VertexId> {
    g.vertices()
        .filter(|&u| pendant_site(g, u).is_ok_and(|site| site.others[0].1 != site.others[1].1))
        .collect()
}

/// When the two other edges at the pendant's neighbor are parallel, subdivides
/// each of them twice so that [`pendant_reduce`] becomes applicable.
pub fn multi_pendant_fix(g: &MultiGraph, u: VertexId) -> Result<Rewritten, TransformError> {
    let site = pendant_site(g, u)?;
    let [(e1, v1), (e2, v2)] = site.others;
    if v1 != v2 {
        return Err(TransformError::NotParallel { vertex: site.v.0 });
    }
    let first = subdivide_edge(g, e1, 2)?;
    let second = subdivide_edge(&first.graph, e2, 2)?;
    let mut fresh = first.fresh;
    fresh.extend(second.fresh);
    Ok(Rewritten {
        graph: second.graph,
        vertex_map: first.vertex_map,
        edge_map: first.edge_map,
        fresh,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PendantRule {
    /// Plain pendant reduction.
    Claim1,
    /// Double subdivision of a parallel pair followed by a pendant reduction.
    MultiFixThenClaim1,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PendantStep {
    pub rule: PendantRule,
    pub pendant: VertexId,
    pub before: MultiGraph,
}

/// Applies pendant reductions (fixing parallel remainders first) until no
/// degree-1 vertex is left. Pendants are processed lowest id first.
pub fn eliminate_pendants(
    g: &MultiGraph,
) -> Result<(MultiGraph, Vec<PendantStep>), TransformError> {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some(u) = cur.degrees().iter().position(|&d| d == 1).map(VertexId) {
        let site = pendant_site(&cur, u).map_err(|e| TransformError::StuckPendant {
            vertex: u.0,
            reason: e.to_string(),
        })?;
        let parallel = site.others[0].1 == site.others[1].1;
        let next = if parallel {
            let fixed = multi_pendant_fix(&cur, u)?;
            pendant_reduce(&fixed.graph, u)?
        } else {
            pendant_reduce(&cur, u)?
        };
        steps.push(PendantStep {
            rule: if parallel {
                PendantRule::MultiFixThenClaim1
            } else {
                PendantRule::Claim1
            },
            pendant: u,
            before: cur,
        });
        cur = next.graph;
    }
    Ok((cur, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn split_c4_gives_c6() {
        let c4 = MultiGraph::cycle(4);
        let spec = SplitSpec {
            vertex: VertexId(0),
            partition_x: vec![EdgeId(0)],
            partition_y: vec![EdgeId(3)],
        };
        let r = split_vertex(&c4, &spec).unwrap();
        assert_eq!((r.graph.num_vertices(), r.graph.num_edges()), (6, 6));
        assert!(r.graph.is_connected() && r.graph.degrees().iter().all(|&d| d == 2));
        assert_eq!(r.fresh, vec![VertexId(3), VertexId(4), VertexId(5)]);
    }

    #[test]
    fn split_star_center() {
        let star = MultiGraph::star(3);
        let spec = SplitSpec {
            vertex: VertexId(0),
            partition_x: vec![EdgeId(0), EdgeId(1)],
            partition_y: vec![EdgeId(2)],
        };
        let r = split_vertex(&star, &spec).unwrap();
        assert_eq!(r.graph.num_vertices(), 6);
        assert_eq!(
            r.graph.degree_census(),
            BTreeMap::from([(1, 3), (2, 2), (3, 1)])
        );
    }

    #[test]
    fn split_rejects_bad_partitions() {
        let star = MultiGraph::star(3);
        let overlap = SplitSpec {
            vertex: VertexId(0),
            partition_x: vec![EdgeId(0), EdgeId(1)],
            partition_y: vec![EdgeId(1), EdgeId(2)],
        };
        assert_eq!(
            split_vertex(&star, &overlap).unwrap_err(),
            TransformError::PartitionOverlap { edge: 1 }
        );
        let missing = SplitSpec {
            vertex: VertexId(0),
            partition_x: vec![EdgeId(0)],
            partition_y: vec![EdgeId(2)],
        };
        assert!(matches!(
            split_vertex(&star, &missing),
            Err(TransformError::PartitionIncomplete { edge: 1, .. })
        ));
        let foreign = SplitSpec {
            vertex: VertexId(1),
            partition_x: vec![EdgeId(0), EdgeId(1)],
            partition_y: vec![],
        };
        assert!(matches!(
            split_vertex(&star, &foreign),
            Err(TransformError::NotIncident { edge: 1, .. })
        ));
    }

    #[test]
    fn subdivide_examples() {
        let p = subdivide_edge(&MultiGraph::path(2), EdgeId(0), 2)
            .unwrap()
            .graph;
        assert_eq!((p.num_vertices(), p.num_edges()), (4, 3));
        assert_eq!(p.bridges().len(), 3);

        let c = subdivide_edge(&MultiGraph::cycle(3), EdgeId(1), 1)
            .unwrap()
            .graph;
        assert_eq!((c.num_vertices(), c.num_edges()), (4, 4));
        assert!(c.degrees().iter().all(|&d| d == 2) && c.is_connected());

        let same = subdivide_edge(&MultiGraph::cycle(3), EdgeId(1), 0)
            .unwrap()
            .graph;
        assert_eq!(same, MultiGraph::cycle(3));

        assert!(subdivide_edge(&MultiGraph::cycle(3), EdgeId(3), 1).is_err());
    }

    #[test]
    fn pendant_preconditions() {
        // K_{1,3} with one edge subdivided twice: pendant 1's neighbor has degree 3
        // but pendant 5 hangs off a degree-2 vertex.
        let g = subdivide_edge(&MultiGraph::star(3), EdgeId(2), 2)
            .unwrap()
            .graph;
        let deg = g.degrees();
        let raw = (0..g.num_vertices())
            .find(|&v| deg[v] == 1 && g.incident_edges(VertexId(v)).unwrap()[0].1 .0 != 0)
            .unwrap();
        assert!(matches!(
            pendant_reduce(&g, VertexId(raw)),
            Err(TransformError::Degree { expected: 3, .. })
        ));
        assert!(matches!(
            pendant_reduce(&g, VertexId(0)),
            Err(TransformError::Degree { expected: 1, .. })
        ));
    }

    #[test]
    fn pendant_reduce_shape() {
        // pendant 3 on a, triangle a-b-c: result is b, c with a double edge.
        let g = MultiGraph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        let r = pendant_reduce(&g, VertexId(3)).unwrap();
        assert_eq!(r.graph.num_vertices(), 2);
        assert_eq!(r.graph.canonical_edges(), vec![(0, 1), (0, 1)]);
    }

    #[test]
    fn multi_fix_shape() {
        // pendant 2 on vertex 0, which has a double edge to vertex 1.
        let g = MultiGraph::new(3, [(0, 1), (0, 1), (0, 2)]).unwrap();
        assert_eq!(
            pendant_reduce(&g, VertexId(2)).unwrap_err(),
            TransformError::ParallelRemainder { vertex: 0 }
        );
        let fixed = multi_pendant_fix(&g, VertexId(2)).unwrap();
        assert_eq!(fixed.graph.num_vertices(), 7);
        let reduced = pendant_reduce(&fixed.graph, VertexId(2)).unwrap();
        assert_eq!(reduced.graph.num_vertices(), 5);
        assert!(matches!(
            multi_pendant_fix(
                &MultiGraph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap(),
                VertexId(3)
            ),
            Err(TransformError::NotParallel { .. })
        ));
    }
}
