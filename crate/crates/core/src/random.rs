//! Seeded random graphs for property tests and sweeps.
//!
//! Every generator takes the caller's RNG, so a `ChaCha8Rng` seeded with
//! [`seeded`] reproduces the same corpus on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, GraphBuilder, MultiGraph, VertexId};
use crate::transforms::SplitSpec;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` uniformly random loop-free edges on `n ≥ 2` vertices (parallel edges
/// allowed).
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> MultiGraph {
    assert!(n >= 2 || m == 0, "need two vertices for an edge");
    let mut b = GraphBuilder::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        b.add_edge(VertexId(u), VertexId(v));
    }
    b.build()
}

/// A random perfect matching on `n` vertices (`n` even) plus `extra` random
/// loop-free edges, so the count is always positive.
pub fn random_matchable_multigraph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> MultiGraph {
    assert!(
        n.is_multiple_of(2),
        "a perfect matching needs an even vertex count"
    );
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let noise = random_multigraph(rng, n.max(2), extra);
    let edges = perm
        .chunks(2)
        .map(|p| (p[0], p[1]))
        .chain(noise.edges().iter().map(|&(u, v)| (u.0, v.0)));
    MultiGraph::new(n, edges).expect("matching plus noise is loop-free")
}

/// Pairs `3k` stubs at random, retrying until the result is connected (and
/// loop-free unless `allow_loops`). Loops are returned separately as vertex
/// ids.
fn pair_stubs<R: Rng>(
    rng: &mut R,
    k: usize,
    allow_loops: bool,
) -> (Vec<(usize, usize)>, Vec<usize>) {
    assert!(
        k.is_multiple_of(2),
        "a cubic graph has an even number of vertices"
    );
    let mut stubs: Vec<usize> = (0..k).flat_map(|v| [v, v, v]).collect();
    loop {
        stubs.shuffle(rng);
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for pair in stubs.chunks(2) {
            if pair[0] == pair[1] {
                loops.push(pair[0]);
            } else {
                edges.push((pair[0], pair[1]));
            }
        }
        if !loops.is_empty() && !allow_loops {
            continue;
        }
        let mut skeleton = GraphBuilder::new(k);
        for &(u, v) in &edges {
            skeleton.add_edge(VertexId(u), VertexId(v));
        }
        if skeleton.build().is_connected() {
            return (edges, loops);
        }
    }
}

/// A connected loop-free cubic multigraph on `k` vertices (`k` even, ≥ 2).
pub fn random_cubic_multigraph<R: Rng>(rng: &mut R, k: usize) -> MultiGraph {
    assert!(k >= 2, "no cubic graph on {k} vertices");
    let (edges, _) = pair_stubs(rng, k, false);
    MultiGraph::new(k, edges).expect("stub pairing produced a loop-free graph")
}

/// A connected simple cubic graph on `k ≥ 4` vertices.
pub fn random_simple_cubic<R: Rng>(rng: &mut R, k: usize) -> MultiGraph {
    assert!(k >= 4, "no simple cubic graph on {k} vertices");
    loop {
        let g = random_cubic_multigraph(rng, k);
        if g.is_simple() {
            return g;
        }
    }
}

/// A connected graph with degrees in {2, 3} and an even number of edges, at
/// most `max_edges ≥ 4`: a connected cubic skeleton on 0 to 8 vertices (loops
/// allowed, each subdivided at least once) whose edges are subdivided at
/// random. A 0-vertex skeleton gives an even cycle.
pub fn random_instance<R: Rng>(rng: &mut R, max_edges: usize) -> MultiGraph {
    assert!(max_edges >= 4, "max_edges must be at least 4");
    let largest = [8, 6, 4, 2, 0]
        .into_iter()
        .find(|&k| 3 * k / 2 <= max_edges)
        .unwrap_or(0);
    let k = 2 * rng.gen_range(0..=largest / 2);
    if k == 0 {
        let len = 2 * rng.gen_range(1..=max_edges / 2);
        return MultiGraph::cycle(len);
    }
    // Subdivision counts per skeleton edge; loops need at least one.
    let mut plan: Vec<((usize, usize), usize)> = loop {
        let (edges, loops) = pair_stubs(rng, k, true);
        if edges.len() + 2 * loops.len() <= max_edges {
            let mut plan: Vec<_> = edges.into_iter().map(|e| (e, 0)).collect();
            plan.extend(loops.into_iter().map(|v| ((v, v), 1)));
            break plan;
        }
    };
    let mut total: usize = plan.iter().map(|(_, s)| 1 + s).sum();
    let budget = max_edges - total;
    let mut extra = rng.gen_range(0..=budget);
    if (total + extra) % 2 == 1 {
        if extra < budget {
            extra += 1;
        } else {
            extra -= 1;
        }
    }
    for _ in 0..extra {
        let i = rng.gen_range(0..plan.len());
        plan[i].1 += 1;
    }
    total += extra;
    debug_assert!(total.is_multiple_of(2) && total <= max_edges);

    let mut b = GraphBuilder::new(k);
    for ((u, v), s) in plan {
        let mut prev = VertexId(u);
        for _ in 0..s {
            let x = b.add_vertex();
            b.add_edge(prev, x);
            prev = x;
        }
        b.add_edge(prev, VertexId(v));
    }
    let g = b.build();
    relabel(rng, &g)
}

/// Applies a uniformly random vertex permutation and edge order.
pub fn relabel<R: Rng>(rng: &mut R, g: &MultiGraph) -> MultiGraph {
    let mut perm: Vec<usize> = (0..g.num_vertices()).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u.0], perm[v.0]))
        .collect();
    edges.shuffle(rng);
    MultiGraph::new(g.num_vertices(), edges).expect("relabeling keeps the graph valid")
}

/// Subdivides a random edge once and hangs a pendant vertex on the new
/// vertex, which then has degree 3. Returns the graph and the pendant.
pub fn with_random_pendant<R: Rng>(rng: &mut R, g: &MultiGraph) -> (MultiGraph, VertexId) {
    assert!(g.num_edges() > 0, "need an edge to hang a pendant on");
    let e = rng.gen_range(0..g.num_edges());
    let (u, v) = g.edges()[e];
    let mut b = GraphBuilder::new(g.num_vertices());
    for (i, &(a, c)) in g.edges().iter().enumerate() {
        if i != e {
            b.add_edge(a, c);
        }
    }
    let x = b.add_vertex();
    let pendant = b.add_vertex();
    b.add_edge(u, x);
    b.add_edge(x, v);
    b.add_edge(x, pendant);
    (b.build(), pendant)
}

/// A random vertex with a uniformly random two-sided partition of its edges.
pub fn random_split_spec<R: Rng>(rng: &mut R, g: &MultiGraph) -> Option<SplitSpec> {
    if g.num_vertices() == 0 {
        return None;
    }
    let vertex = VertexId(rng.gen_range(0..g.num_vertices()));
    let mut spec = SplitSpec {
        vertex,
        partition_x: Vec::new(),
        partition_y: Vec::new(),
    };
    for (e, _) in g.incident_edges(vertex).expect("vertex in range") {
        if rng.gen_bool(0.5) {
            spec.partition_x.push(e);
        } else {
            spec.partition_y.push(e);
        }
    }
    Some(spec)
}

/// A random edge whose endpoints both have degree at least 2.
pub fn random_inner_edge<R: Rng>(rng: &mut R, g: &MultiGraph) -> Option<EdgeId> {
    let deg = g.degrees();
    let inner: Vec<EdgeId> = g
        .edge_ids()
        .filter(|&e| {
            let (u, v) = g.edges()[e.0];
            deg[u.0] >= 2 && deg[v.0] >= 2
        })
        .collect();
    inner.choose(rng).copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::validate_instance;

    #[test]
    fn instances_are_valid_and_reproducible() {
        let mut rng = seeded(7);
        let mut sizes = std::collections::BTreeSet::new();
        for _ in 0..200 {
            let g = random_instance(&mut rng, 14);
            assert!(g.num_edges() <= 14);
            let inst = validate_instance(&g).unwrap();
            sizes.insert(inst.cubic_count());
        }
        assert!(sizes.len() >= 4, "skeleton sizes {sizes:?}");
        let a = random_instance(&mut seeded(3), 14);
        let b = random_instance(&mut seeded(3), 14);
        assert_eq!(a, b);
    }

    #[test]
    fn cubic_generators() {
        let mut rng = seeded(11);
        for k in [2, 4, 6, 10] {
            let g = random_cubic_multigraph(&mut rng, k);
            assert!(g.is_cubic() && g.is_connected());
        }
        let g = random_simple_cubic(&mut rng, 8);
        assert!(g.is_simple() && g.is_cubic());
    }

    #[test]
    fn pendant_attachment() {
        let mut rng = seeded(5);
        let (g, p) = with_random_pendant(&mut rng, &MultiGraph::cycle(4));
        assert_eq!(g.degree(p).unwrap(), 1);
        assert_eq!(g.num_edges(), 6);
        assert_eq!(g.degree_census().get(&3), Some(&1));
    }
}
