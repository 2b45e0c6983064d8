//! Frontier dynamic programming over a vertex elimination order.
//!
//! Vertices are introduced one at a time. A vertex is on the frontier from its
//! introduction until its last neighbor in the order has been introduced; the
//! DP state is the subset of frontier vertices still unmatched, encoded as a
//! bitmask over reusable slots. Introducing `v` either leaves it unmatched
//! (possible only if a later neighbor exists) or matches it to an unmatched
//! earlier neighbor, once per parallel edge. A vertex leaving the frontier
//! must already be matched.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Algorithm, CountResult};
use crate::error::CountError;
use crate::graph::MultiGraph;

pub const DEFAULT_WIDTH_CAP: usize = 26;
/// States are `u64` masks.
pub const MAX_WIDTH: usize = 64;

/// Breadth-first order from `start`, neighbors in increasing id; remaining
/// components are appended starting from their lowest vertex.
pub fn bfs_order(g: &MultiGraph, start: usize) -> Vec<usize> {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<usize>> = g
        .incidence()
        .into_iter()
        .map(|inc| inc.into_iter().map(|(_, w)| w.0).collect())
        .collect();
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let starts = std::iter::once(start).chain(0..n);
    for s in starts {
        if s >= n || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

/// Position of each vertex in the order and the position of its last neighbor
/// (or itself, if no neighbor comes later).
fn horizon(g: &MultiGraph, order: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = g.num_vertices();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut last = pos.clone();
    for &(u, v) in g.edges() {
        let (pu, pv) = (pos[u.0], pos[v.0]);
        last[u.0] = last[u.0].max(pv);
        last[v.0] = last[v.0].max(pu);
    }
    (pos, last)
}

fn check_order(g: &MultiGraph, order: &[usize]) -> Result<(), CountError> {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(CountError::BadOrder { num_vertices: n });
    }
    for &v in order {
        if v >= n || seen[v] {
            return Err(CountError::BadOrder { num_vertices: n });
        }
        seen[v] = true;
    }
    Ok(())
}

/// Largest number of frontier slots occupied at once along `order`.
pub fn frontier_width(g: &MultiGraph, order: &[usize]) -> usize {
    let n = order.len();
    let (pos, last) = horizon(g, order);
    // +1 when a vertex takes a slot, -1 after its last neighbor is processed.
    let mut delta = vec![0isize; n + 1];
    for v in 0..n {
        if last[v] > pos[v] {
            delta[pos[v]] += 1;
            delta[last[v] + 1] -= 1;
        }
    }
    let mut cur = 0isize;
    let mut best = 0isize;
    for d in &delta[..n] {
        cur += d;
        best = best.max(cur);
    }
    best as usize
}

/// Breadth-first order from the start vertex that minimizes the frontier
/// width; ties go to the lowest start id. At most 256 starts are tried.
pub fn heuristic_order(g: &MultiGraph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for s in 0..n.min(256) {
        let order = bfs_order(g, s);
        let w = frontier_width(g, &order);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, order));
        }
    }
    best.map(|(_, o)| o).unwrap_or_default()
}

pub fn count_frontier(g: &MultiGraph, order: Option<&[usize]>) -> Result<CountResult, CountError> {
    count_frontier_with_cap(g, order, DEFAULT_WIDTH_CAP)
}

/// Exact `M(g)`. Fails with [`CountError::WidthCap`] instead of running when
/// the order's frontier width exceeds `cap` (clamped to [`MAX_WIDTH`]).
pub fn count_frontier_with_cap(
    g: &MultiGraph,
    order: Option<&[usize]>,
    cap: usize,
) -> Result<CountResult, CountError> {
    let n = g.num_vertices();
    let owned;
    let order = match order {
        Some(o) => {
            check_order(g, o)?;
            o
        }
        None => {
            owned = heuristic_order(g);
            &owned[..]
        }
    };
    let cap = cap.min(MAX_WIDTH);
    let width = frontier_width(g, order);
    if width > cap {
        return Err(CountError::WidthCap { width, cap });
    }
    if n % 2 == 1 {
        return Ok(CountResult::new(BigUint::zero(), Algorithm::Frontier));
    }

    let (pos, last) = horizon(g, order);
    // Earlier neighbors of each vertex with edge multiplicities.
    let mut earlier: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        let (a, b) = (a.0, b.0);
        let (first, second) = if pos[a] < pos[b] { (a, b) } else { (b, a) };
        match earlier[second].iter_mut().find(|(w, _)| *w == first) {
            Some((_, k)) => *k += 1,
            None => earlier[second].push((first, 1)),
        }
    }
    // Vertices whose last neighbor is the vertex at each position.
    let mut retire_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if last[v] > pos[v] {
            retire_at[last[v]].push(v);
        }
    }

    let mut slot_of = vec![usize::MAX; n];
    let mut free: Vec<usize> = (0..MAX_WIDTH).rev().collect();
    let mut states: HashMap<u64, BigUint> = HashMap::from([(0, BigUint::one())]);

    for (i, &v) in order.iter().enumerate() {
        let keeps_slot = last[v] > i;
        if keeps_slot {
            slot_of[v] = free
                .pop()
                .expect("width was checked against the slot budget");
        }
        let mut next: HashMap<u64, BigUint> = HashMap::with_capacity(states.len() * 2);
        for (mask, count) in states {
            for &(w, k) in &earlier[v] {
                let bit = 1u64 << slot_of[w];
                if mask & bit != 0 {
                    let add = if k == 1 { count.clone() } else { &count * k };
                    *next.entry(mask & !bit).or_default() += add;
                }
            }
            if keeps_slot {
                *next.entry(mask | (1u64 << slot_of[v])).or_default() += count;
            }
        }
        for &w in &retire_at[i] {
            let bit = 1u64 << slot_of[w];
            next.retain(|mask, _| mask & bit == 0);
            free.push(slot_of[w]);
            slot_of[w] = usize::MAX;
        }
        states = next;
        if states.is_empty() {
            return Ok(CountResult::new(BigUint::zero(), Algorithm::Frontier));
        }
    }
    let value = states.remove(&0).unwrap_or_default();
    Ok(CountResult::new(value, Algorithm::Frontier))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linegraph::line_graph;

    fn frontier(g: &MultiGraph) -> u64 {
        count_frontier(g, None).unwrap().value.try_into().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(frontier(&MultiGraph::cycle(6)), 2);
        assert_eq!(frontier(&MultiGraph::cycle(7)), 0);
        assert_eq!(frontier(&MultiGraph::complete(4)), 3);
        assert_eq!(frontier(&MultiGraph::bond(3)), 3);
        assert_eq!(frontier(&MultiGraph::complete(6)), 15);
        assert_eq!(frontier(&line_graph(&MultiGraph::complete(4)).graph), 8);
        assert_eq!(frontier(&MultiGraph::empty(0)), 1);
        assert_eq!(frontier(&MultiGraph::empty(2)), 0);
        assert_eq!(
            frontier(&MultiGraph::cycle(2).disjoint_union(&MultiGraph::cycle(4))),
            2 * 2
        );
    }

    #[test]
    fn explicit_orders() {
        let c6 = MultiGraph::cycle(6);
        let order = [0, 1, 2, 3, 4, 5];
        assert_eq!(frontier_width(&c6, &order), 3);
        assert_eq!(
            count_frontier(&c6, Some(&order)).unwrap().value,
            BigUint::from(2u32)
        );
        let scrambled = [3, 0, 5, 1, 4, 2];
        assert_eq!(
            count_frontier(&c6, Some(&scrambled)).unwrap().value,
            BigUint::from(2u32)
        );
        assert!(matches!(
            count_frontier(&c6, Some(&[0, 1, 2])),
            Err(CountError::BadOrder { .. })
        ));
        assert!(matches!(
            count_frontier(&c6, Some(&[0, 1, 2, 3, 4, 4])),
            Err(CountError::BadOrder { .. })
        ));
    }

    #[test]
    fn width_cap_is_an_error() {
        let k10 = MultiGraph::complete(10);
        assert_eq!(
            count_frontier_with_cap(&k10, None, 3),
            Err(CountError::WidthCap { width: 9, cap: 3 })
        );
        // K_10 has 9!! = 945 perfect matchings.
        assert_eq!(
            count_frontier_with_cap(&k10, None, 9).unwrap().value,
            BigUint::from(945u32)
        );
    }
}
