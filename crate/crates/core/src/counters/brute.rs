use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Algorithm, CountResult};
use crate::error::CountError;
use crate::graph::MultiGraph;

/// Vertex sets are `u128` bitmasks.
pub const BRUTE_MAX_VERTICES: usize = 128;

struct Branching {
    /// Neighbor bitmask per vertex.
    nbrs: Vec<u128>,
    /// Edge multiplicity, row-major `n × n`.
    mult: Vec<u32>,
    n: usize,
}

impl Branching {
    /// Minimum-degree alive vertex, or `None` if some alive vertex is isolated.
    /// Degree-1 chains then resolve without branching.
    fn pivot(&self, alive: u128) -> Option<usize> {
        let mut best = usize::MAX;
        let mut best_deg = u32::MAX;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.nbrs[v] & alive).count_ones();
            if d < best_deg {
                if d == 0 {
                    return None;
                }
                best_deg = d;
                best = v;
            }
        }
        Some(best)
    }

    /// Machine-word version; `None` on overflow.
    fn count_u128(&self, alive: u128) -> Option<u128> {
        if alive == 0 {
            return Some(1);
        }
        let Some(v) = self.pivot(alive) else {
            return Some(0);
        };
        let without_v = alive & !(1u128 << v);
        let mut total: u128 = 0;
        let mut cand = self.nbrs[v] & alive;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let sub = self.count_u128(without_v & !(1u128 << w))?;
            let add = sub.checked_mul(self.mult[v * self.n + w] as u128)?;
            total = total.checked_add(add)?;
        }
        Some(total)
    }

    fn count(&self, alive: u128) -> BigUint {
        if alive == 0 {
            return BigUint::one();
        }
        let Some(v) = self.pivot(alive) else {
            return BigUint::zero();
        };
        let without_v = alive & !(1u128 << v);
        let mut total = BigUint::zero();
        let mut cand = self.nbrs[v] & alive;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let sub = self.count(without_v & !(1u128 << w));
            if !sub.is_zero() {
                // One branch per parallel copy of (v, w); they all lead to the
                // same subproblem.
                total += sub * self.mult[v * self.n + w];
            }
        }
        total
    }
}

/// Exact `M(g)` by recursive branching over the edges at a minimum-degree
/// unmatched vertex. No memoization.
pub fn count_brute(g: &MultiGraph) -> Result<CountResult, CountError> {
    let n = g.num_vertices();
    if n > BRUTE_MAX_VERTICES {
        return Err(CountError::TooLarge {
            vertices: n,
            limit: BRUTE_MAX_VERTICES,
        });
    }
    if n % 2 == 1 {
        return Ok(CountResult::new(BigUint::zero(), Algorithm::Brute));
    }
    let mut b = Branching {
        nbrs: vec![0; n],
        mult: vec![0; n * n],
        n,
    };
    for &(u, v) in g.edges() {
        b.nbrs[u.0] |= 1u128 << v.0;
        b.nbrs[v.0] |= 1u128 << u.0;
        b.mult[u.0 * n + v.0] += 1;
        b.mult[v.0 * n + u.0] += 1;
    }
    let alive = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let value = match b.count_u128(alive) {
        Some(v) => BigUint::from(v),
        None => b.count(alive),
    };
    Ok(CountResult::new(value, Algorithm::Brute))
}
