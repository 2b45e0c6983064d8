//! Exact perfect-matching counters.
//!
//! Two independent algorithms: [`count_brute`] branches on a minimum-degree
//! vertex, [`count_frontier`] sweeps an elimination order keeping one count per
//! subset of still-unmatched frontier vertices. Both return exact
//! arbitrary-precision values and must agree on every input.

mod brute;
mod frontier;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use brute::{count_brute, BRUTE_MAX_VERTICES};
pub use frontier::{
    bfs_order, count_frontier, count_frontier_with_cap, frontier_width, heuristic_order,
    DEFAULT_WIDTH_CAP, MAX_WIDTH,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Brute,
    Frontier,
    /// Certified by the reduction engine without counting.
    Reduction,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Brute => "brute",
            Algorithm::Frontier => "frontier",
            Algorithm::Reduction => "reduction",
        })
    }
}

/// An exact matching count. `pow2_exponent` is set iff `value` is a power of two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub pow2_exponent: Option<u64>,
    pub algorithm: Algorithm,
}

impl CountResult {
    pub fn new(value: BigUint, algorithm: Algorithm) -> Self {
        let pow2_exponent = verify_power_of_two(&value);
        CountResult {
            value,
            pow2_exponent,
            algorithm,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// `Some(k)` iff `value == 2^k`.
pub fn verify_power_of_two(value: &BigUint) -> Option<u64> {
    if value.is_zero() {
        return None;
    }
    let k = value.bits() - 1;
    (value == &(BigUint::one() << k)).then_some(k)
}

/// Natural log of a positive big integer, accurate to double precision.
pub fn ln_big(value: &BigUint) -> f64 {
    assert!(!value.is_zero(), "ln of zero");
    if let Some(k) = verify_power_of_two(value) {
        return k as f64 * std::f64::consts::LN_2;
    }
    // The top 64 bits carry more precision than an f64 mantissa can hold.
    let shift = value.bits().saturating_sub(64);
    let top: BigUint = value >> shift;
    let top = top.to_u64_digits()[0] as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Decimal-string serde for big integers, so JSON consumers never lose digits.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {s}")))
    }
}
