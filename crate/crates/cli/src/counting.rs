//! Counter selection and size guards shared by `count`, `verify` and `entropy`.

use clap::{Args, ValueEnum};
use linematch::counters::{
    count_frontier_with_cap, frontier_width, heuristic_order, DEFAULT_WIDTH_CAP, MAX_WIDTH,
};
use linematch::{count_brute, CountResult, MultiGraph};

use crate::error::{CliError, CAP_HINT};

/// Brute force refuses larger graphs unless forced.
pub const BRUTE_GUARD: usize = 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Frontier when the estimated width fits the cap, else guarded brute force.
    Auto,
    Brute,
    Frontier,
}

#[derive(Args, Clone, Copy, Debug)]
pub struct Limits {
    /// Largest frontier width the DP may use.
    #[arg(long, env = "LINEMATCH_WIDTH_CAP", default_value_t = DEFAULT_WIDTH_CAP)]
    pub width_cap: usize,
    /// Ignore the size guards (brute force up to its hard limit, frontier width
    /// up to 64).
    #[arg(long)]
    pub force: bool,
}

pub fn count(g: &MultiGraph, algo: Algo, limits: Limits) -> Result<CountResult, CliError> {
    let n = g.num_vertices();
    let brute_allowed = n <= BRUTE_GUARD || limits.force;
    let cap = if limits.force {
        MAX_WIDTH
    } else {
        limits.width_cap
    };
    match algo {
        Algo::Brute if !brute_allowed => Err(CliError::Cap(format!(
            "refusing brute force on {n} vertices (guard {BRUTE_GUARD}); use --algo frontier or --force"
        ))),
        Algo::Brute => Ok(count_brute(g)?),
        Algo::Frontier => Ok(count_frontier_with_cap(g, None, cap)?),
        Algo::Auto => {
            let order = heuristic_order(g);
            let width = frontier_width(g, &order);
            if width <= cap.min(MAX_WIDTH) {
                Ok(count_frontier_with_cap(g, Some(&order), cap)?)
            } else if brute_allowed {
                Ok(count_brute(g)?)
            } else {
                Err(CliError::Cap(format!(
                    "frontier width {width} exceeds the cap of {} and {n} vertices exceed the brute-force guard of {BRUTE_GUARD}; {CAP_HINT}",
                    limits.width_cap
                )))
            }
        }
    }
}
