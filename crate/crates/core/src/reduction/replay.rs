//! Independent re-verification of a serialized trace.
//!
//! The checker trusts nothing recorded in the trace except the graphs
//! themselves: digests are recomputed, the step tree must reach every step
//! exactly once, each rule must have its fixed shape, successors must satisfy
//! the hypotheses, and small steps are recounted from scratch.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use super::trace::{digest, ReductionTrace, Rule};
use super::validate_instance;
use crate::counters::{count_brute, count_frontier, BRUTE_MAX_VERTICES};
use crate::error::CountError;
use crate::graph::MultiGraph;
use crate::linegraph::line_graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: recorded digest {recorded} but the graph hashes to {actual}")]
    Digest {
        step: usize,
        recorded: String,
        actual: String,
    },
    #[error("step {step} is unreachable or reached twice")]
    Tree { step: usize },
    #[error("step {step} ({rule}): {found_successors} successors with multiplier {found_multiplier}, rule requires {successors} and {multiplier}")]
    Shape {
        step: usize,
        rule: Rule,
        found_successors: usize,
        found_multiplier: BigUint,
        successors: usize,
        multiplier: u32,
    },
    #[error("step {step}: successor {slot} is not a valid instance: {reason}")]
    Successor {
        step: usize,
        slot: usize,
        reason: String,
    },
    #[error("step {step}: M(L(before)) = {before} but multiplier × successors = {after}")]
    Count {
        step: usize,
        before: BigUint,
        after: BigUint,
    },
    #[error("product of multipliers is {product}, trace claims {claimed}")]
    Product { product: BigUint, claimed: BigUint },
    #[error("claimed count {claimed} is not 2^(n/2+1) for n = {cubic_count}")]
    Formula {
        claimed: BigUint,
        cubic_count: usize,
    },
    #[error(transparent)]
    Counter(#[from] CountError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub steps: usize,
    /// Steps whose count identity was recomputed.
    pub recounted: usize,
    pub claimed: BigUint,
}

fn count_line(g: &MultiGraph) -> Result<BigUint, CountError> {
    let l = line_graph(g).graph;
    let r = if l.num_vertices() <= BRUTE_MAX_VERTICES.min(40) {
        count_brute(&l)?
    } else {
        count_frontier(&l, None)?
    };
    Ok(r.value)
}

/// Re-verifies `trace`, recounting every step whose starting graph has at most
/// `recount_up_to` vertices.
pub fn replay_trace(
    trace: &ReductionTrace,
    recount_up_to: usize,
) -> Result<ReplayReport, ReplayError> {
    let check_digest = |step: usize, recorded: &str, g: &MultiGraph| {
        let actual = digest(g);
        if actual == recorded {
            Ok(())
        } else {
            Err(ReplayError::Digest {
                step,
                recorded: recorded.to_string(),
                actual,
            })
        }
    };
    check_digest(0, &trace.input_digest, &trace.input)?;
    check_digest(0, &trace.root_digest, &trace.root)?;

    let n = trace.steps.len();
    let mut graphs: Vec<Option<&MultiGraph>> = vec![None; n];
    if n == 0 {
        return Err(ReplayError::Tree { step: 0 });
    }
    graphs[0] = Some(&trace.input);
    let mut recounted = 0;
    let mut product = BigUint::one();
    let mut root_seen = trace.input == trace.root;

    for (i, step) in trace.steps.iter().enumerate() {
        let before = graphs[i].ok_or(ReplayError::Tree { step: i })?;
        check_digest(i, &step.before_digest, before)?;

        let (successors, multiplier) = step.rule.shape();
        if step.after.len() != successors || step.multiplier != BigUint::from(multiplier) {
            return Err(ReplayError::Shape {
                step: i,
                rule: step.rule,
                found_successors: step.after.len(),
                found_multiplier: step.multiplier.clone(),
                successors,
                multiplier,
            });
        }
        product *= &step.multiplier;

        for (slot, s) in step.after.iter().enumerate() {
            check_digest(i, &s.digest, &s.graph)?;
            if s.step <= i || s.step >= n || graphs[s.step].is_some() {
                return Err(ReplayError::Tree { step: s.step });
            }
            graphs[s.step] = Some(&s.graph);
            if step.rule == Rule::Claim1 {
                if s.graph == trace.root {
                    root_seen = true;
                }
                continue;
            }
            if let Err(e) = validate_instance(&s.graph) {
                return Err(ReplayError::Successor {
                    step: i,
                    slot,
                    reason: e.to_string(),
                });
            }
            if s.graph.cubic_vertex_count() > before.cubic_vertex_count() {
                return Err(ReplayError::Successor {
                    step: i,
                    slot,
                    reason: "degree-3 count grew".into(),
                });
            }
        }

        if before.num_vertices() <= recount_up_to {
            let lhs = count_line(before)?;
            let mut rhs = step.multiplier.clone();
            for s in &step.after {
                rhs *= count_line(&s.graph)?;
            }
            if lhs != rhs {
                return Err(ReplayError::Count {
                    step: i,
                    before: lhs,
                    after: rhs,
                });
            }
            recounted += 1;
        }
    }
    if !root_seen {
        return Err(ReplayError::Tree { step: 0 });
    }
    if product != trace.claimed_count.value {
        return Err(ReplayError::Product {
            product,
            claimed: trace.claimed_count.value.clone(),
        });
    }
    let cubic_count = trace.root.cubic_vertex_count();
    if product != BigUint::one() << (cubic_count / 2 + 1) {
        return Err(ReplayError::Formula {
            claimed: product,
            cubic_count,
        });
    }
    Ok(ReplayReport {
        steps: n,
        recounted,
        claimed: product,
    })
}
