//! Certified computation of `M(L(G)) = 2^(n/2+1)` for connected graphs with
//! degrees in {2, 3} and an even number of edges, where `n` counts the degree-3
//! vertices.
//!
//! The engine never builds `L(G)`. It repeatedly picks a degree-3 vertex `u`
//! and the nearest degree-3 vertex `v` reachable through degree-2 vertices,
//! shortens long degree-2 runs two vertices at a time, and then rewrites the
//! neighborhood of the `u … v` connection into one or two strictly smaller
//! instances. Each rewrite is recorded as a [`ReductionStep`]; with
//! `check_steps_up_to` set, small steps are confirmed by counting perfect
//! matchings of the line graphs on both sides.

mod replay;
mod trace;

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

pub use replay::{replay_trace, ReplayError, ReplayReport};
pub use trace::{digest, ReductionStep, ReductionTrace, Rule, StepCheck, Successor};

use crate::counters::{count_brute, count_frontier, Algorithm, CountResult, BRUTE_MAX_VERTICES};
use crate::error::{CountError, TransformError};
use crate::graph::{GraphBuilder, MultiGraph, VertexId};
use crate::linegraph::line_graph;
use crate::transforms::{eliminate_pendants, multi_pendant_fix, pendant_reduce, PendantRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("vertex {vertex} has degree {degree}; degrees must be 2 or 3")]
    DegreeOutOfRange { vertex: usize, degree: usize },
    #[error("graph has {edges} edges; an even number is required")]
    OddEdgeCount { edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("pendant preprocessing failed: {0}")]
    Preprocess(#[from] TransformError),
    #[error("step {rule} at {digest} failed verification: M(L(before)) = {before}, multiplier × successors = {after}")]
    StepCheckFailed {
        rule: Rule,
        digest: String,
        before: BigUint,
        after: BigUint,
    },
    #[error("step {rule} at {digest}: discarded branch counts differ from the kept one")]
    TwinMismatch { rule: Rule, digest: String },
    #[error("step check could not count: {0}")]
    Count(#[from] CountError),
    #[error("internal invariant breach at {digest}: {message}")]
    Internal { digest: String, message: String },
}

/// A graph satisfying the hypotheses: connected, degrees in {2, 3}, even
/// number of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremInstance {
    graph: MultiGraph,
    cubic_count: usize,
}

impl TheoremInstance {
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    /// Number of degree-3 vertices; always even.
    pub fn cubic_count(&self) -> usize {
        self.cubic_count
    }

    /// `n/2 + 1`.
    pub fn predicted_exponent(&self) -> u64 {
        (self.cubic_count / 2 + 1) as u64
    }

    pub fn into_graph(self) -> MultiGraph {
        self.graph
    }
}

pub fn validate_instance(g: &MultiGraph) -> Result<TheoremInstance, InstanceError> {
    let (components, _) = g.components();
    if components > 1 {
        return Err(InstanceError::Disconnected { components });
    }
    let degrees = g.degrees();
    if let Some((v, &d)) = degrees
        .iter()
        .enumerate()
        .find(|(_, &d)| !(2..=3).contains(&d))
    {
        return Err(InstanceError::DegreeOutOfRange {
            vertex: v,
            degree: d,
        });
    }
    if g.num_edges() % 2 == 1 {
        return Err(InstanceError::OddEdgeCount {
            edges: g.num_edges(),
        });
    }
    let cubic_count = degrees.iter().filter(|&&d| d == 3).count();
    debug_assert!(cubic_count % 2 == 0, "handshake forces an even count");
    Ok(TheoremInstance {
        graph: g.clone(),
        cubic_count,
    })
}

/// Where the next rewrite happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    /// No degree-3 vertex: the graph is an even cycle.
    BaseCycle,
    /// `path = [u, v₁, …, v_j, v]`: degree-3 ends, degree-2 interior.
    Path { path: Vec<VertexId>, j: usize },
}

impl Site {
    pub fn j(&self) -> Option<usize> {
        match self {
            Site::BaseCycle => None,
            Site::Path { j, .. } => Some(*j),
        }
    }
}

/// Lowest-id degree-3 vertex `u`, then the shortest path through degree-2
/// vertices to another degree-3 vertex (breadth-first, neighbors by id).
pub fn find_reduction_site(inst: &TheoremInstance) -> Site {
    let g = &inst.graph;
    let deg = g.degrees();
    let Some(u) = deg.iter().position(|&d| d == 3) else {
        return Site::BaseCycle;
    };
    let mut adj: Vec<Vec<usize>> = g
        .incidence()
        .into_iter()
        .map(|inc| inc.into_iter().map(|(_, w)| w.0).collect())
        .collect();
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut parent = vec![usize::MAX; g.num_vertices()];
    parent[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if parent[y] != usize::MAX {
                continue;
            }
            parent[y] = x;
            if deg[y] == 3 {
                let mut path = vec![VertexId(y)];
                let mut cur = y;
                while cur != u {
                    cur = parent[cur];
                    path.push(VertexId(cur));
                }
                path.reverse();
                let j = path.len() - 2;
                return Site::Path { path, j };
            }
            queue.push_back(y);
        }
    }
    unreachable!("a connected graph with degree-3 vertices has an even number of them, so a second one is reachable")
}

/// Checks a caller-chosen site: `path` must run from a degree-3 vertex to a
/// different degree-3 vertex through degree-2 vertices along existing edges.
pub fn site_from_path(inst: &TheoremInstance, path: &[VertexId]) -> Option<Site> {
    let g = &inst.graph;
    let deg = g.degrees();
    let (&first, &last) = (path.first()?, path.last()?);
    if path.len() < 2 || first == last || path.iter().any(|v| v.0 >= g.num_vertices()) {
        return None;
    }
    let interior_ok = path[1..path.len() - 1].iter().all(|v| deg[v.0] == 2);
    let linked = path.windows(2).all(|w| g.multiplicity(w[0], w[1]) > 0);
    (deg[first.0] == 3 && deg[last.0] == 3 && interior_ok && linked).then(|| Site::Path {
        path: path.to_vec(),
        j: path.len() - 2,
    })
}

/// Outcome of one rewrite.
#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub rule: Rule,
    pub successors: Vec<MultiGraph>,
    pub multiplier: BigUint,
    /// The branch that was not kept, for rules that count one branch twice.
    pub twin: Option<MultiGraph>,
    pub note: Option<String>,
}

impl CaseOutcome {
    fn new(rule: Rule, successors: Vec<MultiGraph>, multiplier: u32) -> Self {
        CaseOutcome {
            rule,
            successors,
            multiplier: BigUint::from(multiplier),
            twin: None,
            note: None,
        }
    }
}

/// Drops `doomed`, then adds edges given in old vertex ids (`None` stands for
/// a fresh vertex slot: `fresh[k]` is created on first use).
fn rebuild(g: &MultiGraph, doomed: &[VertexId], extra: &[(Endpoint, Endpoint)]) -> MultiGraph {
    let compact = g.remove_vertices(doomed);
    let mut b = compact.graph.builder();
    let mut fresh: Vec<VertexId> = Vec::new();
    let mut resolve = |b: &mut GraphBuilder, p: Endpoint| match p {
        Endpoint::Old(v) => compact.vertex_map[v.0].expect("endpoint survives"),
        Endpoint::Fresh(k) => {
            while fresh.len() <= k {
                fresh.push(b.add_vertex());
            }
            fresh[k]
        }
    };
    for &(a, c) in extra {
        let a = resolve(&mut b, a);
        let c = resolve(&mut b, c);
        b.add_edge(a, c);
    }
    b.build()
}

#[derive(Clone, Copy, Debug)]
enum Endpoint {
    Old(VertexId),
    Fresh(usize),
}
use Endpoint::{Fresh, Old};

/// Shortens the degree-2 run of the site by two (`j ≥ 2`).
pub fn normalize_parity(
    inst: &TheoremInstance,
    site: &Site,
) -> Result<CaseOutcome, ReductionError> {
    let Site::Path { path, j } = site else {
        return Err(internal(
            &inst.graph,
            "parity normalization needs a path site",
        ));
    };
    if *j < 2 {
        return Err(internal(
            &inst.graph,
            format!("parity normalization needs j ≥ 2, got {j}"),
        ));
    }
    let g = rebuild(
        &inst.graph,
        &[path[1], path[2]],
        &[(Old(path[0]), Old(path[3]))],
    );
    let rule = if j % 2 == 0 {
        Rule::Parity22
    } else {
        Rule::Parity23
    };
    Ok(CaseOutcome::new(rule, vec![g], 1))
}

/// The other endpoints of the edges at `x`, skipping edges to `skip`.
fn others(g: &MultiGraph, x: VertexId, skip: VertexId) -> Vec<VertexId> {
    g.incident_edges(x)
        .expect("valid vertex")
        .into_iter()
        .filter(|&(_, w)| w != skip)
        .map(|(_, w)| w)
        .collect()
}

/// Deletes `x` (degree 3, one edge toward the already-handled side) and joins
/// its two remaining neighbors. A double edge would close into a loop, so it
/// becomes a triangle through two fresh vertices instead.
fn bypass(g: &MultiGraph, doomed: &[VertexId], a: VertexId, b: VertexId) -> MultiGraph {
    if a != b {
        rebuild(g, doomed, &[(Old(a), Old(b))])
    } else {
        rebuild(
            g,
            doomed,
            &[(Old(a), Fresh(0)), (Fresh(0), Fresh(1)), (Fresh(1), Old(a))],
        )
    }
}

/// Closes a side that carries one pendant vertex with the pendant reduction,
/// fixing a parallel remainder first.
fn close_pendant(g: &MultiGraph, pendant: VertexId) -> Result<(MultiGraph, bool), TransformError> {
    match pendant_reduce(g, pendant) {
        Ok(r) => Ok((r.graph, false)),
        Err(TransformError::ParallelRemainder { .. }) => {
            let fixed = multi_pendant_fix(g, pendant)?;
            Ok((pendant_reduce(&fixed.graph, pendant)?.graph, true))
        }
        Err(e) => Err(e),
    }
}

/// Applies the rewrite for a site with `j ∈ {0, 1}`.
pub fn apply_case(inst: &TheoremInstance, site: &Site) -> Result<CaseOutcome, ReductionError> {
    let g = &inst.graph;
    let Site::Path { path, j } = site else {
        return Ok(CaseOutcome::new(Rule::BaseCycle, Vec::new(), 2));
    };
    let (u, v) = (path[0], *path.last().unwrap());
    let between = g.multiplicity(u, v);
    match (*j, between) {
        (0, 3) | (1, 3..) | (0, 4..) => Err(internal(
            g,
            "more than two parallel edges between degree-3 vertices",
        )),
        (0, 2) => {
            // u keeps one of the double edges' places: delete v, join u to v's
            // third neighbor.
            let u2 = others(g, v, u)[0];
            Ok(CaseOutcome::new(
                Rule::AdjacentDoubleEdge,
                vec![rebuild(g, &[v], &[(Old(u), Old(u2))])],
                2,
            ))
        }
        (0, 1) => {
            let e1 = g
                .incident_edges(u)
                .unwrap()
                .into_iter()
                .find(|&(_, w)| w == v)
                .map(|(e, _)| e)
                .unwrap();
            if g.is_bridge(e1) {
                let (without, _) = g.remove_edges(&[e1]);
                adjacent_bridge(g, &without, u, v)
            } else {
                let at_u = others(g, u, v);
                let at_v = others(g, v, u);
                let kept = bypass(g, &[v], at_v[0], at_v[1]);
                let mut out = CaseOutcome::new(Rule::AdjacentNonBridge, vec![kept], 2);
                out.twin = Some(bypass(g, &[u], at_u[0], at_u[1]));
                Ok(out)
            }
        }
        (1, 2) => {
            if g.num_vertices() != 3 || g.num_edges() != 4 {
                return Err(internal(
                    g,
                    "double edge plus a degree-2 path must be the whole graph",
                ));
            }
            Ok(CaseOutcome::new(Rule::SubdividedTheta, Vec::new(), 4))
        }
        (1, 1) => Ok(CaseOutcome::new(
            Rule::PathWithChord,
            vec![rebuild(g, &[path[1]], &[])],
            2,
        )),
        (1, 0) => {
            let mid = path[1];
            let without = g.remove_vertices(&[mid]);
            let (count, label) = without.graph.components();
            if count == 1 {
                let mut out = CaseOutcome::new(Rule::PathNonBridge, vec![without.graph], 2);
                out.twin = Some(path_twin(g, u, mid, v)?);
                Ok(out)
            } else {
                path_bridge(g, u, mid, &without, &label)
            }
        }
        _ => Err(internal(g, format!("apply_case called with j = {j}"))),
    }
}

/// Single bridge `u – v`: keep the even side whole; give the odd side a
/// pendant copy of the bridge and close it.
fn adjacent_bridge(
    g: &MultiGraph,
    without: &MultiGraph,
    u: VertexId,
    v: VertexId,
) -> Result<CaseOutcome, ReductionError> {
    let (_, label) = without.components();
    let edges_on = |l: usize| {
        without
            .edges()
            .iter()
            .filter(|&&(a, _)| label[a.0] == l)
            .count()
    };
    // `even` is the endpoint on the even side.
    let even = if edges_on(label[u.0]) % 2 == 0 { u } else { v };
    let even_label = label[even.0];
    let odd_side: Vec<VertexId> = (0..g.num_vertices())
        .filter(|&x| label[x] != even_label)
        .map(VertexId)
        .collect();
    let even_side_minus_root: Vec<VertexId> = (0..g.num_vertices())
        .filter(|&x| label[x] == even_label && x != even.0)
        .map(VertexId)
        .collect();
    let kept = rebuild(g, &odd_side, &[]);
    let with_pendant = g.remove_vertices(&even_side_minus_root);
    let pendant = with_pendant.vertex_map[even.0].unwrap();
    let (closed, fixed) = close_pendant(&with_pendant.graph, pendant)?;
    let rule = if fixed {
        Rule::AdjacentBridgeParallel
    } else {
        Rule::AdjacentBridge
    };
    Ok(CaseOutcome::new(rule, vec![kept, closed], 1))
}

/// `u – mid – v` with no other connection through `mid`: splitting `mid` into
/// two pendants and closing both gives the branch that is not kept.
fn path_twin(
    g: &MultiGraph,
    u: VertexId,
    mid: VertexId,
    v: VertexId,
) -> Result<MultiGraph, ReductionError> {
    let split = rebuild(g, &[mid], &[(Old(u), Fresh(0)), (Old(v), Fresh(1))]);
    let (closed, _) = eliminate_pendants(&split)?;
    Ok(closed)
}

/// `mid` disconnects `u`'s side from `v`'s side. With both sides even the
/// line-graph edge through `mid` is forced and the sides are counted alone;
/// with both odd it is excluded and each side keeps a pendant edge, which is
/// then closed.
fn path_bridge(
    g: &MultiGraph,
    u: VertexId,
    mid: VertexId,
    without: &crate::graph::Compacted,
    label: &[usize],
) -> Result<CaseOutcome, ReductionError> {
    let lu = label[without.vertex_map[u.0].unwrap().0];
    let side_of = |x: usize| label[without.vertex_map[x].unwrap().0];
    let u_side: Vec<VertexId> = (0..g.num_vertices())
        .filter(|&x| x != mid.0 && side_of(x) == lu)
        .map(VertexId)
        .collect();
    let v_side: Vec<VertexId> = (0..g.num_vertices())
        .filter(|&x| x != mid.0 && side_of(x) != lu)
        .map(VertexId)
        .collect();
    let edges_within = |side: &[VertexId]| {
        let mut inside = vec![false; g.num_vertices()];
        for x in side {
            inside[x.0] = true;
        }
        g.edges()
            .iter()
            .filter(|&&(a, b)| inside[a.0] && inside[b.0])
            .count()
    };
    let even = edges_within(&u_side) % 2 == 0;
    if even != (edges_within(&v_side) % 2 == 0) {
        return Err(internal(g, "sides of a bridge path must have equal parity"));
    }
    let mut u_drop = v_side.clone();
    u_drop.push(mid);
    let mut v_drop = u_side.clone();
    v_drop.push(mid);
    let (successors, note) = if even {
        (
            vec![rebuild(g, &u_drop, &[]), rebuild(g, &v_drop, &[])],
            "both sides even: the middle pair is forced",
        )
    } else {
        let u_half = rebuild(g, &v_side, &[]);
        let v_half = rebuild(g, &u_side, &[]);
        let mut out = Vec::new();
        for half in [u_half, v_half] {
            let (closed, _) = eliminate_pendants(&half)?;
            out.push(closed);
        }
        (out, "both sides odd: each side closes its pendant")
    };
    let mut out = CaseOutcome::new(Rule::ComponentProduct, successors, 1);
    out.note = Some(note.to_string());
    Ok(out)
}

fn internal(g: &MultiGraph, message: impl Into<String>) -> ReductionError {
    ReductionError::Internal {
        digest: digest(g),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReduceOptions {
    /// Count both sides of every step whose starting graph has at most this
    /// many vertices.
    pub check_steps_up_to: Option<usize>,
    /// Remove degree-1 vertices by pendant reductions before reducing.
    pub pendant_fix: bool,
}

/// Counts `M(L(g))` exactly, preferring brute force and falling back to the
/// frontier counter for line graphs beyond the brute-force size limit.
fn count_line(g: &MultiGraph) -> Result<CountResult, CountError> {
    let l = line_graph(g).graph;
    if l.num_vertices() <= BRUTE_MAX_VERTICES.min(40) {
        count_brute(&l)
    } else {
        count_frontier(&l, None)
    }
}

fn check_step(before: &MultiGraph, out: &CaseOutcome) -> Result<StepCheck, ReductionError> {
    let lhs = count_line(before)?;
    let mut rhs = out.multiplier.clone();
    let mut algorithm = lhs.algorithm;
    let mut kept = Vec::new();
    for s in &out.successors {
        let c = count_line(s)?;
        if c.algorithm == Algorithm::Frontier {
            algorithm = Algorithm::Frontier;
        }
        rhs *= &c.value;
        kept.push(c.value);
    }
    let twin_agrees = match &out.twin {
        Some(t) => Some(count_line(t)?.value == kept[0]),
        None => None,
    };
    let ok = lhs.value == rhs && twin_agrees != Some(false);
    Ok(StepCheck {
        before: lhs.value,
        after: rhs,
        algorithm,
        twin_agrees,
        ok,
    })
}

/// Runs the reduction and returns the full trace. The claimed count is
/// `2^(n/2+1)` for the instance's `n`; any step whose successor fails the
/// hypotheses, or (when checking) whose counts disagree, aborts with an error.
pub fn reduce(g: &MultiGraph, options: ReduceOptions) -> Result<ReductionTrace, ReductionError> {
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut root = g.clone();

    if options.pendant_fix {
        let (_, pre) = eliminate_pendants(g)?;
        for (k, p) in pre.iter().enumerate() {
            let next = pre
                .get(k + 1)
                .map(|q| q.before.clone())
                .unwrap_or_else(|| eliminate_pendants(g).expect("already succeeded").0);
            let outcome = CaseOutcome {
                rule: Rule::Claim1,
                successors: vec![next.clone()],
                multiplier: BigUint::one(),
                twin: None,
                note: Some(match p.rule {
                    PendantRule::Claim1 => format!("pendant {}", p.pendant),
                    PendantRule::MultiFixThenClaim1 => {
                        format!(
                            "pendant {} after double subdivision of the parallel pair",
                            p.pendant
                        )
                    }
                }),
            };
            let check = match options.check_steps_up_to {
                Some(limit) if p.before.num_vertices() <= limit => {
                    Some(check_step(&p.before, &outcome)?)
                }
                _ => None,
            };
            let next_index = steps.len() + 1;
            push_step(&mut steps, &p.before, &outcome, check, next_index)?;
            root = next;
        }
    }

    let inst = validate_instance(&root)?;
    let cubic_count = inst.cubic_count();

    // Preorder with an explicit stack: (graph, index of the parent step and
    // successor slot to patch).
    let mut stack: Vec<(MultiGraph, Option<(usize, usize)>)> = vec![(root.clone(), None)];
    while let Some((graph, parent)) = stack.pop() {
        let index = steps.len();
        if let Some((p, slot)) = parent {
            steps[p].after[slot].step = index;
        }
        let inst = validate_instance(&graph)
            .map_err(|e| internal(&graph, format!("successor is not a valid instance: {e}")))?;
        let site = find_reduction_site(&inst);
        let outcome = match site.j() {
            Some(j) if j >= 2 => normalize_parity(&inst, &site)?,
            _ => apply_case(&inst, &site)?,
        };
        for s in &outcome.successors {
            let n_after = s.cubic_vertex_count();
            let shrinks = n_after < inst.cubic_count()
                || (n_after == inst.cubic_count() && s.num_vertices() < graph.num_vertices());
            if !shrinks {
                return Err(internal(
                    &graph,
                    format!("{} did not shrink the instance", outcome.rule),
                ));
            }
        }
        let check = match options.check_steps_up_to {
            Some(limit) if graph.num_vertices() <= limit => Some(check_step(&graph, &outcome)?),
            _ => None,
        };
        push_step(&mut steps, &graph, &outcome, check, usize::MAX)?;
        for (slot, s) in outcome.successors.into_iter().enumerate().rev() {
            stack.push((s, Some((index, slot))));
        }
    }

    let product = steps
        .iter()
        .fold(BigUint::one(), |acc, s| acc * &s.multiplier);
    let expected = BigUint::one() << inst.predicted_exponent();
    if product != expected {
        return Err(internal(
            &root,
            format!(
                "multipliers multiply to {product}, expected 2^{}",
                inst.predicted_exponent()
            ),
        ));
    }
    Ok(ReductionTrace {
        input_digest: digest(g),
        input: g.clone(),
        root_digest: digest(&root),
        root,
        cubic_count,
        steps,
        claimed_count: CountResult::new(product, Algorithm::Reduction),
    })
}

fn push_step(
    steps: &mut Vec<ReductionStep>,
    before: &MultiGraph,
    outcome: &CaseOutcome,
    check: Option<StepCheck>,
    next_index: usize,
) -> Result<(), ReductionError> {
    if let Some(c) = &check {
        if c.twin_agrees == Some(false) {
            return Err(ReductionError::TwinMismatch {
                rule: outcome.rule,
                digest: digest(before),
            });
        }
        if !c.ok {
            return Err(ReductionError::StepCheckFailed {
                rule: outcome.rule,
                digest: digest(before),
                before: c.before.clone(),
                after: c.after.clone(),
            });
        }
    }
    steps.push(ReductionStep {
        rule: outcome.rule,
        before_digest: digest(before),
        before_vertices: before.num_vertices(),
        before_edges: before.num_edges(),
        cubic_count: before.cubic_vertex_count(),
        multiplier: outcome.multiplier.clone(),
        after: outcome
            .successors
            .iter()
            .map(|s| Successor {
                digest: digest(s),
                graph: s.clone(),
                step: next_index,
            })
            .collect(),
        check,
        note: outcome.note.clone(),
    });
    Ok(())
}
