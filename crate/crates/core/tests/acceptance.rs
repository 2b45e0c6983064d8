//! Acceptance criteria 1–7. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion; exits non-zero if any fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::Instant;

use linematch::counters::{count_brute, count_frontier, CountResult};
use linematch::lattices::{
    finite_entropy, generate, predict, predict_clique_inserted, Family, LatticeSpec, Normalizer,
};
use linematch::linegraph::{clique_inserted, line_graph, recognize_cubic_line_graph, Recognition};
use linematch::random::{
    random_cubic_multigraph, random_inner_edge, random_instance, random_matchable_multigraph,
    random_multigraph, random_split_spec, seeded, with_random_pendant,
};
use linematch::reduction::{reduce, replay_trace, validate_instance, ReduceOptions};
use linematch::transforms::{pendant_reduce, pendant_sites, split_vertex, subdivide_edge};
use linematch::MultiGraph;
use num_bigint::BigUint;
use rand::Rng;

/// Every graph whose matchings some criterion counted; criterion 5 recounts
/// them with both algorithms.
#[derive(Default)]
struct Counted(Vec<MultiGraph>);

impl Counted {
    fn brute(&mut self, g: &MultiGraph) -> BigUint {
        self.0.push(g.clone());
        count_brute(g).expect("within the brute-force limit").value
    }

    fn line(&mut self, g: &MultiGraph) -> BigUint {
        self.brute(&line_graph(g).graph)
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn pow2(k: u64) -> BigUint {
    BigUint::from(1u32) << k
}

fn formula_suite(counted: &mut Counted) -> Outcome {
    let mut rng = seeded(2024);
    let (mut ok, mut steps, mut failures) = (0, 0, Vec::new());
    for i in 0..300 {
        let g = random_instance(&mut rng, 14);
        let inst = validate_instance(&g).expect("generator yields instances");
        let expected = pow2(inst.predicted_exponent());
        let brute = counted.line(&g);
        let trace = reduce(
            &g,
            ReduceOptions {
                check_steps_up_to: Some(usize::MAX),
                pendant_fix: false,
            },
        );
        match trace {
            Ok(t)
                if brute == expected
                    && t.claimed_count.value == expected
                    && t.checked_steps() == t.steps.len()
                    && replay_trace(&t, usize::MAX).is_ok() =>
            {
                ok += 1;
                steps += t.steps.len();
            }
            Ok(_) => failures.push(format!("#{i}: count mismatch")),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    let mut detail = format!(
        "{ok}/300 instances with M(L(G)) = 2^(n/2+1); {steps} reduction steps brute-verified and replayed"
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; failures: {}", failures.join(", ")));
    }
    outcome(failures.is_empty(), detail)
}

fn small_graph<R: Rng>(rng: &mut R, max_edges: usize) -> MultiGraph {
    if rng.gen_bool(0.5) {
        let n = 2 * rng.gen_range(1..=6);
        let extra = rng.gen_range(0..=max_edges - n / 2);
        random_matchable_multigraph(rng, n, extra)
    } else {
        let n = rng.gen_range(2..=12);
        let edges = rng.gen_range(1..=max_edges);
        random_multigraph(rng, n, edges)
    }
}

fn rewrite_suite(counted: &mut Counted) -> Outcome {
    const TARGET: usize = 200;
    let mut rng = seeded(7);
    let mut tallies = [0usize; 4];
    let mut bad = [0usize; 4];

    while tallies[0] < TARGET {
        let g = small_graph(&mut rng, 18);
        let spec = random_split_spec(&mut rng, &g).expect("non-empty graph");
        let split = split_vertex(&g, &spec).expect("valid spec").graph;
        tallies[0] += 1;
        bad[0] += usize::from(counted.brute(&split) != counted.brute(&g));
    }
    while tallies[1] < TARGET || tallies[2] < TARGET {
        let g = small_graph(&mut rng, 12);
        let Some(e) = random_inner_edge(&mut rng, &g) else {
            continue;
        };
        let s = rng.gen_range(1..=2);
        let even = subdivide_edge(&g, e, 2 * s).expect("valid edge").graph;
        tallies[1] += 1;
        bad[1] += usize::from(
            counted.line(&even) != counted.line(&g) || counted.brute(&even) != counted.brute(&g),
        );
        let once = subdivide_edge(&g, e, 1).expect("valid edge").graph;
        let thrice = subdivide_edge(&g, e, 3).expect("valid edge").graph;
        tallies[2] += 1;
        bad[2] += usize::from(counted.line(&once) != counted.line(&thrice));
    }
    while tallies[3] < TARGET {
        let base = if rng.gen_bool(0.5) {
            random_instance(&mut rng, 12)
        } else {
            small_graph(&mut rng, 10)
        };
        let (g, _) = with_random_pendant(&mut rng, &base);
        let before = counted.line(&g);
        for u in pendant_sites(&g) {
            let h = pendant_reduce(&g, u).expect("listed site").graph;
            tallies[3] += 1;
            bad[3] += usize::from(counted.line(&h) != before);
        }
    }
    outcome(
        bad.iter().all(|&b| b == 0),
        format!(
            "split {}/{}, subdivide 2s {}/{}, odd parity {}/{}, pendant reduction {}/{} preserved exactly",
            tallies[0] - bad[0],
            tallies[0],
            tallies[1] - bad[1],
            tallies[1],
            tallies[2] - bad[2],
            tallies[2],
            tallies[3] - bad[3],
            tallies[3]
        ),
    )
}

fn lattice_sweep(counted: &mut Counted) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut specs = Vec::new();
    for family in [
        Family::RT,
        Family::RC,
        Family::RF,
        Family::KT,
        Family::KC,
        Family::KF,
    ] {
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            specs.push(LatticeSpec::grid(family, n, m));
        }
    }
    for stage in 0..=3 {
        specs.push(LatticeSpec::staged(Family::SG2, stage));
    }
    for spec in specs {
        let g = generate(&spec).expect("valid spec").target;
        let frontier = count_frontier(&g, None)
            .expect("within the width cap")
            .value;
        counted.0.push(g.clone());
        let expected = predict(&spec)
            .expect("valid spec")
            .pow2_exponent
            .map_or(BigUint::from(0u32), pow2);
        let ok = frontier == expected;
        pass &= ok;
        rows.push(format!(
            "{}={}{}",
            spec.label(),
            frontier,
            if ok { "" } else { "!" }
        ));
    }
    let sg: Vec<String> = (0..=3)
        .map(|s| {
            let g = generate(&LatticeSpec::staged(Family::SG2, s))
                .unwrap()
                .target;
            count_frontier(&g, None).unwrap().value.to_string()
        })
        .collect();
    pass &= sg == ["0", "2", "0", "8192"];
    outcome(
        pass,
        format!("{} [SG2 stages 0-3: {{{}}}]", rows.join(" "), sg.join(", ")),
    )
}

fn special_values(counted: &mut Counted) -> Outcome {
    let k4 = MultiGraph::complete(4);
    let m_k4 = counted.brute(&k4);
    let ml_k4 = counted.line(&k4);
    let ci = clique_inserted(&k4).expect("K4 is cubic and connected");
    let m_ci = counted.brute(&ci);
    let pass = m_k4 == BigUint::from(3u32)
        && ml_k4 == BigUint::from(8u32)
        && ci.num_vertices() == 12
        && m_ci == pow2(predict_clique_inserted(4).pow2_exponent.unwrap())
        && m_ci == BigUint::from(8u32);
    outcome(
        pass,
        format!(
            "M(K4) = {m_k4}, M(L(K4)) = {ml_k4}, clique-inserted K4: {} vertices, M = {m_ci}",
            ci.num_vertices()
        ),
    )
}

fn cross_validation(counted: &Counted) -> Outcome {
    let mut mismatches = 0;
    for g in &counted.0 {
        let b = count_brute(g).expect("within the brute-force limit").value;
        let f = count_frontier(g, None).expect("within the width cap").value;
        mismatches += usize::from(b != f);
    }
    outcome(
        mismatches == 0,
        format!(
            "{} graphs counted by both algorithms, {mismatches} disagreements",
            counted.0.len()
        ),
    )
}

fn entropy_table() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    // Counted values on the sweep sizes.
    let mut specs: Vec<LatticeSpec> = Vec::new();
    for family in [
        Family::RT,
        Family::RC,
        Family::RF,
        Family::KT,
        Family::KC,
        Family::KF,
    ] {
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            specs.push(LatticeSpec::grid(family, n, m));
        }
    }
    specs.extend([1, 3].map(|s| LatticeSpec::staged(Family::SG2, s)));
    for spec in &specs {
        let p = predict(spec).unwrap();
        let g = generate(spec).unwrap().target;
        let c = count_frontier(&g, None).unwrap();
        if c.is_zero() {
            continue;
        }
        let counted = finite_entropy(&g, &c, p.normalizer).unwrap();
        let closed = p.closed_form_entropy().unwrap();
        worst = worst.max((counted - closed).abs());
        checked += 1;
    }
    // Closed form against the predicted count on the first four diagonal sizes.
    for family in [
        Family::RT,
        Family::RC,
        Family::RF,
        Family::KT,
        Family::KC,
        Family::KF,
    ] {
        for n in 1..=4 {
            let spec = LatticeSpec::grid(family, n, n);
            let p = predict(&spec).unwrap();
            let g = generate(&spec).unwrap().target;
            let c = CountResult::new(
                pow2(p.pow2_exponent.unwrap()),
                linematch::Algorithm::Reduction,
            );
            let e = finite_entropy(&g, &c, p.normalizer).unwrap();
            worst = worst.max((e - p.closed_form_entropy().unwrap()).abs());
            checked += 1;
        }
    }
    // Clique-inserted graphs of random cubic graphs.
    let mut rng = seeded(99);
    for k in [4, 6, 8, 10] {
        let g = clique_inserted(&random_cubic_multigraph(&mut rng, k)).unwrap();
        let p = predict_clique_inserted(k);
        let c = count_frontier(&g, None).unwrap();
        let e = finite_entropy(&g, &c, Normalizer::Vertices).unwrap();
        worst = worst.max((e - p.closed_form_entropy().unwrap()).abs());
        checked += 1;
    }
    pass &= worst <= TOL;

    let limit = |spec: LatticeSpec| predict(&spec).unwrap().entropy_limit;
    let r = limit(LatticeSpec::grid(Family::RT, 1, 1));
    let k = limit(LatticeSpec::grid(Family::KT, 1, 1));
    let sg = limit(LatticeSpec::staged(Family::SG2, 1));
    let ci = predict_clique_inserted(4).entropy_limit;
    pass &= (r - LN_2 / 3.0).abs() <= TOL
        && (k - 2.0 * LN_2 / 3.0).abs() <= TOL
        && (sg - 2.0 * LN_2 / 3.0).abs() <= TOL
        && (ci - LN_2 / 3.0).abs() <= TOL;
    outcome(
        pass,
        format!(
            "{checked} finite entropies, max |counted - closed form| = {worst:.1e}; limits: 3.12.12 {r:.15} = (1/3)ln2, Kagome {k:.15} = (2/3)ln2, SG2 odd {sg:.15} = (2/3)ln2, clique-inserted {ci:.15} = ln2/3"
        ),
    )
}

fn recognition_round_trip() -> Outcome {
    let mut rng = seeded(31);
    let mut ok = 0;
    for _ in 0..50 {
        let k = 2 * rng.gen_range(1..=6);
        let g = random_cubic_multigraph(&mut rng, k);
        let ci = clique_inserted(&g).unwrap();
        if let Ok(Recognition::CliqueInserted(pre)) = recognize_cubic_line_graph(&ci) {
            if pre.degree_census() == g.degree_census() && pre.num_edges() == g.num_edges() {
                ok += 1;
            }
        }
    }
    outcome(
        ok == 50,
        format!("{ok}/50 clique-inserted graphs recognized with matching preimage"),
    )
}

fn main() -> ExitCode {
    let mut counted = Counted::default();
    let mut all = true;
    let mut report = |id: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "criterion {id} [{}] {name} ({:.2}s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    };
    report(1, "power-of-two formula on random instances", &mut || {
        formula_suite(&mut counted)
    });
    report(2, "count-preserving rewrites", &mut || {
        rewrite_suite(&mut counted)
    });
    report(3, "lattice formula sweep", &mut || {
        lattice_sweep(&mut counted)
    });
    report(4, "special values", &mut || special_values(&mut counted));
    report(5, "counter cross-validation", &mut || {
        cross_validation(&counted)
    });
    report(6, "entropy table", &mut entropy_table);
    report(7, "recognition round-trip", &mut recognition_round_trip);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
