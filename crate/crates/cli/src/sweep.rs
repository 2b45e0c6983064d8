//! `verify` and `entropy` sweeps over lattice families.
//!
//! Rows are computed in parallel and reported in (family, n, m, stage) order.
//! CSV columns, in order:
//!
//! verify: `family,n,m,stage,vertices,edges,predicted_exponent,predicted,counted,counted_exponent,algorithm,status,elapsed_ms`
//!
//! entropy: `family,n,m,stage,vertices,normalizer,predicted_exponent,counted_exponent,entropy,closed_form,limit`
//!
//! `status` is `agree`, `mismatch` or `capped`. `elapsed_ms` is empty unless
//! `--timings` is given, so default output is byte-for-byte reproducible.

use std::time::Instant;

use linematch::lattices::{finite_entropy, generate, predict, Family, LatticeSpec};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count, Algo, Limits};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Parses `r-t,k-f` or `all`.
pub fn parse_families(names: &[String]) -> Result<Vec<Family>, CliError> {
    let mut out = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            out.extend(Family::ALL);
        } else {
            out.push(name.parse().map_err(CliError::usage)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// One spec per family and parameter combination, sorted.
pub fn specs(
    families: &[Family],
    ns: &[usize],
    ms: &[usize],
    stages: &[usize],
) -> Result<Vec<LatticeSpec>, CliError> {
    let mut out = Vec::new();
    for &family in families {
        if family.is_staged() {
            out.extend(stages.iter().map(|&s| LatticeSpec::staged(family, s)));
        } else {
            for &n in ns {
                out.extend(ms.iter().map(|&m| LatticeSpec::grid(family, n, m)));
            }
        }
    }
    for spec in &out {
        spec.validate().map_err(CliError::usage)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Agree,
    Mismatch,
    Capped,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub family: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub stage: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub predicted_exponent: Option<u64>,
    pub predicted: String,
    pub counted: Option<String>,
    pub counted_exponent: Option<u64>,
    pub algorithm: Option<String>,
    pub status: Status,
    pub elapsed_ms: Option<u128>,
    #[serde(skip)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub agree: usize,
    pub mismatch: usize,
    pub capped: usize,
}

impl Summary {
    pub fn line(&self) -> String {
        format!(
            "{} rows: {} agree, {} mismatch, {} capped",
            self.rows, self.agree, self.mismatch, self.capped
        )
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub summary: Summary,
}

fn coordinates(spec: &LatticeSpec) -> (Option<usize>, Option<usize>, Option<usize>) {
    if spec.family.is_staged() {
        (None, None, Some(spec.stage))
    } else {
        (Some(spec.n), Some(spec.m), None)
    }
}

fn verify_one(spec: &LatticeSpec, algo: Algo, limits: Limits, timings: bool) -> VerifyRow {
    let start = Instant::now();
    let generated = generate(spec).expect("specs are validated");
    let prediction = predict(spec).expect("specs are validated");
    let target = &generated.target;
    let predicted = prediction
        .pow2_exponent
        .map_or_else(BigUint::default, |k| BigUint::from(1u8) << k);
    let (n, m, stage) = coordinates(spec);
    let mut row = VerifyRow {
        family: spec.family.slug().to_string(),
        n,
        m,
        stage,
        vertices: target.num_vertices(),
        edges: target.num_edges(),
        predicted_exponent: prediction.pow2_exponent,
        predicted: predicted.to_string(),
        counted: None,
        counted_exponent: None,
        algorithm: None,
        status: Status::Capped,
        elapsed_ms: None,
        note: None,
    };
    match count(target, algo, limits) {
        Ok(c) => {
            row.status = if c.value == predicted {
                Status::Agree
            } else {
                Status::Mismatch
            };
            row.counted = Some(c.value.to_string());
            row.counted_exponent = c.pow2_exponent;
            row.algorithm = Some(c.algorithm.to_string());
        }
        Err(e) => row.note = Some(e.to_string()),
    }
    if timings {
        row.elapsed_ms = Some(start.elapsed().as_millis());
    }
    row
}

pub fn verify(specs: &[LatticeSpec], algo: Algo, limits: Limits, timings: bool) -> VerifyReport {
    let rows: Vec<VerifyRow> = specs
        .par_iter()
        .map(|s| verify_one(s, algo, limits, timings))
        .collect();
    let mut summary = Summary {
        rows: rows.len(),
        ..Summary::default()
    };
    for r in &rows {
        match r.status {
            Status::Agree => summary.agree += 1,
            Status::Mismatch => summary.mismatch += 1,
            Status::Capped => summary.capped += 1,
        }
    }
    VerifyReport { rows, summary }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyRow {
    pub family: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub stage: Option<usize>,
    pub vertices: usize,
    pub normalizer: String,
    pub predicted_exponent: Option<u64>,
    pub counted_exponent: Option<u64>,
    /// From the counted value; empty for a zero count or when not counted.
    pub entropy: Option<f64>,
    /// From the predicted exponent.
    pub closed_form: Option<f64>,
    pub limit: f64,
}

fn entropy_one(
    spec: &LatticeSpec,
    counter: Option<(Algo, Limits)>,
) -> Result<EntropyRow, CliError> {
    let generated = generate(spec).expect("specs are validated");
    let prediction = predict(spec).expect("specs are validated");
    let target = &generated.target;
    let (n, m, stage) = coordinates(spec);
    let mut row = EntropyRow {
        family: spec.family.slug().to_string(),
        n,
        m,
        stage,
        vertices: target.num_vertices(),
        normalizer: prediction.normalizer.describe(),
        predicted_exponent: prediction.pow2_exponent,
        counted_exponent: None,
        entropy: None,
        closed_form: prediction.closed_form_entropy(),
        limit: prediction.entropy_limit,
    };
    if let Some((algo, limits)) = counter {
        let c = count(target, algo, limits)?;
        row.counted_exponent = c.pow2_exponent;
        row.entropy = finite_entropy(target, &c, prediction.normalizer).ok();
    }
    Ok(row)
}

pub fn entropy(
    specs: &[LatticeSpec],
    counter: Option<(Algo, Limits)>,
) -> Result<Vec<EntropyRow>, CliError> {
    specs.par_iter().map(|s| entropy_one(s, counter)).collect()
}

pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(CliError::usage)?;
    }
    let bytes = w.into_inner().map_err(CliError::usage)?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
