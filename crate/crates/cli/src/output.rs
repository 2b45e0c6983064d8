//! Reading graphs and writing results to a file or stdout.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use linematch::{io, MultiGraph};
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    /// Canonical JSON graph.
    Json,
    /// `p N M` header plus one `u v` line per edge.
    Edges,
}

#[derive(Args, Clone, Debug)]
pub struct GraphOut {
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
    pub format: GraphFormat,
}

/// Reads a JSON or edge-list graph; `-` is stdin.
pub fn read_input(path: &Path) -> Result<MultiGraph, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    };
    io::parse_auto(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A graph with an optional metadata block written ahead of it.
#[derive(Serialize)]
struct Annotated<'a, M: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a M>,
    #[serde(flatten)]
    graph: &'a MultiGraph,
}

/// Renders `g`; metadata becomes a JSON block or `c key value` comments.
pub fn render_graph<M: Serialize>(
    g: &MultiGraph,
    metadata: Option<&M>,
    format: GraphFormat,
) -> String {
    match format {
        GraphFormat::Json => serde_json::to_string(&Annotated { metadata, graph: g })
            .expect("graph serialization cannot fail"),
        GraphFormat::Edges => {
            let mut text = String::new();
            if let Some(serde_json::Value::Object(map)) =
                metadata.map(|m| serde_json::to_value(m).expect("metadata serializes"))
            {
                for (k, v) in map {
                    text.push_str(&format!("c {k} {v}\n"));
                }
            }
            text + &io::to_edge_list(g)
        }
    }
}

pub fn write_graph(g: &MultiGraph, out: &GraphOut) -> Result<(), CliError> {
    emit(out.out.as_deref(), &render_graph::<()>(g, None, out.format))
}
