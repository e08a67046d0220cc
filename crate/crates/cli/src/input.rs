use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use permsim::graphio::{adjacency_matrix, parse_dimacs, parse_graph6_file, parse_matrix_text, Graph};
use permsim::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Dimacs,
    Matrix,
    Auto,
}

/// Extension first (`.g6`, `.dimacs`/`.col`, `.mat`), then content: a
/// `p edge` line means DIMACS, a leading integer means plain matrix,
/// anything else is graph6.
pub fn detect(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => return Format::Graph6,
        Some("dimacs" | "col") => return Format::Dimacs,
        Some("mat") => return Format::Matrix,
        _ => {}
    }
    let is_comment = |l: &&str| *l == "c" || l.starts_with("c ");
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let Some(first) = lines.clone().find(|l| !is_comment(l)) else {
        return if lines.next().is_some() { Format::Dimacs } else { Format::Graph6 };
    };
    if first.starts_with("p edge") || first.starts_with("e ") {
        return Format::Dimacs;
    }
    if first.split_whitespace().count() == 1 && first.parse::<i64>().is_ok() {
        return Format::Matrix;
    }
    Format::Graph6
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Loads one matrix; for graph6 files `line` (1-based) picks the graph.
pub fn load_matrix(path: &Path, format: Format, line: usize) -> Result<IntMatrix> {
    let text = read(path)?;
    let format = if format == Format::Auto { detect(path, &text) } else { format };
    let ctx = || format!("cannot parse {} as {format:?}", path.display());
    Ok(match format {
        Format::Matrix => parse_matrix_text(&text).with_context(ctx)?,
        Format::Dimacs => adjacency_matrix(&parse_dimacs(&text).with_context(ctx)?),
        Format::Graph6 | Format::Auto => {
            let graphs = parse_graph6_file(&text).with_context(ctx)?;
            if line == 0 {
                bail!("graph6 line numbers start at 1");
            }
            let g = graphs
                .get(line - 1)
                .with_context(|| format!("{} has {} graphs, no line {line}", path.display(), graphs.len()))?;
            adjacency_matrix(g)
        }
    })
}

/// Loads a hunt corpus. An empty file is an empty corpus.
pub fn load_corpus(path: &Path, format: Format) -> Result<Vec<Graph>> {
    let text = read(path)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let format = if format == Format::Auto { detect(path, &text) } else { format };
    let ctx = || format!("cannot parse {} as {format:?}", path.display());
    match format {
        Format::Graph6 | Format::Auto => parse_graph6_file(&text).with_context(ctx),
        Format::Dimacs => Ok(vec![parse_dimacs(&text).with_context(ctx)?]),
        Format::Matrix => bail!("hunt corpora must be graphs (graph6 or DIMACS)"),
    }
}
