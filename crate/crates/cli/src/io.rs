//! File loading for graphs and colorings.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use folkman_core::{graph6, EdgeColoring, Graph};

/// Loads a graph file: `.g6` extension forces graph6, otherwise graph6 is
/// tried first and plain edge-list text (`u v` per line) second.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read graph file {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "g6") {
        return graph6::decode(&text)
            .with_context(|| format!("{} is not valid graph6", path.display()));
    }
    match graph6::decode(&text) {
        Ok(g) => Ok(g),
        Err(g6_err) => graph6::edge_list::parse(&text, 0).with_context(|| {
            format!(
                "{}: neither graph6 ({g6_err}) nor edge-list text",
                path.display()
            )
        }),
    }
}

/// Loads a coloring file: whitespace-separated colors (1-based) in canonical
/// edge order; `#` starts a comment line.
pub fn load_coloring(path: &Path, expected_edges: usize) -> Result<EdgeColoring> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read coloring file {}", path.display()))?;
    let mut colors = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let c: u8 = tok
                .parse()
                .with_context(|| format!("bad color token {tok:?}"))?;
            colors.push(c);
        }
    }
    if colors.len() != expected_edges {
        bail!(
            "coloring has {} entries but the graph has {} edges",
            colors.len(),
            expected_edges
        );
    }
    let r = colors.iter().copied().max().unwrap_or(1).max(2) as u32;
    Ok(EdgeColoring::new(r, colors)?)
}

/// Prints a report to stdout and optionally writes it to a file.
pub fn emit_report<T: serde::Serialize>(report: &T, out: Option<&Path>) -> Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    println!("{json}");
    if let Some(path) = out {
        fs::write(path, &json).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}
