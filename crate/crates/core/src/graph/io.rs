//! Plain-text graph ingestion: SNAP-style edge lists and node/label files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Reads a whitespace-separated `u v` edge list. Lines starting with `#`
/// and blank lines are skipped. The node count is one more than the
/// largest id seen.
pub fn load_edge_list(path: impl AsRef<Path>, dedupe: bool) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file), dedupe).map_err(|e| with_path(e, path))
}

pub fn parse_edge_list(text: &str, dedupe: bool) -> Result<Graph> {
    read_edge_list(text.as_bytes(), dedupe)
}

fn read_edge_list(reader: impl BufRead, dedupe: bool) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for_each_pair(reader, |_, u, v| {
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
        Ok(())
    })?;
    let n = match max_id {
        Some(m) => m + 1,
        None => return Err(Error::Validation("edge list contains no edges".into())),
    };
    if dedupe {
        Graph::new_dedup(n, edges)
    } else {
        Graph::new(n, edges)
    }
}

/// Reads `node label` pairs for a graph on `n` nodes and relabels the
/// distinct label values, in increasing order, to `0..k`.
pub fn load_communities(path: impl AsRef<Path>, n: usize) -> Result<Vec<usize>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_communities(BufReader::new(file), n).map_err(|e| with_path(e, path))
}

pub fn parse_communities(text: &str, n: usize) -> Result<Vec<usize>> {
    read_communities(text.as_bytes(), n)
}

fn read_communities(reader: impl BufRead, n: usize) -> Result<Vec<usize>> {
    let mut raw: Vec<Option<usize>> = vec![None; n];
    for_each_pair(reader, |line, node, label| {
        if node >= n {
            return Err(Error::Validation(format!(
                "line {line}: node {node} is outside [0, {n})"
            )));
        }
        match raw[node] {
            Some(prev) if prev != label => Err(Error::Validation(format!(
                "line {line}: node {node} already has label {prev}"
            ))),
            _ => {
                raw[node] = Some(label);
                Ok(())
            }
        }
    })?;
    if let Some(missing) = raw.iter().position(Option::is_none) {
        return Err(Error::Validation(format!("node {missing} has no label")));
    }
    let labels: Vec<usize> = raw.into_iter().flatten().collect();
    let mut map: BTreeMap<usize, usize> = labels.iter().map(|&l| (l, 0)).collect();
    for (next, slot) in map.values_mut().enumerate() {
        *slot = next;
    }
    Ok(labels.iter().map(|l| map[l]).collect())
}

fn for_each_pair(
    reader: impl BufRead,
    mut f: impl FnMut(usize, usize, usize) -> Result<()>,
) -> Result<()> {
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected two integers, got `{line}`"),
                })
            }
        };
        let parse = |tok: &str| {
            tok.parse::<usize>().map_err(|e| Error::Parse {
                line: lineno,
                message: format!("`{tok}`: {e}"),
            })
        };
        f(lineno, parse(a)?, parse(b)?)?;
    }
    Ok(())
}

fn with_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        Error::Validation(msg) => Error::Validation(format!("{}: {msg}", path.display())),
        other => other,
    }
}
