//! Reading instance files and parsing list-valued flags.
//!
//! A graph file is either the plain text format (`n`, then one edge per
//! line) or a JSON instance spec such as `{"kind":"h_ext","n":10}`, told
//! apart by a leading `{`. Rainbow families are colour graphs in text form
//! separated by `---` lines. `-` reads standard input.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ttile_core::generators::{GenSpec, Generated};
use ttile_core::rational::parse_rational;
use ttile_core::{AvoidanceGraph, FiveGraph, RainbowInstance, Rational, ThreeGraph, Vertex};

pub const RAINBOW_SEPARATOR: &str = "---";

pub fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn as_spec(text: &str) -> Option<Result<GenSpec>> {
    let text = text.trim_start();
    text.starts_with('{').then(|| serde_json::from_str(text).context("malformed instance spec"))
}

/// A spec given inline (`{...}`) or as a path to a JSON file.
pub fn parse_spec_arg(arg: &str) -> Result<GenSpec> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_source(Path::new(arg))? };
    as_spec(&text).unwrap_or_else(|| Err(anyhow!("{arg} is not a JSON instance spec")))
}

pub fn parse_three(text: &str) -> Result<ThreeGraph> {
    match as_spec(text) {
        Some(spec) => Ok(spec?.build_three()?),
        None => Ok(ThreeGraph::parse_text(text)?),
    }
}

pub fn parse_five(text: &str) -> Result<FiveGraph> {
    match as_spec(text) {
        Some(spec) => match spec?.build()? {
            Generated::Five(g) => Ok(g),
            _ => bail!("spec does not describe a 5-graph"),
        },
        None => Ok(FiveGraph::parse_text(text)?),
    }
}

pub fn parse_rainbow(text: &str) -> Result<RainbowInstance> {
    if let Some(spec) = as_spec(text) {
        return match spec?.build()? {
            Generated::Rainbow(inst) => Ok(inst),
            _ => bail!("spec does not describe a rainbow family"),
        };
    }
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == RAINBOW_SEPARATOR {
            blocks.push(String::new());
        } else {
            let block = blocks.last_mut().expect("non-empty");
            block.push_str(line);
            block.push('\n');
        }
    }
    let graphs = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| ThreeGraph::parse_text(b).with_context(|| format!("colour graph {i}")))
        .collect::<Result<Vec<_>>>()?;
    let n = graphs.first().map(ThreeGraph::n).unwrap_or(0);
    Ok(RainbowInstance::new(n, graphs)?)
}

pub fn rainbow_to_text(inst: &RainbowInstance, comments: &[String]) -> String {
    let blocks: Vec<String> =
        inst.family().iter().enumerate().map(|(i, g)| g.to_text(if i == 0 { comments } else { &[] })).collect();
    blocks.join(&format!("{RAINBOW_SEPARATOR}\n"))
}

fn with_path<T>(path: &Path, result: Result<T>) -> Result<T> {
    result.with_context(|| format!("in {}", path.display()))
}

pub fn load_three(path: &Path) -> Result<ThreeGraph> {
    with_path(path, parse_three(&read_source(path)?))
}

pub fn load_five(path: &Path) -> Result<FiveGraph> {
    with_path(path, parse_five(&read_source(path)?))
}

pub fn load_rainbow(path: &Path) -> Result<RainbowInstance> {
    with_path(path, parse_rainbow(&read_source(path)?))
}

/// Forbidden pairs, one `u v` per line.
pub fn parse_avoidance(text: &str, n: usize) -> Result<AvoidanceGraph> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields = parse_list(&line.replace(char::is_whitespace, ","))?;
        let [u, v] = fields[..] else {
            bail!("line {}: expected a vertex pair", i + 1);
        };
        pairs.push((u, v));
    }
    Ok(AvoidanceGraph::new(n, pairs)?)
}

pub fn load_avoidance(path: Option<&Path>, n: usize) -> Result<AvoidanceGraph> {
    match path {
        None => Ok(AvoidanceGraph::empty(n)),
        Some(p) => with_path(p, parse_avoidance(&read_source(p)?, n)),
    }
}

pub fn parse_rat(text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| anyhow!("not a rational number: {text:?}"))
}

/// `0,1,2` (whitespace also separates).
pub fn parse_list(text: &str) -> Result<Vec<Vertex>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| anyhow!("not a vertex index: {t:?}")))
        .collect()
}

pub fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| anyhow!("not an integer: {t:?}")))
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_int_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';').filter(|r| !r.trim().is_empty()).map(parse_ints).collect()
}

pub fn parse_parts(text: &str) -> Result<Vec<Vec<Vertex>>> {
    text.split(';').map(parse_list).collect()
}
