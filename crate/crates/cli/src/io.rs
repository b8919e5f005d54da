//! Graph files: a whitespace edge list with an `n m` header, or JSON of the
//! form `{"n": 4, "edges": [[0, 1], ...]}`.
//!
//! Endpoints are either 0-based integer ids below `n` or arbitrary labels.
//! When every endpoint in the file is such an integer the ids are used as
//! they are; otherwise every token is a label, labels get ids in order of
//! first appearance, and vertices no edge mentions are named by their id.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use matchpose_core::Graph;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Json,
}

/// External label <-> internal id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelMap {
    labels: Vec<String>,
    ids: HashMap<String, usize>,
}

impl LabelMap {
    /// Labels equal to the decimal ids.
    pub fn identity(n: usize) -> Self {
        Self::from_labels((0..n).map(|i| i.to_string()).collect()).expect("distinct")
    }

    pub fn from_labels(labels: Vec<String>) -> Result<Self, String> {
        let mut ids = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if ids.insert(l.clone(), i).is_some() {
                return Err(format!("label {l:?} names two vertices"));
            }
        }
        Ok(LabelMap { labels, ids })
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub path: Option<PathBuf>,
    pub format: Format,
    pub labels: LabelMap,
    pub graph: Graph,
}

/// One endpoint token and the line it came from.
struct Token {
    text: String,
    line: usize,
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn build(n: usize, pairs: Vec<(Token, Token)>, format: Format) -> Result<GraphFile, CliError> {
    let numeric = pairs
        .iter()
        .flat_map(|(a, b)| [a, b])
        .all(|t| t.text.parse::<usize>().is_ok_and(|v| v < n));
    let (labels, edges) = if numeric {
        let edges = pairs
            .iter()
            .map(|(a, b)| (a.text.parse().unwrap(), b.text.parse().unwrap()))
            .collect();
        (LabelMap::identity(n), edges)
    } else {
        let mut order: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in &pairs {
            let mut id = |t: &Token| -> Result<usize, CliError> {
                if let Some(&i) = ids.get(&t.text) {
                    return Ok(i);
                }
                if order.len() == n {
                    return Err(parse_err(
                        t.line,
                        format!("label {:?} exceeds the declared {n} vertices", t.text),
                    ));
                }
                ids.insert(t.text.clone(), order.len());
                order.push(t.text.clone());
                Ok(order.len() - 1)
            };
            edges.push((id(a)?, id(b)?));
        }
        for i in order.len()..n {
            order.push(i.to_string());
        }
        let labels = LabelMap::from_labels(order).map_err(|m| parse_err(0, m))?;
        (labels, edges)
    };
    let graph = Graph::new(n, &edges)?;
    Ok(GraphFile {
        path: None,
        format,
        labels,
        graph,
    })
}

fn parse_usize(s: &str, line: usize, what: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {s:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<GraphFile, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_usize(fields[0], hline, "vertex count")?;
    let m = parse_usize(fields[1], hline, "edge count")?;
    let mut pairs = Vec::with_capacity(m);
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "edge line must hold exactly two endpoints"));
        }
        if pairs.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        let tok = |s: &str| Token {
            text: s.to_string(),
            line,
        };
        pairs.push((tok(fields[0]), tok(fields[1])));
    }
    if pairs.len() != m {
        return Err(parse_err(
            text.lines().count(),
            format!("declared {m} edges, found {}", pairs.len()),
        ));
    }
    build(n, pairs, Format::EdgeList)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonEndpoint {
    Id(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    edges: Vec<(JsonEndpoint, JsonEndpoint)>,
}

pub fn parse_json(text: &str) -> Result<GraphFile, CliError> {
    let parsed: JsonGraph =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let tok = |e: JsonEndpoint| Token {
        text: match e {
            JsonEndpoint::Id(i) => i.to_string(),
            JsonEndpoint::Label(s) => s,
        },
        line: 0,
    };
    let pairs = parsed
        .edges
        .into_iter()
        .map(|(a, b)| (tok(a), tok(b)))
        .collect();
    build(parsed.n, pairs, Format::Json)
}

/// Parses `text`, choosing the format from `hint` or by sniffing for `{`.
pub fn parse_str(text: &str, hint: Option<Format>) -> Result<GraphFile, CliError> {
    let format = hint.unwrap_or_else(|| {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::EdgeList
        }
    });
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Json => parse_json(text),
    }
}

pub fn parse_graph(path: &Path) -> Result<GraphFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let hint = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        .then_some(Format::Json);
    let mut file = parse_str(&text, hint)?;
    file.path = Some(path.to_path_buf());
    Ok(file)
}

/// Edge-list text for `g` with integer ids.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
