//! Serializable analysis report and DOT output.

use std::fmt::Write as _;

use matchpose_core::{Analysis, Graph};
use serde::{Deserialize, Serialize};

use crate::io::LabelMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub n: usize,
    pub m: usize,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSection {
    pub allowed: Vec<[usize; 2]>,
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub component: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSection {
    pub classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSection {
    /// Strict relations `[a, b]` meaning component a is below component b.
    pub relations: Vec<[usize; 2]>,
    pub covers: Vec<[usize; 2]>,
    pub minimal: Vec<usize>,
}

fn pairs(edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<[usize; 2]> {
    let mut out: Vec<[usize; 2]> = edges.into_iter().map(|(a, b)| [a, b]).collect();
    out.sort_unstable();
    out
}

impl Report {
    pub fn new(g: &Graph, labels: &LabelMap, a: &Analysis) -> Self {
        let k = a.decomposition.len();
        Report {
            schema_version: SCHEMA_VERSION,
            n: g.n(),
            m: g.m(),
            labels: labels.labels().to_vec(),
            matching: Some(pairs(a.matching.edges())),
            decomposition: Some(DecompositionSection {
                allowed: pairs(a.decomposition.allowed().iter().copied()),
                components: a.decomposition.components().to_vec(),
            }),
            partition: Some(PartitionSection {
                classes: a
                    .partition
                    .classes()
                    .iter()
                    .map(|c| ClassEntry {
                        component: c.component,
                        vertices: c.vertices.clone(),
                    })
                    .collect(),
            }),
            poset: Some(PosetSection {
                relations: pairs(a.poset.strict_pairs()),
                covers: pairs(a.poset.covering_pairs().iter().copied()),
                minimal: (0..k)
                    .filter(|&h| a.poset.is_minimal(h).unwrap_or(false))
                    .collect(),
            }),
        }
    }

    /// Checks that vertex ids are in range and that component indices in
    /// the partition and poset sections refer to the decomposition.
    pub fn check_consistency(&self) -> Result<(), String> {
        if self.labels.len() != self.n {
            return Err(format!(
                "{} labels for {} vertices",
                self.labels.len(),
                self.n
            ));
        }
        let vertex = |v: usize| {
            if v < self.n {
                Ok(())
            } else {
                Err(format!("vertex {v} out of range"))
            }
        };
        for &[u, v] in self.matching.iter().flatten() {
            vertex(u)?;
            vertex(v)?;
        }
        let k = match &self.decomposition {
            Some(d) => {
                let mut seen = vec![false; self.n];
                for c in &d.components {
                    for &v in c {
                        vertex(v)?;
                        if std::mem::replace(&mut seen[v], true) {
                            return Err(format!("vertex {v} in two components"));
                        }
                    }
                }
                if seen.iter().any(|s| !s) {
                    return Err("components do not cover every vertex".into());
                }
                Some(d.components.len())
            }
            None => None,
        };
        let component = |h: usize| match k {
            Some(k) if h >= k => Err(format!("component {h} out of range")),
            _ => Ok(()),
        };
        if let Some(p) = &self.partition {
            for c in &p.classes {
                component(c.component)?;
                for &v in &c.vertices {
                    vertex(v)?;
                    if let Some(d) = &self.decomposition {
                        if !d.components[c.component].contains(&v) {
                            return Err(format!(
                                "class vertex {v} outside component {}",
                                c.component
                            ));
                        }
                    }
                }
            }
        }
        if let Some(p) = &self.poset {
            for &[a, b] in p.relations.iter().chain(&p.covers) {
                component(a)?;
                component(b)?;
            }
            for &h in &p.minimal {
                component(h)?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    fn label_list(&self, vertices: &[usize]) -> String {
        let names: Vec<&str> = vertices.iter().map(|&v| self.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Plain-text summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices: {}  edges: {}", self.n, self.m);
        if let Some(d) = &self.decomposition {
            let _ = writeln!(out, "allowed edges: {}", d.allowed.len());
            let _ = writeln!(out, "factor-components: {}", d.components.len());
            for (h, c) in d.components.iter().enumerate() {
                let _ = write!(out, "  H{h} {}", self.label_list(c));
                if let Some(p) = &self.partition {
                    let classes: Vec<String> = p
                        .classes
                        .iter()
                        .filter(|e| e.component == h)
                        .map(|e| self.label_list(&e.vertices))
                        .collect();
                    let _ = write!(out, "  classes: {}", classes.join(" "));
                }
                out.push('\n');
            }
        }
        if let Some(p) = &self.poset {
            let covers: Vec<String> = p
                .covers
                .iter()
                .map(|[a, b]| format!("H{a} < H{b}"))
                .collect();
            let _ = writeln!(
                out,
                "covers: {}",
                if covers.is_empty() {
                    "none".to_string()
                } else {
                    covers.join(", ")
                }
            );
            let minimal: Vec<String> = p.minimal.iter().map(|h| format!("H{h}")).collect();
            let _ = writeln!(out, "minimal: {}", minimal.join(", "));
        }
        out
    }

    /// Hasse diagram: one cluster per component, nested clusters per class,
    /// and an edge for each covering pair.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from(
            "digraph poset {\n  compound=true;\n  rankdir=BT;\n  node [shape=circle];\n",
        );
        let Some(d) = &self.decomposition else {
            out.push_str("}\n");
            return out;
        };
        for (h, comp) in d.components.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_h{h} {{");
            let _ = writeln!(
                out,
                "    label={};",
                quote(&format!("H{h} {}", self.label_list(comp)))
            );
            let classes: Vec<&ClassEntry> = self
                .partition
                .iter()
                .flat_map(|p| &p.classes)
                .filter(|c| c.component == h)
                .collect();
            if classes.is_empty() {
                for &v in comp {
                    let _ = writeln!(out, "    v{v} [label={}];", quote(&self.labels[v]));
                }
            }
            for (i, c) in classes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "    subgraph cluster_h{h}_c{i} {{\n      label=\"\";\n      style=dashed;"
                );
                for &v in &c.vertices {
                    let _ = writeln!(out, "      v{v} [label={}];", quote(&self.labels[v]));
                }
                out.push_str("    }\n");
            }
            out.push_str("  }\n");
        }
        for &[a, b] in self.poset.iter().flat_map(|p| &p.covers) {
            let _ = writeln!(
                out,
                "  v{} -> v{} [ltail=cluster_h{a}, lhead=cluster_h{b}];",
                d.components[a][0], d.components[b][0]
            );
        }
        out.push_str("}\n");
        out
    }
}
