//! DOT and JSON renderings of completed Cayley graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::EnumerationStats;
use crate::error::{Error, Result};
use crate::graph::CayleyGraph;
use crate::word::Gen;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DotOptions {
    pub no_loops: bool,
    pub color: bool,
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// One node per element and one labeled edge `v -> v▷g` per generator.
pub fn export_dot(g: &CayleyGraph, opts: DotOptions) -> String {
    let mut out = String::from("digraph quandle {\n  node [shape=circle];\n");
    for v in 0..g.size() {
        let _ = writeln!(out, "  {v};");
    }
    for v in 0..g.size() as u32 {
        for (i, name) in g.names().iter().enumerate() {
            let t = g.action(Gen(i as u32))[v as usize];
            if opts.no_loops && t == v {
                continue;
            }
            if opts.color {
                let c = PALETTE[i % PALETTE.len()];
                let _ = writeln!(
                    out,
                    "  {v} -> {t} [label=\"{name}\", color=\"{c}\", fontcolor=\"{c}\"];"
                );
            } else {
                let _ = writeln!(out, "  {v} -> {t} [label=\"{name}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGenerator {
    pub name: String,
    /// 1-based graph edge.
    pub edge: usize,
    pub basepoint: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonComponent {
    /// First graph edge (1-based) whose generators lie in this component.
    pub edge: usize,
    pub edges: Vec<usize>,
    pub size: usize,
    pub members: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonStats {
    pub vertices_created: usize,
    pub merges: usize,
    pub relations_traced: u64,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub size: usize,
    pub edge_labels: Vec<u32>,
    pub generators: Vec<JsonGenerator>,
    pub components: Vec<JsonComponent>,
    pub actions: BTreeMap<String, Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<JsonStats>,
}

impl JsonGraph {
    pub fn from_graph(g: &CayleyGraph, stats: Option<&EnumerationStats>) -> JsonGraph {
        let generators = g
            .names()
            .iter()
            .enumerate()
            .map(|(i, name)| JsonGenerator {
                name: name.clone(),
                edge: g.edge_of(Gen(i as u32)) + 1,
                basepoint: g.basepoint(Gen(i as u32)),
            })
            .collect();
        let components = g
            .components()
            .into_iter()
            .map(|c| JsonComponent {
                edge: c.edges.first().map_or(0, |e| e + 1),
                edges: c.edges.iter().map(|e| e + 1).collect(),
                size: c.size(),
                members: c.members,
            })
            .collect();
        let actions = g
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), g.action(Gen(i as u32)).to_vec()))
            .collect();
        JsonGraph {
            size: g.size(),
            edge_labels: g.labels().to_vec(),
            generators,
            components,
            actions,
            stats: stats.map(|s| JsonStats {
                vertices_created: s.vertices_created,
                merges: s.merges,
                relations_traced: s.relations_traced,
                steps: s.steps,
            }),
        }
    }

    pub fn to_graph(&self) -> Result<CayleyGraph> {
        let mut names = Vec::new();
        let mut edge_of = Vec::new();
        let mut bases = Vec::new();
        let mut actions = Vec::new();
        for g in &self.generators {
            if g.edge == 0 {
                return Err(Error::Invalid(format!("generator {} has edge 0", g.name)));
            }
            names.push(g.name.clone());
            edge_of.push(g.edge - 1);
            bases.push(g.basepoint);
            actions.push(
                self.actions
                    .get(&g.name)
                    .cloned()
                    .ok_or_else(|| Error::UnknownGenerator(g.name.clone()))?,
            );
        }
        CayleyGraph::from_parts(names, edge_of, self.edge_labels.clone(), actions, bases)
    }
}

pub fn export_json(g: &CayleyGraph, stats: Option<&EnumerationStats>) -> String {
    let mut s =
        serde_json::to_string_pretty(&JsonGraph::from_graph(g, stats)).expect("serializable");
    s.push('\n');
    s
}

pub fn import_json(text: &str) -> Result<CayleyGraph> {
    let j: JsonGraph = serde_json::from_str(text)
        .map_err(|e| Error::syntax(e.line(), e.column(), e.to_string()))?;
    j.to_graph()
}

/// Operation table as text: row `y`, column `x` holds `y ▷ x`.
pub fn export_table(g: &CayleyGraph) -> Result<String> {
    let t = g.quandle_table()?;
    let n = t.size();
    let w = n.saturating_sub(1).to_string().len().max(1);
    let mut out = String::new();
    let _ = write!(out, "{:>w$} |", "▷");
    for x in 0..n {
        let _ = write!(out, " {x:>w$}");
    }
    out.push('\n');
    for y in 0..n as u32 {
        let _ = write!(out, "{y:>w$} |");
        for x in 0..n as u32 {
            let _ = write!(out, " {:>w$}", t.op(y, x));
        }
        out.push('\n');
    }
    Ok(out)
}
