//! Spatial-graph diagrams, their Wirtinger-style presentations, and the
//! subdivision / deletion surgeries.
//!
//! Conventions:
//! * arcs and edges are 0-based in memory and 1-based in files;
//! * a crossing of sign `s` relates `under_out = under_in ▷^s over`;
//! * incident arcs of a vertex are listed clockwise, `+` for an arc ending at
//!   the vertex and `-` for one leaving it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::presentation::{EdgeLabeling, Presentation, PrimaryRelation, UniversalRelation};
use crate::word::{Gen, GroupWord, Letter, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: Sign,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

/// An arc end at a graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Incidence {
    pub arc: usize,
    /// `Pos` when the arc points into the vertex.
    pub dir: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    arc_edge: Vec<usize>,
    crossings: Vec<Crossing>,
    vertices: Vec<Vec<Incidence>>,
    labeling: EdgeLabeling,
}

/// What a surgery did to the component structure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SurgeryReport {
    pub removed_component: Option<usize>,
    pub duplicated_component: Option<usize>,
}

impl DiagramSpec {
    pub fn new(
        arc_edge: Vec<usize>,
        crossings: Vec<Crossing>,
        vertices: Vec<Vec<Incidence>>,
        labeling: EdgeLabeling,
    ) -> Result<DiagramSpec> {
        let d = DiagramSpec {
            arc_edge,
            crossings,
            vertices,
            labeling,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.arc_count();
        for &e in &self.arc_edge {
            if e >= self.labeling.len() {
                return Err(Error::EdgeOutOfRange {
                    index: e + 1,
                    edges: self.labeling.len(),
                });
            }
        }
        let mut heads = vec![0u32; n];
        let mut tails = vec![0u32; n];
        for (i, c) in self.crossings.iter().enumerate() {
            for a in [c.over, c.under_in, c.under_out] {
                if a >= n {
                    return Err(Error::UnknownArc(a + 1));
                }
            }
            if self.arc_edge[c.under_in] != self.arc_edge[c.under_out] {
                return Err(Error::UnderArcsSplit {
                    crossing: i + 1,
                    under_in: c.under_in + 1,
                    under_out: c.under_out + 1,
                });
            }
            heads[c.under_in] += 1;
            tails[c.under_out] += 1;
        }
        for v in &self.vertices {
            for inc in v {
                if inc.arc >= n {
                    return Err(Error::UnknownArc(inc.arc + 1));
                }
                match inc.dir {
                    Sign::Pos => heads[inc.arc] += 1,
                    Sign::Neg => tails[inc.arc] += 1,
                }
            }
        }
        for a in 0..n {
            match (heads[a], tails[a]) {
                (0, 0) | (1, 1) => {}
                _ => return Err(Error::DanglingArc(a + 1)),
            }
        }
        Ok(())
    }

    pub fn arc_count(&self) -> usize {
        self.arc_edge.len()
    }

    pub fn arc_edge(&self) -> &[usize] {
        &self.arc_edge
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn vertices(&self) -> &[Vec<Incidence>] {
        &self.vertices
    }

    pub fn labeling(&self) -> &EdgeLabeling {
        &self.labeling
    }

    pub fn edge_count(&self) -> usize {
        self.labeling.len()
    }

    pub fn with_labeling(&self, labeling: EdgeLabeling) -> Result<DiagramSpec> {
        DiagramSpec::new(
            self.arc_edge.clone(),
            self.crossings.clone(),
            self.vertices.clone(),
            labeling,
        )
    }

    /// Same diagram with edges renumbered: old edge `i` becomes `order[i]`.
    pub fn permute_edges(&self, order: &[usize]) -> Result<DiagramSpec> {
        let k = self.edge_count();
        let mut seen = vec![false; k];
        if order.len() != k
            || order
                .iter()
                .any(|&e| e >= k || std::mem::replace(&mut seen[e], true))
        {
            return Err(Error::BadParameter(
                "edge order is not a permutation".into(),
            ));
        }
        let mut labels = vec![0i64; k];
        for (old, &new) in order.iter().enumerate() {
            labels[new] = self.labeling.get(old) as i64;
        }
        DiagramSpec::new(
            self.arc_edge.iter().map(|&e| order[e]).collect(),
            self.crossings.clone(),
            self.vertices.clone(),
            EdgeLabeling::new(labels)?,
        )
    }

    /// Mirror image: every crossing changes sign.
    pub fn mirror(&self) -> DiagramSpec {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.sign = c.sign.flip();
        }
        d
    }

    /// Wirtinger-style presentation: one generator `x<arc>` per arc, one
    /// primary relation per crossing, one universal relation per vertex.
    pub fn wirtinger(&self) -> Presentation {
        let names = (1..=self.arc_count()).map(|i| format!("x{i}")).collect();
        let g = |a: usize| Gen(a as u32);
        let primaries = self
            .crossings
            .iter()
            .map(|c| PrimaryRelation {
                lhs: g(c.under_in),
                word: GroupWord::letter(Letter {
                    gen: g(c.over),
                    sign: c.sign,
                }),
                rhs: g(c.under_out),
            })
            .collect();
        let universals = self
            .vertices
            .iter()
            .filter_map(|v| {
                UniversalRelation::new(crate::word::free_reduce(v.iter().map(|i| Letter {
                    gen: g(i.arc),
                    sign: i.dir,
                })))
            })
            .collect();
        Presentation::new(
            names,
            self.arc_edge.clone(),
            self.labeling.clone(),
            primaries,
            universals,
        )
        .expect("validated diagram yields a valid presentation")
    }

    /// Inserts a degree-2 vertex on edge `e`. The new half-edge becomes edge
    /// `e + 1` (later edges shift up) and inherits the label of `e`.
    ///
    /// A closed component without vertices receives two degree-2 vertices, so
    /// that it really splits into two edges.
    pub fn subdivide_edge(&self, e: usize) -> Result<(DiagramSpec, SurgeryReport)> {
        self.check_edge(e)?;
        let mut arc_edge: Vec<usize> = self
            .arc_edge
            .iter()
            .map(|&x| if x > e { x + 1 } else { x })
            .collect();
        let mut crossings = self.crossings.clone();
        let mut vertices = self.vertices.clone();
        let mut labels: Vec<i64> = self.labeling.labels().iter().map(|&l| l as i64).collect();
        labels.insert(e + 1, labels[e]);

        // an arc of e that ends at a vertex
        let at_vertex = vertices.iter().enumerate().find_map(|(vi, v)| {
            v.iter()
                .position(|i| i.dir == Sign::Pos && self.arc_edge[i.arc] == e)
                .map(|p| (vi, p))
        });
        let fresh = |arc_edge: &mut Vec<usize>, edge: usize| {
            arc_edge.push(edge);
            arc_edge.len() - 1
        };
        if let Some((vi, pos)) = at_vertex {
            let a = vertices[vi][pos].arc;
            let half = fresh(&mut arc_edge, e + 1);
            vertices[vi][pos].arc = half;
            vertices.push(vec![inc(a, Sign::Pos), inc(half, Sign::Neg)]);
        } else {
            let a = (0..self.arc_count())
                .find(|&a| self.arc_edge[a] == e)
                .ok_or_else(|| Error::BadParameter(format!("edge {} has no arcs", e + 1)))?;
            let half = fresh(&mut arc_edge, e + 1);
            match crossings.iter().position(|c| c.under_in == a) {
                None => {
                    vertices.push(vec![inc(a, Sign::Pos), inc(half, Sign::Neg)]);
                    vertices.push(vec![inc(half, Sign::Pos), inc(a, Sign::Neg)]);
                }
                Some(ci) => {
                    let tail = fresh(&mut arc_edge, e);
                    crossings[ci].under_in = tail;
                    vertices.push(vec![inc(a, Sign::Pos), inc(half, Sign::Neg)]);
                    vertices.push(vec![inc(half, Sign::Pos), inc(tail, Sign::Neg)]);
                }
            }
        }
        let d = DiagramSpec::new(arc_edge, crossings, vertices, EdgeLabeling::new(labels)?)?;
        Ok((
            d,
            SurgeryReport {
                removed_component: None,
                duplicated_component: Some(e),
            },
        ))
    }

    /// Removes edge `e` and its arcs. Crossings under `e` disappear; crossings
    /// over `e` are resolved by joining their under-arcs. Vertices left with
    /// no incident arcs are dropped; later edges shift down.
    pub fn delete_edge(&self, e: usize) -> Result<(DiagramSpec, SurgeryReport)> {
        self.check_edge(e)?;
        let n = self.arc_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for c in &self.crossings {
            if self.arc_edge[c.over] == e && self.arc_edge[c.under_in] != e {
                let (x, y) = (
                    find(&mut parent, c.under_in),
                    find(&mut parent, c.under_out),
                );
                let (lo, hi) = (x.min(y), x.max(y));
                parent[hi] = lo;
            }
        }
        let mut new_index = vec![usize::MAX; n];
        let mut arc_edge = Vec::new();
        for (a, slot) in new_index.iter_mut().enumerate() {
            if self.arc_edge[a] != e && find(&mut parent, a) == a {
                *slot = arc_edge.len();
                let x = self.arc_edge[a];
                arc_edge.push(if x > e { x - 1 } else { x });
            }
        }
        let mut map = |a: usize| new_index[find(&mut parent, a)];
        let crossings = self
            .crossings
            .iter()
            .filter(|c| self.arc_edge[c.over] != e && self.arc_edge[c.under_in] != e)
            .map(|c| Crossing {
                sign: c.sign,
                over: map(c.over),
                under_in: map(c.under_in),
                under_out: map(c.under_out),
            })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .filter(|i| self.arc_edge[i.arc] != e)
                    .map(|i| inc(map(i.arc), i.dir))
                    .collect::<Vec<_>>()
            })
            .filter(|v| !v.is_empty())
            .collect();
        let mut labels: Vec<i64> = self.labeling.labels().iter().map(|&l| l as i64).collect();
        labels.remove(e);
        let d = DiagramSpec::new(arc_edge, crossings, vertices, EdgeLabeling::new(labels)?)?;
        Ok((
            d,
            SurgeryReport {
                removed_component: Some(e),
                duplicated_component: None,
            },
        ))
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange {
                index: e + 1,
                edges: self.edge_count(),
            })
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn inc(arc: usize, dir: Sign) -> Incidence {
    Incidence { arc, dir }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Pos => '+',
        Sign::Neg => '-',
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arcs: {}", self.arc_count())?;
        if self.arc_count() > 0 {
            f.write_str("edge:")?;
            for (a, e) in self.arc_edge.iter().enumerate() {
                write!(f, " {}:{}", a + 1, e + 1)?;
            }
            writeln!(f)?;
        }
        f.write_str("labels:")?;
        for l in self.labeling.labels() {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        for c in &self.crossings {
            writeln!(
                f,
                "xing {} : over={} in={} out={}",
                sign_char(c.sign),
                c.over + 1,
                c.under_in + 1,
                c.under_out + 1
            )?;
        }
        for v in &self.vertices {
            f.write_str("vertex:")?;
            for i in v {
                write!(f, " {}{}", i.arc + 1, sign_char(i.dir))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for DiagramSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<DiagramSpec> {
        parse_diagram(s)
    }
}

/// Parses the diagram file format.
pub fn parse_diagram(text: &str) -> Result<DiagramSpec> {
    let mut arcs: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut labels: Option<Vec<i64>> = None;
    let mut crossings = Vec::new();
    let mut vertices = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = line.len() - line.trim_start().len() + 1;
        let bad = |msg: String| Error::syntax(line_no, col, msg);
        let index = |tok: &str| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(bad(format!("expected a 1-based index, found `{tok}`"))),
            }
        };
        if let Some(rest) = trimmed.strip_prefix("arcs:") {
            arcs = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| bad(format!("bad arc count `{}`", rest.trim())))?,
            );
        } else if let Some(rest) = trimmed.strip_prefix("edge:") {
            for tok in rest.split_whitespace() {
                let (a, e) = tok
                    .split_once(':')
                    .ok_or_else(|| bad(format!("expected arc:edge, found `{tok}`")))?;
                edges.push((index(a)?, index(e)?));
            }
        } else if let Some(rest) = trimmed.strip_prefix("labels:") {
            let mut ls = Vec::new();
            for tok in rest.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| bad(format!("bad label `{tok}`")))?;
                ls.push(v);
            }
            labels = Some(ls);
        } else if let Some(rest) = trimmed.strip_prefix("xing") {
            let (sign, fields) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected `xing <sign> : ...`".into()))?;
            let sign = match sign.trim() {
                "+" | "+1" => Sign::Pos,
                "-" | "-1" => Sign::Neg,
                s => return Err(bad(format!("bad crossing sign `{s}`"))),
            };
            let (mut over, mut under_in, mut under_out) = (None, None, None);
            for tok in fields.split_whitespace() {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| bad(format!("expected key=arc, found `{tok}`")))?;
                let slot = match k {
                    "over" => &mut over,
                    "in" => &mut under_in,
                    "out" => &mut under_out,
                    _ => return Err(bad(format!("unknown crossing field `{k}`"))),
                };
                *slot = Some(index(v)?);
            }
            let need = |v: Option<usize>, what: &str| {
                v.ok_or_else(|| bad(format!("crossing lacks `{what}`")))
            };
            crossings.push(Crossing {
                sign,
                over: need(over, "over")?,
                under_in: need(under_in, "in")?,
                under_out: need(under_out, "out")?,
            });
        } else if let Some(rest) = trimmed.strip_prefix("vertex:") {
            let mut v = Vec::new();
            for tok in rest.split_whitespace() {
                let (num, dir) = if let Some(n) = tok.strip_suffix('+') {
                    (n, Sign::Pos)
                } else if let Some(n) = tok.strip_suffix('-') {
                    (n, Sign::Neg)
                } else {
                    return Err(bad(format!("incidence `{tok}` needs a trailing + or -")));
                };
                v.push(inc(index(num)?, dir));
            }
            vertices.push(v);
        } else {
            return Err(bad(format!("unrecognised line `{trimmed}`")));
        }
    }

    let n = arcs.ok_or_else(|| Error::syntax(1, 1, "missing `arcs:` line"))?;
    let labeling =
        EdgeLabeling::new(labels.ok_or_else(|| Error::syntax(1, 1, "missing `labels:` line"))?)?;
    let mut arc_edge = vec![None; n];
    for (a, e) in edges {
        *arc_edge.get_mut(a).ok_or(Error::UnknownArc(a + 1))? = Some(e);
    }
    let arc_edge = arc_edge
        .into_iter()
        .enumerate()
        .map(|(a, e)| e.ok_or_else(|| Error::MissingEdge(format!("arc {}", a + 1))))
        .collect::<Result<Vec<_>>>()?;
    DiagramSpec::new(arc_edge, crossings, vertices, labeling)
}
