//! Quandle presentations with edge labelings.
//!
//! A presentation carries element-level (primary) relations `x_j^w = x_k` and
//! universal relations `x^w = x` that hold for every element. Expansion adds
//! the universal relation implied by each primary and the power relations
//! `x^{g^n} = x` coming from the labeling.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{free_reduce, parse_word, power_word, Gen, GeneratorSymbol, GroupWord, Letter};

/// Positive labels `n_1..n_k`, one per graph edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling(Vec<u32>);

impl EdgeLabeling {
    pub fn new(labels: Vec<i64>) -> Result<EdgeLabeling> {
        labels
            .into_iter()
            .map(|l| {
                if l < 1 || l > u32::MAX as i64 {
                    Err(Error::BadLabel(l))
                } else {
                    Ok(l as u32)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(EdgeLabeling)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, edge: usize) -> u32 {
        self.0[edge]
    }

    /// `self | other` componentwise.
    pub fn divides(&self, other: &EdgeLabeling) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(m, n)| n % m == 0)
    }
}

impl From<&[u32]> for EdgeLabeling {
    fn from(v: &[u32]) -> Self {
        assert!(v.iter().all(|&l| l >= 1), "labels must be positive");
        EdgeLabeling(v.to_vec())
    }
}

/// `lhs^word = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryRelation {
    pub lhs: Gen,
    pub word: GroupWord,
    pub rhs: Gen,
}

/// `x^word = x` for every element `x`. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniversalRelation(GroupWord);

impl UniversalRelation {
    /// `None` when the word reduces to the identity (a vacuous relation).
    pub fn new(word: GroupWord) -> Option<UniversalRelation> {
        if word.is_empty() {
            None
        } else {
            Some(UniversalRelation(word))
        }
    }

    pub fn word(&self) -> &GroupWord {
        &self.0
    }
}

/// The universal relation `x^{w̄ x_j w x̄_k} = x` implied by `x_j^w = x_k`.
pub fn secondary_of(r: &PrimaryRelation) -> Option<UniversalRelation> {
    let inv = r.word.invert();
    let letters = inv
        .letters()
        .iter()
        .copied()
        .chain(std::iter::once(Letter::pos(r.lhs)))
        .chain(r.word.letters().iter().copied())
        .chain(std::iter::once(Letter::neg(r.rhs)));
    UniversalRelation::new(free_reduce(letters))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    edge_of: Vec<usize>,
    labeling: EdgeLabeling,
    primaries: Vec<PrimaryRelation>,
    universals: Vec<UniversalRelation>,
}

impl Presentation {
    /// Builds and validates a presentation. Edge indices are 0-based here.
    pub fn new(
        names: Vec<String>,
        edge_of: Vec<usize>,
        labeling: EdgeLabeling,
        primaries: Vec<PrimaryRelation>,
        universals: Vec<UniversalRelation>,
    ) -> Result<Presentation> {
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::Invalid(format!("duplicate generator `{n}`")));
            }
        }
        if edge_of.len() != names.len() {
            let missing = names
                .get(edge_of.len())
                .cloned()
                .unwrap_or_else(|| "?".into());
            return Err(Error::MissingEdge(missing));
        }
        for &e in &edge_of {
            if e >= labeling.len() {
                return Err(Error::EdgeOutOfRange {
                    index: e + 1,
                    edges: labeling.len(),
                });
            }
        }
        let g = names.len() as u32;
        let check = |gen: Gen| -> Result<()> {
            if gen.0 < g {
                Ok(())
            } else {
                Err(Error::UnknownGenerator(format!("#{}", gen.0)))
            }
        };
        for r in &primaries {
            check(r.lhs)?;
            check(r.rhs)?;
            r.word.generators().try_for_each(check)?;
        }
        for r in &universals {
            r.word().generators().try_for_each(check)?;
        }
        let generators = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| GeneratorSymbol {
                id: Gen(i as u32),
                name,
            })
            .collect();
        Ok(Presentation {
            generators,
            edge_of,
            labeling,
            primaries,
            universals,
        })
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.id)
    }

    /// Graph edge (0-based) of each generator.
    pub fn edge_of(&self, g: Gen) -> usize {
        self.edge_of[g.index()]
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_of
    }

    pub fn labeling(&self) -> &EdgeLabeling {
        &self.labeling
    }

    pub fn edge_count(&self) -> usize {
        self.labeling.len()
    }

    pub fn primaries(&self) -> &[PrimaryRelation] {
        &self.primaries
    }

    pub fn universals(&self) -> &[UniversalRelation] {
        &self.universals
    }

    /// Same presentation with a different labeling of the same edge count.
    pub fn with_labeling(&self, labeling: EdgeLabeling) -> Result<Presentation> {
        if labeling.len() != self.labeling.len() {
            return Err(Error::LabelCount {
                family: "presentation".into(),
                expected: self.labeling.len(),
                got: labeling.len(),
            });
        }
        Ok(Presentation {
            labeling,
            ..self.clone()
        })
    }

    /// Same presentation with its universal relations replaced.
    pub fn with_universals(&self, universals: Vec<UniversalRelation>) -> Presentation {
        Presentation {
            universals,
            ..self.clone()
        }
    }

    /// One relation `x^{g^{n}} = x` per generator, `n` the label of its edge.
    pub fn power_relations(&self) -> Vec<UniversalRelation> {
        self.generators
            .iter()
            .map(|g| {
                let n = self.labeling.get(self.edge_of(g.id));
                let w = power_word(g.id, n as i64).expect("labels are positive");
                UniversalRelation::new(w).expect("power words are non-empty")
            })
            .collect()
    }

    /// Original universals, then the secondaries of the primaries, then the
    /// power relations, with exact duplicates removed. Idempotent.
    pub fn expand_relations(&self) -> Presentation {
        let mut seen = HashSet::new();
        let universals = self
            .universals
            .iter()
            .cloned()
            .chain(self.primaries.iter().filter_map(secondary_of))
            .chain(self.power_relations())
            .filter(|r| seen.insert(r.clone()))
            .collect();
        Presentation {
            universals,
            ..self.clone()
        }
    }

    /// Renders in the line-oriented presentation file format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        writeln!(f, "gens: {}", names.join(" "))?;
        let edges: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, self.edge_of(g.id) + 1))
            .collect();
        writeln!(f, "edges: {}", edges.join(" "))?;
        let labels: Vec<String> = self.labeling.labels().iter().map(u32::to_string).collect();
        writeln!(f, "labels: {}", labels.join(" "))?;
        for r in &self.primaries {
            writeln!(
                f,
                "rel {} : {} = {}",
                names[r.lhs.index()],
                r.word.display(&names),
                names[r.rhs.index()]
            )?;
        }
        for r in &self.universals {
            writeln!(f, "rel * : {}", r.word().display(&names))?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Presentation> {
        parse_presentation(s)
    }
}

/// Parses the presentation file format. Universal power relations are not
/// added here; see [`Presentation::expand_relations`].
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut names: Option<Vec<String>> = None;
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut labels: Option<Vec<i64>> = None;
    let mut rels: Vec<(usize, usize, &str)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("gens:") {
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for n in &list {
                let ok = n
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_alphabetic() || c == '_')
                    && n.chars().all(|c| c.is_alphanumeric() || c == '_');
                if !ok {
                    return Err(Error::syntax(
                        line_no,
                        indent + 1,
                        format!("bad generator name `{n}`"),
                    ));
                }
            }
            names = Some(list);
        } else if let Some(rest) = trimmed.strip_prefix("edges:") {
            let offset = indent + (trimmed.len() - rest.len());
            for (col, tok) in tokens_with_columns(rest) {
                let (name, idx) = tok.split_once(':').ok_or_else(|| {
                    Error::syntax(
                        line_no,
                        offset + col + 1,
                        format!("expected name:edge, found `{tok}`"),
                    )
                })?;
                let idx: usize = idx.parse().map_err(|_| {
                    Error::syntax(line_no, offset + col + 1, format!("bad edge index `{idx}`"))
                })?;
                if idx == 0 {
                    return Err(Error::syntax(
                        line_no,
                        offset + col + 1,
                        "edge indices are 1-based",
                    ));
                }
                edges.push((name.to_string(), idx - 1, line_no));
            }
        } else if let Some(rest) = trimmed.strip_prefix("labels:") {
            let offset = indent + (trimmed.len() - rest.len());
            let mut ls = Vec::new();
            for (col, tok) in tokens_with_columns(rest) {
                let v: i64 = tok.parse().map_err(|_| {
                    Error::syntax(line_no, offset + col + 1, format!("bad label `{tok}`"))
                })?;
                if v < 1 {
                    return Err(Error::BadLabel(v));
                }
                ls.push(v);
            }
            labels = Some(ls);
        } else if trimmed.starts_with("rel") && trimmed[3..].starts_with(char::is_whitespace) {
            rels.push((line_no, indent + 4, &trimmed[3..]));
        } else {
            return Err(Error::syntax(
                line_no,
                indent + 1,
                format!("unrecognised line `{trimmed}`"),
            ));
        }
    }

    let names = names.ok_or_else(|| Error::syntax(1, 1, "missing `gens:` line"))?;
    let labeling =
        EdgeLabeling::new(labels.ok_or_else(|| Error::syntax(1, 1, "missing `labels:` line"))?)?;

    let mut edge_of: Vec<Option<usize>> = vec![None; names.len()];
    for (name, idx, _) in edges {
        let i = names
            .iter()
            .position(|n| *n == name)
            .ok_or(Error::UnknownGenerator(name.clone()))?;
        if idx >= labeling.len() {
            return Err(Error::EdgeOutOfRange {
                index: idx + 1,
                edges: labeling.len(),
            });
        }
        edge_of[i] = Some(idx);
    }
    let edge_of = edge_of
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| Error::MissingEdge(names[i].clone())))
        .collect::<Result<Vec<_>>>()?;

    let lookup = |s: &str| {
        names
            .iter()
            .position(|n| n == s)
            .map(|i| Gen(i as u32))
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    };
    let relocate = |line: usize, base: usize| {
        move |e: Error| match e {
            Error::Syntax {
                column, message, ..
            } => Error::Syntax {
                line,
                column: base + column,
                message,
            },
            other => other,
        }
    };

    let mut primaries = Vec::new();
    let mut universals = Vec::new();
    for (line_no, col, body) in rels {
        let (head, tail) = body
            .split_once(':')
            .ok_or_else(|| Error::syntax(line_no, col, "expected `:` in relation"))?;
        let head = head.trim();
        let tail_col = col + head.len() + 2;
        if head == "*" {
            let w = parse_word(tail, &names).map_err(relocate(line_no, tail_col))?;
            if let Some(r) = UniversalRelation::new(w) {
                universals.push(r);
            }
        } else {
            let lhs = lookup(head)?;
            let (word, rhs) = tail.rsplit_once('=').ok_or_else(|| {
                Error::syntax(line_no, tail_col, "primary relation needs `= <gen>`")
            })?;
            let word = parse_word(word, &names).map_err(relocate(line_no, tail_col))?;
            let rhs = lookup(rhs.trim())?;
            primaries.push(PrimaryRelation { lhs, word, rhs });
        }
    }

    Presentation::new(names, edge_of, labeling, primaries, universals)
}

fn tokens_with_columns(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_three_generators() {
        let p: Presentation = "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\nrel * : a b c'\n"
            .parse()
            .unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.universals().len(), 1);
        assert!(p.primaries().is_empty());
        assert_eq!(p.labeling().labels(), &[3, 3, 2]);
    }

    #[test]
    fn parse_free_one_generator() {
        let p = parse_presentation("gens: a\nedges: a:1\nlabels: 5\n").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.universals().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_presentation("gens: a b\nedges: a:1 b:2\nlabels: 0 2\n"),
            Err(Error::BadLabel(0))
        );
        assert_eq!(
            parse_presentation("gens: a b\nedges: a:1\nlabels: 2\n"),
            Err(Error::MissingEdge("b".into()))
        );
        assert!(matches!(
            parse_presentation("gens: a\nedges: a:1\nlabels: 2\nrel * : a q\n"),
            Err(Error::UnknownGenerator(_))
        ));
        match parse_presentation("gens: a\nedges: a:1\nlabels: 2\nrel * : a (a\n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_presentation("gens: a\nedges: a:1\nlabels: 2\nfoo\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 1)),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_primary_and_comments() {
        let p = parse_presentation(
            "# comment\ngens: a b c\nedges: a:1 b:1 c:1\nlabels: 3\nrel a : b = c  # crossing\n",
        )
        .unwrap();
        assert_eq!(p.primaries().len(), 1);
        let r = &p.primaries()[0];
        assert_eq!((r.lhs, r.rhs), (Gen(0), Gen(2)));
    }

    #[test]
    fn secondary_examples() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let w = |s: &str| parse_word(s, &names).unwrap();
        let r = PrimaryRelation {
            lhs: Gen(0),
            word: w("b"),
            rhs: Gen(2),
        };
        assert_eq!(secondary_of(&r).unwrap().word(), &w("b' a b c'"));
        let r = PrimaryRelation {
            lhs: Gen(0),
            word: GroupWord::empty(),
            rhs: Gen(1),
        };
        assert_eq!(secondary_of(&r).unwrap().word(), &w("a b'"));
        let r = PrimaryRelation {
            lhs: Gen(0),
            word: w("a"),
            rhs: Gen(0),
        };
        assert!(secondary_of(&r).is_none());
    }

    #[test]
    fn power_relation_words() {
        let p = parse_presentation("gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\n").unwrap();
        let words: Vec<String> = p
            .power_relations()
            .iter()
            .map(|r| r.word().display(&p.names()).to_string())
            .collect();
        assert_eq!(words, ["a a a", "b b b", "c c"]);

        let p = parse_presentation("gens: a\nedges: a:1\nlabels: 1\n").unwrap();
        assert_eq!(p.power_relations()[0].word().len(), 1);
    }

    #[test]
    fn expansion_counts_and_idempotence() {
        let p =
            parse_presentation("gens: a b\nedges: a:1 b:2\nlabels: 2 2\nrel a : b = a\n").unwrap();
        let e = p.expand_relations();
        assert_eq!(e.primaries().len(), 1);
        assert_eq!(e.universals().len(), 3);
        assert_eq!(e.expand_relations(), e);

        let free = parse_presentation("gens: a\nedges: a:1\nlabels: 7\n").unwrap();
        assert_eq!(free.expand_relations().universals().len(), 1);
    }

    #[test]
    fn text_round_trip() {
        let src = "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\nrel a : b = c\nrel * : a b c'\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}
