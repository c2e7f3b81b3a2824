//! Completed Cayley graphs of finite quandles and the analyses run on them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Gen, GroupWord, Letter, Sign};

/// Cayley graph of a finite quandle: every generator acts as a permutation of
/// `0..size`, and each generator has a basepoint vertex carrying its loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    names: Vec<String>,
    edge_of: Vec<usize>,
    labels: Vec<u32>,
    actions: Vec<Vec<u32>>,
    inverses: Vec<Vec<u32>>,
    basepoints: Vec<u32>,
}

/// An orbit of the generator actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Graph edges (0-based) whose generators have basepoints here.
    pub edges: Vec<usize>,
    pub members: Vec<u32>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl CayleyGraph {
    pub fn from_parts(
        names: Vec<String>,
        edge_of: Vec<usize>,
        labels: Vec<u32>,
        actions: Vec<Vec<u32>>,
        basepoints: Vec<u32>,
    ) -> Result<CayleyGraph> {
        let g = names.len();
        if actions.len() != g || basepoints.len() != g || edge_of.len() != g {
            return Err(Error::Invalid("generator data length mismatch".into()));
        }
        let n = actions.first().map_or(0, Vec::len);
        let mut inverses = Vec::with_capacity(g);
        for act in &actions {
            if act.len() != n {
                return Err(Error::Invalid("actions of unequal length".into()));
            }
            let mut inv = vec![u32::MAX; n];
            for (v, &t) in act.iter().enumerate() {
                let slot = inv
                    .get_mut(t as usize)
                    .ok_or_else(|| Error::Invalid(format!("target {t} out of range")))?;
                if *slot != u32::MAX {
                    return Err(Error::Invalid("action is not a bijection".into()));
                }
                *slot = v as u32;
            }
            inverses.push(inv);
        }
        if basepoints.iter().any(|&b| b as usize >= n) {
            return Err(Error::Invalid("basepoint out of range".into()));
        }
        if edge_of.iter().any(|&e| e >= labels.len()) {
            return Err(Error::Invalid("edge index out of range".into()));
        }
        Ok(CayleyGraph {
            names,
            edge_of,
            labels,
            actions,
            inverses,
            basepoints,
        })
    }

    pub fn size(&self) -> usize {
        self.actions.first().map_or(0, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Gen(i as u32))
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn edge_of(&self, g: Gen) -> usize {
        self.edge_of[g.index()]
    }

    pub fn basepoint(&self, g: Gen) -> u32 {
        self.basepoints[g.index()]
    }

    /// Forward action (`v ▷ g`) of one generator, as a permutation.
    pub fn action(&self, g: Gen) -> &[u32] {
        &self.actions[g.index()]
    }

    pub fn inverse_action(&self, g: Gen) -> &[u32] {
        &self.inverses[g.index()]
    }

    pub fn apply(&self, v: u32, l: Letter) -> u32 {
        match l.sign {
            Sign::Pos => self.actions[l.gen.index()][v as usize],
            Sign::Neg => self.inverses[l.gen.index()][v as usize],
        }
    }

    pub fn apply_word(&self, v: u32, w: &[Letter]) -> u32 {
        w.iter().fold(v, |v, &l| self.apply(v, l))
    }

    /// Permutation induced by a word: `v ↦ v^w`.
    pub fn word_permutation(&self, w: &GroupWord) -> Vec<u32> {
        (0..self.size() as u32)
            .map(|v| self.apply_word(v, w.letters()))
            .collect()
    }

    /// Swaps the images of `u` and `v` under `g`. Used for fault injection.
    pub fn swap_images(&mut self, g: Gen, u: u32, v: u32) {
        let act = &mut self.actions[g.index()];
        act.swap(u as usize, v as usize);
        let (tu, tv) = (act[u as usize], act[v as usize]);
        self.inverses[g.index()][tu as usize] = u;
        self.inverses[g.index()][tv as usize] = v;
    }

    /// Orbits under all generator actions, ordered by least member.
    pub fn components(&self) -> Vec<Component> {
        let n = self.size();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Component> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s as u32];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i] as usize;
                i += 1;
                for g in 0..self.actions.len() {
                    for t in [self.actions[g][v], self.inverses[g][v]] {
                        if comp[t as usize] == usize::MAX {
                            comp[t as usize] = id;
                            members.push(t);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(Component {
                edges: Vec::new(),
                members,
            });
        }
        for (g, &b) in self.basepoints.iter().enumerate() {
            let c = &mut out[comp[b as usize]];
            if !c.edges.contains(&self.edge_of[g]) {
                c.edges.push(self.edge_of[g]);
            }
        }
        for c in &mut out {
            c.edges.sort_unstable();
        }
        out
    }

    /// Size of the component holding each edge's generators (`None` when the
    /// edge has no generator).
    pub fn edge_component_sizes(&self) -> Vec<Option<usize>> {
        let mut sizes = vec![None; self.labels.len()];
        for c in self.components() {
            for &e in &c.edges {
                sizes[e] = Some(c.size());
            }
        }
        sizes
    }

    /// For every element, a generator and a word reaching it from that
    /// generator's basepoint (breadth-first, generator order).
    pub fn spanning_words(&self) -> Vec<Option<(Gen, GroupWord)>> {
        let n = self.size();
        let mut parent: Vec<Option<(u32, Letter)>> = vec![None; n];
        let mut root: Vec<Option<Gen>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (g, &b) in self.basepoints.iter().enumerate() {
            if root[b as usize].is_none() {
                root[b as usize] = Some(Gen(g as u32));
                queue.push_back(b);
            }
        }
        while let Some(v) = queue.pop_front() {
            for g in 0..self.actions.len() {
                for l in [Letter::pos(Gen(g as u32)), Letter::neg(Gen(g as u32))] {
                    let t = self.apply(v, l);
                    if root[t as usize].is_none() {
                        root[t as usize] = root[v as usize];
                        parent[t as usize] = Some((v, l));
                        queue.push_back(t);
                    }
                }
            }
        }
        (0..n)
            .map(|v| {
                let g = root[v]?;
                let mut letters = Vec::new();
                let mut cur = v as u32;
                while let Some((p, l)) = parent[cur as usize] {
                    letters.push(l);
                    cur = p;
                }
                letters.reverse();
                Some((g, GroupWord::from_letters(letters)))
            })
            .collect()
    }

    /// Full operation table: `table.op(y, x) = y ▷ x`.
    ///
    /// The column of `x = b^w` is `w̄ b w` acting on the right; columns are
    /// filled along a breadth-first tree by conjugating the parent column.
    pub fn quandle_table(&self) -> Result<QuandleTable> {
        let n = self.size();
        let mut cols: Vec<Option<Vec<u32>>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (g, &b) in self.basepoints.iter().enumerate() {
            if cols[b as usize].is_none() {
                cols[b as usize] = Some(self.actions[g].clone());
                queue.push_back(b);
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in 0..self.actions.len() {
                for l in [Letter::pos(Gen(g as u32)), Letter::neg(Gen(g as u32))] {
                    let t = self.apply(x, l);
                    if cols[t as usize].is_some() {
                        continue;
                    }
                    let parent = cols[x as usize].as_ref().expect("visited");
                    let col: Vec<u32> = (0..n as u32)
                        .map(|y| self.apply(parent[self.apply(y, l.inverse()) as usize], l))
                        .collect();
                    cols[t as usize] = Some(col);
                    queue.push_back(t);
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for (x, c) in cols.into_iter().enumerate() {
            let c = c.ok_or_else(|| {
                Error::Invalid(format!("element {x} is not reachable from any basepoint"))
            })?;
            data.extend(c);
        }
        Ok(QuandleTable { n, data })
    }

    /// Checks quandle axioms, relations and the labeled order condition.
    pub fn verify(&self, p: &Presentation, opts: VerifyOptions) -> VerifyReport {
        let mut report = VerifyReport::default();
        let n = self.size();

        for r in p.primaries() {
            let s = self.basepoint(r.lhs);
            let t = self.basepoint(r.rhs);
            if self.apply_word(s, r.word.letters()) != t {
                report.violations.push(Violation::Primary {
                    relation: format!(
                        "{}^({}) = {}",
                        self.names[r.lhs.index()],
                        r.word.display(&self.names),
                        self.names[r.rhs.index()]
                    ),
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for r in p.universals().iter().cloned().chain(p.power_relations()) {
            if !seen.insert(r.clone()) {
                continue;
            }
            if let Some(v) = (0..n as u32).find(|&v| self.apply_word(v, r.word().letters()) != v) {
                report.violations.push(Violation::Universal {
                    word: r.word().display(&self.names).to_string(),
                    vertex: v,
                });
            }
        }
        if n > opts.table_limit {
            report.skipped.push(format!(
                "operation-table checks skipped: size {n} exceeds {}",
                opts.table_limit
            ));
            for (g, &b) in self.basepoints.iter().enumerate() {
                if self.actions[g][b as usize] != b {
                    report
                        .violations
                        .push(Violation::Idempotence { element: b });
                }
            }
            self.generator_order_checks(&mut report);
            return report;
        }
        let table = match self.quandle_table() {
            Ok(t) => t,
            Err(e) => {
                report
                    .violations
                    .push(Violation::Unreachable(e.to_string()));
                return report;
            }
        };
        for x in 0..n as u32 {
            if table.op(x, x) != x {
                report
                    .violations
                    .push(Violation::Idempotence { element: x });
            }
            if !is_permutation(table.column(x)) {
                report
                    .violations
                    .push(Violation::RightInvertibility { element: x });
            }
        }
        if n <= opts.exhaustive_limit {
            'outer: for x in 0..n as u32 {
                for y in 0..n as u32 {
                    let xy = table.op(x, y);
                    for z in 0..n as u32 {
                        if table.op(xy, z) != table.op(table.op(x, z), table.op(y, z)) {
                            report
                                .violations
                                .push(Violation::Distributivity { x, y, z });
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            // A3 for generator columns implies it for all columns, since every
            // column is a conjugate of a generator column along a word.
            let bases: Vec<u32> = self.basepoints.clone();
            'outer2: for &z in &bases {
                for x in 0..n as u32 {
                    for y in 0..n as u32 {
                        let xy = table.op(x, y);
                        if table.op(xy, z) != table.op(table.op(x, z), table.op(y, z)) {
                            report
                                .violations
                                .push(Violation::Distributivity { x, y, z });
                            break 'outer2;
                        }
                    }
                }
            }
            report.skipped.push(format!(
                "distributivity checked against generator columns only (size {n})"
            ));
        }

        let comps = self.components();
        let mut comp_of = vec![0usize; n];
        for (i, c) in comps.iter().enumerate() {
            for &m in &c.members {
                comp_of[m as usize] = i;
            }
        }
        for y in 0..n as u32 {
            for &e in &comps[comp_of[y as usize]].edges {
                let order = self.labels[e];
                let col = table.column(y);
                let ok = (0..n).all(|x| {
                    let mut v = x as u32;
                    for _ in 0..order {
                        v = col[v as usize];
                    }
                    v == x as u32
                });
                if !ok {
                    report.violations.push(Violation::Order {
                        element: y,
                        edge: e,
                        label: order,
                    });
                }
            }
        }
        report
    }

    fn generator_order_checks(&self, report: &mut VerifyReport) {
        for (g, act) in self.actions.iter().enumerate() {
            let order = self.labels[self.edge_of[g]];
            let ok = (0..act.len()).all(|x| {
                let mut v = x as u32;
                for _ in 0..order {
                    v = act[v as usize];
                }
                v == x as u32
            });
            if !ok {
                report.violations.push(Violation::Order {
                    element: self.basepoints[g],
                    edge: self.edge_of[g],
                    label: order,
                });
            }
        }
    }

    /// Breadth-first canonical code of the based, generator-labeled graph
    /// reachable from `base`. Two based graphs are isomorphic (respecting
    /// labels) exactly when their codes agree.
    pub fn canonical_code(&self, base: u32) -> String {
        let letters: Vec<Letter> = (0..self.actions.len())
            .map(|g| Letter::pos(Gen(g as u32)))
            .collect();
        self.canonical_code_with(base, &letters)
    }

    /// Canonical code where position `i` follows `letters[i]`; lets callers
    /// permute generators or reverse their orientation.
    pub fn canonical_code_with(&self, base: u32, letters: &[Letter]) -> String {
        canonical_code(base, letters.len(), |v, i| self.apply(v, letters[i]))
    }
}

/// Breadth-first canonical code over an abstract action.
pub fn canonical_code(base: u32, gens: usize, act: impl Fn(u32, usize) -> u32) -> String {
    let mut number: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    let mut order = vec![base];
    number.insert(base, 0);
    let mut code = String::new();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for g in 0..gens {
            let t = act(v, g);
            let next = order.len() as u32;
            let k = *number.entry(t).or_insert_with(|| {
                order.push(t);
                next
            });
            let _ = write!(code, "{k},");
        }
        code.push(';');
    }
    format!("{}|{}", order.len(), code)
}

fn is_permutation(col: &[u32]) -> bool {
    let mut seen = vec![false; col.len()];
    col.iter().all(|&t| {
        let s = seen.get_mut(t as usize);
        match s {
            Some(s) if !*s => {
                *s = true;
                true
            }
            _ => false,
        }
    })
}

/// Operation table of a finite quandle, stored column-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleTable {
    n: usize,
    data: Vec<u32>,
}

impl QuandleTable {
    pub fn size(&self) -> usize {
        self.n
    }

    /// `y ▷ x`.
    pub fn op(&self, y: u32, x: u32) -> u32 {
        self.data[x as usize * self.n + y as usize]
    }

    /// The point symmetry `S_x`.
    pub fn column(&self, x: u32) -> &[u32] {
        &self.data[x as usize * self.n..(x as usize + 1) * self.n]
    }

    /// `y ▷⁻¹ x`.
    pub fn op_inv(&self, y: u32, x: u32) -> u32 {
        self.column(x)
            .iter()
            .position(|&t| t == y)
            .expect("columns are permutations") as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Run the O(n³) distributivity check up to this size.
    pub exhaustive_limit: usize,
    /// Build the full operation table up to this size.
    pub table_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 400,
            table_limit: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Idempotence {
        element: u32,
    },
    RightInvertibility {
        element: u32,
    },
    Distributivity {
        x: u32,
        y: u32,
        z: u32,
    },
    Primary {
        relation: String,
    },
    Universal {
        word: String,
        vertex: u32,
    },
    Order {
        element: u32,
        edge: usize,
        label: u32,
    },
    Unreachable(String),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Idempotence { element } => write!(f, "A1 fails at {element}"),
            Violation::RightInvertibility { element } => {
                write!(f, "A2 fails: column {element} is not a permutation")
            }
            Violation::Distributivity { x, y, z } => {
                write!(f, "A3 fails at x={x} y={y} z={z}")
            }
            Violation::Primary { relation } => write!(f, "primary relation {relation} fails"),
            Violation::Universal { word, vertex } => {
                write!(f, "universal relation x^({word}) = x fails at {vertex}")
            }
            Violation::Order {
                element,
                edge,
                label,
            } => write!(
                f,
                "S_{element} does not have order dividing {label} (edge {})",
                edge + 1
            ),
            Violation::Unreachable(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
    pub skipped: Vec<String>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
