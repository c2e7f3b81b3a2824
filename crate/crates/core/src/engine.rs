//! Winker enumeration: builds the Cayley graph of a finitely presented
//! quandle by tracing relations and collapsing coincidences.
//!
//! The working graph stores, per generator, dense forward and backward
//! arrays indexed by vertex. Coincidences are resolved with a union-find
//! forest whose representative is always the lower creation index.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::CayleyGraph;
use crate::presentation::Presentation;
use crate::word::{Gen, Letter, Sign};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_vertices: usize,
    pub max_steps: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_vertices: 1_000_000,
            max_steps: 1_000_000_000,
        }
    }
}

impl EnumerationLimits {
    pub fn new(max_vertices: usize, max_steps: u64) -> EnumerationLimits {
        assert!(max_vertices > 0 && max_steps > 0, "limits must be positive");
        EnumerationLimits {
            max_vertices,
            max_steps,
        }
    }

    pub fn with_max_vertices(self, max_vertices: usize) -> EnumerationLimits {
        EnumerationLimits::new(max_vertices, self.max_steps)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub vertices_created: usize,
    pub merges: usize,
    pub relations_traced: u64,
    pub steps: u64,
    pub live_vertices: usize,
}

impl fmt::Display for EnumerationStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertices_created={} merges={} relations_traced={} steps={} live={}",
            self.vertices_created,
            self.merges,
            self.relations_traced,
            self.steps,
            self.live_vertices
        )
    }
}

/// Which limit stopped an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Vertices,
    Steps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Completed(CayleyGraph),
    LimitExceeded(LimitKind),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub outcome: Outcome,
    pub stats: EnumerationStats,
}

impl EnumerationResult {
    pub fn graph(&self) -> Option<&CayleyGraph> {
        match &self.outcome {
            Outcome::Completed(g) => Some(g),
            Outcome::LimitExceeded(_) => None,
        }
    }

    pub fn into_graph(self) -> Option<CayleyGraph> {
        match self.outcome {
            Outcome::Completed(g) => Some(g),
            Outcome::LimitExceeded(_) => None,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self.outcome, Outcome::Completed(_))
    }

    pub fn size(&self) -> Option<usize> {
        self.graph().map(CayleyGraph::size)
    }

    /// `key=value` lines: outcome, final_size, vertices_created, merges, ...
    pub fn stats_lines(&self) -> Vec<(String, String)> {
        let outcome = match &self.outcome {
            Outcome::Completed(_) => "completed".to_string(),
            Outcome::LimitExceeded(LimitKind::Vertices) => "limit_exceeded:vertices".to_string(),
            Outcome::LimitExceeded(LimitKind::Steps) => "limit_exceeded:steps".to_string(),
        };
        let mut out = vec![("outcome".to_string(), outcome)];
        if let Some(g) = self.graph() {
            out.push(("final_size".into(), g.size().to_string()));
            out.push(("components".into(), g.components().len().to_string()));
        }
        out.push((
            "vertices_created".into(),
            self.stats.vertices_created.to_string(),
        ));
        out.push(("merges".into(), self.stats.merges.to_string()));
        out.push((
            "relations_traced".into(),
            self.stats.relations_traced.to_string(),
        ));
        out.push(("steps".into(), self.stats.steps.to_string()));
        out.push(("live_vertices".into(), self.stats.live_vertices.to_string()));
        out
    }
}

/// Raised internally when a limit is hit mid-trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitHit(pub LimitKind);

/// The partial Cayley graph under construction.
#[derive(Debug, Clone)]
pub struct WorkingGraph {
    fwd: Vec<Vec<u32>>,
    bwd: Vec<Vec<u32>>,
    parent: Vec<u32>,
    queue: VecDeque<u32>,
    limits: EnumerationLimits,
    stats: EnumerationStats,
}

impl WorkingGraph {
    pub fn new(generators: usize, limits: EnumerationLimits) -> WorkingGraph {
        WorkingGraph {
            fwd: vec![Vec::new(); generators],
            bwd: vec![Vec::new(); generators],
            parent: Vec::new(),
            queue: VecDeque::new(),
            limits,
            stats: EnumerationStats::default(),
        }
    }

    pub fn stats(&self) -> EnumerationStats {
        self.stats
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn live_count(&self) -> usize {
        self.stats.live_vertices
    }

    pub fn is_live(&self, v: u32) -> bool {
        self.parent[v as usize] == v
    }

    pub fn new_vertex(&mut self) -> Result<u32, LimitHit> {
        if self.parent.len() >= self.limits.max_vertices {
            return Err(LimitHit(LimitKind::Vertices));
        }
        let v = self.parent.len() as u32;
        self.parent.push(v);
        for (f, b) in self.fwd.iter_mut().zip(self.bwd.iter_mut()) {
            f.push(NONE);
            b.push(NONE);
        }
        self.stats.vertices_created += 1;
        self.stats.live_vertices += 1;
        Ok(v)
    }

    fn step(&mut self) -> Result<(), LimitHit> {
        self.stats.steps += 1;
        if self.stats.steps > self.limits.max_steps {
            Err(LimitHit(LimitKind::Steps))
        } else {
            Ok(())
        }
    }

    /// Image of `v` along one letter, if defined.
    pub fn image(&self, v: u32, l: Letter) -> Option<u32> {
        let t = match l.sign {
            Sign::Pos => self.fwd[l.gen.index()][v as usize],
            Sign::Neg => self.bwd[l.gen.index()][v as usize],
        };
        (t != NONE).then_some(t)
    }

    /// Adds the edge `v --l--> w`; both slots must be empty.
    pub fn define(&mut self, v: u32, l: Letter, w: u32) {
        let g = l.gen.index();
        let (from, to) = match l.sign {
            Sign::Pos => (v, w),
            Sign::Neg => (w, v),
        };
        debug_assert_eq!(self.fwd[g][from as usize], NONE);
        debug_assert_eq!(self.bwd[g][to as usize], NONE);
        self.fwd[g][from as usize] = to;
        self.bwd[g][to as usize] = from;
    }

    pub fn find(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Records that `u` and `v` are the same element; the higher index dies
    /// and is queued for collapse.
    pub fn coincidence(&mut self, u: u32, v: u32) {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.stats.merges += 1;
        self.stats.live_vertices -= 1;
        self.queue.push_back(kill);
    }

    pub fn pending(&self) -> usize {
        self.queue.len()
    }

    /// Traces `word` from `start`, creating vertices as needed, and forces
    /// the path to end at `target` (or back at `start`). Returns the number
    /// of coincidences queued.
    pub fn trace(
        &mut self,
        start: u32,
        word: &[Letter],
        target: Option<u32>,
    ) -> Result<usize, LimitHit> {
        let before = self.queue.len();
        let start = self.find(start);
        let target = match target {
            Some(t) => self.find(t),
            None => start,
        };
        self.stats.relations_traced += 1;
        if word.is_empty() {
            self.coincidence(start, target);
            return Ok(self.queue.len() - before);
        }
        loop {
            let mut f = start;
            let mut i = 0;
            while i < word.len() {
                self.step()?;
                match self.image(f, word[i]) {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == word.len() {
                if f != target {
                    self.coincidence(f, target);
                }
                break;
            }
            let mut b = target;
            let mut j = word.len();
            while j > i {
                self.step()?;
                match self.image(b, word[j - 1].inverse()) {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                break;
            }
            if j == i + 1 {
                self.define(f, word[i], b);
                break;
            }
            let n = self.new_vertex()?;
            self.define(f, word[i], n);
        }
        Ok(self.queue.len() - before)
    }

    /// Processes queued coincidences to exhaustion.
    pub fn collapse(&mut self) -> Result<(), LimitHit> {
        let gens = self.fwd.len();
        while let Some(dead) = self.queue.pop_front() {
            let d = dead as usize;
            for g in 0..gens {
                let t = self.fwd[g][d];
                if t != NONE {
                    self.step()?;
                    self.fwd[g][d] = NONE;
                    if self.bwd[g][t as usize] == dead {
                        self.bwd[g][t as usize] = NONE;
                    }
                    let (r, s) = (self.find(dead), self.find(t));
                    self.join(r, g, s);
                }
                let s = self.bwd[g][d];
                if s != NONE {
                    self.step()?;
                    self.bwd[g][d] = NONE;
                    if self.fwd[g][s as usize] == dead {
                        self.fwd[g][s as usize] = NONE;
                    }
                    let (r, u) = (self.find(s), self.find(dead));
                    self.join(r, g, u);
                }
            }
        }
        Ok(())
    }

    /// Ensures `u --g--> v` between live vertices, queueing coincidences
    /// when either slot already holds something else.
    fn join(&mut self, u: u32, g: usize, v: u32) {
        let x = self.fwd[g][u as usize];
        if x != NONE {
            self.coincidence(x, v);
            return;
        }
        let y = self.bwd[g][v as usize];
        if y != NONE {
            self.coincidence(y, u);
            return;
        }
        self.fwd[g][u as usize] = v;
        self.bwd[g][v as usize] = u;
    }

    /// Walks `word` from `start` without defining anything.
    pub fn walk(&self, start: u32, word: &[Letter]) -> Option<u32> {
        word.iter().try_fold(start, |v, &l| self.image(v, l))
    }

    fn is_total(&self, v: u32) -> bool {
        let v = v as usize;
        self.fwd.iter().all(|f| f[v] != NONE) && self.bwd.iter().all(|b| b[v] != NONE)
    }

    /// Compacts live vertices (creation order) into a finished graph.
    fn finish(&self, p: &Presentation, basepoints: &[u32]) -> CayleyGraph {
        let n = self.parent.len();
        let mut index = vec![NONE; n];
        let mut next = 0u32;
        for (v, slot) in index.iter_mut().enumerate() {
            if self.parent[v] == v as u32 {
                *slot = next;
                next += 1;
            }
        }
        let actions = self
            .fwd
            .iter()
            .map(|f| {
                (0..n)
                    .filter(|&v| self.parent[v] == v as u32)
                    .map(|v| index[f[v] as usize])
                    .collect()
            })
            .collect();
        let root = |mut v: u32| {
            while self.parent[v as usize] != v {
                v = self.parent[v as usize];
            }
            v as usize
        };
        let bases = basepoints.iter().map(|&b| index[root(b)]).collect();
        CayleyGraph::from_parts(
            p.names(),
            p.edge_map().to_vec(),
            p.labeling().labels().to_vec(),
            actions,
            bases,
        )
        .expect("completed tables are consistent")
    }
}

/// Runs the full method on an (expanded) presentation:
/// one vertex per generator with its idempotence loop, primary relations
/// traced between basepoints, then a creation-order sweep tracing every
/// universal relation at every live vertex, collapsing after each trace.
pub fn enumerate(p: &Presentation, limits: EnumerationLimits) -> EnumerationResult {
    let mut run = Run::new(p, limits);
    let outcome = match run.execute() {
        Ok(()) => Outcome::Completed(run.graph.finish(p, &run.bases)),
        Err(LimitHit(kind)) => Outcome::LimitExceeded(kind),
    };
    let mut stats = run.graph.stats();
    stats.live_vertices = run.graph.live_count();
    EnumerationResult { outcome, stats }
}

struct Run<'p> {
    p: &'p Presentation,
    graph: WorkingGraph,
    bases: Vec<u32>,
    universals: Vec<Vec<Letter>>,
}

impl<'p> Run<'p> {
    fn new(p: &'p Presentation, limits: EnumerationLimits) -> Run<'p> {
        Run {
            p,
            graph: WorkingGraph::new(p.generator_count(), limits),
            bases: Vec::new(),
            universals: p
                .universals()
                .iter()
                .map(|u| u.word().letters().to_vec())
                .collect(),
        }
    }

    fn execute(&mut self) -> Result<(), LimitHit> {
        let g = self.p.generator_count();
        for _ in 0..g {
            let v = self.graph.new_vertex()?;
            self.bases.push(v);
        }
        for i in 0..g {
            let v = self.bases[i];
            self.graph.define(v, Letter::pos(Gen(i as u32)), v);
        }
        for r in self.p.primaries() {
            let (s, t) = (self.bases[r.lhs.index()], self.bases[r.rhs.index()]);
            self.graph.trace(s, r.word.letters(), Some(t))?;
            self.graph.collapse()?;
        }

        let mut pointer = 0u32;
        let mut dirty: Vec<u32> = Vec::new();
        loop {
            if let Some(v) = dirty.pop() {
                let v = self.graph.find(v);
                self.process(v)?;
                continue;
            }
            if (pointer as usize) < self.graph.vertex_count() {
                if self.graph.is_live(pointer) {
                    self.process(pointer)?;
                }
                pointer += 1;
                continue;
            }
            dirty = self.unverified()?;
            if dirty.is_empty() {
                return Ok(());
            }
        }
    }

    /// Traces every universal relation at `v`, then fills any undefined
    /// generator slot so the row becomes total.
    fn process(&mut self, v: u32) -> Result<(), LimitHit> {
        for k in 0..self.universals.len() {
            if !self.graph.is_live(v) {
                return Ok(());
            }
            self.graph.trace(v, &self.universals[k], None)?;
            self.graph.collapse()?;
        }
        for i in 0..self.p.generator_count() {
            for l in [Letter::pos(Gen(i as u32)), Letter::neg(Gen(i as u32))] {
                if !self.graph.is_live(v) {
                    return Ok(());
                }
                if self.graph.image(v, l).is_none() {
                    let n = self.graph.new_vertex()?;
                    self.graph.define(v, l, n);
                }
            }
        }
        Ok(())
    }

    /// Live vertices where some relation is not a closed loop or some
    /// generator slot is empty; primaries are re-checked at their basepoints.
    fn unverified(&mut self) -> Result<Vec<u32>, LimitHit> {
        let mut out = Vec::new();
        for v in 0..self.graph.vertex_count() as u32 {
            if !self.graph.is_live(v) {
                continue;
            }
            let ok = self.graph.is_total(v)
                && self
                    .universals
                    .iter()
                    .all(|w| self.graph.walk(v, w) == Some(v));
            if !ok {
                out.push(v);
            }
        }
        for r in self.p.primaries() {
            let s = self.graph.find(self.bases[r.lhs.index()]);
            let t = self.graph.find(self.bases[r.rhs.index()]);
            if self.graph.walk(s, r.word.letters()) != Some(t) {
                self.graph.trace(s, r.word.letters(), Some(t))?;
                self.graph.collapse()?;
                out.push(self.graph.find(s));
            }
        }
        out.sort_unstable();
        out.dedup();
        out.reverse();
        Ok(out)
    }
}
