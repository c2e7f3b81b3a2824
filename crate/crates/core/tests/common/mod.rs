#![allow(dead_code)]

use nquandle::diagram::DiagramSpec;
use nquandle::families::{shipped_diagram, twist_strut_diagram, Family, Struts};
use nquandle::graph::{CayleyGraph, QuandleTable};
use nquandle::presentation::{EdgeLabeling, Presentation};
use nquandle::word::{parse_word, Letter, Sign};
use nquandle::{enumerate, EnumerationLimits};

pub const LIMIT: usize = 200_000;

pub fn limits() -> EnumerationLimits {
    EnumerationLimits::default().with_max_vertices(LIMIT)
}

pub fn graph_of(p: &Presentation) -> Option<CayleyGraph> {
    enumerate(&p.expand_relations(), limits()).into_graph()
}

pub fn diagram_graph(d: &DiagramSpec) -> Option<CayleyGraph> {
    graph_of(&d.wirtinger())
}

fn labeled(f: Family, labels: &[u32]) -> DiagramSpec {
    shipped_diagram(f)
        .unwrap()
        .with_labeling(labels.into())
        .unwrap()
}

/// Small labeled diagrams used for the surgery identities.
pub fn diagram_battery() -> Vec<(&'static str, DiagramSpec)> {
    vec![
        ("theta3 (3,3,2)", labeled(Family::Theta3, &[3, 3, 2])),
        ("theta3 (4,3,2)", labeled(Family::Theta3, &[4, 3, 2])),
        ("H1 (3,2,2)", labeled(Family::H1, &[3, 2, 2])),
        ("DH (2,2,2,3,2,2)", labeled(Family::DH, &[2, 2, 2, 3, 2, 2])),
        (
            "K4planar (3,2,2,2,2,2)",
            labeled(Family::K4Planar, &[3, 2, 2, 2, 2, 2]),
        ),
        (
            "G(3,2) strut",
            twist_strut_diagram(3, Struts::C, &[2, 2, 2]).unwrap(),
        ),
        (
            "G(2,2,2) strut",
            twist_strut_diagram(2, Struts::CD, &[2, 2, 2, 2, 2, 2]).unwrap(),
        ),
    ]
}

fn size_of(d: &DiagramSpec) -> Result<usize, String> {
    diagram_graph(d)
        .map(|g| g.size())
        .ok_or_else(|| format!("limit of {LIMIT} vertices exceeded"))
}

fn relabel(d: &DiagramSpec, edge: usize, label: u32) -> DiagramSpec {
    let mut l = d.labeling().labels().to_vec();
    l[edge] = label;
    d.with_labeling(EdgeLabeling::from(&l[..])).unwrap()
}

/// Lowering any label to one of its divisors never increases the size.
pub fn check_divide(d: &DiagramSpec) -> Result<usize, String> {
    let full = size_of(d)?;
    let mut checks = 0;
    for e in 0..d.edge_count() {
        let n = d.labeling().get(e);
        for m in (1..n).filter(|&m| n.is_multiple_of(m)) {
            let small = size_of(&relabel(d, e, m))?;
            if small > full {
                return Err(format!("edge {e}: label {m} gives {small} > {full}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// With `n_e = 1`, deleting `e` removes exactly its component; with the
/// original labels the deletion is bounded by that.
pub fn check_delete(d: &DiagramSpec) -> Result<usize, String> {
    let g = diagram_graph(d).ok_or("limit exceeded")?;
    let sizes = g.edge_component_sizes();
    let mut checks = 0;
    for (e, ce) in sizes.iter().enumerate() {
        let (deleted, _) = d.delete_edge(e).map_err(|x| x.to_string())?;
        let after = size_of(&deleted)?;
        let ce = ce.ok_or("edge without generator")?;
        if after > g.size() - ce {
            return Err(format!("edge {e}: {after} > {} - {ce}", g.size()));
        }
        let one = relabel(d, e, 1);
        let g1 = diagram_graph(&one).ok_or("limit exceeded")?;
        let c1 = g1.edge_component_sizes()[e].ok_or("edge without generator")?;
        if after != g1.size() - c1 {
            return Err(format!(
                "edge {e}: n_e = 1 gives {after} != {} - {c1}",
                g1.size()
            ));
        }
        checks += 2;
    }
    Ok(checks)
}

/// Subdividing edge `e` adds one copy of its component, and every edge
/// keeps its own component.
pub fn check_subdivide(d: &DiagramSpec) -> Result<usize, String> {
    let g = diagram_graph(d).ok_or("limit exceeded")?;
    if g.components().len() != d.edge_count() {
        return Err(format!(
            "{} components for {} edges",
            g.components().len(),
            d.edge_count()
        ));
    }
    let sizes = g.edge_component_sizes();
    let mut checks = 0;
    for (e, ce) in sizes.iter().enumerate() {
        let (sub, report) = d.subdivide_edge(e).map_err(|x| x.to_string())?;
        let gs = diagram_graph(&sub).ok_or("limit exceeded")?;
        let ce = ce.ok_or("edge without generator")?;
        if gs.size() != g.size() + ce {
            return Err(format!("edge {e}: {} != {} + {ce}", gs.size(), g.size()));
        }
        if gs.components().len() != sub.edge_count() {
            return Err(format!("edge {e}: component count after subdivision"));
        }
        if report.duplicated_component != Some(e) {
            return Err(format!("edge {e}: report {report:?}"));
        }
        checks += 1;
    }
    Ok(checks)
}

pub const GKMN_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Word pairs that induce the same permutation in G(k,m,n).
pub fn relation_pairs(k: u32) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = Vec::new();
    let mut eq = |x: &str, y: &str| v.push((x.to_string(), y.to_string()));
    for w in ["d a d", "d' a d'", "d e", "e d'"] {
        eq("a", w);
    }
    for w in ["d b d", "d' b d'", "d f", "f d'"] {
        eq("b", w);
    }
    for w in ["d a b d'", "d' a b d", "e f"] {
        eq("a b", w);
    }
    let abk = format!("(a b)^{k}");
    eq(&abk, "c' d'");
    eq(&abk, &format!("(e f)^{k}"));
    eq("c d c' d'", "");
    for u in ["a", "b", "e", "f"] {
        for i in [-2i32, -1, 1, 2, 3] {
            eq(&format!("c^{i} {u}"), &format!("{u} c^{}", -i));
            eq(&format!("d^{i} {u}"), &format!("{u} d^{}", -i));
        }
    }
    v
}

/// First relation pair whose permutations differ on `g`.
pub fn check_relations(g: &CayleyGraph, k: u32) -> Result<usize, String> {
    let names: Vec<String> = GKMN_NAMES.iter().map(|s| s.to_string()).collect();
    let pairs = relation_pairs(k);
    for (x, y) in &pairs {
        let wx = parse_word(x, &names).map_err(|e| e.to_string())?;
        let wy = parse_word(y, &names).map_err(|e| e.to_string())?;
        if g.word_permutation(&wx) != g.word_permutation(&wy) {
            return Err(format!("x^({x}) != x^({y})"));
        }
    }
    Ok(pairs.len())
}

fn walk(t: &QuandleTable, images: &[u32], mut y: u32, word: &[Letter]) -> u32 {
    for l in word {
        let x = images[l.gen.index()];
        y = match l.sign {
            Sign::Pos => t.op(y, x),
            Sign::Neg => t.op_inv(y, x),
        };
    }
    y
}

fn relations_hold(t: &QuandleTable, p: &Presentation, images: &[u32], set: &[bool]) -> bool {
    let known = |w: &nquandle::word::GroupWord| w.generators().all(|g| set[g.index()]);
    for r in p.primaries() {
        if set[r.lhs.index()]
            && set[r.rhs.index()]
            && known(&r.word)
            && walk(t, images, images[r.lhs.index()], r.word.letters()) != images[r.rhs.index()]
        {
            return false;
        }
    }
    for u in p.universals() {
        if known(u.word())
            && (0..t.size() as u32).any(|x| walk(t, images, x, u.word().letters()) != x)
        {
            return false;
        }
    }
    true
}

fn search(
    t: &QuandleTable,
    p: &Presentation,
    order: &[usize],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
    depth: usize,
) -> bool {
    let set: Vec<bool> = (0..images.len())
        .map(|g| order[..depth].contains(&g))
        .collect();
    if !relations_hold(t, p, images, &set) {
        return false;
    }
    if depth == order.len() {
        return generates_all(t, images);
    }
    let g = order[depth];
    for &c in &candidates[g] {
        images[g] = c;
        if search(t, p, order, candidates, images, depth + 1) {
            return true;
        }
    }
    false
}

fn generates_all(t: &QuandleTable, images: &[u32]) -> bool {
    let n = t.size();
    let mut seen = vec![false; n];
    let mut stack: Vec<u32> = images.to_vec();
    for &y in images {
        seen[y as usize] = true;
    }
    while let Some(y) = stack.pop() {
        for &x in images {
            for z in [t.op(y, x), t.op_inv(y, x)] {
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    stack.push(z);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Searches for an automorphism of the quandle sending generator `g` into
/// the component of generator `target[g]`. Images are tried in `order`,
/// checking each defining relation as soon as its generators are placed.
pub fn find_automorphism(
    g: &CayleyGraph,
    p: &Presentation,
    target: &[usize],
    order: &[usize],
) -> Option<Vec<u32>> {
    let t = g.quandle_table().ok()?;
    let comps = g.components();
    let comp_of = |x: u32| {
        comps
            .iter()
            .find(|c| c.members.contains(&x))
            .unwrap()
            .members
            .clone()
    };
    let candidates: Vec<Vec<u32>> = target
        .iter()
        .map(|&h| comp_of(g.basepoint(nquandle::word::Gen(h as u32))))
        .collect();
    let mut images = vec![0; target.len()];
    search(&t, p, order, &candidates, &mut images, 0).then_some(images)
}
