//! Built-in graph families and the closed-form component models of G(k,m,n).

use crate::diagram::{Crossing, DiagramSpec, Incidence};
use crate::engine::{enumerate, EnumerationLimits};
use crate::error::{Error, Result};
use crate::presentation::{EdgeLabeling, Presentation, UniversalRelation};
use crate::word::{free_reduce, Gen, GroupWord, Letter, Sign};

/// Which struts a twist diagram carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Struts {
    /// Only `c`: the theta / handcuff graph G(k,m). Edges `a, b, c`.
    C,
    /// Both `c` and `d`: G(k,m,n). Edges `a, b, c, d, e, f`.
    CD,
}

/// Diagram of two horizontal strands joined by vertical struts, followed by
/// `k` half-twists (right-handed for `k > 0`), each strand closing up on its
/// own side.
///
/// Both strands run left to right and the struts point upwards. With both
/// struts, `e` and `f` are the top and bottom segments between them, and `a`,
/// `b` leave the right-hand strut through the twists.
pub fn twist_strut_diagram(k: i64, struts: Struts, labels: &[u32]) -> Result<DiagramSpec> {
    let (ea, eb, ec, ed, ee, ef) = match struts {
        Struts::CD => (0, 1, 2, Some(3), 4, 5),
        Struts::C => (0, 1, 2, None, 0, 1),
    };
    let edges = if ed.is_some() { 6 } else { 3 };
    if labels.len() != edges {
        return Err(Error::LabelCount {
            family: "twist".into(),
            expected: edges,
            got: labels.len(),
        });
    }
    let mut arc_edge: Vec<usize> = Vec::new();
    fn new_arc(arcs: &mut Vec<usize>, e: usize) -> usize {
        arcs.push(e);
        arcs.len() - 1
    }
    let inc = |arc, dir| Incidence { arc, dir };
    let (pos, neg) = (Sign::Pos, Sign::Neg);

    let c = new_arc(&mut arc_edge, ec);
    let e = new_arc(&mut arc_edge, ee);
    let f = new_arc(&mut arc_edge, ef);
    let mut vertices = Vec::new();
    let (mut top, mut bot) = match ed {
        Some(ed) => {
            let d = new_arc(&mut arc_edge, ed);
            let a0 = new_arc(&mut arc_edge, ea);
            let b0 = new_arc(&mut arc_edge, eb);
            vertices.push(vec![inc(e, pos), inc(a0, neg), inc(d, pos)]);
            vertices.push(vec![inc(f, pos), inc(d, neg), inc(b0, neg)]);
            (a0, b0)
        }
        None => (e, f),
    };

    let mut crossings = Vec::new();
    for _ in 0..k.unsigned_abs() {
        // the strand on top heads down, the one below heads up
        if k > 0 {
            let edge = arc_edge[bot];
            let out = new_arc(&mut arc_edge, edge);
            crossings.push(Crossing {
                sign: pos,
                over: top,
                under_in: bot,
                under_out: out,
            });
            (top, bot) = (out, top);
        } else {
            let edge = arc_edge[top];
            let out = new_arc(&mut arc_edge, edge);
            crossings.push(Crossing {
                sign: neg,
                over: bot,
                under_in: top,
                under_out: out,
            });
            (top, bot) = (bot, out);
        }
    }
    vertices.insert(0, vec![inc(top, pos), inc(e, neg), inc(c, pos)]);
    vertices.insert(1, vec![inc(bot, pos), inc(c, neg), inc(f, neg)]);
    DiagramSpec::new(arc_edge, crossings, vertices, EdgeLabeling::from(labels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Theta3,
    KT,
    H1,
    H2,
    DH,
    K4Planar,
    K4Knot,
    Gkmn,
    Gkm,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Theta3,
        Family::KT,
        Family::H1,
        Family::H2,
        Family::DH,
        Family::K4Planar,
        Family::K4Knot,
        Family::Gkmn,
        Family::Gkm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Theta3 => "theta3",
            Family::KT => "KT",
            Family::H1 => "H1",
            Family::H2 => "H2",
            Family::DH => "DH",
            Family::K4Planar => "K4planar",
            Family::K4Knot => "K4knot",
            Family::Gkmn => "Gkmn",
            Family::Gkm => "Gkm",
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Family::Theta3 | Family::KT | Family::H1 | Family::H2 | Family::Gkm => 3,
            _ => 6,
        }
    }

    pub fn is_exceptional(self) -> bool {
        !matches!(self, Family::Gkmn | Family::Gkm)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

struct Shipped {
    family: Family,
    text: &'static str,
    sha256: &'static str,
}

const SHIPPED: [Shipped; 7] = [
    Shipped {
        family: Family::Theta3,
        text: include_str!("../data/theta3.diagram"),
        sha256: "f2ae87fc56f5722fe8cc65e884a1e6e6cae9acf4719df019a7528beff20fce0d",
    },
    Shipped {
        family: Family::KT,
        text: include_str!("../data/KT.diagram"),
        sha256: "2d0f8aaa03e9455ef30507abecdeb08ba9c79f72059dd529fe50315ab665caae",
    },
    Shipped {
        family: Family::H1,
        text: include_str!("../data/H1.diagram"),
        sha256: "e9d9bf41011596467bafd4645048212d640c4323739ec31191b6f133ed5321a6",
    },
    Shipped {
        family: Family::H2,
        text: include_str!("../data/H2.diagram"),
        sha256: "535b74704eecfd9e0440fff4288d2d0bfff8397f881857a14508470e1c0e11f0",
    },
    Shipped {
        family: Family::DH,
        text: include_str!("../data/DH.diagram"),
        sha256: "1952fd6f59106e8d7251c76210ef699c5f205198ae48d22942d593fd0502d506",
    },
    Shipped {
        family: Family::K4Planar,
        text: include_str!("../data/K4planar.diagram"),
        sha256: "c1d0a7a1631f200e26c478c6b80c62b52355a5ed66f8e1af5fe4a03ca81eb758",
    },
    Shipped {
        family: Family::K4Knot,
        text: include_str!("../data/K4knot.diagram"),
        sha256: "4e483b5043c6c49b6fe30be3157f6e2d32f29ee0bd2ec09540f2dd4e1c97cf77",
    },
];

/// The shipped diagram of an exceptional graph, after checking its digest.
pub fn shipped_diagram(family: Family) -> Result<DiagramSpec> {
    use sha2::{Digest, Sha256};
    let s = SHIPPED
        .iter()
        .find(|s| s.family == family)
        .ok_or_else(|| Error::BadParameter(format!("{family} has no shipped diagram")))?;
    let digest = Sha256::digest(s.text.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != s.sha256 {
        return Err(Error::Checksum {
            name: format!("{family}.diagram"),
        });
    }
    s.text.parse()
}

/// A family member with its edge labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    /// Signed half-twist count (G(k,m,n) and G(k,m) only).
    pub k: i64,
    pub m: u32,
    pub n: u32,
    pub labels: EdgeLabeling,
}

impl FamilyParams {
    /// G(k,m,n) with N = (2,2,m,n,2,2).
    pub fn gkmn(k: i64, m: u32, n: u32) -> Result<FamilyParams> {
        FamilyParams::new(Family::Gkmn, Some(k), Some(m), Some(n), None)
    }

    /// G(k,m) with N = (2,2,m).
    pub fn gkm(k: i64, m: u32) -> Result<FamilyParams> {
        FamilyParams::new(Family::Gkm, Some(k), Some(m), None, None)
    }

    /// An exceptional graph with the given labels.
    pub fn exceptional(family: Family, labels: &[u32]) -> Result<FamilyParams> {
        let labels = labels.iter().map(|&l| l as i64).collect();
        FamilyParams::new(family, None, None, None, Some(labels))
    }

    /// Validates a parameter set. Exceptional graphs default to the labeling
    /// stored in their data file.
    pub fn new(
        family: Family,
        k: Option<i64>,
        m: Option<u32>,
        n: Option<u32>,
        labels: Option<Vec<i64>>,
    ) -> Result<FamilyParams> {
        let labels = match labels {
            Some(l) => Some(EdgeLabeling::new(l)?),
            None => None,
        };
        if family.is_exceptional() {
            if k.is_some() || m.is_some() || n.is_some() {
                return Err(Error::BadParameter(format!(
                    "{family} takes --labels, not --k/--m/--n"
                )));
            }
            let labels = match labels {
                Some(l) => l,
                None => shipped_diagram(family)?.labeling().clone(),
            };
            if labels.len() != family.edge_count() {
                return Err(Error::LabelCount {
                    family: family.name().into(),
                    expected: family.edge_count(),
                    got: labels.len(),
                });
            }
            return Ok(FamilyParams {
                family,
                k: 0,
                m: 0,
                n: 0,
                labels,
            });
        }
        let k = k.ok_or_else(|| Error::BadParameter(format!("{family} needs --k")))?;
        if k == 0 {
            return Err(Error::BadParameter("k must be nonzero".into()));
        }
        let m = m.ok_or_else(|| Error::BadParameter(format!("{family} needs --m")))?;
        let n = match family {
            Family::Gkmn => n.ok_or_else(|| Error::BadParameter("Gkmn needs --n".into()))?,
            _ => {
                if n.is_some() {
                    return Err(Error::BadParameter("Gkm takes no --n".into()));
                }
                1
            }
        };
        if m == 0 || n == 0 {
            return Err(Error::BadParameter("strut labels must be positive".into()));
        }
        let expected: Vec<u32> = match family {
            Family::Gkmn => vec![2, 2, m, n, 2, 2],
            _ => vec![2, 2, m],
        };
        if let Some(l) = labels {
            if l.labels() != expected.as_slice() {
                return Err(Error::BadParameter(format!(
                    "{family} labels are fixed by m and n to {expected:?}"
                )));
            }
        }
        Ok(FamilyParams {
            family,
            k,
            m,
            n,
            labels: EdgeLabeling::from(expected.as_slice()),
        })
    }
}

/// Diagram of a family member: the shipped file for exceptional graphs, the
/// twist-strut diagram for G(k,m,n) and G(k,m).
pub fn family_diagram(fp: &FamilyParams) -> Result<DiagramSpec> {
    match fp.family {
        Family::Gkmn => twist_strut_diagram(fp.k, Struts::CD, fp.labels.labels()),
        Family::Gkm => twist_strut_diagram(fp.k, Struts::C, fp.labels.labels()),
        f => shipped_diagram(f)?.with_labeling(fp.labels.clone()),
    }
}

/// Presentation of a family member (not yet expanded).
///
/// G(k,m,n) uses the reduced six-generator presentation on `a..f`; G(k,m)
/// is its reduction with `d`, `e`, `f` removed. Exceptional graphs use the
/// Wirtinger presentation of their shipped diagram.
pub fn family_presentation(fp: &FamilyParams) -> Result<Presentation> {
    match fp.family {
        Family::Gkmn => {
            let names = ["a", "b", "c", "d", "e", "f"];
            let w = |s: &str| word_in(s, &names, fp.k);
            Presentation::new(
                names.iter().map(|s| s.to_string()).collect(),
                (0..6).collect(),
                fp.labels.clone(),
                vec![],
                ["d e a", "b d f", "c K a e", "f c J a"]
                    .iter()
                    .filter_map(|s| UniversalRelation::new(w(s)))
                    .collect(),
            )
        }
        Family::Gkm => {
            let names = ["a", "b", "c"];
            let w = |s: &str| word_in(s, &names, fp.k);
            Presentation::new(
                names.iter().map(|s| s.to_string()).collect(),
                (0..3).collect(),
                fp.labels.clone(),
                vec![],
                ["c K", "b c J a"]
                    .iter()
                    .filter_map(|s| UniversalRelation::new(w(s)))
                    .collect(),
            )
        }
        _ => Ok(family_diagram(fp)?.wirtinger()),
    }
}

// Space-separated letters over `names`, with `K` standing for (ab)^k and `J`
// for (ab)^(k-1).
fn word_in(spec: &str, names: &[&str], k: i64) -> GroupWord {
    let g = |s: &str| Gen(names.iter().position(|n| *n == s).expect("known letter") as u32);
    let ab = GroupWord::from_letters([Letter::pos(g("a")), Letter::pos(g("b"))]);
    let mut letters = Vec::new();
    for tok in spec.split_whitespace() {
        match tok {
            "K" => letters.extend_from_slice(ab.pow(k).letters()),
            "J" => letters.extend_from_slice(ab.pow(k - 1).letters()),
            s => letters.push(Letter::pos(g(s))),
        }
    }
    free_reduce(letters)
}

/// `4kmn + 2km + 2kn`.
pub fn gkmn_size(k: u64, m: u64, n: u64) -> u64 {
    4 * k * m * n + 2 * k * m + 2 * k * n
}

/// `2km + 2k`.
pub fn gkm_size(k: u64, m: u64) -> u64 {
    2 * k * m + 2 * k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Qa,
    Qd,
}

/// Closed-form model of one component of the G(k,m,n) quandle, with the
/// actions of `a..f` (in that order) as permutations of its index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitComponent {
    pub kind: ComponentKind,
    pub k: u32,
    pub m: u32,
    pub n: u32,
    actions: Vec<Vec<u32>>,
}

impl ExplicitComponent {
    pub fn size(&self) -> usize {
        self.actions[0].len()
    }

    /// Index of `x_{p,q,r}` (Qa) or `y_{p,q}` (Qd, `r` ignored).
    pub fn index(&self, p: u32, q: u32, r: u32) -> u32 {
        match self.kind {
            ComponentKind::Qa => (p * self.m + q) * self.n + r,
            ComponentKind::Qd => p * self.m + q,
        }
    }

    /// Action of generator `g` (0 = a, …, 5 = f).
    pub fn action(&self, g: usize) -> &[u32] {
        &self.actions[g]
    }

    pub fn apply(&self, v: u32, g: usize) -> u32 {
        self.actions[g][v as usize]
    }

    /// Permutation of a word given as (generator, forward?) pairs.
    pub fn word_permutation(&self, word: &[(usize, bool)]) -> Vec<u32> {
        let inv: Vec<Vec<u32>> = self.actions.iter().map(|a| invert(a)).collect();
        (0..self.size() as u32)
            .map(|v| {
                word.iter().fold(v, |v, &(g, fwd)| {
                    if fwd {
                        self.actions[g][v as usize]
                    } else {
                        inv[g][v as usize]
                    }
                })
            })
            .collect()
    }

    pub fn canonical_code(&self, base: u32) -> String {
        crate::graph::canonical_code(base, 6, |v, g| self.apply(v, g))
    }
}

fn invert(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &t) in p.iter().enumerate() {
        inv[t as usize] = i as u32;
    }
    inv
}

fn modulo(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

/// The component of `a`: elements `x_{p,q,r}`, `0 ≤ p < k`, `q mod m`,
/// `r mod n`, with the layer index folded back at both ends.
pub fn build_explicit_qa(k: u32, m: u32, n: u32) -> ExplicitComponent {
    assert!(k >= 1 && m >= 1 && n >= 1, "parameters must be positive");
    let (ki, mi, ni) = (k as i64, m, n);
    let norm = |p: i64, q: i64, r: i64| -> u32 {
        let (p, q, r) = if p == -1 {
            (0, q, r)
        } else if p == ki {
            if ki % 2 == 0 {
                (ki - 1, q + 1, r + 1)
            } else {
                (ki - 1, q - 1, r - 1)
            }
        } else {
            (p, q, r)
        };
        ((p as u32) * mi + modulo(q, mi)) * ni + modulo(r, ni)
    };
    let mut actions = vec![Vec::new(); 6];
    for p in 0..ki {
        for q in 0..mi as i64 {
            for r in 0..ni as i64 {
                let even = p % 2 == 0;
                let (pa, pb) = if even { (p - 1, p + 1) } else { (p + 1, p - 1) };
                actions[0].push(norm(pa, -q, -r));
                actions[1].push(norm(pb, -q, -r));
                actions[2].push(norm(p, q + 1, r));
                actions[3].push(norm(p, q, r + 1));
                actions[4].push(norm(pa, -q, -r + 1));
                actions[5].push(norm(pb, -q, -r + 1));
            }
        }
    }
    ExplicitComponent {
        kind: ComponentKind::Qa,
        k,
        m,
        n,
        actions,
    }
}

/// The component of `d`: elements `y_{p,q}`, `0 ≤ p < 2k`, `q mod m`.
/// Stepping past either end of the `p` range shifts `q` down by one.
pub fn build_explicit_qd(k: u32, m: u32) -> ExplicitComponent {
    assert!(k >= 1 && m >= 1, "parameters must be positive");
    let top = 2 * k as i64;
    let norm = |p: i64, q: i64| -> u32 {
        let (p, q) = if p == top {
            (0, q - 1)
        } else if p == -1 {
            (top - 1, q - 1)
        } else {
            (p, q)
        };
        (p as u32) * m + modulo(q, m)
    };
    let mut actions = vec![Vec::new(); 6];
    for p in 0..top {
        for q in 0..m as i64 {
            let even = p % 2 == 0;
            let (pa, pb) = if even { (p + 1, p - 1) } else { (p - 1, p + 1) };
            let a = norm(pa, -q);
            let b = norm(pb, -q);
            actions[0].push(a);
            actions[1].push(b);
            actions[2].push(norm(p, q + 1));
            actions[3].push(norm(p, q));
            actions[4].push(a);
            actions[5].push(b);
        }
    }
    ExplicitComponent {
        kind: ComponentKind::Qd,
        k,
        m,
        n: 1,
        actions,
    }
}

/// Engine result for G(k,m,n) compared against the closed forms and the
/// explicit component models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub size: Option<usize>,
    pub component_sizes: Vec<Option<usize>>,
    pub size_matches: bool,
    pub components_match: bool,
    pub qa_matches: bool,
    pub qd_matches: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.size_matches && self.components_match && self.qa_matches && self.qd_matches
    }
}

pub fn oracle_check(k: u32, m: u32, n: u32, limits: EnumerationLimits) -> Result<OracleReport> {
    let fp = FamilyParams::gkmn(k as i64, m, n)?;
    let p = family_presentation(&fp)?.expand_relations();
    let r = enumerate(&p, limits);
    let mut report = OracleReport {
        k,
        m,
        n,
        size: r.size(),
        component_sizes: Vec::new(),
        size_matches: false,
        components_match: false,
        qa_matches: false,
        qd_matches: false,
    };
    let Some(g) = r.graph() else {
        return Ok(report);
    };
    let (k64, m64, n64) = (k as usize, m as usize, n as usize);
    report.size_matches = g.size() as u64 == gkmn_size(k as u64, m as u64, n as u64);
    report.component_sizes = g.edge_component_sizes();
    let kmn = k64 * m64 * n64;
    let want = [kmn, kmn, 2 * k64 * n64, 2 * k64 * m64, kmn, kmn];
    report.components_match = report
        .component_sizes
        .iter()
        .zip(want)
        .all(|(got, w)| *got == Some(w));
    report.qa_matches =
        g.canonical_code(g.basepoint(Gen(0))) == build_explicit_qa(k, m, n).canonical_code(0);
    report.qd_matches =
        g.canonical_code(g.basepoint(Gen(3))) == build_explicit_qd(k, m).canonical_code(0);
    Ok(report)
}
