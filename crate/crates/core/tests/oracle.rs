mod common;

use common::*;
use nquandle::families::{
    build_explicit_qa, build_explicit_qd, family_presentation, ExplicitComponent,
};
use nquandle::word::{parse_word, Gen, Letter, Sign};
use nquandle::FamilyParams;

fn gkmn(k: u32, m: u32, n: u32) -> (nquandle::Presentation, nquandle::CayleyGraph) {
    let p = family_presentation(&FamilyParams::gkmn(k as i64, m, n).unwrap())
        .unwrap()
        .expand_relations();
    let g = graph_of(&p).expect("G(k,m,n) is finite");
    (p, g)
}

fn model_perm(c: &ExplicitComponent, w: &str) -> Vec<u32> {
    let names: Vec<String> = GKMN_NAMES.iter().map(|s| s.to_string()).collect();
    let w = parse_word(w, &names).unwrap();
    let pairs: Vec<(usize, bool)> = w
        .letters()
        .iter()
        .map(|l| (l.gen.index(), l.sign == Sign::Pos))
        .collect();
    c.word_permutation(&pairs)
}

#[test]
fn strut_relations_hold_in_engine_graphs() {
    for k in 1..=4 {
        for m in 1..=3 {
            for n in 1..=3 {
                let (_, g) = gkmn(k, m, n);
                check_relations(&g, k).unwrap_or_else(|e| panic!("G({k},{m},{n}): {e}"));
            }
        }
    }
}

#[test]
fn strut_relations_hold_in_explicit_models() {
    for k in 1..=4 {
        for m in 1..=4 {
            for n in 1..=4 {
                for c in [build_explicit_qa(k, m, n), build_explicit_qd(k, m)] {
                    for (x, y) in relation_pairs(k) {
                        assert_eq!(
                            model_perm(&c, &x),
                            model_perm(&c, &y),
                            "{:?} k={k} m={m} n={n}: {x} vs {y}",
                            c.kind
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn explicit_model_examples() {
    let qa = build_explicit_qa(3, 3, 3);
    assert_eq!(qa.apply(qa.index(0, 0, 0), 3), qa.index(0, 0, 1));
    assert_eq!(qa.apply(qa.index(0, 0, 0), 0), qa.index(0, 0, 0));
    let qd = build_explicit_qd(3, 3);
    assert_eq!(qd.apply(qd.index(0, 0, 0), 3), qd.index(0, 0, 0));
    assert_eq!(qd.apply(qd.index(0, 0, 0), 2), qd.index(0, 1, 0));
    for q in 0..3 {
        let abk = model_perm(&qd, "(a b)^3");
        assert_eq!(abk[qd.index(0, q, 0) as usize], qd.index(0, (q + 2) % 3, 0));
    }
}

#[test]
fn strut_component_has_2kn_elements() {
    for k in 1..=4 {
        for m in 1..=3 {
            for n in 1..=4 {
                let (_, g) = gkmn(k, m, n);
                assert_eq!(g.edge_component_sizes()[2], Some((2 * k * n) as usize));
            }
        }
    }
}

const FLYPE: [usize; 6] = [1, 0, 2, 3, 5, 4];
const SLIDE: [usize; 6] = [4, 5, 2, 3, 0, 1];
// d first, then the generators of `d e a`, then `b d f`, then c.
const SEARCH_ORDER: [usize; 6] = [3, 0, 4, 1, 5, 2];

#[test]
fn flype_and_slide_induce_automorphisms() {
    for k in 1..=3 {
        for m in 1..=3 {
            for n in 1..=3 {
                let (p, g) = gkmn(k, m, n);
                for (name, target) in [("flype", FLYPE), ("slide", SLIDE)] {
                    let phi = find_automorphism(&g, &p, &target, &SEARCH_ORDER);
                    assert!(phi.is_some(), "G({k},{m},{n}): no {name} automorphism");
                }
                let sizes = g.edge_component_sizes();
                assert!(sizes[0] == sizes[1] && sizes[0] == sizes[4] && sizes[0] == sizes[5]);
            }
        }
    }
}

fn relabeled_code(
    g: &nquandle::CayleyGraph,
    base: u32,
    perm: &[usize],
    reversed: &[usize],
) -> String {
    let letters: Vec<Letter> = (0..6)
        .map(|i| {
            let t = Gen(perm[i] as u32);
            if reversed.contains(&i) {
                Letter::neg(t)
            } else {
                Letter::pos(t)
            }
        })
        .collect();
    g.canonical_code_with(base, &letters)
}

fn plain_code(g: &nquandle::CayleyGraph, base: u32) -> String {
    relabeled_code(g, base, &[0, 1, 2, 3, 4, 5], &[])
}

#[test]
fn labeled_graphs_match_under_relabeling_for_small_n() {
    // Generator to generator, with the c and d edges reversed as needed.
    for k in 1..=4 {
        for m in 1..=4 {
            for n in 1..=2 {
                let (_, g) = gkmn(k, m, n);
                let b = |i: u32| g.basepoint(Gen(i));
                for (perm, from, to) in [(FLYPE, 0, 1), (FLYPE, 4, 5), (SLIDE, 0, 4), (SLIDE, 1, 5)]
                {
                    let src = plain_code(&g, b(from));
                    let ok = [vec![], vec![2], vec![3], vec![2, 3]]
                        .iter()
                        .any(|rev| relabeled_code(&g, b(to), &perm, rev) == src);
                    assert!(ok, "G({k},{m},{n}) {from}->{to}");
                }
            }
        }
    }
}

#[test]
fn no_generator_relabeling_for_n3() {
    // The flype automorphism sends a generator to a non-generator element
    // here, so the labeled graphs of Q_a and Q_b are not related by renaming
    // letters alone.
    let (p, g) = gkmn(1, 1, 3);
    let src = plain_code(&g, g.basepoint(Gen(0)));
    for rev in [vec![], vec![2], vec![3], vec![2, 3]] {
        assert_ne!(relabeled_code(&g, g.basepoint(Gen(1)), &FLYPE, &rev), src);
    }
    let phi = find_automorphism(&g, &p, &FLYPE, &SEARCH_ORDER).unwrap();
    assert!(phi
        .iter()
        .enumerate()
        .any(|(i, &y)| y != g.basepoint(Gen(FLYPE[i] as u32))));
}
