//! Writes the Cayley graph of theta (2,2,2) as DOT and JSON and reads the
//! JSON back.
//!
//!     cargo run --example export_graph -- /tmp/theta
//!     dot -Tsvg /tmp/theta.dot > theta.svg

use nquandle::export::{export_dot, export_json, import_json, DotOptions};
use nquandle::families::{family_presentation, Family, FamilyParams};
use nquandle::{enumerate, EnumerationLimits};

fn main() {
    let stem = std::env::args().nth(1).unwrap_or_else(|| "theta".into());
    let fp = FamilyParams::exceptional(Family::Theta3, &[2, 2, 2]).unwrap();
    let r = enumerate(
        &family_presentation(&fp).unwrap().expand_relations(),
        EnumerationLimits::default(),
    );
    let g = r.graph().unwrap();

    let dot = export_dot(
        g,
        DotOptions {
            no_loops: false,
            color: true,
        },
    );
    let json = export_json(g, Some(&r.stats));
    std::fs::write(format!("{stem}.dot"), &dot).unwrap();
    std::fs::write(format!("{stem}.json"), &json).unwrap();
    println!(
        "{} nodes, {} edges -> {stem}.dot, {stem}.json",
        g.size(),
        dot.matches("->").count()
    );

    let back = import_json(&json).unwrap();
    assert_eq!(&back, g);
    println!("json round trip ok");
}
