//! Verifies a quandle, then breaks one edge of its Cayley graph and shows
//! what the verifier reports.
//!
//!     cargo run --example verify_axioms

use nquandle::families::{family_presentation, Family, FamilyParams};
use nquandle::word::Gen;
use nquandle::{enumerate, EnumerationLimits, VerifyOptions};

fn main() {
    let fp = FamilyParams::exceptional(Family::H1, &[3, 2, 2]).unwrap();
    let p = family_presentation(&fp).unwrap().expand_relations();
    let g = enumerate(&p, EnumerationLimits::default())
        .into_graph()
        .unwrap();

    let report = g.verify(&p, VerifyOptions::default());
    println!(
        "H1 (3,2,2): {} elements, {} violations",
        g.size(),
        report.violations.len()
    );

    let mut broken = g.clone();
    broken.swap_images(Gen(0), 0, 1);
    let report = broken.verify(&p, VerifyOptions::default());
    println!(
        "after swapping two images of {}: {} violations",
        g.names()[0],
        report.violations.len()
    );
    for v in report.violations.iter().take(5) {
        println!("  {v}");
    }
}
