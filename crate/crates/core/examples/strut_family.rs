//! Enumerates G(k,m,n) and compares it with 4kmn + 2km + 2kn.
//!
//!     cargo run --example strut_family -- 4 3 3

use nquandle::families::{family_presentation, gkmn_size, FamilyParams};
use nquandle::{enumerate, EnumerationLimits};

fn main() {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("positive integer"))
        .collect();
    let (k, m, n) = match args[..] {
        [k, m, n] => (k, m, n),
        _ => (4, 3, 3),
    };
    let p = family_presentation(&FamilyParams::gkmn(k as i64, m, n).unwrap()).unwrap();
    let r = enumerate(&p.expand_relations(), EnumerationLimits::default());
    let g = r.graph().expect("G(k,m,n) is finite");

    println!("G({k},{m},{n}) labels {:?}", g.labels());
    println!(
        "enumerated {} elements, formula {}",
        g.size(),
        gkmn_size(k.into(), m.into(), n.into())
    );
    for (name, size) in g.names().iter().zip(g.edge_component_sizes()) {
        println!("  component of {name}: {}", size.unwrap());
    }
    println!("{}", r.stats);
}
