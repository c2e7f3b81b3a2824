//! Parses a presentation written by hand and prints its operation table.
//!
//!     cargo run --example presentation_text

use nquandle::export::export_table;
use nquandle::{enumerate, parse_presentation, EnumerationLimits};

// Trefoil: three arcs, each crossing gives x^y = z.
const TREFOIL: &str = "\
gens: x y z
edges: x:1 y:1 z:1
labels: 3
rel x : y = z
rel y : z = x
rel z : x = y
";

fn main() {
    let p = parse_presentation(TREFOIL).unwrap();
    let expanded = p.expand_relations();
    print!("{expanded}");
    let g = enumerate(&expanded, EnumerationLimits::default())
        .into_graph()
        .unwrap();
    println!("\n{} elements", g.size());
    print!("{}", export_table(&g).unwrap());
}
