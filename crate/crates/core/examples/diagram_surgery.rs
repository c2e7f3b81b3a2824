//! Builds a theta graph from diagram text, then subdivides and deletes
//! edges and compares quandle sizes.
//!
//!     cargo run --example diagram_surgery

use nquandle::{enumerate, parse_diagram, DiagramSpec, EnumerationLimits};

const THETA: &str = "\
# planar theta, two vertices joined by three edges
arcs: 3
edge: 1:1 2:2 3:3
labels: 3 3 2
vertex: 1+ 2+ 3+
vertex: 3- 2- 1-
";

fn size(d: &DiagramSpec) -> usize {
    enumerate(
        &d.wirtinger().expand_relations(),
        EnumerationLimits::default(),
    )
    .size()
    .expect("finite")
}

fn main() {
    let d = parse_diagram(THETA).unwrap();
    let g = enumerate(
        &d.wirtinger().expand_relations(),
        EnumerationLimits::default(),
    )
    .into_graph()
    .unwrap();
    let comps = g.edge_component_sizes();
    println!("theta (3,3,2): {} elements, components {comps:?}", g.size());

    for (e, c) in comps.iter().enumerate() {
        let (sub, _) = d.subdivide_edge(e).unwrap();
        println!(
            "subdivide edge {}: {} elements = {} + {}",
            e + 1,
            size(&sub),
            g.size(),
            c.unwrap()
        );
    }

    // Label C with 1 and delete it: what remains is an unknot.
    let unit = d.with_labeling((&[3u32, 3, 1][..]).into()).unwrap();
    let g1 = enumerate(
        &unit.wirtinger().expand_relations(),
        EnumerationLimits::default(),
    )
    .into_graph()
    .unwrap();
    let (deleted, _) = unit.delete_edge(2).unwrap();
    println!(
        "theta (3,3,1) minus C: {} elements = {} - {}",
        size(&deleted),
        g1.size(),
        g1.edge_component_sizes()[2].unwrap()
    );
    print!("{}", deleted.to_text());
}
