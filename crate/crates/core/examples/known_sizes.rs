//! Runs the shipped known-sizes manifest and prints one line per row.
//!
//!     cargo run --release --example known_sizes

use nquandle::regress::{parse_manifest, run_manifest, KNOWN_SIZES};
use nquandle::EnumerationLimits;

fn main() {
    let manifest = parse_manifest(KNOWN_SIZES).expect("shipped manifest parses");
    let reports = run_manifest(&manifest, EnumerationLimits::default());
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} rows, {failed} failed", reports.len());
}
