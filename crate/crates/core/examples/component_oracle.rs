//! Checks the a- and d-components of G(k,m,n) against their closed-form
//! action models and prints the model of Q_d for a small case.
//!
//!     cargo run --example component_oracle

use nquandle::families::{build_explicit_qd, oracle_check};
use nquandle::EnumerationLimits;

fn main() {
    let mut failed = 0;
    for k in 1..=4 {
        for m in 1..=4 {
            for n in 1..=4 {
                let r = oracle_check(k, m, n, EnumerationLimits::default()).unwrap();
                if !r.passed() {
                    failed += 1;
                    println!("mismatch: {r:?}");
                }
            }
        }
    }
    println!("64 parameter triples, {failed} mismatches");

    let qd = build_explicit_qd(2, 3);
    println!(
        "Q_d for k=2, m=3 ({} elements): y_(p,q) -> image under a..f",
        qd.size()
    );
    for p in 0..4 {
        for q in 0..3 {
            let v = qd.index(p, q, 0);
            let row: Vec<u32> = (0..6).map(|g| qd.apply(v, g)).collect();
            println!("  y_({p},{q}) = {v:>2}: {row:?}");
        }
    }
}
