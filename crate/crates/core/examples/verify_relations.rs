//! Sweeps the relation catalog and prints one line per relation.
//!
//!     cargo run --release --example verify_relations -- 10

use simpdelta::relations::{check_relation, group};

fn main() {
    let max_total: i64 = std::env::args().nth(1).map_or(8, |s| s.parse().expect("an integer window"));
    let max_k = (max_total / 2).min(4) as u32;
    let mut failures = 0;
    for name in group("all", max_k).unwrap() {
        let start = std::time::Instant::now();
        let r = check_relation(&name, max_total).unwrap();
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {name:<16} {:>4} bidegrees {:>8.1?}", r.bidegrees_checked, start.elapsed());
        if let Some(f) = r.first_failure() {
            failures += 1;
            println!("     {}: {}", f.identity, f.witness.as_deref().unwrap_or(""));
        }
    }
    println!("{failures} relation(s) failed");
}
