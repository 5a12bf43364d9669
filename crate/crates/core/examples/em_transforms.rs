//! Builds a transform by name and prints its terms as JSON lines.
//!
//!     cargo run --example em_transforms -- D2 4

use simpdelta::em::{build_dk, build_dk_algebraic, dump_at, em_equal, transform_by_name, Window};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "D1".into());
    let max_total: i64 = args.next().map_or(3, |s| s.parse().expect("an integer window"));

    let f = transform_by_name(&name).unwrap_or_else(|e| panic!("{e}"));
    println!("# {name}: index {}", f.index_fn());
    for (i, j) in Window::up_to(max_total).bidegrees() {
        println!("{}", serde_json::to_string(&dump_at(&f, i, j)).unwrap());
    }

    // the case split for D^k against its recursive definition
    for k in 0..=3 {
        let verdict = match em_equal(&build_dk(k), &build_dk_algebraic(k), Window::up_to(8)).unwrap() {
            Ok(()) => "agree".to_string(),
            Err(w) => format!("differ {w}"),
        };
        println!("# D^{k}: case split and recursion {verdict} on i+j ≤ 8");
    }
}
