//! δ_i on the fundamental class of S^q, by the closed formula and through D^{q-i}.
//!
//!     cargo run --release --example delta_operation -- 3

use simpdelta::chains::{faces, is_cycle, ComplexKind};
use simpdelta::models::{algebra_model, SimplicialModel};
use simpdelta::operations::{delta_i, delta_report, theta_i};

fn main() {
    let q: i64 = std::env::args().nth(1).map_or(2, |s| s.parse().expect("an integer q"));
    let a = algebra_model(q as usize, 2 * q as usize, 2).unwrap();
    let z = a.fundamental_class();
    for i in 1..=q {
        let d = delta_i(&a, &z, i).unwrap();
        let theta = theta_i(&a, &z, i).unwrap();
        println!("δ_{i}(z), {} terms, equals Θ_{i}: {}", d.terms.len(), d.value == theta);
        for m in d.value.support() {
            println!("    {}", a.label_name(m));
        }
        if is_cycle(&a, &d.value, ComplexKind::Normalized) {
            println!("  all faces vanish");
        } else {
            for (j, f) in faces(&a, &d.value).iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                let names: Vec<String> = f.support().iter().map(|m| a.label_name(m)).collect();
                println!("  d_{j} = {}", names.join(" + "));
            }
        }
    }
    let r = delta_report(q, q.clamp(1, 2), 0, 4).unwrap();
    println!("{}", serde_json::to_string(&r).unwrap());
}
