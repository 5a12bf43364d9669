//! Finite models: the simplicial 2-sphere and its truncated polynomial algebra.
//!
//!     cargo run --example models

use simpdelta::em::shuffle_d;
use simpdelta::models::{
    algebra_model, apply_word, dump_model, evaluate_em, sphere_model, F2Element, SimplicialModel, TensorElement,
};

fn main() {
    let s2 = sphere_model(2, 4).unwrap();
    for m in 0..=4 {
        let names: Vec<String> = s2.basis(m).iter().map(|x| s2.label_name(x)).collect();
        println!("S^2 degree {m}: {}", if names.is_empty() { "0".into() } else { names.join(", ") });
    }

    let z = F2Element::basis(2, s2.fundamental());
    let back = apply_word(&s2, &"d1 s0".parse().unwrap(), &z).unwrap();
    println!("d1 s0 z = {}", back.support().iter().map(|x| s2.label_name(x)).collect::<Vec<_>>().join(" + "));

    let zz = TensorElement::tensor(&z, &z);
    let dz = evaluate_em(&shuffle_d(), &s2, &s2, &zz).unwrap();
    println!("D(z⊗z) has {} terms:", dz.support().len());
    for (a, b) in dz.support() {
        println!("  {} ⊗ {}", s2.label_name(a), s2.label_name(b));
    }

    let alg = algebra_model(2, 4, 2).unwrap();
    let x = alg.degenerate_fundamental(&"s2 s1".parse().unwrap()).unwrap();
    let y = alg.degenerate_fundamental(&"s3 s0".parse().unwrap()).unwrap();
    let xy = alg.multiply(&x, &y).unwrap();
    println!("(s2 s1 z)(s3 s0 z) = {}", alg.label_name(xy.support().iter().next().unwrap()));
    println!("algebra basis sizes: {:?}", (0..=4).map(|m| alg.basis(m).len()).collect::<Vec<_>>());

    if std::env::args().any(|a| a == "--dump") {
        println!("{}", serde_json::to_string_pretty(&dump_model(&sphere_model(2, 3).unwrap())).unwrap());
    }
}
