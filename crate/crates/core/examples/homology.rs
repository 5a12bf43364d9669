//! Betti numbers of associated and normalized chains, side by side.
//!
//!     cargo run --release --example homology

use simpdelta::chains::{compare_homology, compared_csv};
use simpdelta::models::{algebra_model, sphere_model, ModelKind, SimplicialSetModel};

fn main() {
    println!("# Delta(2)");
    print!("{}", compared_csv(&compare_homology(&SimplicialSetModel::delta(2, 4), 4)));
    println!("# boundary of Delta(2)");
    print!("{}", compared_csv(&compare_homology(&SimplicialSetModel::new(ModelKind::BoundaryDelta, 2, 4).unwrap(), 4)));
    println!("# S^3");
    print!("{}", compared_csv(&compare_homology(&sphere_model(3, 5).unwrap(), 5)));
    println!("# polynomials of degree ≤ 3 on reduced chains of S^2");
    print!("{}", compared_csv(&compare_homology(&algebra_model(2, 6, 3).unwrap(), 6)));
}
