//! Normal forms of simplicial words and their suspensions.
//!
//!     cargo run --example words -- "d2 s0 d1 s1" 3

use simpdelta::words::{normalize_counting, SimplicialWord};

fn main() {
    let mut args = std::env::args().skip(1);
    let word: SimplicialWord =
        args.next().unwrap_or_else(|| "d2 s0 d1 s1".into()).parse().expect("a word like \"d1 s0\"");
    let source: i64 = args.next().map_or(3, |s| s.parse().expect("an integer degree"));

    match normalize_counting(&word, source) {
        Ok(n) => {
            println!("{word} on degree {source}");
            println!("  normal form   {}  ({} rewrites)", n.form, n.rewrite_steps);
            println!("  target        {}", n.form.target_degree());
            if n.form.is_null() {
                println!("  annihilates every simplex, but its suspension does not");
            }
            let suspended = n.form.suspend();
            println!("  suspension    {suspended} on degree {}", suspended.source_degree());
        }
        Err(e) => println!("{word} on degree {source}: {e}"),
    }
}
