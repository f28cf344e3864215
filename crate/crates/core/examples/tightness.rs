//! The space barrier just below the threshold: codegree d and matching number d.
//!
//! cargo run --example tightness -- 3 16

use hypermatch::exact::{matching_number, SolverBudget};
use hypermatch::generators::barrier;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (k, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(16));
    println!("k={k} n={n}  floor(n/k)={}", n / k);
    println!("{:>3} {:>6} {:>12} {:>8}", "d", "edges", "codegree", "nu");
    for d in 1..n.div_ceil(k) {
        let h = barrier(k, n, d).expect("valid barrier");
        let nu = matching_number(&h, SolverBudget::default());
        let size = nu.payload.map_or(0, |m| m.len());
        println!("{d:>3} {:>6} {:>12} {:>8}", h.edge_count(), h.min_codegree(), size);
    }
}
