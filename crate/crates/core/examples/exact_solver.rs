//! Exact maximum matching, fixed-size feasibility and budget handling.

use hypermatch::exact::{has_matching_of_size, matching_number, SolverBudget};
use hypermatch::generators::random_with_min_codegree;

fn main() {
    let h = random_with_min_codegree(3, 17, 5, 42, usize::MAX).unwrap();
    println!("random 3-graph: n={} edges={} codegree={}", h.n(), h.edge_count(), h.min_codegree());

    let out = matching_number(&h, SolverBudget::default());
    println!("matching number: {:?} after {} nodes", out.payload.as_ref().map(|m| m.len()), out.nodes);
    println!("  status {:?}", out.status);

    for s in [5, 6] {
        let out = has_matching_of_size(&h, s, SolverBudget::default());
        println!("matching of size {s}: {:?} ({} nodes)", out.status, out.nodes);
    }

    let tiny = has_matching_of_size(&h, 5, SolverBudget::nodes(3));
    println!("with a 3-node budget: {:?}", tiny.status);
}
