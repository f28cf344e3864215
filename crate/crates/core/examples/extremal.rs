//! The extremal construction on a planted near-barrier instance.

use hypermatch::exact::SolverBudget;
use hypermatch::extremal::extremal_matching;
use hypermatch::generators::planted_extremal;

fn main() {
    let eps = 0.05;
    let p = planted_extremal(3, 23, eps, 5, 3).unwrap();
    let h = &p.hypergraph;
    println!("n={} edges={} codegree={} |B|={}", h.n(), h.edge_count(), h.min_codegree(), p.b_side.len());
    let run = extremal_matching(h, &p.independent, eps, SolverBudget::default()).expect("construction succeeds");
    let st = &run.staged;
    println!("|A|={} |B|={} |C|={}", run.partition.a.len(), run.partition.b.len(), run.partition.c.len());
    println!("stage sizes M1..M4: {:?}, balances in step 3: {:?}", st.sizes, st.step3.balances);
    println!(
        "k-partite step: m={} delta1={} delta_rest={} inequality holds: {}",
        st.step4.m, st.step4.delta_first, st.step4.delta_rest, st.step4.pikhurko_holds
    );
    println!("matching: {:?}", run.matching.vertex_lists(h));
    for w in &run.warnings {
        println!("warning: {w}");
    }
}
