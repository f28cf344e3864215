//! A matching of size at least the minimum codegree via universal vertices.

use hypermatch::generators::barrier;
use hypermatch::{matching_at_least_delta, PipelineConfig};

fn main() {
    for (k, n, d) in [(4, 13, 2), (4, 15, 2), (5, 17, 1), (3, 13, 3)] {
        let h = barrier(k, n, d).unwrap();
        let r = matching_at_least_delta(&h, &PipelineConfig::default()).unwrap();
        let red = r.reduction.as_ref().unwrap();
        println!(
            "k={k} n={n} codegree={d}: c={} r={} case={} dummies={} -> {} edges ({})",
            red.c,
            red.r,
            red.case,
            red.dummies,
            r.matching_size,
            r.branch.as_str()
        );
    }
}
