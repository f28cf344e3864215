//! Threshold verification over several orders.
//!
//! cargo run --release --example campaign -- 40

use hypermatch::campaign::verify_threshold_campaign;
use hypermatch::PipelineConfig;

fn main() {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let cfg = PipelineConfig { seed: 2024, ..Default::default() };
    let report = verify_threshold_campaign(3, &[10, 11, 13, 14, 16, 17], samples, &cfg);
    for row in &report.rows {
        let nu = row.tightness.as_ref().and_then(|t| t.matching_number);
        println!(
            "n={:>2} confirmed={:>3}/{} pipeline={:>3} exceptions={} branches={:?} barrier nu={:?}",
            row.n,
            row.exact_confirmed,
            row.instances,
            row.pipeline_successes,
            row.finite_size_exceptions,
            row.branch_histogram,
            nu
        );
    }
}
