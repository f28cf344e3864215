//! Full near perfect matching search, printing the JSON report.

use hypermatch::generators::random_with_min_codegree;
use hypermatch::{near_perfect_matching, PipelineConfig};

fn main() {
    let h = random_with_min_codegree(3, 20, 6, 1, usize::MAX).unwrap();
    let cfg = PipelineConfig { seed: 1, ..Default::default() };
    let report = near_perfect_matching(&h, &cfg);
    println!("{}", report.to_json());
    assert!(report.verify(&h));
}
