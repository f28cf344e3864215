//! Augment-or-certify: a nearly perfect matching or a large independent set.

use hypermatch::almost::{almost_perfect_matching, almost_perfect_matching_with, AlmostConfig, AlmostOutcome};
use hypermatch::generators::{barrier, random_with_min_codegree};
use hypermatch::Hypergraph;

fn show(name: &str, h: &Hypergraph, outcome: &AlmostOutcome) {
    match outcome {
        AlmostOutcome::Matching { matching, degraded } => println!(
            "{name}: matching of {} edges, {} uncovered{}",
            matching.len(),
            h.n() - matching.covered().len(),
            if *degraded { " (stuck)" } else { "" }
        ),
        AlmostOutcome::Certificate { certificate, .. } => println!(
            "{name}: independent witness of {} vertices (bound {:.2}) {:?}",
            certificate.witness.len(),
            certificate.bound,
            certificate.witness
        ),
    }
}

fn main() {
    let h = random_with_min_codegree(3, 22, 6, 9, usize::MAX).unwrap();
    show("random", &h, &almost_perfect_matching(&h, 0.05).outcome);

    let b = barrier(3, 24, 6).unwrap();
    let tight = AlmostConfig { gamma: 0.05, stop_uncovered: Some(2) };
    show("barrier", &b, &almost_perfect_matching_with(&b, tight).outcome);
}
