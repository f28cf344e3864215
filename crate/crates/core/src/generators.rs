//! Instance factories: space barriers, random hypergraphs with a codegree
//! floor, and planted extremal instances.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// All k-sets of `0..n` meeting `A = {0, …, d-1}`. Both the minimum codegree
/// and the matching number equal `d`.
pub fn barrier(k: usize, n: usize, d: usize) -> Result<Hypergraph> {
    if n < k || d * k >= n {
        return Err(Error::BadParameters(format!("barrier needs n >= k and d < n/k (k={k}, n={n}, d={d})")));
    }
    Hypergraph::new(k, n, Vec::<Vec<usize>>::new())?;
    Hypergraph::new(k, n, (0..n).combinations(k).filter(|e| e[0] < d))
}

fn codegree_counts(k: usize, edges: &[Vec<usize>], n: usize) -> HashMap<VertexSet, usize> {
    let mut counts = HashMap::new();
    for e in edges {
        for sub in e.iter().copied().combinations(k - 1) {
            *counts.entry(VertexSet::of(n, &sub)).or_insert(0) += 1;
        }
    }
    counts
}

/// Deletes edges of `edges` in the given order while every (k-1)-subset of
/// the deleted edge keeps degree above `floor`. Stops after `max_tries`
/// candidates or `max_deletions` deletions.
fn prune_keeping_floor(
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    order: &[usize],
    floor: usize,
    max_tries: usize,
    max_deletions: usize,
) -> Vec<Vec<usize>> {
    let mut counts = codegree_counts(k, &edges, n);
    let mut keep = vec![true; edges.len()];
    let mut deleted = 0;
    for &i in order.iter().take(max_tries) {
        if deleted >= max_deletions {
            break;
        }
        let subs: Vec<VertexSet> = edges[i].iter().copied().combinations(k - 1).map(|s| VertexSet::of(n, &s)).collect();
        if subs.iter().all(|s| counts[s] > floor) {
            for s in &subs {
                *counts.get_mut(s).unwrap() -= 1;
            }
            keep[i] = false;
            deleted += 1;
        }
    }
    edges.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
}

/// Starts from the complete k-graph and deletes uniformly random edges whose
/// removal keeps every (k-1)-set at degree at least `target_delta`. At most
/// `max_tries` candidate edges are examined; `usize::MAX` runs until no edge
/// is deletable, which leaves the minimum codegree equal to `target_delta`.
pub fn random_with_min_codegree(
    k: usize,
    n: usize,
    target_delta: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Hypergraph> {
    if n < k || target_delta + k > n + 1 {
        return Err(Error::BadParameters(format!(
            "codegree target {target_delta} exceeds n - k + 1 = {}",
            (n + 1).saturating_sub(k)
        )));
    }
    let edges: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let kept = prune_keeping_floor(k, n, edges, &order, target_delta, max_tries, usize::MAX);
    let h = Hypergraph::new(k, n, kept)?;
    debug_assert!(h.min_codegree() >= target_delta);
    Ok(h)
}

/// A near-extremal instance together with the vertex split it was built from.
#[derive(Clone, Debug, Serialize)]
pub struct PlantedExtremal {
    #[serde(skip)]
    pub hypergraph: Hypergraph,
    pub a_side: VertexSet,
    pub b_side: VertexSet,
    /// Planted independent set.
    pub independent: VertexSet,
}

/// Barrier-like instance with minimum codegree at least `⌊n/k⌋` and a large
/// planted independent set `C`.
///
/// When `epsilon` leaves room (`|C| >= (1-ε)(k-1)n/k` and `2 <= √ε·n`), two
/// vertices are split off into a sparse side `B`: each (k-1)-subset of `C`
/// is joined to exactly one of them, so neither has near-full degree into
/// `C`. Otherwise `B` is empty and the instance is the barrier with
/// `|A| = ⌊n/k⌋`. Finally up to `noise` random edges are removed where that
/// keeps the codegree floor.
pub fn planted_extremal(k: usize, n: usize, epsilon: f64, noise: usize, seed: u64) -> Result<PlantedExtremal> {
    if n < k || k < 2 {
        return Err(Error::BadParameters(format!("need n >= k >= 2 (k={k}, n={n})")));
    }
    if n.is_multiple_of(k) {
        return Err(Error::DivisibleOrder { k, n });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::BadParameters(format!("epsilon {epsilon} must lie in (0, 1)")));
    }
    let floor = n / k;
    let alpha = epsilon.sqrt();
    let extremal_bound = (1.0 - epsilon) * (k - 1) as f64 * n as f64 / k as f64;
    let split = floor >= 1 && (n - floor - 1) as f64 >= extremal_bound && 2.0 <= alpha * n as f64;
    let (a, b) = if split { (floor - 1, 2) } else { (floor, 0) };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c_side: Vec<usize> = (a + b..n).collect();
    let mut edges: Vec<Vec<usize>> = (0..n)
        .combinations(k)
        .filter(|e| e[0] < a || e.iter().filter(|&&v| v >= a && v < a + b).count() >= 2)
        .collect();
    if b > 0 {
        let mut links: Vec<Vec<usize>> = c_side.iter().copied().combinations(k - 1).collect();
        links.shuffle(&mut rng);
        let half = links.len() / 2;
        for (i, t) in links.into_iter().enumerate() {
            let x = if i < half { a } else { a + 1 };
            let mut e = t;
            e.push(x);
            e.sort_unstable();
            edges.push(e);
        }
        edges.sort_unstable();
    }

    if noise > 0 {
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.shuffle(&mut rng);
        edges = prune_keeping_floor(k, n, edges, &order, floor, usize::MAX, noise);
    }

    let hypergraph = Hypergraph::new(k, n, edges)?;
    Ok(PlantedExtremal {
        hypergraph,
        a_side: VertexSet::of(n, &(0..a).collect::<Vec<_>>()),
        b_side: VertexSet::of(n, &(a..a + b).collect::<Vec<_>>()),
        independent: VertexSet::of(n, &c_side),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::binomial;

    #[test]
    fn barrier_examples() {
        let b = barrier(3, 10, 2).unwrap();
        assert_eq!(b.min_codegree(), 2);
        assert_eq!(barrier(3, 10, 0).unwrap().edge_count(), 0);
        assert_eq!(barrier(3, 9, 2).unwrap().edge_count() as u128, binomial(9, 3) - binomial(7, 3));
        assert_eq!(barrier(3, 9, 2).unwrap().edge_count(), 49);
        assert!(barrier(3, 9, 3).is_err());
        assert!(barrier(3, 2, 0).is_err());
    }

    #[test]
    fn barrier_degree_on_b_side_pair() {
        let b = barrier(3, 6, 1).unwrap();
        let s = VertexSet::of(6, &[1, 2]);
        assert_eq!(b.degree(&s).unwrap(), 1);
        assert_eq!(b.neighborhood(&s).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn random_codegree_examples() {
        let full = random_with_min_codegree(3, 8, 6, 1, usize::MAX).unwrap();
        assert_eq!(full, Hypergraph::complete(3, 8).unwrap());
        assert_eq!(random_with_min_codegree(3, 8, 0, 1, usize::MAX).unwrap().edge_count(), 0);
        let h = random_with_min_codegree(3, 10, 3, 7, usize::MAX).unwrap();
        assert_eq!(h.min_codegree(), 3);
        let dense = random_with_min_codegree(3, 10, 3, 7, 20).unwrap();
        assert!(dense.min_codegree() >= 3);
        assert!(dense.edge_count() >= 120 - 20);
        assert!(random_with_min_codegree(3, 8, 7, 1, 1).is_err());
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let a = random_with_min_codegree(3, 11, 3, 42, usize::MAX).unwrap();
        let b = random_with_min_codegree(3, 11, 3, 42, usize::MAX).unwrap();
        let c = random_with_min_codegree(3, 11, 3, 43, usize::MAX).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn planted_examples() {
        let p = planted_extremal(3, 10, 0.01, 0, 1).unwrap();
        assert_eq!(p.hypergraph.min_codegree(), 3);
        assert!(p.b_side.is_empty());
        assert_eq!(p.hypergraph, barrier(3, 10, 3).unwrap());
        assert!(p.hypergraph.is_independent(&p.independent).unwrap());
        assert!(matches!(planted_extremal(3, 9, 0.01, 0, 1), Err(Error::DivisibleOrder { .. })));
    }

    #[test]
    fn planted_with_sparse_side_keeps_floor() {
        for seed in 0..5 {
            let p = planted_extremal(3, 16, 0.08, 10, seed).unwrap();
            assert_eq!(p.b_side.len(), 2);
            assert_eq!(p.a_side.len(), 4);
            assert!(p.hypergraph.min_codegree() >= 5);
            assert!(p.hypergraph.is_independent(&p.independent).unwrap());
        }
        let p = planted_extremal(4, 17, 0.1, 5, 3).unwrap();
        assert!(p.hypergraph.min_codegree() >= 4);
        assert!(p.hypergraph.is_independent(&p.independent).unwrap());
    }
}
