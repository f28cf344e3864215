//! Brute-force oracles shared by the integration tests. They work on plain
//! edge lists and never call the library's search code.

#![allow(dead_code)]

use hypermatch::Hypergraph;
use itertools::Itertools;

pub fn edge_list(h: &Hypergraph) -> Vec<Vec<usize>> {
    h.edges().map(|e| e.to_vec()).collect()
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| !b.contains(v))
}

/// Maximum matching size by enumerating every matching.
pub fn naive_matching_number(edges: &[Vec<usize>]) -> usize {
    fn go(edges: &[Vec<usize>], i: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for j in i..edges.len() {
            if chosen.iter().all(|&c| disjoint(&edges[c], &edges[j])) {
                chosen.push(j);
                go(edges, j + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(edges, 0, &mut Vec::new(), &mut best);
    best
}

/// Number of edges containing `set`.
pub fn naive_degree(edges: &[Vec<usize>], set: &[usize]) -> usize {
    edges.iter().filter(|e| set.iter().all(|v| e.contains(v))).count()
}

/// Minimum over all d-subsets of `0..n` of the number of edges containing it.
pub fn naive_min_degree(n: usize, edges: &[Vec<usize>], d: usize) -> usize {
    (0..n).combinations(d).map(|s| naive_degree(edges, &s)).min().unwrap_or(0)
}

/// No edge lies inside `w`.
pub fn naive_independent(edges: &[Vec<usize>], w: &[usize]) -> bool {
    edges.iter().all(|e| !e.iter().all(|v| w.contains(v)))
}

/// Every listed edge is an edge of the hypergraph and they are pairwise disjoint.
pub fn naive_valid_matching(edges: &[Vec<usize>], matching: &[Vec<usize>]) -> bool {
    let mut sorted: Vec<Vec<usize>> = matching.to_vec();
    for e in &mut sorted {
        e.sort_unstable();
    }
    sorted.iter().all(|m| edges.contains(m)) && sorted.iter().tuple_combinations().all(|(a, b)| disjoint(a, b))
}

/// |a ∩ b| for vertex lists.
pub fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}
