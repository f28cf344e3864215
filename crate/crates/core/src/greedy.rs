//! Greedy matching up to the minimum codegree.

use itertools::Itertools;

use crate::hypergraph::{Hypergraph, Matching};
use crate::vertex_set::VertexSet;

/// Grows a matching towards `δ_{k-1}(H)` edges.
///
/// Each round takes the lexicographically least (k-1)-set of uncovered
/// vertices and joins it to its least uncovered neighbour. When that set has
/// no uncovered neighbour, up to `k` disjoint uncovered (k-1)-sets are formed
/// and the matching is switched: either one of them has an uncovered
/// neighbour, or some matched edge has two vertices `x != y` with
/// `x ∪ A_i` and `y ∪ A_j` edges for `i != j`, and the edge is replaced by
/// those two. Whenever `δ_{k-1}(H) <= ⌊n/k⌋ - k + 2` and fewer than `δ`
/// edges are matched, at least `k(k-1)` vertices are uncovered and the
/// pigeonhole count over the `k` sets guarantees one of the moves applies.
pub fn greedy_matching(h: &Hypergraph) -> Matching {
    let target = h.min_codegree();
    let k = h.k();
    let mut m = Matching::new(h.n());
    while m.len() < target {
        let free = VertexSet::full(h.n()).difference(m.covered());
        if free.len() < k {
            break;
        }
        let seed_set = free.smallest(k - 1).expect("at least k free vertices");
        if let Some(e) = least_free_completion(h, &seed_set, &free) {
            m.push_unchecked(h, e);
            continue;
        }
        if !switch(h, &mut m, &free) {
            break;
        }
    }
    m
}

fn least_free_completion(h: &Hypergraph, set: &[usize], free: &VertexSet) -> Option<crate::hypergraph::EdgeId> {
    let s = VertexSet::of(h.n(), set);
    let nb = h.neighborhood(&s).ok()?;
    let v = nb.intersection(free).first()?;
    let mut e = set.to_vec();
    e.push(v);
    e.sort_unstable();
    h.find_edge_of(&e)
}

fn switch(h: &Hypergraph, m: &mut Matching, free: &VertexSet) -> bool {
    let k = h.k();
    let free_list = free.to_vec();
    let sets: Vec<&[usize]> = free_list.chunks_exact(k - 1).take(k).collect();

    for a in &sets {
        if let Some(e) = least_free_completion(h, a, free) {
            m.push_unchecked(h, e);
            return true;
        }
    }

    // links[v] = indices of sets A_i with v ∪ A_i an edge
    let link = |v: usize, a: &[usize]| {
        let mut e = a.to_vec();
        e.push(v);
        e.sort_unstable();
        h.find_edge_of(&e)
    };
    for &e in m.edges() {
        let verts = h.edge(e);
        for (&x, &y) in verts.iter().tuple_combinations() {
            for (i, a) in sets.iter().enumerate() {
                let Some(ex) = link(x, a) else { continue };
                for (j, b) in sets.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    if let Some(ey) = link(y, b) {
                        m.remove(h, e);
                        m.push_unchecked(h, ex);
                        m.push_unchecked(h, ey);
                        return true;
                    }
                }
            }
        }
    }
    false
}
