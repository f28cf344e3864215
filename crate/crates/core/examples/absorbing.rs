//! Absorbing structures: certificates, the swap, and an absorbing matching.

use hypermatch::absorbing::{absorb, absorb_leftovers, build_absorbing_matching, find_absorbing_pair};
use hypermatch::{Hypergraph, Matching, VertexSet};

fn main() {
    // e = {0,1,2} absorbs S = {3,4,5,6} through {0,3,4} and {1,5,6}
    let h = Hypergraph::new(3, 7, [[0, 1, 2], [0, 3, 4], [1, 5, 6]]).unwrap();
    let e = h.find_edge_of(&[0, 1, 2]).unwrap();
    let s = VertexSet::of(7, &[3, 4, 5, 6]);
    let cert = find_absorbing_pair(&h, e, &s).unwrap().expect("absorbing");
    let m = Matching::from_edges(&h, [e]).unwrap();
    let after = absorb(&h, &m, &cert).unwrap();
    println!("absorbed {:?}: {:?}, leftover {}", s, after.vertex_lists(&h), cert.leftover);

    let k5 = Hypergraph::complete(3, 16).unwrap();
    let build = build_absorbing_matching(&k5, 1, 4, 7);
    println!(
        "absorbing matching on the complete 3-graph, n = 16: {} edges, deficient sets {}, verified {}",
        build.absorbing.matching.len(),
        build.deficient.len(),
        build.verified
    );
    let rest = VertexSet::full(16).difference(build.absorbing.matching.covered());
    let done = absorb_leftovers(&k5, &build.absorbing, &Matching::new(16), &rest).unwrap();
    println!("after absorbing the rest: {} edges, {} uncovered", done.matching.len(), done.uncovered.len());
}
