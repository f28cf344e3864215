//! Greedy matching reaching the minimum codegree when it is small.

use hypermatch::generators::random_with_min_codegree;
use hypermatch::greedy::greedy_matching;

fn main() {
    for (n, delta) in [(12, 3), (15, 4), (20, 5)] {
        let h = random_with_min_codegree(3, n, delta, n as u64, usize::MAX).unwrap();
        let m = greedy_matching(&h);
        println!("n={n:>2} codegree={} greedy={} edges={:?}", h.min_codegree(), m.len(), m.vertex_lists(&h));
    }
}
