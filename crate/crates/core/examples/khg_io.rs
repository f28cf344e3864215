//! Reading and writing the plain-text edge list format.

use hypermatch::format::{parse_khg, to_khg};

fn main() {
    let text = "# k n m\n3 6 3\n0 1 2\n# a comment\n1 3 4\n3 4 5\n";
    let h = parse_khg(text).unwrap();
    println!("parsed: k={} n={} edges={}", h.k(), h.n(), h.edge_count());
    print!("{}", to_khg(&h));
    match parse_khg("3 6 1\n0 1 1\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
