//! The `.khg` text format.
//!
//! ```text
//! # optional comments
//! k n m
//! v1 v2 ... vk      (m lines, 0-based ids, strictly increasing)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub fn parse_khg(text: &str) -> Result<Hypergraph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    let nums = parse_numbers(hline, header)?;
    let [k, n, m] = nums[..] else {
        return Err(Error::Parse { line: hline, msg: format!("header needs `k n m`, got {header:?}") });
    };

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            return Err(Error::Parse { line, msg: format!("more than the declared {m} edges") });
        }
        let e = parse_numbers(line, l)?;
        if e.len() != k {
            return Err(Error::Parse { line, msg: format!("expected {k} vertices, got {}", e.len()) });
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse { line, msg: "vertex ids must be strictly increasing".into() });
        }
        if e[k - 1] >= n {
            return Err(Error::Parse { line, msg: format!("vertex {} out of range 0..{n}", e[k - 1]) });
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::Parse { line: 0, msg: format!("declared {m} edges, found {}", edges.len()) });
    }
    Hypergraph::new(k, n, edges)
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("not a vertex id: {t:?}") }))
        .collect()
}

pub fn to_khg(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.k(), h.n(), h.edge_count());
    for e in h.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_khg(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_khg(&fs::read_to_string(path)?)
}

pub fn write_khg(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_khg(h))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let h = parse_khg("# triangle-ish\n3 5 2\n0 1 2\n\n# second\n2 3 4\n").unwrap();
        assert_eq!((h.k(), h.n(), h.edge_count()), (3, 5, 2));
        assert!(h.contains_edge(&[2, 3, 4]));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "3 5\n",
            "3 5 1\n0 1\n",
            "3 5 1\n0 2 1\n",
            "3 5 1\n0 1 5\n",
            "3 5 2\n0 1 2\n",
            "3 5 1\n0 1 2\n1 2 3\n",
            "3 5 1\n0 x 2\n",
        ] {
            assert!(matches!(parse_khg(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
        assert!(matches!(parse_khg("3 5 2\n0 1 2\n0 1 2\n"), Err(Error::DuplicateEdge(_))));
    }

    #[test]
    fn writes_canonical_text() {
        let h = Hypergraph::new(3, 4, [[1, 2, 3], [0, 1, 2]]).unwrap();
        assert_eq!(to_khg(&h), "3 4 2\n0 1 2\n1 2 3\n");
        assert_eq!(parse_khg(&to_khg(&h)).unwrap(), h);
    }
}
