//! Whitespace-separated edge lists.
//!
//! One `u v` pair per line, `#` starts a comment line. A comment token of the
//! form `n=<count>` fixes the vertex count, which keeps trailing isolated
//! vertices across a round trip. Written files are canonical: `u < v`, sorted.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{build_from_edges, Built, Graph, VertexId};

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "# n={} m={}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Built> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
        if let Some(comment) = line.strip_prefix('#') {
            if n.is_none() {
                if let Some(tok) = comment.split_whitespace().find_map(|t| t.strip_prefix("n=")) {
                    n = Some(tok.parse().map_err(|_| parse_err(format!("bad vertex count '{tok}'")))?);
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let mut id = || -> Result<VertexId> {
            let tok = tokens.next().ok_or_else(|| parse_err("expected two vertex ids".into()))?;
            tok.parse()
                .map_err(|_| parse_err(format!("'{tok}' is not a vertex id")))
        };
        let (u, v) = (id()?, id()?);
        if tokens.next().is_some() {
            return Err(parse_err("more than two fields".into()));
        }
        edges.push((u, v));
    }
    build_from_edges(&edges, n)
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Built> {
    read_edge_list(BufReader::new(File::open(path)?))
}

pub fn write_edge_list_file(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_edge_list(g, BufWriter::new(File::create(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_header() {
        let text = "# a comment\n# n=6 m=2\n0 1\n\n3 2\n";
        let b = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(b.graph.vertex_count(), 6);
        assert_eq!(b.graph.edge_list(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn reports_bad_lines() {
        for bad in ["0\n", "0 x\n", "0 1 2\n", "-1 2\n"] {
            match read_edge_list(bad.as_bytes()) {
                Err(Error::Parse { line: 1, .. }) => {}
                other => panic!("{bad:?}: {other:?}"),
            }
        }
        assert!(read_edge_list("# n=2\n0 5\n".as_bytes()).is_err());
    }

    #[test]
    fn writes_canonical_lines() {
        let g = Graph::from_edges(&[(2, 1), (1, 0)]);
        let mut out = Vec::new();
        write_edge_list(&g, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "# n=3 m=2\n0 1\n1 2\n");
    }

    proptest! {
        #[test]
        fn round_trip(e in prop::collection::vec((0u32..40, 0u32..40), 0..100), extra in 0usize..5) {
            let g = build_from_edges(&e, Some(41 + extra)).unwrap().graph;
            let mut out = Vec::new();
            write_edge_list(&g, &mut out).unwrap();
            prop_assert_eq!(read_edge_list(out.as_slice()).unwrap().graph, g);
        }
    }
}
