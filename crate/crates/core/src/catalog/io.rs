use std::fmt::Write as _;

use crate::error::FormatError;
use crate::graph::Multigraph;

/// Parses `n m` followed by `m` lines `u v`. Blank lines and lines starting
/// with `#` are skipped; line numbers in errors are 1-based.
pub fn read_edge_list(text: &str) -> Result<Multigraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(FormatError::EdgeList {
        line: 0,
        reason: "missing header `n m`".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, content) in lines {
        if edges.len() == m {
            return Err(FormatError::EdgeList {
                line,
                reason: format!("more than the declared {m} edges"),
            });
        }
        let [u, v] = parse_pair(line, content)?;
        if u >= n || v >= n {
            return Err(FormatError::EdgeList {
                line,
                reason: format!("endpoint out of range 0..{n}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeList {
            line: text.lines().count(),
            reason: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Ok(Multigraph::new(n, edges)?)
}

fn parse_pair(line: usize, content: &str) -> Result<[usize; 2], FormatError> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    let err = |reason: String| FormatError::EdgeList { line, reason };
    if fields.len() != 2 {
        return Err(err(format!("expected two integers, found `{content}`")));
    }
    let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("`{s}` is not a nonnegative integer")));
    Ok([parse(fields[0])?, parse(fields[1])?])
}

/// Edges in id order.
pub fn write_edge_list(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for r in g.edges() {
        writeln!(out, "{} {}", r.u, r.v).expect("writing to a String cannot fail");
    }
    out
}
