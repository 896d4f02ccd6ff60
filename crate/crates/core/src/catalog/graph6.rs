use crate::error::FormatError;
use crate::graph::{Multigraph, VertexId};

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 62;

/// Encodes a simple graph with at most 62 vertices.
pub fn write_graph6(g: &Multigraph) -> Result<String, FormatError> {
    if !g.is_simple() {
        return Err(FormatError::NotSimple);
    }
    let n = g.vertex_count();
    if n > MAX_ORDER {
        return Err(FormatError::TooLarge(n));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.multiplicity(i, j) > 0);
        }
    }
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push(char::from(u8::try_from(n + 63).expect("n ≤ 62")));
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                value |= 1 << (5 - k);
            }
        }
        out.push(char::from(value + 63));
    }
    Ok(out)
}

/// Decodes one graph6 string; an optional `>>graph6<<` header and
/// surrounding whitespace are ignored. Edges come out sorted.
pub fn read_graph6(text: &str) -> Result<Multigraph, FormatError> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (&first, body) = bytes
        .split_first()
        .ok_or_else(|| FormatError::Graph6("empty input".into()))?;
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("byte {bad} outside 63..=126")));
    }
    if first == 126 {
        return Err(FormatError::TooLarge(MAX_ORDER + 1));
    }
    let n = usize::from(first - 63);
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Graph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) & (1 << (5 - k % 6)) != 0;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Ok(Multigraph::new(n, edges)?)
}

/// One graph per nonempty line.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Multigraph>, FormatError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(read_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complete, cycle, enumerate_connected_simple, path};

    #[test]
    fn triangle_is_bw() {
        assert_eq!(write_graph6(&complete(3)).unwrap(), "Bw");
        assert!(read_graph6("Bw").unwrap().same_edges_as(&complete(3)));
        assert!(read_graph6(">>graph6<<Bw\n").unwrap().same_edges_as(&complete(3)));
    }

    #[test]
    fn round_trips() {
        for g in enumerate_connected_simple(5).unwrap() {
            assert!(read_graph6(&write_graph6(&g).unwrap()).unwrap().same_edges_as(&g));
        }
        for g in [path(1), path(20), cycle(13), Multigraph::edgeless(0)] {
            assert!(read_graph6(&write_graph6(&g).unwrap()).unwrap().same_edges_as(&g));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(write_graph6(&cycle(2)), Err(FormatError::NotSimple));
        assert_eq!(write_graph6(&cycle(1)), Err(FormatError::NotSimple));
        assert_eq!(write_graph6(&path(63)), Err(FormatError::TooLarge(63)));
        assert!(read_graph6("").is_err());
        assert!(read_graph6("B").is_err());
        assert!(read_graph6("Bww").is_err());
        assert!(read_graph6("~??").is_err());
        assert!(read_graph6("B\u{7f}").is_err());
    }
}
