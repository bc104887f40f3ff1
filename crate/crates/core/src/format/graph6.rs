//! graph6 encoding as published with nauty (`formats.txt`).
//!
//! `N(n)` is one byte `n + 63` for `n <= 62`, else `126` followed by three
//! 6-bit groups. The body is the upper triangle read column by column
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), zero-padded to a multiple of six bits,
//! each 6-bit group offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 record. An optional `>>graph6<<` prefix and trailing
/// line terminators are accepted; anything else malformed is reported with
/// the byte offset at which it was found.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut base = 0;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
        base = HEADER.len();
    }
    let err = |offset: usize, msg: &str| Error::Graph6 { offset: base + offset, msg: msg.to_string() };

    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }
    let first = *bytes.first().ok_or_else(|| err(0, "empty record"))?;
    let (n, body_start) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(err(bytes.len(), "truncated order field"));
        }
        if bytes[1] == 126 {
            return Err(err(1, "orders above 258047 are not supported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices(n));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < need {
        return Err(err(bytes.len(), &format!("truncated adjacency: expected {need} bytes, found {}", body.len())));
    }
    if body.len() > need {
        return Err(err(body_start + need, "trailing bytes after adjacency"));
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[need - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(body_start + need - 1, "nonzero padding bits"));
        }
    }
    Graph::from_adjacency(adj)
}

/// Parses one record per non-empty line. Offsets in errors are relative to the line.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(emit_graph6(&Graph::empty(5).unwrap()), "D??");
        assert_eq!(emit_graph6(&Graph::complete(5).unwrap()), "D~{");
        assert_eq!(emit_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(emit_graph6(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn nauty_reference_strings() {
        // Edges 0-2, 0-4, 1-3, 3-4, as encoded by nauty's showg.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn large_order_uses_long_header() {
        let g = Graph::cycle(63).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        let k = Graph::complete(64).unwrap();
        assert_eq!(parse_graph6(&emit_graph6(&k)).unwrap(), k);
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(parse_graph6(">>graph6<<D~{\n").unwrap(), Graph::complete(5).unwrap());
    }

    #[test]
    fn malformed_records_report_offsets() {
        match parse_graph6("D~") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6("D~{?") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6("D ?") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("unexpected {other:?}"),
        }
        // K5 with a padding bit set.
        assert!(matches!(parse_graph6("D~|"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("~??").is_err());
    }

    #[test]
    fn stream_skips_blank_lines() {
        let gs = parse_graph6_stream("D??\n\nD~{\n").unwrap();
        assert_eq!(gs.len(), 2);
    }
}
