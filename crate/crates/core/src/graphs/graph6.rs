//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column-major order, packed six bits per byte with an
//! offset of 63.

use super::Graph;
use crate::error::{Error, Result};

const MAX_N: usize = 258_047;

fn encode_size(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N, "graph6 supports at most {MAX_N} vertices");
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside the printable range 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [b'~', b'~', ..] => return Err(Error::Graph6("8-byte size headers are not supported".into())),
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let n_bits = n * n.saturating_sub(1) / 2;
    let expected = n_bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| ((body[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    if (n_bits..expected * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Parses one graph per non-blank line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}
