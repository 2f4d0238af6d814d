//! graph6 encoding and decoding, plus a plain edge-list format for debugging.
//!
//! Bit order follows the nauty formats note: the upper triangle is read
//! column by column, (0,1),(0,2),(1,2),(0,3),..., packed six bits per byte,
//! most significant first, each byte offset by 63.

use graph_core::{Graph, GraphError, MAX_N};

pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("empty line")]
    Empty,
    #[error("byte {0:#04x} at offset {1} outside 63..=126")]
    BadByte(u8, usize),
    #[error("malformed size header")]
    BadHeader,
    #[error("vertex count {0} exceeds {MAX_N}")]
    TooLarge(usize),
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    /// Nonzero padding is tolerated and reported as a warning.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    NonzeroPadding,
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Canonical graph6 line for `g`, without trailing newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + data_len(n));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            acc = acc << 1 | (row >> i & 1) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(line: &str) -> Result<Graph, CodecError> {
    parse_graph6_with(line, Mode::Strict).map(|(g, _)| g)
}

pub fn parse_graph6_with(line: &str, mode: Mode) -> Result<(Graph, Vec<Warning>), CodecError> {
    let mut bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if let Some(rest) = bytes.strip_prefix(HEADER.as_bytes()) {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(CodecError::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(CodecError::BadByte(b, i));
        }
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(CodecError::BadHeader);
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
        // The long form is only valid for n >= 63.
        if n < 63 {
            return Err(CodecError::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n > MAX_N {
        return Err(CodecError::TooLarge(n));
    }
    let expected = data_len(n);
    if body.len() != expected {
        return Err(CodecError::Length { expected, found: body.len() });
    }
    let mut rows = vec![0u128; n];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[bit / 6] - 63;
            if b >> (5 - bit % 6) & 1 == 1 {
                rows[i] |= 1u128 << j;
                rows[j] |= 1u128 << i;
            }
            bit += 1;
        }
    }
    let mut warnings = Vec::new();
    if bit % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1u8 << (6 - bit % 6)) - 1) != 0 {
            match mode {
                Mode::Strict => return Err(CodecError::NonzeroPadding),
                Mode::Lenient => warnings.push(Warning::NonzeroPadding),
            }
        }
    }
    Ok((Graph::from_rows(rows), warnings))
}

/// Debug format: `n: u-v u-v ...`.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{}:", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!(" {u}-{v}"));
    }
    s
}

pub fn parse_edge_list(line: &str) -> Result<Graph, CodecError> {
    let bad = |m: &str| CodecError::EdgeList(m.to_string());
    let (head, rest) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
    let n: usize = head.trim().parse().map_err(|_| bad("bad vertex count"))?;
    let mut edges = Vec::new();
    for tok in rest.split_whitespace() {
        let (a, b) = tok.split_once('-').ok_or_else(|| bad(tok))?;
        let u = a.parse().map_err(|_| bad(tok))?;
        let v = b.parse().map_err(|_| bad(tok))?;
        edges.push((u, v));
    }
    Ok(Graph::new(n, &edges)?)
}
