//! graph6 encoding and decoding.
//!
//! A record is `N(n)` followed by the upper triangle of the adjacency matrix
//! read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) …`), packed
//! big-endian into 6-bit groups and offset by 63. An optional `>>graph6<<`
//! header is accepted on decode.

use super::Graph;
use crate::error::{Error, Result};

pub const HEADER: &str = ">>graph6<<";

/// Largest order representable by the 8-byte size prefix.
pub const MAX_ORDER: usize = (1 << 36) - 1;

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as a graph6 record (no header, no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= MAX_ORDER, "graph too large for graph6");
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_order(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn sextet(bytes: &[u8], i: usize) -> Result<u64> {
    match bytes.get(i) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(parse_err(i, format!("byte 0x{b:02x} outside graph6 range"))),
        None => Err(parse_err(i, "truncated record")),
    }
}

/// Decodes one graph6 record. Trailing `\n`/`\r\n` and a leading header are
/// tolerated; anything else malformed is reported with its byte offset.
pub fn decode(record: &[u8]) -> Result<Graph> {
    let mut bytes = record;
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    let start = if bytes.starts_with(HEADER.as_bytes()) {
        HEADER.len()
    } else {
        0
    };
    let mut pos = start;
    let first = sextet(bytes, pos)?;
    let n = if first < 63 {
        pos += 1;
        first as usize
    } else if sextet(bytes, pos + 1)? < 63 {
        let mut n = 0u64;
        for k in 0..3 {
            n = (n << 6) | sextet(bytes, pos + 1 + k)?;
        }
        pos += 4;
        n as usize
    } else {
        let mut n = 0u64;
        for k in 0..6 {
            n = (n << 6) | sextet(bytes, pos + 2 + k)?;
        }
        pos += 8;
        n as usize
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() < needed {
        return Err(parse_err(bytes.len(), format!("expected {needed} edge bytes, found {}", body.len())));
    }
    if body.len() > needed {
        return Err(parse_err(pos + needed, "trailing bytes after record"));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte_idx = k / 6;
            let word = sextet(bytes, pos + byte_idx)?;
            if word >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
            if k == pairs {
                break 'outer;
            }
        }
    }
    if pairs % 6 != 0 {
        let last = sextet(bytes, pos + needed - 1)?;
        let pad = 6 - pairs % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(pos + needed - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

pub fn decode_str(record: &str) -> Result<Graph> {
    decode(record.as_bytes())
}

/// Outcome of reading a newline-delimited graph6 stream.
#[derive(Debug, Default)]
pub struct StreamRead {
    pub graphs: Vec<Graph>,
    /// `(line number, error)` for every rejected record (1-based lines).
    pub malformed: Vec<(usize, Error)>,
}

/// Parses a newline-delimited graph6 stream, skipping blank lines.
pub fn read_stream(text: &[u8]) -> StreamRead {
    let mut out = StreamRead::default();
    for (i, line) in text.split(|&b| b == b'\n').enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if line.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        match decode(line) {
            Ok(g) => out.graphs.push(g),
            Err(e) => out.malformed.push((i + 1, e)),
        }
    }
    out
}
