//! graph6 encoding.
//!
//! A line is the vertex count `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order (`(0,1), (0,2), (1,2), (0,3), ..`), packed
//! six bits per byte, most significant bit first, each byte offset by 63.
//! Only the counts this crate supports (`n <= 64`) are accepted.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is not a graph6 character")]
    BadCharacter { offset: usize, byte: u8 },
    #[error("truncated graph6 string: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing bytes starting at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("non-zero padding bits in byte at offset {offset}")]
    NonZeroPadding { offset: usize },
    #[error("graph6 string declares {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(BIAS + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (BIAS..=126).contains(&b) => Ok(b - BIAS),
        Some(&byte) => Err(Graph6Error::BadCharacter { offset, byte }),
        None => unreachable!("caller checks length"),
    }
}

pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            // 8-byte form, only used for n >= 258048
            return Err(Graph6Error::TooManyVertices(258048));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated { expected: 4, found: bytes.len() });
        }
        let mut n = 0usize;
        for offset in 1..4 {
            n = n << 6 | sextet(bytes, offset)? as usize;
        }
        (n, 4)
    } else {
        (sextet(bytes, 0)? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = header + bits.div_ceil(6);
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: bytes.len() });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingBytes { offset: expected });
    }

    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let offset = header + k / 6;
            if sextet(bytes, offset)? >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let offset = expected - 1;
        let pad = 6 - bits % 6;
        if sextet(bytes, offset)? & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding { offset });
        }
    }
    Ok(Graph::from_rows(rows).expect("decoded rows are symmetric and loopless"))
}
