//! The graph6 text format.
//!
//! A header encodes `n` (one byte `63 + n` for `n <= 62`, otherwise `126` followed by three
//! bytes holding `n` in 18 bits), then the upper triangle `x(0,1), x(0,2), x(1,2), x(0,3), ...`
//! is packed big-endian into 6-bit groups, zero padded, each offset by 63.

use crate::error::{GraphError, Result};
use crate::graph::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + payload_len(n));
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
    // every byte is in 63..=126, hence ASCII
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let bad = |msg: &str| GraphError::Graph6(format!("{msg} in {text:?}"));
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty header")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated header"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
            return Err(if n > MAX_VERTICES { GraphError::Capacity(n) } else { bad("non-minimal header") });
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated header"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
            if n <= 62 {
                return Err(bad("non-minimal header"));
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - BIAS) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity(n));
    }
    let want = payload_len(n);
    if body.len() != want {
        return Err(bad(&format!("payload has {} bytes, expected {want}", body.len())));
    }
    let mut g = Graph::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = body[body.len() - 1] - BIAS;
        if last & ((1u8 << (6 - k % 6)) - 1) != 0 {
            return Err(bad("nonzero padding bits"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fixed_values() {
        assert_eq!(encode_graph6(&Graph::complete(4)), "C~");
        assert_eq!(decode_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(encode_graph6(&Graph::new(0)), "?");
        assert_eq!(decode_graph6("?").unwrap().n(), 0);
        assert_eq!(encode_graph6(&Graph::new(1)), "@");
    }

    #[test]
    fn long_header_round_trip() {
        let g = Graph::cycle(64);
        let s = encode_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63]);
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(decode_graph6(""), Err(GraphError::Graph6(_))));
        assert!(matches!(decode_graph6("C~~"), Err(GraphError::Graph6(_))));
        assert!(matches!(decode_graph6("C"), Err(GraphError::Graph6(_))));
        assert!(matches!(decode_graph6("B "), Err(GraphError::Graph6(_))));
        // n = 3 uses 3 payload bits; the low three must be zero
        assert!(matches!(decode_graph6("B@"), Err(GraphError::Graph6(_))));
        assert!(decode_graph6("Bw").is_ok());
        // n = 65 in the long form
        assert_eq!(decode_graph6("~?@@"), Err(GraphError::Capacity(65)));
    }
}
