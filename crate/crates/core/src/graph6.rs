//! graph6 text encoding (header-less; the optional `>>graph6<<` prefix is accepted on input).
//!
//! Bits of the upper triangle are taken column by column, `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six to a byte and offset by 63.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, Rows, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6) + 3);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }

    let rows = g.rows();
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(rows[i] & bit(j) != 0);
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
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} is outside the graph6 range",
            bytes[pos]
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => {
            return Err(Error::Graph6(
                "graphs this large are not supported (8-byte header)".into(),
            ))
        }
        [126, rest @ ..] => {
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
    if n > MAX_VERTICES {
        return Err(Error::CapacityExceeded { requested: n });
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Error::Graph6(format!(
            "truncated payload: expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after the payload",
            body.len() - expected
        )));
    }

    let mut rows: Rows = SmallVec::from_elem(0, n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_known_encodings() {
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
    }

    #[test]
    fn decode_known() {
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(decode(">>graph6<<C~\n").unwrap(), Graph::complete(4).unwrap());
    }

    #[test]
    fn large_header_round_trip() {
        let g = Graph::cycle(64).unwrap();
        let text = encode(&g);
        assert!(text.starts_with('~'));
        assert_eq!(decode(&text).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(decode(""), Err(Error::Graph6(_))));
        assert!(matches!(decode("C"), Err(Error::Graph6(_))));
        assert!(matches!(decode("Bww"), Err(Error::Graph6(_))));
        assert!(matches!(decode("B w"), Err(Error::Graph6(_))));
        assert!(matches!(decode("~?"), Err(Error::Graph6(_))));
        assert!(matches!(decode("~?AA"), Err(Error::CapacityExceeded { .. })));
    }
}
