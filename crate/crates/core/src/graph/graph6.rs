//! The graph6 text format (as used by nauty and friends).
//!
//! Order `n` is written as one byte `n + 63` for `n < 63`, as `~` plus three
//! 6-bit groups for `n < 258048`, and as `~~` plus six groups beyond that.
//! The upper triangle follows column by column (`x(0,1), x(0,2), x(1,2), ...`),
//! packed six bits per byte, most significant first, each byte offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(b'~');
        push_groups(&mut out, n as u64, 3);
    } else {
        out.extend_from_slice(b"~~");
        push_groups(&mut out, n as u64, 6);
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

fn push_groups(out: &mut Vec<u8>, value: u64, groups: u32) {
    for k in (0..groups).rev() {
        out.push(((value >> (6 * k)) & 0x3f) as u8 + 63);
    }
}

pub fn decode(s: &str) -> Result<Graph> {
    let trimmed = s.trim_end_matches(['\n', '\r']);
    let (offset0, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(offset0 + i, format!("byte 0x{b:02x} is not a graph6 character")));
        }
    }
    if body.is_empty() {
        return Err(Error::parse(offset0, "empty graph6 string"));
    }

    let read_groups = |start: usize, count: usize| -> Result<u64> {
        if body.len() < start + count {
            return Err(Error::parse(offset0 + body.len(), "truncated order field"));
        }
        Ok(body[start..start + count]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | u64::from(b - 63)))
    };
    let (n, mut pos) = if body[0] != b'~' {
        (u64::from(body[0] - 63), 1)
    } else if body.len() > 1 && body[1] == b'~' {
        (read_groups(2, 6)?, 8)
    } else {
        (read_groups(1, 3)?, 4)
    };
    let n = n as usize;
    if n == 0 {
        return Err(Error::parse(offset0, "graph6 order 0 is not a valid graph here"));
    }

    let bits = n * (n - 1) / 2;
    let need = bits.div_ceil(6);
    let have = body.len() - pos;
    if have < need {
        return Err(Error::parse(
            offset0 + body.len(),
            format!("truncated: order {n} needs {need} adjacency byte(s), found {have}"),
        ));
    }
    if have > need {
        return Err(Error::parse(offset0 + pos + need, "trailing bytes after adjacency data"));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[pos + k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if !bits.is_multiple_of(6) {
        let last = body[pos + need - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(offset0 + pos + need - 1, "nonzero padding bits"));
        }
    }
    pos += need;
    debug_assert_eq!(pos, body.len());
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, nonisomorphic_graphs};

    fn fam(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn k4_encodes_to_c_tilde() {
        assert_eq!(encode(&fam("complete:4")), "C~");
    }

    #[test]
    fn known_strings() {
        // K2, P3 (0-1-2), the 5-vertex example graph from petgraph's test suite
        assert_eq!(encode(&fam("complete:2")), "A_");
        assert_eq!(encode(&fam("path:3")), "Bg");
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn truncated_strings_fail() {
        assert!(matches!(decode("C"), Err(Error::Parse { offset: 1, .. })));
        assert!(decode("").is_err());
        assert!(decode("C~~").is_err());
        assert!(decode("C\u{7f}").is_err());
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(decode(">>graph6<<C~").unwrap(), fam("complete:4"));
    }

    #[test]
    fn large_orders_use_long_form() {
        let g = fam("path:70");
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for n in 1..=5 {
            for g in nonisomorphic_graphs(n) {
                assert_eq!(decode(&encode(&g)).unwrap(), g);
            }
        }
        let w5 = fam("wheel:5");
        assert_eq!(decode(&encode(&w5)).unwrap(), w5);
    }
}
