//! The graph6 interchange format.
//!
//! A graph6 string is `N(n) R(x)` where every byte is 63 plus a 6-bit group.
//! `N(n)` is one byte for `n <= 62`, `126` followed by three bytes for
//! `n <= 258047`, and `126 126` followed by six bytes beyond that. `R(x)` packs
//! the upper triangle column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! most significant bit first, zero-padded to a multiple of six.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Parses a single graph6 line. A `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn parse(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => {
            if trimmed.starts_with(">>") {
                return Err(err(0, "malformed header"));
            }
            (trimmed.as_bytes(), 0)
        }
    };
    let mut pos = 0;
    let mut next = |what: &str| -> Result<u64> {
        let byte = *body
            .get(pos)
            .ok_or_else(|| err(base + pos, format!("truncated {what}")))?;
        if !(BIAS..=126).contains(&byte) {
            return Err(err(base + pos, format!("byte {byte} outside 63..=126")));
        }
        pos += 1;
        Ok(u64::from(byte - BIAS))
    };

    let n = match next("size")? {
        63 => match next("size")? {
            63 => (0..6).try_fold(0, |acc, _| Ok::<_, Error>((acc << 6) | next("size")?))?,
            top => (0..2).try_fold(top, |acc, _| Ok::<_, Error>((acc << 6) | next("size")?))?,
        },
        small => small,
    };
    finish(body, base, pos, n as usize)
}

fn finish(body: &[u8], base: usize, start: usize, n: usize) -> Result<Graph> {
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let data = &body[start..];
    if data.len() < needed {
        return Err(err(
            base + body.len(),
            format!("truncated bit stream: expected {needed} bytes, found {}", data.len()),
        ));
    }
    if data.len() > needed {
        return Err(err(base + start + needed, "trailing bytes after bit stream"));
    }
    for (i, &byte) in data.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(err(base + start + i, format!("byte {byte} outside 63..=126")));
        }
    }
    let bit = |k: usize| (data[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` without a header.
pub fn write(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            group = (group << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(group + BIAS);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin, Family, BUILTIN_NAMES};

    #[test]
    fn k4_and_k2() {
        let k4 = parse("C~").unwrap();
        assert_eq!(k4.order(), 4);
        assert_eq!(k4.size(), 6);
        let k2 = parse("A_").unwrap();
        assert_eq!((k2.order(), k2.size()), (2, 1));
        assert_eq!(parse(">>graph6<<A_").unwrap(), k2);
    }

    #[test]
    fn known_encoding() {
        // 5 vertices, edges 0-2 0-4 1-3 3-4
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write(&g), "DQc");
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse("C"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse("C~~"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse("C\x7f"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse(">>graph7<<C~"), Err(Error::Graph6 { offset: 0, .. })));
    }

    #[test]
    fn large_orders_use_long_size_field() {
        let g = Family::Path(70).generate().unwrap();
        let s = write(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse(&s).unwrap(), g);
        // the 36-bit size form also decodes small orders
        let long = format!("~~{}A_", "?".repeat(5));
        assert_eq!(parse(&long).unwrap(), parse("A_").unwrap());
    }

    #[test]
    fn corpus_round_trips() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            assert_eq!(parse(&write(&g)).unwrap(), g, "{name}");
        }
    }
}
