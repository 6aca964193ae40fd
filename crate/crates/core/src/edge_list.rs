//! Plain-text edge lists.
//!
//! ```text
//! n 4        # optional, must come first; allows isolated vertices
//! 0 1
//! 1 2
//! ```
//!
//! Labels are 0-based integers separated by whitespace; pairs may share a
//! line or span lines. `#` starts a comment.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        tokens.extend(line.split_whitespace().map(|t| (idx + 1, t)));
    }

    let mut rest = tokens.as_slice();
    if let [(line, "n"), tail @ ..] = rest {
        let (_, count) = tail.first().ok_or_else(|| Error::EdgeList {
            line: *line,
            message: "`n` without a vertex count".into(),
        })?;
        declared = Some(count.parse().map_err(|_| Error::EdgeList {
            line: *line,
            message: format!("invalid vertex count `{count}`"),
        })?);
        rest = &tail[1..];
    }

    if rest.len() % 2 == 1 {
        let (line, tok) = rest[rest.len() - 1];
        return Err(Error::EdgeList {
            line,
            message: format!("dangling label `{tok}` without a partner"),
        });
    }

    let mut pairs = Vec::with_capacity(rest.len() / 2);
    for chunk in rest.chunks(2) {
        let label = |&(line, tok): &(usize, &str)| -> Result<usize> {
            if tok.starts_with('-') && tok[1..].parse::<u64>().is_ok() {
                return Err(Error::EdgeList {
                    line,
                    message: format!("negative label {tok}"),
                });
            }
            tok.parse().map_err(|_| Error::EdgeList {
                line,
                message: format!("invalid label `{tok}`"),
            })
        };
        let (u, v) = (label(&chunk[0])?, label(&chunk[1])?);
        let line = chunk[1].0;
        if u == v {
            return Err(Error::EdgeList {
                line,
                message: format!("loop at vertex {u}"),
            });
        }
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(Error::EdgeList {
                    line,
                    message: format!("label {} is not below declared n = {n}", u.max(v)),
                });
            }
        }
        pairs.push((u, v));
    }

    let n = declared.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, pairs)
}

/// Writes `n <count>` followed by one edge per line.
pub fn write(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
