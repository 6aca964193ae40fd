//! Resumable progress for [`super::check_conjecture`].
//!
//! ```text
//! spreadlab-conjecture-checkpoint v1
//! n 8 chunk-size 65536
//! chunk 3 0 32768 41 best=3.5.7fff:402e... other=- flagged=-
//! ```
//!
//! One `chunk` line per finished `(a, start, end)` range with its mergeable
//! summary. Spreads are stored as raw `f64` bits so a resumed run reproduces
//! an uninterrupted one exactly. A final line without a newline is treated
//! as torn and ignored.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

use super::canon::ClassId;
use super::{ChunkSummary, Entry};
use crate::error::{Error, Result};

const HEADER: &str = "spreadlab-conjecture-checkpoint v1";

pub(crate) type ChunkKey = (usize, u64, u64);

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

fn fmt_entry(e: &Option<Entry>) -> String {
    e.map_or_else(|| "-".to_string(), |e| entry_str(&e))
}

fn entry_str(e: &Entry) -> String {
    format!("{}.{}.{:x}:{:016x}", e.id.a, e.id.b, e.id.key, e.s_q.to_bits())
}

fn parse_entry(s: &str) -> Result<Entry> {
    let err = || bad(format!("malformed entry `{s}`"));
    let (id, bits) = s.split_once(':').ok_or_else(err)?;
    let mut parts = id.split('.');
    let mut next = || parts.next().ok_or_else(err);
    let a = next()?.parse().map_err(|_| err())?;
    let b = next()?.parse().map_err(|_| err())?;
    let key = u32::from_str_radix(next()?, 16).map_err(|_| err())?;
    let bits = u64::from_str_radix(bits, 16).map_err(|_| err())?;
    Ok(Entry {
        id: ClassId { a, b, key },
        s_q: f64::from_bits(bits),
    })
}

fn field<'a>(tok: Option<&'a str>, name: &str) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(name)?.strip_prefix('='))
        .ok_or_else(|| bad(format!("missing `{name}=` field")))
}

fn optional_entry(s: &str) -> Result<Option<Entry>> {
    if s == "-" {
        Ok(None)
    } else {
        parse_entry(s).map(Some)
    }
}

pub(crate) fn chunk_line(key: ChunkKey, s: &ChunkSummary) -> String {
    let flagged = if s.flagged.is_empty() {
        "-".to_string()
    } else {
        s.flagged.iter().map(entry_str).collect::<Vec<_>>().join(";")
    };
    format!(
        "chunk {} {} {} {} best={} other={} flagged={}\n",
        key.0,
        key.1,
        key.2,
        s.classes,
        fmt_entry(&s.best),
        fmt_entry(&s.best_other),
        flagged
    )
}

fn parse_chunk(line: &str) -> Result<(ChunkKey, ChunkSummary)> {
    let mut tok = line.split_whitespace();
    if tok.next() != Some("chunk") {
        return Err(bad(format!("unexpected line `{line}`")));
    }
    let mut num = |what: &str| -> Result<u64> {
        tok.next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(format!("chunk line lacks {what}: `{line}`")))
    };
    let key = (num("a")? as usize, num("start")?, num("end")?);
    let classes = num("class count")?;
    let best = optional_entry(field(tok.next(), "best")?)?;
    let best_other = optional_entry(field(tok.next(), "other")?)?;
    let flagged = match field(tok.next(), "flagged")? {
        "-" => Vec::new(),
        list => list.split(';').map(parse_entry).collect::<Result<_>>()?,
    };
    Ok((key, ChunkSummary { classes, best, best_other, flagged }))
}

/// Append-only checkpoint shared by worker threads.
pub(crate) struct Checkpoint {
    file: Mutex<File>,
}

impl Checkpoint {
    /// Opens or creates the file, returning the chunks it already records.
    pub(crate) fn open(path: &Path, n: usize, chunk_size: u64) -> Result<(Self, HashMap<ChunkKey, ChunkSummary>)> {
        let io = |e: std::io::Error| bad(format!("{}: {e}", path.display()));
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(io(e)),
        };
        let params = format!("n {n} chunk-size {chunk_size}");
        let mut done = HashMap::new();
        let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        if text.is_empty() {
            file.write_all(format!("{HEADER}\n{params}\n").as_bytes()).map_err(io)?;
        } else {
            // drop a torn final line
            let complete = &text[..text.rfind('\n').map_or(0, |i| i + 1)];
            let mut lines = complete.lines();
            if lines.next() != Some(HEADER) {
                return Err(bad(format!("{} is not a conjecture checkpoint", path.display())));
            }
            match lines.next() {
                Some(p) if p == params => {}
                Some(p) => return Err(bad(format!("checkpoint is for `{p}`, this run is `{params}`"))),
                None => return Err(bad("checkpoint lacks its parameter line")),
            }
            for line in lines.filter(|l| !l.trim().is_empty()) {
                let (key, summary) = parse_chunk(line)?;
                done.insert(key, summary);
            }
            if complete.len() != text.len() {
                // rewrite without the torn tail so appends start on a fresh line
                drop(file);
                std::fs::write(path, complete).map_err(io)?;
                file = OpenOptions::new().append(true).open(path).map_err(io)?;
            }
        }
        Ok((Checkpoint { file: Mutex::new(file) }, done))
    }

    pub(crate) fn record(&self, key: ChunkKey, summary: &ChunkSummary) -> Result<()> {
        let line = chunk_line(key, summary);
        let mut f = self.file.lock().map_err(|_| bad("checkpoint writer poisoned"))?;
        f.write_all(line.as_bytes()).and_then(|()| f.flush()).map_err(|e| bad(e.to_string()))
    }
}
