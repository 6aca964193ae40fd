//! Exhaustive checks over connected bipartite graphs: the ordering of
//! `S_Q(K_{a,n-a})` in `a`, and whether `K_{floor(n/2), ceil(n/2)}` has the
//! least signless Laplacian spread among all connected bipartite graphs of
//! order `n`.
//!
//! Isomorphism classes are generated without duplicates (see [`canon`]), so
//! no global deduplication table is needed and chunks are independent.

pub mod canon;
mod checkpoint;

use std::cmp::Ordering;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::time::Instant;

use serde::Serialize;

use crate::distance::DistanceData;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::par::{self, Exec};
use crate::spectral::{kab_q_extremes, spread_from, MatrixKind};
use canon::{Canonizer, ClassId};
use checkpoint::{Checkpoint, ChunkKey};

pub use canon::MAX_SMALL_PART;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 10;
/// Relative to the reference spread, below which two spreads count as equal.
pub const TIE_TOL: f64 = 1e-6;
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

fn check_order(n: usize) -> Result<()> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::OutOfRange(format!("n must be in {MIN_ORDER}..={MAX_ORDER}, got {n}")));
    }
    Ok(())
}

/// `(a, n - a)` for `1 <= a <= n/2`.
fn splits(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n / 2).map(move |a| (a, n - a))
}

/// Classes with parts `a`, `b` whose subset index lies in `start..end`.
fn classes_in_range(c: &Canonizer, b: usize, start: u64, end: u64, mut visit: impl FnMut(&[u8])) {
    let mut cols = vec![0u8; b];
    for s in start..end {
        c.columns_of(s, &mut cols);
        if c.is_canonical_connected(&cols) {
            visit(&cols);
        }
    }
}

/// One representative per isomorphism class, ordered by part size and
/// canonical key.
pub fn enumerate_classes(n: usize) -> Result<Vec<ClassId>> {
    check_order(n)?;
    let mut out = Vec::new();
    for (a, b) in splits(n) {
        let c = Canonizer::new(a, b);
        classes_in_range(&c, b, 0, 1 << (a * b), |cols| out.push(c.class_id(cols)));
    }
    Ok(out)
}

/// Every connected bipartite graph on `n` vertices up to isomorphism,
/// `2 <= n <= 10`. The smaller colour class is labelled first.
pub fn enumerate_connected_bipartite(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_classes(n)?.iter().map(ClassId::graph).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Monotonicity {
    pub n: usize,
    /// `S_Q(K_{a, n-a})` for `a = 1 ..= n/2`.
    pub spreads: Vec<f64>,
    pub strictly_decreasing: bool,
}

pub fn check_monotonicity(n: usize) -> Result<Monotonicity> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("needs n >= 4, got {n}")));
    }
    let spreads = (1..=n / 2)
        .map(|a| kab_q_extremes(a, n).map(|e| e.spread))
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing = spreads.windows(2).all(|w| w[0] > w[1]);
    Ok(Monotonicity {
        n,
        spreads,
        strictly_decreasing,
    })
}

/// A class together with its spread.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Entry {
    pub id: ClassId,
    pub s_q: f64,
}

impl Entry {
    fn cmp(&self, other: &Entry) -> Ordering {
        self.s_q.total_cmp(&other.s_q).then(self.id.cmp(&other.id))
    }

    fn min(a: Option<Entry>, b: Option<Entry>) -> Option<Entry> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if y.cmp(&x) == Ordering::Less { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

/// Mergeable result of one chunk; merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct ChunkSummary {
    pub classes: u64,
    pub best: Option<Entry>,
    /// Best class other than the reference graph.
    pub best_other: Option<Entry>,
    /// Classes violating the conjectured inequality or tying with it.
    pub flagged: Vec<Entry>,
}

impl ChunkSummary {
    fn merge(mut self, other: &ChunkSummary) -> ChunkSummary {
        self.classes += other.classes;
        self.best = Entry::min(self.best, other.best);
        self.best_other = Entry::min(self.best_other, other.best_other);
        self.flagged.extend_from_slice(&other.flagged);
        self
    }
}

struct Target {
    id: ClassId,
    s_q: f64,
}

fn spread_of(id: &ClassId) -> Result<f64> {
    Ok(spread_from(&DistanceData::new(&id.graph())?, MatrixKind::Dsl)?.spread)
}

fn scan_chunk(key: ChunkKey, n: usize, target: &Target) -> Result<ChunkSummary> {
    let (a, start, end) = key;
    let b = n - a;
    let c = Canonizer::new(a, b);
    let mut summary = ChunkSummary::default();
    let mut failure = None;
    classes_in_range(&c, b, start, end, |cols| {
        if failure.is_some() {
            return;
        }
        let id = c.class_id(cols);
        let s_q = match spread_of(&id) {
            Ok(s) => s,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let e = Entry { id, s_q };
        summary.classes += 1;
        summary.best = Entry::min(summary.best, Some(e));
        // ties are settled by class identity, never by the float comparison
        if id != target.id {
            summary.best_other = Entry::min(summary.best_other, Some(e));
            if s_q <= target.s_q + TIE_TOL {
                summary.flagged.push(e);
            }
        }
    });
    failure.map_or(Ok(summary), Err)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub graph6: String,
    /// Colour class sizes, smaller first.
    pub parts: (usize, usize),
    pub edges: usize,
    pub s_q: f64,
}

impl Candidate {
    fn of(e: &Entry) -> Candidate {
        let g = e.id.graph();
        Candidate {
            graph6: graph6::write(&g),
            parts: (usize::from(e.id.a), usize::from(e.id.b)),
            edges: g.size(),
            s_q: e.s_q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitCount {
    pub a: usize,
    pub b: usize,
    pub classes: u64,
}

/// Run metadata; not part of the mathematical result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunStats {
    pub elapsed_ms: u128,
    pub chunks: usize,
    pub chunks_resumed: usize,
    pub exec: Exec,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub graphs_checked: u64,
    pub classes_by_split: Vec<SplitCount>,
    /// `K_{floor(n/2), ceil(n/2)}` with its closed-form spread.
    pub reference: Candidate,
    pub minimizer: Candidate,
    pub minimizer_is_reference: bool,
    /// Least spread among the other classes.
    pub runner_up: Option<Candidate>,
    pub verdict: Verdict,
    pub counterexamples: Vec<Candidate>,
    pub stats: RunStats,
}

impl ConjectureReport {
    /// Equality ignoring [`RunStats`].
    pub fn same_result(&self, other: &ConjectureReport) -> bool {
        let strip = |r: &ConjectureReport| ConjectureReport {
            stats: RunStats {
                elapsed_ms: 0,
                chunks: 0,
                chunks_resumed: 0,
                exec: Exec::Sequential,
                threads: None,
            },
            ..r.clone()
        };
        strip(self) == strip(other)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureOptions {
    pub exec: Exec,
    pub threads: Option<usize>,
    /// Subsets of the `a*b` possible edges per work unit.
    pub chunk_size: u64,
    pub checkpoint: Option<PathBuf>,
    /// Stop with an error after this many newly computed chunks; only
    /// useful for exercising resumption.
    pub stop_after: Option<usize>,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        ConjectureOptions {
            exec: Exec::Parallel,
            threads: None,
            chunk_size: DEFAULT_CHUNK_SIZE,
            checkpoint: None,
            stop_after: None,
        }
    }
}

fn chunk_plan(n: usize, chunk_size: u64) -> Vec<ChunkKey> {
    splits(n)
        .flat_map(|(a, b)| {
            let total = 1u64 << (a * b);
            (0..total.div_ceil(chunk_size)).map(move |k| (a, k * chunk_size, ((k + 1) * chunk_size).min(total)))
        })
        .collect()
}

/// Evaluates `S_Q` on every connected bipartite class of order `n` and
/// compares it with `S_Q(K_{floor(n/2), ceil(n/2)})`.
pub fn check_conjecture(n: usize, options: &ConjectureOptions) -> Result<ConjectureReport> {
    check_order(n)?;
    if options.chunk_size == 0 {
        return Err(Error::OutOfRange("chunk size must be positive".into()));
    }
    let started = Instant::now();
    let target = Target {
        id: ClassId::complete(n / 2, n - n / 2),
        s_q: kab_q_extremes(n / 2, n)?.spread,
    };
    let plan = chunk_plan(n, options.chunk_size);
    let (checkpoint, done) = match &options.checkpoint {
        Some(path) => {
            let (ck, done) = Checkpoint::open(path, n, options.chunk_size)?;
            (Some(ck), done)
        }
        None => (None, Default::default()),
    };
    let pending: Vec<ChunkKey> = plan.iter().copied().filter(|k| !done.contains_key(k)).collect();
    let budget = AtomicUsize::new(0);

    let fresh: Vec<Result<Option<(ChunkKey, ChunkSummary)>>> = par::with_threads(options.threads, || {
        par::map(options.exec, &pending, |&key| {
            if let Some(limit) = options.stop_after {
                if budget.fetch_add(1, AtomicOrdering::SeqCst) >= limit {
                    return Ok(None);
                }
            }
            let summary = scan_chunk(key, n, &target)?;
            if let Some(ck) = &checkpoint {
                ck.record(key, &summary)?;
            }
            Ok(Some((key, summary)))
        })
    })?;

    let mut results: Vec<(ChunkKey, ChunkSummary)> = Vec::with_capacity(plan.len());
    let mut stopped = false;
    for r in fresh {
        match r? {
            Some(x) => results.push(x),
            None => stopped = true,
        }
    }
    if stopped {
        return Err(Error::Checkpoint(format!(
            "stopped after {} chunks; rerun with the same checkpoint to resume",
            results.len()
        )));
    }
    let chunks_resumed = plan.iter().filter(|k| done.contains_key(k)).count();
    results.extend(done.into_iter().filter(|(k, _)| plan.contains(k)));
    results.sort_by_key(|(k, _)| *k);

    let mut classes_by_split: Vec<SplitCount> = splits(n).map(|(a, b)| SplitCount { a, b, classes: 0 }).collect();
    for ((a, _, _), s) in &results {
        classes_by_split[a - 1].classes += s.classes;
    }
    let total = results
        .iter()
        .fold(ChunkSummary::default(), |acc, (_, s)| acc.merge(s));
    let mut flagged = total.flagged;
    flagged.sort_by(Entry::cmp);
    let best = total.best.ok_or_else(|| Error::Numeric("no classes enumerated".into()))?;

    Ok(ConjectureReport {
        n,
        graphs_checked: total.classes,
        classes_by_split,
        reference: Candidate::of(&Entry {
            id: target.id,
            s_q: target.s_q,
        }),
        minimizer: Candidate::of(&best),
        minimizer_is_reference: best.id == target.id,
        runner_up: total.best_other.as_ref().map(Candidate::of),
        verdict: if flagged.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Counterexample
        },
        counterexamples: flagged.iter().map(Candidate::of).collect(),
        stats: RunStats {
            elapsed_ms: started.elapsed().as_millis(),
            chunks: plan.len(),
            chunks_resumed,
            exec: options.exec,
            threads: options.threads,
        },
    })
}
