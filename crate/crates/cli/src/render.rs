//! Plain and CSV renderings. Plain text rounds to 4 decimals and numbers
//! vertices from 1; JSON is produced directly from the library types.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use spreadlab::bounds::{BoundReport, LegacyComparison, WitnessStat};
use spreadlab::linalg::GROUP_TOL;
use spreadlab::search::{Candidate, Monotonicity};
use spreadlab::tables::CellResult;
use spreadlab::{ConjectureReport, Graph, MatrixKind, QuotientMatrix, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

fn f4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn vertices(vs: &[usize]) -> String {
    vs.iter().map(|v| format!("v{}", v + 1)).collect::<Vec<_>>().join(" ")
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[derive(Serialize)]
pub struct Eigen {
    value: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
pub struct SpectrumResult {
    matrix: MatrixKind,
    n: usize,
    edges: usize,
    eigenvalues: Vec<f64>,
    grouped: Vec<Eigen>,
    largest: f64,
    least: f64,
    spread: f64,
}

impl SpectrumResult {
    pub fn new(g: &Graph, matrix: MatrixKind, s: &Spectrum) -> Self {
        SpectrumResult {
            matrix,
            n: g.order(),
            edges: g.size(),
            eigenvalues: s.values().to_vec(),
            grouped: s
                .grouped(GROUP_TOL)
                .into_iter()
                .map(|(value, multiplicity)| Eigen { value, multiplicity })
                .collect(),
            largest: s.largest(),
            least: s.least(),
            spread: s.spread(),
        }
    }
}

pub fn spectrum_plain(input: &str, r: &SpectrumResult) -> String {
    let groups: Vec<String> = r
        .grouped
        .iter()
        .map(|e| match e.multiplicity {
            1 => f4(e.value),
            k => format!("{}^[{k}]", f4(e.value)),
        })
        .collect();
    format!(
        "input     {input} (n={}, m={})\nmatrix    {}\nspectrum  {}\nlargest   {}\nleast     {}\nspread    {}\n",
        r.n,
        r.edges,
        r.matrix,
        groups.join(", "),
        f4(r.largest),
        f4(r.least),
        f4(r.spread)
    )
}

pub fn spectrum_csv(r: &SpectrumResult) -> String {
    csv_text(
        &["index", "eigenvalue"],
        r.eigenvalues.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), v.to_string()]),
    )
}

fn stat(s: &WitnessStat) -> String {
    match s {
        WitnessStat::AverageDistanceDegree(t) => format!("t={t}"),
        WitnessStat::TransmissionSum(s) => format!("s={s}"),
    }
}

pub fn bound_plain(input: &str, r: &BoundReport) -> String {
    let mut out = String::new();
    let (pname, pval) = r.parameter;
    let _ = writeln!(out, "input        {input} (n={})", r.n);
    let _ = writeln!(out, "method       {} (matrix {}, {pname} = {pval})", r.method, r.matrix);
    if let Some(form) = &r.closed_form {
        let _ = writeln!(out, "closed form  {form:?}");
    } else {
        let _ = writeln!(out, "witnesses    {}{}", r.witnesses.len(), if r.witnesses_truncated { " (truncated)" } else { "" });
        for w in &r.witnesses {
            let anchor = w.anchor.map(|v| format!("at v{} ", v + 1)).unwrap_or_default();
            let _ = writeln!(
                out,
                "  #{:<3} {anchor}[{}]  {}  a={} b={}  lambda1={} lambda2={}  gap={}",
                w.id + 1,
                vertices(&w.vertices),
                stat(&w.stat),
                w.a,
                w.b,
                f4(w.lambda1),
                f4(w.lambda2),
                f4(w.spread)
            );
        }
    }
    let best = r.best.map(|k| format!(" (witness #{})", k + 1)).unwrap_or_default();
    let _ = writeln!(out, "bound        {}{best}", f4(r.bound));
    if let (Some(lb), Some(ub)) = (r.radius_lb, r.min_ub) {
        let _ = writeln!(out, "radius lb    {}", f4(lb));
        let _ = writeln!(out, "least ub     {}", f4(ub));
    }
    let _ = writeln!(out, "true spread  {}", f4(r.true_spread));
    let _ = writeln!(out, "gap          {}", f4(r.gap()));
    out
}

pub fn bound_csv(r: &BoundReport) -> String {
    let rows = r.witnesses.iter().map(|w| {
        vec![
            (w.id + 1).to_string(),
            vertices(&w.vertices),
            w.anchor.map(|v| format!("v{}", v + 1)).unwrap_or_default(),
            stat(&w.stat),
            w.a.to_string(),
            w.b.to_string(),
            w.lambda1.to_string(),
            w.lambda2.to_string(),
            w.spread.to_string(),
            r.true_spread.to_string(),
        ]
    });
    csv_text(&["witness", "vertices", "anchor", "stat", "a", "b", "lambda1", "lambda2", "spread", "true_spread"], rows)
}

fn matrix_rows(q: &QuotientMatrix) -> Vec<String> {
    (0..q.order())
        .map(|i| {
            let row: Vec<String> = (0..q.order()).map(|j| format!("{:>6}", q.get(i, j).to_string())).collect();
            format!("[{} ]", row.join(" "))
        })
        .collect()
}

pub fn legacy_plain(input: &str, c: &LegacyComparison) -> String {
    let (b1, b2) = (matrix_rows(&c.b1), matrix_rows(&c.b2));
    let mut out = format!("input   {input}\nvertex  v{}\n", c.vertex + 1);
    let _ = writeln!(out, "        legacy B1          true B2");
    for (x, y) in b1.iter().zip(&b2) {
        let _ = writeln!(out, "        {x:<18} {y}");
    }
    let _ = writeln!(out, "equal   {}", c.equal);
    out
}

pub fn legacy_csv(c: &LegacyComparison) -> String {
    let rows = ["b1", "b2"].into_iter().zip([&c.b1, &c.b2]).flat_map(|(name, q)| {
        (0..q.order()).flat_map(move |i| (0..q.order()).map(move |j| vec![name.to_string(), (i + 1).to_string(), (j + 1).to_string(), q.get(i, j).to_string()]))
    });
    csv_text(&["matrix", "row", "col", "entry"], rows)
}

pub fn cells_plain(cells: &[CellResult]) -> String {
    let mut out = format!("{:<24} {:<26} {:>10} {:>10} {:>9} {:>7}  status\n", "row", "quantity", "published", "computed", "diff", "tol");
    for c in cells {
        let computed = c.computed.map(f4).unwrap_or_else(|| "error".into());
        let diff = c.diff.map(|d| format!("{d:.1e}")).unwrap_or_default();
        let status = if c.pass { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{:<24} {:<26} {:>10} {:>10} {:>9} {:>7.0e}  {status}", c.row, c.label, f4(c.published), computed, diff, c.tol);
        if let Some(e) = &c.error {
            let _ = writeln!(out, "    {e}");
        }
    }
    let passed = cells.iter().filter(|c| c.pass).count();
    let _ = writeln!(out, "{passed}/{} cells within tolerance", cells.len());
    out
}

pub fn cells_csv(cells: &[CellResult]) -> String {
    let rows = cells.iter().map(|c| {
        vec![
            c.row.clone(),
            c.label.clone(),
            c.published.to_string(),
            c.computed.map(|v| v.to_string()).unwrap_or_default(),
            c.diff.map(|v| v.to_string()).unwrap_or_default(),
            c.tol.to_string(),
            c.pass.to_string(),
        ]
    });
    csv_text(&["row", "quantity", "published", "computed", "diff", "tol", "pass"], rows)
}

fn candidate(c: &Candidate) -> String {
    format!("{}  parts {}+{}, {} edges, S_Q = {}", c.graph6, c.parts.0, c.parts.1, c.edges, f4(c.s_q))
}

pub fn conjecture_plain(r: &ConjectureReport) -> String {
    let mut out = String::new();
    let splits: Vec<String> = r.classes_by_split.iter().map(|s| format!("{}+{}: {}", s.a, s.b, s.classes)).collect();
    let _ = writeln!(out, "n            {}", r.n);
    let _ = writeln!(out, "classes      {} ({})", r.graphs_checked, splits.join(", "));
    let _ = writeln!(out, "reference    {}", candidate(&r.reference));
    let _ = writeln!(out, "minimizer    {}{}", candidate(&r.minimizer), if r.minimizer_is_reference { "  (the reference graph)" } else { "" });
    if let Some(c) = &r.runner_up {
        let _ = writeln!(out, "runner-up    {}", candidate(c));
    }
    let _ = writeln!(out, "verdict      {}", match r.verdict {
        spreadlab::search::Verdict::Holds => "holds",
        spreadlab::search::Verdict::Counterexample => "COUNTEREXAMPLE",
    });
    for c in &r.counterexamples {
        let _ = writeln!(out, "  violator   {}", candidate(c));
    }
    let _ = writeln!(
        out,
        "chunks       {} ({} resumed), {} ms",
        r.stats.chunks, r.stats.chunks_resumed, r.stats.elapsed_ms
    );
    out
}

pub fn conjecture_csv(r: &ConjectureReport) -> String {
    let tagged = std::iter::once(("reference", &r.reference))
        .chain(std::iter::once(("minimizer", &r.minimizer)))
        .chain(r.runner_up.iter().map(|c| ("runner_up", c)))
        .chain(r.counterexamples.iter().map(|c| ("counterexample", c)));
    let rows = tagged.map(|(role, c)| {
        vec![
            role.to_string(),
            c.graph6.clone(),
            c.parts.0.to_string(),
            c.parts.1.to_string(),
            c.edges.to_string(),
            c.s_q.to_string(),
        ]
    });
    csv_text(&["role", "graph6", "a", "b", "edges", "s_q"], rows)
}

pub fn monotonicity_plain(m: &Monotonicity) -> String {
    let mut out = String::new();
    for (k, s) in m.spreads.iter().enumerate() {
        let _ = writeln!(out, "K_{{{},{}}}  {}", k + 1, m.n - k - 1, f4(*s));
    }
    let _ = writeln!(out, "strictly decreasing: {}", m.strictly_decreasing);
    out
}

pub fn monotonicity_csv(m: &Monotonicity) -> String {
    let rows = m
        .spreads
        .iter()
        .enumerate()
        .map(|(k, s)| vec![(k + 1).to_string(), (m.n - k - 1).to_string(), s.to_string()]);
    csv_text(&["a", "b", "s_q"], rows)
}
