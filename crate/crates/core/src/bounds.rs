//! Quotient-matrix lower bounds on the distance and distance signless
//! Laplacian spreads.
//!
//! Every bound takes a family of witnesses (maximum-degree vertices, maximum
//! cliques, diameter paths or longest cycles), splits the vertex set into the
//! witness and the rest, and reads the spread of the resulting 2x2 quotient
//! matrix off integer coefficients `a_i`, `b_i`:
//!
//! ```text
//! trace = ts * a / (c K),   det = ds * b / (c K),
//! lambda_1 - lambda_2 = sqrt(a^2 - 4 ds c K b) / (c K)
//! ```
//!
//! | method             | ts | ds | c | K                   |
//! |--------------------|----|----|---|---------------------|
//! | bipartite distance | +  | -  | 1 | (D+1)(n-D-1)        |
//! | bipartite dsl      | +  | -  | 1 | (D+1)(n-D-1)        |
//! | clique             | -  | +  | 1 | (n-w) w             |
//! | diameter           | -  | +  | 3 | (d+1)(n-1-d)        |
//! | cactus             | +  | +  | 4 | l (n-l)             |
//!
//! The interlacing theorem makes each witness gap a lower bound on the
//! spread of the full matrix.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::distance::DistanceData;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{eig2_real, eigenvalues_symmetric, DEFAULT_TOL};
use crate::quotient::{quotient, ser_ratio, Partition, QuotientMatrix};
use crate::spectral::{closed_form_spread, matrix_from, ClosedForm, MatrixKind};
use crate::structures::{cactus_longest_cycles, cycle_internal_sum, diameter_paths, maximum_cliques, WitnessSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    BipartiteDistance,
    BipartiteDsl,
    Clique,
    Diameter,
    Cactus,
    Legacy2012,
}

impl BoundMethod {
    pub const ALL: [BoundMethod; 6] = [
        BoundMethod::BipartiteDistance,
        BoundMethod::BipartiteDsl,
        BoundMethod::Clique,
        BoundMethod::Diameter,
        BoundMethod::Cactus,
        BoundMethod::Legacy2012,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::BipartiteDistance => "bipartite-distance",
            BoundMethod::BipartiteDsl => "bipartite-dsl",
            BoundMethod::Clique => "clique",
            BoundMethod::Diameter => "diameter",
            BoundMethod::Cactus => "cactus",
            BoundMethod::Legacy2012 => "legacy-2012",
        }
    }

    /// The matrix whose spread is bounded.
    pub fn matrix(self) -> MatrixKind {
        match self {
            BoundMethod::BipartiteDistance | BoundMethod::Legacy2012 => MatrixKind::Distance,
            _ => MatrixKind::Dsl,
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('_', "-");
        BoundMethod::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::Precondition(format!("unknown bound method `{s}`")))
    }
}

/// The per-witness statistic entering `a_i` and `b_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "name", content = "value", rename_all = "snake_case")]
pub enum WitnessStat {
    /// `t_v`, the mean transmission of the neighbours of the witness vertex.
    AverageDistanceDegree(#[serde(serialize_with = "ser_ratio")] Ratio<i64>),
    /// `s_i`, the transmission sum over the witness vertices.
    TransmissionSum(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub id: usize,
    /// First block of the partition: `N[v]`, a clique, a path or a cycle.
    pub vertices: Vec<usize>,
    /// The maximum-degree vertex for the bipartite methods.
    pub anchor: Option<usize>,
    pub stat: WitnessStat,
    pub a: i128,
    pub b: i128,
    /// `a^2 - 4 ds c K b`, exact.
    pub radicand: i128,
    pub quotient: QuotientMatrix,
    pub lambda1: f64,
    pub lambda2: f64,
    pub spread: f64,
}

impl Witness {
    /// Largest deviation between `(lambda1, lambda2)` and the eigenvalues of
    /// the generic quotient matrix.
    pub fn consistency_gap(&self) -> Result<f64> {
        let b = self.quotient.as_2x2().ok_or_else(|| Error::Precondition("quotient is not 2x2".into()))?;
        let (l1, l2) = eig2_real(b)?;
        Ok((l1 - self.lambda1).abs().max((l2 - self.lambda2).abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: BoundMethod,
    pub matrix: MatrixKind,
    pub n: usize,
    /// Name and value of the structural parameter (`max_degree`,
    /// `clique_number`, `diameter` or `circumference`).
    pub parameter: (&'static str, usize),
    /// Set when the input fell into a case with an exact formula; no
    /// witnesses are evaluated then.
    pub closed_form: Option<ClosedForm>,
    pub witnesses: Vec<Witness>,
    pub witnesses_truncated: bool,
    pub bound: f64,
    /// Index into `witnesses` attaining `bound`.
    pub best: Option<usize>,
    /// `max lambda1`, a lower bound on the spectral radius.
    pub radius_lb: Option<f64>,
    /// `min lambda2`, an upper bound on the least eigenvalue.
    pub min_ub: Option<f64>,
    pub true_spread: f64,
}

impl BoundReport {
    pub fn gap(&self) -> f64 {
        self.true_spread - self.bound
    }
}

/// Shape of a method's coefficients; see the module table.
#[derive(Clone, Copy)]
struct Shape {
    trace_sign: i128,
    det_sign: i128,
    c: i128,
    k: i128,
}

struct Coeffs {
    vertices: Vec<usize>,
    anchor: Option<usize>,
    stat: WitnessStat,
    a: i128,
    b: i128,
}

fn i(x: impl TryInto<i128>) -> i128 {
    x.try_into().ok().expect("fits in i128")
}

fn evaluate(dd: &DistanceData, kind: MatrixKind, shape: Shape, coeffs: Vec<Coeffs>) -> Result<Vec<Witness>> {
    let m = matrix_from(dd, kind);
    coeffs
        .into_iter()
        .enumerate()
        .map(|(id, c)| {
            let radicand = c.a * c.a - 4 * shape.det_sign * shape.c * shape.k * c.b;
            if radicand < 0 {
                return Err(Error::Numeric(format!("negative radicand {radicand} for witness {id}")));
            }
            let denom = (shape.c * shape.k) as f64;
            let root = (radicand as f64).sqrt();
            let centre = (shape.trace_sign * c.a) as f64;
            let partition = Partition::split(dd.order(), &c.vertices)?;
            Ok(Witness {
                id,
                quotient: quotient(&m, &partition)?,
                vertices: c.vertices,
                anchor: c.anchor,
                stat: c.stat,
                a: c.a,
                b: c.b,
                radicand,
                lambda1: (centre + root) / (2.0 * denom),
                lambda2: (centre - root) / (2.0 * denom),
                spread: root / denom,
            })
        })
        .collect()
}

fn true_spread(dd: &DistanceData, kind: MatrixKind) -> Result<f64> {
    Ok(eigenvalues_symmetric(&matrix_from(dd, kind).to_f64(), DEFAULT_TOL)?.spread())
}

fn report(
    method: BoundMethod,
    dd: &DistanceData,
    parameter: (&'static str, usize),
    witnesses: Vec<Witness>,
    witnesses_truncated: bool,
) -> Result<BoundReport> {
    let best = witnesses
        .iter()
        .enumerate()
        .fold(None::<(usize, f64)>, |acc, (k, w)| match acc {
            Some((_, s)) if s >= w.spread => acc,
            _ => Some((k, w.spread)),
        });
    let fold = |f: fn(f64, f64) -> f64, pick: fn(&Witness) -> f64| witnesses.iter().map(pick).reduce(f);
    Ok(BoundReport {
        method,
        matrix: method.matrix(),
        n: dd.order(),
        parameter,
        closed_form: None,
        witnesses_truncated,
        bound: best.map_or(f64::NAN, |(_, s)| s),
        best: best.map(|(k, _)| k),
        radius_lb: fold(f64::max, |w| w.lambda1),
        min_ub: fold(f64::min, |w| w.lambda2),
        witnesses,
        true_spread: true_spread(dd, method.matrix())?,
    })
}

fn closed(method: BoundMethod, dd: &DistanceData, parameter: (&'static str, usize), form: ClosedForm) -> Result<BoundReport> {
    Ok(BoundReport {
        method,
        matrix: method.matrix(),
        n: dd.order(),
        parameter,
        closed_form: Some(form),
        witnesses: Vec::new(),
        witnesses_truncated: false,
        bound: closed_form_spread(form)?,
        best: None,
        radius_lb: None,
        min_ub: None,
        true_spread: true_spread(dd, method.matrix())?,
    })
}

/// Connected and bipartite; returns the distance data and `Delta`.
fn bipartite_setup(g: &Graph) -> Result<(DistanceData, usize)> {
    let dd = DistanceData::new(g)?;
    g.bipartition()?;
    Ok((dd, g.max_degree()))
}

/// Maximum-degree vertices with `N[v]` and the neighbour transmission sum
/// `t_v * Delta`.
fn max_degree_witnesses(g: &Graph, dd: &DistanceData) -> Vec<(usize, Vec<usize>, u64)> {
    let delta = g.max_degree();
    (0..g.order())
        .filter(|&v| g.degree(v) == delta)
        .map(|v| {
            let mut closed: Vec<usize> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect();
            closed.sort_unstable();
            (v, closed, dd.neighbor_transmission_sum(g, v))
        })
        .collect()
}

fn bipartite(g: &Graph, method: BoundMethod) -> Result<BoundReport> {
    let (dd, delta) = bipartite_setup(g)?;
    let n = g.order();
    let parameter = ("max_degree", delta);
    if delta + 1 == n {
        return match method {
            BoundMethod::BipartiteDistance => closed(method, &dd, parameter, ClosedForm::StarDistance(n)),
            _ if n < 2 => Err(Error::Precondition("needs n >= 2".into())),
            _ => closed(method, &dd, parameter, ClosedForm::DeltaMaxDsl(n)),
        };
    }
    let (nn, dl, w) = (i(n), i(delta), i(dd.wiener()));
    let s = 2 * w;
    let coeffs = max_degree_witnesses(g, &dd)
        .into_iter()
        .map(|(v, vertices, tsum)| {
            let (di, t) = (i(dd.transmission(v)), i(tsum));
            let (a, b) = if method == BoundMethod::BipartiteDistance {
                (
                    (dl + 1) * (s - 2 * di - 2 * t) + 2 * nn * dl * dl,
                    di * di - 2 * s * dl * dl + 2 * di * t + t * t,
                )
            } else {
                (
                    4 * (w - di - t) * (dl + 1) + 2 * nn * dl * dl + nn * di + nn * t,
                    4 * di * di + 8 * di * t + 4 * t * t - 8 * w * dl * dl - 4 * w * di - 4 * w * t,
                )
            };
            Ok(Coeffs {
                vertices,
                anchor: Some(v),
                stat: WitnessStat::AverageDistanceDegree(dd.average_distance_degree(g, v)?),
                a,
                b,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let shape = Shape {
        trace_sign: 1,
        det_sign: -1,
        c: 1,
        k: (dl + 1) * (nn - dl - 1),
    };
    let witnesses = evaluate(&dd, method.matrix(), shape, coeffs)?;
    report(method, &dd, parameter, witnesses, false)
}

/// Distance spread bound over the closed neighbourhoods of the
/// maximum-degree vertices of a connected bipartite graph.
pub fn bound_bipartite_distance(g: &Graph) -> Result<BoundReport> {
    bipartite(g, BoundMethod::BipartiteDistance)
}

/// Signless Laplacian analogue of [`bound_bipartite_distance`].
pub fn bound_bipartite_dsl(g: &Graph) -> Result<BoundReport> {
    bipartite(g, BoundMethod::BipartiteDsl)
}

fn set_coeffs(witnesses: &WitnessSet, f: impl Fn(i128) -> (i128, i128)) -> Vec<Coeffs> {
    witnesses
        .members
        .iter()
        .zip(&witnesses.s_values)
        .map(|(m, &s)| {
            let (a, b) = f(i(s));
            Coeffs {
                vertices: m.clone(),
                anchor: None,
                stat: WitnessStat::TransmissionSum(s),
                a,
                b,
            }
        })
        .collect()
}

/// Signless Laplacian spread bound over the maximum cliques.
pub fn bound_clique(g: &Graph) -> Result<BoundReport> {
    let dd = DistanceData::new(g)?;
    let cliques = maximum_cliques(g, &dd);
    let (n, omega) = (g.order(), cliques.parameter);
    let parameter = ("clique_number", omega);
    if omega < 2 {
        return Err(Error::Precondition("needs clique number at least 2".into()));
    }
    if omega == n {
        return closed(BoundMethod::Clique, &dd, parameter, ClosedForm::CompleteDsl(n));
    }
    let (nn, wo, w) = (i(n), i(omega), i(dd.wiener()));
    let coeffs = set_coeffs(&cliques, |s| {
        (
            nn * wo * (1 - wo) + 4 * wo * (s - w) - nn * s,
            4 * w * wo * (wo - 1) + 4 * s * (w - s),
        )
    });
    let shape = Shape {
        trace_sign: -1,
        det_sign: 1,
        c: 1,
        k: (nn - wo) * wo,
    };
    let witnesses = evaluate(&dd, MatrixKind::Dsl, shape, coeffs)?;
    report(BoundMethod::Clique, &dd, parameter, witnesses, false)
}

/// Signless Laplacian spread bound over the diameter paths; at most `cap`
/// paths are evaluated.
pub fn bound_diameter(g: &Graph, cap: usize) -> Result<BoundReport> {
    let dd = DistanceData::new(g)?;
    let (n, d) = (g.order(), dd.diameter() as usize);
    let parameter = ("diameter", d);
    match d {
        0 => return Err(Error::Precondition("needs at least two vertices".into())),
        1 => return closed(BoundMethod::Diameter, &dd, parameter, ClosedForm::CompleteDsl(n)),
        _ if d + 1 == n => {
            return Err(Error::Degenerate(format!(
                "diameter {d} = n - 1 leaves no vertex outside the diameter path"
            )))
        }
        _ => {}
    }
    let paths = diameter_paths(g, &dd, cap)?;
    let (nn, dl, w) = (i(n), i(d), i(dd.wiener()));
    let t = dl * (dl + 1) * (dl + 2);
    let coeffs = set_coeffs(&paths, |s| {
        (
            12 * (1 + dl) * (s - w) - nn * t - 3 * nn * s,
            4 * t * w + 12 * s * (w - s),
        )
    });
    let shape = Shape {
        trace_sign: -1,
        det_sign: 1,
        c: 3,
        k: (dl + 1) * (nn - 1 - dl),
    };
    let witnesses = evaluate(&dd, MatrixKind::Dsl, shape, coeffs)?;
    report(BoundMethod::Diameter, &dd, parameter, witnesses, paths.truncated)
}

/// Signless Laplacian spread bound over the longest cycles of a cactus.
pub fn bound_cactus(g: &Graph) -> Result<BoundReport> {
    let dd = DistanceData::new(g)?;
    let cycles = cactus_longest_cycles(g, &dd)?;
    let (n, l) = (g.order(), cycles.parameter);
    if l == n {
        return Err(Error::Degenerate(format!("the longest cycle covers all {n} vertices")));
    }
    let (nn, ll, w) = (i(n), i(l), i(dd.wiener()));
    // l * cycle_internal_sum(l) is l^3/4 or (l^3 - l)/4
    let inner = 4 * ll * i(cycle_internal_sum(l)?);
    let coeffs = set_coeffs(&cycles, |s| {
        (
            ll * ll * ll * nn + 4 * nn * s - (ll * ll * ll - inner) * nn - 16 * ll * (s - w),
            4 * inner * w - 16 * s * (s - w),
        )
    });
    let shape = Shape {
        trace_sign: 1,
        det_sign: 1,
        c: 4,
        k: ll * (nn - ll),
    };
    let witnesses = evaluate(&dd, MatrixKind::Dsl, shape, coeffs)?;
    report(BoundMethod::Cactus, &dd, ("circumference", l), witnesses, false)
}

/// The earlier closed-form quotient `B1` for the partition `{N[v], rest}`
/// beside the true quotient `B2` of the distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LegacyComparison {
    pub vertex: usize,
    pub b1: QuotientMatrix,
    pub b2: QuotientMatrix,
    /// Exact entrywise equality.
    pub equal: bool,
}

pub fn legacy_2012_counterexample(g: &Graph, v: usize) -> Result<LegacyComparison> {
    let (dd, delta) = bipartite_setup(g)?;
    let n = g.order();
    if v >= n {
        return Err(Error::OutOfRange(format!("vertex {v} outside 0..{n}")));
    }
    if g.degree(v) != delta {
        return Err(Error::Precondition(format!(
            "v{} has degree {}, maximum degree is {delta}",
            v + 1,
            g.degree(v)
        )));
    }
    if delta + 1 >= n {
        return Err(Error::Precondition("needs maximum degree at most n - 2".into()));
    }
    let (dl, rest) = (delta as i64, (n - delta - 1) as i64);
    let t = dd.neighbor_transmission_sum(g, v) as i64;
    let s = 2 * dd.wiener() as i64;
    let off = t + dl - 2 * dl * dl;
    let b1 = QuotientMatrix::from_entries(
        vec![delta + 1, n - delta - 1],
        vec![
            Ratio::new(2 * dl * dl, dl + 1),
            Ratio::new(off, dl + 1),
            Ratio::new(off, rest),
            Ratio::new(s - 2 * t + 2 * dl * (dl - 1), rest),
        ],
    );
    let mut closed: Vec<usize> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect();
    closed.sort_unstable();
    let b2 = quotient(&matrix_from(&dd, MatrixKind::Distance), &Partition::split(n, &closed)?)?;
    Ok(LegacyComparison {
        vertex: v,
        equal: b1.same_entries(&b2),
        b1,
        b2,
    })
}

/// Runs any method; `cap` only affects [`BoundMethod::Diameter`] and
/// `vertex` only [`BoundMethod::Legacy2012`] (default: first maximum-degree
/// vertex).
pub fn bound(g: &Graph, method: BoundMethod, cap: usize) -> Result<BoundReport> {
    match method {
        BoundMethod::BipartiteDistance => bound_bipartite_distance(g),
        BoundMethod::BipartiteDsl => bound_bipartite_dsl(g),
        BoundMethod::Clique => bound_clique(g),
        BoundMethod::Diameter => bound_diameter(g, cap),
        BoundMethod::Cactus => bound_cactus(g),
        BoundMethod::Legacy2012 => Err(Error::Precondition(
            "legacy-2012 compares quotient matrices; use legacy_2012_counterexample".into(),
        )),
    }
}
