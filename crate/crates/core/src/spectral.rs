//! Distance and distance signless Laplacian matrices, their spreads, and the
//! closed-form spectra known for complete bipartite graphs, stars and
//! complete graphs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::distance::DistanceData;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Exec};
use crate::linalg::{eigenvalues_symmetric, Spectrum, SymMatrix, DEFAULT_TOL};

/// Which matrix of a graph a spectral quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    /// The distance matrix `D`.
    Distance,
    /// The distance signless Laplacian `Q = Tr + D`.
    Dsl,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Distance => "distance",
            MatrixKind::Dsl => "dsl",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distance" | "d" => Ok(MatrixKind::Distance),
            "dsl" | "q" => Ok(MatrixKind::Dsl),
            other => Err(Error::Precondition(format!("unknown matrix kind `{other}`"))),
        }
    }
}

pub fn distance_matrix(g: &Graph) -> Result<SymMatrix<i64>> {
    Ok(distance_matrix_from(&DistanceData::new(g)?))
}

pub fn distance_matrix_from(dd: &DistanceData) -> SymMatrix<i64> {
    SymMatrix::from_upper(dd.order(), |i, j| i64::from(dd.get(i, j)))
}

/// `Tr(G) + D(G)`; row `i` sums to `2 D_i`.
pub fn distance_signless_laplacian(g: &Graph) -> Result<SymMatrix<i64>> {
    Ok(dsl_matrix_from(&DistanceData::new(g)?))
}

pub fn dsl_matrix_from(dd: &DistanceData) -> SymMatrix<i64> {
    SymMatrix::from_upper(dd.order(), |i, j| {
        if i == j {
            dd.transmission(i) as i64
        } else {
            i64::from(dd.get(i, j))
        }
    })
}

pub fn matrix_from(dd: &DistanceData, kind: MatrixKind) -> SymMatrix<i64> {
    match kind {
        MatrixKind::Distance => distance_matrix_from(dd),
        MatrixKind::Dsl => dsl_matrix_from(dd),
    }
}

pub fn spectrum(g: &Graph, kind: MatrixKind) -> Result<Spectrum> {
    spectrum_from(&DistanceData::new(g)?, kind)
}

pub fn spectrum_from(dd: &DistanceData, kind: MatrixKind) -> Result<Spectrum> {
    eigenvalues_symmetric(&matrix_from(dd, kind).to_f64(), DEFAULT_TOL)
}

/// Extreme eigenvalues of `D` or `Q` and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpreadReport {
    pub kind: MatrixKind,
    pub rho_max: f64,
    pub rho_min: f64,
    pub spread: f64,
}

impl SpreadReport {
    pub fn from_spectrum(kind: MatrixKind, s: &Spectrum) -> Self {
        SpreadReport {
            kind,
            rho_max: s.largest(),
            rho_min: s.least(),
            spread: s.spread(),
        }
    }
}

pub fn spread(g: &Graph, kind: MatrixKind) -> Result<SpreadReport> {
    Ok(SpreadReport::from_spectrum(kind, &spectrum(g, kind)?))
}

pub fn spread_from(dd: &DistanceData, kind: MatrixKind) -> Result<SpreadReport> {
    Ok(SpreadReport::from_spectrum(kind, &spectrum_from(dd, kind)?))
}

/// Spreads of many graphs, in input order.
pub fn spreads(graphs: &[Graph], kind: MatrixKind, exec: Exec) -> Vec<Result<SpreadReport>> {
    par::map(exec, graphs, |g| spread(g, kind))
}

fn check_parts(a: usize, b: usize) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::OutOfRange(format!("K_{{{a},{b}}} needs a, b >= 1")));
    }
    Ok(())
}

/// `sigma(D(K_{a,b})) = {(-2)^[n-2], n - 2 +- sqrt(n^2 - 3ab)}` with `n = a + b`.
pub fn kab_distance_spectrum(a: usize, b: usize) -> Result<Spectrum> {
    check_parts(a, b)?;
    let n = (a + b) as f64;
    let r = (n * n - 3.0 * (a * b) as f64).sqrt();
    let mut values = vec![-2.0; a + b - 2];
    values.extend([n - 2.0 + r, n - 2.0 - r]);
    Ok(Spectrum::new(values))
}

/// `sigma(Q(K_{a,b})) = {(2n-a-4)^[b-1], (2n-b-4)^[a-1], (5n - 8 +- sqrt(9n^2 - 32ab)) / 2}`.
pub fn kab_q_spectrum(a: usize, b: usize) -> Result<Spectrum> {
    check_parts(a, b)?;
    let n = (a + b) as f64;
    let (af, bf) = (a as f64, b as f64);
    let r = (9.0 * n * n - 32.0 * af * bf).sqrt();
    let mut values = vec![2.0 * n - af - 4.0; b - 1];
    values.extend(vec![2.0 * n - bf - 4.0; a - 1]);
    values.extend([(5.0 * n - 8.0 + r) / 2.0, (5.0 * n - 8.0 - r) / 2.0]);
    Ok(Spectrum::new(values))
}

/// `(q, q_min, S_Q)` of `K_{a, n-a}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KabExtremes {
    pub q: f64,
    pub q_min: f64,
    pub spread: f64,
}

/// Closed-form extremes of `Q(K_{a,n-a})` for `1 <= a`, `2a <= n`:
/// `q = (5n - 8 + sqrt(9n^2 - 32a(n-a))) / 2`; `q_min` is the least of the
/// smaller quadratic root and whichever of `2n - a - 4`, `n + a - 4` occur.
pub fn kab_q_extremes(a: usize, n: usize) -> Result<KabExtremes> {
    if a == 0 || 2 * a > n {
        return Err(Error::OutOfRange(format!("need 1 <= a and 2a <= n, got a={a}, n={n}")));
    }
    let (af, nf) = (a as f64, n as f64);
    let r = (9.0 * nf * nf - 32.0 * af * (nf - af)).sqrt();
    let q = (5.0 * nf - 8.0 + r) / 2.0;
    let b = n - a;
    let mut q_min = (5.0 * nf - 8.0 - r) / 2.0;
    if b > 1 {
        q_min = q_min.min(2.0 * nf - af - 4.0);
    }
    if a > 1 {
        q_min = q_min.min(nf + af - 4.0);
    }
    Ok(KabExtremes {
        q,
        q_min,
        spread: q - q_min,
    })
}

/// Graph classes whose spread has an exact formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// `S_D` of the star on `n` vertices (maximum degree `n - 1`, bipartite).
    StarDistance(usize),
    /// `S_Q` of a bipartite graph with maximum degree `n - 1`, i.e. a star.
    DeltaMaxDsl(usize),
    /// `S_Q(K_n)`.
    CompleteDsl(usize),
}

pub fn closed_form_spread(form: ClosedForm) -> Result<f64> {
    match form {
        ClosedForm::StarDistance(n) => match n {
            0 => Err(Error::OutOfRange("star needs n >= 1".into())),
            1 => Ok(0.0),
            2 => Ok(2.0),
            _ => {
                let n = n as f64;
                Ok(n + (n * n - 3.0 * n + 3.0).sqrt())
            }
        },
        ClosedForm::DeltaMaxDsl(n) => {
            if n < 2 {
                return Err(Error::OutOfRange("needs n >= 2".into()));
            }
            // P_3: the repeated eigenvalue 2n - 5 = 1 undercuts the smaller root
            if n == 3 {
                return Ok((5.0 + 17f64.sqrt()) / 2.0);
            }
            let n = n as f64;
            Ok((9.0 * n * n - 32.0 * n + 32.0).sqrt())
        }
        // q = 2n - 2 and q_min = n - 2
        ClosedForm::CompleteDsl(n) => {
            if n < 2 {
                return Err(Error::OutOfRange("needs n >= 2".into()));
            }
            Ok(n as f64)
        }
    }
}
