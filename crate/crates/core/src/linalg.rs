//! Dense symmetric eigenvalues by cyclic Jacobi rotations.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default relative convergence tolerance for [`eigenvalues_symmetric`].
pub const DEFAULT_TOL: f64 = 1e-12;
/// Absolute tolerance used when grouping eigenvalues into multiplicities.
pub const GROUP_TOL: f64 = 1e-8;
/// Sweep cap before reporting non-convergence.
pub const MAX_SWEEPS: usize = 100;

/// Square symmetric matrix, row-major. Construction mirrors or averages the
/// two triangles so `get(i, j) == get(j, i)` holds bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymMatrix<T = f64> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy> SymMatrix<T> {
    /// Builds from the upper triangle: `f(i, j)` is called for `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self
    where
        T: Default,
    {
        let mut data = vec![T::default(); n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                data[i * n + j] = x;
                data[j * n + i] = x;
            }
        }
        SymMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Principal submatrix on `keep` (in the given order).
    pub fn principal(&self, keep: &[usize]) -> Self
    where
        T: Default,
    {
        SymMatrix::from_upper(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }
}

impl SymMatrix<f64> {
    /// Symmetrises arbitrary square rows as `(M + M^T) / 2`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix is not square".into()));
        }
        Ok(SymMatrix::from_upper(n, |i, j| 0.5 * (rows[i][j] + rows[j][i])))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix::from_upper(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl SymMatrix<i64> {
    pub fn to_f64(&self) -> SymMatrix<f64> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| x as f64).collect(),
        }
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.row(i).iter().sum()
    }
}

/// Eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` descending.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn least(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn spread(&self) -> f64 {
        self.largest() - self.least()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `(value, multiplicity)` pairs; consecutive values within `tol` of the
    /// first member of their group are merged.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((mean, count, anchor)) if (*anchor - x).abs() <= tol => {
                    *mean = (*mean * *count as f64 + x) / (*count + 1) as f64;
                    *count += 1;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter().map(|(m, c, _)| (m, c)).collect()
    }

    /// Entrywise comparison of two spectra of equal length.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.len() == other.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// All eigenvalues of a real symmetric matrix.
///
/// Cyclic Jacobi: each sweep rotates away every off-diagonal pair in row
/// order, stopping once the off-diagonal Frobenius norm drops below
/// `tol * ||m||_F`.
pub fn eigenvalues_symmetric(m: &SymMatrix<f64>, tol: f64) -> Result<Spectrum> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let n = m.order();
    let mut a = m.data.clone();
    let threshold = tol * m.frobenius();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge after {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Ok(Spectrum::new((0..n).map(|i| a[i * n + i]).collect()))
}

/// Roots `(l1, l2)`, `l1 >= l2`, of `x^2 - tr x + det` for a real 2x2 matrix
/// `[[b11, b12], [b21, b22]]`.
pub fn eig2_real(b: [[f64; 2]; 2]) -> Result<(f64, f64)> {
    let tr = b[0][0] + b[1][1];
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    roots_from_trace_det(tr, det)
}

pub(crate) fn roots_from_trace_det(tr: f64, det: f64) -> Result<(f64, f64)> {
    let disc = tr * tr - 4.0 * det;
    let scale = tr * tr + 4.0 * det.abs();
    if disc < -1e-12 * scale.max(1.0) {
        return Err(Error::Numeric(format!(
            "complex eigenvalues: discriminant {disc}"
        )));
    }
    let r = disc.max(0.0).sqrt();
    Ok(((tr + r) / 2.0, (tr - r) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_and_empty() {
        let s = eigenvalues_symmetric(&SymMatrix::identity(3), DEFAULT_TOL).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 1.0]);
        assert_eq!(s.grouped(GROUP_TOL), vec![(1.0, 3)]);
        assert!(eigenvalues_symmetric(&SymMatrix::identity(0), DEFAULT_TOL).unwrap().is_empty());
        assert!(eigenvalues_symmetric(&SymMatrix::identity(2), 0.0).is_err());
    }

    #[test]
    fn distance_matrix_of_k23() {
        // parts {0,1} and {2,3,4}
        let part = |v: usize| v < 2;
        let m = SymMatrix::from_upper(5, |i, j| {
            if i == j {
                0.0
            } else if part(i) == part(j) {
                2.0
            } else {
                1.0
            }
        });
        let s = eigenvalues_symmetric(&m, DEFAULT_TOL).unwrap();
        let r = 7f64.sqrt();
        let expect = Spectrum::new(vec![3.0 + r, -2.0, -2.0, -2.0, 3.0 - r]);
        assert!(s.approx_eq(&expect, 1e-10), "{s:?}");
        assert_eq!(s.grouped(GROUP_TOL).len(), 3);
    }

    #[test]
    fn eig2_cases() {
        // quadratic formula on [[18/4, 25/4], [25/3, 16/3]]:
        // tr = 59/6, det = 24 - 625/12 = -337/12
        let (l1, l2) = eig2_real([[4.5, 6.25], [25.0 / 3.0, 16.0 / 3.0]]).unwrap();
        let tr = 59.0 / 6.0;
        let r = (tr * tr + 4.0 * 337.0 / 12.0f64).sqrt();
        assert!((l1 - (tr + r) / 2.0).abs() < 1e-12);
        assert!((l2 - (tr - r) / 2.0).abs() < 1e-12);
        assert!((l1 - 12.1456).abs() < 1e-4 && (l2 + 2.3122).abs() < 1e-4);

        assert_eq!(eig2_real([[2.0, 0.0], [0.0, 5.0]]).unwrap(), (5.0, 2.0));
        assert_eq!(eig2_real([[0.0, 1.0], [1.0, 0.0]]).unwrap(), (1.0, -1.0));
        assert!(eig2_real([[0.0, 1.0], [-1.0, 0.0]]).is_err());
    }

    fn sym_matrix(max_n: usize) -> impl Strategy<Value = SymMatrix<f64>> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-10.0f64..10.0, n * n)
                .prop_map(move |v| SymMatrix::from_upper(n, |i, j| v[i * n + j]))
        })
    }

    proptest! {
        #[test]
        fn trace_and_frobenius_identities(m in sym_matrix(9)) {
            let s = eigenvalues_symmetric(&m, DEFAULT_TOL).unwrap();
            let n = m.order() as f64;
            let tol = 1e-9 * n * m.frobenius().max(1.0);
            prop_assert!((s.sum() - m.trace()).abs() <= tol);
            let sq: f64 = s.values().iter().map(|x| x * x).sum();
            prop_assert!((sq - m.frobenius().powi(2)).abs() <= tol * m.frobenius().max(1.0));
            prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn jacobi_agrees_with_closed_form_2x2(a in -50.0f64..50.0, b in -50.0f64..50.0, d in -50.0f64..50.0) {
            let m = SymMatrix::from_upper(2, |i, j| match (i, j) { (0, 0) => a, (1, 1) => d, _ => b });
            let s = eigenvalues_symmetric(&m, DEFAULT_TOL).unwrap();
            let (l1, l2) = eig2_real([[a, b], [b, d]]).unwrap();
            prop_assert!((s.largest() - l1).abs() <= 1e-12 * (1.0 + l1.abs()) * 10.0);
            prop_assert!((s.least() - l2).abs() <= 1e-12 * (1.0 + l2.abs()) * 10.0 + 1e-12 * (a.abs() + b.abs() + d.abs()));
        }
    }
}
