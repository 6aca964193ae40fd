//! Vertex partitions, quotient matrices and eigenvalue interlacing.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_symmetric, Spectrum, SymMatrix, DEFAULT_TOL};

/// Ordered blocks of disjoint, nonempty vertex sets covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Partition { n, blocks })
    }

    /// `{first, V \ first}`. Errors when either side would be empty.
    pub fn split(n: usize, first: &[usize]) -> Result<Self> {
        let mut inside = vec![false; n];
        for &v in first {
            if v < n {
                inside[v] = true;
            }
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
        if rest.is_empty() {
            return Err(Error::Degenerate(
                "the complementary block is empty".into(),
            ));
        }
        Partition::new(n, vec![first.to_vec(), rest])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

pub(crate) fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn ser_ratios<S: Serializer>(v: &[Ratio<i64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| format!("{r}")))
}

/// Block-average row sums `b_ij = (sum of block M_ij) / n_i`, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    order: usize,
    sizes: Vec<usize>,
    #[serde(serialize_with = "ser_ratios")]
    entries: Vec<Ratio<i64>>,
    equitable: bool,
}

impl QuotientMatrix {
    /// Builds a quotient directly from entries; used for hand-written
    /// matrices that are compared against computed ones.
    pub fn from_entries(sizes: Vec<usize>, entries: Vec<Ratio<i64>>) -> Self {
        let order = sizes.len();
        assert_eq!(entries.len(), order * order);
        QuotientMatrix {
            order,
            sizes,
            entries,
            equitable: false,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn get(&self, i: usize, j: usize) -> Ratio<i64> {
        self.entries[i * self.order + j]
    }

    pub fn is_equitable(&self) -> bool {
        self.equitable
    }

    /// Entries equal as exact fractions (block sizes and the equitable flag
    /// are ignored).
    pub fn same_entries(&self, other: &QuotientMatrix) -> bool {
        self.entries == other.entries
    }

    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        self.get(i, j).to_f64().expect("finite ratio")
    }

    pub fn as_2x2(&self) -> Option<[[f64; 2]; 2]> {
        (self.order == 2).then(|| {
            [
                [self.get_f64(0, 0), self.get_f64(0, 1)],
                [self.get_f64(1, 0), self.get_f64(1, 1)],
            ]
        })
    }

    /// `n_i b_ij == n_j b_ji` for all `i, j`.
    pub fn is_size_symmetric(&self) -> bool {
        (0..self.order).all(|i| {
            (0..self.order).all(|j| {
                self.get(i, j) * self.sizes[i] as i64 == self.get(j, i) * self.sizes[j] as i64
            })
        })
    }

    /// Eigenvalues through the symmetric similarity
    /// `diag(sqrt n_i) B diag(1 / sqrt n_i)`, valid because the source matrix
    /// was symmetric.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        let s = SymMatrix::from_upper(self.order, |i, j| {
            let (ni, nj) = (self.sizes[i] as f64, self.sizes[j] as f64);
            self.get_f64(i, j) * (ni / nj).sqrt()
        });
        eigenvalues_symmetric(&s, DEFAULT_TOL)
    }
}

/// Quotient of an integer symmetric matrix with respect to `p`.
pub fn quotient(m: &SymMatrix<i64>, p: &Partition) -> Result<QuotientMatrix> {
    if m.order() != p.order() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} vertices for a matrix of order {}",
            p.order(),
            m.order()
        )));
    }
    let t = p.blocks().len();
    let mut entries = Vec::with_capacity(t * t);
    let mut equitable = true;
    for bi in p.blocks() {
        for bj in p.blocks() {
            let row_sums: Vec<i64> = bi
                .iter()
                .map(|&r| bj.iter().map(|&c| m.get(r, c)).sum())
                .collect();
            equitable &= row_sums.windows(2).all(|w| w[0] == w[1]);
            entries.push(Ratio::new(row_sums.iter().sum(), bi.len() as i64));
        }
    }
    Ok(QuotientMatrix {
        order: t,
        sizes: p.sizes(),
        entries,
        equitable,
    })
}

/// Outcome of an interlacing check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Interlacing {
    Holds,
    /// 1-based index `i` of the first failing inequality and by how much it
    /// fails (positive).
    Violated { index: usize, slack: f64 },
}

impl Interlacing {
    pub fn holds(&self) -> bool {
        matches!(self, Interlacing::Holds)
    }
}

/// Checks `lambda_i + tol >= mu_i >= lambda_{n-m+i} - tol` for `i = 1..m`,
/// both spectra sorted descending.
pub fn interlaces(outer: &Spectrum, inner: &Spectrum, tol: f64) -> Result<Interlacing> {
    let (n, m) = (outer.len(), inner.len());
    if m >= n {
        return Err(Error::Precondition(format!(
            "inner spectrum ({m}) must be shorter than outer ({n})"
        )));
    }
    let (l, mu) = (outer.values(), inner.values());
    for i in 0..m {
        let above = mu[i] - (l[i] + tol);
        if above > 0.0 {
            return Ok(Interlacing::Violated { index: i + 1, slack: above });
        }
        let below = (l[n - m + i] - tol) - mu[i];
        if below > 0.0 {
            return Ok(Interlacing::Violated { index: i + 1, slack: below });
        }
    }
    Ok(Interlacing::Holds)
}

/// Parameters of a matrix with blocks `M_ii = l_i J + p_i I` and
/// `M_ij = s_ij J` (`i != j`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSpec {
    pub sizes: Vec<usize>,
    pub l: Vec<f64>,
    pub p: Vec<f64>,
    /// `t x t`, row-major; the diagonal is ignored.
    pub s: Vec<f64>,
}

impl BlockSpec {
    /// Expands to the full matrix (for cross-checking).
    pub fn expand(&self) -> SymMatrix<f64> {
        let owner: Vec<usize> = self
            .sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &k)| std::iter::repeat_n(b, k))
            .collect();
        let t = self.sizes.len();
        SymMatrix::from_upper(owner.len(), |i, j| {
            let (bi, bj) = (owner[i], owner[j]);
            if bi != bj {
                self.s[bi * t + bj]
            } else if i == j {
                self.l[bi] + self.p[bi]
            } else {
                self.l[bi]
            }
        })
    }
}

/// `sigma(M) = sigma(B) + {p_i^[n_i - 1]}` for block-constant `M`.
pub fn block_spectrum(spec: &BlockSpec) -> Result<Spectrum> {
    let t = spec.sizes.len();
    if spec.l.len() != t || spec.p.len() != t || spec.s.len() != t * t {
        return Err(Error::Precondition("block spec dimensions disagree".into()));
    }
    if spec.sizes.contains(&0) {
        return Err(Error::Precondition("every block needs n_i >= 1".into()));
    }
    for i in 0..t {
        for j in i + 1..t {
            if spec.s[i * t + j] != spec.s[j * t + i] {
                return Err(Error::Precondition(format!("s_{i}{j} != s_{j}{i}")));
            }
        }
    }
    // symmetrised quotient: diag l_i n_i + p_i, off-diagonal s_ij sqrt(n_i n_j)
    let n = |i: usize| spec.sizes[i] as f64;
    let sym = SymMatrix::from_upper(t, |i, j| {
        if i == j {
            spec.l[i] * n(i) + spec.p[i]
        } else {
            spec.s[i * t + j] * (n(i) * n(j)).sqrt()
        }
    });
    let mut values = eigenvalues_symmetric(&sym, DEFAULT_TOL)?.values().to_vec();
    for i in 0..t {
        values.extend(std::iter::repeat_n(spec.p[i], spec.sizes[i] - 1));
    }
    Ok(Spectrum::new(values))
}
