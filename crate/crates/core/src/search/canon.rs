//! Canonical forms of connected bipartite graphs through their biadjacency
//! matrices.
//!
//! A connected bipartite graph has a unique bipartition, so with parts of
//! sizes `a <= b` it is determined up to isomorphism by its `a x b`
//! biadjacency matrix modulo row and column permutations (and transposition
//! when `a == b`). Columns are stored as `a`-bit row masks; the canonical
//! matrix minimizes, over all row permutations, the sorted column sequence
//! packed with the first column most significant.

use crate::graph::Graph;

/// Largest supported part size; `a! = 120` row permutations.
pub const MAX_SMALL_PART: usize = 5;

/// An isomorphism class: smaller part size and the packed canonical columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub a: u8,
    pub b: u8,
    pub key: u32,
}

impl ClassId {
    pub fn order(&self) -> usize {
        usize::from(self.a) + usize::from(self.b)
    }

    pub fn columns(&self) -> Vec<u8> {
        let a = u32::from(self.a);
        let mask = (1u32 << a) - 1;
        (0..u32::from(self.b))
            .rev()
            .map(|j| ((self.key >> (j * a)) & mask) as u8)
            .collect()
    }

    /// Rows `0..a`, columns `a..a+b`.
    pub fn graph(&self) -> Graph {
        let a = usize::from(self.a);
        let edges = self
            .columns()
            .into_iter()
            .enumerate()
            .flat_map(|(j, col)| (0..a).filter(move |r| col >> r & 1 == 1).map(move |r| (r, a + j)))
            .collect::<Vec<_>>();
        Graph::from_edges(self.order(), edges).expect("labels are in range")
    }

    /// `K_{a,b}` itself.
    pub fn complete(a: usize, b: usize) -> ClassId {
        let (a, b) = (a.min(b), a.max(b));
        let full = (1u8 << a) - 1;
        ClassId {
            a: a as u8,
            b: b as u8,
            key: pack(a, &vec![full; b]),
        }
    }
}

pub(crate) fn pack(a: usize, cols: &[u8]) -> u32 {
    cols.iter().fold(0, |acc, &c| acc << a | u32::from(c))
}

/// Row-permutation lookup tables for one part size.
pub(crate) struct Canonizer {
    a: usize,
    b: usize,
    /// `maps[p][mask]` is `mask` with its bits permuted by permutation `p`.
    maps: Vec<[u8; 32]>,
}

impl Canonizer {
    pub(crate) fn new(a: usize, b: usize) -> Self {
        assert!((1..=MAX_SMALL_PART).contains(&a) && a <= b && b <= 16);
        let mut maps = Vec::new();
        let mut perm: Vec<usize> = (0..a).collect();
        loop {
            let mut map = [0u8; 32];
            for (mask, slot) in map.iter_mut().enumerate().take(1 << a) {
                *slot = (0..a).filter(|&r| mask >> r & 1 == 1).fold(0, |acc, r| acc | 1 << perm[r]);
            }
            maps.push(map);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Canonizer { a, b, maps }
    }

    fn min_over_rows(&self, cols: &[u8]) -> u32 {
        let mut buf = [0u8; 16];
        let buf = &mut buf[..cols.len()];
        self.maps
            .iter()
            .map(|map| {
                for (dst, &c) in buf.iter_mut().zip(cols) {
                    *dst = map[usize::from(c)];
                }
                buf.sort_unstable();
                pack(self.a, buf)
            })
            .min()
            .expect("at least the identity permutation")
    }

    pub(crate) fn canonical_key(&self, cols: &[u8]) -> u32 {
        let key = self.min_over_rows(cols);
        if self.a != self.b {
            return key;
        }
        let transposed: Vec<u8> = (0..self.a)
            .map(|r| cols.iter().enumerate().fold(0u8, |acc, (j, &c)| acc | ((c >> r & 1) << j)))
            .collect();
        key.min(self.min_over_rows(&transposed))
    }

    pub(crate) fn class_id(&self, cols: &[u8]) -> ClassId {
        ClassId {
            a: self.a as u8,
            b: self.b as u8,
            key: self.canonical_key(cols),
        }
    }

    /// Columns of subset `s` of the `a*b` possible edges; column `j` holds
    /// bits `j*a .. (j+1)*a`.
    pub(crate) fn columns_of(&self, s: u64, out: &mut [u8]) {
        debug_assert_eq!(out.len(), self.b);
        let mask = (1u64 << self.a) - 1;
        for (j, c) in out.iter_mut().enumerate() {
            *c = ((s >> (j * self.a)) & mask) as u8;
        }
    }

    /// Orderly generation test: `cols` is connected, sorted, and equal to its
    /// own canonical form.
    pub(crate) fn is_canonical_connected(&self, cols: &[u8]) -> bool {
        if cols[0] == 0 || cols.windows(2).any(|w| w[0] > w[1]) || !connected(self.a, cols) {
            return false;
        }
        pack(self.a, cols) == self.canonical_key(cols)
    }
}

/// Connectivity of the bipartite graph with the given columns.
pub(crate) fn connected(a: usize, cols: &[u8]) -> bool {
    let full = (1u8 << a) - 1;
    let mut rows = 1u8;
    loop {
        let grown = cols.iter().filter(|&&c| c & rows != 0).fold(rows, |acc, &c| acc | c);
        if grown == rows {
            break;
        }
        rows = grown;
    }
    rows == full && cols.iter().all(|&c| c & rows != 0)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_all_visited() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(Canonizer::new(5, 5).maps.len(), 120);
    }

    #[test]
    fn class_ids_round_trip() {
        let c = Canonizer::new(2, 3);
        // P5 as columns {01, 11, 10}
        let id = c.class_id(&[0b01, 0b11, 0b10]);
        assert_eq!(id, c.class_id(&[0b10, 0b01, 0b11]));
        assert_eq!(c.class_id(&id.columns()), id);
        assert!(c.is_canonical_connected(&id.columns()));
        let g = id.graph();
        assert_eq!((g.order(), g.size()), (5, 4));
        assert!(g.is_connected());
        assert_eq!(ClassId::complete(3, 2).graph().size(), 6);
    }

    #[test]
    fn square_case_uses_transpose() {
        let c = Canonizer::new(2, 2);
        // P4 with two different orientations
        assert_eq!(c.class_id(&[0b01, 0b11]), c.class_id(&[0b11, 0b10]));
        assert!(!connected(2, &[0b01, 0b10]));
        assert!(connected(2, &[0b01, 0b11]));
    }
}
