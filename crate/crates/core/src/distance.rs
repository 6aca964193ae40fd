//! All-pairs hop distances and the quantities derived from them.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Distance matrix of a connected graph together with vertex transmissions,
/// the Wiener index and the diameter. Everything is exact integer data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceData {
    n: usize,
    dist: Vec<u32>,
    trans: Vec<u64>,
    wiener: u64,
    diameter: u32,
}

impl DistanceData {
    /// One BFS per vertex.
    pub fn new(g: &Graph) -> Result<Self> {
        g.check_connected()?;
        let n = g.order();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            for (t, d) in g.bfs(s).into_iter().enumerate() {
                dist.push(d.ok_or(Error::Disconnected { u: s, v: t })?);
            }
        }
        let trans: Vec<u64> = dist
            .chunks(n)
            .map(|row| row.iter().map(|&d| u64::from(d)).sum())
            .collect();
        let wiener = trans.iter().sum::<u64>() / 2;
        let diameter = dist.iter().copied().max().unwrap_or(0);
        Ok(DistanceData {
            n,
            dist,
            trans,
            wiener,
            diameter,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Transmission `D_i`: the row sum of the distance matrix.
    pub fn transmission(&self, i: usize) -> u64 {
        self.trans[i]
    }

    pub fn transmissions(&self) -> &[u64] {
        &self.trans
    }

    /// Sum over unordered pairs; half the sum of all transmissions.
    pub fn wiener(&self) -> u64 {
        self.wiener
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// Sum of transmissions over a vertex set.
    pub fn transmission_sum(&self, vertices: &[usize]) -> u64 {
        vertices.iter().map(|&v| self.trans[v]).sum()
    }

    /// Sum of the transmissions of the neighbours of `v`.
    pub fn neighbor_transmission_sum(&self, g: &Graph, v: usize) -> u64 {
        self.transmission_sum(g.neighbors(v))
    }

    /// Average distance degree `t_v = (sum of D_u over u ~ v) / deg(v)`,
    /// kept as an exact fraction.
    pub fn average_distance_degree(&self, g: &Graph, v: usize) -> Result<Ratio<i64>> {
        let deg = g.degree(v);
        if deg == 0 {
            return Err(Error::Precondition(format!("vertex v{} has degree 0", v + 1)));
        }
        Ok(Ratio::new(
            self.neighbor_transmission_sum(g, v) as i64,
            deg as i64,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin, Family};
    use proptest::prelude::*;

    const G1_MATRIX: [[u32; 7]; 7] = [
        [0, 1, 1, 1, 2, 2, 2],
        [1, 0, 2, 2, 1, 1, 3],
        [1, 2, 0, 2, 3, 1, 1],
        [1, 2, 2, 0, 3, 3, 3],
        [2, 1, 3, 3, 0, 2, 4],
        [2, 1, 1, 3, 2, 0, 2],
        [2, 3, 1, 3, 4, 2, 0],
    ];

    /// Independent all-pairs oracle.
    fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
        let n = g.order();
        let inf = u32::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (u, v) in g.edges() {
            d[u][v] = 1;
            d[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    #[test]
    fn g1_matches_printed_matrix() {
        let dd = DistanceData::new(&builtin("G1").unwrap()).unwrap();
        for (i, row) in G1_MATRIX.iter().enumerate() {
            assert_eq!(dd.row(i), row);
        }
        assert_eq!(dd.transmissions(), &[9, 10, 10, 14, 15, 11, 15]);
        assert_eq!(2 * dd.wiener(), 84);
        assert_eq!(dd.diameter(), 4);
    }

    #[test]
    fn average_distance_degree_values() {
        let g = builtin("G1").unwrap();
        let dd = DistanceData::new(&g).unwrap();
        assert_eq!(dd.average_distance_degree(&g, 0).unwrap(), Ratio::new(34, 3));

        for n in 2..8 {
            let k = Family::Complete(n).generate().unwrap();
            let dd = DistanceData::new(&k).unwrap();
            assert_eq!(dd.wiener() as usize, n * (n - 1) / 2);
            assert_eq!(dd.average_distance_degree(&k, 0).unwrap(), Ratio::from_integer(n as i64 - 1));
        }
        for n in 3..10i64 {
            let s = Family::Star(n as usize).generate().unwrap();
            let dd = DistanceData::new(&s).unwrap();
            assert_eq!(dd.average_distance_degree(&s, 0).unwrap(), Ratio::from_integer(2 * n - 3));
        }
        let g = Graph::from_edges(2, []).unwrap();
        assert!(DistanceData::new(&g).is_err());
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(DistanceData::new(&g), Err(Error::Disconnected { u: 0, v: 2 }));
    }

    fn connected_graph() -> impl Strategy<Value = Graph> {
        (1usize..=8)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (Just(n), proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(0usize..64, n))
            })
            .prop_map(|(n, bits, parents)| {
                // random spanning tree plus random extra edges
                let mut g = Graph::empty(n);
                for (v, p) in parents.iter().enumerate().take(n).skip(1) {
                    g.add_edge(p % v, v).unwrap();
                }
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
    }

    proptest! {
        #[test]
        fn bfs_matches_floyd_warshall(g in connected_graph()) {
            let dd = DistanceData::new(&g).unwrap();
            let fw = floyd_warshall(&g);
            let n = g.order();
            for (i, row) in fw.iter().enumerate() {
                prop_assert_eq!(dd.row(i), row.as_slice());
                for j in 0..n {
                    prop_assert_eq!(dd.get(i, j), dd.get(j, i));
                    for k in 0..n {
                        prop_assert!(dd.get(i, k) <= dd.get(i, j) + dd.get(j, k));
                    }
                }
            }
            let pair_sum: u64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| u64::from(fw[i][j])).sum();
            prop_assert_eq!(dd.wiener(), pair_sum);
        }
    }
}
