//! Substructures that index the clique, diameter and cactus bounds: maximum
//! cliques, diameter paths and the longest cycles of a cactus.

use std::fmt;

use serde::Serialize;

use crate::distance::DistanceData;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default limit on enumerated diameter paths.
pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Clique,
    DiameterPath,
    Cycle,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Clique => "clique",
            StructureKind::DiameterPath => "diameter path",
            StructureKind::Cycle => "cycle",
        })
    }
}

/// All substructures of one kind attaining the extremal parameter
/// (clique number, diameter or circumference).
///
/// Cliques are sorted vertex lists, paths run from the smaller endpoint, and
/// cycles start at their least vertex and continue towards its smaller
/// neighbour on the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub kind: StructureKind,
    /// `omega`, `d` or `l`.
    pub parameter: usize,
    pub members: Vec<Vec<usize>>,
    /// Transmission sum over each member's vertices.
    pub s_values: Vec<u64>,
    pub truncated: bool,
}

impl WitnessSet {
    fn new(kind: StructureKind, parameter: usize, members: Vec<Vec<usize>>, dd: &DistanceData, truncated: bool) -> Self {
        let s_values = members.iter().map(|m| dd.transmission_sum(m)).collect();
        WitnessSet {
            kind,
            parameter,
            members,
            s_values,
            truncated,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Re-checks that every member has the claimed structure and that the
    /// stored `s_values` agree with `dd`.
    pub fn is_consistent(&self, g: &Graph, dd: &DistanceData) -> bool {
        self.members.iter().zip(&self.s_values).all(|(m, &s)| {
            let shape = match self.kind {
                StructureKind::Clique => {
                    m.len() == self.parameter
                        && m.iter().enumerate().all(|(i, &u)| m[i + 1..].iter().all(|&v| g.has_edge(u, v)))
                }
                StructureKind::DiameterPath => {
                    m.len() == self.parameter + 1
                        && m.iter().enumerate().all(|(i, &u)| {
                            m.iter().enumerate().all(|(j, &v)| dd.get(u, v) as usize == i.abs_diff(j))
                        })
                }
                StructureKind::Cycle => {
                    let mut sorted = m.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    m.len() == self.parameter
                        && sorted.len() == m.len()
                        && (0..m.len()).all(|i| g.has_edge(m[i], m[(i + 1) % m.len()]))
                }
            };
            shape && dd.transmission_sum(m) == s
        })
    }
}

/// All cliques of maximum order, lexicographically sorted.
pub fn maximum_cliques(g: &Graph, dd: &DistanceData) -> WitnessSet {
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, (0..g.order()).collect(), Vec::new(), &mut best);
    for c in &mut best {
        c.sort_unstable();
    }
    best.sort();
    let omega = best.first().map_or(0, Vec::len);
    WitnessSet::new(StructureKind::Clique, omega, best, dd, false)
}

fn intersect(set: &[usize], sorted: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|v| sorted.binary_search(v).is_ok()).collect()
}

/// Keeps only maximal cliques of the largest size seen so far in `best`.
fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, best: &mut Vec<Vec<usize>>) {
    if r.len() + p.len() < best.first().map_or(0, Vec::len) {
        return;
    }
    if p.is_empty() {
        if x.is_empty() {
            match best.first().map(Vec::len) {
                Some(k) if k > r.len() => {}
                Some(k) if k == r.len() => best.push(r.clone()),
                _ => *best = vec![r.clone()],
            }
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| intersect(&p, g.neighbors(u)).len())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|v| !g.has_edge(pivot, *v)).collect();
    for v in candidates {
        let nv = g.neighbors(v);
        r.push(v);
        bron_kerbosch(g, r, intersect(&p, nv), intersect(&x, nv), best);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// Every geodesic between a pair at distance `d`, each undirected path once
/// (from the smaller endpoint). Stops after `cap` paths and sets `truncated`.
pub fn diameter_paths(g: &Graph, dd: &DistanceData, cap: usize) -> Result<WitnessSet> {
    if cap == 0 {
        return Err(Error::OutOfRange("path cap must be at least 1".into()));
    }
    let d = dd.diameter();
    let n = g.order();
    let mut members = Vec::new();
    let mut truncated = false;
    'pairs: for u in 0..n {
        for v in u + 1..n {
            if dd.get(u, v) != d {
                continue;
            }
            let mut path = vec![u];
            if !geodesics(g, dd, v, &mut path, &mut members, cap) {
                truncated = true;
                break 'pairs;
            }
        }
    }
    Ok(WitnessSet::new(StructureKind::DiameterPath, d as usize, members, dd, truncated))
}

/// Extends `path` towards `target` along the shortest-path DAG. Returns
/// false once more than `cap` paths would be needed.
fn geodesics(g: &Graph, dd: &DistanceData, target: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
    let last = *path.last().expect("path starts nonempty");
    if last == target {
        if out.len() == cap {
            return false;
        }
        out.push(path.clone());
        return true;
    }
    let remaining = dd.get(last, target);
    for &w in g.neighbors(last) {
        if dd.get(w, target) + 1 == remaining {
            path.push(w);
            let ok = geodesics(g, dd, target, path, out, cap);
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Longest cycles of a cactus, found through its blocks.
///
/// Errors with `NotCactus` when some block is neither an edge nor a cycle and
/// with `Acyclic` for a tree.
pub fn cactus_longest_cycles(g: &Graph, dd: &DistanceData) -> Result<WitnessSet> {
    g.check_connected()?;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for block in blocks(g) {
        let mut vertices: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        match block.len() {
            1 => {}
            e if e == vertices.len() => cycles.push(order_cycle(&block, vertices[0])),
            e => {
                return Err(Error::NotCactus {
                    vertices: vertices.len(),
                    edges: e,
                })
            }
        }
    }
    let l = cycles.iter().map(Vec::len).max().ok_or(Error::Acyclic)?;
    cycles.retain(|c| c.len() == l);
    cycles.sort();
    Ok(WitnessSet::new(StructureKind::Cycle, l, cycles, dd, false))
}

/// Walks a cycle block starting at `start`, first stepping to the smaller
/// of its two cycle neighbours.
fn order_cycle(edges: &[(usize, usize)], start: usize) -> Vec<usize> {
    let next = |from: usize, prev: Option<usize>| -> usize {
        edges
            .iter()
            .filter_map(|&(a, b)| match (a == from, b == from) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .filter(|&w| Some(w) != prev)
            .min()
            .expect("cycle vertices have degree 2 in their block")
    };
    let mut cycle = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let w = next(cur, prev);
        if w == start {
            return cycle;
        }
        cycle.push(w);
        prev = Some(cur);
        cur = w;
    }
}

/// Biconnected components as edge lists (iterative Hopcroft-Tarjan).
pub fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*idx) {
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Distance sum from one vertex of `C_l` to the others, measured on the
/// cycle: `l^2 / 4` for even `l`, `(l^2 - 1) / 4` for odd `l`.
pub fn cycle_internal_sum(l: usize) -> Result<u64> {
    if l < 3 {
        return Err(Error::OutOfRange(format!("cycle length must be at least 3, got {l}")));
    }
    let l = l as u64;
    Ok(if l.is_multiple_of(2) { l * l / 4 } else { (l * l - 1) / 4 })
}

/// Sum of distances over ordered vertex pairs of a path with `d` edges:
/// `d(d+1)(d+2)/3`.
pub fn path_internal_sum(d: usize) -> Result<u64> {
    if d < 1 {
        return Err(Error::OutOfRange("path length must be at least 1".into()));
    }
    let d = d as u64;
    Ok(d * (d + 1) * (d + 2) / 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin, Family};
    use proptest::prelude::*;

    fn dd(g: &Graph) -> DistanceData {
        DistanceData::new(g).unwrap()
    }

    fn brute_cliques(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut best: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let clique = vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            if !clique {
                continue;
            }
            match best.first().map(Vec::len) {
                Some(k) if k > vs.len() => {}
                Some(k) if k == vs.len() => best.push(vs),
                _ => best = vec![vs],
            }
        }
        best.sort();
        best
    }

    /// All simple paths with `d` edges between vertices at distance `d`.
    fn brute_diameter_paths(g: &Graph, dd: &DistanceData) -> Vec<Vec<usize>> {
        fn walk(g: &Graph, len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if path.len() == len + 1 {
                out.push(path.clone());
                return;
            }
            for &w in g.neighbors(*path.last().unwrap()) {
                if !path.contains(&w) {
                    path.push(w);
                    walk(g, len, path, out);
                    path.pop();
                }
            }
        }
        let d = dd.diameter() as usize;
        let mut out = Vec::new();
        for s in 0..g.order() {
            walk(g, d, &mut vec![s], &mut out);
        }
        out.retain(|p| p[0] < p[d] && dd.get(p[0], p[d]) as usize == d);
        out.sort();
        out
    }

    #[test]
    fn cliques_of_families() {
        let kite = Family::Kite(5, 3).generate().unwrap();
        let w = maximum_cliques(&kite, &dd(&kite));
        assert_eq!((w.parameter, w.members.clone()), (3, vec![vec![0, 1, 2]]));
        assert!(w.is_consistent(&kite, &dd(&kite)));

        let k34 = Family::CompleteBipartite(3, 4).generate().unwrap();
        let w = maximum_cliques(&k34, &dd(&k34));
        assert_eq!((w.parameter, w.len()), (2, 12));

        let k6 = Family::Complete(6).generate().unwrap();
        let w = maximum_cliques(&k6, &dd(&k6));
        assert_eq!((w.parameter, w.len()), (6, 1));
        assert_eq!(w.s_values, vec![30]);
    }

    #[test]
    fn g1_diameter_paths() {
        let g = builtin("G1").unwrap();
        let d = dd(&g);
        let w = diameter_paths(&g, &d, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(w.parameter, 4);
        assert_eq!(w.members, vec![vec![4, 1, 0, 2, 6], vec![4, 1, 5, 2, 6]]);
        assert!(!w.truncated);
        assert!(w.is_consistent(&g, &d));
        assert_eq!(w.s_values, vec![15 + 10 + 9 + 10 + 15, 15 + 10 + 11 + 10 + 15]);
    }

    #[test]
    fn diameter_paths_of_families_and_cap() {
        let p = Family::Path(6).generate().unwrap();
        assert_eq!(diameter_paths(&p, &dd(&p), 10).unwrap().len(), 1);
        let c6 = Family::Cycle(6).generate().unwrap();
        let w = diameter_paths(&c6, &dd(&c6), 100).unwrap();
        assert_eq!((w.parameter, w.len()), (3, 6));
        let w = diameter_paths(&c6, &dd(&c6), 4).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.truncated);
        assert!(diameter_paths(&c6, &dd(&c6), 0).is_err());
        let exact = diameter_paths(&c6, &dd(&c6), 6).unwrap();
        assert!(!exact.truncated);
    }

    #[test]
    fn cactus_corpus() {
        let g3 = builtin("G3").unwrap();
        let w = cactus_longest_cycles(&g3, &dd(&g3)).unwrap();
        assert_eq!((w.parameter, w.members.clone()), (4, vec![vec![0, 1, 2, 3]]));
        assert!(w.is_consistent(&g3, &dd(&g3)));

        let g4 = builtin("G4").unwrap();
        let w = cactus_longest_cycles(&g4, &dd(&g4)).unwrap();
        assert_eq!((w.parameter, w.members.clone()), (5, vec![vec![0, 1, 2, 3, 4]]));

        let k4 = Family::Complete(4).generate().unwrap();
        assert_eq!(
            cactus_longest_cycles(&k4, &dd(&k4)),
            Err(Error::NotCactus { vertices: 4, edges: 6 })
        );
        let tree = Family::Star(5).generate().unwrap();
        assert_eq!(cactus_longest_cycles(&tree, &dd(&tree)), Err(Error::Acyclic));

        // two triangles sharing vertex 0, plus a 4-cycle hanging off vertex 4
        let g = Graph::from_edges(9, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (4, 5), (5, 6), (6, 7), (7, 4), (7, 8)]).unwrap();
        let w = cactus_longest_cycles(&g, &dd(&g)).unwrap();
        assert_eq!(w.members, vec![vec![4, 5, 6, 7]]);
        assert_eq!(blocks(&g).len(), 4);
    }

    #[test]
    fn internal_sums() {
        assert_eq!(cycle_internal_sum(4).unwrap(), 4);
        assert_eq!(cycle_internal_sum(5).unwrap(), 6);
        assert_eq!(cycle_internal_sum(9).unwrap(), 20);
        assert!(cycle_internal_sum(2).is_err());
        assert_eq!(path_internal_sum(1).unwrap(), 2);
        assert_eq!(path_internal_sum(2).unwrap(), 8);
        assert_eq!(path_internal_sum(5).unwrap(), 70);
        assert!(path_internal_sum(0).is_err());
        for d in 1..=12 {
            let p = dd(&Family::Path(d + 1).generate().unwrap());
            assert_eq!(path_internal_sum(d).unwrap(), 2 * p.wiener());
        }
        for l in 3..=15 {
            let c = dd(&Family::Cycle(l).generate().unwrap());
            assert_eq!(cycle_internal_sum(l).unwrap(), c.transmission(0));
        }
    }

    fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec(0usize..64, n), proptest::collection::vec(any::<bool>(), n * n)))
            .prop_map(|(n, parents, bits)| {
                let mut g = Graph::empty(n);
                for (v, p) in parents.iter().enumerate().take(n).skip(1) {
                    g.add_edge(p % v, v).unwrap();
                }
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[u * n + v] {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
    }

    /// Random cactus: a tree of cycles and bridges grown from vertex 0.
    fn cactus() -> impl Strategy<Value = Graph> {
        proptest::collection::vec((0usize..64, 2usize..7), 1..5).prop_map(|parts| {
            let mut edges = Vec::new();
            let mut n = 1;
            for (anchor, len) in parts {
                let a = anchor % n;
                if len == 2 {
                    edges.push((a, n));
                    n += 1;
                } else {
                    let ring: Vec<usize> = std::iter::once(a).chain(n..n + len - 1).collect();
                    for i in 0..len {
                        edges.push((ring[i], ring[(i + 1) % len]));
                    }
                    n += len - 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    }

    proptest! {
        #[test]
        fn cliques_match_brute_force(g in connected_graph(10)) {
            let w = maximum_cliques(&g, &dd(&g));
            prop_assert_eq!(&w.members, &brute_cliques(&g));
            prop_assert!(w.is_consistent(&g, &dd(&g)));
        }

        #[test]
        fn diameter_paths_match_brute_force(g in connected_graph(8)) {
            let d = dd(&g);
            let mut w = diameter_paths(&g, &d, DEFAULT_PATH_CAP).unwrap();
            prop_assert!(w.is_consistent(&g, &d));
            w.members.sort();
            prop_assert_eq!(w.members, brute_diameter_paths(&g, &d));
        }

        #[test]
        fn cactus_cycles_keep_internal_distances(g in cactus()) {
            let d = dd(&g);
            match cactus_longest_cycles(&g, &d) {
                Err(Error::Acyclic) => prop_assert_eq!(g.size(), g.order() - 1),
                Err(e) => prop_assert!(false, "{e}"),
                Ok(w) => {
                    prop_assert!(w.is_consistent(&g, &d));
                    let l = w.parameter;
                    for c in &w.members {
                        for i in 0..l {
                            for j in 0..l {
                                let k = i.abs_diff(j);
                                prop_assert_eq!(d.get(c[i], c[j]) as usize, k.min(l - k));
                            }
                        }
                    }
                }
            }
        }
    }
}
