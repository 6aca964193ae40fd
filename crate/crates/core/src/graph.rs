//! Simple undirected graphs on vertices `0..n`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A simple undirected graph with vertex labels `0..n`.
///
/// Neighbour lists are kept sorted and deduplicated, so two graphs compare
/// equal exactly when they have the same labelled edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from 0-based vertex pairs. Duplicate edges collapse;
    /// loops and out-of-range labels are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from 1-based vertex pairs, as used when transcribing
    /// hand-drawn figures labelled `v1..vn`.
    pub(crate) fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph::from_edges(n, edges.iter().map(|&(u, v)| (u - 1, v - 1)))
            .expect("corpus edge lists are valid")
    }

    /// Inserts `{u, v}`. Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                Ok(true)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// BFS hop counts from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    /// Errors with the first vertex (in label order) unreachable from `v0`.
    pub fn check_connected(&self) -> Result<()> {
        if self.order() == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        match self.bfs(0).iter().position(Option::is_none) {
            Some(v) => Err(Error::Disconnected { u: 0, v }),
            None => Ok(()),
        }
    }

    /// Proper 2-colouring of a connected graph, with vertex 0 in part A.
    ///
    /// When the graph has an odd cycle, the error carries a closed walk
    /// `u, ..., u` of odd length along edges of the graph.
    pub fn bipartition(&self) -> Result<Bipartition> {
        self.check_connected()?;
        let n = self.order();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::from([0]);
        color[0] = Some(false);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in &self.adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(Error::NotBipartite {
                            walk: odd_walk(u, w, &parent, &depth),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (v, c) in color.into_iter().enumerate() {
            if c == Some(false) {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        Ok(Bipartition { a, b })
    }
}

/// Closes the BFS-tree paths from `u` and `w` to their lowest common
/// ancestor with the edge `w -- u`.
fn odd_walk(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (u, w);
    let mut up = vec![x];
    let mut down = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        up.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        down.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        up.push(x);
        down.push(y);
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up.push(u);
    up
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The two colour classes of a connected bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Named graph families with a fixed labelling.
///
/// * `Complete(n)`, `Path(n)` (`i ~ i+1`), `Cycle(n)` (`i ~ i+1 mod n`)
/// * `Star(n)`: centre 0, leaves `1..n`
/// * `CompleteBipartite(a, b)`: parts `0..a` and `a..a+b`
/// * `Kite(n, w)`: clique on `0..w`, path `w, w+1, ..., n-1` hung from vertex 0
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Complete(usize),
    Path(usize),
    Star(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Kite(usize, usize),
}

impl Family {
    pub fn generate(&self) -> Result<Graph> {
        let bad = |msg: &str| Err(Error::InvalidFamily(format!("{self}: {msg}")));
        match *self {
            Family::Complete(n) => {
                if n == 0 {
                    return bad("n must be at least 1");
                }
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Family::Path(n) => {
                if n == 0 {
                    return bad("n must be at least 1");
                }
                Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
            }
            Family::Star(n) => {
                if n == 0 {
                    return bad("n must be at least 1");
                }
                Graph::from_edges(n, (1..n).map(|v| (0, v)))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return bad("a cycle needs at least 3 vertices");
                }
                Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
            }
            Family::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return bad("both parts must be nonempty");
                }
                Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            }
            Family::Kite(n, w) => {
                if w < 2 || w > n {
                    return bad("clique order must satisfy 2 <= w <= n");
                }
                let mut g = Family::Complete(w).generate()?;
                g.adj.resize(n, Vec::new());
                let mut prev = 0;
                for v in w..n {
                    g.add_edge(prev, v)?;
                    prev = v;
                }
                Ok(g)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Path(n) => write!(f, "path({n})"),
            Family::Star(n) => write!(f, "star({n})"),
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite({a},{b})"),
            Family::Kite(n, w) => write!(f, "kite({n},{w})"),
        }
    }
}

/// Accepts `name(args)` or `name:args`, e.g. `kite(5,3)`, `cycle:6`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(s.to_string());
        let s = s.trim();
        let (name, args) = if let Some(open) = s.find('(') {
            let rest = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&s[..open], rest)
        } else {
            s.split_once(':').ok_or_else(bad)?
        };
        let args: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let family = match (name.trim().to_ascii_lowercase().as_str(), args.as_slice()) {
            ("complete" | "k", &[n]) => Family::Complete(n),
            ("path" | "p", &[n]) => Family::Path(n),
            ("star" | "s", &[n]) => Family::Star(n),
            ("cycle" | "c", &[n]) => Family::Cycle(n),
            ("complete_bipartite" | "kab", &[a, b]) => Family::CompleteBipartite(a, b),
            ("kite", &[n, w]) => Family::Kite(n, w),
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "G1", "G2", "G3", "G4", "H1", "H2", "K22", "P4", "S4", "K23", "P5", "S5", "Ki53",
];

/// Fixed labelled graphs used throughout the reference tables.
///
/// Edge lists are given with the drawings' 1-based labels `v1..vn` and
/// stored 0-based.
pub fn builtin(name: &str) -> Result<Graph> {
    let g = match name {
        "G1" => Graph::from_one_based(
            7,
            &[(7, 3), (3, 1), (3, 6), (1, 4), (1, 2), (6, 2), (2, 5)],
        ),
        "G2" => Graph::from_one_based(
            9,
            &[
                (3, 4),
                (4, 5),
                (4, 1),
                (2, 3),
                (2, 1),
                (6, 1),
                (6, 5),
                (1, 7),
                (1, 8),
                (1, 9),
            ],
        ),
        "G3" => Graph::from_one_based(
            6,
            &[(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (3, 6), (5, 6)],
        ),
        "G4" => Graph::from_one_based(
            7,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
                (3, 6),
                (3, 7),
                (6, 7),
            ],
        ),
        "H1" => Graph::from_one_based(5, &[(3, 1), (3, 2), (4, 1), (4, 2), (5, 1)]),
        "H2" => Graph::from_one_based(5, &[(3, 1), (3, 2), (4, 1), (5, 1)]),
        "K22" => Graph::from_one_based(4, &[(3, 1), (3, 2), (4, 1), (4, 2)]),
        "P4" => Graph::from_one_based(4, &[(3, 1), (3, 2), (4, 1)]),
        "S4" => Graph::from_one_based(4, &[(1, 2), (1, 3), (1, 4)]),
        "K23" => Graph::from_one_based(
            5,
            &[(3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)],
        ),
        "P5" => Graph::from_one_based(5, &[(3, 1), (4, 1), (4, 2), (5, 2)]),
        "S5" => Graph::from_one_based(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]),
        "Ki53" => Family::Kite(5, 3).generate()?,
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_closed_odd_walk(g: &Graph, walk: &[usize]) -> bool {
        walk.len() >= 2
            && walk.first() == walk.last()
            && (walk.len() - 1) % 2 == 1
            && walk.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    #[test]
    fn duplicate_edges_collapse_and_loops_fail() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.size(), 2);
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn cycle3_is_complete3() {
        assert_eq!(
            Family::Cycle(3).generate().unwrap(),
            Family::Complete(3).generate().unwrap()
        );
    }

    #[test]
    fn kite_labelling() {
        let g = Family::Kite(5, 3).generate().unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.size(), 5);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]);
        assert!(Family::Kite(5, 1).generate().is_err());
        assert!(Family::Kite(3, 4).generate().is_err());
    }

    #[test]
    fn family_descriptors_parse() {
        assert_eq!(
            "complete_bipartite(2,3)".parse::<Family>().unwrap(),
            Family::CompleteBipartite(2, 3)
        );
        assert_eq!("kite:5,3".parse::<Family>().unwrap(), Family::Kite(5, 3));
        assert_eq!("cycle(6)".parse::<Family>().unwrap(), Family::Cycle(6));
        assert!("kite(5)".parse::<Family>().is_err());
        assert!("blob(3)".parse::<Family>().is_err());
        let k23 = Family::CompleteBipartite(2, 3).generate().unwrap();
        assert_eq!(k23.order(), 5);
        assert_eq!(k23.size(), 6);
    }

    #[test]
    fn g2_degree_and_coloring() {
        let g = builtin("G2").unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.max_degree(), 6);
        assert_eq!(g.degree(0), 6);
        let parts = g.bipartition().unwrap();
        assert!(parts.a.contains(&0));
    }

    #[test]
    fn g1_bipartition_sizes() {
        let parts = builtin("G1").unwrap().bipartition().unwrap();
        let mut sizes = [parts.a.len(), parts.b.len()];
        sizes.sort();
        assert_eq!(sizes, [3, 4]);
    }

    #[test]
    fn complete_bipartite_parts() {
        for (a, b) in [(1, 1), (2, 3), (4, 2)] {
            let p = Family::CompleteBipartite(a, b).generate().unwrap().bipartition().unwrap();
            assert_eq!((p.a.len(), p.b.len()), (a, b));
        }
    }

    #[test]
    fn odd_cycles_yield_odd_walks() {
        for g in [
            Family::Cycle(5).generate().unwrap(),
            Family::Kite(6, 3).generate().unwrap(),
            builtin("G4").unwrap(),
            builtin("G3").unwrap(),
        ] {
            match g.bipartition() {
                Err(Error::NotBipartite { walk }) => assert!(is_closed_odd_walk(&g, &walk), "{walk:?}"),
                other => panic!("expected odd walk, got {other:?}"),
            }
        }
    }

    #[test]
    fn disconnected_names_unreachable_vertex() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.check_connected(), Err(Error::Disconnected { u: 0, v: 2 }));
        assert!(g.bipartition().is_err());
    }

    #[test]
    fn every_builtin_resolves() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            assert!(g.is_connected(), "{name}");
        }
        assert!(matches!(builtin("G9"), Err(Error::UnknownBuiltin(_))));
    }
}
