//! Simple undirected graphs with canonical edge lists, plus the structural
//! queries and surgery primitives (subdivision, gadget attachment) that the
//! decomposition algorithms are built on.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

/// Retry cap for the pairing-model generator before giving up.
const RANDOM_CUBIC_MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{0}, {1}}} not present in graph")]
    MissingEdge(usize, usize),
    #[error("anchor vertex {anchor} out of range for attached graph on {n} vertices")]
    BadAnchor { anchor: usize, n: usize },
    #[error("no simple connected cubic graph found on {n} vertices after {attempts} pairing attempts")]
    ExhaustedRetries { n: usize, attempts: usize },
    #[error("{0}")]
    InvalidArgument(String),
}

/// An undirected edge in canonical form: `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds the canonical edge for an unordered endpoint pair.
    ///
    /// Panics on a self-loop; loops are rejected with a proper error at graph
    /// construction, so reaching this panic is a programming error.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "self-loop {{{a}, {a}}} is not a valid edge");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "vertex {x} is not an endpoint of {self:?}");
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

/// Per-degree vertex counts of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    counts: Vec<usize>,
}

impl DegreeProfile {
    /// Number of vertices with degree exactly `d`.
    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn v1(&self) -> usize {
        self.count(1)
    }

    pub fn v2(&self) -> usize {
        self.count(2)
    }

    pub fn v3(&self) -> usize {
        self.count(3)
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

/// The small named graphs and gadgets used throughout the library.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NamedGraph {
    K4,
    K33,
    Cube,
    Prism,
    Petersen,
    Diamond,
    Cofish,
    Net,
    Claw,
    Triangle,
    P4,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 11] = [
        NamedGraph::K4,
        NamedGraph::K33,
        NamedGraph::Cube,
        NamedGraph::Prism,
        NamedGraph::Petersen,
        NamedGraph::Diamond,
        NamedGraph::Cofish,
        NamedGraph::Net,
        NamedGraph::Claw,
        NamedGraph::Triangle,
        NamedGraph::P4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedGraph::K4 => "k4",
            NamedGraph::K33 => "k33",
            NamedGraph::Cube => "cube",
            NamedGraph::Prism => "prism",
            NamedGraph::Petersen => "petersen",
            NamedGraph::Diamond => "diamond",
            NamedGraph::Cofish => "cofish",
            NamedGraph::Net => "net",
            NamedGraph::Claw => "claw",
            NamedGraph::Triangle => "triangle",
            NamedGraph::P4 => "p4",
        }
    }
}

impl std::str::FromStr for NamedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedGraph::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| GraphError::InvalidArgument(format!("unknown graph name: {s}")))
    }
}

/// A simple undirected graph on dense vertex ids `0..n`.
///
/// The edge list is kept sorted lexicographically and each neighbor list is
/// sorted ascending, so identical graphs always have identical
/// representations and all traversals are deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.edges.len(), self.edges)
    }
}

impl Graph {
    /// Builds a graph from raw endpoint pairs, rejecting loops, duplicates
    /// and out-of-range endpoints.
    pub fn build(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a >= n {
                return Err(GraphError::IndexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::IndexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Returns the canonical instance of a named graph.
    ///
    /// The co-fish is fixed as vertices `{a..e, f} = {0..4, 5}` with edges
    /// ab, ad, af, bc, be, cd, ce, de; `f = 5` is the degree-1 attachment
    /// vertex. The prism is the complement of the 6-cycle.
    pub fn named(which: NamedGraph) -> Self {
        let (n, pairs): (usize, Vec<(usize, usize)>) = match which {
            NamedGraph::K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            NamedGraph::K33 => (
                6,
                vec![
                    (0, 3),
                    (0, 4),
                    (0, 5),
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (2, 3),
                    (2, 4),
                    (2, 5),
                ],
            ),
            NamedGraph::Cube => {
                // Vertices are 3-bit words; edges flip a single bit.
                let mut pairs = Vec::new();
                for v in 0..8usize {
                    for bit in [1usize, 2, 4] {
                        let w = v ^ bit;
                        if v < w {
                            pairs.push((v, w));
                        }
                    }
                }
                (8, pairs)
            }
            NamedGraph::Prism => {
                let mut pairs = Vec::new();
                for u in 0..6usize {
                    for v in (u + 1)..6 {
                        let on_c6 = v == u + 1 || (u == 0 && v == 5);
                        if !on_c6 {
                            pairs.push((u, v));
                        }
                    }
                }
                (6, pairs)
            }
            NamedGraph::Petersen => {
                let mut pairs = Vec::new();
                for i in 0..5usize {
                    pairs.push((i, (i + 1) % 5)); // outer cycle
                    pairs.push((i, i + 5)); // spokes
                    pairs.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
                }
                (10, pairs)
            }
            NamedGraph::Diamond => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
            NamedGraph::Cofish => (
                6,
                vec![
                    (0, 1),
                    (0, 3),
                    (0, 5),
                    (1, 2),
                    (1, 4),
                    (2, 3),
                    (2, 4),
                    (3, 4),
                ],
            ),
            NamedGraph::Net => (6, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]),
            NamedGraph::Claw => (4, vec![(0, 1), (0, 2), (0, 3)]),
            NamedGraph::Triangle => (3, vec![(0, 1), (0, 2), (1, 2)]),
            NamedGraph::P4 => (4, vec![(0, 1), (1, 2), (2, 3)]),
        };
        Graph::build(n, &pairs).expect("named graphs are well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// Index of an edge in the canonical edge list.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let max = self.adj.iter().map(Vec::len).max().unwrap_or(0);
        let mut counts = vec![0usize; max + 1];
        for list in &self.adj {
            counts[list.len()] += 1;
        }
        DegreeProfile { counts }
    }

    pub fn is_cubic(&self) -> bool {
        self.n > 0 && self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == self.n
    }

    /// Two-colors the graph by BFS from the lowest vertex of each component.
    /// Returns per-vertex colors (0/1) or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// All bridges, via one low-link DFS pass. An edge is a bridge when its
    /// removal increases the number of components.
    pub fn bridges(&self) -> Vec<Edge> {
        let n = self.n;
        let mut disc = vec![0usize; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut out = Vec::new();
        // Iterative DFS; frame = (vertex, parent edge as (parent, neighbor index)).
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if disc[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            timer += 1;
            disc[root] = timer;
            low[root] = timer;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if disc[w] == 0 {
                        parent[w] = v;
                        timer += 1;
                        disc[w] = timer;
                        low[w] = timer;
                        stack.push((w, 0));
                    } else if w != parent[v] {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(Edge::new(p, v));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All triangles as sorted vertex triples, each flagged `isolated` when
    /// no other triangle shares an edge with it.
    pub fn triangles(&self) -> Vec<([usize; 3], bool)> {
        let mut tris = Vec::new();
        for e in &self.edges {
            let (u, v) = e.endpoints();
            for &w in &self.adj[u] {
                if w > v && self.has_edge(v, w) {
                    tris.push([u, v, w]);
                }
            }
        }
        tris.sort_unstable();
        // Count, per edge, how many triangles contain it; a triangle is
        // isolated iff all three of its edges lie in exactly one triangle.
        let mut per_edge = vec![0usize; self.edges.len()];
        for t in &tris {
            for e in triangle_edges(*t) {
                per_edge[self.edge_index(e).expect("triangle edge exists")] += 1;
            }
        }
        tris.into_iter()
            .map(|t| {
                let isolated = triangle_edges(t)
                    .iter()
                    .all(|e| per_edge[self.edge_index(*e).unwrap()] == 1);
                (t, isolated)
            })
            .collect()
    }

    /// First induced diamond in scan order, reported as `(u, v, w, x)` where
    /// `{v, w}` is the shared edge and `{u, x}` is the missing edge. Scans
    /// shared edges in canonical order, then hinge pairs ascending.
    pub fn find_diamond(&self) -> Option<(usize, usize, usize, usize)> {
        for e in &self.edges {
            let (v, w) = e.endpoints();
            let common: Vec<usize> = self.adj[v]
                .iter()
                .copied()
                .filter(|&x| x != w && self.has_edge(w, x))
                .collect();
            for (i, &u) in common.iter().enumerate() {
                for &x in &common[i + 1..] {
                    if !self.has_edge(u, x) {
                        return Some((u, v, w, x));
                    }
                }
            }
        }
        None
    }

    /// Subdivides `e`, returning the new graph and the inserted vertex id
    /// (always the previous vertex count).
    pub fn subdivide(&self, e: Edge) -> Result<(Graph, usize), GraphError> {
        if self.edge_index(e).is_none() {
            return Err(GraphError::MissingEdge(e.u, e.v));
        }
        let w = self.n;
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&f| f != e)
            .map(Edge::endpoints)
            .collect();
        pairs.push((e.u, w));
        pairs.push((e.v, w));
        let g = Graph::build(self.n + 1, &pairs).expect("subdivision preserves simplicity");
        Ok((g, w))
    }

    /// Attaches `h` to edge `e`: subdivides `e` with a new vertex `w`, then
    /// identifies `h`'s `anchor` with `w`. The remaining vertices of `h` are
    /// renumbered in ascending order starting right after `w`.
    pub fn attach_to_edge(&self, h: &Graph, e: Edge, anchor: usize) -> Result<Graph, GraphError> {
        if anchor >= h.n {
            return Err(GraphError::BadAnchor { anchor, n: h.n });
        }
        let (base, w) = self.subdivide(e)?;
        let map = |v: usize| -> usize {
            if v == anchor {
                w
            } else if v < anchor {
                w + 1 + v
            } else {
                w + v
            }
        };
        let mut pairs: Vec<(usize, usize)> = base.edges.iter().map(Edge::endpoints).collect();
        for f in &h.edges {
            pairs.push((map(f.u), map(f.v)));
        }
        Graph::build(base.n + h.n - 1, &pairs)
    }

    /// Connected components as sorted vertex lists, lowest vertex first.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (perm[e.u], perm[e.v]))
            .collect();
        Graph::build(self.n, &pairs).expect("permutation preserves simplicity")
    }

    /// Random connected simple cubic graph via the pairing model: three
    /// points per vertex, a uniformly shuffled pairing, and full rejection of
    /// loops, multi-edges and disconnected outcomes. Deterministic per seed.
    pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, GraphError> {
        if n < 4 || n % 2 != 0 {
            return Err(GraphError::InvalidArgument(format!(
                "cubic graphs need an even vertex count of at least 4, got {n}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        for attempt in 0..RANDOM_CUBIC_MAX_ATTEMPTS {
            points.shuffle(&mut rng);
            let pairs: Vec<(usize, usize)> = points
                .chunks_exact(2)
                .map(|c| (c[0], c[1]))
                .collect();
            match Graph::build(n, &pairs) {
                Ok(g) if g.is_connected() => return Ok(g),
                _ => {
                    let _ = attempt;
                }
            }
        }
        Err(GraphError::ExhaustedRetries {
            n,
            attempts: RANDOM_CUBIC_MAX_ATTEMPTS,
        })
    }
}

fn triangle_edges(t: [usize; 3]) -> [Edge; 3] {
    [
        Edge::new(t[0], t[1]),
        Edge::new(t[0], t[2]),
        Edge::new(t[1], t[2]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named(which: NamedGraph) -> Graph {
        Graph::named(which)
    }

    #[test]
    fn build_k4() {
        let g = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_cubic());
        assert_eq!(g, named(NamedGraph::K4));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::build(2, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::build(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::build(3, &[(0, 0)]), Err(GraphError::LoopEdge(0)));
        assert_eq!(
            Graph::build(3, &[(0, 3)]),
            Err(GraphError::IndexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn named_graph_shapes() {
        let prism = named(NamedGraph::Prism);
        assert_eq!(prism.n(), 6);
        assert_eq!(prism.edge_count(), 9);
        let tris = prism.triangles();
        assert_eq!(tris.len(), 2);
        assert!(tris.iter().all(|(_, iso)| *iso));
        let ts: Vec<[usize; 3]> = tris.iter().map(|(t, _)| *t).collect();
        assert_eq!(ts, vec![[0, 2, 4], [1, 3, 5]]);

        let cofish = named(NamedGraph::Cofish);
        assert_eq!(cofish.n(), 6);
        assert_eq!(cofish.edge_count(), 8);
        let dp = cofish.degree_profile();
        assert_eq!((dp.v1(), dp.v2(), dp.v3()), (1, 0, 5));

        let net = named(NamedGraph::Net);
        assert_eq!(net.n(), 6);
        assert_eq!(net.edge_count(), 6);
        let dp = net.degree_profile();
        assert_eq!((dp.v1(), dp.v3()), (3, 3));

        assert!(named(NamedGraph::Petersen).is_cubic());
        assert_eq!(named(NamedGraph::Petersen).edge_count(), 15);
        assert!(named(NamedGraph::Cube).is_cubic());
    }

    #[test]
    fn degree_profiles() {
        let dp = named(NamedGraph::K4).degree_profile();
        assert_eq!(dp.v3(), 4);
        assert_eq!(dp.v1() + dp.v2(), 0);
        let dp = named(NamedGraph::Claw).degree_profile();
        assert_eq!((dp.v1(), dp.v3()), (3, 1));
    }

    #[test]
    fn bipartition_examples() {
        let colors = named(NamedGraph::K33).bipartition().unwrap();
        let side0: Vec<usize> = (0..6).filter(|&v| colors[v] == 0).collect();
        assert_eq!(side0.len(), 3);
        assert!(named(NamedGraph::Prism).bipartition().is_none());
        assert!(named(NamedGraph::Petersen).bipartition().is_none());
        assert!(named(NamedGraph::Cube).bipartition().is_some());
    }

    #[test]
    fn bridge_examples() {
        assert!(named(NamedGraph::K4).bridges().is_empty());
        assert_eq!(named(NamedGraph::Cofish).bridges(), vec![Edge::new(0, 5)]);
        // Attaching a single edge to the cube (Fig-style pendant) creates one bridge.
        let cube = named(NamedGraph::Cube);
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let g = cube.attach_to_edge(&k2, cube.edges()[0], 0).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 14);
        assert_eq!(g.bridges(), vec![Edge::new(8, 9)]);
    }

    #[test]
    fn triangle_examples() {
        let k4 = named(NamedGraph::K4);
        let tris = k4.triangles();
        assert_eq!(tris.len(), 4);
        assert!(tris.iter().all(|(_, iso)| !*iso));
        assert!(named(NamedGraph::K33).triangles().is_empty());
    }

    #[test]
    fn diamond_examples() {
        let d = named(NamedGraph::Diamond);
        let (u, v, w, x) = d.find_diamond().unwrap();
        assert!(!d.has_edge(u, x));
        assert!(d.has_edge(v, w));
        assert!(d.has_edge(u, v) && d.has_edge(u, w) && d.has_edge(x, v) && d.has_edge(x, w));
        // K4 has no induced diamond, and the prism's triangles are disjoint.
        assert_eq!(named(NamedGraph::K4).find_diamond(), None);
        assert_eq!(named(NamedGraph::Prism).find_diamond(), None);
    }

    #[test]
    fn subdivide_counts() {
        let k4 = named(NamedGraph::K4);
        let (g, w) = k4.subdivide(Edge::new(0, 1)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 7));
        assert_eq!(w, 4);
        assert_eq!(g.degree(w), 2);
        assert_eq!(
            k4.subdivide(Edge::new(0, 1)).unwrap().0.edges(),
            g.edges()
        );
        let tri = named(NamedGraph::Triangle);
        let (c4, _) = tri.subdivide(Edge::new(0, 1)).unwrap();
        assert_eq!((c4.n(), c4.edge_count()), (4, 4));
        assert!(c4.triangles().is_empty());
        assert!(k4.subdivide(Edge::new(0, 4)).is_err());
    }

    #[test]
    fn attach_cofish_to_k4() {
        let k4 = named(NamedGraph::K4);
        let cofish = named(NamedGraph::Cofish);
        let g = k4.attach_to_edge(&cofish, Edge::new(0, 1), 5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert!(g.is_cubic());
        assert!(g.is_connected());
    }

    #[test]
    fn attach_rejects_bad_anchor() {
        let k4 = named(NamedGraph::K4);
        let err = k4
            .attach_to_edge(&named(NamedGraph::Cofish), Edge::new(0, 1), 6)
            .unwrap_err();
        assert_eq!(err, GraphError::BadAnchor { anchor: 6, n: 6 });
    }

    #[test]
    fn random_cubic_contract() {
        let g = Graph::random_cubic(8, 1).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(g.is_cubic() && g.is_connected());
        // The only cubic graph on 4 vertices is K4.
        for seed in 0..5 {
            assert_eq!(Graph::random_cubic(4, seed).unwrap(), named(NamedGraph::K4));
        }
        assert_eq!(
            Graph::random_cubic(8, 42).unwrap().edges(),
            Graph::random_cubic(8, 42).unwrap().edges()
        );
        assert!(Graph::random_cubic(5, 0).is_err());
    }

    /// Brute-force bridge oracle: remove each edge and compare component counts.
    fn bridges_brute(g: &Graph) -> Vec<Edge> {
        let before = g.components().len();
        let mut out = Vec::new();
        for &e in g.edges() {
            let pairs: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|&&f| f != e)
                .map(Edge::endpoints)
                .collect();
            let h = Graph::build(g.n(), &pairs).unwrap();
            if h.components().len() > before {
                out.push(e);
            }
        }
        out
    }

    /// Brute-force isolated-triangle oracle straight from the definition.
    fn isolated_brute(g: &Graph, t: [usize; 3]) -> bool {
        let [u, v, w] = t;
        for x in 0..g.n() {
            if x == u || x == v || x == w {
                continue;
            }
            if (g.has_edge(u, x) && g.has_edge(v, x))
                || (g.has_edge(u, x) && g.has_edge(w, x))
                || (g.has_edge(v, x) && g.has_edge(w, x))
            {
                return false;
            }
        }
        true
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            let all: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            proptest::sample::subsequence(all.clone(), 0..=all.len())
                .prop_map(move |pairs| Graph::build(n, &pairs).unwrap())
        })
    }

    proptest! {
        #[test]
        fn handshake_and_canonical_order(g in arb_graph(12)) {
            let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            let mut sorted = g.edges().to_vec();
            sorted.sort_unstable();
            prop_assert_eq!(sorted.as_slice(), g.edges());
        }

        #[test]
        fn bridges_match_brute_force(g in arb_graph(12)) {
            prop_assert_eq!(g.bridges(), bridges_brute(&g));
        }

        #[test]
        fn isolated_flags_match_brute_force(g in arb_graph(10)) {
            for (t, iso) in g.triangles() {
                prop_assert_eq!(iso, isolated_brute(&g, t));
            }
        }

        #[test]
        fn subdivide_then_contract_back(g in arb_graph(10)) {
            prop_assume!(g.edge_count() > 0);
            let e = g.edges()[0];
            let (h, w) = g.subdivide(e).unwrap();
            // Contract back: merge the two edges through w into one.
            let ends: Vec<usize> = h.neighbors(w).to_vec();
            let mut pairs: Vec<(usize, usize)> = h
                .edges()
                .iter()
                .filter(|f| !f.touches(w))
                .map(Edge::endpoints)
                .collect();
            pairs.push((ends[0], ends[1]));
            let back = Graph::build(g.n(), &pairs).unwrap();
            prop_assert_eq!(back.edges(), g.edges());
        }
    }
}
