//! Maximum matching in general graphs (augmenting paths with blossom
//! contraction) and the 2-factor cycle extraction that drives the
//! path-decomposition construction on cubic graphs.

use crate::graph::{Edge, Graph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("graph is not cubic")]
    NotCubic,
    #[error("matching is not a perfect matching of the graph")]
    NotPerfect,
}

/// A set of pairwise vertex-disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Wraps an edge set, checking pairwise disjointness and membership in `g`.
    pub fn new(g: &Graph, mut edges: Vec<Edge>) -> Result<Self, MatchingError> {
        edges.sort_unstable();
        let mut seen = vec![false; g.n()];
        for e in &edges {
            if g.edge_index(*e).is_none() || seen[e.u()] || seen[e.v()] {
                return Err(MatchingError::NotPerfect);
            }
            seen[e.u()] = true;
            seen[e.v()] = true;
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        2 * self.edges.len() == g.n()
    }

    /// The vertex matched to `v`, if any.
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|e| e.touches(v))
            .map(|e| e.other(v))
    }
}

/// The vertex-disjoint cycles of a 2-regular residual graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    cycles: Vec<Vec<usize>>,
}

impl CycleCover {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }
}

const UNMATCHED: usize = usize::MAX;

/// Computes a maximum-cardinality matching.
///
/// Classic O(V^3) blossom search: scan free vertices in ascending order and
/// grow an alternating BFS tree, contracting odd cycles onto their base as
/// they appear. Neighbor lists are sorted, so the result is deterministic.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate = vec![UNMATCHED; n];
    for root in 0..n {
        if mate[root] == UNMATCHED {
            find_augmenting_path(g, root, &mut mate);
        }
    }
    let edges: Vec<Edge> = (0..n)
        .filter(|&v| mate[v] != UNMATCHED && v < mate[v])
        .map(|v| Edge::new(v, mate[v]))
        .collect();
    Matching::new(g, edges).expect("blossom search yields a valid matching")
}

/// Perfect matching if one exists, i.e. if the maximum matching covers
/// every vertex.
pub fn perfect_matching(g: &Graph) -> Option<Matching> {
    let m = maximum_matching(g);
    m.is_perfect(g).then_some(m)
}

fn find_augmenting_path(g: &Graph, root: usize, mate: &mut [usize]) -> bool {
    let n = g.n();
    let mut parent = vec![UNMATCHED; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);

    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if base[v] == base[w] || mate[v] == w {
                continue;
            }
            if w == root || (mate[w] != UNMATCHED && parent[mate[w]] != UNMATCHED) {
                // Odd cycle: contract the blossom onto its base.
                let cur_base = lowest_common_base(v, w, &base, &parent, mate);
                let mut in_blossom = vec![false; n];
                mark_blossom_path(v, cur_base, w, &base, &mut parent, mate, &mut in_blossom);
                mark_blossom_path(w, cur_base, v, &base, &mut parent, mate, &mut in_blossom);
                for u in 0..n {
                    if in_blossom[base[u]] {
                        base[u] = cur_base;
                        if !used[u] {
                            used[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            } else if parent[w] == UNMATCHED {
                parent[w] = v;
                if mate[w] == UNMATCHED {
                    augment_along(w, &parent, mate);
                    return true;
                }
                used[mate[w]] = true;
                queue.push_back(mate[w]);
            }
        }
    }
    false
}

fn lowest_common_base(
    a: usize,
    b: usize,
    base: &[usize],
    parent: &[usize],
    mate: &[usize],
) -> usize {
    let mut on_path = vec![false; base.len()];
    let mut v = a;
    loop {
        v = base[v];
        on_path[v] = true;
        if mate[v] == UNMATCHED {
            break;
        }
        v = parent[mate[v]];
    }
    let mut w = b;
    loop {
        w = base[w];
        if on_path[w] {
            return w;
        }
        w = parent[mate[w]];
    }
}

fn mark_blossom_path(
    mut v: usize,
    cur_base: usize,
    mut child: usize,
    base: &[usize],
    parent: &mut [usize],
    mate: &[usize],
    in_blossom: &mut [bool],
) {
    while base[v] != cur_base {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

fn augment_along(mut w: usize, parent: &[usize], mate: &mut [usize]) {
    while w != UNMATCHED {
        let pw = parent[w];
        let next = mate[pw];
        mate[w] = pw;
        mate[pw] = w;
        w = next;
    }
}

/// Cycles of `g - m` for a cubic graph `g` and perfect matching `m`.
///
/// The residual graph is 2-regular, so it splits into vertex-disjoint cycles.
/// Each cycle is reported starting from its lowest vertex and walking toward
/// the lower-indexed of that vertex's two residual neighbors.
pub fn two_factor_cycles(g: &Graph, m: &Matching) -> Result<CycleCover, MatchingError> {
    if !g.is_cubic() {
        return Err(MatchingError::NotCubic);
    }
    if !m.is_perfect(g) {
        return Err(MatchingError::NotPerfect);
    }
    let mut mate = vec![UNMATCHED; g.n()];
    for e in m.edges() {
        if g.edge_index(*e).is_none() || mate[e.u()] != UNMATCHED || mate[e.v()] != UNMATCHED {
            return Err(MatchingError::NotPerfect);
        }
        mate[e.u()] = e.v();
        mate[e.v()] = e.u();
    }

    let mut visited = vec![false; g.n()];
    let mut cycles = Vec::new();
    for start in 0..g.n() {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut prev = start;
        let mut cur = *g
            .neighbors(start)
            .iter()
            .find(|&&w| w != mate[start])
            .expect("residual degree is 2");
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            let next = *g
                .neighbors(cur)
                .iter()
                .find(|&&w| w != mate[cur] && w != prev)
                .expect("residual degree is 2");
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(CycleCover { cycles })
}
