//! Exhaustive enumeration of connected cubic graphs of small order, up to
//! isomorphism. Used to build ground-truth corpora for cross-checking the
//! deciders against the exact solver.

use crate::graph::Graph;

/// All connected cubic graphs on `n` vertices up to isomorphism, sorted by
/// canonical edge list of the chosen representatives.
///
/// Enumerates labeled graphs by completing the adjacency of the lowest
/// incomplete vertex with higher-numbered partners, fixing vertex 0's
/// neighborhood to {1, 2, 3} to cut symmetry, then deduplicates with a
/// distance-profile invariant plus explicit isomorphism tests. Sized for
/// orders up to 10 (19 classes, under a second); the labeled space at 12
/// is three orders of magnitude larger.
pub fn connected_cubic_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 4 && n % 2 == 0, "cubic order must be even and at least 4");
    assert!(n <= 10, "enumeration is sized for orders up to 10");

    let mut gen = Generator {
        n,
        adj: vec![Vec::new(); n],
        deg: vec![0u8; n],
        pairs: Vec::new(),
        reps: Vec::new(),
        buckets: std::collections::BTreeMap::new(),
    };
    gen.complete_next();
    let mut reps = gen.reps;
    reps.sort_by(|a, b| a.edges().cmp(b.edges()));
    reps
}

struct Generator {
    n: usize,
    adj: Vec<Vec<usize>>,
    deg: Vec<u8>,
    pairs: Vec<(usize, usize)>,
    reps: Vec<Graph>,
    buckets: std::collections::BTreeMap<Vec<Vec<u16>>, Vec<usize>>,
}

impl Generator {
    fn complete_next(&mut self) {
        let Some(u) = (0..self.n).find(|&v| self.deg[v] < 3) else {
            self.emit();
            return;
        };
        let need = (3 - self.deg[u]) as usize;
        let candidates: Vec<usize> = if u == 0 {
            vec![1, 2, 3]
        } else {
            ((u + 1)..self.n)
                .filter(|&v| self.deg[v] < 3 && !self.adj[u].contains(&v))
                .collect()
        };
        if candidates.len() < need {
            return;
        }
        let mut pick = vec![0usize; need];
        self.choose(u, &candidates, need, 0, 0, &mut pick);
    }

    fn choose(
        &mut self,
        u: usize,
        candidates: &[usize],
        need: usize,
        depth: usize,
        start: usize,
        pick: &mut [usize],
    ) {
        if depth == need {
            let mut chosen = [0usize; 3];
            chosen[..need].copy_from_slice(pick);
            let chosen = &chosen[..need];
            for &v in chosen {
                self.adj[u].push(v);
                self.adj[v].push(u);
                self.deg[u] += 1;
                self.deg[v] += 1;
                self.pairs.push((u, v));
            }
            self.complete_next();
            for &v in &chosen {
                self.adj[u].pop();
                self.adj[v].pop();
                self.deg[u] -= 1;
                self.deg[v] -= 1;
                self.pairs.pop();
            }
            return;
        }
        for i in start..candidates.len() {
            if candidates.len() - i < need - depth {
                break;
            }
            pick[depth] = candidates[i];
            self.choose(u, candidates, need, depth + 1, i + 1, pick);
        }
    }

    fn emit(&mut self) {
        let g = Graph::build(self.n, &self.pairs).expect("generator keeps the graph simple");
        if !g.is_connected() {
            return;
        }
        let key = invariant_profile(&g);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| are_isomorphic(&self.reps[i], &g)) {
            return;
        }
        bucket.push(self.reps.len());
        self.reps.push(g);
    }
}

/// Isomorphism-invariant vertex profiles: per vertex, the histogram of BFS
/// distances to all vertices plus the number of triangles through it, the
/// whole list sorted. Cheap and sharp enough to bucket cubic graphs before
/// exact testing.
fn invariant_profile(g: &Graph) -> Vec<Vec<u16>> {
    let n = g.n();
    let mut tri_at = vec![0u16; n];
    for (t, _) in g.triangles() {
        for v in t {
            tri_at[v] += 1;
        }
    }
    let mut profiles: Vec<Vec<u16>> = (0..n)
        .map(|s| {
            let mut dist = vec![u16::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if dist[w] == u16::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            let mut hist = vec![0u16; n + 1];
            for &d in &dist {
                let slot = if d == u16::MAX { n } else { d as usize };
                hist[slot] += 1;
            }
            hist.push(tri_at[s]);
            hist
        })
        .collect();
    profiles.sort_unstable();
    profiles
}

/// Exact isomorphism test by backtracking over vertex images, mapping `a`'s
/// vertices in BFS order so every new vertex has an already-mapped neighbor.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }

    // BFS vertex order over a (covering all components).
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in a.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_mapping(a, b, &order, 0, &mut image, &mut used)
}

fn extend_mapping(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    idx: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    'candidates: for t in 0..b.n() {
        if used[t] || a.degree(v) != b.degree(t) {
            continue;
        }
        for &w in a.neighbors(v) {
            if image[w] != usize::MAX && !b.has_edge(t, image[w]) {
                continue 'candidates;
            }
        }
        // Also reject extra adjacencies to already-mapped vertices.
        let mapped_neighbors = a
            .neighbors(v)
            .iter()
            .filter(|&&w| image[w] != usize::MAX)
            .count();
        let image_neighbors = b.neighbors(t).iter().filter(|&&w| used[w]).count();
        if mapped_neighbors != image_neighbors {
            continue;
        }
        image[v] = t;
        used[t] = true;
        if extend_mapping(a, b, order, idx + 1, image, used) {
            return true;
        }
        image[v] = usize::MAX;
        used[t] = false;
    }
    false
}
