//! Shared corpus builders and independent oracles for the integration and
//! acceptance suites. Everything here stays deliberately separate from the
//! library's own algorithms so it can serve as ground truth.
#![allow(dead_code)] // each test binary uses its own subset

use decomp_core::{Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive maximum-matching size: every vertex is either skipped or
/// matched to a higher unused neighbor.
pub fn brute_max_matching(g: &Graph) -> usize {
    fn rec(g: &Graph, v: usize, used: &mut [bool]) -> usize {
        if v == g.n() {
            return 0;
        }
        if used[v] {
            return rec(g, v + 1, used);
        }
        let mut best = rec(g, v + 1, used);
        used[v] = true;
        for &w in g.neighbors(v) {
            if w > v && !used[w] {
                used[w] = true;
                best = best.max(1 + rec(g, v + 1, used));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    rec(g, 0, &mut vec![false; g.n()])
}

/// Random simple graph on `n` vertices with edge probability ~1/2.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                pairs.push((u, v));
            }
        }
    }
    Graph::build(n, &pairs).expect("random pairs are simple")
}

/// Glues two cubic graphs into one bridged cubic graph: subdivide one edge
/// in each and join the two subdivision vertices.
pub fn glue_bridge(g1: &Graph, e1: Edge, g2: &Graph, e2: Edge) -> Graph {
    let shift = g1.n();
    let w1 = g1.n() + g2.n();
    let w2 = w1 + 1;
    let mut pairs: Vec<(usize, usize)> = g1
        .edges()
        .iter()
        .filter(|&&e| e != e1)
        .map(Edge::endpoints)
        .collect();
    pairs.extend(
        g2.edges()
            .iter()
            .filter(|&&e| e != e2)
            .map(|e| (e.u() + shift, e.v() + shift)),
    );
    pairs.extend([
        (e1.u(), w1),
        (e1.v(), w1),
        (e2.u() + shift, w2),
        (e2.v() + shift, w2),
        (w1, w2),
    ]);
    let g = Graph::build(w2 + 1, &pairs).expect("gluing preserves simplicity");
    assert!(g.is_cubic() && g.is_connected());
    g
}

/// Random connected graph with every degree 2 or 3, by the pairing model
/// over a random degree sequence. Returns `None` if no simple connected
/// outcome shows up within the attempt cap.
pub fn random_degree23(n: usize, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..300 {
        let mut degrees: Vec<usize> = (0..n).map(|_| if rng.gen_bool(0.5) { 2 } else { 3 }).collect();
        if degrees.iter().sum::<usize>() % 2 == 1 {
            let flip = rng.gen_range(0..n);
            degrees[flip] = 5 - degrees[flip];
        }
        let mut stubs: Vec<usize> = degrees
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
            .collect();
        use rand::seq::SliceRandom;
        stubs.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::build(n, &pairs) {
            if g.is_connected() {
                return Some(g);
            }
        }
    }
    None
}
