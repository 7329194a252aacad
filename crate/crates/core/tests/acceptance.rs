//! Acceptance suite: one check per claim the library stands on, each
//! reported as a single PASS/FAIL line. Run with
//! `cargo test -p decomp-core --test acceptance`.

mod common;

use decomp_core::exact::{enumerate_covers, solve, EnumerateOutcome, SolveOutcome, SolverConfig};
use decomp_core::poly::{decide_claw, decide_family, decide_k3p4};
use decomp_core::reduce::{
    add_net, attach_cofish_all_marked, brute_sat, lift_over_cofish, lift_over_net,
    reduce_nae, reduce_one_in_three, standalone_variable_tree, witness_from_assignment,
    CnfFormula, GadgetMap, SatMode,
};
use decomp_core::{
    enumerate::connected_cubic_graphs, matching::maximum_matching,
    matching::perfect_matching, verify, verify_marked, verify_with, AllowedSet, Decomposition,
    Edge, Graph, MarkedInstance, NamedGraph, Part,
};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type CriterionFn = fn() -> Result<String, String>;

fn main() {
    let criteria: Vec<(&str, CriterionFn)> = vec![
        ("01 tractable families agree with exact solver", c01_oracle_agreement),
        ("02 claw decomposability is bipartiteness", c02_claw_iff_bipartite),
        ("03 triangle+path certificates are matchings", c03_k3p4_certificates),
        ("04 prism and K4 anchors", c04_prism_k4_anchors),
        ("05 bridges are path middle edges", c05_bridges_are_middles),
        ("06 degree-2 count divisible by three", c06_degree_two_mod_three),
        ("07 one-in-three reduction end to end", c07_one_in_three_end_to_end),
        ("08 two claws per clause in every solution", c08_two_claws_per_clause),
        ("09 net and co-fish stages preserve decisions", c09_stage_equivalences),
        ("10 variable-tree rigidity and NAE soundness", c10_tree_rigidity),
        ("11 NAE witness and solver attempt", c11_nae_witness),
        ("12 matching matches brute force", c12_matching_oracle),
    ];

    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run);
        let elapsed = start.elapsed();
        match outcome {
            Ok(Ok(note)) => {
                println!("criterion {name}: PASS ({elapsed:.2?}) {note}");
            }
            Ok(Err(msg)) => {
                failures += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
            Err(panic) => {
                failures += 1;
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

/// The five tractable families, in the order they are tabulated.
fn tractable_families() -> Vec<AllowedSet> {
    ["k13", "k3", "p4", "k13k3", "k3p4"]
        .iter()
        .map(|c| AllowedSet::parse_code(c).unwrap())
        .collect()
}

/// Every connected cubic graph on 4, 6, 8 and 10 vertices.
fn small_cubic_corpus() -> Vec<Graph> {
    let mut corpus = Vec::new();
    for (n, expected) in [(4usize, 1usize), (6, 2), (8, 5), (10, 19)] {
        let graphs = connected_cubic_graphs(n);
        assert_eq!(
            graphs.len(),
            expected,
            "expected {expected} connected cubic graphs on {n} vertices"
        );
        corpus.extend(graphs);
    }
    corpus
}

fn c01_oracle_agreement() -> Result<String, String> {
    let corpus = small_cubic_corpus();
    let mut checked = 0;
    for g in &corpus {
        for fam in tractable_families() {
            let poly = decide_family(g, fam, &cfg())
                .map_err(|e| format!("decider error on {fam}: {e}"))?;
            let exact = solve(g, fam, None, &cfg());
            if poly.is_found() != exact.is_found() {
                return Err(format!(
                    "disagreement on n={} {fam}: poly={} exact={}",
                    g.n(),
                    poly.is_found(),
                    exact.is_found()
                ));
            }
            if let SolveOutcome::Found(d) = &poly {
                assert!(verify(g, d, fam).valid);
            }
            if let SolveOutcome::Found(d) = &exact {
                assert!(verify(g, d, fam).valid);
            }
            checked += 1;
        }
    }
    Ok(format!("{} graphs x 5 families, {checked} agreements", corpus.len()))
}

fn c02_claw_iff_bipartite() -> Result<String, String> {
    let mut graphs = small_cubic_corpus();
    for seed in 0..100u64 {
        graphs.push(Graph::random_cubic(12, seed).unwrap());
        graphs.push(Graph::random_cubic(14, seed).unwrap());
    }
    let mut bipartite_count = 0;
    for g in &graphs {
        let claw = decide_claw(g).unwrap();
        let bipartite = g.bipartition().is_some();
        assert_eq!(claw.is_some(), bipartite);
        if bipartite {
            bipartite_count += 1;
            assert!(verify(g, &claw.unwrap(), AllowedSet::parse_code("k13").unwrap()).valid);
        }
    }
    Ok(format!(
        "{} graphs, {bipartite_count} bipartite instances",
        graphs.len()
    ))
}

fn c03_k3p4_certificates() -> Result<String, String> {
    let fam = AllowedSet::parse_code("k3p4").unwrap();
    let corpus = small_cubic_corpus();
    for g in &corpus {
        let decision = decide_k3p4(g).unwrap();
        assert_eq!(decision.is_some(), perfect_matching(g).is_some());
        if let Some(d) = decision {
            let report = verify(g, &d, fam);
            assert!(report.valid);
            assert_eq!(report.stats.triangles, 0);
            assert_eq!(report.stats.paths, g.n() / 2);
            // No vertex is the endpoint of three path parts.
            assert_eq!(report.stats.path_incidence[3], 0);
            let middles: Vec<Edge> = d.parts.iter().filter_map(|p| p.middle_edge()).collect();
            let mut seen = vec![false; g.n()];
            for e in &middles {
                assert!(!seen[e.u()] && !seen[e.v()], "middle edges overlap");
                seen[e.u()] = true;
                seen[e.v()] = true;
                assert!(g.edge_index(*e).is_some());
            }
            assert!(seen.iter().all(|&s| s), "middle edges are not perfect");
        }
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn c04_prism_k4_anchors() -> Result<String, String> {
    let fam = AllowedSet::parse_code("k13k3").unwrap();
    let prism = Graph::named(NamedGraph::Prism);
    assert_eq!(
        decide_family(&prism, fam, &cfg()).unwrap(),
        SolveOutcome::NoDecomposition
    );
    assert_eq!(solve(&prism, fam, None, &cfg()), SolveOutcome::NoDecomposition);

    let k4 = Graph::named(NamedGraph::K4);
    let d = decide_family(&k4, fam, &cfg())
        .unwrap()
        .found()
        .cloned()
        .expect("K4 decomposes into a triangle and a claw");
    let report = verify(&k4, &d, fam);
    assert!(report.valid);
    assert_eq!((report.stats.triangles, report.stats.claws), (1, 1));
    Ok("prism NO, K4 YES with triangle+claw".into())
}

fn c05_bridges_are_middles() -> Result<String, String> {
    let sizes = [4usize, 6, 8];
    let mut found = 0;
    let mut checked_bridges = 0;
    for i in 0..100u64 {
        let n1 = sizes[(i % 3) as usize];
        let n2 = sizes[((i / 3) % 3) as usize];
        let g1 = Graph::random_cubic(n1, 2 * i).unwrap();
        let g2 = Graph::random_cubic(n2, 2 * i + 1).unwrap();
        let e1 = g1.edges()[(i as usize) % g1.edge_count()];
        let e2 = g2.edges()[(i as usize) % g2.edge_count()];
        let glued = common::glue_bridge(&g1, e1, &g2, e2);
        let bridges = glued.bridges();
        assert!(!bridges.is_empty());
        match solve(&glued, AllowedSet::full(), None, &cfg()) {
            SolveOutcome::Found(d) => {
                found += 1;
                let middles: BTreeSet<Edge> =
                    d.parts.iter().filter_map(|p| p.middle_edge()).collect();
                for b in &bridges {
                    checked_bridges += 1;
                    assert!(
                        middles.contains(b),
                        "bridge {b} is not a path middle edge (n={})",
                        glued.n()
                    );
                }
                assert!(verify(&glued, &d, AllowedSet::full()).valid);
            }
            SolveOutcome::NoDecomposition => {}
            SolveOutcome::BudgetExceeded => return Err("budget exceeded on glued graph".into()),
        }
    }
    assert!(found > 0, "corpus produced no decomposable instance");
    Ok(format!("100 glued graphs, {found} decomposable, {checked_bridges} bridges checked"))
}

fn c06_degree_two_mod_three() -> Result<String, String> {
    let mut produced = 0;
    let mut found = 0;
    let mut seed = 0u64;
    while produced < 200 {
        seed += 1;
        let n = 6 + (seed % 11) as usize; // 6..=16 vertices, at most 24 edges
        let Some(g) = common::random_degree23(n, seed) else {
            continue;
        };
        if g.edge_count() > 24 {
            continue;
        }
        produced += 1;
        if let SolveOutcome::Found(d) = solve(&g, AllowedSet::full(), None, &cfg()) {
            found += 1;
            assert!(verify(&g, &d, AllowedSet::full()).valid);
            assert_eq!(
                g.degree_profile().v2() % 3,
                0,
                "decomposable instance with v2 = {}",
                g.degree_profile().v2()
            );
        }
    }
    assert!(found > 0);
    Ok(format!("200 degree-2,3 graphs, {found} decomposable"))
}

/// All distinct clause orderings of the unique m = n = 4 cubic monotone
/// formula (each of the four 3-subsets of the variables exactly once).
fn m4_formula_orderings() -> Vec<CnfFormula> {
    let base: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut orders = Vec::new();
    let mut idx = [0usize, 1, 2, 3];
    // Heap's algorithm over the clause order.
    fn heap(k: usize, idx: &mut [usize; 4], out: &mut Vec<[usize; 4]>) {
        if k == 1 {
            out.push(*idx);
            return;
        }
        for i in 0..k {
            heap(k - 1, idx, out);
            if k % 2 == 0 {
                idx.swap(i, k - 1);
            } else {
                idx.swap(0, k - 1);
            }
        }
    }
    let mut perms = Vec::new();
    heap(4, &mut idx, &mut perms);
    for p in perms.into_iter().take(12) {
        let clauses: Vec<[usize; 3]> = p.iter().map(|&i| base[i]).collect();
        orders.push(CnfFormula::new(4, clauses).unwrap());
    }
    orders
}

fn c07_one_in_three_end_to_end() -> Result<String, String> {
    // m = n = 3: the only clause over three variables is (x1, x2, x3), so
    // the occurrence rule forces three copies of it.
    let mut formulas = vec![CnfFormula::new(3, vec![[0, 1, 2]; 3]).unwrap()];
    let m4 = m4_formula_orderings();
    assert!(m4.len() >= 10);
    formulas.extend(m4);

    let mut sat_count = 0;
    for phi in &formulas {
        let satisfiable = brute_sat(phi, SatMode::OneInThree).is_some();
        let (inst, _) = reduce_one_in_three(phi).unwrap();
        let outcome = solve(&inst.graph, AllowedSet::full(), Some(&inst.marks), &cfg());
        match (&outcome, satisfiable) {
            (SolveOutcome::Found(d), true) => {
                sat_count += 1;
                assert!(verify_marked(&inst, d).valid);
            }
            (SolveOutcome::NoDecomposition, false) => {}
            other => {
                return Err(format!(
                    "reduction equivalence broken: satisfiable={satisfiable}, solver={:?}",
                    other.0
                ))
            }
        }
        // The witness route must agree on satisfiable formulas.
        if let Some(a) = brute_sat(phi, SatMode::OneInThree) {
            let w = witness_from_assignment(phi, &a, SatMode::OneInThree).unwrap();
            assert!(verify_marked(&inst, &w).valid);
        }
    }
    Ok(format!(
        "{} formulas ({} satisfiable)",
        formulas.len(),
        sat_count
    ))
}

fn c08_two_claws_per_clause() -> Result<String, String> {
    let phi = CnfFormula::new(3, vec![[0, 1, 2]; 3]).unwrap();
    let (inst, map) = reduce_one_in_three(&phi).unwrap();
    let GadgetMap::OneInThree { variables, .. } = &map.gadgets else {
        unreachable!()
    };
    let SolveOutcome::Found(d) = solve(&inst.graph, AllowedSet::full(), Some(&inst.marks), &cfg())
    else {
        return Err("satisfiable instance did not solve".into());
    };
    let appears_as_claw = |var: usize| -> bool {
        let gadget = &variables[var];
        d.parts
            .iter()
            .any(|p| *p == Part::claw(gadget.center, gadget.leaves).unwrap())
    };
    for clause in phi.clauses() {
        let claws = clause.iter().filter(|&&v| appears_as_claw(v)).count();
        assert_eq!(claws, 2, "clause {clause:?} has {claws} variable claws");
    }
    Ok(format!("{} clauses checked", phi.clauses().len()))
}

fn c09_stage_equivalences() -> Result<String, String> {
    // Net stage: subdivide three disjoint edges of a small cubic graph to
    // make three degree-2 anchors, under several mark patterns.
    let mut net_instances = Vec::new();
    for name in [NamedGraph::K4, NamedGraph::K33, NamedGraph::Prism, NamedGraph::Cube] {
        let base = Graph::named(name);
        // Subdividing any three distinct edges leaves three degree-2
        // vertices to anchor a net on.
        let chosen: Vec<Edge> = base.edges().iter().copied().take(3).collect();
        let mut g = base.clone();
        for e in chosen {
            g = g.subdivide(e).unwrap().0;
        }
        for marks_count in 0..3usize {
            let marks: BTreeSet<Edge> =
                g.edges().iter().copied().take(marks_count).collect();
            net_instances.push(MarkedInstance::new(g.clone(), marks).unwrap());
        }
    }
    assert!(net_instances.len() >= 10);
    let mut net_found = 0;
    for inst in &net_instances {
        assert!(inst.graph.edge_count() + 6 <= 30);
        let anchors: Vec<usize> = (0..inst.graph.n())
            .filter(|&v| inst.graph.degree(v) == 2)
            .collect();
        let after = add_net(inst, anchors[0], anchors[1], anchors[2]).unwrap();
        let before_outcome = solve(&inst.graph, AllowedSet::full(), Some(&inst.marks), &cfg());
        let after_outcome = solve(&after.graph, AllowedSet::full(), Some(&after.marks), &cfg());
        assert_eq!(before_outcome.is_found(), after_outcome.is_found());
        if let SolveOutcome::Found(d) = before_outcome {
            net_found += 1;
            let lifted = lift_over_net(&d, inst, &after).unwrap();
            assert!(verify_marked(&after, &lifted).valid);
        }
    }

    // Co-fish stage on cubic instances with at most 12 edges and 2 marks.
    let claw_path = AllowedSet::parse_code("k13p4").unwrap();
    let e = Edge::new;
    let mut cofish_instances: Vec<MarkedInstance> = Vec::new();
    let k4 = Graph::named(NamedGraph::K4);
    let k33 = Graph::named(NamedGraph::K33);
    let prism = Graph::named(NamedGraph::Prism);
    let cube = Graph::named(NamedGraph::Cube);
    for (g, marks) in [
        (&k4, vec![e(0, 1)]),
        (&k4, vec![e(1, 2)]),
        (&k4, vec![e(1, 2), e(1, 3)]),
        (&k4, vec![e(0, 1), e(2, 3)]),
        (&k33, vec![e(0, 3)]),
        (&k33, vec![e(0, 3), e(1, 4)]),
        (&prism, vec![e(0, 2)]),
        (&prism, vec![e(0, 3)]),
        (&prism, vec![e(0, 2), e(1, 3)]),
        (&cube, vec![e(0, 1)]),
        (&cube, vec![e(0, 1), e(6, 7)]),
    ] {
        cofish_instances
            .push(MarkedInstance::new(g.clone(), marks.into_iter().collect()).unwrap());
    }
    assert!(cofish_instances.len() >= 10);
    let mut cofish_found = 0;
    for inst in &cofish_instances {
        let marked_outcome = solve(&inst.graph, AllowedSet::full(), Some(&inst.marks), &cfg());
        let (final_graph, records) = attach_cofish_all_marked(inst).unwrap();
        let unmarked_outcome = solve(&final_graph, claw_path, None, &cfg());
        assert_eq!(
            marked_outcome.is_found(),
            unmarked_outcome.is_found(),
            "co-fish equivalence broken for marks {:?}",
            inst.marks
        );
        if let SolveOutcome::Found(d) = marked_outcome {
            cofish_found += 1;
            let lifted = lift_over_cofish(&d, inst, &final_graph, &records).unwrap();
            assert!(verify(&final_graph, &lifted, claw_path).valid);
        }
    }

    // Triangle-free instances additionally satisfy the full-family variant.
    let mut a1_checked = 0;
    for (g, marks) in [
        (&k33, vec![e(0, 3)]),
        (&k33, vec![e(0, 3), e(1, 4)]),
        (&cube, vec![e(0, 1)]),
        (&cube, vec![e(0, 1), e(6, 7)]),
    ] {
        let inst = MarkedInstance::new(g.clone(), marks.into_iter().collect()).unwrap();
        assert!(inst.graph.triangles().is_empty());
        let marked_outcome = solve(&inst.graph, claw_path, Some(&inst.marks), &cfg());
        let (final_graph, _) = attach_cofish_all_marked(&inst).unwrap();
        let full_outcome = solve(&final_graph, AllowedSet::full(), None, &cfg());
        assert_eq!(marked_outcome.is_found(), full_outcome.is_found());
        a1_checked += 1;
    }

    Ok(format!(
        "{} net instances ({net_found} lifted), {} co-fish instances ({cofish_found} lifted), {a1_checked} triangle-free",
        net_instances.len(),
        cofish_instances.len()
    ))
}

fn c10_tree_rigidity() -> Result<String, String> {
    let claw_path = AllowedSet::parse_code("k13p4").unwrap();
    for k in [2usize, 3] {
        let (tree, marks, internal) = standalone_variable_tree(k);
        match enumerate_covers(&tree, claw_path, Some(&marks), &internal, 100, &cfg()) {
            EnumerateOutcome::Complete(covers) => {
                assert_eq!(
                    covers.len(),
                    2,
                    "k={k} tree internal edges admit {} covers",
                    covers.len()
                );
                let mut sizes: Vec<usize> = covers.iter().map(Decomposition::len).collect();
                sizes.sort_unstable();
                // k-1 claws at A-vertices, or 2k-1 claws at B-vertices.
                assert_eq!(sizes, vec![k - 1, 2 * k - 1]);
            }
            other => return Err(format!("k={k}: enumeration did not complete: {other:?}")),
        }
    }

    // Random valid NAE formulas reduce to cubic triangle-free instances.
    let mut produced = 0;
    let mut seed = 0u64;
    while produced < 5 {
        seed += 1;
        let Some(phi) = random_nae_formula(seed) else {
            continue;
        };
        produced += 1;
        let (inst, _) = reduce_nae(&phi).unwrap();
        assert!(inst.graph.is_cubic(), "seed {seed}");
        assert!(inst.graph.triangles().is_empty(), "seed {seed}");
    }
    Ok("k=2 and k=3 trees have exactly 2 covers; 5 random reductions cubic and K3-free".into())
}

/// Random monotone formula where every variable occurs at least twice.
fn random_nae_formula(seed: u64) -> Option<CnfFormula> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(3..=5);
    let n = rng.gen_range(3..=5);
    let mut clauses = Vec::with_capacity(n);
    for _ in 0..n {
        let mut vars: Vec<usize> = (0..m).collect();
        for i in 0..3 {
            let j = rng.gen_range(i..m);
            vars.swap(i, j);
        }
        clauses.push([vars[0], vars[1], vars[2]]);
    }
    let phi = CnfFormula::new(m, clauses).ok()?;
    phi.occurrence_counts()
        .iter()
        .all(|&c| c >= 2)
        .then_some(phi)
}

fn c11_nae_witness() -> Result<String, String> {
    let phi = CnfFormula::new(3, vec![[0, 1, 2]; 2]).unwrap();
    let (inst, _) = reduce_nae(&phi).unwrap();
    assert_eq!(inst.graph.edge_count(), 39);
    let a = brute_sat(&phi, SatMode::NotAllEqual).expect("NAE satisfiable");
    let w = witness_from_assignment(&phi, &a, SatMode::NotAllEqual).unwrap();
    assert!(verify_marked(&inst, &w).valid);
    let claw_path = AllowedSet::parse_code("k13p4").unwrap();
    assert!(verify_with(&inst.graph, &w, claw_path, Some(&inst.marks)).valid);

    // Full solver equivalence is attempted under a ten-minute budget; an
    // exceeded budget reports UNKNOWN without failing.
    let budgeted = SolverConfig {
        time_budget: Duration::from_secs(600),
        ..SolverConfig::default()
    };
    let note = match solve(&inst.graph, claw_path, Some(&inst.marks), &budgeted) {
        SolveOutcome::Found(d) => {
            assert!(verify_with(&inst.graph, &d, claw_path, Some(&inst.marks)).valid);
            "solver agrees (found)".to_string()
        }
        SolveOutcome::BudgetExceeded => "solver attempt UNKNOWN (budget exceeded)".to_string(),
        SolveOutcome::NoDecomposition => {
            return Err("solver refuted a satisfiable NAE instance".into())
        }
    };
    Ok(format!("witness valid on 39 edges; {note}"))
}

fn c12_matching_oracle() -> Result<String, String> {
    for seed in 0..100u64 {
        let n = 4 + (seed % 9) as usize; // 4..=12 vertices
        let g = common::random_graph(n, seed);
        let blossom = maximum_matching(&g).len();
        let brute = common::brute_max_matching(&g);
        assert_eq!(blossom, brute, "seed {seed}, n {n}");
    }
    Ok("100 random graphs".into())
}
