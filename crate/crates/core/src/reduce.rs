//! The hardness pipeline: monotone 3-SAT instance model with brute-force
//! oracles, the gadget constructions that turn formulas into marked
//! decomposition instances, net saturation to reach cubic inputs, co-fish
//! attachment to erase marks, and witness construction and lifting across
//! every stage.

use crate::decomp::{verify_marked, Decomposition, MarkedInstance, Part};
use crate::graph::{Edge, Graph, NamedGraph};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("variable x{} occurs {count} times ({expected})", var + 1)]
    OccurrenceViolation {
        var: usize,
        count: usize,
        expected: &'static str,
    },
    #[error("vertex {0} does not have degree 2")]
    NotDegreeTwo(usize),
    #[error("instance graph is not cubic")]
    NotCubic,
    #[error("graph has a vertex of degree outside 2..=3")]
    NotDegreeTwoThree,
    #[error("assignment does not satisfy the formula under the requested mode")]
    NotSatisfying,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no rewrite case matched: {0}")]
    InternalCaseMiss(String),
}

/// Which clause predicate a formula is judged under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatMode {
    /// Exactly one literal true per clause.
    OneInThree,
    /// One or two literals true per clause (never all, never none).
    NotAllEqual,
}

/// A monotone formula: clauses of three distinct positive variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        for c in &clauses {
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(ReductionError::InvalidFormula(format!(
                    "clause ({}, {}, {}) must name three distinct variables",
                    c[0] + 1,
                    c[1] + 1,
                    c[2] + 1
                )));
            }
            if let Some(&v) = c.iter().find(|&&v| v >= vars) {
                return Err(ReductionError::InvalidFormula(format!(
                    "variable x{} out of range (m = {})",
                    v + 1,
                    vars
                )));
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.vars];
        for c in &self.clauses {
            for &v in c {
                counts[v] += 1;
            }
        }
        counts
    }
}

/// A truth value per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn satisfies(&self, phi: &CnfFormula, mode: SatMode) -> bool {
        self.0.len() == phi.vars()
            && phi.clauses().iter().all(|c| {
                let t = c.iter().filter(|&&v| self.0[v]).count();
                match mode {
                    SatMode::OneInThree => t == 1,
                    SatMode::NotAllEqual => t == 1 || t == 2,
                }
            })
    }
}

/// Lexicographically first satisfying assignment by exhaustive scan, with
/// false ordered before true and x1 most significant.
pub fn brute_sat(phi: &CnfFormula, mode: SatMode) -> Option<Assignment> {
    let m = phi.vars();
    assert!(m <= 24, "brute-force oracle is sized for desk-scale formulas");
    (0u64..(1u64 << m))
        .map(|bits| Assignment((0..m).map(|i| bits >> (m - 1 - i) & 1 == 1).collect()))
        .find(|a| a.satisfies(phi, mode))
}

/// Occurrence-count preconditions of the two reductions: one-in-three needs
/// every variable in exactly three clauses; not-all-equal needs at least
/// two. Planarity of the one-in-three source is not checked: the
/// construction is correct for any cubic monotone formula.
pub fn validate_for_reduction(phi: &CnfFormula, mode: SatMode) -> Result<(), ReductionError> {
    for (var, count) in phi.occurrence_counts().into_iter().enumerate() {
        let ok = match mode {
            SatMode::OneInThree => count == 3,
            SatMode::NotAllEqual => count >= 2,
        };
        if !ok {
            return Err(ReductionError::OccurrenceViolation {
                var,
                count,
                expected: match mode {
                    SatMode::OneInThree => "exactly 3 required",
                    SatMode::NotAllEqual => "at least 2 required",
                },
            });
        }
    }
    Ok(())
}

/// Pipeline stage a reduction artifact belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Marked instance straight out of the formula gadgets.
    Marked,
    /// Net-saturated cubic marked instance.
    CubicMarked,
    /// Co-fishes attached; plain graph, no marks.
    Final,
}

/// Variable gadget of the one-in-three reduction: a claw whose three marked
/// edges end in one leaf per occurrence, consumed in clause order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClawGadget {
    pub center: usize,
    pub leaves: [usize; 3],
}

/// Clause gadget of the one-in-three reduction: a 5-cycle `a1..a5` in cycle
/// order. The identified variable leaves sit at a1, a2 (adjacent) and a4
/// (isolated); a3 and a5 are fresh degree-2 vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleGadget {
    pub cycle: [usize; 5],
}

/// Variable gadget of the not-all-equal reduction: a caterpillar tree whose
/// 3k leaves are identified with clause-path vertices, so its border edges
/// run from B-vertices straight to the paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGadget {
    pub a_vertices: Vec<usize>,
    pub b_vertices: Vec<usize>,
    /// (B-vertex, clause-path vertex) per leaf slot, three consecutive slots
    /// per occurrence in clause order.
    pub borders: Vec<(usize, usize)>,
}

/// Clause gadget of the not-all-equal reduction: a path `v1..v7` with marked
/// edges {v2,v3} and {v5,v6}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathGadget {
    pub vertices: [usize; 7],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetMap {
    OneInThree {
        variables: Vec<ClawGadget>,
        clauses: Vec<CycleGadget>,
    },
    Nae {
        variables: Vec<TreeGadget>,
        clauses: Vec<PathGadget>,
    },
}

/// One net added during saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetRecord {
    pub anchors: [usize; 3],
    pub triangle: [usize; 3],
}

/// One co-fish attached over a marked edge: `hub` is the subdivision vertex
/// (identified with the co-fish's degree-1 vertex), `interior` its vertices
/// a..e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofishRecord {
    pub marked_edge: Edge,
    pub hub: usize,
    pub interior: [usize; 5],
}

/// Where every gadget element of a reduction landed in the output graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    pub stage: Stage,
    pub gadgets: GadgetMap,
    pub nets: Vec<NetRecord>,
    pub cofish: Vec<CofishRecord>,
}

/// Positions (1-based path vertices) each clause literal joins to in the
/// not-all-equal reduction: the first literal's tree reaches v1, v3 and v7,
/// the second v1, v5 and v7, the third v2, v4 and v6.
const NAE_ROLE_POSITIONS: [[usize; 3]; 3] = [[1, 3, 7], [1, 5, 7], [2, 4, 6]];

/// Builds the marked degree-2,3 instance of the one-in-three reduction: one
/// all-marked claw per variable, one 5-cycle per clause with three variable
/// leaves identified into it (two adjacent, one isolated).
pub fn reduce_one_in_three(
    phi: &CnfFormula,
) -> Result<(MarkedInstance, ReductionMap), ReductionError> {
    validate_for_reduction(phi, SatMode::OneInThree)?;
    let m = phi.vars();
    let n_clauses = phi.clauses().len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut marks = BTreeSet::new();

    let variables: Vec<ClawGadget> = (0..m)
        .map(|i| {
            let center = 4 * i;
            let leaves = [4 * i + 1, 4 * i + 2, 4 * i + 3];
            for &leaf in &leaves {
                pairs.push((center, leaf));
                marks.insert(Edge::new(center, leaf));
            }
            ClawGadget { center, leaves }
        })
        .collect();

    let mut next_leaf = vec![0usize; m];
    let mut consume = |var: usize| -> usize {
        let leaf = variables[var].leaves[next_leaf[var]];
        next_leaf[var] += 1;
        leaf
    };
    let clauses: Vec<CycleGadget> = phi
        .clauses()
        .iter()
        .enumerate()
        .map(|(j, lits)| {
            // The first literal takes the isolated position a4, the second
            // and third the adjacent pair a1, a2.
            let a4 = consume(lits[0]);
            let a1 = consume(lits[1]);
            let a2 = consume(lits[2]);
            let a3 = 4 * m + 2 * j;
            let a5 = 4 * m + 2 * j + 1;
            let cycle = [a1, a2, a3, a4, a5];
            for k in 0..5 {
                pairs.push((cycle[k], cycle[(k + 1) % 5]));
            }
            CycleGadget { cycle }
        })
        .collect();

    let graph = Graph::build(4 * m + 2 * n_clauses, &pairs)
        .map_err(|e| ReductionError::InvalidInput(format!("gadget assembly failed: {e}")))?;
    let instance = MarkedInstance::new(graph, marks).expect("marks come from the edge list");
    let map = ReductionMap {
        stage: Stage::Marked,
        gadgets: GadgetMap::OneInThree { variables, clauses },
        nets: Vec::new(),
        cofish: Vec::new(),
    };
    Ok((instance, map))
}

/// Attaches a net by its leaves to three degree-2 vertices, marking the
/// pendant edges. The three anchors end up with degree 3.
pub fn add_net(
    inst: &MarkedInstance,
    t1: usize,
    t2: usize,
    t3: usize,
) -> Result<MarkedInstance, ReductionError> {
    let g = &inst.graph;
    let anchors = [t1, t2, t3];
    if t1 == t2 || t1 == t3 || t2 == t3 {
        return Err(ReductionError::InvalidInput(
            "net anchors must be distinct".into(),
        ));
    }
    for &t in &anchors {
        if t >= g.n() || g.degree(t) != 2 {
            return Err(ReductionError::NotDegreeTwo(t));
        }
    }
    let base = g.n();
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(Edge::endpoints).collect();
    pairs.extend([(base, base + 1), (base, base + 2), (base + 1, base + 2)]);
    let mut marks = inst.marks.clone();
    for (k, &t) in anchors.iter().enumerate() {
        pairs.push((t, base + k));
        marks.insert(Edge::new(t, base + k));
    }
    let graph = Graph::build(base + 3, &pairs).expect("net attachment preserves simplicity");
    Ok(MarkedInstance::new(graph, marks).expect("marks are edges"))
}

/// What net saturation produced.
#[derive(Clone, Debug)]
pub enum SaturationOutcome {
    /// All vertices now have degree 3.
    Cubic {
        instance: MarkedInstance,
        nets: Vec<NetRecord>,
    },
    /// One or two degree-2 vertices remain; the degree-2 count of a
    /// decomposable degree-2,3 graph is divisible by three, so the instance
    /// is a no-instance outright.
    TriviallyNo { degree_two_left: usize },
}

/// Repeatedly adds a net over the three lowest-indexed degree-2 vertices
/// until none remain.
pub fn saturate_nets(inst: &MarkedInstance) -> Result<SaturationOutcome, ReductionError> {
    if (0..inst.graph.n()).any(|v| !(2..=3).contains(&inst.graph.degree(v))) {
        return Err(ReductionError::NotDegreeTwoThree);
    }
    let mut current = inst.clone();
    let mut nets = Vec::new();
    loop {
        let degree_two: Vec<usize> = (0..current.graph.n())
            .filter(|&v| current.graph.degree(v) == 2)
            .collect();
        match degree_two.len() {
            0 => {
                return Ok(SaturationOutcome::Cubic {
                    instance: current,
                    nets,
                })
            }
            1 | 2 => {
                return Ok(SaturationOutcome::TriviallyNo {
                    degree_two_left: degree_two.len(),
                })
            }
            _ => {
                let base = current.graph.n();
                let anchors = [degree_two[0], degree_two[1], degree_two[2]];
                current = add_net(&current, anchors[0], anchors[1], anchors[2])?;
                nets.push(NetRecord {
                    anchors,
                    triangle: [base, base + 1, base + 2],
                });
            }
        }
    }
}

/// Attaches a co-fish to every marked edge of a cubic instance, in canonical
/// edge order. The result is cubic and carries no marks.
pub fn attach_cofish_all_marked(
    inst: &MarkedInstance,
) -> Result<(Graph, Vec<CofishRecord>), ReductionError> {
    if !inst.graph.is_cubic() {
        return Err(ReductionError::NotCubic);
    }
    let cofish = Graph::named(NamedGraph::Cofish);
    let mut g = inst.graph.clone();
    let mut records = Vec::with_capacity(inst.marks.len());
    for &e in &inst.marks {
        let hub = g.n();
        g = g
            .attach_to_edge(&cofish, e, 5)
            .expect("marked edges exist and the anchor is the degree-1 vertex");
        records.push(CofishRecord {
            marked_edge: e,
            hub,
            interior: [hub + 1, hub + 2, hub + 3, hub + 4, hub + 5],
        });
    }
    debug_assert!(g.is_cubic());
    Ok((g, records))
}

/// Builds the cubic, triangle-free marked instance of the not-all-equal
/// reduction: a caterpillar tree per variable (all edges marked) and a
/// marked P7 per clause, with tree leaves identified into the paths.
pub fn reduce_nae(phi: &CnfFormula) -> Result<(MarkedInstance, ReductionMap), ReductionError> {
    validate_for_reduction(phi, SatMode::NotAllEqual)?;
    let occurrences = phi.occurrence_counts();
    debug_assert_eq!(
        occurrences.iter().sum::<usize>(),
        3 * phi.clauses().len(),
        "total occurrences always equal three per clause"
    );

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut marks = BTreeSet::new();

    // Lay out the internal tree vertices variable by variable.
    let mut variables = Vec::with_capacity(phi.vars());
    let mut next_vertex = 0usize;
    // Per variable: the B-vertex of each leaf slot, in slot order.
    let mut slot_parents: Vec<Vec<usize>> = Vec::with_capacity(phi.vars());
    for &k in &occurrences {
        let t = k - 1;
        let a_vertices: Vec<usize> = (0..t).map(|i| next_vertex + i).collect();
        let b_vertices: Vec<usize> = (0..2 * t + 1).map(|j| next_vertex + t + j).collect();
        next_vertex += 3 * t + 1;
        // Internal edges: a_i is adjacent to b_{2i}, b_{2i+1}, b_{2i+2}
        // (0-based), so consecutive A-vertices share every other B.
        for (i, &a) in a_vertices.iter().enumerate() {
            for j in [2 * i, 2 * i + 1, 2 * i + 2] {
                pairs.push((a, b_vertices[j]));
                marks.insert(Edge::new(a, b_vertices[j]));
            }
        }
        // Leaf capacity: the two outermost and the odd (0-based) B-vertices
        // carry two leaves, interior even ones carry one; 3k slots total.
        let mut parents = Vec::with_capacity(3 * k);
        for (j, &b) in b_vertices.iter().enumerate() {
            let capacity = if j == 0 || j == 2 * t || j % 2 == 1 { 2 } else { 1 };
            for _ in 0..capacity {
                parents.push(b);
            }
        }
        debug_assert_eq!(parents.len(), 3 * k);
        slot_parents.push(parents);
        variables.push(TreeGadget {
            a_vertices,
            b_vertices,
            borders: Vec::new(),
        });
    }

    let tree_vertices = next_vertex;
    let mut next_slot = vec![0usize; phi.vars()];
    let clauses: Vec<PathGadget> = phi
        .clauses()
        .iter()
        .enumerate()
        .map(|(j, lits)| {
            let base = tree_vertices + 7 * j;
            let vertices: [usize; 7] = std::array::from_fn(|p| base + p);
            for p in 0..6 {
                pairs.push((vertices[p], vertices[p + 1]));
            }
            marks.insert(Edge::new(vertices[1], vertices[2]));
            marks.insert(Edge::new(vertices[4], vertices[5]));
            for (role, &var) in lits.iter().enumerate() {
                for &pos in &NAE_ROLE_POSITIONS[role] {
                    let parent = slot_parents[var][next_slot[var]];
                    next_slot[var] += 1;
                    let path_vertex = vertices[pos - 1];
                    pairs.push((parent, path_vertex));
                    marks.insert(Edge::new(parent, path_vertex));
                    variables[var].borders.push((parent, path_vertex));
                }
            }
            PathGadget { vertices }
        })
        .collect();

    let graph = Graph::build(tree_vertices + 7 * phi.clauses().len(), &pairs)
        .map_err(|e| ReductionError::InvalidInput(format!("gadget assembly failed: {e}")))?;
    let instance = MarkedInstance::new(graph, marks).expect("marks come from the edge list");
    let map = ReductionMap {
        stage: Stage::Marked,
        gadgets: GadgetMap::Nae { variables, clauses },
        nets: Vec::new(),
        cofish: Vec::new(),
    };
    Ok((instance, map))
}

/// A standalone variable tree with `3k` explicit leaf vertices and every
/// edge marked; used to inspect the gadget's rigidity in isolation. Returns
/// the tree, its marks, and its internal (non-border) edges.
pub fn standalone_variable_tree(k: usize) -> (Graph, BTreeSet<Edge>, Vec<Edge>) {
    assert!(k >= 2, "variable trees are defined for at least two occurrences");
    let t = k - 1;
    let b_base = t;
    let leaf_base = t + 2 * t + 1;
    let mut pairs = Vec::new();
    let mut internal = Vec::new();
    for i in 0..t {
        for j in [2 * i, 2 * i + 1, 2 * i + 2] {
            pairs.push((i, b_base + j));
            internal.push(Edge::new(i, b_base + j));
        }
    }
    let mut next_leaf = leaf_base;
    for j in 0..(2 * t + 1) {
        let capacity = if j == 0 || j == 2 * t || j % 2 == 1 { 2 } else { 1 };
        for _ in 0..capacity {
            pairs.push((b_base + j, next_leaf));
            next_leaf += 1;
        }
    }
    let g = Graph::build(next_leaf, &pairs).expect("tree is simple");
    let marks: BTreeSet<Edge> = g.edges().iter().copied().collect();
    (g, marks, internal)
}

/// Converts a satisfying assignment into a decomposition of the marked
/// instance the formula reduces to (the pre-net stage for one-in-three).
///
/// Variable gadgets are covered by their fixed true/false patterns; each
/// clause remainder is covered by the matching case pattern, with an
/// exhaustive search over the clause's residual edges as a fallback.
pub fn witness_from_assignment(
    phi: &CnfFormula,
    assignment: &Assignment,
    mode: SatMode,
) -> Result<Decomposition, ReductionError> {
    if !assignment.satisfies(phi, mode) {
        return Err(ReductionError::NotSatisfying);
    }
    match mode {
        SatMode::OneInThree => witness_one_in_three(phi, assignment),
        SatMode::NotAllEqual => witness_nae(phi, assignment),
    }
}

fn witness_one_in_three(
    phi: &CnfFormula,
    assignment: &Assignment,
) -> Result<Decomposition, ReductionError> {
    let (instance, map) = reduce_one_in_three(phi)?;
    let GadgetMap::OneInThree { variables, clauses } = &map.gadgets else {
        unreachable!()
    };
    let mut builder = WitnessBuilder::new(&instance);
    // False variables keep their claws whole.
    for (i, gadget) in variables.iter().enumerate() {
        if !assignment.0[i] {
            builder.push(Part::claw(gadget.center, gadget.leaves).expect("distinct"))?;
        }
    }
    for (j, lits) in phi.clauses().iter().enumerate() {
        let [a1, a2, a3, a4, a5] = clauses[j].cycle;
        // Exactly one literal is true: its leaf becomes a claw center
        // absorbing the marked edge plus its two cycle edges, and the three
        // remaining cycle edges form a path.
        let true_role = lits
            .iter()
            .position(|&v| assignment.0[v])
            .expect("one-in-three satisfied");
        let center_of = |role: usize| variables[lits[role]].center;
        let (claw, path) = match true_role {
            0 => (
                Part::claw(a4, [center_of(0), a3, a5]),
                Part::path([a3, a2, a1, a5]),
            ),
            1 => (
                Part::claw(a1, [center_of(1), a2, a5]),
                Part::path([a2, a3, a4, a5]),
            ),
            _ => (
                Part::claw(a2, [center_of(2), a1, a3]),
                Part::path([a3, a4, a5, a1]),
            ),
        };
        let wanted = [claw.expect("distinct"), path.expect("distinct")];
        builder.push_clause_parts(&wanted, j)?;
    }
    builder.finish()
}

fn witness_nae(phi: &CnfFormula, assignment: &Assignment) -> Result<Decomposition, ReductionError> {
    let (instance, map) = reduce_nae(phi)?;
    let GadgetMap::Nae { variables, clauses } = &map.gadgets else {
        unreachable!()
    };
    let g = instance.graph.clone();
    let mut builder = WitnessBuilder::new(&instance);
    // True: claws at every B-vertex cover the whole tree including its
    // border edges. False: claws at every A-vertex cover the internal edges
    // only, leaving the borders to the clause side.
    for (i, tree) in variables.iter().enumerate() {
        let centers = if assignment.0[i] {
            &tree.b_vertices
        } else {
            &tree.a_vertices
        };
        for &c in centers {
            let nb = g.neighbors(c);
            builder.push(Part::claw(c, [nb[0], nb[1], nb[2]]).expect("distinct"))?;
        }
    }

    for (j, lits) in phi.clauses().iter().enumerate() {
        let vs = clauses[j].vertices;
        let v = |p: usize| vs[p - 1];
        // B-parent of the border joined at path position p, per role.
        let mut parent = [[usize::MAX; 8]; 3];
        for (role, &var) in lits.iter().enumerate() {
            for (b, pv) in &variables[var].borders {
                if let Some(p) = vs.iter().position(|&x| x == *pv) {
                    parent[role][p + 1] = *b;
                }
            }
        }
        let (pi, pj, pk) = (parent[0], parent[1], parent[2]);
        let key = (
            assignment.0[lits[0]],
            assignment.0[lits[1]],
            assignment.0[lits[2]],
        );
        let wanted: Vec<Part> = match key {
            (true, true, false) => vec![
                Part::claw(v(2), [v(1), v(3), pk[2]]).expect("distinct"),
                Part::claw(v(4), [v(3), v(5), pk[4]]).expect("distinct"),
                Part::claw(v(6), [v(5), v(7), pk[6]]).expect("distinct"),
            ],
            (true, false, true) => vec![
                Part::path([pj[1], v(1), v(2), v(3)]).expect("distinct"),
                Part::path([v(3), v(4), v(5), pj[5]]).expect("distinct"),
                Part::path([v(5), v(6), v(7), pj[7]]).expect("distinct"),
            ],
            (false, true, true) => vec![
                Part::path([pi[1], v(1), v(2), v(3)]).expect("distinct"),
                Part::path([pi[3], v(3), v(4), v(5)]).expect("distinct"),
                Part::path([pi[7], v(7), v(6), v(5)]).expect("distinct"),
            ],
            (false, true, false) => vec![
                Part::path([pi[1], v(1), v(2), pk[2]]).expect("distinct"),
                Part::claw(v(3), [v(2), v(4), pi[3]]).expect("distinct"),
                Part::path([pk[4], v(4), v(5), v(6)]).expect("distinct"),
                Part::path([pk[6], v(6), v(7), pi[7]]).expect("distinct"),
            ],
            (true, false, false) => vec![
                Part::path([pj[7], v(7), v(6), pk[6]]).expect("distinct"),
                Part::claw(v(5), [v(4), v(6), pj[5]]).expect("distinct"),
                Part::path([pk[4], v(4), v(3), v(2)]).expect("distinct"),
                Part::path([pk[2], v(2), v(1), pj[1]]).expect("distinct"),
            ],
            (false, false, true) => vec![
                Part::claw(v(1), [v(2), pi[1], pj[1]]).expect("distinct"),
                Part::claw(v(3), [v(2), v(4), pi[3]]).expect("distinct"),
                Part::claw(v(5), [v(4), v(6), pj[5]]).expect("distinct"),
                Part::claw(v(7), [v(6), pi[7], pj[7]]).expect("distinct"),
            ],
            (true, true, true) | (false, false, false) => unreachable!("assignment satisfies NAE"),
        };
        builder.push_clause_parts(&wanted, j)?;
    }
    builder.finish()
}

/// Incrementally assembles a witness, tracking consumed edges so the
/// per-clause patterns can be validated as they are placed and replaced by
/// a local search over the clause residual if they ever fail to fit.
struct WitnessBuilder<'i> {
    instance: &'i MarkedInstance,
    used: Vec<bool>,
    parts: Vec<Part>,
}

impl<'i> WitnessBuilder<'i> {
    fn new(instance: &'i MarkedInstance) -> Self {
        WitnessBuilder {
            used: vec![false; instance.graph.edge_count()],
            parts: Vec::new(),
            instance,
        }
    }

    fn try_push(&mut self, part: Part) -> bool {
        let g = &self.instance.graph;
        let ids: Vec<Option<usize>> = part.edges().iter().map(|&e| g.edge_index(e)).collect();
        if ids
            .iter()
            .any(|id| id.is_none_or(|idx| self.used[idx]))
        {
            return false;
        }
        for id in ids.into_iter().flatten() {
            self.used[id] = true;
        }
        self.parts.push(part);
        true
    }

    fn push(&mut self, part: Part) -> Result<(), ReductionError> {
        if self.try_push(part) {
            Ok(())
        } else {
            Err(ReductionError::InvalidInput(format!(
                "witness part {part:?} does not fit the instance"
            )))
        }
    }

    /// Places the pattern parts for one clause, or falls back to an
    /// exhaustive search over exactly the edges the pattern would have
    /// covered.
    fn push_clause_parts(&mut self, wanted: &[Part], clause: usize) -> Result<(), ReductionError> {
        let checkpoint = (self.parts.len(), self.used.clone());
        if wanted.iter().all(|&p| self.try_push(p)) {
            return Ok(());
        }
        self.parts.truncate(checkpoint.0);
        self.used = checkpoint.1;
        log::warn!("clause {clause}: pattern did not fit, searching the residual");
        let residual: BTreeSet<Edge> = wanted.iter().flat_map(|p| p.edges()).collect();
        let target: Vec<Edge> = residual.iter().copied().collect();
        let g = &self.instance.graph;
        let live_pairs: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(idx, _)| !self.used[*idx])
            .map(|(_, e)| e.endpoints())
            .collect();
        let subgraph = Graph::build(g.n(), &live_pairs).expect("subgraph of a simple graph");
        let marks: BTreeSet<Edge> = self
            .instance
            .marks
            .iter()
            .copied()
            .filter(|e| subgraph.edge_index(*e).is_some())
            .collect();
        let covers = crate::exact::enumerate_covers(
            &subgraph,
            crate::decomp::AllowedSet::full(),
            Some(&marks),
            &target,
            64,
            &crate::exact::SolverConfig::default(),
        );
        let candidates = match covers {
            crate::exact::EnumerateOutcome::Complete(c)
            | crate::exact::EnumerateOutcome::LimitReached(c) => c,
            crate::exact::EnumerateOutcome::BudgetExceeded => Vec::new(),
        };
        for cover in candidates {
            let within = cover
                .parts
                .iter()
                .all(|p| p.edges().iter().all(|e| residual.contains(e)));
            if within {
                for p in cover.parts {
                    self.push(p)?;
                }
                return Ok(());
            }
        }
        Err(ReductionError::InternalCaseMiss(format!(
            "clause {clause}: no cover of the clause residual exists"
        )))
    }

    fn finish(self) -> Result<Decomposition, ReductionError> {
        let d = Decomposition::new(self.parts);
        let report = verify_marked(self.instance, &d);
        if !report.valid {
            return Err(ReductionError::InternalCaseMiss(format!(
                "assembled witness fails verification: {:?}",
                report.violations
            )));
        }
        Ok(d)
    }
}

/// Extends a decomposition of `before` to `after = add_net(before, ..)`:
/// the net contributes one claw and one path, its only possible cover.
pub fn lift_over_net(
    d: &Decomposition,
    before: &MarkedInstance,
    after: &MarkedInstance,
) -> Result<Decomposition, ReductionError> {
    if after.graph.n() != before.graph.n() + 3 {
        return Err(ReductionError::InvalidInput(
            "after-instance does not extend the before-instance by one net".into(),
        ));
    }
    let base = before.graph.n();
    let triangle = [base, base + 1, base + 2];
    let mut anchors = [0usize; 3];
    for (k, &w) in triangle.iter().enumerate() {
        let outside: Vec<usize> = after
            .graph
            .neighbors(w)
            .iter()
            .copied()
            .filter(|x| !triangle.contains(x))
            .collect();
        if outside.len() != 1 {
            return Err(ReductionError::InvalidInput(format!(
                "net vertex {w} is not attached by exactly one pendant edge"
            )));
        }
        anchors[k] = outside[0];
    }
    let mut parts = d.parts.clone();
    parts.push(Part::claw(triangle[0], [anchors[0], triangle[1], triangle[2]]).expect("distinct"));
    parts.push(Part::path([anchors[1], triangle[1], triangle[2], anchors[2]]).expect("distinct"));
    Ok(Decomposition::new(parts))
}

/// Rewrites a valid marked decomposition of `inst` into a claw/path
/// decomposition of the co-fish-attached graph.
///
/// Parts without marked edges are copied. Every marked edge `{u, v}` was
/// subdivided by a hub `h`; the owning part is rewritten to end at the hub
/// on one side while the co-fish pattern absorbs the other: a claw at `c`,
/// the path b-e-d-a, and the path b-a-h-X with `X` fixed by the part's
/// shape. No triangle survives the rewrite.
pub fn lift_over_cofish(
    d: &Decomposition,
    inst: &MarkedInstance,
    final_graph: &Graph,
    records: &[CofishRecord],
) -> Result<Decomposition, ReductionError> {
    if !verify_marked(inst, d).valid {
        return Err(ReductionError::InvalidInput(
            "decomposition is not valid for the marked instance".into(),
        ));
    }
    let record_for = |edge: Edge| -> Result<&CofishRecord, ReductionError> {
        records
            .iter()
            .find(|r| r.marked_edge == edge)
            .ok_or_else(|| {
                ReductionError::InvalidInput(format!("no co-fish record for marked edge {edge}"))
            })
    };
    let emit_cofish = |r: &CofishRecord, x: usize, parts: &mut Vec<Part>| {
        let [a, b, c, d_v, e_v] = r.interior;
        parts.push(Part::claw(c, [b, d_v, e_v]).expect("distinct"));
        parts.push(Part::path([b, e_v, d_v, a]).expect("distinct"));
        parts.push(Part::path([b, a, r.hub, x]).expect("distinct"));
    };

    let mut parts: Vec<Part> = Vec::new();
    for part in &d.parts {
        let marked: Vec<Edge> = part
            .edges()
            .iter()
            .copied()
            .filter(|e| inst.marks.contains(e))
            .collect();
        if marked.is_empty() {
            parts.push(*part);
            continue;
        }
        match *part {
            Part::Claw { center, leaves } => {
                // Each marked spoke is cut at its hub; the claw keeps its
                // center and the export path continues to the old leaf.
                let mut new_leaves = leaves;
                for e in &marked {
                    let r = record_for(*e)?;
                    let leaf = e.other(center);
                    let slot = new_leaves
                        .iter()
                        .position(|&l| l == leaf)
                        .expect("marked spoke endpoint is a leaf");
                    new_leaves[slot] = r.hub;
                    emit_cofish(r, leaf, &mut parts);
                }
                parts.push(Part::claw(center, new_leaves).expect("distinct"));
            }
            Part::Path {
                vertices: [p, q, r, s],
            } => {
                // Marked edges of a path are extremal; the extremity swings
                // to the hub and the export path reaches the old endpoint.
                let mut first = p;
                let mut last = s;
                for e in &marked {
                    if *e == Edge::new(p, q) {
                        let rec = record_for(*e)?;
                        first = rec.hub;
                        emit_cofish(rec, p, &mut parts);
                    } else if *e == Edge::new(r, s) {
                        let rec = record_for(*e)?;
                        last = rec.hub;
                        emit_cofish(rec, s, &mut parts);
                    } else {
                        return Err(ReductionError::InternalCaseMiss(format!(
                            "marked middle edge {e} in a verified decomposition"
                        )));
                    }
                }
                parts.push(Part::path([first, q, r, last]).expect("distinct"));
            }
            Part::Triangle { vertices } => match marked.as_slice() {
                [e0] => {
                    // One marked edge {y, z}: the two plain edges plus the
                    // hub half at y become a path; the export reaches z.
                    let (y, z) = (e0.u(), e0.v());
                    let x = vertices
                        .into_iter()
                        .find(|&v| !e0.touches(v))
                        .expect("triangle has a vertex off the marked edge");
                    let rec = record_for(*e0)?;
                    parts.push(Part::path([z, x, y, rec.hub]).expect("distinct"));
                    emit_cofish(rec, z, &mut parts);
                }
                [e0, e1] => {
                    // Two marked edges share a vertex x; the unmarked edge
                    // runs hub to hub, and both exports reach x.
                    let x = vertices
                        .into_iter()
                        .find(|&v| e0.touches(v) && e1.touches(v))
                        .expect("two triangle edges share a vertex");
                    let (y, z) = (e0.other(x), e1.other(x));
                    let r0 = record_for(*e0)?;
                    let r1 = record_for(*e1)?;
                    parts.push(Part::path([r0.hub, y, z, r1.hub]).expect("distinct"));
                    emit_cofish(r0, x, &mut parts);
                    emit_cofish(r1, x, &mut parts);
                }
                other => {
                    return Err(ReductionError::InternalCaseMiss(format!(
                        "triangle with {} marked edges in a verified decomposition",
                        other.len()
                    )))
                }
            },
        }
    }

    let lifted = Decomposition::new(parts);
    debug_assert_eq!(lifted.len() * 3, final_graph.edge_count());
    Ok(lifted)
}
