//! The decomposition vocabulary: the three connected 3-edge shapes, parts,
//! allowed sets, marked instances, and the verifier that certifies any
//! claimed decomposition.

use crate::graph::{Edge, Graph};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("edge {0} is not present in the graph")]
    EdgeNotInGraph(Edge),
    #[error("edge {0} listed twice")]
    DuplicateEdge(Edge),
    #[error("part lists vertex {0} twice")]
    DuplicateVertex(usize),
    #[error("allowed set must be nonempty")]
    EmptyAllowedSet,
    #[error("unknown family code: {0}")]
    UnknownFamilyCode(String),
    #[error("marked edge {0} is not present in the graph")]
    MarkOutsideGraph(Edge),
}

/// The three connected graphs with exactly three edges.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Shape {
    /// K1,3: a center and three leaves.
    Claw,
    /// K3.
    Triangle,
    /// P4: a path on four vertices; the middle edge joins the inner pair.
    Path,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Claw => write!(f, "K1,3"),
            Shape::Triangle => write!(f, "K3"),
            Shape::Path => write!(f, "P4"),
        }
    }
}

/// A nonempty subset of the three shapes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AllowedSet {
    mask: u8,
}

impl AllowedSet {
    const CLAW_BIT: u8 = 1;
    const TRIANGLE_BIT: u8 = 2;
    const PATH_BIT: u8 = 4;

    pub fn of(shapes: &[Shape]) -> Result<Self, ModelError> {
        let mut mask = 0;
        for s in shapes {
            mask |= Self::bit(*s);
        }
        if mask == 0 {
            return Err(ModelError::EmptyAllowedSet);
        }
        Ok(AllowedSet { mask })
    }

    pub fn full() -> Self {
        AllowedSet { mask: 7 }
    }

    fn bit(s: Shape) -> u8 {
        match s {
            Shape::Claw => Self::CLAW_BIT,
            Shape::Triangle => Self::TRIANGLE_BIT,
            Shape::Path => Self::PATH_BIT,
        }
    }

    pub fn contains(&self, s: Shape) -> bool {
        self.mask & Self::bit(s) != 0
    }

    pub fn shapes(&self) -> Vec<Shape> {
        [Shape::Claw, Shape::Triangle, Shape::Path]
            .into_iter()
            .filter(|s| self.contains(*s))
            .collect()
    }

    /// Short code used on the command line: k13, k3, p4, k13k3, k3p4,
    /// k13p4 or all.
    pub fn code(&self) -> &'static str {
        match self.mask {
            1 => "k13",
            2 => "k3",
            4 => "p4",
            3 => "k13k3",
            6 => "k3p4",
            5 => "k13p4",
            7 => "all",
            _ => unreachable!("mask is always a nonempty 3-bit set"),
        }
    }

    pub fn parse_code(code: &str) -> Result<Self, ModelError> {
        let mask = match code {
            "k13" => 1,
            "k3" => 2,
            "p4" => 4,
            "k13k3" => 3,
            "k3p4" => 6,
            "k13p4" => 5,
            "all" => 7,
            _ => return Err(ModelError::UnknownFamilyCode(code.to_string())),
        };
        Ok(AllowedSet { mask })
    }

    pub fn all_families() -> [AllowedSet; 7] {
        [1u8, 2, 4, 3, 6, 5, 7].map(|mask| AllowedSet { mask })
    }
}

impl fmt::Debug for AllowedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AllowedSet({})", self.code())
    }
}

impl fmt::Display for AllowedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// One size-3 piece of a decomposition, in canonical form: claw leaves and
/// triangle vertices sorted, path orientation fixed by first < last vertex.
///
/// Paths store their vertex order rather than a bare edge set so the middle
/// edge stays first-class.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Part {
    Claw { center: usize, leaves: [usize; 3] },
    Triangle { vertices: [usize; 3] },
    Path { vertices: [usize; 4] },
}

impl Part {
    pub fn claw(center: usize, mut leaves: [usize; 3]) -> Result<Self, ModelError> {
        leaves.sort_unstable();
        let all = [center, leaves[0], leaves[1], leaves[2]];
        check_distinct(&all)?;
        Ok(Part::Claw { center, leaves })
    }

    pub fn triangle(mut vertices: [usize; 3]) -> Result<Self, ModelError> {
        vertices.sort_unstable();
        check_distinct(&vertices)?;
        Ok(Part::Triangle { vertices })
    }

    pub fn path(vertices: [usize; 4]) -> Result<Self, ModelError> {
        check_distinct(&vertices)?;
        let [a, b, c, d] = vertices;
        let vertices = if d < a { [d, c, b, a] } else { vertices };
        Ok(Part::Path { vertices })
    }

    pub fn shape(&self) -> Shape {
        match self {
            Part::Claw { .. } => Shape::Claw,
            Part::Triangle { .. } => Shape::Triangle,
            Part::Path { .. } => Shape::Path,
        }
    }

    pub fn edges(&self) -> [Edge; 3] {
        match self {
            Part::Claw { center, leaves } => [
                Edge::new(*center, leaves[0]),
                Edge::new(*center, leaves[1]),
                Edge::new(*center, leaves[2]),
            ],
            Part::Triangle { vertices: [a, b, c] } => {
                [Edge::new(*a, *b), Edge::new(*a, *c), Edge::new(*b, *c)]
            }
            Part::Path { vertices: [a, b, c, d] } => {
                [Edge::new(*a, *b), Edge::new(*b, *c), Edge::new(*c, *d)]
            }
        }
    }

    /// The middle edge of a path part; `None` for claws and triangles.
    pub fn middle_edge(&self) -> Option<Edge> {
        match self {
            Part::Path { vertices: [_, b, c, _] } => Some(Edge::new(*b, *c)),
            _ => None,
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Part::Claw { center, leaves } => vec![*center, leaves[0], leaves[1], leaves[2]],
            Part::Triangle { vertices } => vertices.to_vec(),
            Part::Path { vertices } => vertices.to_vec(),
        }
    }
}

fn check_distinct(vs: &[usize]) -> Result<(), ModelError> {
    for (i, &v) in vs.iter().enumerate() {
        if vs[i + 1..].contains(&v) {
            return Err(ModelError::DuplicateVertex(v));
        }
    }
    Ok(())
}

/// A list of parts claimed to partition the edge set of some graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn new(parts: Vec<Part>) -> Self {
        Decomposition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn count(&self, shape: Shape) -> usize {
        self.parts.iter().filter(|p| p.shape() == shape).count()
    }
}

/// A graph together with a marked edge set. Marked edges may never be the
/// middle edge of a path part, and any triangle part must contain one or two
/// of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedInstance {
    pub graph: Graph,
    pub marks: BTreeSet<Edge>,
}

impl MarkedInstance {
    pub fn new(graph: Graph, marks: BTreeSet<Edge>) -> Result<Self, ModelError> {
        if let Some(&e) = marks.iter().find(|e| graph.edge_index(**e).is_none()) {
            return Err(ModelError::MarkOutsideGraph(e));
        }
        Ok(MarkedInstance { graph, marks })
    }

    pub fn unmarked(graph: Graph) -> Self {
        MarkedInstance {
            graph,
            marks: BTreeSet::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ShapeNotAllowed { part: usize, shape: Shape },
    EdgeNotInGraph { part: usize, edge: Edge },
    EdgeUncovered { edge: Edge },
    EdgeCoveredTwice { edge: Edge, count: usize },
    MarkedMiddleEdge { part: usize, edge: Edge },
    TriangleMarkCount { part: usize, marked: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ShapeNotAllowed { part, shape } => {
                write!(f, "part {part}: shape {shape} not in the allowed set")
            }
            Violation::EdgeNotInGraph { part, edge } => {
                write!(f, "part {part}: edge {edge} not in the graph")
            }
            Violation::EdgeUncovered { edge } => write!(f, "edge {edge} is uncovered"),
            Violation::EdgeCoveredTwice { edge, count } => {
                write!(f, "edge {edge} is covered {count} times")
            }
            Violation::MarkedMiddleEdge { part, edge } => {
                write!(f, "part {part}: marked edge {edge} used as a path middle edge")
            }
            Violation::TriangleMarkCount { part, marked } => {
                write!(
                    f,
                    "part {part}: triangle has {marked} marked edges (needs one or two)"
                )
            }
        }
    }
}

/// Aggregate statistics of a checked decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompStats {
    pub claws: usize,
    pub triangles: usize,
    pub paths: usize,
    /// `path_incidence[k]` = number of vertices lying on exactly `k` path
    /// parts (the V1/V2/V3 partition once k >= 1). The last bucket absorbs
    /// anything above three.
    pub path_incidence: [usize; 5],
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub stats: DecompStats,
}

/// Classifies three distinct edges of `g` as a single part, or `None` when
/// the triple is disconnected. The shape follows from the endpoint
/// multiplicities: a star is a claw, a closed triple is a triangle, and the
/// remaining connected case is a path.
pub fn classify_part(g: &Graph, edges: [Edge; 3]) -> Result<Option<Part>, ModelError> {
    for (i, e) in edges.iter().enumerate() {
        if g.edge_index(*e).is_none() {
            return Err(ModelError::EdgeNotInGraph(*e));
        }
        if edges[i + 1..].contains(e) {
            return Err(ModelError::DuplicateEdge(*e));
        }
    }
    let mut mult: Vec<(usize, usize)> = Vec::new();
    for e in &edges {
        for x in [e.u(), e.v()] {
            match mult.iter_mut().find(|(v, _)| *v == x) {
                Some((_, c)) => *c += 1,
                None => mult.push((x, 1)),
            }
        }
    }
    mult.sort_by_key(|&(v, c)| (std::cmp::Reverse(c), v));
    let signature: Vec<usize> = mult.iter().map(|&(_, c)| c).collect();
    let part = match signature.as_slice() {
        [3, 1, 1, 1] => {
            let center = mult[0].0;
            let leaves = [mult[1].0, mult[2].0, mult[3].0];
            Some(Part::claw(center, leaves).expect("endpoints of distinct edges"))
        }
        [2, 2, 2] => {
            Some(Part::triangle([mult[0].0, mult[1].0, mult[2].0]).expect("triangle endpoints"))
        }
        [2, 2, 1, 1] => {
            let (b, c) = (mult[0].0, mult[1].0);
            // The middle edge joins the two multiplicity-2 vertices; a triple
            // with this signature but no such edge is a disconnected P3 + K2.
            if !edges.contains(&Edge::new(b, c)) {
                None
            } else {
                let end_of = |inner: usize| -> usize {
                    edges
                        .iter()
                        .find(|e| e.touches(inner) && *e != &Edge::new(b, c))
                        .map(|e| e.other(inner))
                        .expect("inner path vertex has an outer edge")
                };
                Some(Part::path([end_of(b), b, c, end_of(c)]).expect("path endpoints"))
            }
        }
        _ => None,
    };
    Ok(part)
}

/// Checks a decomposition against `g`: shapes allowed, all part edges
/// present, every graph edge covered exactly once, and (when marks are
/// given) the marked-edge rules. All violations are collected rather than
/// short-circuited.
pub fn verify_with(
    g: &Graph,
    d: &Decomposition,
    allowed: AllowedSet,
    marks: Option<&BTreeSet<Edge>>,
) -> VerifyReport {
    let mut violations = Vec::new();
    let mut cover = vec![0usize; g.edge_count()];
    let mut stats = DecompStats {
        claws: 0,
        triangles: 0,
        paths: 0,
        path_incidence: [0; 5],
    };
    let mut path_count = vec![0usize; g.n()];

    for (i, part) in d.parts.iter().enumerate() {
        match part.shape() {
            Shape::Claw => stats.claws += 1,
            Shape::Triangle => stats.triangles += 1,
            Shape::Path => stats.paths += 1,
        }
        if !allowed.contains(part.shape()) {
            violations.push(Violation::ShapeNotAllowed {
                part: i,
                shape: part.shape(),
            });
        }
        for e in part.edges() {
            match g.edge_index(e) {
                Some(idx) => cover[idx] += 1,
                None => violations.push(Violation::EdgeNotInGraph { part: i, edge: e }),
            }
        }
        if let Part::Path { vertices } = part {
            for &v in vertices {
                if v < g.n() {
                    path_count[v] += 1;
                }
            }
        }
        if let Some(marks) = marks {
            match part {
                Part::Path { .. } => {
                    let mid = part.middle_edge().expect("path part has a middle edge");
                    if marks.contains(&mid) {
                        violations.push(Violation::MarkedMiddleEdge { part: i, edge: mid });
                    }
                }
                Part::Triangle { .. } => {
                    let marked = part.edges().iter().filter(|e| marks.contains(e)).count();
                    if marked == 0 || marked == 3 {
                        violations.push(Violation::TriangleMarkCount { part: i, marked });
                    }
                }
                Part::Claw { .. } => {}
            }
        }
    }

    for (idx, &count) in cover.iter().enumerate() {
        let edge = g.edges()[idx];
        if count == 0 {
            violations.push(Violation::EdgeUncovered { edge });
        } else if count > 1 {
            violations.push(Violation::EdgeCoveredTwice { edge, count });
        }
    }
    for &count in &path_count {
        stats.path_incidence[count.min(4)] += 1;
    }

    VerifyReport {
        valid: violations.is_empty(),
        violations,
        stats,
    }
}

/// Verifier for plain (unmarked) decompositions.
pub fn verify(g: &Graph, d: &Decomposition, allowed: AllowedSet) -> VerifyReport {
    verify_with(g, d, allowed, None)
}

/// Verifier for marked instances; all three shapes are allowed, with the
/// marked-edge constraints on paths and triangles enforced literally.
pub fn verify_marked(inst: &MarkedInstance, d: &Decomposition) -> VerifyReport {
    verify_with(&inst.graph, d, AllowedSet::full(), Some(&inst.marks))
}
