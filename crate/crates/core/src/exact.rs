//! Complete backtracking search for decompositions, with optional marked-edge
//! constraints. This is the ground truth the polynomial deciders are checked
//! against and the only route for the NP-complete families.

use crate::decomp::{AllowedSet, Decomposition, Part, Shape};
use crate::graph::{Edge, Graph};
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Budgets and scheduling knobs for the exact solver.
///
/// Node budgets are deterministic; the time budget is wall clock and only a
/// backstop. With `deterministic` set, multi-threaded runs commit root
/// branches in canonical order and return exactly what a sequential run
/// would.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub node_budget: u64,
    pub time_budget: Duration,
    pub deterministic: bool,
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: u64::MAX,
            time_budget: Duration::from_secs(24 * 3600),
            deterministic: true,
            threads: 1,
        }
    }
}

impl SolverConfig {
    pub fn with_node_budget(budget: u64) -> Self {
        SolverConfig {
            node_budget: budget.max(1),
            ..SolverConfig::default()
        }
    }

    pub fn with_time_budget(budget: Duration) -> Self {
        SolverConfig {
            time_budget: budget,
            ..SolverConfig::default()
        }
    }
}

/// Outcome of a solve. `BudgetExceeded` is deliberately distinct from
/// `NoDecomposition`: a negative answer always means the search space was
/// exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(Decomposition),
    NoDecomposition,
    BudgetExceeded,
}

impl SolveOutcome {
    pub fn found(&self) -> Option<&Decomposition> {
        match self {
            SolveOutcome::Found(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SolveOutcome::Found(_))
    }
}

/// Result of exhaustively enumerating covers of a target edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateOutcome {
    /// Every cover was visited.
    Complete(Vec<Decomposition>),
    /// Enumeration stopped at the requested cap.
    LimitReached(Vec<Decomposition>),
    BudgetExceeded,
}

/// Decides whether `g` admits a decomposition into the allowed shapes,
/// honoring marked-edge constraints when `marks` is given.
///
/// Search: pick the lowest-indexed live edge at a minimum-live-degree
/// vertex, enumerate every allowed part containing it in canonical order,
/// recurse. Prunes any state whose residual has a connected component with
/// edge count not divisible by three.
pub fn solve(
    g: &Graph,
    allowed: AllowedSet,
    marks: Option<&BTreeSet<Edge>>,
    cfg: &SolverConfig,
) -> SolveOutcome {
    let ctx = SearchContext::new(g, allowed, marks, cfg);
    if cfg.threads > 1 {
        solve_parallel(&ctx, cfg)
    } else {
        let mut state = SearchState::new(&ctx);
        match state.search() {
            SearchFlow::Found => {
                SolveOutcome::Found(Decomposition::new(state.parts.clone()))
            }
            SearchFlow::Exhausted => SolveOutcome::NoDecomposition,
            SearchFlow::Exceeded => SolveOutcome::BudgetExceeded,
        }
    }
}

/// Enumerates every set of pairwise edge-disjoint allowed parts covering
/// `target` exactly (parts may also consume edges outside `target`, and every
/// part contains at least one target edge).
pub fn enumerate_covers(
    g: &Graph,
    allowed: AllowedSet,
    marks: Option<&BTreeSet<Edge>>,
    target: &[Edge],
    limit: usize,
    cfg: &SolverConfig,
) -> EnumerateOutcome {
    let ctx = SearchContext::new(g, allowed, marks, cfg);
    let mut target_left: Vec<bool> = vec![false; g.edge_count()];
    let mut remaining = 0usize;
    for e in target {
        let idx = g.edge_index(*e).expect("target edge must exist in graph");
        if !target_left[idx] {
            target_left[idx] = true;
            remaining += 1;
        }
    }
    let mut state = SearchState::new(&ctx);
    let mut covers = Vec::new();
    let exceeded = state.enumerate(&mut target_left, remaining, limit, &mut covers);
    if exceeded {
        EnumerateOutcome::BudgetExceeded
    } else if covers.len() >= limit {
        EnumerateOutcome::LimitReached(covers)
    } else {
        EnumerateOutcome::Complete(covers)
    }
}

/// Immutable per-solve data shared by all search states.
struct SearchContext<'g> {
    g: &'g Graph,
    allowed: AllowedSet,
    marked: Vec<bool>,
    has_marks: bool,
    incident: Vec<Vec<usize>>,
    node_budget: u64,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl<'g> SearchContext<'g> {
    fn new(
        g: &'g Graph,
        allowed: AllowedSet,
        marks: Option<&BTreeSet<Edge>>,
        cfg: &SolverConfig,
    ) -> Self {
        let mut marked = vec![false; g.edge_count()];
        if let Some(marks) = marks {
            for e in marks {
                if let Some(idx) = g.edge_index(*e) {
                    marked[idx] = true;
                }
            }
        }
        let mut incident = vec![Vec::new(); g.n()];
        for (idx, e) in g.edges().iter().enumerate() {
            incident[e.u()].push(idx);
            incident[e.v()].push(idx);
        }
        let deadline = if cfg.time_budget >= Duration::from_secs(24 * 3600) {
            None
        } else {
            Some(Instant::now() + cfg.time_budget)
        };
        SearchContext {
            g,
            allowed,
            has_marks: marks.is_some(),
            marked,
            incident,
            node_budget: cfg.node_budget,
            deadline,
            stop: AtomicBool::new(false),
        }
    }
}

#[derive(PartialEq, Eq, Clone, Copy, Debug)]
enum SearchFlow {
    Found,
    Exhausted,
    Exceeded,
}

#[derive(Clone)]
struct SearchState<'c, 'g> {
    ctx: &'c SearchContext<'g>,
    live: Vec<bool>,
    live_deg: Vec<usize>,
    live_total: usize,
    parts: Vec<Part>,
    nodes: u64,
    found_at: u64,
}

impl<'c, 'g> SearchState<'c, 'g> {
    fn new(ctx: &'c SearchContext<'g>) -> Self {
        let live_deg: Vec<usize> = (0..ctx.g.n()).map(|v| ctx.g.degree(v)).collect();
        SearchState {
            ctx,
            live: vec![true; ctx.g.edge_count()],
            live_deg,
            live_total: ctx.g.edge_count(),
            parts: Vec::new(),
            nodes: 0,
            found_at: 0,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.ctx.node_budget {
            return true;
        }
        if self.nodes % 1024 == 0 {
            if let Some(deadline) = self.ctx.deadline {
                if Instant::now() > deadline {
                    return true;
                }
            }
            if self.ctx.stop.load(Ordering::Relaxed) {
                return true;
            }
        }
        false
    }

    fn commit(&mut self, edges: [usize; 3]) {
        for idx in edges {
            debug_assert!(self.live[idx]);
            self.live[idx] = false;
            let e = self.ctx.g.edges()[idx];
            self.live_deg[e.u()] -= 1;
            self.live_deg[e.v()] -= 1;
        }
        self.live_total -= 3;
    }

    fn uncommit(&mut self, edges: [usize; 3]) {
        for idx in edges {
            self.live[idx] = true;
            let e = self.ctx.g.edges()[idx];
            self.live_deg[e.u()] += 1;
            self.live_deg[e.v()] += 1;
        }
        self.live_total += 3;
    }

    /// Lowest-indexed live edge at a minimum-live-degree vertex.
    fn branch_edge(&self) -> usize {
        let v = (0..self.ctx.g.n())
            .filter(|&v| self.live_deg[v] > 0)
            .min_by_key(|&v| (self.live_deg[v], v))
            .expect("live edges imply a live vertex");
        *self.ctx.incident[v]
            .iter()
            .find(|&&idx| self.live[idx])
            .expect("live degree > 0")
    }

    /// Every residual component must have an edge count divisible by three.
    fn components_divisible(&self) -> bool {
        if self.live_total % 3 != 0 {
            return false;
        }
        let n = self.ctx.g.n();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] || self.live_deg[start] == 0 {
                continue;
            }
            let mut deg_sum = 0usize;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                deg_sum += self.live_deg[v];
                for &idx in &self.ctx.incident[v] {
                    if self.live[idx] {
                        let w = self.ctx.g.edges()[idx].other(v);
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            if (deg_sum / 2) % 3 != 0 {
                return false;
            }
        }
        true
    }

    fn live_neighbors(&self, v: usize, skip: usize) -> Vec<(usize, usize)> {
        // (neighbor, edge index), ascending by neighbor id.
        let mut out = Vec::with_capacity(3);
        for &idx in &self.ctx.incident[v] {
            if self.live[idx] {
                let w = self.ctx.g.edges()[idx].other(v);
                if w != skip {
                    out.push((w, idx));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All allowed parts containing live edge `ei`, in canonical order:
    /// triangles, claws at the lower endpoint, claws at the higher endpoint,
    /// paths with `ei` as middle edge, then paths with `ei` as an end edge
    /// (extending past the higher endpoint first).
    fn candidates(&self, ei: usize) -> Vec<(Part, [usize; 3])> {
        let e = self.ctx.g.edges()[ei];
        let (u, v) = e.endpoints();
        let u_nbrs = self.live_neighbors(u, v);
        let v_nbrs = self.live_neighbors(v, u);
        let mut out = Vec::new();

        if self.ctx.allowed.contains(Shape::Triangle) {
            for &(w, uw) in &u_nbrs {
                if let Some(&(_, vw)) = v_nbrs.iter().find(|&&(x, _)| x == w) {
                    if self.triangle_marks_ok([ei, uw, vw]) {
                        let part = Part::triangle([u, v, w]).expect("distinct endpoints");
                        out.push((part, [ei, uw, vw]));
                    }
                }
            }
        }
        if self.ctx.allowed.contains(Shape::Claw) {
            for (center, spokes) in [(u, &u_nbrs), (v, &v_nbrs)] {
                for i in 0..spokes.len() {
                    for j in (i + 1)..spokes.len() {
                        let (a, ea) = spokes[i];
                        let (b, eb) = spokes[j];
                        let part = Part::claw(center, [e.other(center), a, b])
                            .expect("distinct leaves");
                        out.push((part, [ei, ea, eb]));
                    }
                }
            }
        }
        if self.ctx.allowed.contains(Shape::Path) {
            if !(self.ctx.has_marks && self.ctx.marked[ei]) {
                for &(x, xu) in &u_nbrs {
                    for &(y, yv) in &v_nbrs {
                        if x != y {
                            let part = Part::path([x, u, v, y]).expect("distinct path vertices");
                            out.push((part, [xu, ei, yv]));
                        }
                    }
                }
            }
            for (near, far, near_nbrs) in [(u, v, &v_nbrs), (v, u, &u_nbrs)] {
                // ei is the end edge (near, far); extend past `far`.
                for &(w, fw) in near_nbrs.iter() {
                    if self.ctx.has_marks && self.ctx.marked[fw] {
                        continue;
                    }
                    for (z, wz) in self.live_neighbors(w, far) {
                        if z != near && z != far {
                            let part =
                                Part::path([near, far, w, z]).expect("distinct path vertices");
                            out.push((part, [ei, fw, wz]));
                        }
                    }
                }
            }
        }
        out
    }

    fn triangle_marks_ok(&self, edges: [usize; 3]) -> bool {
        if !self.ctx.has_marks {
            return true;
        }
        let marked = edges.iter().filter(|&&i| self.ctx.marked[i]).count();
        marked == 1 || marked == 2
    }

    fn search(&mut self) -> SearchFlow {
        if self.tick() {
            return SearchFlow::Exceeded;
        }
        if self.live_total == 0 {
            self.found_at = self.nodes;
            return SearchFlow::Found;
        }
        if !self.components_divisible() {
            return SearchFlow::Exhausted;
        }
        let ei = self.branch_edge();
        let mut exceeded = false;
        for (part, edges) in self.candidates(ei) {
            self.commit(edges);
            self.parts.push(part);
            match self.search() {
                SearchFlow::Found => return SearchFlow::Found,
                SearchFlow::Exceeded => exceeded = true,
                SearchFlow::Exhausted => {}
            }
            self.parts.pop();
            self.uncommit(edges);
            if exceeded {
                break;
            }
        }
        if exceeded {
            SearchFlow::Exceeded
        } else {
            SearchFlow::Exhausted
        }
    }

    /// Exhaustive enumeration of covers of the remaining target edges.
    /// Returns true if the budget was exceeded.
    fn enumerate(
        &mut self,
        target_left: &mut [bool],
        remaining: usize,
        limit: usize,
        covers: &mut Vec<Decomposition>,
    ) -> bool {
        if self.tick() {
            return true;
        }
        if covers.len() >= limit {
            return false;
        }
        if remaining == 0 {
            covers.push(Decomposition::new(self.parts.clone()));
            return false;
        }
        let ei = (0..target_left.len())
            .find(|&i| target_left[i] && self.live[i])
            .expect("remaining > 0 implies an uncovered live target edge");
        for (part, edges) in self.candidates(ei) {
            let mut cleared = [usize::MAX; 3];
            let mut newly_covered = 0;
            for (slot, idx) in edges.into_iter().enumerate() {
                if target_left[idx] {
                    target_left[idx] = false;
                    cleared[slot] = idx;
                    newly_covered += 1;
                }
            }
            self.commit(edges);
            self.parts.push(part);
            let exceeded = self.enumerate(target_left, remaining - newly_covered, limit, covers);
            self.parts.pop();
            self.uncommit(edges);
            for idx in cleared.into_iter().filter(|&i| i != usize::MAX) {
                target_left[idx] = true;
            }
            if exceeded {
                return true;
            }
        }
        false
    }
}

/// Root-level parallel exploration. Each root candidate subtree is searched
/// independently; in deterministic mode the outcomes are then replayed in
/// canonical order with sequential budget accounting, so the result matches
/// a single-threaded run.
fn solve_parallel(ctx: &SearchContext<'_>, cfg: &SolverConfig) -> SolveOutcome {
    let mut root = SearchState::new(ctx);
    if root.tick() {
        return SolveOutcome::BudgetExceeded;
    }
    if root.live_total == 0 {
        return SolveOutcome::Found(Decomposition::new(Vec::new()));
    }
    if !root.components_divisible() {
        return SolveOutcome::NoDecomposition;
    }
    let candidates = root.candidates(root.branch_edge());
    if candidates.is_empty() {
        return SolveOutcome::NoDecomposition;
    }

    struct BranchResult {
        outcome: SearchFlow,
        nodes: u64,
        found_at: u64,
        cert: Option<Vec<Part>>,
    }

    let results: Vec<Mutex<Option<BranchResult>>> =
        (0..candidates.len()).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = cfg.threads.min(candidates.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= candidates.len() {
                    break;
                }
                let (part, edges) = candidates[i];
                let mut state = SearchState::new(ctx);
                state.commit(edges);
                state.parts.push(part);
                let outcome = state.search();
                if outcome == SearchFlow::Found && !cfg.deterministic {
                    // Racing mode: first hit cancels the rest.
                    ctx.stop.store(true, Ordering::Relaxed);
                }
                *results[i].lock().unwrap() = Some(BranchResult {
                    outcome,
                    nodes: state.nodes,
                    found_at: state.found_at,
                    cert: (outcome == SearchFlow::Found).then(|| state.parts.clone()),
                });
            });
        }
    });

    let collected: Vec<BranchResult> = results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled every slot"))
        .collect();

    if !cfg.deterministic {
        if let Some(r) = collected.iter().find(|r| r.outcome == SearchFlow::Found) {
            return SolveOutcome::Found(Decomposition::new(r.cert.clone().unwrap()));
        }
        if collected.iter().any(|r| r.outcome == SearchFlow::Exceeded) {
            return SolveOutcome::BudgetExceeded;
        }
        return SolveOutcome::NoDecomposition;
    }

    // Canonical replay with cumulative node accounting.
    let mut acc: u64 = 1; // the root node itself
    for r in &collected {
        match r.outcome {
            SearchFlow::Found => {
                return if acc.saturating_add(r.found_at) <= ctx.node_budget {
                    SolveOutcome::Found(Decomposition::new(r.cert.clone().unwrap()))
                } else {
                    SolveOutcome::BudgetExceeded
                };
            }
            SearchFlow::Exceeded => return SolveOutcome::BudgetExceeded,
            SearchFlow::Exhausted => {
                acc = acc.saturating_add(r.nodes);
                if acc > ctx.node_budget {
                    return SolveOutcome::BudgetExceeded;
                }
            }
        }
    }
    SolveOutcome::NoDecomposition
}
