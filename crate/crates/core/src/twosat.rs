//! Minimal 2-SAT solver on the implication graph, used to pick cycle
//! orientations in the path-decomposition construction.

/// A literal: variable index plus polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    #[cfg(test)]
    fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    #[cfg(test)]
    fn neg(var: usize) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    fn negated_node(self) -> usize {
        2 * self.var + usize::from(self.positive)
    }
}

pub(crate) struct TwoSat {
    vars: usize,
    adj: Vec<Vec<usize>>,
}

impl TwoSat {
    pub(crate) fn new(vars: usize) -> Self {
        TwoSat {
            vars,
            adj: vec![Vec::new(); 2 * vars],
        }
    }

    /// Adds the clause `a or b` as the implications `!a -> b` and `!b -> a`.
    pub(crate) fn add_clause(&mut self, a: Lit, b: Lit) {
        self.adj[a.negated_node()].push(b.node());
        self.adj[b.negated_node()].push(a.node());
    }

    /// Satisfying assignment, or `None` when some variable and its negation
    /// share a strongly connected component.
    pub(crate) fn solve(&self) -> Option<Vec<bool>> {
        let comp = self.scc();
        let mut assignment = vec![false; self.vars];
        for v in 0..self.vars {
            if comp[2 * v] == comp[2 * v + 1] {
                return None;
            }
            // Tarjan numbers sinks first, so the literal whose component
            // comes later in topological order has the smaller id.
            assignment[v] = comp[2 * v] < comp[2 * v + 1];
        }
        Some(assignment)
    }

    /// Iterative Tarjan; components are numbered in reverse topological order.
    fn scc(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![usize::MAX; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut next_comp = 0usize;
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            call.push((root, 0));
            while let Some(&mut (v, ref mut ei)) = call.last_mut() {
                if *ei == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if *ei < self.adj[v].len() {
                    let w = self.adj[v][*ei];
                    *ei += 1;
                    if index[w] == usize::MAX {
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("scc stack underflow");
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[v]);
                    }
                }
            }
        }
        comp
    }
}
