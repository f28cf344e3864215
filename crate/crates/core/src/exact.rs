//! Exact search: maximum matching, k-partite perfect matching, and
//! independent sets of a requested size.
//!
//! All searches are depth-first branch and bound over an explicit node and
//! wall-clock budget. Running out of budget is reported as
//! [`SolveStatus::BudgetExhausted`], never as a negative answer.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, Matching};
use crate::vertex_set::VertexSet;

/// Vertex count up to which independent-set search is exhaustive.
pub const DEFAULT_INDEPENDENT_EXACT_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SolverBudget {
    pub fn new(node_limit: Option<u64>, time_limit: Option<Duration>) -> Result<Self> {
        if node_limit == Some(0) || time_limit == Some(Duration::ZERO) {
            return Err(Error::BadParameters("budget limits must be positive".into()));
        }
        Ok(SolverBudget { node_limit, time_limit })
    }

    pub fn unlimited() -> Self {
        SolverBudget { node_limit: None, time_limit: None }
    }

    pub fn nodes(limit: u64) -> Self {
        SolverBudget { node_limit: Some(limit.max(1)), time_limit: None }
    }
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget { node_limit: Some(10_000_000), time_limit: Some(Duration::from_secs(60)) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    /// Search exhausted; the payload is optimal.
    Optimal,
    /// A payload meeting the requested target was found.
    FeasibleFound,
    /// Search exhausted; no payload meets the target.
    Infeasible,
    /// Budget ran out; the payload, if any, is the best found so far.
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome<T> {
    pub status: SolveStatus,
    pub payload: Option<T>,
    pub nodes: u64,
}

impl<T> SolveOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self.status, SolveStatus::Optimal | SolveStatus::FeasibleFound)
    }
}

struct Meter {
    budget: SolverBudget,
    start: Instant,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    fn new(budget: SolverBudget) -> Self {
        Meter { budget, start: Instant::now(), nodes: 0, exhausted: false }
    }

    /// Counts one node; returns false once the budget is spent.
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        let over_nodes = self.budget.node_limit.is_some_and(|l| self.nodes > l);
        let over_time =
            self.nodes.is_multiple_of(1024) && self.budget.time_limit.is_some_and(|t| self.start.elapsed() >= t);
        self.exhausted = over_nodes || over_time;
        !self.exhausted
    }
}

struct MatchSearch<'a> {
    h: &'a Hypergraph,
    /// Stop as soon as the best matching reaches this size.
    target: usize,
    /// Decision mode prunes against `target`, optimisation mode against `best`.
    decision: bool,
    best: Vec<EdgeId>,
    stack: Vec<EdgeId>,
    meter: Meter,
    deg: Vec<u32>,
}

impl<'a> MatchSearch<'a> {
    fn new(h: &'a Hypergraph, target: usize, decision: bool, budget: SolverBudget) -> Self {
        MatchSearch {
            h,
            target,
            decision,
            best: Vec::new(),
            stack: Vec::new(),
            meter: Meter::new(budget),
            deg: vec![0; h.n()],
        }
    }

    fn done(&self) -> bool {
        self.best.len() >= self.target || self.meter.exhausted
    }

    fn run(&mut self, alive: Vec<EdgeId>) {
        self.dfs(&alive);
    }

    fn dfs(&mut self, alive: &[EdgeId]) {
        if !self.meter.tick() {
            return;
        }
        if self.stack.len() > self.best.len() {
            self.best = self.stack.clone();
        }
        if self.done() || alive.is_empty() {
            return;
        }
        let need = if self.decision { self.target } else { self.best.len() + 1 };
        let k = self.h.k();

        for d in self.deg.iter_mut() {
            *d = 0;
        }
        for &e in alive {
            for &v in self.h.edge(e) {
                self.deg[v] += 1;
            }
        }
        let active = self.deg.iter().filter(|&&d| d > 0).count();
        if self.stack.len() + active / k < need {
            return;
        }
        if self.stack.len() + self.greedy_cover(alive) < need {
            return;
        }

        // vertex with the fewest live edges, lowest id on ties
        let pivot = (0..self.h.n())
            .filter(|&v| self.deg[v] > 0)
            .min_by_key(|&v| (self.deg[v], v))
            .expect("alive edges have vertices");

        let branches: Vec<EdgeId> = alive.iter().copied().filter(|&e| self.h.edge_mask(e).contains(pivot)).collect();
        for e in branches {
            let mask = *self.h.edge_mask(e);
            let child: Vec<EdgeId> =
                alive.iter().copied().filter(|&f| self.h.edge_mask(f).is_disjoint(&mask)).collect();
            self.stack.push(e);
            self.dfs(&child);
            self.stack.pop();
            if self.done() {
                return;
            }
        }
        // leave the pivot uncovered
        let child: Vec<EdgeId> = alive.iter().copied().filter(|&f| !self.h.edge_mask(f).contains(pivot)).collect();
        self.dfs(&child);
    }

    /// Size of a greedily built vertex cover of `alive`, an upper bound on
    /// the matching number of the live subhypergraph. Reads `self.deg`.
    fn greedy_cover(&self, alive: &[EdgeId]) -> usize {
        let mut deg = self.deg.clone();
        let mut hit = vec![false; alive.len()];
        let mut size = 0;
        loop {
            let (v, &d) = deg.iter().enumerate().max_by_key(|(v, &d)| (d, std::cmp::Reverse(*v))).unwrap();
            if d == 0 {
                return size;
            }
            size += 1;
            for (i, &e) in alive.iter().enumerate() {
                if !hit[i] && self.h.edge_mask(e).contains(v) {
                    hit[i] = true;
                    for &u in self.h.edge(e) {
                        deg[u] -= 1;
                    }
                }
            }
        }
    }

    fn best_matching(&self) -> Matching {
        Matching::from_edges(self.h, self.best.iter().copied()).expect("search keeps edges disjoint")
    }
}

/// Maximum matching by branch and bound.
pub fn matching_number(h: &Hypergraph, budget: SolverBudget) -> SolveOutcome<Matching> {
    let mut s = MatchSearch::new(h, h.n() / h.k(), false, budget);
    s.run(h.edge_ids().collect());
    let status = if s.meter.exhausted { SolveStatus::BudgetExhausted } else { SolveStatus::Optimal };
    SolveOutcome { status, payload: Some(s.best_matching()), nodes: s.meter.nodes }
}

/// Decides whether `h` has a matching with `size` edges, stopping at the
/// first one found.
pub fn has_matching_of_size(h: &Hypergraph, size: usize, budget: SolverBudget) -> SolveOutcome<Matching> {
    if size == 0 {
        return SolveOutcome { status: SolveStatus::FeasibleFound, payload: Some(Matching::new(h.n())), nodes: 0 };
    }
    if size > h.n() / h.k() {
        return SolveOutcome { status: SolveStatus::Infeasible, payload: None, nodes: 0 };
    }
    let mut s = MatchSearch::new(h, size, true, budget);
    s.run(h.edge_ids().collect());
    if s.best.len() >= size {
        s.best.truncate(size);
        SolveOutcome { status: SolveStatus::FeasibleFound, payload: Some(s.best_matching()), nodes: s.meter.nodes }
    } else if s.meter.exhausted {
        SolveOutcome { status: SolveStatus::BudgetExhausted, payload: Some(s.best_matching()), nodes: s.meter.nodes }
    } else {
        SolveOutcome { status: SolveStatus::Infeasible, payload: None, nodes: s.meter.nodes }
    }
}

#[derive(Clone, Debug)]
pub struct KPartiteOutcome {
    pub outcome: SolveOutcome<Matching>,
    /// Edges of the host that do not take exactly one vertex per part.
    pub ignored_edges: usize,
}

/// Perfect matching of the k-partite subhypergraph of `h` with the given
/// parts, which must partition `V(h)` into `k` classes of equal size.
pub fn kpartite_perfect_matching(h: &Hypergraph, parts: &[VertexSet], budget: SolverBudget) -> Result<KPartiteOutcome> {
    let k = h.k();
    if parts.len() != k {
        return Err(Error::UnbalancedParts(format!("expected {k} parts, got {}", parts.len())));
    }
    let m = parts[0].len();
    if parts.iter().any(|p| p.len() != m) {
        return Err(Error::UnbalancedParts("parts differ in size".into()));
    }
    let mut union = VertexSet::new(h.n());
    for p in parts {
        if !union.is_disjoint(p) || p.iter().any(|v| v >= h.n()) {
            return Err(Error::UnbalancedParts("parts overlap or leave the vertex range".into()));
        }
        union.union_with(p);
    }
    if union.len() != h.n() {
        return Err(Error::UnbalancedParts("parts do not cover every vertex".into()));
    }

    let (transversal, ignored): (Vec<EdgeId>, Vec<EdgeId>) =
        h.edge_ids().partition(|&e| parts.iter().all(|p| p.intersection_len(h.edge_mask(e)) == 1));

    let mut s = MatchSearch::new(h, m, true, budget);
    s.run(transversal);
    let nodes = s.meter.nodes;
    let outcome = if s.best.len() >= m {
        SolveOutcome { status: SolveStatus::FeasibleFound, payload: Some(s.best_matching()), nodes }
    } else if s.meter.exhausted {
        SolveOutcome { status: SolveStatus::BudgetExhausted, payload: Some(s.best_matching()), nodes }
    } else {
        SolveOutcome { status: SolveStatus::Infeasible, payload: None, nodes }
    };
    Ok(KPartiteOutcome { outcome, ignored_edges: ignored.len() })
}

/// Searches for an independent set with at least `target` vertices.
pub fn find_independent_set_at_least(h: &Hypergraph, target: usize, budget: SolverBudget) -> SolveOutcome<VertexSet> {
    find_independent_set_with_limit(h, target, budget, DEFAULT_INDEPENDENT_EXACT_LIMIT)
}

/// As [`find_independent_set_at_least`], exhaustive only when `n <= exact_limit`.
/// Above the limit a miss is reported as budget-exhausted.
pub fn find_independent_set_with_limit(
    h: &Hypergraph,
    target: usize,
    budget: SolverBudget,
    exact_limit: usize,
) -> SolveOutcome<VertexSet> {
    let n = h.n();
    if target < h.k() {
        let set = VertexSet::of(n, &(0..h.k() - 1).collect::<Vec<_>>());
        return SolveOutcome { status: SolveStatus::FeasibleFound, payload: Some(set), nodes: 0 };
    }
    if target > n {
        return SolveOutcome { status: SolveStatus::Infeasible, payload: None, nodes: 0 };
    }

    let greedy = greedy_independent(h);
    if greedy.len() >= target {
        return SolveOutcome { status: SolveStatus::FeasibleFound, payload: Some(greedy), nodes: 0 };
    }
    if n > exact_limit {
        return SolveOutcome { status: SolveStatus::BudgetExhausted, payload: Some(greedy), nodes: 0 };
    }

    let mut search = IndependentSearch { h, target, meter: Meter::new(budget), found: None };
    search.dfs(VertexSet::new(n), h.vertex_set(), h.edge_ids().collect());
    let nodes = search.meter.nodes;
    match search.found {
        Some(set) => SolveOutcome { status: SolveStatus::FeasibleFound, payload: Some(set), nodes },
        None if search.meter.exhausted => {
            SolveOutcome { status: SolveStatus::BudgetExhausted, payload: Some(greedy), nodes }
        }
        None => SolveOutcome { status: SolveStatus::Infeasible, payload: None, nodes },
    }
}

/// Peel maximum-degree vertices until independent, then add back whatever fits.
fn greedy_independent(h: &Hypergraph) -> VertexSet {
    let mut w = h.vertex_set();
    let mut removed = Vec::new();
    loop {
        let mut deg = vec![0usize; h.n()];
        let mut any = false;
        for e in h.edge_ids() {
            if h.edge_mask(e).is_subset(&w) {
                any = true;
                for &v in h.edge(e) {
                    deg[v] += 1;
                }
            }
        }
        if !any {
            break;
        }
        let v = (0..h.n()).max_by_key(|&v| (deg[v], std::cmp::Reverse(v))).unwrap();
        w.remove(v);
        removed.push(v);
    }
    for &v in removed.iter().rev() {
        w.insert(v);
        if h.incident(v).iter().any(|&e| h.edge_mask(e).is_subset(&w)) {
            w.remove(v);
        }
    }
    w
}

struct IndependentSearch<'a> {
    h: &'a Hypergraph,
    target: usize,
    meter: Meter,
    found: Option<VertexSet>,
}

impl IndependentSearch<'_> {
    /// `alive` holds the edges inside `chosen ∪ open` that still meet `open`.
    fn dfs(&mut self, chosen: VertexSet, open: VertexSet, alive: Vec<EdgeId>) {
        if self.found.is_some() || !self.meter.tick() {
            return;
        }
        if chosen.len() + open.len() < self.target {
            return;
        }
        if alive.is_empty() {
            self.found = Some(chosen.union(&open));
            return;
        }
        let mut deg = vec![0usize; self.h.n()];
        for &e in &alive {
            for &v in self.h.edge(e) {
                if open.contains(v) {
                    deg[v] += 1;
                }
            }
        }
        let v = open.iter().max_by_key(|&v| (deg[v], std::cmp::Reverse(v))).expect("alive edges meet open");

        // take v
        let mut chosen_in = chosen;
        chosen_in.insert(v);
        let mut open_in = open;
        open_in.remove(v);
        for &e in &alive {
            let mask = self.h.edge_mask(e);
            if mask.contains(v) {
                let rest = mask.difference(&chosen_in);
                if rest.len() == 1 {
                    open_in.remove(rest.first().unwrap());
                }
            }
        }
        let pool = chosen_in.union(&open_in);
        let alive_in: Vec<EdgeId> = alive
            .iter()
            .copied()
            .filter(|&e| {
                let mask = self.h.edge_mask(e);
                mask.is_subset(&pool) && !mask.is_disjoint(&open_in)
            })
            .collect();
        self.dfs(chosen_in, open_in, alive_in);
        if self.found.is_some() || self.meter.exhausted {
            return;
        }

        // drop v
        let mut open_out = open;
        open_out.remove(v);
        let alive_out: Vec<EdgeId> = alive.into_iter().filter(|&e| !self.h.edge_mask(e).contains(v)).collect();
        self.dfs(chosen, open_out, alive_out);
    }
}

/// Evaluates `delta1·m + delta_rest·m^(k-1) >= 3/2·m^k` exactly.
pub fn pikhurko_condition(m: u64, delta1: u64, delta_rest: u64, k: u32) -> bool {
    let m_big = BigUint::from(m);
    let lhs = BigUint::from(2u32) * (BigUint::from(delta1) * &m_big + BigUint::from(delta_rest) * m_big.pow(k - 1));
    let rhs = BigUint::from(3u32) * m_big.pow(k);
    lhs >= rhs
}
