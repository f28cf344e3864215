//! Augment-or-certify: grow a matching until few vertices are uncovered, or
//! produce a large independent set showing the hypergraph is near extremal.
//!
//! With `U` the uncovered vertices split into (k-1)-sets `A_1..A_t`, a matched
//! vertex `v` is in `D` when `v ∪ A_i` is an edge for at least `k` indices.
//! Two moves grow the matching by one:
//!
//! * two-in-one-edge: a matched edge holds `x, y ∈ D`; replace it by
//!   `x ∪ A_i` and `y ∪ A_j` with `i != j`;
//! * cross-edge: an edge `e0` lies inside `V_D \ D`, where `V_D` is the union
//!   of matched edges meeting `D`; replace the `l` matched edges it touches by
//!   `e0` and `v_j ∪ A_{i_j}` for their `D`-vertices `v_j`.
//!
//! If neither applies, `V_D \ D` is independent and has `(k-1)|D|` vertices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::greedy::greedy_matching;
use crate::hypergraph::{EdgeId, Hypergraph, Matching};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalCertificate {
    /// Independent set `V_D \ D`.
    pub witness: VertexSet,
    /// `(1 - 2kγ)(k-1)n/k`, which the witness size meets.
    pub bound: f64,
}

impl ExtremalCertificate {
    pub fn validate(&self, h: &Hypergraph) -> bool {
        h.is_independent(&self.witness).unwrap_or(false) && self.witness.len() as f64 >= self.bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AugmentKind {
    TwoInOneEdge,
    CrossEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentStep {
    pub kind: AugmentKind,
    pub removed: Vec<EdgeId>,
    pub added: Vec<EdgeId>,
}

impl AugmentStep {
    /// Applies the step, checking that the result is a matching one larger.
    pub fn apply(&self, h: &Hypergraph, m: &Matching) -> Result<Matching> {
        let mut out = m.clone();
        for &e in &self.removed {
            if !out.remove(h, e) {
                return Err(crate::Error::InvalidMatching(format!("edge {:?} is not matched", h.edge(e))));
            }
        }
        for &e in &self.added {
            out.try_push(h, e)?;
        }
        debug_assert_eq!(out.len(), m.len() + 1);
        Ok(out)
    }
}

/// The set `D` with the qualifying `A`-indices of each member.
#[derive(Clone, Debug, Default)]
pub struct DSet {
    pub members: Vec<usize>,
    pub qualifying: BTreeMap<usize, Vec<usize>>,
}

/// Splits `u` in increasing order into `⌊|u|/(k-1)⌋` disjoint (k-1)-sets.
pub fn partition_uncovered(u: &VertexSet, k: usize) -> Vec<Vec<usize>> {
    u.to_vec().chunks_exact(k - 1).map(|c| c.to_vec()).collect()
}

fn join(v: usize, a: &[usize]) -> Vec<usize> {
    let mut e = a.to_vec();
    e.push(v);
    e.sort_unstable();
    e
}

/// Matched vertices joined to at least `k` of the sets in `a_list`.
pub fn compute_d(h: &Hypergraph, m: &Matching, a_list: &[Vec<usize>]) -> DSet {
    let mut out = DSet::default();
    if a_list.is_empty() {
        return out;
    }
    for v in m.covered() {
        let quals: Vec<usize> = (0..a_list.len()).filter(|&i| h.contains_edge(&join(v, &a_list[i]))).collect();
        if quals.len() >= h.k() {
            out.members.push(v);
            out.qualifying.insert(v, quals);
        }
    }
    out
}

/// `V_D \ D` for the current matching.
pub fn witness_set(h: &Hypergraph, m: &Matching, d: &DSet) -> VertexSet {
    let dmask = VertexSet::of(h.n(), &d.members);
    let mut vd = VertexSet::new(h.n());
    for &e in m.edges() {
        if !h.edge_mask(e).is_disjoint(&dmask) {
            vd.union_with(h.edge_mask(e));
        }
    }
    vd.difference(&dmask)
}

pub fn try_augment(h: &Hypergraph, m: &Matching, a_list: &[Vec<usize>], d: &DSet) -> Option<AugmentStep> {
    if d.members.is_empty() {
        return None;
    }
    let dmask = VertexSet::of(h.n(), &d.members);
    let mut matched: Vec<EdgeId> = m.edges().to_vec();
    matched.sort_unstable();
    let edge_of = |v: usize, i: usize| h.find_edge_of(&join(v, &a_list[i])).expect("qualifying index");

    for &e in &matched {
        let inside: Vec<usize> = h.edge(e).iter().copied().filter(|v| dmask.contains(*v)).collect();
        if inside.len() >= 2 {
            let (x, y) = (inside[0], inside[1]);
            let p = d.qualifying[&x][0];
            let q = *d.qualifying[&y].iter().find(|&&q| q != p).expect("at least k >= 2 qualifying sets");
            return Some(AugmentStep {
                kind: AugmentKind::TwoInOneEdge,
                removed: vec![e],
                added: vec![edge_of(x, p), edge_of(y, q)],
            });
        }
    }

    let w = witness_set(h, m, d);
    let e0 = h.edge_ids().find(|&e| h.edge_mask(e).is_subset(&w))?;
    let touched: Vec<EdgeId> =
        matched.iter().copied().filter(|&f| !h.edge_mask(f).is_disjoint(h.edge_mask(e0))).collect();
    let mut used = Vec::new();
    let mut added = vec![e0];
    for &f in &touched {
        let v = h.edge(f).iter().copied().find(|v| dmask.contains(*v)).expect("edges of V_D meet D");
        let i = *d.qualifying[&v].iter().find(|i| !used.contains(*i))?;
        used.push(i);
        added.push(edge_of(v, i));
    }
    Some(AugmentStep { kind: AugmentKind::CrossEdge, removed: touched, added })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlmostConfig {
    pub gamma: f64,
    /// Stop once at most this many vertices are uncovered. Defaults to `⌈k²/γ⌉`.
    pub stop_uncovered: Option<usize>,
}

impl AlmostConfig {
    pub fn new(gamma: f64) -> Self {
        AlmostConfig { gamma, stop_uncovered: None }
    }

    pub fn stop_bound(&self, k: usize) -> usize {
        self.stop_uncovered.unwrap_or_else(|| default_stop_bound(k, self.gamma))
    }
}

/// `⌈k²/γ⌉`.
pub fn default_stop_bound(k: usize, gamma: f64) -> usize {
    ((k * k) as f64 / gamma).ceil() as usize
}

/// `(1 - 2kγ)(k-1)n/k`.
pub fn certificate_bound(k: usize, n: usize, gamma: f64) -> f64 {
    (1.0 - 2.0 * k as f64 * gamma) * (k - 1) as f64 * n as f64 / k as f64
}

#[derive(Clone, Debug)]
pub enum AlmostOutcome {
    Matching {
        matching: Matching,
        /// Stuck above the stop bound with a witness too small to certify.
        degraded: bool,
    },
    Certificate {
        certificate: ExtremalCertificate,
        /// The stuck matching the witness was read from.
        matching: Matching,
    },
}

#[derive(Clone, Debug)]
pub struct AlmostReport {
    pub outcome: AlmostOutcome,
    pub steps: Vec<AugmentKind>,
    pub warnings: Vec<String>,
}

impl AlmostReport {
    pub fn matching(&self) -> &Matching {
        match &self.outcome {
            AlmostOutcome::Matching { matching, .. } | AlmostOutcome::Certificate { matching, .. } => matching,
        }
    }
}

pub fn almost_perfect_matching(h: &Hypergraph, gamma: f64) -> AlmostReport {
    almost_perfect_matching_with(h, AlmostConfig::new(gamma))
}

/// Starts from the greedy matching and augments until at most
/// `cfg.stop_bound(k)` vertices are uncovered or no move applies.
pub fn almost_perfect_matching_with(h: &Hypergraph, cfg: AlmostConfig) -> AlmostReport {
    let (k, n) = (h.k(), h.n());
    let mut warnings = Vec::new();
    let delta = h.min_codegree();
    let required = n as f64 / k as f64 - cfg.gamma * n as f64;
    if (delta as f64) < required {
        warnings.push(format!("minimum codegree {delta} is below n/k - γn = {required:.2}"));
    }
    let stop = cfg.stop_bound(k);
    let mut m = greedy_matching(h);
    let mut steps = Vec::new();

    loop {
        let uncovered = VertexSet::full(n).difference(m.covered());
        if uncovered.len() <= stop {
            return AlmostReport { outcome: AlmostOutcome::Matching { matching: m, degraded: false }, steps, warnings };
        }
        let a_list = partition_uncovered(&uncovered, k);
        let d = compute_d(h, &m, &a_list);
        match try_augment(h, &m, &a_list, &d) {
            Some(step) => {
                m = step.apply(h, &m).expect("augmenting steps produce matchings");
                steps.push(step.kind);
            }
            None => {
                let witness = witness_set(h, &m, &d);
                let bound = certificate_bound(k, n, cfg.gamma);
                let outcome = if witness.len() >= k && witness.len() as f64 >= bound {
                    AlmostOutcome::Certificate { certificate: ExtremalCertificate { witness, bound }, matching: m }
                } else {
                    warnings.push(format!(
                        "stuck with {} uncovered; witness of {} is below the bound {bound:.2}",
                        uncovered.len(),
                        witness.len()
                    ));
                    AlmostOutcome::Matching { matching: m, degraded: true }
                };
                return AlmostReport { outcome, steps, warnings };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::barrier;

    #[test]
    fn partition_examples() {
        let u = VertexSet::of(20, &(0..10).collect::<Vec<_>>());
        assert_eq!(partition_uncovered(&u, 3).len(), 5);
        let u = VertexSet::of(20, &(0..11).collect::<Vec<_>>());
        let p = partition_uncovered(&u, 3);
        assert_eq!(p.len(), 5);
        assert_eq!(p[4], vec![8, 9]);
        assert!(partition_uncovered(&VertexSet::of(20, &[4]), 3).is_empty());
    }

    #[test]
    fn d_on_complete_graph() {
        let h = Hypergraph::complete(3, 16).unwrap();
        let m = Matching::from_vertex_lists(&h, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let u = h.uncovered(&m).unwrap();
        let a = partition_uncovered(&u, 3);
        assert_eq!(a.len(), 5);
        let d = compute_d(&h, &m, &a);
        assert_eq!(d.members, vec![0, 1, 2, 3, 4, 5]);
        assert!(compute_d(&h, &m, &[]).members.is_empty());
    }

    #[test]
    fn d_empty_without_links() {
        // matched edge {0,1,2}; uncovered vertices only see each other
        let h = Hypergraph::new(3, 9, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let m = Matching::from_vertex_lists(&h, &[[0, 1, 2]]).unwrap();
        let a = partition_uncovered(&h.uncovered(&m).unwrap(), 3);
        let d = compute_d(&h, &m, &a);
        assert!(d.members.is_empty());
        assert_eq!(try_augment(&h, &m, &a, &d), None);
    }

    #[test]
    fn augment_on_complete_graph() {
        let h = Hypergraph::complete(3, 15).unwrap();
        let m = Matching::from_vertex_lists(&h, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let a = partition_uncovered(&h.uncovered(&m).unwrap(), 3);
        let d = compute_d(&h, &m, &a);
        let step = try_augment(&h, &m, &a, &d).unwrap();
        assert_eq!(step.kind, AugmentKind::TwoInOneEdge);
        let next = step.apply(&h, &m).unwrap();
        assert_eq!(next.len(), 3);
        assert!(h.is_valid_matching(&next));
    }

    #[test]
    fn cross_edge_move() {
        // Matched {0,1,2} and {3,4,5}; D = {0, 3}; e0 = {1,2,4} lies in V_D \ D.
        // Uncovered 6..12 split into pairs {6,7},{8,9},{10,11}.
        let mut edges = vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 2, 4]];
        for v in [0, 3] {
            for a in [[6, 7], [8, 9], [10, 11]] {
                edges.push(join(v, &a));
            }
        }
        let h = Hypergraph::new(3, 12, edges).unwrap();
        let m = Matching::from_vertex_lists(&h, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let a = partition_uncovered(&h.uncovered(&m).unwrap(), 3);
        let d = compute_d(&h, &m, &a);
        assert_eq!(d.members, vec![0, 3]);
        let step = try_augment(&h, &m, &a, &d).unwrap();
        assert_eq!(step.kind, AugmentKind::CrossEdge);
        assert_eq!(step.removed.len(), 2);
        let next = step.apply(&h, &m).unwrap();
        assert_eq!(next.len(), 3);
        assert!(h.is_valid_matching(&next));
    }

    #[test]
    fn complete_graph_reaches_near_perfect() {
        let h = Hypergraph::complete(3, 16).unwrap();
        let r = almost_perfect_matching_with(&h, AlmostConfig { gamma: 0.05, stop_uncovered: Some(1) });
        assert_eq!(r.matching().len(), 5);
        assert!(matches!(r.outcome, AlmostOutcome::Matching { degraded: false, .. }));
    }

    #[test]
    fn vacuous_bound_returns_at_once() {
        let h = Hypergraph::complete(3, 16).unwrap();
        let r = almost_perfect_matching(&h, 0.1);
        assert!(r.steps.is_empty());
        let empty = Hypergraph::new(3, 9, Vec::<Vec<usize>>::new()).unwrap();
        let r = almost_perfect_matching(&empty, 1.0);
        assert!(r.matching().is_empty());
        assert!(matches!(r.outcome, AlmostOutcome::Matching { degraded: false, .. }));
    }

    #[test]
    fn barrier_outcomes_are_sound() {
        let h = barrier(3, 18, 5).unwrap();
        let r = almost_perfect_matching_with(&h, AlmostConfig { gamma: 0.02, stop_uncovered: Some(3) });
        assert!(h.is_valid_matching(r.matching()));
        if let AlmostOutcome::Certificate { certificate, .. } = &r.outcome {
            assert!(certificate.validate(&h));
        }
    }

    #[test]
    fn stuck_state_has_at_most_one_d_vertex_per_edge() {
        for seed in 0..10 {
            let h = crate::generators::random_with_min_codegree(3, 15, 3, seed, usize::MAX).unwrap();
            let r = almost_perfect_matching_with(&h, AlmostConfig { gamma: 0.05, stop_uncovered: Some(0) });
            let m = r.matching();
            let u = h.uncovered(m).unwrap();
            let a = partition_uncovered(&u, 3);
            let d = compute_d(&h, m, &a);
            if !u.is_empty() && try_augment(&h, m, &a, &d).is_none() {
                let dmask = VertexSet::of(15, &d.members);
                assert!(m.edges().iter().all(|&e| h.edge_mask(e).intersection_len(&dmask) <= 1));
                let w = witness_set(&h, m, &d);
                assert!(h.is_independent(&w).unwrap());
                assert_eq!(w.len(), 2 * d.members.len());
            }
        }
    }
}
