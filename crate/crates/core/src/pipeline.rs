//! End-to-end near perfect matching: absorb, almost-match, absorb the
//! leftovers, with the extremal construction and exact search behind it.

use std::time::Instant;

use serde::Serialize;

use crate::absorbing::{absorb_leftovers, build_absorbing_matching, default_max_size};
use crate::almost::{almost_perfect_matching_with, AlmostConfig, AlmostOutcome};
use crate::error::{Error, Result};
use crate::exact::{
    find_independent_set_with_limit, has_matching_of_size, SolveStatus, SolverBudget, DEFAULT_INDEPENDENT_EXACT_LIMIT,
};
use crate::extremal::{extremal_bound, extremal_matching};
use crate::greedy::greedy_matching;
use crate::hypergraph::{Hypergraph, Matching};
use crate::report::{Branch, ReductionInfo, RunReport};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, Serialize)]
pub struct PipelineConfig {
    /// Non-extremality parameter; `None` means `1/(10k)`.
    pub gamma: Option<f64>,
    /// Extremality parameter of the extremal construction.
    pub epsilon: f64,
    /// Required number of absorbing edges per (k+1)-set.
    pub absorbing_threshold: usize,
    /// Size budget of the absorbing matching; `None` means `⌈4·k·threshold·log2 n⌉`.
    pub absorbing_max_size: Option<usize>,
    /// Uncovered count at which augmentation stops; `None` means `⌈k²/(2γ)⌉`.
    pub leftover_target: Option<usize>,
    pub budget: SolverBudget,
    pub seed: u64,
    pub fallback_to_exact: bool,
    pub independent_exact_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            gamma: None,
            epsilon: 0.01,
            absorbing_threshold: 1,
            absorbing_max_size: None,
            leftover_target: None,
            budget: SolverBudget::default(),
            seed: 0,
            fallback_to_exact: true,
            independent_exact_limit: DEFAULT_INDEPENDENT_EXACT_LIMIT,
        }
    }
}

impl PipelineConfig {
    pub fn gamma_for(&self, k: usize) -> f64 {
        self.gamma.unwrap_or(1.0 / (10 * k) as f64)
    }

    /// Warnings for parameters outside the proven regime.
    pub fn check(&self, k: usize) -> Result<Vec<String>> {
        let gamma = self.gamma_for(k);
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::BadParameters(format!("epsilon {} must be positive", self.epsilon)));
        }
        if gamma.is_nan() || gamma <= 0.0 {
            return Err(Error::BadParameters(format!("gamma {gamma} must be positive")));
        }
        let mut warnings = Vec::new();
        if gamma >= 1.0 / (5 * k) as f64 {
            warnings.push(format!("gamma {gamma} is not below 1/(5k) = {:.4}", 1.0 / (5 * k) as f64));
        }
        Ok(warnings)
    }
}

/// Independent-set size at which the pipeline routes to the extremal branch:
/// `(1 - 5kγ)(k-1)n/k`.
pub fn routing_bound(k: usize, n: usize, gamma: f64) -> f64 {
    (1.0 - 5.0 * k as f64 * gamma) * (k - 1) as f64 * n as f64 / k as f64
}

/// Searches for a near perfect matching of `h`.
pub fn near_perfect_matching(h: &Hypergraph, cfg: &PipelineConfig) -> RunReport {
    let start = Instant::now();
    let (k, n) = (h.k(), h.n());
    let target = n / k;
    let mut report = RunReport::new(h, "pipeline", target, cfg.seed);
    match cfg.check(k) {
        Ok(w) => report.warnings.extend(w),
        Err(e) => {
            report.warnings.push(e.to_string());
            report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            return report;
        }
    }
    if n % k == 0 {
        report.warnings.push(format!("k = {k} divides n = {n}; targeting a perfect matching"));
    }
    let delta = h.min_codegree();
    if delta < target {
        report.warnings.push(format!("minimum codegree {delta} is below ⌊n/k⌋ = {target}"));
    }

    let gamma = cfg.gamma_for(k);
    let mut extremal_tried = false;
    let route = routing_bound(k, n, gamma);
    if route > 0.0 {
        report.bump("independent_searches", 1);
        let found = find_independent_set_with_limit(h, route.ceil() as usize, cfg.budget, cfg.independent_exact_limit);
        if let (true, Some(set)) = (found.is_found(), found.payload) {
            extremal_tried = true;
            if let Some(m) = try_extremal(h, &set, cfg, &mut report) {
                return finish(report, h, &m, Branch::Extremal, start);
            }
        }
    }

    match nonextremal(h, cfg, gamma, &mut report) {
        Ok(m) => return finish(report, h, &m, Branch::Nonextremal, start),
        Err(Some(witness)) if !extremal_tried => {
            if let Some(m) = try_extremal(h, &witness, cfg, &mut report) {
                return finish(report, h, &m, Branch::Extremal, start);
            }
        }
        Err(_) => {}
    }

    if cfg.fallback_to_exact {
        report.bump("fallback_exact_calls", 1);
        let out = has_matching_of_size(h, target, cfg.budget);
        report.bump("fallback_exact_nodes", out.nodes);
        match (out.status, out.payload) {
            (SolveStatus::FeasibleFound, Some(m)) => return finish(report, h, &m, Branch::ExactFallback, start),
            (SolveStatus::Infeasible, _) => report.warnings.push(format!("no matching of size {target} exists")),
            _ => report.warnings.push("exact fallback ran out of budget".into()),
        }
    }
    report.branch = Branch::Failed;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn finish(mut report: RunReport, h: &Hypergraph, m: &Matching, branch: Branch, start: Instant) -> RunReport {
    report.set_matching(h, m);
    report.branch = branch;
    report.success = m.len() >= report.target;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn try_extremal(h: &Hypergraph, witness: &VertexSet, cfg: &PipelineConfig, report: &mut RunReport) -> Option<Matching> {
    let (k, n) = (h.k(), h.n());
    let needed = extremal_bound(k, n, cfg.epsilon);
    let mut c = *witness;
    if (c.len() as f64) < needed - 1e-9 {
        report.bump("independent_searches", 1);
        let found = find_independent_set_with_limit(h, needed.ceil() as usize, cfg.budget, cfg.independent_exact_limit);
        match (found.is_found(), found.payload) {
            (true, Some(set)) => c = set,
            _ => {
                report.warnings.push(format!("no independent set of size {needed:.2} for the extremal branch"));
                return None;
            }
        }
    }
    report.bump("extremal_attempts", 1);
    match extremal_matching(h, &c, cfg.epsilon, cfg.budget) {
        Ok(run) => {
            report.bump("kpartite_solves", u64::from(run.staged.step4.solver_status.is_some()));
            report.warnings.extend(run.warnings.iter().cloned());
            let m = run.matching.clone();
            report.extremal = Some(run);
            Some(m)
        }
        Err(e) => {
            report.warnings.push(format!("extremal branch: {e}"));
            None
        }
    }
}

/// Absorbing matching, almost perfect matching of the rest, then absorption
/// of the leftovers. On failure returns the lifted independent witness if
/// the almost-matching step produced one.
fn nonextremal(
    h: &Hypergraph,
    cfg: &PipelineConfig,
    gamma: f64,
    report: &mut RunReport,
) -> std::result::Result<Matching, Option<VertexSet>> {
    let (k, n) = (h.k(), h.n());
    let threshold = cfg.absorbing_threshold;
    let max_size = cfg.absorbing_max_size.unwrap_or_else(|| default_max_size(k, n, threshold));
    let build = build_absorbing_matching(h, threshold, max_size, cfg.seed);
    report.bump("absorbing_size", build.absorbing.matching.len() as u64);
    report.bump("absorbing_deficient_sets", build.deficient.len() as u64);
    report.warnings.extend(build.warnings.iter().cloned());
    if !build.is_success() {
        report.warnings.push(format!("absorbing matching is deficient for {} sets", build.deficient.len()));
    }

    let rest = VertexSet::full(n).difference(build.absorbing.matching.covered());
    let mut inner = Matching::new(n);
    if rest.len() >= k {
        let (sub, relabel) = h.induced(&rest).expect("rest has at least k vertices");
        report.bump("sub_min_codegree", sub.min_codegree() as u64);
        let almost = almost_perfect_matching_with(
            &sub,
            AlmostConfig { gamma: 2.0 * gamma, stop_uncovered: cfg.leftover_target },
        );
        report.bump("augment_steps", almost.steps.len() as u64);
        report.warnings.extend(almost.warnings.iter().map(|w| format!("almost-matching: {w}")));
        match almost.outcome {
            AlmostOutcome::Certificate { certificate, .. } => {
                let lifted = relabel.lift_set(&certificate.witness);
                report.extremal_certificate =
                    Some(crate::almost::ExtremalCertificate { witness: lifted, bound: certificate.bound });
                return Err(Some(lifted));
            }
            AlmostOutcome::Matching { matching, .. } => inner = relabel.lift_matching(&sub, h, &matching),
        }
    }
    let leftover = rest.difference(inner.covered());
    match absorb_leftovers(h, &build.absorbing, &inner, &leftover) {
        Ok(done) => {
            report.bump("absorptions", done.certificates.len() as u64);
            report.absorption_certificates = done.certificates;
            if done.matching.len() >= n / k {
                Ok(done.matching)
            } else {
                report.warnings.push(format!("{} vertices left after absorption", done.uncovered.len()));
                Err(None)
            }
        }
        Err(e) => {
            report.warnings.push(format!("absorption: {e}"));
            Err(None)
        }
    }
}

/// A matching with at least `δ_{k-1}(H)` edges when `δ_{k-1}(H) < n/k`.
///
/// With `c = ⌊n/k⌋ - δ`: `c = 0` runs the pipeline directly, `c >= k-2`
/// uses the greedy matching, and otherwise `c` or `c+1` universal vertices
/// are added (according to whether `r + c < k`, `r = n mod k`) so that the
/// enlarged hypergraph meets the near perfect threshold; edges through the
/// added vertices are then discarded.
pub fn matching_at_least_delta(h: &Hypergraph, cfg: &PipelineConfig) -> Result<RunReport> {
    let start = Instant::now();
    let (k, n) = (h.k(), h.n());
    let delta = h.min_codegree();
    if delta * k >= n {
        return Err(Error::Precondition(format!("minimum codegree {delta} is not below n/k")));
    }
    let floor = n / k;
    let c = floor - delta;
    let r = n % k;

    if c == 0 {
        let mut report = near_perfect_matching(h, cfg);
        report.method = "reduce-corollary".into();
        report.reduction =
            Some(ReductionInfo { c, r, case: "direct".into(), dummies: 0, reduced_n: n, reduced_min_codegree: delta });
        return Ok(report);
    }
    if c + 2 >= k {
        let m = greedy_matching(h);
        let mut report = RunReport::new(h, "reduce-corollary", delta, cfg.seed);
        report.set_matching(h, &m);
        report.branch = Branch::Greedy;
        report.success = m.len() >= delta;
        report.reduction =
            Some(ReductionInfo { c, r, case: "greedy".into(), dummies: 0, reduced_n: n, reduced_min_codegree: delta });
        report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }

    let (dummies, case) = if r + c < k { (c, "r+c<k") } else { (c + 1, "r+c>=k") };
    let enlarged = h.add_universal_vertices(dummies)?;
    let inner = near_perfect_matching(&enlarged, cfg);

    let mut report = RunReport::new(h, "reduce-corollary", delta, cfg.seed);
    report.counters = inner.counters.clone();
    report.warnings = inner.warnings.clone();
    report.branch = inner.branch;
    let reduced_min_codegree = enlarged.min_codegree();
    if reduced_min_codegree != (n + dummies) / k {
        report.warnings.push(format!(
            "enlarged codegree {reduced_min_codegree} differs from ⌊(n+dummies)/k⌋ = {}",
            (n + dummies) / k
        ));
    }
    report.reduction =
        Some(ReductionInfo { c, r, case: case.into(), dummies, reduced_n: n + dummies, reduced_min_codegree });
    if inner.success {
        let lifted = inner.reload_matching(&enlarged)?;
        let kept: Vec<Vec<usize>> =
            lifted.vertex_lists(&enlarged).into_iter().filter(|e| e.iter().all(|&v| v < n)).collect();
        let m = Matching::from_vertex_lists(h, &kept)?;
        report.set_matching(h, &m);
        report.success = m.len() >= delta;
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{barrier, planted_extremal};

    #[test]
    fn complete_graph_nonextremal() {
        let h = Hypergraph::complete(3, 16).unwrap();
        let r = near_perfect_matching(&h, &PipelineConfig::default());
        assert!(r.success);
        assert_eq!(r.matching_size, 5);
        assert_eq!(r.uncovered, 1);
        assert!(r.verify(&h));
    }

    #[test]
    fn planted_goes_extremal() {
        let p = planted_extremal(3, 16, 0.01, 0, 2).unwrap();
        let r = near_perfect_matching(&p.hypergraph, &PipelineConfig::default());
        assert!(r.success);
        assert_eq!(r.branch, Branch::Extremal);
        assert_eq!(r.matching_size, 5);
    }

    #[test]
    fn barrier_below_threshold_fails() {
        let h = barrier(3, 16, 4).unwrap();
        let r = near_perfect_matching(&h, &PipelineConfig::default());
        assert!(!r.success);
        assert_eq!(r.branch, Branch::Failed);
        assert_eq!(r.counter("fallback_exact_calls"), 1);
    }

    #[test]
    fn disabled_fallback_never_calls_exact() {
        let h = barrier(3, 16, 4).unwrap();
        let cfg = PipelineConfig { fallback_to_exact: false, ..Default::default() };
        let r = near_perfect_matching(&h, &cfg);
        assert_eq!(r.counter("fallback_exact_calls"), 0);
        assert!(!r.success);
    }

    #[test]
    fn reduction_adds_one_dummy() {
        // k=4, n=13, δ=2: c=1, r=1, r+c=2<4
        let h = barrier(4, 13, 2).unwrap();
        let r = matching_at_least_delta(&h, &PipelineConfig::default()).unwrap();
        let red = r.reduction.as_ref().unwrap();
        assert_eq!((red.c, red.r, red.dummies), (1, 1, 1));
        assert_eq!(red.reduced_min_codegree, 14 / 4);
        assert!(r.success);
        assert!(r.matching_size >= 2);
        assert!(r.verify(&h));
    }

    #[test]
    fn reduction_routes_k3_to_greedy() {
        let h = barrier(3, 13, 3).unwrap();
        let r = matching_at_least_delta(&h, &PipelineConfig::default()).unwrap();
        assert_eq!(r.reduction.as_ref().unwrap().case, "greedy");
        assert!(r.matching_size >= 3);
    }

    #[test]
    fn reduction_direct_case() {
        let h = barrier(3, 13, 4).unwrap();
        let r = matching_at_least_delta(&h, &PipelineConfig::default()).unwrap();
        assert_eq!(r.reduction.as_ref().unwrap().case, "direct");
        assert!(r.success);
    }

    #[test]
    fn reduction_precondition() {
        let h = Hypergraph::complete(3, 9).unwrap();
        assert!(matches!(matching_at_least_delta(&h, &PipelineConfig::default()), Err(Error::Precondition(_))));
    }
}
