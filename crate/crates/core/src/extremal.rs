//! Near perfect matchings in hypergraphs with a huge independent set.
//!
//! Given an independent set `C`, vertices outside `C` with almost full
//! degree into `C` form `A` and the rest form `B`. Four disjoint matchings
//! are then built: `M1` and `M2` cover `B`, `M3` balances the uncovered part
//! of `A` against the uncovered part of `C`, and `M4` is a perfect matching
//! of the k-partite hypergraph between what is left of `A` and `k-1` equal
//! slices of `C`.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{kpartite_perfect_matching, pikhurko_condition, SolveStatus, SolverBudget};
use crate::hypergraph::{binomial, EdgeId, Hypergraph, Matching};
use crate::vertex_set::VertexSet;

const MAX_CHOICES: usize = 20_000;

/// Which size bounds on the partition hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionBounds {
    /// `|A| >= ⌊n/k⌋ - αn`
    pub a_lower: bool,
    /// `|B| <= αn`
    pub b_upper: bool,
    /// `|C| >= (1-ε)(k-1)n/k`
    pub c_lower: bool,
    /// `|C| <= ⌈(k-1)n/k⌉`
    pub c_upper: bool,
}

impl PartitionBounds {
    pub fn all(&self) -> bool {
        self.a_lower && self.b_upper && self.c_lower && self.c_upper
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalPartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub epsilon: f64,
    pub alpha: f64,
    /// `n mod k`
    pub r: usize,
    /// `⌊n/k⌋ - |A|`, possibly non-positive.
    pub t: i64,
    pub bounds: PartitionBounds,
}

/// `(1-ε)(k-1)n/k`.
pub fn extremal_bound(k: usize, n: usize, epsilon: f64) -> f64 {
    (1.0 - epsilon) * (k - 1) as f64 * n as f64 / k as f64
}

/// Number of edges made of `x` and `k-1` vertices of `c`.
pub fn degree_into(h: &Hypergraph, x: usize, c: &VertexSet) -> usize {
    h.incident(x)
        .iter()
        .filter(|&&e| {
            let mut rest = *h.edge_mask(e);
            rest.remove(x);
            rest.is_subset(c)
        })
        .count()
}

pub fn build_partition(h: &Hypergraph, c_indep: &VertexSet, epsilon: f64) -> Result<ExtremalPartition> {
    let (k, n) = (h.k(), h.n());
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::BadParameters(format!("epsilon {epsilon} must lie in (0, 1]")));
    }
    if !h.is_independent(c_indep)? {
        return Err(Error::NotIndependent);
    }
    let lower = extremal_bound(k, n, epsilon);
    if (c_indep.len() as f64) < lower - 1e-9 {
        return Err(Error::TooSmallWitness { size: c_indep.len(), bound: lower });
    }
    let alpha = epsilon.sqrt();
    let full = binomial(c_indep.len(), k - 1) as f64;
    let mut a = VertexSet::new(n);
    let mut b = VertexSet::new(n);
    for x in (0..n).filter(|&x| !c_indep.contains(x)) {
        if degree_into(h, x, c_indep) as f64 >= (1.0 - alpha) * full {
            a.insert(x);
        } else {
            b.insert(x);
        }
    }
    let floor = n / k;
    let an = alpha * n as f64;
    let bounds = PartitionBounds {
        a_lower: a.len() as f64 >= floor as f64 - an,
        b_upper: b.len() as f64 <= an,
        c_lower: true,
        c_upper: c_indep.len() <= ((k - 1) * n).div_ceil(k),
    };
    Ok(ExtremalPartition { t: floor as i64 - a.len() as i64, a, b, c: *c_indep, epsilon, alpha, r: n % k, bounds })
}

fn infeasible(step: &'static str, detail: impl Into<String>) -> Error {
    Error::Infeasible { step, detail: detail.into() }
}

/// Least vertex of `pool` completing the (k-1)-set `set` to an edge.
fn complete(h: &Hypergraph, set: &[usize], pool: &VertexSet) -> Option<EdgeId> {
    let nb = h.neighborhood(&VertexSet::of(h.n(), set)).ok()?;
    let w = nb.intersection(pool).first()?;
    let mut e = set.to_vec();
    e.push(w);
    e.sort_unstable();
    h.find_edge_of(&e)
}

/// `t` edges, each a (k-1)-subset of `C` plus one vertex of `B`.
pub fn step1_m1(h: &Hypergraph, p: &ExtremalPartition) -> Result<Matching> {
    let k = h.k();
    if p.t <= 0 {
        return Ok(Matching::new(h.n()));
    }
    let t = p.t as usize;
    let cs = p.c.to_vec();
    if cs.len() < (k - 1) * t {
        return Err(infeasible("M1", format!("|C| = {} < (k-1)t = {}", cs.len(), (k - 1) * t)));
    }
    let sets: Vec<&[usize]> = cs.chunks_exact(k - 1).take(t).collect();
    let options: Vec<Vec<usize>> =
        sets.iter().map(|s| h.neighborhood(&VertexSet::of(h.n(), s)).unwrap().intersection(&p.b).to_vec()).collect();

    // greedy assignment with augmenting-path repair
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, set) in sets.iter().enumerate() {
        let mut seen = Vec::new();
        if !assign(i, &options, &mut owner, &mut seen) {
            return Err(infeasible("M1", format!("no distinct B-neighbour for {set:?}")));
        }
    }
    let mut m = Matching::new(h.n());
    for (bv, i) in owner.into_iter().sorted() {
        let mut e = sets[i].to_vec();
        e.push(bv);
        e.sort_unstable();
        m.try_push(h, h.find_edge_of(&e).expect("neighbour gives an edge"))?;
    }
    Ok(m)
}

fn assign(i: usize, options: &[Vec<usize>], owner: &mut HashMap<usize, usize>, seen: &mut Vec<usize>) -> bool {
    for &bv in &options[i] {
        if seen.contains(&bv) {
            continue;
        }
        seen.push(bv);
        match owner.get(&bv).copied() {
            None => {
                owner.insert(bv, i);
                return true;
            }
            Some(j) => {
                if assign(j, options, owner, seen) {
                    owner.insert(bv, i);
                    return true;
                }
            }
        }
    }
    false
}

/// One edge per remaining `B` vertex: the vertex, `k-2` uncovered vertices
/// of `C`, and a least uncovered completing vertex.
pub fn step2_m2(h: &Hypergraph, p: &ExtremalPartition, covered: &VertexSet) -> Result<Matching> {
    let k = h.k();
    let mut used = *covered;
    let mut m = Matching::new(h.n());
    for v in p.b.difference(covered).iter() {
        let free = VertexSet::full(h.n()).difference(&used);
        let free_c = p.c.intersection(&free).to_vec();
        let found = free_c.into_iter().combinations(k - 2).take(MAX_CHOICES).find_map(|t| {
            let mut set = t;
            set.push(v);
            set.sort_unstable();
            complete(h, &set, &free)
        });
        let e = found.ok_or_else(|| infeasible("M2", format!("no uncovered completion for B-vertex {v}")))?;
        m.try_push(h, e)?;
        used.union_with(h.edge_mask(e));
    }
    Ok(m)
}

/// `|A'| - (n' - r)/k` for the uncovered part.
pub fn balance(h: &Hypergraph, p: &ExtremalPartition, covered: &VertexSet) -> i64 {
    let free_a = p.a.difference(covered).len() as i64;
    let free_n = (h.n() - covered.len()) as i64;
    free_a - (free_n - p.r as i64) / h.k() as i64
}

#[derive(Clone, Debug, Serialize)]
pub struct Step3 {
    #[serde(skip)]
    pub matching: Matching,
    /// Balance before each added edge, then the final balance.
    pub balances: Vec<i64>,
}

/// Greedily adds edges inside `A ∪ C` until the balance is 0 or 1.
pub fn step3_m3(h: &Hypergraph, p: &ExtremalPartition, covered: &VertexSet) -> Result<Step3> {
    let k = h.k();
    if !p.b.is_subset(covered) {
        return Err(Error::Precondition("B is not fully covered before balancing".into()));
    }
    let mut used = *covered;
    let mut m = Matching::new(h.n());
    let mut balances = Vec::new();
    loop {
        let c = balance(h, p, &used);
        balances.push(c);
        if c < 0 {
            return Err(infeasible("M3", format!("negative surplus {c}")));
        }
        if c <= 1 {
            return Ok(Step3 { matching: m, balances });
        }
        let free_a = p.a.difference(&used).to_vec();
        let free_c = p.c.difference(&used).to_vec();
        let pool = p.a.union(&p.c).difference(&used);
        let c = c as usize;
        let found = if c >= k - 1 {
            free_a.iter().copied().combinations(k - 1).take(MAX_CHOICES).find_map(|t| complete(h, &t, &pool))
        } else {
            free_a
                .iter()
                .copied()
                .combinations(c)
                .cartesian_product(free_c.iter().copied().combinations(k - c - 1).collect::<Vec<_>>())
                .take(MAX_CHOICES)
                .find_map(|(x, y)| {
                    let mut t = x;
                    t.extend(y);
                    t.sort_unstable();
                    complete(h, &t, &pool)
                })
        };
        let e = found.ok_or_else(|| infeasible("M3", format!("no balancing edge at surplus {c}")))?;
        m.try_push(h, e)?;
        used.union_with(h.edge_mask(e));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Step4 {
    #[serde(skip)]
    pub matching: Matching,
    /// Size of each part of the k-partite hypergraph.
    pub m: usize,
    pub delta_first: u64,
    pub delta_rest: u64,
    /// The Pikhurko inequality on the k-partite hypergraph.
    pub pikhurko_holds: bool,
    /// `δ_{1} >= (1 - α c_k) m^{k-1}` with `c_k = k^{k-1}/(k-1)!`.
    pub delta_first_bound: bool,
    /// `δ_{[k]∖{1}} >= (1 - 2kε) m`.
    pub delta_rest_bound: bool,
    pub solver_status: Option<SolveStatus>,
    pub solver_nodes: u64,
}

/// `k^{k-1}/(k-1)!` as an exact rational.
pub fn c_k(k: usize) -> BigRational {
    let num = BigInt::from(k).pow(k as u32 - 1);
    let den: BigInt = (1..k).map(BigInt::from).product();
    BigRational::new(num, den)
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite parameter")
}

/// Trims the uncovered vertices to `|C'| = (k-1)|A'|`, slices `C'` into
/// `k-1` parts, and solves the k-partite perfect matching exactly.
pub fn step4_m4(h: &Hypergraph, p: &ExtremalPartition, covered: &VertexSet, budget: SolverBudget) -> Result<Step4> {
    let k = h.k();
    let b = balance(h, p, covered);
    if !(0..=1).contains(&b) {
        return Err(Error::Precondition(format!("balance {b} is not 0 or 1")));
    }
    let a3 = p.a.difference(covered).to_vec();
    let c3 = p.c.difference(covered).to_vec();
    let (drop_a, drop_c) = if b == 0 { (0, p.r) } else { (1, p.r.saturating_sub(1)) };
    if a3.len() < drop_a || c3.len() < drop_c {
        return Err(infeasible("M4", "too few uncovered vertices to trim"));
    }
    let a3 = &a3[drop_a..];
    let c3 = &c3[drop_c..];
    if c3.len() != (k - 1) * a3.len() {
        return Err(infeasible("M4", format!("|C'| = {} differs from (k-1)|A'| = {}", c3.len(), (k - 1) * a3.len())));
    }
    let m = a3.len();
    if m == 0 {
        return Ok(Step4 {
            matching: Matching::new(h.n()),
            m,
            delta_first: 0,
            delta_rest: 0,
            pikhurko_holds: true,
            delta_first_bound: true,
            delta_rest_bound: true,
            solver_status: None,
            solver_nodes: 0,
        });
    }

    let mut parts_parent: Vec<Vec<usize>> = vec![a3.to_vec()];
    parts_parent.extend(c3.chunks_exact(m).map(|c| c.to_vec()));
    let all: Vec<usize> = parts_parent.concat();
    let (sub, relabel) = h.induced(&VertexSet::of(h.n(), &all))?;
    let parts: Vec<VertexSet> = parts_parent
        .iter()
        .map(|part| VertexSet::of(sub.n(), &part.iter().map(|&v| relabel.to_child(v).unwrap()).collect::<Vec<_>>()))
        .collect();

    // minimum degrees of the k-partite subhypergraph
    let mut first_deg: HashMap<usize, u64> = HashMap::new();
    let mut rest_deg: HashMap<VertexSet, u64> = HashMap::new();
    for e in sub.edge_ids() {
        let mask = sub.edge_mask(e);
        if parts.iter().all(|p| p.intersection_len(mask) == 1) {
            let a = mask.intersection(&parts[0]).first().unwrap();
            *first_deg.entry(a).or_default() += 1;
            let mut rest = *mask;
            rest.remove(a);
            *rest_deg.entry(rest).or_default() += 1;
        }
    }
    let m64 = m as u64;
    let delta_first = if first_deg.len() < m { 0 } else { first_deg.values().copied().min().unwrap_or(0) };
    let tuples = (m as u128).pow(k as u32 - 1);
    let delta_rest = if (rest_deg.len() as u128) < tuples { 0 } else { rest_deg.values().copied().min().unwrap_or(0) };

    let mk1 = BigRational::from_integer(BigInt::from(m).pow(k as u32 - 1));
    let first_target = (BigRational::one() - rational(p.alpha) * c_k(k)) * mk1;
    let rest_target =
        (BigRational::one() - rational(2.0 * k as f64 * p.epsilon)) * BigRational::from_integer(BigInt::from(m));

    let solved = kpartite_perfect_matching(&sub, &parts, budget)?;
    let status = solved.outcome.status;
    let nodes = solved.outcome.nodes;
    let matching = match (status, solved.outcome.payload) {
        (SolveStatus::FeasibleFound, Some(pm)) => relabel.lift_matching(&sub, h, &pm),
        (SolveStatus::BudgetExhausted, _) => return Err(infeasible("M4", "solver budget exhausted")),
        _ => return Err(infeasible("M4", format!("no perfect matching of the {k}-partite hypergraph with m = {m}"))),
    };
    Ok(Step4 {
        matching,
        m,
        delta_first,
        delta_rest,
        pikhurko_holds: pikhurko_condition(m64, delta_first, delta_rest, k as u32),
        delta_first_bound: BigRational::from_integer(BigInt::from(delta_first)) >= first_target,
        delta_rest_bound: BigRational::from_integer(BigInt::from(delta_rest)) >= rest_target,
        solver_status: Some(status),
        solver_nodes: nodes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StagedMatching {
    #[serde(skip)]
    pub m1: Matching,
    #[serde(skip)]
    pub m2: Matching,
    #[serde(skip)]
    pub m3: Matching,
    #[serde(skip)]
    pub m4: Matching,
    pub sizes: [usize; 4],
    /// Uncovered vertex counts after M1, M2, M3.
    pub n_after: [usize; 3],
    /// Uncovered `A` vertices after M1, M2, M3.
    pub a_after: [usize; 3],
    /// Surplus `|A₂| - (n₂ - r)/k` after step 2.
    pub s: i64,
    pub step3: Step3,
    pub step4: Step4,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalRun {
    pub partition: ExtremalPartition,
    pub staged: StagedMatching,
    #[serde(skip)]
    pub matching: Matching,
    pub warnings: Vec<String>,
}

/// Near perfect matching of an ε-extremal hypergraph whose independent set
/// `c_indep` meets `|C| >= (1-ε)(k-1)n/k`.
pub fn extremal_matching(
    h: &Hypergraph,
    c_indep: &VertexSet,
    epsilon: f64,
    budget: SolverBudget,
) -> Result<ExtremalRun> {
    let (k, n) = (h.k(), h.n());
    if n % k == 0 {
        return Err(Error::DivisibleOrder { k, n });
    }
    let mut warnings = Vec::new();
    let delta = h.min_codegree();
    if delta < n / k {
        warnings.push(format!("minimum codegree {delta} is below ⌊n/k⌋ = {}", n / k));
    }
    let partition = build_partition(h, c_indep, epsilon)?;
    if !partition.bounds.all() {
        warnings.push(format!("partition size bounds fail: {:?}", partition.bounds));
    }
    if partition.alpha >= 1.0 {
        warnings.push("α = 1 puts every vertex outside C into A".into());
    }

    let m1 = step1_m1(h, &partition)?;
    let mut covered = *m1.covered();
    let after1 = covered;
    let m2 = step2_m2(h, &partition, &covered)?;
    covered.union_with(m2.covered());
    let after2 = covered;
    let s = balance(h, &partition, &covered);
    let step3 = step3_m3(h, &partition, &covered)?;
    covered.union_with(step3.matching.covered());
    let after3 = covered;
    let step4 = step4_m4(h, &partition, &covered, budget)?;

    let matching = m1.union(h, &m2)?.union(h, &step3.matching)?.union(h, &step4.matching)?;
    if matching.len() != n / k {
        return Err(infeasible("assembly", format!("built {} edges instead of {}", matching.len(), n / k)));
    }
    if !step4.pikhurko_holds {
        warnings.push(format!(
            "Pikhurko inequality fails at m = {} (δ1 = {}, δrest = {})",
            step4.m, step4.delta_first, step4.delta_rest
        ));
    }
    let free_a = |cov: &VertexSet| partition.a.difference(cov).len();
    let staged = StagedMatching {
        sizes: [m1.len(), m2.len(), step3.matching.len(), step4.matching.len()],
        n_after: [n - after1.len(), n - after2.len(), n - after3.len()],
        a_after: [free_a(&after1), free_a(&after2), free_a(&after3)],
        s,
        m3: step3.matching.clone(),
        m4: step4.matching.clone(),
        m1,
        m2,
        step3,
        step4,
    };
    Ok(ExtremalRun { partition, staged, matching, warnings })
}

/// `c_k` as a float, for display.
pub fn c_k_f64(k: usize) -> f64 {
    c_k(k).to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::has_matching_of_size;
    use crate::generators::{barrier, planted_extremal};

    fn side(n: usize, range: std::ops::Range<usize>) -> VertexSet {
        VertexSet::of(n, &range.collect::<Vec<_>>())
    }

    #[test]
    fn partition_of_barrier() {
        let h = barrier(3, 10, 3).unwrap();
        let p = build_partition(&h, &side(10, 3..10), 0.01).unwrap();
        assert_eq!(p.a, side(10, 0..3));
        assert!(p.b.is_empty());
        assert_eq!(p.t, 0);
        assert_eq!(p.r, 1);
        assert!(p.bounds.all());
        for a in 0..3 {
            assert_eq!(degree_into(&h, a, &p.c) as u128, binomial(7, 2));
        }
    }

    #[test]
    fn partition_degenerate_alpha_and_isolated_vertex() {
        // vertex 0 has no edge into C = {3..9}
        let h = Hypergraph::new(3, 10, [[0, 1, 2], [1, 3, 4], [2, 5, 6]]).unwrap();
        let c = side(10, 3..10);
        let p = build_partition(&h, &c, 0.01).unwrap();
        assert!(p.b.contains(0));
        let p = build_partition(&h, &c, 1.0).unwrap();
        assert_eq!(p.a, side(10, 0..3));
    }

    #[test]
    fn partition_errors() {
        let h = barrier(3, 10, 3).unwrap();
        assert!(matches!(build_partition(&h, &side(10, 2..10), 0.01), Err(Error::NotIndependent)));
        assert!(matches!(build_partition(&h, &side(10, 5..10), 0.01), Err(Error::TooSmallWitness { .. })));
    }

    #[test]
    fn m1_matches_c_sets_to_distinct_b_vertices() {
        let p = planted_extremal(3, 16, 0.08, 0, 4).unwrap();
        let part = build_partition(&p.hypergraph, &p.independent, 0.08).unwrap();
        assert_eq!(part.b, p.b_side);
        assert_eq!(part.t, 1);
        let m1 = step1_m1(&p.hypergraph, &part).unwrap();
        assert_eq!(m1.len(), 1);
        for &e in m1.edges() {
            let mask = p.hypergraph.edge_mask(e);
            assert_eq!(mask.intersection_len(&part.b), 1);
            assert_eq!(mask.intersection_len(&part.c), 2);
        }
    }

    #[test]
    fn m1_with_two_sets_and_complete_b_c_edges() {
        // A = {0,1}, B = {2,3,4}, C = {5..13}; n = 14, ⌊n/3⌋ = 4, t = 2
        let n = 14;
        let mut edges: Vec<Vec<usize>> = (0..n).combinations(3).filter(|e| e[0] < 2).collect();
        for b in 2..5 {
            for t in (5..n).combinations(2).filter(|t| (t[0] + t[1] + b) % 3 != 0) {
                edges.push(vec![b, t[0], t[1]]);
            }
        }
        let h = Hypergraph::new(3, n, edges).unwrap();
        let mut part = build_partition(&h, &side(n, 5..n), 0.2).unwrap();
        part.a = side(n, 0..2);
        part.b = side(n, 2..5);
        part.t = 2;
        let m1 = step1_m1(&h, &part).unwrap();
        assert_eq!(m1.len(), 2);
        assert!(h.is_valid_matching(&m1));
        assert!(m1.edges().iter().all(|&e| h.edge_mask(e).intersection_len(&part.b) == 1));
    }

    #[test]
    fn m1_empty_when_t_not_positive() {
        let h = barrier(3, 10, 3).unwrap();
        let p = build_partition(&h, &side(10, 3..10), 0.01).unwrap();
        assert!(step1_m1(&h, &p).unwrap().is_empty());
        assert!(step2_m2(&h, &p, &VertexSet::new(10)).unwrap().is_empty());
    }

    #[test]
    fn m2_covers_b() {
        let p = planted_extremal(3, 16, 0.08, 0, 11).unwrap();
        let h = &p.hypergraph;
        let part = build_partition(h, &p.independent, 0.08).unwrap();
        let m1 = step1_m1(h, &part).unwrap();
        let m2 = step2_m2(h, &part, m1.covered()).unwrap();
        let covered = m1.covered().union(m2.covered());
        assert!(part.b.is_subset(&covered));
        assert!(m1.len() + m2.len() <= part.b.len());
        assert!(m2.edges().iter().all(|&e| h.edge_mask(e).intersection_len(&part.b) >= 1));
    }

    #[test]
    fn m3_balances_a_surplus() {
        // every 3-set not inside C = {7..16}: A = {0..6}, surplus 7 - (17-2)/3 = 2
        let c = side(17, 7..17);
        let complete = Hypergraph::complete(3, 17).unwrap();
        assert!(matches!(build_partition(&complete, &c, 0.5), Err(Error::NotIndependent)));
        let sparse = Hypergraph::new(
            3,
            17,
            (0..17).combinations(3).filter(|e| !e.iter().all(|v| c.contains(*v))).collect::<Vec<_>>(),
        )
        .unwrap();
        let p = build_partition(&sparse, &c, 0.2).unwrap();
        assert_eq!(p.a.len(), 7);
        assert_eq!(balance(&sparse, &p, &VertexSet::new(17)), 2);
        let s3 = step3_m3(&sparse, &p, &VertexSet::new(17)).unwrap();
        assert!(s3.matching.len() <= 2);
        let last = *s3.balances.last().unwrap();
        assert!(last == 0 || last == 1);
        for w in s3.balances.windows(2) {
            let drop = w[0] - w[1];
            assert!(drop == 1 || drop == 2, "{:?}", s3.balances);
        }
    }

    #[test]
    fn m3_no_op_at_zero_balance() {
        let h = barrier(3, 10, 3).unwrap();
        let p = build_partition(&h, &side(10, 3..10), 0.01).unwrap();
        let s3 = step3_m3(&h, &p, &VertexSet::new(10)).unwrap();
        assert!(s3.matching.is_empty());
        assert_eq!(s3.balances, vec![0]);
    }

    #[test]
    fn m4_on_dense_instance() {
        // barrier with |A| = 6, n = 19: trims one C vertex, m = 6
        let h = barrier(3, 19, 6).unwrap();
        let p = build_partition(&h, &side(19, 6..19), 0.01).unwrap();
        let s4 = step4_m4(&h, &p, &VertexSet::new(19), SolverBudget::default()).unwrap();
        assert_eq!(s4.m, 6);
        assert_eq!(s4.matching.len(), 6);
        assert!(h.is_valid_matching(&s4.matching));
        assert!(s4.pikhurko_holds);
        assert_eq!((s4.delta_first, s4.delta_rest), (36, 6));
        for &e in s4.matching.edges() {
            assert_eq!(h.edge_mask(e).intersection_len(&p.a), 1);
        }
    }

    #[test]
    fn m4_empty_when_nothing_is_left() {
        let sparse = Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        let p = build_partition(&sparse, &VertexSet::of(4, &[1, 2, 3]), 0.5).unwrap();
        let covered = VertexSet::of(4, &[0, 1, 2]);
        let s4 = step4_m4(&sparse, &p, &covered, SolverBudget::default()).unwrap();
        assert_eq!(s4.m, 0);
        assert!(s4.matching.is_empty());
    }

    #[test]
    fn c_k_values() {
        assert_eq!(c_k(3), BigRational::new(BigInt::from(9), BigInt::from(2)));
        assert_eq!(c_k(4), BigRational::new(BigInt::from(64), BigInt::from(6)));
    }

    #[test]
    fn full_construction_on_barrier() {
        let h = barrier(3, 10, 3).unwrap();
        let run = extremal_matching(&h, &side(10, 3..10), 0.01, SolverBudget::default()).unwrap();
        assert_eq!(run.matching.len(), 3);
        assert!(h.is_valid_matching(&run.matching));
        assert_eq!(has_matching_of_size(&h, 3, SolverBudget::default()).status, SolveStatus::FeasibleFound);
    }

    #[test]
    fn full_construction_with_sparse_side() {
        for seed in 0..6 {
            let p = planted_extremal(3, 16, 0.08, 5, seed).unwrap();
            let run = extremal_matching(&p.hypergraph, &p.independent, 0.08, SolverBudget::default()).unwrap();
            assert_eq!(run.matching.len(), 5);
            assert_eq!(run.staged.sizes.iter().sum::<usize>(), 5);
            assert!(p.hypergraph.is_valid_matching(&run.matching));
        }
    }

    #[test]
    fn construction_errors() {
        let h = barrier(3, 9, 2).unwrap();
        assert!(matches!(
            extremal_matching(&h, &side(9, 2..9), 0.01, SolverBudget::default()),
            Err(Error::DivisibleOrder { .. })
        ));
        let k10 = Hypergraph::complete(3, 10).unwrap();
        assert!(matches!(
            extremal_matching(&k10, &side(10, 0..2), 0.01, SolverBudget::default()),
            Err(Error::TooSmallWitness { .. })
        ));
    }
}
