//! Absorbing edges, the absorption swap, and absorbing matchings.
//!
//! For a (k+1)-set `S`, an edge `e` disjoint from `S` is S-absorbing when
//! there are disjoint edges `e1`, `e2` with `|e1∩S| = k-1`, `|e1∩e| = 1`,
//! `|e2∩S| = 2` and `|e2∩e| = k-2`. Swapping `e` for `e1, e2` in a matching
//! covers all of `S` and releases one vertex of `e`.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, EdgeId, Hypergraph, Matching};
use crate::vertex_set::VertexSet;

/// Largest n for which capabilities of every (k+1)-set are tabulated.
pub const EAGER_CAPABILITY_LIMIT: usize = 40;
const LAZY_PROBES: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorptionCertificate {
    pub s: VertexSet,
    pub e: EdgeId,
    pub e1: EdgeId,
    pub e2: EdgeId,
    /// The vertex of `e` left uncovered by the swap.
    pub leftover: usize,
}

impl AbsorptionCertificate {
    /// Re-checks every defining cardinality directly from the edge sets.
    pub fn validate(&self, h: &Hypergraph) -> bool {
        let k = h.k();
        let n = h.edge_count();
        if [self.e, self.e1, self.e2].iter().any(|id| id.0 >= n) || self.s.len() != k + 1 {
            return false;
        }
        let (e, e1, e2) = (h.edge_mask(self.e), h.edge_mask(self.e1), h.edge_mask(self.e2));
        let all = self.s.union(e);
        let left = all.difference(&e1.union(e2));
        e.is_disjoint(&self.s)
            && e1.intersection_len(&self.s) == k - 1
            && e1.intersection_len(e) == 1
            && e2.intersection_len(&self.s) == 2
            && e2.intersection_len(e) == k - 2
            && e1.is_disjoint(e2)
            && left.len() == 1
            && left.first() == Some(self.leftover)
    }
}

/// Finds the lexicographically least `(e1, e2)` witnessing that `e` is
/// S-absorbing.
pub fn find_absorbing_pair(h: &Hypergraph, e: EdgeId, s: &VertexSet) -> Result<Option<AbsorptionCertificate>> {
    let k = h.k();
    if s.len() != k + 1 || s.iter().any(|v| v >= h.n()) {
        return Err(Error::InvalidSet(format!("absorbed set needs {} vertices in range, got {s:?}", k + 1)));
    }
    if !h.edge_mask(e).is_disjoint(s) {
        return Err(Error::NotDisjoint);
    }
    Ok(absorbing_pair_unchecked(h, e, s))
}

fn absorbing_pair_unchecked(h: &Hypergraph, e: EdgeId, s: &VertexSet) -> Option<AbsorptionCertificate> {
    let k = h.k();
    let ev = h.edge(e);
    let sv = s.to_vec();
    let mut best: Option<(EdgeId, EdgeId, usize)> = None;
    let mut buf = Vec::with_capacity(k);
    // e1 = T ∪ {a} with T a (k-1)-subset of S; e2 = (S \ T) ∪ (e \ {a, b})
    for t in sv.iter().copied().combinations(k - 1) {
        let rest: Vec<usize> = sv.iter().copied().filter(|v| !t.contains(v)).collect();
        for &a in ev {
            buf.clear();
            buf.extend_from_slice(&t);
            buf.push(a);
            buf.sort_unstable();
            let Some(e1) = h.find_edge_of(&buf) else { continue };
            for &b in ev.iter().filter(|&&b| b != a) {
                buf.clear();
                buf.extend_from_slice(&rest);
                buf.extend(ev.iter().copied().filter(|&v| v != a && v != b));
                buf.sort_unstable();
                if let Some(e2) = h.find_edge_of(&buf) {
                    if best.is_none_or(|(b1, b2, _)| (e1, e2) < (b1, b2)) {
                        best = Some((e1, e2, b));
                    }
                }
            }
        }
    }
    best.map(|(e1, e2, leftover)| AbsorptionCertificate { s: *s, e, e1, e2, leftover })
}

pub fn is_absorbing(h: &Hypergraph, e: EdgeId, s: &VertexSet) -> bool {
    h.edge_mask(e).is_disjoint(s) && absorbing_pair_unchecked(h, e, s).is_some()
}

/// Replaces `cert.e` in `m` by `cert.e1` and `cert.e2`.
pub fn absorb(h: &Hypergraph, m: &Matching, cert: &AbsorptionCertificate) -> Result<Matching> {
    if !m.contains(cert.e) {
        return Err(Error::Conflict("absorbing edge is not in the matching".into()));
    }
    if !cert.s.is_disjoint(m.covered()) {
        return Err(Error::Conflict("absorbed set meets the matching".into()));
    }
    if !cert.validate(h) {
        return Err(Error::Conflict("certificate does not validate".into()));
    }
    let others = m.covered().difference(h.edge_mask(cert.e));
    if !others.is_disjoint(h.edge_mask(cert.e1)) || !others.is_disjoint(h.edge_mask(cert.e2)) {
        return Err(Error::Conflict("replacement edges meet other matched edges".into()));
    }
    let mut out = m.clone();
    out.remove(h, cert.e);
    out.push_unchecked(h, cert.e1);
    out.push_unchecked(h, cert.e2);
    Ok(out)
}

/// Number of edges of `m` that are S-absorbing.
pub fn count_absorbing(h: &Hypergraph, m: &Matching, s: &VertexSet) -> usize {
    m.edges().iter().filter(|&&e| is_absorbing(h, e, s)).count()
}

/// Colex ranking of r-subsets of `0..n`.
#[derive(Clone, Debug)]
struct SubsetRanker {
    r: usize,
    table: Vec<Vec<u64>>,
}

impl SubsetRanker {
    fn new(n: usize, r: usize) -> Self {
        let table = (0..=n).map(|v| (0..=r).map(|i| binomial(v, i) as u64).collect()).collect();
        SubsetRanker { r, table }
    }

    fn rank(&self, s: &VertexSet) -> usize {
        s.iter().enumerate().map(|(i, v)| self.table[v][i + 1]).sum::<u64>() as usize
    }

    fn total(&self, n: usize) -> usize {
        self.table[n][self.r] as usize
    }
}

#[derive(Clone, Debug)]
enum Capability {
    /// Count per (k+1)-set, indexed by colex rank.
    Eager { ranker: SubsetRanker, counts: Vec<u32> },
    /// Counted on request.
    Lazy,
}

/// A matching together with how many of its edges absorb each (k+1)-set.
#[derive(Clone, Debug)]
pub struct AbsorbingMatching {
    pub matching: Matching,
    pub threshold: usize,
    capability: Capability,
}

impl AbsorbingMatching {
    pub fn empty(h: &Hypergraph, threshold: usize) -> Self {
        AbsorbingMatching { matching: Matching::new(h.n()), threshold, capability: Capability::Lazy }
    }

    /// Recorded number of S-absorbing edges in the matching.
    pub fn capability(&self, h: &Hypergraph, s: &VertexSet) -> usize {
        match &self.capability {
            Capability::Eager { ranker, counts } => counts[ranker.rank(s)] as usize,
            Capability::Lazy => count_absorbing(h, &self.matching, s),
        }
    }

    /// True when capabilities were tabulated for every (k+1)-set.
    pub fn is_tabulated(&self) -> bool {
        matches!(self.capability, Capability::Eager { .. })
    }

    /// Recounts every tabulated capability from scratch.
    pub fn recount_matches(&self, h: &Hypergraph) -> bool {
        match &self.capability {
            Capability::Eager { ranker, counts } => (0..h.n()).combinations(h.k() + 1).all(|s| {
                let s = VertexSet::of(h.n(), &s);
                counts[ranker.rank(&s)] as usize == count_absorbing(h, &self.matching, &s)
            }),
            Capability::Lazy => true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AbsorbingBuild {
    pub absorbing: AbsorbingMatching,
    /// (k+1)-sets still below threshold; empty on success.
    pub deficient: Vec<VertexSet>,
    /// False when capabilities were not tabulated, so success is unverified.
    pub verified: bool,
    pub warnings: Vec<String>,
}

impl AbsorbingBuild {
    pub fn is_success(&self) -> bool {
        self.deficient.is_empty()
    }
}

/// Default size budget `⌈4·k·threshold·log2 n⌉`.
pub fn default_max_size(k: usize, n: usize, threshold: usize) -> usize {
    (4.0 * k as f64 * threshold as f64 * (n as f64).log2()).ceil() as usize
}

/// Randomised greedy construction of an absorbing matching: edges are drawn
/// without replacement and kept when disjoint from the matching so far and
/// S-absorbing for at least one (k+1)-set `S` still below `threshold`.
pub fn build_absorbing_matching(h: &Hypergraph, threshold: usize, max_size: usize, seed: u64) -> AbsorbingBuild {
    let k = h.k();
    let n = h.n();
    let mut warnings = Vec::new();
    let delta = h.min_codegree();
    if (2 * k * delta) < n {
        warnings.push(format!("minimum codegree {delta} is below n/(2k) = {:.2}", n as f64 / (2 * k) as f64));
    }
    if threshold == 0 {
        return AbsorbingBuild {
            absorbing: AbsorbingMatching::empty(h, 0),
            deficient: Vec::new(),
            verified: true,
            warnings,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<EdgeId> = h.edge_ids().collect();
    order.shuffle(&mut rng);

    if n > EAGER_CAPABILITY_LIMIT {
        return build_lazy(h, threshold, max_size, order, &mut rng, warnings);
    }

    let ranker = SubsetRanker::new(n, k + 1);
    let mut counts = vec![0u32; ranker.total(n)];
    let mut deficient: Vec<VertexSet> = (0..n).combinations(k + 1).map(|s| VertexSet::of(n, &s)).collect();
    let mut matching = Matching::new(n);

    for e in order {
        if deficient.is_empty() || matching.len() >= max_size {
            break;
        }
        let mask = h.edge_mask(e);
        if !mask.is_disjoint(matching.covered()) {
            continue;
        }
        if !deficient.iter().any(|s| is_absorbing(h, e, s)) {
            continue;
        }
        matching.push_unchecked(h, e);
        for s in (0..n).filter(|v| !mask.contains(*v)).combinations(k + 1) {
            let s = VertexSet::of(n, &s);
            if absorbing_pair_unchecked(h, e, &s).is_some() {
                counts[ranker.rank(&s)] += 1;
            }
        }
        deficient.retain(|s| (counts[ranker.rank(s)] as usize) < threshold);
    }

    AbsorbingBuild {
        absorbing: AbsorbingMatching { matching, threshold, capability: Capability::Eager { ranker, counts } },
        deficient,
        verified: true,
        warnings,
    }
}

fn build_lazy(
    h: &Hypergraph,
    threshold: usize,
    max_size: usize,
    order: Vec<EdgeId>,
    rng: &mut ChaCha8Rng,
    mut warnings: Vec<String>,
) -> AbsorbingBuild {
    let n = h.n();
    let k = h.k();
    warnings.push(format!("n = {n} exceeds {EAGER_CAPABILITY_LIMIT}; capabilities are not tabulated"));
    let mut matching = Matching::new(n);
    for e in order {
        if matching.len() >= max_size {
            break;
        }
        let mask = *h.edge_mask(e);
        if !mask.is_disjoint(matching.covered()) {
            continue;
        }
        let outside: Vec<usize> = (0..n).filter(|v| !mask.contains(*v)).collect();
        let useful = (0..LAZY_PROBES).any(|_| {
            let s = VertexSet::of(n, &outside.choose_multiple(rng, k + 1).copied().collect::<Vec<_>>());
            absorbing_pair_unchecked(h, e, &s).is_some()
        });
        if useful {
            matching.push_unchecked(h, e);
        }
    }
    // keep the rng draw count independent of the matching size
    let _ = rng.gen::<u64>();
    AbsorbingBuild {
        absorbing: AbsorbingMatching { matching, threshold, capability: Capability::Lazy },
        deficient: Vec::new(),
        verified: false,
        warnings,
    }
}

#[derive(Clone, Debug)]
pub struct LeftoverAbsorption {
    /// Absorbing edges after the swaps, followed by the edges of `M`.
    pub matching: Matching,
    pub certificates: Vec<AbsorptionCertificate>,
    pub uncovered: VertexSet,
}

/// Repeatedly absorbs (k+1)-subsets of `leftover` into the absorbing
/// matching until at most `k` leftover vertices remain. Each absorbing edge
/// is used at most once. Candidate sets are tried in lexicographic order.
pub fn absorb_leftovers(
    h: &Hypergraph,
    absorbing: &AbsorbingMatching,
    m: &Matching,
    leftover: &VertexSet,
) -> Result<LeftoverAbsorption> {
    let k = h.k();
    let mut combined = absorbing.matching.union(h, m)?;
    if !leftover.is_disjoint(combined.covered()) {
        return Err(Error::Conflict("leftover vertices are already covered".into()));
    }
    let mut pool: Vec<EdgeId> = absorbing.matching.edges().to_vec();
    pool.sort_unstable();
    let mut left = *leftover;
    let mut certificates = Vec::new();

    while left.len() > k {
        let found = left.to_vec().into_iter().combinations(k + 1).find_map(|s| {
            let s = VertexSet::of(h.n(), &s);
            pool.iter().find_map(|&e| absorbing_pair_unchecked(h, e, &s))
        });
        let Some(cert) = found else {
            let least = left.smallest(k + 1).expect("more than k leftovers");
            return Err(Error::ExhaustedCapability(least));
        };
        combined = absorb(h, &combined, &cert)?;
        pool.retain(|&e| e != cert.e);
        left.difference_with(&cert.s);
        left.insert(cert.leftover);
        certificates.push(cert);
    }
    Ok(LeftoverAbsorption { matching: combined, certificates, uncovered: left })
}
