//! k-uniform hypergraphs, matchings, and the degree queries built on them.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Default cap on the edge count produced by [`Hypergraph::add_universal_vertices`].
pub const DEFAULT_EDGE_LIMIT: usize = 2_000_000;

/// Index of an edge in its host hypergraph. Ids follow the lexicographic
/// order of the edges' sorted vertex lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Immutable k-uniform hypergraph on vertices `0..n`.
#[derive(Clone)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    verts: Vec<usize>,
    masks: Vec<VertexSet>,
    incidence: Vec<Vec<EdgeId>>,
    index: HashMap<VertexSet, EdgeId>,
}

impl Hypergraph {
    /// Builds a hypergraph from edge vertex lists. Each edge is sorted; edges
    /// are put in lexicographic order. Duplicate edges are rejected.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(Error::BadParameters(format!("uniformity k = {k} must be at least 2")));
        }
        if n < k {
            return Err(Error::BadParameters(format!("n = {n} must be at least k = {k}")));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!("n = {n} exceeds the cap of {MAX_VERTICES}")));
        }
        let mut list: Vec<Vec<usize>> = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::InvalidEdge { edge: e, reason: format!("expected {k} vertices") });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge { edge: e, reason: "repeated vertex".into() });
            }
            if e[k - 1] >= n {
                return Err(Error::InvalidEdge { edge: e, reason: format!("vertex out of range 0..{n}") });
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(Self::from_sorted_unique(k, n, list))
    }

    fn from_sorted_unique(k: usize, n: usize, list: Vec<Vec<usize>>) -> Self {
        let mut verts = Vec::with_capacity(list.len() * k);
        let mut masks = Vec::with_capacity(list.len());
        let mut incidence = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(list.len());
        for (i, e) in list.iter().enumerate() {
            let mask = VertexSet::of(n, e);
            for &v in e {
                incidence[v].push(EdgeId(i));
            }
            verts.extend_from_slice(e);
            masks.push(mask);
            index.insert(mask, EdgeId(i));
        }
        Hypergraph { k, n, verts, masks, incidence, index }
    }

    /// The complete k-graph on `n` vertices.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, Vec::<Vec<usize>>::new())?;
        let total = binomial(n, k);
        if total > DEFAULT_EDGE_LIMIT as u128 {
            return Err(Error::TooLarge(format!("complete {k}-graph on {n} vertices has {total} edges")));
        }
        Ok(Self::from_sorted_unique(k, n, (0..n).combinations(k).collect()))
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.masks.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.masks.len()).map(EdgeId)
    }

    /// Sorted vertices of an edge.
    #[inline]
    pub fn edge(&self, id: EdgeId) -> &[usize] {
        &self.verts[id.0 * self.k..(id.0 + 1) * self.k]
    }

    #[inline]
    pub fn edge_mask(&self, id: EdgeId) -> &VertexSet {
        &self.masks[id.0]
    }

    /// Edges containing `v`, in id order.
    #[inline]
    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.verts.chunks_exact(self.k)
    }

    /// Looks up the id of the edge with exactly the given vertex set.
    pub fn find_edge(&self, set: &VertexSet) -> Option<EdgeId> {
        if set.capacity() == self.n {
            self.index.get(set).copied()
        } else {
            let mut s = VertexSet::new(self.n);
            for v in set {
                if v >= self.n {
                    return None;
                }
                s.insert(v);
            }
            self.index.get(&s).copied()
        }
    }

    pub fn find_edge_of(&self, vertices: &[usize]) -> Option<EdgeId> {
        if vertices.len() != self.k || vertices.iter().any(|&v| v >= self.n) {
            return None;
        }
        self.index.get(&VertexSet::of(self.n, vertices)).copied()
    }

    pub fn contains_edge(&self, vertices: &[usize]) -> bool {
        self.find_edge_of(vertices).is_some()
    }

    /// All vertices.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n) {
            Some(v) => Err(Error::InvalidSet(format!("vertex {v} out of range 0..{}", self.n))),
            None => Ok(()),
        }
    }

    /// Number of edges containing `s`, for `1 <= |s| <= k-1`.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        self.check_set(s)?;
        if s.is_empty() || s.len() >= self.k {
            return Err(Error::InvalidSet(format!("degree needs 1..={} vertices, got {}", self.k - 1, s.len())));
        }
        let pivot = s.first().expect("non-empty");
        Ok(self.incidence[pivot].iter().filter(|&&e| s.is_subset(&self.masks[e.0])).count())
    }

    /// Minimum of [`degree`](Self::degree) over all d-subsets of the vertex set.
    /// With `d = k-1` this is the minimum codegree.
    pub fn min_d_degree(&self, d: usize) -> Result<usize> {
        if d == 0 || d >= self.k {
            return Err(Error::InvalidArity { d, max: self.k - 1 });
        }
        let counts = self.d_degree_table(d);
        if (counts.len() as u128) < binomial(self.n, d) {
            return Ok(0);
        }
        Ok(counts.values().copied().min().unwrap_or(0))
    }

    /// Minimum codegree.
    pub fn min_codegree(&self) -> usize {
        self.min_d_degree(self.k - 1).expect("k >= 2")
    }

    /// Degrees of every d-set that lies in at least one edge.
    pub fn d_degree_table(&self, d: usize) -> HashMap<VertexSet, usize> {
        let mut counts: HashMap<VertexSet, usize> = HashMap::new();
        for e in self.edges() {
            for sub in e.iter().copied().combinations(d) {
                *counts.entry(VertexSet::of(self.n, &sub)).or_default() += 1;
            }
        }
        counts
    }

    /// `N(S) = {v : S ∪ {v} ∈ E}` for a (k-1)-set `S`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        if s.len() != self.k - 1 {
            return Err(Error::InvalidSet(format!("neighborhood needs {} vertices, got {}", self.k - 1, s.len())));
        }
        let pivot = s.first().expect("k >= 2");
        let mut out = VertexSet::new(self.n);
        for &e in &self.incidence[pivot] {
            let m = &self.masks[e.0];
            if s.is_subset(m) {
                out.union_with(&m.difference(s));
            }
        }
        Ok(out)
    }

    /// True iff no edge lies entirely inside `w`.
    pub fn is_independent(&self, w: &VertexSet) -> Result<bool> {
        self.check_set(w)?;
        if w.len() < self.k {
            return Ok(true);
        }
        Ok(!self.masks.iter().any(|m| m.is_subset(w)))
    }

    pub fn is_valid_matching(&self, m: &Matching) -> bool {
        let mut seen = VertexSet::new(self.n);
        for &e in &m.edges {
            if e.0 >= self.edge_count() {
                return false;
            }
            let mask = &self.masks[e.0];
            if !seen.is_disjoint(mask) {
                return false;
            }
            seen.union_with(mask);
        }
        seen == m.covered
    }

    /// Vertices not covered by `m`.
    pub fn uncovered(&self, m: &Matching) -> Result<VertexSet> {
        if !self.is_valid_matching(m) {
            return Err(Error::InvalidMatching("not a matching of this hypergraph".into()));
        }
        Ok(VertexSet::full(self.n).difference(&m.covered))
    }

    /// Adds `c` new vertices `n..n+c` and every k-set meeting them.
    pub fn add_universal_vertices(&self, c: usize) -> Result<Hypergraph> {
        self.add_universal_vertices_with_limit(c, DEFAULT_EDGE_LIMIT)
    }

    pub fn add_universal_vertices_with_limit(&self, c: usize, edge_limit: usize) -> Result<Hypergraph> {
        if c == 0 {
            return Ok(self.clone());
        }
        let n2 = self.n + c;
        if n2 > MAX_VERTICES {
            return Err(Error::TooLarge(format!("n + c = {n2} exceeds {MAX_VERTICES}")));
        }
        let added = binomial(n2, self.k) - binomial(self.n, self.k);
        let total = added.saturating_add(self.edge_count() as u128);
        if total > edge_limit as u128 {
            return Err(Error::TooLarge(format!("{total} edges exceed the limit of {edge_limit}")));
        }
        let mut list: Vec<Vec<usize>> = self.edges().map(|e| e.to_vec()).collect();
        list.extend((0..n2).combinations(self.k).filter(|e| e[self.k - 1] >= self.n));
        list.sort_unstable();
        Ok(Self::from_sorted_unique(self.k, n2, list))
    }

    /// Subhypergraph induced on `w`, relabeled to `0..|w|` in increasing order.
    pub fn induced(&self, w: &VertexSet) -> Result<(Hypergraph, Relabeling)> {
        self.check_set(w)?;
        if w.len() < self.k {
            return Err(Error::TooSmall { size: w.len(), k: self.k });
        }
        let relabel = Relabeling::new(self.n, w);
        let list: Vec<Vec<usize>> = self
            .masks
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_subset(w))
            .map(|(i, _)| self.edge(EdgeId(i)).iter().map(|&v| relabel.to_child(v).unwrap()).collect())
            .collect();
        // order-preserving relabeling keeps the lexicographic order
        Ok((Self::from_sorted_unique(self.k, w.len(), list), relabel))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(k={}, n={}, m={})", self.k, self.n, self.edge_count())
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.verts == other.verts
    }
}

impl Eq for Hypergraph {}

/// Order-preserving map between a parent vertex set and the `0..len`
/// labels of an induced subhypergraph.
#[derive(Clone, Debug)]
pub struct Relabeling {
    to_parent: Vec<usize>,
    to_child: Vec<Option<usize>>,
}

impl Relabeling {
    fn new(parent_n: usize, w: &VertexSet) -> Self {
        let to_parent = w.to_vec();
        let mut to_child = vec![None; parent_n];
        for (i, &v) in to_parent.iter().enumerate() {
            to_child[v] = Some(i);
        }
        Relabeling { to_parent, to_child }
    }

    pub fn to_parent(&self, child: usize) -> usize {
        self.to_parent[child]
    }

    pub fn to_child(&self, parent: usize) -> Option<usize> {
        self.to_child.get(parent).copied().flatten()
    }

    pub fn lift_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.to_child.len());
        for v in s {
            out.insert(self.to_parent[v]);
        }
        out
    }

    /// Maps a child set into child labels; vertices outside the child are dropped.
    pub fn restrict_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.to_parent.len());
        for v in s {
            if let Some(c) = self.to_child(v) {
                out.insert(c);
            }
        }
        out
    }

    /// Lifts a matching of the child hypergraph to edge ids of the parent.
    pub fn lift_matching(&self, child: &Hypergraph, parent: &Hypergraph, m: &Matching) -> Matching {
        let mut out = Matching::new(parent.n());
        for &e in m.edges() {
            let lifted: Vec<usize> = child.edge(e).iter().map(|&v| self.to_parent[v]).collect();
            let id = parent.find_edge_of(&lifted).expect("induced edges exist in the parent");
            out.push_unchecked(parent, id);
        }
        out
    }
}

/// Pairwise-disjoint edges of a host hypergraph, by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<EdgeId>,
    covered: VertexSet,
}

impl Matching {
    /// Empty matching for a host on `n` vertices.
    pub fn new(n: usize) -> Self {
        Matching { edges: Vec::new(), covered: VertexSet::new(n) }
    }

    pub fn from_edges(h: &Hypergraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut m = Matching::new(h.n());
        for e in edges {
            m.try_push(h, e)?;
        }
        Ok(m)
    }

    /// Builds a matching from vertex lists, looking each edge up in `h`.
    pub fn from_vertex_lists<E: AsRef<[usize]>>(h: &Hypergraph, edges: &[E]) -> Result<Self> {
        let mut m = Matching::new(h.n());
        for e in edges {
            let mut e = e.as_ref().to_vec();
            e.sort_unstable();
            let id = h.find_edge_of(&e).ok_or_else(|| Error::InvalidMatching(format!("{e:?} is not an edge")))?;
            m.try_push(h, id)?;
        }
        Ok(m)
    }

    pub fn try_push(&mut self, h: &Hypergraph, e: EdgeId) -> Result<()> {
        if e.0 >= h.edge_count() {
            return Err(Error::InvalidMatching(format!("edge id {} out of range", e.0)));
        }
        if !self.covered.is_disjoint(h.edge_mask(e)) {
            return Err(Error::InvalidMatching(format!("edge {:?} overlaps the matching", h.edge(e))));
        }
        self.push_unchecked(h, e);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, h: &Hypergraph, e: EdgeId) {
        debug_assert!(self.covered.is_disjoint(h.edge_mask(e)));
        self.edges.push(e);
        self.covered.union_with(h.edge_mask(e));
    }

    /// Removes `e`, returning whether it was present.
    pub fn remove(&mut self, h: &Hypergraph, e: EdgeId) -> bool {
        match self.edges.iter().position(|&x| x == e) {
            Some(i) => {
                self.edges.remove(i);
                self.covered.difference_with(h.edge_mask(e));
                true
            }
            None => false,
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn covered(&self) -> &VertexSet {
        &self.covered
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// Union of two disjoint matchings.
    pub fn union(&self, h: &Hypergraph, other: &Matching) -> Result<Matching> {
        let mut out = self.clone();
        for &e in other.edges() {
            out.try_push(h, e)?;
        }
        Ok(out)
    }

    pub fn vertex_lists(&self, h: &Hypergraph) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| h.edge(e).to_vec()).collect()
    }
}
