//! Graphs, flag complexes, facet-given complexes and finite windows of
//! periodic complexes.
//!
//! A [`FlagComplex`] is stored as its 1-skeleton; simplices are the cliques of
//! that graph and are only materialised on demand. Subcomplexes (spans, links)
//! keep the vertex ids of their parent so distances can be compared across
//! them.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{Verdict, Witness};

/// Distance value used for vertices in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Vertex count at or below which a complex caches one breadth-first row per
/// source.
pub const DEFAULT_CACHE_THRESHOLD: usize = 2000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Nonempty, sorted, duplicate-free vertex set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `true` when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Simple undirected graph on an arbitrary sorted set of vertex ids.
///
/// Internally every vertex has a local index (its position in the sorted id
/// list), so neighbour lists sorted by local index are also sorted by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    adj: Vec<Vec<u32>>,
    dense: bool,
}

impl Graph {
    pub fn from_edges(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut ids: Vec<VertexId> = vertices.into_iter().collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        let mut g = Graph::empty(ids);
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let i = g.idx(u).ok_or(Error::UnknownVertex(u))?;
            let j = g.idx(v).ok_or(Error::UnknownVertex(v))?;
            g.adj[i].push(j as u32);
            g.adj[j].push(i as u32);
        }
        g.normalize();
        Ok(g)
    }

    /// Builds a graph from explicit neighbour lists, rejecting self-loops and
    /// asymmetric entries.
    pub fn from_adjacency(adjacency: &BTreeMap<VertexId, Vec<VertexId>>) -> Result<Self> {
        let mut g = Graph::empty(adjacency.keys().copied().collect());
        let mut listed = BTreeSet::new();
        for (&u, nbrs) in adjacency {
            for &v in nbrs {
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                if !adjacency.contains_key(&v) {
                    return Err(Error::UnknownVertex(v));
                }
                listed.insert((u, v));
            }
        }
        for &(u, v) in &listed {
            if !listed.contains(&(v, u)) {
                return Err(Error::Asymmetric(u, v));
            }
            if u < v {
                let i = g.idx(u).expect("key");
                let j = g.idx(v).expect("key");
                g.adj[i].push(j as u32);
                g.adj[j].push(i as u32);
            }
        }
        g.normalize();
        Ok(g)
    }

    fn empty(ids: Vec<VertexId>) -> Self {
        let dense = ids.iter().enumerate().all(|(i, v)| v.0 as usize == i);
        let adj = vec![Vec::new(); ids.len()];
        Graph { ids, adj, dense }
    }

    fn normalize(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.idx(v).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        let i = self.idx(v).ok_or(Error::UnknownVertex(v))?;
        Ok(self.adj[i].iter().map(|&j| self.ids[j as usize]).collect())
    }

    pub fn degree(&self, v: VertexId) -> Option<usize> {
        self.idx(v).map(|i| self.adj[i].len())
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        match (self.idx(u), self.idx(v)) {
            (Some(i), Some(j)) => self.adj_idx(i, j),
            _ => false,
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(i, list)| {
            list.iter()
                .filter(move |&&j| (j as usize) > i)
                .map(move |&j| (self.ids[i], self.ids[j as usize]))
        })
    }

    pub(crate) fn idx(&self, v: VertexId) -> Option<usize> {
        if self.dense {
            let i = v.0 as usize;
            (i < self.ids.len()).then_some(i)
        } else {
            self.ids.binary_search(&v).ok()
        }
    }

    pub(crate) fn id(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    pub(crate) fn nbrs(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub(crate) fn adj_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    /// Induced subgraph on the local indices with `keep[i]`; ids are reused.
    pub(crate) fn induced(&self, keep: &[bool]) -> Graph {
        let mut remap = vec![u32::MAX; self.len()];
        let mut ids = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                remap[i] = ids.len() as u32;
                ids.push(self.ids[i]);
            }
        }
        let mut g = Graph::empty(ids);
        for (i, &k) in keep.iter().enumerate() {
            if !k {
                continue;
            }
            let ni = remap[i] as usize;
            g.adj[ni] = self.adj[i]
                .iter()
                .filter(|&&j| keep[j as usize])
                .map(|&j| remap[j as usize])
                .collect();
        }
        g
    }

    /// Breadth-first distances from local index `src`, optionally stopping
    /// once `stop` has been reached.
    pub(crate) fn bfs(&self, src: usize, stop: Option<usize>) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.len()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(i) = queue.pop_front() {
            if Some(i) == stop {
                break;
            }
            let d = dist[i] + 1;
            for &j in &self.adj[i] {
                let j = j as usize;
                if dist[j] == UNREACHABLE {
                    dist[j] = d;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                comp.push(self.ids[i]);
                for &j in &self.adj[i] {
                    if !seen[j as usize] {
                        seen[j as usize] = true;
                        stack.push(j as usize);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(0, None).iter().all(|&d| d != UNREACHABLE)
    }
}

/// Which vertices and distances of a complex are exact for the object it
/// stands for.
///
/// `Full` complexes are finite objects in their own right. `Window` complexes
/// are balls cut out of an infinite periodic complex: only vertices marked
/// trusted are quantified over, and only distances up to `margin` are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Full,
    Window {
        trusted: Vec<bool>,
        margin: u32,
        basepoint: Option<VertexId>,
    },
}

/// Per-source breadth-first rows, filled lazily and at most once per row.
#[derive(Debug, Default)]
pub struct DistanceOracle {
    rows: Vec<OnceLock<Box<[u32]>>>,
}

impl DistanceOracle {
    fn new(n: usize, threshold: usize) -> Self {
        let rows = if n <= threshold {
            (0..n).map(|_| OnceLock::new()).collect()
        } else {
            Vec::new()
        };
        DistanceOracle { rows }
    }

    pub fn is_caching(&self) -> bool {
        !self.rows.is_empty()
    }
}

/// Distance value tagged with whether it is exact for the parent complex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustedDistance {
    pub value: Option<u32>,
    pub trusted: bool,
}

/// A flag simplicial complex, stored as its 1-skeleton.
#[derive(Debug)]
pub struct FlagComplex {
    graph: Graph,
    region: Region,
    threshold: usize,
    oracle: DistanceOracle,
}

impl Clone for FlagComplex {
    fn clone(&self) -> Self {
        FlagComplex {
            graph: self.graph.clone(),
            region: self.region.clone(),
            threshold: self.threshold,
            oracle: DistanceOracle::new(self.graph.len(), self.threshold),
        }
    }
}

impl PartialEq for FlagComplex {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.region == other.region
    }
}

/// Wraps a validated graph as the flag complex of its cliques.
pub fn build_flag_complex(g: Graph) -> FlagComplex {
    FlagComplex::new(g)
}

impl FlagComplex {
    pub fn new(graph: Graph) -> Self {
        let n = graph.len();
        FlagComplex {
            graph,
            region: Region::Full,
            threshold: DEFAULT_CACHE_THRESHOLD,
            oracle: DistanceOracle::new(n, DEFAULT_CACHE_THRESHOLD),
        }
    }

    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let g = Graph::from_edges(
            (0..n).map(VertexId),
            edges.iter().map(|&(u, v)| (VertexId(u), VertexId(v))),
        )?;
        Ok(FlagComplex::new(g))
    }

    /// Switches the all-pairs cache on for complexes with at most `threshold`
    /// vertices.
    pub fn with_cache_threshold(mut self, threshold: usize) -> Self {
        self.threshold = threshold;
        self.oracle = DistanceOracle::new(self.graph.len(), threshold);
        self
    }

    pub fn with_region(mut self, region: Region) -> Result<Self> {
        if let Region::Window { trusted, basepoint, .. } = &region {
            if trusted.len() != self.graph.len() {
                return Err(Error::InvalidParameter(format!(
                    "trust mask has {} entries for {} vertices",
                    trusted.len(),
                    self.graph.len()
                )));
            }
            if let Some(b) = basepoint {
                if !self.graph.contains(*b) {
                    return Err(Error::UnknownVertex(*b));
                }
            }
        }
        self.region = region;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn oracle(&self) -> &DistanceOracle {
        &self.oracle
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        self.graph.vertices()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.graph.contains(v)
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.graph.adjacent(u, v)
    }

    pub fn is_window(&self) -> bool {
        matches!(self.region, Region::Window { .. })
    }

    pub fn margin(&self) -> Option<u32> {
        match &self.region {
            Region::Full => None,
            Region::Window { margin, .. } => Some(*margin),
        }
    }

    pub fn basepoint(&self) -> Option<VertexId> {
        match &self.region {
            Region::Full => None,
            Region::Window { basepoint, .. } => *basepoint,
        }
    }

    pub fn is_trusted(&self, v: VertexId) -> bool {
        self.graph.idx(v).is_some_and(|i| self.trusted_idx(i))
    }

    pub fn trusted_vertices(&self) -> Vec<VertexId> {
        (0..self.len())
            .filter(|&i| self.trusted_idx(i))
            .map(|i| self.graph.id(i))
            .collect()
    }

    pub(crate) fn trusted_idx(&self, i: usize) -> bool {
        match &self.region {
            Region::Full => true,
            Region::Window { trusted, .. } => trusted[i],
        }
    }

    pub(crate) fn trust_mask(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.trusted_idx(i)).collect()
    }

    /// Whether a distance value `d` between local indices `i` and `j` is
    /// exact for the parent.
    pub(crate) fn distance_trusted(&self, i: usize, j: usize, d: u32) -> bool {
        match &self.region {
            Region::Full => true,
            Region::Window { trusted, margin, .. } => trusted[i] && trusted[j] && d <= *margin,
        }
    }

    pub(crate) fn row(&self, i: usize) -> Cow<'_, [u32]> {
        match self.oracle.rows.get(i) {
            Some(cell) => Cow::Borrowed(cell.get_or_init(|| self.graph.bfs(i, None).into())),
            None => Cow::Owned(self.graph.bfs(i, None)),
        }
    }

    pub(crate) fn dist_idx(&self, i: usize, j: usize) -> u32 {
        match self.oracle.rows.get(i) {
            Some(cell) => cell.get_or_init(|| self.graph.bfs(i, None).into())[j],
            None => self.graph.bfs(i, Some(j))[j],
        }
    }

    fn index(&self, v: VertexId) -> Result<usize> {
        self.graph.idx(v).ok_or(Error::UnknownVertex(v))
    }

    /// Length of a shortest 1-skeleton path; `None` across components.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Option<u32>> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        let d = self.dist_idx(i, j);
        Ok((d != UNREACHABLE).then_some(d))
    }

    pub fn trusted_distance(&self, u: VertexId, v: VertexId) -> Result<TrustedDistance> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        let d = self.dist_idx(i, j);
        Ok(TrustedDistance {
            value: (d != UNREACHABLE).then_some(d),
            trusted: if d == UNREACHABLE {
                !self.is_window()
            } else {
                self.distance_trusted(i, j, d)
            },
        })
    }

    /// Lexicographically least shortest path from `u` to `v`.
    pub fn geodesic(&self, u: VertexId, v: VertexId) -> Result<Option<Vec<VertexId>>> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        Ok(self.geodesic_idx(i, j).map(|p| p.into_iter().map(|k| self.graph.id(k)).collect()))
    }

    pub(crate) fn geodesic_idx(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let to_target = self.row(j);
        if to_target[i] == UNREACHABLE {
            return None;
        }
        let mut path = vec![i];
        let mut cur = i;
        while cur != j {
            let want = to_target[cur] - 1;
            cur = self.graph.nbrs(cur)
                .iter()
                .map(|&k| k as usize)
                .find(|&k| to_target[k] == want)
                .expect("distance-decreasing neighbour exists");
            path.push(cur);
        }
        Some(path)
    }

    pub fn is_clique(&self, vertices: &[VertexId]) -> bool {
        let idx: Option<Vec<usize>> = vertices.iter().map(|&v| self.graph.idx(v)).collect();
        match idx {
            Some(idx) => self.is_clique_idx(&idx),
            None => false,
        }
    }

    pub(crate) fn is_clique_idx(&self, idx: &[usize]) -> bool {
        idx.iter().enumerate().all(|(a, &i)| {
            idx[a + 1..].iter().all(|&j| i != j && self.graph.adj_idx(i, j))
        })
    }

    /// Full subcomplex spanned by `vertices`; ids and trust flags carry over.
    pub fn span(&self, vertices: &[VertexId]) -> Result<FlagComplex> {
        let mut keep = vec![false; self.len()];
        for &v in vertices {
            keep[self.index(v)?] = true;
        }
        Ok(self.span_mask(&keep))
    }

    pub(crate) fn span_mask(&self, keep: &[bool]) -> FlagComplex {
        let graph = self.graph.induced(keep);
        let region = match &self.region {
            Region::Full => Region::Full,
            Region::Window { trusted, margin, basepoint } => Region::Window {
                trusted: trusted.iter().zip(keep).filter(|(_, &k)| k).map(|(&t, _)| t).collect(),
                margin: *margin,
                basepoint: basepoint.filter(|b| graph.contains(*b)),
            },
        };
        let n = graph.len();
        FlagComplex {
            graph,
            region,
            threshold: self.threshold,
            oracle: DistanceOracle::new(n, self.threshold),
        }
    }

    /// Link of a simplex: the full subcomplex on the common neighbours of its
    /// vertices.
    pub fn link(&self, s: &Simplex) -> Result<FlagComplex> {
        let idx: Vec<usize> = s.vertices().iter().map(|&v| self.index(v)).collect::<Result<_>>()?;
        if !self.is_clique_idx(&idx) {
            return Err(Error::NotASimplex(s.vertices().to_vec()));
        }
        Ok(self.span_mask(&self.link_mask(&idx)))
    }

    pub(crate) fn link_mask(&self, idx: &[usize]) -> Vec<bool> {
        let mut keep = vec![false; self.len()];
        let (first, rest) = idx.split_first().expect("nonempty simplex");
        for &c in self.graph.nbrs(*first) {
            let c = c as usize;
            if rest.iter().all(|&r| self.graph.adj_idx(r, c)) {
                keep[c] = true;
            }
        }
        keep
    }

    /// Every clique (simplex) whose vertices satisfy `mask`, in
    /// lexicographic order of local indices.
    pub(crate) fn cliques_idx(&self, mask: Option<&[bool]>) -> Vec<Vec<usize>> {
        let ok = |i: usize| mask.is_none_or(|m| m[i]);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for v in 0..self.len() {
            if !ok(v) {
                continue;
            }
            let cand: Vec<usize> = self.graph.nbrs(v)
                .iter()
                .map(|&j| j as usize)
                .filter(|&j| j > v && ok(j))
                .collect();
            stack.push(v);
            self.extend_cliques(&mut stack, &cand, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_cliques(&self, stack: &mut Vec<usize>, cand: &[usize], out: &mut Vec<Vec<usize>>) {
        out.push(stack.clone());
        for (a, &c) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[a + 1..]
                .iter()
                .copied()
                .filter(|&d| self.graph.adj_idx(c, d))
                .collect();
            stack.push(c);
            self.extend_cliques(stack, &next, out);
            stack.pop();
        }
    }

    /// All simplices (cliques), sorted lexicographically.
    pub fn simplices(&self) -> Vec<Simplex> {
        self.cliques_idx(None)
            .into_iter()
            .map(|c| Simplex(c.into_iter().map(|i| self.graph.id(i)).collect()))
            .collect()
    }

    /// Maximal cliques, sorted lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.len()).collect();
        bron_kerbosch(&self.graph, &mut Vec::new(), all, Vec::new(), &mut out);
        let mut facets: Vec<Simplex> = out
            .into_iter()
            .map(|c| Simplex::new(c.into_iter().map(|i| self.graph.id(i))).expect("nonempty"))
            .collect();
        facets.sort();
        facets
    }

    pub fn to_facet_complex(&self) -> FacetComplex {
        FacetComplex::new(self.facets())
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.adj_idx(u, v)).count())
        .expect("nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.adj_idx(pivot, v)).collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.adj_idx(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.adj_idx(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// A simplicial complex given by its maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetComplex {
    facets: Vec<Simplex>,
}

impl FacetComplex {
    /// Drops every facet contained in another so the facets form an antichain.
    pub fn new(mut facets: Vec<Simplex>) -> Self {
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        facets.dedup();
        let mut kept: Vec<Simplex> = Vec::with_capacity(facets.len());
        for f in facets {
            if !kept.iter().any(|k| f.is_face_of(k)) {
                kept.push(f);
            }
        }
        kept.sort();
        FacetComplex { facets: kept }
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> =
            self.facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        set.into_iter().collect()
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    pub fn skeleton(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for f in &self.facets {
            let v = f.vertices();
            for a in 0..v.len() {
                for b in a + 1..v.len() {
                    edges.insert((v[a], v[b]));
                }
            }
        }
        Graph::from_edges(self.vertices(), edges).expect("facet edges are well formed")
    }
}

/// Yes iff `fc` equals the clique complex of its own 1-skeleton. A No carries
/// a clique of the skeleton that is not a simplex of `fc`.
pub fn is_flag(fc: &FacetComplex) -> Verdict {
    let clique = FlagComplex::new(fc.skeleton());
    match clique.facets().into_iter().find(|c| !fc.contains_simplex(c)) {
        Some(c) => Verdict::no(Witness::Clique(c)),
        None => Verdict::yes(),
    }
}

/// Infinite periodic complexes that can be realised as finite windows.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodicParent {
    /// Triangular lattice in axial coordinates `(q, r)`.
    TriangularLattice,
    /// `A_k`: vertices the integers, `a ~ b` iff `0 < |a - b| <= k`.
    Line { k: u32 },
}

pub type Coord = (i64, i64);

const HEX_OFFSETS: [Coord; 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

impl PeriodicParent {
    pub fn neighbors(&self, c: Coord) -> Vec<Coord> {
        match self {
            PeriodicParent::TriangularLattice => {
                HEX_OFFSETS.iter().map(|(dq, dr)| (c.0 + dq, c.1 + dr)).collect()
            }
            PeriodicParent::Line { k } => {
                let k = *k as i64;
                (-k..=k).filter(|&d| d != 0).map(|d| (c.0 + d, 0)).collect()
            }
        }
    }

    /// Closed-form graph distance in the infinite parent.
    pub fn distance(&self, a: Coord, b: Coord) -> u64 {
        match self {
            PeriodicParent::TriangularLattice => hex_distance(b.0 - a.0, b.1 - a.1),
            PeriodicParent::Line { k } => (b.0 - a.0).unsigned_abs().div_ceil(*k as u64),
        }
    }

    pub fn origin(&self) -> Coord {
        (0, 0)
    }

    fn ball(&self, radius: u32) -> Vec<Coord> {
        let r = radius as i64;
        match self {
            PeriodicParent::TriangularLattice => {
                let mut out = Vec::new();
                for row in -r..=r {
                    for q in -r..=r {
                        if hex_distance(q, row) <= radius as u64 {
                            out.push((q, row));
                        }
                    }
                }
                out
            }
            PeriodicParent::Line { k } => {
                let n = r * *k as i64;
                (-n..=n).map(|a| (a, 0)).collect()
            }
        }
    }
}

pub fn hex_distance(dq: i64, dr: i64) -> u64 {
    (dq.unsigned_abs() + dr.unsigned_abs() + (dq + dr).unsigned_abs()) / 2
}

/// A finite ball `B_R(basepoint)` of an infinite periodic complex.
///
/// A vertex is trusted iff it lies within `R - m` of the basepoint, and a
/// distance is trusted iff both endpoints are trusted and the value is at
/// most `m`. For a ball of a vertex-transitive parent, such a value is the
/// distance in the parent: a parent geodesic of length at most `m` between
/// trusted vertices never leaves the ball.
#[derive(Clone, Debug)]
pub struct WindowView {
    parent: PeriodicParent,
    basepoint: VertexId,
    radius: u32,
    margin: u32,
    coords: Vec<Coord>,
    lookup: HashMap<Coord, VertexId>,
    complex: FlagComplex,
}

impl WindowView {
    /// Realises the ball of the given radius around the parent's origin.
    /// Vertex ids are assigned row-major: by `r`, then by `q`.
    pub fn realize(parent: PeriodicParent, radius: u32, margin: u32) -> Result<Self> {
        if margin > radius {
            return Err(Error::InvalidParameter(format!(
                "margin {margin} exceeds radius {radius}"
            )));
        }
        if let PeriodicParent::Line { k: 0 } = parent {
            return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
        }
        let mut coords = parent.ball(radius);
        coords.sort_by_key(|&(q, r)| (r, q));
        let lookup: HashMap<Coord, VertexId> = coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, VertexId(i as u32)))
            .collect();
        let mut edges = Vec::new();
        for (i, &c) in coords.iter().enumerate() {
            for nb in parent.neighbors(c) {
                if let Some(&j) = lookup.get(&nb) {
                    if (i as u32) < j.0 {
                        edges.push((VertexId(i as u32), j));
                    }
                }
            }
        }
        let graph = Graph::from_edges((0..coords.len() as u32).map(VertexId), edges)?;
        let basepoint = lookup[&parent.origin()];
        let from_base = graph.bfs(basepoint.0 as usize, None);
        let trusted = from_base.iter().map(|&d| d <= radius - margin).collect();
        let complex = FlagComplex::new(graph).with_region(Region::Window {
            trusted,
            margin,
            basepoint: Some(basepoint),
        })?;
        Ok(WindowView { parent, basepoint, radius, margin, coords, lookup, complex })
    }

    pub fn parent(&self) -> PeriodicParent {
        self.parent
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn into_complex(self) -> FlagComplex {
        self.complex
    }

    pub fn coord(&self, v: VertexId) -> Option<Coord> {
        self.coords.get(v.0 as usize).copied()
    }

    pub fn vertex_at(&self, c: Coord) -> Option<VertexId> {
        self.lookup.get(&c).copied()
    }

    pub fn trusted_distance(&self, u: VertexId, v: VertexId) -> Result<TrustedDistance> {
        self.complex.trusted_distance(u, v)
    }

    /// Partial vertex map induced by a map on parent coordinates; defined
    /// where the image lies inside the window.
    pub fn coordinate_map(&self, f: impl Fn(Coord) -> Coord) -> Vec<(VertexId, VertexId)> {
        self.coords
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| self.vertex_at(f(c)).map(|w| (VertexId(i as u32), w)))
            .collect()
    }
}

/// Trusted-distance answer for windows; exposed for symmetry with
/// [`FlagComplex::trusted_distance`].
pub fn trusted_distance(w: &WindowView, u: VertexId, v: VertexId) -> Result<TrustedDistance> {
    w.trusted_distance(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Answer;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn cycle(n: u32) -> FlagComplex {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FlagComplex::from_edges(n, &edges).unwrap()
    }

    fn octahedron() -> FlagComplex {
        let mut edges = Vec::new();
        for a in 0..6u32 {
            for b in a + 1..6 {
                if a / 2 != b / 2 {
                    edges.push((a, b));
                }
            }
        }
        FlagComplex::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn rejects_malformed_adjacency() {
        assert_eq!(FlagComplex::from_edges(3, &[(1, 1)]).unwrap_err(), Error::SelfLoop(v(1)));
        let mut adj = BTreeMap::new();
        adj.insert(v(0), vec![v(1)]);
        adj.insert(v(1), vec![]);
        assert_eq!(Graph::from_adjacency(&adj).unwrap_err(), Error::Asymmetric(v(0), v(1)));
        assert_eq!(
            FlagComplex::from_edges(2, &[(0, 5)]).unwrap_err(),
            Error::UnknownVertex(v(5))
        );
    }

    #[test]
    fn clique_complexes_of_small_graphs() {
        let k3 = FlagComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.facets(), vec![Simplex::new([v(0), v(1), v(2)]).unwrap()]);
        let c4 = cycle(4);
        let facets = c4.facets();
        assert_eq!(facets.len(), 4);
        assert!(facets.iter().all(|f| f.len() == 2));
        let oct = octahedron();
        let facets = oct.facets();
        assert_eq!(facets.len(), 8);
        assert!(facets.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn flagness_of_facet_complexes() {
        let s = |vs: &[u32]| Simplex::new(vs.iter().map(|&i| v(i))).unwrap();
        let hollow = FacetComplex::new(vec![s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]);
        let verdict = is_flag(&hollow);
        assert_eq!(verdict.answer, Answer::No);
        assert_eq!(verdict.witness, Some(Witness::Clique(s(&[0, 1, 2]))));

        let full = FacetComplex::new(vec![s(&[0, 1, 2]), s(&[0, 1])]);
        assert_eq!(full.facets().len(), 1);
        assert_eq!(is_flag(&full).answer, Answer::Yes);

        let tetra_boundary =
            FacetComplex::new(vec![s(&[0, 1, 2]), s(&[0, 1, 3]), s(&[0, 2, 3]), s(&[1, 2, 3])]);
        let verdict = is_flag(&tetra_boundary);
        assert_eq!(verdict.witness, Some(Witness::Clique(s(&[0, 1, 2, 3]))));
    }

    #[test]
    fn links_and_spans() {
        let oct = octahedron();
        let link = oct.link(&Simplex::vertex(v(0))).unwrap();
        assert_eq!(link.vertices(), &[v(2), v(3), v(4), v(5)]);
        assert_eq!(link.graph().edge_count(), 4);
        assert!(link.graph().vertices().iter().all(|&u| link.graph().degree(u) == Some(2)));

        let k4 = FlagComplex::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let edge_link = k4.link(&Simplex::new([v(0), v(1)]).unwrap()).unwrap();
        assert_eq!(edge_link.vertices(), &[v(2), v(3)]);
        assert!(edge_link.adjacent(v(2), v(3)));

        let poles = oct.span(&[v(0), v(1)]).unwrap();
        assert_eq!(poles.graph().edge_count(), 0);
        assert_eq!(oct.span(oct.vertices()).unwrap(), oct);
        assert_eq!(oct.span(&[v(3)]).unwrap().len(), 1);
        assert_eq!(oct.span(&[v(9)]).unwrap_err(), Error::UnknownVertex(v(9)));
        assert!(oct.link(&Simplex::new([v(0), v(1)]).unwrap()).is_err());
    }

    #[test]
    fn distances_and_geodesics() {
        let c6 = cycle(6);
        assert_eq!(c6.distance(v(2), v(2)).unwrap(), Some(0));
        assert_eq!(c6.distance(v(0), v(3)).unwrap(), Some(3));
        assert_eq!(c6.geodesic(v(0), v(3)).unwrap(), Some(vec![v(0), v(1), v(2), v(3)]));
        let two = FlagComplex::from_edges(2, &[]).unwrap();
        assert_eq!(two.distance(v(0), v(1)).unwrap(), None);
        let uncached = cycle(6).with_cache_threshold(0);
        assert!(!uncached.oracle().is_caching());
        assert_eq!(uncached.distance(v(5), v(2)).unwrap(), Some(3));
    }

    #[test]
    fn window_sizes_and_trust() {
        let w = WindowView::realize(PeriodicParent::TriangularLattice, 2, 1).unwrap();
        assert_eq!(w.complex().len(), 19);
        let base = w.basepoint();
        assert_eq!(w.trusted_distance(base, base).unwrap(), TrustedDistance {
            value: Some(0),
            trusted: true
        });
        let w = WindowView::realize(PeriodicParent::TriangularLattice, 10, 4).unwrap();
        let base = w.basepoint();
        let target = w.vertex_at((2, 1)).unwrap();
        let d = w.trusted_distance(base, target).unwrap();
        assert_eq!(d, TrustedDistance { value: Some(3), trusted: true });
        let t = w.vertex_at((3, 0)).unwrap();
        assert_eq!(w.trusted_distance(base, t).unwrap().value, Some(3));
        // Two trusted vertices at distance m + 1 = 5.
        let a = w.vertex_at((-2, 0)).unwrap();
        let b = w.vertex_at((3, 0)).unwrap();
        assert!(w.complex().is_trusted(a) && w.complex().is_trusted(b));
        assert_eq!(w.trusted_distance(a, b).unwrap(), TrustedDistance {
            value: Some(5),
            trusted: false
        });
    }
}
