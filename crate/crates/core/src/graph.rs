//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Every adjacency row is a single `u64`, so neighborhood algebra is a handful
//! of bit operations. Vertices are always the dense range `0..n`.

use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows are not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
}

/// A subset of `0..64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Least member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn bound(self) -> usize {
        MAX_VERTICES - self.0.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;

    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Repeated pairs are ignored.
    pub fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph directly from adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let range = VertexSet::full(n).bits();
        for (u, &row) in rows.iter().enumerate() {
            if row >> u & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
            if row & !range != 0 {
                let vertex = VertexSet::from_bits(row & !range).first().unwrap_or(n);
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            for v in VertexSet::from_bits(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Ok(Graph::empty(n)?.complement())
    }

    /// Cycle `0-1-..-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::build(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::build(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        Graph::build(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood of `u`; the caller guarantees `u < n`.
    pub fn adjacency(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u])
    }

    fn check_vertex(&self, u: usize) -> Result<(), GraphError> {
        if u < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: u, n: self.n })
        }
    }

    pub fn neighbors(&self, u: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(self.adjacency(u))
    }

    pub fn closed_neighborhood(&self, u: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(self.adjacency(u).with(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|u| !self.adj[u] & full & !(1u64 << u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `set`. The returned map sends each new vertex to
    /// the original vertex it came from; new labels follow increasing
    /// original order.
    pub fn induced(&self, set: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(bad) = set.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let map = set.to_vec();
        let adj = map
            .iter()
            .map(|&old_u| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &old_v)| self.adj[old_u] >> old_v & 1 == 1)
                    .fold(0u64, |row, (new_v, _)| row | 1 << new_v)
            })
            .collect();
        Ok((Graph { n: map.len(), adj }, map))
    }

    /// Relabels so that vertex `order[p]` becomes vertex `p`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut position = vec![0; self.n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let adj = order
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v])
                    .iter()
                    .fold(0u64, |row, w| row | 1 << position[w])
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Adds a vertex `n` adjacent to `nbrs`.
    pub fn extended(&self, nbrs: VertexSet) -> Result<Graph, GraphError> {
        if self.n == MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n + 1));
        }
        if let Some(bad) = nbrs.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let new = self.n;
        let mut adj = self.adj.clone();
        for v in nbrs {
            adj[v] |= 1 << new;
        }
        adj.push(nbrs.bits());
        Ok(Graph { n: new + 1, adj })
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reachable(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adjacency(v));
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// least member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reachable(v, within);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reachable(0, self.vertices()) == self.vertices()
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| set.without(v).is_subset(self.adjacency(v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
