//! Canonical labeling and isomorph-free enumeration of triangle-free graphs.
//!
//! Canonical labels come from a search tree of ordered partitions: refine to
//! an equitable partition, individualize each vertex of the smallest
//! non-singleton cell in turn, and recurse. Each leaf is a discrete partition,
//! i.e. a relabeling; the canonical graph is the relabeling with the least
//! adjacency rows. Siblings that are twins (same neighborhood apart from each
//! other) root isomorphic subtrees, so only the first of them is explored.
//!
//! Enumeration grows graphs one vertex at a time. The new vertex is joined to
//! an independent set of the parent, which keeps every child triangle-free,
//! and is required to have minimum degree in the child: every triangle-free
//! graph arises this way from the canonical copy of itself minus a
//! minimum-degree vertex. Duplicates within a level are removed by sorting
//! canonical forms.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;
use crate::invariants::max_degree;

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANON_VERTICES: usize = 16;
/// Largest order accepted by the enumerators.
pub const MAX_ENUM_VERTICES: usize = 11;
/// Largest order accepted by [`canonical_form_exhaustive`].
pub const MAX_EXHAUSTIVE_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical labeling supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("enumeration supports 1 <= n <= {MAX_ENUM_VERTICES}, got {0}")]
    OrderOutOfRange(usize),
}

/// graph6 string of the canonically relabeled graph. Equal forms mean
/// isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbors in every cell. Sub-cells are ordered by that count vector, so
/// the result depends only on the structure, never on vertex labels.
fn refine(g: &Graph, cells: &mut Vec<VertexSet>) {
    loop {
        let mut next = Vec::with_capacity(g.order());
        for &cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            // counts are < 16 and there are at most 16 cells, so 4 bits each fit a u64
            let mut keyed: Vec<(u64, usize)> = cell
                .iter()
                .map(|v| {
                    let nbrs = g.adjacency(v);
                    let sig = cells
                        .iter()
                        .fold(0u64, |sig, c| sig << 4 | nbrs.intersection(*c).len() as u64);
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            for group in keyed.chunk_by(|a, b| a.0 == b.0) {
                next.push(group.iter().map(|&(_, v)| v).collect());
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn twins(g: &Graph, v: usize, w: usize) -> bool {
    g.adjacency(v).without(w) == g.adjacency(w).without(v)
}

struct Canonizer<'a> {
    g: &'a Graph,
    best_rows: Vec<u64>,
    best_order: Vec<usize>,
}

impl Canonizer<'_> {
    fn search(&mut self, mut cells: Vec<VertexSet>) {
        refine(self.g, &mut cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|&(i, c)| (c.len(), i));
        let Some((idx, &cell)) = target else {
            let order: Vec<usize> = cells.iter().map(|c| c.first().expect("non-empty cell")).collect();
            let relabeled = self.g.permuted(&order);
            if self.best_order.is_empty() || relabeled.rows() < self.best_rows.as_slice() {
                self.best_rows = relabeled.rows().to_vec();
                self.best_order = order;
            }
            return;
        };
        let mut explored = VertexSet::EMPTY;
        for v in cell {
            if explored.iter().any(|w| twins(self.g, v, w)) {
                continue;
            }
            let mut child = cells.clone();
            child[idx] = VertexSet::singleton(v);
            child.insert(idx + 1, cell.without(v));
            self.search(child);
            explored.insert(v);
        }
    }
}

/// Canonical vertex order: position `p` of the canonical graph holds vertex
/// `order[p]` of `g`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, CanonError> {
    let n = g.order();
    if n > MAX_CANON_VERTICES {
        return Err(CanonError::TooLarge { n, max: MAX_CANON_VERTICES });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut canonizer = Canonizer { g, best_rows: Vec::new(), best_order: Vec::new() };
    canonizer.search(vec![g.vertices()]);
    Ok(canonizer.best_order)
}

pub fn canonical_graph(g: &Graph) -> Result<Graph, CanonError> {
    Ok(g.permuted(&canonical_labeling(g)?))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    Ok(CanonicalForm(to_graph6(&canonical_graph(g)?)))
}

/// Least graph6 string over all `n!` relabelings. Slow, but obviously an
/// isomorphism invariant; used to cross-check [`canonical_form`].
pub fn canonical_form_exhaustive(g: &Graph) -> Result<CanonicalForm, CanonError> {
    let n = g.order();
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(CanonError::TooLarge { n, max: MAX_EXHAUSTIVE_VERTICES });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = to_graph6(g);
    // Heap's algorithm
    let mut counters = vec![0; n];
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(counters[i], i);
            }
            let s = to_graph6(&g.permuted(&order));
            if s < best {
                best = s;
            }
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm(best))
}

/// Independent sets `s` of `parent` such that a new vertex joined to `s` has
/// minimum degree in the child, i.e. `|s| <= deg(w) + [w in s]` for all `w`.
fn admissible_neighborhoods(parent: &Graph) -> Vec<VertexSet> {
    let degrees = parent.degrees();
    let cap = degrees.iter().min().map_or(0, |d| d + 1);
    let mut out = Vec::new();
    let mut stack = vec![(VertexSet::EMPTY, 0usize)];
    while let Some((set, from)) = stack.pop() {
        let size = set.len();
        let ok = degrees
            .iter()
            .enumerate()
            .all(|(w, &d)| size <= d + set.contains(w) as usize);
        if ok {
            out.push(set);
        }
        if size == cap {
            continue;
        }
        for v in from..parent.order() {
            if parent.adjacency(v).intersection(set).is_empty() {
                stack.push((set.with(v), v + 1));
            }
        }
    }
    out
}

fn children(parent: &Graph) -> Vec<(CanonicalForm, Graph)> {
    let mut out: Vec<(CanonicalForm, Graph)> = admissible_neighborhoods(parent)
        .into_iter()
        .map(|s| {
            let child = parent.extended(s).expect("enumeration stays below the vertex cap");
            let canon = canonical_graph(&child).expect("enumeration stays below the canon cap");
            (CanonicalForm(to_graph6(&canon)), canon)
        })
        .collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

fn next_level(parents: &[Graph]) -> Vec<Graph> {
    let mut all: Vec<(CanonicalForm, Graph)> =
        parents.par_iter().flat_map_iter(children).collect();
    all.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    all.into_iter().map(|(_, g)| g).collect()
}

/// One representative per isomorphism class of triangle-free graphs on
/// `1..=max_n` vertices; entry `i` holds order `i + 1`. Each representative
/// is in canonical labeling and each level is sorted by canonical form.
pub fn enumerate_triangle_free_levels(max_n: usize) -> Result<Vec<Vec<Graph>>, CanonError> {
    if !(1..=MAX_ENUM_VERTICES).contains(&max_n) {
        return Err(CanonError::OrderOutOfRange(max_n));
    }
    let mut levels = vec![vec![Graph::empty(1).expect("one vertex")]];
    while levels.len() < max_n {
        let next = next_level(levels.last().expect("non-empty"));
        levels.push(next);
    }
    Ok(levels)
}

pub fn enumerate_triangle_free(n: usize) -> Result<Vec<Graph>, CanonError> {
    Ok(enumerate_triangle_free_levels(n)?.pop().expect("n >= 1"))
}

/// A corpus member with its canonical graph6 id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusGraph {
    pub id: CanonicalForm,
    pub graph: Graph,
}

fn complements(triangle_free: Vec<Graph>, min_delta: usize) -> Vec<CorpusGraph> {
    triangle_free
        .into_par_iter()
        .map(|g| g.complement())
        .filter(|g| max_degree(g).unwrap_or(0) >= min_delta)
        .map(|graph| CorpusGraph {
            id: canonical_form(&graph).expect("corpus orders are below the canon cap"),
            graph,
        })
        .collect()
}

/// 3K1-free graphs on `n` vertices with maximum degree at least `min_delta`,
/// one per isomorphism class, as complements of the triangle-free classes
/// and in the same order.
pub fn corpus_3k1_free(n: usize, min_delta: usize) -> Result<Vec<CorpusGraph>, CanonError> {
    Ok(complements(enumerate_triangle_free(n)?, min_delta))
}

/// [`corpus_3k1_free`] for every order `1..=max_n`, concatenated in order.
pub fn corpus_3k1_free_up_to(max_n: usize, min_delta: usize) -> Result<Vec<CorpusGraph>, CanonError> {
    Ok(enumerate_triangle_free_levels(max_n)?
        .into_iter()
        .flat_map(|level| complements(level, min_delta))
        .collect())
}
