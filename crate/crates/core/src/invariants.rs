//! Exact structural invariants: maximum degree, triangles, 3K1-freeness and
//! maximum cliques.

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("invariant is undefined on the graph with no vertices")]
    EmptyGraph,
    #[error("graph is not 3K1-free: {0:?} is an independent set")]
    Not3K1Free([usize; 3]),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set {0:?} is not a clique")]
    NotAClique(VertexSet),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A maximum clique together with its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueWitness {
    pub members: VertexSet,
    pub omega: usize,
}

pub fn max_degree(g: &Graph) -> Result<usize, InvariantError> {
    (0..g.order())
        .map(|u| g.degree(u))
        .max()
        .ok_or(InvariantError::EmptyGraph)
}

/// Lexicographically least triangle, if any.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for a in 0..g.order() {
        let above_a = g.adjacency(a).iter().filter(|&b| b > a);
        for b in above_a {
            let common = g.adjacency(a).intersection(g.adjacency(b));
            if let Some(c) = common.iter().find(|&c| c > b) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Lexicographically least independent set of size three, if any.
pub fn find_independent_triple(g: &Graph) -> Option<[usize; 3]> {
    find_triangle(&g.complement())
}

/// True iff `g` has no independent set of three vertices.
pub fn is_3k1_free(g: &Graph) -> bool {
    find_independent_triple(g).is_none()
}

/// Greedy sequential coloring of `cand` in `order`, as used by the MCQ
/// family of clique solvers. Returns the candidates sorted by color class
/// with each one's class number (1-based), non-decreasing.
fn color_sort(g: &Graph, cand: VertexSet, order: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(cand.len());
    let mut uncolored: Vec<usize> = order.iter().copied().filter(|&v| cand.contains(v)).collect();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class = VertexSet::EMPTY;
        uncolored.retain(|&v| {
            if g.adjacency(v).intersection(class).is_empty() {
                class.insert(v);
                out.push((v, color));
                false
            } else {
                true
            }
        });
    }
    out
}

/// Vertices of `within` ordered by non-increasing core number: the reverse
/// of a smallest-last (degeneracy) elimination order.
fn degeneracy_order(g: &Graph, within: VertexSet) -> Vec<usize> {
    let mut rest = within;
    let mut elimination = Vec::with_capacity(within.len());
    while !rest.is_empty() {
        let v = rest
            .iter()
            .min_by_key(|&v| (g.adjacency(v).intersection(rest).len(), v))
            .expect("non-empty");
        elimination.push(v);
        rest.remove(v);
    }
    elimination.reverse();
    elimination
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    best: VertexSet,
    /// Stop as soon as a clique of this size is found.
    target: usize,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: VertexSet, cand: VertexSet) {
        let colored = color_sort(self.g, cand, &self.order);
        let mut remaining = cand;
        for &(v, color) in colored.iter().rev() {
            if current.len() + color <= self.best.len() || self.best.len() >= self.target {
                return;
            }
            let grown = current.with(v);
            let next = remaining.intersection(self.g.adjacency(v));
            if next.is_empty() {
                if grown.len() > self.best.len() {
                    self.best = grown;
                }
            } else {
                self.expand(grown, next);
            }
            remaining.remove(v);
        }
    }
}

/// Largest clique inside `within`, stopping early once one of size `target`
/// is found.
fn clique_within(g: &Graph, within: VertexSet, target: usize) -> VertexSet {
    if within.is_empty() {
        return VertexSet::EMPTY;
    }
    let mut search = CliqueSearch {
        g,
        order: degeneracy_order(g, within),
        best: VertexSet::singleton(within.first().expect("non-empty")),
        target,
    };
    search.expand(VertexSet::EMPTY, within);
    search.best
}

/// Clique number of the subgraph induced by `within`.
pub fn clique_number_within(g: &Graph, within: VertexSet) -> usize {
    clique_within(g, within, usize::MAX).len()
}

/// Exact maximum clique by branch and bound. Among all maximum cliques the
/// lexicographically least member list is returned.
pub fn max_clique(g: &Graph) -> Result<CliqueWitness, InvariantError> {
    if g.order() == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    let omega = clique_number_within(g, g.vertices());

    // Fix members one at a time, least first, keeping a clique of size omega reachable.
    let mut chosen = VertexSet::EMPTY;
    let mut cand = g.vertices();
    while chosen.len() < omega {
        let need = omega - chosen.len();
        let v = cand
            .iter()
            .find(|&v| {
                let rest = cand.intersection(g.adjacency(v)).difference(VertexSet::full(v + 1));
                need == 1 || clique_within(g, rest, need - 1).len() >= need - 1
            })
            .expect("a clique of size omega extends the current prefix");
        chosen.insert(v);
        cand = cand.intersection(g.adjacency(v)).difference(VertexSet::full(v + 1));
    }
    Ok(CliqueWitness { members: chosen, omega })
}

/// Checks that the vertices outside the closed neighborhood of `u` form a
/// clique and that there are at most `omega` of them.
pub fn check_statement_i(g: &Graph, u: usize) -> Result<bool, InvariantError> {
    let closed = g.closed_neighborhood(u)?;
    if let Some(triple) = find_independent_triple(g) {
        return Err(InvariantError::Not3K1Free(triple));
    }
    let omega = max_clique(g)?.omega;
    Ok(statement_i_holds(g, closed, omega))
}

/// [`check_statement_i`] with the precondition and `omega` supplied by the caller.
pub fn statement_i_holds(g: &Graph, closed_neighborhood: VertexSet, omega: usize) -> bool {
    let outside = g.vertices().difference(closed_neighborhood);
    g.is_clique(outside) && omega >= outside.len()
}

/// Member of the clique of maximum degree, least index on ties.
pub fn max_degree_vertex_in_clique(g: &Graph, clique: VertexSet) -> Result<usize, InvariantError> {
    if let Some(bad) = clique.difference(g.vertices()).first() {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n: g.order() }.into());
    }
    if clique.is_empty() {
        return Err(InvariantError::EmptySet);
    }
    if !g.is_clique(clique) {
        return Err(InvariantError::NotAClique(clique));
    }
    let best = clique
        .iter()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("non-empty");
    Ok(best)
}
