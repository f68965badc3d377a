//! Constructive Brooks coloring: at most Δ colors for a connected graph that
//! is neither complete nor an odd cycle.
//!
//! Every case reduces to greedy coloring along an order in which each vertex
//! but the last has a later neighbor:
//!
//! - some vertex has degree below Δ: order by decreasing distance from it;
//! - Δ-regular with a cut vertex `c`: color each piece `C_i + c` that way
//!   ending at `c` (which has degree below Δ inside the piece), then permute
//!   each piece's palette so `c` agrees;
//! - Δ-regular and 2-connected: pick `v` with non-adjacent neighbors `a, b`
//!   such that `G - a - b` is connected, give `a` and `b` the first color and
//!   order the rest by decreasing distance from `v`.
//!
//! Δ = 2 regular graphs are even cycles here and get their bipartition.

use thiserror::Error;

use crate::chromatic::{greedy_dsatur, Coloring};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrooksException {
    Complete,
    OddCycle,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrooksError {
    #[error("graph is disconnected; color each component separately")]
    Disconnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("{0:?} graphs need Δ+1 colors; use a rainbow or cycle coloring")]
    Exception(BrooksException),
}

pub fn classify_brooks_exception(g: &Graph) -> Result<BrooksException, BrooksError> {
    let n = g.order();
    if n == 0 {
        return Err(BrooksError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(BrooksError::Disconnected);
    }
    let degrees = g.degrees();
    if degrees.iter().all(|&d| d == n - 1) {
        Ok(BrooksException::Complete)
    } else if n % 2 == 1 && degrees.iter().all(|&d| d == 2) {
        Ok(BrooksException::OddCycle)
    } else {
        Ok(BrooksException::None)
    }
}

/// Vertices of `within` by non-increasing BFS distance from `root`, ties by
/// index; `root` is last. Assumes `within` is connected.
fn order_towards(g: &Graph, root: usize, within: VertexSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    dist[root] = 0;
    let mut frontier = VertexSet::singleton(root);
    let mut seen = frontier;
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = VertexSet::EMPTY;
        for v in frontier {
            next = next.union(g.adjacency(v));
        }
        frontier = next.intersection(within).difference(seen);
        seen = seen.union(frontier);
        for v in frontier {
            dist[v] = d;
        }
    }
    let mut order: Vec<usize> = within.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(dist[v]), v));
    order
}

/// First-fit along `order`, on top of whatever `colors` already holds.
fn greedy_along(g: &Graph, order: &[usize], colors: &mut [usize]) {
    for &v in order {
        let used = g
            .adjacency(v)
            .iter()
            .fold(0u128, |m, w| m | 1 << colors[w]);
        colors[v] = (!used & !1).trailing_zeros() as usize;
    }
}

fn find_cut_vertex(g: &Graph) -> Option<usize> {
    let all = g.vertices();
    (0..g.order()).find(|&c| {
        let rest = all.without(c);
        match rest.first() {
            Some(start) => g.reachable(start, rest) != rest,
            None => false,
        }
    })
}

/// Vertex `v` with non-adjacent neighbors `a < b` such that `G - a - b` is
/// connected; least `(v, a, b)` found by exhaustive scan.
fn find_anchor(g: &Graph) -> Option<(usize, usize, usize)> {
    let all = g.vertices();
    for v in 0..g.order() {
        let nbrs = g.adjacency(v);
        for a in nbrs {
            for b in nbrs.iter().filter(|&b| b > a && !g.has_edge(a, b)) {
                let rest = all.without(a).without(b);
                if g.reachable(v, rest) == rest {
                    return Some((v, a, b));
                }
            }
        }
    }
    None
}

/// Proper coloring with at most Δ colors; palette size is Δ.
pub fn brooks_color(g: &Graph) -> Result<Coloring, BrooksError> {
    match classify_brooks_exception(g)? {
        BrooksException::None => {}
        other => return Err(BrooksError::Exception(other)),
    }
    let n = g.order();
    let degrees = g.degrees();
    let delta = degrees.iter().copied().max().expect("n >= 1");
    let mut colors = vec![0; n];

    if let Some(low) = (0..n).find(|&v| degrees[v] < delta) {
        greedy_along(g, &order_towards(g, low, g.vertices()), &mut colors);
    } else if delta == 2 {
        // even cycle
        let mut parity = vec![0usize; n];
        let mut stack = vec![0];
        parity[0] = 1;
        while let Some(v) = stack.pop() {
            for w in g.adjacency(v) {
                if parity[w] == 0 {
                    parity[w] = 3 - parity[v];
                    stack.push(w);
                }
            }
        }
        colors = parity;
    } else if let Some(cut) = find_cut_vertex(g) {
        let rest = g.vertices().without(cut);
        for piece in g.components_within(rest) {
            let within = piece.with(cut);
            let mut local = vec![0; n];
            greedy_along(g, &order_towards(g, cut, within), &mut local);
            // swap palette so the cut vertex gets color 1 in every piece
            let c = local[cut];
            for v in piece {
                colors[v] = match local[v] {
                    1 => c,
                    x if x == c => 1,
                    x => x,
                };
            }
        }
        colors[cut] = 1;
    } else {
        let (v, a, b) = find_anchor(g).expect("2-connected non-complete regular graph with Δ >= 3");
        colors[a] = 1;
        colors[b] = 1;
        let rest = g.vertices().without(a).without(b);
        greedy_along(g, &order_towards(g, v, rest), &mut colors);
    }

    debug_assert!(colors.iter().all(|&c| (1..=delta).contains(&c)));
    Ok(Coloring::from_colors(colors, delta).expect("colors are within 1..=Δ"))
}

/// Any graph, component by component: Brooks coloring where it applies,
/// `Δ+1` colors on complete and odd-cycle components. Isolated vertices get
/// color 1.
pub fn brooks_color_components(g: &Graph) -> Result<Coloring, BrooksError> {
    if g.order() == 0 {
        return Err(BrooksError::EmptyGraph);
    }
    let mut colors = vec![0; g.order()];
    let mut palette = 1;
    for comp in g.components() {
        let (h, map) = g.induced(comp).expect("component is in range");
        let local = match brooks_color(&h) {
            Ok(c) => c,
            // complete graphs and odd cycles: DSATUR is optimal on both
            Err(BrooksError::Exception(_)) => greedy_dsatur(&h),
            Err(e) => return Err(e),
        };
        palette = palette.max(local.palette());
        for (i, &v) in map.iter().enumerate() {
            colors[v] = local.colors()[i];
        }
    }
    Ok(Coloring::from_colors(colors, palette).expect("colors within the largest palette"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::is_proper;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::build(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    fn check(g: &Graph) {
        let c = brooks_color(g).unwrap();
        assert_eq!(is_proper(g, &c), Ok(true), "{g:?} {c:?}");
        let delta = g.degrees().into_iter().max().unwrap();
        assert!(c.used_colors() <= delta);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_brooks_exception(&Graph::complete(7).unwrap()), Ok(BrooksException::Complete));
        assert_eq!(classify_brooks_exception(&Graph::cycle(9).unwrap()), Ok(BrooksException::OddCycle));
        assert_eq!(classify_brooks_exception(&petersen()), Ok(BrooksException::None));
        assert_eq!(classify_brooks_exception(&Graph::cycle(3).unwrap()), Ok(BrooksException::Complete));
        assert_eq!(
            classify_brooks_exception(&Graph::empty(2).unwrap()),
            Err(BrooksError::Disconnected)
        );
    }

    #[test]
    fn refuses_exceptions() {
        assert_eq!(
            brooks_color(&Graph::complete(4).unwrap()),
            Err(BrooksError::Exception(BrooksException::Complete))
        );
        assert_eq!(
            brooks_color(&Graph::cycle(5).unwrap()),
            Err(BrooksError::Exception(BrooksException::OddCycle))
        );
        assert_eq!(
            brooks_color(&Graph::empty(1).unwrap()),
            Err(BrooksError::Exception(BrooksException::Complete))
        );
    }

    #[test]
    fn petersen_three_colors() {
        let c = brooks_color(&petersen()).unwrap();
        assert_eq!(c.palette(), 3);
        check(&petersen());
    }

    #[test]
    fn diamond() {
        // K4 minus the edge 2-3
        let g = Graph::build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        check(&g);
    }

    #[test]
    fn regular_cases() {
        check(&Graph::cycle(6).unwrap());
        check(&Graph::cycle(4).unwrap());
        check(&Graph::path(5).unwrap());
        // K_{3,3}: 3-regular, 2-connected
        check(&Graph::build(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap());
    }

    #[test]
    fn regular_with_cut_vertex() {
        // two K5-minus-two-edges blocks joined through vertex 0; 4-regular
        let mut edges = Vec::new();
        for side in [1usize, 6] {
            let (a, b, c, d, e) = (side, side + 1, side + 2, side + 3, side + 4);
            // K5 on a..e minus edges a-b and c-d gives degrees a,b,c,d = 3, e = 4
            for (x, y) in [(a, c), (a, d), (a, e), (b, c), (b, d), (b, e), (c, e), (d, e)] {
                edges.push((x, y));
            }
            edges.push((0, a));
            edges.push((0, b));
            edges.push((c, d));
        }
        let g = Graph::build(11, edges).unwrap();
        let degrees = g.degrees();
        assert!(degrees.iter().all(|&d| d == 4), "{degrees:?}");
        assert!(find_cut_vertex(&g).is_some());
        check(&g);
    }

    #[test]
    fn components_mixed() {
        // K4 + C5 + P3 + K1 on 13 vertices
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((a, b));
            }
        }
        edges.extend((0..5).map(|i| (4 + i, 4 + (i + 1) % 5)));
        edges.extend([(9, 10), (10, 11)]);
        let g = Graph::build(13, edges).unwrap();
        let c = brooks_color_components(&g).unwrap();
        assert_eq!(is_proper(&g, &c), Ok(true));
        assert_eq!(c.used_colors(), 4);
        assert_eq!(c.get(12), Some(1));
    }
}
