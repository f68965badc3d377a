//! Colorings, DSATUR, and the exact chromatic number.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::invariants::max_clique;

/// Largest palette a [`Coloring`] may use; color masks are one `u128`.
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {0} is not colored")]
    Partial(usize),
    #[error("coloring covers {got} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {color} at vertex {vertex} is outside the palette 1..={k}")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
    #[error("palette size {0} exceeds {MAX_COLORS}")]
    PaletteTooLarge(usize),
    #[error("invariant undefined on the graph with no vertices")]
    EmptyGraph,
}

/// Assignment of colors `1..=k` to vertices. `0` marks an uncolored vertex,
/// which only appears while a coloring is being extended.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    /// All vertices uncolored.
    pub fn uncolored(n: usize, k: usize) -> Self {
        Coloring { colors: vec![0; n], k }
    }

    pub fn from_colors(colors: Vec<usize>, k: usize) -> Result<Self, ColoringError> {
        if k > MAX_COLORS {
            return Err(ColoringError::PaletteTooLarge(k));
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c > k) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, k });
        }
        Ok(Coloring { colors, k })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        match self.colors[v] {
            0 => None,
            c => Some(c),
        }
    }

    /// Sets the color of `v`; `0` uncolors it.
    pub fn set(&mut self, v: usize, color: usize) {
        debug_assert!(color <= self.k);
        self.colors[v] = color;
    }

    pub fn colored(&self) -> VertexSet {
        self.colors.iter().enumerate().filter(|(_, &c)| c != 0).map(|(v, _)| v).collect()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    /// Number of distinct colors in use.
    pub fn used_colors(&self) -> usize {
        self.used_mask().count_ones() as usize
    }

    fn used_mask(&self) -> u128 {
        self.colors.iter().fold(0u128, |m, &c| m | 1 << c) & !1
    }

    /// Bitmask (bit `c` for color `c`) of colors on the colored vertices of `set`.
    pub fn colors_on(&self, set: VertexSet) -> u128 {
        set.iter().fold(0u128, |m, v| m | 1 << self.colors[v]) & !1
    }

    /// Vertices of `set` colored `color`.
    pub fn class_within(&self, set: VertexSet, color: usize) -> VertexSet {
        set.iter().filter(|&v| self.colors[v] == color).collect()
    }

    /// Same coloring with the palette widened or narrowed to `k`.
    pub fn with_palette(mut self, k: usize) -> Result<Self, ColoringError> {
        self.k = k;
        Coloring::from_colors(self.colors, k)
    }
}

fn check_length(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    if c.len() != g.order() {
        return Err(ColoringError::LengthMismatch { expected: g.order(), got: c.len() });
    }
    Ok(())
}

/// True iff no edge joins two vertices of the same color. The coloring must
/// be total.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    check_length(g, c)?;
    if let Some(v) = c.colors.iter().position(|&x| x == 0) {
        return Err(ColoringError::Partial(v));
    }
    Ok(is_proper_partial(g, c))
}

/// Properness restricted to colored vertices.
pub fn is_proper_partial(g: &Graph, c: &Coloring) -> bool {
    g.edges().all(|(u, v)| c.colors[u] == 0 || c.colors[u] != c.colors[v])
}

/// Picks the uncolored vertex of highest saturation, then highest degree,
/// then least index.
fn dsatur_pick(g: &Graph, colors: &[usize], uncolored: VertexSet) -> (usize, u128) {
    let mut best: Option<(usize, usize, usize, u128)> = None;
    for v in uncolored {
        let forbidden = g
            .adjacency(v)
            .iter()
            .fold(0u128, |m, w| m | 1 << colors[w])
            & !1;
        let sat = forbidden.count_ones() as usize;
        let deg = g.degree(v);
        let better = match best {
            None => true,
            Some((_, bs, bd, _)) => (sat, deg) > (bs, bd),
        };
        if better {
            best = Some((v, sat, deg, forbidden));
        }
    }
    let (v, _, _, forbidden) = best.expect("uncolored set is non-empty");
    (v, forbidden)
}

/// DSATUR greedy coloring. The palette is the number of colors used.
pub fn greedy_dsatur(g: &Graph) -> Coloring {
    let n = g.order();
    let mut colors = vec![0; n];
    let mut uncolored = g.vertices();
    while !uncolored.is_empty() {
        let (v, forbidden) = dsatur_pick(g, &colors, uncolored);
        colors[v] = (!forbidden & !1).trailing_zeros() as usize;
        uncolored.remove(v);
    }
    let k = colors.iter().copied().max().unwrap_or(0);
    Coloring { colors, k }
}

struct ExactSearch<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
}

impl ExactSearch<'_> {
    fn solve(&mut self, uncolored: VertexSet, max_used: usize) -> bool {
        if uncolored.is_empty() {
            return true;
        }
        let (v, forbidden) = dsatur_pick(self.g, &self.colors, uncolored);
        // colors above max_used + 1 are interchangeable with max_used + 1
        let limit = self.k.min(max_used + 1);
        for color in 1..=limit {
            if forbidden >> color & 1 == 1 {
                continue;
            }
            self.colors[v] = color;
            if self.solve(uncolored.without(v), max_used.max(color)) {
                return true;
            }
        }
        self.colors[v] = 0;
        false
    }
}

/// Exact search for a coloring with at most `k` colors. A maximum clique is
/// pre-colored `1..=ω` to break palette symmetry.
pub fn k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.order();
    if n == 0 {
        return Some(Coloring { colors: Vec::new(), k });
    }
    if k == 0 {
        return None;
    }
    if k >= n {
        let colors = (1..=n).collect();
        return Some(Coloring { colors, k });
    }
    let clique = max_clique(g).expect("n >= 1");
    if clique.omega > k {
        return None;
    }
    let mut search = ExactSearch { g, k, colors: vec![0; n] };
    for (i, v) in clique.members.iter().enumerate() {
        search.colors[v] = i + 1;
    }
    let rest = g.vertices().difference(clique.members);
    search
        .solve(rest, clique.omega)
        .then_some(Coloring { colors: search.colors, k })
}

/// Exact chromatic number with a witness using exactly that many colors.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Coloring), ColoringError> {
    if g.order() == 0 {
        return Err(ColoringError::EmptyGraph);
    }
    let omega = max_clique(g).expect("n >= 1").omega;
    let greedy = greedy_dsatur(g);
    for k in omega..greedy.palette() {
        if let Some(c) = k_colorable(g, k) {
            return Ok((k, c));
        }
    }
    let k = greedy.palette();
    Ok((k, greedy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::build(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Least k such that some assignment in {1..k}^n is proper.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.order();
        for k in 1..=n {
            let mut assignment = vec![1usize; n];
            loop {
                if g.edges().all(|(u, v)| assignment[u] != assignment[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n && assignment[i] == k {
                    assignment[i] = 1;
                    i += 1;
                }
                if i == n {
                    break;
                }
                assignment[i] += 1;
            }
        }
        n
    }

    fn coloring(colors: &[usize], k: usize) -> Coloring {
        Coloring::from_colors(colors.to_vec(), k).unwrap()
    }

    #[test]
    fn properness() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(is_proper(&k3, &coloring(&[1, 2, 3], 3)), Ok(true));
        assert_eq!(is_proper(&k3, &coloring(&[1, 1, 2], 3)), Ok(false));
        assert_eq!(is_proper(&k3, &coloring(&[1, 0, 2], 3)), Err(ColoringError::Partial(1)));
        assert!(matches!(
            is_proper(&k3, &coloring(&[1, 2], 3)),
            Err(ColoringError::LengthMismatch { .. })
        ));
        let g = petersen();
        let rainbow = coloring(&(1..=10).collect::<Vec<_>>(), 10);
        assert_eq!(is_proper(&g, &rainbow), Ok(true));
        assert!(matches!(
            Coloring::from_colors(vec![1, 4], 3),
            Err(ColoringError::ColorOutOfRange { vertex: 1, color: 4, k: 3 })
        ));
    }

    #[test]
    fn dsatur_examples() {
        assert_eq!(greedy_dsatur(&Graph::complete(5).unwrap()).palette(), 5);
        // 0 -> 1; 1 -> 2 (sat 1, least index); 2 -> 1; 3 -> 2; 4 sees {1, 2} -> 3
        let c5 = greedy_dsatur(&Graph::cycle(5).unwrap());
        assert_eq!(c5.palette(), 3);
        assert_eq!(c5.colors(), &[1, 2, 1, 2, 3]);
        assert_eq!(greedy_dsatur(&Graph::empty(4).unwrap()).palette(), 1);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()).unwrap().0, 3);
        assert_eq!(chromatic_number(&Graph::complete(5).unwrap()).unwrap().0, 5);
        let p = petersen();
        assert_eq!(brute_chromatic(&p), 3);
        let (chi, witness) = chromatic_number(&p).unwrap();
        assert_eq!(chi, 3);
        assert_eq!(is_proper(&p, &witness), Ok(true));
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()), Err(ColoringError::EmptyGraph));
    }

    #[test]
    fn decision_form() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(k_colorable(&c5, 2), None);
        let w = k_colorable(&c5, 3).unwrap();
        assert_eq!(is_proper(&c5, &w), Ok(true));
        let p = petersen();
        let w = k_colorable(&p, 10).unwrap();
        assert_eq!(is_proper(&p, &w), Ok(true));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
                Graph::build(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn exact_matches_brute_force(g in arb_graph(7)) {
            let (chi, witness) = chromatic_number(&g).unwrap();
            prop_assert_eq!(chi, brute_chromatic(&g));
            prop_assert_eq!(is_proper(&g, &witness), Ok(true));
            prop_assert_eq!(witness.used_colors(), chi);
        }

        #[test]
        fn bounds_sandwich(g in arb_graph(12)) {
            let (chi, _) = chromatic_number(&g).unwrap();
            let greedy = greedy_dsatur(&g);
            prop_assert_eq!(is_proper(&g, &greedy), Ok(true));
            prop_assert!(chi <= greedy.palette());
            prop_assert!(chi >= max_clique(&g).unwrap().omega);
        }
    }
}
