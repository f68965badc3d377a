//! Recoloring moves and the coloring-extension engine.
//!
//! Two kinds of move act on a proper (possibly partial) coloring: giving a
//! vertex a color absent from its neighborhood, and swapping the two colors
//! on a Kempe component. Both keep the coloring proper.
//!
//! [`extend_coloring`] takes a `k`-coloring of `G - u` and tries, in order:
//! a free color at `u`; recoloring a neighbor whose color is unique in
//! `N(u)`; a Kempe swap on a component through such a neighbor; a bounded
//! depth-first search over move sequences; and finally an exact
//! `k`-coloring of the whole graph. [`color_3k1_free`] drives it by deleting
//! minimum-degree vertices and reinserting them in reverse.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brooks::{classify_brooks_exception, BrooksException};
use crate::chromatic::{chromatic_number, is_proper_partial, k_colorable, Coloring, ColoringError, MAX_COLORS};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::invariants::{is_3k1_free, max_clique, max_degree};

/// Minimum Δ for which the `max{ω, Δ-1}` palette is targeted.
pub const MIN_DELTA_FOR_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KempeError {
    #[error("colors of a Kempe pair must differ, got {0} twice")]
    EqualColors(usize),
    #[error("vertex {vertex} has color {color:?}, not one of {pair:?}")]
    ColorNotInPair { vertex: usize, color: Option<usize>, pair: (usize, usize) },
    #[error("Kempe component is stale for the current coloring")]
    StaleComponent,
    #[error("color {color} is not free at vertex {vertex}")]
    ColorNotFree { vertex: usize, color: usize },
    #[error("color {color} is outside the palette 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("palette size must be in 1..={MAX_COLORS}, got {0}")]
    BadPalette(usize),
    #[error("vertex {0} must be colored")]
    Uncolored(usize),
    #[error("coloring is not proper")]
    Improper,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A connected component of the subgraph induced by two color classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KempeComponent {
    members: VertexSet,
    colors: (usize, usize),
}

impl KempeComponent {
    pub fn members(&self) -> VertexSet {
        self.members
    }

    /// The color pair, smaller color first.
    pub fn color_pair(&self) -> (usize, usize) {
        self.colors
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// Give `vertex` a color absent from its colored neighbors.
    RecolorFree { vertex: usize, color: usize },
    /// Exchange the two colors on a Kempe component.
    KempeSwap(KempeComponent),
}

impl Move {
    /// Applies the move, refusing any application that could break
    /// properness.
    pub fn apply(&self, g: &Graph, c: &mut Coloring) -> Result<(), KempeError> {
        match self {
            Move::RecolorFree { vertex, color } => {
                let (v, color) = (*vertex, *color);
                if v >= g.order() {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() }.into());
                }
                if color == 0 || color > c.palette() {
                    return Err(KempeError::ColorOutOfRange { color, k: c.palette() });
                }
                if c.colors_on(g.adjacency(v)) >> color & 1 == 1 {
                    return Err(KempeError::ColorNotFree { vertex: v, color });
                }
                c.set(v, color);
                Ok(())
            }
            Move::KempeSwap(comp) => {
                *c = kempe_swap(g, c, comp)?;
                Ok(())
            }
        }
    }
}

/// Colors in `1..=k` absent from the colored neighbors of `v`.
pub fn free_colors(g: &Graph, c: &Coloring, v: usize, k: usize) -> Vec<usize> {
    let used = c.colors_on(g.adjacency(v));
    (1..=k).filter(|&col| used >> col & 1 == 0).collect()
}

fn least_free_color(g: &Graph, c: &Coloring, v: usize, k: usize) -> Option<usize> {
    free_colors(g, c, v, k).first().copied()
}

fn check_pair(c: &Coloring, v: usize, i: usize, j: usize) -> Result<(), KempeError> {
    if i == j {
        return Err(KempeError::EqualColors(i));
    }
    let color = c.get(v);
    if color != Some(i) && color != Some(j) {
        return Err(KempeError::ColorNotInPair { vertex: v, color, pair: (i, j) });
    }
    Ok(())
}

fn pair_class(g: &Graph, c: &Coloring, i: usize, j: usize) -> VertexSet {
    let all = g.vertices();
    c.class_within(all, i).union(c.class_within(all, j))
}

/// The `{i, j}`-component containing `v`.
pub fn kempe_component(
    g: &Graph,
    c: &Coloring,
    v: usize,
    i: usize,
    j: usize,
) -> Result<KempeComponent, KempeError> {
    if v >= g.order() {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() }.into());
    }
    check_pair(c, v, i, j)?;
    let members = g.reachable(v, pair_class(g, c, i, j));
    Ok(KempeComponent { members, colors: (i.min(j), i.max(j)) })
}

/// Exchanges the component's two colors on its members. The component must
/// still be a full component of the current coloring.
pub fn kempe_swap(g: &Graph, c: &Coloring, comp: &KempeComponent) -> Result<Coloring, KempeError> {
    let (i, j) = comp.colors;
    let Some(first) = comp.members.first() else {
        return Err(KempeError::StaleComponent);
    };
    if comp.members.bound() > g.order() || c.len() != g.order() {
        return Err(KempeError::StaleComponent);
    }
    if comp.members.iter().any(|v| c.get(v) != Some(i) && c.get(v) != Some(j)) {
        return Err(KempeError::StaleComponent);
    }
    if g.reachable(first, pair_class(g, c, i, j)) != comp.members {
        return Err(KempeError::StaleComponent);
    }
    let mut out = c.clone();
    for v in comp.members {
        out.set(v, if c.get(v) == Some(i) { j } else { i });
    }
    Ok(out)
}

/// Shortest path from `a` to `b` whose vertices alternate between colors
/// `i` and `j`, or `None` when they lie in different `{i, j}`-components.
pub fn ij_path_between(
    g: &Graph,
    c: &Coloring,
    a: usize,
    b: usize,
    i: usize,
    j: usize,
) -> Result<Option<Vec<usize>>, KempeError> {
    for v in [a, b] {
        if v >= g.order() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() }.into());
        }
        check_pair(c, v, i, j)?;
    }
    let within = pair_class(g, c, i, j);
    let mut parent = vec![usize::MAX; g.order()];
    parent[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut x = b;
            while x != a {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Ok(Some(path));
        }
        for w in g.adjacency(v).intersection(within) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

/// Neighbors of `u` whose color appears exactly once in `N(u)`.
fn uniquely_colored_neighbors(g: &Graph, c: &Coloring, u: usize) -> Vec<usize> {
    let nbrs = g.adjacency(u).intersection(c.colored());
    nbrs.iter()
        .filter(|&v| {
            let color = c.colors()[v];
            c.class_within(nbrs, color).len() == 1
        })
        .collect()
}

/// If a neighbor `v` of the uncolored vertex `u` has a color `i` unique in
/// `N(u)` and some other free color `j`, recolor `v` to `j` and `u` to `i`.
pub fn rule_unique_color_swap(g: &Graph, c: &Coloring, u: usize, k: usize) -> Option<Vec<Move>> {
    for v in uniquely_colored_neighbors(g, c, u) {
        let i = c.colors()[v];
        if let Some(j) = free_colors(g, c, v, k).into_iter().find(|&j| j != i) {
            return Some(vec![
                Move::RecolorFree { vertex: v, color: j },
                Move::RecolorFree { vertex: u, color: i },
            ]);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionResult {
    ExtendedByRule,
    ExtendedBySearch,
    FallbackExact,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionOutcome {
    pub result: ExtensionResult,
    pub moves: Vec<Move>,
    pub coloring: Coloring,
}

/// Limits for the move search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub depth: usize,
    /// Candidate moves tried per level.
    pub branching: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { depth: 4, branching: 16 }
    }
}

struct Extender<'a> {
    g: &'a Graph,
    active: VertexSet,
    u: usize,
    k: usize,
    budget: SearchBudget,
}

impl Extender<'_> {
    fn finish(&self, mut c: Coloring, mut moves: Vec<Move>, color: usize, result: ExtensionResult) -> ExtensionOutcome {
        let last = Move::RecolorFree { vertex: self.u, color };
        last.apply(self.g, &mut c).expect("color was checked free");
        moves.push(last);
        ExtensionOutcome { result, moves, coloring: c }
    }

    fn run(&self, c: Coloring) -> ExtensionOutcome {
        let (g, u, k) = (self.g, self.u, self.k);

        if let Some(color) = least_free_color(g, &c, u, k) {
            return self.finish(c, Vec::new(), color, ExtensionResult::ExtendedByRule);
        }

        if let Some(moves) = rule_unique_color_swap(g, &c, u, k) {
            let mut next = c.clone();
            for mv in &moves {
                mv.apply(g, &mut next).expect("rule moves are valid");
            }
            return ExtensionOutcome { result: ExtensionResult::ExtendedByRule, moves, coloring: next };
        }

        if let Some(outcome) = self.chain_swap(&c) {
            return outcome;
        }

        let mut path = Vec::new();
        let mut visited = HashSet::from([c.colors().to_vec()]);
        let mut work = c.clone();
        if let Some(color) = self.search(&mut work, self.budget.depth, &mut path, &mut visited) {
            return self.finish(work, path, color, ExtensionResult::ExtendedBySearch);
        }

        if let Some(coloring) = self.exact(&c) {
            return ExtensionOutcome { result: ExtensionResult::FallbackExact, moves: Vec::new(), coloring };
        }

        ExtensionOutcome { result: ExtensionResult::Failed, moves: Vec::new(), coloring: c }
    }

    /// Swap the `{i, j}`-component through a neighbor whose color `i` is
    /// unique in `N(u)`; succeeds when that frees a color at `u`.
    fn chain_swap(&self, c: &Coloring) -> Option<ExtensionOutcome> {
        for v in uniquely_colored_neighbors(self.g, c, self.u) {
            let i = c.colors()[v];
            for j in (1..=self.k).filter(|&j| j != i) {
                let comp = kempe_component(self.g, c, v, i, j).expect("v is colored i");
                let mv = Move::KempeSwap(comp);
                let mut next = c.clone();
                mv.apply(self.g, &mut next).expect("fresh component");
                if let Some(color) = least_free_color(self.g, &next, self.u, self.k) {
                    return Some(self.finish(next, vec![mv], color, ExtensionResult::ExtendedByRule));
                }
            }
        }
        None
    }

    /// Recolorings of neighbors of `u`, then non-trivial Kempe swaps through
    /// them; least vertex and least color first, capped at the branching
    /// budget.
    fn candidates(&self, c: &Coloring) -> Vec<Move> {
        let nbrs = self.g.adjacency(self.u).intersection(c.colored());
        let mut out = Vec::new();
        for w in nbrs {
            let own = c.colors()[w];
            for color in free_colors(self.g, c, w, self.k) {
                if color != own {
                    out.push(Move::RecolorFree { vertex: w, color });
                }
            }
        }
        let mut seen = HashSet::new();
        for w in nbrs {
            let i = c.colors()[w];
            for j in (1..=self.k).filter(|&j| j != i) {
                let comp = kempe_component(self.g, c, w, i, j).expect("w is colored i");
                if comp.members.len() > 1 && seen.insert(comp.clone()) {
                    out.push(Move::KempeSwap(comp));
                }
            }
        }
        out.truncate(self.budget.branching);
        out
    }

    fn search(
        &self,
        c: &mut Coloring,
        depth: usize,
        path: &mut Vec<Move>,
        visited: &mut HashSet<Vec<usize>>,
    ) -> Option<usize> {
        if depth == 0 {
            return None;
        }
        for mv in self.candidates(c) {
            let mut next = c.clone();
            mv.apply(self.g, &mut next).expect("candidate moves are valid");
            if !visited.insert(next.colors().to_vec()) {
                continue;
            }
            path.push(mv);
            let found = least_free_color(self.g, &next, self.u, self.k)
                .or_else(|| self.search(&mut next, depth - 1, path, visited));
            if found.is_some() {
                *c = next;
                return found;
            }
            path.pop();
        }
        None
    }

    /// Exact `k`-coloring of the active subgraph.
    fn exact(&self, c: &Coloring) -> Option<Coloring> {
        let (sub, map) = self.g.induced(self.active).expect("active vertices are in range");
        let local = k_colorable(&sub, self.k)?;
        let mut out = Coloring::uncolored(self.g.order(), self.k);
        for (new, &old) in map.iter().enumerate() {
            out.set(old, local.colors()[new]);
        }
        debug_assert_eq!(out.colored(), self.active);
        debug_assert!(c.colored().is_subset(self.active));
        Some(out)
    }
}

/// Extends a `k`-coloring of `G - u` to `G`. Any color already on `u` is
/// ignored; every other vertex must be colored from `1..=k` properly.
pub fn extend_coloring(
    g: &Graph,
    u: usize,
    c: &Coloring,
    k: usize,
    budget: SearchBudget,
) -> Result<ExtensionOutcome, KempeError> {
    if u >= g.order() {
        return Err(GraphError::VertexOutOfRange { vertex: u, n: g.order() }.into());
    }
    if c.len() != g.order() {
        return Err(ColoringError::LengthMismatch { expected: g.order(), got: c.len() }.into());
    }
    if k == 0 || k > MAX_COLORS {
        return Err(KempeError::BadPalette(k));
    }
    let mut start = Coloring::from_colors(c.colors().to_vec(), k)?;
    start.set(u, 0);
    if let Some(v) = (0..g.order()).find(|&v| v != u && start.get(v).is_none()) {
        return Err(KempeError::Uncolored(v));
    }
    if !is_proper_partial(g, &start) {
        return Err(KempeError::Improper);
    }
    let extender = Extender { g, active: g.vertices(), u, k, budget };
    Ok(extender.run(start))
}

/// Counts of how each reinsertion was completed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineTelemetry {
    pub rule_count: usize,
    pub search_count: usize,
    pub fallback_count: usize,
    pub failed: bool,
}

impl EngineTelemetry {
    pub fn record(&mut self, result: ExtensionResult) {
        match result {
            ExtensionResult::ExtendedByRule => self.rule_count += 1,
            ExtensionResult::ExtendedBySearch => self.search_count += 1,
            ExtensionResult::FallbackExact => self.fallback_count += 1,
            ExtensionResult::Failed => self.failed = true,
        }
    }

    pub fn merge(&mut self, other: &EngineTelemetry) {
        self.rule_count += other.rule_count;
        self.search_count += other.search_count;
        self.fallback_count += other.fallback_count;
        self.failed |= other.failed;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineColoring {
    pub coloring: Coloring,
    /// Palette the engine aimed for.
    pub target: usize,
    /// Whether `target` is `max{ω, Δ-1}`, i.e. the graph is connected,
    /// 3K1-free and has `Δ >= 8`. Otherwise the target is the Brooks bound.
    pub bound_applies: bool,
    pub telemetry: EngineTelemetry,
}

/// Largest Brooks bound over components: Δ, or Δ+1 for complete graphs and
/// odd cycles.
fn brooks_bound(g: &Graph) -> usize {
    g.components()
        .into_iter()
        .map(|comp| {
            let (h, _) = g.induced(comp).expect("component is in range");
            let delta = max_degree(&h).expect("component is non-empty");
            match classify_brooks_exception(&h).expect("component is connected") {
                BrooksException::None => delta,
                _ => delta + 1,
            }
        })
        .max()
        .unwrap_or(0)
        .max(1)
}

/// Palette targeted by [`color_3k1_free`] and whether it is `max{ω, Δ-1}`.
pub fn engine_target(g: &Graph) -> (usize, bool) {
    if g.order() == 0 {
        return (1, false);
    }
    let delta = max_degree(g).expect("non-empty");
    let omega = max_clique(g).expect("non-empty").omega;
    if delta >= MIN_DELTA_FOR_BOUND && g.is_connected() && is_3k1_free(g) {
        (omega.max(delta - 1), true)
    } else {
        (omega.max(brooks_bound(g)), false)
    }
}

/// Colors `g` by removing minimum-degree vertices one at a time and
/// reinserting them with [`extend_coloring`]'s strategy.
///
/// When the hypotheses hold the palette is `max{ω, Δ-1}`; otherwise it is
/// the Brooks bound and `bound_applies` is false. Should an extension fail,
/// which would mean the target is below χ, the exact optimum is returned
/// and `telemetry.failed` is set.
pub fn color_3k1_free(g: &Graph, budget: SearchBudget) -> Result<EngineColoring, KempeError> {
    if g.order() == 0 {
        return Err(ColoringError::EmptyGraph.into());
    }
    let (target, bound_applies) = engine_target(g);

    let mut remaining = g.vertices();
    let mut removal = Vec::with_capacity(g.order());
    while !remaining.is_empty() {
        let v = remaining
            .iter()
            .min_by_key(|&v| (g.adjacency(v).intersection(remaining).len(), v))
            .expect("non-empty");
        removal.push(v);
        remaining.remove(v);
    }

    let mut telemetry = EngineTelemetry::default();
    let mut coloring = Coloring::uncolored(g.order(), target);
    let mut active = VertexSet::EMPTY;
    for &u in removal.iter().rev() {
        active.insert(u);
        let extender = Extender { g, active, u, k: target, budget };
        let outcome = extender.run(coloring);
        telemetry.record(outcome.result);
        coloring = outcome.coloring;
        if outcome.result == ExtensionResult::Failed {
            break;
        }
    }

    if telemetry.failed {
        let (chi, witness) = chromatic_number(g)?;
        coloring = witness.with_palette(chi)?;
    }
    debug_assert!(coloring.is_total() && is_proper_partial(g, &coloring));
    Ok(EngineColoring { coloring, target, bound_applies, telemetry })
}
