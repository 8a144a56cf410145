//! Vertex-deletion measures and the vertex reinsertion procedure.
//!
//! [`reinsert_vertex`] takes a proper partial coloring of a graph in which
//! every edge at one vertex is uncolored and colors as many of those edges as
//! three local rules allow:
//!
//! 1. an uncolored edge `vu` with a color missing at both ends gets it;
//! 2. for `α` missing at `v` and `β` missing at `u`, if the α/β walk from `u`
//!    does not reach `v`, swap it and color `vu` with `α`;
//! 3. for uncolored `vu`, `vw` sharing a missing color `α` whose walks
//!    (α/β from `u`, α/γ from `w`, with β, γ missing at `v`) meet in the
//!    α-edge `vx`: uncolor `vx`, swap the walk from `u` and color `vw` by `α`.
//!
//! No rule touches an uncolored edge away from `v`, and once none applies at
//! most `floor(deg(v)/2)` edges at `v` remain uncolored. [`rebuild`] chains
//! the procedure over a vertex order to bound the resistance.

use serde::{Deserialize, Serialize};

use crate::bounds::Obstruction;
use crate::coloring::{verify, Color, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex, VertexSet};
use crate::kempe::{kempe_swap, kempe_walk, KempeWalk};
use crate::search::Budget;
use crate::solver::{resistance, try_color, Colorability};

/// Order in which the rules are scanned after every application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RuleOrder {
    /// 1, 2, 3
    #[default]
    Standard,
    /// 1, 3, 2
    PreferRule3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleStep {
    pub rule: u8,
    /// The edge at the reinserted vertex that receives a color.
    pub edge: EdgeId,
    pub alpha: Color,
    pub beta: Option<Color>,
    pub gamma: Option<Color>,
    /// Edges whose colors were exchanged (α/β), in walk order.
    pub swapped: Vec<EdgeId>,
    /// Rule 3 only: the edge at the vertex that loses its color.
    pub cleared: Option<EdgeId>,
    /// Rule 3 only: the other uncolored edge `vu` whose walk was swapped.
    pub partner: Option<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReinsertionTrace {
    pub vertex: Vertex,
    pub steps: Vec<RuleStep>,
    pub uncolored_at_vertex: usize,
    pub uncolored_elsewhere: usize,
    pub degree: usize,
    /// Both structural conditions at termination held (see
    /// [`termination_conditions`]).
    pub termination_ok: bool,
}

fn uncolored_at(g: &MultiGraph, col: &PartialEdgeColoring, v: Vertex) -> Vec<EdgeId> {
    g.incident(v)
        .iter()
        .copied()
        .filter(|&e| col.get(e).is_none())
        .collect()
}

fn uncolored_away(g: &MultiGraph, col: &PartialEdgeColoring, v: Vertex) -> usize {
    (0..g.m())
        .filter(|&e| col.get(e).is_none())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            a != v && b != v
        })
        .count()
}

fn try_rule1(g: &MultiGraph, col: &PartialEdgeColoring, v: Vertex) -> Option<RuleStep> {
    let at_v = col.used_mask(g, v);
    for e in uncolored_at(g, col, v) {
        let u = g.other(e, v);
        let free = !(at_v | col.used_mask(g, u));
        if let Some(alpha) = (1..=col.palette()).find(|&c| free & (1u64 << (c - 1)) != 0) {
            return Some(RuleStep {
                rule: 1,
                edge: e,
                alpha,
                beta: None,
                gamma: None,
                swapped: Vec::new(),
                cleared: None,
                partner: None,
            });
        }
    }
    None
}

fn try_rule2(g: &MultiGraph, col: &PartialEdgeColoring, v: Vertex) -> Option<RuleStep> {
    for e in uncolored_at(g, col, v) {
        let u = g.other(e, v);
        let miss_u = col.missing(g, u);
        for alpha in col.missing(g, v) {
            for &beta in &miss_u {
                if beta == alpha {
                    continue;
                }
                let walk = kempe_walk(g, col, u, alpha, beta).expect("valid colors");
                if walk.is_empty() || walk.terminal == v {
                    continue;
                }
                return Some(RuleStep {
                    rule: 2,
                    edge: e,
                    alpha,
                    beta: Some(beta),
                    gamma: None,
                    swapped: walk.edges,
                    cleared: None,
                    partner: None,
                });
            }
        }
    }
    None
}

fn try_rule3(g: &MultiGraph, col: &PartialEdgeColoring, v: Vertex) -> Option<RuleStep> {
    let open = uncolored_at(g, col, v);
    let miss_v = col.missing(g, v);
    for &eu in &open {
        let u = g.other(eu, v);
        for &ew in &open {
            let w = g.other(ew, v);
            if ew == eu || w == u {
                continue;
            }
            let shared = col.used_mask(g, u) | col.used_mask(g, w);
            for alpha in (1..=col.palette()).filter(|c| shared & (1u64 << (c - 1)) == 0) {
                for &beta in &miss_v {
                    if beta == alpha {
                        continue;
                    }
                    let pu = kempe_walk(g, col, u, alpha, beta).expect("valid colors");
                    for &gamma in &miss_v {
                        if gamma == alpha {
                            continue;
                        }
                        let pw = kempe_walk(g, col, w, alpha, gamma).expect("valid colors");
                        let meet = pu.edges.iter().copied().find(|&f| {
                            col.get(f) == Some(alpha) && pw.contains_edge(f) && {
                                let (a, b) = g.endpoints(f);
                                (a == v || b == v) && {
                                    let x = g.other(f, v);
                                    x != u && x != w
                                }
                            }
                        });
                        if let Some(f) = meet {
                            return Some(RuleStep {
                                rule: 3,
                                edge: ew,
                                alpha,
                                beta: Some(beta),
                                gamma: Some(gamma),
                                swapped: pu.edges.iter().copied().filter(|&x| x != f).collect(),
                                cleared: Some(f),
                                partner: Some(eu),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Applies one step, checking that it is still applicable to `col`.
fn apply_step(
    g: &MultiGraph,
    col: &PartialEdgeColoring,
    v: Vertex,
    step: &RuleStep,
) -> Result<PartialEdgeColoring> {
    let bad = |why: &str| {
        Error::Precondition(format!(
            "rule {} step on edge {}: {why}",
            step.rule, step.edge
        ))
    };
    let (a, b) = g.endpoints(step.edge);
    if a != v && b != v {
        return Err(bad("edge not at the reinserted vertex"));
    }
    if col.get(step.edge).is_some() {
        return Err(bad("edge already colored"));
    }
    let u = g.other(step.edge, v);
    let alpha = step.alpha;
    let mut out = col.clone();
    match step.rule {
        1 => {
            if !col.is_missing(g, v, alpha) || !col.is_missing(g, u, alpha) {
                return Err(bad("color not missing at both ends"));
            }
        }
        2 => {
            let beta = step.beta.ok_or_else(|| bad("missing β"))?;
            if !col.is_missing(g, v, alpha) || !col.is_missing(g, u, beta) {
                return Err(bad("colors not missing where required"));
            }
            let walk = kempe_walk(g, col, u, alpha, beta)?;
            if walk.terminal == v || walk.edges != step.swapped {
                return Err(bad("walk differs or returns to the vertex"));
            }
            out = kempe_swap(col, &walk)?;
        }
        3 => {
            let (beta, gamma) = (
                step.beta.ok_or_else(|| bad("missing β"))?,
                step.gamma.ok_or_else(|| bad("missing γ"))?,
            );
            let partner = step.partner.ok_or_else(|| bad("missing partner edge"))?;
            let cleared = step.cleared.ok_or_else(|| bad("missing cleared edge"))?;
            let pu = g.other(partner, v);
            if pu == u || col.get(partner).is_some() {
                return Err(bad("needs two distinct uncolored neighbors"));
            }
            if !(col.is_missing(g, u, alpha) && col.is_missing(g, pu, alpha)) {
                return Err(bad("neighbors do not share the missing color"));
            }
            if !(col.is_missing(g, v, beta) && col.is_missing(g, v, gamma)) {
                return Err(bad("β or γ present at the vertex"));
            }
            let walk_u = kempe_walk(g, col, pu, alpha, beta)?;
            let walk_w = kempe_walk(g, col, u, alpha, gamma)?;
            if !(walk_u.contains_edge(cleared) && walk_w.contains_edge(cleared))
                || col.get(cleared) != Some(alpha)
            {
                return Err(bad("walks do not share the cleared α-edge"));
            }
            out.clear(cleared);
            let trimmed = KempeWalk {
                edges: walk_u
                    .edges
                    .iter()
                    .copied()
                    .filter(|&x| x != cleared)
                    .collect(),
                edge_colors: walk_u
                    .edges
                    .iter()
                    .zip(&walk_u.edge_colors)
                    .filter(|(&x, _)| x != cleared)
                    .map(|(_, &c)| c)
                    .collect(),
                ..walk_u
            };
            if trimmed.edges != step.swapped {
                return Err(bad("recorded walk differs"));
            }
            out = kempe_swap(&out, &trimmed)?;
            if !out.is_missing(g, u, alpha) || !out.is_missing(g, v, alpha) {
                return Err(bad("α not free after the exchange"));
            }
        }
        _ => return Err(bad("unknown rule")),
    }
    out.set(step.edge, alpha);
    Ok(out)
}

/// Checks the two conditions that hold when no rule applies: every α/β walk
/// from an uncolored neighbor `u` (α missing at `v`, β missing at `u`) ends
/// at `v`, and distinct uncolored neighbors have disjoint missing sets.
pub fn termination_conditions(g: &MultiGraph, col: &PartialEdgeColoring, v: Vertex) -> bool {
    let open = uncolored_at(g, col, v);
    let miss_v = col.missing(g, v);
    let mut nbrs: Vec<Vertex> = open.iter().map(|&e| g.other(e, v)).collect();
    nbrs.sort_unstable();
    nbrs.dedup();
    for &u in &nbrs {
        for &alpha in &miss_v {
            for beta in col.missing(g, u) {
                if alpha == beta {
                    return false;
                }
                match kempe_walk(g, col, u, alpha, beta) {
                    Ok(w) if w.terminal == v && !w.is_empty() => {}
                    _ => return false,
                }
            }
        }
    }
    for (i, &q) in nbrs.iter().enumerate() {
        for &r in &nbrs[i + 1..] {
            if col.used_mask(g, q) | col.used_mask(g, r) != u64::MAX >> (64 - col.palette().max(1))
            {
                return false;
            }
        }
    }
    true
}

fn check_reinsert_pre(g: &MultiGraph, v: Vertex, col: &PartialEdgeColoring) -> Result<()> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let report = verify(g, col)?;
    if !report.proper {
        return Err(Error::Precondition("input coloring is not proper".into()));
    }
    if g.incident(v).iter().any(|&e| col.get(e).is_some()) {
        return Err(Error::Precondition(format!(
            "an edge at vertex {v} is already colored"
        )));
    }
    if col.palette() < g.max_degree() {
        return Err(Error::Precondition(
            "palette smaller than the maximum degree".into(),
        ));
    }
    Ok(())
}

pub fn reinsert_vertex(
    g: &MultiGraph,
    v: Vertex,
    col: &PartialEdgeColoring,
) -> Result<(PartialEdgeColoring, ReinsertionTrace)> {
    reinsert_vertex_with(g, v, col, RuleOrder::Standard)
}

pub fn reinsert_vertex_with(
    g: &MultiGraph,
    v: Vertex,
    col: &PartialEdgeColoring,
    order: RuleOrder,
) -> Result<(PartialEdgeColoring, ReinsertionTrace)> {
    check_reinsert_pre(g, v, col)?;
    let away_before = uncolored_away(g, col, v);
    let mut cur = col.clone();
    let mut steps = Vec::new();
    loop {
        let step = match order {
            RuleOrder::Standard => try_rule1(g, &cur, v)
                .or_else(|| try_rule2(g, &cur, v))
                .or_else(|| try_rule3(g, &cur, v)),
            RuleOrder::PreferRule3 => try_rule1(g, &cur, v)
                .or_else(|| try_rule3(g, &cur, v))
                .or_else(|| try_rule2(g, &cur, v)),
        };
        let Some(step) = step else { break };
        cur = apply_step(g, &cur, v, &step)?;
        debug_assert!(verify(g, &cur).unwrap().proper);
        steps.push(step);
    }
    let trace = ReinsertionTrace {
        vertex: v,
        steps,
        uncolored_at_vertex: uncolored_at(g, &cur, v).len(),
        uncolored_elsewhere: uncolored_away(g, &cur, v),
        degree: g.degree(v),
        termination_ok: termination_conditions(g, &cur, v),
    };
    if trace.uncolored_elsewhere != away_before {
        return Err(Error::Precondition(
            "uncolored edges away from the vertex changed".into(),
        ));
    }
    Ok((cur, trace))
}

/// Re-applies a trace to the input coloring, checking every step.
pub fn replay(
    g: &MultiGraph,
    input: &PartialEdgeColoring,
    trace: &ReinsertionTrace,
) -> Result<PartialEdgeColoring> {
    check_reinsert_pre(g, trace.vertex, input)?;
    let mut cur = input.clone();
    for step in &trace.steps {
        cur = apply_step(g, &cur, trace.vertex, step)?;
    }
    Ok(cur)
}

/// Result of reinserting a vertex order into `G - order`.
#[derive(Debug, Clone, Serialize)]
pub struct Rebuild {
    pub order: Vec<Vertex>,
    /// Coloring of `G` with palette `Δ(G)`.
    pub coloring: PartialEdgeColoring,
    pub upper_bound: usize,
    pub traces: Vec<ReinsertionTrace>,
}

/// Inserts `order` one vertex at a time into a total coloring of the rest.
/// `base` must be a total coloring of `G - order` given on the edge ids of
/// `G` (edges at `order` vertices are ignored).
fn rebuild_from(
    g: &MultiGraph,
    order: &[Vertex],
    palette: usize,
    base: Vec<Option<Color>>,
) -> Result<Rebuild> {
    let mut colors = base;
    let mut traces = Vec::with_capacity(order.len());
    for i in 0..order.len() {
        let absent: VertexSet = order[i + 1..].iter().copied().collect();
        let d = g.delete(&absent, &crate::graph::EdgeSet::empty())?;
        let local: Vec<Option<Color>> = d.edge_origin.iter().map(|&old| colors[old]).collect();
        let col = PartialEdgeColoring::from_colors(palette, local)?;
        let v = d.vertex_map[order[i]].expect("present");
        let (after, trace) = reinsert_vertex(&d.graph, v, &col)?;
        for (e, &old) in d.edge_origin.iter().enumerate() {
            colors[old] = after.get(e);
        }
        traces.push(trace);
    }
    let coloring = PartialEdgeColoring::from_colors(palette, colors)?;
    Ok(Rebuild {
        order: order.to_vec(),
        upper_bound: coloring.uncolored_count(),
        coloring,
        traces,
    })
}

/// Colors `G - order` exactly with `Δ(G)` colors, then reinserts `order`.
pub fn rebuild(g: &MultiGraph, order: &[Vertex], budget: &mut Budget) -> Result<Rebuild> {
    let palette = g.max_degree();
    let removed: VertexSet = order.iter().copied().collect();
    if removed.len() != order.len() {
        return Err(Error::Precondition("order repeats a vertex".into()));
    }
    let base = g.delete(&removed, &crate::graph::EdgeSet::empty())?;
    let col = match try_color(&base.graph, palette, budget) {
        Colorability::Colorable(c) => c,
        Colorability::Obstructed(_) => {
            return Err(Error::Precondition(format!(
                "G minus the order is not {palette}-edge-colorable"
            )))
        }
        Colorability::Unknown => return Err(Error::BudgetExhausted),
    };
    let mut colors = vec![None; g.m()];
    for (e, &old) in base.edge_origin.iter().enumerate() {
        colors[old] = col.get(e);
    }
    rebuild_from(g, order, palette, colors)
}

/// Heuristic coloring: insert every vertex in index order into the empty
/// graph. Leaves at most `sum floor(deg/2)` edges uncolored.
pub fn reinsertion_coloring(g: &MultiGraph, palette: usize) -> PartialEdgeColoring {
    let order: Vec<Vertex> = (0..g.n()).collect();
    rebuild_from(g, &order, palette, vec![None; g.m()])
        .expect("reinsertion preconditions hold on the empty coloring")
        .coloring
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeletionMode {
    /// The remainder must be class 1 (its own maximum degree).
    Class1,
    /// The remainder must be `Δ(G)`-edge-colorable.
    #[serde(rename = "delta")]
    WithinOriginalDelta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexMeasure {
    pub mode: DeletionMode,
    pub lower: usize,
    pub upper: usize,
    /// A deletion set of size `upper`.
    pub witness: VertexSet,
}

impl VertexMeasure {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

fn remainder_palette(g: &MultiGraph, s: &[Vertex], mode: DeletionMode) -> usize {
    match mode {
        DeletionMode::WithinOriginalDelta => g.max_degree(),
        DeletionMode::Class1 => {
            let mut dead = vec![false; g.n()];
            for &v in s {
                dead[v] = true;
            }
            (0..g.n())
                .filter(|&v| !dead[v])
                .map(|v| {
                    g.incident(v)
                        .iter()
                        .filter(|&&e| !dead[g.other(e, v)])
                        .count()
                })
                .max()
                .unwrap_or(0)
        }
    }
}

/// Size of a greedy family of pairwise vertex-disjoint obstructions that are
/// valid for every deletion set.
fn disjoint_obstructions(obs: &[Obstruction], n: usize, min_palette: usize) -> usize {
    let mut sorted: Vec<&Obstruction> = obs.iter().filter(|o| o.palette >= min_palette).collect();
    sorted.sort_by_key(|o| o.vertices.len());
    let mut taken = vec![false; n];
    let mut count = 0;
    for o in sorted {
        if o.vertices.iter().all(|v| !taken[v]) {
            for v in o.vertices.iter() {
                taken[v] = true;
            }
            count += 1;
        }
    }
    count
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest vertex set whose deletion leaves a graph meeting `mode`, by
/// increasing size and lexicographic order within a size. Subsets that miss
/// a known obstruction are skipped without a solver call.
pub fn vertex_measure(
    g: &MultiGraph,
    mode: DeletionMode,
    budget: &mut Budget,
    subset_budget: u64,
) -> VertexMeasure {
    let n = g.n();
    let delta = g.max_degree();
    let mut obstructions: Vec<Obstruction> = Vec::new();
    let mut tests = 0u64;
    let mut first_unknown: Option<usize> = None;
    let all: VertexSet = (0..n).collect();
    for size in 0..n {
        let lb = disjoint_obstructions(&obstructions, n, delta);
        if size < lb {
            continue;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        let mut saw_unknown = false;
        loop {
            let p = remainder_palette(g, &idx, mode);
            let skip = obstructions
                .iter()
                .any(|o| p <= o.palette && o.vertices.iter().all(|v| !idx.contains(&v)));
            if !skip {
                tests += 1;
                if tests > subset_budget {
                    return VertexMeasure {
                        mode,
                        lower: first_unknown.unwrap_or(size),
                        upper: n,
                        witness: all,
                    };
                }
                let s: VertexSet = idx.iter().copied().collect();
                let d = g
                    .delete(&s, &crate::graph::EdgeSet::empty())
                    .expect("in range");
                match try_color(&d.graph, p, budget) {
                    Colorability::Colorable(_) => {
                        return VertexMeasure {
                            mode,
                            lower: first_unknown.unwrap_or(size),
                            upper: size,
                            witness: s,
                        };
                    }
                    Colorability::Obstructed(found) => {
                        for o in found {
                            obstructions.push(Obstruction {
                                vertices: o.vertices.iter().map(|v| d.vertex_origin[v]).collect(),
                                ..o
                            });
                        }
                    }
                    Colorability::Unknown => saw_unknown = true,
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if saw_unknown && first_unknown.is_none() {
            first_unknown = Some(size);
        }
    }
    VertexMeasure {
        mode,
        lower: first_unknown.unwrap_or(n),
        upper: n,
        witness: all,
    }
}

pub fn r_v(g: &MultiGraph, budget: &mut Budget) -> VertexMeasure {
    vertex_measure(g, DeletionMode::Class1, budget, DEFAULT_SUBSET_BUDGET)
}

pub fn r_v_prime(g: &MultiGraph, budget: &mut Budget) -> VertexMeasure {
    vertex_measure(
        g,
        DeletionMode::WithinOriginalDelta,
        budget,
        DEFAULT_SUBSET_BUDGET,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub max_degree: usize,
    pub bound: usize,
    pub r: Option<usize>,
    pub r_v: Option<usize>,
    pub r_v_prime: Option<usize>,
    /// `r <= r_v * floor(Δ/2)`, when both are known.
    pub r_v_ratio_ok: Option<bool>,
    pub r_v_prime_ratio_ok: Option<bool>,
    pub partial: bool,
}

pub fn ratio_report(g: &MultiGraph, budget: &mut Budget) -> RatioReport {
    let bound = g.max_degree() / 2;
    let r = resistance(g, budget).exact();
    let rv = r_v(g, budget).exact();
    let rvp = r_v_prime(g, budget).exact();
    let check = |x: Option<usize>| match (r, x) {
        (Some(r), Some(x)) => Some(r <= x * bound),
        _ => None,
    };
    RatioReport {
        max_degree: g.max_degree(),
        bound,
        r,
        r_v: rv,
        r_v_prime: rvp,
        r_v_ratio_ok: check(rv),
        r_v_prime_ratio_ok: check(rvp),
        partial: r.is_none() || rv.is_none() || rvp.is_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, gen_triangle_chain, petersen};
    use crate::solver::resistance;

    #[test]
    fn star_reinsertion_uses_rule_one() {
        let star = complete_bipartite(1, 3).unwrap();
        let col = PartialEdgeColoring::uncolored(3, 3);
        let (out, trace) = reinsert_vertex(&star, 0, &col).unwrap();
        assert_eq!(out.uncolored_count(), 0);
        assert_eq!(trace.steps.len(), 3);
        assert!(trace.steps.iter().all(|s| s.rule == 1));
    }

    #[test]
    fn five_cycle_leaves_one_edge() {
        let c5 = cycle(5).unwrap();
        // path 1-2-3-4 colored alternately, edges at 0 uncolored
        let mut col = PartialEdgeColoring::uncolored(5, 2);
        for (e, &(u, v)) in c5.edges().iter().enumerate() {
            if u != 0 && v != 0 {
                col.set(e, 1 + u.min(v) % 2);
            }
        }
        assert!(verify(&c5, &col).unwrap().proper);
        let (out, trace) = reinsert_vertex(&c5, 0, &col).unwrap();
        assert_eq!(trace.uncolored_at_vertex, 1);
        assert!(trace.termination_ok);
        assert_eq!(replay(&c5, &col, &trace).unwrap(), out);
    }

    #[test]
    fn k5_from_k4() {
        let k5 = complete(5).unwrap();
        let mut b = Budget::default();
        let rb = rebuild(&k5, &[0], &mut b).unwrap();
        assert!(rb.upper_bound <= 2);
        assert_eq!(rb.upper_bound, resistance(&k5, &mut b).exact().unwrap());
        assert!(rb.traces[0].uncolored_at_vertex <= 2);
        assert!(verify(&k5, &rb.coloring).unwrap().proper);
    }

    #[test]
    fn rebuild_empty_order_on_class_one() {
        let mut b = Budget::default();
        let rb = rebuild(&cycle(6).unwrap(), &[], &mut b).unwrap();
        assert_eq!(rb.upper_bound, 0);
        assert!(rebuild(&cycle(5).unwrap(), &[], &mut b).is_err());
    }

    #[test]
    fn precondition_errors() {
        let tri = cycle(3).unwrap();
        let mut col = PartialEdgeColoring::uncolored(3, 2);
        col.set(0, 1);
        // edge 0 = (0,1) is colored, so vertex 0 cannot be reinserted
        assert!(matches!(
            reinsert_vertex(&tri, 0, &col),
            Err(Error::Precondition(_))
        ));
        assert!(reinsert_vertex(&tri, 2, &col).is_ok());
    }

    /// Inserts every vertex in each rotation of the index order, checking
    /// the contract of every call; returns how often each rule fired.
    fn insert_all(g: &MultiGraph, order: RuleOrder) -> [usize; 4] {
        let mut fired = [0; 4];
        let p = g.max_degree();
        for rot in 0..g.n() {
            let ord: Vec<Vertex> = (0..g.n()).map(|i| (i + rot) % g.n()).collect();
            let mut colors = vec![None; g.m()];
            for i in 0..ord.len() {
                let absent: VertexSet = ord[i + 1..].iter().copied().collect();
                let d = g.delete(&absent, &crate::graph::EdgeSet::empty()).unwrap();
                let local: Vec<_> = d.edge_origin.iter().map(|&o| colors[o]).collect();
                let col = PartialEdgeColoring::from_colors(p, local).unwrap();
                let v = d.vertex_map[ord[i]].unwrap();
                let (out, trace) = reinsert_vertex_with(&d.graph, v, &col, order).unwrap();
                assert!(trace.termination_ok);
                assert!(trace.uncolored_at_vertex <= trace.degree / 2);
                assert_eq!(replay(&d.graph, &col, &trace).unwrap(), out);
                for s in &trace.steps {
                    fired[s.rule as usize] += 1;
                }
                for (e, &o) in d.edge_origin.iter().enumerate() {
                    colors[o] = out.get(e);
                }
            }
        }
        fired
    }

    #[test]
    fn rule_three_fires_only_when_scanned_before_rule_two() {
        let graphs = [
            complete(7).unwrap(),
            petersen(),
            gen_triangle_chain(2).unwrap(),
            complete(6).unwrap(),
        ];
        let mut standard = [0; 4];
        let mut preferred = [0; 4];
        for g in &graphs {
            for (acc, order) in [
                (&mut standard, RuleOrder::Standard),
                (&mut preferred, RuleOrder::PreferRule3),
            ] {
                for (a, f) in acc.iter_mut().zip(insert_all(g, order)) {
                    *a += f;
                }
            }
        }
        assert!(standard[1] > 0 && standard[2] > 0);
        assert_eq!(standard[3], 0);
        assert!(preferred[3] > 0, "{preferred:?}");
    }

    #[test]
    fn vertex_measure_examples() {
        let mut b = Budget::default();
        let k5 = complete(5).unwrap();
        assert_eq!(r_v(&k5, &mut b).exact(), Some(1));
        assert_eq!(r_v_prime(&k5, &mut b).exact(), Some(1));
        assert_eq!(r_v(&cycle(6).unwrap(), &mut b).exact(), Some(0));
        assert_eq!(r_v_prime(&cycle(6).unwrap(), &mut b).exact(), Some(0));
        let chain = gen_triangle_chain(2).unwrap();
        assert_eq!(r_v(&chain, &mut b).exact(), Some(3));
        assert_eq!(r_v_prime(&chain, &mut b).exact(), Some(1));
    }

    #[test]
    fn ratio_examples() {
        let mut b = Budget::default();
        let rep = ratio_report(&complete(5).unwrap(), &mut b);
        assert_eq!(
            (rep.r, rep.r_v, rep.r_v_prime, rep.bound),
            (Some(2), Some(1), Some(1), 2)
        );
        assert_eq!(rep.r_v_ratio_ok, Some(true));
        let rep = ratio_report(&petersen(), &mut b);
        assert_eq!((rep.r, rep.r_v, rep.r_v_prime), (Some(2), Some(2), Some(2)));
        let rep = ratio_report(&gen_triangle_chain(1).unwrap(), &mut b);
        assert_eq!((rep.r, rep.r_v, rep.r_v_prime), (Some(1), Some(2), Some(1)));
        assert!(!rep.partial);
    }
}
