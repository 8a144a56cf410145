//! 1-factors, 2-factors, 2-factorizations and oddness.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::coloring::PartialEdgeColoring;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex};
use crate::search::Budget;

/// Calls `visit` on every perfect matching, branching on the lowest
/// uncovered vertex and its incident edges in EdgeId order.
/// Returns `Err(BudgetExhausted)` if the budget runs out.
/// The visitor receives the budget so it can run nested searches on it.
pub fn for_each_one_factor<F>(g: &MultiGraph, budget: &mut Budget, mut visit: F) -> Result<()>
where
    F: FnMut(&[EdgeId], &mut Budget) -> ControlFlow<()>,
{
    if g.n() % 2 == 1 {
        return Ok(());
    }
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(g.n() / 2);
    let _ = matchings(g, &mut covered, &mut chosen, 0, budget, &mut visit)?;
    Ok(())
}

fn matchings<F>(
    g: &MultiGraph,
    covered: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    from: Vertex,
    budget: &mut Budget,
    visit: &mut F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[EdgeId], &mut Budget) -> ControlFlow<()>,
{
    if !budget.tick() {
        return Err(Error::BudgetExhausted);
    }
    let Some(v) = (from..g.n()).find(|&v| !covered[v]) else {
        return Ok(visit(chosen, budget));
    };
    covered[v] = true;
    let mut incident = g.incident(v).to_vec();
    incident.sort_unstable();
    for e in incident {
        let u = g.other(e, v);
        if covered[u] {
            continue;
        }
        covered[u] = true;
        chosen.push(e);
        let flow = matchings(g, covered, chosen, v + 1, budget, visit);
        chosen.pop();
        covered[u] = false;
        if !matches!(flow, Ok(ControlFlow::Continue(()))) {
            covered[v] = false;
            return flow;
        }
    }
    covered[v] = false;
    Ok(ControlFlow::Continue(()))
}

/// All perfect matchings, sorted lexicographically by EdgeId list.
pub fn enumerate_one_factors(g: &MultiGraph, budget: &mut Budget) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    for_each_one_factor(g, budget, |m, _| {
        out.push(EdgeSet::new(m.iter().copied()));
        ControlFlow::Continue(())
    })?;
    out.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    Ok(out)
}

/// A spanning 2-regular subgraph with its cycle decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactor {
    pub edges: EdgeSet,
    /// Each cycle as its edges in traversal order.
    pub cycles: Vec<Vec<EdgeId>>,
    pub odd_cycles: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorParity {
    Odd,
    Even,
    Mixed,
}

impl TwoFactor {
    pub fn new(g: &MultiGraph, edges: EdgeSet) -> Result<Self> {
        let mut deg = vec![0usize; g.n()];
        let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.n()];
        for e in edges.iter() {
            if e >= g.m() {
                return Err(Error::EdgeOutOfRange { edge: e, m: g.m() });
            }
            let (u, v) = g.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
            at[u].push(e);
            at[v].push(e);
        }
        if let Some(v) = (0..g.n()).find(|&v| deg[v] != 2) {
            return Err(Error::InvalidFactorization(format!(
                "vertex {v} has degree {} in the 2-factor",
                deg[v]
            )));
        }
        let mut used = vec![false; g.m()];
        let mut cycles = Vec::new();
        for start in edges.iter() {
            if used[start] {
                continue;
            }
            let mut cyc = vec![start];
            used[start] = true;
            let (first, mut at_v) = g.endpoints(start);
            let mut last = start;
            while at_v != first {
                let next = *at[at_v].iter().find(|&&f| f != last).expect("degree two");
                used[next] = true;
                cyc.push(next);
                at_v = g.other(next, at_v);
                last = next;
            }
            cycles.push(cyc);
        }
        let odd_cycles = cycles.iter().filter(|c| c.len() % 2 == 1).count();
        Ok(TwoFactor {
            edges,
            cycles,
            odd_cycles,
        })
    }
}

pub fn classify_factor(f: &TwoFactor) -> FactorParity {
    if f.odd_cycles == f.cycles.len() {
        FactorParity::Odd
    } else if f.odd_cycles == 0 {
        FactorParity::Even
    } else {
        FactorParity::Mixed
    }
}

/// Calls `visit` on every 2-factor of `g` that uses all of `forced`.
/// The lowest vertex still short of degree two picks all its remaining
/// edges at once, so each factor is produced exactly once.
pub fn for_each_two_factor<F>(
    g: &MultiGraph,
    allowed: &[bool],
    forced: &[EdgeId],
    budget: &mut Budget,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    let mut state = TwoFactorSearch {
        g,
        allowed: allowed.to_vec(),
        deg: vec![0; g.n()],
        chosen: Vec::new(),
    };
    for &e in forced {
        if !state.allowed[e] {
            return Ok(());
        }
        let (u, v) = g.endpoints(e);
        state.deg[u] += 1;
        state.deg[v] += 1;
        state.allowed[e] = false;
        state.chosen.push(e);
    }
    if state.deg.iter().any(|&d| d > 2) {
        return Ok(());
    }
    let _ = state.run(budget, &mut visit)?;
    Ok(())
}

struct TwoFactorSearch<'a> {
    g: &'a MultiGraph,
    allowed: Vec<bool>,
    deg: Vec<u8>,
    chosen: Vec<EdgeId>,
}

impl TwoFactorSearch<'_> {
    fn candidates(&self, v: Vertex) -> Vec<EdgeId> {
        let mut c: Vec<EdgeId> = self
            .g
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| self.allowed[e] && self.deg[self.g.other(e, v)] < 2)
            .collect();
        c.sort_unstable();
        c
    }

    fn take(&mut self, e: EdgeId, sign: i8) {
        let (u, v) = self.g.endpoints(e);
        if sign > 0 {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.chosen.push(e);
        } else {
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            self.chosen.pop();
        }
    }

    fn run<F>(&mut self, budget: &mut Budget, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[EdgeId]) -> ControlFlow<()>,
    {
        if !budget.tick() {
            return Err(Error::BudgetExhausted);
        }
        let Some(v) = (0..self.g.n()).find(|&v| self.deg[v] < 2) else {
            let mut sorted = self.chosen.clone();
            sorted.sort_unstable();
            return Ok(visit(&sorted));
        };
        let need = 2 - self.deg[v] as usize;
        let cand = self.candidates(v);
        if cand.len() < need {
            return Ok(ControlFlow::Continue(()));
        }
        // edges at v are decided here: mark all candidates unavailable
        let saved: Vec<EdgeId> = self
            .g
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| self.allowed[e])
            .collect();
        for &e in &saved {
            self.allowed[e] = false;
        }
        let mut flow = Ok(ControlFlow::Continue(()));
        'outer: for i in 0..cand.len() {
            if need == 1 {
                self.take(cand[i], 1);
                flow = self.run(budget, visit);
                self.take(cand[i], -1);
                if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                    break 'outer;
                }
                continue;
            }
            for j in i + 1..cand.len() {
                let (a, b) = (cand[i], cand[j]);
                let (ua, ub) = (self.g.other(a, v), self.g.other(b, v));
                if ua == ub && self.deg[ua] != 0 {
                    continue;
                }
                self.take(a, 1);
                self.take(b, 1);
                flow = self.run(budget, visit);
                self.take(b, -1);
                self.take(a, -1);
                if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                    break 'outer;
                }
            }
        }
        for &e in &saved {
            self.allowed[e] = true;
        }
        flow
    }
}

/// All 2-factors of `g`, sorted by EdgeId list.
pub fn enumerate_two_factors(g: &MultiGraph, budget: &mut Budget) -> Result<Vec<TwoFactor>> {
    let mut sets = Vec::new();
    for_each_two_factor(g, &vec![true; g.m()], &[], budget, |f| {
        sets.push(EdgeSet::new(f.iter().copied()));
        ControlFlow::Continue(())
    })?;
    sets.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    sets.into_iter().map(|s| TwoFactor::new(g, s)).collect()
}

/// A partition of `E(G)` into 2-factors and, for odd degree, one 1-factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactorization {
    pub one_factor: Option<EdgeSet>,
    pub two_factors: Vec<TwoFactor>,
    pub odd_cycles: usize,
}

impl TwoFactorization {
    pub fn new(
        g: &MultiGraph,
        one_factor: Option<EdgeSet>,
        two_factors: Vec<EdgeSet>,
    ) -> Result<Self> {
        let two_factors = two_factors
            .into_iter()
            .map(|f| TwoFactor::new(g, f))
            .collect::<Result<Vec<_>>>()?;
        let odd_cycles = two_factors.iter().map(|f| f.odd_cycles).sum();
        let out = TwoFactorization {
            one_factor,
            two_factors,
            odd_cycles,
        };
        validate(g, &out)?;
        Ok(out)
    }
}

/// Checks that the factors partition `E(G)`, that each is a factor of the
/// right kind, and that the odd-cycle count is right.
pub fn validate(g: &MultiGraph, f: &TwoFactorization) -> Result<()> {
    let mut seen = vec![false; g.m()];
    let mut mark = |e: EdgeId| -> Result<()> {
        if e >= g.m() {
            return Err(Error::EdgeOutOfRange { edge: e, m: g.m() });
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::InvalidFactorization(format!(
                "not a partition: edge {e} used twice"
            )));
        }
        Ok(())
    };
    if let Some(m) = &f.one_factor {
        let mut deg = vec![0; g.n()];
        for e in m.iter() {
            mark(e)?;
            let (u, v) = g.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        if deg.iter().any(|&d| d != 1) {
            return Err(Error::InvalidFactorization(
                "one_factor is not a perfect matching".into(),
            ));
        }
    }
    let mut odd = 0;
    for tf in &f.two_factors {
        let fresh = TwoFactor::new(g, tf.edges.clone())?;
        for e in tf.edges.iter() {
            mark(e)?;
        }
        odd += fresh.odd_cycles;
    }
    if let Some(e) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidFactorization(format!(
            "not a partition: edge {e} missing"
        )));
    }
    if odd != f.odd_cycles {
        return Err(Error::InvalidFactorization(format!(
            "odd cycle count is {odd}, not {}",
            f.odd_cycles
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddnessValue {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oddness {
    /// `None` when the budget ran out.
    pub value: Option<OddnessValue>,
    pub lower: usize,
    /// Best factorization found (realizes `value` when known).
    pub witness: Option<TwoFactorization>,
}

impl Oddness {
    pub fn finite(&self) -> Option<usize> {
        match self.value {
            Some(OddnessValue::Finite(x)) => Some(x),
            _ => None,
        }
    }
}

struct Factorizer<'a> {
    g: &'a MultiGraph,
    odd_order: bool,
    best: Option<(usize, Vec<Vec<EdgeId>>)>,
    floor: usize,
}

impl Factorizer<'_> {
    /// Extends `stack` to a 2-factorization of the edges still `allowed`
    /// (which form a `2*left`-regular graph).
    fn go(
        &mut self,
        allowed: &mut Vec<bool>,
        left: usize,
        acc: usize,
        stack: &mut Vec<Vec<EdgeId>>,
        budget: &mut Budget,
    ) -> Result<()> {
        if left == 0 {
            if self.best.as_ref().is_none_or(|(b, _)| acc < *b) {
                self.best = Some((acc, stack.clone()));
            }
            return Ok(());
        }
        let lb = acc + if self.odd_order { left } else { 0 };
        if self.best.as_ref().is_some_and(|(b, _)| lb >= *b) || self.done() {
            return Ok(());
        }
        let e0 = allowed.iter().position(|&a| a).expect("edges remain");
        let mut found = Vec::new();
        for_each_two_factor(self.g, allowed, &[e0], budget, |f| {
            found.push(f.to_vec());
            ControlFlow::Continue(())
        })?;
        let mut scored: Vec<(usize, Vec<EdgeId>)> = found
            .into_iter()
            .map(|f| {
                (
                    TwoFactor::new(self.g, EdgeSet::new(f.iter().copied()))
                        .expect("2-factor")
                        .odd_cycles,
                    f,
                )
            })
            .collect();
        scored.sort_by_key(|(o, _)| *o);
        for (odd, f) in scored {
            let lb = acc + odd + if self.odd_order { left - 1 } else { 0 };
            if self.best.as_ref().is_some_and(|(b, _)| lb >= *b) || self.done() {
                break;
            }
            for &e in &f {
                allowed[e] = false;
            }
            stack.push(f);
            let r = self.go(allowed, left - 1, acc + odd, stack, budget);
            let f = stack.pop().expect("pushed");
            for &e in &f {
                allowed[e] = true;
            }
            r?;
        }
        Ok(())
    }

    fn done(&self) -> bool {
        self.best.as_ref().is_some_and(|(b, _)| *b <= self.floor)
    }
}

fn even_oddness(
    g: &MultiGraph,
    allowed: &[bool],
    factors: usize,
    floor: usize,
    incumbent: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<(usize, Vec<Vec<EdgeId>>)>> {
    let mut f = Factorizer {
        g,
        odd_order: g.n() % 2 == 1,
        best: None,
        floor,
    };
    if let Some(b) = incumbent {
        // only strictly better factorizations are of interest
        f.best = Some((b, Vec::new()));
    }
    let mut allowed = allowed.to_vec();
    f.go(&mut allowed, factors, 0, &mut Vec::new(), budget)?;
    Ok(f.best.filter(|(_, s)| !s.is_empty() || factors == 0))
}

fn component_oddness(g: &MultiGraph, s: usize, budget: &mut Budget) -> Oddness {
    let infinite = Oddness {
        value: Some(OddnessValue::Infinite),
        lower: 0,
        witness: None,
    };
    if s <= 1 {
        return infinite;
    }
    let floor = (s / 2) * (g.n() % 2);
    let build = |one: Option<&[EdgeId]>, twos: &[Vec<EdgeId>]| {
        TwoFactorization::new(
            g,
            one.map(|m| EdgeSet::new(m.iter().copied())),
            twos.iter()
                .map(|f| EdgeSet::new(f.iter().copied()))
                .collect(),
        )
        .expect("search produces valid factorizations")
    };
    if s.is_multiple_of(2) {
        return match even_oddness(g, &vec![true; g.m()], s / 2, floor, None, budget) {
            Ok(Some((o, fs))) => Oddness {
                value: Some(OddnessValue::Finite(o)),
                lower: o,
                witness: Some(build(None, &fs)),
            },
            Ok(None) => infinite,
            Err(_) => Oddness {
                value: None,
                lower: floor,
                witness: None,
            },
        };
    }
    let mut best: Option<(usize, Vec<EdgeId>, Vec<Vec<EdgeId>>)> = None;
    let mut any_matching = false;
    let mut failure = None;
    let res = for_each_one_factor(g, budget, |m, budget| {
        any_matching = true;
        let mut allowed = vec![true; g.m()];
        for &e in m {
            allowed[e] = false;
        }
        let incumbent = best.as_ref().map(|b| b.0);
        match even_oddness(g, &allowed, (s - 1) / 2, floor, incumbent, budget) {
            Ok(Some((o, fs))) => best = Some((o, m.to_vec(), fs)),
            Ok(None) => {}
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        }
        if best.as_ref().is_some_and(|b| b.0 <= floor) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let witness = best.as_ref().map(|(_, m, fs)| build(Some(m), fs));
    match (res, failure) {
        (Ok(()), None) => match best {
            Some((o, _, _)) => Oddness {
                value: Some(OddnessValue::Finite(o)),
                lower: o,
                witness,
            },
            None if !any_matching => infinite,
            None => unreachable!("every (s-1)-regular remainder has a 2-factorization"),
        },
        _ => Oddness {
            value: None,
            lower: floor,
            witness,
        },
    }
}

/// Exact oddness of a regular graph, summed over components.
pub fn oddness(g: &MultiGraph, budget: &mut Budget) -> Result<Oddness> {
    let s = g.regular_degree().ok_or(Error::NotRegular)?;
    if s <= 1 {
        return Ok(Oddness {
            value: Some(OddnessValue::Infinite),
            lower: 0,
            witness: None,
        });
    }
    let mut total = 0;
    let mut lower = 0;
    let mut unknown = false;
    let mut one: Option<Vec<EdgeId>> = if s % 2 == 1 { Some(Vec::new()) } else { None };
    let mut twos: Vec<Vec<EdgeId>> = vec![Vec::new(); s / 2];
    let mut complete = true;
    for comp in g.components() {
        let part = g.induced(&comp);
        let r = component_oddness(&part.graph, s, budget);
        match r.value {
            Some(OddnessValue::Infinite) => {
                return Ok(Oddness {
                    value: Some(OddnessValue::Infinite),
                    lower: 0,
                    witness: None,
                })
            }
            Some(OddnessValue::Finite(o)) => total += o,
            None => unknown = true,
        }
        lower += r.lower;
        match r.witness {
            Some(w) => {
                if let (Some(acc), Some(m)) = (one.as_mut(), w.one_factor) {
                    acc.extend(m.iter().map(|e| part.edge_origin[e]));
                }
                for (acc, f) in twos.iter_mut().zip(w.two_factors) {
                    acc.extend(f.edges.iter().map(|e| part.edge_origin[e]));
                }
            }
            None => complete = false,
        }
    }
    let witness = complete.then(|| {
        TwoFactorization::new(
            g,
            one.map(EdgeSet::new),
            twos.into_iter().map(EdgeSet::new).collect(),
        )
        .expect("componentwise factorizations combine")
    });
    if unknown {
        Ok(Oddness {
            value: None,
            lower,
            witness,
        })
    } else {
        Ok(Oddness {
            value: Some(OddnessValue::Finite(total)),
            lower: total,
            witness,
        })
    }
}

fn color_cycle(
    col: &mut PartialEdgeColoring,
    cycle: &[EdgeId],
    a: usize,
    b: usize,
    third: Option<usize>,
) {
    let len = cycle.len();
    for (i, &e) in cycle.iter().enumerate() {
        if len % 2 == 1 && i == len - 1 {
            if let Some(c) = third {
                col.set(e, c);
            }
        } else {
            col.set(e, if i % 2 == 0 { a } else { b });
        }
    }
}

fn palette_of(f: &TwoFactorization) -> usize {
    2 * f.two_factors.len() + usize::from(f.one_factor.is_some())
}

/// Two fresh colors per 2-factor, one edge of every odd cycle left
/// uncolored, one more color on the 1-factor.
pub fn canonical_coloring(g: &MultiGraph, f: &TwoFactorization) -> Result<PartialEdgeColoring> {
    validate(g, f)?;
    let palette = palette_of(f);
    let mut col = PartialEdgeColoring::uncolored(g.m(), palette);
    for (i, tf) in f.two_factors.iter().enumerate() {
        for c in &tf.cycles {
            color_cycle(&mut col, c, 2 * i + 1, 2 * i + 2, None);
        }
    }
    if let Some(m) = &f.one_factor {
        for e in m.iter() {
            col.set(e, palette);
        }
    }
    Ok(col)
}

/// Total coloring with `s + 1` colors when every odd cycle lies in one
/// 2-factor: that factor gets the extra color on one edge per odd cycle.
pub fn concentrated_coloring(g: &MultiGraph, f: &TwoFactorization) -> Result<PartialEdgeColoring> {
    validate(g, f)?;
    let with_odd: Vec<usize> = (0..f.two_factors.len())
        .filter(|&i| f.two_factors[i].odd_cycles > 0)
        .collect();
    if with_odd.len() > 1 {
        return Err(Error::Precondition(format!(
            "odd cycles lie in {} different 2-factors",
            with_odd.len()
        )));
    }
    let s = palette_of(f);
    let mut col = canonical_coloring(g, f)?.widened(s + 1);
    if let Some(&i) = with_odd.first() {
        for c in &f.two_factors[i].cycles {
            color_cycle(&mut col, c, 2 * i + 1, 2 * i + 2, Some(s + 1));
        }
    }
    Ok(col)
}
