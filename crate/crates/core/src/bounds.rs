//! Lower bounds on the number of edges a `p`-coloring must leave uncolored.
//!
//! Two sources, both certified by explicit vertex sets:
//!
//! * counting: inside a vertex set `X` every color class is a matching, so at
//!   most `p * floor(|X|/2)` inner edges can be colored. The best odd `X` is
//!   a minimum T-odd cut (Padberg–Rao) of the graph augmented by a sink that
//!   absorbs each vertex's spare capacity `p - deg(v)`;
//! * decomposition: after deleting every edge that lies in a cut of size at
//!   most two, the remaining pieces are solved exactly and their values add.
//!
//! Edge-disjoint sets give additive bounds.

use std::collections::VecDeque;

use crate::graph::{EdgeSet, MultiGraph, VertexSet};
use crate::search::Budget;
use crate::solver::resistance_with_palette;

/// A vertex set whose induced subgraph needs at least `deficit` uncolored
/// edges under the palette it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub vertices: VertexSet,
    pub deficit: usize,
    pub palette: usize,
}

#[derive(Debug, Clone, Default)]
pub struct LowerBound {
    pub value: usize,
    /// Edge-disjoint witnesses whose deficits sum to `value`.
    pub witnesses: Vec<Obstruction>,
}

/// `|E(X)| - p * floor(|X|/2)`, clamped at zero.
pub fn counting_deficit(g: &MultiGraph, x: &VertexSet, palette: usize) -> usize {
    let inner = g.inner_edges(x).len();
    inner.saturating_sub(palette * (x.len() / 2))
}

struct FlowNet {
    n: usize,
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap0: Vec<i64>,
    cap: Vec<i64>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            n,
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap0: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_undirected(&mut self, u: usize, v: usize, c: i64) {
        if c <= 0 {
            return;
        }
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap0.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap0.push(c);
    }

    /// Edmonds–Karp; returns the flow value and the source side of a min cut.
    fn min_cut(&mut self, s: usize, t: usize) -> (i64, Vec<bool>) {
        self.cap.clone_from(&self.cap0);
        let mut flow = 0;
        loop {
            let mut pred = vec![usize::MAX; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.head[u] {
                    let w = self.to[a];
                    if !seen[w] && self.cap[a] > 0 {
                        seen[w] = true;
                        pred[w] = a;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return (flow, seen);
            }
            let mut push = i64::MAX;
            let mut w = t;
            while w != s {
                let a = pred[w];
                push = push.min(self.cap[a]);
                w = self.to[a ^ 1];
            }
            let mut w = t;
            while w != s {
                let a = pred[w];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                w = self.to[a ^ 1];
            }
            flow += push;
        }
    }
}

/// Most overfull odd vertex set for `palette`, if any set has positive
/// counting deficit. Requires `palette >= max_degree`.
pub fn most_overfull_set(g: &MultiGraph, palette: usize) -> Option<(VertexSet, usize)> {
    let n = g.n();
    if n == 0 || g.m() == 0 || palette < g.max_degree() {
        return None;
    }
    let z = n;
    let nodes = n + 1;
    let mut net = FlowNet::new(nodes);
    for &(u, v) in g.edges() {
        net.add_undirected(u, v, 1);
    }
    for v in 0..n {
        net.add_undirected(v, z, (palette - g.degree(v)) as i64);
    }
    // Gomory–Hu cut tree (Gusfield's construction).
    let mut parent = vec![0usize; nodes];
    for s in 1..nodes {
        let t = parent[s];
        let (_, side) = net.min_cut(s, t);
        for i in 0..nodes {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
        }
    }
    let mut children = vec![Vec::new(); nodes];
    for s in 1..nodes {
        children[parent[s]].push(s);
    }
    let root = 0;
    let in_t = |v: usize| v < n || n % 2 == 1;
    let mut best: Option<(i64, VertexSet)> = None;
    for s in 0..nodes {
        if s == root {
            continue;
        }
        // subtree of s
        let mut sub = vec![false; nodes];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            sub[u] = true;
            stack.extend(children[u].iter().copied());
        }
        let t_count = (0..nodes).filter(|&v| sub[v] && in_t(v)).count();
        if t_count % 2 == 0 {
            continue;
        }
        let x: VertexSet = if sub[z] {
            (0..n).filter(|&v| !sub[v]).collect()
        } else {
            (0..n).filter(|&v| sub[v]).collect()
        };
        if x.is_empty() || x.len().is_multiple_of(2) {
            continue;
        }
        let inner = g.inner_edges(&x).len() as i64;
        let deg_sum: i64 = x.iter().map(|v| g.degree(v) as i64).sum();
        let cut = deg_sum - 2 * inner;
        let value = cut
            + x.iter()
                .map(|v| (palette - g.degree(v)) as i64)
                .sum::<i64>();
        if best
            .as_ref()
            .is_none_or(|(b, bx)| (value, x.len()) < (*b, bx.len()))
        {
            best = Some((value, x));
        }
    }
    let (_, x) = best?;
    let deficit = counting_deficit(g, &x, palette);
    (deficit > 0).then_some((x, deficit))
}

/// Whether an `s`-regular graph has `|∂(X)| >= s` for every odd `X`,
/// decided through the minimum odd cut rather than by enumeration.
/// For odd `X` the boundary has the parity of `s`, so a violating set has
/// positive counting deficit under palette `s` and vice versa.
pub fn is_s_graph_by_cuts(g: &MultiGraph) -> crate::error::Result<bool> {
    let s = g.regular_degree().ok_or(crate::error::Error::NotRegular)?;
    if g.n() % 2 == 1 {
        return Ok(s == 0);
    }
    Ok(most_overfull_set(g, s).is_none())
}

/// Greedy packing of edge-disjoint overfull sets.
pub fn overfull_packing(g: &MultiGraph, palette: usize) -> LowerBound {
    let mut out = LowerBound::default();
    let mut removed = vec![false; g.m()];
    loop {
        let keep: EdgeSet = (0..g.m()).filter(|&e| !removed[e]).collect();
        let rest = g.edge_subgraph(&keep);
        let Some((x, deficit)) = most_overfull_set(&rest.graph, palette) else {
            break;
        };
        for e in rest.graph.inner_edges(&x).iter() {
            removed[rest.edge_origin[e]] = true;
        }
        out.value += deficit;
        out.witnesses.push(Obstruction {
            vertices: x,
            deficit,
            palette,
        });
    }
    out
}

/// Vertex sets of the pieces left after deleting all edges in cuts of size
/// at most two. Only pieces that still carry edges are returned; an empty
/// list means the graph has no such cut.
pub fn small_cut_pieces(g: &MultiGraph) -> Vec<VertexSet> {
    let cut = g.small_cut_edges();
    if cut.is_empty() {
        return Vec::new();
    }
    let rest = g.delete(&VertexSet::empty(), &cut).expect("ids in range");
    rest.graph
        .components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.iter().map(|v| rest.vertex_origin[v]).collect())
        .collect()
}

/// Best of the two bounds for a `palette`-coloring of `g`.
pub fn lower_bound(g: &MultiGraph, palette: usize, budget: &mut Budget) -> LowerBound {
    let counting = overfull_packing(g, palette);
    let pieces = small_cut_pieces(g);
    if pieces.is_empty() {
        return counting;
    }
    let mut by_pieces = LowerBound::default();
    for piece in pieces {
        let sub = g.induced(&piece);
        let r = resistance_with_palette(&sub.graph, palette, budget);
        if r.lower > 0 {
            by_pieces.value += r.lower;
            by_pieces.witnesses.push(Obstruction {
                vertices: piece,
                deficit: r.lower,
                palette,
            });
        }
    }
    if by_pieces.value > counting.value {
        by_pieces
    } else {
        counting
    }
}
