//! Loop-free multigraphs with stable edge identities.
//!
//! Vertices are dense indices `0..n`. Edges are identified by their position
//! in the construction list, so parallel edges stay distinct and every
//! certificate can refer to them unambiguously.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Sorted, duplicate-free list of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

/// Sorted, duplicate-free list of edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<EdgeId>);

macro_rules! sorted_set {
    ($name:ident, $item:ty) => {
        impl $name {
            pub fn new<I: IntoIterator<Item = $item>>(items: I) -> Self {
                let mut v: Vec<$item> = items.into_iter().collect();
                v.sort_unstable();
                v.dedup();
                $name(v)
            }

            pub fn empty() -> Self {
                $name(Vec::new())
            }

            pub fn as_slice(&self) -> &[$item] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn contains(&self, x: $item) -> bool {
                self.0.binary_search(&x).is_ok()
            }

            pub fn iter(&self) -> impl Iterator<Item = $item> + '_ {
                self.0.iter().copied()
            }

            pub fn into_vec(self) -> Vec<$item> {
                self.0
            }
        }

        impl FromIterator<$item> for $name {
            fn from_iter<I: IntoIterator<Item = $item>>(iter: I) -> Self {
                $name::new(iter)
            }
        }
    };
}

sorted_set!(VertexSet, Vertex);
sorted_set!(EdgeSet, EdgeId);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<EdgeId>>,
}

/// Result of [`MultiGraph::delete`]: the smaller graph plus old/new id tables.
#[derive(Debug, Clone)]
pub struct Deletion {
    pub graph: MultiGraph,
    /// old vertex -> new vertex (None if deleted)
    pub vertex_map: Vec<Option<Vertex>>,
    /// old edge -> new edge (None if deleted or incident to a deleted vertex)
    pub edge_map: Vec<Option<EdgeId>>,
    /// new vertex -> old vertex
    pub vertex_origin: Vec<Vertex>,
    /// new edge -> old edge
    pub edge_origin: Vec<EdgeId>,
}

impl MultiGraph {
    pub fn build(n: usize, endpoints: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in endpoints.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Loop {
                    edge: id,
                    vertex: u,
                });
            }
            adj[u].push(id);
            adj[v].push(id);
        }
        Ok(MultiGraph {
            n,
            edges: endpoints.to_vec(),
            adj,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Incident edge ids of `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(s)` when every vertex has degree `s`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == first).then_some(first)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.m());
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.adj[u]
            .iter()
            .filter(|&&e| self.other(e, u) == v)
            .count()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e >= self.m() {
            return Err(Error::EdgeOutOfRange {
                edge: e,
                m: self.m(),
            });
        }
        Ok(())
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn boundary(&self, x: &VertexSet) -> Result<EdgeSet> {
        let mut inside = vec![false; self.n];
        for v in x.iter() {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| inside[u] != inside[v])
            .map(|(e, _)| e)
            .collect())
    }

    /// Edges with both endpoints in `x`.
    pub fn inner_edges(&self, x: &VertexSet) -> EdgeSet {
        let mut inside = vec![false; self.n];
        for v in x.iter() {
            inside[v] = true;
        }
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| inside[u] && inside[v])
            .map(|(e, _)| e)
            .collect()
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let w = self.other(e, u);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        out
    }

    /// Remove the vertices `vs` (with their incident edges) and the edges `es`.
    pub fn delete(&self, vs: &VertexSet, es: &EdgeSet) -> Result<Deletion> {
        let mut dead_v = vec![false; self.n];
        for v in vs.iter() {
            self.check_vertex(v)?;
            dead_v[v] = true;
        }
        let mut dead_e = vec![false; self.m()];
        for e in es.iter() {
            self.check_edge(e)?;
            dead_e[e] = true;
        }
        let mut vertex_map = vec![None; self.n];
        let mut vertex_origin = Vec::new();
        for v in 0..self.n {
            if !dead_v[v] {
                vertex_map[v] = Some(vertex_origin.len());
                vertex_origin.push(v);
            }
        }
        let mut edge_map = vec![None; self.m()];
        let mut edge_origin = Vec::new();
        let mut endpoints = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if dead_e[e] || dead_v[u] || dead_v[v] {
                continue;
            }
            edge_map[e] = Some(edge_origin.len());
            edge_origin.push(e);
            endpoints.push((vertex_map[u].unwrap(), vertex_map[v].unwrap()));
        }
        let graph = MultiGraph::build(vertex_origin.len(), &endpoints)?;
        Ok(Deletion {
            graph,
            vertex_map,
            edge_map,
            vertex_origin,
            edge_origin,
        })
    }

    /// Subgraph induced by `keep` (a convenience over [`delete`](Self::delete)).
    pub fn induced(&self, keep: &VertexSet) -> Deletion {
        let drop: VertexSet = (0..self.n).filter(|&v| !keep.contains(v)).collect();
        self.delete(&drop, &EdgeSet::empty()).expect("ids in range")
    }

    /// Spanning subgraph on the given edges, same vertex ids.
    pub fn edge_subgraph(&self, keep: &EdgeSet) -> Deletion {
        let drop: EdgeSet = (0..self.m()).filter(|&e| !keep.contains(e)).collect();
        self.delete(&VertexSet::empty(), &drop)
            .expect("ids in range")
    }

    /// Disjoint union; the second graph's vertices are shifted by `self.n()`
    /// and its edges appended after ours.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let shift = self.n;
        let mut endpoints = self.edges.clone();
        endpoints.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        MultiGraph::build(self.n + other.n, &endpoints).expect("valid union")
    }

    /// Edges that are bridges, computed with an iterative low-link DFS.
    /// Parallel edges are handled by skipping only the tree edge's own id.
    pub fn bridges(&self) -> Vec<EdgeId> {
        self.bridges_excluding(None)
    }

    fn bridges_excluding(&self, skip: Option<EdgeId>) -> Vec<EdgeId> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent edge, next incident index)
            let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (u, pe) = (top.0, top.1);
                if top.2 < self.adj[u].len() {
                    let e = self.adj[u][top.2];
                    top.2 += 1;
                    if Some(e) == pe || Some(e) == skip {
                        continue;
                    }
                    let w = self.other(e, u);
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (pe, stack.last()) {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edges that lie in some edge cut of size at most two.
    pub fn small_cut_edges(&self) -> EdgeSet {
        let base = self.bridges();
        let mut hit = vec![false; self.m()];
        for &b in &base {
            hit[b] = true;
        }
        for e in 0..self.m() {
            if hit[e] {
                continue;
            }
            for f in self.bridges_excluding(Some(e)) {
                if f != e && base.binary_search(&f).is_err() {
                    hit[e] = true;
                    hit[f] = true;
                }
            }
        }
        (0..self.m()).filter(|&e| hit[e]).collect()
    }
}

/// Outcome of the odd-set cut check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SGraphCheck {
    Holds,
    /// An odd vertex set whose boundary is smaller than the degree.
    Violated(VertexSet),
}

impl SGraphCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SGraphCheck::Holds)
    }
}

pub const DEFAULT_ODD_SET_BUDGET: usize = 22;

/// Exhaustively checks `|∂(X)| ≥ s` for every odd vertex set `X` of an
/// `s`-regular graph. Subsets are walked in Gray-code order so each step
/// updates the cut size in O(deg). Among violating sets the one with the
/// smallest boundary (then fewest vertices) is reported.
pub fn is_s_graph(g: &MultiGraph, vertex_budget: usize) -> Result<SGraphCheck> {
    let s = g.regular_degree().ok_or(Error::NotRegular)?;
    let n = g.n();
    if n == 0 {
        return Ok(SGraphCheck::Holds);
    }
    if n % 2 == 1 {
        // X = V is odd with empty boundary.
        return Ok(if s > 0 {
            SGraphCheck::Violated((0..n).collect())
        } else {
            SGraphCheck::Holds
        });
    }
    if n > vertex_budget {
        return Err(Error::VertexBudget {
            n,
            budget: vertex_budget,
        });
    }
    // n even: X odd iff V\X odd and both have the same boundary, so the last
    // vertex can stay outside X.
    let free = n - 1;
    let mut inside = vec![false; n];
    let mut size = 0usize;
    let mut cut: i64 = 0;
    let mut best: Option<(i64, usize, Vec<bool>)> = None;
    let total: u64 = 1u64 << free;
    for i in 1..total {
        let v = i.trailing_zeros() as usize;
        let into_x = g
            .incident(v)
            .iter()
            .filter(|&&e| inside[g.other(e, v)])
            .count() as i64;
        let deg = g.degree(v) as i64;
        if inside[v] {
            inside[v] = false;
            size -= 1;
            cut += 2 * into_x - deg;
        } else {
            inside[v] = true;
            size += 1;
            cut += deg - 2 * into_x;
        }
        if size % 2 == 1 && cut < s as i64 {
            let better = match &best {
                None => true,
                Some((c, sz, _)) => (cut, size) < (*c, *sz),
            };
            if better {
                best = Some((cut, size, inside.clone()));
            }
        }
    }
    Ok(match best {
        None => SGraphCheck::Holds,
        Some((_, _, mask)) => SGraphCheck::Violated((0..n).filter(|&v| mask[v]).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, petersen};

    #[test]
    fn build_rejects_loops_and_range() {
        assert_eq!(
            MultiGraph::build(2, &[(0, 1), (1, 1)]),
            Err(Error::Loop { edge: 1, vertex: 1 })
        );
        assert!(matches!(
            MultiGraph::build(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn theta_triangle_k5() {
        let theta = MultiGraph::build(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(theta.regular_degree(), Some(3));
        assert!(!theta.is_simple());
        let tri = cycle(3).unwrap();
        assert_eq!(tri.max_degree(), 2);
        let k5 = complete(5).unwrap();
        assert_eq!(k5.regular_degree(), Some(4));
        assert_eq!(MultiGraph::edgeless(4).max_degree(), 0);
    }

    #[test]
    fn boundary_examples() {
        let k5 = complete(5).unwrap();
        assert_eq!(k5.boundary(&VertexSet::new([0])).unwrap().len(), 4);
        let p = petersen();
        let outer = p.boundary(&VertexSet::new(0..5)).unwrap();
        assert_eq!(outer.len(), 5);
        for e in outer.iter() {
            let (u, v) = p.endpoints(e);
            assert_eq!(u.max(v), u.min(v) + 5, "spoke expected");
        }
        assert!(p.boundary(&VertexSet::new(0..10)).unwrap().is_empty());
        assert!(p.boundary(&VertexSet::new([10])).is_err());
    }

    #[test]
    fn delete_examples() {
        let k5 = complete(5).unwrap();
        let d = k5.delete(&VertexSet::new([0]), &EdgeSet::empty()).unwrap();
        assert_eq!(d.graph.n(), 4);
        assert_eq!(d.graph.regular_degree(), Some(3));
        assert_eq!(d.graph.m(), 6);

        let tri = cycle(3).unwrap();
        let d = tri.delete(&VertexSet::empty(), &EdgeSet::new([2])).unwrap();
        assert_eq!(d.graph.degrees(), vec![1, 2, 1]);
        assert_eq!(d.edge_map, vec![Some(0), Some(1), None]);

        let p = petersen();
        let spokes: EdgeSet = (0..p.m())
            .filter(|&e| {
                let (u, v) = p.endpoints(e);
                u.max(v) == u.min(v) + 5
            })
            .collect();
        let d = p.delete(&VertexSet::empty(), &spokes).unwrap();
        assert_eq!(d.graph.n(), 10);
        assert_eq!(d.graph.regular_degree(), Some(2));
    }

    #[test]
    fn components_examples() {
        assert_eq!(complete(5).unwrap().components().len(), 1);
        let two = cycle(3).unwrap().disjoint_union(&cycle(3).unwrap());
        assert_eq!(
            two.components(),
            vec![VertexSet::new(0..3), VertexSet::new(3..6)]
        );
        assert_eq!(MultiGraph::edgeless(3).components().len(), 3);
    }

    #[test]
    fn s_graph_examples() {
        assert!(is_s_graph(&petersen(), DEFAULT_ODD_SET_BUDGET)
            .unwrap()
            .holds());
        let k4_minus = MultiGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(is_s_graph(&k4_minus, 22), Err(Error::NotRegular));

        // Two copies of K4 with one edge subdivided, subdivision vertices joined.
        let blob = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 4)];
        let mut edges: Vec<(usize, usize)> = blob.to_vec();
        edges.extend(blob.iter().map(|&(u, v)| (u + 5, v + 5)));
        edges.push((4, 9));
        let g = MultiGraph::build(10, &edges).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        match is_s_graph(&g, 22).unwrap() {
            SGraphCheck::Violated(x) => {
                assert_eq!(x.len() % 2, 1);
                assert_eq!(g.boundary(&x).unwrap().len(), 1);
                assert!(x == VertexSet::new(0..5) || x == VertexSet::new(5..10));
            }
            SGraphCheck::Holds => panic!("bridge must violate"),
        }
        assert!(matches!(
            is_s_graph(&crate::generators::complete_bipartite(12, 12).unwrap(), 22),
            Err(Error::VertexBudget { .. })
        ));
    }

    #[test]
    fn bridges_and_small_cuts() {
        let p = petersen();
        assert!(p.bridges().is_empty());
        assert!(p.small_cut_edges().is_empty());
        let double = MultiGraph::build(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(double.bridges(), vec![2]);
        assert_eq!(double.small_cut_edges(), EdgeSet::new([0, 1, 2]));
        let c6 = cycle(6).unwrap();
        assert_eq!(c6.small_cut_edges().len(), 6);
    }
}
