//! Deterministic constructors for the graph families used as witnesses.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

pub fn complete(n: usize) -> Result<MultiGraph> {
    if n == 0 {
        return Err(bad("complete graph needs n >= 1"));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::build(n, &edges)
}

/// `C_n`; `cycle(2)` is a pair of parallel edges.
pub fn cycle(n: usize) -> Result<MultiGraph> {
    if n < 2 {
        return Err(bad("cycle needs n >= 2"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::build(n, &edges)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<MultiGraph> {
    if a == 0 || b == 0 {
        return Err(bad("complete bipartite graph needs both sides nonempty"));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    MultiGraph::build(a + b, &edges)
}

/// Outer 5-cycle `0..5` (edges 0-4), inner pentagram `5..10` (edges 5-9),
/// spokes `i, i+5` (edges 10-14).
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    MultiGraph::build(10, &edges).expect("valid")
}

/// Petersen graph with the spoke matching raised to multiplicity `s - 2`,
/// together with the designated simple edge `(0, 1)` (EdgeId 0).
pub fn gen_meredith(s: usize) -> Result<(MultiGraph, EdgeId)> {
    if s < 3 {
        return Err(bad("Meredith graph needs s >= 3"));
    }
    let p = petersen();
    let mut edges = p.edges().to_vec();
    for _ in 3..s {
        edges.extend((0..5).map(|i| (i, i + 5)));
    }
    Ok((MultiGraph::build(10, &edges)?, 0))
}

#[derive(Debug, Clone)]
pub struct SumConstruction {
    pub graph: MultiGraph,
    /// `vertex_map[i][v]` is the new label of vertex `v` of part `i`.
    pub vertex_map: Vec<Vec<Vertex>>,
    /// The added ring edges, in insertion order.
    pub join_edges: Vec<EdgeId>,
}

/// Disjoint union of `G_i - e_i` plus a ring of join edges between the ends
/// `v_i, w_i` of the designated edges (`v_i` is the first endpoint).
///
/// With `2k+1` parts the ring is `v_{2j}v_{2j+1}`, `w_{2j+1}w_{2j+2}` for
/// `j < k`, and `v_{2k}w_0`. With `2k` parts it is `v_{2j}v_{2j+1}`,
/// `w_{2j+1}w_{2j+2 mod 2k}` for `j < k`.
pub fn sum_construction(parts: &[(MultiGraph, EdgeId)]) -> Result<SumConstruction> {
    if parts.len() < 2 {
        return Err(bad("sum construction needs at least two parts"));
    }
    let mut edges = Vec::new();
    let mut vertex_map = Vec::with_capacity(parts.len());
    let mut ends = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for (g, e) in parts {
        if *e >= g.m() {
            return Err(Error::EdgeOutOfRange { edge: *e, m: g.m() });
        }
        let (v, w) = g.endpoints(*e);
        ends.push((offset + v, offset + w));
        for (f, &(a, b)) in g.edges().iter().enumerate() {
            if f != *e {
                edges.push((offset + a, offset + b));
            }
        }
        vertex_map.push((offset..offset + g.n()).collect());
        offset += g.n();
    }
    let count = parts.len();
    let k = count / 2;
    let v = |i: usize| ends[i].0;
    let w = |i: usize| ends[i].1;
    let mut ring = Vec::with_capacity(count);
    for j in 0..k {
        ring.push((v(2 * j), v(2 * j + 1)));
        ring.push((w(2 * j + 1), w((2 * j + 2) % count)));
    }
    if count % 2 == 1 {
        ring.push((v(2 * k), w(0)));
    }
    let first = edges.len();
    edges.extend(ring);
    let graph = MultiGraph::build(offset, &edges)?;
    Ok(SumConstruction {
        join_edges: (first..graph.m()).collect(),
        graph,
        vertex_map,
    })
}

/// Sum of `copies` copies of `(M_s, e)`.
pub fn gen_meredith_sum(copies: usize, s: usize) -> Result<MultiGraph> {
    let part = gen_meredith(s)?;
    let parts = vec![part; copies];
    Ok(sum_construction(&parts)?.graph)
}

/// `O_k`: the sum of `2k+1` copies of `(M_s, e)`.
pub fn gen_o_k(k: usize, s: usize) -> Result<MultiGraph> {
    if k == 0 {
        return Err(bad("O_k needs k >= 1"));
    }
    gen_meredith_sum(2 * k + 1, s)
}

/// Chain of multi-triangles `a_i, b_i, v_i = 3i, 3i+1, 3i+2`. The first
/// triangle has every edge doubled, the others have `a_i b_i` simple, and
/// consecutive triangles are linked by `b_{i-1} a_i`.
pub fn gen_triangle_chain(k: usize) -> Result<MultiGraph> {
    let mut edges = Vec::new();
    for i in 0..=k {
        let (a, b, v) = (3 * i, 3 * i + 1, 3 * i + 2);
        edges.push((a, b));
        if i == 0 {
            edges.push((a, b));
        }
        edges.extend([(b, v), (b, v), (v, a), (v, a)]);
        if i > 0 {
            edges.push((3 * (i - 1) + 1, a));
        }
    }
    MultiGraph::build(3 * (k + 1), &edges)
}

/// Two sides joined by an edge between their hubs. Each side is `k` copies
/// of `K_{2k+1,2k+1}` with one edge subdivided, the subdivision vertices
/// identified into the hub. The result is `(2k+1)`-regular.
pub fn gen_odd_delta_extremal(k: usize) -> Result<MultiGraph> {
    if k < 2 {
        return Err(bad("odd-delta family needs k >= 2"));
    }
    let side = 2 * k + 1;
    let copy_size = 2 * side;
    let side_size = k * copy_size + 1;
    let mut edges = Vec::new();
    for s in 0..2 {
        let hub = s * side_size;
        for c in 0..k {
            let base = hub + 1 + c * copy_size;
            for a in 0..side {
                for b in 0..side {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    edges.push((base + a, base + side + b));
                }
            }
            edges.push((base, hub));
            edges.push((hub, base + side));
        }
    }
    edges.push((0, side_size));
    MultiGraph::build(2 * side_size, &edges)
}

/// The two hubs of [`gen_odd_delta_extremal`].
pub fn odd_delta_hubs(k: usize) -> [Vertex; 2] {
    [0, k * 2 * (2 * k + 1) + 1]
}

#[derive(Debug, Clone)]
pub struct TwoEdgeJoin {
    pub graph: MultiGraph,
    /// `vx` and `wy`.
    pub join_edges: [EdgeId; 2],
    /// Vertices of `H` start here.
    pub offset: usize,
}

/// `(G - vw) ∪ (H - xy) + vx + wy`.
pub fn two_edge_join(
    g: &MultiGraph,
    vw: EdgeId,
    h: &MultiGraph,
    xy: EdgeId,
) -> Result<TwoEdgeJoin> {
    if vw >= g.m() {
        return Err(Error::EdgeOutOfRange { edge: vw, m: g.m() });
    }
    if xy >= h.m() {
        return Err(Error::EdgeOutOfRange { edge: xy, m: h.m() });
    }
    let (v, w) = g.endpoints(vw);
    let (x, y) = h.endpoints(xy);
    let gd = g.delete(&VertexSet::empty(), &EdgeSet::new([vw]))?.graph;
    let hd = h.delete(&VertexSet::empty(), &EdgeSet::new([xy]))?.graph;
    let offset = g.n();
    let mut edges = gd.edges().to_vec();
    edges.extend(hd.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
    let first = edges.len();
    edges.push((v, x + offset));
    edges.push((w, y + offset));
    Ok(TwoEdgeJoin {
        graph: MultiGraph::build(offset + h.n(), &edges)?,
        join_edges: [first, first + 1],
        offset,
    })
}

/// One-line description written as a `#` comment into generated files.
pub fn provenance(family: &str, params: &[(&str, usize)]) -> String {
    let construction = match family {
        "complete" => "complete graph",
        "cycle" => "cycle",
        "bipartite" => "complete bipartite graph",
        "petersen" => "Petersen graph",
        "meredith" => "Meredith graph M_s, designated edge 0",
        "sum" => "sum of copies of M_s - e",
        "ok" => "O_k, sum of 2k+1 copies of M_s - e",
        "triangle-chain" => "chain of multi-triangles",
        "odd-delta" => "two hubbed copies of subdivided K_{2k+1,2k+1}",
        "join2" => "two-edge join",
        _ => "graph",
    };
    let mut line = format!(" family={family}");
    for (name, value) in params {
        line.push_str(&format!(" {name}={value}"));
    }
    line.push_str(&format!(" construction={construction}"));
    line
}
