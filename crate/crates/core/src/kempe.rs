//! Two-colored alternating walks and color exchanges along them.

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex};

/// How a walk ended relative to a vertex of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkShape {
    EndsElsewhere,
    ReturnsToForbidden,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeWalk {
    pub start: Vertex,
    pub terminal: Vertex,
    /// Edge ids in walk order.
    pub edges: Vec<EdgeId>,
    /// Color carried by each edge when the walk was computed.
    pub edge_colors: Vec<Color>,
    pub colors: (Color, Color),
}

impl KempeWalk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn shape(&self, forbidden: Vertex) -> WalkShape {
        if !self.edges.is_empty() && self.terminal == forbidden {
            WalkShape::ReturnsToForbidden
        } else {
            WalkShape::EndsElsewhere
        }
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

fn check_colors(col: &PartialEdgeColoring, alpha: Color, beta: Color) -> Result<()> {
    for c in [alpha, beta] {
        if c == 0 || c > col.palette() {
            return Err(Error::ColorOutOfPalette {
                color: c,
                palette: col.palette(),
            });
        }
    }
    if alpha == beta {
        return Err(Error::SameColors(alpha));
    }
    Ok(())
}

/// Maximal alternating α/β walk from `start`.
///
/// The walk leaves `start` on whichever of the two colors is present there
/// (α first when both are). It stops when the next color is missing or when
/// it closes up at `start`, so on an alternating cycle the whole cycle is
/// returned and `terminal == start`.
pub fn kempe_walk(
    g: &MultiGraph,
    col: &PartialEdgeColoring,
    start: Vertex,
    alpha: Color,
    beta: Color,
) -> Result<KempeWalk> {
    check_colors(col, alpha, beta)?;
    if start >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: start,
            n: g.n(),
        });
    }
    let first = if col.edge_with_color(g, start, alpha).is_some() {
        alpha
    } else {
        beta
    };
    let mut walk = KempeWalk {
        start,
        terminal: start,
        edges: Vec::new(),
        edge_colors: Vec::new(),
        colors: (alpha, beta),
    };
    let mut at = start;
    let mut want = first;
    while let Some(e) = col.edge_with_color(g, at, want) {
        if walk.edges.last() == Some(&e) {
            break;
        }
        walk.edges.push(e);
        walk.edge_colors.push(want);
        at = g.other(e, at);
        want = if want == alpha { beta } else { alpha };
        if at == start {
            break;
        }
    }
    walk.terminal = at;
    Ok(walk)
}

/// Exchanges α and β along the walk. Fails if any edge changed color since
/// the walk was computed.
pub fn kempe_swap(col: &PartialEdgeColoring, walk: &KempeWalk) -> Result<PartialEdgeColoring> {
    let (alpha, beta) = walk.colors;
    let mut out = col.clone();
    for (&e, &c) in walk.edges.iter().zip(&walk.edge_colors) {
        if col.get(e) != Some(c) {
            return Err(Error::StaleWalk { edge: e });
        }
        out.set(e, if c == alpha { beta } else { alpha });
    }
    Ok(out)
}
