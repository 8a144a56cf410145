//! Partial proper edge colorings and their independent checker.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex};

pub type Color = usize;

pub const MAX_PALETTE: usize = 64;

/// Colors `1..=palette` on a subset of the edges; `None` is uncolored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialEdgeColoring {
    palette: usize,
    colors: Vec<Option<Color>>,
}

impl PartialEdgeColoring {
    pub fn uncolored(m: usize, palette: usize) -> Self {
        PartialEdgeColoring {
            palette,
            colors: vec![None; m],
        }
    }

    /// Builds a coloring, rejecting colors outside the palette.
    /// Properness is not checked here; see [`verify`].
    pub fn from_colors(palette: usize, colors: Vec<Option<Color>>) -> Result<Self> {
        if palette > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(palette));
        }
        for c in colors.iter().flatten() {
            if *c == 0 || *c > palette {
                return Err(Error::ColorOutOfPalette { color: *c, palette });
            }
        }
        Ok(PartialEdgeColoring { palette, colors })
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn get(&self, e: EdgeId) -> Option<Color> {
        self.colors[e]
    }

    pub fn set(&mut self, e: EdgeId, c: Color) {
        debug_assert!(c >= 1 && c <= self.palette);
        self.colors[e] = Some(c);
    }

    pub fn clear(&mut self, e: EdgeId) {
        self.colors[e] = None;
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&e| self.colors[e].is_none())
            .collect()
    }

    pub fn uncolored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_none()).count()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Bitmask of colors present at `v` (bit `c-1` for color `c`).
    pub fn used_mask(&self, g: &MultiGraph, v: Vertex) -> u64 {
        g.incident(v)
            .iter()
            .filter_map(|&e| self.colors[e])
            .fold(0u64, |acc, c| acc | (1u64 << (c - 1)))
    }

    /// The missing set C̄(v), ascending.
    pub fn missing(&self, g: &MultiGraph, v: Vertex) -> Vec<Color> {
        let used = self.used_mask(g, v);
        (1..=self.palette)
            .filter(|c| used & (1u64 << (c - 1)) == 0)
            .collect()
    }

    pub fn is_missing(&self, g: &MultiGraph, v: Vertex, c: Color) -> bool {
        self.used_mask(g, v) & (1u64 << (c - 1)) == 0
    }

    /// The edge of color `c` at `v`, if any (lowest id on conflicts).
    pub fn edge_with_color(&self, g: &MultiGraph, v: Vertex, c: Color) -> Option<EdgeId> {
        g.incident(v)
            .iter()
            .copied()
            .find(|&e| self.colors[e] == Some(c))
    }

    /// Same coloring viewed with a larger palette.
    pub fn widened(&self, palette: usize) -> Self {
        assert!(palette >= self.palette);
        PartialEdgeColoring {
            palette,
            colors: self.colors.clone(),
        }
    }
}

/// A pair of same-colored edges meeting at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub vertex: Vertex,
    pub edges: (EdgeId, EdgeId),
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub proper: bool,
    pub uncolored_count: usize,
    pub conflicts: Vec<Conflict>,
    pub missing_sets: Vec<Vec<Color>>,
}

/// Re-checks a coloring from scratch against the graph.
pub fn verify(g: &MultiGraph, col: &PartialEdgeColoring) -> Result<VerifyReport> {
    if col.len() != g.m() {
        return Err(Error::LengthMismatch {
            expected: g.m(),
            got: col.len(),
        });
    }
    for c in col.colors().iter().flatten() {
        if *c == 0 || *c > col.palette() {
            return Err(Error::ColorOutOfPalette {
                color: *c,
                palette: col.palette(),
            });
        }
    }
    let mut conflicts = Vec::new();
    let mut missing_sets = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let mut first_of: Vec<Option<EdgeId>> = vec![None; col.palette() + 1];
        for &e in g.incident(v) {
            if let Some(c) = col.get(e) {
                match first_of[c] {
                    Some(prev) => conflicts.push(Conflict {
                        vertex: v,
                        edges: (prev, e),
                        color: c,
                    }),
                    None => first_of[c] = Some(e),
                }
            }
        }
        missing_sets.push(
            (1..=col.palette())
                .filter(|&c| first_of[c].is_none())
                .collect(),
        );
    }
    Ok(VerifyReport {
        proper: conflicts.is_empty(),
        uncolored_count: col.uncolored_count(),
        conflicts,
        missing_sets,
    })
}

/// Per color `i`, the number of vertices where `i` is missing.
/// Requires a total proper coloring; checks `a_i = n - 2|E_i|` and
/// `a_i ≡ n (mod 2)` for every color.
pub fn parity_signature(g: &MultiGraph, col: &PartialEdgeColoring) -> Result<Vec<usize>> {
    let report = verify(g, col)?;
    if !report.proper {
        return Err(Error::Precondition("coloring is not proper".into()));
    }
    if report.uncolored_count > 0 {
        return Err(Error::Precondition("coloring is not total".into()));
    }
    let mut signature = vec![0usize; col.palette()];
    for missing in &report.missing_sets {
        for &c in missing {
            signature[c - 1] += 1;
        }
    }
    let mut class_size = vec![0usize; col.palette()];
    for c in col.colors().iter().flatten() {
        class_size[c - 1] += 1;
    }
    for (i, &a) in signature.iter().enumerate() {
        assert_eq!(
            a,
            g.n() - 2 * class_size[i],
            "missing count must equal n - 2|E_i|"
        );
        assert_eq!(a % 2, g.n() % 2, "parity of missing count must match n");
    }
    Ok(signature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    fn col(p: usize, c: &[Option<usize>]) -> PartialEdgeColoring {
        PartialEdgeColoring::from_colors(p, c.to_vec()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let tri = cycle(3).unwrap();
        let r = verify(&tri, &col(3, &[Some(1), Some(2), Some(3)])).unwrap();
        assert!(r.proper);
        assert_eq!(r.uncolored_count, 0);
        let r = verify(&tri, &col(2, &[Some(1), Some(2), None])).unwrap();
        assert!(r.proper);
        assert_eq!(r.uncolored_count, 1);
        let r = verify(&tri, &col(2, &[Some(1), Some(1), Some(2)])).unwrap();
        assert!(!r.proper);
        assert_eq!(r.conflicts[0].vertex, 1);
        assert!(matches!(
            verify(&tri, &col(2, &[Some(1)])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            PartialEdgeColoring::from_colors(2, vec![Some(3)]),
            Err(Error::ColorOutOfPalette {
                color: 3,
                palette: 2
            })
        ));
    }

    #[test]
    fn missing_sets_complement_used() {
        let tri = cycle(3).unwrap();
        let c = col(4, &[Some(1), Some(2), None]);
        let r = verify(&tri, &c).unwrap();
        for v in 0..3 {
            let used = tri
                .incident(v)
                .iter()
                .filter(|&&e| c.get(e).is_some())
                .count();
            assert_eq!(used + r.missing_sets[v].len(), 4);
            assert_eq!(r.missing_sets[v], c.missing(&tri, v));
        }
    }

    #[test]
    fn parity_examples() {
        // K4: perfect matchings {01,23}, {02,13}, {03,12}
        let k4 = complete(4).unwrap();
        let mut colors = vec![None; 6];
        for (e, &(u, v)) in k4.edges().iter().enumerate() {
            let c = match (u.min(v), u.max(v)) {
                (0, 1) | (2, 3) => 1,
                (0, 2) | (1, 3) => 2,
                _ => 3,
            };
            colors[e] = Some(c);
        }
        assert_eq!(
            parity_signature(&k4, &col(3, &colors)).unwrap(),
            vec![0, 0, 0]
        );

        let c6 = cycle(6).unwrap();
        let colors: Vec<_> = (0..6).map(|e| Some(1 + e % 2)).collect();
        assert_eq!(parity_signature(&c6, &col(2, &colors)).unwrap(), vec![0, 0]);

        // K5 with color (u+v) mod 5: each class is a 2-edge matching.
        let k5 = complete(5).unwrap();
        let colors: Vec<_> = k5
            .edges()
            .iter()
            .map(|&(u, v)| Some(1 + (u + v) % 5))
            .collect();
        assert_eq!(
            parity_signature(&k5, &col(5, &colors)).unwrap(),
            vec![1, 1, 1, 1, 1]
        );

        assert!(parity_signature(&c6, &col(2, &[Some(1); 6])).is_err());
        assert!(parity_signature(&c6, &col(2, &[None; 6])).is_err());
    }
}
