//! Exact chromatic index and resistance.
//!
//! Both solvers work per connected component and always return a verified
//! coloring for their upper bound. When the node budget runs out the result
//! carries `lower < upper` instead of a guess.

use serde::Serialize;

use crate::bounds::{lower_bound, most_overfull_set, Obstruction};
use crate::coloring::{verify, PartialEdgeColoring, MAX_PALETTE};
use crate::graph::{Deletion, EdgeSet, MultiGraph, VertexSet};
use crate::search::{color_with_defect, Budget, Search};
use crate::vertex::reinsertion_coloring;

/// Chromatic index with a total coloring using `upper` colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticIndex {
    pub lower: usize,
    pub upper: usize,
    pub coloring: PartialEdgeColoring,
}

impl ChromaticIndex {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Minimum number of uncolored edges under a fixed palette, with a coloring
/// that leaves exactly `upper` edges uncolored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resistance {
    pub palette: usize,
    pub lower: usize,
    pub upper: usize,
    pub coloring: PartialEdgeColoring,
}

impl Resistance {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }

    /// The uncolored edges: removing them leaves a `palette`-colorable graph.
    pub fn deletion_set(&self) -> EdgeSet {
        self.coloring.uncolored_edges().into_iter().collect()
    }
}

fn nontrivial_components(g: &MultiGraph) -> Vec<Deletion> {
    g.components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| g.induced(&c))
        .collect()
}

fn lift(target: &mut [Option<usize>], part: &Deletion, col: &PartialEdgeColoring) {
    for (e, &c) in col.colors().iter().enumerate() {
        target[part.edge_origin[e]] = c;
    }
}

/// First-fit total coloring; uses at most `2Δ - 1` colors.
fn greedy_total(g: &MultiGraph) -> PartialEdgeColoring {
    let mut colors: Vec<Option<usize>> = vec![None; g.m()];
    let mut palette = 0;
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        let mut c = 1;
        while g
            .incident(u)
            .iter()
            .chain(g.incident(v))
            .any(|&f| colors[f] == Some(c))
        {
            c += 1;
        }
        colors[e] = Some(c);
        palette = palette.max(c);
    }
    PartialEdgeColoring::from_colors(palette, colors).expect("palette fits")
}

fn component_chromatic_index(g: &MultiGraph, budget: &mut Budget) -> ChromaticIndex {
    let delta = g.max_degree();
    let fallback = greedy_total(g);
    let upper = fallback.palette();
    for c in delta..upper {
        if c > MAX_PALETTE {
            break;
        }
        if most_overfull_set(g, c).is_some() || lower_bound(g, c, budget).value > 0 {
            continue;
        }
        match color_with_defect(g, c, 0, budget) {
            Search::Found(col) => {
                return ChromaticIndex {
                    lower: c,
                    upper: c,
                    coloring: col,
                }
            }
            Search::Infeasible => {}
            Search::Unknown => {
                return ChromaticIndex {
                    lower: c,
                    upper,
                    coloring: fallback,
                }
            }
        }
    }
    ChromaticIndex {
        lower: upper,
        upper,
        coloring: fallback,
    }
}

/// Exact chromatic index; tries `Δ, Δ+1, …` per component.
pub fn chromatic_index(g: &MultiGraph, budget: &mut Budget) -> ChromaticIndex {
    let mut lower = 0;
    let mut upper = 0;
    let mut colors = vec![None; g.m()];
    for part in nontrivial_components(g) {
        let ci = component_chromatic_index(&part.graph, budget);
        lower = lower.max(ci.lower);
        upper = upper.max(ci.upper);
        lift(&mut colors, &part, &ci.coloring);
    }
    let coloring = PartialEdgeColoring::from_colors(upper, colors).expect("palette fits");
    debug_assert!(verify(g, &coloring).unwrap().proper);
    ChromaticIndex {
        lower,
        upper,
        coloring,
    }
}

fn component_resistance(g: &MultiGraph, palette: usize, budget: &mut Budget) -> Resistance {
    let heuristic = reinsertion_coloring(g, palette);
    let upper = heuristic.uncolored_count();
    let lb = lower_bound(g, palette, budget).value;
    debug_assert!(
        lb <= upper,
        "lower bound {lb} above a realized coloring {upper}"
    );
    for t in lb..upper {
        match color_with_defect(g, palette, t, budget) {
            Search::Found(col) => {
                debug_assert_eq!(col.uncolored_count(), t);
                return Resistance {
                    palette,
                    lower: t,
                    upper: t,
                    coloring: col,
                };
            }
            Search::Infeasible => {}
            Search::Unknown => {
                return Resistance {
                    palette,
                    lower: t,
                    upper,
                    coloring: heuristic,
                }
            }
        }
    }
    Resistance {
        palette,
        lower: upper,
        upper,
        coloring: heuristic,
    }
}

/// Fewest uncolored edges in a proper `palette`-coloring, by iterative
/// deepening on the allowance from a certified lower bound.
pub fn resistance_with_palette(g: &MultiGraph, palette: usize, budget: &mut Budget) -> Resistance {
    assert!(palette >= g.max_degree(), "palette below maximum degree");
    let mut lower = 0;
    let mut upper = 0;
    let mut colors = vec![None; g.m()];
    for part in nontrivial_components(g) {
        let r = component_resistance(&part.graph, palette, budget);
        lower += r.lower;
        upper += r.upper;
        lift(&mut colors, &part, &r.coloring);
    }
    let coloring = PartialEdgeColoring::from_colors(palette, colors).expect("palette fits");
    Resistance {
        palette,
        lower,
        upper,
        coloring,
    }
}

/// Outcome of asking whether a graph has a total `palette`-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    Colorable(PartialEdgeColoring),
    /// Certified reasons why not, as vertex sets of the input graph.
    Obstructed(Vec<Obstruction>),
    Unknown,
}

/// Total `palette`-coloring of `g`, or the subgraphs that prevent one.
pub fn try_color(g: &MultiGraph, palette: usize, budget: &mut Budget) -> Colorability {
    let mut colors = vec![None; g.m()];
    let mut obstructions = Vec::new();
    let mut unknown = false;
    for part in nontrivial_components(g) {
        let lift_set =
            |x: &VertexSet| -> VertexSet { x.iter().map(|v| part.vertex_origin[v]).collect() };
        let h = &part.graph;
        let whole: VertexSet = (0..h.n()).collect();
        if palette < h.max_degree() || palette > MAX_PALETTE {
            obstructions.push(Obstruction {
                vertices: lift_set(&whole),
                deficit: 1,
                palette,
            });
            continue;
        }
        if let Some((x, deficit)) = most_overfull_set(h, palette) {
            obstructions.push(Obstruction {
                vertices: lift_set(&x),
                deficit,
                palette,
            });
            continue;
        }
        let lb = lower_bound(h, palette, budget);
        if lb.value > 0 {
            obstructions.extend(lb.witnesses.iter().map(|w| Obstruction {
                vertices: lift_set(&w.vertices),
                deficit: w.deficit,
                palette,
            }));
            continue;
        }
        match color_with_defect(h, palette, 0, budget) {
            Search::Found(col) => lift(&mut colors, &part, &col),
            Search::Infeasible => obstructions.push(Obstruction {
                vertices: lift_set(&whole),
                deficit: 1,
                palette,
            }),
            Search::Unknown => unknown = true,
        }
    }
    if !obstructions.is_empty() {
        Colorability::Obstructed(obstructions)
    } else if unknown {
        Colorability::Unknown
    } else {
        Colorability::Colorable(
            PartialEdgeColoring::from_colors(palette.min(MAX_PALETTE), colors)
                .expect("palette fits"),
        )
    }
}

/// Resistance with the palette fixed to `Δ(G)`.
pub fn resistance(g: &MultiGraph, budget: &mut Budget) -> Resistance {
    resistance_with_palette(g, g.max_degree(), budget)
}

/// `G` minus the resistance deletion set.
pub fn max_colorable_subgraph(g: &MultiGraph, budget: &mut Budget) -> (Deletion, Resistance) {
    let r = resistance(g, budget);
    let h = g
        .delete(&VertexSet::empty(), &r.deletion_set())
        .expect("ids in range");
    (h, r)
}
