//! Certificates and their independent verification.

use serde::{Deserialize, Serialize};

use crate::coloring::{verify, Color, PartialEdgeColoring};
use crate::error::Result;
use crate::factor::{validate, TwoFactorization};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};
use crate::search::Budget;
use crate::solver::{try_color, Colorability};
use crate::vertex::{replay, DeletionMode, ReinsertionTrace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Coloring {
        palette: usize,
        colors: Vec<Option<Color>>,
    },
    /// Deleting `edges` leaves a `Δ(G)`-edge-colorable graph.
    EdgeDeletion { edges: Vec<EdgeId> },
    Factorization {
        one_factor: Option<Vec<EdgeId>>,
        two_factors: Vec<Vec<EdgeId>>,
        odd_cycles: usize,
    },
    VertexDeletion {
        mode: DeletionMode,
        vertices: Vec<Vertex>,
    },
    ReinsertionTrace {
        palette: usize,
        input: Vec<Option<Color>>,
        output: Vec<Option<Color>>,
        trace: ReinsertionTrace,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Coloring { .. } => "coloring",
            Certificate::EdgeDeletion { .. } => "edge-deletion",
            Certificate::Factorization { .. } => "factorization",
            Certificate::VertexDeletion { .. } => "vertex-deletion",
            Certificate::ReinsertionTrace { .. } => "reinsertion-trace",
        }
    }

    pub fn coloring(col: &PartialEdgeColoring) -> Self {
        Certificate::Coloring {
            palette: col.palette(),
            colors: col.colors().to_vec(),
        }
    }

    pub fn factorization(f: &TwoFactorization) -> Self {
        Certificate::Factorization {
            one_factor: f.one_factor.as_ref().map(|m| m.as_slice().to_vec()),
            two_factors: f
                .two_factors
                .iter()
                .map(|t| t.edges.as_slice().to_vec())
                .collect(),
            odd_cycles: f.odd_cycles,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertCheck {
    pub ok: bool,
    pub kind: &'static str,
    /// The quantity the certificate witnesses: uncolored edges, odd cycles,
    /// deleted edges or vertices.
    pub value: Option<usize>,
    pub reason: String,
}

impl CertCheck {
    fn pass(kind: &'static str, value: usize, reason: impl Into<String>) -> Self {
        CertCheck {
            ok: true,
            kind,
            value: Some(value),
            reason: reason.into(),
        }
    }

    fn fail(kind: &'static str, reason: impl Into<String>) -> Self {
        CertCheck {
            ok: false,
            kind,
            value: None,
            reason: reason.into(),
        }
    }
}

fn remainder_colorable(
    h: &MultiGraph,
    palette: usize,
    budget: &mut Budget,
) -> std::result::Result<(), String> {
    match try_color(h, palette, budget) {
        Colorability::Colorable(col) => {
            let rep = verify(h, &col).map_err(|e| e.to_string())?;
            if rep.proper && rep.uncolored_count == 0 {
                Ok(())
            } else {
                Err("internal coloring of the remainder failed verification".into())
            }
        }
        Colorability::Obstructed(obs) => Err(format!(
            "remainder is not {palette}-edge-colorable (obstruction on vertices {:?})",
            obs[0].vertices.as_slice()
        )),
        Colorability::Unknown => Err("budget exhausted while coloring the remainder".into()),
    }
}

/// Re-checks a certificate against `g` without trusting any solver state.
/// `Err` is returned only for malformed input (wrong length, bad ids).
pub fn verify_certificate(
    g: &MultiGraph,
    cert: &Certificate,
    budget: &mut Budget,
) -> Result<CertCheck> {
    let kind = cert.kind();
    Ok(match cert {
        Certificate::Coloring { palette, colors } => {
            let col = PartialEdgeColoring::from_colors(*palette, colors.clone())?;
            let rep = verify(g, &col)?;
            match rep.conflicts.first() {
                Some(c) => CertCheck::fail(
                    kind,
                    format!(
                        "conflict at vertex {}: edges {:?} share color {}",
                        c.vertex, c.edges, c.color
                    ),
                ),
                None => CertCheck::pass(
                    kind,
                    rep.uncolored_count,
                    format!(
                        "proper {palette}-coloring with {} uncolored edges",
                        rep.uncolored_count
                    ),
                ),
            }
        }
        Certificate::EdgeDeletion { edges } => {
            let es = EdgeSet::new(edges.iter().copied());
            let h = g.delete(&VertexSet::empty(), &es)?;
            match remainder_colorable(&h.graph, g.max_degree(), budget) {
                Ok(()) => CertCheck::pass(
                    kind,
                    es.len(),
                    format!(
                        "G minus {} edges is {}-edge-colorable",
                        es.len(),
                        g.max_degree()
                    ),
                ),
                Err(why) => CertCheck::fail(kind, why),
            }
        }
        Certificate::Factorization {
            one_factor,
            two_factors,
            odd_cycles,
        } => {
            let f = match TwoFactorization::new(
                g,
                one_factor.as_ref().map(|m| EdgeSet::new(m.iter().copied())),
                two_factors
                    .iter()
                    .map(|t| EdgeSet::new(t.iter().copied()))
                    .collect(),
            ) {
                Ok(f) => f,
                Err(e) => return Ok(CertCheck::fail(kind, e.to_string())),
            };
            if let Err(e) = validate(g, &f) {
                CertCheck::fail(kind, e.to_string())
            } else if f.odd_cycles != *odd_cycles {
                CertCheck::fail(
                    kind,
                    format!("claims {odd_cycles} odd cycles, found {}", f.odd_cycles),
                )
            } else if g.regular_degree().is_some_and(|s| {
                s / 2 != f.two_factors.len() || (s % 2 == 1) != f.one_factor.is_some()
            }) {
                CertCheck::fail(kind, "factor count does not match the degree")
            } else {
                CertCheck::pass(
                    kind,
                    f.odd_cycles,
                    format!("2-factorization with {} odd cycles", f.odd_cycles),
                )
            }
        }
        Certificate::VertexDeletion { mode, vertices } => {
            let vs = VertexSet::new(vertices.iter().copied());
            let h = g.delete(&vs, &EdgeSet::empty())?;
            let palette = match mode {
                DeletionMode::Class1 => h.graph.max_degree(),
                DeletionMode::WithinOriginalDelta => g.max_degree(),
            };
            match remainder_colorable(&h.graph, palette, budget) {
                Ok(()) => CertCheck::pass(
                    kind,
                    vs.len(),
                    format!("G minus {} vertices is {palette}-edge-colorable", vs.len()),
                ),
                Err(why) => CertCheck::fail(kind, why),
            }
        }
        Certificate::ReinsertionTrace {
            palette,
            input,
            output,
            trace,
        } => {
            let before = PartialEdgeColoring::from_colors(*palette, input.clone())?;
            let after = PartialEdgeColoring::from_colors(*palette, output.clone())?;
            let replayed = match replay(g, &before, trace) {
                Ok(c) => c,
                Err(e) => return Ok(CertCheck::fail(kind, e.to_string())),
            };
            let away = |c: &PartialEdgeColoring| {
                c.uncolored_edges()
                    .into_iter()
                    .filter(|&e| {
                        let (a, b) = g.endpoints(e);
                        a != trace.vertex && b != trace.vertex
                    })
                    .count()
            };
            let at_v = replayed.uncolored_edges().len() - away(&replayed);
            if replayed != after {
                CertCheck::fail(kind, "replay does not reproduce the output coloring")
            } else if away(&replayed) != away(&before) {
                CertCheck::fail(kind, "uncolored edges away from the vertex changed")
            } else if at_v > g.degree(trace.vertex) / 2 {
                CertCheck::fail(
                    kind,
                    format!("{at_v} uncolored edges at the vertex exceed half its degree"),
                )
            } else {
                CertCheck::pass(kind, at_v, format!("{} steps replayed", trace.steps.len()))
            }
        }
    })
}
