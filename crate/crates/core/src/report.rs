//! Per-graph measurement reports and the invariant survey.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::bounds::is_s_graph_by_cuts;
use crate::cert::{verify_certificate, Certificate};
use crate::coloring::parity_signature;
use crate::factor::{canonical_coloring, oddness, Oddness, OddnessValue};
use crate::graph::{MultiGraph, VertexSet};
use crate::search::{Budget, DEFAULT_NODE_BUDGET};
use crate::solver::{chromatic_index, resistance, ChromaticIndex, Resistance};
use crate::vertex::{rebuild, vertex_measure, DeletionMode, VertexMeasure, DEFAULT_SUBSET_BUDGET};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Chi,
    R,
    Rv,
    Rvp,
    Oddness,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Chi,
        Measure::R,
        Measure::Rv,
        Measure::Rvp,
        Measure::Oddness,
    ];
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Node budget for each measure separately.
    pub node_budget: u64,
    pub subset_budget: u64,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: DEFAULT_NODE_BUDGET,
            subset_budget: DEFAULT_SUBSET_BUDGET,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn budget(&self) -> Budget {
        let b = Budget::new(self.node_budget);
        match self.deadline {
            Some(d) => b.with_deadline(d),
            None => b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    Infinite,
    Unknown,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub status: Status,
    pub value: Option<usize>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    /// Path of the written certificate, filled in by the caller.
    pub certificate: Option<String>,
}

impl Entry {
    fn bounds(lower: usize, upper: usize) -> Self {
        let exact = lower == upper;
        Entry {
            status: if exact {
                Status::Exact
            } else {
                Status::Unknown
            },
            value: exact.then_some(upper),
            lower: Some(lower),
            upper: Some(upper),
            certificate: None,
        }
    }

    fn not_applicable() -> Self {
        Entry {
            status: Status::NotApplicable,
            value: None,
            lower: None,
            upper: None,
            certificate: None,
        }
    }

    /// Value for tables: a number, `inf`, `?[lo,hi]` or `-`.
    pub fn display(&self) -> String {
        match self.status {
            Status::Exact => self.value.map_or("-".into(), |v| v.to_string()),
            Status::Infinite => "inf".into(),
            Status::NotApplicable => "-".into(),
            Status::Unknown => match (self.lower, self.upper) {
                (Some(l), Some(u)) => format!("?[{l},{u}]"),
                (Some(l), None) => format!("?[{l},)"),
                _ => "?".into(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub schema: u32,
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub regular: Option<usize>,
    pub simple: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic_index: Option<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resistance: Option<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_v: Option<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_v_prime: Option<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oddness: Option<Entry>,
}

impl MeasureReport {
    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        [
            &self.chromatic_index,
            &self.resistance,
            &self.r_v,
            &self.r_v_prime,
            &self.oddness,
        ]
        .into_iter()
        .flatten()
    }

    pub fn has_unknowns(&self) -> bool {
        self.entries().any(|e| e.status == Status::Unknown)
    }

    pub fn entry_mut(&mut self, key: &str) -> Option<&mut Entry> {
        match key {
            "chi" => self.chromatic_index.as_mut(),
            "r" | "r-deletion" => self.resistance.as_mut(),
            "rv" => self.r_v.as_mut(),
            "rvp" => self.r_v_prime.as_mut(),
            "oddness" => self.oddness.as_mut(),
            _ => None,
        }
    }
}

/// Everything computed for one graph.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub report: MeasureReport,
    /// Keyed by `chi`, `r`, `r-deletion`, `rv`, `rvp`, `oddness`.
    pub certificates: BTreeMap<&'static str, Certificate>,
    pub chi: Option<ChromaticIndex>,
    pub r: Option<Resistance>,
    pub rv: Option<VertexMeasure>,
    pub rvp: Option<VertexMeasure>,
    pub xi: Option<Oddness>,
}

pub fn measure(name: &str, g: &MultiGraph, which: &[Measure], limits: &Limits) -> Measurement {
    let mut out = Measurement {
        report: MeasureReport {
            schema: SCHEMA,
            name: name.to_string(),
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            regular: g.regular_degree(),
            simple: g.is_simple(),
            chromatic_index: None,
            resistance: None,
            r_v: None,
            r_v_prime: None,
            oddness: None,
        },
        certificates: BTreeMap::new(),
        chi: None,
        r: None,
        rv: None,
        rvp: None,
        xi: None,
    };
    if which.contains(&Measure::Chi) {
        let ci = chromatic_index(g, &mut limits.budget());
        out.report.chromatic_index = Some(Entry::bounds(ci.lower, ci.upper));
        out.certificates
            .insert("chi", Certificate::coloring(&ci.coloring));
        out.chi = Some(ci);
    }
    if which.contains(&Measure::R) {
        let r = resistance(g, &mut limits.budget());
        out.report.resistance = Some(Entry::bounds(r.lower, r.upper));
        out.certificates
            .insert("r", Certificate::coloring(&r.coloring));
        out.certificates.insert(
            "r-deletion",
            Certificate::EdgeDeletion {
                edges: r.deletion_set().into_vec(),
            },
        );
        out.r = Some(r);
    }
    for (m, mode, key) in [
        (Measure::Rv, DeletionMode::Class1, "rv"),
        (Measure::Rvp, DeletionMode::WithinOriginalDelta, "rvp"),
    ] {
        if !which.contains(&m) {
            continue;
        }
        let vm = vertex_measure(g, mode, &mut limits.budget(), limits.subset_budget);
        let entry = Entry::bounds(vm.lower, vm.upper);
        out.certificates.insert(
            key,
            Certificate::VertexDeletion {
                mode,
                vertices: vm.witness.as_slice().to_vec(),
            },
        );
        if m == Measure::Rv {
            out.report.r_v = Some(entry);
            out.rv = Some(vm);
        } else {
            out.report.r_v_prime = Some(entry);
            out.rvp = Some(vm);
        }
    }
    if which.contains(&Measure::Oddness) {
        let entry = match oddness(g, &mut limits.budget()) {
            Err(_) => Entry::not_applicable(),
            Ok(o) => {
                if let Some(w) = &o.witness {
                    out.certificates
                        .insert("oddness", Certificate::factorization(w));
                }
                let e = match o.value {
                    Some(OddnessValue::Finite(x)) => Entry::bounds(x, x),
                    Some(OddnessValue::Infinite) => Entry {
                        status: Status::Infinite,
                        ..Entry::not_applicable()
                    },
                    None => Entry {
                        status: Status::Unknown,
                        value: None,
                        lower: Some(o.lower),
                        upper: o.witness.as_ref().map(|w| w.odd_cycles),
                        certificate: None,
                    },
                };
                out.xi = Some(o);
                e
            }
        };
        out.report.oddness = Some(entry);
    }
    out
}

/// Human-readable two-column table of a report.
pub fn report_table(r: &MeasureReport) -> String {
    let mut s = format!(
        "graph {}: n={} m={} Δ={} regular={} simple={}\n",
        r.name,
        r.n,
        r.m,
        r.max_degree,
        r.regular.map_or("no".to_string(), |d| d.to_string()),
        r.simple
    );
    for (label, e) in [
        ("chi'", &r.chromatic_index),
        ("r", &r.resistance),
        ("r_v", &r.r_v),
        ("r'_v", &r.r_v_prime),
        ("xi", &r.oddness),
    ] {
        if let Some(e) = e {
            s.push_str(&format!("  {label:<5} {}\n", e.display()));
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cell {
    Pass,
    Fail,
    /// Does not apply to this graph.
    Na,
    /// Needed a value the solvers could not settle.
    Unknown,
}

impl Cell {
    fn from(ok: bool) -> Self {
        if ok {
            Cell::Pass
        } else {
            Cell::Fail
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cell::Pass => "ok",
            Cell::Fail => "FAIL",
            Cell::Na => "-",
            Cell::Unknown => "?",
        }
    }
}

/// Invariant columns of the survey, in display order.
pub const INVARIANTS: [&str; 12] = [
    "certs",
    "parity",
    "class1",
    "r<=xi",
    "r!=1",
    "r2<=>xi2",
    "odd-order",
    "xi-even",
    "maxsub",
    "ratio",
    "rv'<=rv",
    "rebuild",
];

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub name: String,
    pub report: MeasureReport,
    pub s_graph: Option<bool>,
    pub checks: BTreeMap<&'static str, Cell>,
    /// One line per failed or undecided check.
    pub notes: Vec<String>,
}

impl SurveyRow {
    pub fn failed(&self) -> bool {
        self.checks.values().any(|&c| c == Cell::Fail)
    }

    pub fn undecided(&self) -> bool {
        self.checks.values().any(|&c| c == Cell::Unknown)
    }
}

struct Checks {
    cells: BTreeMap<&'static str, Cell>,
    notes: Vec<String>,
}

impl Checks {
    fn set(&mut self, key: &'static str, cell: Cell, note: impl FnOnce() -> String) {
        if matches!(cell, Cell::Fail | Cell::Unknown) {
            self.notes.push(format!("{key}: {}", note()));
        }
        // a failure is never overwritten by a later pass
        let slot = self.cells.entry(key).or_insert(Cell::Na);
        if *slot != Cell::Fail {
            *slot = cell;
        }
    }
}

/// Measures everything and checks every invariant that applies.
pub fn survey_graph(name: &str, g: &MultiGraph, limits: &Limits) -> SurveyRow {
    let m = measure(name, g, &Measure::ALL, limits);
    let mut c = Checks {
        cells: INVARIANTS.iter().map(|&k| (k, Cell::Na)).collect(),
        notes: Vec::new(),
    };
    let chi = m.chi.as_ref().and_then(|x| x.exact());
    let r = m.r.as_ref().and_then(|x| x.exact());
    let rv = m.rv.as_ref().and_then(|x| x.exact());
    let rvp = m.rvp.as_ref().and_then(|x| x.exact());
    let xi = m.xi.as_ref().and_then(|o| o.value);
    let delta = g.max_degree();
    let s = g.regular_degree();
    let even_order = g.n().is_multiple_of(2);

    let mut vb = limits.budget();
    for (key, cert) in &m.certificates {
        match verify_certificate(g, cert, &mut vb) {
            Ok(chk) if chk.ok => {
                let expected = match *key {
                    "chi" => Some(0),
                    "r" | "r-deletion" => m.r.as_ref().map(|x| x.upper),
                    "rv" => m.rv.as_ref().map(|x| x.upper),
                    "rvp" => m.rvp.as_ref().map(|x| x.upper),
                    "oddness" => {
                        m.xi.as_ref()
                            .and_then(|o| o.witness.as_ref())
                            .map(|w| w.odd_cycles)
                    }
                    _ => None,
                };
                let ok = expected.is_none() || chk.value == expected;
                c.set("certs", Cell::from(ok), || {
                    format!(
                        "{key} certificate witnesses {:?}, expected {expected:?}",
                        chk.value
                    )
                });
            }
            Ok(chk) if chk.reason.contains("budget") => {
                c.set("certs", Cell::Unknown, || format!("{key}: {}", chk.reason))
            }
            Ok(chk) => c.set("certs", Cell::Fail, || format!("{key}: {}", chk.reason)),
            Err(e) => c.set("certs", Cell::Fail, || format!("{key}: {e}")),
        }
    }

    if let Some(ci) = &m.chi {
        let ok = ci.coloring.is_total() && parity_signature(g, &ci.coloring).is_ok();
        c.set("parity", Cell::from(ok), || {
            "parity signature rejected the total coloring".into()
        });
    }

    match (chi, r) {
        (Some(chi), Some(r)) => {
            let mut ok = (r == 0) == (chi == delta);
            if let (Some(s), Some(OddnessValue::Finite(x))) = (s, xi) {
                if s >= 2 {
                    ok &= (r == 0) == (x == 0) && (x == 0) == (chi == s);
                }
            }
            c.set("class1", Cell::from(ok), || {
                format!("r={r} chi'={chi} xi={xi:?}")
            });
        }
        _ => c.set("class1", Cell::Unknown, || "chi' or r unknown".into()),
    }

    if let Some(s) = s {
        if let Some(OddnessValue::Finite(x)) = xi {
            match r {
                Some(r) => c.set("r<=xi", Cell::from(r <= x), || format!("r={r} > xi={x}")),
                None => c.set("r<=xi", Cell::Unknown, || "r unknown".into()),
            }
            if let Some(w) = m.xi.as_ref().and_then(|o| o.witness.as_ref()) {
                let canon = canonical_coloring(g, w);
                let ok = canon.is_ok_and(|col| col.uncolored_count() == x && col.palette() == s);
                c.set("r<=xi", Cell::from(ok), || {
                    "canonical coloring does not realize xi".into()
                });
            }
        }
        if even_order && s >= 1 {
            match r {
                Some(r) => c.set("r!=1", Cell::from(r != 1), || "r = 1".into()),
                None => c.set("r!=1", Cell::Unknown, || "r unknown".into()),
            }
            match (r, xi) {
                (Some(r), Some(x)) => {
                    let ok = (r == 2) == (x == OddnessValue::Finite(2));
                    c.set("r2<=>xi2", Cell::from(ok), || format!("r={r} xi={x:?}"));
                }
                _ => c.set("r2<=>xi2", Cell::Unknown, || "r or xi unknown".into()),
            }
        }
        if !even_order && s >= 1 {
            let half = s / 2;
            let xi_ok = match xi {
                Some(OddnessValue::Finite(x)) => Some(x >= half),
                Some(OddnessValue::Infinite) => Some(true),
                None => None,
            };
            match (r, xi_ok) {
                (Some(r), Some(xo)) => c.set("odd-order", Cell::from(r >= half && xo), || {
                    format!("r={r} xi={xi:?} s/2={half}")
                }),
                _ => c.set("odd-order", Cell::Unknown, || "r or xi unknown".into()),
            }
        }
    }

    let s_graph = s.map(|_| is_s_graph_by_cuts(g).expect("regular"));
    if s_graph == Some(true) {
        match xi {
            Some(OddnessValue::Finite(x)) => c.set("xi-even", Cell::from(x % 2 == 0), || {
                format!("xi={x} is odd")
            }),
            Some(OddnessValue::Infinite) => {}
            None => c.set("xi-even", Cell::Unknown, || "xi unknown".into()),
        }
    }

    if let Some(res) = m.r.as_ref().filter(|x| x.exact().is_some()) {
        let h = g
            .delete(&VertexSet::empty(), &res.deletion_set())
            .expect("ids in range")
            .graph;
        let dh = h.max_degree();
        let ok = 3 * dh >= 2 * delta && (!g.is_simple() || dh == delta);
        c.set("maxsub", Cell::from(ok), || {
            format!("Δ(H)={dh} for Δ(G)={delta}")
        });
    }

    let half = delta / 2;
    match (r, rv, rvp) {
        (Some(r), Some(rv), Some(rvp)) => {
            let ok = r <= rv * half && r <= rvp * half;
            c.set("ratio", Cell::from(ok), || {
                format!("r={r} r_v={rv} r'_v={rvp} floor(Δ/2)={half}")
            });
        }
        _ => c.set("ratio", Cell::Unknown, || "r, r_v or r'_v unknown".into()),
    }
    match (rv, rvp) {
        (Some(a), Some(b)) => c.set("rv'<=rv", Cell::from(b <= a), || {
            format!("r'_v={b} > r_v={a}")
        }),
        _ => c.set("rv'<=rv", Cell::Unknown, || "r_v or r'_v unknown".into()),
    }

    if let Some(vm) = m.rvp.as_ref().filter(|x| x.exact().is_some()) {
        match rebuild(g, vm.witness.as_slice(), &mut limits.budget()) {
            Ok(rb) => {
                let bound = vm.upper * half;
                let per_vertex = rb
                    .traces
                    .iter()
                    .all(|t| t.uncolored_at_vertex <= t.degree / 2);
                let ok =
                    rb.upper_bound <= bound && r.is_none_or(|r| r <= rb.upper_bound) && per_vertex;
                c.set("rebuild", Cell::from(ok), || {
                    format!(
                        "rebuild left {} uncolored, bound {bound}, r={r:?}",
                        rb.upper_bound
                    )
                });
            }
            Err(e) => c.set("rebuild", Cell::Unknown, || e.to_string()),
        }
    }

    SurveyRow {
        name: name.to_string(),
        report: m.report,
        s_graph,
        checks: c.cells,
        notes: c.notes,
    }
}

pub fn survey_header() -> String {
    let mut s = format!(
        "{:<28} {:>4} {:>4} {:>3} {:>5} {:>6} {:>6} {:>6} {:>6}",
        "graph", "n", "m", "Δ", "chi'", "r", "r_v", "r'_v", "xi"
    );
    for k in INVARIANTS {
        s.push_str(&format!(" {k:>9}"));
    }
    s
}

pub fn survey_line(row: &SurveyRow) -> String {
    let e = |x: &Option<Entry>| x.as_ref().map_or("-".to_string(), |e| e.display());
    let r = &row.report;
    let mut s = format!(
        "{:<28} {:>4} {:>4} {:>3} {:>5} {:>6} {:>6} {:>6} {:>6}",
        row.name,
        r.n,
        r.m,
        r.max_degree,
        e(&r.chromatic_index),
        e(&r.resistance),
        e(&r.r_v),
        e(&r.r_v_prime),
        e(&r.oddness)
    );
    for k in INVARIANTS {
        s.push_str(&format!(
            " {:>9}",
            row.checks.get(k).copied().unwrap_or(Cell::Na).symbol()
        ));
    }
    s
}
