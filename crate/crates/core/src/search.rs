//! Backtracking search for proper partial edge colorings with a bounded
//! number of uncolored edges.
//!
//! The next edge is the undecided one with the fewest available colors
//! (ties: lowest EdgeId). Colors are tried ascending, with all never-used
//! colors treated as one choice, and "leave uncolored" is tried last.
//! A node is cut when the uncolored edges so far plus a local lower bound
//! exceed the allowance.

use std::time::Instant;

use crate::coloring::PartialEdgeColoring;
use crate::graph::MultiGraph;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Node-count limit shared by every search that receives it, with an
/// optional wall-clock deadline checked every 4096 nodes.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: 0,
            deadline: None,
        }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Counts one node; false once the limit is reached.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        if self.used & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.limit = self.used;
        }
        true
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    Found(PartialEdgeColoring),
    Infeasible,
    Unknown,
}

const UNDECIDED: u8 = 0;
const UNCOLORED: u8 = u8::MAX;

struct Exhausted;

struct Dfs<'a> {
    g: &'a MultiGraph,
    palette: usize,
    full: u64,
    state: Vec<u8>,
    used: Vec<u64>,
    open_degree: Vec<u32>,
    uncolored: usize,
    limit: usize,
    decided: usize,
    max_used: usize,
}

impl Dfs<'_> {
    fn run(&mut self, budget: &mut Budget) -> Result<bool, Exhausted> {
        if self.decided == self.g.m() {
            return Ok(true);
        }
        if !budget.tick() {
            return Err(Exhausted);
        }
        let mut forced = 0usize;
        let mut best: Option<(u32, usize, u64)> = None;
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            if self.state[e] != UNDECIDED {
                continue;
            }
            let avail = self.full & !(self.used[u] | self.used[v]);
            let cnt = avail.count_ones();
            if cnt == 0 {
                forced += 1;
            }
            if best.is_none_or(|(c, _, _)| cnt < c) {
                best = Some((cnt, e, avail));
            }
        }
        let room = self.limit - self.uncolored;
        if forced > room {
            return Ok(false);
        }
        if room > 0 {
            let (mut sum_need, mut max_need) = (0usize, 0usize);
            for v in 0..self.g.n() {
                let open = self.open_degree[v] as usize;
                if open == 0 {
                    continue;
                }
                let free = self.palette - self.used[v].count_ones() as usize;
                let need = open.saturating_sub(free);
                sum_need += need;
                max_need = max_need.max(need);
            }
            let lb = forced.max(max_need).max(sum_need.div_ceil(2));
            if lb > room {
                return Ok(false);
            }
        } else if (0..self.g.n()).any(|v| {
            self.open_degree[v] as usize > self.palette - self.used[v].count_ones() as usize
        }) {
            return Ok(false);
        }

        let (_, e, avail) = best.expect("an undecided edge exists");
        let (u, v) = self.g.endpoints(e);
        self.open_degree[u] -= 1;
        self.open_degree[v] -= 1;
        self.decided += 1;
        let cap = (self.max_used + 1).min(self.palette);
        let mut found = false;
        for c in 1..=cap {
            let bit = 1u64 << (c - 1);
            if avail & bit == 0 {
                continue;
            }
            self.state[e] = c as u8;
            self.used[u] |= bit;
            self.used[v] |= bit;
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(c);
            let res = self.run(budget);
            self.max_used = prev_max;
            self.used[u] &= !bit;
            self.used[v] &= !bit;
            match res {
                Ok(true) => {
                    found = true;
                    break;
                }
                Ok(false) => {}
                Err(x) => {
                    self.restore(e, u, v);
                    return Err(x);
                }
            }
        }
        if !found && self.uncolored < self.limit {
            self.state[e] = UNCOLORED;
            self.uncolored += 1;
            let res = self.run(budget);
            if !matches!(res, Ok(true)) {
                self.uncolored -= 1;
            }
            match res {
                Ok(true) => found = true,
                Ok(false) => {}
                Err(x) => {
                    self.restore(e, u, v);
                    return Err(x);
                }
            }
        }
        if !found {
            self.restore(e, u, v);
        }
        Ok(found)
    }

    fn restore(&mut self, e: usize, u: usize, v: usize) {
        self.state[e] = UNDECIDED;
        self.open_degree[u] += 1;
        self.open_degree[v] += 1;
        self.decided -= 1;
    }
}

/// Looks for a proper coloring from `1..=palette` that leaves at most
/// `max_uncolored` edges uncolored.
pub fn color_with_defect(
    g: &MultiGraph,
    palette: usize,
    max_uncolored: usize,
    budget: &mut Budget,
) -> Search {
    assert!(palette <= crate::coloring::MAX_PALETTE, "palette too large");
    let full = if palette == 64 {
        u64::MAX
    } else {
        (1u64 << palette) - 1
    };
    let mut dfs = Dfs {
        g,
        palette,
        full,
        state: vec![UNDECIDED; g.m()],
        used: vec![0; g.n()],
        open_degree: g.degrees().into_iter().map(|d| d as u32).collect(),
        uncolored: 0,
        limit: max_uncolored.min(g.m()),
        decided: 0,
        max_used: 0,
    };
    match dfs.run(budget) {
        Ok(true) => {
            let colors = dfs
                .state
                .iter()
                .map(|&s| (s != UNCOLORED).then_some(s as usize))
                .collect();
            Search::Found(PartialEdgeColoring::from_colors(palette, colors).expect("in palette"))
        }
        Ok(false) => Search::Infeasible,
        Err(Exhausted) => Search::Unknown,
    }
}
