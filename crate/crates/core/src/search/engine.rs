//! Depth-first search for ±1 sequence tuples whose autocorrelations sum to
//! zero at every positive shift.
//!
//! A [`Layout`] lists the sequences and, for each cell, the free variable
//! and sign it takes. Variables are assigned from the ends of the
//! sequences inwards, so that high-shift products are fixed early. After
//! each assignment the partial sum `S_j` of every touched shift is compared
//! with the number `U_j` of products still open: a completion needs
//! `|S_j| <= U_j` and `S_j ≡ U_j (mod 2)`.
//!
//! The first `prefix_bits` variables are split off into work units, one
//! per assignment. Node counts cover only the depths below the prefix, so
//! they do not depend on how units are spread over shards or threads.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Cell `(var, sign)`: the entry equals `sign * x_var`.
#[derive(Clone, Debug)]
pub struct Layout {
    lens: Vec<usize>,
    cells: Vec<Vec<(usize, i8)>>,
    nvars: usize,
}

impl Layout {
    fn independent(lens: &[usize]) -> Self {
        let mut next = 0;
        let cells = lens
            .iter()
            .map(|&n| {
                (0..n)
                    .map(|_| {
                        next += 1;
                        (next - 1, 1)
                    })
                    .collect()
            })
            .collect();
        Layout { lens: lens.to_vec(), cells, nvars: next }
    }

    /// Two free sequences of length `g`.
    pub fn golay(g: usize) -> Self {
        Self::independent(&[g, g])
    }

    /// Free `(A;B;C;D)` with lengths `(r,r,s,s)`.
    pub fn base(r: usize, s: usize) -> Self {
        Self::independent(&[r, r, s, s])
    }

    /// `(A;B;C;D)` in BS(l+1,l) with `b_i = sign(i) a_i` for `i < l`.
    fn linked(l: usize, sign: impl Fn(usize) -> i8) -> Self {
        let a: Vec<(usize, i8)> = (0..=l).map(|i| (i, 1)).collect();
        let mut b: Vec<(usize, i8)> = (0..l).map(|i| (i, sign(i))).collect();
        b.push((l + 1, 1));
        let c = (0..l).map(|i| (l + 2 + i, 1)).collect();
        let d = (0..l).map(|i| (2 * l + 2 + i, 1)).collect();
        Layout { lens: vec![l + 1, l + 1, l, l], cells: vec![a, b, c, d], nvars: 3 * l + 2 }
    }

    pub fn normal(l: usize) -> Self {
        Self::linked(l, |_| 1)
    }

    pub fn near_normal(l: usize) -> Self {
        Self::linked(l, |i| if i % 2 == 0 { 1 } else { -1 })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn lens(&self) -> &[usize] {
        &self.lens
    }
}

#[derive(Clone, Copy, Debug)]
struct Term {
    shift: usize,
    coef: i8,
    other: usize,
}

/// Precomputed schedule for one layout.
#[derive(Clone, Debug)]
pub struct Plan {
    layout: Layout,
    /// depth -> variable
    order: Vec<usize>,
    /// variable -> depth
    depth_of: Vec<usize>,
    terms: Vec<Vec<Term>>,
    touched: Vec<Vec<usize>>,
    /// `open[d][j]`: products at shift j not yet fixed once depth d is assigned.
    open: Vec<Vec<i32>>,
    shifts: usize,
}

impl Plan {
    pub fn new(layout: Layout) -> Self {
        let mut keyed: Vec<(usize, usize, usize)> = Vec::new();
        for (k, &n) in layout.lens.iter().enumerate() {
            for p in 0..n {
                keyed.push((p.min(n - 1 - p), k, p));
            }
        }
        keyed.sort_unstable();
        let mut depth_of = vec![usize::MAX; layout.nvars];
        let mut order = Vec::with_capacity(layout.nvars);
        for &(_, k, p) in &keyed {
            let v = layout.cells[k][p].0;
            if depth_of[v] == usize::MAX {
                depth_of[v] = order.len();
                order.push(v);
            }
        }
        for (v, d) in depth_of.iter_mut().enumerate() {
            if *d == usize::MAX {
                *d = order.len();
                order.push(v);
            }
        }
        let nv = layout.nvars;
        let shifts = layout.lens.iter().copied().max().unwrap_or(0);
        let mut terms = vec![Vec::new(); nv];
        let mut per_depth_count = vec![vec![0i32; shifts]; nv];
        for (k, &n) in layout.lens.iter().enumerate() {
            #[allow(clippy::needless_range_loop)]
            for j in 1..n {
                for i in 0..n - j {
                    let (va, sa) = layout.cells[k][i];
                    let (vb, sb) = layout.cells[k][i + j];
                    let (da, db) = (depth_of[va], depth_of[vb]);
                    let (d, other) = if da >= db { (da, db) } else { (db, da) };
                    terms[d].push(Term { shift: j, coef: sa * sb, other });
                    per_depth_count[d][j] += 1;
                }
            }
        }
        let mut open = vec![vec![0i32; shifts]; nv];
        let mut remaining: Vec<i32> = (0..shifts).map(|j| per_depth_count.iter().map(|c| c[j]).sum()).collect();
        for d in 0..nv {
            for j in 0..shifts {
                remaining[j] -= per_depth_count[d][j];
            }
            open[d].clone_from(&remaining);
        }
        let touched = terms
            .iter()
            .map(|ts: &Vec<Term>| {
                let mut js: Vec<usize> = ts.iter().map(|t| t.shift).collect();
                js.sort_unstable();
                js.dedup();
                js
            })
            .collect();
        Plan { layout, order, depth_of, terms, touched, open, shifts }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars
    }

    /// Variables in the order they are assigned.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Entries of all sequences laid end to end, from values indexed by depth.
    pub fn cells_from_depths(&self, vals: &[i8]) -> Vec<i8> {
        self.layout.cells.iter().flat_map(|seq| seq.iter().map(|&(v, s)| s * vals[self.depth_of[v]])).collect()
    }

    fn assign(&self, d: usize, vals: &[i8], sums: &mut [i32]) -> bool {
        let x = vals[d];
        for t in &self.terms[d] {
            sums[t.shift] += i32::from(t.coef * x * vals[t.other]);
        }
        self.touched[d].iter().all(|&j| {
            let (s, u) = (sums[j], self.open[d][j]);
            s.abs() <= u && (s + u) % 2 == 0
        })
    }

    fn unassign(&self, d: usize, vals: &[i8], sums: &mut [i32]) {
        let x = vals[d];
        for t in &self.terms[d] {
            sums[t.shift] -= i32::from(t.coef * x * vals[t.other]);
        }
    }
}

/// What the search does with complete assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    First,
}

/// Work partition and limits.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub prefix_bits: u32,
    pub shards: usize,
    pub shard: usize,
    pub budget: Option<u64>,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec { prefix_bits: 8, shards: 1, shard: 0, budget: None }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    /// Flattened solutions in unit order.
    pub solutions: Vec<Vec<i8>>,
    pub nodes: u64,
    pub units: u64,
    pub prefix_bits: u32,
}

struct Shared {
    nodes: AtomicU64,
    over_budget: AtomicBool,
    best_unit: AtomicUsize,
    budget: Option<u64>,
}

struct Walker<'a> {
    plan: &'a Plan,
    shared: &'a Shared,
    mode: Mode,
    unit: usize,
    vals: Vec<i8>,
    sums: Vec<i32>,
    local_nodes: u64,
    found: Vec<Vec<i8>>,
}

const FLUSH: u64 = 1 << 12;

impl Walker<'_> {
    fn stopped(&self) -> bool {
        self.shared.over_budget.load(Ordering::Relaxed)
            || (self.mode == Mode::First
                && (!self.found.is_empty() || self.shared.best_unit.load(Ordering::Relaxed) < self.unit))
    }

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if let Some(b) = self.shared.budget {
            if total > b {
                self.shared.over_budget.store(true, Ordering::Relaxed);
            }
        }
    }

    fn dfs(&mut self, d: usize) {
        if d == self.plan.nvars() {
            self.found.push(self.plan.cells_from_depths(&self.vals));
            if self.mode == Mode::First {
                self.shared.best_unit.fetch_min(self.unit, Ordering::Relaxed);
            }
            return;
        }
        for x in [1i8, -1] {
            if self.stopped() {
                return;
            }
            self.local_nodes += 1;
            if self.local_nodes >= FLUSH {
                self.flush();
            }
            self.vals[d] = x;
            if self.plan.assign(d, &self.vals, &mut self.sums) {
                self.dfs(d + 1);
            }
            self.plan.unassign(d, &self.vals, &mut self.sums);
        }
    }
}

/// Runs the units of one shard in parallel on the current rayon pool.
pub fn run(plan: &Plan, mode: Mode, spec: &RunSpec) -> Result<RunOutput> {
    if spec.shards == 0 || spec.shard >= spec.shards {
        return Err(Error::InvalidInput(format!("shard {} of {}", spec.shard, spec.shards)));
    }
    let m = (spec.prefix_bits as usize).min(plan.nvars()).min(24);
    let units = 1usize << m;
    let shared = Shared {
        nodes: AtomicU64::new(0),
        over_budget: AtomicBool::new(false),
        best_unit: AtomicUsize::new(usize::MAX),
        budget: spec.budget,
    };
    let mine: Vec<usize> = (spec.shard..units).step_by(spec.shards).collect();
    let per_unit: Vec<Vec<Vec<i8>>> = mine
        .par_iter()
        .map(|&u| {
            if mode == Mode::First && shared.best_unit.load(Ordering::Relaxed) < u {
                return Vec::new();
            }
            let mut w = Walker {
                plan,
                shared: &shared,
                mode,
                unit: u,
                vals: vec![0; plan.nvars()],
                sums: vec![0; plan.shifts],
                local_nodes: 0,
                found: Vec::new(),
            };
            for d in 0..m {
                w.vals[d] = if u >> (m - 1 - d) & 1 == 1 { -1 } else { 1 };
                if !plan.assign(d, &w.vals, &mut w.sums) {
                    return Vec::new();
                }
            }
            w.dfs(m);
            w.flush();
            w.found
        })
        .collect();
    let nodes = shared.nodes.load(Ordering::Relaxed);
    if shared.over_budget.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { nodes, bits: plan.nvars() });
    }
    let solutions = if mode == Mode::First {
        per_unit.into_iter().find(|s| !s.is_empty()).map(|mut s| vec![s.swap_remove(0)]).unwrap_or_default()
    } else {
        per_unit.into_iter().flatten().collect()
    };
    Ok(RunOutput { solutions, nodes, units: mine.len() as u64, prefix_bits: m as u32 })
}
