//! A small deterministic CDCL solver.
//!
//! Two watched literals per clause, first-UIP learning with local
//! minimization, VSIDS seeded by occurrence counts (ties to the lower
//! variable), phase saving, Luby restarts and LBD-based pruning of learnt
//! clauses. Nothing depends on hashing or wall-clock time except the optional
//! time budget, so a formula always produces the same search.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::split::cnf::CnfFormula;

#[derive(Clone, Copy, Debug, Default)]
pub struct SatBudget {
    pub max_conflicts: Option<u64>,
    pub max_duration: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    /// `model[x - 1]` is the value of variable `x`.
    Sat(Vec<bool>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SatStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

/// Decides `f` with no resource limit.
pub fn sat_solve(f: &CnfFormula) -> SatResult {
    solve_with_budget(f, SatBudget::default())
        .expect("unbudgeted search cannot run out")
        .0
}

/// Decides `f`; exhausting the budget is an [`Error::Resource`], never UNSAT.
pub fn solve_with_budget(f: &CnfFormula, budget: SatBudget) -> Result<(SatResult, SatStats)> {
    let mut s = Solver::new(f.var_count);
    for c in &f.clauses {
        for &l in c {
            if l == 0 || l.unsigned_abs() as usize > f.var_count {
                return Err(Error::Precondition(format!("literal {l} outside 1..={}", f.var_count)));
            }
        }
        if !s.add_clause(c) {
            return Ok((SatResult::Unsat, s.stats));
        }
    }
    let result = s.search(budget)?;
    if let SatResult::Sat(model) = &result {
        assert!(f.is_satisfied_by(model), "solver returned a non-model");
    }
    Ok((result, s.stats))
}

type Lit = u32;

#[inline]
fn lit_of(dimacs: i32) -> Lit {
    let v = dimacs.unsigned_abs() - 1;
    v << 1 | (dimacs < 0) as u32
}

#[inline]
fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

const NO_REASON: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

struct Solver {
    nvars: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    // Per variable: 0 unassigned, 1 true, -1 false.
    value: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    phase: Vec<bool>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    seen: Vec<bool>,
    learnt_count: usize,
    max_learnts: f64,
    stats: SatStats,
}

impl Solver {
    fn new(nvars: usize) -> Solver {
        Solver {
            nvars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * nvars],
            value: vec![0; nvars],
            level: vec![0; nvars],
            reason: vec![NO_REASON; nvars],
            phase: vec![false; nvars],
            trail: Vec::with_capacity(nvars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; nvars],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::new(nvars),
            seen: vec![false; nvars],
            learnt_count: 0,
            max_learnts: 0.0,
            stats: SatStats::default(),
        }
    }

    #[inline]
    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[var(l)];
        if l & 1 == 1 { -v } else { v }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Returns false if the formula is already refuted at level 0.
    fn add_clause(&mut self, dimacs: &[i32]) -> bool {
        let mut lits: Vec<Lit> = dimacs.iter().map(|&l| lit_of(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        for &l in &lits {
            self.activity[var(l)] += 1.0;
        }
        lits.retain(|&l| self.lit_value(l) != -1);
        if lits.iter().any(|&l| self.lit_value(l) == 1) {
            return true;
        }
        match lits.len() {
            0 => false,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                self.propagate().is_none()
            }
            _ => {
                self.attach(lits, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0] as usize].push(Watcher { cref, blocker: lits[1] });
        self.watches[lits[1] as usize].push(Watcher { cref, blocker: lits[0] });
        if learnt {
            self.learnt_count += 1;
        }
        self.clauses.push(Clause { lits, learnt, deleted: false, lbd, activity: 0.0 });
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var(l);
        debug_assert_eq!(self.value[v], 0);
        self.value[v] = if l & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Returns a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.lit_value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                if first != w.blocker && self.lit_value(first) == 1 {
                    ws[j] = Watcher { cref: w.cref, blocker: first };
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.lit_value(l) != -1 {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[l as usize].push(Watcher { cref: w.cref, blocker: first });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watcher { cref: w.cref, blocker: first };
                j += 1;
                if self.lit_value(first) == -1 {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: usize) {
        let c = &mut self.clauses[cref];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP clause (asserting literal first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        loop {
            self.bump_clause(confl as usize);
            let skip = usize::from(p.is_some());
            for k in skip..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[k];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let pl = self.trail[idx];
            p = Some(pl);
            self.seen[var(pl)] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[var(pl)];
        }
        learnt[0] = p.expect("conflict has a UIP") ^ 1;

        // Drop literals implied by the rest of the clause.
        let keep: Vec<bool> = learnt
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                if i == 0 {
                    return true;
                }
                let r = self.reason[var(l)];
                if r == NO_REASON {
                    return true;
                }
                self.clauses[r as usize].lits[1..]
                    .iter()
                    .any(|&q| !self.seen[var(q)] && self.level[var(q)] > 0)
            })
            .collect();
        for &l in &learnt[1..] {
            self.seen[var(l)] = false;
        }
        let mut learnt: Vec<Lit> = learnt.into_iter().zip(keep).filter(|&(_, k)| k).map(|(l, _)| l).collect();

        let back = if learnt.len() == 1 {
            0
        } else {
            let mut best = 1;
            for i in 2..learnt.len() {
                if self.level[var(learnt[i])] > self.level[var(learnt[best])] {
                    best = i;
                }
            }
            learnt.swap(1, best);
            self.level[var(learnt[1])]
        };
        (learnt, back)
    }

    fn backtrack(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl as usize];
        for k in (start..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.value[v] = 0;
            self.reason[v] = NO_REASON;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = start;
    }

    fn lbd(&self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|&l| self.level[var(l)]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn locked(&self, cref: usize) -> bool {
        let l = self.clauses[cref].lits[0];
        self.lit_value(l) == 1 && self.reason[var(l)] == cref as u32
    }

    fn reduce_learnts(&mut self) {
        let mut cands: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| {
                let c = &self.clauses[i];
                c.learnt && !c.deleted && c.lbd > 2 && c.lits.len() > 2
            })
            .filter(|&i| !self.locked(i))
            .collect();
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a], &self.clauses[b]);
            cb.lbd
                .cmp(&ca.lbd)
                .then(ca.activity.partial_cmp(&cb.activity).unwrap_or(std::cmp::Ordering::Equal))
                .then(a.cmp(&b))
        });
        for &i in &cands[..cands.len() / 2] {
            let c = &mut self.clauses[i];
            c.deleted = true;
            c.lits = Vec::new();
            self.learnt_count -= 1;
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.value[v] == 0 {
                let l = (v as u32) << 1 | (!self.phase[v]) as u32;
                return Some(l);
            }
        }
        None
    }

    fn search(&mut self, budget: SatBudget) -> Result<SatResult> {
        let start = Instant::now();
        for v in 0..self.nvars {
            self.heap.insert(v, &self.activity);
        }
        self.max_learnts = (self.clauses.len() as f64 / 3.0).max(2000.0);
        let mut restart_index = 1u64;
        let mut until_restart = 100 * luby(restart_index);
        if self.propagate().is_some() {
            return Ok(SatResult::Unsat);
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    return Ok(SatResult::Unsat);
                }
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let lbd = self.lbd(&learnt);
                    let first = learnt[0];
                    let cref = self.attach(learnt, true, lbd);
                    self.bump_clause(cref as usize);
                    self.enqueue(first, cref);
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;

                if let Some(max) = budget.max_conflicts {
                    if self.stats.conflicts >= max {
                        return Err(Error::Resource(format!("SAT conflict budget of {max} exhausted")));
                    }
                }
                if let Some(max) = budget.max_duration {
                    if self.stats.conflicts % 256 == 0 && start.elapsed() > max {
                        return Err(Error::Resource(format!("SAT time budget of {max:?} exhausted")));
                    }
                }
                until_restart = until_restart.saturating_sub(1);
            } else {
                if until_restart == 0 {
                    self.stats.restarts += 1;
                    restart_index += 1;
                    until_restart = 100 * luby(restart_index);
                    self.backtrack(0);
                }
                if self.learnt_count as f64 >= self.max_learnts + self.trail.len() as f64 {
                    self.reduce_learnts();
                    self.max_learnts *= 1.1;
                }
                match self.pick_branch() {
                    None => {
                        let model = self.value.iter().map(|&v| v == 1).collect();
                        return Ok(SatResult::Sat(model));
                    }
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }
}

/// The Luby sequence 1 1 2 1 1 2 4 ..., 1-indexed.
fn luby(mut i: u64) -> u64 {
    loop {
        let mut k = 1;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

/// Max-heap of variables by activity, ties to the lower index.
struct VarHeap {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl VarHeap {
    fn new(n: usize) -> VarHeap {
        VarHeap { heap: Vec::with_capacity(n), pos: vec![ABSENT; n] }
    }

    #[inline]
    fn before(a: usize, b: usize, act: &[f64]) -> bool {
        act[a] > act[b] || (act[a] == act[b] && a < b)
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.pos[v] != ABSENT {
            return;
        }
        self.pos[v] = self.heap.len();
        self.heap.push(v);
        self.up(self.heap.len() - 1, act);
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        if self.pos[v] != ABSENT {
            self.up(self.pos[v], act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("nonempty");
        self.pos[top] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.down(0, act);
        }
        Some(top)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if !Self::before(v, pv, act) {
                break;
            }
            self.heap[i] = pv;
            self.pos[pv] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && Self::before(self.heap[r], self.heap[l], act) { r } else { l };
            if !Self::before(self.heap[c], v, act) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i]] = i;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_sat(f: &CnfFormula) -> bool {
        (0..1u64 << f.var_count).any(|bits| {
            let model: Vec<bool> = (0..f.var_count).map(|i| bits >> i & 1 == 1).collect();
            f.is_satisfied_by(&model)
        })
    }

    #[test]
    fn empty_formula_is_sat() {
        assert_eq!(sat_solve(&CnfFormula::new(0, vec![])), SatResult::Sat(vec![]));
    }

    #[test]
    fn trivial_unsat() {
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]);
        assert_eq!(sat_solve(&f), SatResult::Unsat);
        let g = CnfFormula::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]]);
        assert_eq!(sat_solve(&g), SatResult::Unsat);
    }

    #[test]
    fn pigeonhole_unsat() {
        // 6 pigeons, 5 holes.
        let (p, h) = (6usize, 5usize);
        let x = |i: usize, j: usize| (i * h + j + 1) as i32;
        let mut clauses: Vec<Vec<i32>> = (0..p).map(|i| (0..h).map(|j| x(i, j)).collect()).collect();
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    clauses.push(vec![-x(a, j), -x(b, j)]);
                }
            }
        }
        let f = CnfFormula::new(p * h, clauses);
        assert_eq!(sat_solve(&f), SatResult::Unsat);
    }

    #[test]
    fn random_3sat_matches_brute_force() {
        // xorshift so the instances are fixed without an RNG dependency here.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for round in 0..300 {
            let vars = 4 + round % 9;
            let n_clauses = vars * 4 + (round % 7);
            let clauses = (0..n_clauses)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = (next() % vars as u64) as i32 + 1;
                            if next() & 1 == 0 { v } else { -v }
                        })
                        .collect()
                })
                .collect();
            let f = CnfFormula::new(vars, clauses);
            assert_eq!(sat_solve(&f).is_sat(), brute_force_sat(&f), "round {round}");
        }
    }

    #[test]
    fn conflict_budget_is_a_resource_error() {
        let (p, h) = (9usize, 8usize);
        let x = |i: usize, j: usize| (i * h + j + 1) as i32;
        let mut clauses: Vec<Vec<i32>> = (0..p).map(|i| (0..h).map(|j| x(i, j)).collect()).collect();
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    clauses.push(vec![-x(a, j), -x(b, j)]);
                }
            }
        }
        let f = CnfFormula::new(p * h, clauses);
        let budget = SatBudget { max_conflicts: Some(10), max_duration: None };
        assert!(matches!(solve_with_budget(&f, budget), Err(Error::Resource(_))));
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (1..=15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }
}
