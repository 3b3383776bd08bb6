//! Certificate search kernels.
//!
//! Both conditions are evaluated on bit lanes with incrementally maintained
//! coverage masks: `once = C + U` and `twice` = residues hit by at least two
//! elements of `C`, where `U = X ∪ Y1`. Then `(C \ {c}) + U` is
//! `twice ∪ (once \ (c + U))`, which makes the sufficient form of condition (b)
//! linear in `|C|`.
//!
//! Condition (a) is monotone under adding elements and both forms of (b) are
//! anti-monotone, so a node failing (b) prunes its whole subtree and a node
//! whose completion cannot satisfy (a) is cut as well.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::criteria::{ConditionContext, Variant};
use crate::residue::ResidueSubset;

pub(crate) trait Lanes: Clone + PartialEq + Send + Sync {
    fn from_subset(s: &ResidueSubset) -> Self;
    fn or(&self, o: &Self) -> Self;
    fn and(&self, o: &Self) -> Self;
    fn andnot(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn ones(&self) -> Vec<usize>;
}

impl Lanes for u64 {
    fn from_subset(s: &ResidueSubset) -> Self {
        debug_assert!(s.modulus() <= 64);
        s.low_word()
    }
    #[inline]
    fn or(&self, o: &Self) -> Self {
        self | o
    }
    #[inline]
    fn and(&self, o: &Self) -> Self {
        self & o
    }
    #[inline]
    fn andnot(&self, o: &Self) -> Self {
        self & !o
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn ones(&self) -> Vec<usize> {
        let mut bits = *self;
        let mut out = Vec::with_capacity(bits.count_ones() as usize);
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        out
    }
}

impl Lanes for ResidueSubset {
    fn from_subset(s: &ResidueSubset) -> Self {
        s.clone()
    }
    fn or(&self, o: &Self) -> Self {
        self.union(o)
    }
    fn and(&self, o: &Self) -> Self {
        self.intersection(o)
    }
    fn andnot(&self, o: &Self) -> Self {
        self.difference(o)
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
    fn ones(&self) -> Vec<usize> {
        self.to_vec()
    }
}

/// Precomputed translates `c + X`, `c + U`, `c + Y1` for every residue `c`.
pub(crate) struct Tables<L> {
    t: usize,
    variant: Variant,
    zero: L,
    full: L,
    rot_x: Vec<L>,
    rot_u: Vec<L>,
    rot_y: Vec<L>,
    /// `suffix_u[j] = ∪_{c ≥ j} (c + U)`
    suffix_u: Vec<L>,
    u_list: Vec<usize>,
}

impl<L: Lanes> Tables<L> {
    pub(crate) fn new(ctx: &ConditionContext, variant: Variant) -> Self {
        let t = ctx.t();
        let u = ctx.x_t().union(ctx.y1_res());
        let rot_x: Vec<L> = (0..t)
            .map(|c| L::from_subset(&ctx.x_t().translate(c as i64)))
            .collect();
        let rot_u: Vec<L> = (0..t)
            .map(|c| L::from_subset(&u.translate(c as i64)))
            .collect();
        let rot_y: Vec<L> = (0..t)
            .map(|c| L::from_subset(&ctx.y1_res().translate(c as i64)))
            .collect();
        let zero = L::from_subset(&ResidueSubset::empty(t));
        let mut suffix_u = vec![zero.clone(); t + 1];
        for j in (0..t).rev() {
            suffix_u[j] = suffix_u[j + 1].or(&rot_u[j]);
        }
        Self {
            t,
            variant,
            full: L::from_subset(&ResidueSubset::full(t)),
            zero,
            rot_x,
            rot_u,
            rot_y,
            suffix_u,
            u_list: u.to_vec(),
        }
    }
}

pub(crate) struct BudgetExhausted;

struct Walker<'a, L> {
    tab: &'a Tables<L>,
    members: Vec<usize>,
    is_member: Vec<bool>,
    once: Vec<L>,
    twice: Vec<L>,
    sum_x: Vec<L>,
    nodes: u64,
    budget: u64,
}

impl<'a, L: Lanes> Walker<'a, L> {
    fn new(tab: &'a Tables<L>, budget: u64) -> Self {
        Self {
            tab,
            members: Vec::new(),
            is_member: vec![false; tab.t],
            once: vec![tab.zero.clone()],
            twice: vec![tab.zero.clone()],
            sum_x: vec![tab.zero.clone()],
            nodes: 0,
            budget,
        }
    }

    fn push(&mut self, c: usize) {
        let ru = &self.tab.rot_u[c];
        let once = self.once.last().unwrap();
        let next_twice = self.twice.last().unwrap().or(&once.and(ru));
        let next_once = once.or(ru);
        let next_x = self.sum_x.last().unwrap().or(&self.tab.rot_x[c]);
        self.once.push(next_once);
        self.twice.push(next_twice);
        self.sum_x.push(next_x);
        self.members.push(c);
        self.is_member[c] = true;
    }

    fn pop(&mut self) {
        self.once.pop();
        self.twice.pop();
        self.sum_x.pop();
        if let Some(c) = self.members.pop() {
            self.is_member[c] = false;
        }
    }

    fn cond_a(&self) -> bool {
        *self.once.last().unwrap() == self.tab.full
    }

    fn cond_b(&self) -> bool {
        if self.members.is_empty() {
            return true;
        }
        match self.tab.variant {
            Variant::Necessary => {
                let sum_x = self.sum_x.last().unwrap();
                self.members
                    .iter()
                    .all(|&c| !self.tab.rot_y[c].andnot(sum_x).is_zero())
            }
            Variant::Sufficient => {
                let once = self.once.last().unwrap();
                let twice = self.twice.last().unwrap();
                self.members.iter().all(|&c| {
                    let others = twice.or(&once.andnot(&self.tab.rot_u[c]));
                    !self.tab.rot_y[c].andnot(&others).is_zero()
                })
            }
        }
    }

    fn visit(&mut self) -> Result<(), BudgetExhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(BudgetExhausted)
        } else {
            Ok(())
        }
    }

    /// Evaluates the current node without descending.
    fn node(&mut self) -> Option<Vec<usize>> {
        self.nodes += 1;
        (self.cond_b() && self.cond_a()).then(|| self.members.clone())
    }

    /// Preorder walk over sorted extensions: the first hit is the
    /// lexicographically smallest valid set in this subtree.
    fn lex(&mut self) -> Option<Vec<usize>> {
        self.nodes += 1;
        if !self.cond_b() {
            return None;
        }
        if self.cond_a() {
            return Some(self.members.clone());
        }
        let last = *self.members.last().unwrap();
        if self.once.last().unwrap().or(&self.tab.suffix_u[last + 1]) != self.tab.full {
            return None;
        }
        for e in last + 1..self.tab.t {
            self.push(e);
            let hit = self.lex();
            self.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    /// Branches on the candidates covering the most constrained uncovered
    /// residue; candidates tried earlier are excluded from later branches so
    /// every set is reached at most once.
    fn cover(&mut self, excluded: &mut Vec<bool>) -> Result<Option<Vec<usize>>, BudgetExhausted> {
        self.visit()?;
        if !self.cond_b() {
            return Ok(None);
        }
        if self.cond_a() {
            return Ok(Some(self.members.clone()));
        }
        let t = self.tab.t;
        let once = self.once.last().unwrap().clone();
        let mut reach = once.clone();
        for e in 0..t {
            if !self.is_member[e] && !excluded[e] {
                reach = reach.or(&self.tab.rot_u[e]);
            }
        }
        if reach != self.tab.full {
            return Ok(None);
        }
        let mut best: Option<Vec<usize>> = None;
        for r in self.tab.full.andnot(&once).ones() {
            let mut cands: Vec<usize> = self
                .tab
                .u_list
                .iter()
                .map(|&u| (r + t - u) % t)
                .filter(|&c| !self.is_member[c] && !excluded[c])
                .collect();
            cands.sort_unstable();
            cands.dedup();
            if best.as_ref().map_or(true, |b| cands.len() < b.len()) {
                best = Some(cands);
            }
        }
        let cands = best.unwrap_or_default();
        let mut newly_excluded = Vec::with_capacity(cands.len());
        let mut result = Ok(None);
        for &c in &cands {
            self.push(c);
            let hit = self.cover(excluded);
            self.pop();
            match hit {
                Ok(None) => {}
                other => {
                    result = other;
                    break;
                }
            }
            excluded[c] = true;
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            excluded[c] = false;
        }
        result
    }
}

/// Outcome of one certificate search.
#[derive(Debug, Clone)]
pub(crate) struct KernelResult {
    pub found: Option<Vec<usize>>,
    /// Whether the search space was fully explored (so `found == None` proves
    /// that no valid set exists).
    pub complete: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
enum Task {
    Node(Vec<usize>),
    Subtree(Vec<usize>),
}

fn lex_tasks(t: usize) -> Vec<Task> {
    let mut tasks = vec![Task::Node(vec![0])];
    for j in 1..t {
        tasks.push(Task::Node(vec![0, j]));
        for k in j + 1..t {
            tasks.push(Task::Subtree(vec![0, j, k]));
        }
    }
    tasks
}

fn run_task<L: Lanes>(tab: &Tables<L>, task: &Task) -> (u64, Option<Vec<usize>>) {
    let mut w = Walker::new(tab, u64::MAX);
    let (prefix, descend) = match task {
        Task::Node(p) => (p, false),
        Task::Subtree(p) => (p, true),
    };
    for &c in prefix {
        w.push(c);
    }
    let hit = if descend { w.lex() } else { w.node() };
    (w.nodes, hit)
}

/// Complete search for the lexicographically smallest valid set containing 0.
///
/// The space is split into contiguous lexicographic ranges (prefix tasks); the
/// answer is the hit from the earliest task, so it does not depend on how the
/// tasks are scheduled across workers. Node counts cover every task up to and
/// including the winning one, which is also schedule-independent.
pub(crate) fn lexicographic<L: Lanes>(tab: &Tables<L>, workers: usize) -> KernelResult {
    let tasks = lex_tasks(tab.t);
    let workers = workers.max(1).min(tasks.len());
    let mut results: Vec<Option<(u64, Option<Vec<usize>>)>> = vec![None; tasks.len()];
    if workers == 1 || tab.t < 12 {
        for (i, task) in tasks.iter().enumerate() {
            let r = run_task(tab, task);
            let hit = r.1.is_some();
            results[i] = Some(r);
            if hit {
                break;
            }
        }
    } else {
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let shared = Mutex::new(&mut results);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= tasks.len() {
                        break;
                    }
                    if i > best.load(Ordering::Acquire) {
                        continue;
                    }
                    let r = run_task(tab, &tasks[i]);
                    if r.1.is_some() {
                        best.fetch_min(i, Ordering::AcqRel);
                    }
                    shared.lock().unwrap()[i] = Some(r);
                });
            }
        });
    }
    let winner = results.iter().position(|r| matches!(r, Some((_, Some(_)))));
    let upto = winner.map_or(results.len(), |w| w + 1);
    let nodes = results[..upto]
        .iter()
        .map(|r| r.as_ref().map_or(0, |(n, _)| *n))
        .sum();
    KernelResult {
        found: winner.and_then(|w| results[w].take()).and_then(|(_, h)| h),
        complete: true,
        nodes,
    }
}

/// Budgeted cover-driven search. Returns some valid set containing 0 (not
/// necessarily the lexicographic minimum). If the budget runs out the result
/// is incomplete.
pub(crate) fn cover_driven<L: Lanes>(tab: &Tables<L>, budget: u64) -> KernelResult {
    let mut w = Walker::new(tab, budget);
    w.push(0);
    let mut excluded = vec![false; tab.t];
    excluded[0] = true;
    match w.cover(&mut excluded) {
        Ok(found) => KernelResult {
            found,
            complete: true,
            nodes: w.nodes,
        },
        Err(BudgetExhausted) => KernelResult {
            found: None,
            complete: false,
            nodes: w.nodes.min(budget),
        },
    }
}
