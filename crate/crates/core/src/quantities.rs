//! Pair quantities for a source `y`, sink `z` and vertex set `X`:
//!
//! * `phi_X`: drop of the maximum flow value when every arc touching `X` is
//!   zeroed,
//! * `lambda_X`: minimum number of components meeting `X` over all maximum
//!   arc-disjoint path sequences,
//! * `delta_X`: minimum flow through `X` over all maximum flows.
//!
//! They satisfy `phi_X <= lambda_X <= min(delta_X, phi)`, with equality
//! throughout when `X` is a single vertex.

use crate::error::{Error, Result};
use crate::flow::{max_flow_value, min_cost_max_flow};
use crate::network::{Network, VertexSet};
use crate::path::{ArcDisjointSequence, Path, Walk};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Step counter for the exponential searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded {
                budget: self.limit,
                reached: self.used - 1,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LambdaMode {
    /// Shortcut for sets of at most one vertex, exact enumeration otherwise.
    #[default]
    Auto,
    Exact,
    SingletonShortcut,
}

fn check_pair(net: &Network, y: usize, z: usize, set: &VertexSet) -> Result<()> {
    net.check_vertex(y)?;
    net.check_vertex(z)?;
    net.check_set(set)?;
    if y == z {
        return Err(Error::SameEndpoints(net.token(y).into()));
    }
    Ok(())
}

/// Maximum flow value minus the maximum flow value after restricting away
/// `set`.
pub fn phi_pair(net: &Network, y: usize, z: usize, set: &VertexSet) -> Result<u64> {
    check_pair(net, y, z, set)?;
    let total = max_flow_value(net, y, z)?;
    let restricted = max_flow_value(&net.restrict(set)?, y, z)?;
    Ok(total - restricted)
}

/// Every simple `y`-`z` path in the positive-capacity support, in
/// lexicographic order of vertex sequences.
pub fn simple_paths(net: &Network, y: usize, z: usize, budget: &mut Budget) -> Result<Vec<Path>> {
    let n = net.vertex_count();
    let mut result = Vec::new();
    let mut on_path = vec![false; n];
    let mut stack: Vec<(usize, usize)> = vec![(y, 0)];
    on_path[y] = true;
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        let arcs = net.out_arcs(u);
        if *next == arcs.len() {
            on_path[u] = false;
            stack.pop();
            continue;
        }
        let w = arcs[*next].0;
        *next += 1;
        if on_path[w] {
            continue;
        }
        budget.tick()?;
        if w == z {
            let mut vertices: Vec<usize> = stack.iter().map(|f| f.0).collect();
            vertices.push(z);
            result.push(Path::new(vertices).expect("simple by construction"));
            continue;
        }
        on_path[w] = true;
        stack.push((w, 0));
    }
    Ok(result)
}

/// Backtracking over non-decreasing index sequences of candidate paths, so
/// each multiset (each equivalence class of sequences) is visited once, in
/// lexicographic order of canonical forms.
struct SequenceSearch<'n> {
    net: &'n Network,
    source: usize,
    sink: usize,
    paths: Vec<Path>,
    /// Arc indices (into the canonical arc list) used by each candidate path.
    path_arcs: Vec<Vec<usize>>,
    residual: Vec<u64>,
    target: usize,
    chosen: Vec<usize>,
    frames: Vec<usize>,
    resume: bool,
    finished: bool,
}

impl<'n> SequenceSearch<'n> {
    fn new(net: &'n Network, y: usize, z: usize, budget: &mut Budget) -> Result<Self> {
        let target = max_flow_value(net, y, z)? as usize;
        let arcs: Vec<_> = net.arcs().collect();
        let paths = simple_paths(net, y, z, budget)?;
        let path_arcs = paths
            .iter()
            .map(|p| {
                p.arcs()
                    .map(|a| arcs.binary_search_by_key(&a, |&(b, _)| b).expect("support arc"))
                    .collect()
            })
            .collect();
        Ok(SequenceSearch {
            net,
            source: y,
            sink: z,
            paths,
            path_arcs,
            residual: arcs.iter().map(|&(_, c)| c).collect(),
            target,
            chosen: Vec::new(),
            frames: vec![0],
            resume: false,
            finished: false,
        })
    }

    fn fits(&self, i: usize) -> bool {
        self.path_arcs[i].iter().all(|&a| self.residual[a] >= 1)
    }

    fn push(&mut self, i: usize) {
        for &a in &self.path_arcs[i] {
            self.residual[a] -= 1;
        }
        self.chosen.push(i);
        self.frames.push(i);
    }

    fn pop(&mut self) {
        self.frames.pop();
        let i = self.chosen.pop().expect("non-empty");
        for &a in &self.path_arcs[i] {
            self.residual[a] += 1;
        }
    }

    /// Upper bound on how many more arc-disjoint paths fit.
    fn room(&self) -> Result<usize> {
        let mut k = 0;
        let rest = self.net.map_capacities(|_, _| {
            let r = self.residual[k];
            k += 1;
            r
        });
        Ok(max_flow_value(&rest, self.source, self.sink)? as usize)
    }

    /// Advances to the next complete sequence not cut off by `prune`, which
    /// sees each partial sequence right after its last component was added.
    fn advance(
        &mut self,
        budget: &mut Budget,
        mut prune: impl FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        if self.finished {
            return Ok(false);
        }
        if self.resume {
            self.resume = false;
            if self.chosen.is_empty() {
                self.finished = true;
                return Ok(false);
            }
            self.pop();
        }
        loop {
            if self.chosen.len() == self.target {
                self.resume = true;
                return Ok(true);
            }
            let start = *self.frames.last().expect("frame per level");
            match (start..self.paths.len()).find(|&i| self.fits(i)) {
                Some(i) => {
                    budget.tick()?;
                    *self.frames.last_mut().expect("frame per level") = i + 1;
                    self.push(i);
                    let remaining = self.target - self.chosen.len();
                    if prune(&self.chosen) || (remaining > 0 && self.room()? < remaining) {
                        self.pop();
                    }
                }
                None => {
                    if self.chosen.is_empty() {
                        self.finished = true;
                        return Ok(false);
                    }
                    self.pop();
                }
            }
        }
    }

    fn current(&self) -> ArcDisjointSequence {
        let paths = self.chosen.iter().map(|&i| self.paths[i].clone()).collect();
        ArcDisjointSequence::new(self.source, self.sink, paths).expect("shared endpoints")
    }
}

/// Lazy enumeration of maximum arc-disjoint sequences, one canonical
/// representative per equivalence class, in lexicographic order.
pub struct MaxSequences<'n> {
    search: SequenceSearch<'n>,
    budget: Budget,
    failed: bool,
}

impl MaxSequences<'_> {
    /// Steps spent so far, including the simple-path listing.
    pub fn steps(&self) -> u64 {
        self.budget.used()
    }
}

impl Iterator for MaxSequences<'_> {
    type Item = Result<ArcDisjointSequence>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.search.advance(&mut self.budget, |_| false) {
            Ok(true) => Some(Ok(self.search.current())),
            Ok(false) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

pub fn enumerate_max_sequences(
    net: &Network,
    y: usize,
    z: usize,
    budget: u64,
) -> Result<MaxSequences<'_>> {
    check_pair(net, y, z, &VertexSet::new())?;
    let mut budget = Budget::new(budget);
    let search = SequenceSearch::new(net, y, z, &mut budget)?;
    Ok(MaxSequences {
        search,
        budget,
        failed: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaOutcome {
    pub value: u64,
    /// Lexicographically least canonical sequence attaining `value`; only
    /// produced by exact enumeration.
    pub witness: Option<ArcDisjointSequence>,
}

/// Minimum passage count through `set` over all maximum sequences.
///
/// Exact mode walks the canonical enumeration, dropping partial sequences
/// whose passage count already reaches the best complete one, and stops as
/// soon as the lower bound `phi_pair` is attained.
pub fn lambda_pair(
    net: &Network,
    y: usize,
    z: usize,
    set: &VertexSet,
    mode: LambdaMode,
    budget: u64,
) -> Result<LambdaOutcome> {
    check_pair(net, y, z, set)?;
    let exact = match mode {
        LambdaMode::Exact => true,
        LambdaMode::Auto => set.len() >= 2,
        LambdaMode::SingletonShortcut if set.len() >= 2 => {
            return Err(Error::ShortcutInvalid(set.len()))
        }
        LambdaMode::SingletonShortcut => false,
    };
    let lower = phi_pair(net, y, z, set)?;
    if !exact {
        return Ok(LambdaOutcome {
            value: lower,
            witness: None,
        });
    }

    let mut budget = Budget::new(budget);
    let mut search = SequenceSearch::new(net, y, z, &mut budget)?;
    let meets: Vec<bool> = search.paths.iter().map(|p| p.passes_through(set)).collect();
    let mut best: Option<(u64, ArcDisjointSequence)> = None;
    loop {
        let bound = best.as_ref().map(|b| b.0);
        let found = search.advance(&mut budget, |chosen| match bound {
            Some(b) => chosen.iter().filter(|&&i| meets[i]).count() as u64 >= b,
            None => false,
        })?;
        if !found {
            break;
        }
        let passes = search.chosen.iter().filter(|&&i| meets[i]).count() as u64;
        best = Some((passes, search.current()));
        if passes == lower {
            break;
        }
    }
    let (value, witness) = best.expect("at least one maximum sequence exists");
    Ok(LambdaOutcome {
        value,
        witness: Some(witness),
    })
}

/// Minimum of `f(X)` over maximum flows: `|X ∩ {y,z}|` times the maximum
/// value, plus a min-cost maximum flow charging one unit per unit leaving a
/// non-terminal member of `set`.
pub fn delta_pair(net: &Network, y: usize, z: usize, set: &VertexSet) -> Result<u64> {
    check_pair(net, y, z, set)?;
    let terminals = u64::from(set.contains(y)) + u64::from(set.contains(z));
    let (value, cost, _) = min_cost_max_flow(net, y, z, |a| {
        u64::from(set.contains(a.tail) && a.tail != y && a.tail != z)
    })?;
    Ok(terminals * value + cost)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOptions {
    pub mode: LambdaMode,
    pub budget: u64,
    pub compute_lambda: bool,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions {
            mode: LambdaMode::Auto,
            budget: DEFAULT_BUDGET,
            compute_lambda: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairQuantities {
    pub y: usize,
    pub z: usize,
    pub set: VertexSet,
    pub phi_total: u64,
    pub phi_restricted: u64,
    pub phi_x: u64,
    pub lambda_x: Option<u64>,
    pub delta_x: Option<u64>,
    pub witness: Option<ArcDisjointSequence>,
}

impl PairQuantities {
    /// Checks `0 <= phi_X <= lambda_X <= min(delta_X, phi)` on whatever was
    /// computed.
    pub fn check_chain(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvariantViolation(what));
        if self.phi_x > self.phi_total {
            return fail(format!("phi_X {} > phi {}", self.phi_x, self.phi_total));
        }
        if let Some(l) = self.lambda_x {
            if self.phi_x > l {
                return fail(format!("phi_X {} > lambda_X {l}", self.phi_x));
            }
            if l > self.phi_total {
                return fail(format!("lambda_X {l} > phi {}", self.phi_total));
            }
            if let Some(d) = self.delta_x {
                if l > d {
                    return fail(format!("lambda_X {l} > delta_X {d}"));
                }
            }
        }
        Ok(())
    }
}

pub fn pair_report(
    net: &Network,
    y: usize,
    z: usize,
    set: &VertexSet,
    options: &PairOptions,
) -> Result<PairQuantities> {
    check_pair(net, y, z, set)?;
    let phi_total = max_flow_value(net, y, z)?;
    let phi_restricted = max_flow_value(&net.restrict(set)?, y, z)?;
    let (lambda_x, witness) = if options.compute_lambda {
        let outcome = lambda_pair(net, y, z, set, options.mode, options.budget)?;
        (Some(outcome.value), outcome.witness)
    } else {
        (None, None)
    };
    let report = PairQuantities {
        y,
        z,
        set: set.clone(),
        phi_total,
        phi_restricted,
        phi_x: phi_total - phi_restricted,
        lambda_x,
        delta_x: Some(delta_pair(net, y, z, set)?),
        witness,
    };
    report.check_chain()?;
    Ok(report)
}
