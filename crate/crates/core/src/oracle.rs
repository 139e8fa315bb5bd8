//! Brute-force reference computations and seeded random instances.
//!
//! The flow oracle enumerates integral arc assignments directly and never
//! touches augmenting paths, so it shares no logic with the solvers it
//! checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::{
    augment, decompose, max_flow, recompose, validate_flow, Flow, ResidualView,
};
use crate::network::{Arc, Network, VertexSet};
use crate::path::{Direction, GeneralizedPath};
use crate::quantities::{delta_pair, lambda_pair, phi_pair, LambdaMode};

/// Name of the pseudorandom generator behind every seeded computation here.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.3)";

pub const DEFAULT_FLOW_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub vertex_count: usize,
    pub max_capacity: u64,
    /// Probability as `(numerator, denominator)`.
    pub arc_probability: (u32, u32),
    pub seed: u64,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        if !(2..=6).contains(&self.vertex_count) {
            return Err(Error::InvalidSpec(format!(
                "vertex_count {} outside 2..=6",
                self.vertex_count
            )));
        }
        if self.max_capacity > 3 {
            return Err(Error::InvalidSpec(format!(
                "max_capacity {} outside 0..=3",
                self.max_capacity
            )));
        }
        let (num, den) = self.arc_probability;
        if den == 0 || num > den {
            return Err(Error::InvalidSpec(format!(
                "arc_probability {num}/{den} outside [0,1]"
            )));
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let (num, den) = self.arc_probability;
        format!(
            "n={} cap={} p={num}/{den} seed={}",
            self.vertex_count, self.max_capacity, self.seed
        )
    }
}

/// Vertices `v0, v1, ...`; each ordered pair independently gets an arc with
/// the given probability, with capacity uniform in `1..=max_capacity`.
pub fn generate(spec: &InstanceSpec) -> Result<Network> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.vertex_count;
    let tokens: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let (num, den) = spec.arc_probability;
    let mut arcs = Vec::new();
    for t in 0..n {
        for h in 0..n {
            if t == h {
                continue;
            }
            if rng.gen_ratio(num, den) && spec.max_capacity > 0 {
                let c = rng.gen_range(1..=spec.max_capacity);
                arcs.push((tokens[t].clone(), tokens[h].clone(), c));
            }
        }
    }
    Network::build(&tokens, &arcs)
}

/// The instance batch used by the self-test: sizes 2..=5, capacities up to
/// 1 or 2, arc probability 1/2.
pub fn standard_batch(count: usize, base_seed: u64) -> Vec<InstanceSpec> {
    (0..count)
        .map(|i| InstanceSpec {
            vertex_count: 2 + i % 4,
            max_capacity: 1 + (i / 4 % 2) as u64,
            arc_probability: (1, 2),
            seed: base_seed.wrapping_add(i as u64),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceFlows {
    pub max_value: u64,
    /// Every integral maximum flow, in enumeration order.
    pub maximum_flows: Vec<Flow>,
    /// Number of flows (of any value) found.
    pub flow_count: u64,
}

/// Product of `c(a) + 1` over all arcs, saturating.
pub fn assignment_space(net: &Network) -> u64 {
    net.arcs()
        .fold(1u64, |acc, (_, c)| acc.saturating_mul(c.saturating_add(1)))
}

/// Every integral flow from `y` to `z`, by trying each value `0..=c(a)` on
/// each arc. Arcs are grouped by their smaller endpoint so conservation at a
/// vertex can be tested as soon as all of its arcs carry a value.
pub fn brute_force_flows(net: &Network, y: usize, z: usize, budget: u64) -> Result<BruteForceFlows> {
    net.check_vertex(y)?;
    net.check_vertex(z)?;
    if y == z {
        return Err(Error::SameEndpoints(net.token(y).into()));
    }
    if assignment_space(net) > budget {
        return Err(Error::BudgetExceeded { budget, reached: 0 });
    }
    let n = net.vertex_count();
    let mut arcs: Vec<(Arc, u64)> = net.arcs().collect();
    arcs.sort_by_key(|(a, _)| (a.tail.min(a.head), *a));
    // check_after[i]: vertices whose arcs are all assigned once arc i is.
    let mut check_after: Vec<Vec<usize>> = vec![Vec::new(); arcs.len()];
    let mut pending: Vec<usize> = Vec::new();
    for v in 0..n {
        match arcs.iter().rposition(|(a, _)| a.tail == v || a.head == v) {
            Some(i) => check_after[i].push(v),
            None => pending.push(v),
        }
    }
    let mut balance = vec![0i64; n];
    let mut values = vec![0u64; arcs.len()];
    let mut out = BruteForceFlows {
        max_value: 0,
        maximum_flows: Vec::new(),
        flow_count: 0,
    };

    fn conserved(balance: &[i64], vertices: &[usize], y: usize, z: usize) -> bool {
        vertices.iter().all(|&v| v == y || v == z || balance[v] == 0)
    }

    fn record(out: &mut BruteForceFlows, arcs: &[(Arc, u64)], values: &[u64], y: usize, z: usize) {
        let flow = Flow::from_assignment(
            y,
            z,
            arcs.iter().zip(values).map(|(&(a, _), &v)| (a, v)),
        );
        out.flow_count += 1;
        let v = flow.value();
        if v < 0 {
            return;
        }
        let v = v as u64;
        if out.maximum_flows.is_empty() || v > out.max_value {
            out.max_value = v;
            out.maximum_flows = vec![flow];
        } else if v == out.max_value {
            out.maximum_flows.push(flow);
        }
    }

    if !conserved(&balance, &pending, y, z) {
        return Ok(out);
    }
    // Depth-first over arc positions; values[i] counts up to c(a).
    let mut i = 0usize;
    if arcs.is_empty() {
        record(&mut out, &arcs, &values, y, z);
        return Ok(out);
    }
    loop {
        // values[i] has just been set (initially 0): test the vertices closed by arc i.
        let ok = conserved(&balance, &check_after[i], y, z);
        if ok && i + 1 == arcs.len() {
            record(&mut out, &arcs, &values, y, z);
        }
        if ok && i + 1 < arcs.len() {
            i += 1;
            continue;
        }
        // Advance: bump the deepest arc that still has room, resetting deeper ones.
        loop {
            let (a, c) = arcs[i];
            if values[i] < c {
                values[i] += 1;
                balance[a.tail] += 1;
                balance[a.head] -= 1;
                break;
            }
            balance[a.tail] -= c as i64;
            balance[a.head] += c as i64;
            values[i] = 0;
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
        }
    }
}

/// Minimum of `f(X)` over the enumerated maximum flows.
pub fn brute_force_delta(net: &Network, y: usize, z: usize, set: &VertexSet, budget: u64) -> Result<u64> {
    net.check_set(set)?;
    let flows = brute_force_flows(net, y, z, budget)?;
    Ok(flows
        .maximum_flows
        .iter()
        .map(|f| f.through(set))
        .min()
        .map_or(0, |d| d as u64))
}

/// Depth-first augmenting path search with shuffled neighbour order.
fn random_augmenting_path<R: Rng>(net: &Network, flow: &Flow, rng: &mut R) -> Option<GeneralizedPath> {
    let (y, z) = (flow.source(), flow.sink());
    let residual = ResidualView::new(net, flow);
    let moves = |u: usize, rng: &mut R| {
        let mut m: Vec<(usize, Direction)> = net
            .out_arcs(u)
            .iter()
            .filter(|&&(h, _)| residual.residual(Arc::new(u, h)) >= 1)
            .map(|&(h, _)| (h, Direction::Forward))
            .chain(
                net.in_arcs(u)
                    .iter()
                    .filter(|&&(t, _)| residual.cancelable(Arc::new(t, u)) >= 1)
                    .map(|&(t, _)| (t, Direction::Backward)),
            )
            .collect();
        m.shuffle(rng);
        m
    };
    let mut visited = vec![false; net.vertex_count()];
    visited[y] = true;
    let first = moves(y, rng);
    // (vertex, move that reached it, candidate moves, next candidate)
    type Frame = (usize, Option<Direction>, Vec<(usize, Direction)>, usize);
    let mut stack: Vec<Frame> = vec![(y, None, first, 0)];
    while let Some((_, _, candidates, next)) = stack.last_mut() {
        if *next == candidates.len() {
            stack.pop();
            continue;
        }
        let (w, d) = candidates[*next];
        *next += 1;
        if visited[w] {
            continue;
        }
        visited[w] = true;
        if w == z {
            let mut vertices: Vec<usize> = stack.iter().map(|f| f.0).collect();
            let mut directions: Vec<Direction> = stack.iter().skip(1).filter_map(|f| f.1).collect();
            vertices.push(z);
            directions.push(d);
            return Some(GeneralizedPath::new(vertices, directions).expect("DFS path is simple"));
        }
        let next_moves = moves(w, rng);
        stack.push((w, Some(d), next_moves, 0));
    }
    None
}

/// A valid flow reached by a random number of unit augmentations along
/// randomly chosen augmenting paths.
pub fn random_flow<R: Rng>(net: &Network, y: usize, z: usize, rng: &mut R) -> Result<Flow> {
    let (phi, _) = max_flow(net, y, z)?;
    let steps = rng.gen_range(0..=phi);
    let mut flow = Flow::null(y, z);
    for _ in 0..steps {
        let path = random_augmenting_path(net, &flow, rng).expect("value below maximum");
        flow = augment(net, &flow, &path)?;
    }
    Ok(flow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Category {
    /// Solver maximum flow value against the exhaustive maximum.
    MaxFlow,
    /// Min-cost delta against the exhaustive minimum.
    Delta,
    /// Exact lambda, phi difference and delta on single vertices.
    Singleton,
    /// `0 <= phi_X <= lambda_X <= min(delta_X, phi)`.
    Chain,
    Monotone,
    Degree,
    Decomposition,
}

pub const CATEGORIES: [Category; 7] = [
    Category::MaxFlow,
    Category::Delta,
    Category::Singleton,
    Category::Chain,
    Category::Monotone,
    Category::Degree,
    Category::Decomposition,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub category: Category,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CrossCheckItem {
    pub label: String,
    pub network: Network,
    /// Sets checked for every pair besides the singletons and random sets.
    pub extra_sets: Vec<VertexSet>,
}

impl CrossCheckItem {
    pub fn from_spec(spec: &InstanceSpec) -> Result<Self> {
        Ok(CrossCheckItem {
            label: spec.describe(),
            network: generate(spec)?,
            extra_sets: Vec::new(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckConfig {
    pub random_sets: usize,
    pub seed: u64,
    pub lambda_budget: u64,
    pub flow_budget: u64,
    pub jobs: usize,
}

impl Default for CrossCheckConfig {
    fn default() -> Self {
        CrossCheckConfig {
            random_sets: 2,
            seed: 0,
            lambda_budget: crate::quantities::DEFAULT_BUDGET,
            flow_budget: DEFAULT_FLOW_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub instances: usize,
    pub pairs: usize,
    /// Pairs whose exhaustive flow enumeration was over budget.
    pub oracle_skipped: usize,
    /// Number of checks performed per category, indexed like [`CATEGORIES`].
    pub checks: [u64; 7],
    pub strict_phi_lambda: u64,
    pub strict_lambda_delta: u64,
    pub violations: Vec<Violation>,
}

impl CrossCheckReport {
    pub fn checks_of(&self, c: Category) -> u64 {
        self.checks[c as usize]
    }

    pub fn violations_of(&self, c: Category) -> usize {
        self.violations.iter().filter(|v| v.category == c).count()
    }

    fn merge(&mut self, other: CrossCheckReport) {
        self.instances += other.instances;
        self.pairs += other.pairs;
        self.oracle_skipped += other.oracle_skipped;
        for (a, b) in self.checks.iter_mut().zip(other.checks) {
            *a += b;
        }
        self.strict_phi_lambda += other.strict_phi_lambda;
        self.strict_lambda_delta += other.strict_lambda_delta;
        self.violations.extend(other.violations);
    }
}

struct Checker<'a> {
    item: &'a CrossCheckItem,
    cfg: &'a CrossCheckConfig,
    report: CrossCheckReport,
}

impl Checker<'_> {
    fn expect(&mut self, category: Category, ok: bool, detail: impl FnOnce() -> String) {
        self.report.checks[category as usize] += 1;
        if !ok {
            self.report.violations.push(Violation {
                category,
                detail: format!("[{}] {}", self.item.label, detail()),
            });
        }
    }

    fn pair(&mut self, y: usize, z: usize, rng: &mut ChaCha8Rng) -> Result<()> {
        let net = &self.item.network;
        let n = net.vertex_count();
        let tk = |v: usize| net.token(v).to_string();
        let (phi, solver_flow) = max_flow(net, y, z)?;
        self.report.pairs += 1;

        let oracle = match brute_force_flows(net, y, z, self.cfg.flow_budget) {
            Ok(o) => Some(o),
            Err(Error::BudgetExceeded { .. }) => {
                self.report.oracle_skipped += 1;
                None
            }
            Err(e) => return Err(e),
        };
        if let Some(o) = &oracle {
            self.expect(Category::MaxFlow, o.max_value == phi, || {
                format!("y={} z={}: max_flow {phi}, exhaustive {}", tk(y), tk(z), o.max_value)
            });
            let bad = o.maximum_flows.iter().find(|f| validate_flow(net, f).is_err());
            self.expect(Category::MaxFlow, bad.is_none(), || {
                format!("y={} z={}: enumerated flow invalid: {}", tk(y), tk(z), bad.unwrap().render(net))
            });
        }

        let d = decompose(net, &solver_flow)?;
        let ok = recompose(&d) == solver_flow
            && d.paths.len() as u64 == phi
            && d.paths.check_arc_disjoint(net).is_ok();
        self.expect(Category::Decomposition, ok, || {
            format!("y={} z={}: decomposition {} of {}", tk(y), tk(z), d.render(net), solver_flow.render(net))
        });

        let mut sets: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
        sets.extend(self.item.extra_sets.iter().cloned());
        for _ in 0..self.cfg.random_sets {
            let size = rng.gen_range(0..=n);
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(rng);
            sets.push(all[..size].iter().copied().collect());
        }

        for set in &sets {
            let q = self.quantities(y, z, set, oracle.as_ref())?;
            let label = || format!("y={} z={} X={}", tk(y), tk(z), net.render_set(set));
            let (phi_x, lambda_x, delta_x) = q;
            if set.len() == 1 {
                self.expect(Category::Singleton, phi_x == lambda_x && lambda_x == delta_x, || {
                    format!("{}: phi_X={phi_x} lambda_X={lambda_x} delta_X={delta_x}", label())
                });
                let x = set.iter().next().expect("singleton");
                if x != y && x != z {
                    let bound = net
                        .capacity_of_set(set)?
                        .min(net.capacity_of_set(&(0..n).filter(|&v| v != x).collect())?);
                    self.expect(Category::Degree, lambda_x <= bound, || {
                        format!("{}: lambda_X={lambda_x} above degree bound {bound}", label())
                    });
                }
            }
            self.expect(
                Category::Chain,
                phi_x <= lambda_x && lambda_x <= delta_x.min(phi),
                || format!("{}: phi_X={phi_x} lambda_X={lambda_x} delta_X={delta_x} phi={phi}", label()),
            );
            self.report.strict_phi_lambda += u64::from(phi_x < lambda_x);
            self.report.strict_lambda_delta += u64::from(lambda_x < delta_x);

            // Grow the set by one random vertex and compare.
            let outside: Vec<usize> = (0..n).filter(|&v| !set.contains(v)).collect();
            if let Some(&v) = outside.choose(rng) {
                let mut bigger = set.clone();
                bigger.insert(v);
                let (p2, l2, d2) = self.quantities(y, z, &bigger, None)?;
                self.expect(
                    Category::Monotone,
                    phi_x <= p2 && lambda_x <= l2 && delta_x <= d2,
                    || {
                        format!(
                            "{} -> {}: ({phi_x},{lambda_x},{delta_x}) vs ({p2},{l2},{d2})",
                            label(),
                            net.render_set(&bigger)
                        )
                    },
                );
            }
        }
        Ok(())
    }

    /// `(phi_X, exact lambda_X, delta_X)`, with delta compared to the oracle
    /// when one is available.
    fn quantities(
        &mut self,
        y: usize,
        z: usize,
        set: &VertexSet,
        oracle: Option<&BruteForceFlows>,
    ) -> Result<(u64, u64, u64)> {
        let net = &self.item.network;
        let phi_x = phi_pair(net, y, z, set)?;
        let lambda_x = lambda_pair(net, y, z, set, LambdaMode::Exact, self.cfg.lambda_budget)?.value;
        let delta_x = delta_pair(net, y, z, set)?;
        if let Some(o) = oracle {
            let brute = o
                .maximum_flows
                .iter()
                .map(|f| f.through(set))
                .min()
                .map_or(0, |d| d as u64);
            self.expect(Category::Delta, brute == delta_x, || {
                format!(
                    "y={} z={} X={}: min-cost delta {delta_x}, exhaustive {brute}",
                    net.token(y),
                    net.token(z),
                    net.render_set(set)
                )
            });
        }
        Ok((phi_x, lambda_x, delta_x))
    }
}

fn check_item(index: usize, item: &CrossCheckItem, cfg: &CrossCheckConfig) -> Result<CrossCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut checker = Checker {
        item,
        cfg,
        report: CrossCheckReport {
            instances: 1,
            ..CrossCheckReport::default()
        },
    };
    let n = item.network.vertex_count();
    for y in 0..n {
        for z in 0..n {
            if y != z {
                checker.pair(y, z, &mut rng)?;
            }
        }
    }
    Ok(checker.report)
}

/// Runs every check on every item. Violations are collected in item order;
/// errors such as an exhausted enumeration budget abort the run.
pub fn cross_check(items: &[CrossCheckItem], cfg: &CrossCheckConfig) -> Result<CrossCheckReport> {
    let run = |(i, item): (usize, &CrossCheckItem)| check_item(i, item, cfg);
    let parts: Vec<CrossCheckReport> = if cfg.jobs <= 1 {
        items.iter().enumerate().map(run).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
        pool.install(|| items.par_iter().enumerate().map(run).collect::<Result<_>>())?
    };
    let mut total = CrossCheckReport::default();
    for p in parts {
        total.merge(p);
    }
    Ok(total)
}
