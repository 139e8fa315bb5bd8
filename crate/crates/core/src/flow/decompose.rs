use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{ensure_valid, Flow};
use crate::error::{Error, Result};
use crate::network::{Arc, Network};
use crate::path::{ArcDisjointSequence, Cycle, Path};

/// A flow written as a sum of path functions (exactly as many paths as the
/// flow value) and cycle functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: ArcDisjointSequence,
    pub cycles: Vec<Cycle>,
}

impl Decomposition {
    pub fn render(&self, net: &Network) -> String {
        let cycles: Vec<String> = self.cycles.iter().map(|c| c.render(net)).collect();
        format!("({}, ({}))", self.paths.render(net), cycles.join(","))
    }
}

/// Unit-by-unit peeling state: positive remaining flow per vertex, keyed by
/// head.
struct Remainder {
    out: Vec<BTreeMap<usize, u64>>,
}

impl Remainder {
    fn new(n: usize, flow: &Flow) -> Self {
        let mut out = vec![BTreeMap::new(); n];
        for (a, v) in flow.iter() {
            out[a.tail].insert(a.head, v);
        }
        Remainder { out }
    }

    fn heads(&self, u: usize) -> Vec<usize> {
        self.out[u].keys().copied().collect()
    }

    fn take(&mut self, a: Arc) {
        let slot = self.out[a.tail].get_mut(&a.head).expect("positive remainder");
        *slot -= 1;
        if *slot == 0 {
            self.out[a.tail].remove(&a.head);
        }
    }

    fn first_active(&self) -> Option<usize> {
        self.out.iter().position(|m| !m.is_empty())
    }

    fn active(&self) -> Vec<usize> {
        (0..self.out.len()).filter(|&u| !self.out[u].is_empty()).collect()
    }
}

/// Candidate ordering: identity for the canonical decomposition, shuffled
/// for randomized tie-breaks.
trait Order {
    fn arrange(&mut self, candidates: &mut [usize]);
    fn pick_start(&mut self, active: &[usize]) -> usize;
}

struct Canonical;

impl Order for Canonical {
    fn arrange(&mut self, _: &mut [usize]) {}
    fn pick_start(&mut self, active: &[usize]) -> usize {
        active[0]
    }
}

struct Shuffled<'r, R: Rng>(&'r mut R);

impl<R: Rng> Order for Shuffled<'_, R> {
    fn arrange(&mut self, candidates: &mut [usize]) {
        candidates.shuffle(self.0);
    }
    fn pick_start(&mut self, active: &[usize]) -> usize {
        active[self.0.gen_range(0..active.len())]
    }
}

/// Depth-first search from `y` to `z` over positive remaining flow.
fn extract_path(rem: &Remainder, y: usize, z: usize, order: &mut impl Order) -> Option<Vec<usize>> {
    let n = rem.out.len();
    let mut visited = vec![false; n];
    visited[y] = true;
    let mut first = rem.heads(y);
    order.arrange(&mut first);
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(y, first, 0)];
    while let Some((_, candidates, next)) = stack.last_mut() {
        if *next == candidates.len() {
            stack.pop();
            continue;
        }
        let w = candidates[*next];
        *next += 1;
        if visited[w] {
            continue;
        }
        visited[w] = true;
        if w == z {
            let mut vertices: Vec<usize> = stack.iter().map(|f| f.0).collect();
            vertices.push(z);
            return Some(vertices);
        }
        let mut heads = rem.heads(w);
        order.arrange(&mut heads);
        stack.push((w, heads, 0));
    }
    None
}

/// Follows positive remaining flow from `start` until a vertex repeats and
/// returns the closed cycle.
fn extract_cycle(rem: &Remainder, start: usize, order: &mut impl Order) -> Vec<usize> {
    let mut walk = vec![start];
    let mut position = BTreeMap::from([(start, 0usize)]);
    let mut u = start;
    loop {
        let mut heads = rem.heads(u);
        order.arrange(&mut heads);
        let w = *heads
            .first()
            .expect("circulation: every vertex with inflow has outflow");
        if let Some(&p) = position.get(&w) {
            let mut cycle = walk[p..].to_vec();
            cycle.push(w);
            return cycle;
        }
        position.insert(w, walk.len());
        walk.push(w);
        u = w;
    }
}

fn decompose_by(net: &Network, flow: &Flow, order: &mut impl Order) -> Result<Decomposition> {
    ensure_valid(net, flow)?;
    let value = flow.value();
    let m = u64::try_from(value)
        .map_err(|_| Error::InvalidFlow(format!("negative flow value {value}")))?;
    let (y, z) = (flow.source(), flow.sink());
    let mut rem = Remainder::new(net.vertex_count(), flow);

    let mut paths = Vec::new();
    for _ in 0..m {
        let vertices = extract_path(&rem, y, z, order)
            .expect("positive value leaves a source-sink path in the support");
        let path = Path::new(vertices).expect("DFS path is simple");
        for a in path.arcs() {
            rem.take(a);
        }
        paths.push(path);
    }

    let mut cycles = Vec::new();
    while rem.first_active().is_some() {
        let start = order.pick_start(&rem.active());
        let cycle = Cycle::new(extract_cycle(&rem, start, order)).expect("closed walk");
        for a in cycle.arcs() {
            rem.take(a);
        }
        cycles.push(cycle);
    }

    Ok(Decomposition {
        paths: ArcDisjointSequence::new(y, z, paths)?,
        cycles,
    })
}

/// Deterministic decomposition: paths first, each found by depth-first
/// search from the source that always tries the least head first, then
/// cycles starting from the least vertex with remaining flow.
pub fn decompose(net: &Network, flow: &Flow) -> Result<Decomposition> {
    decompose_by(net, flow, &mut Canonical)
}

/// Like [`decompose`] but with tie-breaks drawn from `rng`.
pub fn decompose_with_rng<R: Rng>(net: &Network, flow: &Flow, rng: &mut R) -> Result<Decomposition> {
    decompose_by(net, flow, &mut Shuffled(rng))
}

/// Sum of the path functions and cycle functions.
pub fn recompose(d: &Decomposition) -> Flow {
    let mut total: BTreeMap<Arc, u64> = BTreeMap::new();
    let arcs = d
        .paths
        .paths()
        .iter()
        .flat_map(|p| p.arcs().collect::<Vec<_>>())
        .chain(d.cycles.iter().flat_map(|c| c.arcs().collect::<Vec<_>>()));
    for a in arcs {
        *total.entry(a).or_insert(0) += 1;
    }
    Flow::from_assignment(d.paths.source(), d.paths.sink(), total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::path::Walk;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fig2() -> (Network, Flow) {
        let n = Network::parse(fixtures::FIG2).unwrap();
        let f = Flow::parse(&n, fixtures::FIG2_FLOW).unwrap();
        (n, f)
    }

    fn decomposition(n: &Network, paths: &str, cycles: &[&str]) -> Decomposition {
        let y = n.index_of("y").unwrap();
        let z = n.index_of("z").unwrap();
        Decomposition {
            paths: ArcDisjointSequence::parse(n, y, z, paths).unwrap(),
            cycles: cycles.iter().map(|c| Cycle::parse(n, c).unwrap()).collect(),
        }
    }

    #[test]
    fn fig2_both_known_decompositions_recompose() {
        let (n, f) = fig2();
        let with_cycle = decomposition(&n, "(y-v-x-z,y-u-z)", &["v-x-u-v"]);
        let without = decomposition(&n, "(y-v-x-u-z,y-u-v-x-z)", &[]);
        assert_eq!(recompose(&with_cycle), f);
        assert_eq!(recompose(&without), f);
    }

    #[test]
    fn fig2_canonical_decomposition() {
        let (n, f) = fig2();
        let d = decompose(&n, &f).unwrap();
        assert_eq!(d.paths.len(), 2);
        assert_eq!(recompose(&d), f);
        d.paths.check_arc_disjoint(&n).unwrap();
        // DFS tries u before v from y: y-u-v-x-z, then y-v-x-u-z.
        assert_eq!(d.render(&n), "((y-u-v-x-z,y-v-x-u-z), ())");
    }

    #[test]
    fn null_and_unit_flows() {
        let n = Network::parse(fixtures::FIG6).unwrap();
        let y = n.index_of("y").unwrap();
        let z = n.index_of("z").unwrap();
        let d = decompose(&n, &Flow::null(y, z)).unwrap();
        assert!(d.paths.is_empty() && d.cycles.is_empty());
        assert_eq!(recompose(&d), Flow::null(y, z));

        let p = Path::parse(&n, "y-x1-u-x2-z").unwrap();
        let unit = Flow::from_assignment(y, z, p.arcs().map(|a| (a, 1)));
        let d = decompose(&n, &unit).unwrap();
        assert_eq!(d.paths.render(&n), "(y-x1-u-x2-z)");
        assert!(d.cycles.is_empty());
        assert_eq!(recompose(&d), unit);
    }

    #[test]
    fn invalid_flow_is_rejected() {
        let (n, mut f) = fig2();
        let y = n.index_of("y").unwrap();
        let v = n.index_of("v").unwrap();
        f.set(Arc::new(y, v), 5);
        assert!(matches!(decompose(&n, &f), Err(Error::InvalidFlow(_))));
    }

    #[test]
    fn randomized_decompositions_roundtrip() {
        let (n, f) = fig2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..40 {
            let d = decompose_with_rng(&n, &f, &mut rng).unwrap();
            assert_eq!(recompose(&d), f);
            assert_eq!(d.paths.len(), 2);
            assert!(d.cycles.iter().all(|c| c.chi().total() >= 2));
            seen.insert(d.paths.canonical().render(&n));
        }
        // Both the cycle-free and the cycle-bearing families show up.
        assert!(seen.len() >= 2, "{seen:?}");
    }
}
