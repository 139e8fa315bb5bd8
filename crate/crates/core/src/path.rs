//! Paths, cycles and generalized paths in the complete digraph, their arc
//! functions, and sequences of arc-disjoint source-sink paths.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::network::{Arc, Network, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Integer-valued function on arcs, zero outside its support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcFunction(BTreeMap<Arc, i64>);

impl ArcFunction {
    pub fn get(&self, arc: Arc) -> i64 {
        self.0.get(&arc).copied().unwrap_or(0)
    }

    pub fn add(&mut self, arc: Arc, delta: i64) {
        let v = self.0.entry(arc).or_insert(0);
        *v += delta;
        if *v == 0 {
            self.0.remove(&arc);
        }
    }

    pub fn accumulate(&mut self, other: &ArcFunction) {
        for (&a, &v) in &other.0 {
            self.add(a, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Arc, i64)> + '_ {
        self.0.iter().map(|(&a, &v)| (a, v))
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }
}

/// Shared behaviour of paths, cycles and generalized paths.
pub trait Walk {
    fn vertices(&self) -> &[usize];

    /// The associated arc function: +1 on forward arcs, -1 on backward arcs.
    fn chi(&self) -> ArcFunction;

    fn passes_through(&self, set: &VertexSet) -> bool {
        self.vertices().iter().any(|&v| set.contains(v))
    }
}

fn all_distinct(vertices: &[usize]) -> bool {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

fn parse_tokens(net: &Network, text: &str) -> Result<Vec<usize>> {
    text.split('-').map(|t| net.index_of(t.trim())).collect()
}

fn render_tokens(net: &Network, vertices: &[usize]) -> String {
    let tokens: Vec<&str> = vertices.iter().map(|&v| net.token(v)).collect();
    tokens.join("-")
}

/// A path: at least two distinct vertices joined by forward arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(vertices: Vec<usize>) -> Result<Path> {
        if vertices.len() < 2 {
            return Err(Error::MalformedPath(format!(
                "a path needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if !all_distinct(&vertices) {
            return Err(Error::MalformedPath("repeated vertex in path".into()));
        }
        Ok(Path { vertices })
    }

    /// Parses the `y-v-x-z` notation.
    pub fn parse(net: &Network, text: &str) -> Result<Path> {
        Path::new(parse_tokens(net, text)?)
    }

    pub fn render(&self, net: &Network) -> String {
        render_tokens(net, &self.vertices)
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn sink(&self) -> usize {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.vertices.windows(2).map(|w| Arc::new(w[0], w[1]))
    }

    /// True iff every arc has positive capacity in `net`.
    pub fn lies_in(&self, net: &Network) -> bool {
        self.arcs().all(|a| net.capacity(a) >= 1)
    }
}

impl Walk for Path {
    fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn chi(&self) -> ArcFunction {
        let mut f = ArcFunction::default();
        for a in self.arcs() {
            f.add(a, 1);
        }
        f
    }
}

/// A cycle `x1 .. x(m-1) x1` with `m >= 3`, stored with the closing vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Result<Cycle> {
        if vertices.len() < 3 {
            return Err(Error::MalformedPath(format!(
                "a cycle needs at least 3 vertex entries, got {}",
                vertices.len()
            )));
        }
        if vertices.first() != vertices.last() {
            return Err(Error::MalformedPath("cycle is not closed".into()));
        }
        if !all_distinct(&vertices[..vertices.len() - 1]) {
            return Err(Error::MalformedPath("repeated vertex in cycle".into()));
        }
        Ok(Cycle { vertices })
    }

    pub fn parse(net: &Network, text: &str) -> Result<Cycle> {
        Cycle::new(parse_tokens(net, text)?)
    }

    pub fn render(&self, net: &Network) -> String {
        render_tokens(net, &self.vertices)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.vertices.windows(2).map(|w| Arc::new(w[0], w[1]))
    }
}

impl Walk for Cycle {
    fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn chi(&self) -> ArcFunction {
        let mut f = ArcFunction::default();
        for a in self.arcs() {
            f.add(a, 1);
        }
        f
    }
}

/// Distinct vertices where each consecutive pair is joined by an arc that is
/// traversed either forward `(x_i, x_i+1)` or backward `(x_i+1, x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedPath {
    vertices: Vec<usize>,
    directions: Vec<Direction>,
}

impl GeneralizedPath {
    pub fn new(vertices: Vec<usize>, directions: Vec<Direction>) -> Result<GeneralizedPath> {
        if vertices.len() < 2 {
            return Err(Error::MalformedPath(format!(
                "a generalized path needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if directions.len() + 1 != vertices.len() {
            return Err(Error::MalformedPath(format!(
                "{} vertices need {} direction markers, got {}",
                vertices.len(),
                vertices.len() - 1,
                directions.len()
            )));
        }
        if !all_distinct(&vertices) {
            return Err(Error::MalformedPath(
                "repeated vertex in generalized path".into(),
            ));
        }
        Ok(GeneralizedPath {
            vertices,
            directions,
        })
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn sink(&self) -> usize {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    /// Arcs in traversal order with the direction each is traversed in.
    pub fn arcs(&self) -> impl Iterator<Item = (Arc, Direction)> + '_ {
        self.vertices
            .windows(2)
            .zip(&self.directions)
            .map(|(w, &d)| match d {
                Direction::Forward => (Arc::new(w[0], w[1]), d),
                Direction::Backward => (Arc::new(w[1], w[0]), d),
            })
    }

    pub fn is_path(&self) -> bool {
        self.directions.iter().all(|&d| d == Direction::Forward)
    }

    /// `y>v<x>z` style rendering: `>` marks a forward arc, `<` a backward one.
    pub fn render(&self, net: &Network) -> String {
        let mut out = net.token(self.vertices[0]).to_owned();
        for (v, d) in self.vertices[1..].iter().zip(&self.directions) {
            out.push(match d {
                Direction::Forward => '>',
                Direction::Backward => '<',
            });
            out.push_str(net.token(*v));
        }
        out
    }
}

impl From<&Path> for GeneralizedPath {
    fn from(p: &Path) -> Self {
        GeneralizedPath {
            vertices: p.vertices.clone(),
            directions: vec![Direction::Forward; p.vertices.len() - 1],
        }
    }
}

impl Walk for GeneralizedPath {
    fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn chi(&self) -> ArcFunction {
        let mut f = ArcFunction::default();
        for (a, d) in self.arcs() {
            f.add(
                a,
                match d {
                    Direction::Forward => 1,
                    Direction::Backward => -1,
                },
            );
        }
        f
    }
}

/// A sequence of paths, all from `source` to `sink`. Arc-disjointness is a
/// property relative to a network and is checked where a network is at hand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcDisjointSequence {
    source: usize,
    sink: usize,
    paths: Vec<Path>,
}

impl ArcDisjointSequence {
    pub fn new(source: usize, sink: usize, paths: Vec<Path>) -> Result<Self> {
        if source == sink {
            return Err(Error::SameEndpoints(format!("#{source}")));
        }
        if paths.iter().any(|p| p.source() != source || p.sink() != sink) {
            return Err(Error::MixedEndpoints {
                source_token: format!("#{source}"),
                sink: format!("#{sink}"),
            });
        }
        Ok(ArcDisjointSequence {
            source,
            sink,
            paths,
        })
    }

    pub fn empty(source: usize, sink: usize) -> Self {
        ArcDisjointSequence {
            source,
            sink,
            paths: Vec::new(),
        }
    }

    /// Parses `(y-u-z,y-v-x-z)`; `()` is the empty sequence.
    pub fn parse(net: &Network, source: usize, sink: usize, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::MalformedPath(format!("expected `(...)`, got `{text}`")))?;
        let paths = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Path::parse(net, s))
            .collect::<Result<Vec<_>>>()?;
        ArcDisjointSequence::new(source, sink, paths)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Components sorted by vertex sequence.
    pub fn canonical(&self) -> ArcDisjointSequence {
        let mut paths = self.paths.clone();
        paths.sort();
        ArcDisjointSequence {
            source: self.source,
            sink: self.sink,
            paths,
        }
    }

    pub fn is_equivalent(&self, other: &ArcDisjointSequence) -> bool {
        self.len() == other.len() && self.canonical().paths == other.canonical().paths
    }

    /// Number of components meeting `set`.
    pub fn passage_count(&self, set: &VertexSet) -> usize {
        self.paths.iter().filter(|p| p.passes_through(set)).count()
    }

    pub fn arc_multiplicities(&self) -> BTreeMap<Arc, u64> {
        let mut counts = BTreeMap::new();
        for a in self.paths.iter().flat_map(Path::arcs) {
            *counts.entry(a).or_insert(0) += 1;
        }
        counts
    }

    /// Fails with `NotArcDisjoint` naming the first over-used arc.
    pub fn check_arc_disjoint(&self, net: &Network) -> Result<()> {
        for (a, used) in self.arc_multiplicities() {
            let capacity = net.capacity(a);
            if used > capacity {
                return Err(Error::NotArcDisjoint {
                    tail: net.token(a.tail).into(),
                    head: net.token(a.head).into(),
                    used,
                    capacity,
                });
            }
        }
        Ok(())
    }

    pub fn render(&self, net: &Network) -> String {
        let parts: Vec<String> = self.paths.iter().map(|p| p.render(net)).collect();
        format!("({})", parts.join(","))
    }
}

/// True iff no arc is used by more paths than its capacity. All paths must
/// share source and sink.
pub fn is_arc_disjoint(net: &Network, paths: &[Path]) -> Result<bool> {
    let Some(first) = paths.first() else {
        return Ok(true);
    };
    let seq = ArcDisjointSequence::new(first.source(), first.sink(), paths.to_vec()).map_err(
        |_| Error::MixedEndpoints {
            source_token: net.token(first.source()).into(),
            sink: net.token(first.sink()).into(),
        },
    )?;
    Ok(seq.check_arc_disjoint(net).is_ok())
}

/// The flow carried by a sequence: each arc gets its multiplicity.
pub fn induced_flow(net: &Network, seq: &ArcDisjointSequence) -> Result<Flow> {
    seq.check_arc_disjoint(net)?;
    Ok(Flow::from_assignment(
        seq.source,
        seq.sink,
        seq.arc_multiplicities(),
    ))
}
