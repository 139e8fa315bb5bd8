//! Flows from a source to a sink, their validation and the solvers built on
//! augmenting paths.

mod augment;
mod decompose;
mod mincost;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::network::{Arc, Network, VertexSet};

pub use augment::{augment, find_augmenting_path, max_flow, max_flow_value};
pub use decompose::{decompose, decompose_with_rng, recompose, Decomposition};
pub use mincost::min_cost_max_flow;

/// Nonnegative integer assignment on arcs with a designated source and sink.
/// Zero entries are never stored, so equal flows compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flow {
    source: usize,
    sink: usize,
    assignment: BTreeMap<Arc, u64>,
}

impl Flow {
    pub fn null(source: usize, sink: usize) -> Flow {
        Flow {
            source,
            sink,
            assignment: BTreeMap::new(),
        }
    }

    pub fn from_assignment(
        source: usize,
        sink: usize,
        assignment: impl IntoIterator<Item = (Arc, u64)>,
    ) -> Flow {
        Flow {
            source,
            sink,
            assignment: assignment.into_iter().filter(|&(_, v)| v > 0).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn get(&self, arc: Arc) -> u64 {
        self.assignment.get(&arc).copied().unwrap_or(0)
    }

    pub fn set(&mut self, arc: Arc, value: u64) {
        if value == 0 {
            self.assignment.remove(&arc);
        } else {
            self.assignment.insert(arc, value);
        }
    }

    /// Arcs carrying positive flow, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Arc, u64)> + '_ {
        self.assignment.iter().map(|(&a, &v)| (a, v))
    }

    pub fn support_len(&self) -> usize {
        self.assignment.len()
    }

    pub fn outflow(&self, x: usize) -> u64 {
        self.assignment
            .range(Arc { tail: x, head: 0 }..=Arc { tail: x, head: usize::MAX })
            .map(|(_, &v)| v)
            .sum()
    }

    pub fn inflow(&self, x: usize) -> u64 {
        self.assignment
            .iter()
            .filter(|(a, _)| a.head == x)
            .map(|(_, &v)| v)
            .sum()
    }

    /// Net outflow at the source. Negative only for flows that push units
    /// back into the source.
    pub fn value(&self) -> i64 {
        self.outflow(self.source) as i64 - self.inflow(self.source) as i64
    }

    /// Flow through a single vertex: its outflow, or the flow value at a
    /// terminal.
    pub fn through_vertex(&self, x: usize) -> i64 {
        if x == self.source || x == self.sink {
            self.value()
        } else {
            self.outflow(x) as i64
        }
    }

    /// Sum of the per-vertex flow through every member of `set`.
    pub fn through(&self, set: &VertexSet) -> i64 {
        set.iter().map(|x| self.through_vertex(x)).sum()
    }

    /// Renders the flow file format: `flow y z value`, then `tail head value`
    /// lines in canonical order.
    pub fn render(&self, net: &Network) -> String {
        let mut out = format!(
            "flow {} {} {}\n",
            net.token(self.source),
            net.token(self.sink),
            self.value()
        );
        for (a, v) in self.iter() {
            out.push_str(&format!("{} {} {}\n", net.token(a.tail), net.token(a.head), v));
        }
        out
    }

    /// Parses the flow file format against `net`. The header value must match
    /// the net outflow of the parsed assignment.
    pub fn parse(net: &Network, text: &str) -> Result<Flow> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut header: Option<(usize, usize, usize, i64)> = None;
        let mut assignment = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let vertex = |t: &str| net.index_of(t).map_err(|e| parse_err(line, e.to_string()));
            if header.is_none() {
                if fields.len() != 4 || fields[0] != "flow" {
                    return Err(parse_err(line, "expected `flow y z value` header".into()));
                }
                let value = fields[3]
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad value `{}`", fields[3])))?;
                header = Some((line, vertex(fields[1])?, vertex(fields[2])?, value));
                continue;
            }
            if fields.len() != 3 {
                return Err(parse_err(line, "expected `tail head value`".into()));
            }
            let (t, h) = (vertex(fields[0])?, vertex(fields[1])?);
            if t == h {
                return Err(parse_err(line, Error::SelfLoop(fields[0].into()).to_string()));
            }
            let v: u64 = fields[2]
                .parse()
                .map_err(|_| parse_err(line, format!("bad value `{}`", fields[2])))?;
            if assignment.insert(Arc::new(t, h), v).is_some() {
                return Err(parse_err(
                    line,
                    Error::DuplicateArc(fields[0].into(), fields[1].into()).to_string(),
                ));
            }
        }
        let (line, y, z, value) =
            header.ok_or_else(|| parse_err(0, "missing `flow` header".into()))?;
        if y == z {
            return Err(parse_err(line, Error::SameEndpoints(net.token(y).into()).to_string()));
        }
        let flow = Flow::from_assignment(y, z, assignment);
        if flow.value() != value {
            return Err(parse_err(
                line,
                format!("header value {value} but the arcs carry {}", flow.value()),
            ));
        }
        Ok(flow)
    }
}

/// First way in which an assignment fails to be a flow in a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowViolation {
    SameEndpoints(usize),
    UnknownVertex(usize),
    Compatibility { arc: Arc, flow: u64, capacity: u64 },
    Conservation { vertex: usize, inflow: u64, outflow: u64 },
}

impl FlowViolation {
    pub fn describe(&self, net: &Network) -> String {
        let tok = |x: usize| {
            if x < net.vertex_count() {
                net.token(x).to_owned()
            } else {
                format!("#{x}")
            }
        };
        match *self {
            FlowViolation::SameEndpoints(x) => format!("source and sink are both `{}`", tok(x)),
            FlowViolation::UnknownVertex(x) => format!("unknown vertex `{}`", tok(x)),
            FlowViolation::Compatibility {
                arc,
                flow,
                capacity,
            } => format!(
                "compatibility violated at ({},{}): flow {flow} > capacity {capacity}",
                tok(arc.tail),
                tok(arc.head)
            ),
            FlowViolation::Conservation {
                vertex,
                inflow,
                outflow,
            } => format!(
                "conservation violated at `{}`: inflow {inflow} != outflow {outflow}",
                tok(vertex)
            ),
        }
    }
}

impl fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks compatibility on every arc, then conservation at every
/// non-terminal vertex, and reports the first failure in canonical order.
pub fn validate_flow(net: &Network, flow: &Flow) -> std::result::Result<(), FlowViolation> {
    let n = net.vertex_count();
    for x in [flow.source, flow.sink] {
        if x >= n {
            return Err(FlowViolation::UnknownVertex(x));
        }
    }
    if flow.source == flow.sink {
        return Err(FlowViolation::SameEndpoints(flow.source));
    }
    let mut inflow = vec![0u64; n];
    let mut outflow = vec![0u64; n];
    for (a, v) in flow.iter() {
        if a.tail >= n || a.head >= n {
            return Err(FlowViolation::UnknownVertex(a.tail.max(a.head)));
        }
        let capacity = net.capacity(a);
        if v > capacity {
            return Err(FlowViolation::Compatibility {
                arc: a,
                flow: v,
                capacity,
            });
        }
        outflow[a.tail] += v;
        inflow[a.head] += v;
    }
    for x in 0..n {
        if x != flow.source && x != flow.sink && inflow[x] != outflow[x] {
            return Err(FlowViolation::Conservation {
                vertex: x,
                inflow: inflow[x],
                outflow: outflow[x],
            });
        }
    }
    Ok(())
}

pub(crate) fn ensure_valid(net: &Network, flow: &Flow) -> Result<()> {
    validate_flow(net, flow).map_err(|v| Error::InvalidFlow(v.describe(net)))
}

/// Residual headroom and cancelable flow of a flow in a network.
#[derive(Clone, Copy, Debug)]
pub struct ResidualView<'a> {
    net: &'a Network,
    flow: &'a Flow,
}

impl<'a> ResidualView<'a> {
    pub fn new(net: &'a Network, flow: &'a Flow) -> Self {
        ResidualView { net, flow }
    }

    /// `c(a) - f(a)`, clamped at zero.
    pub fn residual(&self, arc: Arc) -> u64 {
        self.net.capacity(arc).saturating_sub(self.flow.get(arc))
    }

    /// `f(a)`: how much can be pushed back along the arc.
    pub fn cancelable(&self, arc: Arc) -> u64 {
        self.flow.get(arc)
    }
}
