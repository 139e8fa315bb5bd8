use std::collections::VecDeque;

use super::Flow;
use crate::error::{Error, Result};
use crate::network::{Arc, Network};

struct ResidualEdge {
    to: usize,
    residual: u64,
    cost: i64,
}

/// Minimum-cost maximum flow by successive shortest paths.
///
/// Shortest paths are found with a FIFO label-correcting search, which
/// tolerates the negative costs of reverse residual edges. Returns
/// `(value, cost, flow)`.
pub fn min_cost_max_flow(
    net: &Network,
    source: usize,
    sink: usize,
    arc_cost: impl Fn(Arc) -> u64,
) -> Result<(u64, u64, Flow)> {
    net.check_vertex(source)?;
    net.check_vertex(sink)?;
    if source == sink {
        return Err(Error::SameEndpoints(net.token(source).into()));
    }
    let n = net.vertex_count();
    let arcs: Vec<(Arc, u64)> = net.arcs().collect();
    // Edge 2i is arc i forward, edge 2i+1 its reverse.
    let mut edges = Vec::with_capacity(2 * arcs.len());
    let mut adjacency = vec![Vec::new(); n];
    for &(a, c) in &arcs {
        let cost = i64::try_from(arc_cost(a)).expect("arc cost fits in i64");
        adjacency[a.tail].push(edges.len());
        edges.push(ResidualEdge {
            to: a.head,
            residual: c,
            cost,
        });
        adjacency[a.head].push(edges.len());
        edges.push(ResidualEdge {
            to: a.tail,
            residual: 0,
            cost: -cost,
        });
    }

    let mut value = 0u64;
    let mut total_cost: i128 = 0;
    loop {
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        queued[source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &e in &adjacency[u] {
                let edge = &edges[e];
                if edge.residual == 0 {
                    continue;
                }
                let candidate = dist[u] + edge.cost;
                if candidate < dist[edge.to] {
                    dist[edge.to] = candidate;
                    via[edge.to] = e;
                    if !queued[edge.to] {
                        queued[edge.to] = true;
                        queue.push_back(edge.to);
                    }
                }
            }
        }
        if dist[sink] == i64::MAX {
            break;
        }
        let mut amount = u64::MAX;
        let mut v = sink;
        while v != source {
            let e = via[v];
            amount = amount.min(edges[e].residual);
            v = edges[e ^ 1].to;
        }
        let mut v = sink;
        while v != source {
            let e = via[v];
            edges[e].residual -= amount;
            edges[e ^ 1].residual += amount;
            v = edges[e ^ 1].to;
        }
        value += amount;
        total_cost += i128::from(amount) * i128::from(dist[sink]);
    }

    let flow = Flow::from_assignment(
        source,
        sink,
        arcs.iter()
            .enumerate()
            .map(|(i, &(a, c))| (a, c - edges[2 * i].residual)),
    );
    let cost = u64::try_from(total_cost).expect("nonnegative costs give a nonnegative total");
    Ok((value, cost, flow))
}
