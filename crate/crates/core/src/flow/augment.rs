use std::collections::VecDeque;

use super::{ensure_valid, Flow, ResidualView};
use crate::error::{Error, Result};
use crate::network::{Arc, Network};
use crate::path::{Direction, GeneralizedPath};

/// Residual moves out of `u` in canonical vertex order. When both a forward
/// and a backward move reach the same vertex, the forward one wins.
fn residual_moves(residual: &ResidualView<'_>, net: &Network, u: usize) -> Vec<(usize, Direction)> {
    let mut moves: Vec<(usize, Direction)> = net
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
    moves.sort_unstable();
    moves.dedup_by_key(|m| m.0);
    moves
}

/// Breadth-first search over the residual view. Neighbours are scanned in
/// canonical order, so the result is the lexicographically least among the
/// shortest augmenting paths. Returns `None` iff the flow is maximum.
pub fn find_augmenting_path(net: &Network, flow: &Flow) -> Option<GeneralizedPath> {
    let (y, z) = (flow.source(), flow.sink());
    let n = net.vertex_count();
    let residual = ResidualView::new(net, flow);
    let mut parent: Vec<Option<(usize, Direction)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([y]);
    seen[y] = true;

    while let Some(u) = queue.pop_front() {
        for (w, dir) in residual_moves(&residual, net, u) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some((u, dir));
            if w == z {
                let mut vertices = vec![z];
                let mut directions = Vec::new();
                let mut cur = z;
                while let Some((p, d)) = parent[cur] {
                    vertices.push(p);
                    directions.push(d);
                    cur = p;
                }
                vertices.reverse();
                directions.reverse();
                return Some(
                    GeneralizedPath::new(vertices, directions).expect("BFS tree path is simple"),
                );
            }
            queue.push_back(w);
        }
    }
    None
}

fn bottleneck(net: &Network, flow: &Flow, path: &GeneralizedPath) -> u64 {
    let residual = ResidualView::new(net, flow);
    path.arcs()
        .map(|(a, d)| match d {
            Direction::Forward => residual.residual(a),
            Direction::Backward => residual.cancelable(a),
        })
        .min()
        .unwrap_or(0)
}

fn push_along(flow: &mut Flow, path: &GeneralizedPath, amount: u64) {
    for (a, d) in path.arcs() {
        let current = flow.get(a);
        match d {
            Direction::Forward => flow.set(a, current + amount),
            Direction::Backward => flow.set(a, current - amount),
        }
    }
}

/// `f + chi(path)`: one more unit along an augmenting path.
pub fn augment(net: &Network, flow: &Flow, path: &GeneralizedPath) -> Result<Flow> {
    if path.source() != flow.source() || path.sink() != flow.sink() {
        return Err(Error::NotAugmenting(format!(
            "path runs {}..{} but the flow runs {}..{}",
            net.token(path.source()),
            net.token(path.sink()),
            net.token(flow.source()),
            net.token(flow.sink())
        )));
    }
    let residual = ResidualView::new(net, flow);
    for (a, d) in path.arcs() {
        let ok = match d {
            Direction::Forward => residual.residual(a) >= 1,
            Direction::Backward => residual.cancelable(a) >= 1,
        };
        if !ok {
            return Err(Error::NotAugmenting(format!(
                "no headroom on {} arc ({},{})",
                match d {
                    Direction::Forward => "forward",
                    Direction::Backward => "backward",
                },
                net.token(a.tail),
                net.token(a.head)
            )));
        }
    }
    let mut next = flow.clone();
    push_along(&mut next, path, 1);
    Ok(next)
}

/// Shortest-augmenting-path maximum flow. Each round pushes the bottleneck
/// amount along the path returned by [`find_augmenting_path`], so the output
/// is a deterministic function of the network and the endpoints.
pub fn max_flow(net: &Network, source: usize, sink: usize) -> Result<(u64, Flow)> {
    net.check_vertex(source)?;
    net.check_vertex(sink)?;
    if source == sink {
        return Err(Error::SameEndpoints(net.token(source).into()));
    }
    let mut flow = Flow::null(source, sink);
    let mut value = 0u64;
    while let Some(path) = find_augmenting_path(net, &flow) {
        let amount = bottleneck(net, &flow, &path);
        debug_assert!(amount > 0);
        push_along(&mut flow, &path, amount);
        value += amount;
    }
    debug_assert!(ensure_valid(net, &flow).is_ok());
    debug_assert_eq!(flow.value(), value as i64);
    Ok((value, flow))
}

pub fn max_flow_value(net: &Network, source: usize, sink: usize) -> Result<u64> {
    max_flow(net, source, sink).map(|(v, _)| v)
}
