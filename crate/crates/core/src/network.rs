//! Capacitated networks on the complete digraph of a vertex set.
//!
//! Only positive capacities are stored; every other ordered pair of distinct
//! vertices is an arc of capacity zero. Vertices are kept in lexicographic
//! token order and addressed by their index in that order, so index order and
//! token order agree everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A vertex token over `[A-Za-z0-9_]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: &str) -> Result<Self> {
        let valid = !token.is_empty()
            && token
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_');
        if valid {
            Ok(VertexId(token.to_owned()))
        } else {
            Err(Error::InvalidToken(token.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered pair of distinct vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        debug_assert_ne!(tail, head, "self-loop arc");
        Arc { tail, head }
    }
}

/// A set of vertex indices of some network.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn singleton(x: usize) -> Self {
        VertexSet(BTreeSet::from([x]))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn insert(&mut self, x: usize) -> bool {
        self.0.insert(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    /// True iff the arc has at least one endpoint in the set.
    pub fn touches(&self, arc: Arc) -> bool {
        self.contains(arc.tail) || self.contains(arc.head)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// Immutable capacitated network. Capacities are stored in sorted adjacency
/// lists in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<VertexId>,
    out: Vec<Vec<(usize, u64)>>,
    inc: Vec<Vec<(usize, u64)>>,
}

impl Network {
    /// Builds a network from vertex tokens and `(tail, head, capacity)`
    /// entries. Zero capacities are accepted and dropped.
    pub fn build<V, T>(vertices: &[V], entries: &[(T, T, u64)]) -> Result<Network>
    where
        V: AsRef<str>,
        T: AsRef<str>,
    {
        let mut ids = Vec::with_capacity(vertices.len());
        for v in vertices {
            ids.push(VertexId::new(v.as_ref())?);
        }
        let mut sorted = ids.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        if sorted.len() < 2 {
            return Err(Error::TooFewVertices(sorted.len()));
        }
        let index: BTreeMap<&str, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |t: &str| {
            index
                .get(t)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(t.to_owned()))
        };

        let mut caps = BTreeMap::new();
        for (tail, head, capacity) in entries {
            let (tail, head) = (tail.as_ref(), head.as_ref());
            let t = lookup(tail)?;
            let h = lookup(head)?;
            if t == h {
                return Err(Error::SelfLoop(tail.to_owned()));
            }
            if caps.insert(Arc::new(t, h), *capacity).is_some() {
                return Err(Error::DuplicateArc(tail.to_owned(), head.to_owned()));
            }
        }
        Ok(Network::from_parts(sorted, caps))
    }

    /// Assembles a network from already-validated parts.
    pub(crate) fn from_parts(
        vertices: Vec<VertexId>,
        caps: impl IntoIterator<Item = (Arc, u64)>,
    ) -> Network {
        let n = vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let caps: BTreeMap<Arc, u64> = caps.into_iter().filter(|&(_, c)| c > 0).collect();
        for (a, c) in caps {
            out[a.tail].push((a.head, c));
            inc[a.head].push((a.tail, c));
        }
        for list in inc.iter_mut() {
            list.sort_unstable();
        }
        Network { vertices, out, inc }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn token(&self, index: usize) -> &str {
        self.vertices[index].as_str()
    }

    pub fn index_of(&self, token: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(token))
            .map_err(|_| Error::UnknownVertex(token.to_owned()))
    }

    pub fn capacity(&self, arc: Arc) -> u64 {
        match self.out.get(arc.tail) {
            Some(list) => list
                .binary_search_by_key(&arc.head, |&(h, _)| h)
                .map(|i| list[i].1)
                .unwrap_or(0),
            None => 0,
        }
    }

    /// Positive-capacity arcs leaving `x`, ordered by head.
    pub fn out_arcs(&self, x: usize) -> &[(usize, u64)] {
        &self.out[x]
    }

    /// Positive-capacity arcs entering `x`, ordered by tail.
    pub fn in_arcs(&self, x: usize) -> &[(usize, u64)] {
        &self.inc[x]
    }

    /// All positive-capacity arcs in canonical `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (Arc, u64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(t, list)| list.iter().map(move |&(h, c)| (Arc::new(t, h), c)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn total_capacity(&self) -> u64 {
        self.arcs().map(|(_, c)| c).sum()
    }

    /// Same vertex set, capacities replaced by `f(arc, old)`.
    pub fn map_capacities(&self, mut f: impl FnMut(Arc, u64) -> u64) -> Network {
        let caps: Vec<(Arc, u64)> = self.arcs().map(|(a, c)| (a, f(a, c))).collect();
        Network::from_parts(self.vertices.clone(), caps)
    }

    pub fn full_set(&self) -> VertexSet {
        (0..self.vertex_count()).collect()
    }

    /// Resolves vertex tokens into a set.
    pub fn vertex_set<T: AsRef<str>>(&self, tokens: &[T]) -> Result<VertexSet> {
        tokens
            .iter()
            .map(|t| self.index_of(t.as_ref()))
            .collect()
    }

    /// Fails with `UnknownVertex` if the set holds an index outside the network.
    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&x| x >= self.vertex_count()) {
            Some(x) => Err(Error::UnknownVertex(format!("#{x}"))),
            None => Ok(()),
        }
    }

    pub(crate) fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{x}")))
        }
    }

    /// The network with every arc incident to `set` set to capacity zero.
    pub fn restrict(&self, set: &VertexSet) -> Result<Network> {
        self.check_set(set)?;
        Ok(self.map_capacities(|a, c| if set.touches(a) { 0 } else { c }))
    }

    /// Arcs of the complete digraph leaving and entering `set`, including
    /// zero-capacity ones, in canonical order.
    pub fn boundary_arcs(&self, set: &VertexSet) -> Result<(Vec<Arc>, Vec<Arc>)> {
        self.check_set(set)?;
        let n = self.vertex_count();
        let mut outgoing = Vec::new();
        let mut incoming = Vec::new();
        for t in 0..n {
            for h in 0..n {
                if t == h {
                    continue;
                }
                match (set.contains(t), set.contains(h)) {
                    (true, false) => outgoing.push(Arc::new(t, h)),
                    (false, true) => incoming.push(Arc::new(t, h)),
                    _ => {}
                }
            }
        }
        Ok((outgoing, incoming))
    }

    /// Total capacity of the arcs leaving `set`.
    pub fn capacity_of_set(&self, set: &VertexSet) -> Result<u64> {
        self.check_set(set)?;
        Ok(set
            .iter()
            .flat_map(|x| self.out[x].iter())
            .filter(|&&(h, _)| !set.contains(h))
            .map(|&(_, c)| c)
            .sum())
    }

    pub fn render_set(&self, set: &VertexSet) -> String {
        let tokens: Vec<&str> = set.iter().map(|x| self.token(x)).collect();
        format!("{{{}}}", tokens.join(","))
    }

    /// Parses the text network format without a capacity cap.
    pub fn parse(text: &str) -> Result<Network> {
        Network::parse_with_cap(text, None)
    }

    /// Parses the text network format: `#` comment lines, one
    /// `vertices v1 .. vn` line, then `tail head capacity` lines.
    pub fn parse_with_cap(text: &str, max_capacity: Option<u64>) -> Result<Network> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut vertices: Option<(usize, Vec<&str>)> = None;
        let mut entries: Vec<(usize, &str, &str, u64)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if vertices.is_none() {
                if fields[0] != "vertices" {
                    return Err(parse_err(line, "expected `vertices` header".into()));
                }
                vertices = Some((line, fields[1..].to_vec()));
                continue;
            }
            if fields[0] == "vertices" {
                return Err(parse_err(line, "second `vertices` line".into()));
            }
            if fields.len() != 3 {
                return Err(parse_err(
                    line,
                    format!("expected `tail head capacity`, got {} fields", fields.len()),
                ));
            }
            let capacity: u64 = fields[2]
                .parse()
                .map_err(|_| parse_err(line, format!("bad capacity `{}`", fields[2])))?;
            if let Some(cap) = max_capacity {
                if capacity > cap {
                    return Err(parse_err(
                        line,
                        format!("capacity {capacity} exceeds the cap {cap}"),
                    ));
                }
            }
            entries.push((line, fields[0], fields[1], capacity));
        }

        let (header_line, tokens) =
            vertices.ok_or_else(|| parse_err(1, "missing `vertices` header".into()))?;
        let mut seen = BTreeSet::new();
        for t in &tokens {
            VertexId::new(t).map_err(|e| parse_err(header_line, e.to_string()))?;
            if !seen.insert(*t) {
                return Err(parse_err(header_line, Error::DuplicateVertex(t.to_string()).to_string()));
            }
        }
        if tokens.len() < 2 {
            return Err(parse_err(
                header_line,
                Error::TooFewVertices(tokens.len()).to_string(),
            ));
        }
        // Validate entry by entry so errors carry their own line number.
        let mut arcs = BTreeSet::new();
        for &(line, t, h, _) in &entries {
            for token in [t, h] {
                if !seen.contains(token) {
                    return Err(parse_err(line, Error::UnknownVertex(token.into()).to_string()));
                }
            }
            if t == h {
                return Err(parse_err(line, Error::SelfLoop(t.into()).to_string()));
            }
            if !arcs.insert((t, h)) {
                return Err(parse_err(
                    line,
                    Error::DuplicateArc(t.into(), h.into()).to_string(),
                ));
            }
        }
        let triples: Vec<(&str, &str, u64)> =
            entries.iter().map(|&(_, t, h, c)| (t, h, c)).collect();
        Network::build(&tokens, &triples)
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("vertices")?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        for (a, c) in self.arcs() {
            writeln!(f, "{} {} {}", self.token(a.tail), self.token(a.head), c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fig1() -> Network {
        Network::parse(fixtures::FIG1).unwrap()
    }

    fn cap(n: &Network, t: &str, h: &str) -> u64 {
        n.capacity(Arc::new(n.index_of(t).unwrap(), n.index_of(h).unwrap()))
    }

    #[test]
    fn fig1_capacities() {
        let n = fig1();
        let expected = [
            ("y", "v", 2),
            ("y", "u", 1),
            ("v", "x", 1),
            ("v", "u", 1),
            ("u", "x", 2),
            ("u", "z", 1),
            ("x", "z", 2),
        ];
        for (t, h, c) in expected {
            assert_eq!(cap(&n, t, h), c, "{t}->{h}");
        }
        assert_eq!(n.arc_count(), 7);
        assert_eq!(cap(&n, "z", "y"), 0);
        assert_eq!(n.token(0), "u");
    }

    #[test]
    fn empty_network_and_construction_errors() {
        let n = Network::build(&["a", "b"], &[] as &[(&str, &str, u64)]).unwrap();
        assert_eq!(n.arc_count(), 0);
        assert_eq!(
            Network::build(&["a", "b"], &[("a", "a", 1)]),
            Err(Error::SelfLoop("a".into()))
        );
        assert_eq!(
            Network::build(&["a", "b"], &[("a", "b", 1), ("a", "b", 2)]),
            Err(Error::DuplicateArc("a".into(), "b".into()))
        );
        assert_eq!(
            Network::build(&["a", "b"], &[("a", "c", 1)]),
            Err(Error::UnknownVertex("c".into()))
        );
        assert_eq!(
            Network::build(&["a"], &[] as &[(&str, &str, u64)]),
            Err(Error::TooFewVertices(1))
        );
        assert_eq!(
            Network::build(&["a", "b-c"], &[] as &[(&str, &str, u64)]),
            Err(Error::InvalidToken("b-c".into()))
        );
        let zero = Network::build(&["a", "b"], &[("a", "b", 0)]).unwrap();
        assert_eq!(zero.arc_count(), 0);
    }

    #[test]
    fn restrict_fig1_to_x() {
        let n = fig1();
        let x = n.vertex_set(&["x"]).unwrap();
        let r = n.restrict(&x).unwrap();
        let expected = Network::build(
            &["y", "v", "x", "u", "z"],
            &[("y", "v", 2), ("y", "u", 1), ("v", "u", 1), ("u", "z", 1)],
        )
        .unwrap();
        assert_eq!(r, expected);
        assert_eq!(n.restrict(&VertexSet::new()).unwrap(), n);
    }

    #[test]
    fn restrict_fig6_kills_everything() {
        let n = Network::parse(fixtures::FIG6).unwrap();
        let x = n.vertex_set(&["x1", "x2"]).unwrap();
        assert_eq!(n.restrict(&x).unwrap().arc_count(), 0);
    }

    #[test]
    fn boundary_arcs_of_x() {
        let n = fig1();
        let x = n.vertex_set(&["x"]).unwrap();
        let (out, inc) = n.boundary_arcs(&x).unwrap();
        let xi = n.index_of("x").unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(inc.len(), 4);
        assert!(out.iter().all(|a| a.tail == xi));
        assert!(inc.iter().all(|a| a.head == xi));
        let (o, i) = n.boundary_arcs(&n.full_set()).unwrap();
        assert!(o.is_empty() && i.is_empty());
        let (o, i) = n.boundary_arcs(&VertexSet::new()).unwrap();
        assert!(o.is_empty() && i.is_empty());
    }

    #[test]
    fn capacity_of_sets() {
        let n = fig1();
        let x = n.vertex_set(&["x"]).unwrap();
        assert_eq!(n.capacity_of_set(&x).unwrap(), 2);
        let rest: VertexSet = n.full_set().iter().filter(|&v| !x.contains(v)).collect();
        assert_eq!(n.capacity_of_set(&rest).unwrap(), 3);
        assert_eq!(n.capacity_of_set(&n.full_set()).unwrap(), 0);
        let bogus = VertexSet::singleton(17);
        assert!(matches!(n.capacity_of_set(&bogus), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# c\nvertices a b\na b 1\na q 2\n";
        match Network::parse(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 4);
                assert!(message.contains("`q`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match Network::parse("vertices a b\na b x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Network::parse_with_cap("vertices a b\na b 11\n", Some(10)) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Network::parse("a b 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Network::parse("vertices a b\nb b 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn display_roundtrips_fixtures() {
        for text in fixtures::NETWORKS {
            let n = Network::parse(text).unwrap();
            assert_eq!(Network::parse(&n.to_string()).unwrap(), n);
        }
    }
}
