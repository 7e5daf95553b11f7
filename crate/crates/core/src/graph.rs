//! Ordered and labelled graphs, the nesting predicate, and the plain-text
//! graph format.
//!
//! Vertices are 1-based everywhere. An [`OrderedGraph`] lives on `{1..n}` with
//! that numbering as its linear order, may carry loops, and never carries
//! parallel edges. A [`LabelledGraph`] is the abstract graph whose queue-number
//! is searched for; the vertex numbering there is only a name.

use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;

use crate::error::{Error, Result};

/// An edge of an ordered graph with `left <= right`. A loop has
/// `left == right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedEdge {
    pub left: u32,
    pub right: u32,
}

impl OrderedEdge {
    /// Builds the normalized edge between `u` and `v`.
    pub fn new(u: u32, v: u32) -> Self {
        normalize_edge(u, v)
    }

    pub fn is_loop(&self) -> bool {
        self.left == self.right
    }

    /// `left + right`; two distinct edges with the same sum are nested.
    pub fn endpoint_sum(&self) -> u32 {
        self.left + self.right
    }
}

impl fmt::Display for OrderedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

impl From<(u32, u32)> for OrderedEdge {
    fn from((u, v): (u32, u32)) -> Self {
        normalize_edge(u, v)
    }
}

pub fn normalize_edge(u: u32, v: u32) -> OrderedEdge {
    OrderedEdge {
        left: u.min(v),
        right: u.max(v),
    }
}

/// True iff `inner` is nested inside `outer`.
///
/// Both inequalities are strict, so edges sharing an endpoint never nest and
/// two loops never nest.
#[inline]
pub fn is_nested(outer: OrderedEdge, inner: OrderedEdge) -> bool {
    outer.left < inner.left && inner.right < outer.right
}

/// True iff one of the two edges is nested inside the other.
#[inline]
pub fn are_nested(e: OrderedEdge, f: OrderedEdge) -> bool {
    is_nested(e, f) || is_nested(f, e)
}

/// An ordered graph on `{1..n}` with edges kept in canonical order
/// (left ascending, then right ascending) and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    n: u32,
    edges: Vec<OrderedEdge>,
}

impl OrderedGraph {
    pub fn empty(n: u32) -> Self {
        OrderedGraph { n, edges: Vec::new() }
    }

    /// Normalizes every pair and rejects out-of-range vertices and
    /// duplicates (after normalization).
    pub fn new<I, E>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<OrderedEdge>,
    {
        let mut set = BTreeSet::new();
        for e in edges {
            let e: OrderedEdge = e.into();
            check_range(n, e, None)?;
            if !set.insert(e) {
                return Err(Error::DuplicateEdge { u: e.left, v: e.right, line: None });
            }
        }
        Ok(OrderedGraph { n, edges: set.into_iter().collect() })
    }

    /// Builds from edges already known to be in range, normalized, sorted and
    /// distinct. Only checked in debug builds.
    pub(crate) fn from_sorted_unchecked(n: u32, edges: Vec<OrderedEdge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.left >= 1 && e.right <= n && e.left <= e.right));
        OrderedGraph { n, edges }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[OrderedEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: OrderedEdge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Returns a copy with `e` added (no-op when already present).
    pub fn with_edge(&self, e: OrderedEdge) -> Result<Self> {
        check_range(self.n, e, None)?;
        let mut edges = self.edges.clone();
        if let Err(pos) = edges.binary_search(&e) {
            edges.insert(pos, e);
        }
        Ok(OrderedGraph { n: self.n, edges })
    }

    /// True iff no two edges are nested, i.e. the graph is a single queue.
    pub fn is_queue(&self) -> bool {
        // Sorted by left, so a nested pair (e outer, f inner) has e before f.
        for (i, &e) in self.edges.iter().enumerate() {
            for &f in &self.edges[i + 1..] {
                if is_nested(e, f) {
                    return false;
                }
            }
        }
        true
    }

    /// The image under `v -> n + 1 - v`.
    pub fn reversed(&self) -> Self {
        let n = self.n;
        let mut edges: Vec<OrderedEdge> = self
            .edges
            .iter()
            .map(|e| normalize_edge(n + 1 - e.left, n + 1 - e.right))
            .collect();
        edges.sort_unstable();
        OrderedGraph { n, edges }
    }

    /// Canonical text form: vertex count, then one sorted edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.left, e.right));
        }
        out
    }
}

/// A labelled graph on vertices `1..=n`. Edges are stored normalized and
/// sorted; when `simple` is set, loops are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledGraph {
    n: u32,
    edges: Vec<(u32, u32)>,
    simple: bool,
}

impl LabelledGraph {
    pub fn new<I>(n: u32, edges: I, simple: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let e = normalize_edge(u, v);
            check_range(n, e, None)?;
            if simple && e.is_loop() {
                return Err(Error::LoopInSimpleGraph { v: e.left, line: None });
            }
            if !set.insert((e.left, e.right)) {
                return Err(Error::DuplicateEdge { u: e.left, v: e.right, line: None });
            }
        }
        Ok(LabelledGraph { n, edges: set.into_iter().collect(), simple })
    }

    /// Shorthand for a simple graph.
    pub fn simple<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Self::new(n, edges, true)
    }

    pub fn complete(n: u32) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        LabelledGraph { n, edges, simple: true }
    }

    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<(u32, u32)> = (1..n).map(|v| (v, v + 1)).collect();
        edges.push((1, n));
        edges.sort_unstable();
        LabelledGraph { n, edges, simple: true }
    }

    pub fn path(n: u32) -> Self {
        let edges = (1..n).map(|v| (v, v + 1)).collect();
        LabelledGraph { n, edges, simple: true }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Degree of every vertex, indexed `0..n` for vertex `1..=n`. A loop
    /// counts twice.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n as usize];
        for &(u, v) in &self.edges {
            deg[(u - 1) as usize] += 1;
            deg[(v - 1) as usize] += 1;
        }
        deg
    }

    /// Adjacency lists, indexed `0..n`, holding 1-based neighbour labels.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(u, v) in &self.edges {
            adj[(u - 1) as usize].push(v);
            if u != v {
                adj[(v - 1) as usize].push(u);
            }
        }
        adj
    }

    pub fn is_regular(&self, degree: u32) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    /// The ordered graph obtained by placing vertex `order[i]` at position
    /// `i + 1`. `order` must be a permutation of `1..=n`.
    pub fn apply_order(&self, order: &[u32]) -> Result<OrderedGraph> {
        let pos = positions(self.n, order)?;
        let mut edges: Vec<OrderedEdge> = self
            .edges
            .iter()
            .map(|&(u, v)| normalize_edge(pos[(u - 1) as usize], pos[(v - 1) as usize]))
            .collect();
        edges.sort_unstable();
        Ok(OrderedGraph::from_sorted_unchecked(self.n, edges))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl From<&OrderedGraph> for LabelledGraph {
    fn from(g: &OrderedGraph) -> Self {
        let edges = g.edges().iter().map(|e| (e.left, e.right)).collect::<Vec<_>>();
        let simple = !edges.iter().any(|&(u, v)| u == v);
        LabelledGraph { n: g.n(), edges, simple }
    }
}

/// Inverts a vertex order: `pos[v - 1]` is the 1-based position of `v`.
pub(crate) fn positions(n: u32, order: &[u32]) -> Result<Vec<u32>> {
    if order.len() != n as usize {
        return Err(Error::InvalidOrder(format!("expected {} vertices, got {}", n, order.len())));
    }
    let mut pos = vec![0u32; n as usize];
    for (i, &v) in order.iter().enumerate() {
        if v == 0 || v > n || pos[(v - 1) as usize] != 0 {
            return Err(Error::InvalidOrder(format!("vertex {v} out of range or repeated")));
        }
        pos[(v - 1) as usize] = i as u32 + 1;
    }
    Ok(pos)
}

fn check_range(n: u32, e: OrderedEdge, line: Option<usize>) -> Result<()> {
    if e.left == 0 || e.right > n {
        return Err(Error::VertexOutOfRange { v: if e.left == 0 { 0 } else { e.right }, n, line });
    }
    Ok(())
}

/// Raw parse of the text format: `(n, edges, line numbers)`.
fn parse_text<R: BufRead>(reader: R) -> Result<(u32, Vec<(OrderedEdge, usize)>)> {
    let mut n: Option<u32> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<u32>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse { line: lineno, msg: "expected the vertex count".into() });
                }
                n = Some(parse(fields[0])?);
            }
            Some(n) => {
                if fields.len() != 2 {
                    return Err(Error::Parse { line: lineno, msg: "expected \"u v\"".into() });
                }
                let e = normalize_edge(parse(fields[0])?, parse(fields[1])?);
                check_range(n, e, Some(lineno))?;
                edges.push((e, lineno));
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing vertex count".into() })?;
    Ok((n, edges))
}

/// Reads an ordered graph. The file's numbering is the vertex order.
pub fn read_ordered<R: BufRead>(reader: R) -> Result<OrderedGraph> {
    let (n, raw) = parse_text(reader)?;
    let mut set = BTreeSet::new();
    for (e, line) in raw {
        if !set.insert(e) {
            return Err(Error::DuplicateEdge { u: e.left, v: e.right, line: Some(line) });
        }
    }
    Ok(OrderedGraph { n, edges: set.into_iter().collect() })
}

/// Reads a labelled graph; with `simple` set, loops are an error.
pub fn read_labelled<R: BufRead>(reader: R, simple: bool) -> Result<LabelledGraph> {
    let (n, raw) = parse_text(reader)?;
    let mut set = BTreeSet::new();
    for (e, line) in raw {
        if simple && e.is_loop() {
            return Err(Error::LoopInSimpleGraph { v: e.left, line: Some(line) });
        }
        if !set.insert((e.left, e.right)) {
            return Err(Error::DuplicateEdge { u: e.left, v: e.right, line: Some(line) });
        }
    }
    Ok(LabelledGraph { n, edges: set.into_iter().collect(), simple })
}
