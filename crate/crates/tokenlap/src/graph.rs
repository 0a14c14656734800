//! Simple undirected graphs on up to 62 vertices.
//!
//! Each vertex stores its neighborhood as a u64 bitset, which keeps every
//! graph inside the single-byte graph6 size header and makes complement,
//! component, and adjacency queries cheap. Graphs are immutable once built;
//! all construction goes through [`Graph::from_edges`], [`Graph::parse_graph6`],
//! or [`GraphFamilySpec::build`].

use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{SparseIntMatrix, SubsetIndex, VertexSubset};
use crate::{Error, Result, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on n vertices, 1 <= n <= 62.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "graph order must be between 1 and {MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Graph from an edge list. Endpoints must be distinct vertices below n;
    /// duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency_bits(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert!((0..n).all(|v| adj[v] >> v & 1 == 0), "self-loop");
        debug_assert!((0..n).all(|v| adj[v] >> n == 0), "stray bits");
        debug_assert!(
            (0..n).all(|v| (0..n).all(|u| adj[v] >> u & 1 == adj[u] >> v & 1)),
            "asymmetric adjacency"
        );
        Graph { n, adj }
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) out of range for order {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighbors of v as a bitset.
    pub fn neighbor_bits(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        VertexSubset::from_bits(self.adj[v]).iter()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let above = self.adj[u] >> (u + 1) << (u + 1);
            for v in VertexSubset::from_bits(above).iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// The complement graph: same vertices, all non-edges become edges.
    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & full & !(1 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// The double graph: two copies of the vertex set, with u ~ v' and
    /// v ~ u' for every edge (u, v). Bipartite, with no edges inside a copy.
    pub fn double(&self) -> Result<Graph> {
        let n2 = self
            .n
            .checked_mul(2)
            .filter(|&m| m <= MAX_VERTICES)
            .ok_or_else(|| {
                Error::CapExceeded(format!("double of order {} exceeds {MAX_VERTICES}", self.n))
            })?;
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            edges.push((u, self.n + v));
            edges.push((v, self.n + u));
        }
        Graph::from_edges(n2, &edges)
    }

    /// Relabels vertices: vertex v becomes perm[v].
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameter(
                    "not a permutation of the vertex set".into(),
                ));
            }
            seen |= 1 << p;
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Connected components; each component lists its vertices ascending,
    /// and components are ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for u in VertexSubset::from_bits(frontier).iter() {
                    next |= self.adj[u];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            comps.push(VertexSubset::from_bits(comp).elems());
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The Laplacian L = D - A as an exact integer matrix.
    pub fn laplacian(&self) -> SparseIntMatrix {
        let mut l = SparseIntMatrix::new(self.n, self.n);
        for v in 0..self.n {
            let d = self.degree(v);
            if d > 0 {
                l.set(v, v, d as i64);
            }
            for u in self.neighbors(v) {
                l.set(v, u, -1);
            }
        }
        l
    }

    pub fn adjacency_matrix(&self) -> SparseIntMatrix {
        let mut a = SparseIntMatrix::new(self.n, self.n);
        for v in 0..self.n {
            for u in self.neighbors(v) {
                a.set(v, u, 1);
            }
        }
        a
    }

    pub fn degree_matrix(&self) -> SparseIntMatrix {
        let mut d = SparseIntMatrix::new(self.n, self.n);
        for v in 0..self.n {
            let deg = self.degree(v);
            if deg > 0 {
                d.set(v, v, deg as i64);
            }
        }
        d
    }

    /// Oriented incidence matrix T with one column per edge; T Tᵀ = L for
    /// any orientation.
    pub fn incidence_matrix(&self, orientation: Orientation) -> SparseIntMatrix {
        incidence_from_edges(self.n, &self.edges(), orientation)
    }

    /// Parses graph6, accepting an optional `>>graph6<<` prefix.
    /// Only single-byte size headers (n <= 62) are supported.
    pub fn parse_graph6(text: &str) -> Result<Graph> {
        let s = text.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Graph6 {
                offset: 0,
                reason: "empty input".into(),
            });
        }
        for (i, &b) in bytes.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(Error::Graph6 {
                    offset: i,
                    reason: format!("byte 0x{b:02x} outside the graph6 alphabet"),
                });
            }
        }
        if bytes[0] == 126 {
            return Err(Error::Graph6 {
                offset: 0,
                reason: "multi-byte size header (order > 62) not supported".into(),
            });
        }
        let n = (bytes[0] - 63) as usize;
        if n == 0 {
            return Err(Error::Graph6 {
                offset: 0,
                reason: "graph of order 0 not supported".into(),
            });
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if bytes.len() - 1 < nbytes {
            return Err(Error::Graph6 {
                offset: bytes.len(),
                reason: format!(
                    "truncated: order {n} needs {nbytes} edge bytes, found {}",
                    bytes.len() - 1
                ),
            });
        }
        if bytes.len() - 1 > nbytes {
            return Err(Error::Graph6 {
                offset: 1 + nbytes,
                reason: format!("trailing bytes after {nbytes} edge bytes"),
            });
        }
        let bit = |t: usize| (bytes[1 + t / 6] - 63) >> (5 - t % 6) & 1;
        let mut g = Graph::empty(n)?;
        let mut t = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(t) == 1 {
                    g.add_edge(i, j)?;
                }
                t += 1;
            }
        }
        for pad in nbits..nbytes * 6 {
            if bit(pad) != 0 {
                return Err(Error::Graph6 {
                    offset: 1 + pad / 6,
                    reason: "nonzero padding bits".into(),
                });
            }
        }
        Ok(g)
    }

    /// Writes the canonical graph6 encoding (single-byte header, zero padding).
    pub fn write_graph6(&self) -> String {
        let n = self.n;
        let nbits = n * (n - 1) / 2;
        let mut out = vec![63 + n as u8];
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | u8::from(self.has_edge(i, j));
                filled += 1;
                if filled == 6 {
                    out.push(63 + acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(63 + (acc << (6 - filled)));
        }
        debug_assert_eq!(out.len(), 1 + nbits.div_ceil(6));
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }
}

/// Edge orientation rule for incidence matrices.
#[derive(Copy, Clone, Debug)]
pub enum Orientation {
    /// +1 at the lower-labeled endpoint, -1 at the higher.
    LowerToHigher,
    /// Per-edge pseudorandom flips derived from the seed; deterministic for
    /// a fixed seed and edge order.
    Seeded(u64),
}

impl Orientation {
    fn flipped(self, edge_index: usize) -> bool {
        match self {
            Orientation::LowerToHigher => false,
            Orientation::Seeded(seed) => splitmix64(seed ^ edge_index as u64) & 1 == 1,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ x >> 30).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ x >> 27).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ x >> 31
}

pub(crate) fn incidence_from_edges(
    n: usize,
    edges: &[(usize, usize)],
    orientation: Orientation,
) -> SparseIntMatrix {
    let mut t = SparseIntMatrix::new(n, edges.len());
    for (c, &(u, v)) in edges.iter().enumerate() {
        let (tail, head) = if orientation.flipped(c) { (v, u) } else { (u, v) };
        t.set(tail, c, 1);
        t.set(head, c, -1);
    }
    t
}

/// Named graph families.
///
/// `Johnson(n, k)` is the graph on the k-subsets of [n] with adjacency
/// |A ∩ B| = k-1. `Odd(k)` is the graph on the (k-1)-subsets of [2k-1] with
/// disjointness adjacency (so Odd(2) = K_3 and Odd(3) is the Petersen graph).
/// `DoubledJohnson(n, k)` is the bipartite inclusion graph between the
/// k-subsets and the (k+1)-subsets of [n]. `Double` is [`Graph::double`]
/// applied to an inner family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphFamilySpec {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
    CompleteBipartite(usize, usize),
    Johnson(usize, usize),
    Odd(usize),
    Double(Box<GraphFamilySpec>),
    DoubledJohnson(usize, usize),
}

impl GraphFamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            GraphFamilySpec::Complete(n) => {
                let g = Graph::empty(n)?;
                Ok(g.complement())
            }
            GraphFamilySpec::Path(n) => {
                let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphFamilySpec::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "cycle needs at least 3 vertices, got {n}"
                    )));
                }
                let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                edges.push((n - 1, 0));
                Graph::from_edges(n, &edges)
            }
            GraphFamilySpec::Star(n) => {
                let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphFamilySpec::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(Error::InvalidParameter(
                        "complete bipartite parts must be nonempty".into(),
                    ));
                }
                let n = checked_order(a + b)?;
                let mut edges = Vec::with_capacity(a * b);
                for u in 0..a {
                    for v in a..a + b {
                        edges.push((u, v));
                    }
                }
                Graph::from_edges(n, &edges)
            }
            GraphFamilySpec::Johnson(n, k) => {
                if k == 0 || k >= n {
                    return Err(Error::InvalidParameter(format!(
                        "Johnson graph needs 1 <= k <= n-1, got n={n}, k={k}"
                    )));
                }
                let idx = SubsetIndex::new(n, k)?;
                let order = checked_order(idx.count())?;
                let subsets: Vec<_> = idx.iter().collect();
                let mut edges = Vec::new();
                for i in 0..order {
                    for j in i + 1..order {
                        if subsets[i].symmetric_difference(subsets[j]).len() == 2 {
                            edges.push((i, j));
                        }
                    }
                }
                Graph::from_edges(order, &edges)
            }
            GraphFamilySpec::Odd(k) => {
                if k < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "odd graph needs k >= 2, got {k}"
                    )));
                }
                let idx = SubsetIndex::new(2 * k - 1, k - 1)?;
                let order = checked_order(idx.count())?;
                let subsets: Vec<_> = idx.iter().collect();
                let mut edges = Vec::new();
                for i in 0..order {
                    for j in i + 1..order {
                        if subsets[i].intersection(subsets[j]).is_empty() {
                            edges.push((i, j));
                        }
                    }
                }
                Graph::from_edges(order, &edges)
            }
            GraphFamilySpec::Double(ref inner) => inner.build()?.double(),
            GraphFamilySpec::DoubledJohnson(n, k) => {
                if k + 1 > n {
                    return Err(Error::InvalidParameter(format!(
                        "doubled Johnson graph needs k+1 <= n, got n={n}, k={k}"
                    )));
                }
                let lower = SubsetIndex::new(n, k)?;
                let upper = SubsetIndex::new(n, k + 1)?;
                let order = checked_order(lower.count() + upper.count())?;
                let uppers: Vec<_> = upper.iter().collect();
                let mut edges = Vec::new();
                for (i, s) in lower.iter().enumerate() {
                    for (j, t) in uppers.iter().enumerate() {
                        if s.is_subset_of(*t) {
                            edges.push((i, lower.count() + j));
                        }
                    }
                }
                Graph::from_edges(order, &edges)
            }
        }
    }
}

fn checked_order(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_VERTICES {
        Err(Error::CapExceeded(format!(
            "family has {n} vertices, direct construction caps at {MAX_VERTICES}"
        )))
    } else {
        Ok(n)
    }
}

impl fmt::Display for GraphFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamilySpec::Complete(n) => write!(f, "complete:{n}"),
            GraphFamilySpec::Path(n) => write!(f, "path:{n}"),
            GraphFamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamilySpec::Star(n) => write!(f, "star:{n}"),
            GraphFamilySpec::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            GraphFamilySpec::Johnson(n, k) => write!(f, "johnson:{n},{k}"),
            GraphFamilySpec::Odd(k) => write!(f, "odd:{k}"),
            GraphFamilySpec::Double(inner) => write!(f, "double:{inner}"),
            GraphFamilySpec::DoubledJohnson(n, k) => write!(f, "doubledjohnson:{n},{k}"),
        }
    }
}

impl FromStr for GraphFamilySpec {
    type Err = Error;

    /// Parses `name:params`, e.g. `path:4`, `bipartite:2,3`, `johnson:5,2`,
    /// or the nested `double:odd:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("family '{s}': {msg}"));
        let (name, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let one = |rest: &str| -> Result<usize> {
            rest.parse()
                .map_err(|_| bad("expected one integer parameter"))
        };
        let two = |rest: &str| -> Result<(usize, usize)> {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| bad("expected two comma-separated parameters"))?;
            Ok((
                a.parse().map_err(|_| bad("bad first parameter"))?,
                b.parse().map_err(|_| bad("bad second parameter"))?,
            ))
        };
        match name {
            "complete" => Ok(GraphFamilySpec::Complete(one(rest)?)),
            "path" => Ok(GraphFamilySpec::Path(one(rest)?)),
            "cycle" => Ok(GraphFamilySpec::Cycle(one(rest)?)),
            "star" => Ok(GraphFamilySpec::Star(one(rest)?)),
            "bipartite" => {
                let (a, b) = two(rest)?;
                Ok(GraphFamilySpec::CompleteBipartite(a, b))
            }
            "johnson" => {
                let (n, k) = two(rest)?;
                Ok(GraphFamilySpec::Johnson(n, k))
            }
            "odd" => Ok(GraphFamilySpec::Odd(one(rest)?)),
            "double" => Ok(GraphFamilySpec::Double(Box::new(rest.parse()?))),
            "doubledjohnson" => {
                let (n, k) = two(rest)?;
                Ok(GraphFamilySpec::DoubledJohnson(n, k))
            }
            _ => Err(bad("unknown family name")),
        }
    }
}
