//! k-token graphs.
//!
//! The k-token graph of a base graph G on [n] has one vertex per k-subset of
//! [n], two subsets being adjacent when their symmetric difference is an edge
//! of G (slide one token along an edge, the other tokens staying put).
//! Vertices are indexed by colexicographic-free *lexicographic* subset rank,
//! the same order used by the inclusion matrices, so matrix identities line
//! up entrywise without any permutation bookkeeping.

use crate::combinatorics::{SparseIntMatrix, SubsetIndex, VertexSubset};
use crate::graph::{incidence_from_edges, Graph, Orientation};
use crate::{Error, Result, MAX_TOKEN_VERTICES, MAX_VERTICES};

#[derive(Clone, Debug)]
pub struct TokenGraph {
    base: Graph,
    k: usize,
    index: SubsetIndex,
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl TokenGraph {
    /// Builds the k-token graph of `base`. Requires 1 <= k <= n-1 and at most
    /// [`MAX_TOKEN_VERTICES`] subsets.
    pub fn new(base: &Graph, k: usize) -> Result<Self> {
        let n = base.n();
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!(
                "token count must satisfy 1 <= k <= n-1, got k={k}, n={n}"
            )));
        }
        let index = SubsetIndex::new(n, k)?;
        let count = index.count();
        if count > MAX_TOKEN_VERTICES {
            return Err(Error::CapExceeded(format!(
                "token graph has {count} vertices, cap is {MAX_TOKEN_VERTICES}"
            )));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); count];
        let mut edge_count = 0;
        for (i, a) in index.iter().enumerate() {
            for x in a.iter() {
                let moves = base.neighbor_bits(x) & !a.bits();
                for y in VertexSubset::from_bits(moves).iter() {
                    let b = a.without(x).with(y);
                    let j = index.rank(b)?;
                    if j > i {
                        adj[i].push(j as u32);
                        adj[j].push(i as u32);
                        edge_count += 1;
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(TokenGraph {
            base: base.clone(),
            k,
            index,
            adj,
            edge_count,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    /// The k-subset behind token vertex i (lexicographic rank i).
    pub fn subset(&self, i: usize) -> VertexSubset {
        self.index.unrank(i).expect("vertex index in range")
    }

    /// The token vertex of a k-subset.
    pub fn index_of(&self, s: VertexSubset) -> Result<usize> {
        self.index.rank(s)
    }

    pub fn subsets(&self) -> impl Iterator<Item = VertexSubset> + '_ {
        self.index.iter()
    }

    /// Edges as (i, j) with i < j, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if j as usize > i {
                    out.push((i, j as usize));
                }
            }
        }
        out
    }

    pub fn laplacian(&self) -> SparseIntMatrix {
        let m = self.vertex_count();
        let mut l = SparseIntMatrix::new(m, m);
        for i in 0..m {
            let d = self.degree(i);
            if d > 0 {
                l.set(i, i, d as i64);
            }
            for &j in &self.adj[i] {
                l.set(i, j as usize, -1);
            }
        }
        l
    }

    pub fn adjacency_matrix(&self) -> SparseIntMatrix {
        let m = self.vertex_count();
        let mut a = SparseIntMatrix::new(m, m);
        for i in 0..m {
            for &j in &self.adj[i] {
                a.set(i, j as usize, 1);
            }
        }
        a
    }

    pub fn degree_matrix(&self) -> SparseIntMatrix {
        let m = self.vertex_count();
        let mut d = SparseIntMatrix::new(m, m);
        for i in 0..m {
            let deg = self.degree(i);
            if deg > 0 {
                d.set(i, i, deg as i64);
            }
        }
        d
    }

    /// Oriented incidence matrix T with T Tᵀ equal to the Laplacian.
    pub fn incidence_matrix(&self, orientation: Orientation) -> SparseIntMatrix {
        incidence_from_edges(self.vertex_count(), &self.edges(), orientation)
    }

    /// Connected components over token vertices, each ascending, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let m = self.vertex_count();
        let mut comp_of = vec![usize::MAX; m];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..m {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut queue = vec![start];
            comp_of[start] = id;
            let mut members = vec![start];
            while let Some(i) = queue.pop() {
                for &j in &self.adj[i] {
                    let j = j as usize;
                    if comp_of[j] == usize::MAX {
                        comp_of[j] = id;
                        queue.push(j);
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Converts to a plain [`Graph`] when the token graph is small enough
    /// (at most 62 vertices), e.g. for graph6 output.
    pub fn to_graph(&self) -> Result<Graph> {
        let m = self.vertex_count();
        if m > MAX_VERTICES {
            return Err(Error::CapExceeded(format!(
                "token graph has {m} vertices, graph6 output caps at {MAX_VERTICES}"
            )));
        }
        Graph::from_edges(m, &self.edges())
    }
}

/// The token-graph neighbors of one k-subset, without building the whole
/// token graph.
pub fn token_neighbors(base: &Graph, a: VertexSubset) -> Result<Vec<VertexSubset>> {
    let n = base.n();
    if a.is_empty() || a.bits() >> n != 0 {
        return Err(Error::InvalidParameter(format!(
            "subset {a} is not a nonempty subset of the {n} base vertices"
        )));
    }
    let mut out = Vec::new();
    for x in a.iter() {
        let moves = base.neighbor_bits(x) & !a.bits();
        for y in VertexSubset::from_bits(moves).iter() {
            out.push(a.without(x).with(y));
        }
    }
    // Lexicographic subset order, matching the token-graph vertex order.
    out.sort_by_key(|s| s.elems());
    Ok(out)
}
