//! Isomorphism-reduced enumeration of small graphs.
//!
//! Graphs are canonicalized by minimizing the adjacency bitset rows over all
//! vertex relabelings compatible with a degree-based refinement, so two graphs
//! are isomorphic exactly when their canonical keys agree. The refinement
//! (degree, sorted multiset of neighbor degrees) cuts the permutation search
//! to class-preserving maps, which is plenty for the orders this crate
//! enumerates (n <= 9 or so); no external canonical-labeling tool is needed.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::{Error, Result};

/// Canonical key: the lexicographically smallest adjacency rows over all
/// refinement-compatible relabelings. Equal keys <=> isomorphic graphs.
pub fn canonical_key(g: &Graph) -> Vec<u64> {
    let n = g.n();
    // Refinement invariant per vertex: its degree plus the sorted degrees of
    // its neighbors. Only relabelings mapping equal invariants to equal
    // positions can realize the minimum.
    let mut inv: Vec<(Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (nd, v)
        })
        .map(|(nd, v)| (std::iter::once(g.degree(v)).chain(nd).collect(), v))
        .collect();
    inv.sort();

    // Group vertices into classes of equal invariant; positions are assigned
    // class block by class block.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && inv[j].0 == inv[i].0 {
            j += 1;
        }
        classes.push(inv[i..j].iter().map(|&(_, v)| v).collect());
        i = j;
    }

    let edges = g.edges();
    let mut perm = vec![0usize; n];
    let mut best: Option<Vec<u64>> = None;
    let mut offsets = Vec::with_capacity(classes.len());
    let mut off = 0;
    for c in &classes {
        offsets.push(off);
        off += c.len();
    }

    fn assign(
        classes: &mut [Vec<usize>],
        offsets: &[usize],
        ci: usize,
        within: usize,
        perm: &mut [usize],
        edges: &[(usize, usize)],
        n: usize,
        best: &mut Option<Vec<u64>>,
    ) {
        if ci == classes.len() {
            let mut rows = vec![0u64; n];
            for &(u, v) in edges {
                rows[perm[u]] |= 1 << perm[v];
                rows[perm[v]] |= 1 << perm[u];
            }
            if best.as_ref().is_none_or(|b| rows < *b) {
                *best = Some(rows);
            }
            return;
        }
        let len = classes[ci].len();
        if within == len {
            assign(classes, offsets, ci + 1, 0, perm, edges, n, best);
            return;
        }
        for pick in within..len {
            classes[ci].swap(within, pick);
            perm[classes[ci][within]] = offsets[ci] + within;
            assign(classes, offsets, ci, within + 1, perm, edges, n, best);
            classes[ci].swap(within, pick);
        }
    }

    assign(
        &mut classes,
        &offsets,
        0,
        0,
        &mut perm,
        &edges,
        n,
        &mut best,
    );
    best.expect("at least one relabeling exists")
}

/// The canonical representative of g's isomorphism class.
pub fn canonical_form(g: &Graph) -> Graph {
    Graph::from_adjacency_bits(g.n(), canonical_key(g))
}

/// All graphs on n vertices up to isomorphism, one canonical representative
/// per class, in a deterministic order. Counts for n = 1..: 1, 2, 4, 11, 34,
/// 156, 1044, ...
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 10 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive enumeration supports 1 <= n <= 10, got {n}"
        )));
    }
    let mut current = vec![Graph::empty(1)?];
    for order in 2..=n {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut keys: Vec<Vec<u64>> = Vec::new();
        for g in &current {
            let mut adj: Vec<u64> = (0..order - 1).map(|v| g.neighbor_bits(v)).collect();
            adj.push(0);
            // Attach a new vertex to every subset of the old ones.
            for mask in 0u64..1 << (order - 1) {
                let mut ext = adj.clone();
                ext[order - 1] = mask;
                for v in 0..order - 1 {
                    if mask >> v & 1 == 1 {
                        ext[v] |= 1 << (order - 1);
                    }
                }
                let key = canonical_key(&Graph::from_adjacency_bits(order, ext));
                if seen.insert(key.clone()) {
                    keys.push(key);
                }
            }
        }
        keys.sort();
        current = keys
            .into_iter()
            .map(|k| Graph::from_adjacency_bits(order, k))
            .collect();
    }
    Ok(current)
}

/// Connected graphs on n vertices up to isomorphism. Counts for n = 1..:
/// 1, 1, 2, 6, 21, 112, 853, ...
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_match_the_literature() {
        assert_eq!(
            (1..=6)
                .map(|n| all_graphs(n).unwrap().len())
                .collect::<Vec<_>>(),
            vec![1, 2, 4, 11, 34, 156]
        );
        assert_eq!(
            (1..=6)
                .map(|n| connected_graphs(n).unwrap().len())
                .collect::<Vec<_>>(),
            vec![1, 1, 2, 6, 21, 112]
        );
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let graphs = all_graphs(5).unwrap();
        let keys: HashSet<Vec<u64>> = graphs.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), graphs.len());
        for g in &graphs {
            assert_eq!(canonical_form(g), *g);
        }
    }

    #[test]
    fn connected_filter_is_sound() {
        for g in connected_graphs(5).unwrap() {
            assert!(g.is_connected());
        }
        let disconnected = all_graphs(4).unwrap().len() - connected_graphs(4).unwrap().len();
        assert_eq!(disconnected, 5);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(all_graphs(0).is_err());
        assert!(all_graphs(11).is_err());
    }

    #[test]
    fn canonical_separates_known_nonisomorphic_pairs() {
        // Same degree sequence (2,2,2,2,2,2), different graphs.
        let c6 = crate::graph::GraphFamilySpec::Cycle(6).build().unwrap();
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_key(&c6), canonical_key(&two_triangles));
    }

    proptest! {
        #[test]
        fn canonical_key_is_relabeling_invariant(
            g in (1usize..=8).prop_flat_map(|n| {
                proptest::collection::vec(proptest::bool::ANY, n * (n - 1) / 2)
                    .prop_map(move |bits| {
                        let mut edges = Vec::new();
                        let mut t = 0;
                        for j in 1..n {
                            for i in 0..j {
                                if bits[t] {
                                    edges.push((i, j));
                                }
                                t += 1;
                            }
                        }
                        Graph::from_edges(n, &edges).unwrap()
                    })
            }),
            seed in any::<u64>(),
        ) {
            // Derive a permutation from the seed.
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut state = seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                perm.swap(i, j);
            }
            let relabeled = g.relabel(&perm).unwrap();
            prop_assert_eq!(canonical_key(&g), canonical_key(&relabeled));
        }
    }
}
