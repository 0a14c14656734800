//! Explicit isomorphisms between token graphs of stars and inclusion
//! graphs.
//!
//! The k-token graph of the star S_m (center 0, spokes 1..m-1) is isomorphic
//! to the inclusion graph J(m-1; k-1, k) over the spokes: a k-subset through
//! the center maps to its spoke part (a (k-1)-subset), and a k-subset of
//! spokes maps to itself. Specializing m = 2k identifies F_k(S_2k) with the
//! double of the odd graph O_k, which this module also checks directly
//! against J(2k-1; k-1, k). All checks are explicit: the stated bijection is
//! constructed and the edge sets compared both ways.

use crate::combinatorics::SubsetIndex;
use crate::graph::{Graph, GraphFamilySpec};
use crate::token::TokenGraph;
use crate::{Error, Result};

/// A failed adjacency comparison: vertices are indices of the left graph,
/// with the adjacency bit on each side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoMismatch {
    pub left_pair: (usize, usize),
    pub adjacent_left: bool,
    pub adjacent_right: bool,
}

/// Outcome of an explicit isomorphism check.
#[derive(Clone, Debug)]
pub struct IsomorphismReport {
    pub holds: bool,
    pub vertex_count: usize,
    /// Witness pair when the map fails to preserve adjacency.
    pub mismatch: Option<IsoMismatch>,
}

/// Checks that `map` (left vertex -> right vertex) is a bijection carrying
/// the edge set of `left` exactly onto the edge set of `right`.
pub fn check_isomorphism_map(
    left: &Graph,
    right: &Graph,
    map: &[usize],
) -> Result<IsomorphismReport> {
    let n = left.n();
    if right.n() != n || map.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "isomorphism check needs equal orders, got {} vs {} with map length {}",
            n,
            right.n(),
            map.len()
        )));
    }
    let mut seen = vec![false; n];
    for &t in map {
        if t >= n || seen[t] {
            return Err(Error::InvalidParameter(
                "map is not a bijection onto the right vertex set".into(),
            ));
        }
        seen[t] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            let l = left.has_edge(i, j);
            let r = right.has_edge(map[i], map[j]);
            if l != r {
                return Ok(IsomorphismReport {
                    holds: false,
                    vertex_count: n,
                    mismatch: Some(IsoMismatch {
                        left_pair: (i, j),
                        adjacent_left: l,
                        adjacent_right: r,
                    }),
                });
            }
        }
    }
    Ok(IsomorphismReport {
        holds: true,
        vertex_count: n,
        mismatch: None,
    })
}

/// Verifies F_k(S_m) ≅ J(m-1; k-1, k) by the explicit center-drop map.
/// Requires 1 <= k <= m-1 and C(m,k) <= 62 so both sides build as graphs.
pub fn verify_star_isomorphism(k: usize, m: usize) -> Result<IsomorphismReport> {
    if k == 0 || k >= m {
        return Err(Error::InvalidParameter(format!(
            "star isomorphism needs 1 <= k <= m-1, got k={k}, m={m}"
        )));
    }
    let star = GraphFamilySpec::Star(m).build()?;
    let tg = TokenGraph::new(&star, k)?;
    let left = tg.to_graph()?;
    let right = GraphFamilySpec::DoubledJohnson(m - 1, k - 1).build()?;

    let lower = SubsetIndex::new(m - 1, k - 1)?;
    let upper = SubsetIndex::new(m - 1, k)?;
    let mut map = Vec::with_capacity(tg.vertex_count());
    for a in tg.subsets() {
        // Relabel spokes 1..m-1 down to 0..m-2.
        let target = if a.contains(0) {
            let spokes = crate::combinatorics::VertexSubset::from_bits(a.without(0).bits() >> 1);
            lower.rank(spokes)?
        } else {
            let spokes = crate::combinatorics::VertexSubset::from_bits(a.bits() >> 1);
            lower.count() + upper.rank(spokes)?
        };
        map.push(target);
    }
    check_isomorphism_map(&left, &right, &map)
}

/// Verifies Double(O_k) ≅ J(2k-1; k-1, k): the first copy of each
/// (k-1)-subset maps to itself, the second copy to its complement (a
/// k-subset of [2k-1]).
pub fn verify_double_odd_isomorphism(k: usize) -> Result<IsomorphismReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "double odd isomorphism needs k >= 2, got {k}"
        )));
    }
    let odd = GraphFamilySpec::Odd(k).build()?;
    let left = odd.double()?;
    let right = GraphFamilySpec::DoubledJohnson(2 * k - 1, k - 1).build()?;

    let lower = SubsetIndex::new(2 * k - 1, k - 1)?;
    let upper = SubsetIndex::new(2 * k - 1, k)?;
    let copies = lower.count();
    let full = (1u64 << (2 * k - 1)) - 1;
    let mut map = Vec::with_capacity(2 * copies);
    // First copy: identity on the lower block.
    map.extend(0..copies);
    for i in 0..copies {
        let delta = lower.unrank(i)?;
        let complement = crate::combinatorics::VertexSubset::from_bits(!delta.bits() & full);
        map.push(copies + upper.rank(complement)?);
    }
    check_isomorphism_map(&left, &right, &map)
}
