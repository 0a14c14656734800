//! Exact integer verification of the token-graph matrix identities.
//!
//! Every check here compares both sides of an identity entry by entry in
//! checked 64-bit integer arithmetic — no floating point, no tolerances.
//! Failures report the first differing entry. The identities:
//!
//! * Gram:                BᵀB = C(n-2,k-1) I + C(n-2,k-2) J, B = B(n;k,1)
//! * projection:          Bᵀ L_k B = C(n-2,k-1) L_1
//! * intertwining:        B L_h = L_k B,                     B = B(n;k,h)
//! * general projection:  Bᵀ L_k B = BᵀB L_h
//! * adjacency relation:  A_k B - B A_h = D_k B - B D_h
//! * commutation:         L(F_k(G)) and L(F_k(Ḡ)) commute
//! * incidence:           L_k = T_k T_kᵀ and Bᵀ T_k is a multiple
//!                        incidence matrix over the edges of G
//!
//! plus the exact recovery of L_h from L_k via a fraction-free solve.

use serde::Serialize;

use crate::combinatorics::{binom, inclusion_matrix, SparseIntMatrix};
use crate::graph::{Graph, Orientation};
use crate::token::TokenGraph;
use crate::{Error, Result};

/// First differing entry of a failed identity: (row, col, lhs, rhs).
/// For the incidence factorization's column-shape and edge-count conditions,
/// the fields hold (entry row, column, found, expected) and
/// (edge end a, edge end b, found count, expected count) respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub row: usize,
    pub col: usize,
    pub lhs: i64,
    pub rhs: i64,
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    /// graph6 of the base graph; absent for graph-independent identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    pub n: usize,
    /// Lower token level, when the identity has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub k: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
}

impl IdentityReport {
    fn new(
        name: &'static str,
        graph6: Option<String>,
        n: usize,
        h: Option<usize>,
        k: usize,
        diff: Option<(usize, usize, i64, i64)>,
    ) -> Self {
        let discrepancy = diff.map(|(row, col, lhs, rhs)| Discrepancy { row, col, lhs, rhs });
        IdentityReport {
            name,
            graph6,
            n,
            h,
            k,
            holds: discrepancy.is_none(),
            discrepancy,
        }
    }
}

fn binom_i64(n: u64, k: i64) -> Result<i64> {
    i64::try_from(binom(n, k)?).map_err(|_| Error::Overflow("binomial coefficient exceeds i64"))
}

fn check_levels(n: usize, h: usize, k: usize) -> Result<()> {
    if h == 0 || h > k || k >= n {
        return Err(Error::InvalidParameter(format!(
            "token levels must satisfy 1 <= h <= k <= n-1, got h={h}, k={k}, n={n}"
        )));
    }
    Ok(())
}

/// Gram identity for B = B(n;k,1): BᵀB = C(n-2,k-1) I + C(n-2,k-2) J.
pub fn verify_gram(n: usize, k: usize) -> Result<IdentityReport> {
    check_levels(n, 1, k)?;
    let b = inclusion_matrix(n, k, 1)?;
    let lhs = b.transpose().matmul(&b)?;
    let c_id = binom_i64(n as u64 - 2, k as i64 - 1)?;
    let c_ones = binom_i64(n as u64 - 2, k as i64 - 2)?;
    let rhs = SparseIntMatrix::identity(n)
        .scale(c_id)?
        .add(&SparseIntMatrix::ones(n, n).scale(c_ones)?)?;
    Ok(IdentityReport::new(
        "gram",
        None,
        n,
        Some(1),
        k,
        lhs.first_difference(&rhs),
    ))
}

/// Projection identity: Bᵀ L_k B = C(n-2,k-1) L_1 with B = B(n;k,1).
pub fn verify_projection(g: &Graph, k: usize) -> Result<IdentityReport> {
    let n = g.n();
    check_levels(n, 1, k)?;
    let b = inclusion_matrix(n, k, 1)?;
    let l_k = TokenGraph::new(g, k)?.laplacian();
    let lhs = b.transpose().matmul(&l_k)?.matmul(&b)?;
    let c = binom_i64(n as u64 - 2, k as i64 - 1)?;
    let rhs = g.laplacian().scale(c)?;
    Ok(IdentityReport::new(
        "projection",
        Some(g.write_graph6()),
        n,
        Some(1),
        k,
        lhs.first_difference(&rhs),
    ))
}

/// Intertwining identity: B L_h = L_k B with B = B(n;k,h).
pub fn verify_intertwining(g: &Graph, h: usize, k: usize) -> Result<IdentityReport> {
    let n = g.n();
    check_levels(n, h, k)?;
    let b = inclusion_matrix(n, k, h)?;
    let l_h = TokenGraph::new(g, h)?.laplacian();
    let l_k = TokenGraph::new(g, k)?.laplacian();
    let lhs = b.matmul(&l_h)?;
    let rhs = l_k.matmul(&b)?;
    Ok(IdentityReport::new(
        "intertwining",
        Some(g.write_graph6()),
        n,
        Some(h),
        k,
        lhs.first_difference(&rhs),
    ))
}

/// General projection identity: Bᵀ L_k B = (BᵀB) L_h with B = B(n;k,h).
pub fn verify_general_projection(g: &Graph, h: usize, k: usize) -> Result<IdentityReport> {
    let n = g.n();
    check_levels(n, h, k)?;
    let b = inclusion_matrix(n, k, h)?;
    let bt = b.transpose();
    let l_h = TokenGraph::new(g, h)?.laplacian();
    let l_k = TokenGraph::new(g, k)?.laplacian();
    let lhs = bt.matmul(&l_k)?.matmul(&b)?;
    let rhs = bt.matmul(&b)?.matmul(&l_h)?;
    Ok(IdentityReport::new(
        "general-projection",
        Some(g.write_graph6()),
        n,
        Some(h),
        k,
        lhs.first_difference(&rhs),
    ))
}

/// Recovers L_h exactly from L_k by solving (BᵀB) X = Bᵀ L_k B with
/// fraction-free elimination. The solution is provably integral; a
/// non-integer solution signals an implementation bug and errors out.
pub fn recover_lower_laplacian(g: &Graph, h: usize, k: usize) -> Result<SparseIntMatrix> {
    let n = g.n();
    check_levels(n, h, k)?;
    let b = inclusion_matrix(n, k, h)?;
    let bt = b.transpose();
    let gram = bt.matmul(&b)?;
    let rhs = bt.matmul(&TokenGraph::new(g, k)?.laplacian())?.matmul(&b)?;
    gram.solve_exact(&rhs)
}

/// Adjacency/degree relation: A_k B - B A_h = D_k B - B D_h with
/// B = B(n;k,h).
pub fn verify_adjacency_relation(g: &Graph, h: usize, k: usize) -> Result<IdentityReport> {
    let n = g.n();
    check_levels(n, h, k)?;
    let b = inclusion_matrix(n, k, h)?;
    let tg_h = TokenGraph::new(g, h)?;
    let tg_k = TokenGraph::new(g, k)?;
    let lhs = tg_k
        .adjacency_matrix()
        .matmul(&b)?
        .sub(&b.matmul(&tg_h.adjacency_matrix())?)?;
    let rhs = tg_k
        .degree_matrix()
        .matmul(&b)?
        .sub(&b.matmul(&tg_h.degree_matrix())?)?;
    Ok(IdentityReport::new(
        "adjacency-relation",
        Some(g.write_graph6()),
        n,
        Some(h),
        k,
        lhs.first_difference(&rhs),
    ))
}

/// Exact commutation check AB = BA for two square integer matrices.
pub fn commutation_of(a: &SparseIntMatrix, b: &SparseIntMatrix) -> Result<Option<Discrepancy>> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    Ok(ab
        .first_difference(&ba)
        .map(|(row, col, lhs, rhs)| Discrepancy { row, col, lhs, rhs }))
}

/// Commutation of the complementary token Laplacians: L(F_k(G)) and
/// L(F_k(Ḡ)), built on the same subset ranking, commute exactly.
pub fn verify_commutation(g: &Graph, k: usize) -> Result<IdentityReport> {
    let n = g.n();
    check_levels(n, 1, k)?;
    let l = TokenGraph::new(g, k)?.laplacian();
    let lbar = TokenGraph::new(&g.complement(), k)?.laplacian();
    let discrepancy = commutation_of(&l, &lbar)?;
    Ok(IdentityReport {
        name: "commutation",
        graph6: Some(g.write_graph6()),
        n,
        h: None,
        k,
        holds: discrepancy.is_none(),
        discrepancy,
    })
}

/// Incidence factorization: (a) L_k = T_k T_kᵀ for an oriented incidence
/// matrix T_k of F_k(G); (b) every column of C_k = Bᵀ T_k is e_a - e_b for
/// an edge (a,b) of G; (c) every edge of G owns exactly C(n-2,k-1) columns.
pub fn verify_incidence_factorization(g: &Graph, k: usize) -> Result<IdentityReport> {
    let n = g.n();
    check_levels(n, 1, k)?;
    let graph6 = Some(g.write_graph6());
    let report = |diff| IdentityReport::new("incidence-factorization", graph6.clone(), n, None, k, diff);

    let tg = TokenGraph::new(g, k)?;
    let l_k = tg.laplacian();
    let t = tg.incidence_matrix(Orientation::LowerToHigher);
    if let Some(diff) = t.matmul(&t.transpose())?.first_difference(&l_k) {
        return Ok(report(Some(diff)));
    }

    let b = inclusion_matrix(n, k, 1)?;
    let c = b.transpose().matmul(&t)?;
    let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); c.ncols()];
    for (r, col, v) in c.iter() {
        columns[col].push((r, v));
    }
    let mut edge_columns = vec![0i64; n * n];
    for (col, entries) in columns.iter().enumerate() {
        // Shape: exactly {+1 at a, -1 at b} with (a,b) an edge of G.
        let plus: Vec<usize> = entries.iter().filter(|&&(_, v)| v == 1).map(|&(r, _)| r).collect();
        let minus: Vec<usize> = entries.iter().filter(|&&(_, v)| v == -1).map(|&(r, _)| r).collect();
        let well_formed = entries.len() == 2 && plus.len() == 1 && minus.len() == 1;
        if !well_formed {
            let (r, v) = entries.first().copied().unwrap_or((0, 0));
            return Ok(report(Some((r, col, v, 1))));
        }
        let (a, bb) = (plus[0], minus[0]);
        if !g.has_edge(a, bb) {
            return Ok(report(Some((a, col, 1, 0))));
        }
        let (lo, hi) = (a.min(bb), a.max(bb));
        edge_columns[lo * n + hi] += 1;
    }
    let per_edge = binom_i64(n as u64 - 2, k as i64 - 1)?;
    for (a, bb) in g.edges() {
        let got = edge_columns[a * n + bb];
        if got != per_edge {
            return Ok(report(Some((a, bb, got, per_edge))));
        }
    }
    // No stray columns: total column count equals edges * per-edge share.
    let expected_cols = (g.edge_count() as i64).checked_mul(per_edge);
    if expected_cols != Some(c.ncols() as i64) {
        return Ok(report(Some((0, c.ncols(), c.ncols() as i64, expected_cols.unwrap_or(i64::MAX)))));
    }
    Ok(report(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamilySpec;

    fn path4() -> Graph {
        GraphFamilySpec::Path(4).build().unwrap()
    }

    /// 4-vertex graph whose complement is K_1 ∪ P_3.
    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn gram_fixtures() {
        // (4,2): BᵀB = 2I + J.
        let r = verify_gram(4, 2).unwrap();
        assert!(r.holds, "{:?}", r.discrepancy);
        // (n,1): reduces to I = I.
        assert!(verify_gram(5, 1).unwrap().holds);
        // (5,2): BᵀB = 3I + J.
        assert!(verify_gram(5, 2).unwrap().holds);
        // k = n-1 boundary.
        assert!(verify_gram(5, 4).unwrap().holds);
        assert!(verify_gram(4, 0).is_err());
        assert!(verify_gram(4, 4).is_err());
    }

    #[test]
    fn gram_detects_perturbations() {
        // Feed a doctored B through the same comparison.
        let n = 4;
        let k = 2;
        let mut b = inclusion_matrix(n, k, 1).unwrap();
        b.set(0, 0, 0); // remove one incidence
        let lhs = b.transpose().matmul(&b).unwrap();
        let rhs = SparseIntMatrix::identity(n)
            .scale(2)
            .unwrap()
            .add(&SparseIntMatrix::ones(n, n))
            .unwrap();
        let diff = lhs.first_difference(&rhs);
        assert_eq!(diff, Some((0, 0, 2, 3)));
    }

    #[test]
    fn projection_on_path4_gives_twice_l1() {
        let r = verify_projection(&path4(), 2).unwrap();
        assert!(r.holds, "{:?}", r.discrepancy);
        // And k=1 is trivially L_1 = L_1.
        assert!(verify_projection(&path4(), 1).unwrap().holds);
    }

    #[test]
    fn intertwining_examples() {
        assert!(verify_intertwining(&path4(), 1, 2).unwrap().holds);
        // h = k reduces to L_k = L_k through B = I.
        assert!(verify_intertwining(&path4(), 2, 2).unwrap().holds);
        let s6 = GraphFamilySpec::Star(6).build().unwrap();
        assert!(verify_intertwining(&s6, 2, 3).unwrap().holds);
    }

    #[test]
    fn general_projection_examples() {
        assert!(verify_general_projection(&path4(), 1, 2).unwrap().holds);
        let c5 = GraphFamilySpec::Cycle(5).build().unwrap();
        assert!(verify_general_projection(&c5, 2, 3).unwrap().holds);
    }

    #[test]
    fn adjacency_relation_examples() {
        assert!(verify_adjacency_relation(&path4(), 1, 2).unwrap().holds);
        let k4 = GraphFamilySpec::Complete(4).build().unwrap();
        assert!(verify_adjacency_relation(&k4, 1, 2).unwrap().holds);
        assert!(verify_adjacency_relation(&paw(), 1, 2).unwrap().holds);
    }

    #[test]
    fn recovery_reproduces_lower_laplacians() {
        let x = recover_lower_laplacian(&path4(), 1, 2).unwrap();
        assert_eq!(x, path4().laplacian());

        // Trivial h = k.
        let x = recover_lower_laplacian(&path4(), 2, 2).unwrap();
        assert_eq!(x, TokenGraph::new(&path4(), 2).unwrap().laplacian());

        // K_5 from its 3-token graph: L = 5I - J.
        let k5 = GraphFamilySpec::Complete(5).build().unwrap();
        let x = recover_lower_laplacian(&k5, 1, 3).unwrap();
        let want = SparseIntMatrix::identity(5)
            .scale(5)
            .unwrap()
            .sub(&SparseIntMatrix::ones(5, 5))
            .unwrap();
        assert_eq!(x, want);

        // Intermediate levels too.
        let x = recover_lower_laplacian(&k5, 2, 3).unwrap();
        assert_eq!(x, TokenGraph::new(&k5, 2).unwrap().laplacian());
    }

    #[test]
    fn commutation_examples() {
        assert!(verify_commutation(&paw(), 2).unwrap().holds);
        let k5 = GraphFamilySpec::Complete(5).build().unwrap();
        assert!(verify_commutation(&k5, 2).unwrap().holds);
        let c6 = GraphFamilySpec::Cycle(6).build().unwrap();
        assert!(verify_commutation(&c6, 3).unwrap().holds);
    }

    #[test]
    fn commutation_negative_control() {
        // Symmetric but non-commuting pair: the checker must pinpoint it.
        let a = SparseIntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]).unwrap();
        let b = SparseIntMatrix::from_dense(&[vec![1, 0], vec![0, 2]]).unwrap();
        let diff = commutation_of(&a, &b).unwrap();
        assert_eq!(
            diff,
            Some(Discrepancy {
                row: 0,
                col: 1,
                lhs: 2,
                rhs: 1
            })
        );
    }

    #[test]
    fn incidence_factorization_examples() {
        // P_4, k=2: each of the 3 edges owns C(2,1) = 2 columns.
        let r = verify_incidence_factorization(&path4(), 2).unwrap();
        assert!(r.holds, "{:?}", r.discrepancy);

        // K_2, k=1: C_1 = T is the single column (+1, -1).
        let k2 = GraphFamilySpec::Complete(2).build().unwrap();
        assert!(verify_incidence_factorization(&k2, 1).unwrap().holds);

        // Worked 4-vertex example: 4 edges x 2 columns.
        assert!(verify_incidence_factorization(&paw(), 2).unwrap().holds);

        // Edgeless graph: no columns at all, trivially consistent.
        let empty = Graph::empty(4).unwrap();
        assert!(verify_incidence_factorization(&empty, 2).unwrap().holds);
    }

    #[test]
    fn full_suite_on_all_graphs_up_to_5() {
        for n in 2..=5usize {
            for k in 1..n {
                assert!(verify_gram(n, k).unwrap().holds, "gram({n},{k})");
            }
            for g in crate::enumerate::all_graphs(n).unwrap() {
                for k in 1..=n / 2 {
                    assert!(verify_projection(&g, k).unwrap().holds);
                    assert!(verify_commutation(&g, k).unwrap().holds);
                    assert!(verify_incidence_factorization(&g, k).unwrap().holds);
                    for h in 1..=k {
                        assert!(verify_intertwining(&g, h, k).unwrap().holds);
                        assert!(verify_general_projection(&g, h, k).unwrap().holds);
                        assert!(verify_adjacency_relation(&g, h, k).unwrap().holds);
                        let rec = recover_lower_laplacian(&g, h, k).unwrap();
                        assert_eq!(rec, TokenGraph::new(&g, h).unwrap().laplacian());
                    }
                }
            }
        }
    }

    #[test]
    fn reports_carry_parameters() {
        let r = verify_projection(&path4(), 2).unwrap();
        assert_eq!(r.name, "projection");
        assert_eq!(r.graph6.as_deref(), Some("Ch"));
        assert_eq!((r.n, r.h, r.k), (4, Some(1), 2));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"holds\":true"));
        assert!(!json.contains("discrepancy"));
    }
}
