//! Spectra as multisets, containment, lifting/projection, algebraic
//! connectivity, the complement pairing, and the integer-eigenvalue bound.
//!
//! Everything here is floating point; exact-arithmetic counterparts live in
//! [`crate::identities`]. Tolerances are pinned as module constants so test
//! and CLI behavior cannot drift apart.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::closed::johnson_laplacian;
use crate::combinatorics::{inclusion_matrix, SparseIntMatrix, SubsetIndex};
use crate::eigen::{eigh_sym, DenseMatrix};
use crate::graph::Graph;
use crate::token::TokenGraph;
use crate::{Error, Result};

/// Coefficient for the default spectrum grouping tolerance:
/// group_tol = 1e-8 * max(1, ||M||_max * dim).
pub const GROUP_TOL_COEFF: f64 = 1e-8;

/// Residual tolerance for the complement pairing's common eigenvectors.
pub const PAIRING_TOL: f64 = 1e-6;

/// Mixing constant for the pairing: diagonalize L + THETA * L̄. Irrational,
/// so integer eigenvalue pairs (p, q) never collide: p + THETA*q determines
/// (p, q).
pub const PAIRING_THETA: f64 = FRAC_1_SQRT_2;

/// Distance to the nearest integer below which an eigenvalue counts as
/// integral.
pub const INT_TOL: f64 = 1e-6;

/// A projected vector with max-norm at most NULL_PROJECTION_COEFF * ||w||_max
/// is reported as null.
pub const NULL_PROJECTION_COEFF: f64 = 1e-9;

/// Kernel precondition tolerance for restrictions, relative to ||w||_max.
pub const KERNEL_TOL: f64 = 1e-9;

/// Entry sums of restriction embeddings must vanish to this tolerance,
/// relative to max(1, ||w||_max).
pub const RESTRICTION_SUM_TOL: f64 = 1e-8;

/// The two Rayleigh quotient formulas (quadratic form and edge sum) must
/// agree to this relative tolerance.
pub const RAYLEIGH_AGREE_TOL: f64 = 1e-10;

/// An eigenvalue multiset: ascending (value, multiplicity) groups.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    groups: Vec<(f64, usize)>,
    group_tol: f64,
}

impl Spectrum {
    /// Groups raw eigenvalues: after sorting, consecutive values within
    /// `group_tol` of their predecessor join the same group, whose reported
    /// value is the group mean.
    pub fn from_values(values: &[f64], group_tol: f64) -> Spectrum {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut start = 0;
        while start < sorted.len() {
            let mut end = start + 1;
            while end < sorted.len() && sorted[end] - sorted[end - 1] <= group_tol {
                end += 1;
            }
            let mean = sorted[start..end].iter().sum::<f64>() / (end - start) as f64;
            groups.push((mean, end - start));
            start = end;
        }
        Spectrum { groups, group_tol }
    }

    /// A spectrum from already-exact (value, multiplicity) pairs, e.g. a
    /// closed form. Values are sorted and equal values merged; group_tol is 0.
    pub fn from_exact(pairs: &[(f64, usize)]) -> Spectrum {
        let mut sorted: Vec<(f64, usize)> = pairs.iter().copied().filter(|&(_, m)| m > 0).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for (v, m) in sorted {
            match groups.last_mut() {
                Some(last) if last.0 == v => last.1 += m,
                _ => groups.push((v, m)),
            }
        }
        Spectrum {
            groups,
            group_tol: 0.0,
        }
    }

    pub fn groups(&self) -> &[(f64, usize)] {
        &self.groups
    }

    pub fn group_tol(&self) -> f64 {
        self.group_tol
    }

    pub fn total_multiplicity(&self) -> usize {
        self.groups.iter().map(|&(_, m)| m).sum()
    }

    /// The multiset as a flat ascending list, each value repeated by its
    /// multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for &(v, m) in &self.groups {
            out.extend(std::iter::repeat(v).take(m));
        }
        out
    }

    /// True when both multisets have the same size and agree pointwise
    /// within `tol` after expansion.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        let a = self.expanded();
        let b = other.expanded();
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }
}

impl fmt::Display for Spectrum {
    /// Renders like `{0, 2, 3^2, 4, 5^3, 7, 8}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, &(v, m)) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if (v - v.round()).abs() < 1e-9 {
                write!(f, "{}", v.round() as i64)?;
            } else {
                write!(f, "{v}")?;
            }
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Default grouping tolerance for a matrix: scales with the entry size and
/// dimension so numerically split multiplicities regroup without merging
/// genuinely distinct eigenvalues at this crate's matrix scales.
pub fn default_group_tol(m: &SparseIntMatrix) -> f64 {
    GROUP_TOL_COEFF * 1f64.max(m.max_abs() as f64 * m.nrows() as f64)
}

/// Eigenvalue multiset of a symmetric integer matrix, grouped with
/// [`default_group_tol`].
pub fn matrix_spectrum(m: &SparseIntMatrix) -> Result<Spectrum> {
    let eig = eigh_sym(&DenseMatrix::from_sparse(m))?;
    let spectrum = Spectrum::from_values(&eig.values, default_group_tol(m));
    // Internal consistency: the grouped sum reproduces the trace.
    debug_assert!({
        let sum: f64 = spectrum.groups.iter().map(|&(v, m)| v * m as f64).sum();
        let trace = m.trace().unwrap_or(i64::MAX) as f64;
        (sum - trace).abs() <= 1e-6 * (1.0 + trace.abs())
    });
    Ok(spectrum)
}

/// Laplacian spectrum of a graph.
pub fn spectrum_of(g: &Graph) -> Result<Spectrum> {
    matrix_spectrum(&g.laplacian())
}

/// Adjacency spectrum of a graph.
pub fn adjacency_spectrum_of(g: &Graph) -> Result<Spectrum> {
    matrix_spectrum(&g.adjacency_matrix())
}

/// Laplacian spectrum of the k-token graph of g.
pub fn token_spectrum(g: &Graph, k: usize) -> Result<Spectrum> {
    matrix_spectrum(&TokenGraph::new(g, k)?.laplacian())
}

/// Multiplicity-aware containment: every value of `small` injects into
/// `big` within `tol`. Greedy two-pointer over the ascending expansions;
/// greedy matching is optimal for interval matching on sorted lists.
pub fn spectrum_contains(small: &Spectrum, big: &Spectrum, tol: f64) -> bool {
    let a = small.expanded();
    let b = big.expanded();
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < x - tol {
            j += 1;
        }
        if j >= b.len() || (b[j] - x).abs() > tol {
            return false;
        }
        j += 1;
    }
    true
}

/// Lifts a vector from the h-token level to the k-token level through the
/// inclusion matrix: result = B(n;k,h) * v. Eigenvectors of the h-level
/// Laplacian lift to eigenvectors of the k-level one for the same
/// eigenvalue.
pub fn lift_vector(v: &[f64], n: usize, h: usize, k: usize) -> Result<Vec<f64>> {
    let b = inclusion_matrix(n, k, h)?;
    b.mul_vec_f64(v)
}

/// Projects a k-level vector down to the h-level: Bᵀw. Returns `None` when
/// the projection is numerically null (max-norm at most
/// [`NULL_PROJECTION_COEFF`] * ||w||_max).
pub fn project_vector(w: &[f64], n: usize, h: usize, k: usize) -> Result<Option<Vec<f64>>> {
    let b = inclusion_matrix(n, k, h)?;
    let out = b.transpose().mul_vec_f64(w)?;
    let w_max = w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let out_max = out.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if out_max <= NULL_PROJECTION_COEFF * w_max {
        Ok(None)
    } else {
        Ok(Some(out))
    }
}

fn second_smallest(values: &[f64]) -> f64 {
    if values.len() < 2 {
        0.0
    } else {
        values[1]
    }
}

/// Algebraic connectivity: the second-smallest Laplacian eigenvalue
/// (0 for the one-vertex graph by convention).
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    let eig = eigh_sym(&DenseMatrix::from_sparse(&g.laplacian()))?;
    Ok(second_smallest(&eig.values))
}

/// Algebraic connectivity of the k-token graph of g.
pub fn token_algebraic_connectivity(g: &Graph, k: usize) -> Result<f64> {
    let l = TokenGraph::new(g, k)?.laplacian();
    let eig = eigh_sym(&DenseMatrix::from_sparse(&l))?;
    Ok(second_smallest(&eig.values))
}

/// A vector orthogonal to all-ones: entry sum zero within 1e-9 * dimension.
#[derive(Clone, Debug)]
pub struct Embedding {
    values: Vec<f64>,
}

impl Embedding {
    pub fn try_new(values: Vec<f64>) -> Result<Embedding> {
        let sum: f64 = values.iter().sum();
        let tol = 1e-9 * values.len() as f64;
        if sum.abs() > tol {
            return Err(Error::InvalidParameter(format!(
                "not an embedding: entry sum {sum:e} exceeds {tol:e}"
            )));
        }
        Ok(Embedding { values })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// Rayleigh quotient of an embedding against a Laplacian, computed both as
/// the quadratic form vᵀLv / vᵀv and as the edge sum
/// Σ w_ij (v_i - v_j)² / Σ v_i²; the two must agree within
/// [`RAYLEIGH_AGREE_TOL`] relative. The matrix must be a Laplacian
/// (symmetric, nonpositive off-diagonal, zero row sums).
pub fn rayleigh(l: &SparseIntMatrix, v: &Embedding) -> Result<f64> {
    let n = l.nrows();
    if l.ncols() != n {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {n}x{n}, vector has length {}",
            v.len()
        )));
    }
    if !l.is_symmetric() {
        return Err(Error::InvalidParameter("matrix is not symmetric".into()));
    }
    for r in 0..n {
        let mut row_sum = 0i64;
        for (c, val) in l.row(r) {
            if c != r && val > 0 {
                return Err(Error::InvalidParameter(format!(
                    "not a Laplacian: positive off-diagonal at ({r}, {c})"
                )));
            }
            row_sum += val;
        }
        if row_sum != 0 {
            return Err(Error::InvalidParameter(format!(
                "not a Laplacian: row {r} sums to {row_sum}"
            )));
        }
    }
    let x = v.as_slice();
    let norm2: f64 = x.iter().map(|a| a * a).sum();
    if norm2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut edge_sum = 0.0;
    let mut quad = 0.0;
    for (r, c, val) in l.iter() {
        quad += val as f64 * x[r] * x[c];
        if c > r && val < 0 {
            let d = x[r] - x[c];
            edge_sum += (-val) as f64 * d * d;
        }
    }
    let scale = 1f64.max(edge_sum.abs()).max(l.max_abs() as f64 * norm2);
    assert!(
        (edge_sum - quad).abs() <= RAYLEIGH_AGREE_TOL * scale,
        "Rayleigh formulas disagree: edge sum {edge_sum} vs quadratic form {quad}"
    );
    Ok(edge_sum / norm2)
}

/// One common eigenvector of the complementary token-graph Laplacians.
#[derive(Clone, Debug)]
pub struct PairingTriple {
    /// Eigenvalue read off the token graph of g.
    pub lambda_g: f64,
    /// Eigenvalue read off the token graph of the complement.
    pub lambda_gbar: f64,
    /// Their sum, rounded to the Johnson eigenvalue it must equal.
    pub lambda_johnson: i64,
    /// Max-norm eigen-residual of the vector against both Laplacians.
    pub residual: f64,
}

/// The full pairing between spec F_k(G), spec F_k(Ḡ), and the Johnson
/// spectrum: one triple per common eigenvector, C(n,k) in total.
#[derive(Clone, Debug)]
pub struct PairingResult {
    /// Triples sorted by (lambda_g, lambda_gbar).
    pub triples: Vec<PairingTriple>,
    pub max_residual: f64,
    /// Whether the multiset of sums equals the Johnson closed form.
    pub johnson_match: bool,
}

fn mat_vec_dense(m: &DenseMatrix, v: &[f64]) -> Vec<f64> {
    m.mul_vec(v).expect("dimensions fixed by construction")
}

fn quadratic_form(m: &DenseMatrix, v: &[f64]) -> f64 {
    mat_vec_dense(m, v).iter().zip(v).map(|(a, b)| a * b).sum()
}

fn eigen_residual(m: &DenseMatrix, v: &[f64], lambda: f64) -> f64 {
    mat_vec_dense(m, v)
        .iter()
        .zip(v)
        .fold(0.0f64, |acc, (mv, vi)| acc.max((mv - lambda * vi).abs()))
}

/// Decomposes R^{C(n,k)} into common eigenvectors of L = L(F_k(G)) and
/// L̄ = L(F_k(Ḡ)) and reads off the eigenvalue pairing λ_G + λ_Ḡ = λ_J.
///
/// The two Laplacians commute, so diagonalizing the mix M = L + θL̄
/// (θ = [`PAIRING_THETA`]) yields common eigenvectors. Where numerical
/// degeneracy in M leaves residuals above [`PAIRING_TOL`], a refinement pass
/// re-diagonalizes L restricted to each clustered M-eigenspace (L maps those
/// subspaces to themselves, so the rotation fixes both readings at once).
pub fn pairing_decomposition(g: &Graph, k: usize) -> Result<PairingResult> {
    let n = g.n();
    let tg = TokenGraph::new(g, k)?;
    let tgc = TokenGraph::new(&g.complement(), k)?;
    let l = DenseMatrix::from_sparse(&tg.laplacian());
    let lb = DenseMatrix::from_sparse(&tgc.laplacian());
    let dim = tg.vertex_count();

    let mut mix = DenseMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            mix.set(r, c, l.get(r, c) + PAIRING_THETA * lb.get(r, c));
        }
    }
    let eig = eigh_sym(&mix)?;
    let mut vectors: Vec<Vec<f64>> = (0..dim).map(|j| eig.vectors.col(j)).collect();

    let read = |vectors: &[Vec<f64>]| -> Vec<(f64, f64, f64)> {
        vectors
            .iter()
            .map(|v| {
                let lg = quadratic_form(&l, v);
                let lgb = quadratic_form(&lb, v);
                let res = eigen_residual(&l, v, lg).max(eigen_residual(&lb, v, lgb));
                (lg, lgb, res)
            })
            .collect()
    };

    let mut readings = read(&vectors);
    if readings.iter().any(|&(_, _, r)| r > PAIRING_TOL) {
        // Refinement: rotate within clusters of numerically equal
        // M-eigenvalues so that L becomes diagonal there too.
        let cluster_tol = GROUP_TOL_COEFF * 1f64.max(mix.max_abs() * dim as f64);
        let mut start = 0;
        while start < dim {
            let mut end = start + 1;
            while end < dim && eig.values[end] - eig.values[end - 1] <= cluster_tol {
                end += 1;
            }
            if end - start > 1 {
                let s = end - start;
                let mut small = DenseMatrix::zeros(s, s);
                for p in 0..s {
                    let lvp = mat_vec_dense(&l, &vectors[start + p]);
                    for q in p..s {
                        let entry: f64 = lvp.iter().zip(&vectors[start + q]).map(|(a, b)| a * b).sum();
                        small.set(p, q, entry);
                        small.set(q, p, entry);
                    }
                }
                let sub = eigh_sym(&small)?;
                let rotated: Vec<Vec<f64>> = (0..s)
                    .map(|p| {
                        let mut out = vec![0.0; dim];
                        for q in 0..s {
                            let c = sub.vectors.get(q, p);
                            for (o, x) in out.iter_mut().zip(&vectors[start + q]) {
                                *o += c * x;
                            }
                        }
                        out
                    })
                    .collect();
                vectors[start..end].clone_from_slice(&rotated);
            }
            start = end;
        }
        readings = read(&vectors);
    }

    let max_residual = readings.iter().fold(0.0f64, |m, &(_, _, r)| m.max(r));
    if max_residual > PAIRING_TOL {
        return Err(Error::PairingResidual {
            residual: max_residual,
            tol: PAIRING_TOL,
        });
    }

    let mut triples: Vec<PairingTriple> = readings
        .iter()
        .map(|&(lg, lgb, res)| {
            let sum = lg + lgb;
            PairingTriple {
                lambda_g: lg,
                lambda_gbar: lgb,
                lambda_johnson: sum.round() as i64,
                residual: res,
            }
        })
        .collect();
    for t in &triples {
        let drift = (t.lambda_g + t.lambda_gbar - t.lambda_johnson as f64).abs();
        if drift > PAIRING_TOL {
            return Err(Error::PairingResidual {
                residual: drift,
                tol: PAIRING_TOL,
            });
        }
    }
    triples.sort_by(|a, b| {
        a.lambda_g
            .total_cmp(&b.lambda_g)
            .then(a.lambda_gbar.total_cmp(&b.lambda_gbar))
    });

    let mut sums: Vec<i64> = triples.iter().map(|t| t.lambda_johnson).collect();
    sums.sort_unstable();
    let johnson: Vec<i64> = johnson_laplacian(n, k)?
        .expanded()
        .iter()
        .map(|v| v.round() as i64)
        .collect();
    let johnson_match = sums == johnson;

    Ok(PairingResult {
        triples,
        max_residual,
        johnson_match,
    })
}

/// Outcome of the integer-eigenvalue lower bound check.
#[derive(Clone, Copy, Debug)]
pub struct IntegerEigenvalueBound {
    /// Connected components of F_k(Ḡ), a lower bound for the integer count.
    pub bound: usize,
    /// Eigenvalues of F_k(G) within [`INT_TOL`] of an integer.
    pub count: usize,
    pub holds: bool,
}

/// Counts components of the complement's token graph (the bound) and the
/// integer eigenvalues of F_k(G), and reports whether count >= bound.
pub fn integer_eigenvalue_bound(g: &Graph, k: usize) -> Result<IntegerEigenvalueBound> {
    let tgc = TokenGraph::new(&g.complement(), k)?;
    let bound = tgc.connected_components().len();
    let values = token_spectrum(g, k)?.expanded();
    let count = values
        .iter()
        .filter(|v| (*v - v.round()).abs() <= INT_TOL)
        .count();
    Ok(IntegerEigenvalueBound {
        bound,
        count,
        holds: count >= bound,
    })
}

/// Splits a kernel vector w on the k-subsets of [n] into its restrictions to
/// subsets containing vertex a and subsets avoiding a (in induced
/// lexicographic order). Requires Bᵀ(n;k,1) w = 0 within [`KERNEL_TOL`]
/// relative to ||w||_max; both restrictions are embeddings (entry sums 0).
pub fn restriction_embeddings(
    w: &[f64],
    n: usize,
    k: usize,
    a: usize,
) -> Result<(Embedding, Embedding)> {
    let idx = SubsetIndex::new(n, k)?;
    if w.len() != idx.count() {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, expected C({n},{k}) = {}",
            w.len(),
            idx.count()
        )));
    }
    if a >= n {
        return Err(Error::InvalidParameter(format!(
            "vertex {a} out of range for order {n}"
        )));
    }
    let w_max = w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let mut vertex_sums = vec![0.0f64; n];
    for (i, s) in idx.iter().enumerate() {
        for x in s.iter() {
            vertex_sums[x] += w[i];
        }
    }
    let worst = vertex_sums.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if worst > KERNEL_TOL * w_max {
        return Err(Error::InvalidParameter(format!(
            "not in the kernel of Bᵀ: vertex sum reaches {worst:e} against \
             tolerance {:e}",
            KERNEL_TOL * w_max
        )));
    }
    let mut with_a = Vec::new();
    let mut without_a = Vec::new();
    for (i, s) in idx.iter().enumerate() {
        if s.contains(a) {
            with_a.push(w[i]);
        } else {
            without_a.push(w[i]);
        }
    }
    let sum_tol = RESTRICTION_SUM_TOL * w_max.max(1.0);
    for (name, part) in [("containing", &with_a), ("avoiding", &without_a)] {
        let sum: f64 = part.iter().sum();
        if sum.abs() > sum_tol {
            return Err(Error::InvalidParameter(format!(
                "restriction to subsets {name} vertex {a} sums to {sum:e}"
            )));
        }
    }
    Ok((Embedding::try_new(with_a)?, Embedding::try_new(without_a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom;
    use crate::enumerate::connected_graphs;
    use crate::graph::GraphFamilySpec;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn path4() -> Graph {
        GraphFamilySpec::Path(4).build().unwrap()
    }

    /// The worked 4-vertex example: G = paw graph (triangle plus pendant),
    /// whose complement is K_1 ∪ P_3.
    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn grouping_merges_split_multiplicities() {
        let s = Spectrum::from_values(&[0.0, 1e-12, 1.0, 3.0, 3.0 + 1e-12, 4.0], 1e-9);
        let mults: Vec<usize> = s.groups().iter().map(|&(_, m)| m).collect();
        assert_eq!(mults, vec![2, 1, 2, 1]);
        assert_eq!(s.total_multiplicity(), 6);
        // Gaps between groups exceed the tolerance.
        for w in s.groups().windows(2) {
            assert!(w[1].0 - w[0].0 > s.group_tol());
        }
    }

    #[test]
    fn from_exact_merges_and_sorts() {
        let s = Spectrum::from_exact(&[(3.0, 2), (0.0, 1), (3.0, 1), (1.0, 0)]);
        assert_eq!(s.groups(), &[(0.0, 1), (3.0, 3)]);
        assert_eq!(s.to_string(), "{0, 3^3}");
    }

    #[test]
    fn known_laplacian_spectra() {
        let s = spectrum_of(&path4()).unwrap();
        let want = [0.0, 2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (got, want) in s.expanded().iter().zip(want) {
            assert!((got - want).abs() < 1e-10);
        }

        let c6 = GraphFamilySpec::Cycle(6).build().unwrap();
        let s = spectrum_of(&c6).unwrap();
        let mults: Vec<usize> = s.groups().iter().map(|&(_, m)| m).collect();
        assert_eq!(mults, vec![1, 2, 2, 1]);
        let want = [0.0, 1.0, 3.0, 4.0];
        for (got, want) in s.groups().iter().zip(want) {
            assert!((got.0 - want).abs() < 1e-10);
        }

        let k1 = Graph::empty(1).unwrap();
        assert_eq!(spectrum_of(&k1).unwrap().groups(), &[(0.0, 1)]);

        // Johnson(4,2): {0, 4^3, 6^2}.
        let j42 = GraphFamilySpec::Johnson(4, 2).build().unwrap();
        let s = spectrum_of(&j42).unwrap();
        assert_eq!(
            s.groups().iter().map(|&(_, m)| m).collect::<Vec<_>>(),
            vec![1, 3, 2]
        );
        for (got, want) in s.groups().iter().zip([0.0, 4.0, 6.0]) {
            assert!((got.0 - want).abs() < 1e-10);
        }
    }

    #[test]
    fn two_token_path_spectrum() {
        let s = token_spectrum(&path4(), 2).unwrap();
        let want = [
            0.0,
            2.0 - 2f64.sqrt(),
            3.0 - 3f64.sqrt(),
            2.0,
            2.0 + 2f64.sqrt(),
            3.0 + 3f64.sqrt(),
        ];
        let mut sorted = want.to_vec();
        sorted.sort_by(f64::total_cmp);
        for (got, want) in s.expanded().iter().zip(sorted) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn containment_basics() {
        let sub = spectrum_of(&path4()).unwrap();
        let sup = token_spectrum(&path4(), 2).unwrap();
        assert!(spectrum_contains(&sub, &sup, 1e-7));
        assert!(spectrum_contains(&sub, &sub, 1e-7));

        let a = Spectrum::from_exact(&[(0.0, 1), (2.0, 1)]);
        let b = Spectrum::from_exact(&[(0.0, 1), (3.0, 2)]);
        assert!(!spectrum_contains(&a, &b, 1e-7));
        // Multiplicities matter: two 1s do not fit into one.
        let c = Spectrum::from_exact(&[(0.0, 1), (1.0, 2)]);
        let d = Spectrum::from_exact(&[(0.0, 1), (1.0, 1), (2.0, 1)]);
        assert!(!spectrum_contains(&c, &d, 1e-7));
        // Tolerance window works both ways.
        let e = Spectrum::from_exact(&[(1.0, 1)]);
        let f = Spectrum::from_exact(&[(1.0 + 5e-8, 1)]);
        assert!(spectrum_contains(&e, &f, 1e-7));
        assert!(!spectrum_contains(&e, &f, 1e-9));
    }

    #[test]
    fn lift_known_eigenvector_of_p4() {
        // v = (1,-1,-1,1) is a λ=2 eigenvector of L(P_4); its lift in lex
        // order is (0,0,2,-2,0,0), a λ=2 eigenvector of the 2-token graph.
        let v = [1.0, -1.0, -1.0, 1.0];
        let w = lift_vector(&v, 4, 1, 2).unwrap();
        assert_eq!(w, vec![0.0, 0.0, 2.0, -2.0, 0.0, 0.0]);
        let l2 = TokenGraph::new(&path4(), 2).unwrap().laplacian();
        let l2w = l2.mul_vec_f64(&w).unwrap();
        for (a, b) in l2w.iter().zip(&w) {
            assert!((a - 2.0 * b).abs() < 1e-12);
        }
    }

    #[test]
    fn lift_all_ones() {
        let v = vec![1.0; 5];
        let w = lift_vector(&v, 5, 1, 2).unwrap();
        assert!(w.iter().all(|&x| x == 2.0));
    }

    #[test]
    fn lift_preserves_every_eigenpair() {
        // For each eigenpair of L_h, the lift is an eigenpair of L_k.
        for g in connected_graphs(5).unwrap() {
            let l1 = g.laplacian();
            let eig = eigh_sym(&DenseMatrix::from_sparse(&l1)).unwrap();
            let l2 = TokenGraph::new(&g, 2).unwrap().laplacian();
            for j in 0..g.n() {
                let v = eig.vectors.col(j);
                let w = lift_vector(&v, g.n(), 1, 2).unwrap();
                let l2w = l2.mul_vec_f64(&w).unwrap();
                let lambda = eig.values[j];
                for (a, b) in l2w.iter().zip(&w) {
                    assert!(
                        (a - lambda * b).abs() <= 1e-7 * (1.0 + lambda.abs()),
                        "graph {}, eigenvalue {lambda}",
                        g.write_graph6()
                    );
                }
            }
        }
    }

    #[test]
    fn project_lifted_vector_recovers_gram_multiple() {
        // Bᵀ(Bv) = (C(n-2,k-1) I + C(n-2,k-2) J) v = C(n-2,k-1) v for
        // zero-sum v.
        let v = [1.0, -1.0, -1.0, 1.0];
        let w = lift_vector(&v, 4, 1, 2).unwrap();
        let back = project_vector(&w, 4, 1, 2).unwrap().unwrap();
        for (a, b) in back.iter().zip(&v) {
            assert!((a - 2.0 * b).abs() < 1e-12);
        }
    }

    #[test]
    fn project_all_ones() {
        let w = vec![1.0; 10]; // C(5,2)
        let back = project_vector(&w, 5, 1, 2).unwrap().unwrap();
        // Each vertex lies in C(n-1, k-1) = 4 subsets.
        assert!(back.iter().all(|&x| x == 4.0));
    }

    #[test]
    fn project_nonmatching_eigenvector_is_null() {
        // 3-√3 is an eigenvalue of F_2(P_4) but not of P_4, so its
        // eigenvector projects to (numerically) zero.
        let l2 = TokenGraph::new(&path4(), 2).unwrap().laplacian();
        let eig = eigh_sym(&DenseMatrix::from_sparse(&l2)).unwrap();
        let target = 3.0 - 3f64.sqrt();
        let j = (0..6)
            .min_by(|&a, &b| {
                (eig.values[a] - target)
                    .abs()
                    .total_cmp(&(eig.values[b] - target).abs())
            })
            .unwrap();
        assert!((eig.values[j] - target).abs() < 1e-9);
        let w = eig.vectors.col(j);
        assert!(project_vector(&w, 4, 1, 2).unwrap().is_none());
        // A kernel vector is exactly what restriction_embeddings accepts.
        let (wa, wb) = restriction_embeddings(&w, 4, 2, 3).unwrap();
        assert_eq!(wa.len(), 3);
        assert_eq!(wb.len(), 3);
    }

    #[test]
    fn algebraic_connectivity_fixtures() {
        let cases: Vec<(Graph, f64)> = vec![
            (path4(), 2.0 - 2f64.sqrt()),
            (GraphFamilySpec::Complete(5).build().unwrap(), 5.0),
            (GraphFamilySpec::Star(6).build().unwrap(), 1.0),
            (
                GraphFamilySpec::Cycle(6).build().unwrap(),
                2.0 - 2.0 * (2.0 * std::f64::consts::PI / 6.0).cos(),
            ),
            (GraphFamilySpec::CompleteBipartite(2, 3).build().unwrap(), 2.0),
            (Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 0.0),
            (Graph::empty(1).unwrap(), 0.0),
        ];
        for (g, want) in cases {
            let got = algebraic_connectivity(&g).unwrap();
            assert!(
                (got - want).abs() < 1e-9,
                "graph {}: got {got}, want {want}",
                g.write_graph6()
            );
        }
    }

    #[test]
    fn embedding_constructor_enforces_zero_sum() {
        assert!(Embedding::try_new(vec![1.0, -1.0, 0.0]).is_ok());
        assert!(Embedding::try_new(vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn rayleigh_fixtures() {
        // Single edge: v = (1,-1) gives (1-(-1))^2 / 2 = 2.
        let k2 = GraphFamilySpec::Complete(2).build().unwrap();
        let v = Embedding::try_new(vec![1.0, -1.0]).unwrap();
        assert_eq!(rayleigh(&k2.laplacian(), &v).unwrap(), 2.0);

        // Fiedler vector of P_4 gives the algebraic connectivity.
        let l = path4().laplacian();
        let eig = eigh_sym(&DenseMatrix::from_sparse(&l)).unwrap();
        let fiedler = Embedding::try_new(eig.vectors.col(1)).unwrap();
        let q = rayleigh(&l, &fiedler).unwrap();
        assert!((q - (2.0 - 2f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn rayleigh_rejects_bad_inputs() {
        let l = path4().laplacian();
        let zero = Embedding::try_new(vec![0.0; 4]).unwrap();
        assert!(matches!(rayleigh(&l, &zero), Err(Error::ZeroVector)));

        let v = Embedding::try_new(vec![1.0, -1.0, 0.0, 0.0]).unwrap();
        let not_laplacian = path4().adjacency_matrix();
        assert!(rayleigh(&not_laplacian, &v).is_err());
    }

    #[test]
    fn rayleigh_bounds_algebraic_connectivity() {
        // α(G) = min over embeddings of the quotient, so every random
        // embedding gives an upper bound.
        let mut rng = StdRng::seed_from_u64(0x51ec7a11);
        for g in connected_graphs(6).unwrap() {
            let alpha = algebraic_connectivity(&g).unwrap();
            let l = g.laplacian();
            for _ in 0..100 {
                let raw: Vec<f64> = (0..g.n()).map(|_| rng.random_range(-1.0..1.0)).collect();
                let mean = raw.iter().sum::<f64>() / g.n() as f64;
                let centered: Vec<f64> = raw.iter().map(|x| x - mean).collect();
                if centered.iter().all(|&x| x.abs() < 1e-12) {
                    continue;
                }
                let v = Embedding::try_new(centered).unwrap();
                let q = rayleigh(&l, &v).unwrap();
                assert!(q >= alpha - 1e-9, "graph {}", g.write_graph6());
            }
        }
    }

    #[test]
    fn pairing_on_the_worked_example() {
        // G = paw, Ḡ = K_1 ∪ P_3; F_2(Ḡ) is two disjoint copies of P_3 with
        // spectrum {0^2, 1^2, 3^2}.
        let g = paw();
        let result = pairing_decomposition(&g, 2).unwrap();
        assert_eq!(result.triples.len(), 6);
        assert!(result.johnson_match);
        assert!(result.max_residual <= PAIRING_TOL);

        let mut gbar_values: Vec<f64> = result.triples.iter().map(|t| t.lambda_gbar).collect();
        gbar_values.sort_by(f64::total_cmp);
        let want = [0.0, 0.0, 1.0, 1.0, 3.0, 3.0];
        for (got, want) in gbar_values.iter().zip(want) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
        // Cross-check directly against the complement's token spectrum.
        let direct = token_spectrum(&g.complement(), 2).unwrap();
        let grouped = Spectrum::from_values(&gbar_values, 1e-6);
        assert!(grouped.matches(&direct, 1e-7));
    }

    #[test]
    fn pairing_on_complete_graph() {
        // Ḡ empty: all λ_Ḡ = 0 and the λ_G column is the Johnson spectrum.
        let k5 = GraphFamilySpec::Complete(5).build().unwrap();
        let result = pairing_decomposition(&k5, 2).unwrap();
        assert_eq!(result.triples.len(), 10);
        assert!(result.johnson_match);
        for t in &result.triples {
            assert!(t.lambda_gbar.abs() < 1e-8);
            assert!((t.lambda_g - t.lambda_johnson as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn pairing_sums_match_johnson_for_all_small_graphs() {
        for g in crate::enumerate::all_graphs(5).unwrap() {
            let result = pairing_decomposition(&g, 2).unwrap();
            assert_eq!(result.triples.len(), binom(5, 2).unwrap() as usize);
            assert!(result.johnson_match, "graph {}", g.write_graph6());
        }
    }

    #[test]
    fn integer_bound_on_worked_example() {
        // F_2 of the paw's complement (K_1 ∪ P_3) has 2 components.
        let report = integer_eigenvalue_bound(&paw(), 2).unwrap();
        assert_eq!(report.bound, 2);
        assert!(report.holds);
    }

    #[test]
    fn integer_bound_complete_graph() {
        let k5 = GraphFamilySpec::Complete(5).build().unwrap();
        let report = integer_eigenvalue_bound(&k5, 2).unwrap();
        assert_eq!(report.bound, 10); // complement is edgeless: C(5,2) singletons
        assert_eq!(report.count, 10); // Johnson spectrum is all-integer
        assert!(report.holds);
    }

    #[test]
    fn integer_bound_two_triangle_complement() {
        // Ḡ = 2K_3 has token-distribution components (2,0),(1,1),(0,2):
        // bound C(c+k-1, k) = 3.
        let gbar = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let g = gbar.complement();
        let report = integer_eigenvalue_bound(&g, 2).unwrap();
        assert_eq!(report.bound, 3);
        assert!(report.holds);
    }

    #[test]
    fn restriction_embeddings_fixture() {
        // w on the 2-subsets of [4] with zero vertex sums.
        let w = [1.0, -1.0, 0.0, 0.0, -1.0, 1.0];
        let (with0, without0) = restriction_embeddings(&w, 4, 2, 0).unwrap();
        assert_eq!(with0.as_slice(), &[1.0, -1.0, 0.0]);
        assert_eq!(without0.as_slice(), &[0.0, -1.0, 1.0]);

        // Dimensions: C(n-1,k-1) and C(n-1,k).
        assert_eq!(with0.len(), 3);
        assert_eq!(without0.len(), 3);

        let zero = vec![0.0; 6];
        let (za, zb) = restriction_embeddings(&zero, 4, 2, 1).unwrap();
        assert!(za.as_slice().iter().all(|&x| x == 0.0));
        assert!(zb.as_slice().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn restriction_rejects_non_kernel_vectors() {
        // A lifted vector has Bᵀw = C(n-2,k-1) v ≠ 0.
        let v = [1.0, -1.0, -1.0, 1.0];
        let w = lift_vector(&v, 4, 1, 2).unwrap();
        let err = restriction_embeddings(&w, 4, 2, 0);
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn spectrum_sums_track_traces() {
        for g in connected_graphs(5).unwrap() {
            let l = TokenGraph::new(&g, 2).unwrap().laplacian();
            let s = matrix_spectrum(&l).unwrap();
            let sum: f64 = s.groups().iter().map(|&(v, m)| v * m as f64).sum();
            let sum_sq: f64 = s.expanded().iter().map(|v| v * v).sum();
            let trace = l.trace().unwrap() as f64;
            let trace_sq = l.matmul(&l).unwrap().trace().unwrap() as f64;
            assert!((sum - trace).abs() <= 1e-6 * (1.0 + trace.abs()));
            assert!((sum_sq - trace_sq).abs() <= 1e-6 * (1.0 + trace_sq.abs()));
        }
    }
}
