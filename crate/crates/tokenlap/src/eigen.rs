//! Dense symmetric eigensolver.
//!
//! Householder tridiagonalization followed by the implicit-shift QL
//! iteration, the classic EISPACK tred2/tql2 pair. Deterministic (no
//! randomness, no threading) so repeated runs on the same matrix give
//! bit-identical eigenvalues, which the scanner relies on for reproducible
//! reports. Dimensions are capped at [`MAX_EIGEN_DIM`].

use crate::{Error, Result, MAX_EIGEN_DIM};

/// Per-eigenvalue QL sweep budget. Convergence normally takes 2-3 sweeps;
/// hitting the budget with a residual above [`EIG_TOL`] relative to the
/// matrix scale is reported as [`Error::NonConvergence`].
pub const SWEEP_BUDGET: usize = 50;

/// Relative off-diagonal residual accepted if the sweep budget runs out.
pub const EIG_TOL: f64 = 1e-10;

/// Row-major dense matrix of f64.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DenseMatrix {
            nrows,
            ncols,
            data: vec![0.0; nrows * ncols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix {
            nrows,
            ncols,
            data: rows.concat(),
        })
    }

    pub fn from_sparse(m: &crate::combinatorics::SparseIntMatrix) -> Self {
        let mut out = DenseMatrix::zeros(m.nrows(), m.ncols());
        for (r, c, v) in m.iter() {
            out.set(r, c, v as f64);
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.ncols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<f64> {
        (0..self.nrows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, vector has length {}",
                self.nrows,
                self.ncols,
                v.len()
            )));
        }
        Ok((0..self.nrows)
            .map(|r| {
                self.data[r * self.ncols..(r + 1) * self.ncols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Largest |a_ij - a_ji|.
    pub fn symmetry_error(&self) -> f64 {
        let mut e = 0.0f64;
        for r in 0..self.nrows {
            for c in r + 1..self.ncols.min(self.nrows) {
                e = e.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        e
    }
}

/// Eigenvalues ascending; column j of `vectors` is the unit eigenvector for
/// `values[j]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Full eigendecomposition of a symmetric matrix.
///
/// The input must be square, of dimension at most [`MAX_EIGEN_DIM`], and
/// symmetric to within 1e-12 relative to its largest entry.
pub fn eigh_sym(m: &DenseMatrix) -> Result<EigenDecomposition> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::CapExceeded(format!(
            "dense eigensolver caps at dimension {MAX_EIGEN_DIM}, got {n}"
        )));
    }
    let sym_tol = 1e-12 * m.max_abs().max(1.0);
    if m.symmetry_error() > sym_tol {
        return Err(Error::InvalidParameter(format!(
            "matrix is not symmetric: max |a_ij - a_ji| = {:e}",
            m.symmetry_error()
        )));
    }
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: DenseMatrix::zeros(0, 0),
        });
    }

    let mut v: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c)).collect()).collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;

    // Sort eigenpairs ascending (tql2 leaves them unsorted in general).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&j| d[j]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (jj, &j) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, jj, v[r][j]);
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Householder reduction to symmetric tridiagonal form, accumulating the
/// orthogonal transform in `v`. On exit `d` holds the diagonal and `e[1..]`
/// the subdiagonal.
fn tred2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);

    for i in (1..n).rev() {
        // Scale to avoid under/overflow, accumulate the Householder vector.
        let mut h = 0.0;
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for dk in d[..i].iter_mut() {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e[..i].iter_mut() {
                *ej = 0.0;
            }

            // Apply the similarity transformation to the remaining block.
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate the transformations.
    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on the tridiagonal (d, e), rotating the
/// eigenvector accumulator `v` along.
fn tql2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > SWEEP_BUDGET {
                    if e[l].abs() <= EIG_TOL * tst1.max(1.0) {
                        break; // accept: residual is already negligible
                    }
                    return Err(Error::NonConvergence);
                }

                // Implicit shift.
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d[l + 2..n].iter_mut() {
                    *di -= h;
                }
                f += h;

                // One QL sweep.
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
