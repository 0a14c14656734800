//! Binomials, subset ranking, and exact sparse integer matrices.
//!
//! Subsets of the ground set [n] = {0, .., n-1} are u64 bitsets and are
//! ordered lexicographically by their sorted element lists; that order fixes
//! the row and column layout of every matrix built from subsets, so the same
//! subset always lands on the same index everywhere in the crate.
//!
//! All arithmetic here is exact. Matrix entries are checked i64, binomials
//! are checked u64, and any overflow is reported as [`Error::Overflow`]
//! rather than wrapped.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result, MAX_VERTICES};

/// Binomial coefficient C(n, k), exact.
///
/// Out-of-range `k` (negative or larger than `n`) gives 0. A result that
/// does not fit in 64 bits is an error.
pub fn binom(n: u64, k: i64) -> Result<u64> {
    if k < 0 || k as u64 > n {
        return Ok(0);
    }
    let k = (k as u64).min(n - k as u64);
    // C(n, i+1) = C(n, i) * (n - i) / (i + 1) with an exact division at
    // every step; the pre-division product needs at most 64 + 7 bits here.
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// A subset of the ground set [n], n <= 62, stored as a bitset.
///
/// Bit i set means element i is in the subset. Elements are 0-indexed
/// everywhere, matching graph vertex labels.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct VertexSubset(u64);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSubset(bits)
    }

    pub fn from_elems(elems: &[usize]) -> Self {
        let mut bits = 0u64;
        for &e in elems {
            debug_assert!(e < 64);
            bits |= 1 << e;
        }
        VertexSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, elem: usize) -> bool {
        elem < 64 && self.0 >> elem & 1 == 1
    }

    /// The subset with `elem` added.
    pub fn with(self, elem: usize) -> Self {
        debug_assert!(elem < 64);
        VertexSubset(self.0 | 1 << elem)
    }

    /// The subset with `elem` removed.
    pub fn without(self, elem: usize) -> Self {
        VertexSubset(self.0 & !(1 << elem))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSubset(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        VertexSubset(self.0 ^ other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn elems(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Lexicographic ranking of the k-subsets of [n].
///
/// Rank 0 is {0, .., k-1}; rank C(n,k)-1 is {n-k, .., n-1}. A small Pascal
/// table is precomputed so rank and unrank run in O(n) per call.
#[derive(Clone, Debug)]
pub struct SubsetIndex {
    n: usize,
    k: usize,
    count: usize,
    // table[m][t] = C(m, t) for m <= n, t <= k.
    table: Vec<Vec<u64>>,
}

impl SubsetIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "ground set size {n} exceeds {MAX_VERTICES}"
            )));
        }
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "subset size {k} exceeds ground set size {n}"
            )));
        }
        let mut table = vec![vec![0u64; k + 1]; n + 1];
        for m in 0..=n {
            table[m][0] = 1;
            for t in 1..=k.min(m) {
                table[m][t] = if t == m {
                    1
                } else {
                    table[m - 1][t - 1] + table[m - 1][t]
                };
            }
        }
        let count = table[n][k] as usize;
        Ok(SubsetIndex { n, k, count, table })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn subset_size(&self) -> usize {
        self.k
    }

    /// Number of k-subsets, C(n, k).
    pub fn count(&self) -> usize {
        self.count
    }

    fn choose(&self, m: usize, t: usize) -> u64 {
        if t > self.k || m > self.n {
            0
        } else {
            self.table[m][t]
        }
    }

    /// Lexicographic rank of a k-subset of [n].
    pub fn rank(&self, s: VertexSubset) -> Result<usize> {
        if s.len() != self.k {
            return Err(Error::InvalidParameter(format!(
                "subset {s} has {} elements, expected {}",
                s.len(),
                self.k
            )));
        }
        if self.n < 64 && s.bits() >> self.n != 0 {
            return Err(Error::InvalidParameter(format!(
                "subset {s} has elements outside [{}]",
                self.n
            )));
        }
        let mut rank = 0u64;
        let mut next = 0usize;
        for (i, c) in s.iter().enumerate() {
            for j in next..c {
                rank += self.choose(self.n - 1 - j, self.k - 1 - i);
            }
            next = c + 1;
        }
        Ok(rank as usize)
    }

    /// The k-subset with the given lexicographic rank.
    pub fn unrank(&self, mut rank: usize) -> Result<VertexSubset> {
        if rank >= self.count {
            return Err(Error::InvalidParameter(format!(
                "rank {rank} out of range for C({}, {}) = {}",
                self.n, self.k, self.count
            )));
        }
        let mut s = VertexSubset::EMPTY;
        let mut c = 0usize;
        for i in 0..self.k {
            loop {
                let below = self.choose(self.n - 1 - c, self.k - 1 - i) as usize;
                if rank < below {
                    s = s.with(c);
                    c += 1;
                    break;
                }
                rank -= below;
                c += 1;
            }
        }
        Ok(s)
    }

    /// All k-subsets in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = VertexSubset> + '_ {
        let mut elems: Vec<usize> = (0..self.k).collect();
        let mut done = self.count == 0;
        let mut first = true;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            if first {
                first = false;
                return Some(VertexSubset::from_elems(&elems));
            }
            // Advance to the lexicographic successor: bump the rightmost
            // element that still has room, then pack the tail behind it.
            let mut i = self.k;
            loop {
                if i == 0 {
                    done = true;
                    return None;
                }
                i -= 1;
                if elems[i] < self.n - self.k + i {
                    elems[i] += 1;
                    for j in i + 1..self.k {
                        elems[j] = elems[j - 1] + 1;
                    }
                    return Some(VertexSubset::from_elems(&elems));
                }
            }
        })
    }
}

/// Sparse integer matrix with checked 64-bit entries.
///
/// Zeros are never stored, so `PartialEq` is exact equality of contents.
/// Every arithmetic operation is overflow-checked and fails with
/// [`Error::Overflow`] instead of wrapping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseIntMatrix {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseIntMatrix::new(n, n);
        for i in 0..n {
            m.entries.insert((i, i), 1);
        }
        m
    }

    /// The all-ones matrix J.
    pub fn ones(nrows: usize, ncols: usize) -> Self {
        let mut m = SparseIntMatrix::new(nrows, ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                m.entries.insert((r, c), 1);
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseIntMatrix::new(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((r, c), v);
                }
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        if v == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `dv` to entry (r, c), checked.
    pub fn add_assign_entry(&mut self, r: usize, c: usize, dv: i64) -> Result<()> {
        let cur = self.get(r, c);
        let v = cur
            .checked_add(dv)
            .ok_or(Error::Overflow("matrix entry update"))?;
        self.set(r, c, v);
        Ok(())
    }

    /// Entries of row `r` as (column, value), ascending by column.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries
            .range((r, 0)..(r + 1, 0))
            .map(|(&(_, c), &v)| (c, v))
    }

    /// All stored entries as (row, column, value) in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = SparseIntMatrix::new(self.ncols, self.nrows);
        for (r, c, v) in self.iter() {
            t.entries.insert((c, r), v);
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_assign_entry(r, c, v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            let neg = v.checked_neg().ok_or(Error::Overflow("matrix negate"))?;
            out.add_assign_entry(r, c, neg)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> Result<Self> {
        let mut out = SparseIntMatrix::new(self.nrows, self.ncols);
        if s == 0 {
            return Ok(out);
        }
        for (r, c, v) in self.iter() {
            let sv = v.checked_mul(s).ok_or(Error::Overflow("matrix scale"))?;
            out.entries.insert((r, c), sv);
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "matmul: {}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = SparseIntMatrix::new(self.nrows, other.ncols);
        for (r, c1, v1) in self.iter() {
            for (c2, v2) in other.row(c1) {
                let prod = v1.checked_mul(v2).ok_or(Error::Overflow("matmul"))?;
                out.add_assign_entry(r, c2, prod)?;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over f64; entries convert losslessly since they
    /// are integers well under 2^53 whenever this is reachable.
    pub fn mul_vec_f64(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "mul_vec: matrix has {} columns, vector has {}",
                self.ncols,
                v.len()
            )));
        }
        let mut out = vec![0.0; self.nrows];
        for (r, c, val) in self.iter() {
            out[r] += val as f64 * v[c];
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<i64> {
        let mut t = 0i64;
        for i in 0..self.nrows.min(self.ncols) {
            t = t
                .checked_add(self.get(i, i))
                .ok_or(Error::Overflow("trace"))?;
        }
        Ok(t)
    }

    pub fn max_abs(&self) -> i64 {
        self.entries
            .values()
            .map(|v| v.saturating_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && self.iter().all(|(r, c, v)| self.get(c, r) == v)
    }

    /// First entry where the two matrices differ, scanning row-major.
    /// Returns (row, col, self value, other value); None when equal.
    /// Both matrices must have the same shape.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, i64, i64)> {
        debug_assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some(&(&(r, c), &v)), None) => {
                    if v != 0 {
                        return Some((r, c, v, 0));
                    }
                    a.next();
                }
                (None, Some(&(&(r, c), &v))) => {
                    if v != 0 {
                        return Some((r, c, 0, v));
                    }
                    b.next();
                }
                (Some(&(&ka, &va)), Some(&(&kb, &vb))) => {
                    if ka < kb {
                        return Some((ka.0, ka.1, va, 0));
                    } else if kb < ka {
                        return Some((kb.0, kb.1, 0, vb));
                    } else if va != vb {
                        return Some((ka.0, ka.1, va, vb));
                    } else {
                        a.next();
                        b.next();
                    }
                }
            }
        }
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    fn to_dense_i64(&self) -> Result<Vec<Vec<i64>>> {
        const DENSE_CAP: usize = 4_000_000;
        if self.nrows.saturating_mul(self.ncols) > DENSE_CAP {
            return Err(Error::CapExceeded(format!(
                "dense elimination on a {}x{} matrix",
                self.nrows, self.ncols
            )));
        }
        let mut rows = vec![vec![0i64; self.ncols]; self.nrows];
        for (r, c, v) in self.iter() {
            rows[r][c] = v;
        }
        Ok(rows)
    }

    /// Exact rank over the integers via Bareiss fraction-free elimination.
    ///
    /// Intermediate entries are minors of the input and stay in checked i64;
    /// an instance whose minors do not fit is an error.
    pub fn exact_rank(&self) -> Result<usize> {
        let mut a = self.to_dense_i64()?;
        let nr = self.nrows;
        let nc = self.ncols;
        let mut prev: i64 = 1;
        let mut rank = 0;
        for step in 0..nr.min(nc) {
            // Full pivot search: any nonzero entry in the trailing block.
            let pivot = (step..nr)
                .flat_map(|i| (step..nc).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] != 0);
            let Some((pi, pj)) = pivot else { break };
            a.swap(step, pi);
            if pj != step {
                for row in a.iter_mut() {
                    row.swap(step, pj);
                }
            }
            for i in step + 1..nr {
                for j in step + 1..nc {
                    let num = a[step][step] as i128 * a[i][j] as i128
                        - a[i][step] as i128 * a[step][j] as i128;
                    debug_assert_eq!(num % prev as i128, 0);
                    let q = num / prev as i128;
                    a[i][j] = i64::try_from(q).map_err(|_| Error::Overflow("exact rank"))?;
                }
                a[i][step] = 0;
            }
            prev = a[step][step];
            rank += 1;
        }
        Ok(rank)
    }

    /// Solves `self * X = rhs` exactly over the integers.
    ///
    /// Uses fraction-free Gauss-Jordan elimination on the augmented matrix;
    /// the left block ends as d·I with d = ±det(self), and each entry of X
    /// must be an exact multiple of d. A singular system or a non-integer
    /// solution is an error.
    pub fn solve_exact(&self, rhs: &Self) -> Result<Self> {
        if self.nrows != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "solve: coefficient matrix is {}x{}",
                self.nrows, self.ncols
            )));
        }
        if rhs.nrows != self.nrows {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs has {} rows, expected {}",
                rhs.nrows, self.nrows
            )));
        }
        let n = self.nrows;
        let m = rhs.ncols;
        let mut aug = vec![vec![0i64; n + m]; n];
        for (r, row) in self.to_dense_i64()?.into_iter().enumerate() {
            aug[r][..n].copy_from_slice(&row);
        }
        for (r, c, v) in rhs.iter() {
            aug[r][n + c] = v;
        }
        let mut prev: i64 = 1;
        for p in 0..n {
            let pivot = (p..n).find(|&i| aug[i][p] != 0).ok_or(Error::Singular)?;
            aug.swap(p, pivot);
            for i in 0..n {
                if i == p {
                    continue;
                }
                for j in 0..n + m {
                    if j == p {
                        continue;
                    }
                    let num = aug[p][p] as i128 * aug[i][j] as i128
                        - aug[i][p] as i128 * aug[p][j] as i128;
                    assert_eq!(num % prev as i128, 0, "fraction-free step not exact");
                    let q = num / prev as i128;
                    aug[i][j] = i64::try_from(q).map_err(|_| Error::Overflow("exact solve"))?;
                }
                aug[i][p] = 0;
            }
            prev = aug[p][p];
        }
        let d = prev;
        for (i, row) in aug.iter().enumerate() {
            for j in 0..n {
                let expect = if i == j { d } else { 0 };
                assert_eq!(row[j], expect, "left block did not reduce to d*I");
            }
        }
        let mut x = SparseIntMatrix::new(n, m);
        for (i, row) in aug.iter().enumerate() {
            for j in 0..m {
                let v = row[n + j];
                if v % d != 0 {
                    return Err(Error::NonIntegerSolution(i, j));
                }
                x.set(i, j, v / d);
            }
        }
        Ok(x)
    }
}

/// The (n; k2, k1)-inclusion matrix B.
///
/// Rows are indexed by the k2-subsets of [n] and columns by the k1-subsets,
/// both in lexicographic order; entry (A, X) is 1 exactly when X is a subset
/// of A. Requires 1 <= k1 <= k2 <= n-1.
pub fn inclusion_matrix(n: usize, k2: usize, k1: usize) -> Result<SparseIntMatrix> {
    if !(1 <= k1 && k1 <= k2 && k2 <= n.saturating_sub(1)) {
        return Err(Error::InvalidParameter(format!(
            "inclusion matrix needs 1 <= k1 <= k2 <= n-1, got n={n}, k2={k2}, k1={k1}"
        )));
    }
    let rows = SubsetIndex::new(n, k2)?;
    let cols = SubsetIndex::new(n, k1)?;
    const CAP: usize = crate::MAX_TOKEN_VERTICES;
    if rows.count() > CAP || cols.count() > CAP {
        return Err(Error::CapExceeded(format!(
            "inclusion matrix is {}x{}, cap is {CAP} per side",
            rows.count(),
            cols.count()
        )));
    }
    let mut b = SparseIntMatrix::new(rows.count(), cols.count());
    for (r, a) in rows.iter().enumerate() {
        let elems = a.elems();
        // All k1-subsets of this row's k2-subset.
        let inner = SubsetIndex::new(k2, k1)?;
        for pick in inner.iter() {
            let x = VertexSubset::from_elems(&pick.iter().map(|i| elems[i]).collect::<Vec<_>>());
            let c = cols.rank(x)?;
            b.set(r, c, 1);
        }
    }
    Ok(b)
}
