//! Exact rational and integer linear algebra.
//!
//! Everything here works on arbitrary-precision values: [`Rational`] is a
//! reduced big-integer fraction and integer lattices are kept in Hermite
//! normal form so that two bases of the same lattice compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact scalar. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Shorthand for `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer-valued rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("basis of {vectors} vectors in dimension {dim} is not full rank")]
    NotFullRank { vectors: usize, dim: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::Shape { expected: cols, found: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(RatMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix")
    }

    pub fn from_int_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self, LinAlgError> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Vertical concatenation; both matrices must have the same column count.
    pub fn vstack(&self, other: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::Shape { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RatMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Columns `idx` of `self`, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out[(i, c)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        RatMatrix::from_rows(self.cols, &rows).expect("rows share the column count")
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pivot;
                for c in col..n {
                    let t = &f * &m[(col, c)];
                    m[(r, c)] -= t;
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(RatMatrix::zeros(0, 0));
        }
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form with leftmost-pivot choice. Returns the reduced
/// matrix and the pivot column of each nonzero row.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m[(r, col)].recip();
        for c in col..m.cols {
            m[(r, c)] *= &inv;
        }
        for i in 0..m.rows {
            if i == r || m[(i, col)].is_zero() {
                continue;
            }
            let f = m[(i, col)].clone();
            for c in col..m.cols {
                let t = &f * &m[(r, c)];
                m[(i, c)] -= t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    (m, pivots)
}

/// Some solution of `a·x = rhs`, or `None` if the system is inconsistent.
///
/// The returned solution is canonical: free variables are zero and the pivot
/// variables are read off the reduced echelon form.
pub fn solve_linear(a: &RatMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rhs.len(), a.rows(), "rhs length must equal row count");
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = r[(row, n)].clone();
    }
    Some(x)
}

/// Basis of `{y : a·y = 0}`, one vector per free column in ascending order.
pub fn rational_kernel_basis(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); a.cols()];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// An integer lattice given by a basis in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLatticeBasis {
    pub dim: usize,
    pub basis: Vec<Vec<BigInt>>,
    /// `|det|` of the basis; only present when the lattice has full rank.
    pub covolume: Option<BigInt>,
}

impl IntLatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn rational_basis(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Coordinates of `v` in this basis if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let b = RatMatrix::from_int_rows(self.dim, &self.basis).ok()?.transpose();
        let rhs: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let c = solve_linear(&b, &rhs)?;
        if b.mul_vec(&c) != rhs {
            return None;
        }
        c.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows` in `Z^dim`.
///
/// The basis is upper echelon, pivots are positive and entries above each
/// pivot lie in `[0, pivot)`. Zero rows are dropped.
pub fn hnf(dim: usize, rows: &[Vec<BigInt>]) -> IntLatticeBasis {
    let mut mat: Vec<Vec<BigInt>> = rows.to_vec();
    for r in &mat {
        assert_eq!(r.len(), dim, "lattice generator has wrong dimension");
    }
    let rank = echelonize(&mut mat, dim);
    mat.truncate(rank);
    let covolume = (rank == dim).then(|| {
        // Upper triangular with positive diagonal.
        (0..dim).fold(BigInt::one(), |acc, i| acc * &mat[i][i])
    });
    IntLatticeBasis { dim, basis: mat, covolume }
}

/// Integer row reduction to Hermite normal form on the first `pivot_cols`
/// columns; later columns ride along. Only unimodular row operations are
/// used. Returns the number of pivot rows.
fn echelonize(mat: &mut [Vec<BigInt>], pivot_cols: usize) -> usize {
    let nrows = mat.len();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == nrows {
            break;
        }
        loop {
            let best = (r..nrows)
                .filter(|&i| !mat[i][col].is_zero())
                .min_by(|&a, &b| mat[a][col].abs().cmp(&mat[b][col].abs()));
            let Some(p) = best else { break };
            mat.swap(p, r);
            let mut done = true;
            for i in r + 1..nrows {
                if mat[i][col].is_zero() {
                    continue;
                }
                let q = mat[i][col].div_floor(&mat[r][col]);
                sub_scaled(mat, i, r, &q);
                if !mat[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < nrows && !mat[r][col].is_zero() {
            if mat[r][col].is_negative() {
                for x in mat[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = mat[i][col].div_floor(&mat[r][col]);
                if !q.is_zero() {
                    sub_scaled(mat, i, r, &q);
                }
            }
            r += 1;
        }
    }
    r
}

fn sub_scaled(mat: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = mat[source].clone();
    for (t, s) in mat[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// Least common multiple of the denominators in `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scale_to_integers(v: &[Rational], scale: &BigInt) -> Vec<BigInt> {
    v.iter()
        .map(|x| {
            let y = x * Rational::from_integer(scale.clone());
            debug_assert!(y.is_integer());
            y.to_integer()
        })
        .collect()
}

/// Basis of the saturated integer kernel `{y ∈ Z^cols : a·y = 0}`, in HNF.
pub fn integer_kernel_basis(a: &RatMatrix) -> IntLatticeBasis {
    let m = a.cols();
    let k = a.rows();
    // Clear denominators row by row; the kernel is unchanged.
    let int_rows: Vec<Vec<BigInt>> = (0..k)
        .map(|i| scale_to_integers(a.row(i), &common_denominator(a.row(i))))
        .collect();
    // [Aᵀ | I]: unimodular row reduction on the left block leaves the integer
    // kernel in the right block of the rows whose left block vanished.
    let mut mat: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut row: Vec<BigInt> = int_rows.iter().map(|r| r[j].clone()).collect();
            row.extend((0..m).map(|c| if c == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let rank = echelonize(&mut mat, k);
    let kernel: Vec<Vec<BigInt>> = mat[rank..].iter().map(|r| r[k..].to_vec()).collect();
    hnf(m, &kernel)
}

/// A lattice generated by rational vectors, stored as `integer / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledLattice {
    pub denominator: BigInt,
    pub integer: IntLatticeBasis,
}

impl ScaledLattice {
    /// Clears denominators by their global lcm, takes the integer HNF and
    /// keeps the scale so the rational basis can be recovered.
    pub fn generated_by(dim: usize, generators: &[Vec<Rational>]) -> Self {
        let denominator = common_denominator(generators.iter().flatten());
        let rows: Vec<Vec<BigInt>> =
            generators.iter().map(|g| scale_to_integers(g, &denominator)).collect();
        ScaledLattice { denominator, integer: hnf(dim, &rows) }
    }

    pub fn dim(&self) -> usize {
        self.integer.dim
    }

    pub fn rank(&self) -> usize {
        self.integer.rank()
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        let s = Rational::from_integer(self.denominator.clone());
        self.integer
            .rational_basis()
            .into_iter()
            .map(|v| v.into_iter().map(|x| x / &s).collect())
            .collect()
    }

    pub fn covolume(&self) -> Option<Rational> {
        let cov = self.integer.covolume.clone()?;
        let scale = num_traits::pow(self.denominator.clone(), self.dim());
        Some(Rational::new(cov, scale))
    }
}

/// Basis of the dual lattice `{x : ⟨x, l⟩ ∈ Z for all l}`, paired so that
/// `⟨basis[i], dual[j]⟩ = δ_ij`.
pub fn dual_lattice_basis(basis: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    let dim = basis.first().map_or(basis.len(), Vec::len);
    if basis.len() != dim {
        return Err(LinAlgError::NotFullRank { vectors: basis.len(), dim });
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    let b = RatMatrix::from_rows(dim, basis)?;
    let inv = b.inverse().ok_or(LinAlgError::NotFullRank { vectors: basis.len(), dim })?;
    // B·Dᵀ = I, so D = (B⁻¹)ᵀ.
    Ok(inv.transpose().row_vecs())
}

/// Outcome of a cone membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFeasibility {
    /// A nonnegative `y` with `a·y = rhs`, when one exists.
    pub witness: Option<Vec<Rational>>,
}

impl ConeFeasibility {
    pub fn is_feasible(&self) -> bool {
        self.witness.is_some()
    }
}

/// Decides whether `rhs` lies in the cone generated by the columns of `a`,
/// i.e. whether some `y ≥ 0` solves `a·y = rhs`.
///
/// Phase-one simplex over exact rationals. Bland's rule picks both the
/// entering column and ties in the ratio test, so the method cannot cycle.
pub fn cone_feasible(a: &RatMatrix, rhs: &[Rational]) -> ConeFeasibility {
    assert_eq!(rhs.len(), a.rows(), "rhs length must equal row count");
    let k = a.rows();
    let m = a.cols();
    let width = m + k;
    // Tableau columns: original variables, artificials, then the rhs.
    let mut t = RatMatrix::zeros(k, width + 1);
    for i in 0..k {
        let flip = rhs[i].is_negative();
        for j in 0..m {
            t[(i, j)] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
        }
        t[(i, m + i)] = Rational::one();
        t[(i, width)] = rhs[i].abs();
    }
    let mut basis: Vec<usize> = (m..width).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut cost = vec![Rational::zero(); width + 1];
    for i in 0..k {
        for j in 0..m {
            cost[j] -= &t[(i, j)];
        }
        cost[width] -= &t[(i, width)];
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..k {
            if !t[(i, enter)].is_positive() {
                continue;
            }
            let ratio = &t[(i, width)] / &t[(i, enter)];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[width].is_zero() {
        return ConeFeasibility { witness: None };
    }
    let mut y = vec![Rational::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            y[b] = t[(i, width)].clone();
        }
    }
    debug_assert_eq!(a.mul_vec(&y), rhs);
    ConeFeasibility { witness: Some(y) }
}

fn pivot(t: &mut RatMatrix, cost: &mut [Rational], row: usize, col: usize) {
    let cols = t.cols();
    let inv = t[(row, col)].recip();
    for c in 0..cols {
        t[(row, c)] *= &inv;
    }
    for i in 0..t.rows() {
        if i == row || t[(i, col)].is_zero() {
            continue;
        }
        let f = t[(i, col)].clone();
        for c in 0..cols {
            let d = &f * &t[(row, c)];
            t[(i, c)] -= d;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for c in 0..cols {
            let d = &f * &t[(row, c)];
            cost[c] -= d;
        }
    }
}
