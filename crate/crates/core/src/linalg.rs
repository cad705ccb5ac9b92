//! Exact sparse linear algebra over ℚ.
//!
//! Matrices are stored row-major as sorted sparse rows with no explicit zeros,
//! so structural equality is value equality. Every basis choice follows the
//! leftmost-pivot convention, which makes all downstream output reproducible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

type SparseRow = Vec<(usize, Scalar)>;

/// Builds the rational `num/den`.
pub fn rational(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q` in lowest terms (always with a denominator).
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// `a - f * b` on sorted sparse rows.
fn axpy(a: &[(usize, Scalar)], f: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_get(row: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Scalar::one())]).collect(),
        }
    }

    pub fn scalar_identity(n: usize, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zeros(n, n);
        }
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, s.clone())]).collect(),
        }
    }

    /// Entries `(row, col, value)`; duplicates are summed and zeros dropped.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Matrix { rows, cols, data }
    }

    pub fn from_dense(rows: usize, cols: usize, values: &[Scalar]) -> Self {
        assert_eq!(values.len(), rows * cols);
        let data = (0..rows)
            .map(|r| dense_to_sparse(&values[r * cols..(r + 1) * cols]))
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        let v: Vec<Scalar> = values.iter().map(|&x| int(x)).collect();
        Self::from_dense(rows, cols, &v)
    }

    /// Matrix whose columns are the given dense vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let entries = columns.iter().enumerate().flat_map(|(c, col)| {
            assert_eq!(col.len(), rows);
            col.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(r, v)| (r, c, v.clone()))
        });
        Self::from_entries(rows, columns.len(), entries)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        row_get(&self.data[r], c).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.entries().next().map(|(r, c, v)| (r, c, v.clone()))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        let mut cols = vec![vec![Scalar::zero(); self.rows]; self.cols];
        for (r, c, v) in self.entries() {
            cols[c][r] = v.clone();
        }
        cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_entries(
            self.cols,
            self.rows,
            self.entries().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Scalar::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect()
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut position = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            position[old] = new;
        }
        Matrix::from_entries(
            self.rows,
            cols.len(),
            self.entries()
                .filter(|(_, c, _)| position[*c] != usize::MAX)
                .map(|(r, c, v)| (r, position[c], v.clone())),
        )
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start..end].to_vec(),
        }
    }

    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        self.select_cols(&(start..end).collect::<Vec<_>>())
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let mut offset = 0;
        let mut entries = Vec::new();
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            entries.extend(m.entries().map(|(r, c, v)| (r, c + offset, v.clone())));
            offset += m.cols;
        }
        Matrix::from_entries(rows, offset, entries)
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend(m.data.iter().cloned());
        }
        Matrix { rows: data.len(), cols, data }
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let entries = a
            .entries()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(b.entries().map(|(r, c, v)| (r + a.rows, c + a.cols, v.clone())));
        Matrix::from_entries(a.rows + b.rows, a.cols + b.cols, entries)
    }

    /// Reduced row echelon form of the row space.
    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for row in &self.data {
            e.insert(row.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        // rank(A) = rank(Aᵀ); eliminate along the shorter side.
        if self.rows <= self.cols {
            self.echelon().rank()
        } else {
            self.transpose().echelon().rank()
        }
    }

    /// Indices of the leftmost linearly independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivot_cols()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = vec![Scalar::zero(); 2 * n];
                for (c, v) in &self.data[r] {
                    row[*c] = v.clone();
                }
                row[n + r] = Scalar::one();
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *x -= &f * p;
                        }
                    }
                }
            }
        }
        let values: Vec<Scalar> = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(Matrix::from_dense(n, n, &values))
    }

    pub fn kernel(&self) -> Subspace {
        let e = self.echelon();
        let pivots = e.pivot_cols();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (p, row) in &e.rows {
                if let Some(x) = row_get(row, free) {
                    v[*p] = -x.clone();
                }
            }
            vectors.push(v);
        }
        Subspace {
            ambient: self.cols,
            basis: Matrix::from_columns(self.cols, &vectors),
        }
    }

    pub fn image(&self) -> Subspace {
        let pivots = self.pivot_columns();
        Subspace {
            ambient: self.rows,
            basis: self.select_cols(&pivots),
        }
    }

    /// Kernel and image, with `dim ker + dim im = cols`.
    pub fn kernel_image(&self) -> (Subspace, Subspace) {
        (self.kernel(), self.image())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: Vec<Option<Scalar>> = Vec::new();
                let mut touched = Vec::new();
                for (k, a) in row {
                    for (c, b) in &rhs.data[*k] {
                        if acc.is_empty() {
                            acc = vec![None; rhs.cols];
                        }
                        match &mut acc[*c] {
                            Some(x) => *x += a * b,
                            slot @ None => {
                                *slot = Some(a * b);
                                touched.push(*c);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                touched
                    .into_iter()
                    .filter_map(|c| acc[c].take().filter(|x| !x.is_zero()).map(|x| (c, x)))
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let minus_one = -Scalar::one();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| axpy(a, &minus_one, b))
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let one = Scalar::one();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| axpy(a, &one, b))
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(&-Scalar::one())
    }
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug)]
struct Echelon {
    cols: usize,
    /// `(pivot column, row)` sorted by pivot; rows normalized to pivot 1 and
    /// zero in every other pivot column.
    rows: Vec<(usize, SparseRow)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    fn reduce(&self, mut v: SparseRow) -> SparseRow {
        for (p, row) in &self.rows {
            if let Some(f) = row_get(&v, *p).cloned() {
                v = axpy(&v, &f, row);
            }
        }
        v
    }

    /// Returns true when `v` enlarged the row space.
    fn insert(&mut self, v: SparseRow) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.cols));
        let mut v = self.reduce(v);
        let Some((lead, lead_val)) = v.first().cloned() else {
            return false;
        };
        let inv = lead_val.recip();
        for e in v.iter_mut() {
            e.1 *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if let Some(f) = row_get(row, lead).cloned() {
                *row = axpy(row, &f, &v);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < lead);
        self.rows.insert(at, (lead, v));
        true
    }
}

/// A subspace of `ℚ^ambient` given by linearly independent basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    /// Span of the given vectors, keeping the leftmost independent ones.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let m = Matrix::from_columns(ambient, vectors);
        m.image()
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        m.image()
    }

    /// Wraps columns already known to be independent.
    pub fn from_independent_columns(basis: Matrix) -> Result<Self> {
        if basis.rank() != basis.ncols() {
            return Err(Error::ShapeMismatch("basis columns are dependent".into()));
        }
        Ok(Subspace { ambient: basis.nrows(), basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut e = Echelon::new(self.ambient);
        for col in self.basis.transpose().data {
            e.insert(col);
        }
        e.reduce(dense_to_sparse(v)).is_empty()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let mut e = other.row_echelon();
        self.basis.transpose().data.into_iter().all(|col| !e.insert(col))
    }

    fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for col in self.basis.transpose().data {
            e.insert(col);
        }
        e
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let both = Matrix::hstack(&[&self.basis, &other.basis]);
        both.image()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // v = A x = B y  ⇔  [A | -B] (x, y) = 0
        let stacked = Matrix::hstack(&[&self.basis, &(-&other.basis)]);
        let ker = stacked.kernel();
        let coeffs = ker.basis.row_range(0, self.dim());
        let vectors = &self.basis * &coeffs;
        vectors.image()
    }

    /// A complement `C` of `self` inside `ambient`: `self ⊕ C = ambient`.
    ///
    /// Greedily keeps the ambient basis vectors that enlarge the span, in order.
    pub fn complement_in(&self, ambient: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(ambient) {
            return Err(Error::NotContained);
        }
        let mut e = self.row_echelon();
        let mut kept = Vec::new();
        for (j, col) in ambient.basis.transpose().data.into_iter().enumerate() {
            if e.rank() == ambient.dim() {
                break;
            }
            if e.insert(col) {
                kept.push(j);
            }
        }
        Ok(Subspace {
            ambient: self.ambient,
            basis: ambient.basis.select_cols(&kept),
        })
    }

    pub fn solver(&self) -> CoordinateSolver {
        CoordinateSolver::new(self.basis.clone())
    }
}

/// `complement(sub, ambient)` as a free function.
pub fn complement(sub: &Subspace, ambient: &Subspace) -> Result<Subspace> {
    sub.complement_in(ambient)
}

/// Solves `B x = v` for a fixed basis `B` with independent columns.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    basis: Matrix,
    pivot_rows: Vec<usize>,
    inverse: Matrix,
}

impl CoordinateSolver {
    pub fn new(basis: Matrix) -> Self {
        let pivot_rows = basis.transpose().pivot_columns();
        assert_eq!(pivot_rows.len(), basis.ncols(), "basis columns must be independent");
        let inverse = basis
            .select_rows(&pivot_rows)
            .inverse()
            .expect("square pivot block of an independent basis is invertible");
        CoordinateSolver { basis, pivot_rows, inverse }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let restricted: Vec<Scalar> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        let x = self.inverse.mul_vec(&restricted);
        (self.basis.mul_vec(&x) == v).then_some(x)
    }

    /// Coordinates of every column of `m`; `None` if any column escapes.
    pub fn coordinates_of_columns(&self, m: &Matrix) -> Option<Matrix> {
        let x = &self.inverse * &m.select_rows(&self.pivot_rows);
        (&self.basis * &x == *m).then_some(x)
    }
}

/// A subquotient `numerator / denominator` with a chosen basis of
/// representatives (a complement of the denominator in the numerator).
#[derive(Clone, Debug)]
pub struct Subquotient {
    numerator: Subspace,
    denominator: Subspace,
    representatives: Subspace,
    solver: CoordinateSolver,
}

impl Subquotient {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self> {
        let representatives = denominator.complement_in(&numerator)?;
        let solver = CoordinateSolver::new(Matrix::hstack(&[
            representatives.basis(),
            denominator.basis(),
        ]));
        Ok(Subquotient { numerator, denominator, representatives, solver })
    }

    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Coset representatives, one column per basis element of the quotient.
    pub fn representatives(&self) -> &Matrix {
        self.representatives.basis()
    }

    /// Quotient coordinates of a numerator vector; `None` outside the numerator.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut x = self.solver.coordinates(v)?;
        x.truncate(self.dim());
        Some(x)
    }

    fn coordinates_of_columns(&self, m: &Matrix) -> Option<Matrix> {
        let x = self.solver.coordinates_of_columns(m)?;
        Some(x.row_range(0, self.dim()))
    }
}

/// Matrix of the map induced by `m` from `src` to `dst`, in their
/// representative bases.
pub fn induced_map(m: &Matrix, src: &Subquotient, dst: &Subquotient) -> Result<Matrix> {
    let image_of_denominator = m * src.denominator.basis();
    if dst.denominator.solver().coordinates_of_columns(&image_of_denominator).is_none() {
        return Err(Error::NotWellDefined);
    }
    let image = m * src.representatives();
    dst.coordinates_of_columns(&image).ok_or(Error::NotWellDefined)
}

/// Builds both subquotients from `(numerator, denominator)` pairs and returns
/// the induced map.
pub fn induced_subquotient_map(
    m: &Matrix,
    src: (&Subspace, &Subspace),
    dst: (&Subspace, &Subspace),
) -> Result<Matrix> {
    if m.ncols() != src.0.ambient_dim() || m.nrows() != dst.0.ambient_dim() {
        return Err(Error::ShapeMismatch("map does not fit the subquotients".into()));
    }
    let src = Subquotient::new(src.0.clone(), src.1.clone())?;
    let dst = Subquotient::new(dst.0.clone(), dst.1.clone())?;
    induced_map(m, &src, &dst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn kernel_image_empty_and_identity() {
        let (k, i) = Matrix::zeros(0, 0).kernel_image();
        assert_eq!((k.dim(), i.dim()), (0, 0));
        let (k, i) = Matrix::identity(3).kernel_image();
        assert_eq!((k.dim(), i.dim()), (0, 3));
    }

    #[test]
    fn kernel_image_rank_one() {
        let m = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        let (k, i) = m.kernel_image();
        assert_eq!(k.dim(), 1);
        assert_eq!(i.dim(), 1);
        // hand row reduction: x + 2y = 0
        assert!(k.contains(&col(&[2, -1])));
        assert!(m.mul_vec(&k.basis_vectors()[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn complement_examples() {
        let e1 = Subspace::span(2, &[col(&[1, 0])]);
        let c = e1.complement_in(&Subspace::full(2)).unwrap();
        assert_eq!(c.basis_vectors(), vec![col(&[0, 1])]);

        let c = Subspace::full(2).complement_in(&Subspace::full(2)).unwrap();
        assert_eq!(c.dim(), 0);

        let diag = Subspace::span(2, &[col(&[1, 1])]);
        let c = diag.complement_in(&Subspace::full(2)).unwrap();
        assert_eq!(c.basis_vectors(), vec![col(&[1, 0])]);
    }

    #[test]
    fn complement_requires_containment() {
        let e1 = Subspace::span(2, &[col(&[1, 0])]);
        let e2 = Subspace::span(2, &[col(&[0, 1])]);
        assert_eq!(e1.complement_in(&e2), Err(Error::NotContained));
    }

    #[test]
    fn induced_map_examples() {
        let full = Subspace::full(2);
        let zero = Subspace::zero(2);
        let m = Matrix::zeros(2, 2);
        let out = induced_subquotient_map(&m, (&full, &zero), (&full, &zero)).unwrap();
        assert_eq!(out, Matrix::zeros(2, 2));

        let m = Matrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let out = induced_subquotient_map(&m, (&full, &zero), (&full, &zero)).unwrap();
        assert_eq!(out, m);

        // m e₂ = e₁; src = ℚ²/⟨e₁⟩ has representative e₂, dst = ℚ²/⟨e₂⟩ has
        // representative e₁, and solving e₁ = 1·e₁ + 0·e₂ gives the entry 1.
        let m = Matrix::from_i64(2, 2, &[0, 1, 0, 0]);
        let e1 = Subspace::span(2, &[col(&[1, 0])]);
        let e2 = Subspace::span(2, &[col(&[0, 1])]);
        let out = induced_subquotient_map(&m, (&full, &e1), (&full, &e2)).unwrap();
        assert_eq!(out, Matrix::from_i64(1, 1, &[1]));
    }

    #[test]
    fn induced_map_detects_ill_defined() {
        let full = Subspace::full(2);
        let e1 = Subspace::span(2, &[col(&[1, 0])]);
        let zero = Subspace::zero(2);
        // identity does not send ⟨e₁⟩ into 0
        let err = induced_subquotient_map(&Matrix::identity(2), (&full, &e1), (&full, &zero));
        assert_eq!(err, Err(Error::NotWellDefined));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(Matrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn scalar_format_round_trip() {
        let s = rational(-6, 4);
        assert_eq!(format_scalar(&s), "-3/2");
        assert_eq!(parse_scalar("-3/2"), Some(s));
        assert_eq!(parse_scalar("5"), Some(int(5)));
        assert_eq!(parse_scalar("1/0"), None);
    }
}
