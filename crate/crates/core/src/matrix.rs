//! Dense matrices over a ring from [`crate::rings`], and small integer matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rings::{RingDescriptor, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("structural failure: {0}")]
    StructuralFailure(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Row-major dense matrix over a single ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl Matrix {
    pub fn zeros(ring: RingDescriptor, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_fn(ring: RingDescriptor, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.ring(), ring, "entry ({i},{j}) lives in a different ring");
                data.push(x);
            }
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn from_int(ring: RingDescriptor, m: &IntMatrix) -> Self {
        Self::from_fn(ring, m.rows, m.cols, |i, j| ring.from_i64(m[(i, j)]))
    }

    pub fn from_rows(ring: RingDescriptor, rows: &[Vec<i64>]) -> Self {
        Self::from_int(ring, &IntMatrix::from_rows(rows))
    }

    /// Matrix with a single nonzero entry `x` at `(i, j)`.
    pub fn unit(ring: RingDescriptor, n: usize, i: usize, j: usize, x: RingElement) -> Self {
        let mut m = Self::zeros(ring, n, n);
        m[(i, j)] = x;
        m
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, ring: RingDescriptor, f: impl Fn(&RingElement) -> RingElement) -> Matrix {
        Matrix { ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, x: &RingElement) -> Matrix {
        self.map(self.ring, |e| e * x)
    }

    /// Entrywise reduction to the residue field.
    pub fn residue(&self) -> Result<Matrix, RingError> {
        let field = self.ring.residue_field()?;
        let data = self.data.iter().map(RingElement::residue).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { ring: field, rows: self.rows, cols: self.cols, data })
    }

    /// True iff every entry lies in the radical.
    pub fn in_radical(&self) -> Result<bool, RingError> {
        for x in &self.data {
            if !x.in_radical()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(self.ring, rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring, self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        if self.ring != other.ring {
            return Err(RingError::MixedRings(self.ring.to_string(), other.ring.to_string()).into());
        }
        let support: Vec<Vec<usize>> =
            (0..other.rows).map(|k| (0..other.cols).filter(|&j| !other[(k, j)].is_zero()).collect()).collect();
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for &j in &support[k] {
                    let prod = a * &other[(k, j)];
                    let slot = &mut out[(i, j)];
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.ring, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[(r, col)].is_unit())
                .ok_or_else(|| LinAlgError::StructuralFailure(format!("no unit pivot in column {col}")))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p_inv = a[(col, col)].invert()?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &-&f);
                    inv.add_row_multiple(r, col, &-&f);
                }
            }
        }
        Ok(inv)
    }

    /// Determinant. Fraction-free over the integers, unit pivots elsewhere.
    pub fn determinant(&self) -> Result<RingElement, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::Shape("determinant of a non-square matrix".into()));
        }
        if self.ring.kind() == crate::rings::RingKind::Integers {
            let big: Vec<Vec<BigInt>> =
                (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_bigint().expect("integer entry")).collect()).collect();
            return Ok(self.ring.from_bigint(&bareiss_determinant(big)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.ring.one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| a[(r, col)].is_unit()) {
                Some(p) => p,
                None if (col..n).all(|r| a[(r, col)].is_zero()) => return Ok(self.ring.zero()),
                None => return Err(LinAlgError::StructuralFailure(format!("only radical pivots in column {col}"))),
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = &det * &p;
            let p_inv = p.invert()?;
            for r in col + 1..n {
                if !a[(r, col)].is_zero() {
                    let f = &a[(r, col)] * &p_inv;
                    a.add_row_multiple(r, col, &-f);
                }
            }
        }
        Ok(det)
    }

    /// Rank over a field.
    pub fn rank(&self) -> Result<usize, LinAlgError> {
        if !self.ring.is_field() {
            return Err(LinAlgError::StructuralFailure(format!("rank requires a field, got {}", self.ring)));
        }
        Ok(self.unit_pivot_columns()?.len())
    }

    /// Indices of columns that carry unit pivots under column reduction.
    ///
    /// Once no unit remains in the unreduced part, that part must be exactly
    /// zero; otherwise the module is not visibly free and the routine reports
    /// a structural failure.
    pub fn unit_pivot_columns(&self) -> Result<Vec<usize>, LinAlgError> {
        let mut a = self.clone();
        let mut row_done = vec![false; self.rows];
        let mut col_done = vec![false; self.cols];
        let mut pivots = Vec::new();
        loop {
            let found = (0..self.cols)
                .filter(|&j| !col_done[j])
                .find_map(|j| (0..self.rows).find(|&i| !row_done[i] && a[(i, j)].is_unit()).map(|i| (i, j)));
            let Some((i, j)) = found else { break };
            let p_inv = a[(i, j)].invert()?;
            for k in 0..self.cols {
                if k != j && !col_done[k] && !a[(i, k)].is_zero() {
                    let f = -(&a[(i, k)] * &p_inv);
                    for r in 0..self.rows {
                        if !a[(r, j)].is_zero() {
                            let v = &a[(r, k)] + &(&a[(r, j)] * &f);
                            a[(r, k)] = v;
                        }
                    }
                }
            }
            row_done[i] = true;
            col_done[j] = true;
            pivots.push(j);
        }
        for j in (0..self.cols).filter(|&j| !col_done[j]) {
            if (0..self.rows).any(|i| !a[(i, j)].is_zero()) {
                return Err(LinAlgError::StructuralFailure(format!("column {j} has a nonzero radical residual")));
            }
        }
        pivots.sort_unstable();
        Ok(pivots)
    }

    /// Solve `self * x = rhs` for a square invertible matrix.
    pub fn solve(&self, rhs: &[RingElement]) -> Result<Vec<RingElement>, LinAlgError> {
        let inv = self.inverse()?;
        let b = Matrix::from_fn(self.ring, rhs.len(), 1, |i, _| rhs[i].clone());
        Ok(inv.try_mul(&b)?.column(0))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, x: &RingElement) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * x;
            self[(r, j)] = v;
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &RingElement) {
        for j in 0..self.cols {
            if self[(src, j)].is_zero() {
                continue;
            }
            let v = &self[(dst, j)] + &(&self[(src, j)] * f);
            self[(dst, j)] = v;
        }
    }

    /// Entries as strings in the ring's serialization, row-major.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = RingElement;
    fn index(&self, (i, j): (usize, usize)) -> &RingElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RingElement {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(self.ring, |x| -x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Square matrix over a ring stored by rows of nonzero `(column, value)` pairs,
/// sorted by column. Equality is structural and therefore exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    ring: RingDescriptor,
    rows: Vec<Vec<(usize, RingElement)>>,
}

impl SparseMatrix {
    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        SparseMatrix { ring, rows: (0..n).map(|i| vec![(i, ring.one())]).collect() }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let rows = (0..m.rows()).map(|i| m.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()).collect();
        SparseMatrix { ring: m.ring(), rows }
    }

    /// Builds from unsorted triples, summing duplicates.
    pub fn from_triples(ring: RingDescriptor, n: usize, triples: impl IntoIterator<Item = (usize, usize, RingElement)>) -> Self {
        let mut rows: Vec<Vec<(usize, RingElement)>> = vec![Vec::new(); n];
        for (i, j, x) in triples {
            rows[i].push((j, x));
        }
        for row in &mut rows {
            *row = normalize_row(std::mem::take(row));
        }
        SparseMatrix { ring, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn row(&self, i: usize) -> &[(usize, RingElement)] {
        &self.rows[i]
    }

    pub fn to_dense(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.ring, n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }
}

fn normalize_row(mut row: Vec<(usize, RingElement)>) -> Vec<(usize, RingElement)> {
    row.sort_by_key(|(j, _)| *j);
    let mut out: Vec<(usize, RingElement)> = Vec::with_capacity(row.len());
    for (j, x) in row {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y = &*y + &x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

impl Mul<&SparseMatrix> for &SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        assert_eq!(self.dim(), rhs.dim(), "shape mismatch");
        let n = self.dim();
        let zero = self.ring.zero();
        let mut acc: Vec<Option<RingElement>> = vec![None; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    let prod = a * b;
                    match &mut acc[*j] {
                        Some(v) => *v = &*v + &prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = acc[j].take().unwrap_or_else(|| zero.clone());
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            rows.push(out);
        }
        SparseMatrix { ring: self.ring, rows }
    }
}

/// Fraction-free determinant of a square integer matrix.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Small dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(<[i64]>::to_vec).take(self.rows).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        bareiss_determinant(self.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&IntMatrix> for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Sub<&IntMatrix> for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}
