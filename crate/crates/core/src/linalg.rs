//! Exact integer and rational matrix routines.
//!
//! Everything here works over `i64` with checked arithmetic; an overflow is
//! reported as [`LinalgError::Overflow`] instead of wrapping. The matrices
//! met in practice (constraint systems of rank ≤ 8 root data) stay far from
//! that limit.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_rational::Ratio;
use thiserror::Error;

/// Exact rational scalar.
pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("vector is not an integral combination of the basis")]
    NotInLattice,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

fn ck_mul(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(LinalgError::Overflow(ctx))
}

fn ck_sub(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_sub(b).ok_or(LinalgError::Overflow(ctx))
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn from_cols(cols: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column {c}");
            for (r, &x) in col.iter().enumerate() {
                m[(r, c)] = x;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self[(r, c)] == (r == c) as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let p = ck_mul(a, other[(k, c)], "matrix product")?;
                    out[(r, c)] = out[(r, c)]
                        .checked_add(p)
                        .ok_or(LinalgError::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "{}x{} * vec {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    acc.checked_add(ck_mul(a, b, "matrix-vector product")?)
                        .ok_or(LinalgError::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for c in 0..self.cols {
            let v = ck_mul(q, self[(src, c)], "row operation")?;
            self[(dst, c)] = ck_sub(self[(dst, c)], v, "row operation")?;
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for r in 0..self.rows {
            let v = ck_mul(q, self[(r, src)], "column operation")?;
            self[(r, dst)] = ck_sub(self[(r, dst)], v, "column operation")?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)];
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension(
                "determinant of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|r| self.row(r).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(LinalgError::Overflow("determinant"))?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| LinalgError::Overflow("determinant"))
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in order; each divides the next.
    pub fn invariants(&self) -> Vec<i64> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> Result<Smith> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize, i64)> = None;
            for r in t..m {
                for c in t..n {
                    let x = d[(r, c)].abs();
                    if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                        best = Some((r, c, x));
                    }
                }
            }
            let Some((pr, pc, _)) = best else {
                return Ok(Smith { u, d, v });
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let p = d[(t, t)];
            let mut clean = true;
            for r in t + 1..m {
                let q = d[(r, t)].div_euclid(p);
                d.row_axpy(r, t, q)?;
                u.row_axpy(r, t, q)?;
                clean &= d[(r, t)] == 0;
            }
            for c in t + 1..n {
                let q = d[(t, c)].div_euclid(p);
                d.col_axpy(c, t, q)?;
                v.col_axpy(c, t, q)?;
                clean &= d[(t, c)] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..m).find(|&r| (t + 1..n).any(|c| d[(r, c)] % p != 0));
            if let Some(r) = offending {
                d.row_axpy(t, r, -1)?;
                u.row_axpy(t, r, -1)?;
                continue;
            }
            if p < 0 {
                d.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    Ok(Smith { u, d, v })
}

/// Row-style Hermite normal form: returns the nonzero rows in echelon form,
/// pivots positive, entries above each pivot reduced into `[0, pivot)`.
/// The rows span the same lattice as the rows of `a`.
pub fn row_hermite(a: &IntMatrix) -> Result<IntMatrix> {
    let mut h = a.clone();
    let (m, n) = (h.nrows(), h.ncols());
    let mut prow = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if prow == m {
            break;
        }
        loop {
            let best = (prow..m)
                .filter(|&r| h[(r, c)] != 0)
                .min_by_key(|&r| h[(r, c)].abs());
            let Some(r) = best else { break };
            h.swap_rows(prow, r);
            let p = h[(prow, c)];
            let mut clean = true;
            for r in prow + 1..m {
                let q = h[(r, c)].div_euclid(p);
                h.row_axpy(r, prow, q)?;
                clean &= h[(r, c)] == 0;
            }
            if clean {
                break;
            }
        }
        if h[(prow, c)] == 0 {
            continue;
        }
        if h[(prow, c)] < 0 {
            h.negate_row(prow);
        }
        let p = h[(prow, c)];
        for r in 0..prow {
            let q = h[(r, c)].div_euclid(p);
            h.row_axpy(r, prow, q)?;
        }
        pivots.push(c);
        prow += 1;
    }
    let rows: Vec<Vec<i64>> = (0..prow).map(|r| h.row(r).to_vec()).collect();
    Ok(IntMatrix::from_rows(&rows, n))
}

/// Column index of the first nonzero entry of each row of an echelon matrix.
pub fn pivot_columns(h: &IntMatrix) -> Vec<usize> {
    (0..h.nrows())
        .map(|r| {
            h.row(r)
                .iter()
                .position(|&x| x != 0)
                .expect("zero row in echelon form")
        })
        .collect()
}

/// Basis (as rows, in Hermite form) of the integer right kernel `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let s = smith_normal_form(a)?;
    let rank = s.rank();
    let cols: Vec<Vec<i64>> = (rank..n).map(|c| s.v.col(c)).collect();
    row_hermite(&IntMatrix::from_rows(&cols, n))
}

/// Coordinates of `x` with respect to the rows of an echelon basis `h`.
pub fn echelon_coordinates(h: &IntMatrix, x: &[i64]) -> Result<Vec<i64>> {
    let pivots = pivot_columns(h);
    let mut rest = x.to_vec();
    let mut coords = Vec::with_capacity(h.nrows());
    for (r, &p) in pivots.iter().enumerate() {
        let pv = h[(r, p)];
        if rest[p] % pv != 0 {
            return Err(LinalgError::NotInLattice);
        }
        let q = rest[p] / pv;
        for (c, slot) in rest.iter_mut().enumerate() {
            *slot = ck_sub(
                *slot,
                ck_mul(q, h[(r, c)], "echelon solve")?,
                "echelon solve",
            )?;
        }
        coords.push(q);
    }
    if rest.iter().any(|&x| x != 0) {
        return Err(LinalgError::NotInLattice);
    }
    Ok(coords)
}

/// Whether two row sets span the same integer lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    Ok(row_hermite(a)? == row_hermite(b)?)
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn rational_inverse(a: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = a.len();
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one } else { zero }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| m[r][c] != zero)
            .ok_or(LinalgError::Singular)?;
        m.swap(c, p);
        let inv = one / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && m[r][c] != zero {
                let f = m[r][c];
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}
