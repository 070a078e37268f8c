//! Dense matrices over arbitrary-precision rationals.

use std::fmt;

use num::{One, Signed, Zero};

use super::Rational;

/// Dense row-major matrix of [`Rational`] entries.
///
/// The zero-row/zero-column degenerate shapes are allowed; they show up
/// naturally as constraint matrices of full spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row);
        }
        RatMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Builds an `rows × cols` matrix from integer rows (test convenience).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| super::rat(n)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Flat row-major view; the vectorization used for span comparisons.
    pub fn flat(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * k)
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self.get(r, c).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c) + a * b;
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks matrices vertically; all must share a column count (or be
    /// row-less).
    pub fn vstack(parts: &[&RatMatrix]) -> Self {
        let cols = parts
            .iter()
            .find(|m| m.rows > 0)
            .map_or_else(|| parts.first().map_or(0, |m| m.cols), |m| m.cols);
        let mut entries = Vec::new();
        let mut rows = 0;
        for part in parts {
            if part.rows == 0 {
                continue;
            }
            assert_eq!(part.cols, cols, "column count mismatch in vstack");
            entries.extend_from_slice(&part.entries);
            rows += part.rows;
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn hstack(a: &RatMatrix, b: &RatMatrix) -> Self {
        assert_eq!(a.rows, b.rows, "row count mismatch in hstack");
        Self::from_fn(a.rows, a.cols + b.cols, |r, c| {
            if c < a.cols {
                a.get(r, c).clone()
            } else {
                b.get(r, c - a.cols).clone()
            }
        })
    }

    pub fn block_diag(a: &RatMatrix, b: &RatMatrix) -> Self {
        Self::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| {
            if r < a.rows && c < a.cols {
                a.get(r, c).clone()
            } else if r >= a.rows && c >= a.cols {
                b.get(r - a.rows, c - a.cols).clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn kronecker(a: &RatMatrix, b: &RatMatrix) -> Self {
        Self::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
            let av = a.get(r / b.rows, c / b.cols);
            if av.is_zero() {
                Rational::zero()
            } else {
                av * b.get(r % b.rows, c % b.cols)
            }
        })
    }

    /// Reduced row echelon form with zero rows dropped, plus the rank.
    ///
    /// The output is the unique RREF of the row space, so it doubles as a
    /// canonical form: two matrices have equal row spans iff their `rref`
    /// outputs are identical.
    pub fn rref(&self) -> (RatMatrix, usize) {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |r: usize, c: usize| r * cols + c;
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| !m[at(r, col)].is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..cols {
                    m.swap(at(src, c), at(pivot_row, c));
                }
            }
            let pivot = m[at(pivot_row, col)].clone();
            if !pivot.is_one() {
                for c in col..cols {
                    if !m[at(pivot_row, c)].is_zero() {
                        m[at(pivot_row, c)] = &m[at(pivot_row, c)] / &pivot;
                    }
                }
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m[at(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    if !m[at(pivot_row, c)].is_zero() {
                        let v = &m[at(r, c)] - &factor * &m[at(pivot_row, c)];
                        m[at(r, c)] = v;
                    }
                }
            }
            pivot_row += 1;
        }
        m.truncate(pivot_row * cols);
        (
            RatMatrix {
                rows: pivot_row,
                cols,
                entries: m,
            },
            pivot_row,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Canonical spanning set of `{v : M·v = 0}`, one row per kernel basis
    /// vector, ordered by free column. Row count is `cols − rank`.
    pub fn nullspace_basis(&self) -> RatMatrix {
        let (r, rank) = self.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..self.cols)
                .find(|&c| !r.get(row, c).is_zero())
                .expect("rref keeps no zero rows");
            pivot_cols.push(col);
        }
        let mut basis_rows = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis_rows.push(v);
        }
        if basis_rows.is_empty() {
            RatMatrix::zeros(0, self.cols)
        } else {
            RatMatrix::from_rows(basis_rows)
        }
    }

    /// One particular solution of `M·x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let augmented = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let (red, rank) = augmented.rref();
        let mut x = vec![Rational::zero(); self.cols];
        for row in 0..rank {
            let col = (0..=self.cols).find(|&c| !red.get(row, c).is_zero())?;
            if col == self.cols {
                return None; // pivot in the augmented column: inconsistent
            }
            x[col] = red.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Sum of absolute values; a quick size gauge used in diagnostics.
    pub fn abs_sum(&self) -> Rational {
        let mut acc = Rational::zero();
        for e in &self.entries {
            acc += e.abs();
        }
        acc
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
