//! Dense exact-entry matrices. Zero-row and zero-column sizes are legal and
//! participate in direct sums.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>, // row-major
}

impl Matrix {
    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    pub fn from_entries(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn from_i64_rows(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Matrix::from_fn(field.clone(), r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Matrix::from_fn(field, rows, cols, |_, _| z.clone())
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let (z, o) = (field.zero(), field.one());
        Matrix::from_fn(field, n, n, |r, c| if r == c { o.clone() } else { z.clone() })
    }

    pub fn diag(field: FieldSpec, diag: &[FieldElement]) -> Self {
        let z = field.zero();
        let n = diag.len();
        Matrix::from_fn(field, n, n, |r, c| if r == c { diag[r].clone() } else { z.clone() })
    }

    /// Single n x n Jordan block with the given eigenvalue.
    pub fn jordan_block(field: &FieldSpec, n: usize, lambda: &FieldElement) -> Self {
        let z = field.zero();
        let o = field.one();
        Matrix::from_fn(field.clone(), n, n, |r, c| {
            if r == c {
                lambda.clone()
            } else if c == r + 1 {
                o.clone()
            } else {
                z.clone()
            }
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
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

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && self.transpose() == self.neg()
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch("add".into()));
        }
        Ok(Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.add(self.get(r, c), other.get(r, c))
        }))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.neg(self.get(r, c))
        })
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.mul(s, self.get(r, c))
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(r, c), &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("pow of non-square matrix".into()));
        }
        let mut out = Matrix::identity(self.field.clone(), self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Block-diagonal direct sum, honoring zero-sized blocks: a 0 x q summand
    /// appends q zero columns, a p x 0 summand appends p zero rows.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let z = self.field.zero();
        Ok(Matrix::from_fn(self.field.clone(), rows, cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                z.clone()
            }
        }))
    }

    /// Assemble from a grid of blocks; row heights and column widths are
    /// taken from the first block in each row / column.
    pub fn from_blocks(field: &FieldSpec, blocks: &[Vec<&Matrix>]) -> Result<Matrix> {
        let row_heights: Vec<usize> = blocks.iter().map(|row| row[0].rows()).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols()).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != col_widths.len() {
                return Err(Error::SizeMismatch("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows() != row_heights[bi] || b.cols() != col_widths[bj] {
                    return Err(Error::SizeMismatch("inconsistent block sizes".into()));
                }
            }
        }
        let rows: usize = row_heights.iter().sum();
        let cols: usize = col_widths.iter().sum();
        let mut out = Matrix::zero(field.clone(), rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        out.set(r0 + r, c0 + c, b.get(r, c).clone());
                    }
                }
                c0 += col_widths[bj];
            }
            r0 += row_heights[bi];
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field.clone(), rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Reduced row echelon form. Returns (rank, rref, transform) with
    /// transform * self == rref and transform invertible.
    pub fn rank_rref(&self) -> (usize, Matrix, Matrix) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut t = Matrix::identity(f.clone(), self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            // find pivot
            let mut pr = None;
            for r in pivot_row..self.rows {
                if !f.is_zero(m.get(r, col)) {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != pivot_row {
                m.swap_rows(pr, pivot_row);
                t.swap_rows(pr, pivot_row);
            }
            let pinv = f.inv(m.get(pivot_row, col)).unwrap();
            m.scale_row(pivot_row, &pinv);
            t.scale_row(pivot_row, &pinv);
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                m.row_axpy(r, pivot_row, &f.neg(&factor));
                t.row_axpy(r, pivot_row, &f.neg(&factor));
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        (pivot_row, m, t)
    }

    pub fn rank(&self) -> usize {
        self.rank_rref().0
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("inverse of non-square matrix".into()));
        }
        let (rank, _, t) = self.rank_rref();
        if rank != self.rows {
            return Err(Error::Singular);
        }
        Ok(t)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("det of non-square matrix".into()));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let mut pr = None;
            for r in col..n {
                if !f.is_zero(m.get(r, col)) {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { return Ok(f.zero()) };
            if pr != col {
                m.swap_rows(pr, col);
                det = f.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = f.mul(&det, &pivot);
            let pinv = f.inv(&pivot).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &pinv);
                if f.is_zero(&factor) {
                    continue;
                }
                m.row_axpy(r, col, &f.neg(&factor));
            }
        }
        Ok(det)
    }

    /// Basis of the right kernel, returned as the columns of an n x d matrix.
    pub fn nullspace(&self) -> Matrix {
        let f = self.field.clone();
        let (_, rref, _) = self.rank_rref();
        // locate pivot columns
        let mut pivot_col_of_row = vec![];
        let mut is_pivot = vec![false; self.cols];
        for r in 0..self.rows {
            let mut pc = None;
            for c in 0..self.cols {
                if !f.is_zero(rref.get(r, c)) {
                    pc = Some(c);
                    break;
                }
            }
            if let Some(c) = pc {
                pivot_col_of_row.push((r, c));
                is_pivot[c] = true;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zero(f.clone(), self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            basis.set(fc, j, f.one());
            for &(r, pc) in &pivot_col_of_row {
                basis.set(pc, j, f.neg(rref.get(r, fc)));
            }
        }
        basis
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &FieldElement) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row r += s * row src
    fn row_axpy(&mut self, r: usize, src: usize, s: &FieldElement) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(src, c), s);
            if self.field.is_zero(&v) {
                continue;
            }
            let w = self.field.add(self.get(r, c), &v);
            self.set(r, c, w);
        }
    }

    pub fn stable_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.rows as u32).to_le_bytes());
        out.extend_from_slice(&(self.cols as u32).to_le_bytes());
        for e in &self.entries {
            self.field.elem_bytes(e, &mut out);
        }
        out
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.format_elem(self.get(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
