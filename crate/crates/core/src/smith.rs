//! Matrices over the polynomial ring F[x] and their Smith normal form,
//! with tracked unimodular transforms. This is the engine behind the
//! elementary divisors of matrix pencils.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>, // row-major
}

impl PolyMatrix {
    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { field, rows, cols, entries }
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let z = Polynomial::zero(field.clone());
        PolyMatrix { field, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = PolyMatrix::zero(field.clone(), n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(field.clone()));
        }
        m
    }

    /// The linear pencil c + x*l built from two equal-sized scalar matrices.
    pub fn linear_pencil(constant: &Matrix, x_coeff: &Matrix) -> Result<Self> {
        if constant.rows() != x_coeff.rows() || constant.cols() != x_coeff.cols() {
            return Err(Error::SizeMismatch("pencil coefficient sizes differ".into()));
        }
        if constant.field() != x_coeff.field() {
            return Err(Error::FieldMismatch);
        }
        let field = constant.field().clone();
        Ok(PolyMatrix::from_fn(field.clone(), constant.rows(), constant.cols(), |i, j| {
            Polynomial::new(
                field.clone(),
                vec![constant.get(i, j).clone(), x_coeff.get(i, j).clone()],
            )
        }))
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

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch("polynomial matrix product".into()));
        }
        let field = self.field.clone();
        let mut out = PolyMatrix::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += f * row b
    fn row_axpy(&mut self, a: usize, b: usize, f: &Polynomial) {
        for j in 0..self.cols {
            let v = self.get(a, j).add(&f.mul(self.get(b, j)));
            self.set(a, j, v);
        }
    }

    /// col a += f * col b
    fn col_axpy(&mut self, a: usize, b: usize, f: &Polynomial) {
        for i in 0..self.rows {
            let v = self.get(i, a).add(&f.mul(self.get(i, b)));
            self.set(i, a, v);
        }
    }

    fn scale_row(&mut self, a: usize, f: &Polynomial) {
        for j in 0..self.cols {
            let v = self.get(a, j).mul(f);
            self.set(a, j, v);
        }
    }
}

/// Smith normal form left * P * right = diag(d_1, ..., d_r, 0, ...),
/// with each d_i monic and d_i | d_{i+1}; left and right are unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariant_factors: Vec<Polynomial>, // the nonzero diagonal, monic
    pub left: PolyMatrix,
    pub right: PolyMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    /// The full diagonal matrix, including trailing zeros.
    pub fn diagonal_matrix(&self, field: &FieldSpec) -> PolyMatrix {
        let mut d = PolyMatrix::zero(field.clone(), self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

pub fn smith_polymatrix(p: &PolyMatrix) -> SmithForm {
    let field = p.field().clone();
    let (rows, cols) = (p.rows(), p.cols());
    let mut m = p.clone();
    let mut left = PolyMatrix::identity(field.clone(), rows);
    let mut right = PolyMatrix::identity(field.clone(), cols);
    let rmax = rows.min(cols);
    let mut t = 0;
    while t < rmax {
        // locate a nonzero entry of minimal degree in the trailing block
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(d) = m.get(i, j).degree() {
                    if pivot.map_or(true, |(_, _, pd)| d < pd) {
                        pivot = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        m.swap_rows(t, pi);
        left.swap_rows(t, pi);
        m.swap_cols(t, pj);
        right.swap_cols(t, pj);
        // clear row and column t by division; restart if a remainder
        // drops the pivot degree
        let mut clean = true;
        for i in t + 1..rows {
            if m.get(i, t).is_zero() {
                continue;
            }
            let (q, r) = m.get(i, t).divrem(m.get(t, t));
            let nq = q.neg();
            m.row_axpy(i, t, &nq);
            left.row_axpy(i, t, &nq);
            if !r.is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m.get(t, j).is_zero() {
                continue;
            }
            let (q, r) = m.get(t, j).divrem(m.get(t, t));
            let nq = q.neg();
            m.col_axpy(j, t, &nq);
            right.col_axpy(j, t, &nq);
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // pivot degree strictly decreased somewhere; re-pivot
        }
        // pivot divides its row and column remainders (all zero now);
        // enforce divisibility of the trailing block
        let mut offender = None;
        'search: for i in t + 1..rows {
            for j in t + 1..cols {
                if !m.get(t, t).divides(m.get(i, j)) {
                    offender = Some(i);
                    break 'search;
                }
            }
        }
        if let Some(i) = offender {
            let one = Polynomial::one(field.clone());
            m.row_axpy(t, i, &one);
            left.row_axpy(t, i, &one);
            continue;
        }
        t += 1;
    }
    // make the diagonal monic via unit row scalings
    let mut invariant_factors = vec![];
    for i in 0..rmax {
        let d = m.get(i, i).clone();
        if d.is_zero() {
            break;
        }
        let lead = d.leading().unwrap().clone();
        if !field.is_one(&lead) {
            let inv = field.inv(&lead).unwrap();
            let unit = Polynomial::constant(field.clone(), inv);
            m.scale_row(i, &unit);
            left.scale_row(i, &unit);
        }
        invariant_factors.push(m.get(i, i).clone());
    }
    SmithForm { invariant_factors, left, right, rows, cols }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::factor;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn check_form(p: &PolyMatrix, sf: &SmithForm) {
        // divisibility chain and monic factors
        for w in sf.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]), "divisibility chain broken");
        }
        for d in &sf.invariant_factors {
            assert!(p.field().is_one(d.leading().unwrap()));
        }
        // left * P * right = diagonal
        let prod = sf.left.mul(p).unwrap().mul(&sf.right).unwrap();
        assert_eq!(prod, sf.diagonal_matrix(p.field()));
    }

    #[test]
    fn already_smith_diagonal() {
        let x = Polynomial::x(q());
        let x2 = x.mul(&x);
        let mut p = PolyMatrix::zero(q(), 2, 2);
        p.set(0, 0, x.clone());
        p.set(1, 1, x2.clone());
        let sf = smith_polymatrix(&p);
        assert_eq!(sf.invariant_factors, vec![x, x2]);
        check_form(&p, &sf);
    }

    #[test]
    fn unimodular_gives_ones() {
        // I + x*J_2(0): determinant 1
        let id = Matrix::identity(q(), 2);
        let j = Matrix::jordan_block(&q(), 2, &q().zero());
        let p = PolyMatrix::linear_pencil(&id, &j).unwrap();
        let sf = smith_polymatrix(&p);
        assert_eq!(
            sf.invariant_factors,
            vec![Polynomial::one(q()), Polynomial::one(q())]
        );
        check_form(&p, &sf);
    }

    #[test]
    fn jordan_pencil_collects_x_squared() {
        // x*I_2 + J_2(0) -> (1, x^2)
        let id = Matrix::identity(q(), 2);
        let j = Matrix::jordan_block(&q(), 2, &q().zero());
        let p = PolyMatrix::linear_pencil(&j, &id).unwrap();
        let sf = smith_polymatrix(&p);
        let x = Polynomial::x(q());
        assert_eq!(sf.invariant_factors, vec![Polynomial::one(q()), x.mul(&x)]);
        check_form(&p, &sf);
    }

    #[test]
    fn rectangular_and_singular() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        // pencil of a 2x3 rank-deficient shape
        let a = Matrix::from_i64_rows(&f7, &[&[1, 0, 0], &[0, 0, 0]]);
        let b = Matrix::from_i64_rows(&f7, &[&[0, 1, 0], &[1, 0, 0]]);
        let p = PolyMatrix::linear_pencil(&a, &b).unwrap();
        let sf = smith_polymatrix(&p);
        check_form(&p, &sf);
        assert!(sf.invariant_factors.len() <= 2);
    }

    #[test]
    fn transform_reproduction_up_to_six() {
        // pinned pseudo-random polynomial matrices up to 6x6 over F_5
        let f5 = FieldSpec::prime_field(5).unwrap();
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        for n in 1..=6usize {
            let p = PolyMatrix::from_fn(f5.clone(), n, n, |_, _| {
                let deg = (next() % 3).unsigned_abs() as usize;
                let coeffs: Vec<i64> = (0..=deg).map(|_| next() % 5).collect();
                Polynomial::from_i64(&f5, &coeffs)
            });
            let sf = smith_polymatrix(&p);
            check_form(&p, &sf);
        }
    }

    #[test]
    fn elementary_divisors_of_companion_pencil() {
        // x*I - C for C the companion of (x^2+1)(x-1) over F_3
        let f3 = FieldSpec::prime_field(3).unwrap();
        let a = Polynomial::from_i64(&f3, &[1, 0, 1]);
        let b = Polynomial::from_i64(&f3, &[-1, 1]);
        let cp = a.mul(&b);
        let c = cp.companion_matrix().unwrap();
        let id = Matrix::identity(f3.clone(), 3);
        let p = PolyMatrix::linear_pencil(&c.neg(), &id).unwrap();
        let sf = smith_polymatrix(&p);
        check_form(&p, &sf);
        let last = sf.invariant_factors.last().unwrap();
        let facs = factor(last).unwrap();
        assert_eq!(facs.len(), 2);
        assert!(facs.iter().any(|(g, e)| *g == a && *e == 1));
    }
}
