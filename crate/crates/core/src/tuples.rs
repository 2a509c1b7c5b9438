//! Size-homogeneous matrix tuples and the three group actions on them:
//! equivalence R(A_1,...,A_t)S, congruence Q^T A_i Q, and linear
//! substitutions A_i -> sum_j gamma_ij A_j; plus the ▽ lift,
//! tuple direct sums, and permutation-level splitting.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    members: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(members: Vec<Matrix>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::SizeMismatch("tuple must be nonempty".into()))?;
        let (r, c, f) = (first.rows(), first.cols(), first.field().clone());
        for m in &members {
            if m.rows() != r || m.cols() != c {
                return Err(Error::SizeMismatch("tuple members differ in size".into()));
            }
            if *m.field() != f {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(MatrixTuple { members })
    }

    pub fn members(&self) -> &[Matrix] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Matrix {
        &self.members[i]
    }

    pub fn arity(&self) -> usize {
        self.members.len()
    }

    pub fn rows(&self) -> usize {
        self.members[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.members[0].cols()
    }

    pub fn field(&self) -> &FieldSpec {
        self.members[0].field()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonSignature {
    pub eps1: FieldElement,
    pub eps2: FieldElement,
    pub eps3: FieldElement,
}

impl EpsilonSignature {
    pub fn new(eps1: FieldElement, eps2: FieldElement, eps3: FieldElement) -> Self {
        EpsilonSignature { eps1, eps2, eps3 }
    }

    pub fn from_i64(field: &FieldSpec, e1: i64, e2: i64, e3: i64) -> Self {
        EpsilonSignature {
            eps1: field.from_i64(e1),
            eps2: field.from_i64(e2),
            eps3: field.from_i64(e3),
        }
    }

    /// Gadget use requires eps1, eps2 nonzero (eps3 is unrestricted).
    pub fn check_gadget(&self, field: &FieldSpec) -> Result<()> {
        if field.is_zero(&self.eps1) || field.is_zero(&self.eps2) {
            return Err(Error::InvalidEpsilon);
        }
        Ok(())
    }

    /// Form-type use requires each eps in {1, -1}.
    pub fn is_sign_signature(&self, field: &FieldSpec) -> bool {
        let minus_one = field.from_i64(-1);
        [&self.eps1, &self.eps2, &self.eps3]
            .iter()
            .all(|e| field.is_one(e) || **e == minus_one)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    gamma: Matrix,
}

impl SubstitutionMatrix {
    pub fn new(gamma: Matrix) -> Result<Self> {
        if !gamma.is_square() {
            return Err(Error::SizeMismatch("substitution matrix must be square".into()));
        }
        if !gamma.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(SubstitutionMatrix { gamma })
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }
}

/// The ▽ lift A -> [[0, A], [eps*A^T, 0]] applied memberwise; the result
/// is symmetric for eps = 1 and skew-symmetric for eps = -1.
pub fn vee_lift(t: &MatrixTuple, eps: &FieldElement) -> Result<MatrixTuple> {
    let field = t.field().clone();
    let minus_one = field.from_i64(-1);
    if !field.is_one(eps) && *eps != minus_one {
        return Err(Error::InvalidEpsilon);
    }
    let (m, n) = (t.rows(), t.cols());
    let members = t
        .members()
        .iter()
        .map(|a| {
            let z_mm = Matrix::zero(field.clone(), m, m);
            let z_nn = Matrix::zero(field.clone(), n, n);
            let eat = a.transpose().scale(eps);
            Matrix::from_blocks(&field, &[vec![&z_mm, a], vec![&eat, &z_nn]])
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(members)
}

/// Memberwise block-diagonal sum of tuples of common arity.
pub fn direct_sum(ts: &[MatrixTuple]) -> Result<MatrixTuple> {
    let first = ts
        .first()
        .ok_or_else(|| Error::SizeMismatch("direct sum of no tuples".into()))?;
    let t = first.arity();
    for s in ts {
        if s.arity() != t {
            return Err(Error::ArityMismatch);
        }
        if s.field() != first.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let mut members = first.members().to_vec();
    for s in &ts[1..] {
        for (i, m) in members.iter_mut().enumerate() {
            *m = m.direct_sum(s.member(i))?;
        }
    }
    MatrixTuple::new(members)
}

/// Congruence: member i becomes Q^T * A_i * Q.
pub fn apply_congruence(t: &MatrixTuple, q: &Matrix) -> Result<MatrixTuple> {
    if !t.is_square() {
        return Err(Error::SizeMismatch("congruence requires square members".into()));
    }
    if q.rows() != t.rows() || !q.is_square() {
        return Err(Error::SizeMismatch("congruence matrix size".into()));
    }
    if !q.is_invertible() {
        return Err(Error::Singular);
    }
    let qt = q.transpose();
    let members = t
        .members()
        .iter()
        .map(|a| qt.mul(a)?.mul(q))
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(members)
}

/// Equivalence: member i becomes R * A_i * S.
pub fn apply_equivalence(t: &MatrixTuple, r: &Matrix, s: &Matrix) -> Result<MatrixTuple> {
    if r.cols() != t.rows() || s.rows() != t.cols() {
        return Err(Error::SizeMismatch("equivalence transform sizes".into()));
    }
    if !r.is_square() || !s.is_square() || !r.is_invertible() || !s.is_invertible() {
        return Err(Error::Singular);
    }
    let members = t
        .members()
        .iter()
        .map(|a| r.mul(a)?.mul(s))
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(members)
}

/// Linear substitution: member i becomes sum_j gamma_ij * A_j.
pub fn apply_substitution(t: &MatrixTuple, g: &SubstitutionMatrix) -> Result<MatrixTuple> {
    let tt = t.arity();
    if g.gamma().rows() != tt {
        return Err(Error::ArityMismatch);
    }
    let field = t.field().clone();
    if g.gamma().field() != &field {
        return Err(Error::FieldMismatch);
    }
    let mut members = Vec::with_capacity(tt);
    for i in 0..tt {
        let mut acc = Matrix::zero(field.clone(), t.rows(), t.cols());
        for j in 0..tt {
            let coeff = g.gamma().get(i, j);
            if field.is_zero(coeff) {
                continue;
            }
            acc = acc.add(&t.member(j).scale(coeff))?;
        }
        members.push(acc);
    }
    MatrixTuple::new(members)
}

/// One connected component of the support graph, with the original row
/// and column indices it occupies (both sorted ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitComponent {
    pub tuple: MatrixTuple,
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != c {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Finest decomposition of the tuple into direct summands reachable by
/// simultaneous row/column permutations. Rows and columns are the nodes
/// of a bipartite graph whose edges are the entries that are nonzero in
/// at least one member; for square tuples row i and column i are
/// identified (simultaneous permutation). Components are ordered by their
/// smallest original row index (columns as a tie-break for row-free
/// components).
pub fn permutation_split(t: &MatrixTuple) -> Vec<SplitComponent> {
    let (rows, cols) = (t.rows(), t.cols());
    let field = t.field();
    let mut uf = UnionFind::new(rows + cols);
    if t.is_square() {
        for i in 0..rows {
            uf.union(i, rows + i);
        }
    }
    for m in t.members() {
        for i in 0..rows {
            for j in 0..cols {
                if !field.is_zero(m.get(i, j)) {
                    uf.union(i, rows + j);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
        std::collections::BTreeMap::new();
    for i in 0..rows {
        let r = uf.find(i);
        groups.entry(r).or_default().0.push(i);
    }
    for j in 0..cols {
        let r = uf.find(rows + j);
        groups.entry(r).or_default().1.push(j);
    }
    let mut comps: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
    comps.sort_by_key(|(r, c)| (r.first().copied().unwrap_or(usize::MAX), c.first().copied()));
    comps
        .into_iter()
        .map(|(r, c)| {
            let members = t.members().iter().map(|m| m.submatrix(&r, &c)).collect();
            SplitComponent {
                tuple: MatrixTuple::new(members).expect("component tuple well-formed"),
                row_indices: r,
                col_indices: c,
            }
        })
        .collect()
}

/// True iff A_i^T = eps_i * A_i for all three members.
pub fn check_form_types(t: &MatrixTuple, eps: &EpsilonSignature) -> Result<bool> {
    if t.arity() != 3 {
        return Err(Error::ArityMismatch);
    }
    if !t.is_square() {
        return Err(Error::SizeMismatch("form types require square members".into()));
    }
    let field = t.field();
    if !eps.is_sign_signature(field) {
        return Err(Error::InvalidEpsilon);
    }
    let signs = [&eps.eps1, &eps.eps2, &eps.eps3];
    Ok(t.members()
        .iter()
        .zip(signs)
        .all(|(m, e)| m.transpose() == m.scale(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn single(m: Matrix) -> MatrixTuple {
        MatrixTuple::new(vec![m]).unwrap()
    }

    #[test]
    fn vee_lift_of_identity_scalar() {
        let t = single(Matrix::identity(q(), 1));
        let minus_one = q().from_i64(-1);
        let lifted = vee_lift(&t, &minus_one).unwrap();
        let expect = Matrix::from_i64_rows(&q(), &[&[0, 1], &[-1, 0]]);
        assert_eq!(lifted.member(0), &expect);
        assert!(lifted.member(0).is_skew_symmetric());
    }

    #[test]
    fn vee_lift_of_empty_pair_is_zero_scalars() {
        // F_1 = G_1 = 0_{0,1}; the lift is (0_1, 0_1)
        let f1 = Matrix::zero(q(), 0, 1);
        let g1 = Matrix::zero(q(), 0, 1);
        let t = MatrixTuple::new(vec![f1, g1]).unwrap();
        let minus_one = q().from_i64(-1);
        let lifted = vee_lift(&t, &minus_one).unwrap();
        assert_eq!(lifted.rows(), 1);
        assert_eq!(lifted.cols(), 1);
        assert!(lifted.member(0).is_zero());
        assert!(lifted.member(1).is_zero());
    }

    #[test]
    fn vee_lift_rectangular_symmetric() {
        let a = Matrix::from_i64_rows(&q(), &[&[1, 2, 3], &[4, 5, 6]]);
        let t = single(a.clone());
        let lifted = vee_lift(&t, &q().one()).unwrap();
        let m = lifted.member(0);
        assert_eq!((m.rows(), m.cols()), (5, 5));
        assert!(m.is_symmetric());
        assert_eq!(m.get(0, 2), a.get(0, 0));
    }

    #[test]
    fn direct_sum_examples() {
        let i1 = single(Matrix::identity(q(), 1));
        let s = direct_sum(&[i1.clone(), i1.clone()]).unwrap();
        assert_eq!(s.member(0), &Matrix::identity(q(), 2));

        // (M) + (0_{0,2}) appends zero columns
        let m = Matrix::from_i64_rows(&q(), &[&[1], &[2]]);
        let z = single(Matrix::zero(q(), 0, 2));
        let s2 = direct_sum(&[single(m.clone()), z]).unwrap();
        assert_eq!((s2.rows(), s2.cols()), (2, 3));
        assert_eq!(s2.member(0).get(0, 0), m.get(0, 0));
        assert!(q().is_zero(s2.member(0).get(0, 1)));

        // 0_{1,0} + 0_{0,1} = 0_{1,1}
        let a = single(Matrix::zero(q(), 1, 0));
        let b = single(Matrix::zero(q(), 0, 1));
        let s3 = direct_sum(&[a, b]).unwrap();
        assert_eq!((s3.rows(), s3.cols()), (1, 1));
        assert!(s3.member(0).is_zero());
    }

    #[test]
    fn direct_sum_arity_mismatch() {
        let i1 = single(Matrix::identity(q(), 1));
        let pair = MatrixTuple::new(vec![Matrix::identity(q(), 1), Matrix::identity(q(), 1)]).unwrap();
        assert_eq!(direct_sum(&[i1, pair]).unwrap_err(), Error::ArityMismatch);
    }

    #[test]
    fn congruence_examples() {
        let t = single(Matrix::identity(q(), 2));
        let qm = Matrix::diag(q(), &[q().from_i64(2), q().one()]);
        let out = apply_congruence(&t, &qm).unwrap();
        assert_eq!(out.member(0), &Matrix::diag(q(), &[q().from_i64(4), q().one()]));

        let id = Matrix::identity(q(), 2);
        assert_eq!(apply_congruence(&t, &id).unwrap(), t);
    }

    #[test]
    fn congruence_composes() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let t = single(Matrix::from_i64_rows(&f5, &[&[1, 2], &[3, 4]]));
        let q1 = Matrix::from_i64_rows(&f5, &[&[1, 1], &[0, 1]]);
        let q2 = Matrix::from_i64_rows(&f5, &[&[2, 0], &[1, 3]]);
        let lhs = apply_congruence(&apply_congruence(&t, &q1).unwrap(), &q2).unwrap();
        let rhs = apply_congruence(&t, &q1.mul(&q2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn congruence_preserves_symmetry_type() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let skew = Matrix::from_i64_rows(&f5, &[&[0, 1], &[-1, 0]]);
        let qm = Matrix::from_i64_rows(&f5, &[&[1, 2], &[3, 2]]);
        let out = apply_congruence(&single(skew), &qm).unwrap();
        assert!(out.member(0).is_skew_symmetric());
    }

    #[test]
    fn substitution_swap_and_general() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let a = Matrix::from_i64_rows(&f5, &[&[1, 0], &[0, 0]]);
        let b = Matrix::from_i64_rows(&f5, &[&[0, 0], &[0, 1]]);
        let t = MatrixTuple::new(vec![a.clone(), b.clone()]).unwrap();
        let swap = SubstitutionMatrix::new(Matrix::from_i64_rows(&f5, &[&[0, 1], &[1, 0]])).unwrap();
        let out = apply_substitution(&t, &swap).unwrap();
        assert_eq!(out.member(0), &b);
        assert_eq!(out.member(1), &a);

        // (A, B) -> (aA + bB, cA + dB)
        let g = SubstitutionMatrix::new(Matrix::from_i64_rows(&f5, &[&[2, 3], &[1, 1]])).unwrap();
        let out2 = apply_substitution(&t, &g).unwrap();
        let want0 = a.scale(&f5.from_i64(2)).add(&b.scale(&f5.from_i64(3))).unwrap();
        assert_eq!(out2.member(0), &want0);
    }

    #[test]
    fn substitution_commutes_with_congruence() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let a = Matrix::from_i64_rows(&f5, &[&[0, 1], &[-1, 0]]);
        let b = Matrix::from_i64_rows(&f5, &[&[0, 2], &[-2, 1]]);
        let t = MatrixTuple::new(vec![a, b]).unwrap();
        let qm = Matrix::from_i64_rows(&f5, &[&[1, 2], &[0, 3]]);
        let g = SubstitutionMatrix::new(Matrix::from_i64_rows(&f5, &[&[1, 4], &[2, 1]])).unwrap();
        let lhs = apply_substitution(&apply_congruence(&t, &qm).unwrap(), &g).unwrap();
        let rhs = apply_congruence(&apply_substitution(&t, &g).unwrap(), &qm).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn split_diag_sum_into_scalars() {
        let t = single(Matrix::identity(q(), 2));
        let comps = permutation_split(&t);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].row_indices, vec![0]);
        assert_eq!(comps[1].row_indices, vec![1]);
    }

    #[test]
    fn split_coupled_block_stays_whole() {
        let t = single(Matrix::from_i64_rows(&q(), &[&[0, 1], &[-1, 0]]));
        let comps = permutation_split(&t);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].tuple.rows(), 2);
    }

    #[test]
    fn split_reassembles_exactly() {
        // scrambled direct sum of a 2x2 block and two scalars
        let f5 = FieldSpec::prime_field(5).unwrap();
        let m = Matrix::from_i64_rows(
            &f5,
            &[&[3, 0, 0, 2], &[0, 1, 0, 0], &[0, 0, 4, 0], &[1, 0, 0, 0]],
        );
        let t = single(m.clone());
        let comps = permutation_split(&t);
        assert_eq!(comps.len(), 3);
        // reassemble through the returned index sets
        let mut rebuilt = Matrix::zero(f5.clone(), 4, 4);
        for comp in &comps {
            for (bi, &i) in comp.row_indices.iter().enumerate() {
                for (bj, &j) in comp.col_indices.iter().enumerate() {
                    rebuilt.set(i, j, comp.tuple.member(0).get(bi, bj).clone());
                }
            }
        }
        assert_eq!(rebuilt, m);
    }

    #[test]
    fn form_types() {
        let i2 = Matrix::identity(q(), 2);
        let t = MatrixTuple::new(vec![i2.clone(), i2.clone(), i2.clone()]).unwrap();
        let eps = EpsilonSignature::from_i64(&q(), 1, 1, 1);
        assert!(check_form_types(&t, &eps).unwrap());

        let j = Matrix::jordan_block(&q(), 2, &q().zero());
        let t2 = MatrixTuple::new(vec![j, i2.clone(), i2]).unwrap();
        assert!(!check_form_types(&t2, &eps).unwrap());
    }

    #[test]
    fn form_types_of_lifted_triple() {
        let a = Matrix::from_i64_rows(&q(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64_rows(&q(), &[&[0, 1], &[1, 1]]);
        let c = Matrix::from_i64_rows(&q(), &[&[2, 0], &[0, 5]]);
        let t = MatrixTuple::new(vec![a, b, c]).unwrap();
        let minus_one = q().from_i64(-1);
        let lifted = vee_lift(&t, &minus_one).unwrap();
        let eps = EpsilonSignature::from_i64(&q(), -1, -1, -1);
        assert!(check_form_types(&lifted, &eps).unwrap());
    }
}
