//! The wildness gadgets: the triple T_eps(A,B) reducing pair similarity
//! to congruence of structured triples, the explicit congruence witness
//! for the constructive direction, the big symmetric/skew triple used to
//! separate ranks, and a complete desk-scale similarity decider for
//! matrix pairs via their intertwiner space.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::tuples::{direct_sum, vee_lift, EpsilonSignature, MatrixTuple};

/// A pair of square matrices of equal size, considered up to simultaneous
/// similarity (A, B) -> (S^-1 A S, S^-1 B S).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    a: Matrix,
    b: Matrix,
}

impl MatrixPair {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::SizeMismatch("pair members must be square of equal size".into()));
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(MatrixPair { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.a.field()
    }

    /// (S^-1 A S, S^-1 B S)
    pub fn conjugate(&self, s: &Matrix) -> Result<MatrixPair> {
        let si = s.inverse()?;
        MatrixPair::new(si.mul(&self.a)?.mul(s)?, si.mul(&self.b)?.mul(s)?)
    }
}

/// Certifies S^-1 (A,B) S = (C,D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub s: Matrix,
}

impl SimilarityWitness {
    pub fn verify(&self, p1: &MatrixPair, p2: &MatrixPair) -> bool {
        match p1.conjugate(&self.s) {
            Ok(conj) => conj == *p2,
            Err(_) => false,
        }
    }
}

/// Certifies R^T T1 R = T2 memberwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub r: Matrix,
}

impl CongruenceWitness {
    pub fn verify(&self, t1: &MatrixTuple, t2: &MatrixTuple) -> bool {
        match crate::tuples::apply_congruence(t1, &self.r) {
            Ok(out) => out == *t2,
            Err(_) => false,
        }
    }
}

/// The 4n x 4n nilpotent block matrix with I_n on the first block
/// superdiagonal.
pub fn build_j4(field: &FieldSpec, n: usize) -> Matrix {
    let mut m = Matrix::zero(field.clone(), 4 * n, 4 * n);
    for blk in 0..3 {
        for i in 0..n {
            m.set(blk * n + i, (blk + 1) * n + i, field.one());
        }
    }
    m
}

/// The 4n x 4n block diagonal (I_n, A, B, 0_n).
pub fn build_d(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::SizeMismatch("D(A,B) needs square matrices of equal size".into()));
    }
    let field = a.field().clone();
    let n = a.rows();
    let id = Matrix::identity(field.clone(), n);
    let z = Matrix::zero(field.clone(), n, n);
    id.direct_sum(a)?.direct_sum(b)?.direct_sum(&z)
}

/// The triple T_eps(A,B) of 8n x 8n matrices:
///   ( [0 I; e1*I 0], [0 J4; e2*J4^T 0], [0 D(A,B); e3*D(A^T,B^T) 0] ).
pub fn build_t(p: &MatrixPair, eps: &EpsilonSignature) -> Result<MatrixTuple> {
    let field = p.field().clone();
    eps.check_gadget(&field)?;
    let n = p.size();
    let id = Matrix::identity(field.clone(), 4 * n);
    let j4 = build_j4(&field, n);
    let d = build_d(p.a(), p.b())?;
    let dt = build_d(&p.a().transpose(), &p.b().transpose())?;
    let z = Matrix::zero(field.clone(), 4 * n, 4 * n);
    let m1 = Matrix::from_blocks(&field, &[vec![&z, &id], vec![&id.scale(&eps.eps1), &z]])?;
    let j4t = j4.transpose().scale(&eps.eps2);
    let m2 = Matrix::from_blocks(&field, &[vec![&z, &j4], vec![&j4t, &z]])?;
    let dt3 = dt.scale(&eps.eps3);
    let m3 = Matrix::from_blocks(&field, &[vec![&z, &d], vec![&dt3, &z]])?;
    MatrixTuple::new(vec![m1, m2, m3])
}

/// The congruence witness R = diag((S^T)^-1 x4, S x4) transporting
/// T_eps(A,B) to T_eps(S^-1 A S, S^-1 B S).
pub fn witness_from_similarity(s: &Matrix) -> Result<CongruenceWitness> {
    if !s.is_square() {
        return Err(Error::SizeMismatch("similarity witness must be square".into()));
    }
    let sti = s.transpose().inverse()?;
    let mut r = sti.clone();
    for _ in 0..3 {
        r = r.direct_sum(&sti)?;
    }
    for _ in 0..4 {
        r = r.direct_sum(s)?;
    }
    Ok(CongruenceWitness { r })
}

/// Basis of the intertwiner space {X : XA = CX and XB = DX}, as n x n
/// matrices.
pub fn intertwiner_basis(p1: &MatrixPair, p2: &MatrixPair) -> Result<Vec<Matrix>> {
    if p1.size() != p2.size() {
        return Err(Error::SizeMismatch("pairs differ in size".into()));
    }
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch);
    }
    let field = p1.field().clone();
    let n = p1.size();
    // unknowns: X[i][k], row-major index i*n + k
    let mut sys = Matrix::zero(field.clone(), 2 * n * n, n * n);
    for (eq_block, (rhs, lhs)) in [(p1.a(), p2.a()), (p1.b(), p2.b())].iter().enumerate() {
        // equation (i,j): sum_k X[i][k]*rhs[k][j] - sum_k lhs[i][k]*X[k][j] = 0
        for i in 0..n {
            for j in 0..n {
                let row = eq_block * n * n + i * n + j;
                for k in 0..n {
                    let v = sys.get(row, i * n + k).clone();
                    sys.set(row, i * n + k, field.add(&v, rhs.get(k, j)));
                    let v = sys.get(row, k * n + j).clone();
                    sys.set(row, k * n + j, field.sub(&v, lhs.get(i, k)));
                }
            }
        }
    }
    let ns = sys.nullspace();
    let mut basis = vec![];
    for c in 0..ns.cols() {
        let col = ns.column(c);
        basis.push(Matrix::from_fn(field.clone(), n, n, |i, k| col[i * n + k].clone()));
    }
    Ok(basis)
}

pub const DEFAULT_INTERTWINER_BUDGET: u64 = 1_000_000;

/// Decide whether two pairs are simultaneously similar, returning a
/// verified witness if so. Complete at desk scale: over a finite field
/// the intertwiner space is exhausted when q^dim fits the budget; over Q
/// an integer grid large enough for polynomial identity testing of the
/// determinant is exhausted (per-variable degree of det is at most n, so
/// vanishing on {0..n}^dim certifies that no invertible intertwiner
/// exists).
pub fn intertwiner_similarity(p1: &MatrixPair, p2: &MatrixPair) -> Result<Option<SimilarityWitness>> {
    intertwiner_similarity_with_budget(p1, p2, DEFAULT_INTERTWINER_BUDGET)
}

pub fn intertwiner_similarity_with_budget(
    p1: &MatrixPair,
    p2: &MatrixPair,
    budget: u64,
) -> Result<Option<SimilarityWitness>> {
    let basis = intertwiner_basis(p1, p2)?;
    let field = p1.field().clone();
    let n = p1.size();
    let d = basis.len();
    if d == 0 {
        return Ok(None);
    }
    if n == 0 {
        let s = Matrix::identity(field, 0);
        return Ok(Some(SimilarityWitness { s }));
    }
    let values: Vec<FieldElement> = match field.order() {
        Some(q) => {
            let total = (q as f64).powi(d as i32);
            if total > budget as f64 {
                return Err(Error::DeskScaleExceeded);
            }
            field.enumerate_elements()
        }
        None => {
            let grid = (n as u64 + 1).checked_pow(d as u32).ok_or(Error::DeskScaleExceeded)?;
            if grid > budget {
                return Err(Error::DeskScaleExceeded);
            }
            (0..=n as i64).map(|v| field.from_i64(v)).collect()
        }
    };
    // odometer over coefficient vectors, last coordinate fastest, so the
    // first invertible combination is the lexicographically smallest
    let mut idx = vec![0usize; d];
    loop {
        let mut x = Matrix::zero(field.clone(), n, n);
        let mut all_zero = true;
        for (t, &i) in idx.iter().enumerate() {
            if i == 0 {
                continue; // values[0] is the zero element for both field kinds
            }
            all_zero = false;
            x = x.add(&basis[t].scale(&values[i]))?;
        }
        if !all_zero && x.is_invertible() {
            let s = x.inverse()?;
            let w = SimilarityWitness { s };
            debug_assert!(w.verify(p1, p2));
            return Ok(Some(w));
        }
        // advance odometer
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// The big separation triple
///   (I_100,0,0)^v + (0,I_50,0)^v + (0,0,I_20)^v + (I_1,I_1,I_1)^v + G(A,B)^v
/// with G(A,B) = (I_4n, J_4(0_n), D(A,B)); members are square of size
/// 342 + 8n, all symmetric (eps = 1) or all skew-symmetric (eps = -1).
pub fn build_t_lemma42(p: &MatrixPair, eps: &FieldElement) -> Result<MatrixTuple> {
    let field = p.field().clone();
    let n = p.size();
    let mk_block = |size: usize, which: usize| -> Result<MatrixTuple> {
        let id = Matrix::identity(field.clone(), size);
        let z = Matrix::zero(field.clone(), size, size);
        let members = (0..3)
            .map(|i| if i == which { id.clone() } else { z.clone() })
            .collect();
        MatrixTuple::new(members)
    };
    let g = MatrixTuple::new(vec![
        Matrix::identity(field.clone(), 4 * n),
        build_j4(&field, n),
        build_d(p.a(), p.b())?,
    ])?;
    let i1 = Matrix::identity(field.clone(), 1);
    let ones = MatrixTuple::new(vec![i1.clone(), i1.clone(), i1])?;
    let parts = [
        vee_lift(&mk_block(100, 0)?, eps)?,
        vee_lift(&mk_block(50, 1)?, eps)?,
        vee_lift(&mk_block(20, 2)?, eps)?,
        vee_lift(&ones, eps)?,
        vee_lift(&g, eps)?,
    ];
    direct_sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::{apply_congruence, permutation_split};

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn pair_i64(f: &FieldSpec, a: &[&[i64]], b: &[&[i64]]) -> MatrixPair {
        MatrixPair::new(Matrix::from_i64_rows(f, a), Matrix::from_i64_rows(f, b)).unwrap()
    }

    #[test]
    fn j4_scalar_case() {
        let j = build_j4(&q(), 1);
        let expect = Matrix::from_i64_rows(
            &q(),
            &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]],
        );
        assert_eq!(j, expect);
        assert_eq!(j.rank(), 3);
    }

    #[test]
    fn j4_is_nilpotent_of_index_four() {
        for n in 1..=3 {
            let j = build_j4(&q(), n);
            assert_eq!(j.rank(), 3 * n);
            assert!(j.pow(4).unwrap().is_zero());
            assert!(!j.pow(3).unwrap().is_zero());
        }
    }

    #[test]
    fn d_of_scalars() {
        let a = Matrix::from_i64_rows(&q(), &[&[7]]);
        let b = Matrix::from_i64_rows(&q(), &[&[9]]);
        let d = build_d(&a, &b).unwrap();
        let expect = Matrix::diag(
            q(),
            &[q().one(), q().from_i64(7), q().from_i64(9), q().zero()],
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn d_rank_is_additive() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let a = Matrix::from_i64_rows(&f5, &[&[1, 2], &[2, 4]]); // rank 1
        let b = Matrix::from_i64_rows(&f5, &[&[0, 1], &[1, 0]]); // rank 2
        let d = build_d(&a, &b).unwrap();
        assert_eq!(d.rank(), 2 + 1 + 2);
    }

    #[test]
    fn gadget_triple_shape() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let p = pair_i64(&f5, &[&[2]], &[&[3]]);
        let eps = EpsilonSignature::from_i64(&f5, 1, 1, 1);
        let t = build_t(&p, &eps).unwrap();
        assert_eq!(t.rows(), 8);
        // third member's upper-right block is D(2,3) = diag(1,2,3,0)
        let d = build_d(p.a(), p.b()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.member(2).get(i, 4 + j), d.get(i, j));
            }
        }
        // first member has full rank 8n
        assert_eq!(t.member(0).rank(), 8);
    }

    #[test]
    fn gadget_form_types() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let p = pair_i64(&f5, &[&[1, 2], &[0, 3]], &[&[4, 4], &[1, 0]]);
        let eps = EpsilonSignature::from_i64(&f5, 1, -1, 1);
        let t = build_t(&p, &eps).unwrap();
        assert!(crate::tuples::check_form_types(&t, &eps).unwrap());
        assert!(t.member(0).is_symmetric());
        assert!(t.member(1).is_skew_symmetric());
        assert!(t.member(2).is_symmetric());
    }

    #[test]
    fn gadget_rejects_zero_eps() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let p = pair_i64(&f5, &[&[1]], &[&[2]]);
        let eps = EpsilonSignature::from_i64(&f5, 0, 1, 1);
        assert_eq!(build_t(&p, &eps).unwrap_err(), Error::InvalidEpsilon);
    }

    #[test]
    fn witness_scalar_case() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let s = Matrix::from_i64_rows(&f5, &[&[2]]);
        let w = witness_from_similarity(&s).unwrap();
        let expect = Matrix::diag(
            f5.clone(),
            &[3, 3, 3, 3, 2, 2, 2, 2].map(|v| f5.from_i64(v)),
        );
        assert_eq!(w.r, expect);
    }

    #[test]
    fn witness_identity_case() {
        let w = witness_from_similarity(&Matrix::identity(q(), 2)).unwrap();
        assert_eq!(w.r, Matrix::identity(q(), 16));
    }

    #[test]
    fn witness_transports_gadget() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let p = pair_i64(&f7, &[&[1, 2], &[3, 4]], &[&[0, 1], &[5, 6]]);
        let s = Matrix::from_i64_rows(&f7, &[&[1, 3], &[2, 1]]);
        assert!(s.is_invertible());
        let conj = p.conjugate(&s).unwrap();
        for (e1, e2, e3) in [(1, 1, 1), (1, -1, 1), (-1, -1, -1), (1, 1, 0)] {
            let eps = EpsilonSignature::from_i64(&f7, e1, e2, e3);
            let t1 = build_t(&p, &eps).unwrap();
            let t2 = build_t(&conj, &eps).unwrap();
            let w = witness_from_similarity(&s).unwrap();
            assert_eq!(apply_congruence(&t1, &w.r).unwrap(), t2);
        }
    }

    #[test]
    fn intertwiner_on_equal_pairs() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let p = pair_i64(&f3, &[&[1, 2], &[0, 1]], &[&[2, 0], &[1, 1]]);
        let w = intertwiner_similarity(&p, &p).unwrap().unwrap();
        assert!(w.verify(&p, &p));
    }

    #[test]
    fn intertwiner_jordan_vs_transpose() {
        let p1 = pair_i64(&q(), &[&[0, 1], &[0, 0]], &[&[0, 0], &[0, 0]]);
        let p2 = pair_i64(&q(), &[&[0, 0], &[1, 0]], &[&[0, 0], &[0, 0]]);
        let w = intertwiner_similarity(&p1, &p2).unwrap().unwrap();
        assert!(w.verify(&p1, &p2));
    }

    #[test]
    fn intertwiner_trace_obstruction() {
        let p1 = pair_i64(&q(), &[&[0, 0], &[0, 1]], &[&[0, 0], &[0, 0]]);
        let p2 = pair_i64(&q(), &[&[0, 0], &[0, 1]], &[&[1, 0], &[0, 1]]);
        assert_eq!(intertwiner_similarity(&p1, &p2).unwrap(), None);
    }

    #[test]
    fn intertwiner_roundtrip_random_f5() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 5) as i64
        };
        for n in 1..=3usize {
            for _ in 0..5 {
                let a = Matrix::from_fn(f5.clone(), n, n, |_, _| f5.from_i64(next()));
                let b = Matrix::from_fn(f5.clone(), n, n, |_, _| f5.from_i64(next()));
                let s = loop {
                    let c = Matrix::from_fn(f5.clone(), n, n, |_, _| f5.from_i64(next()));
                    if c.is_invertible() {
                        break c;
                    }
                };
                let p1 = MatrixPair::new(a, b).unwrap();
                let p2 = p1.conjugate(&s).unwrap();
                let w = intertwiner_similarity(&p1, &p2).unwrap().expect("similar by construction");
                assert!(w.verify(&p1, &p2));
            }
        }
    }

    #[test]
    fn lemma42_triple_size_and_symmetry() {
        let p = pair_i64(&q(), &[&[1]], &[&[1]]);
        let minus_one = q().from_i64(-1);
        let t = build_t_lemma42(&p, &minus_one).unwrap();
        assert_eq!(t.rows(), 350);
        for m in t.members() {
            assert!(m.is_skew_symmetric());
        }
        let t_sym = build_t_lemma42(&p, &q().one()).unwrap();
        for m in t_sym.members() {
            assert!(m.is_symmetric());
        }
    }

    #[test]
    fn lemma42_component_census() {
        let p = pair_i64(&q(), &[&[1]], &[&[1]]);
        let t = build_t_lemma42(&p, &q().from_i64(-1)).unwrap();
        let comps = permutation_split(&t);
        let two_dim = comps.iter().filter(|c| c.tuple.rows() == 2).count();
        let eight_dim = comps.iter().filter(|c| c.tuple.rows() == 8).count();
        assert_eq!(two_dim, 171);
        assert_eq!(eight_dim, 1);
        assert_eq!(comps.len(), 172);
    }

    #[test]
    fn lemma42_member_ranks() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let p = pair_i64(&f5, &[&[1]], &[&[1]]);
        let t = build_t_lemma42(&p, &f5.from_i64(-1)).unwrap();
        let ranks: Vec<usize> = t.members().iter().map(|m| m.rank()).collect();
        assert_eq!(ranks, vec![210, 108, 48]);
    }
}
