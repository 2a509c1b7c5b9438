//! Complete congruence invariants and canonical forms for pairs of
//! skew-symmetric matrices.
//!
//! A pair is congruent to a direct sum of ▽-lifted blocks
//! (I_m, J_m(lambda))^v, (J_m(0), I_m)^v and (F_r, G_r)^v, unique up to
//! permutation of summands. The invariants are the finite elementary
//! divisors (irreducible powers, halved because the lift duplicates
//! them), the infinite divisors, and the column minimal indices of the
//! pencil.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::mobius::{Mobius, PointConfiguration, ProjPoint};
use crate::poly::{factor, Polynomial};
use crate::smith::{smith_polymatrix, PolyMatrix};
use crate::tuples::{apply_congruence, apply_substitution, vee_lift, MatrixTuple, SubstitutionMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPair {
    a: Matrix,
    b: Matrix,
}

impl SkewPair {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::SizeMismatch("pair members differ in size".into()));
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if !a.is_skew_symmetric() || !b.is_skew_symmetric() {
            return Err(Error::NotSkew);
        }
        Ok(SkewPair { a, b })
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

    pub fn as_tuple(&self) -> MatrixTuple {
        MatrixTuple::new(vec![self.a.clone(), self.b.clone()]).expect("pair is a valid tuple")
    }

    /// (Q^T A Q, Q^T B Q)
    pub fn congruence(&self, q: &Matrix) -> Result<SkewPair> {
        let t = apply_congruence(&self.as_tuple(), q)?;
        SkewPair::new(t.member(0).clone(), t.member(1).clone())
    }

    /// (aA + bB, cA + dB) for an invertible 2x2 substitution.
    pub fn substitution(&self, g: &SubstitutionMatrix) -> Result<SkewPair> {
        let t = apply_substitution(&self.as_tuple(), g)?;
        SkewPair::new(t.member(0).clone(), t.member(1).clone())
    }
}

/// Complete congruence invariant of a skew pair. Finite divisors are
/// (monic irreducible, exponent) sorted by (degree, coefficients,
/// exponent); infinite divisors and minimal indices are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPencilInvariants {
    pub field: FieldSpec,
    pub finite: Vec<(Polynomial, usize)>,
    pub infinite: Vec<usize>,
    pub minimal: Vec<usize>,
}

impl SkewPencilInvariants {
    pub fn new(
        field: FieldSpec,
        mut finite: Vec<(Polynomial, usize)>,
        mut infinite: Vec<usize>,
        mut minimal: Vec<usize>,
    ) -> Self {
        finite.sort_by(|a, b| a.0.cmp_order(&b.0).then(a.1.cmp(&b.1)));
        infinite.sort_unstable();
        minimal.sort_unstable();
        SkewPencilInvariants { field, finite, infinite, minimal }
    }

    /// Size of the pair these invariants describe:
    /// 2*sum(deg q * m) + 2*sum(m) + sum(2r - 1).
    pub fn total_size(&self) -> usize {
        let fin: usize = self
            .finite
            .iter()
            .map(|(q, m)| q.degree().unwrap_or(0) * m)
            .sum();
        let inf: usize = self.infinite.iter().sum();
        let min: usize = self.minimal.iter().map(|r| 2 * r - 1).sum();
        2 * fin + 2 * inf + min
    }

    /// True iff every finite divisor is a power of a linear factor.
    pub fn splits(&self) -> bool {
        self.finite.iter().all(|(q, _)| q.degree() == Some(1))
    }

    /// The labeled eigenvalue configuration on the projective line:
    /// finite divisors contribute their root (or the irreducible itself),
    /// infinite divisors contribute the point at infinity; each point
    /// carries its multiset of exponents.
    pub fn point_configuration(&self) -> Result<PointConfiguration> {
        let mut by_point: Vec<(ProjPoint, Vec<usize>)> = vec![];
        let mut push = |p: ProjPoint, m: usize| {
            if let Some(e) = by_point.iter_mut().find(|(q, _)| *q == p) {
                e.1.push(m);
            } else {
                by_point.push((p, vec![m]));
            }
        };
        for (q, m) in &self.finite {
            let p = match q.root_if_linear() {
                Some(l) => ProjPoint::Finite(l),
                None => ProjPoint::Irreducible(q.clone()),
            };
            push(p, *m);
        }
        for m in &self.infinite {
            push(ProjPoint::Infinity, *m);
        }
        PointConfiguration::new(self.field.clone(), by_point)
    }
}

/// The (m-1) x m pair F_m (ones on (i,i)) and G_m (ones on (i,i+1));
/// for m = 1 both are the empty 0 x 1 matrix.
pub fn build_fg(field: &FieldSpec, m: usize) -> (Matrix, Matrix) {
    assert!(m >= 1, "F_m/G_m need m >= 1");
    let mut f = Matrix::zero(field.clone(), m - 1, m);
    let mut g = Matrix::zero(field.clone(), m - 1, m);
    for i in 0..m - 1 {
        f.set(i, i, field.one());
        g.set(i, i + 1, field.one());
    }
    (f, g)
}

fn lift_pair(a: Matrix, b: Matrix) -> Result<SkewPair> {
    let field = a.field().clone();
    let t = MatrixTuple::new(vec![a, b])?;
    let lifted = vee_lift(&t, &field.from_i64(-1))?;
    SkewPair::new(lifted.member(0).clone(), lifted.member(1).clone())
}

/// Direct sum of ▽-lifted canonical blocks in the deterministic order:
/// finite divisors (Jordan blocks for linear factors, companion blocks
/// otherwise), then infinite divisors, then minimal indices.
pub fn emit_canonical_pair(inv: &SkewPencilInvariants) -> Result<SkewPair> {
    let field = inv.field.clone();
    let mut parts: Vec<SkewPair> = vec![];
    for (q, m) in &inv.finite {
        let d = q.degree().ok_or_else(|| Error::Internal("zero divisor polynomial".into()))?;
        let block = if d == 1 {
            let lambda = q.root_if_linear().ok_or_else(|| Error::Internal("non-monic divisor".into()))?;
            Matrix::jordan_block(&field, *m, &lambda)
        } else {
            // Frobenius block: companion of q^m
            let mut p = Polynomial::one(field.clone());
            for _ in 0..*m {
                p = p.mul(q);
            }
            p.companion_matrix()?
        };
        let n = block.rows();
        parts.push(lift_pair(Matrix::identity(field.clone(), n), block)?);
    }
    for m in &inv.infinite {
        let j = Matrix::jordan_block(&field, *m, &field.zero());
        parts.push(lift_pair(j, Matrix::identity(field.clone(), *m))?);
    }
    for r in &inv.minimal {
        let (f, g) = build_fg(&field, *r);
        parts.push(lift_pair(f, g)?);
    }
    if parts.is_empty() {
        return SkewPair::new(Matrix::zero(field.clone(), 0, 0), Matrix::zero(field, 0, 0));
    }
    let mut a = parts[0].a().clone();
    let mut b = parts[0].b().clone();
    for p in &parts[1..] {
        a = a.direct_sum(p.a())?;
        b = b.direct_sum(p.b())?;
    }
    SkewPair::new(a, b)
}

/// Halve a multiset of (divisor, exponent) items, failing loudly on odd
/// multiplicities (the ▽ lift duplicates every divisor).
fn halve_multiset(items: Vec<(Polynomial, usize)>) -> Result<Vec<(Polynomial, usize)>> {
    let mut counted: Vec<((Polynomial, usize), usize)> = vec![];
    for it in items {
        if let Some(e) = counted.iter_mut().find(|(k, _)| *k == it) {
            e.1 += 1;
        } else {
            counted.push((it, 1));
        }
    }
    let mut out = vec![];
    for ((q, m), c) in counted {
        if c % 2 != 0 {
            return Err(Error::Internal(format!(
                "elementary divisor ({q})^{m} has odd multiplicity {c} in a skew pencil"
            )));
        }
        for _ in 0..c / 2 {
            out.push((q.clone(), m));
        }
    }
    Ok(out)
}

/// Elementary divisors (irreducible powers) of all invariant factors.
fn elementary_divisors(factors: &[Polynomial]) -> Result<Vec<(Polynomial, usize)>> {
    let mut out = vec![];
    for d in factors {
        if d.degree() == Some(0) {
            continue;
        }
        for (q, m) in factor(d)? {
            out.push((q, m));
        }
    }
    Ok(out)
}

/// The complete congruence invariant of a skew pair.
pub fn pencil_invariants(p: &SkewPair) -> Result<SkewPencilInvariants> {
    let field = p.field().clone();
    let n = p.size();
    // finite divisors: elementary divisors of x*A - B
    let pen_fin = PolyMatrix::linear_pencil(&p.b().neg(), p.a())?;
    let smith_fin = smith_polymatrix(&pen_fin);
    let finite = halve_multiset(elementary_divisors(&smith_fin.invariant_factors)?)?;
    // infinite divisors: x-power elementary divisors of x*B - A
    let pen_inf = PolyMatrix::linear_pencil(&p.a().neg(), p.b())?;
    let smith_inf = smith_polymatrix(&pen_inf);
    let x = Polynomial::x(field.clone());
    let mut inf_raw = vec![];
    for (q, m) in elementary_divisors(&smith_inf.invariant_factors)? {
        if q == x {
            inf_raw.push((q, m));
        }
    }
    let infinite: Vec<usize> = halve_multiset(inf_raw)?.into_iter().map(|(_, m)| m).collect();
    // column minimal indices from kernel dimensions of the stripe
    // matrices S_k (solutions of (A + xB) v(x) = 0 with deg v <= k)
    let normal_rank = smith_fin.invariant_factors.len();
    let expected = n - normal_rank;
    let mut minimal = vec![];
    let mut n_prev2 = 0usize; // N_{k-2}
    let mut n_prev = 0usize; // N_{k-1}
    let mut k = 0usize;
    while minimal.len() < expected {
        if k > n {
            return Err(Error::Internal("minimal index search exceeded the pair size".into()));
        }
        let stripe = Matrix::from_fn(field.clone(), (k + 2) * n, (k + 1) * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            if bi == bj {
                p.a().get(ii, jj).clone()
            } else if bi == bj + 1 {
                p.b().get(ii, jj).clone()
            } else {
                field.zero()
            }
        });
        let nk = (k + 1) * n - stripe.rank();
        let count = (nk - n_prev).saturating_sub(n_prev - n_prev2);
        for _ in 0..count {
            minimal.push(k + 1); // index epsilon = k is reported as r = k + 1
        }
        n_prev2 = n_prev;
        n_prev = nk;
        k += 1;
    }
    let inv = SkewPencilInvariants::new(field, finite, infinite, minimal);
    if inv.total_size() != n {
        return Err(Error::Internal(format!(
            "invariant size accounting failed: {} vs pair size {n}",
            inv.total_size()
        )));
    }
    Ok(inv)
}

/// True iff the pairs have identical invariants.
pub fn pairs_congruent(p1: &SkewPair, p2: &SkewPair) -> Result<bool> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch);
    }
    if p1.size() != p2.size() {
        return Ok(false);
    }
    Ok(pencil_invariants(p1)? == pencil_invariants(p2)?)
}

/// Transport the invariants along the substitution
/// (A, B) -> (aA + bB, cA + dB): each eigenvalue point moves by
/// lambda -> (c + d*lambda)/(a + b*lambda) projectively; block sizes and
/// minimal indices are untouched.
pub fn substitution_action_on_invariants(
    inv: &SkewPencilInvariants,
    m: &Mobius,
) -> Result<SkewPencilInvariants> {
    let field = inv.field.clone();
    if m.field() != &field {
        return Err(Error::FieldMismatch);
    }
    let mut finite = vec![];
    let mut infinite = vec![];
    for (q, e) in &inv.finite {
        let p = match q.root_if_linear() {
            Some(l) => ProjPoint::Finite(l),
            None => ProjPoint::Irreducible(q.clone()),
        };
        match m.apply_point(&p) {
            ProjPoint::Finite(mu) => {
                finite.push((Polynomial::linear_from_root(field.clone(), &mu), *e))
            }
            ProjPoint::Irreducible(r) => finite.push((r, *e)),
            ProjPoint::Infinity => infinite.push(*e),
        }
    }
    for e in &inv.infinite {
        match m.apply_point(&ProjPoint::Infinity) {
            ProjPoint::Finite(mu) => {
                finite.push((Polynomial::linear_from_root(field.clone(), &mu), *e))
            }
            ProjPoint::Infinity => infinite.push(*e),
            ProjPoint::Irreducible(_) => unreachable!("image of a rational point is rational"),
        }
    }
    Ok(SkewPencilInvariants::new(field, finite, infinite, inv.minimal.clone()))
}

/// The Möbius map induced on eigenvalue configurations by a 2x2
/// substitution matrix [[a, b], [c, d]].
pub fn mobius_of_substitution(g: &SubstitutionMatrix) -> Result<Mobius> {
    let gamma = g.gamma();
    if gamma.rows() != 2 {
        return Err(Error::ArityMismatch);
    }
    Mobius::new(
        gamma.field().clone(),
        gamma.get(0, 0).clone(),
        gamma.get(0, 1).clone(),
        gamma.get(1, 0).clone(),
        gamma.get(1, 1).clone(),
    )
}
