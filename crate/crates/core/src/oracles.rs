//! Brute-force ground-truth deciders over tiny finite fields. Every
//! witness is verified before it is returned, and enumeration order is
//! deterministic, so repeated runs yield identical answers.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::gadgets::{CongruenceWitness, MatrixPair, SimilarityWitness};
use crate::matrix::Matrix;
use crate::tuples::{apply_congruence, apply_substitution, MatrixTuple, SubstitutionMatrix};

/// Cap on the size of exhaustive group enumerations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_group_order: u64,
    pub seed: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_group_order: 10_000_000, seed: 0x5eed_cafe_f00d_0001 }
    }
}

impl EnumerationBudget {
    pub fn with_max(max_group_order: u64) -> Self {
        assert!(max_group_order > 0, "budget must be positive");
        EnumerationBudget { max_group_order, ..Default::default() }
    }
}

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i), None on overflow.
pub fn gl_order(n: usize, q: u64) -> Option<u64> {
    let qn = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(q))?;
    let mut order = 1u64;
    let mut qi = 1u64;
    for _ in 0..n {
        order = order.checked_mul(qn - qi)?;
        qi = qi.checked_mul(q)?;
    }
    Some(order)
}

/// Deterministic stream of every invertible n x n matrix over a finite
/// field, in row-major entry-encoding order. Singular candidates are
/// pruned by incremental rank checks on completed row prefixes.
#[derive(Debug)]
pub struct GlEnumerate {
    field: FieldSpec,
    n: usize,
    q: u64,
    digits: Vec<u64>,
    done: bool,
}

pub fn gl_enumerate(n: usize, field: &FieldSpec, budget: &EnumerationBudget) -> Result<GlEnumerate> {
    let q = field.order().ok_or(Error::InvalidField(
        "exhaustive enumeration needs a finite field".into(),
    ))?;
    match gl_order(n, q) {
        Some(order) if order <= budget.max_group_order => {}
        _ => return Err(Error::DeskScaleExceeded),
    }
    Ok(GlEnumerate { field: field.clone(), n, q, digits: vec![0; n * n], done: n == 0 })
}

impl GlEnumerate {
    fn current(&self) -> Matrix {
        Matrix::from_fn(self.field.clone(), self.n, self.n, |i, j| {
            self.field.element_from_index(self.digits[i * self.n + j])
        })
    }

    /// Smallest r such that the first r+1 rows of the current candidate
    /// are dependent, if any.
    fn first_dependent_row(&self, m: &Matrix) -> Option<usize> {
        for r in 0..self.n {
            let prefix = Matrix::from_fn(self.field.clone(), r + 1, self.n, |i, j| {
                m.get(i, j).clone()
            });
            if prefix.rank() < r + 1 {
                return Some(r);
            }
        }
        None
    }

    /// Advance the odometer at digit index `pos`, zeroing everything
    /// after it. Returns false when the odometer wraps around.
    fn bump(&mut self, pos: usize) -> bool {
        for d in &mut self.digits[pos + 1..] {
            *d = 0;
        }
        let mut i = pos as isize;
        while i >= 0 {
            let u = i as usize;
            self.digits[u] += 1;
            if self.digits[u] < self.q {
                return true;
            }
            self.digits[u] = 0;
            i -= 1;
        }
        false
    }
}

impl Iterator for GlEnumerate {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        loop {
            let m = self.current();
            match self.first_dependent_row(&m) {
                None => {
                    // invertible: emit, then step past the full encoding
                    if !self.bump(self.n * self.n - 1) {
                        self.done = true;
                    }
                    return Some(m);
                }
                Some(r) => {
                    // rows 0..=r dependent: no completion helps, so skip
                    // every candidate sharing this row prefix
                    if !self.bump((r + 1) * self.n - 1) {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// First S in enumeration order with S^-1 (A,B) S = (C,D), else None.
pub fn brute_similar(
    p1: &MatrixPair,
    p2: &MatrixPair,
    budget: &EnumerationBudget,
) -> Result<Option<SimilarityWitness>> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch);
    }
    if p1.size() != p2.size() {
        return Ok(None);
    }
    for s in gl_enumerate(p1.size(), p1.field(), budget)? {
        // S^-1 A S = C iff A S = S C: avoids an inversion per candidate
        if p1.a().mul(&s).unwrap() == s.mul(p2.a()).unwrap()
            && p1.b().mul(&s).unwrap() == s.mul(p2.b()).unwrap()
        {
            let w = SimilarityWitness { s };
            assert!(w.verify(p1, p2), "oracle witness must verify");
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// First Q in enumeration order with Q^T T1 Q = T2, else None.
pub fn brute_congruent(
    t1: &MatrixTuple,
    t2: &MatrixTuple,
    budget: &EnumerationBudget,
) -> Result<Option<CongruenceWitness>> {
    if t1.field() != t2.field() {
        return Err(Error::FieldMismatch);
    }
    if !t1.is_square() || !t2.is_square() {
        return Err(Error::SizeMismatch("congruence oracle needs square members".into()));
    }
    if t1.arity() != t2.arity() || t1.rows() != t2.rows() {
        return Ok(None);
    }
    for q in gl_enumerate(t1.rows(), t1.field(), budget)? {
        if apply_congruence(t1, &q)? == *t2 {
            let w = CongruenceWitness { r: q };
            assert!(w.verify(t1, t2), "oracle witness must verify");
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// True iff some congruence Q and invertible substitution Gamma map T1
/// to T2. The substitution group is enumerated over the prime field
/// (t <= 3 at desk scale).
pub fn brute_orbit_iso(
    t1: &MatrixTuple,
    t2: &MatrixTuple,
    budget: &EnumerationBudget,
) -> Result<bool> {
    if t1.field() != t2.field() {
        return Err(Error::FieldMismatch);
    }
    if !t1.is_square() || !t2.is_square() {
        return Err(Error::SizeMismatch("orbit oracle needs square members".into()));
    }
    if t1.arity() != t2.arity() || t1.rows() != t2.rows() {
        return Ok(false);
    }
    let subs: Vec<SubstitutionMatrix> = gl_enumerate(t1.arity(), t1.field(), budget)?
        .map(|g| SubstitutionMatrix::new(g).expect("enumerated matrices are invertible"))
        .collect();
    for q in gl_enumerate(t1.rows(), t1.field(), budget)? {
        let congruent = apply_congruence(t1, &q)?;
        for g in &subs {
            if apply_substitution(&congruent, g)? == *t2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
