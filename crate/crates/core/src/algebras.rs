//! Structure-constant semialgebras, the bridge between matrix tuples and
//! two-step nilpotent algebras: building an algebra from a tuple,
//! recovering the tuple from an algebra, adjoining an identity,
//! classifying Lie algebras with commutator dimension 1 or 2, and
//! emitting p-group presentations.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::mobius::{mobius_canonicalize, pgl2_enumerate, Mobius, PointConfiguration, ProjPoint};
use crate::pencil::{emit_canonical_pair, pencil_invariants, SkewPair, SkewPencilInvariants};
use crate::poly::Polynomial;
use crate::tuples::MatrixTuple;

/// Multiplication table of an n-dimensional (semi)algebra: table[i][j] is
/// the coordinate vector of the basis product e_i e_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    field: FieldSpec,
    dim: usize,
    table: Vec<Vec<Vec<FieldElement>>>,
}

impl StructureConstants {
    pub fn new(field: FieldSpec, dim: usize, table: Vec<Vec<Vec<FieldElement>>>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::SizeMismatch("structure table must be dim x dim".into()));
        }
        for row in &table {
            for v in row {
                if v.len() != dim {
                    return Err(Error::SizeMismatch("product vectors must have length dim".into()));
                }
            }
        }
        Ok(StructureConstants { field, dim, table })
    }

    pub fn zero_algebra(field: FieldSpec, dim: usize) -> Self {
        let z = vec![field.zero(); dim];
        StructureConstants { field, dim, table: vec![vec![z; dim]; dim] }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &Vec<Vec<Vec<FieldElement>>> {
        &self.table
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vec<FieldElement> {
        &self.table[i][j]
    }

    /// Bilinear extension of the table to arbitrary coordinate vectors.
    pub fn product(&self, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for i in 0..self.dim {
            if f.is_zero(&u[i]) {
                continue;
            }
            for j in 0..self.dim {
                if f.is_zero(&v[j]) {
                    continue;
                }
                let c = f.mul(&u[i], &v[j]);
                for k in 0..self.dim {
                    out[k] = f.add(&out[k], &f.mul(&c, &self.table[i][j][k]));
                }
            }
        }
        out
    }

    /// Structure constants in the new basis whose vectors are the columns
    /// of `p` (expressed in the old basis).
    pub fn change_basis(&self, p: &Matrix) -> Result<StructureConstants> {
        if !p.is_square() || p.rows() != self.dim {
            return Err(Error::SizeMismatch("basis change must be dim x dim".into()));
        }
        let pinv = p.inverse()?;
        let f = self.field.clone();
        let n = self.dim;
        let cols: Vec<Vec<FieldElement>> = (0..n).map(|c| p.column(c)).collect();
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod_old = self.product(&cols[i], &cols[j]);
                for k in 0..n {
                    let mut acc = f.zero();
                    for l in 0..n {
                        acc = f.add(&acc, &f.mul(pinv.get(k, l), &prod_old[l]));
                    }
                    table[i][j][k] = acc;
                }
            }
        }
        StructureConstants::new(f, n, table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemialgebraReport {
    pub cube_zero: bool,
    pub square_dim: usize,
    pub commutative: bool,
    pub anticommutative: bool,
}

/// dim of the span of all basis products, whether all double products
/// vanish, and the (anti)commutativity flags.
pub fn check_semialgebra(r: &StructureConstants) -> SemialgebraReport {
    let f = r.field().clone();
    let n = r.dim();
    // square: span of products
    let prods = Matrix::from_fn(f.clone(), n * n, n, |row, k| r.basis_product(row / n, row % n)[k].clone());
    let square_dim = prods.rank();
    let mut cube_zero = true;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ek: Vec<FieldElement> =
                    (0..n).map(|l| if l == k { f.one() } else { f.zero() }).collect();
                let left = r.product(r.basis_product(i, j), &ek);
                let right = r.product(&ek, r.basis_product(i, j));
                if left.iter().any(|c| !f.is_zero(c)) || right.iter().any(|c| !f.is_zero(c)) {
                    cube_zero = false;
                    break 'outer;
                }
            }
        }
    }
    let mut commutative = true;
    let mut anticommutative = true;
    for i in 0..n {
        for j in 0..n {
            let pij = r.basis_product(i, j);
            let pji = r.basis_product(j, i);
            for k in 0..n {
                if pij[k] != pji[k] {
                    commutative = false;
                }
                if pij[k] != f.neg(&pji[k]) {
                    anticommutative = false;
                }
            }
            if i == j {
                // anticommutativity also requires alternating squares
                if pij.iter().any(|c| !f.is_zero(c)) {
                    anticommutative = false;
                }
            }
        }
    }
    SemialgebraReport { cube_zero, square_dim, commutative, anticommutative }
}

fn tuple_is_linearly_independent(t: &MatrixTuple) -> bool {
    let f = t.field().clone();
    let (rows, cols, arity) = (t.rows(), t.cols(), t.arity());
    let stacked = Matrix::from_fn(f, arity, rows * cols, |m, e| {
        t.member(m).get(e / cols, e % cols).clone()
    });
    stacked.rank() == arity
}

/// The (s + t)-dimensional semialgebra of a tuple (A_1, ..., A_t) of s x s
/// matrices: basis e_1..e_t (spanning the square) then f_1..f_s, with
/// e.anything = 0 and f_i f_j = sum_k A_k[i][j] e_k.
pub fn semialgebra_from_tuple(t: &MatrixTuple) -> Result<StructureConstants> {
    if !t.is_square() {
        return Err(Error::SizeMismatch("tuple members must be square".into()));
    }
    if !tuple_is_linearly_independent(t) {
        return Err(Error::LinearlyDependent);
    }
    let all_sym = t.members().iter().all(|m| m.is_symmetric());
    let all_skew = t.members().iter().all(|m| m.is_skew_symmetric());
    if !all_sym && !all_skew {
        return Err(Error::MixedSymmetryTypes);
    }
    let f = t.field().clone();
    let (s, tt) = (t.rows(), t.arity());
    let n = s + tt;
    let mut r = StructureConstants::zero_algebra(f.clone(), n);
    for i in 0..s {
        for j in 0..s {
            for k in 0..tt {
                r.table[tt + i][tt + j][k] = t.member(k).get(i, j).clone();
            }
        }
    }
    Ok(r)
}

/// Recover the Lemma-position tuple of an algebra with R^3 = 0 and
/// dim R^2 = t >= 1: choose a basis of R^2, complete it to a basis of R,
/// and read the structure constants off the complementary part. Returns
/// the tuple and the basis-change matrix (columns = new basis in old
/// coordinates).
pub fn tuple_from_semialgebra(r: &StructureConstants) -> Result<(MatrixTuple, Matrix)> {
    let report = check_semialgebra(r);
    if !report.cube_zero {
        return Err(Error::RadicalCubeNonzero);
    }
    if !report.commutative && !report.anticommutative {
        return Err(Error::NotHomogeneousSymmetry);
    }
    let t = report.square_dim;
    if t == 0 {
        return Err(Error::WrongCommutatorDim(0));
    }
    let f = r.field().clone();
    let n = r.dim();
    // reduced echelon basis of R^2
    let prods = Matrix::from_fn(f.clone(), n * n, n, |row, k| r.basis_product(row / n, row % n)[k].clone());
    let (rank, rref, _) = prods.rank_rref();
    debug_assert_eq!(rank, t);
    let mut basis: Vec<Vec<FieldElement>> = (0..t).map(|i| (0..n).map(|k| rref.get(i, k).clone()).collect()).collect();
    // complete with standard basis vectors, keeping the span growing
    let mut current = Matrix::from_fn(f.clone(), t, n, |i, k| basis[i][k].clone());
    for std_idx in 0..n {
        if basis.len() == n {
            break;
        }
        let mut cand: Vec<Vec<FieldElement>> = basis.clone();
        let v: Vec<FieldElement> =
            (0..n).map(|k| if k == std_idx { f.one() } else { f.zero() }).collect();
        cand.push(v.clone());
        let cm = Matrix::from_fn(f.clone(), cand.len(), n, |i, k| cand[i][k].clone());
        if cm.rank() == cand.len() {
            basis.push(v);
            current = cm;
        }
    }
    let _ = current;
    if basis.len() != n {
        return Err(Error::Internal("basis completion failed".into()));
    }
    let p = Matrix::from_fn(f.clone(), n, n, |row, col| basis[col][row].clone());
    let rn = r.change_basis(&p)?;
    // in the new basis, the first t vectors span R^2 and annihilate
    // everything; read A_k[i][j] from f_i f_j
    let s = n - t;
    let members: Vec<Matrix> = (0..t)
        .map(|k| Matrix::from_fn(f.clone(), s, s, |i, j| rn.basis_product(t + i, t + j)[k].clone()))
        .collect();
    for k in 0..t {
        for i in 0..n {
            for j in 0..n {
                if (i < t || j < t) && rn.basis_product(i, j).iter().any(|c| !f.is_zero(c)) {
                    return Err(Error::RadicalCubeNonzero);
                }
                let _ = k;
            }
        }
    }
    // f-products must have no component outside R^2
    for i in 0..s {
        for j in 0..s {
            let v = rn.basis_product(t + i, t + j);
            if v[t..].iter().any(|c| !f.is_zero(c)) {
                return Err(Error::Internal("product escaped the square".into()));
            }
        }
    }
    let tuple = MatrixTuple::new(members)?;
    if !tuple_is_linearly_independent(&tuple) {
        return Err(Error::Internal("extracted members are dependent despite square dimension".into()));
    }
    Ok((tuple, p))
}

/// The unital commutative associative algebra F*1 + R for commutative R
/// with R^3 = 0: (a*1 + u)(b*1 + v) = ab*1 + (av + bu + uv). Basis 0 is
/// the identity.
pub fn adjoin_identity(r: &StructureConstants) -> Result<StructureConstants> {
    let report = check_semialgebra(r);
    if !report.commutative {
        return Err(Error::NotCommutative);
    }
    if !report.cube_zero {
        return Err(Error::RadicalCubeNonzero);
    }
    let f = r.field().clone();
    let n = r.dim();
    let mut out = StructureConstants::zero_algebra(f.clone(), n + 1);
    out.table[0][0][0] = f.one();
    for i in 0..n {
        out.table[0][i + 1][i + 1] = f.one();
        out.table[i + 1][0][i + 1] = f.one();
        for j in 0..n {
            for k in 0..n {
                out.table[i + 1][j + 1][k + 1] = r.basis_product(i, j)[k].clone();
            }
        }
    }
    verify_associative(&out)?;
    Ok(out)
}

fn verify_associative(a: &StructureConstants) -> Result<()> {
    let f = a.field().clone();
    let n = a.dim();
    let unit = |i: usize| -> Vec<FieldElement> {
        (0..n).map(|l| if l == i { f.one() } else { f.zero() }).collect()
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = a.product(a.basis_product(i, j), &unit(k));
                let right = a.product(&unit(i), a.basis_product(j, k));
                if left != right {
                    return Err(Error::Internal(format!(
                        "associativity fails on basis triple ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Complete isomorphism invariant of a two-step nilpotent Lie algebra
/// with commutator dimension 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalLabel {
    /// dim L^2 = 1: the pair (p, q) with p + 2q = dim L.
    Dim1 { p: usize, q: usize },
    /// dim L^2 = 2: minimal indices plus the canonicalized eigenvalue
    /// configuration; `splits` is false when the divisors stay irreducible
    /// of degree >= 2 over the base field (Frobenius data).
    Dim2 {
        minimal: Vec<usize>,
        configuration: PointConfiguration,
        splits: bool,
    },
}

const PGL2_BUDGET: u64 = 1_000_000;

fn canonicalize_configuration(
    config: &PointConfiguration,
    splits: bool,
) -> Result<(PointConfiguration, bool)> {
    if splits {
        let (canon, _) = mobius_canonicalize(config)?;
        return Ok((canon, true));
    }
    // non-split data: exhaust the projective group over a finite field
    let field = config.field().clone();
    if field.order().is_none() {
        return Err(Error::DeskScaleExceeded);
    }
    let group = pgl2_enumerate(&field, PGL2_BUDGET)?;
    let mut best: Option<PointConfiguration> = None;
    for g in &group {
        let image = config.apply(g);
        match &best {
            Some(b) if b.cmp_encoding(&image) != std::cmp::Ordering::Greater => {}
            _ => best = Some(image),
        }
    }
    Ok((best.expect("nonempty group"), false))
}

fn label_from_invariants(inv: &SkewPencilInvariants) -> Result<CanonicalLabel> {
    let config = inv.point_configuration()?;
    let (canonical, splits) = canonicalize_configuration(&config, inv.splits())?;
    Ok(CanonicalLabel::Dim2 { minimal: inv.minimal.clone(), configuration: canonical, splits })
}

/// Classify a two-step nilpotent Lie algebra with dim L^2 in {1, 2}.
pub fn lie_classify(l: &StructureConstants) -> Result<CanonicalLabel> {
    let report = check_semialgebra(l);
    if !report.anticommutative {
        return Err(Error::NotLie("multiplication is not anticommutative".into()));
    }
    if !report.cube_zero {
        return Err(Error::NotLie("the commutator is not central (L^3 != 0)".into()));
    }
    let t = report.square_dim;
    if t != 1 && t != 2 {
        return Err(Error::WrongCommutatorDim(t));
    }
    let (tuple, _) = tuple_from_semialgebra(l)?;
    match t {
        1 => {
            let a = tuple.member(0);
            let rank = a.rank();
            debug_assert_eq!(rank % 2, 0, "skew matrices have even rank");
            let q = rank / 2;
            let p = l.dim() - 2 * q;
            Ok(CanonicalLabel::Dim1 { p, q })
        }
        2 => {
            let pair = SkewPair::new(tuple.member(0).clone(), tuple.member(1).clone())?;
            let inv = pencil_invariants(&pair)?;
            label_from_invariants(&inv)
        }
        _ => unreachable!(),
    }
}

/// True iff the canonical labels coincide.
pub fn lie_isomorphic(l1: &StructureConstants, l2: &StructureConstants) -> Result<bool> {
    Ok(lie_classify(l1)? == lie_classify(l2)?)
}

/// The Eq-(wd) degenerate shape: at most one eigenvalue point, every
/// block size 1 and every minimal index 1. Exactly these labels force the
/// emitted pair to be linearly dependent.
fn is_degenerate_dim2(minimal: &[usize], configuration: &PointConfiguration) -> bool {
    configuration.entries().len() <= 1
        && configuration.entries().iter().all(|(_, b)| b.iter().all(|&m| m == 1))
        && minimal.iter().all(|&r| r == 1)
}

/// Build the canonical algebra carrying a label.
pub fn emit_canonical_algebra(label: &CanonicalLabel, field: &FieldSpec) -> Result<StructureConstants> {
    match label {
        CanonicalLabel::Dim1 { p, q } => {
            if *p == 0 {
                // the central coordinate lives inside the 0_p block
                return Err(Error::UnrealizableLabel);
            }
            let s = p + 2 * q - 1;
            let mut a = Matrix::zero(field.clone(), s, s);
            for blk in 0..*q {
                a.set(2 * blk, 2 * blk + 1, field.one());
                a.set(2 * blk + 1, 2 * blk, field.from_i64(-1));
            }
            semialgebra_from_tuple(&MatrixTuple::new(vec![a])?)
        }
        CanonicalLabel::Dim2 { minimal, configuration, splits: _ } => {
            if is_degenerate_dim2(minimal, configuration) {
                return Err(Error::UnrealizableLabel);
            }
            // relocate infinity if present: x -> 1/(x - c) with c the
            // encoding-smallest element outside the support
            let mut config = configuration.clone();
            let has_infinity = config.entries().iter().any(|(p, _)| *p == ProjPoint::Infinity);
            if has_infinity {
                let c = smallest_free_element(&config)?;
                let m = Mobius::new(
                    field.clone(),
                    field.neg(&c),
                    field.one(),
                    field.one(),
                    field.zero(),
                )?;
                config = config.apply(&m);
            }
            let mut finite: Vec<(Polynomial, usize)> = vec![];
            for (point, bundle) in config.entries() {
                let poly = match point {
                    ProjPoint::Finite(l) => Polynomial::linear_from_root(field.clone(), l),
                    ProjPoint::Irreducible(p) => p.clone(),
                    ProjPoint::Infinity => unreachable!("infinity was relocated"),
                };
                for &m in bundle {
                    finite.push((poly.clone(), m));
                }
            }
            let inv = SkewPencilInvariants::new(field.clone(), finite, vec![], minimal.clone());
            let pair = emit_canonical_pair(&inv)?;
            let tuple = MatrixTuple::new(vec![pair.a().clone(), pair.b().clone()])?;
            semialgebra_from_tuple(&tuple)
        }
    }
}

fn smallest_free_element(config: &PointConfiguration) -> Result<FieldElement> {
    let field = config.field().clone();
    let used: Vec<&FieldElement> = config
        .entries()
        .iter()
        .filter_map(|(p, _)| match p {
            ProjPoint::Finite(l) => Some(l),
            _ => None,
        })
        .collect();
    match field.order() {
        Some(q) => {
            for idx in 0..q {
                let cand = field.element_from_index(idx);
                if !used.contains(&&cand) {
                    return Ok(cand);
                }
            }
            Err(Error::DeskScaleExceeded)
        }
        None => {
            let mut v: i64 = 0;
            loop {
                let cand = field.from_i64(v);
                if !used.contains(&&cand) {
                    return Ok(cand);
                }
                v += 1;
            }
        }
    }
}

/// GAP-compatible presentation of the finite p-group attached to a
/// linearly independent skew tuple over a prime field: t central
/// generators a and n generators b with a_l^p = b_i^p = 1,
/// [a,a] = [a,b] = 1 and [b_i, b_j] = prod_k a_k^(A_k[i][j]).
pub fn pgroup_presentation(t: &MatrixTuple) -> Result<String> {
    let field = t.field().clone();
    let p = match &field {
        FieldSpec::FiniteField { p, k: 1, .. } => *p,
        _ => return Err(Error::NotPrimeField),
    };
    if !t.is_square() || !t.members().iter().all(|m| m.is_skew_symmetric()) {
        return Err(Error::NotSkew);
    }
    if !tuple_is_linearly_independent(t) {
        return Err(Error::LinearlyDependent);
    }
    let tt = t.arity();
    let n = t.rows();
    let mut names: Vec<String> = (1..=tt).map(|l| format!("a{l}")).collect();
    names.extend((1..=n).map(|i| format!("b{i}")));
    let gen_ref = |idx: usize| format!("F.{}", idx + 1);
    let quoted: Vec<String> = names.iter().map(|s| format!("\"{s}\"")).collect();
    let mut out = String::new();
    out.push_str(&format!("F := FreeGroup( {} );;\n", quoted.join(", ")));
    out.push_str("rels := [\n");
    let mut rels: Vec<String> = vec![];
    for l in 0..tt {
        rels.push(format!("  {}^{p}", gen_ref(l)));
    }
    for i in 0..n {
        rels.push(format!("  {}^{p}", gen_ref(tt + i)));
    }
    for l in 0..tt {
        for r in l + 1..tt {
            rels.push(format!("  Comm( {}, {} )", gen_ref(l), gen_ref(r)));
        }
    }
    for l in 0..tt {
        for i in 0..n {
            rels.push(format!("  Comm( {}, {} )", gen_ref(l), gen_ref(tt + i)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut word = String::new();
            for k in 0..tt {
                let e = field.to_u64(t.member(k).get(i, j)).ok_or(Error::NotPrimeField)?;
                if e != 0 {
                    word.push_str(&format!(" * {}^-{e}", gen_ref(k)));
                }
            }
            rels.push(format!("  Comm( {}, {} ){word}", gen_ref(tt + i), gen_ref(tt + j)));
        }
    }
    out.push_str(&rels.join(",\n"));
    out.push_str("\n];;\n");
    out.push_str("G := F / rels;;\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::SubstitutionMatrix;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn k2(f: &FieldSpec) -> Matrix {
        Matrix::from_i64_rows(f, &[&[0, 1], &[-1, 0]])
    }

    fn heisenberg(f: &FieldSpec) -> StructureConstants {
        semialgebra_from_tuple(&MatrixTuple::new(vec![k2(f)]).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_construction() {
        let h = heisenberg(&q());
        assert_eq!(h.dim(), 3);
        // [f1, f2] = e1: basis order e1, f1, f2
        assert_eq!(h.basis_product(1, 2), &vec![q().one(), q().zero(), q().zero()]);
        let rep = check_semialgebra(&h);
        assert_eq!(
            rep,
            SemialgebraReport { cube_zero: true, square_dim: 1, commutative: false, anticommutative: true }
        );
    }

    #[test]
    fn dependent_tuple_rejected() {
        let k = k2(&q());
        let t = MatrixTuple::new(vec![k.clone(), k]).unwrap();
        assert_eq!(semialgebra_from_tuple(&t).unwrap_err(), Error::LinearlyDependent);
    }

    #[test]
    fn symmetric_singleton() {
        let one = Matrix::from_i64_rows(&q(), &[&[1]]);
        let r = semialgebra_from_tuple(&MatrixTuple::new(vec![one]).unwrap()).unwrap();
        assert_eq!(r.dim(), 2);
        // f1 f1 = e1
        assert_eq!(r.basis_product(1, 1), &vec![q().one(), q().zero()]);
        let rep = check_semialgebra(&r);
        assert!(rep.commutative && rep.cube_zero);
    }

    #[test]
    fn check_reports() {
        let zero = StructureConstants::zero_algebra(q(), 2);
        assert_eq!(
            check_semialgebra(&zero),
            SemialgebraReport { cube_zero: true, square_dim: 0, commutative: true, anticommutative: true }
        );
        // F[x]/(x^3) radical: basis a, a^2 with a*a = a^2
        let mut r = StructureConstants::zero_algebra(q(), 2);
        r.table[0][0][1] = q().one();
        let rep = check_semialgebra(&r);
        assert_eq!(
            rep,
            SemialgebraReport { cube_zero: true, square_dim: 1, commutative: true, anticommutative: false }
        );
    }

    #[test]
    fn tuple_roundtrip_in_lemma_position() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let a = Matrix::from_i64_rows(&f5, &[&[0, 1, 0], &[-1, 0, 2], &[0, -2, 0]]);
        let b = Matrix::from_i64_rows(&f5, &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]);
        let t = MatrixTuple::new(vec![a, b]).unwrap();
        let r = semialgebra_from_tuple(&t).unwrap();
        let (t2, p) = tuple_from_semialgebra(&r).unwrap();
        assert_eq!(t2, t);
        assert_eq!(p, Matrix::identity(f5, 5));
    }

    #[test]
    fn tuple_recovery_after_basis_change() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let t = MatrixTuple::new(vec![k2(&f7)]).unwrap();
        let r = semialgebra_from_tuple(&t).unwrap();
        let p = Matrix::from_i64_rows(&f7, &[&[1, 2, 0], &[1, 1, 3], &[0, 5, 1]]);
        assert!(p.is_invertible());
        let moved = r.change_basis(&p).unwrap();
        let (t2, basis) = tuple_from_semialgebra(&moved).unwrap();
        // the recovered data reproduces the algebra through its basis
        let rebuilt = semialgebra_from_tuple(&t2).unwrap();
        assert_eq!(moved.change_basis(&basis).unwrap(), rebuilt);
    }

    #[test]
    fn radical_cube_violation() {
        // a*a = b with b*a != 0 gives R^3 != 0
        let mut r = StructureConstants::zero_algebra(q(), 2);
        r.table[0][0][1] = q().one();
        r.table[1][0][0] = q().one();
        r.table[0][1][0] = q().one();
        assert_eq!(tuple_from_semialgebra(&r).unwrap_err(), Error::RadicalCubeNonzero);
    }

    #[test]
    fn adjoin_identity_examples() {
        // R = span{a, a^2}: Lambda = F[x]/(x^3)
        let mut r = StructureConstants::zero_algebra(q(), 2);
        r.table[0][0][1] = q().one();
        let lam = adjoin_identity(&r).unwrap();
        assert_eq!(lam.dim(), 3);
        // (1 + a)(1 + a) = 1 + 2a + a^2
        let u: Vec<_> = vec![q().one(), q().one(), q().zero()];
        assert_eq!(lam.product(&u, &u), vec![q().one(), q().from_i64(2), q().one()]);

        let empty = StructureConstants::zero_algebra(q(), 0);
        assert_eq!(adjoin_identity(&empty).unwrap().dim(), 1);

        assert_eq!(adjoin_identity(&heisenberg(&q())).unwrap_err(), Error::NotCommutative);
    }

    #[test]
    fn classify_heisenberg() {
        let label = lie_classify(&heisenberg(&q())).unwrap();
        assert_eq!(label, CanonicalLabel::Dim1 { p: 1, q: 1 });
    }

    #[test]
    fn classify_two_point_pair() {
        // (K + K, 0 + K): eigenvalue points 0 and 1, unit bundles
        let k = k2(&q());
        let z = Matrix::zero(q(), 2, 2);
        let a = k.direct_sum(&k).unwrap();
        let b = z.direct_sum(&k).unwrap();
        let t = MatrixTuple::new(vec![a, b]).unwrap();
        let l = semialgebra_from_tuple(&t).unwrap();
        let label = lie_classify(&l).unwrap();
        match &label {
            CanonicalLabel::Dim2 { minimal, configuration, splits } => {
                assert!(minimal.is_empty());
                assert!(*splits);
                assert_eq!(configuration.entries().len(), 2);
                assert!(configuration.entries().iter().all(|(_, b)| b == &vec![1]));
            }
            _ => panic!("expected a dim-2 label"),
        }
        // same label as the canonicalization of {(3,[1]), (7,[1])}
        let inv = SkewPencilInvariants::new(
            q(),
            vec![
                (Polynomial::linear_from_root(q(), &q().from_i64(3)), 1),
                (Polynomial::linear_from_root(q(), &q().from_i64(7)), 1),
            ],
            vec![],
            vec![],
        );
        let pair = emit_canonical_pair(&inv).unwrap();
        let l2 = semialgebra_from_tuple(&MatrixTuple::new(vec![pair.a().clone(), pair.b().clone()]).unwrap()).unwrap();
        assert!(lie_isomorphic(&l, &l2).unwrap());
    }

    #[test]
    fn wrong_commutator_dim() {
        // three independent skew 3x3 matrices give dim L^2 = 3
        let f3 = FieldSpec::prime_field(3).unwrap();
        let m1 = Matrix::from_i64_rows(&f3, &[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let m2 = Matrix::from_i64_rows(&f3, &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]);
        let m3 = Matrix::from_i64_rows(&f3, &[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        let l = semialgebra_from_tuple(&MatrixTuple::new(vec![m1, m2, m3]).unwrap()).unwrap();
        assert_eq!(lie_classify(&l).unwrap_err(), Error::WrongCommutatorDim(3));
    }

    #[test]
    fn classification_invariant_under_basis_change_and_substitution() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let k = k2(&f7);
        let z = Matrix::zero(f7.clone(), 2, 2);
        let a = k.direct_sum(&k).unwrap();
        let b = z.direct_sum(&k.scale(&f7.from_i64(3))).unwrap();
        let t = MatrixTuple::new(vec![a, b]).unwrap();
        let l = semialgebra_from_tuple(&t).unwrap();
        let label = lie_classify(&l).unwrap();
        let mut state = 5150u64;
        let mut rand_gl = |n: usize| loop {
            let m = Matrix::from_fn(f7.clone(), n, n, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f7.from_i64(((state >> 33) % 7) as i64)
            });
            if m.is_invertible() {
                break m;
            }
        };
        for _ in 0..5 {
            let p = rand_gl(6);
            let moved = l.change_basis(&p).unwrap();
            assert_eq!(lie_classify(&moved).unwrap(), label);
        }
        // substitution on the extracted pair
        let g = SubstitutionMatrix::new(Matrix::from_i64_rows(&f7, &[&[2, 1], &[1, 1]])).unwrap();
        let pair = SkewPair::new(t.member(0).clone(), t.member(1).clone()).unwrap();
        let subbed = pair.substitution(&g).unwrap();
        let l2 = semialgebra_from_tuple(&MatrixTuple::new(vec![subbed.a().clone(), subbed.b().clone()]).unwrap()).unwrap();
        assert_eq!(lie_classify(&l2).unwrap(), label);
    }

    #[test]
    fn emit_roundtrip_dim1() {
        let label = CanonicalLabel::Dim1 { p: 1, q: 1 };
        let l = emit_canonical_algebra(&label, &q()).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(lie_classify(&l).unwrap(), label);
        assert_eq!(
            emit_canonical_algebra(&CanonicalLabel::Dim1 { p: 0, q: 2 }, &q()).unwrap_err(),
            Error::UnrealizableLabel
        );
    }

    #[test]
    fn emit_roundtrip_dim2() {
        let config = PointConfiguration::new(
            q(),
            vec![
                (ProjPoint::Finite(q().from_i64(0)), vec![1]),
                (ProjPoint::Finite(q().from_i64(1)), vec![1]),
            ],
        )
        .unwrap();
        let (canon, _) = mobius_canonicalize(&config).unwrap();
        let label = CanonicalLabel::Dim2 { minimal: vec![], configuration: canon, splits: true };
        let l = emit_canonical_algebra(&label, &q()).unwrap();
        assert_eq!(l.dim(), 6);
        assert_eq!(lie_classify(&l).unwrap(), label);
    }

    #[test]
    fn emit_relocates_infinity() {
        // canonical three-point configurations contain infinity
        let config = PointConfiguration::new(
            q(),
            vec![
                (ProjPoint::Finite(q().from_i64(0)), vec![2]),
                (ProjPoint::Finite(q().from_i64(1)), vec![1]),
                (ProjPoint::Infinity, vec![1]),
            ],
        )
        .unwrap();
        let (canon, _) = mobius_canonicalize(&config).unwrap();
        let label = CanonicalLabel::Dim2 { minimal: vec![], configuration: canon, splits: true };
        let l = emit_canonical_algebra(&label, &q()).unwrap();
        assert_eq!(lie_classify(&l).unwrap(), label);
    }

    #[test]
    fn degenerate_label_unrealizable() {
        let config = PointConfiguration::new(
            q(),
            vec![(ProjPoint::Finite(q().from_i64(0)), vec![1, 1])],
        )
        .unwrap();
        let label = CanonicalLabel::Dim2 { minimal: vec![1, 1], configuration: config, splits: true };
        assert_eq!(emit_canonical_algebra(&label, &q()).unwrap_err(), Error::UnrealizableLabel);
    }

    #[test]
    fn presentation_of_extraspecial_27() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let t = MatrixTuple::new(vec![k2(&f3)]).unwrap();
        let text = pgroup_presentation(&t).unwrap();
        assert!(text.contains("FreeGroup( \"a1\", \"b1\", \"b2\" )"));
        assert!(text.contains("Comm( F.2, F.3 ) * F.1^-1"));
        // relation count: t + n + t(t-1)/2 + tn + n(n-1)/2 = 1+2+0+2+1
        assert_eq!(text.matches("F.").count() >= 6, true);
        let rel_lines = text.lines().filter(|l| l.trim_start().starts_with("F.") || l.trim_start().starts_with("Comm")).count();
        assert_eq!(rel_lines, 6);
    }

    #[test]
    fn presentation_rejects_bad_inputs() {
        let t = MatrixTuple::new(vec![k2(&q())]).unwrap();
        assert_eq!(pgroup_presentation(&t).unwrap_err(), Error::NotPrimeField);
        let f3 = FieldSpec::prime_field(3).unwrap();
        let z = MatrixTuple::new(vec![Matrix::zero(f3.clone(), 2, 2)]).unwrap();
        assert_eq!(pgroup_presentation(&z).unwrap_err(), Error::LinearlyDependent);
    }

    #[test]
    fn nonsplit_label_over_finite_field() {
        // pair whose divisor is irreducible x^2 + 1 over F_3
        let f3 = FieldSpec::prime_field(3).unwrap();
        let quad = Polynomial::from_i64(&f3, &[1, 0, 1]);
        let inv = SkewPencilInvariants::new(f3.clone(), vec![(quad, 1)], vec![], vec![]);
        let pair = emit_canonical_pair(&inv).unwrap();
        let l = semialgebra_from_tuple(&MatrixTuple::new(vec![pair.a().clone(), pair.b().clone()]).unwrap()).unwrap();
        let label = lie_classify(&l).unwrap();
        match &label {
            CanonicalLabel::Dim2 { splits, configuration, .. } => {
                assert!(!*splits);
                assert_eq!(configuration.entries().len(), 1);
            }
            _ => panic!("expected dim-2 label"),
        }
        // invariant under a substitution
        let g = SubstitutionMatrix::new(Matrix::from_i64_rows(&f3, &[&[1, 1], &[2, 1]])).unwrap();
        let moved = pair.substitution(&g).unwrap();
        let l2 = semialgebra_from_tuple(&MatrixTuple::new(vec![moved.a().clone(), moved.b().clone()]).unwrap()).unwrap();
        assert_eq!(lie_classify(&l2).unwrap(), label);
    }
}
