//! Points of the projective line, linear-fractional (Möbius) actions on
//! them, and canonicalization of labeled point configurations.
//!
//! A map is stored as (alpha, beta, gamma, delta) with the action
//! lambda -> (gamma + delta*lambda) / (alpha + beta*lambda), the
//! parametrization induced by the substitution (A,B) -> (aA+bB, cA+dB)
//! on eigenvalue configurations. Points may also be monic irreducible
//! polynomials of degree >= 2 (conjugate eigenvalue clusters over a
//! non-closed field); the action transforms their root sets.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjPoint {
    /// A field element lambda.
    Finite(FieldElement),
    /// A monic irreducible polynomial of degree >= 2 standing for its
    /// (conjugate) roots in an extension.
    Irreducible(Polynomial),
    Infinity,
}

impl ProjPoint {
    /// Total encoding order: finite points by element order, then
    /// irreducibles by (degree, coefficients), then the point at infinity.
    pub fn cmp_order(&self, other: &ProjPoint, field: &FieldSpec) -> Ordering {
        use ProjPoint::*;
        let rank = |p: &ProjPoint| match p {
            Finite(_) => 0,
            Irreducible(_) => 1,
            Infinity => 2,
        };
        match (self, other) {
            (Finite(a), Finite(b)) => field.elem_cmp(a, b),
            (Irreducible(a), Irreducible(b)) => a.cmp_order(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }

    pub fn is_rational(&self) -> bool {
        !matches!(self, ProjPoint::Irreducible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    field: FieldSpec,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

impl Mobius {
    pub fn new(
        field: FieldSpec,
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
        delta: FieldElement,
    ) -> Result<Self> {
        let det = field.sub(&field.mul(&alpha, &delta), &field.mul(&beta, &gamma));
        if field.is_zero(&det) {
            return Err(Error::SingularMobius);
        }
        Ok(Mobius { field, alpha, beta, gamma, delta })
    }

    pub fn from_i64(field: &FieldSpec, a: i64, b: i64, g: i64, d: i64) -> Result<Self> {
        Mobius::new(
            field.clone(),
            field.from_i64(a),
            field.from_i64(b),
            field.from_i64(g),
            field.from_i64(d),
        )
    }

    pub fn identity(field: FieldSpec) -> Self {
        let (z, o) = (field.zero(), field.one());
        Mobius { field, alpha: o.clone(), beta: z.clone(), gamma: z, delta: o }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_identity(&self) -> bool {
        // identity up to scale: beta = gamma = 0 and alpha = delta
        let f = &self.field;
        f.is_zero(&self.beta) && f.is_zero(&self.gamma) && self.alpha == self.delta
    }

    /// As the matrix [[delta, gamma], [beta, alpha]] acting on [lambda : 1].
    fn matrix_entries(&self) -> [FieldElement; 4] {
        [self.delta.clone(), self.gamma.clone(), self.beta.clone(), self.alpha.clone()]
    }

    fn from_matrix_entries(field: FieldSpec, m: [FieldElement; 4]) -> Result<Self> {
        let [a, b, c, d] = m;
        Mobius::new(field, d, c, b, a)
    }

    /// self after other (apply `other` first).
    pub fn compose(&self, other: &Mobius) -> Result<Mobius> {
        let f = self.field.clone();
        let x = self.matrix_entries();
        let y = other.matrix_entries();
        let mul = |i: usize, j: usize, k: usize, l: usize| {
            f.add(&f.mul(&x[i], &y[j]), &f.mul(&x[k], &y[l]))
        };
        Mobius::from_matrix_entries(f.clone(), [mul(0, 0, 1, 2), mul(0, 1, 1, 3), mul(2, 0, 3, 2), mul(2, 1, 3, 3)])
    }

    pub fn inverse(&self) -> Mobius {
        // adjugate of the acting matrix
        let f = self.field.clone();
        let [a, b, c, d] = self.matrix_entries();
        Mobius::from_matrix_entries(f.clone(), [d, f.neg(&b), f.neg(&c), a])
            .expect("adjugate of invertible map is invertible")
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let f = &self.field;
        match p {
            ProjPoint::Finite(l) => {
                let den = f.add(&self.alpha, &f.mul(&self.beta, l));
                if f.is_zero(&den) {
                    ProjPoint::Infinity
                } else {
                    let num = f.add(&self.gamma, &f.mul(&self.delta, l));
                    ProjPoint::Finite(f.div(&num, &den).unwrap())
                }
            }
            ProjPoint::Infinity => {
                if f.is_zero(&self.beta) {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.div(&self.delta, &self.beta).unwrap())
                }
            }
            ProjPoint::Irreducible(q) => ProjPoint::Irreducible(self.apply_irreducible(q)),
        }
    }

    /// Transform a monic polynomial by moving its roots: the image of q of
    /// degree d is the monic normalization of
    ///   sum_i c_i (gamma - alpha*y)^i (beta*y - delta)^(d-i),
    /// whose roots are the images of the roots of q. The degree is
    /// preserved for d >= 2 (a drop would force a root into the base
    /// field).
    fn apply_irreducible(&self, q: &Polynomial) -> Polynomial {
        let f = self.field.clone();
        let d = q.degree().expect("irreducible point is nonzero");
        // num(y) = gamma - alpha*y, den(y) = beta*y - delta
        let num = Polynomial::new(f.clone(), vec![self.gamma.clone(), f.neg(&self.alpha)]);
        let den = Polynomial::new(f.clone(), vec![f.neg(&self.delta), self.beta.clone()]);
        let mut acc = Polynomial::zero(f.clone());
        // powers num^i * den^(d-i)
        let mut num_pows = vec![Polynomial::one(f.clone())];
        let mut den_pows = vec![Polynomial::one(f.clone())];
        for i in 1..=d {
            num_pows.push(num_pows[i - 1].mul(&num));
            den_pows.push(den_pows[i - 1].mul(&den));
        }
        for i in 0..=d {
            let c = q.coeff(i);
            if f.is_zero(&c) {
                continue;
            }
            acc = acc.add(&num_pows[i].mul(&den_pows[d - i]).mul_scalar(&c));
        }
        let out = acc.monic();
        debug_assert_eq!(out.degree(), Some(d), "degree dropped on an irreducible of degree >= 2");
        out
    }
}

/// Enumerate all elements of PGL_2 over a finite field, one representative
/// per projective class, deterministically ordered. The group has order
/// q^3 - q.
pub fn pgl2_enumerate(field: &FieldSpec, budget: u64) -> Result<Vec<Mobius>> {
    let q = field.order().ok_or(Error::DeskScaleExceeded)?;
    let order = q * q * q - q;
    if order > budget {
        return Err(Error::DeskScaleExceeded);
    }
    let elems = field.enumerate_elements();
    let mut out = Vec::with_capacity(order as usize);
    // acting matrix [[a, b], [c, d]]: normalize a = 1, else a = 0, b = 1
    for b in &elems {
        for c in &elems {
            for d in &elems {
                // a = 1: det = d - b c
                if field.sub(d, &field.mul(b, c)) != field.zero() {
                    out.push(
                        Mobius::from_matrix_entries(
                            field.clone(),
                            [field.one(), b.clone(), c.clone(), d.clone()],
                        )
                        .unwrap(),
                    );
                }
            }
        }
    }
    for c in &elems {
        if field.is_zero(c) {
            continue;
        }
        for d in &elems {
            // a = 0, b = 1: det = -c, nonzero
            out.push(
                Mobius::from_matrix_entries(
                    field.clone(),
                    [field.zero(), field.one(), c.clone(), d.clone()],
                )
                .unwrap(),
            );
        }
    }
    debug_assert_eq!(out.len() as u64, order);
    Ok(out)
}

/// A multiset of pairwise distinct projective points, each carrying a
/// nonempty multiset of block sizes (stored sorted descending). Entries
/// are kept sorted by the point encoding order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    field: FieldSpec,
    entries: Vec<(ProjPoint, Vec<usize>)>,
}

impl PointConfiguration {
    pub fn new(field: FieldSpec, mut entries: Vec<(ProjPoint, Vec<usize>)>) -> Result<Self> {
        for (_, bundle) in &mut entries {
            if bundle.is_empty() {
                return Err(Error::SizeMismatch("empty size bundle".into()));
            }
            bundle.sort_unstable_by(|a, b| b.cmp(a));
        }
        entries.sort_by(|a, b| a.0.cmp_order(&b.0, &field));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::SizeMismatch("duplicate point in configuration".into()));
            }
        }
        Ok(PointConfiguration { field, entries })
    }

    pub fn empty(field: FieldSpec) -> Self {
        PointConfiguration { field, entries: vec![] }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn entries(&self) -> &[(ProjPoint, Vec<usize>)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_rational(&self) -> bool {
        self.entries.iter().all(|(p, _)| p.is_rational())
    }

    /// Total encoding order used for orbit minimization.
    pub fn cmp_encoding(&self, other: &PointConfiguration) -> Ordering {
        let n = self.entries.len().cmp(&other.entries.len());
        if n != Ordering::Equal {
            return n;
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let p = a.0.cmp_order(&b.0, &self.field);
            if p != Ordering::Equal {
                return p;
            }
            let s = a.1.cmp(&b.1);
            if s != Ordering::Equal {
                return s;
            }
        }
        Ordering::Equal
    }

    pub fn apply(&self, m: &Mobius) -> PointConfiguration {
        let entries = self
            .entries
            .iter()
            .map(|(p, b)| (m.apply_point(p), b.clone()))
            .collect();
        PointConfiguration::new(self.field.clone(), entries)
            .expect("Möbius maps are injective on points")
    }
}

/// The map sending the ordered triple of distinct rational points
/// (p0, p1, pinf) to (0, 1, infinity).
fn anchor_triple_map(field: &FieldSpec, p0: &ProjPoint, p1: &ProjPoint, pinf: &ProjPoint) -> Mobius {
    use ProjPoint::*;
    let f = field.clone();
    let one = f.one();
    let entries = match (p0, p1, pinf) {
        (Finite(a), Finite(b), Finite(c)) => {
            // lambda -> (b-c)(lambda-a) / ((b-a)(lambda-c))
            let bc = f.sub(b, c);
            let ba = f.sub(b, a);
            [
                bc.clone(),
                f.neg(&f.mul(&bc, a)),
                ba.clone(),
                f.neg(&f.mul(&ba, c)),
            ]
        }
        (Finite(a), Finite(b), Infinity) => {
            // lambda -> (lambda - a)/(b - a)
            [one.clone(), f.neg(a), f.zero(), f.sub(b, a)]
        }
        (Infinity, Finite(b), Finite(c)) => {
            // lambda -> (b - c)/(lambda - c)
            [f.zero(), f.sub(b, c), one.clone(), f.neg(c)]
        }
        (Finite(a), Infinity, Finite(c)) => {
            // lambda -> (lambda - a)/(lambda - c)
            [one.clone(), f.neg(a), one.clone(), f.neg(c)]
        }
        _ => unreachable!("anchor map requires distinct rational points"),
    };
    Mobius::from_matrix_entries(f, entries).expect("distinct points give an invertible map")
}

/// The map sending the ordered pair of distinct rational points to (0, 1).
fn anchor_pair_map(field: &FieldSpec, p0: &ProjPoint, p1: &ProjPoint) -> Mobius {
    use ProjPoint::*;
    let f = field.clone();
    let one = f.one();
    let entries = match (p0, p1) {
        (Finite(a), Finite(b)) => [one.clone(), f.neg(a), f.zero(), f.sub(b, a)],
        (Infinity, Finite(b)) => {
            // lambda -> 1/(lambda - b + 1)
            [f.zero(), one.clone(), one.clone(), f.sub(&one, b)]
        }
        (Finite(a), Infinity) => {
            // lambda -> (lambda - a)/(lambda - a + 1)
            [one.clone(), f.neg(a), one.clone(), f.sub(&one, a)]
        }
        _ => unreachable!("anchor map requires distinct rational points"),
    };
    Mobius::from_matrix_entries(f, entries).expect("distinct points give an invertible map")
}

/// The map sending one rational point to 0.
fn anchor_single_map(field: &FieldSpec, p0: &ProjPoint) -> Mobius {
    let f = field.clone();
    let one = f.one();
    let entries = match p0 {
        ProjPoint::Finite(a) => [one.clone(), f.neg(a), f.zero(), one.clone()],
        ProjPoint::Infinity => [f.zero(), one.clone(), one.clone(), f.zero()],
        ProjPoint::Irreducible(_) => unreachable!("anchor map requires a rational point"),
    };
    Mobius::from_matrix_entries(f, entries).expect("anchor map invertible")
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = vec![];
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Canonical representative of the configuration's orbit under the full
/// linear-fractional group, with a witness map achieving it. With at most
/// three distinct points every ordering is sent to the anchor prefix of
/// (0, 1, infinity); with four or more, all ordered triples are sent to
/// the anchors and the encoding-minimal image wins. Requires all points
/// rational (use the exhaustive finite-field path for irreducible
/// clusters).
pub fn mobius_canonicalize(c: &PointConfiguration) -> Result<(PointConfiguration, Mobius)> {
    let field = c.field().clone();
    if !c.all_rational() {
        return Err(Error::NonSplitting);
    }
    if c.is_empty() {
        return Ok((c.clone(), Mobius::identity(field)));
    }
    let points: Vec<ProjPoint> = c.entries().iter().map(|(p, _)| p.clone()).collect();
    let mut candidates: Vec<Mobius> = vec![];
    if points.len() <= 3 {
        for perm in permutations(&points) {
            let m = match perm.len() {
                1 => anchor_single_map(&field, &perm[0]),
                2 => anchor_pair_map(&field, &perm[0], &perm[1]),
                3 => anchor_triple_map(&field, &perm[0], &perm[1], &perm[2]),
                _ => unreachable!(),
            };
            candidates.push(m);
        }
    } else {
        for i in 0..points.len() {
            for j in 0..points.len() {
                for k in 0..points.len() {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    candidates.push(anchor_triple_map(&field, &points[i], &points[j], &points[k]));
                }
            }
        }
    }
    let mut best: Option<(PointConfiguration, Mobius)> = None;
    for m in candidates {
        let image = c.apply(&m);
        match &best {
            Some((bc, _)) if bc.cmp_encoding(&image) != Ordering::Greater => {}
            _ => best = Some((image, m)),
        }
    }
    let (canonical, witness) = best.expect("nonempty candidate set");
    if canonical == *c {
        return Ok((canonical, Mobius::identity(field)));
    }
    Ok((canonical, witness))
}
