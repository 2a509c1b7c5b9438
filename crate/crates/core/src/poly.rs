//! Univariate polynomials over the configured field, characteristic
//! polynomials, and desk-scale factorization.
//!
//! Over F_{p^k} factorization is complete (distinct-degree plus
//! equal-degree splitting). Over Q it covers what the rest of the crate
//! consumes: square-free decomposition, rational roots, and irreducibility
//! of the remainder up to degree 4 (with a mod-p certificate fallback for
//! higher degrees).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<FieldElement>, // low degree first, trimmed
}

impl Polynomial {
    pub fn new(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Polynomial { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Self {
        let o = field.one();
        Polynomial { field, coeffs: vec![o] }
    }

    pub fn constant(field: FieldSpec, c: FieldElement) -> Self {
        Polynomial::new(field, vec![c])
    }

    pub fn x(field: FieldSpec) -> Self {
        let (z, o) = (field.zero(), field.one());
        Polynomial { field, coeffs: vec![z, o] }
    }

    /// x - lambda
    pub fn linear_from_root(field: FieldSpec, lambda: &FieldElement) -> Self {
        let o = field.one();
        let c = field.neg(lambda);
        Polynomial::new(field, vec![c, o])
    }

    pub fn from_i64(field: &FieldSpec, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Polynomial::new(field.clone(), v)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.field.add(&self.coeff(i), &other.coeff(i)));
        }
        Polynomial::new(self.field.clone(), v)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let v = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Polynomial { field: self.field.clone(), coeffs: v }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field.clone());
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Polynomial::new(f.clone(), v)
    }

    pub fn mul_scalar(&self, s: &FieldElement) -> Polynomial {
        let v = self.coeffs.iter().map(|c| self.field.mul(c, s)).collect();
        Polynomial::new(self.field.clone(), v)
    }

    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial { field: self.field.clone(), coeffs: v }
    }

    pub fn divrem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let f = self.field.clone();
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(f.clone());
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = f.mul(rem.leading().unwrap(), &lead_inv);
            let term = Polynomial::constant(f.clone(), c).shift(dr - dd);
            quo = quo.add(&term);
            rem = rem.sub(&term.mul(divisor));
        }
        (quo, rem)
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.divrem(divisor).1
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let li = self.field.inv(l).unwrap();
                self.mul_scalar(&li)
            }
        }
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.field.clone());
        }
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Polynomial::new(f.clone(), v)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &Polynomial) -> Polynomial {
        let f = self.field.clone();
        let mut base = self.rem(modulus);
        let mut result = Polynomial::one(f);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
        }
        result
    }

    /// p(q(x)) by Horner on polynomials.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let f = self.field.clone();
        let mut acc = Polynomial::zero(f.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Polynomial::constant(f.clone(), c.clone()));
        }
        acc
    }

    /// For monic x - lambda, the root lambda.
    pub fn root_if_linear(&self) -> Option<FieldElement> {
        if self.degree() == Some(1) && self.field.is_one(self.leading().unwrap()) {
            Some(self.field.neg(&self.coeff(0)))
        } else {
            None
        }
    }

    /// Companion matrix of a monic polynomial; its characteristic
    /// polynomial is this polynomial.
    pub fn companion_matrix(&self) -> Result<Matrix> {
        let n = self
            .degree()
            .ok_or_else(|| Error::SizeMismatch("companion of zero polynomial".into()))?;
        if !self.field.is_one(self.leading().unwrap()) {
            return Err(Error::Parse("companion matrix requires a monic polynomial".into()));
        }
        let f = self.field.clone();
        let mut m = Matrix::zero(f.clone(), n, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i + 1, i, f.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(&self.coeff(i)));
        }
        Ok(m)
    }

    /// Deterministic order: degree first, then coefficients from the
    /// constant term up.
    pub fn cmp_order(&self, other: &Polynomial) -> Ordering {
        let d1 = self.coeffs.len();
        let d2 = other.coeffs.len();
        if d1 != d2 {
            return d1.cmp(&d2);
        }
        for i in 0..d1 {
            let o = self.field.elem_cmp(&self.coeffs[i], &other.coeffs[i]);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.format_elem(c);
            let part = match i {
                0 => cs,
                1 if cs == "1" => "x".into(),
                1 => format!("{cs}*x"),
                _ if cs == "1" => format!("x^{i}"),
                _ => format!("{cs}*x^{i}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// det(xI - M), computed from the Hessenberg form of M.
pub fn charpoly(m: &Matrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::SizeMismatch("charpoly of non-square matrix".into()));
    }
    let f = m.field().clone();
    let n = m.rows();
    if n == 0 {
        return Ok(Polynomial::one(f));
    }
    // similarity reduction to upper Hessenberg
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let mut pivot = None;
        for r in j + 1..n {
            if !f.is_zero(h.get(r, j)) {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        if pr != j + 1 {
            // swap rows and columns (a similarity)
            for c in 0..n {
                let a = h.get(pr, c).clone();
                let b = h.get(j + 1, c).clone();
                h.set(pr, c, b);
                h.set(j + 1, c, a);
            }
            for r in 0..n {
                let a = h.get(r, pr).clone();
                let b = h.get(r, j + 1).clone();
                h.set(r, pr, b);
                h.set(r, j + 1, a);
            }
        }
        let pinv = f.inv(h.get(j + 1, j)).unwrap();
        for i in j + 2..n {
            let factor = f.mul(h.get(i, j), &pinv);
            if f.is_zero(&factor) {
                continue;
            }
            // row i -= factor * row j+1; col j+1 += factor * col i
            for c in 0..n {
                let v = f.sub(h.get(i, c), &f.mul(&factor, h.get(j + 1, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, j + 1), &f.mul(&factor, h.get(r, i)));
                h.set(r, j + 1, v);
            }
        }
    }
    // leading-principal-minor recurrence for det(xI - H)
    let x = Polynomial::x(f.clone());
    let mut d: Vec<Polynomial> = vec![Polynomial::one(f.clone())];
    for k in 1..=n {
        let xk = x.sub(&Polynomial::constant(f.clone(), h.get(k - 1, k - 1).clone()));
        let mut acc = xk.mul(&d[k - 1]);
        let mut sub_prod = f.one();
        for i in (1..k).rev() {
            // product of subdiagonal entries h[i][i-1] .. h[k-1][k-2]
            sub_prod = f.mul(&sub_prod, h.get(i, i - 1));
            if f.is_zero(&sub_prod) {
                break;
            }
            let coeff = f.mul(h.get(i - 1, k - 1), &sub_prod);
            if f.is_zero(&coeff) {
                continue;
            }
            let term = d[i - 1].mul_scalar(&coeff);
            acc = acc.sub(&term);
        }
        d.push(acc);
    }
    Ok(d.pop().unwrap())
}

/// Irreducible factorization of the characteristic polynomial over the
/// configured field, deterministically ordered.
pub fn charpoly_factor(m: &Matrix) -> Result<Vec<(Polynomial, usize)>> {
    let cp = charpoly(m)?;
    factor(&cp)
}

/// Factor a nonzero polynomial into monic irreducible powers. The unit
/// (leading coefficient) is dropped; callers that need it can read it off
/// the input.
pub fn factor(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if f.is_zero() {
        return Err(Error::PolyFactor("cannot factor the zero polynomial".into()));
    }
    let g = f.monic();
    if g.degree() == Some(0) || g.is_one() {
        return Ok(vec![]);
    }
    let mut out = vec![];
    for (part, mult) in squarefree_decomposition(&g)? {
        let irreducibles = match part.field() {
            FieldSpec::FiniteField { .. } => split_squarefree_fq(&part)?,
            FieldSpec::Rationals => split_squarefree_q(&part)?,
        };
        for q in irreducibles {
            out.push((q, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp_order(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairwise coprime
/// square-free parts with multiplicities. Handles p-th powers in
/// characteristic p.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    fn inner(f: &Polynomial, outer_mult: usize, out: &mut Vec<(Polynomial, usize)>) -> Result<()> {
        if f.is_one() || f.degree() == Some(0) {
            return Ok(());
        }
        let p = f.field().characteristic() as usize;
        let df = f.derivative();
        if df.is_zero() {
            // f = g(x^p)
            let g = pth_root_poly(f)?;
            return inner(&g, outer_mult * p, out);
        }
        let mut c = f.gcd(&df);
        let mut w = f.divrem(&c).0.monic();
        let mut i = 1usize;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0.monic();
            if !z.is_one() {
                out.push((z, i * outer_mult));
            }
            w = y;
            c = c.divrem(&w).0.monic();
            i += 1;
        }
        if !c.is_one() {
            let g = pth_root_poly(&c)?;
            inner(&g, outer_mult * p, out)?;
        }
        Ok(())
    }
    let mut out = vec![];
    inner(&f.monic(), 1, &mut out)?;
    Ok(out)
}

/// For f = g(x^p) in characteristic p, recover g.
fn pth_root_poly(f: &Polynomial) -> Result<Polynomial> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    if p == 0 {
        return Err(Error::Internal("pth_root_poly in characteristic 0".into()));
    }
    let d = f.degree().unwrap_or(0);
    if d % p != 0 {
        return Err(Error::Internal("polynomial is not a p-th power shape".into()));
    }
    let mut coeffs = vec![];
    for i in 0..=d / p {
        let c = f.coeff(i * p);
        coeffs.push(field.pth_root(&c));
    }
    // intermediate coefficients must vanish
    for i in 0..=d {
        if i % p != 0 && !field.is_zero(&f.coeff(i)) {
            return Err(Error::Internal("derivative vanished but f is not in F[x^p]".into()));
        }
    }
    Ok(Polynomial::new(field, coeffs))
}

// ---- finite-field splitting ----

fn split_squarefree_fq(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let field = f.field().clone();
    let q = field
        .order()
        .ok_or_else(|| Error::Internal("finite-field split over Q".into()))?;
    let mut out = vec![];
    let mut rest = f.monic();
    let x = Polynomial::x(field.clone());
    let mut h = x.clone(); // x^(q^d) mod rest, iterated
    let mut d = 0usize;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            // remainder is irreducible
            out.push(rest.monic());
            break;
        }
        h = h.pow_mod(&BigUint::from(q), &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            out.extend(equal_degree_split(&g, d, q)?);
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting for odd q, with a
/// deterministic candidate sequence.
fn equal_degree_split(g: &Polynomial, d: usize, q: u64) -> Result<Vec<Polynomial>> {
    let field = g.field().clone();
    let deg = g.degree().unwrap();
    if deg == d {
        return Ok(vec![g.monic()]);
    }
    let exp = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut state: u64 = 0x9e3779b97f4a7c15;
    for _attempt in 0..200 {
        // deterministic pseudo-random candidate of degree < deg
        let mut coeffs = vec![];
        for _ in 0..deg {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            coeffs.push(field.element_from_index((state >> 11) % q));
        }
        let a = Polynomial::new(field.clone(), coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g1 = a.gcd(g);
        let split = if g1.degree().unwrap_or(0) > 0 && g1.degree() < g.degree() {
            Some(g1)
        } else {
            let b = a.pow_mod(&exp, g);
            let b1 = b.sub(&Polynomial::one(field.clone()));
            let g2 = b1.gcd(g);
            let dd = g2.degree().unwrap_or(0);
            if dd > 0 && dd < deg {
                Some(g2)
            } else {
                None
            }
        };
        if let Some(h) = split {
            let rest = g.divrem(&h).0.monic();
            let mut out = equal_degree_split(&h, d, q)?;
            out.extend(equal_degree_split(&rest, d, q)?);
            return Ok(out);
        }
    }
    Err(Error::PolyFactor("equal-degree splitting did not converge".into()))
}

// ---- rational splitting ----

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn rational_sqrt_exact(r: &BigRational) -> Option<BigRational> {
    let n = big_sqrt_exact(r.numer())?;
    let d = big_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

fn as_rational(e: &FieldElement) -> &BigRational {
    match e {
        FieldElement::Rational(r) => r,
        _ => panic!("expected rational element"),
    }
}

/// All positive divisors of |n|, failing if |n| cannot be factored at desk
/// scale.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::Internal("divisors of zero".into()));
    }
    let mut primes: Vec<(BigInt, u32)> = vec![];
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= m && d <= limit {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m = &m / &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1u32;
    }
    if !m.is_one() {
        if &d * &d <= m {
            // leftover could be composite with large factors
            return Err(Error::DeskScaleExceeded);
        }
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = vec![];
        for base in &out {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(base * &pw);
                pw = &pw * &p;
            }
        }
        out = next;
        if out.len() > 20_000 {
            return Err(Error::DeskScaleExceeded);
        }
    }
    Ok(out)
}

/// Rational roots of a polynomial over Q, each returned once.
fn rational_roots(f: &Polynomial) -> Result<Vec<BigRational>> {
    let field = f.field().clone();
    let mut roots = vec![];
    let mut g = f.clone();
    // strip factors of x
    while g.degree().map_or(false, |d| d >= 1) && field.is_zero(&g.coeff(0)) {
        if !roots.contains(&BigRational::zero()) {
            roots.push(BigRational::zero());
        }
        g = g.divrem(&Polynomial::x(field.clone())).0;
    }
    let Some(deg) = g.degree() else { return Ok(roots) };
    if deg == 0 {
        return Ok(roots);
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in g.coeffs() {
        lcm = lcm.lcm(as_rational(c).denom());
    }
    let int_coeffs: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| {
            let r = as_rational(c);
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let a0 = &int_coeffs[0];
    let an = &int_coeffs[deg];
    let num_divs = divisors(a0)?;
    let den_divs = divisors(an)?;
    for p in &num_divs {
        for q in &den_divs {
            for sign in [1i32, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                let cand_elem = FieldElement::Rational(cand.clone());
                if field.is_zero(&g.eval(&cand_elem)) && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

fn split_squarefree_q(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let field = f.field().clone();
    let mut out = vec![];
    let mut rest = f.monic();
    for r in rational_roots(&rest)? {
        let lin = Polynomial::linear_from_root(field.clone(), &FieldElement::Rational(r));
        rest = rest.divrem(&lin).0.monic();
        out.push(lin);
    }
    match rest.degree() {
        None | Some(0) => {}
        Some(1) => out.push(rest.monic()),
        Some(2) | Some(3) => out.push(rest), // no rational root => irreducible
        Some(4) => match quartic_quadratic_split(&rest)? {
            Some((a, b)) => {
                out.push(a);
                out.push(b);
            }
            None => out.push(rest),
        },
        Some(_) => {
            if mod_p_irreducible_certificate(&rest)? {
                out.push(rest);
            } else {
                return Err(Error::PolyFactor(format!(
                    "cannot certify factorization of degree-{} polynomial over Q",
                    rest.degree().unwrap()
                )));
            }
        }
    }
    out.sort_by(|a, b| a.cmp_order(b));
    Ok(out)
}

/// Try to split a monic quartic over Q with no rational roots into two
/// monic quadratics, via the resolvent cubic of the depressed quartic.
fn quartic_quadratic_split(f: &Polynomial) -> Result<Option<(Polynomial, Polynomial)>> {
    let field = f.field().clone();
    debug_assert_eq!(f.degree(), Some(4));
    let a3 = f.coeff(3);
    // depress: x = y - a3/4
    let quarter = field.div(&a3, &field.from_i64(-4)).unwrap();
    let shift = Polynomial::new(field.clone(), vec![quarter.clone(), field.one()]); // y + (-a3/4)... x = y - a3/4
    let dep = f.compose(&shift);
    debug_assert!(field.is_zero(&dep.coeff(3)));
    let p = dep.coeff(2);
    let q = dep.coeff(1);
    let r = dep.coeff(0);
    let (pr, qr, rr) = (
        as_rational(&p).clone(),
        as_rational(&q).clone(),
        as_rational(&r).clone(),
    );
    let mut candidates: Vec<(BigRational, BigRational, BigRational)> = vec![]; // (u, v, w)
    if qr.is_zero() {
        // (y^2+v)(y^2+w): v+w = p, vw = r
        let disc = &pr * &pr - BigRational::from(BigInt::from(4)) * &rr;
        if let Some(s) = rational_sqrt_exact(&disc) {
            let two = BigRational::from(BigInt::from(2));
            let v = (&pr + &s) / &two;
            let w = (&pr - &s) / &two;
            candidates.push((BigRational::zero(), v, w));
        }
        // (y^2+uy+v)(y^2-uy+v): v^2 = r, 2v - u^2 = p
        if let Some(v) = rational_sqrt_exact(&rr) {
            for vv in [v.clone(), -v] {
                let u2 = BigRational::from(BigInt::from(2)) * &vv - &pr;
                if let Some(u) = rational_sqrt_exact(&u2) {
                    candidates.push((u, vv.clone(), vv.clone()));
                }
            }
        }
    } else {
        // resolvent cubic in U = u^2: U^3 + 2p U^2 + (p^2 - 4r) U - q^2 = 0
        let two = BigRational::from(BigInt::from(2));
        let four = BigRational::from(BigInt::from(4));
        let res = Polynomial::new(
            field.clone(),
            vec![
                FieldElement::Rational(-(&qr * &qr)),
                FieldElement::Rational(&pr * &pr - &four * &rr),
                FieldElement::Rational(&two * &pr),
                field.one(),
            ],
        );
        for uval in rational_roots(&res)? {
            if uval.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt_exact(&uval) {
                // w - v = q/u, w + v = p + u^2
                let diff = &qr / &u;
                let sum = &pr + &uval;
                let w = (&sum + &diff) / &two;
                let v = (&sum - &diff) / &two;
                candidates.push((u, v, w));
            }
        }
    }
    for (u, v, w) in candidates {
        // (y^2 + u y + v)(y^2 - u y + w) in y, then substitute y = x + a3/4
        let fa = Polynomial::new(
            field.clone(),
            vec![
                FieldElement::Rational(v),
                FieldElement::Rational(u.clone()),
                field.one(),
            ],
        );
        let fb = Polynomial::new(
            field.clone(),
            vec![
                FieldElement::Rational(w),
                FieldElement::Rational(-u),
                field.one(),
            ],
        );
        if fa.mul(&fb) != dep {
            continue;
        }
        let back = Polynomial::new(
            field.clone(),
            vec![field.neg(&quarter), field.one()], // y = x + a3/4
        );
        let ga = fa.compose(&back).monic();
        let gb = fb.compose(&back).monic();
        debug_assert_eq!(ga.mul(&gb), f.monic());
        return Ok(Some(if ga.cmp_order(&gb) == Ordering::Greater {
            (gb, ga)
        } else {
            (ga, gb)
        }));
    }
    Ok(None)
}

/// Irreducibility certificate over Q: reduce mod small primes; if the
/// reduction stays irreducible of full degree for some prime, the input is
/// irreducible over Q.
fn mod_p_irreducible_certificate(f: &Polynomial) -> Result<bool> {
    let deg = f.degree().unwrap();
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(as_rational(c).denom());
    }
    let int_coeffs: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = as_rational(c);
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let pb = BigInt::from(p);
        if (&int_coeffs[deg] % &pb).is_zero() {
            continue;
        }
        let fp = FieldSpec::prime_field(p)?;
        let coeffs: Vec<FieldElement> = int_coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                fp.from_i64(i64::try_from(r).unwrap())
            })
            .collect();
        let reduced = Polynomial::new(fp, coeffs);
        let facs = factor(&reduced)?;
        if facs.len() == 1 && facs[0].1 == 1 && facs[0].0.degree() == Some(deg) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn charpoly_matches_det_evaluation() {
        let f = FieldSpec::prime_field(7).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 2, 0, 3], &[4, 0, 1, 1], &[2, 2, 5, 0], &[0, 1, 6, 3]]);
        let cp = charpoly(&m).unwrap();
        assert_eq!(cp.degree(), Some(4));
        assert!(f.is_one(cp.leading().unwrap()));
        for t in 0..7i64 {
            let x0 = f.from_i64(t);
            let shifted = Matrix::diag(f.clone(), &vec![x0.clone(); 4]).sub(&m).unwrap();
            assert_eq!(cp.eval(&x0), shifted.det().unwrap());
        }
    }

    #[test]
    fn charpoly_factor_nilpotent_block() {
        let j2 = Matrix::jordan_block(&q(), 2, &q().zero());
        let facs = charpoly_factor(&j2).unwrap();
        assert_eq!(facs, vec![(Polynomial::x(q()), 2)]);
    }

    #[test]
    fn charpoly_factor_diag() {
        let d = Matrix::from_i64_rows(&q(), &[&[1, 0], &[0, 2]]);
        let facs = charpoly_factor(&d).unwrap();
        assert_eq!(
            facs,
            vec![
                (Polynomial::from_i64(&q(), &[-2, 1]), 1),
                (Polynomial::from_i64(&q(), &[-1, 1]), 1),
            ]
        );
    }

    #[test]
    fn companion_of_irreducible_quadratic_over_f3() {
        // x^2 + 1 has no root mod 3 (exhaustive check), hence irreducible
        let f3 = FieldSpec::prime_field(3).unwrap();
        let p = Polynomial::from_i64(&f3, &[1, 0, 1]);
        for t in 0..3i64 {
            assert!(!f3.is_zero(&p.eval(&f3.from_i64(t))));
        }
        let c = p.companion_matrix().unwrap();
        let facs = charpoly_factor(&c).unwrap();
        assert_eq!(facs, vec![(p, 1)]);
    }

    #[test]
    fn factorization_reproduces_charpoly() {
        let f = FieldSpec::prime_field(5).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[0, 1, 0], &[0, 0, 1], &[2, 1, 4]]);
        let cp = charpoly(&m).unwrap();
        let facs = factor(&cp).unwrap();
        let mut prod = Polynomial::one(f.clone());
        for (g, e) in &facs {
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, cp.monic());
    }

    #[test]
    fn finite_field_full_factorization() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        // x^6 - x = x (x-1) (x+1) (x^3-x+1)(...) over F_3: just check product
        let p = Polynomial::from_i64(&f3, &[0, 2, 0, 0, 0, 0, 1]); // x^6 + 2x
        let facs = factor(&p).unwrap();
        let mut prod = Polynomial::one(f3.clone());
        for (g, e) in &facs {
            assert!(f3.is_one(g.leading().unwrap()));
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, p.monic());
    }

    #[test]
    fn pth_power_squarefree_decomposition() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        // (x^2+1)^3 = x^6 + 3x^4 + ... over F_3 equals x^6 + 1... derivative 0
        let base = Polynomial::from_i64(&f3, &[1, 0, 1]);
        let cube = base.mul(&base).mul(&base);
        let sf = squarefree_decomposition(&cube).unwrap();
        assert_eq!(sf, vec![(base, 3)]);
    }

    #[test]
    fn quartic_splits_into_irreducible_quadratics() {
        // (x^2+1)(x^2-2) has no rational roots
        let a = Polynomial::from_i64(&q(), &[1, 0, 1]);
        let b = Polynomial::from_i64(&q(), &[-2, 0, 1]);
        let p = a.mul(&b);
        let facs = factor(&p).unwrap();
        assert_eq!(facs.len(), 2);
        assert!(facs.iter().any(|(g, e)| *g == a && *e == 1));
        assert!(facs.iter().any(|(g, e)| *g == b && *e == 1));
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // x^4 + x + 1 is irreducible over Q (irreducible mod 2... use mod-p-free path: resolvent fails)
        let p = Polynomial::from_i64(&q(), &[1, 1, 0, 0, 1]);
        let facs = factor(&p).unwrap();
        assert_eq!(facs, vec![(p, 1)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let p = Polynomial::from_i64(&q(), &[-3, 5, 2]);
        let facs = factor(&p).unwrap();
        assert_eq!(facs.len(), 2);
        let half = q().div(&q().one(), &q().from_i64(2)).unwrap();
        assert!(facs
            .iter()
            .any(|(g, _)| g.root_if_linear() == Some(half.clone())));
    }
}
