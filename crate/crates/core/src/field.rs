//! Exact field arithmetic over the rationals and over finite fields
//! F_{p^k} with p an odd prime and a caller-supplied irreducible modulus.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

// ---- arithmetic mod p on u64 (p < 2^31) ----

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}
fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}
fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}
fn invm(a: u64, p: u64) -> u64 {
    // p prime
    powm(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---- polynomials over F_p as trimmed Vec<u64>, low degree first ----

fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r = vec![0u64; n];
    for (i, ri) in r.iter_mut().enumerate() {
        let x = if i < a.len() { a[i] } else { 0 };
        let y = if i < b.len() { b[i] } else { 0 };
        *ri = subm(x, y, p);
    }
    ptrim(r)
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = addm(r[i + j], mulm(x, y, p), p);
        }
    }
    ptrim(r)
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], ptrim(rem));
    }
    let mut quo = vec![0u64; a.len() - b.len() + 1];
    let lead_inv = invm(b[db], p);
    let mut dr = rem.len();
    while dr >= b.len() {
        let c = mulm(rem[dr - 1], lead_inv, p);
        let shift = dr - b.len();
        quo[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[shift + i] = subm(rem[shift + i], mulm(c, bi, p), p);
        }
        while !rem.is_empty() && rem.last() == Some(&0) {
            rem.pop();
        }
        dr = rem.len();
    }
    (ptrim(quo), ptrim(rem))
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = invm(l, p);
        for c in x.iter_mut() {
            *c = mulm(*c, li, p);
        }
    }
    x
}

/// a^e mod (f, p) with a BigUint exponent.
fn ppowmod(a: &[u64], e: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = pdivrem(a, f, p).1;
    let mut result = vec![1u64];
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = pdivrem(&pmul(&result, &base, p), f, p).1;
        }
        base = pdivrem(&pmul(&base, &base, p), f, p).1;
    }
    result
}

/// Monic f of degree k >= 1 is irreducible over F_p iff x^(p^k) == x (mod f)
/// and gcd(x^(p^(k/t)) - x, f) = 1 for each prime t dividing k.
fn is_irreducible_fp(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let pk = BigUint::from(p).pow(k as u32);
    let xpk = ppowmod(&x, &pk, f, p);
    if psub(&xpk, &x, p) != Vec::<u64>::new() {
        return false;
    }
    let mut primes = vec![];
    let mut m = k;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for t in primes {
        let e = BigUint::from(p).pow((k / t) as u32);
        let xe = ppowmod(&x, &e, f, p);
        let g = pgcd(&psub(&xe, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The configured coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    FiniteField {
        p: u64,
        k: usize,
        /// Monic irreducible modulus, coefficients c0..ck low degree first.
        modulus: Vec<u64>,
    },
}

/// A field element; rationals are stored reduced, finite-field elements as
/// length-k coefficient vectors over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular(Vec<u64>),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Prime field F_p with the canonical degree-1 modulus x.
    pub fn prime_field(p: u64) -> Result<Self> {
        FieldSpec::finite_field(p, vec![0, 1])
    }

    pub fn finite_field(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is excluded".into()));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField("p must be below 2^31".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        m = ptrim(m);
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        // normalize to monic
        let lead = *m.last().unwrap();
        if lead != 1 {
            let li = invm(lead, p);
            for c in m.iter_mut() {
                *c = mulm(*c, li, p);
            }
        }
        if !is_irreducible_fp(&m, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let k = m.len() - 1;
        Ok(FieldSpec::FiniteField { p, k, modulus: m })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::FiniteField { .. })
    }

    /// Number of elements, None for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::FiniteField { p, k, .. } => {
                let mut q: u64 = 1;
                for _ in 0..*k {
                    q = q.checked_mul(*p)?;
                }
                Some(q)
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::FiniteField { p, .. } => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldSpec::FiniteField { k, .. } => FieldElement::Modular(vec![0; *k]),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::FiniteField { p, k, .. } => {
                let mut v = vec![0u64; *k];
                v[0] = n.rem_euclid(*p as i64) as u64;
                FieldElement::Modular(v)
            }
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (FieldSpec::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            (
                FieldSpec::FiniteField { p, .. },
                FieldElement::Modular(x),
                FieldElement::Modular(y),
            ) => FieldElement::Modular(
                x.iter().zip(y.iter()).map(|(&u, &v)| addm(u, v, *p)).collect(),
            ),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            (FieldSpec::FiniteField { p, .. }, FieldElement::Modular(x)) => {
                FieldElement::Modular(x.iter().map(|&u| subm(0, u, *p)).collect())
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (FieldSpec::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            (
                FieldSpec::FiniteField { p, k, modulus },
                FieldElement::Modular(x),
                FieldElement::Modular(y),
            ) => {
                let prod = pmul(x, y, *p);
                let mut r = pdivrem(&prod, modulus, *p).1;
                r.resize(*k, 0);
                FieldElement::Modular(r)
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::Singular);
        }
        match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rational(x)) => {
                Ok(FieldElement::Rational(x.recip()))
            }
            (FieldSpec::FiniteField { p, k, modulus }, FieldElement::Modular(x)) => {
                // extended Euclid in F_p[x]
                let (mut r0, mut r1) = (modulus.clone(), ptrim(x.clone()));
                let (mut s0, mut s1) = (Vec::<u64>::new(), vec![1u64]);
                while !r1.is_empty() {
                    let (q, r) = pdivrem(&r0, &r1, *p);
                    let s = psub(&s0, &pmul(&q, &s1, *p), *p);
                    r0 = r1;
                    r1 = r;
                    s0 = s1;
                    s1 = s;
                }
                // r0 = gcd (a nonzero constant since modulus irreducible)
                debug_assert_eq!(r0.len(), 1);
                let ci = invm(r0[0], *p);
                let mut res: Vec<u64> = s0.iter().map(|&c| mulm(c, ci, *p)).collect();
                res = pdivrem(&res, modulus, *p).1;
                res.resize(*k, 0);
                Ok(FieldElement::Modular(res))
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut r = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// Frobenius inverse: the unique p-th root in F_{p^k}.
    pub fn pth_root(&self, a: &FieldElement) -> FieldElement {
        match self {
            FieldSpec::Rationals => panic!("pth_root is a finite-field operation"),
            FieldSpec::FiniteField { p, k, .. } => {
                if *k == 1 {
                    return a.clone(); // Frobenius is the identity on F_p
                }
                let e = BigUint::from(*p).pow(*k as u32 - 1);
                self.pow_big(a, &e)
            }
        }
    }

    pub fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut r = self.one();
        let mut base = a.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
        }
        r
    }

    /// Deterministic total order on elements: numeric for rationals,
    /// lexicographic on coefficient vectors for finite fields.
    pub fn elem_cmp(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => x.cmp(y),
            (FieldElement::Modular(x), FieldElement::Modular(y)) => x.cmp(y),
            _ => panic!("field/element mismatch"),
        }
    }

    /// Element with the given enumeration index (finite fields only).
    pub fn element_from_index(&self, idx: u64) -> FieldElement {
        match self {
            FieldSpec::Rationals => panic!("enumeration needs a finite field"),
            FieldSpec::FiniteField { p, k, .. } => {
                let mut v = vec![0u64; *k];
                let mut n = idx;
                for c in v.iter_mut() {
                    *c = n % p;
                    n /= p;
                }
                FieldElement::Modular(v)
            }
        }
    }

    /// All elements in enumeration-index order (finite fields only).
    pub fn enumerate_elements(&self) -> Vec<FieldElement> {
        let q = self.order().expect("enumeration needs a finite field");
        (0..q).map(|i| self.element_from_index(i)).collect()
    }

    /// Stable byte encoding used as a set/map key.
    pub fn elem_bytes(&self, a: &FieldElement, out: &mut Vec<u8>) {
        match a {
            FieldElement::Modular(v) => {
                for &c in v {
                    out.extend_from_slice(&c.to_le_bytes());
                }
            }
            FieldElement::Rational(r) => {
                let (n, d) = (r.numer(), r.denom());
                let nb = n.to_signed_bytes_le();
                let db = d.to_signed_bytes_le();
                out.extend_from_slice(&(nb.len() as u32).to_le_bytes());
                out.extend_from_slice(&nb);
                out.extend_from_slice(&(db.len() as u32).to_le_bytes());
                out.extend_from_slice(&db);
            }
        }
    }

    pub fn format_elem(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular(v) => {
                if v.len() == 1 {
                    format!("{}", v[0])
                } else {
                    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    format!("[{}]", parts.join(","))
                }
            }
        }
    }

    /// Parse "a/b" or "a" for rationals; a residue or coefficient list for
    /// finite fields is handled by the JSON layer.
    pub fn parse_rational(&self, s: &str) -> Result<FieldElement> {
        match self {
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(FieldElement::Rational(BigRational::new(n, d)))
            }
            FieldSpec::FiniteField { .. } => Err(Error::Parse(
                "string entries are only valid over the rationals".into(),
            )),
        }
    }

    /// Build a finite-field element from a coefficient list (reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        match self {
            FieldSpec::FiniteField { p, k, .. } => {
                if coeffs.len() > *k {
                    return Err(Error::Parse(format!(
                        "coefficient list of length {} exceeds extension degree {}",
                        coeffs.len(),
                        k
                    )));
                }
                let mut v = vec![0u64; *k];
                for (i, &c) in coeffs.iter().enumerate() {
                    v[i] = c.rem_euclid(*p as i64) as u64;
                }
                Ok(FieldElement::Modular(v))
            }
            FieldSpec::Rationals => Err(Error::Parse(
                "coefficient lists are only valid over finite fields".into(),
            )),
        }
    }

    /// Small-integer view of a prime-field element, used by the p-group
    /// presentation printer.
    pub fn to_u64(&self, a: &FieldElement) -> Option<u64> {
        match a {
            FieldElement::Modular(v) if v.len() == 1 => Some(v[0]),
            FieldElement::Rational(r) => {
                if r.denom().is_one() && !r.numer().is_negative() {
                    r.numer().to_u64()
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::FiniteField { p, k, .. } => {
                if *k == 1 {
                    write!(f, "F_{p}")
                } else {
                    write!(f, "F_{{{p}^{k}}}")
                }
            }
        }
    }
}
