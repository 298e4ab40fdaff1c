//! Exact arithmetic in the cyclotomic field `Q(zeta_{p^3})`.
//!
//! Elements are stored in the power basis `1, w, w^2, ..., w^{phi-1}` where
//! `w` is a fixed primitive `p^3`-th root of unity and `phi = p^2 (p - 1)`
//! is the degree of the field over `Q`. The minimal polynomial of `w` is
//! the sparse cyclotomic polynomial
//!
//! ```text
//!     Phi_{p^3}(x) = Phi_p(x^{p^2}) = 1 + x^{p^2} + x^{2 p^2} + ... + x^{(p-1) p^2},
//! ```
//!
//! so reduction replaces `x^{(p-1) p^2}` by `-(1 + x^{p^2} + ... + x^{(p-2) p^2})`
//! and costs one sparse sweep. Coefficients are arbitrary-precision
//! rationals and every value is kept in reduced canonical form, so two
//! numbers are equal exactly when their coefficient vectors are equal.
//!
//! Field degrees grow quickly (18 for `p = 3`, 100 for `p = 5`, 294 for
//! `p = 7`); the arithmetic here is exercised for `p` in `{3, 5, 7}`.
//! Counting code that never touches cyclotomic numbers accepts any odd
//! prime.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A validated odd prime, the only admissible field parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u64);

impl OddPrime {
    /// Accepts odd primes only; `2` and composites are rejected.
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn squared(self) -> u64 {
        self.0 * self.0
    }

    pub fn cubed(self) -> u64 {
        self.0 * self.0 * self.0
    }

    /// Degree of `Q(zeta_{p^3})` over `Q`: `phi(p^3) = p^2 (p - 1)`.
    pub fn field_degree(self) -> usize {
        (self.0 * self.0 * (self.0 - 1)) as usize
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `Q(zeta_{p^3})` in reduced power-basis form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(p: OddPrime) -> Self {
        CycloNum {
            p: p.get(),
            coeffs: vec![BigRational::zero(); p.field_degree()],
        }
    }

    pub fn one(p: OddPrime) -> Self {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: OddPrime, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: OddPrime, q: BigRational) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[0] = q;
        v
    }

    /// `w^e` in reduced form, for any integer exponent (taken mod `p^3`).
    ///
    /// `root_of_unity(p, 0)` is the multiplicative identity. Note that the
    /// reduced form of a root of unity is not always a monomial: for
    /// exponents at or above the field degree the minimal polynomial kicks
    /// in, e.g. `w^18 = -1 - w^9` for `p = 3`.
    pub fn root_of_unity(p: OddPrime, e: i64) -> Self {
        let order = p.cubed() as i64;
        let e = e.rem_euclid(order) as usize;
        let phi = p.field_degree();
        let mut v = Self::zero(p);
        if e < phi {
            v.coeffs[e] = BigRational::one();
        } else {
            // e in [phi, p^3): one application of the reduction rule lands
            // every term strictly below the field degree.
            let p2 = p.squared() as usize;
            let t = e - phi;
            for k in 0..(p.get() - 1) as usize {
                v.coeffs[t + k * p2] = -BigRational::one();
            }
        }
        v
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the value lies in the rational subfield.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        if self.p != other.p {
            panic!(
                "{}",
                Error::PrimeMismatch {
                    left: self.p,
                    right: other.p
                }
            );
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.assert_same_field(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.assert_same_field(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            if !c.is_zero() {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let phi = self.coeffs.len();
        let mut buf = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                buf[i + j] += a * b;
            }
        }
        let p = OddPrime(self.p);
        reduce_buffer(p, &mut buf);
        buf.truncate(phi);
        CycloNum { p: self.p, coeffs: buf }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            if !c.is_zero() {
                *c *= q;
            }
        }
        out
    }

    /// Exact multiplicative inverse, by extended polynomial gcd against the
    /// minimal polynomial. Monomials short-circuit to an exponent flip.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = OddPrime(self.p);
        // c * w^k inverts to (1/c) * w^{p^3 - k}.
        let nnz: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        if nnz.len() == 1 {
            let k = nnz[0];
            let c = self.coeffs[k].recip();
            let e = if k == 0 { 0 } else { p.cubed() - k as u64 };
            return Ok(Self::root_of_unity(p, e as i64).scale(&c));
        }
        let modulus = minimal_polynomial(p);
        let inv = poly_inv_mod(&self.coeffs, &modulus)
            .expect("cyclotomic minimal polynomial is irreducible, inverse must exist");
        let mut coeffs = inv;
        coeffs.resize(p.field_degree(), BigRational::zero());
        Ok(CycloNum { p: self.p, coeffs })
    }

    /// Raise to a non-negative power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(OddPrime(self.p));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for CycloNum {
    /// Reduced polynomial string in `w`, e.g. `-1 - w^9` or `3/2*w^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !unit_coeff {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "w")?;
                } else {
                    write!(f, "w^{}", i)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Reduce a raw product buffer (degree `< 2 phi - 1`) modulo
/// `Phi_{p^3}(x)`, sweeping from the top so each substitution only feeds
/// strictly lower exponents.
fn reduce_buffer(p: OddPrime, buf: &mut Vec<BigRational>) {
    let phi = p.field_degree();
    let p2 = p.squared() as usize;
    for m in (phi..buf.len()).rev() {
        if buf[m].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut buf[m], BigRational::zero());
        let t = m - phi;
        for k in 0..(p.get() - 1) as usize {
            buf[t + k * p2] -= &c;
        }
    }
    buf.truncate(phi);
}

/// Coefficients of `Phi_{p^3}(x) = sum_k x^{k p^2}` (length `phi + 1`).
fn minimal_polynomial(p: OddPrime) -> Vec<BigRational> {
    let phi = p.field_degree();
    let p2 = p.squared() as usize;
    let mut m = vec![BigRational::zero(); phi + 1];
    for k in 0..p.get() as usize {
        m[k * p2] = BigRational::one();
    }
    m
}

fn poly_degree(a: &[BigRational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().max(db + 1)];
    while let Some(dr) = poly_degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] * &lead_inv;
        let shift = dr - db;
        for i in 0..=db {
            if !b[i].is_zero() {
                let t = &b[i] * &factor;
                rem[i + shift] -= t;
            }
        }
        quot[shift] = factor;
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (da, db) = match (poly_degree(a), poly_degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return vec![BigRational::zero()],
    };
    let mut out = vec![BigRational::zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

/// Extended Euclid: the inverse of `a` modulo `modulus`, or `None` when
/// the gcd is not a unit (cannot happen against an irreducible modulus
/// for nonzero `a`).
fn poly_inv_mod(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while poly_degree(&r1).is_some() {
        let (q, rem) = poly_divmod(&r0, &r1);
        r0 = std::mem::replace(&mut r1, rem);
        let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s_next);
    }
    let d = poly_degree(&r0)?;
    if d != 0 {
        return None;
    }
    let scale = r0[0].recip();
    Some(s0.iter().map(|c| c * &scale).collect())
}

/// Accumulates `sum a_i * b_i` in an unreduced buffer, reducing once at
/// the end. Avoids a reduction and a fresh allocation per term, which
/// matters in character inner-product sweeps.
pub struct CycloAcc {
    p: OddPrime,
    buf: Vec<BigRational>,
}

impl CycloAcc {
    pub fn new(p: OddPrime) -> Self {
        CycloAcc {
            p,
            buf: vec![BigRational::zero(); 2 * p.field_degree() - 1],
        }
    }

    pub fn add_mul(&mut self, a: &CycloNum, b: &CycloNum) {
        debug_assert_eq!(a.prime(), self.p.get());
        debug_assert_eq!(b.prime(), self.p.get());
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    self.buf[i + j] += ca * cb;
                }
            }
        }
    }

    pub fn finish(mut self) -> CycloNum {
        reduce_buffer(self.p, &mut self.buf);
        CycloNum {
            p: self.p.get(),
            coeffs: self.buf,
        }
    }
}

/// All `p^3` powers of `w` in reduced form, with reverse lookup.
///
/// Shared by the representation builder (matrix entries are powers of `w`)
/// and by the printers that render a value as `w^k` when it is a pure
/// root of unity.
pub struct RootTable {
    p: OddPrime,
    powers: Vec<CycloNum>,
    exponents: HashMap<CycloNum, u64>,
}

impl RootTable {
    pub fn new(p: OddPrime) -> Self {
        let order = p.cubed();
        let mut powers = Vec::with_capacity(order as usize);
        let mut exponents = HashMap::with_capacity(order as usize);
        for e in 0..order {
            let v = CycloNum::root_of_unity(p, e as i64);
            exponents.insert(v.clone(), e);
            powers.push(v);
        }
        RootTable {
            p,
            powers,
            exponents,
        }
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    /// `w^e`, exponent taken mod `p^3`.
    pub fn power(&self, e: u64) -> &CycloNum {
        &self.powers[(e % self.p.cubed()) as usize]
    }

    /// The exponent `k` with `v = w^k`, if `v` is a pure root of unity.
    pub fn exponent_of(&self, v: &CycloNum) -> Option<u64> {
        self.exponents.get(v).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> OddPrime {
        OddPrime::new(3).unwrap()
    }

    #[test]
    fn rejects_two_and_composites() {
        assert_eq!(OddPrime::new(2), Err(Error::UnsupportedPrime(2)));
        assert_eq!(OddPrime::new(9), Err(Error::UnsupportedPrime(9)));
        assert_eq!(OddPrime::new(1), Err(Error::UnsupportedPrime(1)));
        assert!(OddPrime::new(3).is_ok());
        assert!(OddPrime::new(7).is_ok());
    }

    #[test]
    fn root_of_unity_identity_cases() {
        let one = CycloNum::one(p3());
        assert_eq!(CycloNum::root_of_unity(p3(), 0), one);
        // w^{p^3} = 1.
        assert_eq!(CycloNum::root_of_unity(p3(), 27), one);
        assert_eq!(CycloNum::root_of_unity(p3(), -27), one);
    }

    #[test]
    fn root_of_unity_reduced_form() {
        // Phi_27(x) = x^18 + x^9 + 1, so w^18 = -1 - w^9.
        let w18 = CycloNum::root_of_unity(p3(), 18);
        let expected = CycloNum::zero(p3())
            .sub(&CycloNum::one(p3()))
            .sub(&CycloNum::root_of_unity(p3(), 9));
        assert_eq!(w18, expected);
    }

    #[test]
    fn exponents_add_under_mul() {
        let a = CycloNum::root_of_unity(p3(), 4);
        let b = CycloNum::root_of_unity(p3(), 5);
        assert_eq!(a.mul(&b), CycloNum::root_of_unity(p3(), 9));
    }

    #[test]
    fn epsilon_satisfies_phi_p() {
        // 1 + w^{p^2} + w^{2 p^2} = 0 for p = 3.
        let mut s = CycloNum::zero(p3());
        for k in 0..3 {
            s.add_assign(&CycloNum::root_of_unity(p3(), 9 * k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn omega_has_order_exactly_p_cubed() {
        for p in [3u64, 5] {
            let p = OddPrime::new(p).unwrap();
            let w = CycloNum::root_of_unity(p, 1);
            assert!(w.pow(p.cubed()).is_one());
            for m in 1..p.get() {
                assert!(!w.pow(p.squared() * m).is_one());
            }
        }
    }

    #[test]
    fn inv_of_roots_flips_exponent() {
        for k in 0..27 {
            let w = CycloNum::root_of_unity(p3(), k);
            let expected = CycloNum::root_of_unity(p3(), 27 - k);
            assert_eq!(w.inv().unwrap(), expected);
        }
    }

    #[test]
    fn inv_of_rational_scalar() {
        let two = CycloNum::from_integer(p3(), 2);
        let half = CycloNum::from_rational(
            p3(),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        assert_eq!(two.inv().unwrap(), half);
    }

    #[test]
    fn inv_by_extended_euclid() {
        // (1 + w^9) has the polynomial inverse -w^9.
        let a = CycloNum::one(p3()).add(&CycloNum::root_of_unity(p3(), 9));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(inv, CycloNum::root_of_unity(p3(), 9).neg());
    }

    #[test]
    fn inv_of_zero_fails() {
        assert_eq!(CycloNum::zero(p3()).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    #[should_panic(expected = "mismatched primes")]
    fn mixing_fields_panics() {
        let a = CycloNum::one(p3());
        let b = CycloNum::one(OddPrime::new(5).unwrap());
        let _ = a.add(&b);
    }

    #[test]
    fn accumulator_matches_mul_chain() {
        let w = |e| CycloNum::root_of_unity(p3(), e);
        let mut acc = CycloAcc::new(p3());
        acc.add_mul(&w(7), &w(13));
        acc.add_mul(&w(16), &w(2).neg());
        let direct = w(7).mul(&w(13)).add(&w(16).mul(&w(2).neg()));
        assert_eq!(acc.finish(), direct);
    }

    #[test]
    fn root_table_round_trip() {
        let table = RootTable::new(p3());
        for e in 0..27 {
            assert_eq!(table.exponent_of(table.power(e)), Some(e));
        }
        let not_a_root = CycloNum::from_integer(p3(), 2);
        assert_eq!(table.exponent_of(&not_a_root), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloNum::zero(p3()).to_string(), "0");
        assert_eq!(CycloNum::one(p3()).to_string(), "1");
        assert_eq!(CycloNum::root_of_unity(p3(), 9).to_string(), "w^9");
        assert_eq!(CycloNum::root_of_unity(p3(), 18).to_string(), "-1 - w^9");
        let half = CycloNum::from_rational(
            p3(),
            BigRational::new(BigInt::from(3), BigInt::from(2)),
        );
        assert_eq!(half.to_string(), "3/2");
    }
}
