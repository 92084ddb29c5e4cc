use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::nt::{inv_mod_prime, mul_mod, pow_mod, require_prime};

/// Largest field cardinality for which exhaustive enumeration is allowed.
pub const ENUMERATION_BOUND: u128 = 1_000_000;

/// Largest extension degree accepted for fields that are only used
/// algebraically (no enumeration).
pub const MAX_ALGEBRAIC_DEGREE: usize = 512;

struct FieldInner {
    q: u64,
    k: usize,
    /// Monic modulus, lowest coefficient first, length `k + 1`. `None` for the
    /// prime field.
    modulus: Option<Vec<u64>>,
    cardinality: BigUint,
}

/// An explicit model of `F_{q^k}` as `F_q[t] / (modulus)`.
///
/// Cheap to clone; all clones share the same modulus. Two contexts compare
/// equal when they have the same characteristic, degree and modulus.
#[derive(Clone)]
pub struct FieldContext(Arc<FieldInner>);

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.q),
            Some(m) => write!(f, "F_{}^{} mod {:?}", self.0.q, self.0.k, m),
        }
    }
}

/// Builds `F_{q^k}` subject to the enumeration bound.
pub fn make_field(q: u64, k: usize) -> Result<FieldContext> {
    FieldContext::with_limit(q, k, Some(ENUMERATION_BOUND))
}

impl FieldContext {
    /// Same as [`make_field`].
    pub fn new(q: u64, k: usize) -> Result<Self> {
        make_field(q, k)
    }

    /// A field used only for algebra (root finding, traces); its cardinality
    /// is not bounded, only its degree.
    pub fn algebraic(q: u64, k: usize) -> Result<Self> {
        if k > MAX_ALGEBRAIC_DEGREE {
            return Err(Error::DegreeOutOfRange { q, degree: k, limit: u128::MAX });
        }
        Self::with_limit(q, k, None)
    }

    pub fn prime(q: u64) -> Result<Self> {
        Self::with_limit(q, 1, None)
    }

    /// Builds `F_{q^k}` with the lexicographically smallest monic irreducible
    /// modulus, where polynomials are ordered by the integer
    /// `c_0 + c_1 q + ... + c_{k-1} q^{k-1}` of their non-leading coefficients.
    pub fn with_limit(q: u64, k: usize, limit: Option<u128>) -> Result<Self> {
        require_prime(q)?;
        let cardinality = BigUint::from(q).pow(k as u32);
        if k < 1 {
            return Err(Error::DegreeOutOfRange { q, degree: k, limit: limit.unwrap_or(u128::MAX) });
        }
        if let Some(limit) = limit {
            if cardinality > BigUint::from(limit) {
                return Err(Error::DegreeOutOfRange { q, degree: k, limit });
            }
        }
        let prime_field =
            FieldContext(Arc::new(FieldInner { q, k: 1, modulus: None, cardinality: BigUint::from(q) }));
        if k == 1 {
            return Ok(prime_field);
        }
        let modulus = smallest_irreducible(&prime_field, k);
        Ok(FieldContext(Arc::new(FieldInner { q, k, modulus: Some(modulus), cardinality })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.q
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.0.cardinality
    }

    /// Cardinality as a `u128`, if it fits.
    pub fn cardinality_u128(&self) -> Option<u128> {
        self.0.cardinality.to_u128()
    }

    pub fn zero(&self) -> FqElement {
        FqElement { field: self.clone(), coeffs: vec![0; self.0.k] }
    }

    pub fn one(&self) -> FqElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FqElement {
        let mut e = self.zero();
        e.coeffs[0] = n % self.0.q;
        e
    }

    pub fn from_i64(&self, n: i64) -> FqElement {
        let q = self.0.q as i128;
        let r = (n as i128).rem_euclid(q) as u64;
        self.from_u64(r)
    }

    /// Element with the given coefficients on `1, t, t^2, ...` (reduced mod q;
    /// missing high coefficients are zero).
    pub fn element(&self, coeffs: &[u64]) -> FqElement {
        assert!(coeffs.len() <= self.0.k, "too many coefficients for F_{}^{}", self.0.q, self.0.k);
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % self.0.q;
        }
        e
    }

    /// The residue class of `t`, a generator of the field over `F_q`
    /// (for the prime field, this is 0 as there is no adjoined generator).
    pub fn generator(&self) -> FqElement {
        if self.0.k == 1 {
            return self.zero();
        }
        self.element(&[0, 1])
    }

    /// The element whose base-q digit expansion is `index`.
    pub fn from_index(&self, mut index: u128) -> FqElement {
        let q = self.0.q as u128;
        let mut e = self.zero();
        for slot in e.coeffs.iter_mut() {
            *slot = (index % q) as u64;
            index /= q;
        }
        e
    }

    /// Iterates every element, in index order. Refuses fields above the
    /// enumeration bound.
    pub fn elements(&self) -> Result<impl Iterator<Item = FqElement> + '_> {
        let n = self.enumerable_cardinality()?;
        Ok((0..n).map(move |i| self.from_index(i)))
    }

    pub fn enumerable_cardinality(&self) -> Result<u128> {
        match self.cardinality_u128() {
            Some(n) if n <= ENUMERATION_BOUND => Ok(n),
            _ => Err(Error::FieldTooLarge {
                cardinality: self.cardinality_u128().unwrap_or(u128::MAX),
                limit: ENUMERATION_BOUND,
            }),
        }
    }

    /// Product of raw coefficient vectors reduced by the modulus.
    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let q = self.0.q;
        let k = self.0.k;
        if k == 1 {
            return vec![mul_mod(a[0], b[0], q)];
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let s = prod[i + j] + mul_mod(x, y, q);
                prod[i + j] = if s >= q { s - q } else { s };
            }
        }
        let modulus = self.0.modulus.as_ref().expect("extension field has a modulus");
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // t^top = -sum modulus[i] t^(top-k+i)
            for (i, &m) in modulus[..k].iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let idx = top - k + i;
                let sub = mul_mod(c, m, q);
                prod[idx] = if prod[idx] >= sub { prod[idx] - sub } else { prod[idx] + q - sub };
            }
            prod[top] = 0;
        }
        prod.truncate(k);
        prod
    }
}

/// Finds the smallest monic irreducible of degree `k` over the prime field.
fn smallest_irreducible(prime_field: &FieldContext, k: usize) -> Vec<u64> {
    use super::factor::is_irreducible_raw;
    let q = prime_field.characteristic();
    let mut digits = vec![0u64; k];
    loop {
        // skip candidates divisible by x
        if digits[0] != 0 {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            if is_irreducible_raw(prime_field, &coeffs) {
                return coeffs;
            }
        }
        // increment base-q counter, lowest digit first
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial of degree {k} over F_{q}");
        }
    }
}

/// An element of `F_{q^k}`, stored as its fully reduced coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElement {
    field: FieldContext,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Ord for FqElement {
    /// Orders by base-q digit value (highest coefficient most significant).
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl PartialOrd for FqElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FqElement {
    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u128 {
        let q = self.field.0.q as u128;
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        let q = self.field.0.q;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= q {
                    s - q
                } else {
                    s
                }
            })
            .collect();
        FqElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        let q = self.field.0.q;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| if a >= b { a - b } else { a + q - b })
            .collect();
        FqElement { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let q = self.field.0.q;
        let coeffs = self.coeffs.iter().map(|&a| if a == 0 { 0 } else { q - a }).collect();
        FqElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        FqElement { field: self.field.clone(), coeffs: self.field.mul_raw(&self.coeffs, &other.coeffs) }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn scale(&self, c: u64) -> Self {
        let q = self.field.0.q;
        let c = c % q;
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c, q)).collect();
        FqElement { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> Self {
        if self.field.0.k == 1 {
            return self.field.from_u64(pow_mod(self.coeffs[0], exp, self.field.0.q));
        }
        self.pow(&BigUint::from(exp))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.0.k == 1 {
            return Some(self.field.from_u64(inv_mod_prime(self.coeffs[0], self.field.0.q)));
        }
        let exp = self.field.cardinality() - BigUint::from(2u32);
        Some(self.pow(&exp))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    /// `x -> x^q`.
    pub fn frobenius(&self) -> Self {
        self.pow_u64(self.field.0.q)
    }

    /// Absolute trace `Tr_{F_{q^k}/F_q}`, returned as a prime-field residue.
    pub fn absolute_trace(&self) -> u64 {
        let mut acc = self.clone();
        let mut conj = self.clone();
        for _ in 1..self.field.0.k {
            conj = conj.frobenius();
            acc = acc.add(&conj);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    /// Quadratic character in odd characteristic: 0, 1 or -1.
    pub fn quadratic_character(&self) -> i32 {
        assert!(self.field.0.q != 2, "quadratic character needs odd characteristic");
        if self.is_zero() {
            return 0;
        }
        let exp = (self.field.cardinality() - BigUint::one()) >> 1u32;
        if self.pow(&exp).is_one() {
            1
        } else {
            -1
        }
    }

    /// `x^(1/q)`, the inverse of Frobenius.
    pub fn frobenius_inverse(&self) -> Self {
        let mut r = self.clone();
        for _ in 1..self.field.0.k {
            r = r.frobenius();
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_has_no_modulus() {
        let f = make_field(5, 1).unwrap();
        assert!(f.modulus().is_none());
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn f16_modulus_is_x4_x_1() {
        let f = make_field(2, 4).unwrap();
        assert_eq!(f.modulus().unwrap(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn composite_and_oversized_rejected() {
        assert!(matches!(make_field(4, 2), Err(Error::NotPrime(_))));
        assert!(matches!(make_field(5, 0), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(make_field(2, 20), Err(Error::DegreeOutOfRange { .. })));
        assert!(make_field(13, 4).is_ok());
        assert!(FieldContext::algebraic(2, 40).is_ok());
    }

    #[test]
    fn inverse_and_field_size() {
        let f = make_field(3, 4).unwrap();
        for e in f.elements().unwrap().skip(1) {
            let inv = e.inv().unwrap();
            assert!(e.mul(&inv).is_one(), "{e:?}");
        }
        // every element satisfies x^Q = x
        let q = f.cardinality().clone();
        for e in f.elements().unwrap() {
            assert_eq!(e.pow(&q), e);
        }
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        let f = make_field(2, 4).unwrap();
        let zeros = f.elements().unwrap().filter(|e| e.absolute_trace() == 0).count();
        assert_eq!(zeros, 8);
        let a = f.element(&[1, 0, 1]);
        let b = f.element(&[0, 1, 1, 1]);
        assert_eq!(a.add(&b).absolute_trace(), (a.absolute_trace() + b.absolute_trace()) % 2);
    }

    #[test]
    fn mixed_contexts_detected() {
        let a = make_field(5, 1).unwrap().one();
        let b = make_field(7, 1).unwrap().one();
        assert_eq!(a.same_field(&b), Err(Error::MixedContexts));
        // independently built contexts for the same field are interchangeable
        let c = make_field(5, 1).unwrap().one();
        assert!(a.same_field(&c).is_ok());
    }
}
