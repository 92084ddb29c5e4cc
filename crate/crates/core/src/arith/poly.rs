use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::field::{FieldContext, FqElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a [`FieldContext`], lowest degree first.
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: FieldContext,
    coeffs: Vec<FqElement>,
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let extension = self.field.degree() > 1;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if extension && !c.is_one() && i > 0 { format!("({c})") } else { c.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{coeff}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{coeff}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FqPoly {
    pub fn new(field: &FieldContext, mut coeffs: Vec<FqElement>) -> Result<Self> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::MixedContexts);
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(FqPoly { field: field.clone(), coeffs })
    }

    fn from_trusted(field: &FieldContext, mut coeffs: Vec<FqElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field: field.clone(), coeffs }
    }

    /// Polynomial with prime-field coefficients given as residues.
    pub fn from_u64s(field: &FieldContext, coeffs: &[u64]) -> Self {
        Self::from_trusted(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn zero(field: &FieldContext) -> Self {
        FqPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldContext) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FqElement) -> Self {
        let field = c.field().clone();
        Self::from_trusted(&field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &FieldContext) -> Self {
        FqPoly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    /// `x - root`.
    pub fn linear(root: &FqElement) -> Self {
        let field = root.field().clone();
        FqPoly { coeffs: vec![root.neg(), field.one()], field }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&FqElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FqElement) -> Self {
        Self::from_trusted(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn evaluate(&self, x: &FqElement) -> FqElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::from_trusted(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Self::from_trusted(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_trusted(&self.field, out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_trusted(&self.field, quot), Self::from_trusted(&self.field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; panics (in debug) when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division of {self} by {divisor}");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(i as u64)).collect();
        Self::from_trusted(&self.field, coeffs)
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let base = self.rem(modulus).expect("nonzero modulus");
        let mut acc = Self::one(&self.field).rem(modulus).expect("nonzero modulus");
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Applies `c -> c^(1/q)` coefficientwise and substitutes `x^q -> x`.
    /// Only meaningful when every exponent with a nonzero coefficient is a
    /// multiple of the characteristic.
    pub fn pth_root(&self) -> Self {
        let q = self.field.characteristic() as usize;
        let coeffs = self.coeffs.iter().step_by(q).map(|c| c.frobenius_inverse()).collect();
        Self::from_trusted(&self.field, coeffs)
    }

    /// Canonical ordering key: degree first, then coefficients from the top
    /// down, each compared by its base-q digit value.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
