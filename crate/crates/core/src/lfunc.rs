//! Local Euler factors, the unit root of the Frobenius polynomial at an
//! ordinary prime, and the local twist data attached to the primes in the
//! classes P1 and P2.
//!
//! The twist data records, for a prime `v` in P1 or P2, the `H_{v_inf}`-homology
//! of `T_p(E)^*` in degrees 0 and 1. For P1 (split multiplicative at the top of
//! the tower) the Tate parametrization gives `Z_p(-1)` in degree 0 and `Z_p(1)`
//! in degree 1. For P2 the dual Tate module is unramified, so degree 0 is
//! `T_p(E)^*` and degree 1 is `T_p(E)`. The determinant of the product of these
//! local modules is `chi_cyc^(n1 + 2 n2)` against its inverse; the class is
//! nonzero exactly when that exponent is nonzero, since `chi_cyc` has infinite
//! order.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::PrimeClass;
use crate::curve::{reduction_type, ReductionType, WeierstrassCurve};
use crate::error::{Error, Result};

/// Default p-adic precision for unit roots.
pub const DEFAULT_PRECISION: u32 = 20;

/// `P_v(E, T) = c0 + c1 T + c2 T^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerFactor {
    pub q: u64,
    pub coeffs: [i64; 3],
}

impl EulerFactor {
    pub fn from_reduction(q: u64, reduction: &ReductionType) -> Self {
        let coeffs = match reduction {
            ReductionType::Good { trace } => [1, -trace, q as i64],
            ReductionType::SplitMultiplicative => [1, -1, 0],
            ReductionType::NonsplitMultiplicative => [1, 1, 0],
            ReductionType::Additive { .. } => [1, 0, 0],
        };
        EulerFactor { q, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeffs[0])?;
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { '-' } else { '+' };
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 { String::new() } else { mag.to_string() };
            let power = if i == 1 { "T".to_string() } else { format!("T^{i}") };
            write!(f, " {sign} {coeff}{power}")?;
        }
        Ok(())
    }
}

/// Euler factor of `curve` at the prime `q`.
pub fn euler_factor(curve: &WeierstrassCurve, q: u64) -> Result<EulerFactor> {
    Ok(EulerFactor::from_reduction(q, &reduction_type(curve, q)?))
}

/// An integer modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicApprox {
    pub p: u64,
    pub precision: u32,
    #[serde(with = "crate::report::decimal")]
    pub value: BigUint,
}

impl PadicApprox {
    pub fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.precision)
    }

    pub fn is_unit(&self) -> bool {
        !(&self.value % self.p).is_zero()
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.precision)
    }
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// The root `b` of `x^2 - a_p x + p` with `b = a_p mod p`, to precision
/// `p^precision`, by Newton iteration with doubling precision.
pub fn unit_root(a_p: i64, p: u64, precision: u32) -> Result<PadicApprox> {
    let big_p = BigInt::from(p);
    let a = BigInt::from(a_p);
    if a.mod_floor(&big_p).is_zero() {
        return Err(Error::NotOrdinary { a_p, p });
    }
    if precision == 0 {
        return Ok(PadicApprox { p, precision, value: BigUint::zero() });
    }
    let mut x = a.mod_floor(&big_p);
    let mut reached = 1u32;
    while reached < precision {
        reached = (2 * reached).min(precision);
        let m = big_p.pow(reached);
        let fx: BigInt = (&x * &x - &a * &x + &big_p).mod_floor(&m);
        let dfx: BigInt = (&x * 2u32 - &a).mod_floor(&m);
        x = (&x - fx * inverse_mod(&dfx, &m)).mod_floor(&m);
    }
    let value = x.to_biguint().expect("reduced residue is nonnegative");
    Ok(PadicApprox { p, precision, value })
}

/// The non-unit root `c = a_p - b`, so that `b c = p` and `b + c = a_p`.
pub fn co_root(a_p: i64, unit: &PadicApprox) -> PadicApprox {
    let m = BigInt::from_biguint(Sign::Plus, unit.modulus());
    let b = BigInt::from_biguint(Sign::Plus, unit.value.clone());
    let c = (BigInt::from(a_p) - b).mod_floor(&m);
    PadicApprox { p: unit.p, precision: unit.precision, value: c.to_biguint().expect("nonnegative") }
}

/// What the local homology in one degree is isomorphic to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwistDescriptor {
    /// `Z_p(n)`.
    Cyclotomic { exponent: i32 },
    /// `T_p(E)^*`.
    TateModuleDual,
    /// `T_p(E)`.
    TateModule,
}

impl fmt::Display for TwistDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistDescriptor::Cyclotomic { exponent } => write!(f, "Z_p({exponent})"),
            TwistDescriptor::TateModuleDual => write!(f, "T_p(E)^*"),
            TwistDescriptor::TateModule => write!(f, "T_p(E)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTwist {
    pub degree: u8,
    pub twist: TwistDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistProfile {
    pub class: PrimeClass,
    pub homology: Vec<HomologyTwist>,
}

pub fn twist_profile(class: PrimeClass) -> Result<TwistProfile> {
    let homology = match class {
        PrimeClass::P1 => vec![
            HomologyTwist { degree: 0, twist: TwistDescriptor::Cyclotomic { exponent: -1 } },
            HomologyTwist { degree: 1, twist: TwistDescriptor::Cyclotomic { exponent: 1 } },
        ],
        PrimeClass::P2 => vec![
            HomologyTwist { degree: 0, twist: TwistDescriptor::TateModuleDual },
            HomologyTwist { degree: 1, twist: TwistDescriptor::TateModule },
        ],
        PrimeClass::Neither => return Err(Error::NoTwistProfile(class.to_string())),
    };
    Ok(TwistProfile { class, homology })
}

/// Central-character exponents `(-(n1 + 2 n2), n1 + 2 n2)` of the local
/// modifying factors, and whether they differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantExponents {
    pub lower: i64,
    pub upper: i64,
    pub nontrivial: bool,
}

pub fn determinant_exponent(n1_cyc: u64, n2_cyc: u64) -> DeterminantExponents {
    let e = (n1_cyc + 2 * n2_cyc) as i64;
    DeterminantExponents { lower: -e, upper: e, nontrivial: e > 0 }
}
