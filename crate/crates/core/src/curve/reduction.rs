use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::points::trace_of_frobenius;
use super::weierstrass::{is_square_in_qq, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::nt::{require_prime, valuation};

/// Reduction type of a minimal model at a rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionType {
    Good { trace: i64 },
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive { potentially_multiplicative: bool },
}

impl ReductionType {
    pub fn is_good(&self) -> bool {
        matches!(self, ReductionType::Good { .. })
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative)
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionType::Good { trace } => write!(f, "good (a = {trace})"),
            ReductionType::SplitMultiplicative => write!(f, "split multiplicative"),
            ReductionType::NonsplitMultiplicative => write!(f, "nonsplit multiplicative"),
            ReductionType::Additive { potentially_multiplicative: true } => {
                write!(f, "additive, potentially multiplicative")
            }
            ReductionType::Additive { potentially_multiplicative: false } => {
                write!(f, "additive, potentially good")
            }
        }
    }
}

/// Rejects models that fail the cheap minimality test at `q`
/// (`v_q(disc) >= 12` together with `v_q(c4) >= 4`).
pub fn check_minimal_at(curve: &WeierstrassCurve, q: u64) -> Result<()> {
    let inv = curve.invariants()?;
    let vd = valuation(&inv.discriminant, q).expect("nonzero discriminant");
    let vc4 = valuation(&inv.c4, q).unwrap_or(u32::MAX);
    if vd >= 12 && vc4 >= 4 {
        return Err(Error::PossiblyNonMinimal(q));
    }
    Ok(())
}

/// Reduction type at the prime `q`, deciding split versus nonsplit by whether
/// `-c6` is a square in `Q_q`.
pub fn reduction_type(curve: &WeierstrassCurve, q: u64) -> Result<ReductionType> {
    require_prime(q)?;
    check_minimal_at(curve, q)?;
    let inv = curve.invariants()?;
    let vd = valuation(&inv.discriminant, q).expect("nonzero discriminant");
    if vd == 0 {
        return Ok(ReductionType::Good { trace: trace_of_frobenius(curve, q)? });
    }
    match valuation(&inv.c4, q) {
        Some(0) => {
            let minus_c6 = -&inv.c6;
            // q | disc and q does not divide c4 force c6 to be a q-unit
            if is_square_in_qq(&minus_c6, q)? {
                Ok(ReductionType::SplitMultiplicative)
            } else {
                Ok(ReductionType::NonsplitMultiplicative)
            }
        }
        vc4 => {
            let vc4 = vc4.unwrap_or(u32::MAX) as u64;
            Ok(ReductionType::Additive { potentially_multiplicative: 3 * vc4 < vd as u64 })
        }
    }
}

/// Good reduction at `p` with `a_p` a unit mod `p`.
pub fn is_good_ordinary(curve: &WeierstrassCurve, p: u64) -> Result<bool> {
    let disc = curve.discriminant()?;
    if valuation(&disc, p) != Some(0) {
        return Ok(false);
    }
    let a_p = trace_of_frobenius(curve, p)?;
    Ok(a_p.rem_euclid(p as i64) != 0)
}

/// Convenience: `BigInt` discriminant valuation at `q`.
pub fn discriminant_valuation(curve: &WeierstrassCurve, q: u64) -> Result<u32> {
    let disc: BigInt = curve.discriminant()?;
    Ok(valuation(&disc, q).expect("nonzero discriminant"))
}
