use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A long Weierstrass equation `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub a: [BigInt; 5],
}

/// The standard invariants of a Weierstrass model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub discriminant: BigInt,
    /// `c4^3 / disc` in lowest terms.
    pub j: BigRational,
}

/// Rational j-invariants of the CM curves over Q, keyed by the discriminant
/// of the CM order (the thirteen orders of class number one).
pub const CM_J_INVARIANTS: [(i64, i64); 13] = [
    (-3, 0),
    (-4, 1728),
    (-7, -3375),
    (-8, 8000),
    (-11, -32768),
    (-12, 54000),
    (-16, 287496),
    (-19, -884736),
    (-27, -12288000),
    (-28, 16581375),
    (-43, -884736000),
    (-67, -147197952000),
    (-163, -262537412640768000),
];

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

impl WeierstrassCurve {
    /// Builds the curve, rejecting singular models.
    pub fn new(a: [BigInt; 5]) -> Result<Self> {
        let curve = WeierstrassCurve { a };
        curve.invariants()?;
        Ok(curve)
    }

    pub fn from_i64s(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(BigInt::from))
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }

    /// b-invariants without the nonsingularity check.
    pub fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let [b2, b4, b6, b8] = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6: BigInt = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
        let discriminant: BigInt =
            -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        if discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        let j = BigRational::new(&c4 * &c4 * &c4, discriminant.clone());
        Ok(Invariants { b2, b4, b6, b8, c4, c6, discriminant, j })
    }

    pub fn discriminant(&self) -> Result<BigInt> {
        Ok(self.invariants()?.discriminant)
    }

    /// Discriminant of the CM order when the curve has complex multiplication.
    pub fn is_cm(&self) -> Result<Option<i64>> {
        let j = self.invariants()?.j;
        if !j.denom().is_one() {
            return Ok(None);
        }
        let numer = j.numer();
        Ok(CM_J_INVARIANTS.iter().find(|(_, cm_j)| BigInt::from(*cm_j) == *numer).map(|(d, _)| *d))
    }

    /// Applies `x = x' + r`, `y = y' + s x' + t` (the `u = 1` coordinate change).
    pub fn change_coordinates(&self, r: &BigInt, s: &BigInt, t: &BigInt) -> Self {
        let [a1, a2, a3, a4, a6] = &self.a;
        let na1 = a1 + 2 * s;
        let na2 = a2 - s * a1 + 3 * r - s * s;
        let na3 = a3 + r * a1 + 2 * t;
        let na4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        WeierstrassCurve { a: [na1, na2, na3, na4, na6] }
    }
}

/// Whether the nonzero integer `x` is a square in `Q_q`.
pub fn is_square_in_qq(x: &BigInt, q: u64) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let big_q = BigInt::from(q);
    let mut u = x.clone();
    let mut e = 0u32;
    loop {
        let (quot, rem) = u.div_rem(&big_q);
        if !rem.is_zero() {
            break;
        }
        u = quot;
        e += 1;
    }
    if e % 2 == 1 {
        return Ok(false);
    }
    if q == 2 {
        return Ok(u.mod_floor(&BigInt::from(8)) == BigInt::one());
    }
    let residue = crate::nt::reduce_mod(&u, q);
    Ok(crate::nt::legendre(residue, q) == 1)
}

impl Invariants {
    pub fn j_is_integral(&self) -> bool {
        self.j.denom().is_one()
    }

    /// `|disc|`, handy for factoring.
    pub fn abs_discriminant(&self) -> BigInt {
        self.discriminant.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    #[test]
    fn invariants_of_21a4() {
        let inv = curve([1, 0, 0, 1, 0]).invariants().unwrap();
        assert_eq!(inv.discriminant, BigInt::from(-63));
        assert_eq!(inv.c4, BigInt::from(-47));
        assert_eq!(inv.c6, BigInt::from(71));
        // 1728 disc = c4^3 - c6^2 and 4 b8 = b2 b6 - b4^2
        assert_eq!(BigInt::from(1728) * &inv.discriminant, inv.c4.pow(3) - inv.c6.pow(2));
        assert_eq!(4 * &inv.b8, &inv.b2 * &inv.b6 - &inv.b4 * &inv.b4);
    }

    #[test]
    fn discriminant_and_j_of_small_curves() {
        assert_eq!(curve([0, 0, 0, 0, 1]).discriminant().unwrap(), BigInt::from(-432));
        let j = curve([0, 0, 0, 1, 0]).invariants().unwrap().j;
        assert_eq!(j, BigRational::from_integer(BigInt::from(1728)));
        assert_eq!(WeierstrassCurve::from_i64s([0, 0, 0, 0, 0]), Err(Error::SingularCurve));
    }

    #[test]
    fn cm_detection() {
        assert_eq!(curve([1, 0, 0, 1, 0]).is_cm().unwrap(), None);
        assert_eq!(curve([0, 0, 0, 0, 1]).is_cm().unwrap(), Some(-3));
        assert_eq!(curve([0, 0, 0, 1, 0]).is_cm().unwrap(), Some(-4));
        assert_eq!(curve([1, 0, 0, -355303, -89334583]).is_cm().unwrap(), None);
        // 27a1, j = 0
        assert_eq!(curve([0, 0, 1, 0, -7]).is_cm().unwrap(), Some(-3));
    }

    #[test]
    fn local_squares() {
        assert!(is_square_in_qq(&BigInt::from(-71), 3).unwrap());
        assert!(!is_square_in_qq(&BigInt::from(-71), 7).unwrap());
        assert!(!is_square_in_qq(&BigInt::from(18), 2).unwrap());
        assert!(is_square_in_qq(&BigInt::from(-7 * 4), 2).unwrap());
        assert!(is_square_in_qq(&BigInt::from(9 * 25), 5).unwrap());
        assert_eq!(is_square_in_qq(&BigInt::zero(), 5), Err(Error::ZeroInput));
    }

    #[test]
    fn coordinate_change_preserves_discriminant() {
        let e = curve([1, 0, 0, 1, 0]);
        let e2 = e.change_coordinates(&BigInt::from(2), &BigInt::from(-1), &BigInt::from(3));
        let (i1, i2) = (e.invariants().unwrap(), e2.invariants().unwrap());
        assert_eq!(i1.discriminant, i2.discriminant);
        assert_eq!(i1.c4, i2.c4);
        assert_eq!(i1.c6, i2.c6);
    }
}
