use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::divpoly::division_poly;
use crate::curve::{CurveOver, FieldOps, Point, Rationals, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::nt::{factor, require_prime, TRIAL_DIVISION_LIMIT};
use crate::zpoly::IntPoly;

/// Candidate numerators above this magnitude are not searched.
pub const DIVISOR_BOUND: u64 = 1_000_000_000;

/// A rational point, as `(x, y)`.
pub type RationalPoint = (BigRational, BigRational);

/// Upper bound on the absolute value of any complex root of `poly`
/// (Fujiwara's bound, rounded up to an integer).
fn root_bound(poly: &IntPoly) -> BigUint {
    let n = poly.degree().expect("nonzero polynomial");
    let lead = poly.leading().expect("nonzero").magnitude().clone();
    let mut best = BigUint::zero();
    for i in 1..=n {
        let c = poly.coeff(n - i).magnitude().clone();
        if c.is_zero() {
            continue;
        }
        // the constant term enters as |a_0 / (2 a_n)|
        let den = if i == n { &lead << 1u32 } else { lead.clone() };
        let ratio = c.div_ceil(&den);
        let mut root = ratio.nth_root(i as u32);
        if root.pow(i as u32) < ratio {
            root += 1u32;
        }
        best = best.max(root);
    }
    2u32 * best + 1u32
}

fn divisors_of(factors: &[(BigUint, u32)], limit: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (prime, exp) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut power = d.clone();
            for _ in 0..=*exp {
                if &power > limit {
                    break;
                }
                next.push(power.clone());
                power *= prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Positive numerators `a <= limit` dividing `constant`.
fn candidate_numerators(constant: &BigInt, limit: &BigUint) -> Result<Vec<BigUint>> {
    if limit > &BigUint::from(DIVISOR_BOUND) {
        return Err(Error::DivisorSearchExhausted(DIVISOR_BOUND));
    }
    let magnitude = constant.magnitude();
    if let Some(small_limit) = limit.to_u64().filter(|&l| l <= TRIAL_DIVISION_LIMIT) {
        return Ok((1..=small_limit)
            .map(BigUint::from)
            .filter(|a| (magnitude % a).is_zero())
            .collect());
    }
    match factor(constant) {
        Ok(factors) => Ok(divisors_of(&factors, limit)),
        Err(Error::FactoringIncomplete(_)) => Err(Error::DivisorSearchExhausted(DIVISOR_BOUND)),
        Err(e) => Err(e),
    }
}

/// Whether a nonnegative rational is the square of a rational; returns the root.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Rational roots of `psi_p`, ascending.
pub fn rational_x_roots(curve: &WeierstrassCurve, p: u64) -> Result<Vec<BigRational>> {
    let psi = division_poly(curve, p as i64)?.primitive_part();
    let (reduced, x_power) = psi.strip_x_power();
    let mut roots = Vec::new();
    if x_power > 0 {
        roots.push(BigRational::zero());
    }
    if reduced.degree().unwrap_or(0) > 0 {
        let bound = root_bound(&reduced);
        let lead = reduced.leading().expect("nonzero").clone();
        let constant = reduced.coeff(0);
        let lead_divisors = divisors_of(&factor(&lead)?, lead.magnitude());
        for b in &lead_divisors {
            let b_int = BigInt::from_biguint(Sign::Plus, b.clone());
            for a in candidate_numerators(&constant, &(&bound * b))? {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for sign in [1i32, -1] {
                    let a_int = BigInt::from_biguint(Sign::Plus, a.clone()) * sign;
                    if reduced.eval_homogeneous(&a_int, &b_int).is_zero() {
                        roots.push(BigRational::new(a_int, b_int.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Searches for a rational point of exact order `p` (an odd prime): rational
/// roots of `psi_p` by the rational root theorem, then a rational `y` from the
/// curve equation. `None` means no such point was found within the search
/// bounds; the search is complete for roots of magnitude below
/// [`DIVISOR_BOUND`].
pub fn rational_p_torsion(curve: &WeierstrassCurve, p: u64) -> Result<Option<RationalPoint>> {
    require_prime(p)?;
    let over = CurveOver::new(curve, &Rationals);
    let f = &Rationals;
    for x in rational_x_roots(curve, p)? {
        let (beta, gamma) = over.y_quadratic(&x);
        // y = (-beta +- sqrt(beta^2 - 4 gamma)) / 2
        let disc = f.sub(&f.mul(&beta, &beta), &f.mul(&f.from_int(&BigInt::from(4)), &gamma));
        let Some(root) = rational_sqrt(&disc) else { continue };
        let two = BigRational::from_integer(BigInt::from(2));
        let mut ys = [(-&beta - &root) / &two, (-&beta + &root) / &two];
        ys.sort();
        for y in ys {
            let point = Point::Affine(x.clone(), y.clone());
            debug_assert!(over.contains(&point));
            if over.mul(&point, p).is_infinity() {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}
