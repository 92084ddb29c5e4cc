use std::collections::HashMap;

use num_bigint::BigInt;

use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::zpoly::IntPoly;

/// Univariate division polynomials of a fixed curve.
///
/// For odd `n` the stored polynomial is `psi_n` itself. For even `n` it is
/// `psi_n / psi_2`, where `psi_2 = 2y + a1 x + a3`; every product that would
/// contain `psi_2^2` has it replaced by `4x^3 + b2 x^2 + 2 b4 x + b6`.
pub struct DivisionPolynomials {
    psi2_squared: IntPoly,
    cache: HashMap<u64, IntPoly>,
}

impl DivisionPolynomials {
    pub fn new(curve: &WeierstrassCurve) -> Self {
        let [b2, b4, b6, b8] = curve.b_invariants();
        let i = |n: i64| BigInt::from(n);
        let psi2_squared = IntPoly::new(vec![b6.clone(), 2 * &b4, b2.clone(), i(4)]);
        let psi3 = IntPoly::new(vec![b8.clone(), 3 * &b6, 3 * &b4, b2.clone(), i(3)]);
        let psi4_over_psi2 = IntPoly::new(vec![
            &b4 * &b8 - &b6 * &b6,
            &b2 * &b8 - &b4 * &b6,
            10 * &b8,
            10 * &b6,
            5 * &b4,
            b2.clone(),
            i(2),
        ]);
        let mut cache = HashMap::new();
        cache.insert(0, IntPoly::default());
        cache.insert(1, IntPoly::constant(i(1)));
        cache.insert(2, IntPoly::constant(i(1)));
        cache.insert(3, psi3);
        cache.insert(4, psi4_over_psi2);
        DivisionPolynomials { psi2_squared, cache }
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`.
    pub fn psi2_squared(&self) -> &IntPoly {
        &self.psi2_squared
    }

    /// The stored polynomial for index `n` (see the type docs for even `n`).
    pub fn get(&mut self, n: u64) -> IntPoly {
        if let Some(p) = self.cache.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let f2 = self.psi2_squared.square();
        let result = if n % 2 == 1 {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            let a = self.get(m + 2).mul(&self.get(m).square().mul(&self.get(m)));
            let b = self.get(m - 1).mul(&self.get(m + 1).square().mul(&self.get(m + 1)));
            if m.is_multiple_of(2) {
                f2.mul(&a).sub(&b)
            } else {
                a.sub(&f2.mul(&b))
            }
        } else {
            // psi_{2m} psi_2 = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
            let inner = self
                .get(m + 2)
                .mul(&self.get(m - 1).square())
                .sub(&self.get(m - 2).mul(&self.get(m + 1).square()));
            self.get(m).mul(&inner)
        };
        self.cache.insert(n, result.clone());
        result
    }
}

/// `psi_n(x)` for odd `n`; `psi_n / psi_2` for even `n`.
pub fn division_poly(curve: &WeierstrassCurve, n: i64) -> Result<IntPoly> {
    if n < 1 {
        return Err(Error::BadIndex(n));
    }
    Ok(DivisionPolynomials::new(curve).get(n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zpoly::IntPoly;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    #[test]
    fn base_cases() {
        let e = curve([0, 0, 0, 0, 1]);
        assert_eq!(division_poly(&e, 1).unwrap(), IntPoly::from_i64s(&[1]));
        assert_eq!(division_poly(&e, 3).unwrap(), IntPoly::from_i64s(&[0, 12, 0, 0, 3]));
        assert_eq!(division_poly(&e, 0), Err(Error::BadIndex(0)));
        assert_eq!(division_poly(&e, -2), Err(Error::BadIndex(-2)));
    }

    #[test]
    fn psi3_general_shape() {
        let e = curve([1, 0, 0, 1, 0]);
        let [b2, b4, b6, b8] = e.b_invariants();
        let expected = IntPoly::new(vec![b8, 3 * b6, 3 * b4, b2, BigInt::from(3)]);
        assert_eq!(division_poly(&e, 3).unwrap(), expected);
    }

    #[test]
    fn odd_degrees_and_leading_coefficients() {
        for a in [[1, 0, 0, 1, 0], [0, 0, 0, 1, 0], [0, -1, 1, -10, -20]] {
            let e = curve(a);
            for n in [3i64, 5, 7, 9] {
                let p = division_poly(&e, n).unwrap();
                assert_eq!(p.degree(), Some(((n * n - 1) / 2) as usize));
                assert_eq!(p.leading(), Some(&BigInt::from(n)));
            }
        }
    }

    #[test]
    fn psi5_of_21a4_mod_small_primes() {
        // frozen from an independent computer-algebra evaluation of the recurrence
        let p = division_poly(&curve([1, 0, 0, 1, 0]), 5).unwrap();
        let mod_n = |n: i64| -> Vec<i64> {
            p.coeffs().iter().map(|c| (c % BigInt::from(n) + n) % n).map(|c| c.try_into().unwrap()).collect()
        };
        assert_eq!(mod_n(2), vec![1, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1]);
        // x^12 + x^11 - 3x^10 + 4x^9 + 5x^8 - 5x^7 + 2x^6 - 3x^5 - x^4 + 6x^3 + 3x^2 - 5, times 5, mod 13
        let monic13: Vec<i64> = vec![-5, 0, 3, 6, -1, -3, 2, -5, 5, 4, -3, 1, 1];
        let expected: Vec<i64> = monic13.iter().map(|c| (5 * c).rem_euclid(13)).collect();
        assert_eq!(mod_n(13), expected);
    }
}
