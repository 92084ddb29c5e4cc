use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::weierstrass::WeierstrassCurve;
use crate::arith::{quadratic_root_count, FieldContext, FqElement};
use crate::error::{Error, Result};
use crate::nt::reduce_mod;

/// The field operations the group law needs.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

impl FieldOps for FieldContext {
    type Elem = FqElement;

    fn zero(&self) -> FqElement {
        FieldContext::zero(self)
    }
    fn one(&self) -> FqElement {
        FieldContext::one(self)
    }
    fn from_int(&self, n: &BigInt) -> FqElement {
        self.from_u64(reduce_mod(n, self.characteristic()))
    }
    fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        a.add(b)
    }
    fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        a.sub(b)
    }
    fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        a.mul(b)
    }
    fn inv(&self, a: &FqElement) -> Option<FqElement> {
        a.inv()
    }
    fn is_zero(&self, a: &FqElement) -> bool {
        a.is_zero()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// A Weierstrass curve with its coefficients mapped into a field.
pub struct CurveOver<'f, F: FieldOps> {
    field: &'f F,
    a1: F::Elem,
    a2: F::Elem,
    a3: F::Elem,
    a4: F::Elem,
    a6: F::Elem,
}

impl<'f, F: FieldOps> CurveOver<'f, F> {
    pub fn new(curve: &WeierstrassCurve, field: &'f F) -> Self {
        let [a1, a2, a3, a4, a6] = curve.a.each_ref().map(|c| field.from_int(c));
        CurveOver { field, a1, a2, a3, a4, a6 }
    }

    pub fn field(&self) -> &F {
        self.field
    }

    /// `(beta, gamma)` such that the points above `x` are the roots of
    /// `y^2 + beta y + gamma`.
    pub fn y_quadratic(&self, x: &F::Elem) -> (F::Elem, F::Elem) {
        let f = self.field;
        let beta = f.add(&f.mul(&self.a1, x), &self.a3);
        // x^3 + a2 x^2 + a4 x + a6, Horner
        let rhs = f.add(&f.mul(&f.add(&f.mul(&f.add(x, &self.a2), x), &self.a4), x), &self.a6);
        (beta, f.sub(&f.zero(), &rhs))
    }

    pub fn contains(&self, p: &Point<F::Elem>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let f = self.field;
                let (beta, gamma) = self.y_quadratic(x);
                let value = f.add(&f.mul(&f.add(y, &beta), y), &gamma);
                f.is_zero(&value)
            }
        }
    }

    pub fn neg(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let f = self.field;
                let (beta, _) = self.y_quadratic(x);
                Point::Affine(x.clone(), f.sub(&f.sub(&f.zero(), y), &beta))
            }
        }
    }

    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let f = self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            // P = -Q, including 2-torsion doubling
            let (beta, _) = self.y_quadratic(x2);
            if f.is_zero(&f.add(&f.add(y1, y2), &beta)) {
                return Point::Infinity;
            }
            // (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
            let three = f.from_int(&BigInt::from(3));
            let two = f.from_int(&BigInt::from(2));
            let num = f.sub(
                &f.add(&f.add(&f.mul(&three, &f.mul(x1, x1)), &f.mul(&two, &f.mul(&self.a2, x1))), &self.a4),
                &f.mul(&self.a1, y1),
            );
            let den = f.add(&f.mul(&two, y1), &beta);
            f.mul(&num, &f.inv(&den).expect("non-2-torsion point"))
        } else {
            let den = f.inv(&f.sub(x2, x1)).expect("distinct x");
            f.mul(&f.sub(y2, y1), &den)
        };
        let nu = f.sub(y1, &f.mul(&lambda, x1));
        let x3 = f.sub(
            &f.sub(&f.sub(&f.add(&f.mul(&lambda, &lambda), &f.mul(&self.a1, &lambda)), &self.a2), x1),
            x2,
        );
        let y3 = f.sub(&f.sub(&f.sub(&f.zero(), &f.mul(&f.add(&lambda, &self.a1), &x3)), &nu), &self.a3);
        Point::Affine(x3, y3)
    }

    /// `n * P` by double-and-add.
    pub fn mul(&self, p: &Point<F::Elem>, n: u64) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Exact order of `p`, if it is at most `bound`.
    pub fn order_up_to(&self, p: &Point<F::Elem>, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }
}

/// `#E(F_{q^k})`, including the point at infinity, by enumerating `x` and
/// counting the roots of the `y`-quadratic.
pub fn count_points(curve: &WeierstrassCurve, field: &FieldContext) -> Result<u64> {
    let q = field.characteristic();
    let disc = curve.discriminant()?;
    if reduce_mod(&disc, q) == 0 {
        return Err(Error::BadReduction(q));
    }
    let over = CurveOver::new(curve, field);
    let mut count = 1u64;
    for x in field.elements()? {
        let (beta, gamma) = over.y_quadratic(&x);
        count += quadratic_root_count(&beta, &gamma)? as u64;
    }
    Ok(count)
}

/// `a_q = q + 1 - #E(F_q)` for a prime `q` of good reduction.
pub fn trace_of_frobenius(curve: &WeierstrassCurve, q: u64) -> Result<i64> {
    let field = crate::arith::make_field(q, 1)?;
    let n = count_points(curve, &field)?;
    Ok(q as i64 + 1 - n as i64)
}

/// Traces of `Frob^m` from `a_q`: `t_0 = 2`, `t_1 = a_q`,
/// `t_m = a_q t_{m-1} - q t_{m-2}`.
pub fn frobenius_power_traces(a_q: i64, q: u64, up_to: usize) -> Vec<i128> {
    let mut t = vec![2i128, a_q as i128];
    while t.len() <= up_to {
        let m = t.len();
        t.push(a_q as i128 * t[m - 1] - q as i128 * t[m - 2]);
    }
    t.truncate(up_to + 1);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::make_field;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    /// Independent oracle: loop over every (x, y) pair and test the equation
    /// with plain integer arithmetic mod q.
    fn naive_count(a: [i64; 5], q: i64) -> u64 {
        let [a1, a2, a3, a4, a6] = a;
        let mut n = 1;
        for x in 0..q {
            for y in 0..q {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs - rhs).rem_euclid(q) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn counts_match_double_loop() {
        let e = [1, 0, 0, 1, 0];
        assert_eq!(naive_count(e, 5), 8);
        assert_eq!(naive_count(e, 2), 4);
        assert_eq!(count_points(&curve(e), &make_field(5, 1).unwrap()).unwrap(), 8);
        assert_eq!(count_points(&curve(e), &make_field(2, 1).unwrap()).unwrap(), 4);
        assert_eq!(count_points(&curve([0, 0, 0, 1, 0]), &make_field(3, 1).unwrap()).unwrap(), 4);
        assert_eq!(trace_of_frobenius(&curve(e), 5).unwrap(), -2);
        assert_eq!(trace_of_frobenius(&curve(e), 2).unwrap(), -1);
        for q in [5i64, 11, 13, 17, 19, 23] {
            assert_eq!(
                count_points(&curve(e), &make_field(q as u64, 1).unwrap()).unwrap(),
                naive_count(e, q),
                "q = {q}"
            );
        }
    }

    #[test]
    fn bad_reduction_refused() {
        let e = curve([1, 0, 0, 1, 0]);
        assert_eq!(count_points(&e, &make_field(3, 2).unwrap()), Err(Error::BadReduction(3)));
        assert_eq!(count_points(&e, &make_field(7, 1).unwrap()), Err(Error::BadReduction(7)));
    }

    #[test]
    fn group_law_over_rationals() {
        // y^2 = x^3 + 1: (2, 3) has order 6, (0, 1) has order 3
        let e = curve([0, 0, 0, 0, 1]);
        let over = CurveOver::new(&e, &Rationals);
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        let p = Point::Affine(q(2), q(3));
        assert!(over.contains(&p));
        assert_eq!(over.order_up_to(&p, 12), Some(6));
        assert_eq!(over.add(&p, &p), Point::Affine(q(0), q(1)));
        assert_eq!(over.order_up_to(&Point::Affine(q(0), q(1)), 12), Some(3));
    }

    #[test]
    fn group_law_char2_closure() {
        let e = curve([1, 0, 0, 1, 0]);
        let f = make_field(2, 4).unwrap();
        let over = CurveOver::new(&e, &f);
        let mut pts = vec![Point::Infinity];
        for x in f.elements().unwrap() {
            let (beta, gamma) = over.y_quadratic(&x);
            for y in crate::arith::count_quadratic_roots(&beta, &gamma).unwrap().roots {
                pts.push(Point::Affine(x.clone(), y));
            }
        }
        let n = count_points(&e, &f).unwrap();
        assert_eq!(pts.len() as u64, n);
        for p in &pts {
            assert!(over.mul(p, n).is_infinity());
            for r in pts.iter().take(5) {
                assert!(over.contains(&over.add(p, r)));
            }
        }
    }

    #[test]
    fn trace_recurrence_small() {
        assert_eq!(frobenius_power_traces(-2, 5, 3), vec![2, -2, -6, 22]);
    }
}
