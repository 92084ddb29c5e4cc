//! Factorization over `F_{q^k}`: squarefree decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting driven by a
//! fixed-seed ChaCha stream so that repeated runs take identical paths.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldContext, FqElement};
use super::poly::FqPoly;
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5e1_3e12_0f00_d5ed;

/// A complete factorization `leading * prod(factor^multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: FqElement,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn reconstruct(&self) -> FqPoly {
        self.factors
            .iter()
            .fold(FqPoly::constant(self.leading.clone()), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.deg(), *e as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Irreducibility over the field of `f`, by the `gcd(x^(Q^d) - x, f)` criterion
/// for `d <= deg f / 2`.
pub fn is_irreducible(f: &FqPoly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let x = FqPoly::x(f.field());
    let q = f.field().cardinality().clone();
    let mut h = x.rem(&f)?;
    for _ in 1..=n / 2 {
        h = h.pow_mod(&q, &f);
        if !h.sub(&x).gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Irreducibility of a monic prime-field polynomial given as residues.
pub(crate) fn is_irreducible_raw(prime_field: &FieldContext, coeffs: &[u64]) -> bool {
    is_irreducible(&FqPoly::from_u64s(prime_field, coeffs)).unwrap_or(false)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with the
/// `g` squarefree, pairwise coprime, and `f = prod g^m`.
pub fn squarefree_decomposition(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    debug_assert!(f.is_monic());
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let p = f.field().characteristic() as u32;
    let df = f.derivative();
    if df.is_zero() {
        // f is a p-th power
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree: pairs `(product, d)`.
pub fn distinct_degree_split(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FqPoly::x(f.field());
    let q = f.field().cardinality().clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

fn random_poly(field: &FieldContext, below_degree: usize, rng: &mut ChaCha8Rng) -> FqPoly {
    let q = field.characteristic();
    let k = field.degree();
    let coeffs: Vec<FqElement> = (0..below_degree)
        .map(|_| {
            let digits: Vec<u64> = (0..k).map(|_| rng.gen_range(0..q)).collect();
            field.element(&digits)
        })
        .collect();
    FqPoly::new(field, coeffs).expect("same field")
}

/// Cantor-Zassenhaus: splits a monic squarefree `f` whose irreducible factors
/// all have degree `d`.
pub fn equal_degree_split(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    debug_assert!(n.is_multiple_of(d));
    let field = f.field();
    let q = field.characteristic();
    let one = FqPoly::one(field);
    // odd characteristic exponent (Q^d - 1) / 2
    let half_exp = (field.cardinality().pow(d as u32) - BigUint::one()) >> 1u32;
    let trace_len = field.degree() * d;
    loop {
        let a = random_poly(field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            return [equal_degree_split(&g, d, rng), equal_degree_split(&f.exact_div(&g), d, rng)].concat();
        }
        let b = if q == 2 {
            let mut t = a.rem(f).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..trace_len {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod(&half_exp, f).sub(&one)
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            return [equal_degree_split(&g, d, rng), equal_degree_split(&f.exact_div(&g), d, rng)].concat();
        }
    }
}

/// Full factorization into monic irreducibles, canonically ordered.
pub fn poly_factor(f: &FqPoly) -> Result<Factorization> {
    let leading = f.leading().ok_or(Error::ZeroPolynomial)?.clone();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors: Vec<(FqPoly, u32)> = Vec::new();
    for (sq, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree_split(&sq) {
            for g in equal_degree_split(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    // merge repeated factors
    let mut merged: Vec<(FqPoly, u32)> = Vec::with_capacity(factors.len());
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization { leading, factors: merged })
}

/// All distinct roots of `f` in its coefficient field, ascending by index.
pub fn roots(f: &FqPoly) -> Result<Vec<FqElement>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let monic = f.monic();
    let x = FqPoly::x(f.field());
    let xq = x.pow_mod(f.field().cardinality(), &monic);
    let linear_part = xq.sub(&x).gcd(&monic);
    if linear_part.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out: Vec<FqElement> = equal_degree_split(&linear_part, 1, &mut rng)
        .into_iter()
        .map(|lin| lin.coeff(0).neg())
        .collect();
    out.sort();
    Ok(out)
}

/// Some root of `f`, the smallest by index, if one exists in the field.
pub fn find_root(f: &FqPoly) -> Result<Option<FqElement>> {
    Ok(roots(f)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;

    fn p(field: &FieldContext, c: &[u64]) -> FqPoly {
        FqPoly::from_u64s(field, c)
    }

    #[test]
    fn irreducibility_small_cases() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let f2 = make_field(2, 1).unwrap();
        assert!(is_irreducible(&p(&f3, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&f5, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&f2, &[1, 1, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&f2, &[1, 0, 0, 1, 1])).unwrap());
        assert!(!is_irreducible(&p(&f2, &[1, 0, 1, 0, 1])).unwrap());
        assert_eq!(is_irreducible(&FqPoly::zero(&f2)), Err(Error::ZeroPolynomial));
    }

    // Exhaustive oracle: x^4 + x + 1 has no divisor of degree 1 or 2 over F_2,
    // and every monic quartic that precedes it in the search order is reducible.
    #[test]
    fn x4_x_1_is_first_irreducible_quartic() {
        let f2 = make_field(2, 1).unwrap();
        let divides_any_low_degree = |c: &[u64]| {
            let target = p(&f2, c);
            (2u64..8).any(|code| {
                let d: Vec<u64> = (0..3).map(|i| (code >> i) & 1).collect();
                let div = p(&f2, &d);
                div.deg() >= 1 && div.divides(&target)
            })
        };
        assert!(!divides_any_low_degree(&[1, 1, 0, 0, 1]));
        for code in 0u64..3 {
            let c: Vec<u64> = (0..4).map(|i| (code >> i) & 1).chain([1]).collect();
            assert!(divides_any_low_degree(&c), "{c:?}");
        }
    }

    #[test]
    fn difference_of_squares() {
        let f5 = make_field(5, 1).unwrap();
        let fac = poly_factor(&p(&f5, &[4, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f5, &[1, 1]), 1), (p(&f5, &[4, 1]), 1)]);
    }

    #[test]
    fn perfect_square() {
        let f3 = make_field(3, 1).unwrap();
        let fac = poly_factor(&p(&f3, &[1, 2, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f3, &[1, 1]), 2)]);
    }

    #[test]
    fn pth_power_input() {
        // (x^2 + 1)^3 * (x + 2) over F_3 = x^6-shaped p-th power times a linear
        let f3 = make_field(3, 1).unwrap();
        let base = p(&f3, &[1, 0, 1]).pow(3).mul(&p(&f3, &[2, 1]));
        let fac = poly_factor(&base).unwrap();
        assert_eq!(fac.factors, vec![(p(&f3, &[2, 1]), 1), (p(&f3, &[1, 0, 1]), 3)]);
        assert_eq!(fac.reconstruct(), base);
    }

    #[test]
    fn char2_extension_split() {
        let f16 = make_field(2, 4).unwrap();
        // x^16 - x splits into all 16 linear factors over F_16
        let mut c = vec![0u64; 17];
        c[16] = 1;
        c[1] = 1;
        let fac = poly_factor(&p(&f16, &c)).unwrap();
        assert_eq!(fac.factors.len(), 16);
        assert!(fac.factors.iter().all(|(g, e)| g.deg() == 1 && *e == 1));
    }

    #[test]
    fn roots_of_x_q_minus_x_are_everything() {
        let f9 = make_field(3, 2).unwrap();
        let mut c = vec![0u64; 10];
        c[9] = 1;
        c[1] = 2;
        let r = roots(&p(&f9, &c)).unwrap();
        let all: Vec<_> = f9.elements().unwrap().collect();
        assert_eq!(r, all);
    }

    #[test]
    fn factoring_is_deterministic() {
        let f = make_field(13, 2).unwrap();
        let poly = FqPoly::new(&f, (0..9).map(|i| f.from_index(i * 37 + 5)).collect()).unwrap();
        assert_eq!(poly_factor(&poly).unwrap(), poly_factor(&poly).unwrap());
    }
}
