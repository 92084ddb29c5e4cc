use super::factor::roots;
use super::field::FqElement;
use super::poly::FqPoly;
use crate::error::Result;

/// Solutions of `y^2 + beta*y + gamma = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRoots {
    pub count: u32,
    /// The distinct roots, ascending by index.
    pub roots: Vec<FqElement>,
}

/// Number of solutions `y` of `y^2 + beta*y + gamma = 0` in the common field
/// of `beta` and `gamma`, without finding them.
///
/// Odd characteristic: `1 + chi(beta^2 - 4 gamma)`. Characteristic 2: one root
/// when `beta = 0` (squaring is bijective), otherwise two or none according
/// to whether `Tr(gamma / beta^2)` vanishes.
pub fn quadratic_root_count(beta: &FqElement, gamma: &FqElement) -> Result<u32> {
    beta.same_field(gamma)?;
    let field = beta.field();
    if field.characteristic() == 2 {
        if beta.is_zero() {
            return Ok(1);
        }
        let c = gamma.div(&beta.square())?;
        return Ok(if c.absolute_trace() == 0 { 2 } else { 0 });
    }
    let disc = beta.square().sub(&gamma.scale(4));
    Ok((1 + disc.quadratic_character()) as u32)
}

/// Root count together with the roots themselves.
pub fn count_quadratic_roots(beta: &FqElement, gamma: &FqElement) -> Result<QuadraticRoots> {
    let count = quadratic_root_count(beta, gamma)?;
    let field = beta.field();
    let roots = if count == 0 {
        Vec::new()
    } else {
        let poly = FqPoly::new(field, vec![gamma.clone(), beta.clone(), field.one()])?;
        roots(&poly)?
    };
    debug_assert_eq!(roots.len() as u32, count);
    Ok(QuadraticRoots { count, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;
    use crate::error::Error;

    #[test]
    fn y_squared_is_four_mod_5() {
        let f = make_field(5, 1).unwrap();
        let r = count_quadratic_roots(&f.zero(), &f.from_i64(-4)).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.roots, vec![f.from_u64(2), f.from_u64(3)]);
    }

    #[test]
    fn char2_cases() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(quadratic_root_count(&f.one(), &f.one()).unwrap(), 0);
        for g in [f.zero(), f.one()] {
            let r = count_quadratic_roots(&f.zero(), &g).unwrap();
            assert_eq!(r.count, 1);
            assert_eq!(r.roots, vec![g]);
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = make_field(5, 1).unwrap().one();
        let b = make_field(2, 2).unwrap().one();
        assert_eq!(quadratic_root_count(&a, &b), Err(Error::MixedContexts));
    }
}
