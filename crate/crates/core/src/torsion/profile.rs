use serde::{Deserialize, Serialize};

use super::divpoly::division_poly;
use crate::arith::{find_root, poly_factor, quadratic_root_count, FieldContext, FqElement, FqPoly};
use crate::curve::{reduction_type, CurveOver, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::nt::require_prime;

/// One irreducible factor of `psi_p` over `F_{q^f}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XFactor {
    /// Degree of the factor, i.e. of the field generated by the x-coordinate.
    pub x_degree: usize,
    /// Degree over `F_{q^f}` of the field of definition of the full points:
    /// `x_degree` or `2 * x_degree`.
    pub point_degree: usize,
    pub multiplicity: u32,
    pub polynomial: String,
}

/// Fields of definition of the nonzero `p`-torsion of the reduction of a
/// curve at `q`, measured over `F_{q^f}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionDegreeProfile {
    pub curve: String,
    pub p: u64,
    pub q: u64,
    pub f: usize,
    /// Ascending, repeated by multiplicity.
    pub x_factor_degrees: Vec<usize>,
    /// Ascending, one entry per x-factor (repeated by multiplicity).
    pub point_degrees: Vec<usize>,
    pub factors: Vec<XFactor>,
}

impl TorsionDegreeProfile {
    /// Whether some `p`-torsion point is defined over `F_{q^(f p^n)}` for some
    /// `n >= 0`, i.e. has a point degree that is a power of `p`.
    pub fn has_p_power_point_degree(&self) -> bool {
        self.point_degrees.iter().any(|&d| is_power_of(d as u64, self.p))
    }

    /// Number of points of exact order `p` in `E(F_{q^(f m)})` predicted by the
    /// profile: each factor whose point degree divides `m` contributes
    /// `2 * x_degree` points (two `y` values per `x`, as `p` is odd).
    pub fn order_p_points_over(&self, m: usize) -> u64 {
        self.factors
            .iter()
            .filter(|fac| m.is_multiple_of(fac.point_degree))
            .map(|fac| 2 * fac.x_degree as u64)
            .sum()
    }
}

fn is_power_of(mut d: u64, p: u64) -> bool {
    while d > 1 && d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

/// Image of `F_{q^f}` inside `F_{q^(f m)}`: the target of the generator.
struct Embedding {
    target: FieldContext,
    generator_image: FqElement,
}

impl Embedding {
    fn new(source: &FieldContext, target: FieldContext) -> Result<Self> {
        let generator_image = match source.modulus() {
            None => target.zero(),
            Some(modulus) => {
                let m = FqPoly::from_u64s(&target, modulus);
                find_root(&m)?.expect("F_{q^f} embeds in F_{q^(f m)}")
            }
        };
        Ok(Embedding { target, generator_image })
    }

    fn map(&self, e: &FqElement) -> FqElement {
        if e.field().degree() == 1 {
            return self.target.from_u64(e.coeffs()[0]);
        }
        e.coeffs()
            .iter()
            .rev()
            .fold(self.target.zero(), |acc, &c| acc.mul(&self.generator_image).add(&self.target.from_u64(c)))
    }

    fn map_poly(&self, p: &FqPoly) -> FqPoly {
        let coeffs = p.coeffs().iter().map(|c| self.map(c)).collect();
        FqPoly::new(&self.target, coeffs).expect("mapped into target")
    }
}

pub(super) fn check_torsion_inputs(curve: &WeierstrassCurve, p: u64, q: u64) -> Result<()> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::SamePrime(q));
    }
    if !reduction_type(curve, q)?.is_good() {
        return Err(Error::BadReduction(q));
    }
    Ok(())
}

/// Factors `psi_p mod q` over `F_{q^f}` and, for each irreducible x-factor of
/// degree `m`, decides whether the `y`-coordinates above one of its roots lie
/// in `F_{q^(f m)}` or only in its quadratic extension.
pub fn torsion_point_degrees(curve: &WeierstrassCurve, p: u64, q: u64, f: usize) -> Result<TorsionDegreeProfile> {
    check_torsion_inputs(curve, p, q)?;
    let base = FieldContext::algebraic(q, f)?;
    let psi = division_poly(curve, p as i64)?.reduce(&base);
    let factorization = poly_factor(&psi)?;

    let mut factors = Vec::with_capacity(factorization.factors.len());
    for (g, mult) in &factorization.factors {
        let m = g.deg();
        let embedding = Embedding::new(&base, FieldContext::algebraic(q, f * m)?)?;
        let x0 = find_root(&embedding.map_poly(g))?.expect("irreducible factor splits in its degree extension");
        let over = CurveOver::new(curve, &embedding.target);
        let (beta, gamma) = over.y_quadratic(&x0);
        let point_degree = if quadratic_root_count(&beta, &gamma)? > 0 { m } else { 2 * m };
        factors.push(XFactor { x_degree: m, point_degree, multiplicity: *mult, polynomial: g.to_string() });
    }

    let expand = |key: fn(&XFactor) -> usize| {
        let mut v: Vec<usize> =
            factors.iter().flat_map(|fac| std::iter::repeat_n(key(fac), fac.multiplicity as usize)).collect();
        v.sort_unstable();
        v
    };
    Ok(TorsionDegreeProfile {
        curve: curve.to_string(),
        p,
        q,
        f,
        x_factor_degrees: expand(|fac| fac.x_degree),
        point_degrees: expand(|fac| fac.point_degree),
        factors,
    })
}

/// Whether `E` acquires a nonzero `p`-torsion point over the completion of
/// the cyclotomic `Z_p`-tower at a prime above `q` with residue degree `f`.
/// The residue fields along that tower are exactly `F_{q^(f p^n)}`.
pub fn has_p_torsion_in_cyc_tower(curve: &WeierstrassCurve, p: u64, q: u64, f: usize) -> Result<bool> {
    Ok(torsion_point_degrees(curve, p, q, f)?.has_p_power_point_degree())
}
