//! Division polynomials and the fields of definition of `p`-torsion points,
//! both over finite residue fields and over Q.

mod divpoly;
mod profile;
mod rational;

pub use divpoly::{division_poly, DivisionPolynomials};
pub use profile::{has_p_torsion_in_cyc_tower, torsion_point_degrees, TorsionDegreeProfile, XFactor};
pub use rational::{rational_p_torsion, rational_x_roots, RationalPoint, DIVISOR_BOUND};
