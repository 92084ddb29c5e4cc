//! Exact arithmetic in explicit finite fields `F_{q^k}` and in polynomial
//! rings over them.

mod factor;
mod field;
mod poly;
mod quadratic;

pub use factor::{
    distinct_degree_split, find_root, is_irreducible, poly_factor, roots, squarefree_decomposition,
    Factorization,
};
pub use field::{make_field, FieldContext, FqElement, ENUMERATION_BOUND, MAX_ALGEBRAIC_DEGREE};
pub use poly::FqPoly;
pub use quadratic::{count_quadratic_roots, quadratic_root_count, QuadraticRoots};
