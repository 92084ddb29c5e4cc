//! Weierstrass models over Q: invariants, CM detection, local reduction
//! data, the group law and naive point counting.

mod points;
mod reduction;
mod weierstrass;

pub use points::{
    count_points, frobenius_power_traces, trace_of_frobenius, CurveOver, FieldOps, Point, Rationals,
};
pub use reduction::{check_minimal_at, discriminant_valuation, is_good_ordinary, reduction_type, ReductionType};
pub use weierstrass::{is_square_in_qq, Invariants, WeierstrassCurve, CM_J_INVARIANTS};
