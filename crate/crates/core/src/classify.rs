//! Classification of the primes of `K = Q(mu_p)` that ramify infinitely in
//! `K_inf = Q(A[p^inf])`, following the sets P0 / P1 / P2:
//!
//! * P0: bad primes of `A` away from `p`.
//! * P1: primes of P0 where `E` is split multiplicative at the top of the
//!   local tower.
//! * P2: primes of P0 where `E` has good reduction and picks up nonzero
//!   `p`-torsion along the local cyclotomic tower.
//!
//! All number-field data reduces to the residue degree `f` of `q` in `K` and
//! to `v_p(q^f - 1)`.
//!
//! Split over the tower: a nonsplit multiplicative curve becomes split over
//! the unramified quadratic extension of `Q_q`. That extension sits inside
//! `K_v` exactly when `f` is even, and the pro-p part of the tower above
//! `K_v` cannot supply it when `p >= 5`.
//!
//! Additive primes: the semistability defect of an additive curve divides
//! 12, so for `p >= 5` the reduction stays additive along a pro-p tower over
//! `K_v` and such a prime is in neither P1 nor P2.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::curve::{is_good_ordinary, reduction_type, check_minimal_at, ReductionType, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::lfunc::{
    determinant_exponent, twist_profile, unit_root, DeterminantExponents, EulerFactor, PadicApprox, TwistProfile,
};
use crate::nt::{factor, multiplicative_order, require_prime, valuation};
use crate::torsion::{rational_p_torsion, torsion_point_degrees, TorsionDegreeProfile};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeClass {
    P1,
    P2,
    Neither,
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeClass::P1 => "P1",
            PrimeClass::P2 => "P2",
            PrimeClass::Neither => "Neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEvidence {
    pub q: u64,
    /// Residue degree of `q` in `K`.
    pub f: u64,
    pub reduction_over_q: ReductionType,
    /// Only for multiplicative reduction.
    pub split_over_k: Option<bool>,
    /// Only for good reduction.
    pub torsion_profile: Option<TorsionDegreeProfile>,
    pub tower_torsion: Option<bool>,
    pub class: PrimeClass,
    pub primes_in_k: u64,
    #[serde(with = "crate::report::decimal")]
    pub primes_in_kcyc: BigUint,
    pub euler_factor: EulerFactor,
    pub twist: Option<TwistProfile>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CompletelyFaithfulConditional,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CompletelyFaithfulConditional => "CompletelyFaithfulConditional",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProPStatus {
    Verified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProPCheck {
    pub status: ProPStatus,
    /// A rational point of order `p` on `A`, when one was found.
    #[serde(with = "crate::report::decimal_pair_opt")]
    pub point: Option<(BigRational, BigRational)>,
    pub note: Option<String>,
}

/// Whether the tower `K_inf / K` is pro-p. A `Q`-rational point of order `p`
/// on `A` makes the image of Galois in `GL_2(F_p)` fix a line with trivial
/// determinant over `K`, hence a `p`-group. Absence of a rational point
/// proves nothing (a `K`-rational point would do), so the answer is then
/// Inconclusive, never a failure.
pub fn pro_p_check(a: &WeierstrassCurve, p: u64) -> Result<ProPCheck> {
    match rational_p_torsion(a, p) {
        Ok(Some(point)) => Ok(ProPCheck { status: ProPStatus::Verified, point: Some(point), note: None }),
        Ok(None) => Ok(ProPCheck {
            status: ProPStatus::Inconclusive,
            point: None,
            note: Some(format!("no Q-rational point of order {p} on A; K-rational torsion is not searched")),
        }),
        Err(Error::DivisorSearchExhausted(bound)) => Ok(ProPCheck {
            status: ProPStatus::Inconclusive,
            point: None,
            note: Some(format!("rational root search for psi_{p} exceeded the divisor bound {bound}")),
        }),
        Err(e) => Err(e),
    }
}

/// Primes dividing the discriminant, ascending, each checked for minimality.
pub fn bad_primes(curve: &WeierstrassCurve) -> Result<Vec<u64>> {
    let disc = curve.discriminant()?;
    let mut primes = Vec::new();
    for (q, _) in factor(&disc)? {
        let q = q.to_u64().ok_or_else(|| Error::PrimeTooLarge(BigInt::from(q.clone())))?;
        check_minimal_at(curve, q)?;
        primes.push(q);
    }
    Ok(primes)
}

/// `bad_primes(A) \ {p}`.
pub fn p0_set(a: &WeierstrassCurve, p: u64) -> Result<Vec<u64>> {
    Ok(bad_primes(a)?.into_iter().filter(|&q| q != p).collect())
}

/// Order of `q` in `(Z/p)^*`.
pub fn residue_degree(q: u64, p: u64) -> Result<u64> {
    require_prime(q)?;
    require_prime(p)?;
    if q == p {
        return Err(Error::SamePrime(q));
    }
    multiplicative_order(q % p, p)
}

/// Number of primes of `K^cyc` above `q`:
/// `((p - 1) / f) * p^(v_p(q^f - 1) - 1)`.
pub fn primes_in_kcyc(q: u64, p: u64) -> Result<BigUint> {
    let f = residue_degree(q, p)?;
    let qf_minus_one = BigInt::from(q).pow(f as u32) - 1;
    let v = valuation(&qf_minus_one, p).expect("q^f > 1");
    Ok(BigUint::from((p - 1) / f) * BigUint::from(p).pow(v - 1))
}

pub fn split_over_k(reduction: &ReductionType, f: u64) -> Result<bool> {
    match reduction {
        ReductionType::SplitMultiplicative => Ok(true),
        ReductionType::NonsplitMultiplicative => Ok(f.is_multiple_of(2)),
        _ => Err(Error::NotMultiplicative),
    }
}

pub fn lambda_h_rank(rk_zp: &BigUint, n1_cyc: &BigUint, n2_cyc: &BigUint) -> BigUint {
    rk_zp + n1_cyc + 2u32 * n2_cyc
}

fn require_selmer_prime(p: u64) -> Result<()> {
    if p < 5 || require_prime(p).is_err() {
        return Err(Error::BadSelmerPrime(p));
    }
    Ok(())
}

pub fn classify_prime(e: &WeierstrassCurve, p: u64, q: u64, f: u64) -> Result<PrimeEvidence> {
    require_selmer_prime(p)?;
    if q == p {
        return Err(Error::SamePrime(q));
    }
    let reduction = reduction_type(e, q)?;
    let mut split = None;
    let mut torsion_profile = None;
    let mut tower_torsion = None;
    let class = match reduction {
        ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative => {
            let s = split_over_k(&reduction, f)?;
            split = Some(s);
            if s {
                PrimeClass::P1
            } else {
                PrimeClass::Neither
            }
        }
        ReductionType::Good { .. } => {
            let profile = torsion_point_degrees(e, p, q, f as usize)?;
            let t = profile.has_p_power_point_degree();
            torsion_profile = Some(profile);
            tower_torsion = Some(t);
            if t {
                PrimeClass::P2
            } else {
                PrimeClass::Neither
            }
        }
        ReductionType::Additive { .. } => PrimeClass::Neither,
    };
    let twist = match class {
        PrimeClass::Neither => None,
        c => Some(twist_profile(c)?),
    };
    Ok(PrimeEvidence {
        q,
        f,
        reduction_over_q: reduction,
        split_over_k: split,
        torsion_profile,
        tower_torsion,
        class,
        primes_in_k: (p - 1) / f,
        primes_in_kcyc: primes_in_kcyc(q, p)?,
        euler_factor: EulerFactor::from_reduction(q, &reduction),
        twist,
    })
}

pub fn faithfulness_verdict(
    n1_cyc: &BigUint,
    n2_cyc: &BigUint,
    lambda: Option<u64>,
    mu: Option<u64>,
    ordinary_ok: bool,
    cm_free_ok: bool,
) -> Verdict {
    if n1_cyc.is_one() && *n2_cyc == BigUint::default() && lambda == Some(0) && mu == Some(0) && ordinary_ok && cm_free_ok
    {
        Verdict::CompletelyFaithfulConditional
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub label: Option<String>,
    #[serde(with = "crate::report::decimal_vec")]
    pub a_invariants: Vec<BigInt>,
    #[serde(with = "crate::report::decimal")]
    pub discriminant: BigInt,
    #[serde(with = "crate::report::decimal")]
    pub j_invariant: BigRational,
    pub cm_discriminant: Option<i64>,
}

impl CurveDescriptor {
    pub fn new(curve: &WeierstrassCurve, label: Option<&str>) -> Result<Self> {
        let inv = curve.invariants()?;
        Ok(CurveDescriptor {
            label: label.map(str::to_string),
            a_invariants: curve.a.to_vec(),
            discriminant: inv.discriminant,
            j_invariant: inv.j,
            cm_discriminant: curve.is_cm()?,
        })
    }
}

/// Invariants the tool cannot compute and takes from the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserInvariants {
    pub lambda: Option<u64>,
    pub mu: Option<u64>,
    pub rk_zp: Option<u64>,
    /// Set when the values are the ones assumed in the worked example rather
    /// than supplied by the user.
    pub example_conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInput {
    pub p: u64,
    pub curve_e: CurveDescriptor,
    pub curve_a: CurveDescriptor,
    pub invariants: UserInvariants,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    /// `a_p(E)`, when `E` has good reduction at `p`.
    pub a_p: Option<i64>,
    pub ordinary_ok: bool,
    pub unit_root: Option<PadicApprox>,
    pub cm_free_ok: bool,
    pub pro_p: ProPCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(rename = "P0")]
    pub p0: Vec<u64>,
    #[serde(rename = "P1")]
    pub p1: Vec<u64>,
    #[serde(rename = "P2")]
    pub p2: Vec<u64>,
    #[serde(with = "crate::report::decimal")]
    pub n1_cyc: BigUint,
    #[serde(with = "crate::report::decimal")]
    pub n2_cyc: BigUint,
    /// `Lambda(H)`-rank of the dual Selmer group; needs `rk_zp`.
    #[serde(with = "crate::report::decimal_opt")]
    pub rank: Option<BigUint>,
    pub determinant: Option<DeterminantExponents>,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub input: ReportInput,
    pub hypotheses: Hypotheses,
    pub evidence: Vec<PrimeEvidence>,
    pub summary: Summary,
}

/// A curve together with the label it was looked up under, if any.
#[derive(Clone, Debug)]
pub struct NamedCurve {
    pub label: Option<String>,
    pub curve: WeierstrassCurve,
}

impl NamedCurve {
    pub fn new(label: Option<&str>, curve: WeierstrassCurve) -> Self {
        NamedCurve { label: label.map(str::to_string), curve }
    }
}

pub const CONDITIONAL_CAVEAT: &str =
    "verdict is conditional on the supplied lambda, mu and rk_Zp, which this tool does not compute";
pub const EXAMPLE_CAVEAT: &str =
    "lambda = mu = rk_Zp = 0 are the values assumed for the worked example (finiteness of the Selmer group over K), not computed";
pub const TORSION_CAVEAT: &str =
    "the P2 torsion criterion is evaluated on E, the Selmer curve, not on A";

/// Full report for the Selmer curve `E`, the curve `A` cutting out
/// `K_inf = Q(A[p^inf])`, and the prime `p`.
pub fn classify(e: &NamedCurve, a: &NamedCurve, p: u64, user: &UserInvariants, precision: u32) -> Result<ClassificationReport> {
    require_selmer_prime(p)?;
    let curve_e = CurveDescriptor::new(&e.curve, e.label.as_deref())?;
    let curve_a = CurveDescriptor::new(&a.curve, a.label.as_deref())?;

    let p0 = p0_set(&a.curve, p)?;
    let evidence: Vec<PrimeEvidence> = p0
        .iter()
        .map(|&q| classify_prime(&e.curve, p, q, residue_degree(q, p)?))
        .collect::<Result<_>>()?;
    let members = |c: PrimeClass| -> Vec<u64> { evidence.iter().filter(|v| v.class == c).map(|v| v.q).collect() };
    let count = |c: PrimeClass| -> BigUint {
        evidence.iter().filter(|v| v.class == c).map(|v| &v.primes_in_kcyc).sum()
    };
    let (p1, p2) = (members(PrimeClass::P1), members(PrimeClass::P2));
    let (n1_cyc, n2_cyc) = (count(PrimeClass::P1), count(PrimeClass::P2));

    let e_good_at_p = valuation(&curve_e.discriminant, p) == Some(0);
    let a_p = if e_good_at_p {
        match reduction_type(&e.curve, p)? {
            ReductionType::Good { trace } => Some(trace),
            _ => None,
        }
    } else {
        None
    };
    let ordinary_ok = is_good_ordinary(&e.curve, p)?;
    let unit_root = match a_p {
        Some(t) if ordinary_ok => Some(unit_root(t, p, precision)?),
        _ => None,
    };
    let cm_free_ok = curve_e.cm_discriminant.is_none() && curve_a.cm_discriminant.is_none();
    let pro_p = pro_p_check(&a.curve, p)?;

    let rank = user.rk_zp.map(|rk| lambda_h_rank(&BigUint::from(rk), &n1_cyc, &n2_cyc));
    let determinant = match (n1_cyc.to_u64(), n2_cyc.to_u64()) {
        (Some(n1), Some(n2)) => Some(determinant_exponent(n1, n2)),
        _ => None,
    };
    let verdict = faithfulness_verdict(&n1_cyc, &n2_cyc, user.lambda, user.mu, ordinary_ok, cm_free_ok);

    let mut caveats = Vec::new();
    if user.lambda.is_some() || user.mu.is_some() || user.rk_zp.is_some() {
        caveats.push(CONDITIONAL_CAVEAT.to_string());
    }
    if user.example_conditional {
        caveats.push(EXAMPLE_CAVEAT.to_string());
    }
    let missing: Vec<&str> = [("lambda", user.lambda), ("mu", user.mu), ("rk_Zp", user.rk_zp)]
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(name, _)| *name)
        .collect();
    if !missing.is_empty() {
        caveats.push(format!("not supplied: {}; the verdict cannot be concluded without them", missing.join(", ")));
    }
    caveats.push(TORSION_CAVEAT.to_string());
    if !ordinary_ok {
        caveats.push(format!("E does not have good ordinary reduction at {p}"));
    }
    if !cm_free_ok {
        caveats.push("E or A has complex multiplication".to_string());
    }
    if let Some(note) = &pro_p.note {
        caveats.push(format!("pro-{p} property of K_inf/K not verified: {note}"));
    }

    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        input: ReportInput { p, curve_e, curve_a, invariants: user.clone(), precision },
        hypotheses: Hypotheses { a_p, ordinary_ok, unit_root, cm_free_ok, pro_p },
        evidence,
        summary: Summary { p0, p1, p2, n1_cyc, n2_cyc, rank, determinant, verdict, caveats },
    })
}
