//! Canonical JSON and plain-text rendering of reports, plus serde helpers
//! that write big numbers as decimal strings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{ClassificationReport, ProPStatus};

/// Serialize any `Display + FromStr` value as a string.
pub mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub mod decimal_opt {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(D::Error::custom)).transpose()
    }
}

pub mod decimal_vec {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for item in v {
            seq.serialize_element(&item.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
    }
}

pub mod decimal_pair_opt {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &Option<(T, T)>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some((a, b)) => s.serialize_some(&[a.to_string(), b.to_string()]),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<(T, T)>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        match Option::<[String; 2]>::deserialize(d)? {
            None => Ok(None),
            Some([a, b]) => Ok(Some((a.parse().map_err(D::Error::custom)?, b.parse().map_err(D::Error::custom)?))),
        }
    }
}

/// Pretty JSON with object keys sorted at every level, newline-terminated.
pub fn to_canonical_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    // serde_json::Value keeps object keys in a BTreeMap
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn set(xs: &[u64]) -> String {
    let items: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text report: P0, reduction types, torsion, then the conclusion.
pub fn render_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let input = &r.input;
    let p = input.p;
    let e = &input.curve_e;
    let a = &input.curve_a;
    let describe = |c: &crate::classify::CurveDescriptor| {
        let v: Vec<String> = c.a_invariants.iter().map(|x| x.to_string()).collect();
        match &c.label {
            Some(l) => format!("{l} [{}]", v.join(",")),
            None => format!("[{}]", v.join(",")),
        }
    };
    let _ = writeln!(out, "E = {}", describe(e));
    let _ = writeln!(out, "A = {}", describe(a));
    let _ = writeln!(out, "p = {p}, K = Q(mu_{p})");
    let _ = writeln!(out);
    let _ = writeln!(out, "P0 = {}  (bad primes of A away from p; disc(A) = {})", set(&r.summary.p0), a.discriminant);
    let _ = writeln!(out);

    let _ = writeln!(out, "Reduction of E:");
    for v in &r.evidence {
        let _ = write!(out, "  q = {}: {}, f = {}", v.q, v.reduction_over_q, v.f);
        if let Some(s) = v.split_over_k {
            let _ = write!(out, ", split over K_v: {}", yes_no(s));
        }
        let _ = writeln!(out, ", Euler factor {}", v.euler_factor);
    }
    let _ = writeln!(out);

    let _ = writeln!(out, "Torsion of E along the residue towers:");
    let mut any = false;
    for v in &r.evidence {
        if let Some(t) = &v.torsion_profile {
            any = true;
            let _ = writeln!(
                out,
                "  q = {}: psi_{} over F_{}^{} has factor degrees {:?}, point degrees {:?}; p-torsion in tower: {}",
                v.q,
                p,
                v.q,
                t.f,
                t.x_factor_degrees,
                t.point_degrees,
                yes_no(t.has_p_power_point_degree())
            );
        }
    }
    if !any {
        let _ = writeln!(out, "  (no good primes in P0)");
    }
    let _ = writeln!(out);

    let h = &r.hypotheses;
    let _ = writeln!(out, "Hypotheses:");
    match h.a_p {
        Some(t) => {
            let _ = writeln!(out, "  a_{p}(E) = {t}, good ordinary at {p}: {}", yes_no(h.ordinary_ok));
        }
        None => {
            let _ = writeln!(out, "  E has bad reduction at {p}");
        }
    }
    if let Some(b) = &h.unit_root {
        let _ = writeln!(out, "  unit root b = {b}");
    }
    let _ = writeln!(out, "  no complex multiplication on E or A: {}", yes_no(h.cm_free_ok));
    match (&h.pro_p.status, &h.pro_p.point) {
        (ProPStatus::Verified, Some((x, y))) => {
            let _ = writeln!(out, "  K_inf/K pro-{p}: verified by the point ({x}, {y}) of order {p} on A");
        }
        _ => {
            let _ = writeln!(out, "  K_inf/K pro-{p}: inconclusive");
        }
    }
    let _ = writeln!(out);

    let s = &r.summary;
    let _ = writeln!(out, "Conclusion:");
    let _ = writeln!(out, "  P1 = {}, P2 = {}", set(&s.p1), set(&s.p2));
    let _ = writeln!(out, "  |P1(K^cyc)| = {}, |P2(K^cyc)| = {}", s.n1_cyc, s.n2_cyc);
    for v in r.evidence.iter().filter(|v| v.twist.is_some()) {
        let tw = v.twist.as_ref().expect("filtered");
        let parts: Vec<String> = tw.homology.iter().map(|h| format!("H_{} = {}", h.degree, h.twist)).collect();
        let _ = writeln!(out, "  local homology at q = {} ({}): {}", v.q, v.class, parts.join(", "));
    }
    if let Some(d) = &s.determinant {
        let _ = writeln!(out, "  determinant exponents ({}, {}), nontrivial: {}", d.lower, d.upper, yes_no(d.nontrivial));
    }
    match &s.rank {
        Some(rank) => {
            let _ = writeln!(out, "  Lambda(H)-rank = {rank}");
        }
        None => {
            let _ = writeln!(out, "  Lambda(H)-rank: needs rk_Zp");
        }
    }
    let _ = writeln!(out, "  verdict: {}", s.verdict);
    if !s.caveats.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "Caveats:");
        for c in &s.caveats {
            let _ = writeln!(out, "  - {c}");
        }
    }
    out
}
