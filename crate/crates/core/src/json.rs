//! JSON wire formats for scalars, families, equations, certificates and
//! reports.

use serde_json::{json, Map, Value};

use crate::algebra::{parse_rational, CycloField, Field, Poly, Rational, Scalar};
use crate::construct::{DependenceCertificate, ProbeKind, ProbeReport};
use crate::error::{Error, Result};
use crate::family::{BigExponentReport, Family, ShiftedPower};
use crate::polya::{MonteCarloReport, SweepReport};
use crate::sde::{Sde, SdeParams};
use crate::waring::WaringReport;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        let n = q.to_integer();
        match i64::try_from(&n) {
            Ok(small) => json!(small),
            Err(_) => json!(n.to_string()),
        }
    } else {
        json!(q.to_string())
    }
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(bad(format!("expected an integer or \"p/q\", got {n}"))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

/// Integers as numbers, fractions as `"p/q"`, field elements as
/// `{"k": conductor, "coeffs": [...]}` in the power basis.
pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Rational(q) => rational_to_json(q),
        Scalar::Cyclo(c) => json!({
            "k": c.field().conductor(),
            "coeffs": c.coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::Object(m) => {
            let k = m.get("k").and_then(Value::as_u64).ok_or_else(|| bad("cyclotomic scalar needs integer \"k\""))?;
            let coeffs = m
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("cyclotomic scalar needs \"coeffs\" array"))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            let k = u32::try_from(k).map_err(|_| bad("conductor too large"))?;
            Ok(CycloField::new(k)?.element(coeffs))
        }
        other => rational_from_json(other).map(Scalar::Rational),
    }
}

pub fn field_to_json(f: &Field) -> Value {
    match f.conductor() {
        None => json!("rational"),
        Some(k) => json!({ "cyclotomic": k }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) if s == "rational" => Ok(Field::Rational),
        Value::Object(m) => {
            let k = m.get("cyclotomic").and_then(Value::as_u64).ok_or_else(|| bad("expected {\"cyclotomic\": k}"))?;
            Field::cyclotomic(u32::try_from(k).map_err(|_| bad("conductor too large"))?)
        }
        other => Err(bad(format!("unknown field {other}"))),
    }
}

/// `"rational"` or `"cyclotomic:k"`, as used on the command line.
pub fn parse_field_tag(s: &str) -> Result<Field> {
    if s == "rational" {
        return Ok(Field::Rational);
    }
    let k = s
        .strip_prefix("cyclotomic:")
        .and_then(|k| k.parse::<u32>().ok())
        .ok_or_else(|| Error::Domain(format!("field must be rational or cyclotomic:k, got {s}")))?;
    Field::cyclotomic(k)
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| bad("polynomial must be a coefficient array"))?;
    Ok(Poly::new(arr.iter().map(scalar_from_json).collect::<Result<_>>()?))
}

fn family_map(f: &Family) -> Map<String, Value> {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|t| json!({ "shift": scalar_to_json(&t.shift), "exponent": t.exponent }))
        .collect();
    let mut m = Map::new();
    m.insert("field".into(), field_to_json(f.field()));
    m.insert("terms".into(), Value::Array(terms));
    m
}

pub fn family_to_json(f: &Family) -> Value {
    Value::Object(family_map(f))
}

/// Accepts a bare family object or any report that nests one under `"family"`.
pub fn family_from_json(v: &Value) -> Result<Family> {
    if v.get("terms").is_none() {
        if let Some(inner) = v.get("family") {
            return family_from_json(inner);
        }
    }
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("family needs a \"terms\" array"))?
        .iter()
        .map(|t| {
            let shift = scalar_from_json(t.get("shift").ok_or_else(|| bad("term needs \"shift\""))?)?;
            let e = t.get("exponent").and_then(Value::as_u64).ok_or_else(|| bad("term needs integer \"exponent\""))?;
            Ok(ShiftedPower::new(shift, u32::try_from(e).map_err(|_| bad("exponent too large"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    match v.get("field") {
        Some(f) => Family::new(field_from_json(f)?, terms),
        None => Family::from_terms(terms),
    }
}

pub fn sde_to_json(e: &Sde) -> Value {
    json!({
        "t": e.params.t,
        "k": e.params.k,
        "l": e.params.l,
        "coefficients": e.coefficients.iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn sde_from_json(v: &Value) -> Result<Sde> {
    let get = |key: &str| -> Result<u32> {
        let n = v.get(key).and_then(Value::as_u64).ok_or_else(|| bad(format!("equation needs integer \"{key}\"")))?;
        u32::try_from(n).map_err(|_| bad(format!("\"{key}\" too large")))
    };
    let coefficients = v
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("equation needs \"coefficients\""))?
        .iter()
        .map(poly_from_json)
        .collect::<Result<Vec<_>>>()?;
    Sde::new(SdeParams::new(get("t")?, get("k")?, get("l")?), coefficients)
}

pub fn certificate_to_json(c: &DependenceCertificate) -> Value {
    let mut m = family_map(c.family());
    m.insert("coefficients".into(), Value::Array(c.coefficients().iter().map(scalar_to_json).collect()));
    m.insert("target".into(), poly_to_json(c.target()));
    Value::Object(m)
}

/// Parses and re-verifies a certificate.
pub fn certificate_from_json(v: &Value) -> Result<DependenceCertificate> {
    let family = family_from_json(v)?;
    let coefficients = v
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("certificate needs \"coefficients\""))?
        .iter()
        .map(scalar_from_json)
        .collect::<Result<Vec<_>>>()?;
    let target = match v.get("target") {
        Some(t) => poly_from_json(t)?,
        None => Poly::zero(),
    };
    DependenceCertificate::new(family, coefficients, target)
}

pub fn waring_to_json(r: &WaringReport) -> Value {
    let mut v = json!({
        "rank": r.rank,
        "certificate_poly": poly_to_json(&r.certificate),
        "squarefree": r.squarefree,
        "real_roots_numeric": r.real_roots,
        "root_at_infinity": r.root_at_infinity,
    });
    if let Some(res) = r.residual {
        v["residual"] = json!(res);
    }
    v
}

pub fn monte_carlo_to_json(r: &MonteCarloReport) -> Value {
    json!({
        "s": r.s,
        "set_size": r.set_size,
        "trials": r.trials,
        "seed": r.seed,
        "frequency": r.frequency,
        "bound": r.bound,
        "pass": r.pass,
    })
}

pub fn sweep_to_json(r: &SweepReport) -> Value {
    json!({
        "s": r.s,
        "set_size": r.set_size,
        "trials": r.trials,
        "seed": r.seed,
        "sequences": r.sequences,
        "frequency": r.frequency,
        "bound": r.bound,
        "vacuous_bound": r.vacuous,
        "pass": r.pass,
    })
}

pub fn big_exponent_to_json(r: &BigExponentReport) -> Value {
    json!({
        "s": r.s,
        "min_exponent": r.min_exponent,
        "real_rule": r.real_rule,
        "complex_rule": r.complex_rule,
        "alpha": rational_to_json(&r.alpha),
        "threshold": r.threshold,
        "dimension_lower_bound": r.lower_bound,
    })
}

pub fn probe_to_json(r: &ProbeReport) -> Value {
    let kind = match r.config.kind {
        ProbeKind::BigExp { s, a, b } => json!({ "kind": "bigexp", "s": s, "a": a, "b": b }),
        ProbeKind::Gmk { s, d } => json!({ "kind": "gmk", "s": s, "d": d }),
    };
    json!({
        "probe": kind,
        "conductor": r.config.conductor,
        "seed": r.config.seed,
        "search_space": r.search_space,
        "exhaustive": r.exhaustive,
        "candidates": r.candidates,
        "eligible": r.eligible,
        "verdict": r.verdict(),
        "counterexample": r.counterexample.as_ref().map(certificate_to_json),
        "known_witness": r.known_witness.as_ref().map(certificate_to_json),
    })
}

pub fn error_to_json(e: &Error) -> Value {
    let kind = match e {
        Error::DivisionByZero => "division_by_zero",
        Error::FieldMismatch { .. } => "field_mismatch",
        Error::InexactDivision => "inexact_division",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::DuplicateTerm { .. } => "duplicate_term",
        Error::DuplicateNode(_) => "duplicate_node",
        Error::EmptyFamily => "empty_family",
        Error::NonRationalShift(_) => "non_rational_shift",
        Error::Precondition(_) => "precondition",
        Error::Domain(_) => "domain",
        Error::EnumerationTooLarge { .. } => "enumeration_too_large",
        Error::RootIsolation { .. } => "root_isolation",
        Error::VerificationFailed(_) => "verification_failed",
        Error::Parse(_) => "parse",
    };
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::construct::{h3_witness, unity_dependence_family};

    #[test]
    fn scalar_round_trip() {
        let f = CycloField::new(5).unwrap();
        for x in [
            Scalar::from_int(-7),
            Scalar::Rational(ratio(3, 4)),
            f.generator(),
            &f.root_power(3) * &Scalar::Rational(ratio(-2, 9)),
        ] {
            assert_eq!(scalar_from_json(&scalar_to_json(&x)).unwrap(), x);
        }
        assert_eq!(scalar_to_json(&Scalar::Rational(ratio(1, 2))), json!("1/2"));
        assert_eq!(scalar_to_json(&Scalar::from_int(3)), json!(3));
        assert!(scalar_from_json(&json!(1.5)).is_err());
    }

    #[test]
    fn family_round_trip() {
        let f = Family::from_int_pairs(&[(-1, 2), (1, 2), (0, 1)]).unwrap();
        let v = family_to_json(&f);
        assert_eq!(v["field"], json!("rational"));
        assert_eq!(family_from_json(&v).unwrap(), f);
        let dup = json!({"field": "rational", "terms": [{"shift": 1, "exponent": 2}, {"shift": 1, "exponent": 2}]});
        assert!(matches!(family_from_json(&dup), Err(Error::DuplicateTerm { .. })));
    }

    #[test]
    fn certificate_round_trip() {
        for c in [h3_witness(), unity_dependence_family(3, 9, &ratio(1, 2)).unwrap()] {
            let v = certificate_to_json(&c);
            assert_eq!(certificate_from_json(&v).unwrap(), c);
            let mut broken = v.clone();
            broken["coefficients"][0] = json!(5);
            assert!(matches!(certificate_from_json(&broken), Err(Error::VerificationFailed(_))));
        }
    }

    #[test]
    fn sde_round_trip() {
        let f = Family::from_int_pairs(&[(0, 3), (2, 4)]).unwrap();
        let e = crate::sde::find_small_sde(&f);
        assert_eq!(sde_from_json(&sde_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn field_tags() {
        assert_eq!(parse_field_tag("rational").unwrap(), Field::Rational);
        assert_eq!(parse_field_tag("cyclotomic:4").unwrap().conductor(), Some(4));
        assert!(parse_field_tag("reals").is_err());
    }
}
