//! JSON serialization of the domain objects. All rationals travel as exact
//! `"p/q"` strings; maps are emitted with sorted keys so reports diff
//! cleanly.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bundle::PLFunction;
use crate::fan::{Fan, FanKind};
use crate::lattice::{MVec, NVec};
use crate::normality::{CheckReport, EquivalenceReport, PointWitness, Verdict};
use crate::rat::{format_rat, parse_rat, Int, Rat};
use crate::roots::{RestrictedRootSystem, SphericalLattice};
use crate::split::SplitWitness;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanDto {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub kind: String,
}

pub fn fan_to_dto(fan: &Fan) -> Result<FanDto> {
    let rays = fan
        .rays
        .iter()
        .map(|r| {
            r.0.iter()
                .map(|x| i64::try_from(x.clone()).map_err(|_| {
                    Error::InvalidInput("ray coordinate exceeds the JSON integer range".into())
                }))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FanDto {
        rank: fan.rank,
        rays,
        max_cones: fan.max_cones.clone(),
        kind: match fan.kind {
            FanKind::Open => "open".into(),
            FanKind::Complete => "complete".into(),
        },
    })
}

pub fn fan_from_dto(dto: &FanDto, validate: bool) -> Result<Fan> {
    let kind = match dto.kind.as_str() {
        "open" => FanKind::Open,
        "complete" => FanKind::Complete,
        other => {
            return Err(Error::InvalidInput(format!(
                "fan kind must be \"open\" or \"complete\", got {other:?}"
            )))
        }
    };
    let rays: Vec<NVec> = dto.rays.iter().map(|r| NVec::from_ints(r)).collect();
    if validate {
        Fan::new(dto.rank, rays, dto.max_cones.clone(), kind)
    } else {
        Fan::new_unchecked(dto.rank, rays, dto.max_cones.clone(), kind)
    }
}

pub fn fan_to_value(fan: &Fan) -> Result<Value> {
    Ok(serde_json::to_value(fan_to_dto(fan)?).expect("fan serializes"))
}

pub fn mvec_to_value(m: &MVec) -> Value {
    Value::Array(m.0.iter().map(|x| Value::String(format_rat(x))).collect())
}

pub fn mvec_from_value(v: &Value) -> Result<MVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rationals".into()))?;
    let mut coords = Vec::with_capacity(arr.len());
    for x in arr {
        coords.push(value_to_rat(x)?);
    }
    Ok(MVec(coords))
}

pub fn value_to_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(Int::from(i)))
            } else {
                Err(Error::InvalidInput(format!("non-integer JSON number {n}")))
            }
        }
        _ => Err(Error::InvalidInput(format!("expected a rational, got {v}"))),
    }
}

/// Root system descriptor: `{"type": "A2"}` or `{"cartan": [[..]], "rank": l}`.
pub fn root_from_value(v: &Value) -> Result<RestrictedRootSystem> {
    if let Some(s) = v.as_str() {
        return RestrictedRootSystem::from_label(s);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("root descriptor must be a string or object".into()))?;
    if let Some(t) = obj.get("type").and_then(|t| t.as_str()) {
        return RestrictedRootSystem::from_label(t);
    }
    let cartan = obj
        .get("cartan")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::InvalidInput("custom root descriptor needs \"cartan\"".into()))?;
    let mut rows = Vec::new();
    for row in cartan {
        let row = row
            .as_array()
            .ok_or_else(|| Error::InvalidInput("cartan must be a matrix".into()))?;
        rows.push(
            row.iter()
                .map(|x| {
                    x.as_i64()
                        .map(Int::from)
                        .ok_or_else(|| Error::InvalidInput("cartan entries must be integers".into()))
                })
                .collect::<Result<Vec<Int>>>()?,
        );
    }
    if let Some(rank) = obj.get("rank").and_then(|r| r.as_u64()) {
        if rank as usize != rows.len() {
            return Err(Error::InvalidInput("rank field disagrees with the cartan size".into()));
        }
    }
    RestrictedRootSystem::new("custom", rows)
}

/// Bundle descriptor: `{"values": {"<ray-index>": "p/q", ..}, "lattice":
/// "default" | {"generators": [[..], ..]}}` or the positional shorthand
/// `values(a, b, c)` in canonical ray order.
pub fn bundle_from_value(
    v: &Value,
    fan: &Fan,
    rs: Option<&RestrictedRootSystem>,
) -> Result<PLFunction> {
    if let Some(s) = v.as_str() {
        return bundle_from_shorthand(s, fan, rs);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("bundle descriptor must be an object".into()))?;
    let values_v = obj
        .get("values")
        .ok_or_else(|| Error::InvalidInput("bundle descriptor needs \"values\"".into()))?;
    let mut values = vec![None; fan.rays.len()];
    match values_v {
        Value::Object(map) => {
            for (key, val) in map {
                let idx: usize = key.parse().map_err(|_| {
                    Error::InvalidInput(format!("ray index {key:?} is not a number"))
                })?;
                if idx >= fan.rays.len() {
                    return Err(Error::InvalidInput(format!(
                        "ray index {idx} out of range (fan has {} rays)",
                        fan.rays.len()
                    )));
                }
                values[idx] = Some(value_to_rat(val)?);
            }
        }
        Value::Array(arr) => {
            if arr.len() != fan.rays.len() {
                return Err(Error::InvalidInput(format!(
                    "expected {} values, got {}",
                    fan.rays.len(),
                    arr.len()
                )));
            }
            for (idx, val) in arr.iter().enumerate() {
                values[idx] = Some(value_to_rat(val)?);
            }
        }
        _ => return Err(Error::InvalidInput("\"values\" must be a map or array".into())),
    }
    let values: Vec<Rat> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::InvalidInput(format!("missing value for ray {i}"))))
        .collect::<Result<_>>()?;
    let lattice = lattice_from_value(obj.get("lattice"), fan.rank, rs)?;
    PLFunction::from_ray_values(fan, values, lattice)
}

fn bundle_from_shorthand(
    s: &str,
    fan: &Fan,
    rs: Option<&RestrictedRootSystem>,
) -> Result<PLFunction> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix("values(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| {
            Error::InvalidInput(format!("bundle shorthand must look like values(a,b,..): {s:?}"))
        })?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != fan.rays.len() {
        return Err(Error::InvalidInput(format!(
            "values(..) lists {} entries but the fan has {} rays",
            parts.len(),
            fan.rays.len()
        )));
    }
    let values: Vec<Rat> = parts
        .iter()
        .map(|p| parse_rat(&p.replace('\u{2212}', "-")))
        .collect::<Result<_>>()?;
    let lattice = lattice_from_value(None, fan.rank, rs)?;
    PLFunction::from_ray_values(fan, values, lattice)
}

pub fn lattice_from_value(
    v: Option<&Value>,
    rank: usize,
    rs: Option<&RestrictedRootSystem>,
) -> Result<SphericalLattice> {
    let default = || match rs {
        Some(rs) => SphericalLattice::default_for(rs),
        None => SphericalLattice::standard(rank),
    };
    let Some(v) = v else { return Ok(default()) };
    if v.is_null() || v.as_str() == Some("default") {
        return Ok(default());
    }
    let gens = v
        .get("generators")
        .and_then(|g| g.as_array())
        .ok_or_else(|| Error::InvalidInput("custom lattice needs \"generators\"".into()))?;
    let generators: Vec<MVec> = gens.iter().map(mvec_from_value).collect::<Result<_>>()?;
    let lat = SphericalLattice::new(generators)?;
    if let Some(rs) = rs {
        if !lat.weyl_compatible(rs)? {
            return Err(Error::InvalidInput(
                "lattice generators must have integral dotted coordinates".into(),
            ));
        }
    }
    Ok(lat)
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Surjective => "surjective",
        Verdict::NotSurjective => "not_surjective",
        Verdict::Unsupported => "unsupported",
    }
}

pub fn witness_to_value(w: &PointWitness) -> Value {
    json!({
        "m": mvec_to_value(&w.m),
        "m1": mvec_to_value(&w.m1),
        "m2": mvec_to_value(&w.m2),
    })
}

pub fn check_report_to_value(r: &CheckReport, include_witnesses: bool) -> Value {
    let mut v = json!({
        "verdict": verdict_str(r.verdict),
        "mode": match r.mode {
            crate::normality::CheckMode::Open => "open",
            crate::normality::CheckMode::Complete => "complete",
        },
        "points_checked": r.points_checked,
        "detail": r.detail,
    });
    if let Some(c) = &r.counterexample {
        v["counterexample"] = mvec_to_value(c);
    }
    if include_witnesses {
        v["witnesses"] = Value::Array(r.witnesses.iter().map(witness_to_value).collect());
    }
    v
}

pub fn equivalence_to_value(r: &EquivalenceReport, include_witnesses: bool) -> Value {
    json!({
        "open": check_report_to_value(&r.open, include_witnesses),
        "complete": check_report_to_value(&r.complete, include_witnesses),
        "agree": r.agree,
    })
}

pub fn split_witness_to_value(w: &SplitWitness) -> Value {
    json!({
        "m": mvec_to_value(&w.m),
        "m1": mvec_to_value(&w.m1),
        "m2": mvec_to_value(&w.m2),
        "trace": w.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn fan_round_trip() {
        let fan = catalog::fan_ex3_2(3, 2).unwrap();
        let dto = fan_to_dto(&fan).unwrap();
        let text = serde_json::to_string(&dto).unwrap();
        let back: FanDto = serde_json::from_str(&text).unwrap();
        let fan2 = fan_from_dto(&back, true).unwrap();
        assert_eq!(fan, fan2);
    }

    #[test]
    fn bundle_parsing_by_index_and_shorthand() {
        let fan = catalog::fan_ex1(2, 2).unwrap();
        let v: Value =
            serde_json::from_str(r#"{"values": {"0": "0", "1": "0", "2": "1"}}"#).unwrap();
        let h = bundle_from_value(&v, &fan, None).unwrap();
        assert!(h.is_strictly_convex());
        let h2 = bundle_from_value(&Value::String("values(0, 0, 1)".into()), &fan, None).unwrap();
        assert_eq!(h.ray_values, h2.ray_values);
        // Unicode minus from shell examples is tolerated.
        let h3 =
            bundle_from_value(&Value::String("values(\u{2212}2,\u{2212}2,\u{2212}3)".into()), &fan, None);
        assert!(h3.is_ok());
        // Missing values are path-precise errors.
        let bad: Value = serde_json::from_str(r#"{"values": {"0": "0"}}"#).unwrap();
        assert!(bundle_from_value(&bad, &fan, None).is_err());
        let worse: Value = serde_json::from_str(r#"{"values": {"7": "0"}}"#).unwrap();
        assert!(bundle_from_value(&worse, &fan, None).is_err());
    }

    #[test]
    fn root_descriptor_forms() {
        let a2 = root_from_value(&Value::String("A2".into())).unwrap();
        assert_eq!(a2.rank, 2);
        let v: Value = serde_json::from_str(r#"{"type": "B2"}"#).unwrap();
        assert_eq!(root_from_value(&v).unwrap().rank, 2);
        let custom: Value =
            serde_json::from_str(r#"{"cartan": [[2, -1], [-1, 2]], "rank": 2}"#).unwrap();
        let rs = root_from_value(&custom).unwrap();
        assert_eq!(rs.label, "custom");
        assert!(root_from_value(&serde_json::json!({"cartan": "no"})).is_err());
    }

    #[test]
    fn rationals_as_strings() {
        let m = MVec(vec![crate::rat::ratio(1, 2), crate::rat::rat(-3)]);
        let v = mvec_to_value(&m);
        assert_eq!(v, serde_json::json!(["1/2", "-3"]));
        assert_eq!(mvec_from_value(&v).unwrap(), m);
    }
}
