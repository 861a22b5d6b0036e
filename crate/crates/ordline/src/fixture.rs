//! JSON fixture formats.
//!
//! All rationals travel as strings, `"p"` or `"p/q"`, and parse back exactly.
//!
//! - map: `{"breakpoints": ["0","1"], "values": ["0","3"], "left_slope": "1",
//!   "right_slope": "1"}`; a periodic lift instead carries `"period"` and no
//!   slopes.
//! - interval set: `[["-inf","-3/4"],["3/4","inf"]]`.
//! - certificate: `{"f": map, "g": map, "k": 2, "A": [set, ...], "B": [set,
//!   ...]}`.
//! - order: `{"action": {"a": map, ...}, "refpoints": ["0","1"]}` with
//!   `refpoints` optional.
//! - marked action: `{"generators": {"a": map, ...}}`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::classify::MarkedAction;
use crate::interval::{ClosedInterval, Endpoint, IntervalSet};
use crate::lift::{LineMap, PLLift};
use crate::order::DynOrder;
use crate::pingpong::PingPongCertificate;
use crate::pl::PLHomeo;
use crate::rat::{fmt_rat, parse_rat, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FixtureError {
    #[error("field {0:?}: expected {1}")]
    Field(String, String),
    #[error("field {0:?}: {1}")]
    BadRational(String, crate::rat::RatParseError),
    #[error("{0}")]
    Shape(String),
    #[error("invalid map: {0}")]
    Map(String),
}

fn want<'v>(obj: &'v Value, key: &str) -> Result<&'v Value, FixtureError> {
    obj.get(key)
        .ok_or_else(|| FixtureError::Field(key.to_owned(), "present".to_owned()))
}

fn rat_field(v: &Value, key: &str) -> Result<Rat, FixtureError> {
    let s = v
        .as_str()
        .ok_or_else(|| FixtureError::Field(key.to_owned(), "a rational string".to_owned()))?;
    parse_rat(s).map_err(|e| FixtureError::BadRational(key.to_owned(), e))
}

fn rat_array(v: &Value, key: &str) -> Result<Vec<Rat>, FixtureError> {
    let arr = v
        .as_array()
        .ok_or_else(|| FixtureError::Field(key.to_owned(), "an array".to_owned()))?;
    arr.iter().map(|e| rat_field(e, key)).collect()
}

pub fn plhomeo_to_json(f: &PLHomeo) -> Value {
    json!({
        "breakpoints": f.breakpoints().iter().map(fmt_rat).collect::<Vec<_>>(),
        "values": f.values().iter().map(fmt_rat).collect::<Vec<_>>(),
        "left_slope": fmt_rat(f.left_slope()),
        "right_slope": fmt_rat(f.right_slope()),
    })
}

pub fn plhomeo_from_json(v: &Value) -> Result<PLHomeo, FixtureError> {
    let xs = rat_array(want(v, "breakpoints")?, "breakpoints")?;
    let ys = rat_array(want(v, "values")?, "values")?;
    if xs.len() != ys.len() {
        return Err(FixtureError::Shape("breakpoints and values differ in length".into()));
    }
    let left = rat_field(want(v, "left_slope")?, "left_slope")?;
    let right = rat_field(want(v, "right_slope")?, "right_slope")?;
    PLHomeo::from_knots(xs.into_iter().zip(ys).collect(), left, right)
        .map_err(|e| FixtureError::Map(e.to_string()))
}

pub fn lift_to_json(f: &PLLift) -> Value {
    let (xs, ys): (Vec<_>, Vec<_>) = f.knots().unzip();
    json!({
        "period": fmt_rat(f.period()),
        "breakpoints": xs.iter().map(|x| fmt_rat(x)).collect::<Vec<_>>(),
        "values": ys.iter().map(|y| fmt_rat(y)).collect::<Vec<_>>(),
    })
}

pub fn lift_from_json(v: &Value) -> Result<PLLift, FixtureError> {
    let period = rat_field(want(v, "period")?, "period")?;
    let xs = rat_array(want(v, "breakpoints")?, "breakpoints")?;
    let ys = rat_array(want(v, "values")?, "values")?;
    if xs.len() != ys.len() {
        return Err(FixtureError::Shape("breakpoints and values differ in length".into()));
    }
    PLLift::new(period, xs.into_iter().zip(ys).collect())
        .map_err(|e| FixtureError::Map(e.to_string()))
}

pub fn linemap_to_json(m: &LineMap) -> Value {
    match m {
        LineMap::Pl(f) => plhomeo_to_json(f),
        LineMap::Lift(f) => lift_to_json(f),
    }
}

pub fn linemap_from_json(v: &Value) -> Result<LineMap, FixtureError> {
    if v.get("period").is_some() {
        Ok(LineMap::Lift(lift_from_json(v)?))
    } else {
        Ok(LineMap::Pl(plhomeo_from_json(v)?))
    }
}

fn endpoint_to_json(e: &Endpoint) -> Value {
    Value::String(match e {
        Endpoint::NegInf => "-inf".to_owned(),
        Endpoint::PosInf => "inf".to_owned(),
        Endpoint::Finite(q) => fmt_rat(q),
    })
}

fn endpoint_from_json(v: &Value) -> Result<Endpoint, FixtureError> {
    let s = v
        .as_str()
        .ok_or_else(|| FixtureError::Shape("interval endpoint must be a string".into()))?;
    Ok(match s {
        "-inf" => Endpoint::NegInf,
        "inf" | "+inf" => Endpoint::PosInf,
        _ => Endpoint::Finite(
            parse_rat(s).map_err(|e| FixtureError::BadRational("endpoint".into(), e))?,
        ),
    })
}

pub fn interval_set_to_json(s: &IntervalSet) -> Value {
    Value::Array(
        s.components()
            .iter()
            .map(|c| Value::Array(vec![endpoint_to_json(c.lo()), endpoint_to_json(c.hi())]))
            .collect(),
    )
}

pub fn interval_set_from_json(v: &Value) -> Result<IntervalSet, FixtureError> {
    let arr = v
        .as_array()
        .ok_or_else(|| FixtureError::Shape("interval set must be an array".into()))?;
    let mut comps = Vec::with_capacity(arr.len());
    for pair in arr {
        let two = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| FixtureError::Shape("interval must be a [lo, hi] pair".into()))?;
        let lo = endpoint_from_json(&two[0])?;
        let hi = endpoint_from_json(&two[1])?;
        if lo > hi || lo == Endpoint::PosInf || hi == Endpoint::NegInf {
            return Err(FixtureError::Shape("interval endpoints out of order".into()));
        }
        comps.push(ClosedInterval::new(lo, hi));
    }
    Ok(IntervalSet::from_components(comps))
}

pub fn certificate_to_json(c: &PingPongCertificate) -> Value {
    json!({
        "f": plhomeo_to_json(&c.f),
        "g": plhomeo_to_json(&c.g),
        "k": c.k,
        "A": c.a_sets.iter().map(interval_set_to_json).collect::<Vec<_>>(),
        "B": c.b_sets.iter().map(interval_set_to_json).collect::<Vec<_>>(),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<PingPongCertificate, FixtureError> {
    let f = plhomeo_from_json(want(v, "f")?)?;
    let g = plhomeo_from_json(want(v, "g")?)?;
    let k = want(v, "k")?
        .as_u64()
        .ok_or_else(|| FixtureError::Field("k".into(), "a positive integer".into()))?;
    let parse_sets = |key: &str| -> Result<Vec<IntervalSet>, FixtureError> {
        want(v, key)?
            .as_array()
            .ok_or_else(|| FixtureError::Field(key.into(), "an array of interval sets".into()))?
            .iter()
            .map(interval_set_from_json)
            .collect()
    };
    let a_sets = parse_sets("A")?;
    let b_sets = parse_sets("B")?;
    if a_sets.len() as u64 != k || b_sets.len() as u64 != k {
        return Err(FixtureError::Shape(format!(
            "k = {k} but {} A-sets and {} B-sets were given",
            a_sets.len(),
            b_sets.len()
        )));
    }
    PingPongCertificate::new(f, g, a_sets, b_sets).map_err(|e| FixtureError::Shape(e.to_string()))
}

/// Generator names must be single letters `a`..`z`, mapped to word alphabet
/// indices in order.
fn generator_table(v: &Value, key: &str) -> Result<Vec<(String, Value)>, FixtureError> {
    let obj = want(v, key)?
        .as_object()
        .ok_or_else(|| FixtureError::Field(key.into(), "an object of generators".into()))?;
    let mut entries: Vec<(String, Value)> =
        obj.iter().map(|(k, val)| (k.clone(), val.clone())).collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    for (i, (name, _)) in entries.iter().enumerate() {
        let expected = ((b'a' + i as u8) as char).to_string();
        if *name != expected {
            return Err(FixtureError::Shape(format!(
                "generator names must be consecutive letters from 'a'; expected {expected:?}, found {name:?}"
            )));
        }
    }
    Ok(entries)
}

pub fn order_to_json(o: &DynOrder) -> Value {
    let mut action = Map::new();
    for (i, m) in o.action().iter().enumerate() {
        let name = ((b'a' + i as u8) as char).to_string();
        action.insert(name, plhomeo_to_json(m));
    }
    json!({ "action": Value::Object(action) })
}

pub fn order_from_json(v: &Value) -> Result<DynOrder, FixtureError> {
    let entries = generator_table(v, "action")?;
    let maps = entries
        .iter()
        .map(|(_, mv)| plhomeo_from_json(mv))
        .collect::<Result<Vec<_>, _>>()?;
    match v.get("refpoints") {
        Some(rp) => {
            let pts = rat_array(rp, "refpoints")?;
            Ok(DynOrder::with_refpoints(maps, pts))
        }
        None => Ok(DynOrder::new(maps)),
    }
}

pub fn action_to_json(act: &MarkedAction) -> Value {
    let mut generators = Map::new();
    for (name, m) in &act.generators {
        generators.insert(name.clone(), linemap_to_json(m));
    }
    json!({ "generators": Value::Object(generators) })
}

/// The search depth comes from the caller (CLI flag), not the file.
pub fn action_from_json(v: &Value, search_depth: u32) -> Result<MarkedAction, FixtureError> {
    let entries = generator_table(v, "generators")?;
    let generators = entries
        .into_iter()
        .map(|(name, mv)| Ok((name, linemap_from_json(&mv)?)))
        .collect::<Result<Vec<_>, FixtureError>>()?;
    Ok(MarkedAction::new(generators, search_depth))
}

pub fn classification_to_json(c: &crate::classify::Classification) -> Value {
    use crate::classify::TypeWitness;
    let witness = match &c.witness {
        TypeWitness::GlobalFixed { point } => json!({"kind": "global-fixed-point", "point": fmt_rat(point)}),
        TypeWitness::DiscreteOrbit { base, step } => {
            json!({"kind": "discrete-orbit", "base": fmt_rat(base), "step": fmt_rat(step)})
        }
        TypeWitness::TranslationNumbers { table } => json!({
            "kind": "translation-numbers",
            "table": table.iter().map(|(n, t)| json!({"generator": n, "number": fmt_rat(t)})).collect::<Vec<_>>(),
        }),
        TypeWitness::Periodic { period } => json!({"kind": "periodic", "period": fmt_rat(period)}),
        TypeWitness::Expansion { word, c, c_prime, a, b, a_prime, b_prime, image_a, image_b } => json!({
            "kind": "expansion",
            "word": word.to_string(),
            "c": fmt_rat(c), "c_prime": fmt_rat(c_prime),
            "a": fmt_rat(a), "b": fmt_rat(b),
            "a_prime": fmt_rat(a_prime), "b_prime": fmt_rat(b_prime),
            "image_a": fmt_rat(image_a), "image_b": fmt_rat(image_b),
        }),
        TypeWitness::None => Value::Null,
    };
    json!({"verdict": c.verdict.to_string(), "witness": witness})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn plhomeo_round_trip_is_exact() {
        let f = PLHomeo::from_knots(
            vec![(rat_i(0), rat_i(0)), (rat_i(1), rat_i(3))],
            rat_i(1),
            rat(7, 2),
        )
        .unwrap();
        let v = plhomeo_to_json(&f);
        assert_eq!(plhomeo_from_json(&v).unwrap(), f);
        // serialized form matches the documented shape
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"breakpoints":["0","1"],"left_slope":"1","right_slope":"7/2","values":["0","3"]}"#
        );
    }

    #[test]
    fn interval_set_round_trip_with_rays() {
        let s = IntervalSet::from_components(vec![
            ClosedInterval::ray_left(rat(-3, 4)),
            ClosedInterval::ray_right(rat(3, 4)),
        ]);
        let v = interval_set_to_json(&s);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[["-inf","-3/4"],["3/4","inf"]]"#);
        assert_eq!(interval_set_from_json(&v).unwrap(), s);
    }

    #[test]
    fn certificate_round_trip() {
        let pair = crate::witness::gen_intertwined_pair(1);
        let certified = crate::witness::build_certificate(&pair).unwrap();
        let v = certificate_to_json(&certified.certificate);
        let back = certificate_from_json(&v).unwrap();
        assert_eq!(back, certified.certificate);
        assert!(crate::pingpong::verify_certificate(&back).is_ok());
    }

    #[test]
    fn action_round_trip_with_lift() {
        let act = crate::actions::schottky_lift_action(6);
        let v = action_to_json(&act);
        let back = action_from_json(&v, 6).unwrap();
        assert_eq!(back.generators, act.generators);
    }

    #[test]
    fn bad_fixtures_are_rejected_with_field_names() {
        let v = serde_json::json!({"breakpoints": ["0"], "values": ["0", "1"],
            "left_slope": "1", "right_slope": "1"});
        assert!(matches!(plhomeo_from_json(&v), Err(FixtureError::Shape(_))));
        let v = serde_json::json!({"breakpoints": ["0"], "values": ["x"],
            "left_slope": "1", "right_slope": "1"});
        assert!(matches!(plhomeo_from_json(&v), Err(FixtureError::BadRational(_, _))));
        let v = serde_json::json!({"generators": {"a": {"breakpoints": ["0"], "values": ["0"],
            "left_slope": "1", "right_slope": "1"}, "c": {"breakpoints": ["0"], "values": ["0"],
            "left_slope": "1", "right_slope": "1"}}});
        assert!(matches!(action_from_json(&v, 4), Err(FixtureError::Shape(_))));
    }
}
