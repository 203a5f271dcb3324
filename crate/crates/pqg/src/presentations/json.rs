//! JSON input/output for walk presentations. The export carries the walk
//! together with every instantiated relation: name, boundary flag, and the
//! terms as words of `u`/`u*` letters (or a unit) with rendered scalar
//! coefficients. Maps serialize with sorted keys and scalars render through
//! the field, so output is byte-stable.
//!
//! Import rebuilds the presentation from the embedded walk and then checks
//! that the listed relations coincide with the rebuilt ones exactly; a
//! presentation whose relations disagree with its own walk is rejected.

use super::{build_presentation, Letter, NCPoly, Presentation, Word};
use crate::error::{Error, Result};
use crate::scalar::parse_scalar;
use crate::walks::{walk_from_json, walk_to_json, ReciprocalWalk};
use serde_json::{json, Map, Value};

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn word_to_json(word: &Word) -> Value {
    if word.letters.is_empty() {
        let (v, w) = word.grade.left();
        return json!({ "unit": [v, w] });
    }
    let letters: Vec<Value> = word
        .letters
        .iter()
        .map(|l| match *l {
            Letter::U { e, f } => json!({ "u": [e, f] }),
            Letter::UStar { e, f } => json!({ "u*": [e, f] }),
        })
        .collect();
    json!({ "letters": letters })
}

fn word_from_json(walk: &ReciprocalWalk, v: &Value, path: &str) -> Result<Word> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(path, "expected a word object"))?;
    if let Some(unit) = obj.get("unit") {
        let pair = unit
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| schema(path, "unit must be a pair of vertices"))?;
        let v0 = pair[0]
            .as_i64()
            .ok_or_else(|| schema(path, "unit vertices must be integers"))?;
        let w0 = pair[1]
            .as_i64()
            .ok_or_else(|| schema(path, "unit vertices must be integers"))?;
        return Ok(Word::unit(v0, w0));
    }
    let raw = obj
        .get("letters")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(path, "expected a unit or a letters array"))?;
    let mut letters = Vec::with_capacity(raw.len());
    for (i, l) in raw.iter().enumerate() {
        let lpath = format!("{path}/letters/{i}");
        let l = l
            .as_object()
            .ok_or_else(|| schema(&lpath, "expected a letter object"))?;
        let (key, star) = if l.contains_key("u") {
            ("u", false)
        } else if l.contains_key("u*") {
            ("u*", true)
        } else {
            return Err(schema(&lpath, "letter must be keyed \"u\" or \"u*\""));
        };
        let pair = l[key]
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| schema(&lpath, "letter must carry an edge pair"))?;
        let e = pair[0]
            .as_u64()
            .ok_or_else(|| schema(&lpath, "edge indices must be non-negative integers"))?
            as usize;
        let f = pair[1]
            .as_u64()
            .ok_or_else(|| schema(&lpath, "edge indices must be non-negative integers"))?
            as usize;
        if e >= walk.edges.len() || f >= walk.edges.len() {
            return Err(schema(&lpath, format!("edge pair ({e}, {f}) out of range")));
        }
        letters.push(if star {
            Letter::UStar { e, f }
        } else {
            Letter::U { e, f }
        });
    }
    Word::from_letters(walk, letters)
        .ok_or_else(|| schema(path, "letters do not compose to a graded word"))
}

fn poly_to_json(poly: &NCPoly, walk: &ReciprocalWalk) -> Value {
    let terms: Vec<Value> = poly
        .terms
        .iter()
        .map(|(w, c)| {
            let mut obj = Map::new();
            obj.insert("coeff".to_string(), Value::String(c.render(&walk.field)));
            obj.insert("word".to_string(), word_to_json(w));
            Value::Object(obj)
        })
        .collect();
    Value::Array(terms)
}

fn poly_from_json(walk: &ReciprocalWalk, v: &Value, path: &str) -> Result<NCPoly> {
    let terms = v
        .as_array()
        .ok_or_else(|| schema(path, "expected an array of terms"))?;
    let mut poly = NCPoly::zero();
    for (i, t) in terms.iter().enumerate() {
        let tpath = format!("{path}/{i}");
        let t = t
            .as_object()
            .ok_or_else(|| schema(&tpath, "expected a term object"))?;
        let coeff = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| schema(&tpath, "coeff must be a scalar literal string"))?;
        let coeff = parse_scalar(coeff, &walk.field)?;
        let word = word_from_json(
            walk,
            t.get("word").unwrap_or(&Value::Null),
            &format!("{tpath}/word"),
        )?;
        poly.add_term(word, coeff);
    }
    Ok(poly)
}

/// Serialize a presentation: the walk plus every relation with its terms.
pub fn presentation_to_json(p: &Presentation) -> Value {
    let relations: Vec<Value> = p
        .relations
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "boundary": r.boundary,
                "terms": poly_to_json(&r.poly, &p.walk),
            })
        })
        .collect();
    json!({
        "walk": walk_to_json(&p.walk),
        "generators": p.generator_count(),
        "relations": relations,
    })
}

/// Read a presentation back: rebuild it from the embedded walk and check
/// the listed relations against the rebuilt ones term by term.
pub fn presentation_from_json(v: &Value) -> Result<Presentation> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected a JSON object"))?;
    let walk = walk_from_json(obj.get("walk").unwrap_or(&Value::Null))?;
    let p = build_presentation(&walk)?;
    if let Some(g) = obj.get("generators") {
        let g = g
            .as_u64()
            .ok_or_else(|| schema("generators", "expected a non-negative integer"))?;
        if g as usize != p.generator_count() {
            return Err(schema(
                "generators",
                format!(
                    "walk yields {} generators, listed {g}",
                    p.generator_count()
                ),
            ));
        }
    }
    let listed = obj
        .get("relations")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("relations", "expected an array"))?;
    if listed.len() != p.relations.len() {
        return Err(schema(
            "relations",
            format!(
                "walk yields {} relations, listed {}",
                p.relations.len(),
                listed.len()
            ),
        ));
    }
    for (i, (raw, built)) in listed.iter().zip(&p.relations).enumerate() {
        let path = format!("relations/{i}");
        let raw = raw
            .as_object()
            .ok_or_else(|| schema(&path, "expected a relation object"))?;
        let name = raw
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| schema(&path, "missing name"))?;
        if name != built.name {
            return Err(schema(
                &path,
                format!("expected relation {:?}, listed {name:?}", built.name),
            ));
        }
        let boundary = raw
            .get("boundary")
            .and_then(Value::as_bool)
            .ok_or_else(|| schema(&path, "missing boundary flag"))?;
        if boundary != built.boundary {
            return Err(schema(&path, "boundary flag disagrees with the walk"));
        }
        let poly = poly_from_json(
            &walk,
            raw.get("terms").unwrap_or(&Value::Null),
            &format!("{path}/terms"),
        )?;
        if poly != built.poly {
            return Err(schema(
                &path,
                format!("terms disagree with the walk's relation {:?}", built.name),
            ));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{one_vertex_walk, podles_walk};
    use num::rational::Ratio;

    fn podles() -> Presentation {
        let q = crate::scalar::Scalar::from_rat(Ratio::new(1.into(), 2.into()));
        let walk = podles_walk(&q, &crate::scalar::Scalar::from_int(0), (-2, 2)).unwrap();
        build_presentation(&walk).unwrap()
    }

    #[test]
    fn presentations_roundtrip_and_are_byte_stable() {
        for p in [
            build_presentation(&one_vertex_walk()).unwrap(),
            podles(),
        ] {
            let v = presentation_to_json(&p);
            let back = presentation_from_json(&v).unwrap();
            assert_eq!(p, back);
            assert_eq!(
                serde_json::to_string(&v).unwrap(),
                serde_json::to_string(&presentation_to_json(&back)).unwrap()
            );
        }
    }

    #[test]
    fn tampered_relation_terms_are_rejected() {
        let mut v = presentation_to_json(&podles());
        v["relations"][0]["terms"][0]["coeff"] = serde_json::json!("7");
        let err = presentation_from_json(&v).unwrap_err();
        assert!(err.to_string().contains("relations/0"), "{err}");
    }

    #[test]
    fn foreign_relation_names_are_rejected() {
        let mut v = presentation_to_json(&podles());
        v["relations"][3]["name"] = serde_json::json!("made-up");
        let err = presentation_from_json(&v).unwrap_err();
        assert!(err.to_string().contains("relations/3"), "{err}");
    }
}
