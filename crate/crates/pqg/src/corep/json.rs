//! JSON input/output for corepresentations, orthogonality reports and
//! character tables. The conventions match the algebra serialization:
//! squares are `"k,l;m,n"` keys, object pairs `"k,l"` keys, scalars render
//! through the field and all maps are sorted, so output is byte-stable.

use super::{CharacterTable, Corep};
use crate::error::{Error, Result};
use crate::grading::{BigradedSpace, BlockMap, Square};
use crate::linalg::Mat;
use crate::partial_hopf::PartialHopfData;
use crate::report::VerificationReport;
use crate::scalar::{parse_scalar, FieldSpec, Scalar};
use serde_json::{json, Map, Value};

fn sq_key(s: &Square) -> String {
    format!("{},{};{},{}", s.k, s.l, s.m, s.n)
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_sq(key: &str, path: &str) -> Result<Square> {
    let parts: Vec<i64> = key
        .split([',', ';'])
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| schema(path, format!("malformed square key {key:?}")))?;
    if parts.len() != 4 {
        return Err(schema(path, format!("square key {key:?} needs 4 objects")));
    }
    Ok(Square::new(parts[0], parts[1], parts[2], parts[3]))
}

fn mat_to_json(m: &Mat, field: &FieldSpec) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).render(field)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn mat_from_json(v: &Value, field: &FieldSpec, rows: usize, cols: usize, path: &str) -> Result<Mat> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(path, "expected a matrix (array of rows)"))?;
    if arr.len() != rows {
        return Err(schema(path, format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut m = Mat::zeros(rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| schema(path, "matrix rows must be arrays"))?;
        if cells.len() != cols {
            return Err(schema(path, format!("expected {cols} columns, got {}", cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            let s = cell
                .as_str()
                .ok_or_else(|| schema(path, "scalar literals must be strings"))?;
            m.set(i, j, parse_scalar(s, field)?);
        }
    }
    Ok(m)
}

fn blockmap_to_json(bm: &BlockMap, field: &FieldSpec) -> Value {
    Value::Object(
        bm.blocks
            .iter()
            .map(|(&(k, l), m)| (format!("{k},{l}"), mat_to_json(m, field)))
            .collect(),
    )
}

/// Serialize a corepresentation: carrier dimensions keyed by object pair,
/// blocks keyed by square with one matrix per algebra basis element.
pub fn corep_to_json(data: &PartialHopfData, x: &Corep) -> Value {
    let mut carrier = Map::new();
    for ((k, l), d) in x.carrier.blocks() {
        carrier.insert(format!("{k},{l}"), json!(d));
    }
    let mut blocks = Map::new();
    for (sq, mats) in &x.blocks {
        blocks.insert(
            sq_key(sq),
            Value::Array(mats.iter().map(|m| mat_to_json(m, &data.field)).collect()),
        );
    }
    json!({
        "carrier": carrier,
        "blocks": blocks,
    })
}

/// Read a corepresentation back against its underlying algebra.
pub fn corep_from_json(data: &PartialHopfData, v: &Value) -> Result<Corep> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected a JSON object"))?;
    let mut carrier = BigradedSpace::new(data.objects.iter().copied());
    let dims = obj
        .get("carrier")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("carrier", "expected an object keyed by object pairs"))?;
    for (key, d) in dims {
        let parts: Vec<i64> = key
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| schema("carrier", format!("malformed object pair {key:?}")))?;
        if parts.len() != 2 {
            return Err(schema("carrier", format!("object pair {key:?} needs 2 objects")));
        }
        let dim = d
            .as_u64()
            .ok_or_else(|| schema("carrier", format!("dimension of {key:?} must be an integer")))?;
        carrier.set_dim(parts[0], parts[1], dim as usize);
    }
    let mut x = Corep::new(carrier);
    if let Some(blocks) = obj.get("blocks").and_then(Value::as_object) {
        for (key, mats) in blocks {
            let sq = parse_sq(key, "blocks")?;
            let d = data.dim(&sq);
            if d == 0 {
                return Err(schema("blocks", format!("{key:?} is not an algebra block")));
            }
            let arr = mats
                .as_array()
                .ok_or_else(|| schema("blocks", "expected an array of matrices"))?;
            if arr.len() != d {
                return Err(schema("blocks", format!("{key:?} has wrong coefficient count")));
            }
            let rows = x.carrier.dim(sq.k, sq.l);
            let cols = x.carrier.dim(sq.m, sq.n);
            let mut out = Vec::with_capacity(d);
            for m in arr {
                out.push(mat_from_json(m, &data.field, rows, cols, "blocks")?);
            }
            x.set_block(data, sq, out);
        }
    }
    Ok(x)
}

fn report_to_json(rep: &VerificationReport) -> Value {
    Value::Array(
        rep.clone()
            .sorted()
            .checks
            .iter()
            .map(|c| {
                json!({
                    "axiom": c.axiom,
                    "status": format!("{:?}", c.status),
                    "witness": c.witness,
                })
            })
            .collect(),
    )
}

/// Serialize an orthogonality report.
pub fn schur_to_json(rep: &VerificationReport) -> Value {
    json!({
        "summary": rep.summary(),
        "checks": report_to_json(rep),
    })
}

fn functional_to_json(f: &[Scalar], field: &FieldSpec) -> Value {
    Value::Array(f.iter().map(|x| Value::String(x.render(field))).collect())
}

/// Serialize a character table: irreducibles with their `F`/`G` pairs and
/// quantum dimensions, the requested functionals on the global basis, the
/// verification report and any provenance notes.
pub fn character_table_to_json(data: &PartialHopfData, table: &CharacterTable) -> Value {
    let f = &data.field;
    let basis: Vec<Value> = table
        .basis
        .iter()
        .map(|(sq, i)| json!([sq_key(sq), i]))
        .collect();
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            json!({
                "corep": corep_to_json(data, &e.corep),
                "f": blockmap_to_json(&e.f, f),
                "g": blockmap_to_json(&e.g, f),
                "dim": e.dim.render(f),
            })
        })
        .collect();
    let mut functionals = Map::new();
    for (z, vals) in &table.functionals {
        functionals.insert(z.to_string(), functional_to_json(vals, f));
    }
    json!({
        "basis": basis,
        "irreducibles": entries,
        "functionals": functionals,
        "report": schur_to_json(&table.report),
        "notes": table.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corep::{
        schur_report, trivial_corep, verify_corep, woronowicz_characters,
    };
    use crate::partial_hopf::{groupoid_algebra, pair_groupoid};

    #[test]
    fn corep_roundtrips_through_json() {
        for data in [pair_groupoid(3), groupoid_algebra(&[vec![1, 2]])] {
            let u = trivial_corep(&data);
            let v = corep_to_json(&data, &u);
            let back = corep_from_json(&data, &v).unwrap();
            assert_eq!(u, back);
            assert!(verify_corep(&data, &back).no_failures());
        }
    }

    #[test]
    fn corep_json_is_byte_stable() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        let a = serde_json::to_string(&corep_to_json(&data, &u)).unwrap();
        let b = serde_json::to_string(&corep_to_json(&data, &u)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"1,1;2,2\""));
    }

    #[test]
    fn malformed_corep_json_is_rejected() {
        let data = pair_groupoid(2);
        assert!(corep_from_json(&data, &json!({"carrier": {"1": 1}})).is_err());
        assert!(corep_from_json(&data, &json!([])).is_err());
        // a block outside the algebra support
        let bad = json!({
            "carrier": {"1,1": 1, "2,2": 1},
            "blocks": {"1,2;1,2": [[["1"]]]},
        });
        assert!(corep_from_json(&data, &bad).is_err());
    }

    #[test]
    fn reports_and_character_tables_serialize() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        let rep = schur_report(&data, &u, None).unwrap();
        let v = schur_to_json(&rep);
        assert!(v["summary"].as_str().is_some());
        assert!(!v["checks"].as_array().unwrap().is_empty());

        let table = woronowicz_characters(&data, &[0, 1]).unwrap();
        let v = character_table_to_json(&data, &table);
        assert_eq!(v["irreducibles"].as_array().unwrap().len(), 1);
        assert_eq!(v["functionals"].as_object().unwrap().len(), 2);
        assert!(v["notes"][0].as_str().unwrap().contains("not machine-checked"));
    }
}
