//! JSON input/output for fiber data. Irreducibles are serialized in order
//! with their gradings and conjugates, structure tensors are keyed by
//! `"a,b:k,m"` strings (irreducible indices before the colon, objects
//! after), scalars render through the field, and all maps serialize with
//! sorted keys, so output is byte-stable.

use super::{FiberData, Irreducible};
use crate::error::{Error, Result};
use crate::grading::Obj;
use crate::linalg::Mat;
use crate::partial_hopf::{field_from_json, field_to_json};
use crate::scalar::{parse_scalar, FieldSpec};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_usizes(key: &str, path: &str, want: usize) -> Result<Vec<usize>> {
    let parts: Vec<usize> = key
        .split([',', ':'])
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| schema(path, format!("malformed key {key:?}")))?;
    if parts.len() != want {
        return Err(schema(path, format!("key {key:?} needs {want} indices")));
    }
    Ok(parts)
}

fn parse_mixed(key: &str, path: &str, irr: usize, obj: usize) -> Result<(Vec<usize>, Vec<Obj>)> {
    let halves: Vec<&str> = key.split(':').collect();
    if halves.len() != 2 {
        return Err(schema(path, format!("key {key:?} needs one colon")));
    }
    let a = parse_usizes(halves[0], path, irr)?;
    let b: Vec<Obj> = halves[1]
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| schema(path, format!("malformed key {key:?}")))?;
    if b.len() != obj {
        return Err(schema(path, format!("key {key:?} needs {obj} objects")));
    }
    Ok((a, b))
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

/// Serialize fiber data.
pub fn fiber_to_json(fd: &FiberData) -> Value {
    let f = &fd.field;
    let objects: Map<String, Value> = fd
        .phi
        .iter()
        .map(|(k, alpha)| (k.to_string(), json!(alpha)))
        .collect();
    let irreducibles: Vec<Value> = fd
        .irreducibles
        .iter()
        .enumerate()
        .map(|(a, u)| {
            json!({
                "name": u.name,
                "grading": [u.grading.0, u.grading.1],
                "unit": u.unit,
                "conj": fd.conj.get(a).copied().unwrap_or(a),
            })
        })
        .collect();
    let fusion: Map<String, Value> = fd
        .fusion
        .iter()
        .map(|(&(a, b), chan)| {
            let inner: Map<String, Value> =
                chan.iter().map(|(c, n)| (c.to_string(), json!(n))).collect();
            (format!("{a},{b}"), Value::Object(inner))
        })
        .collect();
    let dims: Map<String, Value> = fd
        .dims
        .iter()
        .map(|(&(a, k, l), d)| (format!("{a}:{k},{l}"), json!(d)))
        .collect();
    let iota: Map<String, Value> = fd
        .iota
        .iter()
        .map(|(&(a, b, k, m), mat)| (format!("{a},{b}:{k},{m}"), mat_to_json(mat, f)))
        .collect();
    let mu: Map<String, Value> = fd
        .mu
        .iter()
        .map(|(k, s)| (k.to_string(), Value::String(s.render(f))))
        .collect();
    let ev: Map<String, Value> = fd
        .ev
        .iter()
        .map(|(&(a, l), mat)| (format!("{a}:{l}"), mat_to_json(mat, f)))
        .collect();
    let coev: Map<String, Value> = fd
        .coev
        .iter()
        .map(|(&(a, k), mat)| (format!("{a}:{k}"), mat_to_json(mat, f)))
        .collect();
    json!({
        "field": field_to_json(f),
        "hyperobjects": fd.hyperobjects.iter().collect::<Vec<_>>(),
        "objects": objects,
        "irreducibles": irreducibles,
        "fusion": fusion,
        "dims": dims,
        "iota": iota,
        "mu": mu,
        "ev": ev,
        "coev": coev,
    })
}

/// Read fiber data back; tensor shapes are inferred from the dimension
/// table and checked.
pub fn fiber_from_json(v: &Value) -> Result<FiberData> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected a JSON object"))?;
    let field = field_from_json(obj.get("field").unwrap_or(&Value::Null))?;
    let mut fd = FiberData::new(field);

    for h in obj
        .get("hyperobjects")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("hyperobjects", "expected an array"))?
    {
        let alpha = h
            .as_i64()
            .ok_or_else(|| schema("hyperobjects", "hyperobjects must be integers"))?;
        fd.hyperobjects.insert(alpha);
    }
    for (key, val) in obj
        .get("objects")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("objects", "expected an object keyed by objects"))?
    {
        let k: Obj = key
            .trim()
            .parse()
            .map_err(|_| schema("objects", format!("malformed object {key:?}")))?;
        let alpha = val
            .as_i64()
            .ok_or_else(|| schema("objects", format!("hyperobject of {key:?} must be an integer")))?;
        fd.objects.insert(k);
        fd.phi.insert(k, alpha);
    }
    for (a, u) in obj
        .get("irreducibles")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("irreducibles", "expected an array"))?
        .iter()
        .enumerate()
    {
        let path = "irreducibles";
        let name = u["name"]
            .as_str()
            .ok_or_else(|| schema(path, format!("irreducible {a} needs a name")))?;
        let grading = u["grading"]
            .as_array()
            .filter(|g| g.len() == 2)
            .and_then(|g| Some((g[0].as_i64()?, g[1].as_i64()?)))
            .ok_or_else(|| schema(path, format!("irreducible {a} needs a grading pair")))?;
        let conj = u["conj"]
            .as_u64()
            .ok_or_else(|| schema(path, format!("irreducible {a} needs a conjugate index")))?;
        fd.irreducibles.push(Irreducible {
            name: name.to_string(),
            grading,
            unit: u["unit"].as_bool().unwrap_or(false),
        });
        fd.conj.push(conj as usize);
    }
    let n_irr = fd.irr_count();
    if fd.conj.iter().any(|&c| c >= n_irr) {
        return Err(schema("irreducibles", "conjugate index out of range"));
    }

    if let Some(fusion) = obj.get("fusion").and_then(Value::as_object) {
        for (key, chan) in fusion {
            let idx = parse_usizes(key, "fusion", 2)?;
            if idx.iter().any(|&a| a >= n_irr) {
                return Err(schema("fusion", format!("key {key:?} out of range")));
            }
            let mut inner = BTreeMap::new();
            for (ckey, n) in chan
                .as_object()
                .ok_or_else(|| schema("fusion", "channels must be an object"))?
            {
                let c: usize = ckey
                    .trim()
                    .parse()
                    .map_err(|_| schema("fusion", format!("malformed channel {ckey:?}")))?;
                if c >= n_irr {
                    return Err(schema("fusion", format!("channel {ckey:?} out of range")));
                }
                let mult = n
                    .as_u64()
                    .ok_or_else(|| schema("fusion", "multiplicities must be integers"))?;
                inner.insert(c, mult as usize);
            }
            fd.fusion.insert((idx[0], idx[1]), inner);
        }
    }
    if let Some(dims) = obj.get("dims").and_then(Value::as_object) {
        for (key, d) in dims {
            let (irr, objs) = parse_mixed(key, "dims", 1, 2)?;
            if irr[0] >= n_irr {
                return Err(schema("dims", format!("key {key:?} out of range")));
            }
            let d = d
                .as_u64()
                .ok_or_else(|| schema("dims", "dimensions must be integers"))?;
            fd.dims.insert((irr[0], objs[0], objs[1]), d as usize);
        }
    }
    if let Some(mu) = obj.get("mu").and_then(Value::as_object) {
        for (key, s) in mu {
            let k: Obj = key
                .trim()
                .parse()
                .map_err(|_| schema("mu", format!("malformed object {key:?}")))?;
            let lit = s
                .as_str()
                .ok_or_else(|| schema("mu", "scalar literals must be strings"))?;
            fd.mu.insert(k, parse_scalar(lit, &fd.field)?);
        }
    }
    if let Some(iota) = obj.get("iota").and_then(Value::as_object) {
        for (key, mat) in iota {
            let (irr, objs) = parse_mixed(key, "iota", 2, 2)?;
            let (a, b, k, m) = (irr[0], irr[1], objs[0], objs[1]);
            if a >= n_irr || b >= n_irr {
                return Err(schema("iota", format!("key {key:?} out of range")));
            }
            let rows: usize = fd.channel_rows(a, b, k, m).iter().map(|&(_, _, _, d)| d).sum();
            let cols: usize = fd.pair_cols(a, b, k, m).iter().map(|&(_, _, d1, d2)| d1 * d2).sum();
            fd.iota
                .insert((a, b, k, m), mat_from_json(mat, &fd.field, rows, cols, "iota")?);
        }
    }
    if let Some(ev) = obj.get("ev").and_then(Value::as_object) {
        for (key, mat) in ev {
            let (irr, objs) = parse_mixed(key, "ev", 1, 1)?;
            let (a, l) = (irr[0], objs[0]);
            if a >= n_irr {
                return Err(schema("ev", format!("key {key:?} out of range")));
            }
            let dom: usize = fd
                .pair_cols(fd.conj[a], a, l, l)
                .iter()
                .map(|&(_, _, d1, d2)| d1 * d2)
                .sum();
            fd.ev.insert((a, l), mat_from_json(mat, &fd.field, 1, dom, "ev")?);
        }
    }
    if let Some(coev) = obj.get("coev").and_then(Value::as_object) {
        for (key, mat) in coev {
            let (irr, objs) = parse_mixed(key, "coev", 1, 1)?;
            let (a, k) = (irr[0], objs[0]);
            if a >= n_irr {
                return Err(schema("coev", format!("key {key:?} out of range")));
            }
            let dom: usize = fd
                .pair_cols(a, fd.conj[a], k, k)
                .iter()
                .map(|&(_, _, d1, d2)| d1 * d2)
                .sum();
            fd.coev.insert((a, k), mat_from_json(mat, &fd.field, dom, 1, "coev")?);
        }
    }
    Ok(fd)
}
