//! JSON input/output for [`PartialHopfData`].
//!
//! Blocks are keyed by `"k,l;m,n"` strings, structure constants are nested
//! arrays of scalar literals (the grammar accepted by
//! [`parse_scalar`](crate::scalar::parse_scalar)), and all maps serialize
//! with sorted keys, so output is byte-stable.

use super::PartialHopfData;
use crate::grading::{Obj, Square};
use crate::linalg::Mat;
use crate::scalar::{parse_scalar, FieldSpec, Scalar, SymbolSpec};
use crate::{Error, Result};
use serde_json::{json, Map, Value};

fn sq_key(s: &Square) -> String {
    format!("{},{};{},{}", s.k, s.l, s.m, s.n)
}

fn pair_key(k: Obj, m: Obj) -> String {
    format!("{k},{m}")
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

fn parse_pair(key: &str, path: &str) -> Result<(Obj, Obj)> {
    let parts: Vec<i64> = key
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| schema(path, format!("malformed object pair {key:?}")))?;
    if parts.len() != 2 {
        return Err(schema(path, format!("object pair {key:?} needs 2 objects")));
    }
    Ok((parts[0], parts[1]))
}

fn vec_to_json(v: &[Scalar], field: &FieldSpec) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.render(field))).collect())
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

fn vec_from_json(v: &Value, field: &FieldSpec, path: &str) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array of scalar literals"))?
        .iter()
        .map(|x| {
            let s = x
                .as_str()
                .ok_or_else(|| schema(path, "scalar literals must be strings"))?;
            parse_scalar(s, field)
        })
        .collect()
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
        let r = vec_from_json(row, field, path)?;
        if r.len() != cols {
            return Err(schema(path, format!("expected {cols} columns, got {}", r.len())));
        }
        for (j, x) in r.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

pub(crate) fn field_to_json(field: &FieldSpec) -> Value {
    json!({
        "symbols": field.symbols.iter().map(|s| json!({
            "name": s.name,
            "var": s.var,
            "positive": s.positive,
            "invertible": s.invertible,
            "square_of": s.square_of,
        })).collect::<Vec<_>>(),
        "colors": field.colors.iter().map(|c| json!({
            "name": c.name,
            "shift": c.shift,
        })).collect::<Vec<_>>(),
    })
}

pub(crate) fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let mut field = FieldSpec::rational();
    if v.is_null() {
        return Ok(field);
    }
    let path = "field";
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    if let Some(symbols) = obj.get("symbols") {
        for s in symbols
            .as_array()
            .ok_or_else(|| schema(path, "symbols must be an array"))?
        {
            let name = s["name"]
                .as_str()
                .ok_or_else(|| schema(path, "symbol name must be a string"))?;
            let var = s["var"]
                .as_str()
                .ok_or_else(|| schema(path, "symbol var must be a string"))?;
            field.declare_symbol(SymbolSpec {
                name: name.to_string(),
                var: var.to_string(),
                positive: s["positive"].as_bool().unwrap_or(false),
                invertible: s["invertible"].as_bool().unwrap_or(false),
                square_of: s["square_of"].as_u64().map(|x| x as usize),
            });
        }
    }
    if let Some(colors) = obj.get("colors") {
        for c in colors
            .as_array()
            .ok_or_else(|| schema(path, "colors must be an array"))?
        {
            let name = c["name"]
                .as_str()
                .ok_or_else(|| schema(path, "color name must be a string"))?;
            let shift = c["shift"]
                .as_i64()
                .ok_or_else(|| schema(path, "color shift must be an integer"))?;
            field.declare_color(name, shift);
        }
    }
    Ok(field)
}

pub fn data_to_json(data: &PartialHopfData) -> Value {
    let f = &data.field;
    let mut blocks = Map::new();
    for (k, &d) in &data.blocks {
        blocks.insert(sq_key(k), json!(d));
    }
    let product: Vec<Value> = data
        .product
        .iter()
        .map(|((k, l), table)| {
            json!({
                "left": sq_key(k),
                "right": sq_key(l),
                "table": table.iter().map(|row| {
                    Value::Array(row.iter().map(|v| vec_to_json(v, f)).collect())
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let coproduct: Vec<Value> = data
        .coproduct
        .iter()
        .map(|((k, rs), mats)| {
            json!({
                "block": sq_key(k),
                "rows": [rs.0, rs.1],
                "mats": mats.iter().map(|m| mat_to_json(m, f)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut counit = Map::new();
    for (k, v) in &data.counit {
        counit.insert(sq_key(k), vec_to_json(v, f));
    }
    let mut units = Map::new();
    for (&(k, m), v) in &data.units {
        units.insert(pair_key(k, m), vec_to_json(v, f));
    }
    let antipode = data.antipode.as_ref().map(|s| {
        Value::Object(
            s.iter()
                .map(|(k, m)| (sq_key(k), mat_to_json(m, f)))
                .collect(),
        )
    });
    let star = data.star.as_ref().map(|s| {
        Value::Object(
            s.iter()
                .map(|(k, m)| (sq_key(k), mat_to_json(m, f)))
                .collect(),
        )
    });
    let integral = data.integral.as_ref().map(|s| {
        Value::Object(
            s.iter()
                .map(|(&(k, m), v)| (pair_key(k, m), vec_to_json(v, f)))
                .collect(),
        )
    });
    json!({
        "field": field_to_json(f),
        "objects": data.objects.iter().collect::<Vec<_>>(),
        "boundary": data.boundary.iter().collect::<Vec<_>>(),
        "truncated_blocks": data.truncated_blocks.iter().map(sq_key).collect::<Vec<_>>(),
        "blocks": blocks,
        "product": product,
        "coproduct": coproduct,
        "counit": counit,
        "units": units,
        "antipode": antipode.unwrap_or(Value::Null),
        "star": star.unwrap_or(Value::Null),
        "integral": integral.unwrap_or(Value::Null),
    })
}

pub fn data_from_json(v: &Value) -> Result<PartialHopfData> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected a JSON object"))?;
    let field = field_from_json(obj.get("field").unwrap_or(&Value::Null))?;
    let objects: Vec<Obj> = obj
        .get("objects")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("objects", "expected an array of integers"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| schema("objects", "objects must be integers")))
        .collect::<Result<_>>()?;
    let mut data = PartialHopfData::new(field, objects);
    if let Some(b) = obj.get("boundary").and_then(Value::as_array) {
        for x in b {
            let o = x
                .as_i64()
                .ok_or_else(|| schema("boundary", "objects must be integers"))?;
            data.boundary.insert(o);
        }
    }
    if let Some(t) = obj.get("truncated_blocks").and_then(Value::as_array) {
        for x in t {
            let key = x
                .as_str()
                .ok_or_else(|| schema("truncated_blocks", "expected square keys"))?;
            data.truncated_blocks.insert(parse_sq(key, "truncated_blocks")?);
        }
    }
    let blocks = obj
        .get("blocks")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("blocks", "expected an object keyed by squares"))?;
    for (key, dim) in blocks {
        let sq = parse_sq(key, "blocks")?;
        let d = dim
            .as_u64()
            .ok_or_else(|| schema("blocks", format!("dimension of {key:?} must be an integer")))?;
        for o in [sq.k, sq.l, sq.m, sq.n] {
            if !data.objects.contains(&o) {
                return Err(schema("blocks", format!("block {key:?} uses undeclared object {o}")));
            }
        }
        data.add_block(sq, d as usize);
    }
    let f = data.field.clone();
    if let Some(product) = obj.get("product").and_then(Value::as_array) {
        for (idx, entry) in product.iter().enumerate() {
            let path = format!("product[{idx}]");
            let left = parse_sq(
                entry["left"].as_str().ok_or_else(|| schema(&path, "missing left"))?,
                &path,
            )?;
            let right = parse_sq(
                entry["right"].as_str().ok_or_else(|| schema(&path, "missing right"))?,
                &path,
            )?;
            let kl = left
                .hcomp(&right)
                .ok_or_else(|| schema(&path, "non-composable squares"))?;
            let rows = entry["table"]
                .as_array()
                .ok_or_else(|| schema(&path, "missing table"))?;
            if rows.len() != data.dim(&left) {
                return Err(schema(&path, "table has wrong left dimension"));
            }
            let mut table = Vec::with_capacity(rows.len());
            for row in rows {
                let cols = row
                    .as_array()
                    .ok_or_else(|| schema(&path, "table rows must be arrays"))?;
                if cols.len() != data.dim(&right) {
                    return Err(schema(&path, "table has wrong right dimension"));
                }
                let mut out_row = Vec::with_capacity(cols.len());
                for cell in cols {
                    let v = vec_from_json(cell, &f, &path)?;
                    if v.len() != data.dim(&kl) {
                        return Err(schema(&path, "table cell has wrong target dimension"));
                    }
                    out_row.push(v);
                }
                table.push(out_row);
            }
            data.set_product(left, right, table);
        }
    }
    if let Some(coproduct) = obj.get("coproduct").and_then(Value::as_array) {
        for (idx, entry) in coproduct.iter().enumerate() {
            let path = format!("coproduct[{idx}]");
            let block = parse_sq(
                entry["block"].as_str().ok_or_else(|| schema(&path, "missing block"))?,
                &path,
            )?;
            let rows = entry["rows"]
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| schema(&path, "rows must be a pair"))?;
            let rs = (
                rows[0].as_i64().ok_or_else(|| schema(&path, "rows must be integers"))?,
                rows[1].as_i64().ok_or_else(|| schema(&path, "rows must be integers"))?,
            );
            let up = Square::new(block.k, block.l, rs.0, rs.1);
            let down = Square::new(rs.0, rs.1, block.m, block.n);
            let mats = entry["mats"]
                .as_array()
                .ok_or_else(|| schema(&path, "missing mats"))?;
            if mats.len() != data.dim(&block) {
                return Err(schema(&path, "mats has wrong source dimension"));
            }
            let mut out = Vec::with_capacity(mats.len());
            for m in mats {
                out.push(mat_from_json(m, &f, data.dim(&up), data.dim(&down), &path)?);
            }
            data.set_coproduct(block, rs, out);
        }
    }
    if let Some(counit) = obj.get("counit").and_then(Value::as_object) {
        for (key, v) in counit {
            let sq = parse_sq(key, "counit")?;
            if sq.top() != sq.bottom() {
                return Err(schema("counit", format!("{key:?} is not a diagonal block")));
            }
            let coeffs = vec_from_json(v, &f, "counit")?;
            if coeffs.len() != data.dim(&sq) {
                return Err(schema("counit", format!("{key:?} has wrong dimension")));
            }
            data.set_counit(sq, coeffs);
        }
    }
    if let Some(units) = obj.get("units").and_then(Value::as_object) {
        for (key, v) in units {
            let (k, m) = parse_pair(key, "units")?;
            let coeffs = vec_from_json(v, &f, "units")?;
            if coeffs.len() != data.dim(&Square::unit(k, m)) {
                return Err(schema("units", format!("{key:?} has wrong dimension")));
            }
            data.set_unit(k, m, coeffs);
        }
    }
    if let Some(antipode) = obj.get("antipode").and_then(Value::as_object) {
        for (key, m) in antipode {
            let sq = parse_sq(key, "antipode")?;
            let target = sq.circ_bullet();
            let mat = mat_from_json(m, &f, data.dim(&target), data.dim(&sq), "antipode")?;
            data.set_antipode(sq, mat);
        }
    }
    if let Some(star) = obj.get("star").and_then(Value::as_object) {
        for (key, m) in star {
            let sq = parse_sq(key, "star")?;
            let target = sq.star_grade();
            let mat = mat_from_json(m, &f, data.dim(&target), data.dim(&sq), "star")?;
            data.set_star(sq, mat);
        }
    }
    if let Some(integral) = obj.get("integral").and_then(Value::as_object) {
        for (key, v) in integral {
            let (k, m) = parse_pair(key, "integral")?;
            let coeffs = vec_from_json(v, &f, "integral")?;
            if coeffs.len() != data.dim(&Square::unit(k, m)) {
                return Err(schema("integral", format!("{key:?} has wrong dimension")));
            }
            data.set_integral(k, m, coeffs);
        }
    }
    Ok(data)
}
