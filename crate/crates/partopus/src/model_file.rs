//! Model files: a graded basis plus sparse structure tensors.
//!
//! ```json
//! {"name": "dual-numbers",
//!  "basis": [{"name": "1", "degree": 0}, {"name": "eps", "degree": 0}],
//!  "maps": {"m": {"type": "(2)", "super": 0,
//!                 "entries": [{"in": [["1", "eps"]], "out": "eps", "coeff": "1"}]}}}
//! ```
//!
//! `"modulus": 2` makes degrees count only mod 2.

use serde_json::{json, Map, Value};

use partopus_core::models::{GradedBasis, ModelAlgebra, StructureTensor};
use partopus_core::{Partition, Q};

use crate::Error;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn model_to_json(alg: &ModelAlgebra) -> Value {
    let basis: Vec<Value> = alg.basis.elements.iter().map(|e| json!({"name": e.name, "degree": e.degree})).collect();
    let name = |i: usize| alg.basis.elements[i].name.clone();
    let mut maps = Map::new();
    for (k, t) in &alg.maps {
        let mut entries = Vec::new();
        for (inp, out) in t.entries() {
            let mut slots = Vec::new();
            let mut it = inp.iter();
            for &n in t.ty.slots() {
                slots.push(it.by_ref().take(n).map(|&i| name(i)).collect::<Vec<_>>());
            }
            for (o, c) in out.iter().enumerate() {
                if *c != Q::from_integer(0) {
                    entries.push(json!({"in": slots, "out": name(o), "coeff": c.to_string()}));
                }
            }
        }
        maps.insert(k.clone(), json!({"type": t.ty.to_string(), "super": t.super_degree, "entries": entries}));
    }
    json!({"name": alg.name, "modulus": alg.basis.modulus, "basis": basis, "maps": maps})
}

pub fn model_from_json(v: &Value) -> Result<ModelAlgebra, Error> {
    let name = v.get("name").and_then(Value::as_str).unwrap_or("model");
    let modulus = v.get("modulus").and_then(Value::as_i64);
    let mut elements = Vec::new();
    for e in v.get("basis").and_then(Value::as_array).ok_or_else(|| schema("`basis` must be an array"))? {
        let n = e.get("name").and_then(Value::as_str).ok_or_else(|| schema("basis element needs a `name`"))?;
        let d = e.get("degree").and_then(Value::as_i64).ok_or_else(|| schema("basis element needs a `degree`"))?;
        elements.push((n.to_string(), d));
    }
    let refs: Vec<(&str, i64)> = elements.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let basis = GradedBasis::new(&refs, modulus)?;
    let dim = basis.dim();
    let index = |n: &str| basis.index_of(n).ok_or_else(|| schema(format!("unknown basis element `{n}`")));
    let mut alg = ModelAlgebra::new(name, basis.clone());
    let maps = v.get("maps").and_then(Value::as_object).ok_or_else(|| schema("`maps` must be an object"))?;
    for (key, m) in maps {
        let ty_text = m.get("type").and_then(Value::as_str).ok_or_else(|| schema(format!("map `{key}` needs a `type`")))?;
        let ty: Partition =
            ty_text.parse().map_err(|error| Error::Parse { input: ty_text.into(), error })?;
        let sup = m.get("super").and_then(Value::as_i64).unwrap_or(0);
        let mut t = StructureTensor::new(ty.clone(), sup, dim);
        for e in m.get("entries").and_then(Value::as_array).into_iter().flatten() {
            let slots = e.get("in").and_then(Value::as_array).ok_or_else(|| schema("entry needs `in`"))?;
            let mut inp = Vec::new();
            let mut shape = Vec::new();
            for s in slots {
                let s = s.as_array().ok_or_else(|| schema("each slot of `in` must be an array"))?;
                shape.push(s.len());
                for x in s {
                    inp.push(index(x.as_str().ok_or_else(|| schema("inputs are basis names"))?)?);
                }
            }
            if shape != ty.slots() {
                return Err(schema(format!("entry of `{key}` does not fit type {ty}")));
            }
            let out = index(e.get("out").and_then(Value::as_str).ok_or_else(|| schema("entry needs `out`"))?)?;
            let c = match e.get("coeff") {
                None => Q::from_integer(1),
                Some(Value::String(s)) => s.trim().parse::<Q>().map_err(|_| schema(format!("bad coefficient `{s}`")))?,
                Some(Value::Number(n)) => Q::from_integer(n.as_i64().ok_or_else(|| schema("bad coefficient"))? as i128),
                Some(_) => return Err(schema("coefficient must be a string or an integer")),
            };
            t.set(&inp, out, c);
        }
        alg.insert(key, t)?;
    }
    Ok(alg)
}
