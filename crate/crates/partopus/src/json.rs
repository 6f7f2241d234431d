//! JSON forms of partition vectors, formal sums, identity reports and
//! verification reports.

use serde_json::{json, Map, Value};

use partopus_core::identity::{
    FactorKind, Factorization, IdentityOptions, IdentityReport, SymbolFilter, TypeIIEntry,
};
use partopus_core::models::Report;
use partopus_core::sign::Monomial;
use partopus_core::{Degree, Expr, FormalSum, Generator, MapSymbol, Partition, PartitionVector, SignPoly, Q};

use crate::Error;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| schema(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, Error> {
    v.as_array().ok_or_else(|| schema(format!("`{what}` must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str, Error> {
    v.as_str().ok_or_else(|| schema(format!("`{what}` must be a string")))
}

fn uint(v: &Value, what: &str) -> Result<usize, Error> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| schema(format!("`{what}` must be a non-negative integer")))
}

fn int(v: &Value, what: &str) -> Result<i64, Error> {
    v.as_i64().ok_or_else(|| schema(format!("`{what}` must be an integer")))
}

pub fn partition_to_json(p: &Partition) -> Value {
    json!(p.slots())
}

pub fn partition_from_json(v: &Value) -> Result<Partition, Error> {
    let slots = array(v, "slots")?.iter().map(|s| uint(s, "slot")).collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(slots)?)
}

pub fn vector_to_json(v: &PartitionVector) -> Value {
    let terms: Vec<Value> = v.iter().map(|(p, c)| json!({"coeff": c, "slots": p.slots()})).collect();
    json!({ "terms": terms })
}

pub fn vector_from_json(v: &Value) -> Result<PartitionVector, Error> {
    let mut out = PartitionVector::raw();
    for t in array(field(v, "terms")?, "terms")? {
        let p = partition_from_json(field(t, "slots")?)?;
        out.add_term(p, int(field(t, "coeff")?, "coeff")?);
    }
    Ok(out)
}

fn degree_to_json(d: &Degree) -> Value {
    match d {
        Degree::Known(k) => json!(k),
        Degree::Symbolic => Value::Null,
    }
}

fn degree_from_json(v: Option<&Value>) -> Result<Degree, Error> {
    match v {
        None | Some(Value::Null) => Ok(Degree::Symbolic),
        Some(x) => Ok(Degree::Known(int(x, "super")?)),
    }
}

fn expr_fields(e: &Expr, obj: &mut Map<String, Value>) {
    match e {
        Expr::Gen(g) => {
            obj.insert("gen".into(), json!(g.name));
            obj.insert("super".into(), degree_to_json(&g.degree));
        }
        Expr::App(a) => {
            obj.insert("head".into(), json!(a.head.label()));
            if !a.head.identity {
                obj.insert("super".into(), degree_to_json(&a.head.degree));
            }
            let slots: Vec<Value> = a.slots.iter().map(|s| Value::Array(s.iter().map(expr_to_json).collect())).collect();
            obj.insert("slots".into(), Value::Array(slots));
        }
    }
}

pub fn expr_to_json(e: &Expr) -> Value {
    let mut obj = Map::new();
    expr_fields(e, &mut obj);
    Value::Object(obj)
}

/// Split `m(1|2)` into its name and type.
fn parse_head(label: &str) -> Result<(String, Partition), Error> {
    let open = label.find('(').ok_or_else(|| schema(format!("head `{label}` has no type")))?;
    let ty: Partition = label[open..].parse().map_err(|e: partopus_core::ParseError| {
        Error::Parse { input: label.into(), error: partopus_core::ParseError::new(open + e.position, &e.message) }
    })?;
    Ok((label[..open].into(), ty))
}

pub fn expr_from_json(v: &Value) -> Result<Expr, Error> {
    if let Some(name) = v.get("gen") {
        let name = string(name, "gen")?;
        return Ok(Expr::gen(Generator::new(name, degree_from_json(v.get("super"))?)));
    }
    let (name, ty) = parse_head(string(field(v, "head")?, "head")?)?;
    let head = if name == "id" {
        MapSymbol::identity(ty)
    } else {
        MapSymbol::new(&name, ty, degree_from_json(v.get("super"))?)
    };
    let mut slots = Vec::new();
    for s in array(field(v, "slots")?, "slots")? {
        slots.push(array(s, "slot")?.iter().map(expr_from_json).collect::<Result<Vec<_>, _>>()?);
    }
    let e = Expr::app(head, slots);
    if !e.is_well_formed() {
        return Err(schema(format!("arguments of `{}` do not match its type", e.render(false))));
    }
    Ok(e)
}

fn sign_to_json(s: &SignPoly) -> Value {
    Value::Array(s.monomials().map(|m| json!(m)).collect())
}

fn sign_from_json(v: Option<&Value>) -> Result<SignPoly, Error> {
    let Some(v) = v else {
        return Ok(SignPoly::zero());
    };
    let mut ms = Vec::new();
    for m in array(v, "sign")? {
        let m: Monomial =
            array(m, "monomial")?.iter().map(|x| string(x, "variable").map(String::from)).collect::<Result<_, _>>()?;
        ms.push(m);
    }
    Ok(SignPoly::from_monomials(ms))
}

/// `[{"coeff":"p/q","sign":[[..]],"head":..,"slots":..}, ..]`; the sign
/// lists the monomials of the F2 exponent and is omitted when zero.
pub fn sum_to_json(s: &FormalSum) -> Value {
    let terms = s
        .iter()
        .map(|(e, sign, c)| {
            let mut obj = Map::new();
            obj.insert("coeff".into(), json!(c.to_string()));
            if !sign.is_zero() {
                obj.insert("sign".into(), sign_to_json(sign));
            }
            expr_fields(e, &mut obj);
            Value::Object(obj)
        })
        .collect();
    Value::Array(terms)
}

fn rational(v: &Value) -> Result<Q, Error> {
    match v {
        Value::String(s) => s.trim().parse::<Q>().map_err(|_| schema(format!("bad coefficient `{s}`"))),
        Value::Number(n) => n.as_i64().map(|k| Q::from_integer(k as i128)).ok_or_else(|| schema("bad coefficient")),
        _ => Err(schema("coefficient must be a string or an integer")),
    }
}

pub fn sum_from_json(v: &Value) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    for t in array(v, "terms")? {
        let c = rational(field(t, "coeff")?)?;
        out.add_term(c, &sign_from_json(t.get("sign"))?, expr_from_json(t)?);
    }
    Ok(out)
}

fn filter_name(f: SymbolFilter) -> &'static str {
    match f {
        SymbolFilter::All => "all",
        SymbolFilter::Singletons => "singletons",
        SymbolFilter::Ones => "ones",
    }
}

pub fn parse_filter(s: &str) -> Result<SymbolFilter, Error> {
    match s {
        "all" => Ok(SymbolFilter::All),
        "singletons" => Ok(SymbolFilter::Singletons),
        "ones" => Ok(SymbolFilter::Ones),
        _ => Err(schema(format!("unknown filter `{s}`"))),
    }
}

pub fn identity_to_json(r: &IdentityReport) -> Value {
    let factorizations: Vec<Value> = r
        .factorizations
        .iter()
        .map(|f| {
            json!({
                "outer": f.outer.slots(),
                "inner": f.inner.slots(),
                "kind": match f.kind { FactorKind::Regular => "I", FactorKind::UnitSplit => "II" },
                "multiplicity": f.multiplicity,
                "subdivisions": f.subdivisions,
            })
        })
        .collect();
    let entries: Vec<Value> = r
        .type_ii_entries
        .iter()
        .map(|e| json!({"slot": e.slot, "merged": e.merged.slots(), "coefficient": e.coefficient}))
        .collect();
    json!({
        "target": r.target.slots(),
        "type_i": sum_to_json(&r.type_i),
        "type_ii": sum_to_json(&r.type_ii),
        "options": {
            "type_ii_coefficients": r.options.include_type_ii_coefficients,
            "filter": filter_name(r.options.filter),
        },
        "factorizations": factorizations,
        "type_ii_entries": entries,
    })
}

pub fn identity_from_json(v: &Value) -> Result<IdentityReport, Error> {
    let opts = field(v, "options")?;
    let options = IdentityOptions {
        include_type_ii_coefficients: field(opts, "type_ii_coefficients")?
            .as_bool()
            .ok_or_else(|| schema("`type_ii_coefficients` must be a boolean"))?,
        filter: parse_filter(string(field(opts, "filter")?, "filter")?)?,
    };
    let mut factorizations = Vec::new();
    for f in v.get("factorizations").and_then(Value::as_array).into_iter().flatten() {
        factorizations.push(Factorization {
            outer: partition_from_json(field(f, "outer")?)?,
            inner: partition_from_json(field(f, "inner")?)?,
            multiplicity: int(field(f, "multiplicity")?, "multiplicity")?,
            subdivisions: uint(field(f, "subdivisions")?, "subdivisions")?,
            kind: match string(field(f, "kind")?, "kind")? {
                "I" => FactorKind::Regular,
                "II" => FactorKind::UnitSplit,
                k => return Err(schema(format!("unknown factorization kind `{k}`"))),
            },
        });
    }
    let mut type_ii_entries = Vec::new();
    for e in v.get("type_ii_entries").and_then(Value::as_array).into_iter().flatten() {
        type_ii_entries.push(TypeIIEntry {
            slot: uint(field(e, "slot")?, "slot")?,
            merged: partition_from_json(field(e, "merged")?)?,
            coefficient: int(field(e, "coefficient")?, "coefficient")?,
        });
    }
    Ok(IdentityReport {
        target: partition_from_json(field(v, "target")?)?,
        factorizations,
        type_i: sum_from_json(field(v, "type_i")?)?,
        type_ii: sum_from_json(field(v, "type_ii")?)?,
        type_ii_entries,
        options,
    })
}

pub fn report_to_json(r: &Report) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "samples": c.samples, "witness": c.witness}))
        .collect();
    json!({"suite": r.suite, "model": r.model, "seed": r.seed, "passed": r.passed(), "checks": checks})
}
