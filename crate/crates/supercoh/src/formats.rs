//! JSON encodings of complexes, cochains and the algebraic objects of the
//! core crate.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; rationals use `"a/b"` strings. Readers accept
//! either form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use supercoh_core::brauer::{BrauerElement, BrauerGroup, Variant};
use supercoh_core::dsv::{BoundedChainComplex, Dsv, DsvMap, Field, FieldMatrix};
use supercoh_core::linalg::AbelianGroupPresentation;
use supercoh_core::simplicial::{corpus, Cochain, CohomologyClass, SimplicialComplex};
use supercoh_core::stable2type::Stable2TypeData;
use supercoh_core::superline::{Flavor, SuperLine};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertex_count: usize,
    pub maximal_simplices: Vec<Vec<u32>>,
}

impl ComplexJson {
    pub fn of(x: &SimplicialComplex) -> Self {
        ComplexJson {
            vertex_count: x.vertex_count(),
            maximal_simplices: x.maximal_simplices().to_vec(),
        }
    }

    pub fn build(self) -> CliResult<Arc<SimplicialComplex>> {
        Ok(Arc::new(SimplicialComplex::new(self.vertex_count, self.maximal_simplices)?))
    }
}

pub fn complex_to_json(x: &SimplicialComplex) -> Value {
    serde_json::to_value(ComplexJson::of(x)).expect("plain struct")
}

pub fn complex_from_value(v: &Value) -> CliResult<Arc<SimplicialComplex>> {
    if let Some(name) = v.as_str() {
        return corpus_complex(name.strip_prefix('@').unwrap_or(name));
    }
    let c: ComplexJson =
        serde_json::from_value(v.clone()).map_err(|e| CliError::Parse(format!("complex: {e}")))?;
    c.build()
}

pub fn corpus_complex(name: &str) -> CliResult<Arc<SimplicialComplex>> {
    corpus::by_name(name).ok_or_else(|| {
        CliError::Parse(format!("unknown corpus complex `{name}` (known: {})", corpus::NAMES.join(", ")))
    })
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> CliResult<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CliError::Parse(format!("expected an integer, found {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("bad integer `{s}`"))),
        other => Err(CliError::Parse(format!("expected an integer, found {other}"))),
    }
}

pub fn ints_from_json(v: &Value) -> CliResult<Vec<BigInt>> {
    array(v, "integer list")?.iter().map(int_from_json).collect()
}

pub fn ints_to_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_to_json).collect())
}

pub fn rational_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        int_to_json(x.numer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn rational_from_json(v: &Value) -> CliResult<BigRational> {
    if let Value::String(s) = v {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| CliError::Parse(format!("bad rational `{s}`")))?;
            let d: BigInt = d.trim().parse().map_err(|_| CliError::Parse(format!("bad rational `{s}`")))?;
            if d.is_zero() {
                return Err(CliError::Parse(format!("zero denominator in `{s}`")));
            }
            return Ok(BigRational::new(n, d));
        }
    }
    Ok(BigRational::from_integer(int_from_json(v)?))
}

fn array<'a>(v: &'a Value, what: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::Parse(format!("expected {what} as a JSON array")))
}

fn field_of<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| CliError::Parse(format!("missing field `{key}`")))
}

fn usize_of(v: &Value, key: &str) -> CliResult<usize> {
    field_of(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CliError::Parse(format!("field `{key}` must be a nonnegative integer")))
}

// Cochains: {"degree": q, "modulus": n, "values": [...]}.

pub fn cochain_to_json(x: &Cochain) -> Value {
    json!({
        "degree": x.degree(),
        "modulus": x.modulus(),
        "values": ints_to_json(x.values()),
    })
}

pub fn cochain_from_json(x: &Arc<SimplicialComplex>, v: &Value) -> CliResult<Cochain> {
    let degree = usize_of(v, "degree")?;
    let modulus = field_of(v, "modulus")?
        .as_u64()
        .ok_or_else(|| CliError::Parse("field `modulus` must be a nonnegative integer".into()))?;
    let values = ints_from_json(field_of(v, "values")?)?;
    Ok(Cochain::new(x.clone(), degree, modulus, values)?)
}

// Brauer elements: cochain values per slot, or generator coordinates.

pub fn brauer_to_json(x: &BrauerElement) -> Value {
    json!({
        "variant": x.variant().to_string(),
        "a": ints_to_json(x.a().values()),
        "b": ints_to_json(x.b().values()),
        "c": ints_to_json(x.c().values()),
    })
}

pub fn brauer_from_json(g: &BrauerGroup, v: &Value) -> CliResult<BrauerElement> {
    if let Some(variant) = v.get("variant").and_then(Value::as_str) {
        let variant: Variant = variant.parse()?;
        if variant != g.variant() {
            return Err(CliError::Domain(format!("element is {variant}, group is {}", g.variant())));
        }
    }
    if let Some(coords) = v.get("coords") {
        let slot = |k: &str| -> CliResult<Vec<BigInt>> {
            match coords.get(k) {
                Some(c) => ints_from_json(c),
                None => Ok(Vec::new()),
            }
        };
        let pad = |mut c: Vec<BigInt>, n: usize| {
            c.resize(n.max(c.len()), BigInt::zero());
            c
        };
        let [ha, hb, hc] = g.components();
        let (a, b, c) = (
            pad(slot("a")?, ha.generators().len()),
            pad(slot("b")?, hb.generators().len()),
            pad(slot("c")?, hc.generators().len()),
        );
        return Ok(g.element(&a, &b, &c)?);
    }
    let x = g.base();
    let id = g.identity();
    let slot = |k: &str, template: &Cochain| -> CliResult<Cochain> {
        match v.get(k) {
            Some(vals) => Ok(Cochain::new(x.clone(), template.degree(), template.modulus(), ints_from_json(vals)?)?),
            None => Ok(template.clone()),
        }
    };
    Ok(BrauerElement::new(g.variant(), slot("a", id.a())?, slot("b", id.b())?, slot("c", id.c())?)?)
}

// Superlines: {"flavor", "parity", "line_class"} with an optional "base".

pub fn superline_to_json(l: &SuperLine) -> Value {
    json!({
        "flavor": l.flavor().to_string(),
        "base": complex_to_json(l.base()),
        "parity": l.parity(),
        "line_class": ints_to_json(l.line_class().cochain().values()),
    })
}

pub fn superline_from_json(base: Option<&Arc<SimplicialComplex>>, v: &Value) -> CliResult<SuperLine> {
    let flavor: Flavor = field_of(v, "flavor")?
        .as_str()
        .ok_or_else(|| CliError::Parse("field `flavor` must be a string".into()))?
        .parse()?;
    let x = match (base, v.get("base")) {
        (Some(x), _) => x.clone(),
        (None, Some(b)) => complex_from_value(b)?,
        (None, None) => return Err(CliError::Parse("superline needs a base complex".into())),
    };
    let parity = array(field_of(v, "parity")?, "parity")?
        .iter()
        .map(|p| match p {
            Value::Bool(b) => Ok(*b),
            Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
            Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
            other => Err(CliError::Parse(format!("bad parity entry {other}"))),
        })
        .collect::<CliResult<Vec<bool>>>()?;
    let (degree, modulus) = flavor.class_degree();
    let class = match v.get("line_class") {
        Some(vals) => Cochain::new(x.clone(), degree, modulus, ints_from_json(vals)?)?,
        None => Cochain::zero(x.clone(), degree, modulus),
    };
    Ok(SuperLine::new(flavor, parity, CohomologyClass::new(class)?)?)
}

// Stable 2-type data: {"pi0": [orders] | "Z/8", "pi1": ..., "q": [[...]]}.

pub fn stable2type_to_json(d: &Stable2TypeData) -> Value {
    json!({
        "pi0": d.pi0_orders(),
        "pi1": d.pi1_orders(),
        "q": d.q(),
        "pi0_group": d.pi0().to_string(),
        "pi1_group": d.pi1().to_string(),
    })
}

pub fn group_from_json(v: &Value) -> CliResult<AbelianGroupPresentation> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        Value::Array(_) => {
            let orders = orders_from_json(v)?;
            Ok(AbelianGroupPresentation::from_orders(&orders))
        }
        other => Err(CliError::Parse(format!("expected a group, found {other}"))),
    }
}

fn orders_from_json(v: &Value) -> CliResult<Vec<u64>> {
    array(v, "order list")?
        .iter()
        .map(|o| o.as_u64().ok_or_else(|| CliError::Parse(format!("bad order {o}"))))
        .collect()
}

fn orders_of(v: &Value) -> CliResult<Vec<u64>> {
    match v {
        Value::String(s) => {
            let g: AbelianGroupPresentation = s.parse()?;
            Ok(g.generator_orders().iter().map(|o| o.to_u64().unwrap_or(0)).collect())
        }
        _ => orders_from_json(v),
    }
}

pub fn stable2type_from_json(v: &Value) -> CliResult<Stable2TypeData> {
    let pi0 = orders_of(field_of(v, "pi0")?)?;
    let pi1 = orders_of(field_of(v, "pi1")?)?;
    let q = match v.get("q") {
        Some(rows) => array(rows, "q")?.iter().map(orders_from_json).collect::<CliResult<Vec<_>>>()?,
        None => Vec::new(),
    };
    if q.is_empty() {
        return Ok(Stable2TypeData::trivial(
            &AbelianGroupPresentation::from_orders(&pi0),
            &AbelianGroupPresentation::from_orders(&pi1),
        )?);
    }
    Ok(Stable2TypeData::from_orders(pi0, pi1, q)?)
}

// DSVs: {"field": "Q" | "F5", "dim0", "dim1", "d0": rows, "d1": rows}.

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

pub fn field_from_str(s: &str) -> CliResult<Field> {
    let s = s.trim();
    if s == "Q" || s == "0" {
        return Ok(Field::Rational);
    }
    let digits = s.trim_start_matches('F').trim_start_matches('_');
    let p: u32 = digits.parse().map_err(|_| CliError::Parse(format!("bad field `{s}`")))?;
    Ok(Field::prime(p)?)
}

fn field_from_json(v: &Value) -> CliResult<Field> {
    match field_of(v, "field")? {
        Value::String(s) => field_from_str(s),
        Value::Number(n) => field_from_str(&n.to_string()),
        other => Err(CliError::Parse(format!("bad field {other}"))),
    }
}

pub fn matrix_to_json(m: &FieldMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| rational_to_json(m.get(i, j))).collect()))
            .collect(),
    )
}

/// Rows of a `rows × cols` matrix; an empty array stands for any zero-size
/// shape.
pub fn matrix_from_json(f: Field, v: &Value, rows: usize, cols: usize) -> CliResult<FieldMatrix> {
    let data = array(v, "matrix")?;
    if rows == 0 || (cols == 0 && data.is_empty()) {
        return Ok(FieldMatrix::zeros(f, rows, cols));
    }
    if data.len() != rows {
        return Err(CliError::Parse(format!("matrix has {} rows, expected {rows}", data.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in data {
        let row = array(row, "matrix row")?;
        if row.len() != cols {
            return Err(CliError::Parse(format!("matrix row has {} entries, expected {cols}", row.len())));
        }
        for e in row {
            entries.push(f.normalize(&rational_from_json(e)?)?);
        }
    }
    Ok(FieldMatrix::from_entries(f, rows, cols, entries)?)
}

pub fn dsv_to_json(v: &Dsv) -> Value {
    json!({
        "field": field_name(v.field()),
        "dim0": v.dim0(),
        "dim1": v.dim1(),
        "d0": matrix_to_json(v.d0()),
        "d1": matrix_to_json(v.d1()),
    })
}

pub fn dsv_from_json(v: &Value) -> CliResult<Dsv> {
    let f = field_from_json(v)?;
    let (n0, n1) = (usize_of(v, "dim0")?, usize_of(v, "dim1")?);
    let zero = json!([]);
    let d0 = matrix_from_json(f, v.get("d0").unwrap_or(&zero), n1, n0)?;
    let d1 = matrix_from_json(f, v.get("d1").unwrap_or(&zero), n0, n1)?;
    Ok(Dsv::new(d0, d1)?)
}

pub fn dsv_map_to_json(m: &DsvMap) -> Value {
    json!({
        "source": dsv_to_json(m.source()),
        "target": dsv_to_json(m.target()),
        "f0": matrix_to_json(m.f0()),
        "f1": matrix_to_json(m.f1()),
    })
}

pub fn dsv_map_from_json(v: &Value) -> CliResult<DsvMap> {
    let source = dsv_from_json(field_of(v, "source")?)?;
    let target = dsv_from_json(field_of(v, "target")?)?;
    if source.field() != target.field() {
        return Err(CliError::Domain("source and target fields differ".into()));
    }
    let f = source.field();
    let f0 = matrix_from_json(f, field_of(v, "f0")?, target.dim0(), source.dim0())?;
    let f1 = matrix_from_json(f, field_of(v, "f1")?, target.dim1(), source.dim1())?;
    Ok(DsvMap::new(source, target, f0, f1)?)
}

// Bounded chain complexes: {"field", "lowest", "dims", "boundaries"} with
// boundaries[k]: E_{lowest+k+1} → E_{lowest+k}.

pub fn chain_to_json(e: &BoundedChainComplex) -> Value {
    json!({
        "field": field_name(e.field()),
        "lowest": e.lowest_degree(),
        "dims": e.dims(),
        "boundaries": e.boundaries().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn chain_from_json(v: &Value) -> CliResult<BoundedChainComplex> {
    let f = field_from_json(v)?;
    let lowest = field_of(v, "lowest")?
        .as_i64()
        .ok_or_else(|| CliError::Parse("field `lowest` must be an integer".into()))?;
    let dims: Vec<usize> = array(field_of(v, "dims")?, "dims")?
        .iter()
        .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| CliError::Parse(format!("bad dimension {d}"))))
        .collect::<CliResult<_>>()?;
    let empty = Vec::new();
    let given = match v.get("boundaries") {
        Some(b) => array(b, "boundaries")?,
        None => &empty,
    };
    let count = dims.len().saturating_sub(1);
    if !given.is_empty() && given.len() != count {
        return Err(CliError::Parse(format!("expected {count} boundary matrices, found {}", given.len())));
    }
    let boundaries = (0..count)
        .map(|k| match given.get(k) {
            Some(m) => matrix_from_json(f, m, dims[k], dims[k + 1]),
            None => Ok(FieldMatrix::zeros(f, dims[k], dims[k + 1])),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(BoundedChainComplex::new(f, lowest, dims, boundaries)?)
}
