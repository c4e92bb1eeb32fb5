//! JSON documents: a strict parser and a canonical emitter.
//!
//! Canonical form is compact JSON with object keys in byte order and a
//! trailing newline. Scalars are strings in canonical [`FieldElem`] form.
//! The parser rejects unknown keys, shape mismatches and non-canonical
//! scalars, reporting a JSON path with each error.

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, BilinearMap, Variety};
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::extension::{Extension, Section};
use crate::factor_system::{stores_right_action, Action, FactorSystem};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(Algebra),
    FactorSystem(FactorSystem),
    Extension { ext: Extension, section: Option<Section> },
    LinearMap(Matrix),
    Cochain { field: FieldSpec, cochain: Cochain },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::FactorSystem(_) => "factor_system",
            Document::Extension { .. } => "extension",
            Document::LinearMap(_) => "linear_map",
            Document::Cochain { .. } => "cochain",
        }
    }
}

// ---------------------------------------------------------------------------
// emit

fn field_value(field: FieldSpec) -> Value {
    match field.modulus() {
        None => json!({"type": "Q"}),
        Some(p) => json!({"type": "Fp", "p": p}),
    }
}

fn vec_value(v: &[FieldElem]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn matrix_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_value(m.row(r))).collect())
}

fn tensor_value(t: &BilinearMap) -> Value {
    let (l, r, _) = t.shape();
    Value::Array(
        (0..l)
            .map(|i| Value::Array((0..r).map(|j| vec_value(t.get(i, j))).collect()))
            .collect(),
    )
}

fn product_keys(variety: Variety) -> &'static [&'static str] {
    if variety.product_arity() == 1 {
        &["mul"]
    } else {
        &["left", "right"]
    }
}

fn algebra_value(alg: &Algebra) -> Value {
    let mut products = Map::new();
    for (key, t) in product_keys(alg.variety()).iter().zip(alg.products()) {
        products.insert((*key).into(), tensor_value(t));
    }
    json!({
        "kind": "algebra",
        "variety": alg.variety().name(),
        "field": field_value(alg.field()),
        "dim": alg.dim(),
        "products": products,
    })
}

/// Action keys per product: (left, right).
fn action_keys(variety: Variety) -> &'static [(&'static str, &'static str)] {
    if variety.product_arity() == 1 {
        &[("phi", "phi_prime")]
    } else {
        &[("phi_left", "phi_left_prime"), ("phi_right", "phi_right_prime")]
    }
}

fn f_keys(variety: Variety) -> &'static [&'static str] {
    if variety.product_arity() == 1 {
        &["f"]
    } else {
        &["f_left", "f_right"]
    }
}

fn factor_system_value(fs: &FactorSystem) -> Value {
    let variety = fs.variety();
    let family = |fam: &[Matrix]| Value::Array(fam.iter().map(matrix_value).collect());
    let mut action = Map::new();
    for (s, (lk, rk)) in action_keys(variety).iter().enumerate() {
        action.insert((*lk).into(), family(&fs.action().left()[s]));
        if let Some(right) = fs.action().stored_right() {
            action.insert((*rk).into(), family(&right[s]));
        }
    }
    let mut obj = Map::new();
    obj.insert("kind".into(), "factor_system".into());
    obj.insert("A".into(), algebra_value(fs.a()));
    obj.insert("B".into(), algebra_value(fs.b()));
    obj.insert("action".into(), Value::Object(action));
    for (key, t) in f_keys(variety).iter().zip(fs.f()) {
        obj.insert((*key).into(), tensor_value(t));
    }
    Value::Object(obj)
}

fn nested_values(c: &Cochain, depth: usize, offset: usize) -> Value {
    if depth == c.n {
        return vec_value(&c.values[offset..offset + c.a_dim]);
    }
    let stride = c.b_dim.pow((c.n - depth - 1) as u32) * c.a_dim;
    Value::Array(
        (0..c.b_dim)
            .map(|i| nested_values(c, depth + 1, offset + i * stride))
            .collect(),
    )
}

pub fn document_value(doc: &Document) -> Value {
    match doc {
        Document::Algebra(a) => algebra_value(a),
        Document::FactorSystem(fs) => factor_system_value(fs),
        Document::Extension { ext, section } => {
            let mut obj = Map::new();
            obj.insert("kind".into(), "extension".into());
            obj.insert("A".into(), algebra_value(ext.a()));
            obj.insert("L".into(), algebra_value(ext.l()));
            obj.insert("B".into(), algebra_value(ext.b()));
            obj.insert("sigma".into(), matrix_value(ext.sigma()));
            obj.insert("pi".into(), matrix_value(ext.pi()));
            if let Some(t) = section {
                obj.insert("T".into(), matrix_value(&t.t));
            }
            Value::Object(obj)
        }
        Document::LinearMap(m) => json!({
            "kind": "linear_map",
            "field": field_value(m.field()),
            "rows": m.rows(),
            "cols": m.cols(),
            "entries": matrix_value(m),
        }),
        Document::Cochain { field, cochain } => json!({
            "kind": "cochain",
            "field": field_value(*field),
            "n": cochain.n,
            "B_dim": cochain.b_dim,
            "A_dim": cochain.a_dim,
            "values": nested_values(cochain, 0, 0),
        }),
    }
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn emit_document(doc: &Document) -> String {
    to_canonical_string(&document_value(doc))
}

// ---------------------------------------------------------------------------
// parse

struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
    seen: Vec<&'static str>,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, path: &str) -> Result<Self> {
        match v {
            Value::Object(map) => Ok(Obj {
                map,
                path: path.to_string(),
                seen: Vec::new(),
            }),
            _ => Err(Error::parse(path, "expected an object")),
        }
    }

    fn child(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn get(&mut self, key: &'static str) -> Result<&'a Value> {
        self.seen.push(key);
        self.map
            .get(key)
            .ok_or_else(|| Error::parse(&self.path, format!("missing key {key:?}")))
    }

    fn opt(&mut self, key: &'static str) -> Option<&'a Value> {
        self.seen.push(key);
        self.map.get(key)
    }

    fn str(&mut self, key: &'static str) -> Result<&'a str> {
        let path = self.child(key);
        self.get(key)?
            .as_str()
            .ok_or_else(|| Error::parse(path, "expected a string"))
    }

    fn count(&mut self, key: &'static str) -> Result<usize> {
        let path = self.child(key);
        self.get(key)?
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
    }

    fn finish(self) -> Result<()> {
        for key in self.map.keys() {
            if !self.seen.contains(&key.as_str()) {
                return Err(Error::parse(&self.path, format!("unknown key {key:?}")));
            }
        }
        Ok(())
    }
}

fn parse_field(v: &Value, path: &str) -> Result<FieldSpec> {
    let mut o = Obj::new(v, path)?;
    let field = match o.str("type")? {
        "Q" => FieldSpec::rationals(),
        "Fp" => {
            let p = o.count("p")? as u64;
            FieldSpec::prime(p).map_err(|e| Error::parse(format!("{path}.p"), e.to_string()))?
        }
        other => {
            return Err(Error::parse(
                format!("{path}.type"),
                format!("unknown field type {other:?}"),
            ))
        }
    };
    o.finish()?;
    Ok(field)
}

fn array<'a>(v: &'a Value, len: usize, path: &str) -> Result<&'a Vec<Value>> {
    match v {
        Value::Array(a) if a.len() == len => Ok(a),
        Value::Array(a) => Err(Error::parse(path, format!("expected {len} entries, found {}", a.len()))),
        _ => Err(Error::parse(path, "expected an array")),
    }
}

fn parse_vec(field: FieldSpec, v: &Value, len: usize, path: &str) -> Result<Vector> {
    array(v, len, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}[{i}]");
            let s = x.as_str().ok_or_else(|| Error::parse(&p, "expected a scalar string"))?;
            field.parse(s).map_err(|e| Error::parse(&p, e.to_string()))
        })
        .collect()
}

fn parse_matrix(field: FieldSpec, v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let data = array(v, rows, path)?
        .iter()
        .enumerate()
        .map(|(r, row)| parse_vec(field, row, cols, &format!("{path}[{r}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, cols, data))
}

fn parse_tensor(field: FieldSpec, v: &Value, shape: (usize, usize, usize), path: &str) -> Result<BilinearMap> {
    let (l, r, o) = shape;
    let mut t = BilinearMap::zeros(field, l, r, o);
    for (i, row) in array(v, l, path)?.iter().enumerate() {
        for (j, cell) in array(row, r, &format!("{path}[{i}]"))?.iter().enumerate() {
            t.set(i, j, &parse_vec(field, cell, o, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Ok(t)
}

fn expect_kind(o: &mut Obj<'_>, kind: &str) -> Result<()> {
    let path = o.child("kind");
    let k = o.str("kind")?;
    if k != kind {
        return Err(Error::parse(path, format!("expected kind {kind:?}, found {k:?}")));
    }
    Ok(())
}

fn parse_algebra(v: &Value, path: &str) -> Result<Algebra> {
    let mut o = Obj::new(v, path)?;
    expect_kind(&mut o, "algebra")?;
    let vpath = o.child("variety");
    let variety: Variety = o
        .str("variety")?
        .parse()
        .map_err(|e: Error| Error::parse(vpath, e.to_string()))?;
    let fpath = o.child("field");
    let field = parse_field(o.get("field")?, &fpath)?;
    let dim = o.count("dim")?;
    let ppath = o.child("products");
    let mut po = Obj::new(o.get("products")?, &ppath)?;
    let mut products = Vec::new();
    for key in product_keys(variety) {
        let kpath = po.child(key);
        products.push(parse_tensor(field, po.get(key)?, (dim, dim, dim), &kpath)?);
    }
    po.finish()?;
    o.finish()?;
    Algebra::new(variety, field, dim, products).map_err(|e| Error::parse(path, e.to_string()))
}

fn same_field(path: &str, fields: &[FieldSpec]) -> Result<()> {
    if fields.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::parse(path, "embedded documents over different fields"));
    }
    Ok(())
}

fn parse_factor_system(v: &Value, path: &str) -> Result<FactorSystem> {
    let mut o = Obj::new(v, path)?;
    expect_kind(&mut o, "factor_system")?;
    let (apath, bpath) = (o.child("A"), o.child("B"));
    let a = parse_algebra(o.get("A")?, &apath)?;
    let b = parse_algebra(o.get("B")?, &bpath)?;
    same_field(path, &[a.field(), b.field()])?;
    if a.variety() != b.variety() {
        return Err(Error::parse(path, "A and B of different varieties"));
    }
    let variety = a.variety();
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let actpath = o.child("action");
    let mut ao = Obj::new(o.get("action")?, &actpath)?;
    let mut family = |key: &'static str| -> Result<Vec<Matrix>> {
        let kpath = ao.child(key);
        array(ao.get(key)?, db, &kpath)?
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(field, m, da, da, &format!("{kpath}[{i}]")))
            .collect()
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (lk, rk) in action_keys(variety) {
        left.push(family(lk)?);
        if stores_right_action(variety) {
            right.push(family(rk)?);
        }
    }
    ao.finish()?;
    let mut f = Vec::new();
    for key in f_keys(variety) {
        let kpath = o.child(key);
        f.push(parse_tensor(field, o.get(key)?, (db, db, da), &kpath)?);
    }
    o.finish()?;
    let action = Action::new(variety, left, stores_right_action(variety).then_some(right))
        .map_err(|e| Error::parse(&actpath, e.to_string()))?;
    FactorSystem::new(a, b, action, f).map_err(|e| Error::parse(path, e.to_string()))
}

fn parse_extension(v: &Value, path: &str) -> Result<(Extension, Option<Section>)> {
    let mut o = Obj::new(v, path)?;
    expect_kind(&mut o, "extension")?;
    let mut alg = |key: &'static str| -> Result<Algebra> {
        let p = o.child(key);
        parse_algebra(o.get(key)?, &p)
    };
    let (a, l, b) = (alg("A")?, alg("L")?, alg("B")?);
    same_field(path, &[a.field(), l.field(), b.field()])?;
    let field = l.field();
    let spath = o.child("sigma");
    let sigma = parse_matrix(field, o.get("sigma")?, l.dim(), a.dim(), &spath)?;
    let ppath = o.child("pi");
    let pi = parse_matrix(field, o.get("pi")?, b.dim(), l.dim(), &ppath)?;
    let tpath = o.child("T");
    let section = match o.opt("T") {
        Some(t) => Some(Section {
            t: parse_matrix(field, t, l.dim(), b.dim(), &tpath)?,
        }),
        None => None,
    };
    o.finish()?;
    let ext = Extension::new(a, l, b, sigma, pi).map_err(|e| Error::parse(path, e.to_string()))?;
    Ok((ext, section))
}

fn parse_linear_map(v: &Value, path: &str) -> Result<Matrix> {
    let mut o = Obj::new(v, path)?;
    expect_kind(&mut o, "linear_map")?;
    let fpath = o.child("field");
    let field = parse_field(o.get("field")?, &fpath)?;
    let rows = o.count("rows")?;
    let cols = o.count("cols")?;
    let epath = o.child("entries");
    let m = parse_matrix(field, o.get("entries")?, rows, cols, &epath)?;
    o.finish()?;
    Ok(m)
}

fn parse_nested(field: FieldSpec, v: &Value, depth: usize, c: &mut Cochain, path: &str) -> Result<()> {
    if depth == c.n {
        let vals = parse_vec(field, v, c.a_dim, path)?;
        c.values.extend(vals);
        return Ok(());
    }
    for (i, x) in array(v, c.b_dim, path)?.iter().enumerate() {
        parse_nested(field, x, depth + 1, c, &format!("{path}[{i}]"))?;
    }
    Ok(())
}

fn parse_cochain(v: &Value, path: &str) -> Result<(FieldSpec, Cochain)> {
    let mut o = Obj::new(v, path)?;
    expect_kind(&mut o, "cochain")?;
    let fpath = o.child("field");
    let field = parse_field(o.get("field")?, &fpath)?;
    let n = o.count("n")?;
    let b_dim = o.count("B_dim")?;
    let a_dim = o.count("A_dim")?;
    let mut c = Cochain {
        n,
        b_dim,
        a_dim,
        values: Vec::new(),
    };
    let vpath = o.child("values");
    parse_nested(field, o.get("values")?, 0, &mut c, &vpath)?;
    o.finish()?;
    Ok((field, c))
}

pub fn parse_value(v: &Value) -> Result<Document> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("$", "missing string key \"kind\""))?;
    Ok(match kind {
        "algebra" => Document::Algebra(parse_algebra(v, "$")?),
        "factor_system" => Document::FactorSystem(parse_factor_system(v, "$")?),
        "extension" => {
            let (ext, section) = parse_extension(v, "$")?;
            Document::Extension { ext, section }
        }
        "linear_map" => Document::LinearMap(parse_linear_map(v, "$")?),
        "cochain" => {
            let (field, cochain) = parse_cochain(v, "$")?;
            Document::Cochain { field, cochain }
        }
        other => return Err(Error::parse("$.kind", format!("unknown kind {other:?}"))),
    })
}

pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))?;
    parse_value(&v)
}
