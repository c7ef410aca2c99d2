//! Versioned JSON documents.
//!
//! Every document is an object `{"format": 1, "kind": ..., "field": ...}`
//! with the payload keys of its kind beside the envelope keys. Scalars are
//! strings `"num/den"` over Q and integers over F_p; integers are accepted as
//! shorthand on input for either field.
//!
//! Product tables use `mul[i][j]` = coordinates of `e_i∘e_j`, so the left
//! factor picks the row. The algebra with `e1∘e1 = e1`, `e1∘e2 = e2∘e1 = e2`
//! and `e2∘e2 = 0` is
//!
//! ```json
//! {"format": 1, "kind": "algebra", "field": {"kind": "rational"}, "dim": 2,
//!  "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]}
//! ```
//!
//! A matrix is a list of rows: `matrix[i][j]` is the `e_i` coordinate of the
//! image of `e_j`.

use nova_core::postnov::{CommTrialgebra, PostNov};
use nova_core::ybe::BilForm;
use nova_core::{Algebra, BimodNov, Bimodule, Field, Matrix, Scalar, Tensor2, Vector};
use serde_json::{json, Map, Value};

pub const FORMAT: u64 = 1;

pub type DocResult<T> = std::result::Result<T, String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Algebra(Algebra),
    Bimodule(Bimodule),
    BimodNov(BimodNov),
    LinMap(Matrix),
    Tensor2(Tensor2),
    PostNov(PostNov),
    BilForm(BilForm),
    Trialgebra(CommTrialgebra),
    Bundle(Vec<(String, Document)>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Bimodule(_) => "bimodule",
            Object::BimodNov(_) => "bimodnov",
            Object::LinMap(_) => "linmap",
            Object::Tensor2(_) => "tensor2",
            Object::PostNov(_) => "postnov",
            Object::BilForm(_) => "bilform",
            Object::Trialgebra(_) => "trialgebra",
            Object::Bundle(_) => "doc-bundle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: Field,
    pub object: Object,
}

impl Document {
    pub fn new(field: Field, object: Object) -> Document {
        Document { field, object }
    }

    pub fn bundle(field: Field, items: Vec<(&str, Object)>) -> Document {
        let items = items.into_iter().map(|(n, o)| (n.to_string(), Document::new(field, o))).collect();
        Document::new(field, Object::Bundle(items))
    }

    pub fn kind(&self) -> &'static str {
        self.object.kind()
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("format".into(), json!(FORMAT));
        m.insert("kind".into(), json!(self.kind()));
        m.insert("field".into(), field_value(self.field));
        let payload = match &self.object {
            Object::Algebra(a) => algebra_payload(a),
            Object::Bimodule(b) => bimodule_payload(b),
            Object::BimodNov(b) => {
                let mut p = bimodule_payload(b.bimodule());
                p.insert("product".into(), mul_value(b.product()));
                p
            }
            Object::LinMap(mat) => {
                let mut p = Map::new();
                p.insert("rows".into(), json!(mat.rows()));
                p.insert("cols".into(), json!(mat.cols()));
                p.insert("matrix".into(), matrix_value(mat));
                p
            }
            Object::Tensor2(t) => {
                let mut p = Map::new();
                p.insert("dim".into(), json!(t.dim()));
                p.insert("coeffs".into(), matrix_value(&t.as_matrix()));
                p
            }
            Object::PostNov(pn) => {
                let mut p = Map::new();
                p.insert("dim".into(), json!(pn.dim()));
                p.insert("circ".into(), mul_value(pn.circ()));
                p.insert("tri_l".into(), mul_value(pn.tri_l()));
                p.insert("tri_r".into(), mul_value(pn.tri_r()));
                p
            }
            Object::BilForm(b) => {
                let mut p = Map::new();
                p.insert("dim".into(), json!(b.dim()));
                p.insert("grid".into(), matrix_value(b.grid()));
                p
            }
            Object::Trialgebra(t) => {
                let mut p = Map::new();
                p.insert("dim".into(), json!(t.dot.dim()));
                p.insert("dot".into(), mul_value(&t.dot));
                p.insert("circ".into(), mul_value(&t.circ));
                p.insert("derivation".into(), matrix_value(&t.d));
                p
            }
            Object::Bundle(items) => {
                let list = items.iter().map(|(n, d)| json!({"name": n, "document": d.to_value()})).collect();
                let mut p = Map::new();
                p.insert("items".into(), Value::Array(list));
                p
            }
        };
        m.extend(payload);
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }

    pub fn parse(text: &str) -> DocResult<Document> {
        let v: Value = serde_json::from_str(text.trim_start_matches('\u{feff}')).map_err(|e| format!("malformed JSON: {e}"))?;
        Document::from_value(&v)
    }

    pub fn from_value(v: &Value) -> DocResult<Document> {
        let obj = v.as_object().ok_or("a document must be a JSON object")?;
        match obj.get("format").and_then(Value::as_u64) {
            Some(FORMAT) => {}
            Some(f) => return Err(format!("unsupported format {f}")),
            None => return Err("missing \"format\"".into()),
        }
        let field = parse_field(obj.get("field").ok_or("missing \"field\"")?)?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or("missing \"kind\"")?;
        let object = match kind {
            "algebra" => Object::Algebra(parse_algebra(field, obj)?),
            "bimodule" => Object::Bimodule(parse_bimodule(field, obj)?),
            "bimodnov" => {
                let b = parse_bimodule(field, obj)?;
                let m = b.mdim();
                let product = parse_mul(field, m, get(obj, "product")?)?;
                Object::BimodNov(BimodNov::new(b, product).map_err(|e| e.to_string())?)
            }
            "linmap" => {
                let rows = get_usize(obj, "rows")?;
                let cols = get_usize(obj, "cols")?;
                Object::LinMap(parse_matrix(field, rows, cols, get(obj, "matrix")?)?)
            }
            "tensor2" => {
                let n = get_usize(obj, "dim")?;
                let m = parse_matrix(field, n, n, get(obj, "coeffs")?)?;
                Object::Tensor2(Tensor2::from_matrix(&m))
            }
            "postnov" => {
                let n = get_usize(obj, "dim")?;
                let circ = parse_mul(field, n, get(obj, "circ")?)?;
                let tl = parse_mul(field, n, get(obj, "tri_l")?)?;
                let tr = parse_mul(field, n, get(obj, "tri_r")?)?;
                Object::PostNov(PostNov::new(circ, tl, tr).map_err(|e| e.to_string())?)
            }
            "bilform" => {
                let n = get_usize(obj, "dim")?;
                let g = parse_matrix(field, n, n, get(obj, "grid")?)?;
                Object::BilForm(BilForm::new(g).map_err(|e| e.to_string())?)
            }
            "trialgebra" => {
                let n = get_usize(obj, "dim")?;
                let dot = parse_mul(field, n, get(obj, "dot")?)?;
                let circ = parse_mul(field, n, get(obj, "circ")?)?;
                let d = parse_matrix(field, n, n, get(obj, "derivation")?)?;
                Object::Trialgebra(CommTrialgebra::new(dot, circ, d).map_err(|e| e.to_string())?)
            }
            "doc-bundle" => {
                let items = get(obj, "items")?.as_array().ok_or("\"items\" must be an array")?;
                let mut out = Vec::new();
                for it in items {
                    let name = it.get("name").and_then(Value::as_str).ok_or("bundle item without \"name\"")?;
                    let d = Document::from_value(it.get("document").ok_or("bundle item without \"document\"")?)?;
                    if d.field != field {
                        return Err(format!("bundle item `{name}` is over {} but the bundle is over {field}", d.field));
                    }
                    out.push((name.to_string(), d));
                }
                Object::Bundle(out)
            }
            other => return Err(format!("unknown kind `{other}`")),
        };
        Ok(Document { field, object })
    }

    /// The named item of a bundle.
    pub fn item(&self, name: &str) -> Option<&Document> {
        match &self.object {
            Object::Bundle(items) => items.iter().find(|(n, _)| n == name).map(|(_, d)| d),
            _ => None,
        }
    }
}

pub fn field_value(f: Field) -> Value {
    match f {
        Field::Rational => json!({"kind": "rational"}),
        Field::Prime(p) => json!({"kind": "prime", "p": p}),
    }
}

pub fn parse_field(v: &Value) -> DocResult<Field> {
    match v.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(Field::Rational),
        Some("prime") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or("prime field without \"p\"")?;
            let p = u32::try_from(p).map_err(|_| format!("{p} is too large"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
        _ => Err("\"field\" must be {\"kind\":\"rational\"} or {\"kind\":\"prime\",\"p\":N}".into()),
    }
}

pub fn scalar_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Prime { value, .. } => json!(value),
    }
}

pub fn parse_scalar(field: Field, v: &Value) -> DocResult<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s).map_err(|e| e.to_string()),
        Value::Number(n) => {
            let text = n.to_string();
            if n.is_f64() {
                return Err(format!("scalar {text} is not an integer"));
            }
            field.parse_scalar(&text).map_err(|e| e.to_string())
        }
        _ => Err(format!("bad scalar {v}")),
    }
}

pub fn vector_value(v: &Vector) -> Value {
    Value::Array(v.coords().iter().map(scalar_value).collect())
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_value(&m.row(i))).collect())
}

pub fn mul_value(a: &Algebra) -> Value {
    let n = a.dim();
    Value::Array((0..n).map(|i| Value::Array((0..n).map(|j| vector_value(a.basis_product(i, j))).collect())).collect())
}

fn algebra_payload(a: &Algebra) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("dim".into(), json!(a.dim()));
    p.insert("mul".into(), mul_value(a));
    p
}

fn bimodule_payload(b: &Bimodule) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("base".into(), Value::Object(algebra_payload(b.base())));
    p.insert("mdim".into(), json!(b.mdim()));
    p.insert("l".into(), Value::Array(b.l_basis().iter().map(matrix_value).collect()));
    p.insert("r".into(), Value::Array(b.r_basis().iter().map(matrix_value).collect()));
    p
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> DocResult<&'a Value> {
    obj.get(key).ok_or_else(|| format!("missing \"{key}\""))
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> DocResult<usize> {
    get(obj, key)?.as_u64().map(|n| n as usize).ok_or_else(|| format!("\"{key}\" must be a non-negative integer"))
}

fn array<'a>(v: &'a Value, len: usize, what: &str) -> DocResult<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| format!("{what} must be an array"))?;
    if a.len() != len {
        return Err(format!("{what} has length {} but {len} was expected", a.len()));
    }
    Ok(a)
}

fn parse_vector(field: Field, len: usize, v: &Value) -> DocResult<Vector> {
    let coords = array(v, len, "a vector")?.iter().map(|x| parse_scalar(field, x)).collect::<DocResult<Vec<_>>>()?;
    Vector::new(field, coords).map_err(|e| e.to_string())
}

fn parse_matrix(field: Field, rows: usize, cols: usize, v: &Value) -> DocResult<Matrix> {
    let rs = array(v, rows, "a matrix")?
        .iter()
        .map(|r| parse_vector(field, cols, r).map(Vector::into_coords))
        .collect::<DocResult<Vec<_>>>()?;
    Matrix::from_rows_sized(field, rows, cols, rs).map_err(|e| e.to_string())
}

fn parse_mul(field: Field, n: usize, v: &Value) -> DocResult<Algebra> {
    let mut table = Vec::with_capacity(n);
    for row in array(v, n, "a product table")? {
        let row = array(row, n, "a product table row")?;
        table.push(row.iter().map(|x| parse_vector(field, n, x)).collect::<DocResult<Vec<_>>>()?);
    }
    Algebra::new(field, n, table).map_err(|e| e.to_string())
}

fn parse_algebra(field: Field, obj: &Map<String, Value>) -> DocResult<Algebra> {
    let n = get_usize(obj, "dim")?;
    parse_mul(field, n, get(obj, "mul")?)
}

fn parse_bimodule(field: Field, obj: &Map<String, Value>) -> DocResult<Bimodule> {
    let base = get(obj, "base")?.as_object().ok_or("\"base\" must be an object")?;
    let base = parse_algebra(field, base)?;
    let n = base.dim();
    let m = get_usize(obj, "mdim")?;
    let mats = |key: &str| -> DocResult<Vec<Matrix>> {
        array(get(obj, key)?, n, &format!("\"{key}\""))?.iter().map(|x| parse_matrix(field, m, m, x)).collect()
    };
    Bimodule::new(base, m, mats("l")?, mats("r")?).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nova_core::sample;

    #[test]
    fn a2_document_matches_the_module_docs() {
        let d = Document::new(Field::Rational, Object::Algebra(sample::a2(Field::Rational)));
        let v = d.to_value();
        assert_eq!(v["mul"], json!([[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]));
        assert_eq!(Document::parse(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn integer_shorthand_and_errors() {
        let text = r#"{"format":1,"kind":"linmap","field":{"kind":"rational"},"rows":1,"cols":2,"matrix":[[1,"-1/2"]]}"#;
        let d = Document::parse(text).unwrap();
        let Object::LinMap(m) = d.object else { panic!() };
        assert_eq!(m.get(0, 1), &Field::Rational.parse_scalar("-1/2").unwrap());
        assert!(Document::parse(&text.replace("\"cols\":2", "\"cols\":3")).is_err());
        assert!(Document::parse(&text.replace("\"format\":1", "\"format\":2")).is_err());
        assert!(Document::parse(&text.replace("linmap", "widget")).is_err());
        assert!(Document::parse("{").is_err());
        let f5 = r#"{"format":1,"kind":"tensor2","field":{"kind":"prime","p":5},"dim":1,"coeffs":[[7]]}"#;
        let Object::Tensor2(t) = Document::parse(f5).unwrap().object else { panic!() };
        assert_eq!(t.get(0, 0), &Field::Prime(5).int(2));
    }
}
