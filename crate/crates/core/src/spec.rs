//! Spec documents: a JSON description of a ground field and named algebras,
//! extensions, embeddings and bimodules, validated in full at load time.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "field": "Q",
//!   "algebras": {
//!     "F": { "basis": ["1", "s"], "table": [[1, 1, [2, 0]]] }
//!   },
//!   "extensions": { "sqrt2": { "algebra": "F", "generators": [] } },
//!   "embeddings": {
//!     "sqrt2": { "algebra": "k", "n": 2, "image_basis": [[[1, 0], [0, 1]], [[0, 1], [2, 0]]] }
//!   }
//! }
//! ```
//!
//! `field` is `"Q"` or `{"prime": p}`. Scalars are integers or strings
//! `"num/den"`. Table triples `[i, j, coeffs]` omitted from the table are zero
//! products, and the unit defaults to the first basis vector. The name `k` is
//! reserved for the ground field as a one-dimensional algebra. Matrix entries
//! over an algebra `G` are coordinate vectors, or bare scalars when `G` is
//! one-dimensional.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::bimodule::BimoduleRep;
use crate::extension::ExtensionPresentation;
use crate::grid::Grid;
use crate::matrix::Matrix;
use crate::probe::ProbeConfig;
use crate::scalar::{FieldSpec, Scalar};
use crate::tightness::{CornerBlock, EmbeddingModel};

pub const FORMAT_VERSION: u32 = 1;
pub const GROUND: &str = "k";
pub const MAX_INPUT_BYTES: usize = 1 << 20;
pub const MAX_ALGEBRA_DIM: usize = 32;
pub const MAX_N: usize = 16;
pub const MAX_MODULE_DIM: usize = 128;
pub const MAX_OBJECTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at {path} (line {line}, column {column}): {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid {section}: {message}")]
    Validation { section: String, message: String },
}

fn invalid(section: impl Into<String>, message: impl fmt::Display) -> SpecError {
    SpecError::Validation {
        section: section.into(),
        message: message.to_string(),
    }
}

/// A JSON object whose keys must be distinct, kept in file order.
#[derive(Debug)]
struct Named<T>(Vec<(String, T)>);

impl<T> Default for Named<T> {
    fn default() -> Self {
        Named(Vec::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Named<T>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object of named entries")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Named<T>, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some(key) = map.next_key::<String>()? {
                    if out.iter().any(|(k, _)| *k == key) {
                        return Err(de::Error::custom(format!("duplicate name {key:?}")));
                    }
                    if out.len() == MAX_OBJECTS {
                        return Err(de::Error::custom(format!("more than {MAX_OBJECTS} entries")));
                    }
                    out.push((key, map.next_value()?));
                }
                Ok(Named(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: u32,
    field: Value,
    #[serde(default)]
    algebras: Named<RawAlgebra>,
    #[serde(default)]
    extensions: Named<RawExtension>,
    #[serde(default)]
    embeddings: Named<RawEmbedding>,
    #[serde(default)]
    bimodules: Named<RawBimodule>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    basis: Vec<String>,
    #[serde(default)]
    table: Vec<(usize, usize, Vec<Value>)>,
    unit: Option<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    algebra: String,
    #[serde(default)]
    generators: Vec<Vec<Value>>,
    left_basis: Option<Vec<Vec<Value>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEmbedding {
    algebra: String,
    n: usize,
    image_basis: Vec<Vec<Vec<Value>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBimodule {
    left: String,
    right: String,
    dim: usize,
    left_action: Vec<Vec<Vec<Value>>>,
    right_action: Vec<Vec<Vec<Value>>>,
}

/// A fully validated spec document.
#[derive(Debug)]
pub struct SpecDocument {
    pub format_version: u32,
    pub field: FieldSpec,
    algebras: BTreeMap<String, Arc<Algebra>>,
    extensions: BTreeMap<String, Arc<ExtensionPresentation>>,
    embeddings: BTreeMap<String, Arc<EmbeddingModel>>,
    bimodules: BTreeMap<String, Arc<BimoduleRep>>,
}

impl SpecDocument {
    /// Looks up an algebra; `k` is always available.
    pub fn algebra(&self, name: &str) -> Option<&Arc<Algebra>> {
        self.algebras.get(name)
    }

    pub fn extension(&self, name: &str) -> Option<&Arc<ExtensionPresentation>> {
        self.extensions.get(name)
    }

    pub fn embedding(&self, name: &str) -> Option<&Arc<EmbeddingModel>> {
        self.embeddings.get(name)
    }

    pub fn bimodule(&self, name: &str) -> Option<&Arc<BimoduleRep>> {
        self.bimodules.get(name)
    }

    /// Algebra names in sorted order, excluding `k`.
    pub fn algebra_names(&self) -> impl Iterator<Item = &str> {
        self.algebras.keys().map(String::as_str).filter(|n| *n != GROUND)
    }

    pub fn extension_names(&self) -> impl Iterator<Item = &str> {
        self.extensions.keys().map(String::as_str)
    }

    pub fn embedding_names(&self) -> impl Iterator<Item = &str> {
        self.embeddings.keys().map(String::as_str)
    }

    pub fn bimodule_names(&self) -> impl Iterator<Item = &str> {
        self.bimodules.keys().map(String::as_str)
    }
}

pub fn parse_field(v: &Value) -> Result<FieldSpec, SpecError> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(m) if m.len() == 1 && m.contains_key("prime") => {
            let p = m["prime"]
                .as_u64()
                .ok_or_else(|| invalid("field", "prime must be a nonnegative integer"))?;
            FieldSpec::prime(p).map_err(|e| invalid("field", e))
        }
        _ => Err(invalid("field", "expected \"Q\" or {\"prime\": p}")),
    }
}

fn scalars(field: FieldSpec, vals: &[Value], section: &str) -> Result<Vec<Scalar>, SpecError> {
    vals.iter()
        .map(|v| field.from_json(v).map_err(|e| invalid(section, e)))
        .collect()
}

fn element(alg: &Algebra, vals: &[Value], section: &str) -> Result<Element, SpecError> {
    let coords = scalars(alg.field(), vals, section)?;
    alg.element(coords).map_err(|e| invalid(section, e))
}

/// An entry of a matrix over `g`: a coordinate vector, or a bare scalar when
/// `g` is one-dimensional.
fn entry(g: &Algebra, v: &Value, section: &str) -> Result<Element, SpecError> {
    match v {
        Value::Array(vals) => element(g, vals, section),
        scalar if g.dim() == 1 => Ok(Element(vec![g
            .field()
            .from_json(scalar)
            .map_err(|e| invalid(section, e))?])),
        _ => Err(invalid(section, "expected a coordinate vector")),
    }
}

fn square_matrix(field: FieldSpec, rows: &[Vec<Value>], dim: usize, section: &str) -> Result<Matrix, SpecError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(invalid(section, format!("expected a {dim}x{dim} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| scalars(field, r, section))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows_with_cols(field, dim, rows).map_err(|e| invalid(section, e))
}

fn build_algebra(field: FieldSpec, name: &str, raw: RawAlgebra) -> Result<Algebra, SpecError> {
    let section = format!("algebras.{name}");
    let m = raw.basis.len();
    if m == 0 || m > MAX_ALGEBRA_DIM {
        return Err(invalid(&section, format!("basis size must be between 1 and {MAX_ALGEBRA_DIM}")));
    }
    let mut entries = Vec::with_capacity(raw.table.len());
    for (t, (i, j, coeffs)) in raw.table.iter().enumerate() {
        entries.push((*i, *j, scalars(field, coeffs, &format!("{section}.table[{t}]"))?));
    }
    let unit = raw
        .unit
        .as_deref()
        .map(|u| scalars(field, u, &format!("{section}.unit")))
        .transpose()?;
    Algebra::new(field, raw.basis, entries, unit).map_err(|e| invalid(section, e))
}

fn build_grid(g: &Algebra, n: usize, rows: &[Vec<Value>], section: &str) -> Result<Grid, SpecError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(section, format!("expected an {n}x{n} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|v| entry(g, v, section)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Grid::from_rows(g, &rows).ok_or_else(|| invalid(section, "malformed matrix"))
}

/// Parses and validates a document. `cfg` drives the zero-divisor probe run
/// on every embedding image.
pub fn parse_spec(text: &str, cfg: ProbeConfig) -> Result<SpecDocument, SpecError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(invalid("document", format!("larger than {MAX_INPUT_BYTES} bytes")));
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        SpecError::Parse {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| SpecError::Parse {
        path: ".".into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.format_version != FORMAT_VERSION {
        return Err(invalid(
            "format_version",
            format!("unsupported version {}, expected {FORMAT_VERSION}", raw.format_version),
        ));
    }
    let field = parse_field(&raw.field)?;

    let mut algebras = BTreeMap::new();
    algebras.insert(GROUND.to_string(), Arc::new(Algebra::ground(field)));
    for (name, a) in raw.algebras.0 {
        if name == GROUND {
            return Err(invalid(format!("algebras.{name}"), "the name k is reserved for the ground field"));
        }
        let alg = build_algebra(field, &name, a)?;
        algebras.insert(name, Arc::new(alg));
    }
    let lookup = |name: &str, section: &str| {
        algebras
            .get(name)
            .cloned()
            .ok_or_else(|| invalid(section, format!("unknown algebra {name:?}")))
    };

    let mut extensions = BTreeMap::new();
    for (name, e) in raw.extensions.0 {
        let section = format!("extensions.{name}");
        let f = lookup(&e.algebra, &section)?;
        let gens = e
            .generators
            .iter()
            .map(|g| element(&f, g, &format!("{section}.generators")))
            .collect::<Result<Vec<_>, _>>()?;
        let left_basis = e
            .left_basis
            .as_ref()
            .map(|b| {
                b.iter()
                    .map(|x| element(&f, x, &format!("{section}.left_basis")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let ext = ExtensionPresentation::new(f, &gens, left_basis).map_err(|err| invalid(&section, err))?;
        extensions.insert(name, Arc::new(ext));
    }

    let mut embeddings = BTreeMap::new();
    for (name, e) in raw.embeddings.0 {
        let section = format!("embeddings.{name}");
        let g = lookup(&e.algebra, &section)?;
        if e.n == 0 || e.n > MAX_N {
            return Err(invalid(&section, format!("n must be between 1 and {MAX_N}")));
        }
        if e.image_basis.len() > MAX_MODULE_DIM {
            return Err(invalid(&section, "image basis too large"));
        }
        let grids = e
            .image_basis
            .iter()
            .enumerate()
            .map(|(t, rows)| build_grid(&g, e.n, rows, &format!("{section}.image_basis[{t}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let model = EmbeddingModel::new(g, e.n, grids, cfg).map_err(|err| invalid(&section, err))?;
        embeddings.insert(name, Arc::new(model));
    }

    let mut bimodules = BTreeMap::new();
    for (name, b) in raw.bimodules.0 {
        let section = format!("bimodules.{name}");
        let left = lookup(&b.left, &section)?;
        let right = lookup(&b.right, &section)?;
        if b.dim > MAX_MODULE_DIM {
            return Err(invalid(&section, format!("dim exceeds {MAX_MODULE_DIM}")));
        }
        let la = b
            .left_action
            .iter()
            .map(|m| square_matrix(field, m, b.dim, &format!("{section}.left_action")))
            .collect::<Result<Vec<_>, _>>()?;
        let ra = b
            .right_action
            .iter()
            .map(|m| square_matrix(field, m, b.dim, &format!("{section}.right_action")))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = BimoduleRep::new(left, right, b.dim, la, ra).map_err(|err| invalid(&section, err))?;
        let report = rep.verify();
        if let Some(defect) = report.defects.first() {
            return Err(invalid(&section, format!("bimodule axiom fails: {defect:?}")));
        }
        bimodules.insert(name, Arc::new(rep));
    }

    Ok(SpecDocument {
        format_version: raw.format_version,
        field,
        algebras,
        extensions,
        embeddings,
        bimodules,
    })
}

pub fn parse_spec_file(path: &Path, cfg: ProbeConfig) -> Result<SpecDocument, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_spec(&text, cfg)
}

fn parse_json(text: &str, what: &str) -> Result<Value, SpecError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(invalid(what, "input too large"));
    }
    serde_json::from_str(text).map_err(|e| SpecError::Parse {
        path: what.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// A JSON list of elements of `alg`, each a coordinate vector.
pub fn parse_elements(text: &str, alg: &Algebra) -> Result<Vec<Element>, SpecError> {
    let v = parse_json(text, "element list")?;
    let items = v.as_array().ok_or_else(|| invalid("element list", "expected a list"))?;
    items
        .iter()
        .map(|x| {
            let coords = x
                .as_array()
                .ok_or_else(|| invalid("element list", "expected a coordinate vector"))?;
            element(alg, coords, "element list")
        })
        .collect()
}

/// A JSON list of rows of entries over `g`, as a corner block.
pub fn parse_block(text: &str, g: &Algebra) -> Result<CornerBlock, SpecError> {
    let v = parse_json(text, "block")?;
    let rows = v.as_array().ok_or_else(|| invalid("block", "expected a list of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("block", "expected a row"))?
                .iter()
                .map(|x| entry(g, x, "block"))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(invalid("block", "empty block"));
    }
    CornerBlock::from_rows(rows).map_err(|e| invalid("block", e))
}
