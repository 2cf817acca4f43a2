//! JSON document formats for algebras, representations, cochains, and
//! truncated deformations.
//!
//! Scalars travel as decimal strings "p/q" (the "/q" is omitted when q is
//! one) so no float ever enters the pipeline. Tensors are sparse triplet
//! lists with explicit index tuples; symmetry is data, not convention, so
//! an antisymmetric bracket lists both orders. Serializers emit entries in
//! index order, which makes serialization canonical: parsing a serialized
//! document and serializing again reproduces it byte for byte.

use crate::algebra::LieYamagutiAlgebra;
use crate::cochain::{Cochain, CochainPair};
use crate::deform::TruncatedDeformation;
use crate::linalg::{Matrix, Scalar};
use crate::rep::Representation;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON syntax: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{list} entry {ordinal}: {message}")]
    Entry { list: String, ordinal: usize, message: String },
    #[error("{0}")]
    Document(String),
    #[error("reading {path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("document references file {0:?} but no base directory is available")]
    NoBaseDir(String),
    #[error(transparent)]
    Invalid(#[from] crate::deform::DeformError),
}

fn entry_err(list: &str, ordinal: usize, message: impl Into<String>) -> IoError {
    IoError::Entry { list: list.to_string(), ordinal, message: message.into() }
}

/// Parses "p" or "p/q" with explicit zero-denominator rejection.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p.trim()).map_err(|_| format!("malformed rational {s:?}"))?;
    let q = BigInt::from_str(q.trim()).map_err(|_| format!("malformed rational {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Scalar::new(p, q))
}

/// Renders a scalar as "p/q", dropping the denominator when it is one.
pub fn scalar_string(x: &Scalar) -> String {
    x.to_string()
}

/// The .lya document: dense dimensions, sparse structure constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dim: usize,
    pub basis: Vec<String>,
    pub binary: Vec<(usize, usize, usize, String)>,
    pub ternary: Vec<(usize, usize, usize, usize, String)>,
}

impl AlgebraDocument {
    pub fn from_algebra(l: &LieYamagutiAlgebra) -> AlgebraDocument {
        let n = l.dim();
        let mut binary = Vec::new();
        let mut ternary = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = l.binary().entry(&[i, j], k);
                    if !c.is_zero() {
                        binary.push((i, j, k, scalar_string(c)));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for t in 0..n {
                        let c = l.ternary().entry(&[i, j, k], t);
                        if !c.is_zero() {
                            ternary.push((i, j, k, t, scalar_string(c)));
                        }
                    }
                }
            }
        }
        AlgebraDocument { dim: n, basis: l.basis_names().to_vec(), binary, ternary }
    }

    pub fn into_algebra(self) -> Result<LieYamagutiAlgebra, IoError> {
        let n = self.dim;
        if n == 0 {
            return Err(IoError::Document("dim must be at least 1".into()));
        }
        if self.basis.len() != n {
            return Err(IoError::Document(format!(
                "basis has {} names but dim is {n}",
                self.basis.len()
            )));
        }
        let mut binary = Cochain::zero(2, n, n);
        let mut seen = HashSet::new();
        for (ord, (i, j, k, v)) in self.binary.iter().enumerate() {
            for &idx in &[i, j, k] {
                if *idx >= n {
                    return Err(entry_err("binary", ord, format!("index {idx} out of range for dim {n}")));
                }
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(entry_err("binary", ord, format!("duplicate index tuple [{i}, {j}, {k}]")));
            }
            let c = parse_scalar(v).map_err(|m| entry_err("binary", ord, m))?;
            binary.set_entry(&[*i, *j], *k, c);
        }
        let mut ternary = Cochain::zero(3, n, n);
        let mut seen = HashSet::new();
        for (ord, (i, j, k, t, v)) in self.ternary.iter().enumerate() {
            for &idx in &[i, j, k, t] {
                if *idx >= n {
                    return Err(entry_err("ternary", ord, format!("index {idx} out of range for dim {n}")));
                }
            }
            if !seen.insert((*i, *j, *k, *t)) {
                return Err(entry_err("ternary", ord, format!("duplicate index tuple [{i}, {j}, {k}, {t}]")));
            }
            let c = parse_scalar(v).map_err(|m| entry_err("ternary", ord, m))?;
            ternary.set_entry(&[*i, *j, *k], *t, c);
        }
        Ok(LieYamagutiAlgebra::from_tensors(self.basis, binary, ternary))
    }
}

pub fn parse_algebra(text: &str) -> Result<LieYamagutiAlgebra, IoError> {
    let doc: AlgebraDocument = serde_json::from_str(text)?;
    doc.into_algebra()
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).unwrap()
}

/// Renders a list of entry rows with one compact row per line; the
/// structural braces stay pretty while index tuples stay scannable.
fn row_list<T: Serialize>(rows: &[T], indent: &str) -> String {
    if rows.is_empty() {
        return "[]".into();
    }
    let inner: Vec<String> = rows
        .iter()
        .map(|r| format!("{indent}  {}", serde_json::to_string(r).unwrap()))
        .collect();
    format!("[\n{}\n{indent}]", inner.join(",\n"))
}

fn algebra_text(doc: &AlgebraDocument, indent: &str) -> String {
    let basis: Vec<String> = doc.basis.iter().map(|s| json_str(s)).collect();
    let deeper = format!("{indent}  ");
    format!(
        "{{\n{indent}  \"dim\": {},\n{indent}  \"basis\": [{}],\n{indent}  \"binary\": {},\n{indent}  \"ternary\": {}\n{indent}}}",
        doc.dim,
        basis.join(", "),
        row_list(&doc.binary, &deeper),
        row_list(&doc.ternary, &deeper),
    )
}

pub fn serialize_algebra(l: &LieYamagutiAlgebra) -> String {
    let mut s = algebra_text(&AlgebraDocument::from_algebra(l), "");
    s.push('\n');
    s
}

/// Either a relative path to another document or the document inline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraDocument),
}

impl AlgebraRef {
    pub fn resolve(self, base: Option<&Path>) -> Result<LieYamagutiAlgebra, IoError> {
        match self {
            AlgebraRef::Inline(doc) => doc.into_algebra(),
            AlgebraRef::Path(p) => {
                let Some(base) = base else { return Err(IoError::NoBaseDir(p)) };
                let full = base.join(&p);
                let text = std::fs::read_to_string(&full)
                    .map_err(|source| IoError::File { path: full.display().to_string(), source })?;
                parse_algebra(&text)
            }
        }
    }
}

/// The .cochain document; the ambient algebra dimension comes from
/// context, so only arity and target dimension are recorded.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDocument {
    pub arity: usize,
    pub coeff_dim: usize,
    pub entries: Vec<Vec<serde_json::Value>>,
}

impl CochainDocument {
    pub fn from_cochain(c: &Cochain) -> CochainDocument {
        let mut entries = Vec::new();
        let n = c.dim();
        let mut tuple = vec![0usize; c.arity()];
        loop {
            for t in 0..c.coeff_dim() {
                let x = c.entry(&tuple, t);
                if !x.is_zero() {
                    let mut row: Vec<serde_json::Value> =
                        tuple.iter().map(|&i| serde_json::json!(i)).collect();
                    row.push(serde_json::json!(t));
                    row.push(serde_json::json!(scalar_string(x)));
                    entries.push(row);
                }
            }
            let mut slot = c.arity();
            loop {
                if slot == 0 {
                    return CochainDocument { arity: c.arity(), coeff_dim: c.coeff_dim(), entries };
                }
                slot -= 1;
                tuple[slot] += 1;
                if tuple[slot] < n {
                    break;
                }
                tuple[slot] = 0;
            }
        }
    }

    pub fn into_cochain(self, dim: usize) -> Result<Cochain, IoError> {
        let mut c = Cochain::zero(self.arity, dim, self.coeff_dim);
        let mut seen = HashSet::new();
        for (ord, row) in self.entries.iter().enumerate() {
            if row.len() != self.arity + 2 {
                return Err(entry_err(
                    "entries",
                    ord,
                    format!("expected {} items (indices, target, value), found {}", self.arity + 2, row.len()),
                ));
            }
            let mut tuple = Vec::with_capacity(self.arity);
            for item in &row[..self.arity] {
                let idx = item
                    .as_u64()
                    .ok_or_else(|| entry_err("entries", ord, format!("index {item} is not a nonnegative integer")))?
                    as usize;
                if idx >= dim {
                    return Err(entry_err("entries", ord, format!("index {idx} out of range for dim {dim}")));
                }
                tuple.push(idx);
            }
            let t = row[self.arity]
                .as_u64()
                .ok_or_else(|| entry_err("entries", ord, format!("target {} is not a nonnegative integer", row[self.arity])))?
                as usize;
            if t >= self.coeff_dim {
                return Err(entry_err("entries", ord, format!("target {t} out of range for coeff_dim {}", self.coeff_dim)));
            }
            let v = row[self.arity + 1]
                .as_str()
                .ok_or_else(|| entry_err("entries", ord, "value must be a \"p/q\" string".to_string()))?;
            let mut key = tuple.clone();
            key.push(t);
            if !seen.insert(key) {
                return Err(entry_err("entries", ord, format!("duplicate entry at {tuple:?} target {t}")));
            }
            let x = parse_scalar(v).map_err(|m| entry_err("entries", ord, m))?;
            c.set_entry(&tuple, t, x);
        }
        Ok(c)
    }
}

pub fn parse_cochain(text: &str, dim: usize) -> Result<Cochain, IoError> {
    let doc: CochainDocument = serde_json::from_str(text)?;
    doc.into_cochain(dim)
}

pub fn serialize_cochain(c: &Cochain) -> String {
    let doc = CochainDocument::from_cochain(c);
    format!(
        "{{\n  \"arity\": {},\n  \"coeff_dim\": {},\n  \"entries\": {}\n}}\n",
        doc.arity,
        doc.coeff_dim,
        row_list(&doc.entries, "  "),
    )
}

/// The .rep document: an algebra reference plus the three action tensors,
/// each entry naming the acting basis indices then a matrix position.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDocument {
    pub algebra: AlgebraRef,
    pub coeff_dim: usize,
    pub rho: Vec<(usize, usize, usize, String)>,
    #[serde(rename = "D")]
    pub d: Vec<(usize, usize, usize, usize, String)>,
    pub theta: Vec<(usize, usize, usize, usize, String)>,
}

impl RepresentationDocument {
    pub fn from_representation(r: &Representation) -> RepresentationDocument {
        let n = r.algebra().dim();
        let m = r.coeff_dim();
        let mut rho = Vec::new();
        for i in 0..n {
            let mat = r.rho(i);
            for row in 0..m {
                for col in 0..m {
                    if !mat.at(row, col).is_zero() {
                        rho.push((i, row, col, scalar_string(mat.at(row, col))));
                    }
                }
            }
        }
        let quad = |mat_of: &dyn Fn(usize, usize) -> Matrix| {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let mat = mat_of(i, j);
                    for row in 0..m {
                        for col in 0..m {
                            if !mat.at(row, col).is_zero() {
                                out.push((i, j, row, col, scalar_string(mat.at(row, col))));
                            }
                        }
                    }
                }
            }
            out
        };
        let d = quad(&|i, j| r.d(i, j).clone());
        let theta = quad(&|i, j| r.theta(i, j).clone());
        RepresentationDocument {
            algebra: AlgebraRef::Inline(AlgebraDocument::from_algebra(r.algebra())),
            coeff_dim: m,
            rho,
            d,
            theta,
        }
    }

    pub fn into_representation(self, base: Option<&Path>) -> Result<Representation, IoError> {
        let algebra = self.algebra.resolve(base)?;
        let n = algebra.dim();
        let m = self.coeff_dim;
        if m == 0 {
            return Err(IoError::Document("coeff_dim must be at least 1".into()));
        }
        let mut rho = vec![Matrix::zero(m, m); n];
        let mut seen = HashSet::new();
        for (ord, (i, row, col, v)) in self.rho.iter().enumerate() {
            if *i >= n {
                return Err(entry_err("rho", ord, format!("index {i} out of range for dim {n}")));
            }
            if *row >= m || *col >= m {
                return Err(entry_err("rho", ord, format!("matrix position ({row}, {col}) out of range for coeff_dim {m}")));
            }
            if !seen.insert((*i, *row, *col)) {
                return Err(entry_err("rho", ord, format!("duplicate entry [{i}, {row}, {col}]")));
            }
            let x = parse_scalar(v).map_err(|msg| entry_err("rho", ord, msg))?;
            rho[*i].set(*row, *col, x);
        }
        let read_quad = |list: &str,
                             entries: &[(usize, usize, usize, usize, String)]|
         -> Result<Vec<Matrix>, IoError> {
            let mut out = vec![Matrix::zero(m, m); n * n];
            let mut seen = HashSet::new();
            for (ord, (i, j, row, col, v)) in entries.iter().enumerate() {
                if *i >= n || *j >= n {
                    return Err(entry_err(list, ord, format!("index ({i}, {j}) out of range for dim {n}")));
                }
                if *row >= m || *col >= m {
                    return Err(entry_err(list, ord, format!("matrix position ({row}, {col}) out of range for coeff_dim {m}")));
                }
                if !seen.insert((*i, *j, *row, *col)) {
                    return Err(entry_err(list, ord, format!("duplicate entry [{i}, {j}, {row}, {col}]")));
                }
                let x = parse_scalar(v).map_err(|msg| entry_err(list, ord, msg))?;
                out[i * n + j].set(*row, *col, x);
            }
            Ok(out)
        };
        let d = read_quad("D", &self.d)?;
        let theta = read_quad("theta", &self.theta)?;
        Ok(Representation::new(algebra, m, rho, d, theta))
    }
}

pub fn parse_representation(text: &str, base: Option<&Path>) -> Result<Representation, IoError> {
    let doc: RepresentationDocument = serde_json::from_str(text)?;
    doc.into_representation(base)
}

fn algebra_ref_text(r: &AlgebraRef, indent: &str) -> String {
    match r {
        AlgebraRef::Path(p) => json_str(p),
        AlgebraRef::Inline(doc) => algebra_text(doc, indent),
    }
}

pub fn serialize_representation(r: &Representation) -> String {
    let doc = RepresentationDocument::from_representation(r);
    format!(
        "{{\n  \"algebra\": {},\n  \"coeff_dim\": {},\n  \"rho\": {},\n  \"D\": {},\n  \"theta\": {}\n}}\n",
        algebra_ref_text(&doc.algebra, "  "),
        doc.coeff_dim,
        row_list(&doc.rho, "  "),
        row_list(&doc.d, "  "),
        row_list(&doc.theta, "  "),
    )
}

/// One order of a .def document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    #[serde(rename = "F")]
    pub f: Vec<(usize, usize, usize, String)>,
    #[serde(rename = "G")]
    pub g: Vec<(usize, usize, usize, usize, String)>,
}

impl TermDocument {
    pub fn from_pair(pair: &CochainPair) -> TermDocument {
        TermDocument { f: cochain_entries_3(&pair.f), g: cochain_entries_4(&pair.g) }
    }
}

/// The .def document. `terms` lists orders 1..=order; a leading order-0
/// term is accepted when it matches the algebra's own brackets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDocument {
    pub algebra: AlgebraRef,
    pub order: usize,
    pub terms: Vec<TermDocument>,
}

fn term_to_pair(doc: &TermDocument, n: usize, which: usize) -> Result<CochainPair, IoError> {
    let flist = format!("terms[{which}].F");
    let glist = format!("terms[{which}].G");
    let mut pair = CochainPair::zero(1, n, n);
    let mut seen = HashSet::new();
    for (ord, (i, j, k, v)) in doc.f.iter().enumerate() {
        for &idx in &[i, j, k] {
            if *idx >= n {
                return Err(entry_err(&flist, ord, format!("index {idx} out of range for dim {n}")));
            }
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(entry_err(&flist, ord, format!("duplicate index tuple [{i}, {j}, {k}]")));
        }
        let x = parse_scalar(v).map_err(|m| entry_err(&flist, ord, m))?;
        pair.f.set_entry(&[*i, *j], *k, x);
    }
    let mut seen = HashSet::new();
    for (ord, (i, j, k, t, v)) in doc.g.iter().enumerate() {
        for &idx in &[i, j, k, t] {
            if *idx >= n {
                return Err(entry_err(&glist, ord, format!("index {idx} out of range for dim {n}")));
            }
        }
        if !seen.insert((*i, *j, *k, *t)) {
            return Err(entry_err(&glist, ord, format!("duplicate index tuple [{i}, {j}, {k}, {t}]")));
        }
        let x = parse_scalar(v).map_err(|m| entry_err(&glist, ord, m))?;
        pair.g.set_entry(&[*i, *j, *k], *t, x);
    }
    Ok(pair)
}

fn cochain_entries_3(c: &Cochain) -> Vec<(usize, usize, usize, String)> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = c.entry(&[i, j], k);
                if !x.is_zero() {
                    out.push((i, j, k, scalar_string(x)));
                }
            }
        }
    }
    out
}

fn cochain_entries_4(c: &Cochain) -> Vec<(usize, usize, usize, usize, String)> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    let x = c.entry(&[i, j, k], t);
                    if !x.is_zero() {
                        out.push((i, j, k, t, scalar_string(x)));
                    }
                }
            }
        }
    }
    out
}

impl DeformationDocument {
    pub fn from_deformation(d: &TruncatedDeformation) -> DeformationDocument {
        let terms = d
            .terms()
            .iter()
            .skip(1)
            .map(|pair| TermDocument {
                f: cochain_entries_3(&pair.f),
                g: cochain_entries_4(&pair.g),
            })
            .collect();
        DeformationDocument {
            algebra: AlgebraRef::Inline(AlgebraDocument::from_algebra(d.algebra())),
            order: d.order(),
            terms,
        }
    }

    pub fn into_deformation(self, base: Option<&Path>) -> Result<TruncatedDeformation, IoError> {
        let algebra = self.algebra.resolve(base)?;
        let n = algebra.dim();
        let with_zero = match self.terms.len() {
            l if l == self.order => false,
            l if l == self.order + 1 => true,
            l => {
                return Err(IoError::Document(format!(
                    "order {} needs {} terms (or {} with an explicit order-0 term), found {l}",
                    self.order,
                    self.order,
                    self.order + 1,
                )))
            }
        };
        let mut pairs = Vec::with_capacity(self.order);
        for (which, term) in self.terms.iter().enumerate() {
            let order = if with_zero { which } else { which + 1 };
            let pair = term_to_pair(term, n, order)?;
            if order == 0 {
                if &pair.f != algebra.binary() || &pair.g != algebra.ternary() {
                    return Err(IoError::Document(
                        "order-0 term disagrees with the algebra's brackets".into(),
                    ));
                }
            } else {
                pairs.push(pair);
            }
        }
        Ok(TruncatedDeformation::new(&algebra, pairs)?)
    }
}

pub fn parse_deformation(text: &str, base: Option<&Path>) -> Result<TruncatedDeformation, IoError> {
    let doc: DeformationDocument = serde_json::from_str(text)?;
    doc.into_deformation(base)
}

pub fn serialize_deformation(d: &TruncatedDeformation) -> String {
    let doc = DeformationDocument::from_deformation(d);
    let terms: Vec<String> = doc
        .terms
        .iter()
        .map(|t| {
            format!(
                "{{\n      \"F\": {},\n      \"G\": {}\n    }}",
                row_list(&t.f, "      "),
                row_list(&t.g, "      "),
            )
        })
        .collect();
    let terms_text = if terms.is_empty() {
        "[]".to_string()
    } else {
        format!("[\n    {}\n  ]", terms.join(",\n    "))
    };
    format!(
        "{{\n  \"algebra\": {},\n  \"order\": {},\n  \"terms\": {}\n}}\n",
        algebra_ref_text(&doc.algebra, "  "),
        doc.order,
        terms_text,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    #[test]
    fn scalar_strings_round_trip() {
        for x in [int(0), int(7), int(-3), frac(2, 4), frac(-9, 6)] {
            assert_eq!(parse_scalar(&scalar_string(&x)).unwrap(), x);
        }
        assert_eq!(scalar_string(&frac(1, 2)), "1/2");
        assert_eq!(scalar_string(&int(5)), "5");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1.5").is_err());
    }

    #[test]
    fn minimal_abelian_document_parses() {
        let l = parse_algebra(r#"{"dim":1,"basis":["e1"],"binary":[],"ternary":[]}"#).unwrap();
        assert_eq!(l, LieYamagutiAlgebra::abelian(1));
    }

    #[test]
    fn three_dim_example_document_parses() {
        let text = r#"{
            "dim": 3,
            "basis": ["e1", "e2", "e3"],
            "binary": [[0, 1, 2, "1"], [1, 0, 2, "-1"]],
            "ternary": [[0, 1, 0, 2, "1"], [1, 0, 0, 2, "-1"]]
        }"#;
        assert_eq!(parse_algebra(text).unwrap(), LieYamagutiAlgebra::example_3dim());
    }

    #[test]
    fn algebra_documents_round_trip() {
        for l in [
            LieYamagutiAlgebra::abelian(2),
            LieYamagutiAlgebra::example_3dim(),
            LieYamagutiAlgebra::meson_field(3),
            LieYamagutiAlgebra::heisenberg(),
        ] {
            let text = serialize_algebra(&l);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, l);
            assert_eq!(serialize_algebra(&back), text);
        }
    }

    #[test]
    fn bad_documents_are_named_precisely() {
        let out_of_range = r#"{"dim":3,"basis":["a","b","c"],"binary":[[0,5,0,"1"]],"ternary":[]}"#;
        let err = parse_algebra(out_of_range).unwrap_err().to_string();
        assert!(err.contains("binary entry 0"), "{err}");
        assert!(err.contains("index 5 out of range"), "{err}");

        let dup = r#"{"dim":2,"basis":["a","b"],"binary":[[0,1,0,"1"],[0,1,0,"2"]],"ternary":[]}"#;
        let err = parse_algebra(dup).unwrap_err().to_string();
        assert!(err.contains("duplicate index tuple"), "{err}");

        let bad_rational = r#"{"dim":1,"basis":["a"],"binary":[[0,0,0,"1.5"]],"ternary":[]}"#;
        let err = parse_algebra(bad_rational).unwrap_err().to_string();
        assert!(err.contains("malformed rational"), "{err}");

        let basis_mismatch = r#"{"dim":2,"basis":["a"],"binary":[],"ternary":[]}"#;
        let err = parse_algebra(basis_mismatch).unwrap_err().to_string();
        assert!(err.contains("basis has 1 names"), "{err}");
    }

    #[test]
    fn cochain_documents_round_trip() {
        let l = LieYamagutiAlgebra::example_3dim();
        let text = serialize_cochain(l.ternary());
        let back = parse_cochain(&text, 3).unwrap();
        assert_eq!(&back, l.ternary());
        assert_eq!(serialize_cochain(&back), text);
        let err = parse_cochain(r#"{"arity":2,"coeff_dim":3,"entries":[[0,1,"1"]]}"#, 3)
            .unwrap_err()
            .to_string();
        assert!(err.contains("expected 4 items"), "{err}");
    }

    #[test]
    fn representation_documents_round_trip() {
        let r = Representation::adjoint(&LieYamagutiAlgebra::example_3dim());
        let text = serialize_representation(&r);
        let back = parse_representation(&text, None).unwrap();
        assert!(back.check_representation().passed());
        assert_eq!(serialize_representation(&back), text);
    }

    #[test]
    fn deformation_documents_round_trip() {
        let l = LieYamagutiAlgebra::abelian(3);
        let mut pair = CochainPair::zero(1, 3, 3);
        let shift = LieYamagutiAlgebra::example_3dim();
        pair.f = shift.binary().clone();
        pair.g = shift.ternary().clone();
        let d = TruncatedDeformation::new(&l, vec![pair]).unwrap();
        let text = serialize_deformation(&d);
        let back = parse_deformation(&text, None).unwrap();
        assert_eq!(back, d);
        assert_eq!(serialize_deformation(&back), text);
    }

    #[test]
    fn deformation_document_accepts_matching_order_zero() {
        let l = LieYamagutiAlgebra::example_3dim();
        let inline = serde_json::to_string(&AlgebraDocument::from_algebra(&l)).unwrap();
        let with_zero = format!(
            r#"{{"algebra": {inline}, "order": 1, "terms": [
                {{"F": [[0,1,2,"1"],[1,0,2,"-1"]], "G": [[0,1,0,2,"1"],[1,0,0,2,"-1"]]}},
                {{"F": [], "G": []}}
            ]}}"#
        );
        let d = parse_deformation(&with_zero, None).unwrap();
        assert_eq!(d.order(), 1);
        assert!(d.term(1).is_zero());
        let wrong_zero = format!(
            r#"{{"algebra": {inline}, "order": 1, "terms": [
                {{"F": [[0,1,2,"7"]], "G": []}},
                {{"F": [], "G": []}}
            ]}}"#
        );
        let err = parse_deformation(&wrong_zero, None).unwrap_err().to_string();
        assert!(err.contains("order-0 term disagrees"), "{err}");
    }

    #[test]
    fn path_references_resolve_relative_to_base() {
        let dir = std::env::temp_dir().join("lyd-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let l = LieYamagutiAlgebra::meson_field(2);
        std::fs::write(dir.join("base.lya"), serialize_algebra(&l)).unwrap();
        let doc = r#"{"algebra": "base.lya", "order": 0, "terms": []}"#;
        let d = parse_deformation(doc, Some(&dir)).unwrap();
        assert_eq!(d.algebra(), &l);
        let err = parse_deformation(doc, None).unwrap_err().to_string();
        assert!(err.contains("no base directory"), "{err}");
    }
}
