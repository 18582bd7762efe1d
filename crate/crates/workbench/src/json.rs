//! The JSON file formats.
//!
//! A matrix is `{"rows":r,"cols":c,"ring":"real"|"complex","entries":[[...]]}`
//! with real entries written as strings `"p/q"` or `"p"` and complex entries
//! as `{"re":"p/q","im":"p/q"}`. A subspace is
//! `{"ambient":[r,c],"ring":...,"basis":[...]}` with the canonical basis.

use std::path::Path;

use jordan_core::repforge::{CatalogLabel, Form};
use jordan_core::twodim::TwoDAlgebra;
use jordan_core::{CMat, GaussRational, Mat, Rational, Subspace};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::WbError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingJson {
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Real(String),
    Complex { re: String, im: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatJson {
    pub rows: usize,
    pub cols: usize,
    pub ring: RingJson,
    pub entries: Vec<Vec<EntryJson>>,
}

fn invalid(path: &str, msg: impl std::fmt::Display) -> WbError {
    WbError::Parse(format!("{path}: {msg}"))
}

fn rational(s: &str, path: &str) -> Result<Rational, WbError> {
    s.trim()
        .parse()
        .map_err(|_| invalid(path, format_args!("invalid rational {s:?}")))
}

impl MatJson {
    pub fn from_real(m: &Mat) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| EntryJson::Real(x.to_literal()))
                    .collect()
            })
            .collect();
        MatJson {
            rows: m.rows(),
            cols: m.cols(),
            ring: RingJson::Real,
            entries,
        }
    }

    pub fn from_complex(m: &CMat) -> Self {
        let entry = |z: &GaussRational| EntryJson::Complex {
            re: z.re.to_literal(),
            im: z.im.to_literal(),
        };
        let entries = (0..m.rows())
            .map(|i| m.row(i).iter().map(entry).collect())
            .collect();
        MatJson {
            rows: m.rows(),
            cols: m.cols(),
            ring: RingJson::Complex,
            entries,
        }
    }

    fn check_shape(&self, path: &str) -> Result<(), WbError> {
        if self.entries.len() != self.rows {
            return Err(invalid(
                path,
                format_args!("declares {} rows but has {}", self.rows, self.entries.len()),
            ));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(invalid(
                    path,
                    format_args!("row {i} has {} entries, expected {}", row.len(), self.cols),
                ));
            }
        }
        Ok(())
    }

    /// Entries as complex numbers; real entries are accepted in either ring.
    fn complex_entries(&self, path: &str) -> Result<Vec<GaussRational>, WbError> {
        self.check_shape(path)?;
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let at = format!("{path}.entries[{i}][{j}]");
                out.push(match e {
                    EntryJson::Real(s) => GaussRational::real(rational(s, &at)?),
                    EntryJson::Complex { re, im } => {
                        if self.ring == RingJson::Real {
                            return Err(invalid(&at, "complex entry in a real matrix"));
                        }
                        GaussRational::new(rational(re, &at)?, rational(im, &at)?)
                    }
                });
            }
        }
        Ok(out)
    }

    pub fn to_real(&self, path: &str) -> Result<Mat, WbError> {
        if self.ring != RingJson::Real {
            return Err(invalid(path, "expected a real matrix"));
        }
        let data = self
            .complex_entries(path)?
            .into_iter()
            .map(|z| z.re)
            .collect();
        Ok(Mat::from_vec(self.rows, self.cols, data)?)
    }

    pub fn to_complex(&self, path: &str) -> Result<CMat, WbError> {
        Ok(CMat::from_vec(
            self.rows,
            self.cols,
            self.complex_entries(path)?,
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    pub ambient: [usize; 2],
    pub ring: RingJson,
    pub basis: Vec<MatJson>,
}

impl SubspaceJson {
    pub fn from_real(s: &Subspace<Rational>) -> Self {
        let (r, c) = s.ambient();
        SubspaceJson {
            ambient: [r, c],
            ring: RingJson::Real,
            basis: s.basis().iter().map(MatJson::from_real).collect(),
        }
    }

    pub fn from_complex(s: &Subspace<GaussRational>) -> Self {
        let (r, c) = s.ambient();
        SubspaceJson {
            ambient: [r, c],
            ring: RingJson::Complex,
            basis: s.basis().iter().map(MatJson::from_complex).collect(),
        }
    }

    pub fn to_real(&self, path: &str) -> Result<Subspace<Rational>, WbError> {
        if self.ring != RingJson::Real {
            return Err(invalid(path, "expected a real subspace"));
        }
        let [r, c] = self.ambient;
        let mut mats = Vec::with_capacity(self.basis.len());
        for (k, m) in self.basis.iter().enumerate() {
            let at = format!("{path}.basis[{k}]");
            let m = m.to_real(&at)?;
            if m.shape() != (r, c) {
                return Err(invalid(
                    &at,
                    format_args!("is {}x{}, ambient is {r}x{c}", m.rows(), m.cols()),
                ));
            }
            mats.push(m);
        }
        Ok(Subspace::span(r, c, &mats)?)
    }
}

/// `{"form":"a|b|c|d|e","r":..,"N":..,"multiplicity":..,"s1":..,"s2":..}`;
/// unused fields are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct LabelJson {
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<usize>,
}

impl LabelJson {
    pub fn from_label(l: &CatalogLabel) -> Self {
        let some = |v: usize| (v != 0).then_some(v);
        LabelJson {
            form: l.form.letter().to_string(),
            r: some(l.r),
            n: some(l.n_spin),
            multiplicity: some(l.multiplicity),
            s1: some(l.s1),
            s2: some(l.s2),
        }
    }

    /// The label, with multiplicity defaulting to 1 for forms a–d.
    pub fn to_label(&self) -> Result<CatalogLabel, WbError> {
        let form = Form::from_letter(&self.form)?;
        let multiplicity = match form {
            Form::E => self.multiplicity.unwrap_or(0),
            _ => self.multiplicity.unwrap_or(1),
        };
        let label = CatalogLabel {
            form,
            r: self.r.unwrap_or(0),
            n_spin: self.n.unwrap_or(0),
            multiplicity,
            s1: self.s1.unwrap_or(0),
            s2: self.s2.unwrap_or(0),
        };
        label.validate()?;
        Ok(label)
    }
}

/// `{"L":[Hermitean...],"M":[complex symmetric...]}`. `n` is only needed
/// when both lists are empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoDAlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "L")]
    pub l: Vec<MatJson>,
    #[serde(rename = "M")]
    pub m: Vec<MatJson>,
}

impl TwoDAlgebraJson {
    /// ℒ by its real basis and ℳ by its real basis, which includes the
    /// `i`-multiples.
    pub fn from_algebra(alg: &TwoDAlgebra) -> Self {
        TwoDAlgebraJson {
            n: None,
            l: alg.l().basis().iter().map(MatJson::from_complex).collect(),
            m: alg.m().basis().iter().map(MatJson::from_complex).collect(),
        }
    }

    pub fn to_algebra(&self, path: &str) -> Result<TwoDAlgebra, WbError> {
        let parse = |mats: &[MatJson], key: &str| -> Result<Vec<CMat>, WbError> {
            mats.iter()
                .enumerate()
                .map(|(k, m)| m.to_complex(&format!("{path}.{key}[{k}]")))
                .collect()
        };
        let l = parse(&self.l, "L")?;
        let m = parse(&self.m, "M")?;
        let n = match (self.n, l.first().or(m.first())) {
            (_, Some(x)) => x.rows(),
            (Some(n), None) => n,
            (None, None) => return Err(invalid(path, "empty L and M need an explicit \"n\"")),
        };
        TwoDAlgebra::new(n, &l, &m).map_err(|e| invalid(path, e))
    }
}

/// Parse a JSON file into `T`; syntax errors carry line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, WbError> {
    let text = std::fs::read_to_string(path).map_err(|source| WbError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| WbError::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline. Arrays and objects holding only
/// scalars stay on one line, so a matrix prints one row per line.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut out = String::new();
    write_value(&serde_json::to_value(v).expect("serializable"), 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    let scalar = |x: &Value| !matches!(x, Value::Array(_) | Value::Object(_));
    let leaf = |x: &Value| match x {
        Value::Object(m) => m.values().all(scalar),
        _ => scalar(x),
    };
    match v {
        Value::Array(a) => a.iter().all(leaf),
        Value::Object(m) => m.values().all(scalar),
        _ => true,
    }
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    if is_flat(v) {
        out.push_str(&serde_json::to_string(v).expect("serializable"));
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!("scalars are flat"),
    }
}

/// Either file format accepted where an algebra is expected.
pub enum AlgebraFile {
    Real(Subspace<Rational>),
    TwoD(TwoDAlgebra),
}

/// Read a subspace file, or a two-dimensional pair file (recognized by its
/// `"L"` key).
pub fn read_algebra(path: &Path) -> Result<AlgebraFile, WbError> {
    let v: serde_json::Value = read_json(path)?;
    let name = path.display().to_string();
    let parse_err = |e: serde_json::Error| WbError::Parse(format!("{name}: {e}"));
    if v.get("L").is_some() {
        let j: TwoDAlgebraJson = serde_json::from_value(v).map_err(parse_err)?;
        Ok(AlgebraFile::TwoD(j.to_algebra(&name)?))
    } else {
        let j: SubspaceJson = serde_json::from_value(v).map_err(parse_err)?;
        Ok(AlgebraFile::Real(j.to_real(&name)?))
    }
}

/// Read a real subspace file.
pub fn read_subspace(path: &Path) -> Result<Subspace<Rational>, WbError> {
    let j: SubspaceJson = read_json(path)?;
    j.to_real(&path.display().to_string())
}
