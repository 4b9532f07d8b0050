//! JSON interchange format for matrix spaces.
//!
//! Canonical layout, one matrix row per line:
//!
//! ```text
//! {
//!   "format_version": "1",
//!   "field": "Q",
//!   "n": 2,
//!   "basis": [
//!     [
//!       ["1", "0"],
//!       ["0", "-1"]
//!     ]
//!   ]
//! }
//! ```

use std::fmt::Write as _;

use matlie::field::ParseRationalError;
use matlie::{Field, Fp, Matrix, MatrixSpace, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Deserialize;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl FormatError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Field {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Option<Self> {
        if s == "Q" {
            return Some(FieldSpec::Rational);
        }
        let p: u64 = s.strip_prefix("GF(")?.strip_suffix(')')?.parse().ok()?;
        (p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)))
            .then_some(FieldSpec::Prime(p))
    }

    pub fn name(self) -> String {
        match self {
            FieldSpec::Rational => "Q".into(),
            FieldSpec::Prime(p) => format!("GF({p})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub params: Option<Vec<String>>,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.family.is_none() && self.params.is_none()
    }
}

/// A parsed space file. Entries are kept as rationals; over `GF(p)` they are residues
/// in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceFile {
    pub field: FieldSpec,
    pub n: usize,
    pub basis: Vec<Matrix<Rational>>,
    pub metadata: Option<Metadata>,
    pub warnings: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: String,
    field: String,
    n: usize,
    basis: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    metadata: Option<Metadata>,
}

fn parse_entry(
    raw: &str,
    field: FieldSpec,
    lenient: bool,
    path: &str,
    warnings: &mut Vec<String>,
) -> Result<Rational, FormatError> {
    let value = match raw.parse::<Rational>() {
        Ok(v) => v,
        Err(err) => {
            let relaxed = Rational::parse_lenient(raw);
            match (&err, relaxed) {
                (ParseRationalError::NonCanonical { .. }, Ok(v)) if lenient => {
                    warnings.push(format!("{path}: {raw:?} normalized to \"{v}\""));
                    v
                }
                _ => return Err(FormatError::at(path, err.to_string())),
            }
        }
    };
    match field {
        FieldSpec::Rational => Ok(value),
        FieldSpec::Prime(p) => {
            let residue = reduce_mod(&value, p)
                .ok_or_else(|| FormatError::at(path, format!("{value} has no value modulo {p}")))?;
            if residue != value {
                if !lenient {
                    return Err(FormatError::at(
                        path,
                        format!("{raw:?} is not a canonical residue modulo {p} (expected \"{residue}\")"),
                    ));
                }
                warnings.push(format!("{path}: {raw:?} reduced to \"{residue}\""));
            }
            Ok(residue)
        }
    }
}

/// `value mod p` as an integer in `[0, p)`.
pub fn reduce_mod(value: &Rational, p: u64) -> Option<Rational> {
    let big_p = BigInt::from(p);
    let num = value.numer().mod_floor(&big_p).to_u64()?;
    let den = value.denom().mod_floor(&big_p).to_u64()?;
    if den == 0 {
        return None;
    }
    let inv = pow_mod(den, p - 2, p);
    Some(Rational::from(
        ((u128::from(num) * u128::from(inv)) % u128::from(p)) as i64,
    ))
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = u128::from(m);
    let mut acc: u128 = 1;
    let mut base = u128::from(b) % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

pub fn parse_space_file(text: &str, lenient: bool) -> Result<SpaceFile, FormatError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(FormatError::at(
            "format_version",
            format!(
                "unsupported version {:?} (expected \"{FORMAT_VERSION}\")",
                raw.format_version
            ),
        ));
    }
    let field = FieldSpec::parse(&raw.field).ok_or_else(|| {
        FormatError::at(
            "field",
            format!(
                "expected \"Q\" or \"GF(p)\" with p prime, got {:?}",
                raw.field
            ),
        )
    })?;
    let n = raw.n;
    let mut warnings = Vec::new();
    let mut basis = Vec::with_capacity(raw.basis.len());
    for (k, m) in raw.basis.iter().enumerate() {
        if m.len() != n {
            return Err(FormatError::at(
                format!("basis[{k}]"),
                format!("matrix has {} rows, expected {n}", m.len()),
            ));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(FormatError::at(
                    format!("basis[{k}][{r}]"),
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            for (c, s) in row.iter().enumerate() {
                entries.push(parse_entry(
                    s,
                    field,
                    lenient,
                    &format!("basis[{k}][{r}][{c}]"),
                    &mut warnings,
                )?);
            }
        }
        basis.push(Matrix::from_flat(n, n, entries).expect("checked shape"));
    }
    Ok(SpaceFile {
        field,
        n,
        basis,
        metadata: raw.metadata.filter(|m| !m.is_empty()),
        warnings,
    })
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical text of a space file; `parse_space_file` followed by this is the identity on
/// canonical files.
pub fn write_space_file(f: &SpaceFile) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": {},", json_str(FORMAT_VERSION));
    let _ = writeln!(out, "  \"field\": {},", json_str(&f.field.name()));
    let _ = writeln!(out, "  \"n\": {},", f.n);
    if f.basis.is_empty() {
        out.push_str("  \"basis\": []");
    } else {
        out.push_str("  \"basis\": [\n");
        for (k, m) in f.basis.iter().enumerate() {
            if m.rows() == 0 {
                out.push_str("    []");
            } else {
                out.push_str("    [\n");
                for r in 0..m.rows() {
                    let cells: Vec<String> =
                        m.row(r).iter().map(|x| json_str(&x.to_string())).collect();
                    let _ = write!(out, "      [{}]", cells.join(", "));
                    out.push_str(if r + 1 < m.rows() { ",\n" } else { "\n" });
                }
                out.push_str("    ]");
            }
            out.push_str(if k + 1 < f.basis.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]");
    }
    if let Some(meta) = &f.metadata {
        let mut fields = Vec::new();
        if let Some(name) = &meta.name {
            fields.push(format!("    \"name\": {}", json_str(name)));
        }
        if let Some(family) = &meta.family {
            fields.push(format!("    \"family\": {}", json_str(family)));
        }
        if let Some(params) = &meta.params {
            let items: Vec<String> = params.iter().map(|p| json_str(p)).collect();
            fields.push(format!("    \"params\": [{}]", items.join(", ")));
        }
        if !fields.is_empty() {
            out.push_str(",\n  \"metadata\": {\n");
            out.push_str(&fields.join(",\n"));
            out.push_str("\n  }");
        }
    }
    out.push_str("\n}\n");
    out
}

impl SpaceFile {
    pub fn from_rational(space: &MatrixSpace<Rational>, metadata: Option<Metadata>) -> Self {
        SpaceFile {
            field: FieldSpec::Rational,
            n: space.n(),
            basis: space.basis().to_vec(),
            metadata,
            warnings: Vec::new(),
        }
    }

    pub fn rational_space(&self) -> Result<MatrixSpace<Rational>, matlie::Error> {
        MatrixSpace::new(self.n, self.basis.clone())
    }

    /// The space over `GF(P)`: residues are read directly, rationals are reduced.
    pub fn prime_space<const P: u64>(&self) -> Result<MatrixSpace<Fp<P>>, matlie::Error> {
        let mats = self
            .basis
            .iter()
            .map(|m| {
                let mut entries = Vec::with_capacity(m.as_flat().len());
                for x in m.as_flat() {
                    entries.push(Fp::<P>::from_rational(x).ok_or_else(|| {
                        matlie::Error::NotReducible {
                            value: x.to_string(),
                            p: P,
                        }
                    })?);
                }
                Matrix::from_flat(self.n, self.n, entries)
            })
            .collect::<Result<Vec<_>, _>>()?;
        MatrixSpace::new(self.n, mats)
    }
}

/// Entries of a matrix space over any field as rationals, for writing.
pub fn space_to_file<F: Field>(
    space: &MatrixSpace<F>,
    field: FieldSpec,
    to_q: impl Fn(&F) -> Rational,
) -> SpaceFile {
    SpaceFile {
        field,
        n: space.n(),
        basis: space.basis().iter().map(|m| m.map(&to_q)).collect(),
        metadata: None,
        warnings: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use matlie::families;

    #[test]
    fn lambda3_round_trip() {
        let f = SpaceFile::from_rational(&families::lambda_space(3).unwrap(), None);
        let text = write_space_file(&f);
        let parsed = parse_space_file(&text, false).unwrap();
        assert_eq!(parsed.rational_space().unwrap().dim(), 3);
        assert_eq!(write_space_file(&parsed), text);
    }

    #[test]
    fn canonical_text_is_stable() {
        let text = "{\n  \"format_version\": \"1\",\n  \"field\": \"Q\",\n  \"n\": 2,\n  \"basis\": [\n    [\n      [\"1/2\", \"0\"],\n      [\"0\", \"-3\"]\n    ]\n  ],\n  \"metadata\": {\n    \"name\": \"x\",\n    \"params\": [\"2\"]\n  }\n}\n";
        let parsed = parse_space_file(text, false).unwrap();
        assert_eq!(write_space_file(&parsed), text);
    }

    #[test]
    fn rejects_non_canonical_entries() {
        let text = r#"{"format_version":"1","field":"Q","n":1,"basis":[[["2/4"]]]}"#;
        match parse_space_file(text, false) {
            Err(FormatError::Field { path, .. }) => assert_eq!(path, "basis[0][0][0]"),
            other => panic!("{other:?}"),
        }
        let ok = parse_space_file(text, true).unwrap();
        assert_eq!(ok.basis[0].get(0, 0), &Rational::new(1, 2));
        assert_eq!(ok.warnings.len(), 1);
        let bad = r#"{"format_version":"1","field":"Q","n":1,"basis":[[["x"]]]}"#;
        assert!(parse_space_file(bad, true).is_err());
    }

    #[test]
    fn rejects_mixed_shapes() {
        let text = r#"{"format_version":"1","field":"Q","n":2,"basis":[[["1","0"],["0","1"]],[["1","0","0"],["0","1","0"],["0","0","1"]]]}"#;
        match parse_space_file(text, false) {
            Err(FormatError::Field { path, .. }) => assert_eq!(path, "basis[1]"),
            other => panic!("{other:?}"),
        }
        let ragged = r#"{"format_version":"1","field":"Q","n":2,"basis":[[["1","0"],["0"]]]}"#;
        assert!(matches!(
            parse_space_file(ragged, false),
            Err(FormatError::Field { .. })
        ));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            parse_space_file("{", false),
            Err(FormatError::Json(_))
        ));
        let v = r#"{"format_version":"2","field":"Q","n":0,"basis":[]}"#;
        assert!(
            matches!(parse_space_file(v, false), Err(FormatError::Field { ref path, .. }) if path == "format_version")
        );
        let f = r#"{"format_version":"1","field":"GF(4)","n":0,"basis":[]}"#;
        assert!(
            matches!(parse_space_file(f, false), Err(FormatError::Field { ref path, .. }) if path == "field")
        );
        let extra = r#"{"format_version":"1","field":"Q","n":0,"basis":[],"oops":1}"#;
        assert!(matches!(
            parse_space_file(extra, false),
            Err(FormatError::Json(_))
        ));
    }

    #[test]
    fn prime_field_entries() {
        let text = r#"{"format_version":"1","field":"GF(3)","n":1,"basis":[[["2"]]]}"#;
        let f = parse_space_file(text, false).unwrap();
        assert_eq!(f.prime_space::<3>().unwrap().dim(), 1);
        let neg = r#"{"format_version":"1","field":"GF(3)","n":1,"basis":[[["-1"]]]}"#;
        assert!(parse_space_file(neg, false).is_err());
        assert_eq!(
            parse_space_file(neg, true).unwrap().basis[0].get(0, 0),
            &Rational::from(2)
        );
        assert_eq!(reduce_mod(&Rational::new(1, 2), 3), Some(Rational::from(2)));
        assert_eq!(reduce_mod(&Rational::new(1, 3), 3), None);
    }
}
