//! JSON encodings shared by the command reports.

use matlie::cartan::CartanResult;
use matlie::sdit::Witness;
use matlie::{Field, Matrix, Rational, Subspace};
use serde_json::{json, Value};

pub fn vector<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

pub fn matrices<F: Field>(ms: &[Matrix<F>]) -> Value {
    Value::Array(ms.iter().map(matrix).collect())
}

pub fn subspace<F: Field>(u: &Subspace<F>) -> Value {
    json!({
        "dim": u.dim(),
        "basis": Value::Array(u.basis().iter().map(|v| vector(v)).collect()),
    })
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "point": vector(&w.point),
        "matrix": matrix(&w.matrix),
        "rank": w.rank,
    })
}

pub fn cartan(c: &CartanResult<Rational>, basis: &[Matrix<Rational>]) -> Value {
    json!({
        "dim": c.subalgebra.dim(),
        "verified": c.verified,
        "regular_element": vector(&c.regular_element),
        "coordinates": Value::Array(c.subalgebra.basis().iter().map(|v| vector(v)).collect()),
        "matrices": matrices(basis),
        "descent_trace": Value::Array(
            c.descent_trace
                .iter()
                .map(|(x, d)| json!({ "element": vector(x), "fitting_dim": d }))
                .collect()
        ),
    })
}

/// Parses a JSON array of rational strings.
pub fn read_vector(v: &Value) -> Option<Vec<Rational>> {
    v.as_array()?
        .iter()
        .map(|x| x.as_str()?.parse().ok())
        .collect()
}

pub fn read_matrix(v: &Value) -> Option<Matrix<Rational>> {
    let rows = v
        .as_array()?
        .iter()
        .map(read_vector)
        .collect::<Option<Vec<_>>>()?;
    Matrix::try_from_rows(rows).ok()
}
