//! JSON shapes shared by every report.
//!
//! Rationals are written as strings in the input language's notation
//! (`"3"`, `"-1/2"`), so reports never lose precision. Algebras are written
//! as their bracket tables.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::exactlin::{Matrix, Poly, Rational, Subspace};
use crate::liealg::LieAlgebra;

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

pub fn ser_vector<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

pub fn ser_vectors<S: Serializer>(vs: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = vs
        .iter()
        .map(|v| v.iter().map(|r| r.to_string()).collect())
        .collect();
    rows.serialize(s)
}

pub fn ser_matrix<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
    m.to_string_rows().serialize(s)
}

pub fn ser_matrices<S: Serializer>(ms: &[Matrix], s: S) -> Result<S::Ok, S::Error> {
    let all: Vec<Vec<Vec<String>>> = ms.iter().map(Matrix::to_string_rows).collect();
    all.serialize(s)
}

pub fn ser_opt_matrix<S: Serializer>(m: &Option<Matrix>, s: S) -> Result<S::Ok, S::Error> {
    m.as_ref().map(Matrix::to_string_rows).serialize(s)
}

/// Polynomials as their ascending coefficient list.
pub fn ser_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    ser_vector(p.coeffs(), s)
}

pub fn ser_subspace<S: Serializer>(sp: &Subspace, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Subspace", 2)?;
    st.serialize_field("dim", &sp.dim())?;
    let rows: Vec<Vec<String>> = sp.basis().to_string_rows();
    st.serialize_field("basis", &rows)?;
    st.end()
}

pub fn ser_spectrum<S: Serializer>(sp: &[(Rational, usize)], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry {
        eigenvalue: String,
        multiplicity: usize,
    }
    let entries: Vec<Entry> = sp
        .iter()
        .map(|(r, m)| Entry {
            eigenvalue: r.to_string(),
            multiplicity: *m,
        })
        .collect();
    entries.serialize(s)
}

pub fn ser_params<S: Serializer>(ps: &[(String, Rational)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(ps.len()))?;
    for (name, v) in ps {
        seq.serialize_element(&(name, v.to_string()))?;
    }
    seq.end()
}

#[derive(Serialize)]
struct BracketJson {
    left: String,
    right: String,
    value: Vec<(String, String)>,
}

/// `{name, dim, labels, brackets: [{left, right, value: [[coef, label]]}]}`.
impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let labels = self.labels();
        let mut brackets: Vec<BracketJson> = Vec::new();
        for ((i, j, k), c) in self.constants() {
            let entry = (c.to_string(), labels[*k].clone());
            match brackets.last_mut() {
                Some(b) if b.left == labels[*i] && b.right == labels[*j] => b.value.push(entry),
                _ => brackets.push(BracketJson {
                    left: labels[*i].clone(),
                    right: labels[*j].clone(),
                    value: vec![entry],
                }),
            }
        }
        let mut st = s.serialize_struct("LieAlgebra", 4)?;
        st.serialize_field("name", self.name())?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("labels", labels)?;
        st.serialize_field("brackets", &brackets)?;
        st.end()
    }
}
