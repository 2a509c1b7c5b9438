//! Shared JSON interchange: matrices, tuples, pencil invariants and
//! structure-constant tables. Rational entries travel as "a/b" strings,
//! finite-field entries as coefficient lists over the prime subfield.

use serde_json::{json, Map, Value};

use crate::algebras::{CanonicalLabel, StructureConstants};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::mobius::{PointConfiguration, ProjPoint};
use crate::pencil::SkewPencilInvariants;
use crate::poly::Polynomial;
use crate::tuples::{MatrixTuple, SplitComponent};

fn bad(msg: &str) -> Error {
    Error::Parse(msg.into())
}

pub fn field_to_json(field: &FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!({"kind": "Q"}),
        FieldSpec::FiniteField { p, k, modulus } => {
            json!({"kind": "Fp", "p": p, "k": k, "modulus": modulus})
        }
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("field needs a \"kind\""))?;
    match kind {
        "Q" => Ok(FieldSpec::rationals()),
        "Fp" => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("Fp needs \"p\""))?;
            let k = v.get("k").and_then(Value::as_u64).unwrap_or(1);
            let modulus: Vec<u64> = match v.get("modulus") {
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| bad("modulus coefficients must be integers")))
                    .collect::<Result<_>>()?,
                None if k == 1 => vec![0, 1],
                _ => return Err(bad("modulus must be a coefficient list")),
            };
            FieldSpec::finite_field(p, modulus).and_then(|f| match &f {
                FieldSpec::FiniteField { k: kk, .. } if *kk as u64 == k => Ok(f),
                _ => Err(bad("modulus degree does not match k")),
            })
        }
        other => Err(bad(&format!("unknown field kind {other:?}"))),
    }
}

pub fn elem_to_json(field: &FieldSpec, a: &FieldElement) -> Value {
    match a {
        FieldElement::Rational(_) => Value::String(field.format_elem(a)),
        FieldElement::Modular(coeffs) => json!(coeffs),
    }
}

pub fn elem_from_json(field: &FieldSpec, v: &Value) -> Result<FieldElement> {
    match (field, v) {
        (FieldSpec::Rationals, Value::String(s)) => field.parse_rational(s),
        (FieldSpec::Rationals, Value::Number(n)) => {
            field.parse_rational(&n.to_string())
        }
        (FieldSpec::FiniteField { .. }, Value::Array(a)) => {
            let coeffs: Vec<i64> = a
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| bad("coefficients must be integers")))
                .collect::<Result<_>>()?;
            field.from_coeffs(&coeffs)
        }
        (FieldSpec::FiniteField { .. }, Value::Number(n)) => {
            let c = n.as_i64().ok_or_else(|| bad("coefficients must be integers"))?;
            field.from_coeffs(&[c])
        }
        _ => Err(bad("entry does not match the field")),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| elem_to_json(m.field(), m.get(i, j))).collect()))
        .collect();
    json!({
        "field": field_to_json(m.field()),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": rows,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let field = field_from_json(v.get("field").ok_or_else(|| bad("matrix needs a \"field\""))?)?;
    let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| bad("matrix needs \"rows\""))? as usize;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("matrix needs \"cols\""))? as usize;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("matrix needs an \"entries\" array"))?;
    if entries.len() != rows {
        return Err(bad("entry rows do not match \"rows\""));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| bad("each row must be an array"))?;
        if row.len() != cols {
            return Err(bad("entry row length does not match \"cols\""));
        }
        for e in row {
            flat.push(elem_from_json(&field, e)?);
        }
    }
    Matrix::from_entries(field, rows, cols, flat)
}

pub fn tuple_to_json(t: &MatrixTuple) -> Value {
    json!({"members": t.members().iter().map(matrix_to_json).collect::<Vec<_>>()})
}

pub fn tuple_from_json(v: &Value) -> Result<MatrixTuple> {
    let members = v
        .get("members")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("tuple needs a \"members\" array"))?;
    MatrixTuple::new(members.iter().map(matrix_from_json).collect::<Result<_>>()?)
}

pub fn poly_to_json(q: &Polynomial) -> Value {
    Value::Array(q.coeffs().iter().map(|c| elem_to_json(q.field(), c)).collect())
}

pub fn poly_from_json(field: &FieldSpec, v: &Value) -> Result<Polynomial> {
    let coeffs = v.as_array().ok_or_else(|| bad("polynomial must be a coefficient array"))?;
    Ok(Polynomial::new(
        field.clone(),
        coeffs.iter().map(|c| elem_from_json(field, c)).collect::<Result<_>>()?,
    ))
}

pub fn invariants_to_json(inv: &SkewPencilInvariants) -> Value {
    json!({
        "field": field_to_json(&inv.field),
        "finite": inv
            .finite
            .iter()
            .map(|(q, m)| json!({"poly": poly_to_json(q), "m": m}))
            .collect::<Vec<_>>(),
        "infinite": inv.infinite,
        "minimal": inv.minimal,
    })
}

pub fn invariants_from_json(v: &Value) -> Result<SkewPencilInvariants> {
    let field = field_from_json(v.get("field").ok_or_else(|| bad("invariants need a \"field\""))?)?;
    let finite = v
        .get("finite")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("invariants need a \"finite\" array"))?
        .iter()
        .map(|e| {
            let q = poly_from_json(&field, e.get("poly").ok_or_else(|| bad("finite entry needs \"poly\""))?)?;
            let m = e.get("m").and_then(Value::as_u64).ok_or_else(|| bad("finite entry needs \"m\""))? as usize;
            Ok((q, m))
        })
        .collect::<Result<Vec<_>>>()?;
    let ints = |key: &str| -> Result<Vec<usize>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(&format!("invariants need a {key:?} array")))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("indices must be integers")))
            .collect()
    };
    Ok(SkewPencilInvariants::new(field, finite, ints("infinite")?, ints("minimal")?))
}

pub fn structure_to_json(r: &StructureConstants) -> Value {
    let f = r.field();
    let table: Vec<Value> = (0..r.dim())
        .map(|i| {
            Value::Array(
                (0..r.dim())
                    .map(|j| {
                        Value::Array(
                            r.basis_product(i, j).iter().map(|c| elem_to_json(f, c)).collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    json!({"field": field_to_json(f), "dim": r.dim(), "table": table})
}

pub fn structure_from_json(v: &Value) -> Result<StructureConstants> {
    let field = field_from_json(v.get("field").ok_or_else(|| bad("structure constants need a \"field\""))?)?;
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("structure constants need \"dim\""))? as usize;
    let rows = v
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("structure constants need a \"table\""))?;
    let mut table = Vec::with_capacity(dim);
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("table rows must be arrays"))?;
        let mut out_row = Vec::with_capacity(dim);
        for cell in row {
            let cell = cell.as_array().ok_or_else(|| bad("table cells must be coordinate arrays"))?;
            out_row.push(cell.iter().map(|c| elem_from_json(&field, c)).collect::<Result<Vec<_>>>()?);
        }
        table.push(out_row);
    }
    StructureConstants::new(field, dim, table)
}

pub fn point_to_json(field: &FieldSpec, p: &ProjPoint) -> Value {
    match p {
        ProjPoint::Finite(l) => json!({"type": "finite", "value": elem_to_json(field, l)}),
        ProjPoint::Irreducible(q) => json!({"type": "irreducible", "poly": poly_to_json(q)}),
        ProjPoint::Infinity => json!({"type": "infinity"}),
    }
}

pub fn point_from_json(field: &FieldSpec, v: &Value) -> Result<ProjPoint> {
    match v.get("type").and_then(Value::as_str) {
        Some("finite") => Ok(ProjPoint::Finite(elem_from_json(
            field,
            v.get("value").ok_or_else(|| bad("finite point needs \"value\""))?,
        )?)),
        Some("irreducible") => Ok(ProjPoint::Irreducible(poly_from_json(
            field,
            v.get("poly").ok_or_else(|| bad("irreducible point needs \"poly\""))?,
        )?)),
        Some("infinity") => Ok(ProjPoint::Infinity),
        _ => Err(bad("point needs a \"type\" of finite | irreducible | infinity")),
    }
}

pub fn configuration_to_json(c: &PointConfiguration) -> Value {
    json!({
        "field": field_to_json(c.field()),
        "points": c
            .entries()
            .iter()
            .map(|(p, b)| json!({"point": point_to_json(c.field(), p), "bundle": b}))
            .collect::<Vec<_>>(),
    })
}

pub fn configuration_from_json(v: &Value) -> Result<PointConfiguration> {
    let field = field_from_json(v.get("field").ok_or_else(|| bad("configuration needs a \"field\""))?)?;
    let entries = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("configuration needs a \"points\" array"))?
        .iter()
        .map(|e| {
            let p = point_from_json(&field, e.get("point").ok_or_else(|| bad("entry needs \"point\""))?)?;
            let b = e
                .get("bundle")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("entry needs a \"bundle\" array"))?
                .iter()
                .map(|m| m.as_u64().map(|u| u as usize).ok_or_else(|| bad("bundle entries must be integers")))
                .collect::<Result<Vec<_>>>()?;
            Ok((p, b))
        })
        .collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(field, entries)
}

pub fn label_to_json(label: &CanonicalLabel) -> Value {
    match label {
        CanonicalLabel::Dim1 { p, q } => json!({"kind": "dim1", "p": p, "q": q}),
        CanonicalLabel::Dim2 { minimal, configuration, splits } => json!({
            "kind": "dim2",
            "minimal": minimal,
            "configuration": configuration_to_json(configuration),
            "splits": splits,
        }),
    }
}

pub fn label_from_json(v: &Value) -> Result<CanonicalLabel> {
    match v.get("kind").and_then(Value::as_str) {
        Some("dim1") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("dim1 label needs \"p\""))?;
            let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| bad("dim1 label needs \"q\""))?;
            Ok(CanonicalLabel::Dim1 { p: p as usize, q: q as usize })
        }
        Some("dim2") => {
            let minimal = v
                .get("minimal")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("dim2 label needs a \"minimal\" array"))?
                .iter()
                .map(|m| m.as_u64().map(|u| u as usize).ok_or_else(|| bad("minimal indices must be integers")))
                .collect::<Result<Vec<_>>>()?;
            let configuration = configuration_from_json(
                v.get("configuration").ok_or_else(|| bad("dim2 label needs a \"configuration\""))?,
            )?;
            let splits = v.get("splits").and_then(Value::as_bool).unwrap_or(true);
            Ok(CanonicalLabel::Dim2 { minimal, configuration, splits })
        }
        _ => Err(bad("label needs a \"kind\" of dim1 | dim2")),
    }
}

pub fn split_report_to_json(components: &[SplitComponent]) -> Value {
    let comps: Vec<Value> = components
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("rows".into(), json!(c.row_indices));
            m.insert("cols".into(), json!(c.col_indices));
            m.insert("tuple".into(), tuple_to_json(&c.tuple));
            Value::Object(m)
        })
        .collect();
    json!({"components": comps})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_roundtrip() {
        for f in [
            FieldSpec::rationals(),
            FieldSpec::prime_field(7).unwrap(),
            FieldSpec::finite_field(3, vec![1, 0, 1]).unwrap(),
        ] {
            assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
        }
        assert!(field_from_json(&json!({"kind": "R"})).is_err());
    }

    #[test]
    fn matrix_roundtrip_rationals() {
        let f = FieldSpec::rationals();
        let mut m = Matrix::from_i64_rows(&f, &[&[1, -2], &[0, 5]]);
        m.set(0, 0, f.parse_rational("3/7").unwrap());
        let v = matrix_to_json(&m);
        assert_eq!(v["entries"][0][0], json!("3/7"));
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn matrix_roundtrip_extension_field() {
        let f = FieldSpec::finite_field(3, vec![1, 0, 1]).unwrap();
        let m = Matrix::from_fn(f.clone(), 2, 2, |i, j| {
            f.from_coeffs(&[i as i64, j as i64]).unwrap()
        });
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn plain_integers_accepted_on_input() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let v = json!({
            "field": {"kind": "Fp", "p": 3},
            "rows": 1, "cols": 2,
            "entries": [[2, [1]]],
        });
        let m = matrix_from_json(&v).unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&f3, &[&[2, 1]]));
        let q = json!({
            "field": {"kind": "Q"},
            "rows": 1, "cols": 1,
            "entries": [[-4]],
        });
        assert_eq!(matrix_from_json(&q).unwrap(), Matrix::from_i64_rows(&FieldSpec::rationals(), &[&[-4]]));
    }

    #[test]
    fn tuple_and_invariants_roundtrip() {
        let f = FieldSpec::prime_field(5).unwrap();
        let t = MatrixTuple::new(vec![
            Matrix::from_i64_rows(&f, &[&[0, 1], &[4, 0]]),
            Matrix::identity(f.clone(), 2),
        ])
        .unwrap();
        assert_eq!(tuple_from_json(&tuple_to_json(&t)).unwrap(), t);

        let inv = SkewPencilInvariants::new(
            f.clone(),
            vec![(Polynomial::from_i64(&f, &[1, 0, 1]), 2)],
            vec![1],
            vec![1, 2],
        );
        assert_eq!(invariants_from_json(&invariants_to_json(&inv)).unwrap(), inv);
    }

    #[test]
    fn structure_roundtrip() {
        let f = FieldSpec::rationals();
        let k = Matrix::from_i64_rows(&f, &[&[0, 1], &[-1, 0]]);
        let r = crate::algebras::semialgebra_from_tuple(&MatrixTuple::new(vec![k]).unwrap()).unwrap();
        assert_eq!(structure_from_json(&structure_to_json(&r)).unwrap(), r);
    }

    #[test]
    fn label_roundtrip() {
        let f = FieldSpec::prime_field(3).unwrap();
        let labels = [
            CanonicalLabel::Dim1 { p: 2, q: 1 },
            CanonicalLabel::Dim2 {
                minimal: vec![1, 2],
                configuration: PointConfiguration::new(
                    f.clone(),
                    vec![
                        (ProjPoint::Finite(f.from_i64(0)), vec![2, 1]),
                        (ProjPoint::Irreducible(Polynomial::from_i64(&f, &[1, 0, 1])), vec![1]),
                        (ProjPoint::Infinity, vec![1]),
                    ],
                )
                .unwrap(),
                splits: false,
            },
        ];
        for l in &labels {
            assert_eq!(&label_from_json(&label_to_json(l)).unwrap(), l);
        }
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        for v in [
            json!({"rows": 1, "cols": 1, "entries": [["1"]]}),
            json!({"field": {"kind": "Q"}, "rows": 2, "cols": 1, "entries": [["1"]]}),
            json!({"field": {"kind": "Q"}, "rows": 1, "cols": 1, "entries": [[true]]}),
        ] {
            assert!(matches!(matrix_from_json(&v), Err(Error::Parse(_))));
        }
    }
}
