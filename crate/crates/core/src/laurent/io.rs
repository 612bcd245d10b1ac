//! JSON form of Laurent complexes.
//!
//! Either a bare list of boundary matrices `[D_1, D_2, ...]`, or an object
//! `{"ranks": [...], "boundaries": [...]}` when some module has rank zero.
//! A matrix is a list of rows, an entry a list of `[exponent, num, den]` terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{LaurentComplex, LaurentMatrix, LaurentPoly};
use crate::error::{Error, Result};
use crate::field::Field;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(i.into());
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(format!("expected an integer, found {v}")))
}

fn entry(field: Field, v: &Value) -> Result<LaurentPoly> {
    let terms = v
        .as_array()
        .ok_or_else(|| bad("entry must be a list of terms"))?;
    let mut out = vec![];
    for t in terms {
        let t = t
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| bad("term must be [exponent, num, den]"))?;
        let e = t[0]
            .as_i64()
            .ok_or_else(|| bad("exponent must be an integer"))?;
        let den = int(&t[2])?;
        if den == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        let c = field.from_rational(&BigRational::new(int(&t[1])?, den))?;
        out.push((e, c));
    }
    Ok(LaurentPoly::from_terms(field, out))
}

fn matrix(field: Field, v: &Value, cols_hint: Option<usize>) -> Result<LaurentMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("matrix must be a list of rows"))?;
    let cols = match rows.first() {
        Some(r) => r.as_array().ok_or_else(|| bad("row must be a list"))?.len(),
        None => cols_hint.unwrap_or(0),
    };
    let mut out = vec![];
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("row must be a list"))?;
        if r.len() != cols {
            return Err(bad("ragged matrix"));
        }
        out.push(
            r.iter()
                .map(|x| entry(field, x))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(LaurentMatrix::from_rows(field, out, cols))
}

/// Parses a complex; checks shapes and `D_{i+1} D_i = 0`.
pub fn complex_from_json(text: &str, field: Field) -> Result<LaurentComplex> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("JSON: {e}")))?;
    let (ranks, mats): (Option<Vec<usize>>, &Vec<Value>) = match &v {
        Value::Array(a) => (None, a),
        Value::Object(o) => {
            let ranks = o
                .get("ranks")
                .and_then(|r| r.as_array())
                .map(|r| {
                    r.iter()
                        .map(|x| x.as_u64().map(|x| x as usize))
                        .collect::<Option<Vec<_>>>()
                })
                .ok_or_else(|| bad("`ranks` must be a list of nonnegative integers"))?
                .ok_or_else(|| bad("`ranks` must be a list of nonnegative integers"))?;
            let b = o
                .get("boundaries")
                .and_then(|b| b.as_array())
                .ok_or_else(|| bad("`boundaries` must be a list"))?;
            (Some(ranks), b)
        }
        _ => return Err(bad("expected a list of matrices")),
    };
    let mut boundaries = vec![];
    for (k, m) in mats.iter().enumerate() {
        let hint = match &ranks {
            Some(r) => r.get(k).copied(),
            None => boundaries.last().map(|d: &LaurentMatrix| d.rows),
        };
        boundaries.push(matrix(field, m, hint)?);
    }
    let ranks = match ranks {
        Some(r) => r,
        None => {
            let mut r = vec![boundaries.first().map_or(0, |d| d.cols)];
            r.extend(boundaries.iter().map(|d| d.rows));
            r
        }
    };
    LaurentComplex::new(field, ranks, boundaries)
}

fn big(x: &BigInt) -> Value {
    x.to_i64()
        .map(Value::from)
        .unwrap_or_else(|| Value::String(x.to_string()))
}

fn entry_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| {
                let q = c.to_rational();
                json!([e, big(q.numer()), big(q.denom())])
            })
            .collect(),
    )
}

/// Object form, which round-trips zero ranks.
pub fn complex_to_json(c: &LaurentComplex) -> String {
    let boundaries: Vec<Value> = c
        .boundaries()
        .iter()
        .map(|d| {
            Value::Array(
                (0..d.rows)
                    .map(|i| Value::Array((0..d.cols).map(|j| entry_json(d.get(i, j))).collect()))
                    .collect(),
            )
        })
        .collect();
    serde_json::to_string(&json!({ "ranks": c.ranks(), "boundaries": boundaries }))
        .expect("serializes")
}
