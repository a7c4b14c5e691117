//! Matrix files and JSON certificates.
//!
//! Every number in a certificate is written as an exact decimal string
//! (`"3/4"`, `"-2"`), so no value ever passes through a float. Object keys
//! come out sorted.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::classify::BrickType;
use crate::cone::{IntVec, TeCone};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rat};
use crate::hilbert::HilbertBasis;
use crate::hunt::SearchReport;
use crate::triangulate::{Triangulation, TriangulationReport};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Parses an entry `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        None => parse_digits(s).map(Rat::from_integer),
        Some((p, q)) => {
            if !q.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let q = parse_digits(q).filter(|q| !q.is_zero())?;
            Some(Rat::new(parse_digits(p)?, q))
        }
    }
}

/// Reads the plain-text matrix format: one row per line, whitespace
/// separated entries, `#` comment lines and blank lines skipped.
pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut width: Option<(usize, usize)> = None;
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut pos = 0;
        for token in line.split_whitespace() {
            let col = line[pos..].find(token).map_or(pos, |i| pos + i);
            pos = col + token.len();
            let v = parse_rat(token)
                .ok_or_else(|| parse_error(ln, col + 1, format!("bad entry `{token}`; expected p or p/q")))?;
            row.push(v);
        }
        match width {
            Some((w, first)) if w != row.len() => {
                return Err(parse_error(
                    ln,
                    1,
                    format!("row has {} entries but line {first} has {w}", row.len()),
                ));
            }
            None => width = Some((row.len(), ln)),
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_error(1, 1, "no matrix rows"));
    }
    ExactMatrix::from_rows(rows)
}

pub fn read_matrix_file(path: &Path) -> Result<ExactMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

/// The matrix file text of `m`; parses back to `m`.
pub fn write_matrix(m: &ExactMatrix) -> String {
    m.to_string()
}

pub fn rat_json(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn num_json(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn vec_json<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| num_json(x.to_string())).collect())
}

pub fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(m.rows_iter().map(|r| Value::Array(r.iter().map(rat_json).collect())).collect())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Json(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Json(format!("`{what}` must be an array")))
}

/// Accepts a string like `"3/4"` (or a bare JSON integer).
pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s).ok_or_else(|| Error::Json(format!("bad number `{s}`"))),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap_or(0).into())),
        _ => Err(Error::Json(format!("expected an exact number, found {v}"))),
    }
}

fn int_from_json(v: &Value) -> Result<i64> {
    let r = rat_from_json(v)?;
    if !r.is_integer() {
        return Err(Error::Json(format!("expected an integer, found {r}")));
    }
    i64::try_from(r.to_integer()).map_err(|_| Error::Json("integer out of range".into()))
}

fn index_from_json(v: &Value) -> Result<usize> {
    usize::try_from(int_from_json(v)?).map_err(|_| Error::Json("negative index".into()))
}

pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(rat_from_json).collect())
        .collect::<Result<Vec<Vec<Rat>>>>()?;
    ExactMatrix::from_rows(rows)
}

/// Top-level certificate envelope.
pub fn certificate(command: &str, input: Value, result: Value, certificates: Value) -> Value {
    json!({
        "command": command,
        "input": input,
        "result": result,
        "certificates": certificates,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn brick_type_json(t: &Option<BrickType>) -> Value {
    match t {
        None => json!({ "type": "none" }),
        Some(t) => json!({
            "type": t.tag.name(),
            "size": num_json(t.size),
            "equideterminant": num_json(&t.equideterminant),
        }),
    }
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    let parts: Vec<Value> = d
        .parts()
        .into_iter()
        .map(|(tag, rows)| json!({ "type": tag.name(), "rows": vec_json(&rows) }))
        .collect();
    json!({ "bricks": parts })
}

pub fn hilbert_json(h: &HilbertBasis) -> Value {
    let els: Vec<Value> = h
        .elements
        .iter()
        .zip(&h.origins)
        .map(|(v, o)| json!({ "vector": vec_json(v), "origin": o.name() }))
        .collect();
    json!({ "size": num_json(h.len()), "elements": els })
}

pub fn report_json(r: &TriangulationReport) -> Value {
    json!({
        "hilbert": r.hilbert,
        "unimodular": r.unimodular,
        "covering": r.covering,
        "disjoint": r.disjoint,
        "regular": r.regular,
        "cellCount": num_json(r.cell_count),
        "normalizedVolume": rat_json(&r.volume),
        "notes": r.notes,
    })
}

/// `{generators, points, cells, lifting, checks}`.
pub fn triangulation_json(cone: &TeCone, t: &Triangulation, checks: &TriangulationReport) -> Value {
    let mut m = Map::new();
    m.insert("generators".into(), matrix_json(cone.generators()));
    m.insert("points".into(), Value::Array(t.points.iter().map(|p| vec_json(p)).collect()));
    m.insert("cells".into(), Value::Array(t.cells.iter().map(|c| vec_json(c)).collect()));
    let lifting = t.lifting.as_ref().or(checks.found_lifting.as_ref());
    m.insert(
        "lifting".into(),
        lifting.map_or(Value::Null, |w| Value::Array(w.iter().map(rat_json).collect())),
    );
    m.insert("checks".into(), report_json(checks));
    Value::Object(m)
}

/// Reads a triangulation object, or a certificate whose `result` is one.
pub fn triangulation_from_json(v: &Value) -> Result<(TeCone, Triangulation)> {
    let v = if v.get("points").is_none() { field(v, "result")? } else { v };
    let cone = TeCone::new(matrix_from_json(field(v, "generators")?)?)?;
    let points = array(field(v, "points")?, "points")?
        .iter()
        .map(|p| array(p, "point")?.iter().map(int_from_json).collect())
        .collect::<Result<Vec<IntVec>>>()?;
    let cells = array(field(v, "cells")?, "cells")?
        .iter()
        .map(|c| array(c, "cell")?.iter().map(index_from_json).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let lifting = match v.get("lifting") {
        None | Some(Value::Null) => None,
        Some(w) => Some(array(w, "lifting")?.iter().map(rat_from_json).collect::<Result<Vec<Rat>>>()?),
    };
    Ok((cone, Triangulation { points, cells, lifting }))
}

/// Report fields without the elapsed time, so output is reproducible.
pub fn search_report_json(r: &SearchReport) -> Value {
    let reps: Vec<Value> = r
        .representatives
        .iter()
        .map(|c| json!({ "key": vec_json(&c.key), "matrix": matrix_json(&c.matrix) }))
        .collect();
    json!({
        "size": num_json(r.size),
        "representatives": reps,
        "candidatesExamined": num_json(r.candidates_examined),
        "coreClassesExamined": num_json(r.core_classes_examined),
        "shards": num_json(r.shards),
        "shardsResumed": num_json(r.shards_resumed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::fixtures;
    use crate::triangulate::{triangulate_te_cone, verify_triangulation};

    #[test]
    fn parses_fractions_comments_and_blanks() {
        let m = parse_matrix("# header\n\n1 -2/4  3\n  0 +5 -7/3\n").unwrap();
        assert_eq!(m.get(0, 1), &Rat::new((-1).into(), 2.into()));
        assert_eq!(m.get(1, 1), &int(5));
        assert_eq!((m.nrows(), m.ncols()), (2, 3));
    }

    #[test]
    fn diagnostics_carry_position() {
        match parse_matrix("1 2\n3 x4\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            e => panic!("{e:?}"),
        }
        match parse_matrix("1 2\n3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
        for bad in ["1/0", "1.5", "1e3", "--1", "1/-2", "", "# only\n"] {
            assert!(parse_matrix(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn matrix_round_trip() {
        for m in [fixtures::figure1(), fixtures::conjecture6(), parse_matrix("1/3 -7/2\n0 4").unwrap()] {
            assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        }
    }

    #[test]
    fn triangulation_round_trip() {
        let cone = TeCone::new(fixtures::conjecture4()).unwrap();
        let t = triangulate_te_cone(&cone).unwrap();
        let rep = verify_triangulation(&cone, &t).unwrap();
        let cert = certificate("triangulate", json!({}), triangulation_json(&cone, &t, &rep), json!({}));
        let text = serde_json::to_string(&cert).unwrap();
        let (c2, t2) = triangulation_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(t2, t);
        assert_eq!(c2.generators(), cone.generators());
        assert!(verify_triangulation(&c2, &t2).unwrap().all_pass());
        assert!(!has_number(&cert));
    }

    fn has_number(v: &Value) -> bool {
        match v {
            Value::Number(_) => true,
            Value::Array(a) => a.iter().any(has_number),
            Value::Object(m) => m.values().any(has_number),
            _ => false,
        }
    }
}
