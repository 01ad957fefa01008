//! Text, CSV and JSON renderings of matrices and trees.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Number, Value};
use thiserror::Error;

use crate::distributions::{Cell, JointMatrix, Margins, Method};
use crate::trees::{IncTree, RawTree};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad matrix document: {0}")]
    Schema(String),
}

fn num(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

fn nums(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn margins_of(mat: &JointMatrix) -> Option<Margins> {
    mat.margins().cloned().or_else(|| mat.marginals().ok())
}

/// `{"two_n", "m_range", "k_range", "entries", "row_sums", "col_sums", "total", "method"}`
/// with `null` for unknown cells and for margins that are not available.
pub fn matrix_to_json(mat: &JointMatrix) -> Value {
    let top = mat.two_n() as i64;
    let entries: Vec<Value> = (2..=top)
        .map(|m| {
            Value::Array(
                (1..top)
                    .map(|k| mat.get(m, k).as_ref().map_or(Value::Null, num))
                    .collect(),
            )
        })
        .collect();
    let mg = margins_of(mat);
    json!({
        "two_n": mat.two_n(),
        "m_range": [2, top],
        "k_range": [1, top - 1],
        "entries": entries,
        "row_sums": mg.as_ref().map_or(Value::Null, |g| nums(&g.row_sums)),
        "col_sums": mg.as_ref().map_or(Value::Null, |g| nums(&g.col_sums)),
        "total": mg.as_ref().map_or(Value::Null, |g| num(&g.total)),
        "method": mat.method().to_string(),
    })
}

fn big(v: &Value, what: &str) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| FormatError::Schema(format!("{what} is not an integer"))),
        _ => Err(FormatError::Schema(format!("{what} is not a number"))),
    }
}

fn bigs(v: &Value, what: &str) -> Result<Vec<BigInt>, FormatError> {
    v.as_array()
        .ok_or_else(|| FormatError::Schema(format!("{what} is not an array")))?
        .iter()
        .map(|x| big(x, what))
        .collect()
}

pub fn matrix_from_json(v: &Value) -> Result<JointMatrix, FormatError> {
    let schema = |s: &str| FormatError::Schema(s.to_string());
    let two_n = v["two_n"].as_u64().ok_or_else(|| schema("two_n"))? as usize;
    let method: Method = serde_json::from_value(v["method"].clone())?;
    let mut mat = JointMatrix::unknown(two_n, method).map_err(|e| schema(&e.to_string()))?;
    let rows = v["entries"].as_array().ok_or_else(|| schema("entries"))?;
    if rows.len() != two_n - 1 {
        return Err(schema("entries has the wrong number of rows"));
    }
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| schema("entries row"))?;
        if row.len() != two_n - 1 {
            return Err(schema("entries row has the wrong length"));
        }
        for (j, cell) in row.iter().enumerate() {
            if !cell.is_null() {
                mat.set(i as i64 + 2, j as i64 + 1, big(cell, "entry")?);
            }
        }
    }
    if !v["total"].is_null() {
        mat.set_margins(Margins {
            row_sums: bigs(&v["row_sums"], "row_sums")?,
            col_sums: bigs(&v["col_sums"], "col_sums")?,
            total: big(&v["total"], "total")?,
        });
    }
    Ok(mat)
}

/// Header `m,1,..,2n-1,sum`, one row per `m`, then a `sum` row; unknown cells are empty.
pub fn matrix_to_csv(mat: &JointMatrix) -> String {
    let top = mat.two_n() as i64;
    let mg = margins_of(mat);
    let mut s = String::from("m");
    for k in 1..top {
        write!(s, ",{k}").unwrap();
    }
    s.push_str(",sum\n");
    for m in 2..=top {
        write!(s, "{m}").unwrap();
        for k in 1..top {
            match mat.get(m, k) {
                Some(v) => write!(s, ",{v}").unwrap(),
                None => s.push(','),
            }
        }
        match &mg {
            Some(g) => writeln!(s, ",{}", g.row(m)).unwrap(),
            None => s.push_str(",\n"),
        }
    }
    s.push_str("sum");
    for k in 1..top {
        match &mg {
            Some(g) => write!(s, ",{}", g.col(k)).unwrap(),
            None => s.push(','),
        }
    }
    match &mg {
        Some(g) => writeln!(s, ",{}", g.total).unwrap(),
        None => s.push_str(",\n"),
    }
    s
}

/// Table layout with dots for zeros, blanks for unknown cells, margins on the
/// right and at the bottom.
pub fn matrix_to_text(mat: &JointMatrix) -> String {
    let two_n = mat.two_n();
    let top = two_n as i64;
    let mg = margins_of(mat);
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["k=".to_string()];
    header.extend((1..top).map(|k| k.to_string()));
    header.push(format!("f{two_n}(m,.)"));
    grid.push(header);
    for m in 2..=top {
        let mut row = vec![if m == 2 { "m=2".to_string() } else { m.to_string() }];
        for k in 1..top {
            row.push(match mat.cell(m, k) {
                Some(Cell::Known(v)) if v.is_zero() => ".".to_string(),
                Some(Cell::Known(v)) => v.to_string(),
                _ => String::new(),
            });
        }
        row.push(mg.as_ref().map_or(String::new(), |g| g.row(m).to_string()));
        grid.push(row);
    }
    let mut foot = vec![format!("f{two_n}(.,k)")];
    foot.extend((1..top).map(|k| mg.as_ref().map_or(String::new(), |g| g.col(k).to_string())));
    foot.push(mg.as_ref().map_or(String::new(), |g| format!("E{two_n}={}", g.total)));
    grid.push(foot);

    let cols = grid[0].len();
    let width: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for (i, row) in grid.iter().enumerate() {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            let sep = if c == 1 || c == cols - 1 { " | " } else { " " };
            if c > 0 {
                line.push_str(sep);
            }
            if c == 0 {
                write!(line, "{cell:<w$}", w = width[c]).unwrap();
            } else {
                write!(line, "{cell:>w$}", w = width[c]).unwrap();
            }
        }
        s.push_str(line.trim_end());
        s.push('\n');
        if i == 0 || i == grid.len() - 2 {
            let rule: usize = width.iter().sum::<usize>() + 2 * 2 + cols - 1;
            s.push_str(&"-".repeat(rule));
            s.push('\n');
        }
    }
    writeln!(s, "method: {}", mat.method()).unwrap();
    s
}

/// One-line tree JSON `{"n","parent","left","right"}`.
pub fn tree_to_json(t: &IncTree) -> String {
    serde_json::to_string(&t.to_raw()).expect("plain integers")
}

pub fn tree_from_json(s: &str) -> Result<RawTree, FormatError> {
    Ok(serde_json::from_str(s)?)
}
