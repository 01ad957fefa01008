//! Brute-force joint distribution of `(eoc, pom)` on secant trees, its
//! margins and partial differences, and the `ent` distribution.
//!
//! `JointMatrix` cells live on the box `m in [2, 2n]`, `k in [1, 2n-1]`;
//! every accessor reads `0` outside the box.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trees;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistError {
    #[error("size {0} is not a positive even integer")]
    OddSize(usize),
    #[error("cell f({m},{k}) is unknown")]
    UnknownCells { m: i64, k: i64 },
    #[error("size {0} is too small")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Known(BigInt),
    Unknown,
}

impl Cell {
    pub fn known(&self) -> Option<&BigInt> {
        match self {
            Cell::Known(v) => Some(v),
            Cell::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Recurrence,
    /// Recurrence cells with the interior lower triangle taken from the oracle.
    Hybrid,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Recurrence => "recurrence",
            Method::Hybrid => "hybrid",
        })
    }
}

/// Row sums `f(m,.)` for `m = 2..=2n`, column sums `f(.,k)` for `k = 1..=2n-1`, and the total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Margins {
    pub row_sums: Vec<BigInt>,
    pub col_sums: Vec<BigInt>,
    pub total: BigInt,
}

impl Margins {
    pub fn row(&self, m: i64) -> BigInt {
        usize::try_from(m - 2)
            .ok()
            .and_then(|i| self.row_sums.get(i))
            .cloned()
            .unwrap_or_default()
    }

    pub fn col(&self, k: i64) -> BigInt {
        usize::try_from(k - 1)
            .ok()
            .and_then(|i| self.col_sums.get(i))
            .cloned()
            .unwrap_or_default()
    }
}

/// The matrix `M_2n = (f_2n(m,k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointMatrix {
    two_n: usize,
    cells: Vec<Cell>,
    method: Method,
    margins: Option<Margins>,
}

pub(crate) fn check_size(two_n: usize) -> Result<(), DistError> {
    if two_n == 0 || two_n % 2 == 1 {
        Err(DistError::OddSize(two_n))
    } else {
        Ok(())
    }
}

impl JointMatrix {
    /// All cells unknown.
    pub fn unknown(two_n: usize, method: Method) -> Result<Self, DistError> {
        check_size(two_n)?;
        let d = two_n - 1;
        Ok(JointMatrix {
            two_n,
            cells: vec![Cell::Unknown; d * d],
            method,
            margins: None,
        })
    }

    /// Fully known matrix from rows `m = 2..=2n` of length `2n-1`.
    pub fn from_rows<T: Into<BigInt> + Clone>(
        two_n: usize,
        rows: &[Vec<T>],
        method: Method,
    ) -> Result<Self, DistError> {
        let mut mat = Self::unknown(two_n, method)?;
        assert_eq!(rows.len(), two_n - 1, "expected one row per m in [2, 2n]");
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), two_n - 1, "expected one entry per k in [1, 2n-1]");
            for (j, v) in row.iter().enumerate() {
                mat.set(i as i64 + 2, j as i64 + 1, v.clone().into());
            }
        }
        mat.margins = mat.marginals().ok();
        Ok(mat)
    }

    pub fn two_n(&self) -> usize {
        self.two_n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn set_method(&mut self, method: Method) {
        self.method = method;
    }

    pub fn in_box(&self, m: i64, k: i64) -> bool {
        let top = self.two_n as i64;
        (2..=top).contains(&m) && (1..top).contains(&k)
    }

    fn index(&self, m: i64, k: i64) -> usize {
        debug_assert!(self.in_box(m, k));
        (m - 2) as usize * (self.two_n - 1) + (k - 1) as usize
    }

    /// The raw cell; `None` outside the box.
    pub fn cell(&self, m: i64, k: i64) -> Option<&Cell> {
        self.in_box(m, k).then(|| &self.cells[self.index(m, k)])
    }

    /// `Some(value)` for known cells and for anything outside the box (zero);
    /// `None` for an unknown cell.
    pub fn get(&self, m: i64, k: i64) -> Option<BigInt> {
        match self.cell(m, k) {
            None => Some(BigInt::zero()),
            Some(c) => c.known().cloned(),
        }
    }

    pub fn value(&self, m: i64, k: i64) -> Result<BigInt, DistError> {
        self.get(m, k).ok_or(DistError::UnknownCells { m, k })
    }

    /// Panics if `(m,k)` lies outside the box.
    pub fn set(&mut self, m: i64, k: i64, v: BigInt) {
        assert!(self.in_box(m, k), "f({m},{k}) outside the box of M_{}", self.two_n);
        let i = self.index(m, k);
        self.cells[i] = Cell::Known(v);
    }

    pub fn set_unknown(&mut self, m: i64, k: i64) {
        assert!(self.in_box(m, k));
        let i = self.index(m, k);
        self.cells[i] = Cell::Unknown;
    }

    pub fn positions(&self) -> impl Iterator<Item = (i64, i64)> {
        let top = self.two_n as i64;
        (2..=top).flat_map(move |m| (1..top).map(move |k| (m, k)))
    }

    pub fn unknown_cells(&self) -> Vec<(i64, i64)> {
        self.positions()
            .filter(|&(m, k)| matches!(self.cell(m, k), Some(Cell::Unknown)))
            .collect()
    }

    pub fn is_fully_known(&self) -> bool {
        self.cells.iter().all(|c| matches!(c, Cell::Known(_)))
    }

    /// Margins attached at construction (computed or analytically derived).
    pub fn margins(&self) -> Option<&Margins> {
        self.margins.as_ref()
    }

    pub fn set_margins(&mut self, margins: Margins) {
        self.margins = Some(margins);
    }

    /// Exact margins summed from the cells.
    pub fn marginals(&self) -> Result<Margins, DistError> {
        let top = self.two_n as i64;
        let mut row_sums = vec![BigInt::zero(); self.two_n - 1];
        let mut col_sums = vec![BigInt::zero(); self.two_n - 1];
        for m in 2..=top {
            for k in 1..top {
                let v = self.value(m, k)?;
                row_sums[(m - 2) as usize] += &v;
                col_sums[(k - 1) as usize] += &v;
            }
        }
        let total = row_sums.iter().sum();
        Ok(Margins {
            row_sums,
            col_sums,
            total,
        })
    }

    pub fn has_negative(&self) -> Option<(i64, i64)> {
        self.positions()
            .find(|&(m, k)| self.get(m, k).is_some_and(|v| v.is_negative()))
    }
}

/// `Δ_m f(m,k) = f(m+1,k) - f(m,k)`.
pub fn delta_m(mat: &JointMatrix, m: i64, k: i64) -> Result<BigInt, DistError> {
    Ok(mat.value(m + 1, k)? - mat.value(m, k)?)
}

/// `Δ_k f(m,k) = f(m,k+1) - f(m,k)`.
pub fn delta_k(mat: &JointMatrix, m: i64, k: i64) -> Result<BigInt, DistError> {
    Ok(mat.value(m, k + 1)? - mat.value(m, k)?)
}

pub fn delta_m2(mat: &JointMatrix, m: i64, k: i64) -> Result<BigInt, DistError> {
    Ok(delta_m(mat, m + 1, k)? - delta_m(mat, m, k)?)
}

pub fn delta_k2(mat: &JointMatrix, m: i64, k: i64) -> Result<BigInt, DistError> {
    Ok(delta_k(mat, m, k + 1)? - delta_k(mat, m, k)?)
}

/// Counts `(eoc, pom)` over every secant tree of size `two_n`.
///
/// The enumeration is split by two-letter projection prefix and the partial
/// count grids are summed, so nothing but one tree per worker is in memory.
pub fn joint_matrix_bruteforce(two_n: usize) -> Result<JointMatrix, DistError> {
    check_size(two_n)?;
    let d = two_n - 1;
    let counts = trees::prefixes(two_n, 2)
        .into_par_iter()
        .map(|prefix| {
            let mut grid = vec![0u64; d * d];
            for t in trees::enumerate_with_prefix(two_n, &prefix) {
                let s = trees::stats(&t).expect("size >= 2");
                grid[(s.eoc as usize - 2) * d + (s.pom as usize - 1)] += 1;
            }
            grid
        })
        .reduce(
            || vec![0u64; d * d],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let rows: Vec<Vec<u64>> = counts.chunks(d).map(<[u64]>::to_vec).collect();
    JointMatrix::from_rows(two_n, &rows, Method::Brute)
}

/// Entry `j-1` counts trees of size `n` whose rightmost node is labeled `j`, for `j = 1..=n`.
pub fn ent_distribution(n: usize) -> Result<Vec<BigInt>, DistError> {
    if n < 2 {
        return Err(DistError::TooSmall(n));
    }
    let counts = trees::prefixes(n, 2)
        .into_par_iter()
        .map(|prefix| {
            let mut c = vec![0u64; n];
            for t in trees::enumerate_with_prefix(n, &prefix) {
                c[t.rightmost() as usize - 1] += 1;
            }
            c
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Rows `Ent_n(j)`, `j = 1..=n-1`, for `n = 2..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntringerTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl EntringerTriangle {
    /// `rows[0]` is row `n = 2`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        EntringerTriangle { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() + 1
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        n.checked_sub(2)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    /// `Ent_n(j)`, zero for `j` outside `1..=n-1`.
    pub fn get(&self, n: usize, j: i64) -> Option<BigInt> {
        let row = self.row(n)?;
        Some(
            usize::try_from(j - 1)
                .ok()
                .and_then(|i| row.get(i))
                .cloned()
                .unwrap_or_default(),
        )
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigInt])> {
        self.rows.iter().enumerate().map(|(i, r)| (i + 2, r.as_slice()))
    }
}

/// Entringer rows read off the `ent` statistic.
///
/// Even `n`: `Ent_n(j) = #{ent = j}`. Odd `n`: the rightmost label is never 1
/// and the row is the reflection `Ent_n(j) = #{ent = n + 1 - j}`.
pub fn entringer_bruteforce(n_max: usize) -> Result<EntringerTriangle, DistError> {
    if n_max < 2 {
        return Err(DistError::TooSmall(n_max));
    }
    let rows = (2..=n_max)
        .map(|n| {
            let raw = ent_distribution(n)?;
            Ok(if n % 2 == 0 {
                raw[..n - 1].to_vec()
            } else {
                raw[1..].iter().rev().cloned().collect()
            })
        })
        .collect::<Result<Vec<_>, DistError>>()?;
    Ok(EntringerTriangle { rows })
}

/// Convenience: `E_2n` as the number of trees of size `2n`.
pub fn count_trees(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    trees::prefixes(n, 2)
        .into_par_iter()
        .map(|p| {
            let mut gen = trees::AltPerms::with_prefix(n, &p);
            let mut c = 0u64;
            while gen.advance().is_some() {
                c += 1;
            }
            c
        })
        .sum()
}
