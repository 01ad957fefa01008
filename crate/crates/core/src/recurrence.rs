//! Enumeration-free computation of `M_2n`: secant numbers, margins, the upper
//! triangle, the border of the lower triangle, and the Entringer triangle.
//! Also hosts the identity checkers run against brute-force matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::distributions::{
    check_size, delta_k2, delta_m2, joint_matrix_bruteforce, Cell, DistError, EntringerTriangle,
    JointMatrix, Margins, Method,
};
use crate::report::{expect_eq, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error("level 2n={0} needs the fully computed level 2n-2")]
    MissingPredecessor(usize),
    #[error("computed cell f_{two_n}({m},{k}) = {value} is negative")]
    NegativeCell {
        two_n: usize,
        m: i64,
        k: i64,
        value: BigInt,
    },
    #[error("f_{two_n}({m},{k}): right-to-left sweep gives {r2}, top-down sweep gives {r1}")]
    FillOrderMismatch {
        two_n: usize,
        m: i64,
        k: i64,
        r1: BigInt,
        r2: BigInt,
    },
    #[error("f_{two_n}({m},{k}) assigned twice with {first} and {second}")]
    Conflict {
        two_n: usize,
        m: i64,
        k: i64,
        first: BigInt,
        second: BigInt,
    },
    #[error("upper cell f_{two_n}({m},{k}) is unknown")]
    MissingUpper { two_n: usize, m: i64, k: i64 },
    #[error("upper cell f_{two_n}({m},{k}) is not covered by any rule")]
    Uncovered { two_n: usize, m: i64, k: i64 },
}

type Result<T> = std::result::Result<T, RecurrenceError>;

/// Entringer rows `2..=n_max` from the partial-sum rule
/// `Ent_n(j) = sum_{i=1}^{min(n-j, n-2)} Ent_{n-1}(i)`.
pub fn entringer_triangle(n_max: usize) -> EntringerTriangle {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    if n_max >= 2 {
        rows.push(vec![BigInt::one()]);
    }
    for n in 3..=n_max {
        let prev = rows.last().expect("row n-1 exists");
        // prefix[i] = Ent_{n-1}(1) + ... + Ent_{n-1}(i)
        let mut prefix = vec![BigInt::zero()];
        for v in prev {
            let next = prefix.last().unwrap() + v;
            prefix.push(next);
        }
        let row = (1..n)
            .map(|j| prefix[(n - j).min(n - 2)].clone())
            .collect();
        rows.push(row);
    }
    EntringerTriangle::from_rows(rows)
}

/// `E_0, E_2, ..., E_{2 n_max}`, the row sums of the even Entringer rows.
pub fn secant_numbers(n_max: usize) -> Vec<BigInt> {
    let tri = entringer_triangle(2 * n_max);
    let mut out = vec![BigInt::one()];
    for n in 1..=n_max {
        out.push(tri.row(2 * n).expect("row built").iter().sum());
    }
    out
}

/// Column sums `f_2n(.,k)`, `k = 1..=2n-1`, from the column sums of level `2n-2`.
pub fn column_sums(two_n: usize, prev: Option<&[BigInt]>) -> Result<Vec<BigInt>> {
    check_size(two_n)?;
    if two_n == 2 {
        return Ok(vec![BigInt::one()]);
    }
    let prev = prev.ok_or(RecurrenceError::MissingPredecessor(two_n))?;
    if prev.len() != two_n - 3 {
        return Err(RecurrenceError::MissingPredecessor(two_n));
    }
    let e: BigInt = prev.iter().sum();
    let mut c = vec![e.clone(), &e * 3];
    for k in 1..=two_n - 3 {
        let next = &c[k] * 2 - &c[k - 1] - &prev[k - 1] * 4;
        c.push(next);
    }
    Ok(c)
}

fn margins_from_cols(cols: Vec<BigInt>) -> Margins {
    let total = cols.iter().sum();
    Margins {
        row_sums: cols.clone(),
        col_sums: cols,
        total,
    }
}

fn assign(mat: &mut JointMatrix, m: i64, k: i64, v: BigInt) -> Result<()> {
    let two_n = mat.two_n();
    if v.is_negative() {
        return Err(RecurrenceError::NegativeCell { two_n, m, k, value: v });
    }
    if let Some(Cell::Known(old)) = mat.cell(m, k) {
        if *old != v {
            return Err(RecurrenceError::Conflict {
                two_n,
                m,
                k,
                first: old.clone(),
                second: v,
            });
        }
        return Ok(());
    }
    mat.set(m, k, v);
    Ok(())
}

fn upper_cells(two_n: usize) -> impl Iterator<Item = (i64, i64)> {
    let top = two_n as i64;
    (2..top).flat_map(move |m| (m + 1..top).map(move |k| (m, k)))
}

fn prev_value(prev: &JointMatrix, m: i64, k: i64) -> Result<BigInt> {
    prev.get(m, k)
        .ok_or(RecurrenceError::MissingPredecessor(prev.two_n() + 2))
}

/// Upper triangle `2 <= m < k <= 2n-1` of `M_2n` from the previous level.
///
/// The border rows and columns come first, the rest is swept right to left
/// with (R2) and then recomputed top-down with (R1); both sweeps must agree.
/// The result carries the margins and leaves every lower cell unknown.
pub fn upper_triangle(two_n: usize, prev: Option<&JointMatrix>) -> Result<JointMatrix> {
    check_size(two_n)?;
    let mut mat = JointMatrix::unknown(two_n, Method::Recurrence)?;
    if two_n == 2 {
        mat.set_margins(margins_from_cols(column_sums(2, None)?));
        return Ok(mat);
    }
    let prev = prev.ok_or(RecurrenceError::MissingPredecessor(two_n))?;
    if prev.two_n() + 2 != two_n {
        return Err(RecurrenceError::MissingPredecessor(two_n));
    }
    let pm = prev
        .margins()
        .ok_or(RecurrenceError::MissingPredecessor(two_n))?;
    for (m, k) in upper_cells(two_n - 2) {
        prev_value(prev, m, k)?;
    }
    let top = two_n as i64;
    let pc = |k: i64| pm.col(k);

    for k in 3..top {
        assign(&mut mat, 2, k, pc(k - 2))?;
    }
    for k in 4..top {
        let v = mat.value(2, k)? * 3;
        assign(&mut mat, 3, k, v)?;
    }
    for m in 2..=top - 2 {
        assign(&mut mat, m, top - 1, pc(m - 1))?;
    }
    for m in 2..=top - 3 {
        let v = mat.value(m, top - 1)? * 3;
        assign(&mut mat, m, top - 2, v)?;
    }
    for m in 2..=top - 4 {
        for k in (m + 1..=top - 3).rev() {
            let v = mat.value(m, k + 1)? * 2 - mat.value(m, k + 2)? - prev_value(prev, m, k)? * 4;
            assign(&mut mat, m, k, v)?;
        }
    }
    for (m, k) in upper_cells(two_n) {
        if mat.get(m, k).is_none() {
            return Err(RecurrenceError::Uncovered { two_n, m, k });
        }
    }

    // top-down cross-check from the first two rows
    let mut alt = JointMatrix::unknown(two_n, Method::Recurrence)?;
    for k in 3..top {
        alt.set(2, k, mat.value(2, k)?);
        if k >= 4 {
            alt.set(3, k, mat.value(3, k)?);
        }
    }
    for k in 5..top {
        for m in 2..=k - 3 {
            let v = alt.value(m + 1, k)? * 2 - alt.value(m, k)? - prev_value(prev, m, k - 2)? * 4;
            let r2 = mat.value(m + 2, k)?;
            if v != r2 {
                return Err(RecurrenceError::FillOrderMismatch {
                    two_n,
                    m: m + 2,
                    k,
                    r1: v,
                    r2,
                });
            }
            alt.set(m + 2, k, v);
        }
    }

    mat.set_margins(margins_from_cols(column_sums(two_n, Some(&pm.col_sums))?));
    Ok(mat)
}

/// Adds the diagonal zeros, the first column, the bottom row, the corners and
/// the subdiagonal `f(k+1,k)` to an upper triangle.
pub fn lower_border(two_n: usize, upper: JointMatrix, ent: &EntringerTriangle) -> Result<JointMatrix> {
    check_size(two_n)?;
    let mut mat = upper;
    for (m, k) in upper_cells(two_n) {
        if mat.get(m, k).is_none() {
            return Err(RecurrenceError::MissingUpper { two_n, m, k });
        }
    }
    if two_n == 2 {
        let total = mat
            .margins()
            .map(|mg| mg.total.clone())
            .ok_or(RecurrenceError::MissingPredecessor(2))?;
        assign(&mut mat, 2, 1, total)?;
        return Ok(mat);
    }
    if ent.row(two_n - 2).is_none() {
        return Err(RecurrenceError::MissingPredecessor(two_n));
    }
    let top = two_n as i64;
    for d in 2..top {
        assign(&mut mat, d, d, BigInt::zero())?;
    }
    assign(&mut mat, 2, 1, BigInt::zero())?;
    assign(&mut mat, top, top - 1, BigInt::zero())?;
    for k in 3..top {
        let v = mat.value(2, k)?;
        assign(&mut mat, k, 1, v)?;
    }
    // f(2n,1) = f(2,2n), which lies outside the box
    assign(&mut mat, top, 1, BigInt::zero())?;
    for k in 2..=top - 2 {
        let v = ent.get(two_n - 2, k - 1).expect("row checked");
        assign(&mut mat, top, k, v)?;
    }
    let v = mat.value(3, 1)? * 2;
    assign(&mut mat, 3, 2, v)?;
    for k in 3..=top - 2 {
        let v = mat.value(k, k - 1)? + mat.value(k, k + 1)? - mat.value(k - 1, k)?;
        assign(&mut mat, k + 1, k, v)?;
    }
    Ok(mat)
}

/// The induction carrier: matrices `M_2 .. M_2n`, secant numbers and the
/// Entringer triangle they were built from.
#[derive(Debug, Clone)]
pub struct RecurrenceState {
    levels: Vec<JointMatrix>,
    secant: Vec<BigInt>,
    entringer: EntringerTriangle,
}

impl RecurrenceState {
    pub fn build(two_n_max: usize) -> Result<Self> {
        check_size(two_n_max)?;
        let entringer = entringer_triangle(two_n_max.max(2));
        let secant = secant_numbers(two_n_max / 2);
        let mut levels: Vec<JointMatrix> = Vec::new();
        for two_n in (2..=two_n_max).step_by(2) {
            let upper = upper_triangle(two_n, levels.last())?;
            levels.push(lower_border(two_n, upper, &entringer)?);
        }
        Ok(RecurrenceState {
            levels,
            secant,
            entringer,
        })
    }

    pub fn two_n_max(&self) -> usize {
        2 * self.levels.len()
    }

    pub fn matrix(&self, two_n: usize) -> Option<&JointMatrix> {
        if two_n == 0 || two_n % 2 == 1 {
            return None;
        }
        self.levels.get(two_n / 2 - 1)
    }

    /// `E_{2i}` at index `i`.
    pub fn secant(&self) -> &[BigInt] {
        &self.secant
    }

    pub fn entringer(&self) -> &EntringerTriangle {
        &self.entringer
    }

    pub fn into_matrix(mut self) -> JointMatrix {
        self.levels.pop().expect("at least M_2")
    }
}

/// Runs the induction up to `two_n`. With `fill_interior`, the cells no rule
/// reaches are copied from the brute-force oracle and the tag becomes hybrid.
pub fn assemble(two_n: usize, fill_interior: bool) -> Result<JointMatrix> {
    let mut mat = RecurrenceState::build(two_n)?.into_matrix();
    if fill_interior {
        let unknown = mat.unknown_cells();
        if !unknown.is_empty() {
            let brute = joint_matrix_bruteforce(two_n)?;
            for (m, k) in unknown {
                mat.set(m, k, brute.value(m, k)?);
            }
        }
        mat.set_method(Method::Hybrid);
    }
    Ok(mat)
}

fn in_up(two_n: usize, m: i64, k: i64) -> bool {
    let top = two_n as i64;
    m - 1 <= k || (m, k) == (3, 1) || (m, k) == (top, top - 2)
}

/// `f(2n+1-k, 2n+1-m) = f(m,k)` over `Up(2n)`.
pub fn check_symmetry(mat: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    let two_n = mat.two_n();
    let s = two_n as i64 + 1;
    let mut out = Vec::new();
    for (m, k) in mat.positions().filter(|&(m, k)| in_up(two_n, m, k)) {
        let (m2, k2) = (s - k, s - m);
        expect_eq(
            &mut out,
            "symmetry",
            two_n,
            || format!("f({m},{k}) vs f({m2},{k2})"),
            mat.value(m, k)?,
            mat.value(m2, k2)?,
        );
    }
    Ok(out)
}

/// Every known cell of `computed` equals the oracle.
pub fn compare_known(computed: &JointMatrix, oracle: &JointMatrix) -> Vec<Violation> {
    let two_n = computed.two_n();
    let mut out = Vec::new();
    for (m, k) in computed.positions() {
        if let Some(v) = computed.get(m, k) {
            let expected = oracle.get(m, k).map_or("unknown".to_string(), |e| e.to_string());
            if expected != v.to_string() {
                out.push(Violation::new("recurrence", two_n, format!("f({m},{k})"), expected, v));
            }
        }
    }
    out
}

fn same_level(mat: &JointMatrix, prev: &JointMatrix) -> std::result::Result<(), DistError> {
    if prev.two_n() + 2 != mat.two_n() {
        return Err(DistError::TooSmall(prev.two_n()));
    }
    Ok(())
}

/// (R1): `Δ_m² f_2n(m,k) + 4 f_{2n-2}(m,k-2) = 0`, `2 <= m <= k-3`, `k <= 2n-1`.
pub fn check_r1(mat: &JointMatrix, prev: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    same_level(mat, prev)?;
    let two_n = mat.two_n();
    let mut out = Vec::new();
    for k in 5..two_n as i64 {
        for m in 2..=k - 3 {
            let lhs = delta_m2(mat, m, k)? + prev.value(m, k - 2)? * 4;
            expect_eq(&mut out, "r1", two_n, || format!("(m,k)=({m},{k})"), BigInt::zero(), lhs);
        }
    }
    Ok(out)
}

/// (R2): `Δ_k² f_2n(m,k) + 4 f_{2n-2}(m,k) = 0`, `2 <= m <= k-1`, `k <= 2n-3`.
pub fn check_r2(mat: &JointMatrix, prev: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    same_level(mat, prev)?;
    let two_n = mat.two_n();
    let mut out = Vec::new();
    for k in 3..=two_n as i64 - 3 {
        for m in 2..k {
            let lhs = delta_k2(mat, m, k)? + prev.value(m, k)? * 4;
            expect_eq(&mut out, "r2", two_n, || format!("(m,k)=({m},{k})"), BigInt::zero(), lhs);
        }
    }
    Ok(out)
}

/// (R3) on row sums, `2 <= m <= 2n-2`.
pub fn check_r3(mat: &JointMatrix, prev: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    same_level(mat, prev)?;
    let two_n = mat.two_n();
    let (cur, old) = (mat.marginals()?, prev.marginals()?);
    let mut out = Vec::new();
    for m in 2..=two_n as i64 - 2 {
        let lhs = cur.row(m + 2) - cur.row(m + 1) * 2 + cur.row(m) + old.row(m) * 4;
        expect_eq(&mut out, "r3", two_n, || format!("m={m}"), BigInt::zero(), lhs);
    }
    Ok(out)
}

/// (R4) on column sums, `1 <= k <= 2n-3`.
pub fn check_r4(mat: &JointMatrix, prev: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    same_level(mat, prev)?;
    let two_n = mat.two_n();
    let (cur, old) = (mat.marginals()?, prev.marginals()?);
    let mut out = Vec::new();
    for k in 1..=two_n as i64 - 3 {
        let lhs = cur.col(k + 2) - cur.col(k + 1) * 2 + cur.col(k) + old.col(k) * 4;
        expect_eq(&mut out, "r4", two_n, || format!("k={k}"), BigInt::zero(), lhs);
    }
    Ok(out)
}

/// Total equals `secant` and `f(.,k-1) = f(k,.)` for `2 <= k <= 2n`.
pub fn check_marginal(mat: &JointMatrix, secant: &BigInt) -> std::result::Result<Vec<Violation>, DistError> {
    let two_n = mat.two_n();
    let mg = mat.marginals()?;
    let mut out = Vec::new();
    expect_eq(&mut out, "marginal", two_n, || "total".into(), secant.clone(), mg.total.clone());
    for k in 2..=two_n as i64 {
        expect_eq(
            &mut out,
            "marginal",
            two_n,
            || format!("f(.,{}) vs f({k},.)", k - 1),
            mg.col(k - 1),
            mg.row(k),
        );
    }
    Ok(out)
}

/// The four top-row and right-column identities plus the first two column sums.
pub fn check_borders(mat: &JointMatrix, prev: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    same_level(mat, prev)?;
    let two_n = mat.two_n();
    let top = two_n as i64;
    let old = prev.marginals()?;
    let cur = mat.marginals()?;
    let mut out = Vec::new();
    for k in 3..top {
        expect_eq(&mut out, "first-row", two_n, || format!("f(2,{k})"), old.col(k - 2), mat.value(2, k)?);
        expect_eq(&mut out, "first-row", two_n, || format!("f(2,{k}) by row sum"), old.row(k - 1), mat.value(2, k)?);
    }
    for k in 4..top {
        expect_eq(&mut out, "second-row", two_n, || format!("f(3,{k})"), mat.value(2, k)? * 3, mat.value(3, k)?);
    }
    for m in 2..=top - 2 {
        expect_eq(&mut out, "right-col", two_n, || format!("f({m},{})", top - 1), old.row(m), mat.value(m, top - 1)?);
        expect_eq(&mut out, "right-col", two_n, || format!("f({m},{}) by col sum", top - 1), old.col(m - 1), mat.value(m, top - 1)?);
    }
    for m in 2..=top - 3 {
        expect_eq(
            &mut out,
            "next-right-col",
            two_n,
            || format!("f({m},{})", top - 2),
            mat.value(m, top - 1)? * 3,
            mat.value(m, top - 2)?,
        );
    }
    expect_eq(&mut out, "col-sum-1", two_n, || "f(.,1)".into(), old.total.clone(), cur.col(1));
    expect_eq(&mut out, "col-sum-2", two_n, || "f(.,2)".into(), old.total.clone() * 3, cur.col(2));
    Ok(out)
}

/// First column, bottom row, corners, and the subdiagonal relations.
///
/// `ent` must hold row `2n-2`; `secant_2n_4` is `E_{2n-4}`.
pub fn check_lower_border(
    mat: &JointMatrix,
    prev: &JointMatrix,
    ent: &EntringerTriangle,
    secant_2n_4: &BigInt,
) -> std::result::Result<Vec<Violation>, DistError> {
    same_level(mat, prev)?;
    let two_n = mat.two_n();
    let top = two_n as i64;
    let old = prev.marginals()?;
    let mut out = Vec::new();
    for k in 3..top {
        let f2k = mat.value(2, k)?;
        expect_eq(&mut out, "first-col", two_n, || format!("f(2,{k}) vs f({},{})", k - 1, top - 1), f2k.clone(), mat.value(k - 1, top - 1)?);
        expect_eq(&mut out, "first-col", two_n, || format!("f(2,{k}) vs f({k},1)"), f2k, mat.value(k, 1)?);
        expect_eq(&mut out, "first-col", two_n, || format!("f({k},1) by row sum"), old.row(k - 1), mat.value(k, 1)?);
    }
    let row = ent.row(two_n - 2).ok_or(DistError::TooSmall(two_n))?;
    for k in 2..=top - 2 {
        expect_eq(&mut out, "bottom-row", two_n, || format!("f({top},{k})"), row[(k - 2) as usize].clone(), mat.value(top, k)?);
    }
    expect_eq(&mut out, "corners", two_n, || "f(2,1)".into(), BigInt::zero(), mat.value(2, 1)?);
    expect_eq(&mut out, "corners", two_n, || format!("f({top},{})", top - 1), BigInt::zero(), mat.value(top, top - 1)?);
    let f31 = mat.value(3, 1)?;
    let f32 = mat.value(3, 2)?;
    expect_eq(&mut out, "subdiag-ends", two_n, || "f(3,2) vs 2f(3,1)".into(), f31.clone() * 2, f32.clone());
    expect_eq(&mut out, "subdiag-ends", two_n, || format!("f(3,2) vs f({},{})", top - 1, top - 2), f32.clone(), mat.value(top - 1, top - 2)?);
    expect_eq(&mut out, "subdiag-ends", two_n, || format!("f(3,2) vs 2f({top},{})", top - 2), f32, mat.value(top, top - 2)? * 2);
    expect_eq(&mut out, "subdiag-ends", two_n, || "f(3,1) vs E_{2n-4}".into(), secant_2n_4.clone(), f31);
    out.extend(check_crossing(mat)?);
    Ok(out)
}

/// `f(k-1,k) + f(k+1,k) = f(k,k-1) + f(k,k+1)` for `3 <= k <= 2n-2`.
pub fn check_crossing(mat: &JointMatrix) -> std::result::Result<Vec<Violation>, DistError> {
    let two_n = mat.two_n();
    let mut out = Vec::new();
    for k in 3..=two_n as i64 - 2 {
        expect_eq(
            &mut out,
            "crossing",
            two_n,
            || format!("k={k}"),
            mat.value(k, k - 1)? + mat.value(k, k + 1)?,
            mat.value(k - 1, k)? + mat.value(k + 1, k)?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn entringer_rows() {
        let t = entringer_triangle(8);
        assert_eq!(t.row(2).unwrap(), big(&[1]).as_slice());
        assert_eq!(t.row(7).unwrap(), big(&[61, 61, 56, 46, 32, 16]).as_slice());
        assert_eq!(t.row(8).unwrap(), big(&[272, 272, 256, 224, 178, 122, 61]).as_slice());
        assert!(entringer_triangle(1).row(2).is_none());
    }

    #[test]
    fn secants() {
        assert_eq!(secant_numbers(6), big(&[1, 1, 5, 61, 1385, 50521, 2702765]));
        assert_eq!(secant_numbers(0), big(&[1]));
    }

    #[test]
    fn column_sums_m10() {
        let mut prev = column_sums(2, None).unwrap();
        for two_n in [4, 6, 8, 10] {
            prev = column_sums(two_n, Some(&prev)).unwrap();
        }
        assert_eq!(prev, big(&[1385, 4155, 6681, 8475, 9129, 8475, 6681, 4155, 1385]));
        assert_eq!(column_sums(4, None), Err(RecurrenceError::MissingPredecessor(4)));
    }

    #[test]
    fn m8_cells() {
        let m = assemble(8, false).unwrap();
        assert_eq!(m.get(4, 5), Some(101.into()));
        assert_eq!(m.get(2, 5), Some(21.into()));
        assert_eq!(m.get(4, 3), Some(50.into()));
        assert_eq!(m.get(8, 4), Some(14.into()));
        assert_eq!(m.get(3, 2), Some(10.into()));
        assert_eq!(m.unknown_cells().len(), 10);
        assert!(m.unknown_cells().iter().all(|&(mm, k)| mm > k + 1 && k > 1 && mm < 8));
    }

    #[test]
    fn small_levels_fully_known() {
        let m2 = assemble(2, false).unwrap();
        assert_eq!(m2.get(2, 1), Some(BigInt::one()));
        let m4 = assemble(4, false).unwrap();
        assert!(m4.is_fully_known());
        assert_eq!(m4, {
            let mut b = joint_matrix_bruteforce(4).unwrap();
            b.set_method(Method::Recurrence);
            b.set_margins(m4.margins().unwrap().clone());
            b
        });
        assert_eq!(assemble(7, false).unwrap_err(), RecurrenceError::Dist(DistError::OddSize(7)));
    }

    #[test]
    fn fill_matches_brute() {
        let filled = assemble(8, true).unwrap();
        assert_eq!(filled.method(), Method::Hybrid);
        let brute = joint_matrix_bruteforce(8).unwrap();
        for (m, k) in brute.positions() {
            assert_eq!(filled.get(m, k), brute.get(m, k));
        }
    }

    #[test]
    fn upper_needs_predecessor() {
        assert_eq!(upper_triangle(6, None).unwrap_err(), RecurrenceError::MissingPredecessor(6));
        let m2 = assemble(2, false).unwrap();
        assert_eq!(upper_triangle(6, Some(&m2)).unwrap_err(), RecurrenceError::MissingPredecessor(6));
    }

    #[test]
    fn lower_border_needs_upper() {
        let ent = entringer_triangle(6);
        let blank = JointMatrix::unknown(8, Method::Recurrence).unwrap();
        assert!(matches!(
            lower_border(8, blank, &ent),
            Err(RecurrenceError::MissingUpper { two_n: 8, .. })
        ));
    }

    #[test]
    fn tampered_predecessor_goes_negative_or_conflicts() {
        let mut m6 = assemble(6, false).unwrap();
        m6.set(2, 3, BigInt::from(1000));
        assert!(upper_triangle(8, Some(&m6)).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let m8 = joint_matrix_bruteforce(8).unwrap();
        assert!(check_symmetry(&m8).unwrap().is_empty());
        assert!(check_symmetry(&joint_matrix_bruteforce(2).unwrap()).unwrap().is_empty());
        let mut bad = m8.clone();
        bad.set(2, 5, 22.into());
        let v = check_symmetry(&bad).unwrap();
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.check == "symmetry"));
        // Up(2n) only touches the upper triangle and the lower border
        let partial = assemble(8, false).unwrap();
        assert!(check_symmetry(&partial).unwrap().is_empty());
        let blank = JointMatrix::unknown(8, Method::Recurrence).unwrap();
        assert!(matches!(check_symmetry(&blank), Err(DistError::UnknownCells { .. })));
    }

    #[test]
    fn identities_on_small_brute_matrices() {
        let secant = secant_numbers(4);
        let ent = entringer_triangle(8);
        let mats: Vec<_> = (1..=4).map(|n| joint_matrix_bruteforce(2 * n).unwrap()).collect();
        for w in mats.windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            let n = cur.two_n() / 2;
            assert!(check_r1(cur, prev).unwrap().is_empty());
            assert!(check_r2(cur, prev).unwrap().is_empty());
            assert!(check_r3(cur, prev).unwrap().is_empty());
            assert!(check_r4(cur, prev).unwrap().is_empty());
            assert!(check_marginal(cur, &secant[n]).unwrap().is_empty());
            assert!(check_borders(cur, prev).unwrap().is_empty());
            assert!(check_lower_border(cur, prev, &ent, &secant[n - 2]).unwrap().is_empty());
            assert!(compare_known(&assemble(cur.two_n(), false).unwrap(), cur).is_empty());
        }
    }

    #[test]
    fn r2_detects_a_corrupted_cell() {
        let prev = joint_matrix_bruteforce(6).unwrap();
        let mut cur = joint_matrix_bruteforce(8).unwrap();
        cur.set(4, 5, 100.into());
        assert!(!check_r2(&cur, &prev).unwrap().is_empty());
        assert!(!check_r1(&cur, &prev).unwrap().is_empty());
    }
}
