//! Reference values: the matrices `M_2 .. M_10` with their margins,
//! the Entringer rows 2 to 7, and the secant numbers.

use num_bigint::BigInt;

use crate::distributions::{EntringerTriangle, JointMatrix, Margins, Method};

/// One reference matrix: rows `m = 2..=2n` of cells `k = 1..=2n-1`, then the
/// expected row sums, column sums and total.
pub struct GoldenMatrix {
    pub two_n: usize,
    pub rows: &'static [&'static [u64]],
    pub row_sums: &'static [u64],
    pub col_sums: &'static [u64],
    pub total: u64,
}

pub const M2: GoldenMatrix = GoldenMatrix {
    two_n: 2,
    rows: &[&[1]],
    row_sums: &[1],
    col_sums: &[1],
    total: 1,
};

pub const M4: GoldenMatrix = GoldenMatrix {
    two_n: 4,
    rows: &[&[0, 0, 1], &[1, 2, 0], &[0, 1, 0]],
    row_sums: &[1, 3, 1],
    col_sums: &[1, 3, 1],
    total: 5,
};

pub const M6: GoldenMatrix = GoldenMatrix {
    two_n: 6,
    rows: &[
        &[0, 0, 1, 3, 1],
        &[1, 2, 0, 9, 3],
        &[3, 7, 10, 0, 1],
        &[1, 4, 8, 2, 0],
        &[0, 2, 2, 1, 0],
    ],
    row_sums: &[5, 15, 21, 15, 5],
    col_sums: &[5, 15, 21, 15, 5],
    total: 61,
};

pub const M8: GoldenMatrix = GoldenMatrix {
    two_n: 8,
    rows: &[
        &[0, 0, 5, 15, 21, 15, 5],
        &[5, 10, 0, 45, 63, 45, 15],
        &[15, 35, 50, 0, 101, 63, 21],
        &[21, 54, 86, 106, 0, 45, 15],
        &[15, 46, 82, 87, 50, 0, 5],
        &[5, 22, 46, 60, 40, 10, 0],
        &[0, 16, 16, 14, 10, 5, 0],
    ],
    row_sums: &[61, 183, 285, 327, 285, 183, 61],
    col_sums: &[61, 183, 285, 327, 285, 183, 61],
    total: 1385,
};

pub const M10: GoldenMatrix = GoldenMatrix {
    two_n: 10,
    rows: &[
        &[0, 0, 61, 183, 285, 327, 285, 183, 61],
        &[61, 122, 0, 549, 855, 981, 855, 549, 183],
        &[183, 427, 610, 0, 1405, 1575, 1341, 855, 285],
        &[285, 720, 1132, 1466, 0, 1989, 1575, 981, 327],
        &[327, 884, 1460, 1863, 2050, 0, 1405, 855, 285],
        &[285, 836, 1448, 1838, 1870, 1466, 0, 549, 183],
        &[183, 606, 1110, 1466, 1490, 1155, 610, 0, 61],
        &[61, 288, 588, 854, 950, 804, 488, 122, 0],
        &[0, 272, 272, 256, 224, 178, 122, 61, 0],
    ],
    row_sums: &[1385, 4155, 6681, 8475, 9129, 8475, 6681, 4155, 1385],
    col_sums: &[1385, 4155, 6681, 8475, 9129, 8475, 6681, 4155, 1385],
    total: 50521,
};

pub const MATRICES: [&GoldenMatrix; 5] = [&M2, &M4, &M6, &M8, &M10];

/// Cells of `M_8` the recurrence derives in closed form: the upper triangle, the
/// first column from `m = 3`, the bottom row from `k = 2` to `6`, and the
/// subdiagonal `f(k+1,k)` for `k = 2..=6`.
pub fn m8_analytic_cells() -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for m in 2..=6 {
        for k in m + 1..=7 {
            v.push((m, k));
        }
    }
    v.extend((3..=7).map(|m| (m, 1)));
    v.extend((2..=6).map(|k| (8, k)));
    v.extend((2..=6).map(|k| (k + 1, k)));
    v.sort();
    v.dedup();
    v
}

/// Entringer rows `n = 2..=7`.
pub const ENTRINGER: [&[u64]; 6] = [
    &[1],
    &[1, 1],
    &[2, 2, 1],
    &[5, 5, 4, 2],
    &[16, 16, 14, 10, 5],
    &[61, 61, 56, 46, 32, 16],
];

/// `E_0, E_2, ..., E_10`.
pub const SECANT: [u64; 6] = [1, 1, 5, 61, 1385, 50521];

/// Coefficients of `u^n / n!` in `sec u + tan u` for `n = 0..=10`.
pub const TREE_COUNTS: [u64; 11] = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];

impl GoldenMatrix {
    pub fn to_matrix(&self) -> JointMatrix {
        JointMatrix::from_rows(
            self.two_n,
            &self.rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
            Method::Brute,
        )
        .expect("even size")
    }

    pub fn margins(&self) -> Margins {
        let big = |v: &[u64]| v.iter().map(|&x| BigInt::from(x)).collect();
        Margins {
            row_sums: big(self.row_sums),
            col_sums: big(self.col_sums),
            total: self.total.into(),
        }
    }

    pub fn get(&self, m: usize, k: usize) -> u64 {
        self.rows[m - 2][k - 1]
    }
}

pub fn golden(two_n: usize) -> Option<&'static GoldenMatrix> {
    MATRICES.iter().copied().find(|g| g.two_n == two_n)
}

pub fn entringer() -> EntringerTriangle {
    EntringerTriangle::from_rows(
        ENTRINGER
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}
