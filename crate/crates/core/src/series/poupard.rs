//! Poupard grids `g_{i,j}`, the slicing of upper triangles into `Ω^(p)`,
//! and the checks tying grids to their exponential generating functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{factorial, Result, SeriesError, TriSeries};
use crate::distributions::JointMatrix;
use crate::report::{expect_eq, Violation};

/// Integer grid on the triangle `i + j <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoupardGrid {
    bound: usize,
    rows: Vec<Vec<BigInt>>,
}

impl PoupardGrid {
    pub fn zeros(bound: usize) -> Self {
        Self::from_fn(bound, |_, _| BigInt::zero())
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let rows = (0..=bound)
            .map(|i| (0..=bound - i).map(|j| f(i, j)).collect())
            .collect();
        PoupardGrid { bound, rows }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.rows.get(i).and_then(|r| r.get(j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> Option<&[BigInt]> {
        self.rows.get(i).map(Vec::as_slice)
    }
}

/// The grid `ω^(p)_{i,j}` read from consecutive matrices `mats = [M_2, M_4, ...]`.
///
/// The bound is `2N - p - 3` where `M_2N` is the last matrix.
pub fn omega_grid(p: usize, mats: &[JointMatrix]) -> Result<PoupardGrid> {
    if p == 0 {
        return Err(SeriesError::Grid("p >= 1".into()));
    }
    for (idx, m) in mats.iter().enumerate() {
        if m.two_n() != 2 * (idx + 1) {
            return Err(SeriesError::Grid("matrices M_2, M_4, ... in order".into()));
        }
    }
    let top = 2 * mats.len();
    let bound = top
        .checked_sub(p + 3)
        .ok_or_else(|| SeriesError::Grid(format!("more matrices for p={p}")))?;
    let mut err = None;
    let grid = PoupardGrid::from_fn(bound, |i, j| {
        if (i + j) % 2 == p % 2 {
            return BigInt::zero();
        }
        let two_n = p + i + j + 3;
        let (m, k) = (p as i64 + 1, (p + j + 2) as i64);
        mats[two_n / 2 - 1].value(m, k).unwrap_or_else(|e| {
            err.get_or_insert(e);
            BigInt::zero()
        })
    });
    match err {
        Some(e) => Err(SeriesError::Grid(e.to_string())),
        None => Ok(grid),
    }
}

/// `G(x,y) = sum g_{i,j} x^i/i! y^j/j!`, truncated at the grid bound.
pub fn grid_to_series(grid: &PoupardGrid) -> TriSeries {
    let terms = grid.rows.iter().enumerate().flat_map(|(i, row)| {
        row.iter().enumerate().map(move |(j, g)| {
            let den = factorial(i as u32) * factorial(j as u32);
            (vec![i as u32, j as u32], BigRational::new(g.clone(), den))
        })
    });
    TriSeries::from_terms(2, grid.bound as u32, terms).expect("two exponents per term")
}

/// Exponential coefficients of `series` against the grid, on the common triangle.
pub fn compare_grid(series: &TriSeries, grid: &PoupardGrid, check: &str) -> Result<Vec<Violation>> {
    let bound = grid.bound.min(series.order() as usize);
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound - i {
            let c = series.egf_coefficient(&[i as u32, j as u32])?;
            let g = BigRational::from_integer(grid.rows[i][j].clone());
            expect_eq(&mut out, check, i + j, || format!("(i,j)=({i},{j})"), g, c);
        }
    }
    Ok(out)
}

/// `g_{i,j+2} - 2 g_{i+1,j+1} + g_{i+2,j} + 4 g_{i,j} = 0` wherever the grid reaches.
///
/// Violations report `i + j + 2` in the `two_n` slot.
pub fn poupard_check(grid: &PoupardGrid) -> Vec<Violation> {
    let mut out = Vec::new();
    let g = |i: usize, j: usize| &grid.rows[i][j];
    for i in 0..=grid.bound.saturating_sub(2) {
        for j in 0..=(grid.bound.saturating_sub(2 + i)) {
            if i + j + 2 > grid.bound {
                continue;
            }
            let lhs = g(i, j + 2) - g(i + 1, j + 1) * 2 + g(i + 2, j) + g(i, j) * 4;
            expect_eq(&mut out, "poupard", i + j + 2, || format!("(i,j)=({i},{j})"), BigInt::zero(), lhs);
        }
    }
    out
}

/// `G_xx - 2 G_xy + G_yy + 4 G`, truncated to order `order - 2`; zero for a solution.
pub fn pde_check(g: &TriSeries) -> Result<TriSeries> {
    if g.nvars() != 2 {
        return Err(SeriesError::VarMismatch {
            left: g.nvars(),
            right: 2,
        });
    }
    if g.order() < 2 {
        return Err(SeriesError::OutOfOrder {
            degree: 2,
            order: g.order(),
        });
    }
    let gx = g.partial_derivative(0)?;
    let gy = g.partial_derivative(1)?;
    let gxx = gx.partial_derivative(0)?;
    let gxy = gx.partial_derivative(1)?;
    let gyy = gy.partial_derivative(1)?;
    let res = &(&(&gxx - &gxy.scale_int(2)) + &gyy) + &g.scale_int(4);
    Ok(res)
}

/// Largest coefficient in absolute value, if any.
pub fn max_abs_coefficient(s: &TriSeries) -> Option<(Vec<u32>, BigRational)> {
    s.max_abs()
}

/// Row `i` as a series in `y`: `R_i(y) = sum_j g_{i,j} y^j/j!`.
pub fn row_series(g: &TriSeries, i: usize) -> Result<TriSeries> {
    if g.nvars() != 2 {
        return Err(SeriesError::VarMismatch {
            left: g.nvars(),
            right: 2,
        });
    }
    let i = i as u32;
    if i > g.order() {
        return Err(SeriesError::OutOfOrder {
            degree: i,
            order: g.order(),
        });
    }
    let scale = BigRational::from_integer(factorial(i));
    let terms = g
        .terms()
        .into_iter()
        .filter(|(e, _)| e[0] == i)
        .map(|(e, c)| (vec![e[1]], c * &scale));
    TriSeries::from_terms(1, g.order() - i, terms)
}

/// Rebuilds `G` as `A(x+y) cos 2x + B(x+y) sin 2x` with `A(y) = G(0,y)`
/// and `B(y) = (G_x(0,y) - A'(y)) / 2`, and insists on agreement.
pub fn reconstruct_from_rows(g: &TriSeries) -> Result<TriSeries> {
    if g.nvars() != 2 {
        return Err(SeriesError::VarMismatch {
            left: g.nvars(),
            right: 2,
        });
    }
    let order = g.order();
    if order < 1 {
        return Err(SeriesError::OutOfOrder { degree: 1, order });
    }
    let a = g.univariate(1)?;
    let gx0 = g.partial_derivative(0)?.univariate(1)?;
    let b = (&gx0 - &a.partial_derivative(0)?).scale(&BigRational::new(1.into(), 2.into()));
    let cos2x = TriSeries::cos_linear(&[2, 0], order)?;
    let sinc = TriSeries::sin_linear(&[2, 0], order)?.div_var(0)?;
    let rebuilt = &(&cos2x * &a.compose_linear(&[1, 1])?)
        + &(&sinc * &b.compose_linear(&[1, 1])?).mul_var(0)?;
    for e in super::monomials(2, order) {
        let (want, got) = (g.coeff(&e[..2])?, rebuilt.coeff(&e[..2])?);
        if want != got {
            return Err(SeriesError::NotAPoupardSolution {
                exponents: e[..2].to_vec(),
                expected: want.to_string(),
                actual: got.to_string(),
            });
        }
    }
    Ok(rebuilt)
}

/// Row identities between slices: row 0 of `Ω^(p+1)` is row `p` of `Ω^(1)`,
/// and row 1 of `Ω^(p)` is `3 d/dy` of its row 0.
///
/// `grids[q]` is `Ω^(q+1)`; every identity the grids reach is checked.
pub fn row_identity_check(grids: &[PoupardGrid]) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let series: Vec<TriSeries> = grids.iter().map(grid_to_series).collect();
    let Some(first) = series.first() else {
        return Ok(out);
    };
    for p in 1..series.len() {
        if p > first.order() as usize {
            break;
        }
        let lhs = row_series(&series[p], 0)?;
        let rhs = row_series(first, p)?;
        for d in 0..=lhs.order().min(rhs.order()) {
            expect_eq(&mut out, "row-shift", p + 1, || format!("y^{d}"), rhs.coeff(&[d])?, lhs.coeff(&[d])?);
        }
    }
    for (q, s) in series.iter().enumerate() {
        if s.order() < 1 {
            continue;
        }
        let row1 = row_series(s, 1)?;
        let d0 = row_series(s, 0)?.partial_derivative(0)?.scale_int(3);
        for d in 0..=row1.order().min(d0.order()) {
            expect_eq(&mut out, "row-derivative", q + 1, || format!("y^{d}"), d0.coeff(&[d])?, row1.coeff(&[d])?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::joint_matrix_bruteforce;
    use crate::series::{omega1, omega_p};

    fn mats(two_n_max: usize) -> Vec<JointMatrix> {
        (1..=two_n_max / 2)
            .map(|n| joint_matrix_bruteforce(2 * n).unwrap())
            .collect()
    }

    #[test]
    fn omega1_grid_display() {
        let g = omega_grid(1, &mats(10)).unwrap();
        assert_eq!(g.bound(), 6);
        let row0: Vec<i64> = [1, 0, 1, 0, 5, 0, 61].to_vec();
        assert_eq!(g.row(0).unwrap(), row0.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        assert_eq!(g.get(1, 1), Some(&BigInt::from(3)));
        assert_eq!(g.get(3, 3), Some(&BigInt::from(327)));
        // 1 - 2*3 + 1 + 4*1 = 0
        assert!(poupard_check(&g).is_empty());
    }

    #[test]
    fn zero_grid_is_poupard() {
        assert!(poupard_check(&PoupardGrid::zeros(6)).is_empty());
    }

    #[test]
    fn corrupted_grid_is_not() {
        let mut g = omega_grid(2, &mats(10)).unwrap();
        g.set(0, 1, 4.into());
        assert!(!poupard_check(&g).is_empty());
    }

    #[test]
    fn slice_grids_are_poupard_and_match_series() {
        let ms = mats(10);
        for p in 1..=4 {
            let g = omega_grid(p, &ms).unwrap();
            assert!(poupard_check(&g).is_empty(), "p={p}");
            let s = omega_p(p as u32, g.bound() as u32).unwrap();
            assert!(compare_grid(&s, &g, "gf").unwrap().is_empty(), "p={p}");
        }
    }

    #[test]
    fn pde_examples() {
        assert!(pde_check(&omega1(10)).unwrap().is_zero());
        let g = &TriSeries::cos_linear(&[1, 1], 8).unwrap() * &TriSeries::cos_linear(&[0, 2], 8).unwrap();
        assert!(pde_check(&g).unwrap().is_zero());
        let x = TriSeries::variable(2, 0, 4).unwrap();
        let r = pde_check(&x).unwrap();
        assert_eq!(max_abs_coefficient(&r), Some((vec![1, 0], BigRational::from_integer(4.into()))));
    }

    #[test]
    fn reconstruction() {
        let w = omega1(8);
        assert_eq!(reconstruct_from_rows(&w).unwrap(), w);
        let g = grid_to_series(&omega_grid(3, &mats(10)).unwrap());
        assert_eq!(reconstruct_from_rows(&g).unwrap(), g);
        let zero = TriSeries::zero(2, 5);
        assert!(reconstruct_from_rows(&zero).unwrap().is_zero());
        let bad = TriSeries::variable(2, 0, 3).unwrap().pow(2);
        assert!(matches!(
            reconstruct_from_rows(&bad),
            Err(SeriesError::NotAPoupardSolution { .. })
        ));
    }

    #[test]
    fn row_identities() {
        let ms = mats(10);
        let grids: Vec<_> = (1..=4).map(|p| omega_grid(p, &ms).unwrap()).collect();
        assert!(row_identity_check(&grids).unwrap().is_empty());
        let mut broken = grids.clone();
        broken[1].set(1, 0, 7.into());
        assert!(!row_identity_check(&broken).unwrap().is_empty());
    }

    #[test]
    fn needs_enough_matrices() {
        assert!(omega_grid(4, &mats(4)).is_err());
    }
}
