//! Closed-form generating functions for the upper triangles.

use super::{poupard::row_series, Result, TriSeries};

/// `sec u` as a univariate series.
pub fn sec(order: u32) -> TriSeries {
    TriSeries::cos_linear(&[1], order)
        .and_then(|c| c.invert())
        .expect("cos has constant term 1")
}

/// `Ω^(1)(x,y) = cos(x-y) / cos²(x+y)`.
pub fn omega1(order: u32) -> TriSeries {
    let num = TriSeries::cos_linear(&[1, -1], order).expect("two variables");
    let inv = TriSeries::cos_linear(&[1, 1], order)
        .and_then(|c| c.invert())
        .expect("cos has constant term 1");
    &num * &(&inv * &inv)
}

/// `Ω(x,y,z) = (cos 2y + 2 cos 2(x-z) - cos 2(z+x)) / (2 cos³(x+y+z))`.
pub fn omega(order: u32) -> TriSeries {
    let lin = |f: &[i64]| TriSeries::cos_linear(f, order).expect("three variables");
    let num = &(&lin(&[0, 2, 0]) + &lin(&[2, 0, -2]).scale_int(2)) - &lin(&[2, 0, 2]);
    let den = lin(&[1, 1, 1]).pow(3).scale_int(2);
    &num * &den.invert().expect("constant term 2")
}

/// `Ω^(p)(x,y) = cos 2x · R(x+y) + sin 2x · R'(x+y)` where `R` is row `p-1` of `Ω^(1)`.
pub fn omega_p(p: u32, order: u32) -> Result<TriSeries> {
    assert!(p >= 1, "p starts at 1");
    let row = row_series(&omega1(order + p - 1), p as usize - 1)?;
    let a = row.compose_linear(&[1, 1])?;
    let b = row.partial_derivative(0)?.compose_linear(&[1, 1])?;
    let cos2x = TriSeries::cos_linear(&[2, 0], order)?;
    // sin 2x = x · (sin 2x / x) keeps the order when B is one degree short
    let sinc = TriSeries::sin_linear(&[2, 0], order)?.div_var(0)?;
    let tail = (&sinc * &b).mul_var(0)?;
    Ok(&(&cos2x * &a) + &tail)
}

/// Exponents `(2n-k-1, k-m-1, m-2)` of `f_2n(m,k)` in [`omega`], for upper cells.
pub fn omega_exponents(two_n: usize, m: usize, k: usize) -> Option<[u32; 3]> {
    (2 <= m && m < k && k < two_n).then(|| [(two_n - k - 1) as u32, (k - m - 1) as u32, (m - 2) as u32])
}
