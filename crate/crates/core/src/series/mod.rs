//! Exact truncated power series in one to three variables over `BigRational`.
//!
//! Truncation is by total degree. Stored coefficients are plain Taylor
//! coefficients; exponential normalization happens in [`TriSeries::egf_coefficient`].

mod gf;
mod poupard;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gf::{omega, omega1, omega_exponents, omega_p, sec};
pub use poupard::{
    compare_grid, grid_to_series, max_abs_coefficient, omega_grid, pde_check, poupard_check,
    row_identity_check, reconstruct_from_rows, row_series, PoupardGrid,
};

pub type Exponents = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series in {left} and {right} variables cannot be combined")]
    VarMismatch { left: usize, right: usize },
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("degree {degree} exceeds the truncation order {order}")]
    OutOfOrder { degree: u32, order: u32 },
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("series has a term not divisible by variable {0}")]
    NotDivisible(usize),
    #[error("reconstruction differs at {exponents:?}: series has {expected}, rebuilt {actual}")]
    NotAPoupardSolution {
        exponents: Vec<u32>,
        expected: String,
        actual: String,
    },
    #[error("grid needs {0}")]
    Grid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, SeriesError>;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn degree(e: &Exponents) -> u32 {
    e.iter().sum()
}

/// Every exponent tuple of total degree `<= order` in graded lexicographic order.
pub fn monomials(nvars: usize, order: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..=order {
        monomials_of_degree(nvars, d, &mut out);
    }
    out
}

fn monomials_of_degree(nvars: usize, d: u32, out: &mut Vec<Exponents>) {
    match nvars {
        1 => out.push([d, 0, 0]),
        2 => out.extend((0..=d).rev().map(|a| [a, d - a, 0])),
        _ => {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push([a, b, d - a - b]);
                }
            }
        }
    }
    // graded, then lexicographic ascending
    let start = out.len() - monomials_count(nvars, d);
    out[start..].sort();
}

fn monomials_count(nvars: usize, d: u32) -> usize {
    let d = d as usize;
    match nvars {
        1 => 1,
        2 => d + 1,
        _ => (d + 1) * (d + 2) / 2,
    }
}

fn graded_key(e: &Exponents) -> (u32, Exponents) {
    (degree(e), *e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSeries {
    nvars: usize,
    order: u32,
    coeffs: BTreeMap<Exponents, BigRational>,
}

impl TriSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        assert!((1..=3).contains(&nvars), "1 to 3 variables, got {nvars}");
        TriSeries {
            nvars,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: BigRational) -> Self {
        let mut s = Self::zero(nvars, order);
        s.put([0; 3], c);
        s
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, BigRational::one())
    }

    /// The monomial `x_var`.
    pub fn variable(nvars: usize, var: usize, order: u32) -> Result<Self> {
        if var >= nvars {
            return Err(SeriesError::BadVariable(var));
        }
        let mut s = Self::zero(nvars, order);
        let mut e = [0; 3];
        e[var] = 1;
        s.put(e, BigRational::one());
        Ok(s)
    }

    /// Terms above the order are dropped.
    pub fn from_terms<I>(nvars: usize, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut s = Self::zero(nvars, order);
        for (exps, c) in terms {
            let e = s.exponents(&exps)?;
            if degree(&e) <= order {
                let sum = s.coeff_of(&e) + c;
                s.put(e, sum);
            }
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn exponents(&self, exps: &[u32]) -> Result<Exponents> {
        if exps.len() != self.nvars {
            return Err(SeriesError::VarMismatch {
                left: self.nvars,
                right: exps.len(),
            });
        }
        let mut e = [0; 3];
        e[..exps.len()].copy_from_slice(exps);
        Ok(e)
    }

    fn put(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    fn coeff_of(&self, e: &Exponents) -> BigRational {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Taylor coefficient; zero when absent.
    pub fn coeff(&self, exps: &[u32]) -> Result<BigRational> {
        Ok(self.coeff_of(&self.exponents(exps)?))
    }

    /// Nonzero terms in graded lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigRational)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by_key(|(e, _)| graded_key(e));
        v.into_iter()
            .map(|(e, c)| (e[..self.nvars].to_vec(), c.clone()))
            .collect()
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TriSeries {
            nvars: self.nvars,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| degree(e) <= order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Equality of all coefficients up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let o = self.order.min(other.order);
        self.nvars == other.nvars && self.truncate(o).coeffs == other.truncate(o).coeffs
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(SeriesError::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.order);
        for (e, c) in &other.coeffs {
            if degree(e) <= out.order {
                let sum = out.coeff_of(e) + c;
                out.put(*e, sum);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TriSeries {
            nvars: self.nvars,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        if !s.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect();
        }
        out
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&BigRational::from_integer(s.into()))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            let da = degree(a);
            if da > order {
                continue;
            }
            for (b, cb) in &other.coeffs {
                if da + degree(b) > order {
                    continue;
                }
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TriSeries {
            nvars: self.nvars,
            order,
            coeffs: acc,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars, self.order);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse, solved coefficient by coefficient in graded order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff_of(&[0; 3]);
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let mut out = Self::zero(self.nvars, self.order);
        for e in monomials(self.nvars, self.order) {
            let mut sum = if degree(&e) == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for (a, ca) in &self.coeffs {
                if degree(a) == 0 || a[0] > e[0] || a[1] > e[1] || a[2] > e[2] {
                    continue;
                }
                let rest = [e[0] - a[0], e[1] - a[1], e[2] - a[2]];
                if let Some(r) = out.coeffs.get(&rest) {
                    sum -= ca * r;
                }
            }
            out.put(e, sum / &c0);
        }
        Ok(out)
    }

    /// Formal derivative in `x_var`; the order drops by one (saturating at 0).
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(SeriesError::BadVariable(var));
        }
        let mut out = Self::zero(self.nvars, self.order.saturating_sub(1));
        if self.order == 0 {
            return Ok(out);
        }
        for (e, c) in &self.coeffs {
            if e[var] > 0 {
                let mut d = *e;
                d[var] -= 1;
                out.put(d, c * BigRational::from_integer(e[var].into()));
            }
        }
        Ok(out)
    }

    /// Multiplies by `x_var`; the order rises by one.
    pub fn mul_var(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(SeriesError::BadVariable(var));
        }
        let mut out = Self::zero(self.nvars, self.order + 1);
        for (e, c) in &self.coeffs {
            let mut d = *e;
            d[var] += 1;
            out.coeffs.insert(d, c.clone());
        }
        Ok(out)
    }

    /// Divides by `x_var`; the order drops by one.
    pub fn div_var(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(SeriesError::BadVariable(var));
        }
        let mut out = Self::zero(self.nvars, self.order.saturating_sub(1));
        for (e, c) in &self.coeffs {
            if e[var] == 0 {
                return Err(SeriesError::NotDivisible(var));
            }
            let mut d = *e;
            d[var] -= 1;
            out.coeffs.insert(d, c.clone());
        }
        Ok(out)
    }

    /// Sets `x_var = 0`.
    pub fn restrict_zero(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(SeriesError::BadVariable(var));
        }
        let mut out = self.clone();
        out.coeffs.retain(|e, _| e[var] == 0);
        Ok(out)
    }

    /// The one-variable series in `x_var` obtained by zeroing every other variable.
    pub fn univariate(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(SeriesError::BadVariable(var));
        }
        let mut out = Self::zero(1, self.order);
        for (e, c) in &self.coeffs {
            if (0..self.nvars).all(|i| i == var || e[i] == 0) {
                out.coeffs.insert([e[var], 0, 0], c.clone());
            }
        }
        Ok(out)
    }

    /// `f(a_1 x_1 + ... + a_r x_r)` for a univariate `f`, with `r = form.len()`.
    pub fn compose_linear(&self, form: &[i64]) -> Result<Self> {
        if self.nvars != 1 {
            return Err(SeriesError::VarMismatch {
                left: self.nvars,
                right: 1,
            });
        }
        if !(1..=3).contains(&form.len()) {
            return Err(SeriesError::BadVariable(form.len()));
        }
        let nvars = form.len();
        let mut out = Self::zero(nvars, self.order);
        let mut by_degree = Vec::new();
        for d in 0..=self.order {
            by_degree.clear();
            let c = self.coeff_of(&[d, 0, 0]);
            if c.is_zero() {
                continue;
            }
            monomials_of_degree(nvars, d, &mut by_degree);
            let dfact = factorial(d);
            for e in &by_degree {
                let mut num = dfact.clone();
                let mut den = BigInt::one();
                for i in 0..nvars {
                    num *= BigInt::from(form[i]).pow(e[i]);
                    den *= factorial(e[i]);
                }
                let term = &c * BigRational::new(num, den);
                let sum = out.coeff_of(e) + term;
                out.put(*e, sum);
            }
        }
        Ok(out)
    }

    /// `cos(a_1 x_1 + ...)` truncated to `order`.
    pub fn cos_linear(form: &[i64], order: u32) -> Result<Self> {
        trig(true, order).compose_linear(form)
    }

    /// `sin(a_1 x_1 + ...)` truncated to `order`.
    pub fn sin_linear(form: &[i64], order: u32) -> Result<Self> {
        trig(false, order).compose_linear(form)
    }

    /// Taylor coefficient times the factorial of each exponent.
    pub fn egf_coefficient(&self, exps: &[u32]) -> Result<BigRational> {
        let e = self.exponents(exps)?;
        let d = degree(&e);
        if d > self.order {
            return Err(SeriesError::OutOfOrder {
                degree: d,
                order: self.order,
            });
        }
        let f: BigInt = e.iter().map(|&x| factorial(x)).product();
        Ok(self.coeff_of(&e) * BigRational::from_integer(f))
    }

    /// Header line then one `e1 .. er num/den` line per nonzero term.
    pub fn dump(&self) -> String {
        let mut s = format!("# vars {} order {}\n", self.nvars, self.order);
        for (e, c) in self.terms() {
            for x in e {
                write!(s, "{x} ").unwrap();
            }
            writeln!(s, "{}/{}", c.numer(), c.denom()).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| SeriesError::Parse("empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let (nvars, order) = match h.as_slice() {
            ["#", "vars", v, "order", o] => (
                v.parse::<usize>().map_err(|e| SeriesError::Parse(e.to_string()))?,
                o.parse::<u32>().map_err(|e| SeriesError::Parse(e.to_string()))?,
            ),
            _ => return Err(SeriesError::Parse(format!("bad header {header:?}"))),
        };
        if !(1..=3).contains(&nvars) {
            return Err(SeriesError::BadVariable(nvars));
        }
        let mut terms = Vec::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != nvars + 1 {
                return Err(SeriesError::Parse(format!("bad term line {line:?}")));
            }
            let exps = toks[..nvars]
                .iter()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| SeriesError::Parse(e.to_string()))?;
            let c: BigRational = toks[nvars]
                .parse()
                .map_err(|_| SeriesError::Parse(format!("bad coefficient {:?}", toks[nvars])))?;
            let d: u32 = exps.iter().sum();
            if d > order {
                return Err(SeriesError::OutOfOrder { degree: d, order });
            }
            terms.push((exps, c));
        }
        Self::from_terms(nvars, order, terms)
    }

    pub fn max_abs(&self) -> Option<(Vec<u32>, BigRational)> {
        self.terms().into_iter().max_by(|a, b| a.1.abs().cmp(&b.1.abs()))
    }
}

/// Univariate `cos u` or `sin u`.
fn trig(cos: bool, order: u32) -> TriSeries {
    let mut s = TriSeries::zero(1, order);
    let start = if cos { 0 } else { 1 };
    for d in (start..=order).step_by(2) {
        let sign = if (d / 2) % 2 == 0 { 1 } else { -1 };
        s.put(
            [d, 0, 0],
            BigRational::new(BigInt::from(sign), factorial(d)),
        );
    }
    s
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &TriSeries {
            type Output = TriSeries;
            /// Panics on a variable-count mismatch; use the inherent method to get an error.
            fn $method(self, rhs: &TriSeries) -> TriSeries {
                TriSeries::$method(self, rhs).expect("series with matching variables")
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &TriSeries {
    type Output = TriSeries;
    fn neg(self) -> TriSeries {
        TriSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn x(order: u32) -> TriSeries {
        TriSeries::variable(1, 0, order).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let one = TriSeries::one(1, 2);
        let p = &(&one + &x(2)) * &(&one - &x(2));
        assert_eq!(p.terms(), vec![(vec![0], q(1, 1)), (vec![2], q(-1, 1))]);
    }

    #[test]
    fn product_truncates() {
        assert!((&x(1) * &x(1)).is_zero());
    }

    #[test]
    fn pythagoras() {
        let c = TriSeries::cos_linear(&[1, 0, 0], 8).unwrap();
        let s = TriSeries::sin_linear(&[1, 0, 0], 8).unwrap();
        assert_eq!(&(&c * &c) + &(&s * &s), TriSeries::one(3, 8));
    }

    #[test]
    fn trig_constructors() {
        assert_eq!(TriSeries::cos_linear(&[0, 0, 0], 6).unwrap(), TriSeries::one(3, 6));
        let c2 = TriSeries::cos_linear(&[2], 4).unwrap();
        assert_eq!(
            c2.terms(),
            vec![(vec![0], q(1, 1)), (vec![2], q(-2, 1)), (vec![4], q(2, 3))]
        );
        let s = TriSeries::sin_linear(&[1, 1, 1], 5).unwrap();
        assert_eq!(s.coeff(&[1, 1, 1]).unwrap(), q(-1, 1));
    }

    #[test]
    fn geometric_series() {
        let s = &TriSeries::one(1, 3) - &x(3);
        let inv = s.invert().unwrap();
        assert_eq!(inv.terms().iter().map(|t| t.1.clone()).collect::<Vec<_>>(), vec![q(1, 1); 4]);
        assert_eq!(x(3).invert(), Err(SeriesError::ZeroConstantTerm));
    }

    #[test]
    fn secant_coefficients() {
        let sec = TriSeries::cos_linear(&[1], 10).unwrap().invert().unwrap();
        let got: Vec<BigRational> = (0..=10).map(|d| sec.egf_coefficient(&[d]).unwrap()).collect();
        let want = [1, 0, 1, 0, 5, 0, 61, 0, 1385, 0, 50521];
        assert_eq!(got, want.iter().map(|&v| q(v, 1)).collect::<Vec<_>>());
    }

    #[test]
    fn inverse_is_involution() {
        let c = TriSeries::cos_linear(&[1, 1], 6).unwrap();
        assert_eq!(c.invert().unwrap().invert().unwrap(), c);
    }

    #[test]
    fn derivative_of_cos() {
        let c = TriSeries::cos_linear(&[1, 1], 8).unwrap();
        let s = TriSeries::sin_linear(&[1, 1], 7).unwrap();
        assert_eq!(c.partial_derivative(1).unwrap(), s.neg());
        let k = TriSeries::constant(2, 4, q(3, 1));
        let d = k.partial_derivative(0).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.order(), 3);
    }

    #[test]
    fn var_mismatch() {
        let a = TriSeries::one(1, 2);
        let b = TriSeries::one(2, 2);
        assert_eq!(a.add(&b), Err(SeriesError::VarMismatch { left: 1, right: 2 }));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn egf_out_of_order() {
        let sec = TriSeries::cos_linear(&[1], 4).unwrap().invert().unwrap();
        assert_eq!(
            sec.egf_coefficient(&[5]),
            Err(SeriesError::OutOfOrder { degree: 5, order: 4 })
        );
        assert_eq!(sec.egf_coefficient(&[0]).unwrap(), q(1, 1));
    }

    #[test]
    fn dump_is_graded_and_round_trips() {
        let s = TriSeries::cos_linear(&[1, -2, 3], 4).unwrap();
        let text = s.dump();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# vars 3 order 4");
        assert_eq!(lines[1], "0 0 0 1/1");
        assert_eq!(lines[2], "0 0 2 -9/2");
        assert_eq!(TriSeries::parse(&text).unwrap(), s);
        assert!(TriSeries::parse("# vars 1 order 2\n3 1/1").is_err());
    }

    #[test]
    fn mul_and_div_var() {
        let s = TriSeries::sin_linear(&[2, 0], 7).unwrap();
        let q1 = s.div_var(0).unwrap();
        assert_eq!(q1.order(), 6);
        assert_eq!(q1.mul_var(0).unwrap(), s);
        assert_eq!(
            TriSeries::cos_linear(&[1, 0], 3).unwrap().div_var(0),
            Err(SeriesError::NotDivisible(0))
        );
    }

    fn small_series(nvars: usize) -> impl Strategy<Value = TriSeries> {
        proptest::collection::vec((0u32..4, 0u32..4, 0u32..4, -5i64..6, 1i64..4), 0..8).prop_map(
            move |terms| {
                TriSeries::from_terms(
                    nvars,
                    5,
                    terms.into_iter().map(|(a, b, c, n, d)| {
                        let e = [a, b, c];
                        (e[..nvars].to_vec(), q(n, d))
                    }),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(a in small_series(3), b in small_series(3), c in small_series(3)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn inverse_is_two_sided(a in small_series(2), c0 in 1i64..5) {
            let unit = &a.restrict_zero(0).unwrap().restrict_zero(1).unwrap().neg() + &a;
            let s = &unit + &TriSeries::constant(2, 5, q(c0, 1));
            let inv = s.invert().unwrap();
            prop_assert_eq!(&s * &inv, TriSeries::one(2, 5));
            prop_assert_eq!(&inv * &s, TriSeries::one(2, 5));
        }

        #[test]
        fn dump_round_trip(a in small_series(2)) {
            prop_assert_eq!(TriSeries::parse(&a.dump()).unwrap(), a);
        }
    }
}
