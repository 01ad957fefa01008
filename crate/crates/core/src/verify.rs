//! The cross-validation suite behind `stc verify`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

use crate::bijections::{verify_map, MapError, MapKind};
use crate::distributions::{joint_matrix_bruteforce, DistError, JointMatrix};
use crate::golden;
use crate::recurrence::{self, RecurrenceError, RecurrenceState};
use crate::report::{CheckResult, Status, VerifyReport, Violation};
use crate::series::{self, SeriesError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("two_n_max must be even and at least 4, got {0}")]
    BadSize(usize),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Tables,
    Recurrence,
    R1,
    R2,
    R3,
    R4,
    Marginal,
    Symmetry,
    Crossing,
    Borders,
    Lower,
    Bijection,
    Gf1,
    Gf3,
    Poupard,
    Pde,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::Tables,
        Check::Recurrence,
        Check::R1,
        Check::R2,
        Check::R3,
        Check::R4,
        Check::Marginal,
        Check::Symmetry,
        Check::Crossing,
        Check::Borders,
        Check::Lower,
        Check::Bijection,
        Check::Gf1,
        Check::Gf3,
        Check::Poupard,
        Check::Pde,
    ];

    pub const DEFAULT: [Check; 5] = [Check::Tables, Check::Marginal, Check::R1, Check::R2, Check::Symmetry];

    pub fn id(self) -> &'static str {
        match self {
            Check::Tables => "tables",
            Check::Recurrence => "recurrence",
            Check::R1 => "r1",
            Check::R2 => "r2",
            Check::R3 => "r3",
            Check::R4 => "r4",
            Check::Marginal => "marginal",
            Check::Symmetry => "symmetry",
            Check::Crossing => "crossing",
            Check::Borders => "borders",
            Check::Lower => "lower",
            Check::Bijection => "bijection",
            Check::Gf1 => "gf1",
            Check::Gf3 => "gf3",
            Check::Poupard => "poupard",
            Check::Pde => "pde",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == s.trim())
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

/// Parses `"r1,r2,marginal"`; `"all"` selects everything.
pub fn parse_checks(list: &str) -> Result<Vec<Check>, VerifyError> {
    if list.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut v = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Check::from_str)
        .collect::<Result<Vec<_>, _>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

fn result(check: &str, parameter: String, instances: usize, violations: Vec<Violation>) -> CheckResult {
    let counterexample = violations.into_iter().next();
    CheckResult {
        check: check.to_string(),
        parameter,
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        instances,
        counterexample,
    }
}

fn cells(two_n: usize) -> usize {
    (two_n - 1) * (two_n - 1)
}

/// Brute-force matrices `M_2 .. M_{2n}`, computed once per run.
struct Oracle {
    mats: Vec<JointMatrix>,
}

impl Oracle {
    fn new(two_n_max: usize) -> Result<Self, DistError> {
        let mats = (1..=two_n_max / 2)
            .map(|n| joint_matrix_bruteforce(2 * n))
            .collect::<Result<_, _>>()?;
        Ok(Oracle { mats })
    }

    fn get(&self, two_n: usize) -> &JointMatrix {
        &self.mats[two_n / 2 - 1]
    }

    fn sizes(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        (from..=2 * self.mats.len()).step_by(2)
    }
}

fn needs_oracle(c: Check) -> bool {
    !matches!(c, Check::Bijection)
}

/// Runs the selected checks for every size up to `two_n_max`.
pub fn run_checks(two_n_max: usize, checks: &[Check]) -> Result<VerifyReport, VerifyError> {
    if two_n_max < 4 || two_n_max % 2 == 1 {
        return Err(VerifyError::BadSize(two_n_max));
    }
    let oracle = if checks.iter().any(|&c| needs_oracle(c)) {
        Some(Oracle::new(two_n_max)?)
    } else {
        None
    };
    let mut results = Vec::new();
    for &check in checks {
        match oracle.as_ref() {
            Some(o) => run_one(check, two_n_max, o, &mut results)?,
            None => run_bijections(two_n_max, &mut results)?,
        }
    }
    Ok(VerifyReport::new(results))
}

fn run_bijections(two_n_max: usize, out: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    for kind in MapKind::ALL {
        for two_n in (4..=two_n_max).step_by(2) {
            let rep = verify_map(kind, two_n)?;
            let mut v = Vec::new();
            if !rep.ok() {
                let detail = rep
                    .failures
                    .first()
                    .cloned()
                    .or_else(|| rep.collisions.first().map(|c| format!("collision {c:?}")))
                    .unwrap_or_else(|| "image not onto the codomain".into());
                v.push(Violation::new(
                    "bijection",
                    two_n,
                    kind.name(),
                    format!("bijection onto {} trees", rep.codomain),
                    detail,
                ));
            }
            out.push(result("bijection", format!("{kind} 2n={two_n}"), rep.domain, v));
        }
    }
    Ok(())
}

fn run_one(check: Check, two_n_max: usize, o: &Oracle, out: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    let id = check.id();
    let param = |two_n: usize| format!("2n={two_n}");
    match check {
        Check::Tables => {
            for two_n in o.sizes(2) {
                let Some(g) = golden::golden(two_n) else { continue };
                let mut v: Vec<Violation> = recurrence::compare_known(o.get(two_n), &g.to_matrix())
                    .into_iter()
                    .map(|x| Violation { check: id.into(), ..x })
                    .collect();
                let mg = o.get(two_n).marginals()?;
                if mg != g.margins() {
                    v.push(Violation::new(id, two_n, "margins", format!("{:?}", g.margins()), format!("{mg:?}")));
                }
                out.push(result(id, param(two_n), cells(two_n), v));
            }
        }
        Check::Recurrence => {
            let state = RecurrenceState::build(two_n_max)?;
            for two_n in o.sizes(2) {
                let mat = state.matrix(two_n).expect("built up to two_n_max");
                let known = cells(two_n) - mat.unknown_cells().len();
                out.push(result(id, param(two_n), known, recurrence::compare_known(mat, o.get(two_n))));
            }
        }
        Check::R1 | Check::R2 | Check::R3 | Check::R4 | Check::Borders => {
            let f = match check {
                Check::R1 => recurrence::check_r1,
                Check::R2 => recurrence::check_r2,
                Check::R3 => recurrence::check_r3,
                Check::R4 => recurrence::check_r4,
                _ => recurrence::check_borders,
            };
            for two_n in o.sizes(4) {
                let v = f(o.get(two_n), o.get(two_n - 2))?;
                out.push(result(id, param(two_n), cells(two_n), v));
            }
        }
        Check::Marginal => {
            let secant = recurrence::secant_numbers(two_n_max / 2);
            for two_n in o.sizes(2) {
                let v = recurrence::check_marginal(o.get(two_n), &secant[two_n / 2])?;
                out.push(result(id, param(two_n), two_n, v));
            }
        }
        Check::Symmetry => {
            for two_n in o.sizes(2) {
                let v = recurrence::check_symmetry(o.get(two_n))?;
                out.push(result(id, param(two_n), cells(two_n), v));
            }
        }
        Check::Crossing => {
            for two_n in o.sizes(2) {
                let v = recurrence::check_crossing(o.get(two_n))?;
                out.push(result(id, param(two_n), two_n.saturating_sub(3), v));
            }
        }
        Check::Lower => {
            let ent = recurrence::entringer_triangle(two_n_max);
            let secant = recurrence::secant_numbers(two_n_max / 2);
            for two_n in o.sizes(4) {
                let v = recurrence::check_lower_border(o.get(two_n), o.get(two_n - 2), &ent, &secant[two_n / 2 - 2])?;
                out.push(result(id, param(two_n), 3 * two_n, v));
            }
        }
        Check::Bijection => run_bijections(two_n_max, out)?,
        Check::Gf1 => {
            let order = two_n_max as u32;
            let sec = series::sec(order);
            let mut v = Vec::new();
            for two_n in o.sizes(2) {
                let want = BigRational::from_integer(o.get(two_n).marginals()?.total);
                let got = sec.egf_coefficient(&[two_n as u32])?;
                if want != got {
                    v.push(Violation::new(id, two_n, format!("u^{two_n}"), want, got));
                }
            }
            out.push(result(id, format!("sec order={order}"), two_n_max / 2, v));
            let grid = series::omega_grid(1, &o.mats)?;
            let bound = grid.bound();
            let v = series::compare_grid(&series::omega1(bound as u32), &grid, id)?;
            out.push(result(id, format!("omega1 i+j<={bound}"), (bound + 1) * (bound + 2) / 2, v));
        }
        Check::Gf3 => {
            let order = (two_n_max - 4) as u32;
            let om = series::omega(order);
            for two_n in o.sizes(4) {
                let mat = o.get(two_n);
                let mut v = Vec::new();
                let mut n = 0;
                for k in 3..two_n {
                    for m in 2..k {
                        let e = series::omega_exponents(two_n, m, k).expect("upper cell");
                        let want = BigRational::from_integer(mat.value(m as i64, k as i64)?);
                        let got = om.egf_coefficient(&e)?;
                        if want != got {
                            v.push(Violation::new(id, two_n, format!("f({m},{k})"), want, got));
                        }
                        n += 1;
                    }
                }
                out.push(result(id, param(two_n), n, v));
            }
        }
        Check::Poupard => {
            let mut grids = Vec::new();
            for p in 1..=4 {
                let Ok(grid) = series::omega_grid(p, &o.mats) else { break };
                let n = (grid.bound() + 1) * (grid.bound() + 2) / 2;
                out.push(result(id, format!("p={p}"), n, series::poupard_check(&grid)));
                grids.push(grid);
            }
            let v = series::row_identity_check(&grids)?;
            out.push(result(id, format!("rows p<={}", grids.len()), grids.len(), v));
        }
        Check::Pde => {
            for p in 1..=4usize {
                let Ok(grid) = series::omega_grid(p, &o.mats) else { break };
                let order = grid.bound() as u32;
                if order < 2 {
                    break;
                }
                let g = series::omega_p(p as u32, order)?;
                let mut v = series::compare_grid(&g, &grid, id)?;
                if let Some((e, c)) = series::max_abs_coefficient(&series::pde_check(&g)?) {
                    v.push(Violation::new(id, p, format!("residual at {e:?}"), 0, c));
                }
                if let Err(e) = series::reconstruct_from_rows(&g) {
                    v.push(Violation::new(id, p, "reconstruction", "agreement", e));
                }
                out.push(result(id, format!("p={p} order={order}"), (grid.bound() + 1) * (grid.bound() + 2) / 2, v));
            }
        }
    }
    Ok(())
}

/// Every violation in one list, for callers that only need pass/fail.
pub fn collect(report: &VerifyReport) -> Vec<&Violation> {
    report.results.iter().filter_map(|r| r.counterexample.as_ref()).collect()
}
