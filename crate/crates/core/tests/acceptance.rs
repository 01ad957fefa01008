//! Acceptance suite: `cargo test -p secant-trees --test acceptance`.
//!
//! Prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use secant_trees::bijections::{verify_map, MapKind};
use secant_trees::distributions::{count_trees, ent_distribution, joint_matrix_bruteforce, Cell, JointMatrix};
use secant_trees::golden::{self, MATRICES};
use secant_trees::recurrence::{self, assemble};
use secant_trees::report::Violation;
use secant_trees::series::{self, PoupardGrid};
use secant_trees::trees::Label;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

const TOP: usize = 12;

struct Ctx {
    /// Brute-force `M_2 .. M_12`.
    mats: Vec<JointMatrix>,
}

impl Ctx {
    fn m(&self, two_n: usize) -> &JointMatrix {
        &self.mats[two_n / 2 - 1]
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn none_or_first(what: &str, v: Vec<Violation>) -> Result<(), String> {
    match v.first() {
        None => Ok(()),
        Some(x) => Err(format!("{what}: {} violations, first {x}", v.len())),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden_tables(c: &Ctx) -> Outcome {
    let mut cells = 0;
    for g in MATRICES {
        let mat = c.m(g.two_n);
        for m in 2..=g.two_n {
            for k in 1..g.two_n {
                let got = mat.value(m as i64, k as i64).map_err(err)?;
                if got != big(g.get(m, k)) {
                    return Err(format!("M_{} f({m},{k}) = {got}, table has {}", g.two_n, g.get(m, k)));
                }
                cells += 1;
            }
        }
        if mat.marginals().map_err(err)? != g.margins() {
            return Err(format!("M_{} margins differ", g.two_n));
        }
    }
    let totals: Vec<BigInt> = [2, 4, 6, 8, 10].iter().map(|&t| c.m(t).marginals().unwrap().total).collect();
    if totals != [1u64, 5, 61, 1385, 50521].map(big) {
        return Err(format!("totals {totals:?}"));
    }
    Ok(format!("{cells} cells and margins of M_2..M_10"))
}

fn recurrence_vs_oracle(c: &Ctx) -> Outcome {
    let trees = count_trees(12);
    if trees != 2_702_765 {
        return Err(format!("oracle at 2n=12 enumerated {trees} trees"));
    }
    let mut known = 0;
    for two_n in (4..=TOP).step_by(2) {
        let rec = assemble(two_n, false).map_err(err)?;
        let oracle = c.m(two_n);
        for (m, k) in rec.positions() {
            if let Some(v) = rec.get(m, k) {
                let want = oracle.value(m, k).map_err(err)?;
                if v != want {
                    return Err(format!("2n={two_n} f({m},{k}): recurrence {v}, brute {want}"));
                }
                known += 1;
            }
        }
        if rec.margins() != Some(&oracle.marginals().map_err(err)?) {
            return Err(format!("2n={two_n}: analytic margins differ from brute"));
        }
    }
    Ok(format!("{known} known cells for 2n=4..12"))
}

fn difference_systems(c: &Ctx) -> Outcome {
    for two_n in (4..=TOP).step_by(2) {
        let (cur, prev) = (c.m(two_n), c.m(two_n - 2));
        none_or_first("r1", recurrence::check_r1(cur, prev).map_err(err)?)?;
        none_or_first("r2", recurrence::check_r2(cur, prev).map_err(err)?)?;
        none_or_first("r3", recurrence::check_r3(cur, prev).map_err(err)?)?;
        none_or_first("r4", recurrence::check_r4(cur, prev).map_err(err)?)?;
    }
    Ok("r1..r4 on 2n=4..12".into())
}

fn boundary(c: &Ctx) -> Outcome {
    for two_n in (4..=TOP).step_by(2) {
        none_or_first("borders", recurrence::check_borders(c.m(two_n), c.m(two_n - 2)).map_err(err)?)?;
    }
    Ok("four boundary identities on 2n=4..12".into())
}

fn symmetry(c: &Ctx) -> Outcome {
    for two_n in (2..=TOP).step_by(2) {
        none_or_first("symmetry", recurrence::check_symmetry(c.m(two_n)).map_err(err)?)?;
    }
    Ok("2n=2..12".into())
}

fn lower_border(c: &Ctx) -> Outcome {
    let ent = recurrence::entringer_triangle(TOP);
    let secant = recurrence::secant_numbers(TOP / 2);
    for two_n in (4..=TOP).step_by(2) {
        let v = recurrence::check_lower_border(c.m(two_n), c.m(two_n - 2), &ent, &secant[two_n / 2 - 2])
            .map_err(err)?;
        none_or_first("lower border", v)?;
        none_or_first("crossing", recurrence::check_crossing(c.m(two_n)).map_err(err)?)?;
    }

    let rec = assemble(8, false).map_err(err)?;
    let analytic = golden::m8_analytic_cells();
    for &(m, k) in &analytic {
        match rec.cell(m, k) {
            Some(Cell::Known(v)) if *v == big(golden::M8.get(m as usize, k as usize)) => {}
            other => return Err(format!("analytic cell f({m},{k}) of M_8: {other:?}")),
        }
    }
    for (m, k) in rec.positions() {
        if analytic.contains(&(m, k)) {
            continue;
        }
        match rec.cell(m, k) {
            Some(Cell::Unknown) => {}
            Some(Cell::Known(v)) if v.is_zero() && golden::M8.get(m as usize, k as usize) == 0 => {}
            other => return Err(format!("non-analytic cell f({m},{k}) of M_8 is {other:?}")),
        }
    }
    if rec.unknown_cells().len() != 10 {
        return Err(format!("{} unknown cells in M_8", rec.unknown_cells().len()));
    }
    Ok(format!("2n=4..12, {} analytic cells of M_8", analytic.len()))
}

fn entringer(_: &Ctx) -> Outcome {
    let tri = recurrence::entringer_triangle(8);
    for (i, want) in golden::ENTRINGER.iter().enumerate() {
        let n = i + 2;
        let got = tri.row(n).ok_or(format!("row {n} missing"))?;
        if got != want.iter().map(|&v| big(v)).collect::<Vec<_>>() {
            return Err(format!("row {n}: {got:?}"));
        }
    }
    let bottom: Vec<BigInt> = (2..=8).map(|k| big(golden::M10.get(10, k))).collect();
    if tri.row(8).unwrap() != bottom {
        return Err(format!("row 8: {:?}", tri.row(8)));
    }
    for n in [2, 4, 6, 8] {
        let raw = ent_distribution(n).map_err(err)?;
        if raw[..n - 1] != *tri.row(n).unwrap() || !raw[n - 1].is_zero() {
            return Err(format!("ent distribution of size {n}: {raw:?}"));
        }
    }
    Ok("rows 2..8, raw ent rows 2,4,6,8".into())
}

fn generating_functions(c: &Ctx) -> Outcome {
    let sec = series::sec(10);
    for i in 0..=10u32 {
        let want = if i % 2 == 0 { big(golden::SECANT[i as usize / 2]) } else { BigInt::zero() };
        let got = sec.egf_coefficient(&[i]).map_err(err)?;
        if got != BigRational::from_integer(want.clone()) {
            return Err(format!("sec coefficient {i}: {got}, want {want}"));
        }
    }

    let grid = series::omega_grid(1, &c.mats).map_err(err)?;
    if grid.bound() != 8 {
        return Err(format!("omega1 grid bound {}", grid.bound()));
    }
    none_or_first("omega1", series::compare_grid(&series::omega1(8), &grid, "omega1").map_err(err)?)?;

    let om = series::omega(8);
    let mut cells = 0;
    for two_n in (4..=10).step_by(2) {
        for k in 3..two_n {
            for m in 2..k {
                let e = series::omega_exponents(two_n, m, k).ok_or("exponents")?;
                let got = om.egf_coefficient(&e).map_err(err)?;
                let want = c.m(two_n).value(m as i64, k as i64).map_err(err)?;
                if got != BigRational::from_integer(want.clone()) {
                    return Err(format!("omega at 2n={two_n} f({m},{k}): {got}, brute {want}"));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("sec to order 10, omega1 on i+j<=8, omega on {cells} upper cells"))
}

fn poupard(c: &Ctx) -> Outcome {
    let grids: Vec<PoupardGrid> = (1..=4)
        .map(|p| series::omega_grid(p, &c.mats))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    for (q, g) in grids.iter().enumerate() {
        none_or_first(&format!("poupard p={}", q + 1), series::poupard_check(g))?;
    }
    none_or_first("row identities", series::row_identity_check(&grids).map_err(err)?)?;

    for p in 1..=4u32 {
        let g = series::omega_p(p, 8).map_err(err)?;
        let residual = series::pde_check(&g).map_err(err)?;
        if let Some((e, v)) = series::max_abs_coefficient(&residual) {
            return Err(format!("pde residual for p={p} at {e:?}: {v}"));
        }
        let grid = &grids[p as usize - 1];
        none_or_first(&format!("omega_p p={p} vs grid"), series::compare_grid(&g, grid, "omega_p").map_err(err)?)?;
        let rebuilt = series::reconstruct_from_rows(&g).map_err(err)?;
        if !rebuilt.agrees_with(&g) {
            return Err(format!("reconstruction of p={p} disagrees"));
        }
    }
    Ok("grids p=1..4, pde at order 8, row identities, reconstruction".into())
}

fn line(g: &golden::GoldenMatrix, cells: impl Iterator<Item = (usize, usize)>, key: impl Fn(usize, usize) -> usize) -> BTreeMap<Label, usize> {
    cells
        .filter(|&(m, k)| g.get(m, k) > 0)
        .map(|(m, k)| (key(m, k) as Label, g.get(m, k) as usize))
        .collect()
}

fn bijections(_: &Ctx) -> Outcome {
    let mut checked = 0;
    for two_n in (4..=10).step_by(2) {
        for kind in MapKind::ALL {
            let rep = verify_map(kind, two_n).map_err(err)?;
            if !rep.ok() {
                return Err(format!("{kind} at 2n={two_n}: {rep:?}"));
            }
            checked += rep.domain;
        }
    }
    let g = &golden::M8;
    let expect = [
        (MapKind::RightmostColumn, false, line(g, (2..=8).map(|m| (m, 7)), |m, _| m)),
        (MapKind::Tripling, true, line(g, (2..=8).map(|m| (m, 6)), |m, _| m)),
        (MapKind::Pom1, false, line(g, (2..=8).map(|m| (m, 1)), |m, _| m)),
        (MapKind::FirstRow, false, line(g, (1..=7).map(|k| (2, k)), |_, k| k)),
        (MapKind::Entringer, false, line(g, (1..=7).map(|k| (8, k)), |_, k| k)),
    ];
    for (kind, image, want) in expect {
        let rep = verify_map(kind, 8).map_err(err)?;
        let got = if image { &rep.image_profile } else { &rep.domain_profile };
        if *got != want {
            return Err(format!("{kind} profile at 2n=8: {got:?}, table has {want:?}"));
        }
    }
    Ok(format!("five maps on 2n=4..10 ({checked} domain trees), M_8 profiles"))
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let mats: Vec<JointMatrix> = (1..=TOP / 2)
        .map(|n| joint_matrix_bruteforce(2 * n).expect("even size"))
        .collect();
    println!("brute-force oracle M_2..M_{TOP} built in {:.1?}", t0.elapsed());
    let ctx = Ctx { mats };

    let criteria: [Criterion; 10] = [
        ("golden tables", golden_tables),
        ("recurrence agrees with oracle", recurrence_vs_oracle),
        ("difference systems", difference_systems),
        ("boundary identities", boundary),
        ("symmetry", symmetry),
        ("lower border", lower_border),
        ("entringer", entringer),
        ("generating functions", generating_functions),
        ("poupard machinery", poupard),
        ("bijections", bijections),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f(&ctx);
        let dt = t.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} [{dt:.1?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg} [{dt:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
