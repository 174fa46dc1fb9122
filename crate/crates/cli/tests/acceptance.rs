//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p quasijordan-cli --test acceptance`; add `-- --long` for the
//! order-14400 H4 enumeration.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quasijordan::algebra::{fibonacci_label_table, JordanAlgebra, LabelCell};
use quasijordan::export::parse_points_json;
use quasijordan::icosian::{a5_reference_rows, build_icosian_group, Icosian};
use quasijordan::scheme::{self, preset, PointKey, SchemeSpec};
use quasijordan::symmetry::{icosahedral_table_matrices, symmetry_transfer_check, LatticeMap, TransferReport, TransferStatus};
use quasijordan::verify::{self, SuiteResult, SuiteStatus, VerifyOptions};
use quasijordan::window::{Boundary, ConvexWindow};
use quasijordan::witt::{self, WittAlgebra};
use quasijordan::{GoldenInt, GoldenRat};

const SEED: u64 = 20_240_601;
const PRESETS: [&str; 4] = ["fibonacci-palindromic", "penrose", "z6", "elser-sloane"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn gi(a: i64, b: i64) -> GoldenInt {
    GoldenInt::new(a, b)
}

fn desk_batch(s: &SchemeSpec) -> Vec<quasijordan::scheme::QcPoint> {
    s.enumerate(&verify::desk_radius(s)).expect("desk enumeration")
}

fn suite_line(s: &SuiteResult) -> String {
    format!("{}={:?} ({}/{})", s.suite, s.status, s.failures, s.cases)
}

// ---------------------------------------------------------------------------

fn palindromic_chain() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_qc"))
        .args(["generate", "--scheme", "fibonacci-palindromic", "--radius", "9", "--format", "json"])
        .output()
        .expect("qc runs");
    if !out.status.success() {
        return outcome(false, format!("qc exited with {}", out.status));
    }
    let (_, pts) = parse_points_json(&String::from_utf8_lossy(&out.stdout)).expect("valid points JSON");
    let got: BTreeSet<GoldenInt> = pts.into_iter().map(|p| p.coords[0].clone()).collect();
    let mut want: BTreeSet<GoldenInt> = [gi(1, 1), gi(1, 2), gi(2, 3), gi(2, 4)]
        .into_iter()
        .flat_map(|x| [x.clone(), &GoldenInt::zero() - &x])
        .collect();
    want.insert(GoldenInt::zero());
    outcome(got == want, format!("{} points, expected {}", got.len(), want.len()))
}

/// Printed products `L_n ∘ L_m` for n = −4..4 (rows) and m = −2..2 (columns),
/// each as the two labels of ½(L_a + L_b), or one label twice for L_a.
const LABEL_PRODUCTS: [[(i64, i64); 5]; 9] = [
    [(1, -7), (-8, 3), (6, -10), (9, -12), (11, -13)],
    [(0, -5), (-6, 2), (5, -8), (8, -10), (10, -11)],
    [(-2, -2), (-3, 0), (3, -5), (6, -7), (8, -10)],
    [(-3, 0), (-1, -1), (2, -3), (5, -5), (7, -6)],
    [(-5, 3), (2, -3), (0, 0), (3, -2), (5, -3)],
    [(-7, 6), (5, -5), (-2, 3), (1, 1), (3, 0)],
    [(-8, 8), (-6, 7), (-3, 5), (0, 3), (2, 2)],
    [(-10, 11), (-8, 10), (-5, 8), (-2, 6), (0, 5)],
    [(-11, 13), (-9, 12), (-6, 10), (-3, 8), (-1, 7)],
];

fn label_products() -> Outcome {
    let alg = JordanAlgebra::new(scheme::fibonacci_palindromic());
    let rows: Vec<i64> = (-4..=4).collect();
    let cols: Vec<i64> = (-2..=2).collect();
    let table = match fibonacci_label_table(&alg, &rows, &cols) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut mismatches = Vec::new();
    for (i, n) in rows.iter().enumerate() {
        for (j, m) in cols.iter().enumerate() {
            let (a, b) = LABEL_PRODUCTS[i][j];
            let want = LabelCell::new(a, b);
            if table[i][j] != want {
                mismatches.push(format!("L_{n}∘L_{m}: computed {} printed {}", table[i][j].markdown(), want.markdown()));
            }
        }
    }
    let detail = if mismatches.is_empty() {
        "45/45 cells match".to_string()
    } else {
        format!("{} of 45 cells differ: {}", mismatches.len(), mismatches.join("; "))
    };
    outcome(mismatches.is_empty(), detail)
}

fn icosian_group() -> Outcome {
    let g = build_icosian_group();
    let n = g.elements.len();
    let closed = g.product_index.iter().flatten().all(|&k| k < n)
        && (0..n).all(|a| (0..n).all(|b| g.elements[a].checked_mul(&g.elements[b]).as_ref() == Some(&g.elements[g.product_index[a][b]])));
    let norms = g.elements.iter().all(|x| x.quaternionic_norm() == GoldenRat::one());
    let rows = a5_reference_rows();
    let rows_ok = rows.iter().all(|(x, p)| g.image_of(x) == Some(*p));
    let mut kernel = g.kernel();
    kernel.sort();
    let mut pm = vec![Icosian::one(), Icosian::one().scale(&GoldenInt::from_int(-1))];
    pm.sort();
    let ok = n == 120 && closed && norms && rows_ok && kernel == pm && g.is_homomorphism();
    outcome(
        ok,
        format!(
            "order {n}, closed {closed}, unit norms {norms}, {} reference images {}, kernel size {}",
            rows.len(),
            if rows_ok { "hold" } else { "differ" },
            kernel.len()
        ),
    )
}

/// Integer coordinates (a, b, c, d) of z = a + bτ + (c + dτ)ξ², rows n = −5..5,
/// columns m = −3..2.
const PENROSE_SAMPLE: [[(i64, i64, i64, i64); 6]; 11] = [
    [(-2, -2, -2, -4), (-2, -2, -1, -2), (-2, -2, 0, 1), (-2, -2, 0, 0), (-2, -2, 1, 1), (-2, -2, 2, 3)],
    [(-1, -3, -4, -6), (-1, -3, -3, -5), (-1, -3, -2, -3), (-1, -3, 0, 0), (-1, -3, 1, 2), (-1, -3, 2, 3)],
    [(-1, -2, -1, -2), (-1, -2, -1, -1), (-1, -2, 0, -1), (-1, -2, 0, 0), (-1, -2, 0, 1), (-1, -2, 1, 1)],
    [(-1, -1, -1, -2), (-1, -1, -1, -1), (-1, -1, 0, -1), (-1, -1, 0, 0), (-1, -1, 0, 1), (-1, -1, 1, 1)],
    [(0, -1, -2, -2), (0, -1, -1, -2), (0, -1, -1, -1), (0, -1, 0, 0), (0, -1, 0, 1), (0, -1, 1, 1)],
    [(0, 0, -1, -2), (0, 0, -1, -1), (0, 0, 0, -1), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)],
    [(0, 1, -1, -2), (0, 1, -1, -1), (0, 1, 0, -1), (0, 1, 0, 0), (0, 1, 1, 1), (0, 1, 1, 2)],
    [(1, 1, -1, -2), (1, 1, -1, -1), (1, 1, 0, -1), (1, 1, 0, 0), (1, 1, 0, 1), (1, 1, 1, 1)],
    [(1, 2, -1, -2), (1, 2, -1, -1), (1, 2, 0, -1), (1, 2, 0, 0), (1, 2, 0, 1), (1, 2, 1, 1)],
    [(1, 3, -4, -7), (1, 3, -2, -4), (1, 3, -1, -2), (1, 3, 0, -1), (1, 3, 1, 1), (1, 3, 3, 4)],
    [(2, 2, -2, -3), (2, 2, -1, -2), (2, 2, -1, -1), (2, 2, 0, 0), (2, 2, 1, 2), (2, 2, 2, 3)],
];

fn penrose_sample() -> Outcome {
    let s = scheme::penrose();
    let keys: Vec<PointKey> = PENROSE_SAMPLE
        .iter()
        .flatten()
        .map(|&(a, b, c, d)| vec![gi(a, b), gi(c, d)])
        .collect();
    let far = keys
        .iter()
        .map(|k| s.lattice.physical_norm2(k).to_f64().sqrt())
        .fold(0.0, f64::max);
    let radius = GoldenRat::from_int(far.ceil() as i64 + 1);
    let batch: BTreeSet<PointKey> = s.enumerate(&radius).expect("penrose enumeration").into_iter().map(|p| p.coords).collect();
    let outside_window: Vec<String> = keys
        .iter()
        .filter(|k| !s.window.contains(&s.star_map(k)).unwrap_or(false))
        .map(|k| scheme::fmt_key(k))
        .collect();
    let missing = keys.iter().filter(|k| !batch.contains(*k)).count();
    let ok = outside_window.is_empty() && missing == 0;
    let mut detail = format!("{} entries, radius {radius}, {missing} missing from the model set", keys.len());
    if !outside_window.is_empty() {
        detail += &format!("; star outside the pentagon: {}", outside_window.join(" "));
    }
    outcome(ok, detail)
}

fn coxeter(long: bool) -> Outcome {
    let opts = VerifyOptions {
        long,
        ..VerifyOptions::default()
    };
    match verify::coxeter_suite(&opts) {
        Ok(r) => {
            let orders: Vec<String> = r
                .details
                .as_array()
                .into_iter()
                .flatten()
                .map(|g| format!("{} roots {} order {}", g["group"].as_str().unwrap_or("?"), g["roots"], g["group_order"]))
                .collect();
            outcome(r.status == SuiteStatus::Pass, format!("{}; {}", suite_line(&r), orders.join(", ")))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn per_preset(f: impl Fn(&SchemeSpec, &[quasijordan::scheme::QcPoint], u64) -> SuiteResult) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (i, name) in PRESETS.iter().enumerate() {
        let s = preset(name).expect("preset");
        let pts = desk_batch(&s);
        let r = f(&s, &pts, SEED + i as u64);
        ok &= r.status == SuiteStatus::Pass;
        lines.push(format!("{name}: {}", suite_line(&r)));
    }
    outcome(ok, lines.join(", "))
}

fn quasiadd_identities() -> Outcome {
    per_preset(|s, pts, seed| verify::quasiadd_suite(s, pts, 10_000, seed))
}

fn closure() -> Outcome {
    per_preset(|s, pts, _| verify::closure_suite(s, pts).expect("closure suite"))
}

fn jordan() -> Outcome {
    per_preset(|s, pts, seed| verify::algebra_suite(s, pts, 1_000, seed).expect("algebra suite"))
}

fn non_unital() -> Outcome {
    per_preset(|s, pts, _| verify::unit_suite(s, pts).expect("unit suite"))
}

fn witt_acceptability() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for lattice in [quasijordan::scheme::LatticeKind::Golden, quasijordan::scheme::LatticeKind::Penrose] {
        let alg = WittAlgebra::unwindowed(lattice).expect("commutative ring");
        let rep = witt::random_jacobi_suite(&alg, 1_000, SEED).expect("jacobi suite");
        ok &= rep.passed();
        parts.push(format!("{} Jacobi {}/{} failing", lattice.name(), rep.jacobi_failures, rep.triples));
    }

    let unit_interval = ConvexWindow::interval(GoldenRat::zero(), Boundary::Closed, GoldenRat::one(), Boundary::Closed).expect("interval");
    let fib = SchemeSpec::new("fibonacci[0,1]", scheme::SchemeKind::Custom, quasijordan::scheme::LatticeKind::Golden, unit_interval)
        .expect("scheme");
    let fib_pts = fib.enumerate(&GoldenRat::from_int(20)).expect("enumeration");
    let r = verify::acceptability_suite(&fib, &fib_pts).expect("acceptability");
    ok &= r.status == SuiteStatus::Pass;
    parts.push(format!("[0,1]: {}", suite_line(&r)));

    let pen = scheme::penrose();
    let pen_pts = desk_batch(&pen);
    let samples = verify::acceptability_samples(&pen, &pen_pts);
    let rep = witt::acceptability_check(&pen.window, &samples).expect("pentagon check");
    ok &= rep.passed();
    parts.push(format!("pentagon: {} violations over {} triples", rep.violations, rep.triples));

    let straddle = ConvexWindow::interval(GoldenRat::from_int(-1), Boundary::Closed, GoldenRat::one(), Boundary::Closed).expect("interval");
    let counter = witt::acceptability_check(&straddle, &witt::rational_samples(-1, 1, 4)).expect("counterexample");
    ok &= counter.violations > 0;
    parts.push(format!("[-1,1] counterexample: {} violations", counter.violations));
    outcome(ok, parts.join(", "))
}

fn transfer(s: &SchemeSpec, rho: &LatticeMap) -> TransferReport {
    let pts = desk_batch(s);
    symmetry_transfer_check(s, rho, &pts).expect("transfer check")
}

fn symmetry() -> Outcome {
    let mut reports = Vec::new();
    let fp = scheme::fibonacci_palindromic();
    reports.push(("palindromic negation".to_string(), transfer(&fp, &LatticeMap::negation(fp.lattice)), TransferStatus::Pass));
    reports.push(("penrose xi".to_string(), transfer(&scheme::penrose(), &LatticeMap::penrose_xi()), TransferStatus::Pass));
    let z6 = scheme::z6();
    for (label, m) in icosahedral_table_matrices() {
        let r = transfer(&z6, &m);
        reports.push((format!("z6 {label}"), r, TransferStatus::Pass));
    }
    let nonpal = scheme::fibonacci();
    reports.push(("non-palindromic negation".to_string(), transfer(&nonpal, &LatticeMap::negation(nonpal.lattice)), TransferStatus::HypothesisFailure));
    let equivariance: usize = reports.iter().map(|(_, r, _)| r.equivariance_failures).sum();
    let wrong: Vec<String> = reports
        .iter()
        .filter(|(_, r, want)| r.status != *want)
        .map(|(n, r, want)| format!("{n} {:?} (expected {want:?}: {})", r.status, r.note))
        .collect();
    let ok = wrong.is_empty() && equivariance == 0;
    let mut detail = format!("{} maps, {equivariance} equivariance failures", reports.len());
    if !wrong.is_empty() {
        detail += &format!("; {}", wrong.join("; "));
    }
    outcome(ok, detail)
}

fn elser_sloane() -> Outcome {
    match verify::elser_sloane_suite() {
        Ok(r) => outcome(
            r.status == SuiteStatus::Pass,
            format!(
                "{}; {} vertices, {} facets, {} points",
                suite_line(&r),
                r.details["vertices"],
                r.details["facets"],
                r.details["points"]
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

// ---------------------------------------------------------------------------

type Criterion<'a> = (u32, &'a str, Option<Duration>, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let long = std::env::args().any(|a| a == "--long");
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (1, "palindromic Fibonacci chain", Some(secs(1)), Box::new(palindromic_chain)),
        (2, "integral-label multiplication table", Some(secs(1)), Box::new(label_products)),
        (3, "icosian group and A5 map", Some(secs(1)), Box::new(icosian_group)),
        (4, "Penrose integer-coordinate sample", Some(secs(10)), Box::new(penrose_sample)),
        (5, "root systems and Coxeter groups", long.then(|| secs(300)), Box::new(move || coxeter(long))),
        (6, "quasiaddition identities", Some(secs(30)), Box::new(quasiadd_identities)),
        (7, "closure under quasiaddition", None, Box::new(closure)),
        (8, "Jordan algebra suite", Some(secs(60)), Box::new(jordan)),
        (9, "non-unitality probe", None, Box::new(non_unital)),
        (10, "Witt bracket and acceptability", None, Box::new(witt_acceptability)),
        (11, "symmetry transfer", None, Box::new(symmetry)),
        (12, "Elser-Sloane window", Some(secs(120)), Box::new(elser_sloane)),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in &criteria {
        let t = Instant::now();
        let mut o = run();
        let took = t.elapsed();
        if let Some(b) = budget {
            if took > *b {
                o.pass = false;
                o.detail += &format!("; over the {b:?} budget");
            }
        }
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2}: {} {name} [{:.2?}] {}",
            if o.pass { "PASS" } else { "FAIL" },
            took,
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
