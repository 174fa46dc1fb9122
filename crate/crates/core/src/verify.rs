//! Invariant suites aggregated into one JSON-serialisable report.
//!
//! Every suite is deterministic for a given scheme, seed and option set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{self, AlgebraElement, JordanAlgebra, UnitizedElement};
use crate::error::{QcError, Result};
use crate::golden::{golden_sign, kappa_compare, GoldenInt, GoldenRat, KappaScaledRat};
use crate::icosian::{self, Icosian};
use crate::quasiadd;
use crate::roots;
use crate::scheme::{self, LatticeKind, PointKey, QcPoint, SchemeKind, SchemeSpec};
use crate::symmetry::{self, LatticeMap, TransferStatus};
use crate::window::{Boundary, ConvexWindow};
use crate::witt::{self, WittAlgebra};

pub const VERIFY_FORMAT: &str = "quasijordan.verify/1";

pub const SUITES: [&str; 12] = [
    "golden",
    "icosian",
    "coxeter",
    "quasiadd",
    "closure",
    "algebra",
    "unit",
    "ideal",
    "witt",
    "acceptability",
    "symmetry",
    "elser-sloane",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Enables the order-14400 H₄ enumeration.
    pub long: bool,
    /// Random cases per identity suite.
    pub cases: usize,
    /// Random multi-term pairs for the Jordan identity.
    pub random_elements: usize,
    /// Restricts the coxeter suite to one of `h2`, `h3`, `h4`.
    pub group: Option<String>,
    /// Overrides the scheme's desk radius.
    pub radius: Option<GoldenRat>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            long: false,
            cases: 10_000,
            random_elements: 1_000,
            group: None,
            radius: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteStatus {
    Pass,
    /// A precondition of the tested statement does not hold for this input.
    HypothesisFailure,
    Fail,
    Skipped,
    /// The statement's hypothesis does not apply; findings carry no verdict.
    Informational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub status: SuiteStatus,
    pub cases: u64,
    pub failures: u64,
    pub details: Value,
}

impl SuiteResult {
    fn new(suite: &str, cases: u64, failures: u64, details: Value) -> SuiteResult {
        SuiteResult {
            suite: suite.to_string(),
            status: if failures == 0 { SuiteStatus::Pass } else { SuiteStatus::Fail },
            cases,
            failures,
            details,
        }
    }

    fn skipped(suite: &str, reason: String) -> SuiteResult {
        SuiteResult {
            suite: suite.to_string(),
            status: SuiteStatus::Skipped,
            cases: 0,
            failures: 0,
            details: json!({ "reason": reason }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub format: &'static str,
    pub scheme: String,
    pub seed: u64,
    pub long: bool,
    pub radius: String,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn has_failures(&self) -> bool {
        self.suites.iter().any(|s| s.status == SuiteStatus::Fail)
    }

    pub fn has_hypothesis_failures(&self) -> bool {
        self.suites.iter().any(|s| s.status == SuiteStatus::HypothesisFailure)
    }
}

/// Radius at which a scheme's exhaustive pair checks stay within seconds.
pub fn desk_radius(scheme: &SchemeSpec) -> GoldenRat {
    match scheme.kind {
        SchemeKind::Fibonacci => GoldenRat::from_int(9),
        SchemeKind::Penrose | SchemeKind::ElserSloane | SchemeKind::Custom => GoldenRat::from_int(3),
        SchemeKind::Z6 => GoldenRat::from_int(2),
        SchemeKind::Z6Icosian => GoldenRat::ratio(3, 2),
    }
}

pub fn run(scheme: &SchemeSpec, suites: &[&str], opts: &VerifyOptions) -> Result<VerifyReport> {
    let radius = opts.radius.clone().unwrap_or_else(|| desk_radius(scheme));
    let mut batch: Option<Vec<QcPoint>> = None;
    let mut out = Vec::new();
    for (i, &name) in suites.iter().enumerate() {
        let seed = opts.seed.wrapping_add(i as u64);
        let needs_batch = matches!(name, "quasiadd" | "closure" | "algebra" | "unit" | "ideal" | "witt" | "acceptability" | "symmetry");
        if needs_batch && batch.is_none() {
            batch = Some(scheme.enumerate(&radius)?);
        }
        let pts = batch.as_deref().unwrap_or(&[]);
        let r = match name {
            "golden" => golden_suite(opts.cases, seed),
            "icosian" => icosian_suite(opts.cases, seed),
            "coxeter" => coxeter_suite(opts)?,
            "quasiadd" => quasiadd_suite(scheme, pts, opts.cases, seed),
            "closure" => closure_suite(scheme, pts)?,
            "algebra" => algebra_suite(scheme, pts, opts.random_elements, seed)?,
            "unit" => unit_suite(scheme, pts)?,
            "ideal" => ideal_suite(scheme, pts)?,
            "witt" => witt_suite(scheme, opts.random_elements, seed)?,
            "acceptability" => acceptability_suite(scheme, pts)?,
            "symmetry" => symmetry_suite(scheme, pts, &radius)?,
            "elser-sloane" => elser_sloane_suite()?,
            other => return Err(QcError::Precondition(format!("unknown suite {other:?}"))),
        };
        out.push(r);
    }
    Ok(VerifyReport {
        format: VERIFY_FORMAT,
        scheme: scheme.name.clone(),
        seed: opts.seed,
        long: opts.long,
        radius: radius.to_string(),
        suites: out,
    })
}

// ---------------------------------------------------------------------------
// golden
// ---------------------------------------------------------------------------

/// Sign of `p + q√5` from a 200-bit fixed-point value of √5, independent of
/// the squared comparison used by [`golden_sign`]. `None` when the
/// approximation cannot decide.
pub fn sign_200_bit(x: &GoldenRat) -> Option<i8> {
    let bits = 200u32;
    let s = (BigInt::from(5) << (2 * bits as usize)).sqrt(); // ⌊√5·2^200⌋
    let (p, q) = (&x.p, &x.q);
    let pn = (p.numer() * q.denom()) << bits as usize;
    let qn = q.numer() * p.denom();
    // the value times a positive integer lies between these two bounds
    let lo = &pn + &qn * &s;
    let hi = &pn + &qn * (&s + 1);
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else if lo.is_zero() && hi.is_zero() {
        Some(0)
    } else {
        None
    }
}

pub fn golden_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut big = || BigInt::from(rng.gen_range(-1_000_000_000i64..=1_000_000_000));
    let mut fails = std::collections::BTreeMap::<&str, u64>::new();
    let mut bump = |k: &'static str, bad: bool| *fails.entry(k).or_default() += u64::from(bad);
    for _ in 0..cases {
        let x = GoldenInt::new(big(), big());
        let y = GoldenInt::new(big(), big());
        bump("star-involution", x.star().star() != x);
        bump("star-additive", (&x + &y).star() != &x.star() + &y.star());
        bump("star-multiplicative", (&x * &y).star() != &x.star() * &y.star());
        bump("text-round-trip", x.to_string().parse::<GoldenInt>().ok() != Some(x.clone()));
        let den: BigInt = 1 + (x.a.clone() % 97i32).abs();
        let r = GoldenRat::new(BigRational::new(x.a.clone(), den.clone()), BigRational::new(y.b.clone(), den));
        // near-cancelling values stress the sign test
        let near = GoldenRat::new(BigRational::from(x.a.clone()), BigRational::from(x.a.clone()) * BigRational::new(BigInt::from(4), BigInt::from(9)));
        for v in [r, near] {
            bump("sign-vs-200-bit", sign_200_bit(&v).is_some_and(|s| s != golden_sign(&v)));
        }
    }
    let one = GoldenRat::one();
    let kappa_ok = kappa_compare(&GoldenRat::zero(), &KappaScaledRat::new(one.clone(), 1)).is_lt()
        && kappa_compare(&one, &KappaScaledRat::new(one.clone(), 1)).is_gt();
    bump("kappa-examples", !kappa_ok);
    let failures: u64 = fails.values().sum();
    SuiteResult::new("golden", cases as u64 * 6 + 1, failures, json!({ "failures_by_check": fails }))
}

// ---------------------------------------------------------------------------
// icosian
// ---------------------------------------------------------------------------

pub fn icosian_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut fails = std::collections::BTreeMap::<&str, u64>::new();
    let mut bump = |k: &'static str, bad: bool| *fails.entry(k).or_default() += u64::from(bad);
    let g = icosian::build_icosian_group();
    bump("order-120", g.elements.len() != 120);
    bump("unit-norms", g.elements.iter().any(|x| x.quaternionic_norm() != GoldenRat::one()));
    bump("a5-homomorphism", !g.is_homomorphism());
    let mut kernel = g.kernel();
    kernel.sort();
    let mut pm = vec![Icosian::one(), Icosian::one().scale(&GoldenInt::from_int(-1))];
    pm.sort();
    bump("a5-kernel", kernel != pm);
    for (x, p) in icosian::a5_reference_rows() {
        bump("a5-reference-rows", g.image_of(&x) != Some(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let x = Icosian::from_halves(LatticeKind::Icosian.random_point(&mut rng, 20).try_into().expect("four components"));
        let y = Icosian::from_halves(LatticeKind::Icosian.random_point(&mut rng, 20).try_into().expect("four components"));
        let xy = x.checked_mul(&y);
        bump("ring-closed", xy.as_ref().is_none_or(|p| !p.in_icosian_ring()));
        if let Some(p) = xy {
            bump("norm-multiplicative", p.quaternionic_norm() != &x.quaternionic_norm() * &y.quaternionic_norm());
        }
        let ne = x.euclidean_norm();
        bump("euclidean-norm-integral", !ne.is_integer() || ne.is_negative() || (ne.is_zero() != x.is_zero()));
        let starred: Vec<GoldenInt> = x.num.iter().map(GoldenInt::star).collect();
        bump("z8-star", x.star().num.to_vec() != starred);
    }
    for r in icosian::e8_roots() {
        let c = icosian::e8_coefficients(&r);
        bump("e8-image-in-ring", c.is_none_or(|c| !icosian::e8_project_parallel(&c).in_icosian_ring()));
    }
    let failures: u64 = fails.values().sum();
    SuiteResult::new("icosian", (cases * 4 + 240 + 9) as u64, failures, json!({ "failures_by_check": fails, "order": g.elements.len() }))
}

// ---------------------------------------------------------------------------
// coxeter
// ---------------------------------------------------------------------------

pub fn coxeter_suite(opts: &VerifyOptions) -> Result<SuiteResult> {
    let groups: Vec<usize> = match opts.group.as_deref() {
        Some("h2") => vec![2],
        Some("h3") => vec![3],
        Some("h4") => vec![4],
        Some(other) => return Err(QcError::Precondition(format!("unknown group {other:?}; expected h2, h3 or h4"))),
        None => vec![2, 3, 4],
    };
    let mut details = Vec::new();
    let (mut cases, mut failures) = (0u64, 0u64);
    for n in groups {
        let sys = roots::build_delta(n)?;
        let (size, order) = match n {
            2 => (10, 10),
            3 => (30, 120),
            _ => (120, 14_400),
        };
        let axioms = roots::check_root_axioms(&sys.roots);
        let with_order = n < 4 || opts.long;
        let rep = roots::verify_coxeter(&sys, &sys.generators(), with_order);
        let order_ok = rep.group_order.is_none_or(|o| o == order);
        let bad = u64::from(sys.roots.len() != size)
            + axioms.len() as u64
            + u64::from(!roots::check_isometry(&sys.roots))
            + u64::from(roots::check_crystallographic(&sys))
            + rep.failures.len() as u64
            + u64::from(!order_ok);
        cases += 4 + rep.relations_checked as u64 + u64::from(with_order);
        failures += bad;
        details.push(json!({
            "group": format!("H{n}"),
            "roots": sys.roots.len(),
            "expected_roots": size,
            "axiom_failures": axioms,
            "relations_checked": rep.relations_checked,
            "relation_failures": rep.failures,
            "group_order": rep.group_order,
            "expected_order": order,
            "order_checked": with_order,
        }));
    }
    Ok(SuiteResult::new("coxeter", cases, failures, Value::Array(details)))
}

// ---------------------------------------------------------------------------
// quasiaddition and closure
// ---------------------------------------------------------------------------

pub fn quasiadd_suite(scheme: &SchemeSpec, points: &[QcPoint], cases: usize, seed: u64) -> SuiteResult {
    let rep = quasiadd::random_identity_suite(scheme.lattice, cases, 10, seed);
    let keys: Vec<PointKey> = points.iter().map(|p| p.coords.clone()).collect();
    let fixed_point_failures = keys
        .iter()
        .flat_map(|x| keys.iter().map(move |y| (x, y)))
        .filter(|(x, y)| !quasiadd::fixed_point_law(x, y))
        .count();
    let witnesses = keys.len() < 2
        || (quasiadd::noncommutative_witness(&keys).is_some() && quasiadd::nonassociative_witness(&keys).is_some());
    let identity_failures: usize = rep.failures.values().sum();
    let failures = identity_failures + rep.repeated_closed_form_failures + fixed_point_failures + usize::from(!witnesses);
    let total = rep.cases * quasiadd::IDENTITY_NAMES.len() + rep.repeated_closed_form_cases + keys.len() * keys.len() + 1;
    SuiteResult::new(
        "quasiadd",
        total as u64,
        failures as u64,
        json!({
            "identities": rep,
            "fixed_point_pairs": keys.len() * keys.len(),
            "fixed_point_failures": fixed_point_failures,
            "witnesses_found": witnesses,
        }),
    )
}

pub fn closure_suite(scheme: &SchemeSpec, points: &[QcPoint]) -> Result<SuiteResult> {
    let rep = quasiadd::check_closure(scheme, points);
    let fixture = quasiadd::nonconvex_fixture(10)?;
    // the non-convex fixture must exhibit a violation
    let failures = rep.violations.len() as u64 + u64::from(fixture.violations.is_empty());
    Ok(SuiteResult::new(
        "closure",
        rep.pairs as u64 + 1,
        failures,
        json!({
            "scheme": rep,
            "nonconvex_fixture": {
                "points": fixture.points,
                "pairs": fixture.pairs,
                "violations": fixture.violations.len(),
                "first_violation": fixture.violations.first(),
            }
        }),
    ))
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

pub fn algebra_suite(scheme: &SchemeSpec, points: &[QcPoint], random_elements: usize, seed: u64) -> Result<SuiteResult> {
    let alg = JordanAlgebra::new(scheme.clone());
    let rep = algebra::jordan_suite(&alg, points, random_elements, 3, seed);
    let generator_failures = rep.commutativity_failures
        + rep.jordan_failures
        + rep.idempotency_failures
        + rep.sum_conservation_failures
        + rep.support_conservation_failures;
    let mut unit_failures = 0;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for p in points.iter().take(8) {
        for q in points.iter().take(8) {
            let a = UnitizedElement { body: AlgebraElement::generator(p.coords.clone()), scalar: half.clone() };
            let b = UnitizedElement { body: AlgebraElement::generator(q.coords.clone()), scalar: -BigRational::one() };
            unit_failures += usize::from(!algebra::unitized_jordan_check(&alg, &a, &b)?);
            unit_failures += usize::from(algebra::unitize(&alg, &UnitizedElement::unit(), &b)? != b);
        }
    }
    let growth = match (points.first(), points.last()) {
        (Some(x), Some(y)) if x != y => Some(algebra::subalgebra_growth_probe(&alg, &x.coords, &y.coords, 10)?),
        _ => None,
    };
    let growth_failures = growth.as_ref().map_or(0, |g| usize::from(!g.passed()));
    let failures = generator_failures + rep.random_failures + rep.errors.len() + unit_failures + growth_failures;
    let unit_pairs = points.len().min(8).pow(2);
    let cases = rep.pairs * 5 + rep.random_pairs + 2 * unit_pairs + usize::from(growth.is_some());
    Ok(SuiteResult::new(
        "algebra",
        cases as u64,
        failures as u64,
        json!({
            "generators": rep,
            "unitized_failures": unit_failures,
            "growth": growth,
        }),
    ))
}

pub fn unit_suite(scheme: &SchemeSpec, points: &[QcPoint]) -> Result<SuiteResult> {
    let alg = JordanAlgebra::new(scheme.clone());
    if !points.iter().any(|p| p.coords.iter().all(GoldenInt::is_zero)) {
        return Ok(SuiteResult::skipped("unit", "the origin is not in the model set".into()));
    }
    let rep = algebra::unit_probe(&alg, points)?;
    let ok = rep.passed();
    Ok(SuiteResult::new("unit", rep.batch as u64, u64::from(!ok), serde_json::to_value(&rep)?))
}

pub fn ideal_suite(scheme: &SchemeSpec, points: &[QcPoint]) -> Result<SuiteResult> {
    let alg = JordanAlgebra::new(scheme.clone());
    let Some(g) = points.iter().find(|p| p.coords.iter().all(GoldenInt::is_zero)).or(points.first()) else {
        return Ok(SuiteResult::skipped("ideal", "empty batch".into()));
    };
    let rep = algebra::ideal_probe(&alg, &g.coords, points)?;
    let ok = rep.proper_on_batch || points.len() == 1;
    Ok(SuiteResult::new("ideal", 1, u64::from(!ok), serde_json::to_value(&rep)?))
}

// ---------------------------------------------------------------------------
// Witt algebra and acceptability
// ---------------------------------------------------------------------------

pub fn witt_suite(scheme: &SchemeSpec, triples: usize, seed: u64) -> Result<SuiteResult> {
    let alg = match WittAlgebra::unwindowed(scheme.lattice) {
        Ok(a) => a,
        Err(QcError::Unsupported(msg)) => return Ok(SuiteResult::skipped("witt", msg)),
        Err(e) => return Err(e),
    };
    let rep = witt::random_jacobi_suite(&alg, triples, seed)?;
    Ok(SuiteResult::new(
        "witt",
        2 * rep.triples as u64,
        (rep.antisymmetry_failures + rep.jacobi_failures) as u64,
        serde_json::to_value(&rep)?,
    ))
}

/// Cap on acceptability samples for windows of dimension ≥ 2, where the
/// check is cubic in the sample count.
const MAX_SPATIAL_SAMPLES: usize = 40;

/// Samples for the acceptability implication: small-denominator rationals on
/// interval windows, star images of the batch otherwise.
pub fn acceptability_samples(scheme: &SchemeSpec, points: &[QcPoint]) -> Vec<crate::linalg::Vector> {
    let mut samples: Vec<crate::linalg::Vector> = points.iter().map(|p| p.star.clone()).collect();
    if scheme.window.dim == 1 {
        if let Some(bb) = scheme.window.bounding_box() {
            let (lo, hi) = (bb[0].0.floor() as i64, bb[0].1.ceil() as i64);
            samples.extend(
                witt::rational_samples(lo, hi, 8)
                    .into_iter()
                    .filter(|s| scheme.window.contains(s).unwrap_or(false)),
            );
        }
    }
    samples.sort();
    samples.dedup();
    if scheme.window.dim > 1 && samples.len() > MAX_SPATIAL_SAMPLES {
        // points are sorted by physical position, so a stride keeps the spread
        let step = samples.len().div_ceil(MAX_SPATIAL_SAMPLES);
        samples = samples.into_iter().step_by(step).collect();
    }
    samples
}

/// Whether every window vertex has non-negative coordinates.
pub fn in_nonnegative_orthant(window: &ConvexWindow) -> bool {
    match window.exact_vertices() {
        Some(vs) => vs.iter().all(|v| v.iter().all(|x| x.sign() >= 0)),
        None => window.bounding_box().is_some_and(|bb| bb.iter().all(|(lo, _)| *lo >= 0.0)),
    }
}

pub fn acceptability_suite(scheme: &SchemeSpec, points: &[QcPoint]) -> Result<SuiteResult> {
    let samples = acceptability_samples(scheme, points);
    let rep = witt::acceptability_check(&scheme.window, &samples)?;
    let keys: Vec<PointKey> = points.iter().map(|p| p.coords.clone()).collect();
    let jacobi = match WittAlgebra::windowed(scheme.clone()) {
        Ok(alg) => Some(witt::jacobi_on_points(&alg, &keys)?),
        Err(QcError::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    // a window straddling the origin must be caught
    let straddle = ConvexWindow::interval(GoldenRat::from_int(-1), Boundary::Closed, GoldenRat::one(), Boundary::Closed)?;
    let counter = witt::acceptability_check(&straddle, &witt::rational_samples(-1, 1, 4))?;
    let applies = in_nonnegative_orthant(&scheme.window);
    let jacobi_failures = jacobi.as_ref().map_or(0, |j| j.jacobi_failures + j.antisymmetry_failures);
    let window_failures = if applies { rep.violations + jacobi_failures } else { 0 };
    let failures = window_failures + usize::from(counter.violations == 0);
    let cases = rep.triples + jacobi.as_ref().map_or(0, |j| j.triples) + 1;
    let mut res = SuiteResult::new(
        "acceptability",
        cases as u64,
        failures as u64,
        json!({
            "nonnegative_orthant": applies,
            "window": rep,
            "windowed_jacobi": jacobi,
            "counterexample_window": counter,
        }),
    );
    if !applies && failures == 0 {
        res.status = SuiteStatus::Informational;
    }
    Ok(res)
}

// ---------------------------------------------------------------------------
// symmetry
// ---------------------------------------------------------------------------

/// The isometries tested for each kind of scheme.
pub fn scheme_symmetries(scheme: &SchemeSpec) -> Vec<LatticeMap> {
    match scheme.kind {
        SchemeKind::Penrose => vec![LatticeMap::penrose_xi()],
        SchemeKind::Z6 => symmetry::icosahedral_table_matrices().into_iter().map(|(_, m)| m).collect(),
        SchemeKind::Z6Icosian => icosian::a5_reference_rows()
            .into_iter()
            .map(|(u, _)| LatticeMap::conjugation(&u))
            .collect(),
        _ => vec![LatticeMap::negation(scheme.lattice)],
    }
}

pub fn symmetry_suite(scheme: &SchemeSpec, points: &[QcPoint], radius: &GoldenRat) -> Result<SuiteResult> {
    let _ = radius;
    let mut reports = Vec::new();
    for rho in scheme_symmetries(scheme) {
        reports.push(symmetry::symmetry_transfer_check(scheme, &rho, points)?);
    }
    let cases: usize = reports.iter().map(|r| r.pairs + r.core_points + 1).sum();
    let failures: usize = reports.iter().filter(|r| r.status != TransferStatus::Pass).count();
    let mut res = SuiteResult::new("symmetry", cases as u64, failures as u64, serde_json::to_value(&reports)?);
    if failures > 0 && reports.iter().all(|r| r.status != TransferStatus::Fail) {
        res.status = SuiteStatus::HypothesisFailure;
    }
    Ok(res)
}

// ---------------------------------------------------------------------------
// Elser-Sloane
// ---------------------------------------------------------------------------

pub fn elser_sloane_suite() -> Result<SuiteResult> {
    let verts = scheme::elser_sloane_vertices()?;
    let window = scheme::elser_sloane_window()?;
    let problems = window.validate();
    let es = scheme::elser_sloane()?;
    let pts = es.enumerate(&GoldenRat::from_int(3))?;
    let uncertified = pts.iter().filter(|p| !es.certify(p)).count();
    let closure = quasiadd::check_closure(&es, &pts);
    let keys: std::collections::HashSet<&PointKey> = pts.iter().map(|p| &p.coords).collect();
    let outside_batch = pts
        .iter()
        .flat_map(|x| pts.iter().map(move |y| quasiadd::qadd(&x.coords, &y.coords)))
        .filter(|z| es.lattice.physical_norm2(z) <= GoldenRat::from_int(9) && !keys.contains(z))
        .count();
    let failures = u64::from(verts.len() != 720)
        + problems.len() as u64
        + u64::from(pts.is_empty())
        + uncertified as u64
        + closure.violations.len() as u64
        + outside_batch as u64;
    Ok(SuiteResult::new(
        "elser-sloane",
        (2 + window.facets.len() + pts.len() + closure.pairs * 2) as u64,
        failures,
        json!({
            "vertices": verts.len(),
            "facets": window.facets.len(),
            "validation_problems": problems,
            "points": pts.len(),
            "uncertified": uncertified,
            "closure_violations": closure.violations.len(),
            "products_inside_ball_missing_from_batch": outside_batch,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{fibonacci, fibonacci_palindromic};

    #[test]
    fn sign_200_bit_agrees_on_examples() {
        assert_eq!(sign_200_bit(&GoldenRat::from_parts(1, 1, -1, 1)), Some(-1));
        assert_eq!(sign_200_bit(&GoldenRat::from_parts(3, 1, 1, 1)), Some(1));
        assert_eq!(sign_200_bit(&GoldenRat::zero()), Some(0));
        // −9/4 + √5 ≈ −0.014
        assert_eq!(sign_200_bit(&GoldenRat::from_parts(-9, 4, 1, 1)), Some(-1));
    }

    #[test]
    fn small_suites_pass() {
        let s = fibonacci_palindromic();
        let opts = VerifyOptions { cases: 300, random_elements: 0, ..Default::default() };
        let rep = run(&s, &["golden", "icosian", "coxeter", "quasiadd", "closure", "unit", "ideal", "witt", "symmetry"], &opts).unwrap();
        for r in &rep.suites {
            assert_eq!(r.status, SuiteStatus::Pass, "{}: {}", r.suite, r.details);
        }
    }

    #[test]
    fn half_open_window_is_a_hypothesis_failure() {
        let opts = VerifyOptions::default();
        let rep = run(&fibonacci(), &["symmetry"], &opts).unwrap();
        assert_eq!(rep.suites[0].status, SuiteStatus::HypothesisFailure);
        assert!(rep.has_hypothesis_failures() && !rep.has_failures());
    }
}
