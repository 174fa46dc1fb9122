//! Quasiaddition `x ⊢ y = τ²x − τy` on lattice coordinates.
//!
//! The operation is ℤ[τ]-linear in each argument, so it acts componentwise on
//! every coordinate representation used by the schemes (including icosian
//! half-numerators).

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{QcError, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::scheme::{fmt_key, LatticeKind, PointKey, QcPoint, SchemeSpec};
use crate::window::{Boundary, ConvexWindow};

pub fn qadd(x: &[GoldenInt], y: &[GoldenInt]) -> PointKey {
    let t = GoldenInt::tau();
    let t2 = GoldenInt::tau_squared();
    x.iter().zip(y).map(|(a, b)| &(&t2 * a) - &(&t * b)).collect()
}

fn add(x: &[GoldenInt], y: &[GoldenInt]) -> PointKey {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[GoldenInt], y: &[GoldenInt]) -> PointKey {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Integral-coordinate form: with `(a, b)` one τ-pair of `x` and `(a', b')`
/// the matching pair of `y`, the result pair is
/// `((a−a')+(b−b')+a', (a−a')+(b−b')+b)`.
pub fn qadd_integral(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(x.len(), y.len());
    assert!(x.len().is_multiple_of(2), "integral coordinates come in τ-pairs");
    let mut out = Vec::with_capacity(x.len());
    for (px, py) in x.chunks(2).zip(y.chunks(2)) {
        let s = (&px[0] - &py[0]) + (&px[1] - &py[1]);
        out.push(&s + &py[0]);
        out.push(&s + &px[1]);
    }
    out
}

pub fn to_integral(x: &[GoldenInt]) -> Vec<BigInt> {
    x.iter().flat_map(|g| [g.a.clone(), g.b.clone()]).collect()
}

pub fn from_integral(c: &[BigInt]) -> PointKey {
    c.chunks(2)
        .map(|p| GoldenInt {
            a: p[0].clone(),
            b: p[1].clone(),
        })
        .collect()
}

/// `(((y ⊢ x) ⊢ x) ⊢ …) ⊢ x` with `k` quasiadditions.
pub fn qadd_repeated(y: &[GoldenInt], x: &[GoldenInt], k: u32) -> Result<PointKey> {
    if k == 0 {
        return Err(QcError::Precondition("k must be at least 1".into()));
    }
    let mut acc = y.to_vec();
    for _ in 0..k {
        acc = qadd(&acc, x);
    }
    Ok(acc)
}

/// `(1+τ)^k (y − x) + x`.
pub fn qadd_repeated_closed(y: &[GoldenInt], x: &[GoldenInt], k: u32) -> PointKey {
    let f = GoldenInt::tau_squared().pow(k);
    sub(y, x).iter().zip(x).map(|(d, xi)| &(&f * d) + xi).collect()
}

/// `star(x ⊢ y) == (1−τ)² x* − (1−τ) y*`.
pub fn star_compatible(x: &[GoldenInt], y: &[GoldenInt]) -> bool {
    let c = GoldenInt::tau_conj();
    let c2 = &c * &c;
    let lhs: PointKey = qadd(x, y).iter().map(GoldenInt::star).collect();
    let rhs: PointKey = x.iter().zip(y).map(|(a, b)| &(&c2 * &a.star()) - &(&c * &b.star())).collect();
    lhs == rhs
}

pub const IDENTITY_NAMES: [&str; 8] = [
    "idempotent",
    "flexible",
    "power-associative-left",
    "power-associative-right",
    "left-cancellation",
    "translation-invariance",
    "integral-formula",
    "star-compatibility",
];

/// Names of the identities that fail on `(x, y, u)`:
/// `x⊢x = x`, `x⊢(y⊢x) = (x⊢y)⊢x`, `x⊢(y⊢y) = x⊢y`, `(x⊢x)⊢y = x⊢y`,
/// `x⊢(x⊢y) = y⊢x`, `(x+u)⊢(y+u) = (x⊢y)+u`, the integral-coordinate formula
/// and star compatibility.
pub fn check_identities(x: &[GoldenInt], y: &[GoldenInt], u: &[GoldenInt]) -> Vec<&'static str> {
    let xy = qadd(x, y);
    let checks = [
        qadd(x, x) == x,
        qadd(x, &qadd(y, x)) == qadd(&xy, x),
        qadd(x, &qadd(y, y)) == xy,
        qadd(&qadd(x, x), y) == xy,
        qadd(x, &xy) == qadd(y, x),
        qadd(&add(x, u), &add(y, u)) == add(&xy, u),
        from_integral(&qadd_integral(&to_integral(x), &to_integral(y))) == xy,
        star_compatible(x, y),
    ];
    IDENTITY_NAMES
        .iter()
        .zip(checks)
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect()
}

/// `x ⊢ y = x` exactly when `y = x`.
pub fn fixed_point_law(x: &[GoldenInt], y: &[GoldenInt]) -> bool {
    (qadd(x, y) == x) == (x == y)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub lattice: String,
    pub cases: usize,
    pub passes: BTreeMap<String, usize>,
    pub failures: BTreeMap<String, usize>,
    pub repeated_closed_form_cases: usize,
    pub repeated_closed_form_failures: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.values().all(|&n| n == 0) && self.repeated_closed_form_failures == 0
    }
}

/// Replays every identity on `cases` random triples, plus the repeated
/// quasiaddition closed form for `k ≤ k_max` on each pair.
pub fn random_identity_suite(lattice: LatticeKind, cases: usize, k_max: u32, seed: u64) -> IdentityReport {
    let triples: Vec<(PointKey, PointKey, PointKey)> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..cases)
            .map(|_| (lattice.random_point(&mut rng, 40), lattice.random_point(&mut rng, 40), lattice.random_point(&mut rng, 40)))
            .collect()
    };
    let results: Vec<(Vec<&'static str>, usize)> = triples
        .par_iter()
        .map(|(x, y, u)| {
            let fails = check_identities(x, y, u);
            let rep = (1..=k_max)
                .filter(|&k| qadd_repeated(y, x, k).ok() != Some(qadd_repeated_closed(y, x, k)))
                .count();
            (fails, rep)
        })
        .collect();
    let mut report = IdentityReport {
        lattice: lattice.name().into(),
        cases,
        repeated_closed_form_cases: cases * k_max as usize,
        ..Default::default()
    };
    for name in IDENTITY_NAMES {
        report.passes.insert(name.into(), 0);
        report.failures.insert(name.into(), 0);
    }
    for (fails, rep) in results {
        for name in IDENTITY_NAMES {
            let slot = if fails.contains(&name) { &mut report.failures } else { &mut report.passes };
            *slot.get_mut(name).expect("registered") += 1;
        }
        report.repeated_closed_form_failures += rep;
    }
    report
}

/// A pair `(x, y)` with `x ⊢ y ≠ y ⊢ x`, found among `points`.
pub fn noncommutative_witness(points: &[PointKey]) -> Option<(PointKey, PointKey)> {
    points.iter().flat_map(|x| points.iter().map(move |y| (x, y))).find(|(x, y)| qadd(x, y) != qadd(y, x)).map(|(x, y)| (x.clone(), y.clone()))
}

/// A triple with `(x ⊢ y) ⊢ z ≠ x ⊢ (y ⊢ z)`, found among `points`.
pub fn nonassociative_witness(points: &[PointKey]) -> Option<(PointKey, PointKey, PointKey)> {
    for x in points {
        for y in points {
            for z in points {
                if qadd(&qadd(x, y), z) != qadd(x, &qadd(y, z)) {
                    return Some((x.clone(), y.clone(), z.clone()));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub scheme: String,
    pub points: usize,
    pub pairs: usize,
    pub violations: Vec<(String, String)>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `x ⊢ y ∈ Ξ` for every ordered pair of `points`.
pub fn check_closure(scheme: &SchemeSpec, points: &[QcPoint]) -> ClosureReport {
    check_closure_by(&scheme.name, points.iter().map(|p| p.coords.clone()).collect(), |c| {
        scheme.lattice.contains(c) && scheme.window_admits(c)
    })
}

/// Closure of `points` under ⊢ with respect to an arbitrary membership test.
pub fn check_closure_by(name: &str, points: Vec<PointKey>, member: impl Fn(&[GoldenInt]) -> bool + Sync) -> ClosureReport {
    let violations: Vec<(String, String)> = points
        .par_iter()
        .flat_map_iter(|x| {
            points
                .iter()
                .filter(|y| !member(&qadd(x, y)))
                .map(|y| (fmt_key(x), fmt_key(y)))
                .collect::<Vec<_>>()
        })
        .collect();
    ClosureReport {
        scheme: name.into(),
        points: points.len(),
        pairs: points.len() * points.len(),
        violations,
    }
}

/// Fibonacci lattice with the non-convex window `[−½, −¼] ∪ [¼, ½]`: the
/// model-set points up to `radius` and the closure report against the union.
pub fn nonconvex_fixture(radius: i64) -> Result<ClosureReport> {
    let half = GoldenRat::ratio(1, 2);
    let quarter = GoldenRat::ratio(1, 4);
    let left = ConvexWindow::interval(-&half, Boundary::Closed, -&quarter, Boundary::Closed)?;
    let right = ConvexWindow::interval(quarter, Boundary::Closed, half, Boundary::Closed)?;
    let member = |c: &[GoldenInt]| {
        let s = vec![c[0].star().to_rat()];
        left.contains(&s).unwrap_or(false) || right.contains(&s).unwrap_or(false)
    };
    let bound = GoldenRat::from_int(radius);
    let points: Vec<PointKey> = (-4 * radius..=4 * radius)
        .flat_map(|b| (-4 * radius..=4 * radius).map(move |a| vec![GoldenInt::new(a, b)]))
        .filter(|c| c[0].to_rat().abs() <= bound && member(c))
        .collect();
    Ok(check_closure_by("fibonacci-two-intervals", points, member))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{enumerate, fibonacci_palindromic};

    fn g(a: i64, b: i64) -> Vec<GoldenInt> {
        vec![GoldenInt::new(a, b)]
    }

    #[test]
    fn worked_examples() {
        let x = g(1, 1);
        assert_eq!(qadd(&x, &x), x);
        assert_eq!(qadd(&g(0, 0), &x), g(-1, -2));
        assert_eq!(qadd(&x, &g(0, 0)), g(2, 3));
    }

    #[test]
    fn repeated_examples() {
        let x = g(1, 1);
        let y = g(0, 0);
        let two = qadd_repeated(&y, &x, 2).unwrap();
        assert_eq!(two, qadd(&qadd(&y, &x), &x));
        assert_eq!(two, qadd_repeated_closed(&y, &x, 2));
        assert_eq!(qadd_repeated(&x, &x, 7).unwrap(), x);
        assert!(qadd_repeated(&x, &x, 0).is_err());
    }

    #[test]
    fn integral_formula_matches_on_icosians() {
        let r = random_identity_suite(LatticeKind::Icosian, 200, 4, 3);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn zero_triple() {
        let z = g(0, 0);
        assert!(check_identities(&z, &z, &z).is_empty());
    }

    #[test]
    fn palindromic_closure_and_witnesses() {
        let s = fibonacci_palindromic();
        let pts = enumerate(&s, &GoldenRat::from_int(9)).unwrap();
        let rep = check_closure(&s, &pts);
        assert_eq!(rep.pairs, 81);
        assert!(rep.passed());
        let keys: Vec<PointKey> = pts.iter().map(|p| p.coords.clone()).collect();
        assert!(keys.iter().all(|x| keys.iter().all(|y| fixed_point_law(x, y))));
        assert!(noncommutative_witness(&keys).is_some());
        assert!(nonassociative_witness(&keys).is_some());
    }

    #[test]
    fn nonconvex_window_breaks_closure() {
        let rep = nonconvex_fixture(10).unwrap();
        assert!(rep.points > 2, "{rep:?}");
        assert!(!rep.passed());
    }
}
