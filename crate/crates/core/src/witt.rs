//! The aperiodic Witt bracket `[L_x, L_y] = (x − y) χ_Ω(x* + y*) L_{x+y}` and
//! the acceptability test for windows.
//!
//! Coefficients live in the lattice's own scalar ring: ℤ[τ] on the line and
//! ℤ[ξ] = ℤ[τ] ⊕ ℤ[τ]ξ² in the Penrose plane. Both rings are commutative,
//! which the Jacobi identity of the unwindowed bracket relies on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{QcError, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::linalg::Vector;
use crate::scheme::{fmt_key, LatticeKind, PointKey, SchemeSpec};
use crate::window::ConvexWindow;

fn add(x: &[GoldenInt], y: &[GoldenInt]) -> PointKey {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[GoldenInt], y: &[GoldenInt]) -> PointKey {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn is_zero(x: &[GoldenInt]) -> bool {
    x.iter().all(GoldenInt::is_zero)
}

fn check_ring(lattice: LatticeKind) -> Result<()> {
    match lattice {
        LatticeKind::Golden | LatticeKind::Penrose => Ok(()),
        other => Err(QcError::Unsupported(format!(
            "the Witt bracket needs a commutative coefficient ring; {} has none",
            other.name()
        ))),
    }
}

pub fn ring_one(lattice: LatticeKind) -> PointKey {
    let mut v = vec![GoldenInt::zero(); lattice.rank()];
    v[0] = GoldenInt::one();
    v
}

/// Product in ℤ[τ] or ℤ[ξ] (using ξ⁴ = −1 − τξ²).
pub fn ring_mul(lattice: LatticeKind, a: &[GoldenInt], b: &[GoldenInt]) -> Result<PointKey> {
    check_ring(lattice)?;
    Ok(match lattice {
        LatticeKind::Golden => vec![&a[0] * &b[0]],
        _ => {
            let bb = &a[1] * &b[1];
            vec![&(&a[0] * &b[0]) - &bb, &(&(&a[0] * &b[1]) + &(&a[1] * &b[0])) - &(&GoldenInt::tau() * &bb)]
        }
    })
}

/// `Σ c_x L_x` with ring coefficients `c_x`, zero-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WittElement {
    terms: BTreeMap<PointKey, PointKey>,
}

impl WittElement {
    pub fn zero() -> WittElement {
        WittElement::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PointKey, PointKey)>) -> WittElement {
        let mut out = WittElement::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: PointKey, c: PointKey) {
        if is_zero(&c) {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = add(o.get(), &c);
                if is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<PointKey, PointKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WittElement) -> WittElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{} L{}", fmt_key(c), fmt_key(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Witt algebra over a lattice, windowed by a scheme or with `χ ≡ 1`.
pub struct WittAlgebra {
    pub lattice: LatticeKind,
    pub scheme: Option<SchemeSpec>,
}

impl WittAlgebra {
    pub fn unwindowed(lattice: LatticeKind) -> Result<WittAlgebra> {
        check_ring(lattice)?;
        Ok(WittAlgebra { lattice, scheme: None })
    }

    pub fn windowed(scheme: SchemeSpec) -> Result<WittAlgebra> {
        check_ring(scheme.lattice)?;
        Ok(WittAlgebra {
            lattice: scheme.lattice,
            scheme: Some(scheme),
        })
    }

    pub fn generator(&self, x: PointKey) -> WittElement {
        WittElement::from_terms([(x, ring_one(self.lattice))])
    }

    /// `χ_Ω(x* + y*)`.
    pub fn chi(&self, x: &[GoldenInt], y: &[GoldenInt]) -> bool {
        self.scheme.as_ref().is_none_or(|s| s.window_admits(&add(x, y)))
    }

    pub fn bracket_generators(&self, x: &[GoldenInt], y: &[GoldenInt]) -> WittElement {
        if x == y || !self.chi(x, y) {
            return WittElement::zero();
        }
        WittElement::from_terms([(add(x, y), sub(x, y))])
    }

    pub fn bracket(&self, a: &WittElement, b: &WittElement) -> Result<WittElement> {
        let mut out = WittElement::zero();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                let c = ring_mul(self.lattice, cx, cy)?;
                for (k, v) in self.bracket_generators(x, y).terms {
                    out.add_term(k, ring_mul(self.lattice, &c, &v)?);
                }
            }
        }
        Ok(out)
    }

    pub fn jacobi(&self, a: &WittElement, b: &WittElement, c: &WittElement) -> Result<bool> {
        let t1 = self.bracket(&self.bracket(a, b)?, c)?;
        let t2 = self.bracket(&self.bracket(b, c)?, a)?;
        let t3 = self.bracket(&self.bracket(c, a)?, b)?;
        Ok(t1.add(&t2).add(&t3).is_zero())
    }

    pub fn antisymmetric(&self, a: &WittElement, b: &WittElement) -> Result<bool> {
        Ok(self.bracket(a, b)?.add(&self.bracket(b, a)?).is_zero())
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, terms: usize, bound: i64) -> WittElement {
        WittElement::from_terms((0..terms).map(|_| (self.lattice.random_point(rng, bound), self.lattice.random_point(rng, 3))))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct JacobiReport {
    pub lattice: String,
    pub windowed: bool,
    pub triples: usize,
    pub antisymmetry_failures: usize,
    pub jacobi_failures: usize,
    pub witness: Option<[String; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_failures == 0 && self.jacobi_failures == 0
    }
}

/// Antisymmetry and Jacobi on `triples` random triples of two-term elements.
pub fn random_jacobi_suite(alg: &WittAlgebra, triples: usize, seed: u64) -> Result<JacobiReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<[WittElement; 3]> = (0..triples)
        .map(|_| [0, 1, 2].map(|_| alg.random_element(&mut rng, 2, 12)))
        .collect();
    let results: Vec<(bool, bool)> = cases
        .par_iter()
        .map(|[a, b, c]| Ok((alg.antisymmetric(a, b)?, alg.jacobi(a, b, c)?)))
        .collect::<Result<_>>()?;
    let mut rep = JacobiReport {
        lattice: alg.lattice.name().into(),
        windowed: alg.scheme.is_some(),
        triples,
        ..Default::default()
    };
    for ((anti, jac), [a, b, c]) in results.iter().zip(&cases) {
        rep.antisymmetry_failures += usize::from(!anti);
        if !jac {
            rep.jacobi_failures += 1;
            rep.witness.get_or_insert_with(|| [a.to_string(), b.to_string(), c.to_string()]);
        }
    }
    Ok(rep)
}

/// Jacobi for the windowed bracket on every ordered triple of generators.
pub fn jacobi_on_points(alg: &WittAlgebra, points: &[PointKey]) -> Result<JacobiReport> {
    let gens: Vec<WittElement> = points.iter().map(|p| alg.generator(p.clone())).collect();
    let n = gens.len();
    let idx: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let fails: Vec<(usize, usize, usize)> = idx
        .par_iter()
        .filter_map(|&(i, j, k)| match alg.jacobi(&gens[i], &gens[j], &gens[k]) {
            Ok(true) => None,
            _ => Some((i, j, k)),
        })
        .collect();
    Ok(JacobiReport {
        lattice: alg.lattice.name().into(),
        windowed: alg.scheme.is_some(),
        triples: idx.len(),
        antisymmetry_failures: 0,
        jacobi_failures: fails.len(),
        witness: fails.first().map(|&(i, j, k)| [fmt_key(&points[i]), fmt_key(&points[j]), fmt_key(&points[k])]),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AcceptabilityReport {
    pub samples: usize,
    pub triples: usize,
    pub violations: usize,
    /// `(x*, y*, z*)` with `x*+y*+z* ∈ Ω`, `x*+y* ∈ Ω` but `x*+z* ∉ Ω`.
    pub witness: Option<[String; 3]>,
}

impl AcceptabilityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn fmt_vec(v: &[GoldenRat]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn vadd(x: &[GoldenRat], y: &[GoldenRat]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// Tests `χ(x+y+z) ∧ χ(x+y) ⇒ χ(x+z)` on every ordered triple of samples.
pub fn acceptability_check(window: &ConvexWindow, samples: &[Vector]) -> Result<AcceptabilityReport> {
    for s in samples {
        if !window.contains(s)? {
            return Err(QcError::Precondition(format!("sample {} is outside the window", fmt_vec(s))));
        }
    }
    let n = samples.len();
    let found: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in 0..n {
                let xy = vadd(&samples[i], &samples[j]);
                if !window.contains(&xy).unwrap_or(false) {
                    continue;
                }
                for k in 0..n {
                    if window.contains(&vadd(&xy, &samples[k])).unwrap_or(false)
                        && !window.contains(&vadd(&samples[i], &samples[k])).unwrap_or(false)
                    {
                        out.push((i, j, k));
                    }
                }
            }
            out
        })
        .collect();
    Ok(AcceptabilityReport {
        samples: n,
        triples: n * n * n,
        violations: found.len(),
        witness: found
            .first()
            .map(|&(i, j, k)| [fmt_vec(&samples[i]), fmt_vec(&samples[j]), fmt_vec(&samples[k])]),
    })
}

/// Every rational `p/q` in `[lo, hi]` with `q ≤ max_den`, as 1-vectors.
pub fn rational_samples(lo: i64, hi: i64, max_den: i64) -> Vec<Vector> {
    let mut out: Vec<GoldenRat> = (1..=max_den)
        .flat_map(|q| (lo * q..=hi * q).map(move |p| GoldenRat::ratio(p, q)))
        .collect();
    out.sort();
    out.dedup();
    out.into_iter().map(|x| vec![x]).collect()
}

/// Samples drawn from a scheme's window: star images of model-set points.
pub fn star_samples(scheme: &SchemeSpec, points: &[PointKey]) -> Vec<Vector> {
    points.iter().map(|p| scheme.star_map(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{enumerate, fibonacci_unit, penrose};
    use crate::window::Boundary;

    fn g(a: i64, b: i64) -> PointKey {
        vec![GoldenInt::new(a, b)]
    }

    #[test]
    fn bracket_basics() {
        let w = WittAlgebra::windowed(fibonacci_unit()).unwrap();
        let x = g(1, 1);
        assert!(w.bracket_generators(&x, &x).is_zero());
        // 1+τ has star 2−τ ≈ 0.38 and 0 has star 0: sum inside [0, 1]
        let b = w.bracket_generators(&x, &g(0, 0));
        assert_eq!(b, WittElement::from_terms([(x.clone(), x.clone())]));
        // 1 has star 1, so 1 + (2−τ) ≈ 1.38 falls outside
        assert!(w.bracket_generators(&g(1, 0), &x).is_zero());
        assert!(WittAlgebra::unwindowed(LatticeKind::Z6).is_err());
    }

    #[test]
    fn penrose_ring() {
        // ξ² · ξ² = ξ⁴ = −1 − τξ²
        let xi2 = vec![GoldenInt::zero(), GoldenInt::one()];
        assert_eq!(
            ring_mul(LatticeKind::Penrose, &xi2, &xi2).unwrap(),
            vec![GoldenInt::new(-1, 0), GoldenInt::new(0, -1)]
        );
    }

    #[test]
    fn unwindowed_jacobi() {
        for lat in [LatticeKind::Golden, LatticeKind::Penrose] {
            let w = WittAlgebra::unwindowed(lat).unwrap();
            let r = random_jacobi_suite(&w, 100, 5).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn unit_interval_is_acceptable() {
        let w = fibonacci_unit().window;
        let r = acceptability_check(&w, &rational_samples(0, 1, 8)).unwrap();
        assert!(r.passed(), "{r:?}");
        let pts: Vec<PointKey> = enumerate(&fibonacci_unit(), &GoldenRat::from_int(6)).unwrap().into_iter().map(|p| p.coords).collect();
        let alg = WittAlgebra::windowed(fibonacci_unit()).unwrap();
        assert!(jacobi_on_points(&alg, &pts).unwrap().passed());
    }

    #[test]
    fn straddling_window_has_violation() {
        let w = ConvexWindow::interval(GoldenRat::from_int(-1), Boundary::Closed, GoldenRat::one(), Boundary::Closed).unwrap();
        let r = acceptability_check(&w, &rational_samples(-1, 1, 4)).unwrap();
        assert!(r.violations > 0);
        assert!(r.witness.is_some());
    }

    #[test]
    fn penrose_pentagon_samples() {
        let s = penrose();
        let pts: Vec<PointKey> = enumerate(&s, &GoldenRat::from_int(2)).unwrap().into_iter().map(|p| p.coords).collect();
        let r = acceptability_check(&s.window, &star_samples(&s, &pts)).unwrap();
        // the pentagon contains the origin, so x* = z* = −y* can violate
        // the implication
        assert!(r.samples > 5);
        assert!(r.violations > 0, "{r:?}");
    }
}
