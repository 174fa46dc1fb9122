//! Symmetries acting on lattice coordinates and their transfer to the algebra.
//!
//! A map is given as a matrix on coordinate values. On the physical side it
//! acts as `L M L⁻¹`, on the inner side as `L* M* L*⁻¹` (entrywise Galois
//! conjugate), which is what the star map intertwines.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

use crate::error::{QcError, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::icosian::{icosian_ring_lattice, Icosian};
use crate::linalg::{self, Matrix, Vector};
use crate::quasiadd::qadd;
use crate::roots::Reflection;
use crate::scheme::{LatticeKind, PointKey, QcPoint, SchemeSpec};

#[derive(Clone, Debug)]
pub struct LatticeMap {
    pub name: String,
    pub matrix: Matrix,
}

fn h(x: GoldenRat) -> GoldenRat {
    &x * &GoldenRat::ratio(1, 2)
}

impl LatticeMap {
    pub fn new(name: &str, matrix: Matrix) -> LatticeMap {
        LatticeMap {
            name: name.into(),
            matrix,
        }
    }

    pub fn identity(lattice: LatticeKind) -> LatticeMap {
        LatticeMap::new("identity", linalg::identity(lattice.rank()))
    }

    pub fn negation(lattice: LatticeKind) -> LatticeMap {
        let m = linalg::identity(lattice.rank())
            .into_iter()
            .map(|row| row.iter().map(|x| -x).collect())
            .collect();
        LatticeMap::new("negation", m)
    }

    /// Multiplication by ξ on `α + βξ²`: `ξ = τ + τξ²`, `ξ³ = −τ − ξ²`.
    pub fn penrose_xi() -> LatticeMap {
        let t = GoldenRat::tau();
        LatticeMap::new(
            "xi",
            vec![vec![t.clone(), -&t], vec![t, GoldenRat::from_int(-1)]],
        )
    }

    /// `x ↦ u x` on quaternion components.
    pub fn left_multiplication(u: &Icosian) -> LatticeMap {
        let [a, b, c, d] = u.components();
        let m = vec![
            vec![a.clone(), -&b, -&c, -&d],
            vec![b.clone(), a.clone(), -&d, c.clone()],
            vec![c.clone(), d.clone(), a.clone(), -&b],
            vec![d, -&c, b, a],
        ];
        LatticeMap::new(&format!("left {u}"), m)
    }

    /// `x ↦ u x ū` on pure quaternions (a rotation when `u` is a unit).
    pub fn conjugation(u: &Icosian) -> LatticeMap {
        let l = LatticeMap::left_multiplication(u).matrix;
        // x ↦ x ū
        let [a, b, c, d] = u.conjugate().components();
        let right = vec![
            vec![a.clone(), -&b, -&c, -&d],
            vec![b.clone(), a.clone(), d.clone(), -&c],
            vec![c.clone(), -&d, a.clone(), b.clone()],
            vec![d, c, -&b, a],
        ];
        let full = linalg::mat_mul(&right, &l);
        let m = (1..4).map(|i| (1..4).map(|j| full[i][j].clone()).collect()).collect();
        LatticeMap::new(&format!("conj {u}"), m)
    }

    pub fn reflection(r: &Reflection) -> LatticeMap {
        LatticeMap::new("reflection", r.matrix())
    }

    fn from_values(lattice: LatticeKind, v: &[GoldenRat]) -> Option<PointKey> {
        let s = if lattice.halved() { GoldenRat::from_int(2) } else { GoldenRat::one() };
        v.iter().map(|x| (x * &s).to_golden_int()).collect()
    }

    /// Image of a lattice point, or `None` if it leaves the lattice.
    pub fn apply(&self, lattice: LatticeKind, coords: &[GoldenInt]) -> Option<PointKey> {
        let img = linalg::mat_vec(&self.matrix, &lattice.values(coords));
        LatticeMap::from_values(lattice, &img).filter(|c| lattice.contains(c))
    }

    pub fn physical_action(&self, lattice: LatticeKind) -> Matrix {
        let l = lattice.physical_matrix();
        let li = linalg::inverse(&l).expect("physical map invertible");
        linalg::mat_mul(&linalg::mat_mul(&l, &self.matrix), &li)
    }

    pub fn inner_action(&self, lattice: LatticeKind) -> Matrix {
        let s = lattice.star_matrix();
        let si = linalg::inverse(&s).expect("star map invertible");
        linalg::mat_mul(&linalg::mat_mul(&s, &linalg::mat_star(&self.matrix)), &si)
    }

    /// Whether the physical action preserves the weighted Euclidean metric.
    pub fn is_isometry(&self, lattice: LatticeKind) -> bool {
        let a = self.physical_action(lattice);
        let w = lattice.physical_weights();
        let n = w.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let g = (0..n).fold(GoldenRat::zero(), |acc, k| &acc + &(&w[k] * &(&a[k][i] * &a[k][j])));
                g == if i == j { w[i].clone() } else { GoldenRat::zero() }
            })
        })
    }

    /// Whether the map sends the whole lattice into itself (checked on a
    /// ℤ-basis).
    pub fn preserves_lattice(&self, lattice: LatticeKind) -> bool {
        lattice_z_basis(lattice).iter().all(|b| self.apply(lattice, b).is_some())
    }
}

/// A ℤ-basis of the lattice in coordinate form.
pub fn lattice_z_basis(lattice: LatticeKind) -> Vec<PointKey> {
    match lattice {
        LatticeKind::Icosian => icosian_ring_lattice()
            .basis()
            .iter()
            .map(|r| {
                let c: [BigInt; 8] = std::array::from_fn(|i| r[i].clone());
                Icosian::from_half_coords(&c).num.to_vec()
            })
            .collect(),
        LatticeKind::PureIcosian => pure_icosian_basis(),
        _ => {
            let n = lattice.rank();
            (0..n)
                .flat_map(|j| {
                    [GoldenInt::one(), GoldenInt::tau()].map(|g| {
                        let mut v = vec![GoldenInt::zero(); n];
                        v[j] = g;
                        v
                    })
                })
                .collect()
        }
    }
}

/// ℤ-basis of the pure icosians `{(x, y, z) : x i + y j + z k ∈ 𝕀}` in
/// half-numerator form, from the kernel of the real-part projection.
fn pure_icosian_basis() -> Vec<PointKey> {
    // Hermite basis rows are upper triangular in (a0, b0, a1, …); rows whose
    // first two entries vanish span exactly the pure part.
    icosian_ring_lattice()
        .basis()
        .iter()
        .filter(|r| r[0] == BigInt::from(0) && r[1] == BigInt::from(0))
        .map(|r| {
            let c: [BigInt; 8] = std::array::from_fn(|i| r[i].clone());
            Icosian::from_half_coords(&c).num[1..].to_vec()
        })
        .collect()
}

/// The five icosahedral isometries of ℝ³ attached to the rows of the icosian
/// correspondence table, exactly as printed, keyed by their A₅ labels.
pub fn icosahedral_table_matrices() -> Vec<(String, LatticeMap)> {
    let one = GoldenRat::one();
    let t = GoldenRat::tau();
    let ti = GoldenRat::tau_inv();
    let n = |x: &GoldenRat| -x;
    let rows: Vec<(&str, [[GoldenRat; 3]; 3])> = vec![
        ("(2,3)(4,5)", [[n(&one), ti.clone(), n(&t)], [ti.clone(), n(&t), n(&one)], [n(&t), n(&one), ti.clone()]]),
        ("(2,4)(5,3)", [[n(&t), one.clone(), n(&ti)], [one.clone(), n(&ti), t.clone()], [n(&ti), t.clone(), n(&one)]]),
        ("(2,5)(3,4)", [[n(&ti), n(&t), one.clone()], [n(&t), n(&one), n(&ti)], [one.clone(), n(&ti), n(&t)]]),
        ("(3,4,5)", [[n(&one), ti.clone(), t.clone()], [n(&ti), t.clone(), n(&one)], [n(&t), n(&one), n(&ti)]]),
        ("(1,3)(4,5)", [[n(&one), n(&ti), t.clone()], [n(&ti), n(&t), n(&one)], [t.clone(), n(&one), ti.clone()]]),
    ];
    rows.into_iter()
        .map(|(label, m)| {
            let matrix = m.iter().map(|r| r.iter().map(|x| h(x.clone())).collect()).collect();
            (label.to_string(), LatticeMap::new(label, matrix))
        })
        .collect()
}

fn qadd_values(x: &[GoldenRat], y: &[GoldenRat]) -> Vector {
    let t = GoldenRat::tau();
    let t2 = &t * &t;
    x.iter().zip(y).map(|(a, b)| &(&t2 * a) - &(&t * b)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransferStatus {
    Pass,
    HypothesisFailure,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub scheme: String,
    pub map: String,
    pub status: TransferStatus,
    pub window_invariant: bool,
    pub lattice_preserving: bool,
    pub isometry: bool,
    pub pairs: usize,
    pub equivariance_failures: usize,
    pub core_points: usize,
    /// Batch points whose image is missing from the batch.
    pub core_failures: usize,
    pub note: String,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.status == TransferStatus::Pass
    }
}

/// Checks `ρ(Ω) = Ω` on the facet set, `ρ(x⊢y) = ρ(x)⊢ρ(y)` on every pair
/// of `points`, and that `ρ` maps the batch (a ball, so a radius core for an
/// isometry) onto itself. A window that is not invariant is reported as a
/// hypothesis failure.
pub fn symmetry_transfer_check(scheme: &SchemeSpec, rho: &LatticeMap, points: &[QcPoint]) -> Result<TransferReport> {
    let lat = scheme.lattice;
    if rho.matrix.len() != lat.rank() {
        return Err(QcError::DimensionMismatch {
            expected: lat.rank(),
            found: rho.matrix.len(),
        });
    }
    let window_invariant = scheme.window.is_invariant_under(&rho.inner_action(lat))?;
    let lattice_preserving = rho.preserves_lattice(lat);
    let isometry = rho.is_isometry(lat);

    let values: Vec<Vector> = points.iter().map(|p| lat.values(&p.coords)).collect();
    let images: Vec<Vector> = values.iter().map(|v| linalg::mat_vec(&rho.matrix, v)).collect();
    let equivariance_failures: usize = (0..points.len())
        .into_par_iter()
        .map(|i| {
            (0..points.len())
                .filter(|&j| {
                    let lhs = linalg::mat_vec(&rho.matrix, &qadd_values(&values[i], &values[j]));
                    lhs != qadd_values(&images[i], &images[j])
                })
                .count()
        })
        .sum();

    let batch: HashSet<&PointKey> = points.iter().map(|p| &p.coords).collect();
    let core_failures = points
        .par_iter()
        .filter(|p| rho.apply(lat, &p.coords).is_none_or(|img| !batch.contains(&img)))
        .count();

    let n = points.len();
    let status = if !window_invariant {
        TransferStatus::HypothesisFailure
    } else if lattice_preserving && isometry && equivariance_failures == 0 && core_failures == 0 {
        TransferStatus::Pass
    } else {
        TransferStatus::Fail
    };
    let note = match status {
        TransferStatus::Pass => "relabelling L_x ↦ L_ρ(x) preserves the product on the batch".into(),
        TransferStatus::HypothesisFailure => "window is not invariant under the inner action".into(),
        TransferStatus::Fail => {
            let mut why = Vec::new();
            if !lattice_preserving {
                why.push("map leaves the lattice");
            }
            if !isometry {
                why.push("map is not an isometry");
            }
            if equivariance_failures > 0 {
                why.push("equivariance fails");
            }
            if core_failures > 0 {
                why.push("batch is not mapped onto itself");
            }
            why.join("; ")
        }
    };
    Ok(TransferReport {
        scheme: scheme.name.clone(),
        map: rho.name.clone(),
        status,
        window_invariant,
        lattice_preserving,
        isometry,
        pairs: n * n,
        equivariance_failures,
        core_points: n,
        core_failures,
        note,
    })
}

/// `ρ(x⊢y) = ρ(x)⊢ρ(y)` for lattice images (exact).
pub fn equivariant_on(rho: &LatticeMap, lattice: LatticeKind, x: &[GoldenInt], y: &[GoldenInt]) -> Option<bool> {
    let rx = rho.apply(lattice, x)?;
    let ry = rho.apply(lattice, y)?;
    Some(rho.apply(lattice, &qadd(x, y))? == qadd(&rx, &ry))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::unit_icosians;
    use crate::scheme::{enumerate, fibonacci, fibonacci_palindromic, penrose, z6, z6_icosian};

    #[test]
    fn palindromic_negation() {
        let s = fibonacci_palindromic();
        let pts = enumerate(&s, &GoldenRat::from_int(9)).unwrap();
        let r = symmetry_transfer_check(&s, &LatticeMap::negation(s.lattice), &pts).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = symmetry_transfer_check(&s, &LatticeMap::identity(s.lattice), &pts).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn half_open_window_is_hypothesis_failure() {
        let s = fibonacci();
        let pts = enumerate(&s, &GoldenRat::from_int(9)).unwrap();
        let r = symmetry_transfer_check(&s, &LatticeMap::negation(s.lattice), &pts).unwrap();
        assert_eq!(r.status, TransferStatus::HypothesisFailure);
    }

    #[test]
    fn penrose_xi() {
        let xi = LatticeMap::penrose_xi();
        assert!(xi.is_isometry(LatticeKind::Penrose));
        // ξ⁵ = 1
        let m = (0..5).fold(linalg::identity(2), |acc, _| linalg::mat_mul(&xi.matrix, &acc));
        assert!(linalg::is_identity(&m));
        let s = penrose();
        let pts = enumerate(&s, &GoldenRat::from_int(3)).unwrap();
        let r = symmetry_transfer_check(&s, &xi, &pts).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn printed_icosahedral_matrices() {
        let ms = icosahedral_table_matrices();
        assert_eq!(ms.len(), 5);
        // the first row is orthogonal; the printed second row is not
        assert!(ms[0].1.is_isometry(LatticeKind::Z6));
        assert!(!ms[1].1.is_isometry(LatticeKind::Z6));
        let s = z6();
        let pts = enumerate(&s, &GoldenRat::from_int(2)).unwrap();
        let r = symmetry_transfer_check(&s, &ms[0].1, &pts).unwrap();
        assert!(!r.lattice_preserving);
    }

    #[test]
    fn icosian_conjugation_on_pure_scheme() {
        let s = z6_icosian();
        let pts = enumerate(&s, &GoldenRat::from_int(2)).unwrap();
        let u = Icosian::from_halves([
            GoldenInt::new(-1, 0),
            GoldenInt::new(1, 0),
            GoldenInt::new(1, 0),
            GoldenInt::new(1, 0),
        ]);
        let rho = LatticeMap::conjugation(&u);
        assert!(rho.is_isometry(s.lattice));
        let r = symmetry_transfer_check(&s, &rho, &pts).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn left_multiplication_is_isometry() {
        for u in unit_icosians().iter().take(10) {
            let m = LatticeMap::left_multiplication(u);
            assert!(m.is_isometry(LatticeKind::Icosian));
            assert!(m.preserves_lattice(LatticeKind::Icosian));
        }
    }
}
