//! Convex acceptance windows in exact H-representation.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{QcError, Result};
use num_bigint::BigInt;

use crate::golden::{kappa_compare, scaled_int_vector, GoldenInt, GoldenRat, KappaScaledRat};
use crate::hull::convex_hull;
use crate::linalg::{self, dot, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Closed,
    Open,
}

/// The half-space `normal · p ≤ offset` (or `<` when open), with the offset
/// multiplied by κ when `kappa_scaled`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vector,
    pub offset: GoldenRat,
    pub kappa_scaled: bool,
    pub boundary: Boundary,
}

impl Facet {
    /// Settles the easy cases in floating point, falling back to exact
    /// arithmetic within a relative margin of the boundary.
    fn admits(&self, p: &[GoldenRat], pf: &[f64]) -> bool {
        let mut rhs = self.offset.to_f64();
        if self.kappa_scaled {
            rhs *= KappaScaledRat::kappa_squared().to_f64().sqrt();
        }
        let (mut lhs, mut mag) = (0.0, rhs.abs());
        for (n, x) in self.normal.iter().zip(pf) {
            let t = n.to_f64() * x;
            lhs += t;
            mag += t.abs();
        }
        let margin = 1e-9 * (1.0 + mag);
        if lhs < rhs - margin {
            return true;
        }
        if lhs > rhs + margin {
            return false;
        }
        self.admits_exact(p)
    }

    fn admits_exact(&self, p: &[GoldenRat]) -> bool {
        let lhs = dot(&self.normal, p);
        let ord = if self.kappa_scaled {
            kappa_compare(&lhs, &KappaScaledRat::new(self.offset.clone(), 1))
        } else {
            lhs.cmp(&self.offset)
        };
        match self.boundary {
            Boundary::Closed => ord.is_le(),
            Boundary::Open => ord.is_lt(),
        }
    }

    /// Same half-space written with the leading nonzero normal entry at ±1.
    fn normalised(&self) -> Facet {
        let lead = self
            .normal
            .iter()
            .find(|x| !x.is_zero())
            .expect("facet normal is nonzero")
            .abs();
        Facet {
            normal: self.normal.iter().map(|x| x / &lead).collect(),
            offset: &self.offset / &lead,
            kappa_scaled: self.kappa_scaled,
            boundary: self.boundary,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexWindow {
    pub dim: usize,
    pub facets: Vec<Facet>,
    /// Vertices before the κ factor when `kappa_scaled_vertices` is set.
    pub vertices: Option<Vec<Vector>>,
    pub kappa_scaled_vertices: bool,
}

impl ConvexWindow {
    /// The interval `[lo, hi]` with the given boundary at each end.
    pub fn interval(lo: GoldenRat, lo_b: Boundary, hi: GoldenRat, hi_b: Boundary) -> Result<ConvexWindow> {
        if lo >= hi {
            return Err(QcError::DegenerateWindow(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(ConvexWindow {
            dim: 1,
            facets: vec![
                Facet {
                    normal: vec![GoldenRat::from_int(-1)],
                    offset: -&lo,
                    kappa_scaled: false,
                    boundary: lo_b,
                },
                Facet {
                    normal: vec![GoldenRat::one()],
                    offset: hi.clone(),
                    kappa_scaled: false,
                    boundary: hi_b,
                },
            ],
            vertices: Some(vec![vec![lo], vec![hi]]),
            kappa_scaled_vertices: false,
        })
    }

    /// Closed window from a V-representation.
    pub fn from_vertices(verts: &[Vector]) -> Result<ConvexWindow> {
        facets_from_vertices(verts)
    }

    /// Window from an explicit H-representation, validated against vertices.
    pub fn from_parts(dim: usize, facets: Vec<Facet>, vertices: Option<Vec<Vector>>, kappa_scaled_vertices: bool) -> Result<ConvexWindow> {
        if facets.iter().any(|f| f.normal.len() != dim) {
            return Err(QcError::InvalidWindow("facet normal of wrong length".into()));
        }
        if facets.iter().any(|f| f.normal.iter().all(GoldenRat::is_zero)) {
            return Err(QcError::InvalidWindow("zero facet normal".into()));
        }
        let w = ConvexWindow {
            dim,
            facets,
            vertices,
            kappa_scaled_vertices,
        };
        let problems = w.validate();
        if !problems.is_empty() {
            return Err(QcError::InvalidWindow(problems.join("; ")));
        }
        Ok(w)
    }

    pub fn has_kappa(&self) -> bool {
        self.kappa_scaled_vertices || self.facets.iter().any(|f| f.kappa_scaled)
    }

    pub fn contains(&self, p: &[GoldenRat]) -> Result<bool> {
        if p.len() != self.dim {
            return Err(QcError::DimensionMismatch {
                expected: self.dim,
                found: p.len(),
            });
        }
        let pf: Vec<f64> = p.iter().map(GoldenRat::to_f64).collect();
        Ok(self.facets.iter().all(|f| f.admits(p, &pf)))
    }

    /// Membership without the floating-point shortcut.
    pub fn contains_exact(&self, p: &[GoldenRat]) -> bool {
        p.len() == self.dim && self.facets.iter().all(|f| f.admits_exact(p))
    }

    /// Every stored vertex lies in the closure of every facet.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Some(verts) = &self.vertices else {
            return out;
        };
        for (i, v) in verts.iter().enumerate() {
            if v.len() != self.dim {
                out.push(format!("vertex {i} has dimension {}", v.len()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        if let Some(inc) = self.incidence() {
            for (j, row) in inc.iter().enumerate() {
                for (i, o) in row.iter().enumerate() {
                    if o.is_gt() {
                        out.push(format!("vertex {i} violates facet {j}"));
                    }
                }
            }
            return out;
        }
        for (i, v) in verts.iter().enumerate() {
            for (j, f) in self.facets.iter().enumerate() {
                let lhs = dot(&f.normal, v);
                let ok = if f.kappa_scaled {
                    kappa_compare(&lhs, &KappaScaledRat::new(f.offset.clone(), 1)).is_le()
                } else {
                    kappa_compare(&f.offset, &KappaScaledRat::new(lhs, 1)).is_ge()
                };
                if !ok {
                    out.push(format!("vertex {i} violates facet {j}"));
                }
            }
        }
        out
    }

    /// `(normal · v).cmp(offset)` for every facet (rows) and stored vertex
    /// (columns), available when vertices and offsets carry the same κ power
    /// so that it cancels.
    pub fn incidence(&self) -> Option<Vec<Vec<std::cmp::Ordering>>> {
        let verts = self.vertices.as_ref()?;
        if self.facets.iter().any(|f| f.kappa_scaled != self.kappa_scaled_vertices) {
            return None;
        }
        let iv: Vec<(Vec<GoldenInt>, BigInt)> = verts.iter().map(|v| scaled_int_vector(v)).collect();
        Some(
            self.facets
                .iter()
                .map(|f| {
                    let (n, d) = scaled_int_vector(&f.normal);
                    let (o, e) = f.offset.to_scaled_int();
                    let e = GoldenInt::from_int(e);
                    iv.iter()
                        .map(|(v, m)| {
                            // (N·V)/(d m) vs O/e
                            let t = n.iter().zip(v).fold(GoldenInt::zero(), |acc, (a, b)| &acc + &(a * b));
                            (&e * &t).cmp(&(&GoldenInt::from_int(&d * m) * &o))
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Exact vertices when they lie in ℚ(√5).
    pub fn exact_vertices(&self) -> Option<&[Vector]> {
        if self.kappa_scaled_vertices {
            None
        } else {
            self.vertices.as_deref()
        }
    }

    /// Floating bounding box `(lo, hi)` per axis, used only to bound searches.
    pub fn bounding_box(&self) -> Option<Vec<(f64, f64)>> {
        let verts = self.vertices.as_ref()?;
        let s = if self.kappa_scaled_vertices {
            KappaScaledRat::kappa_f64()
        } else {
            1.0
        };
        let mut out = vec![(f64::INFINITY, f64::NEG_INFINITY); self.dim];
        for v in verts {
            for (k, x) in v.iter().enumerate() {
                let f = x.to_f64() * s;
                out[k].0 = out[k].0.min(f);
                out[k].1 = out[k].1.max(f);
            }
        }
        Some(out)
    }

    /// Ω + shift. Not available for κ-scaled windows, whose translated
    /// offsets leave the supported number system.
    pub fn translate(&self, shift: &[GoldenRat]) -> Result<ConvexWindow> {
        if shift.len() != self.dim {
            return Err(QcError::DimensionMismatch {
                expected: self.dim,
                found: shift.len(),
            });
        }
        if self.has_kappa() {
            return Err(QcError::Unsupported("translation of a kappa-scaled window".into()));
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                offset: &f.offset + &dot(&f.normal, shift),
                ..f.clone()
            })
            .collect();
        let vertices = self.vertices.as_ref().map(|vs| {
            vs.iter()
                .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
                .collect()
        });
        Ok(ConvexWindow {
            dim: self.dim,
            facets,
            vertices,
            kappa_scaled_vertices: false,
        })
    }

    /// Normalised facet set, for comparing windows.
    pub fn facet_set(&self) -> BTreeSet<Facet> {
        self.facets.iter().map(Facet::normalised).collect()
    }

    /// The image window `A(Ω)` for invertible `A`.
    pub fn image_under(&self, a: &Matrix) -> Result<ConvexWindow> {
        let inv = linalg::inverse(a).ok_or_else(|| QcError::Precondition("map is not invertible".into()))?;
        // n·x ≤ o with y = A x  ⇔  (n A⁻¹)·y ≤ o
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: linalg::vec_mat(&f.normal, &inv),
                ..f.clone()
            })
            .collect();
        let vertices = self
            .vertices
            .as_ref()
            .map(|vs| vs.iter().map(|v| linalg::mat_vec(a, v)).collect());
        Ok(ConvexWindow {
            dim: self.dim,
            facets,
            vertices,
            kappa_scaled_vertices: self.kappa_scaled_vertices,
        })
    }

    /// `A(Ω) = Ω`, decided exactly on the normalised facet sets.
    pub fn is_invariant_under(&self, a: &Matrix) -> Result<bool> {
        Ok(self.image_under(a)?.facet_set() == self.facet_set())
    }

    pub fn with_boundary(mut self, b: Boundary) -> ConvexWindow {
        for f in &mut self.facets {
            f.boundary = b;
        }
        self
    }
}

/// Exact H-representation of the convex hull of `verts` (all facets closed).
pub fn facets_from_vertices(verts: &[Vector]) -> Result<ConvexWindow> {
    let hull = convex_hull(verts)?;
    let facets = hull
        .facets
        .iter()
        .map(|f| Facet {
            normal: f.normal.clone(),
            offset: f.offset.clone(),
            kappa_scaled: false,
            boundary: Boundary::Closed,
        })
        .collect();
    let vertices = hull.vertices.iter().map(|&i| verts[i].clone()).collect();
    Ok(ConvexWindow {
        dim: hull.dim,
        facets,
        vertices: Some(vertices),
        kappa_scaled_vertices: false,
    })
}

/// Membership test free function.
pub fn window_contains(w: &ConvexWindow, p: &[GoldenRat]) -> Result<bool> {
    w.contains(p)
}
