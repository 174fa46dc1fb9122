//! Cut-and-project schemes, model-set membership and bounded enumeration.
//!
//! Every scheme stores lattice points as a short vector of golden integers.
//! For the icosian lattices these are half-numerators (the coordinate value is
//! the stored number divided by two). The physical image is `L · value` and the
//! inner image is `L* · star(value)` for two fixed matrices over ℚ(√5);
//! Euclidean length in physical space uses diagonal weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use crate::error::{QcError, Result};
use crate::golden::{GoldenInt, GoldenRat, KappaScaledRat};
use crate::icosian::{icosian_ring_lattice, Icosian};
use crate::linalg::{self, Matrix, Vector};
use crate::window::{facets_from_vertices, Boundary, ConvexWindow, Facet};

pub type PointKey = Vec<GoldenInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    /// ℤ[τ] on a line.
    Golden,
    /// ℤ[τ] + ℤ[τ]ξ² in the plane, ξ = exp(2πi/5).
    Penrose,
    /// ℤ[τ]³.
    Z6,
    /// Pure icosians: (x, y, z) with x i + y j + z k in the icosian ring.
    PureIcosian,
    /// The icosian ring.
    Icosian,
}

fn g(a: i64, b: i64) -> GoldenRat {
    GoldenInt::new(a, b).to_rat()
}

fn r(n: i64, d: i64) -> GoldenRat {
    GoldenRat::ratio(n, d)
}

impl LatticeKind {
    /// Number of golden-integer coordinates.
    pub fn rank(self) -> usize {
        match self {
            LatticeKind::Golden => 1,
            LatticeKind::Penrose => 2,
            LatticeKind::Z6 | LatticeKind::PureIcosian => 3,
            LatticeKind::Icosian => 4,
        }
    }

    /// Whether coordinates are stored as half-numerators.
    pub fn halved(self) -> bool {
        matches!(self, LatticeKind::PureIcosian | LatticeKind::Icosian)
    }

    pub fn physical_dim(self) -> usize {
        self.rank()
    }

    pub fn inner_dim(self) -> usize {
        self.rank()
    }

    /// Physical coordinates as a matrix on coordinate values. For the Penrose
    /// plane the second output axis is the imaginary part divided by sin 72°.
    pub fn physical_matrix(self) -> Matrix {
        match self {
            LatticeKind::Penrose => vec![
                vec![GoldenRat::one(), &GoldenRat::tau() * &r(-1, 2)],
                vec![GoldenRat::zero(), GoldenRat::tau_inv()],
            ],
            _ => linalg::identity(self.rank()),
        }
    }

    /// Metric weights of the physical axes.
    pub fn physical_weights(self) -> Vector {
        match self {
            // sin² 72° = (5 + √5)/8
            LatticeKind::Penrose => vec![GoldenRat::one(), GoldenRat::from_parts(5, 8, 1, 8)],
            _ => vec![GoldenRat::one(); self.rank()],
        }
    }

    /// Inner coordinates as a matrix on starred coordinate values.
    pub fn star_matrix(self) -> Matrix {
        match self {
            // ξ² ↦ ξ⁴ = cos 72° − i sin 72°
            LatticeKind::Penrose => vec![
                vec![GoldenRat::one(), &g(-1, 1) * &r(1, 2)],
                vec![GoldenRat::zero(), GoldenRat::from_int(-1)],
            ],
            _ => linalg::identity(self.rank()),
        }
    }

    /// Inner-space metric weights (same shape as the physical ones).
    pub fn inner_weights(self) -> Vector {
        self.physical_weights()
    }

    pub fn contains(self, coords: &[GoldenInt]) -> bool {
        if coords.len() != self.rank() {
            return false;
        }
        match self {
            LatticeKind::Golden | LatticeKind::Penrose | LatticeKind::Z6 => true,
            LatticeKind::PureIcosian => Icosian::from_halves([
                GoldenInt::zero(),
                coords[0].clone(),
                coords[1].clone(),
                coords[2].clone(),
            ])
            .in_icosian_ring(),
            LatticeKind::Icosian => Icosian::from_halves([
                coords[0].clone(),
                coords[1].clone(),
                coords[2].clone(),
                coords[3].clone(),
            ])
            .in_icosian_ring(),
        }
    }

    /// Exact coordinate values.
    pub fn values(self, coords: &[GoldenInt]) -> Vector {
        let h = if self.halved() { r(1, 2) } else { GoldenRat::one() };
        coords.iter().map(|c| &c.to_rat() * &h).collect()
    }

    pub fn physical(self, coords: &[GoldenInt]) -> Vector {
        linalg::mat_vec(&self.physical_matrix(), &self.values(coords))
    }

    pub fn star_map(self, coords: &[GoldenInt]) -> Vector {
        let starred: Vec<GoldenInt> = coords.iter().map(GoldenInt::star).collect();
        linalg::mat_vec(&self.star_matrix(), &self.values(&starred))
    }

    /// Squared Euclidean length of the physical image.
    pub fn physical_norm2(self, coords: &[GoldenInt]) -> GoldenRat {
        let p = self.physical(coords);
        p.iter()
            .zip(self.physical_weights())
            .fold(GoldenRat::zero(), |acc, (x, w)| &acc + &(&w * &(x * x)))
    }

    /// Floating physical coordinates in an orthonormal frame (the Penrose
    /// second axis is multiplied back by sin 72°).
    pub fn physical_f64(self, coords: &[GoldenInt]) -> Vec<f64> {
        self.physical(coords)
            .iter()
            .zip(self.physical_weights())
            .map(|(x, w)| x.to_f64() * w.to_f64().sqrt())
            .collect()
    }

    /// A random lattice point with coordinates of size about `bound`.
    pub fn random_point<R: Rng + ?Sized>(self, rng: &mut R, bound: i64) -> PointKey {
        let mut gi = || GoldenInt::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        match self {
            LatticeKind::Golden | LatticeKind::Penrose | LatticeKind::Z6 => (0..self.rank()).map(|_| gi()).collect(),
            LatticeKind::Icosian | LatticeKind::PureIcosian => {
                let basis = icosian_ring_lattice().basis();
                let mut c: [BigInt; 8] = Default::default();
                for row in basis {
                    let k = BigInt::from(rng.gen_range(-bound..=bound));
                    for (ci, ri) in c.iter_mut().zip(row) {
                        *ci += &k * ri;
                    }
                }
                let x = Icosian::from_half_coords(&c);
                if self == LatticeKind::Icosian {
                    x.num.to_vec()
                } else {
                    // x − x̄ is twice the pure part and stays in the ring
                    let d = &x - &x.conjugate();
                    d.num[1..].to_vec()
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Golden => "golden",
            LatticeKind::Penrose => "penrose",
            LatticeKind::Z6 => "z6",
            LatticeKind::PureIcosian => "pure-icosian",
            LatticeKind::Icosian => "icosian",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    Fibonacci,
    Penrose,
    Z6,
    Z6Icosian,
    ElserSloane,
    Custom,
}

#[derive(Clone, Debug)]
pub struct SchemeSpec {
    pub name: String,
    pub kind: SchemeKind,
    pub lattice: LatticeKind,
    pub window: ConvexWindow,
    compiled: Arc<CompiledWindow>,
}

/// A model-set point: lattice coordinates plus the cached inner image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QcPoint {
    pub coords: PointKey,
    pub star: Vector,
}

impl SchemeSpec {
    pub fn new(name: &str, kind: SchemeKind, lattice: LatticeKind, window: ConvexWindow) -> Result<SchemeSpec> {
        if window.dim != lattice.inner_dim() {
            return Err(QcError::DimensionMismatch {
                expected: lattice.inner_dim(),
                found: window.dim,
            });
        }
        let compiled = Arc::new(CompiledWindow::new(lattice, &window));
        Ok(SchemeSpec {
            name: name.to_string(),
            kind,
            lattice,
            window,
            compiled,
        })
    }

    pub fn star_map(&self, coords: &[GoldenInt]) -> Vector {
        self.lattice.star_map(coords)
    }

    /// Membership of an arbitrary coordinate vector in the model set.
    pub fn contains(&self, coords: &[GoldenInt]) -> Result<bool> {
        if coords.len() != self.lattice.rank() {
            return Err(QcError::DimensionMismatch {
                expected: self.lattice.rank(),
                found: coords.len(),
            });
        }
        Ok(self.lattice.contains(coords) && self.window_admits(coords))
    }

    /// Whether `star(coords)` lies in the window (lattice membership not checked).
    pub fn window_admits(&self, coords: &[GoldenInt]) -> bool {
        let starred: Vec<GoldenInt> = coords.iter().map(GoldenInt::star).collect();
        self.compiled.contains(&starred)
    }

    /// Certified point, or `NotInModelSet`.
    pub fn point(&self, coords: PointKey) -> Result<QcPoint> {
        if !self.contains(&coords)? {
            return Err(QcError::NotInModelSet(fmt_key(&coords)));
        }
        let star = self.star_map(&coords);
        Ok(QcPoint { coords, star })
    }

    /// Re-derives the membership certificate of `p`.
    pub fn certify(&self, p: &QcPoint) -> bool {
        self.star_map(&p.coords) == p.star && self.lattice.contains(&p.coords) && self.window.contains(&p.star).unwrap_or(false)
    }

    /// Same scheme with Ω replaced by Ω + shift.
    pub fn translate_window(&self, shift: &[GoldenRat]) -> Result<SchemeSpec> {
        SchemeSpec::new(&format!("{}+shift", self.name), self.kind, self.lattice, self.window.translate(shift)?)
    }

    pub fn enumerate(&self, radius: &GoldenRat) -> Result<Vec<QcPoint>> {
        enumerate(self, radius)
    }
}

pub fn fmt_key(k: &[GoldenInt]) -> String {
    let parts: Vec<String> = k.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

// ---------------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------------

pub const PRESETS: [&str; 7] = [
    "fibonacci-palindromic",
    "fibonacci",
    "fibonacci-unit",
    "penrose",
    "z6",
    "z6-icosian",
    "elser-sloane",
];

/// Fibonacci chain with the symmetric window [−½, ½].
pub fn fibonacci_palindromic() -> SchemeSpec {
    let w = ConvexWindow::interval(r(-1, 2), Boundary::Closed, r(1, 2), Boundary::Closed).expect("valid interval");
    SchemeSpec::new("fibonacci-palindromic", SchemeKind::Fibonacci, LatticeKind::Golden, w).expect("dimensions match")
}

/// Fibonacci chain with the half-open window (0, 1].
pub fn fibonacci() -> SchemeSpec {
    let w = ConvexWindow::interval(r(0, 1), Boundary::Open, r(1, 1), Boundary::Closed).expect("valid interval");
    SchemeSpec::new("fibonacci", SchemeKind::Fibonacci, LatticeKind::Golden, w).expect("dimensions match")
}

/// Fibonacci chain with the closed window [0, 1].
pub fn fibonacci_unit() -> SchemeSpec {
    let w = ConvexWindow::interval(r(0, 1), Boundary::Closed, r(1, 1), Boundary::Closed).expect("valid interval");
    SchemeSpec::new("fibonacci-unit", SchemeKind::Fibonacci, LatticeKind::Golden, w).expect("dimensions match")
}

/// Pentagon vertices 1, ξ, ξ², ξ³, ξ⁴ in (Re, Im / sin 72°) coordinates.
pub fn pentagon_vertices() -> Vec<Vector> {
    let cos72 = &g(-1, 1) * &r(1, 2);
    let cos144 = &GoldenRat::tau() * &r(-1, 2);
    vec![
        vec![GoldenRat::one(), GoldenRat::zero()],
        vec![cos72.clone(), GoldenRat::one()],
        vec![cos144.clone(), GoldenRat::tau_inv()],
        vec![cos144, -&GoldenRat::tau_inv()],
        vec![cos72, GoldenRat::from_int(-1)],
    ]
}

pub fn penrose() -> SchemeSpec {
    static W: OnceLock<ConvexWindow> = OnceLock::new();
    let w = W
        .get_or_init(|| facets_from_vertices(&pentagon_vertices()).expect("pentagon is full-dimensional"))
        .clone();
    SchemeSpec::new("penrose", SchemeKind::Penrose, LatticeKind::Penrose, w).expect("dimensions match")
}

/// The 32 vertices of the rhombic triacontahedron.
pub fn triacontahedron_vertices() -> Vec<Vector> {
    let one = GoldenRat::one();
    let t = GoldenRat::tau();
    let ti = GoldenRat::tau_inv();
    let z = GoldenRat::zero();
    let mut out = Vec::new();
    let cyc = |v: [GoldenRat; 3], out: &mut Vec<Vector>| {
        for s in 0..3 {
            let w: Vector = (0..3).map(|i| v[(i + 3 - s) % 3].clone()).collect();
            for signs in 0..8 {
                let u: Vector = w
                    .iter()
                    .enumerate()
                    .map(|(k, x)| if signs >> k & 1 == 1 { -x } else { x.clone() })
                    .collect();
                out.push(u);
            }
        }
    };
    cyc([z.clone(), one.clone(), t.clone()], &mut out);
    cyc([one.clone(), one.clone(), one.clone()], &mut out);
    cyc([z, t, ti], &mut out);
    out.sort();
    out.dedup();
    out
}

pub fn triacontahedron() -> ConvexWindow {
    static W: OnceLock<ConvexWindow> = OnceLock::new();
    W.get_or_init(|| facets_from_vertices(&triacontahedron_vertices()).expect("triacontahedron is full-dimensional"))
        .clone()
}

pub fn z6() -> SchemeSpec {
    SchemeSpec::new("z6", SchemeKind::Z6, LatticeKind::Z6, triacontahedron()).expect("dimensions match")
}

pub fn z6_icosian() -> SchemeSpec {
    SchemeSpec::new("z6-icosian", SchemeKind::Z6Icosian, LatticeKind::PureIcosian, triacontahedron()).expect("dimensions match")
}

const EVEN_PERMS_4: [[usize; 4]; 12] = [
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 2, 1, 0],
];

/// The 720 Elser-Sloane window vertices without the κ factor. Fails unless
/// the sign/even-permutation expansion yields exactly 720 distinct points.
pub fn elser_sloane_vertices() -> Result<Vec<Vector>> {
    let t = GoldenRat::tau();
    let ti = GoldenRat::tau_inv();
    let t2 = &t * &t;
    let ti2 = &ti * &ti;
    let one = GoldenRat::one();
    let two = GoldenRat::from_int(2);
    let z = GoldenRat::zero();
    let two_t_1 = &(&t * &two) - &one;
    let half = r(1, 2);
    let third = r(1, 3);
    let families: Vec<(GoldenRat, [GoldenRat; 4])> = vec![
        (half.clone(), [two.clone(), z.clone(), z.clone(), z.clone()]),
        (half.clone(), [one.clone(), one.clone(), one.clone(), one.clone()]),
        (half.clone(), [z.clone(), one.clone(), t.clone(), ti.clone()]),
        (third.clone(), [t2.clone(), ti2.clone(), one.clone(), z.clone()]),
        (third.clone(), [t2.clone(), ti.clone(), ti.clone(), ti.clone()]),
        (half.clone(), [z.clone(), one.clone(), t.clone(), ti.clone()]),
        (third.clone(), [two_t_1.clone(), ti.clone(), t.clone(), z.clone()]),
        (third.clone(), [two_t_1, one.clone(), one.clone(), one.clone()]),
        (third.clone(), [t.clone(), t.clone(), t.clone(), ti2]),
        (third.clone(), [two.clone(), two.clone(), z.clone(), z]),
        (third, [two, one, t, ti]),
    ];
    let mut out = Vec::new();
    for (scale, base) in families {
        for signs in 0..16u32 {
            let v: Vec<GoldenRat> = base
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    let y = x * &scale;
                    if signs >> k & 1 == 1 {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            for p in EVEN_PERMS_4 {
                let mut w = vec![GoldenRat::zero(); 4];
                for k in 0..4 {
                    w[p[k]] = v[k].clone();
                }
                out.push(w);
            }
        }
    }
    out.sort();
    out.dedup();
    if out.len() != 720 {
        return Err(QcError::Data(format!("window expansion gave {} vertices, expected 720", out.len())));
    }
    Ok(out)
}

/// Cached H-representation of the unscaled Elser-Sloane hull.
pub const ES_FACETS_JSON: &str = include_str!("../data/elser_sloane_facets.json");
pub const HREP_FORMAT: &str = "quasijordan.hrep/1";

#[derive(Serialize, Deserialize)]
pub struct HRepFile {
    pub format: String,
    pub vertex_count: usize,
    pub facets: Vec<HRepFacet>,
}

#[derive(Serialize, Deserialize)]
pub struct HRepFacet {
    pub normal: Vec<String>,
    pub offset: String,
}

/// Serialises a hull as a versioned H-representation file.
pub fn hrep_to_json(window: &ConvexWindow) -> Result<String> {
    let file = HRepFile {
        format: HREP_FORMAT.into(),
        vertex_count: window.vertices.as_ref().map_or(0, Vec::len),
        facets: window
            .facets
            .iter()
            .map(|f| HRepFacet {
                normal: f.normal.iter().map(ToString::to_string).collect(),
                offset: f.offset.to_string(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Builds the κ-scaled Elser-Sloane window from a cached H-representation,
/// revalidating it: every vertex on or inside every facet, and every facet
/// supported by at least four vertices.
pub fn load_elser_sloane_window(json: &str) -> Result<ConvexWindow> {
    let file: HRepFile = serde_json::from_str(json).map_err(|e| QcError::Data(format!("facet file: {e}")))?;
    if file.format != HREP_FORMAT {
        return Err(QcError::Data(format!("unsupported facet file format {:?}", file.format)));
    }
    let verts = elser_sloane_vertices()?;
    if file.vertex_count != verts.len() {
        return Err(QcError::Data("facet file was built from a different vertex set".into()));
    }
    let mut facets = Vec::with_capacity(file.facets.len());
    for f in &file.facets {
        let normal = f.normal.iter().map(|s| s.parse::<GoldenRat>()).collect::<std::result::Result<Vec<_>, _>>()?;
        let offset: GoldenRat = f.offset.parse()?;
        facets.push(Facet {
            normal,
            offset,
            kappa_scaled: true,
            boundary: Boundary::Closed,
        });
    }
    let w = ConvexWindow::from_parts(4, facets, Some(verts), true).map_err(|e| QcError::Data(e.to_string()))?;
    let inc = w.incidence().expect("κ status is uniform");
    for (j, row) in inc.iter().enumerate() {
        let on = row.iter().filter(|o| o.is_eq()).count();
        if on < 4 {
            return Err(QcError::Data(format!("facet {j} touches only {on} vertices")));
        }
    }
    Ok(w)
}

/// The Elser-Sloane window computed from scratch (slow; used to build the cache).
pub fn elser_sloane_window_from_hull() -> Result<ConvexWindow> {
    let w = facets_from_vertices(&elser_sloane_vertices()?)?;
    Ok(ConvexWindow {
        facets: w
            .facets
            .into_iter()
            .map(|f| Facet {
                kappa_scaled: true,
                ..f
            })
            .collect(),
        kappa_scaled_vertices: true,
        ..w
    })
}

pub fn elser_sloane_window() -> Result<ConvexWindow> {
    static W: OnceLock<std::result::Result<ConvexWindow, String>> = OnceLock::new();
    W.get_or_init(|| load_elser_sloane_window(ES_FACETS_JSON).map_err(|e| e.to_string()))
        .clone()
        .map_err(QcError::Data)
}

pub fn elser_sloane() -> Result<SchemeSpec> {
    SchemeSpec::new("elser-sloane", SchemeKind::ElserSloane, LatticeKind::Icosian, elser_sloane_window()?)
}

pub fn preset(name: &str) -> Result<SchemeSpec> {
    match name {
        "fibonacci-palindromic" => Ok(fibonacci_palindromic()),
        "fibonacci" => Ok(fibonacci()),
        "fibonacci-unit" => Ok(fibonacci_unit()),
        "penrose" => Ok(penrose()),
        "z6" => Ok(z6()),
        "z6-icosian" => Ok(z6_icosian()),
        "elser-sloane" => elser_sloane(),
        other => Err(QcError::Unsupported(format!("unknown scheme preset {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// custom windows
// ---------------------------------------------------------------------------

pub const WINDOW_FORMAT: &str = "quasijordan.window/1";

/// JSON window file: a lattice plus either vertices (closed hull) or explicit
/// facets. Numbers use the canonical `p+q*sqrt5` text form.
#[derive(Serialize, Deserialize)]
pub struct WindowFile {
    pub format: String,
    pub lattice: LatticeKind,
    #[serde(default)]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub facets: Option<Vec<WindowFileFacet>>,
}

#[derive(Serialize, Deserialize)]
pub struct WindowFileFacet {
    pub normal: Vec<String>,
    pub offset: String,
    #[serde(default = "closed")]
    pub boundary: Boundary,
}

fn closed() -> Boundary {
    Boundary::Closed
}

fn parse_vec(v: &[String]) -> Result<Vector> {
    v.iter()
        .map(|s| s.parse::<GoldenRat>().map_err(|e| QcError::InvalidWindow(e.to_string())))
        .collect()
}

/// Parses a custom window file. Degenerate hulls surface as
/// `DegenerateWindow`; every other defect as `InvalidWindow`.
pub fn custom_scheme_from_json(json: &str) -> Result<SchemeSpec> {
    let file: WindowFile = serde_json::from_str(json).map_err(|e| QcError::InvalidWindow(e.to_string()))?;
    if file.format != WINDOW_FORMAT {
        return Err(QcError::InvalidWindow(format!("unsupported format {:?}", file.format)));
    }
    let dim = file.lattice.inner_dim();
    let vertices = match &file.vertices {
        Some(vs) => Some(vs.iter().map(|v| parse_vec(v)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    if let Some(vs) = &vertices {
        if vs.iter().any(|v| v.len() != dim) {
            return Err(QcError::InvalidWindow(format!("vertices must have {dim} coordinates")));
        }
    }
    let window = match (&file.facets, vertices) {
        (Some(fs), vertices) => {
            let facets = fs
                .iter()
                .map(|f| {
                    Ok(Facet {
                        normal: parse_vec(&f.normal)?,
                        offset: f.offset.parse::<GoldenRat>().map_err(|e| QcError::InvalidWindow(e.to_string()))?,
                        kappa_scaled: false,
                        boundary: f.boundary,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let vertices = vertices.ok_or_else(|| QcError::InvalidWindow("facet windows also need their vertices".into()))?;
            // vertices must span the space, otherwise the window is degenerate
            let hull = facets_from_vertices(&vertices)?;
            let w = ConvexWindow::from_parts(dim, facets, Some(vertices), false)?;
            if hull.facet_set() != w.clone().with_boundary(Boundary::Closed).facet_set() {
                return Err(QcError::InvalidWindow("facets do not match the hull of the vertices".into()));
            }
            w
        }
        (None, Some(vs)) => facets_from_vertices(&vs)?,
        (None, None) => return Err(QcError::InvalidWindow("window needs vertices or facets".into())),
    };
    SchemeSpec::new("custom", SchemeKind::Custom, file.lattice, window)
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// A facet rewritten on raw lattice coordinates with integer arithmetic:
/// `normal · star(coords)` against `κ^e · rhs_num / rhs_den`.
#[derive(Debug)]
struct CompiledFacet {
    normal: Vec<GoldenInt>,
    rhs_num: GoldenInt,
    rhs_den: BigInt,
    rhs_sign: i8,
    /// `κ² · rhs²` as `num / den`, for κ facets.
    kappa_sq: Option<(GoldenInt, BigInt)>,
    open: bool,
    /// Float shadow of the facet, used to settle points far from the boundary.
    normal_f64: Vec<f64>,
    rhs_f64: f64,
}

#[derive(Debug)]
struct CompiledWindow {
    facets: Vec<CompiledFacet>,
}

impl CompiledWindow {
    fn new(lattice: LatticeKind, window: &ConvexWindow) -> CompiledWindow {
        let ls = lattice.star_matrix();
        let h = if lattice.halved() { r(2, 1) } else { GoldenRat::one() };
        let facets = window
            .facets
            .iter()
            .map(|f| {
                let n = linalg::vec_mat(&f.normal, &ls);
                let parts: Vec<(GoldenInt, BigInt)> = n.iter().map(GoldenRat::to_scaled_int).collect();
                let d = parts.iter().fold(BigInt::one(), |acc, (_, m)| acc.lcm(m));
                let normal: Vec<GoldenInt> = parts
                    .iter()
                    .map(|(gi, m)| &(&d / m) * gi)
                    .collect();
                // n·u ≤ o  with u = star(coords)/h  ⇔  N·star(coords) ≤ h·d·o
                let rhs = &(&h * &GoldenRat::from_int(d)) * &f.offset;
                let (rhs_num, rhs_den) = rhs.to_scaled_int();
                let kappa_sq = f.kappa_scaled.then(|| (&rhs.square() * &KappaScaledRat::kappa_squared()).to_scaled_int());
                let kappa = if f.kappa_scaled { KappaScaledRat::kappa_squared().to_f64().sqrt() } else { 1.0 };
                let rhs_f64 = rhs.to_f64() * kappa;
                CompiledFacet {
                    normal_f64: normal.iter().map(GoldenInt::to_f64).collect(),
                    rhs_f64,
                    normal,
                    rhs_sign: rhs.sign(),
                    rhs_num,
                    rhs_den,
                    kappa_sq,
                    open: f.boundary == Boundary::Open,
                }
            })
            .collect();
        CompiledWindow { facets }
    }

    fn contains(&self, starred: &[GoldenInt]) -> bool {
        let xs: Vec<f64> = starred.iter().map(GoldenInt::to_f64).collect();
        self.facets.iter().all(|f| {
            let (mut lhs, mut mag) = (0.0, f.rhs_f64.abs());
            for (x, n) in xs.iter().zip(&f.normal_f64) {
                lhs += x * n;
                mag += (x * n).abs();
            }
            let margin = 1e-9 * (1.0 + mag);
            if lhs < f.rhs_f64 - margin {
                return true;
            }
            if lhs > f.rhs_f64 + margin {
                return false;
            }
            let t = starred.iter().zip(&f.normal).fold(GoldenInt::zero(), |acc, (x, n)| &acc + &(x * n));
            let ord = match &f.kappa_sq {
                None => (&GoldenInt::from_int(f.rhs_den.clone()) * &t).cmp(&f.rhs_num),
                Some((kn, kd)) => {
                    let st = t.sign();
                    if st != f.rhs_sign {
                        st.cmp(&f.rhs_sign)
                    } else if st == 0 {
                        Ordering::Equal
                    } else {
                        let lhs = &GoldenInt::from_int(kd.clone()) * &(&t * &t);
                        let mag = lhs.cmp(kn);
                        if st > 0 {
                            mag
                        } else {
                            mag.reverse()
                        }
                    }
                }
            };
            if f.open {
                ord.is_lt()
            } else {
                ord.is_le()
            }
        })
    }
}

/// All golden integers `a + bτ` with `|x| ≤ bound` and `|x*| ≤ star_bound`,
/// padded so that nothing in range is missed.
fn golden_candidates(bound: f64, star_bound: f64) -> Vec<GoldenInt> {
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let sigma = 1.0 - tau;
    let pad = 1e-6 * (1.0 + bound + star_bound);
    let bmax = ((bound + star_bound) / 5f64.sqrt() + pad).floor() as i64;
    let mut out = Vec::new();
    for b in -bmax..=bmax {
        let bf = b as f64;
        let lo = (-bound - bf * tau).max(-star_bound - bf * sigma) - pad;
        let hi = (bound - bf * tau).min(star_bound - bf * sigma) + pad;
        if lo > hi {
            continue;
        }
        for a in lo.ceil() as i64..=hi.floor() as i64 {
            out.push(GoldenInt::new(a, b));
        }
    }
    out
}

fn abs_row_sums(m: &Matrix, col_scale: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(col_scale).map(|(x, s)| x.to_f64().abs() * s).sum())
        .collect()
}

/// Every model-set point whose physical image has length at most `radius`,
/// sorted by exact physical coordinates.
pub fn enumerate(scheme: &SchemeSpec, radius: &GoldenRat) -> Result<Vec<QcPoint>> {
    if radius.sign() < 0 {
        return Err(QcError::Precondition("radius must be non-negative".into()));
    }
    let lat = scheme.lattice;
    let n = lat.rank();
    let rf = radius.to_f64();
    let scale = if lat.halved() { 2.0 } else { 1.0 };
    let linv = linalg::inverse(&lat.physical_matrix()).expect("physical map invertible");
    let weights: Vec<f64> = lat.physical_weights().iter().map(|w| rf / w.to_f64().sqrt()).collect();
    let phys_bounds = abs_row_sums(&linv, &weights);
    let sinv = linalg::inverse(&lat.star_matrix()).expect("star map invertible");
    let bbox = scheme
        .window
        .bounding_box()
        .ok_or_else(|| QcError::InvalidWindow("window has no vertex list to bound the search".into()))?;
    let inner_abs: Vec<f64> = bbox.iter().map(|(lo, hi)| lo.abs().max(hi.abs())).collect();
    let star_bounds = abs_row_sums(&sinv, &inner_abs);
    let cands: Vec<Vec<GoldenInt>> = (0..n)
        .map(|j| golden_candidates(phys_bounds[j] * scale, star_bounds[j] * scale))
        .collect();

    let compiled = &scheme.compiled;
    let r2 = radius.square();
    let accept = |coords: &[GoldenInt]| -> bool {
        if !lat.contains(coords) {
            return false;
        }
        if lat.physical_norm2(coords) > r2 {
            return false;
        }
        let starred: Vec<GoldenInt> = coords.iter().map(GoldenInt::star).collect();
        compiled.contains(&starred)
    };

    let mut points: Vec<(Vector, QcPoint)> = cands[0]
        .par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut stack = vec![first.clone()];
            walk(&cands, &mut stack, &accept, &mut found);
            found
        })
        .map(|coords| {
            let star = lat.star_map(&coords);
            (lat.physical(&coords), QcPoint { coords, star })
        })
        .collect();
    points.sort_by(|a, b| a.0.cmp(&b.0));
    if points.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(QcError::Data("projection is not injective on the enumerated batch".into()));
    }
    Ok(points.into_iter().map(|(_, p)| p).collect())
}

fn walk(
    cands: &[Vec<GoldenInt>],
    stack: &mut Vec<GoldenInt>,
    accept: &(impl Fn(&[GoldenInt]) -> bool + Sync),
    out: &mut Vec<Vec<GoldenInt>>,
) {
    if stack.len() == cands.len() {
        if accept(stack) {
            out.push(stack.clone());
        }
        return;
    }
    for c in &cands[stack.len()] {
        stack.push(c.clone());
        walk(cands, stack, accept, out);
        stack.pop();
    }
}

/// Points `p` of `points` whose image `f(p)` has physical length at most
/// `core_radius`.
pub fn radius_core<'a>(scheme: &SchemeSpec, points: &'a [QcPoint], core_radius: &GoldenRat) -> Vec<&'a QcPoint> {
    let r2 = core_radius.square();
    points
        .iter()
        .filter(|p| scheme.lattice.physical_norm2(&p.coords) <= r2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(a: i64, b: i64) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn palindromic_chain_sample() {
        let pts = enumerate(&fibonacci_palindromic(), &GoldenRat::from_int(9)).unwrap();
        let got: Vec<GoldenInt> = pts.iter().map(|p| p.coords[0].clone()).collect();
        let want = vec![
            gi(-2, -4),
            gi(-2, -3),
            gi(-1, -2),
            gi(-1, -1),
            gi(0, 0),
            gi(1, 1),
            gi(1, 2),
            gi(2, 3),
            gi(2, 4),
        ];
        assert_eq!(got, want);
        let s = fibonacci_palindromic();
        assert!(pts.iter().all(|p| s.certify(p)));
    }

    #[test]
    fn fibonacci_star_example() {
        assert_eq!(fibonacci().star_map(&[gi(1, 1)]), vec![gi(2, -1).to_rat()]);
    }

    #[test]
    fn empty_when_radius_too_small() {
        let s = fibonacci();
        // 0 is excluded by the open end of (0, 1]
        assert!(enumerate(&s, &GoldenRat::zero()).unwrap().is_empty());
        assert!(enumerate(&s, &GoldenRat::from_int(-1)).is_err());
    }

    #[test]
    fn penrose_star_and_window() {
        let s = penrose();
        // ξ² ↦ ξ⁴, a vertex of the pentagon
        let st = s.star_map(&[gi(0, 0), gi(1, 0)]);
        assert_eq!(st, pentagon_vertices()[4]);
        assert!(s.window.contains(&st).unwrap());
        assert_eq!(s.window.facets.len(), 5);
        let pts = enumerate(&s, &GoldenRat::from_int(3)).unwrap();
        let keys: Vec<&PointKey> = pts.iter().map(|p| &p.coords).collect();
        assert!(keys.contains(&&vec![gi(0, 1), gi(1, 1)]));
        assert!(keys.contains(&&vec![gi(1, 1), gi(0, 1)]));
    }

    #[test]
    fn triacontahedron_hull() {
        let w = triacontahedron();
        assert_eq!(triacontahedron_vertices().len(), 32);
        assert_eq!(w.facets.len(), 30);
        let h = crate::hull::convex_hull(&triacontahedron_vertices()).unwrap();
        assert_eq!(h.euler_characteristic_3d(), Some(2));
    }

    #[test]
    fn z6_icosian_contains_z6() {
        let a = enumerate(&z6(), &GoldenRat::from_int(2)).unwrap();
        let b = enumerate(&z6_icosian(), &GoldenRat::from_int(2)).unwrap();
        let two = BigInt::from(2);
        let halved: Vec<PointKey> = b
            .iter()
            .filter_map(|p| p.coords.iter().map(|c| c.div_exact(&two)).collect::<Option<Vec<_>>>())
            .collect();
        let a_keys: Vec<PointKey> = a.iter().map(|p| p.coords.clone()).collect();
        let mut h = halved.clone();
        h.sort();
        let mut ak = a_keys.clone();
        ak.sort();
        assert_eq!(h, ak);
        assert!(b.len() > a.len());
    }

    /// Rebuilds `data/elser_sloane_facets.json`; run with `--ignored`.
    #[test]
    #[ignore]
    fn regenerate_elser_sloane_cache() {
        let w = elser_sloane_window_from_hull().unwrap();
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/elser_sloane_facets.json");
        std::fs::write(path, hrep_to_json(&w).unwrap() + "\n").unwrap();
    }

    #[test]
    fn elser_sloane_window_loads() {
        let s = elser_sloane().unwrap();
        assert!(s.window.has_kappa());
        assert!(s.contains(&[gi(0, 0), gi(0, 0), gi(0, 0), gi(0, 0)]).unwrap());
        // (1, 0, 0, 0) is a hull vertex, so it lies outside κ · hull
        assert!(!s.contains(&[gi(2, 0), gi(0, 0), gi(0, 0), gi(0, 0)]).unwrap());
        assert!(!s.contains(&[gi(0, 1), gi(0, 0), gi(0, 0), gi(0, 0)]).unwrap());
        assert!(s.contains(&[gi(2, 2), gi(0, 0), gi(0, 0), gi(0, 0)]).unwrap());
    }

    #[test]
    fn random_points_lie_in_lattice() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for lat in [LatticeKind::Golden, LatticeKind::Penrose, LatticeKind::Z6, LatticeKind::PureIcosian, LatticeKind::Icosian] {
            for _ in 0..50 {
                let p = lat.random_point(&mut rng, 5);
                assert_eq!(p.len(), lat.rank());
                assert!(lat.contains(&p));
            }
        }
    }

    #[test]
    fn float_filter_agrees_with_exact_membership() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for name in ["fibonacci-palindromic", "fibonacci-unit", "penrose", "z6", "elser-sloane"] {
            let s = preset(name).unwrap();
            let mut keys: Vec<PointKey> = (0..300).map(|_| s.lattice.random_point(&mut rng, 3)).collect();
            // fibonacci-unit has lattice points on both ends of its window
            keys.extend([vec![gi(0, 0)], vec![gi(1, 0)], vec![gi(0, 1)]].into_iter().filter(|k| k.len() == s.lattice.rank()));
            for k in keys {
                let exact = s.window.contains_exact(&s.star_map(&k));
                assert_eq!(s.window.contains(&s.star_map(&k)).unwrap(), exact);
                assert_eq!(s.window_admits(&k), exact, "{name} {}", fmt_key(&k));
            }
        }
    }

    #[test]
    fn elser_sloane_vertex_count() {
        assert_eq!(elser_sloane_vertices().unwrap().len(), 720);
    }

    #[test]
    fn translate_fibonacci() {
        let s = fibonacci();
        let t = s.translate_window(&[r(-1, 2)]).unwrap();
        assert!(t.window.contains(&[r(1, 2)]).unwrap());
        assert!(!t.window.contains(&[r(-1, 2)]).unwrap());
    }

    #[test]
    fn custom_window_file() {
        let json = r#"{"format":"quasijordan.window/1","lattice":"golden","vertices":[["-1/2"],["1/2"]]}"#;
        let s = custom_scheme_from_json(json).unwrap();
        assert_eq!(enumerate(&s, &GoldenRat::from_int(9)).unwrap().len(), 9);
        let bad = r#"{"format":"quasijordan.window/1","lattice":"golden","vertices":[["1/2"],["1/2"]]}"#;
        assert!(matches!(custom_scheme_from_json(bad), Err(QcError::DegenerateWindow(_))));
        assert!(matches!(custom_scheme_from_json("{"), Err(QcError::InvalidWindow(_))));
    }
}
