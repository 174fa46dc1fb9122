//! Quaternions over ℤ[τ], the icosian group and ring, and the E₈ projection.
//!
//! Components are stored as half-numerators: an [`Icosian`] with numerators
//! `[n0, n1, n2, n3]` is the quaternion `(n0 + n1 i + n2 j + n3 k) / 2`. This
//! makes every 600-cell vertex exactly representable. Membership in the icosian
//! ring is decided by an integer lattice test on the eight integer parts of the
//! numerators, not by a parity rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use crate::golden::{GoldenInt, GoldenRat};
use crate::linalg::{self, IntLattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Icosian {
    /// Twice the quaternion components (1, i, j, k).
    pub num: [GoldenInt; 4],
}

fn gi(a: i64, b: i64) -> GoldenInt {
    GoldenInt::new(a, b)
}

impl Icosian {
    pub fn from_halves(num: [GoldenInt; 4]) -> Icosian {
        Icosian { num }
    }

    /// The quaternion with the given (whole) components.
    pub fn from_components(c: [GoldenInt; 4]) -> Icosian {
        let two = BigInt::from(2);
        Icosian {
            num: c.map(|x| &two * &x),
        }
    }

    pub fn zero() -> Icosian {
        Icosian::default()
    }

    pub fn one() -> Icosian {
        Icosian::unit_axis(0)
    }

    pub fn i() -> Icosian {
        Icosian::unit_axis(1)
    }

    pub fn j() -> Icosian {
        Icosian::unit_axis(2)
    }

    pub fn k() -> Icosian {
        Icosian::unit_axis(3)
    }

    fn unit_axis(n: usize) -> Icosian {
        let mut num: [GoldenInt; 4] = Default::default();
        num[n] = gi(2, 0);
        Icosian { num }
    }

    pub fn real(x: &GoldenInt) -> Icosian {
        Icosian::from_components([x.clone(), GoldenInt::zero(), GoldenInt::zero(), GoldenInt::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(GoldenInt::is_zero)
    }

    /// Exact quaternion components in ℚ(√5).
    pub fn components(&self) -> [GoldenRat; 4] {
        let half = GoldenRat::ratio(1, 2);
        self.num.clone().map(|n| &n.to_rat() * &half)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        self.num.clone().map(|n| n.to_f64() / 2.0)
    }

    pub fn conjugate(&self) -> Icosian {
        let [a, b, c, d] = &self.num;
        Icosian {
            num: [a.clone(), -b, -c, -d],
        }
    }

    /// Componentwise Galois conjugation.
    pub fn star(&self) -> Icosian {
        Icosian {
            num: self.num.clone().map(|n| n.star()),
        }
    }

    /// Multiply by a real scalar from ℤ[τ].
    pub fn scale(&self, s: &GoldenInt) -> Icosian {
        Icosian {
            num: self.num.clone().map(|n| s * &n),
        }
    }

    /// Hamilton product, or `None` when the result leaves ½ℤ[τ]⁴.
    pub fn checked_mul(&self, y: &Icosian) -> Option<Icosian> {
        let [a1, b1, c1, d1] = &self.num;
        let [a2, b2, c2, d2] = &y.num;
        let full = [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ];
        // (2x)(2y) = 4xy, and the numerator of xy is half of that
        let two = BigInt::from(2);
        let mut num: [GoldenInt; 4] = Default::default();
        for (slot, f) in num.iter_mut().zip(full) {
            *slot = f.div_exact(&two)?;
        }
        Some(Icosian { num })
    }

    /// n(x) = x x̄ as `p + q√5`.
    pub fn quaternionic_norm(&self) -> GoldenRat {
        let s = self
            .num
            .iter()
            .fold(GoldenInt::zero(), |acc, n| &acc + &(n * n));
        &s.to_rat() * &GoldenRat::ratio(1, 4)
    }

    /// n_E(x) = p + q where n(x) = p + q√5.
    pub fn euclidean_norm(&self) -> BigRational {
        let n = self.quaternionic_norm();
        n.p + n.q
    }

    /// The eight integers (a0, b0, …, a3, b3) of the half-numerators.
    pub fn half_coords(&self) -> [BigInt; 8] {
        let mut out: [BigInt; 8] = Default::default();
        for (k, n) in self.num.iter().enumerate() {
            out[2 * k] = n.a.clone();
            out[2 * k + 1] = n.b.clone();
        }
        out
    }

    pub fn from_half_coords(c: &[BigInt; 8]) -> Icosian {
        let num = [0, 1, 2, 3].map(|k| GoldenInt {
            a: c[2 * k].clone(),
            b: c[2 * k + 1].clone(),
        });
        Icosian { num }
    }

    /// Integral coordinates `(a, b, c, d, e, f, g, h)` with
    /// `x = (a+τb) + (c+τd)i + (e+τf)j + (g+τh)k`; `None` if a component is
    /// not in ℤ[τ].
    pub fn to_z8(&self) -> Option<[BigInt; 8]> {
        let two = BigInt::from(2);
        let mut out: [BigInt; 8] = Default::default();
        for (k, n) in self.num.iter().enumerate() {
            let w = n.div_exact(&two)?;
            out[2 * k] = w.a;
            out[2 * k + 1] = w.b;
        }
        Some(out)
    }

    pub fn from_z8(c: &[BigInt; 8]) -> Icosian {
        let comps = [0, 1, 2, 3].map(|k| GoldenInt {
            a: c[2 * k].clone(),
            b: c[2 * k + 1].clone(),
        });
        Icosian::from_components(comps)
    }

    pub fn in_icosian_ring(&self) -> bool {
        icosian_ring_lattice().contains(&self.half_coords())
    }
}

impl Add for &Icosian {
    type Output = Icosian;
    fn add(self, rhs: &Icosian) -> Icosian {
        let mut num = self.num.clone();
        for (x, y) in num.iter_mut().zip(&rhs.num) {
            *x += y;
        }
        Icosian { num }
    }
}

impl Sub for &Icosian {
    type Output = Icosian;
    fn sub(self, rhs: &Icosian) -> Icosian {
        let mut num = self.num.clone();
        for (x, y) in num.iter_mut().zip(&rhs.num) {
            *x -= y;
        }
        Icosian { num }
    }
}

impl Neg for &Icosian {
    type Output = Icosian;
    fn neg(self) -> Icosian {
        Icosian {
            num: self.num.clone().map(|n| -n),
        }
    }
}

impl fmt::Display for Icosian {
    /// `(c0, c1, c2, c3)/2` with each numerator in `a+b*tau` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.num;
        write!(f, "({a}, {b}, {c}, {d})/2")
    }
}

/// Hamilton product of two ring elements.
///
/// Panics if the product is not representable with half-integer components,
/// which cannot happen for elements of the icosian ring.
pub fn quat_mul(x: &Icosian, y: &Icosian) -> Icosian {
    x.checked_mul(y)
        .expect("product left the half-integer lattice; inputs are not ring elements")
}

pub fn quaternionic_norm(x: &Icosian) -> GoldenRat {
    x.quaternionic_norm()
}

pub fn euclidean_norm(x: &Icosian) -> BigRational {
    x.euclidean_norm()
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

/// The 120 unit icosians (600-cell vertices), sorted by exact value.
pub fn unit_icosians() -> Vec<Icosian> {
    let mut out = Vec::with_capacity(120);
    for axis in 0..4 {
        for s in [2, -2] {
            let mut num: [GoldenInt; 4] = Default::default();
            num[axis] = gi(s, 0);
            out.push(Icosian { num });
        }
    }
    for mask in 0..16u32 {
        let num = [0, 1, 2, 3].map(|b| gi(if mask >> b & 1 == 1 { -1 } else { 1 }, 0));
        out.push(Icosian { num });
    }
    // ½(0, ±1, ±1/τ, ±τ) under even permutations
    let base = [gi(0, 0), gi(1, 0), gi(-1, 1), gi(0, 1)];
    for mask in 0..8u32 {
        let mut v = base.clone();
        for b in 0..3 {
            if mask >> b & 1 == 1 {
                v[b + 1] = -&v[b + 1];
            }
        }
        for p in EVEN_PERMS_4 {
            // place v[t] at position p[t]
            let mut num: [GoldenInt; 4] = Default::default();
            for t in 0..4 {
                num[p[t]] = v[t].clone();
            }
            out.push(Icosian { num });
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The icosian ring as a lattice in the half-numerator coordinates.
pub fn icosian_ring_lattice() -> &'static IntLattice {
    static RING: OnceLock<IntLattice> = OnceLock::new();
    RING.get_or_init(|| {
        let gens: Vec<Vec<BigInt>> = unit_icosians()
            .iter()
            .map(|u| u.half_coords().to_vec())
            .collect();
        IntLattice::from_generators(8, &gens)
    })
}

/// A permutation of {1,…,5} stored 0-based: `p[i]` is the image of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm5(pub [u8; 5]);

impl Perm5 {
    pub fn identity() -> Perm5 {
        Perm5([0, 1, 2, 3, 4])
    }

    /// Apply `self` first, then `g`.
    pub fn then(&self, g: &Perm5) -> Perm5 {
        Perm5(self.0.map(|x| g.0[x as usize]))
    }

    pub fn is_even(&self) -> bool {
        let mut inv = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }

    /// Parse cycle notation over 1..5, e.g. `(2,3)(4,5)`; `()` is the identity.
    pub fn from_cycles(s: &str) -> Option<Perm5> {
        let mut p = [0u8, 1, 2, 3, 4];
        for cyc in s.split(')') {
            let cyc = cyc.trim().trim_start_matches('(');
            if cyc.is_empty() {
                continue;
            }
            let pts: Vec<u8> = cyc
                .split(',')
                .map(|t| t.trim().parse::<u8>().ok().filter(|&v| (1..=5).contains(&v)).map(|v| v - 1))
                .collect::<Option<_>>()?;
            for w in 0..pts.len() {
                p[pts[w] as usize] = pts[(w + 1) % pts.len()];
            }
        }
        Some(Perm5(p))
    }

    /// Canonical disjoint-cycle notation, 1-based, fixed points omitted.
    pub fn to_cycles(&self) -> String {
        let mut seen = [false; 5];
        let mut out = String::new();
        for start in 0..5u8 {
            if seen[start as usize] || self.0[start as usize] == start {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start as usize] = true;
            let mut x = self.0[start as usize];
            while x != start {
                seen[x as usize] = true;
                cyc.push(x + 1);
                x = self.0[x as usize];
            }
            let body: Vec<String> = cyc.iter().map(u8::to_string).collect();
            out.push_str(&format!("({})", body.join(",")));
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

/// The five rows of the icosian/A₅ correspondence: unit icosian and the
/// permutation it maps to.
pub fn a5_reference_rows() -> Vec<(Icosian, Perm5)> {
    let h = |a: [GoldenInt; 4]| Icosian::from_halves(a);
    vec![
        (Icosian::i(), Perm5::from_cycles("(2,3)(4,5)").unwrap()),
        (Icosian::j(), Perm5::from_cycles("(2,4)(5,3)").unwrap()),
        (Icosian::k(), Perm5::from_cycles("(2,5)(3,4)").unwrap()),
        (
            h([gi(-1, 0), gi(1, 0), gi(1, 0), gi(1, 0)]),
            Perm5::from_cycles("(3,4,5)").unwrap(),
        ),
        (
            h([gi(0, 0), gi(1, 0), gi(1, -1), gi(0, 1)]),
            Perm5::from_cycles("(1,3)(4,5)").unwrap(),
        ),
    ]
}

#[derive(Clone, Debug)]
pub struct IcosianGroupTable {
    pub elements: Vec<Icosian>,
    /// `product_index[a][b]` is the index of `elements[a] * elements[b]`.
    pub product_index: Vec<Vec<usize>>,
    pub a5_image: Vec<Perm5>,
}

impl IcosianGroupTable {
    pub fn index_of(&self, x: &Icosian) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn image_of(&self, x: &Icosian) -> Option<Perm5> {
        self.index_of(x).map(|i| self.a5_image[i])
    }

    /// Elements mapped to the identity permutation.
    pub fn kernel(&self) -> Vec<Icosian> {
        self.elements
            .iter()
            .zip(&self.a5_image)
            .filter(|(_, p)| **p == Perm5::identity())
            .map(|(x, _)| x.clone())
            .collect()
    }

    /// Checks φ(xy) = φ(x) then φ(y) for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        (0..self.elements.len()).all(|a| {
            (0..self.elements.len()).all(|b| {
                self.a5_image[self.product_index[a][b]] == self.a5_image[a].then(&self.a5_image[b])
            })
        })
    }
}

/// Builds the icosian group, its multiplication table, and the A₅ map.
///
/// Panics if closure, cardinality, or the A₅ assignment is inconsistent; any
/// of these means the arithmetic is broken.
pub fn build_icosian_group() -> IcosianGroupTable {
    let elements = unit_icosians();
    assert_eq!(elements.len(), 120, "600-cell expansion must give 120 units");
    let index: HashMap<&Icosian, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let product_index: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| {
                    let p = quat_mul(x, y);
                    *index.get(&p).expect("icosian group not closed")
                })
                .collect()
        })
        .collect();

    let gens: Vec<(usize, Perm5)> = a5_reference_rows()
        .into_iter()
        .map(|(x, p)| (index[&x], p))
        .collect();
    let mut image: Vec<Option<Perm5>> = vec![None; 120];
    let id = index[&Icosian::one()];
    image[id] = Some(Perm5::identity());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let px = image[x].unwrap();
        for &(g, pg) in &gens {
            let y = product_index[x][g];
            let py = px.then(&pg);
            match image[y] {
                None => {
                    image[y] = Some(py);
                    queue.push_back(y);
                }
                Some(existing) => assert_eq!(existing, py, "A5 assignment is not a homomorphism"),
            }
        }
    }
    let a5_image: Vec<Perm5> = image
        .into_iter()
        .map(|p| p.expect("generators do not generate the icosian group"))
        .collect();
    IcosianGroupTable {
        elements,
        product_index,
        a5_image,
    }
}

// ---------------------------------------------------------------------------
// E₈
// ---------------------------------------------------------------------------

/// ι(a₁), …, ι(a₄).
pub fn iota_a() -> [Icosian; 4] {
    let h = |a: [GoldenInt; 4]| Icosian::from_halves(a);
    [
        h([gi(-1, 1), gi(0, -1), gi(0, 0), gi(-1, 0)]),
        h([gi(0, 0), gi(-1, 1), gi(0, -1), gi(1, 0)]),
        h([gi(0, 0), gi(1, 0), gi(-1, 1), gi(0, -1)]),
        h([gi(0, 0), gi(-1, 0), gi(-1, 1), gi(0, 1)]),
    ]
}

/// π∥ of `X = Σ cᵢ αᵢ`:
/// `(c₁+τc₇)ι(a₁) + (c₂+τc₆)ι(a₂) + (c₃+τc₅)ι(a₃) + (c₈+τc₄)ι(a₄)`.
pub fn e8_project_parallel(c: &[BigInt; 8]) -> Icosian {
    let a = iota_a();
    let coeff = [(0, 6), (1, 5), (2, 4), (7, 3)].map(|(r, t)| GoldenInt {
        a: c[r].clone(),
        b: c[t].clone(),
    });
    a.iter()
        .zip(&coeff)
        .fold(Icosian::zero(), |acc, (v, s)| &acc + &v.scale(s))
}

/// π⊥(X), the componentwise star of π∥(X).
pub fn e8_project_perp(c: &[BigInt; 8]) -> Icosian {
    e8_project_parallel(c).star()
}

/// Simple roots of E₈ in the even coordinate system, rows of the basis used
/// by [`e8_project_parallel`].
pub fn e8_simple_roots() -> Vec<Vec<BigRational>> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut out = vec![vec![r(1, 2), r(-1, 2), r(-1, 2), r(-1, 2), r(-1, 2), r(-1, 2), r(-1, 2), r(1, 2)]];
    let mut a2 = vec![r(0, 1); 8];
    a2[0] = r(1, 1);
    a2[1] = r(1, 1);
    out.push(a2);
    for k in 0..6 {
        let mut v = vec![r(0, 1); 8];
        v[k] = r(-1, 1);
        v[k + 1] = r(1, 1);
        out.push(v);
    }
    out
}

/// All 240 roots of E₈ in the even coordinate system.
pub fn e8_roots() -> Vec<Vec<BigRational>> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut out = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![r(0, 1); 8];
                v[i] = r(si, 1);
                v[j] = r(sj, 1);
                out.push(v);
            }
        }
    }
    for mask in 0..256u32 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|b| r(if mask >> b & 1 == 1 { -1 } else { 1 }, 2)).collect());
        }
    }
    out
}

/// Coefficients of `v` in the simple-root basis, if they are integers.
pub fn e8_coefficients(v: &[BigRational]) -> Option<[BigInt; 8]> {
    static INV: OnceLock<linalg::Matrix> = OnceLock::new();
    let inv = INV.get_or_init(|| {
        let m: linalg::Matrix = e8_simple_roots()
            .into_iter()
            .map(|row| row.into_iter().map(GoldenRat::from_rational).collect())
            .collect();
        linalg::inverse(&m).expect("simple roots are a basis")
    });
    let v: Vec<GoldenRat> = v.iter().cloned().map(GoldenRat::from_rational).collect();
    // v = Σ cᵢ αᵢ, i.e. v = c · S, so c = v · S⁻¹
    let c = linalg::vec_mat(&v, inv);
    let mut out: [BigInt; 8] = Default::default();
    for (slot, x) in out.iter_mut().zip(c) {
        if !x.q.is_zero() || !x.p.is_integer() {
            return None;
        }
        *slot = x.p.to_integer();
    }
    Some(out)
}

/// Quick check helper: is `x` a unit of the ring (n(x) = 1)?
pub fn is_unit(x: &Icosian) -> bool {
    x.quaternionic_norm() == GoldenRat::one()
}

/// Real part of `x` as an exact value.
pub fn real_part(x: &Icosian) -> GoldenRat {
    &x.num[0].to_rat() * &GoldenRat::ratio(1, 2)
}

/// `x` is a pure quaternion (zero real part).
pub fn is_pure(x: &Icosian) -> bool {
    x.num[0].is_zero()
}

/// BigInt convenience for fixed arrays.
pub fn z8(c: [i64; 8]) -> [BigInt; 8] {
    c.map(BigInt::from)
}

impl Icosian {
    /// True when the element has norm one, i.e. lies in the icosian group.
    pub fn is_unit(&self) -> bool {
        is_unit(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn half(a: [(i64, i64); 4]) -> Icosian {
        Icosian::from_halves(a.map(|(x, y)| gi(x, y)))
    }

    #[test]
    fn quaternion_units() {
        assert_eq!(quat_mul(&Icosian::i(), &Icosian::j()), Icosian::k());
        assert_eq!(quat_mul(&Icosian::j(), &Icosian::i()), -&Icosian::k());
        let y = half([(1, 0), (-1, 1), (0, 1), (1, 0)]);
        assert_eq!(quat_mul(&Icosian::one(), &y), y);
    }

    #[test]
    fn conjugate_product_is_one() {
        let x = half([(1, 0), (1, 0), (1, 0), (1, 0)]);
        assert_eq!(quat_mul(&x, &x.conjugate()), Icosian::one());
    }

    #[test]
    fn norms() {
        assert_eq!(Icosian::one().quaternionic_norm(), GoldenRat::one());
        let t = Icosian::real(&GoldenInt::tau());
        assert_eq!(t.quaternionic_norm(), GoldenRat::from_parts(3, 2, 1, 2));
        assert_eq!(t.euclidean_norm(), BigRational::from_integer(2.into()));
        assert_eq!(Icosian::one().euclidean_norm(), BigRational::one());
    }

    #[test]
    fn group_basics() {
        let g = build_icosian_group();
        assert_eq!(g.elements.len(), 120);
        assert!(g.elements.iter().all(Icosian::is_unit));
        assert!(g.elements.iter().all(|x| x.euclidean_norm() == BigRational::one()));
        for u in [Icosian::one(), Icosian::i(), Icosian::j(), Icosian::k()] {
            assert!(g.index_of(&u).is_some());
            assert!(g.index_of(&-&u).is_some());
        }
        let mut kernel = g.kernel();
        kernel.sort();
        assert_eq!(kernel, vec![-&Icosian::one(), Icosian::one()]);
        assert!(g.is_homomorphism());
        for (x, p) in a5_reference_rows() {
            assert_eq!(g.image_of(&x), Some(p));
        }
        let images: std::collections::HashSet<_> = g.a5_image.iter().collect();
        assert_eq!(images.len(), 60);
        assert!(g.a5_image.iter().all(Perm5::is_even));
    }

    #[test]
    fn perm_notation() {
        let p = Perm5::from_cycles("(2,4)(5,3)").unwrap();
        assert_eq!(p.to_cycles(), "(2,4)(3,5)");
        assert_eq!(Perm5::from_cycles("()").unwrap(), Perm5::identity());
        assert!(Perm5::from_cycles("(1,6)").is_none());
    }

    #[test]
    fn z8_round_trip() {
        let c = z8([1, -2, 3, 0, 0, 5, -7, 1]);
        let x = Icosian::from_z8(&c);
        assert_eq!(x.to_z8().unwrap(), c);
        assert!(x.in_icosian_ring());
        assert!(half([(1, 0), (0, 0), (0, 0), (0, 0)]).to_z8().is_none());
        assert!(!half([(1, 0), (0, 0), (0, 0), (0, 0)]).in_icosian_ring());
    }

    #[test]
    fn star_matches_z8_formula() {
        let c = z8([1, -2, 3, 4, -5, 6, 7, -8]);
        let s = Icosian::from_z8(&c).star().to_z8().unwrap();
        let expect = z8([1 - 2, 2, 3 + 4, -4, -5 + 6, -6, 7 - 8, 8]);
        assert_eq!(s, expect);
    }

    #[test]
    fn e8_projection_examples() {
        assert!(e8_project_parallel(&z8([0; 8])).is_zero());
        let a1 = e8_project_parallel(&z8([1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(a1, half([(-1, 1), (0, -1), (0, 0), (-1, 0)]));
        assert_eq!(e8_project_perp(&z8([1, 0, 0, 0, 0, 0, 0, 0])), a1.star());
    }

    #[test]
    fn e8_image_is_the_ring() {
        let imgs: Vec<Vec<BigInt>> = (0..8)
            .map(|k| {
                let mut c = [0i64; 8];
                c[k] = 1;
                e8_project_parallel(&z8(c)).half_coords().to_vec()
            })
            .collect();
        let l = IntLattice::from_generators(8, &imgs);
        assert_eq!(&l, icosian_ring_lattice());
    }

    #[test]
    fn e8_roots_map_into_ring() {
        let roots = e8_roots();
        assert_eq!(roots.len(), 240);
        let mut seen = std::collections::HashSet::new();
        for r in &roots {
            let c = e8_coefficients(r).expect("root has integral coefficients");
            let x = e8_project_parallel(&c);
            assert!(x.in_icosian_ring());
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn ring_units_of_unit_euclidean_norm() {
        // n_E = 1 picks out the 120 units and the 120 elements u/τ
        let inv_tau = GoldenInt::new(-1, 1);
        let g = unit_icosians();
        let mut all: Vec<Icosian> = g.iter().cloned().chain(g.iter().map(|u| u.scale(&inv_tau))).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 240);
        assert!(all.iter().all(|x| x.in_icosian_ring() && x.euclidean_norm() == BigRational::one()));
    }
}
