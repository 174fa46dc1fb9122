//! Exact convex hulls over ℚ(√5).
//!
//! Quickhull over ℤ[τ]: input coordinates are scaled by a common integer so
//! that every coordinate is a golden integer, facets are kept simplicial while
//! the hull grows, and coplanar simplices are merged at the end. A final pass
//! re-inserts any point found above a facet, so the output never depends on the
//! outside-set bookkeeping being complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

use crate::error::{QcError, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::linalg::{self, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    /// Outward normal, scaled so its first nonzero entry is ±1.
    pub normal: Vector,
    pub offset: GoldenRat,
    /// Indices of input points lying on the facet.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub dim: usize,
    pub facets: Vec<HullFacet>,
    /// Input points lying on at least one facet.
    pub vertices: Vec<usize>,
    /// Number of simplicial facets before merging.
    pub simplices: usize,
}

impl Hull {
    /// V − E + F for a 3-dimensional hull, edges being pairs of vertices shared
    /// by at least two facets.
    pub fn euler_characteristic_3d(&self) -> Option<i64> {
        if self.dim != 3 {
            return None;
        }
        let mut pair_count: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.facets {
            for (a, &u) in f.vertices.iter().enumerate() {
                for &v in &f.vertices[a + 1..] {
                    *pair_count.entry((u, v)).or_default() += 1;
                }
            }
        }
        let e = pair_count.values().filter(|&&c| c >= 2).count() as i64;
        Some(self.vertices.len() as i64 - e + self.facets.len() as i64)
    }
}

fn gdot(n: &[GoldenInt], p: &[GoldenInt]) -> GoldenInt {
    n.iter().zip(p).fold(GoldenInt::zero(), |acc, (a, b)| &acc + &(a * b))
}

fn det_gi(m: &[Vec<GoldenInt>]) -> GoldenInt {
    match m.len() {
        0 => GoldenInt::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = GoldenInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<GoldenInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det_gi(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// Normal to the hyperplane through `pts` (d points in dimension d).
fn cofactor_normal(pts: &[&Vec<GoldenInt>]) -> Vec<GoldenInt> {
    let d = pts[0].len();
    let rows: Vec<Vec<GoldenInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut n: Vec<GoldenInt> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<GoldenInt>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let v = det_gi(&minor);
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let g = n.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.content()));
    if g > BigInt::one() {
        n = n.iter().map(|x| x.div_exact(&g).expect("gcd divides")).collect();
    }
    n
}

struct Facet {
    verts: Vec<u32>,
    normal: Vec<GoldenInt>,
    offset: GoldenInt,
    outside: Vec<u32>,
    alive: bool,
}

struct Builder {
    d: usize,
    pts: Vec<Vec<GoldenInt>>,
    centroid_sum: Vec<GoldenInt>,
    facets: Vec<Facet>,
    ridges: HashMap<Vec<u32>, Vec<usize>>,
}

impl Builder {
    fn above(&self, f: usize, p: u32) -> bool {
        let fc = &self.facets[f];
        gdot(&fc.normal, &self.pts[p as usize]) > fc.offset
    }

    fn make_facet(&mut self, mut verts: Vec<u32>) -> usize {
        verts.sort_unstable();
        let refs: Vec<&Vec<GoldenInt>> = verts.iter().map(|&v| &self.pts[v as usize]).collect();
        let mut normal = cofactor_normal(&refs);
        let mut offset = gdot(&normal, &self.pts[verts[0] as usize]);
        let scaled = &GoldenInt::from_int(self.d as i64 + 1) * &offset;
        let c = gdot(&normal, &self.centroid_sum);
        if c > scaled {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        debug_assert!(c != scaled, "interior reference point on a facet");
        let id = self.facets.len();
        for skip in 0..verts.len() {
            let ridge: Vec<u32> = verts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect();
            self.ridges.entry(ridge).or_default().push(id);
        }
        self.facets.push(Facet {
            verts,
            normal,
            offset,
            outside: Vec::new(),
            alive: true,
        });
        id
    }

    fn kill(&mut self, f: usize) {
        self.facets[f].alive = false;
        let verts = self.facets[f].verts.clone();
        for skip in 0..verts.len() {
            let ridge: Vec<u32> = verts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect();
            if let Some(list) = self.ridges.get_mut(&ridge) {
                list.retain(|&g| g != f);
                if list.is_empty() {
                    self.ridges.remove(&ridge);
                }
            }
        }
    }

    fn neighbour(&self, f: usize, ridge: &[u32]) -> Option<usize> {
        self.ridges.get(ridge)?.iter().copied().find(|&g| g != f)
    }

    fn insert(&mut self, start: usize, p: u32) {
        // collect the visible region by flooding across ridges
        let mut visible = vec![start];
        let mut is_visible: HashMap<usize, bool> = HashMap::from([(start, true)]);
        let mut horizon: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < visible.len() {
            let f = visible[i];
            i += 1;
            let verts = self.facets[f].verts.clone();
            for skip in 0..verts.len() {
                let ridge: Vec<u32> = verts.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, v)| *v).collect();
                let Some(g) = self.neighbour(f, &ridge) else {
                    continue;
                };
                let vis = *is_visible.entry(g).or_insert_with(|| self.above(g, p));
                if vis {
                    if !visible.contains(&g) {
                        visible.push(g);
                    }
                } else {
                    horizon.push(ridge);
                }
            }
        }
        let mut orphans: Vec<u32> = Vec::new();
        for &f in &visible {
            orphans.append(&mut self.facets[f].outside);
            self.kill(f);
        }
        let new_ids: Vec<usize> = horizon
            .into_iter()
            .map(|mut r| {
                r.push(p);
                self.make_facet(r)
            })
            .collect();
        for q in orphans {
            if q == p {
                continue;
            }
            if let Some(&f) = new_ids.iter().find(|&&f| self.above(f, q)) {
                self.facets[f].outside.push(q);
            }
        }
    }

    fn run(&mut self) {
        while let Some(f) = (0..self.facets.len()).find(|&f| self.facets[f].alive && !self.facets[f].outside.is_empty()) {
            // farthest point of the outside set is a hull vertex
            let fc = &self.facets[f];
            let p = *fc
                .outside
                .iter()
                .max_by(|&&a, &&b| gdot(&fc.normal, &self.pts[a as usize]).cmp(&gdot(&fc.normal, &self.pts[b as usize])))
                .unwrap();
            self.facets[f].outside.retain(|&q| q != p);
            self.insert(f, p);
        }
    }

    /// Assigns any point above a live facet to it; returns whether any was found.
    fn sweep(&mut self) -> bool {
        let mut found = false;
        for p in 0..self.pts.len() as u32 {
            if let Some(f) = (0..self.facets.len()).find(|&f| self.facets[f].alive && self.above(f, p)) {
                self.facets[f].outside.push(p);
                found = true;
            }
        }
        found
    }
}

fn scale_to_golden_ints(points: &[Vector]) -> (BigInt, Vec<Vec<GoldenInt>>) {
    // p + q√5 = (p − q) + 2q·τ
    let two = GoldenRat::from_int(2);
    let mut d = BigInt::one();
    for x in points.iter().flatten() {
        let a = &x.p - &x.q;
        let b = (&x.q * &two.p).clone();
        d = d.lcm(a.denom()).lcm(b.denom());
    }
    let dr = num_rational::BigRational::from_integer(d.clone());
    let pts = points
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    let a = (&x.p - &x.q) * &dr;
                    let b = &x.q * &two.p * &dr;
                    GoldenInt {
                        a: a.to_integer(),
                        b: b.to_integer(),
                    }
                })
                .collect()
        })
        .collect();
    (d, pts)
}

fn normalise(normal: &[GoldenRat], offset: &GoldenRat) -> (Vector, GoldenRat) {
    let lead = normal.iter().find(|x| !x.is_zero()).expect("nonzero normal").abs();
    (normal.iter().map(|x| x / &lead).collect(), offset / &lead)
}

/// Exact H-representation of the convex hull of `points`.
///
/// Fails with [`QcError::DegenerateWindow`] when the points do not affinely
/// span their ambient space.
pub fn convex_hull(points: &[Vector]) -> Result<Hull> {
    let d = points.first().map_or(0, Vec::len);
    if d == 0 {
        return Err(QcError::DegenerateWindow("no points".into()));
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(QcError::DimensionMismatch {
            expected: d,
            found: points.iter().map(Vec::len).find(|&l| l != d).unwrap(),
        });
    }
    if d == 1 {
        return hull_1d(points);
    }
    let (scale, pts) = scale_to_golden_ints(points);

    // initial simplex by greedy rank growth
    let mut simplex: Vec<usize> = vec![0];
    let mut diffs: Vec<Vector> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        let diff: Vector = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        let mut trial = diffs.clone();
        trial.push(diff.clone());
        if linalg::golden_rank(&trial) == trial.len() {
            diffs = trial;
            simplex.push(i);
        }
    }
    if simplex.len() < d + 1 {
        return Err(QcError::DegenerateWindow(format!(
            "points span an affine space of dimension {} < {d}",
            simplex.len() - 1
        )));
    }
    let centroid_sum = (0..d)
        .map(|j| simplex.iter().fold(GoldenInt::zero(), |acc, &i| &acc + &pts[i][j]))
        .collect();
    let mut b = Builder {
        d,
        pts,
        centroid_sum,
        facets: Vec::new(),
        ridges: HashMap::new(),
    };
    for skip in 0..=d {
        let verts: Vec<u32> = simplex.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v as u32).collect();
        b.make_facet(verts);
    }
    for p in 0..b.pts.len() as u32 {
        if simplex.contains(&(p as usize)) {
            continue;
        }
        if let Some(f) = (0..b.facets.len()).find(|&f| b.above(f, p)) {
            b.facets[f].outside.push(p);
        }
    }
    loop {
        b.run();
        if !b.sweep() {
            break;
        }
    }

    let scale_r = GoldenRat::from_int(scale);
    let alive: Vec<&Facet> = b.facets.iter().filter(|f| f.alive).collect();
    let simplices = alive.len();
    let mut groups: BTreeMap<(Vector, GoldenRat), Vec<usize>> = BTreeMap::new();
    let mut reps: BTreeMap<(Vector, GoldenRat), (Vec<GoldenInt>, GoldenInt)> = BTreeMap::new();
    for f in &alive {
        let n: Vector = f.normal.iter().map(GoldenInt::to_rat).collect();
        let o = &f.offset.to_rat() / &scale_r;
        let key = normalise(&n, &o);
        groups.entry(key.clone()).or_default();
        reps.entry(key).or_insert_with(|| (f.normal.clone(), f.offset.clone()));
    }
    let mut facets = Vec::with_capacity(groups.len());
    let mut on_hull = vec![false; b.pts.len()];
    for ((normal, offset), _) in groups {
        let (n_int, o_int) = &reps[&(normal.clone(), offset.clone())];
        let vertices: Vec<usize> = (0..b.pts.len()).filter(|&i| gdot(n_int, &b.pts[i]) == *o_int).collect();
        for &v in &vertices {
            on_hull[v] = true;
        }
        facets.push(HullFacet {
            normal,
            offset,
            vertices,
        });
    }
    let vertices = (0..on_hull.len()).filter(|&i| on_hull[i]).collect();
    Ok(Hull {
        dim: d,
        facets,
        vertices,
        simplices,
    })
}

fn hull_1d(points: &[Vector]) -> Result<Hull> {
    let lo = points.iter().map(|p| &p[0]).min().unwrap().clone();
    let hi = points.iter().map(|p| &p[0]).max().unwrap().clone();
    if lo == hi {
        return Err(QcError::DegenerateWindow("all points coincide".into()));
    }
    let at = |x: &GoldenRat| -> Vec<usize> { (0..points.len()).filter(|&i| points[i][0] == *x).collect() };
    let facets = vec![
        HullFacet {
            normal: vec![GoldenRat::from_int(-1)],
            offset: -&lo,
            vertices: at(&lo),
        },
        HullFacet {
            normal: vec![GoldenRat::one()],
            offset: hi.clone(),
            vertices: at(&hi),
        },
    ];
    let mut vertices: Vec<usize> = facets.iter().flat_map(|f| f.vertices.clone()).collect();
    vertices.sort_unstable();
    Ok(Hull {
        dim: 1,
        facets,
        vertices,
        simplices: 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::unit_icosians;

    fn r(n: i64, d: i64) -> GoldenRat {
        GoldenRat::ratio(n, d)
    }

    fn check_valid(points: &[Vector], h: &Hull) {
        for f in &h.facets {
            for p in points {
                assert!(linalg::dot(&f.normal, p) <= f.offset);
            }
            assert!(f.vertices.len() >= h.dim);
        }
    }

    #[test]
    fn interval() {
        let pts = vec![vec![r(-1, 2)], vec![r(1, 2)], vec![r(0, 1)]];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 2);
        assert_eq!(h.vertices, vec![0, 1]);
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let g = GoldenRat::from_int;
        let pts = vec![
            vec![g(0), g(0)],
            vec![g(1), g(0)],
            vec![g(0), g(1)],
            vec![g(1), g(1)],
            vec![r(1, 2), r(1, 2)],
            vec![r(1, 2), g(0)],
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 4);
        check_valid(&pts, &h);
    }

    #[test]
    fn degenerate_rejected() {
        let g = GoldenRat::from_int;
        let pts = vec![vec![g(0), g(0)], vec![g(1), g(1)], vec![g(2), g(2)]];
        assert!(matches!(convex_hull(&pts), Err(QcError::DegenerateWindow(_))));
    }

    #[test]
    fn cell_600() {
        let pts: Vec<Vector> = unit_icosians().iter().map(|u| u.components().to_vec()).collect();
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 600);
        assert_eq!(h.vertices.len(), 120);
        check_valid(&pts, &h);
    }
}
