//! Root systems Δ₂ ⊂ Δ₃ ⊂ Δ₄ of types H₂, H₃, H₄, reflections, and Coxeter
//! relation checks.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{QcError, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::icosian::unit_icosians;
use crate::linalg::{self, dot, Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    axis: Vector,
    axis_norm: GoldenRat,
}

impl Reflection {
    pub fn new(axis: Vector) -> Result<Reflection> {
        let axis_norm = dot(&axis, &axis);
        if axis_norm.is_zero() {
            return Err(QcError::ZeroAxis);
        }
        Ok(Reflection { axis, axis_norm })
    }

    pub fn axis(&self) -> &[GoldenRat] {
        &self.axis
    }

    /// `v − (2⟨v|α⟩/⟨α|α⟩) α`.
    pub fn reflect(&self, v: &[GoldenRat]) -> Result<Vector> {
        if v.len() != self.axis.len() {
            return Err(QcError::DimensionMismatch {
                expected: self.axis.len(),
                found: v.len(),
            });
        }
        let f = &(&dot(v, &self.axis) * &GoldenRat::from_int(2)) / &self.axis_norm;
        Ok(v.iter().zip(&self.axis).map(|(x, a)| x - &(&f * a)).collect())
    }

    pub fn matrix(&self) -> Matrix {
        let n = self.axis.len();
        let cols: Vec<Vector> = (0..n)
            .map(|i| {
                let mut e = vec![GoldenRat::zero(); n];
                e[i] = GoldenRat::one();
                self.reflect(&e).expect("matching dimension")
            })
            .collect();
        linalg::transpose(&cols)
    }
}

pub fn reflect(r: &Reflection, v: &[GoldenRat]) -> Result<Vector> {
    r.reflect(v)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub name: String,
    /// Dimension of the span of the roots.
    pub rank: usize,
    pub roots: Vec<Vector>,
    /// Simple roots ordered so that their Coxeter matrix is `coxeter_matrix`.
    pub simple_roots: Vec<Vector>,
    pub coxeter_matrix: Vec<Vec<u32>>,
}

impl RootSystem {
    pub fn ambient_dim(&self) -> usize {
        self.roots.first().map_or(0, Vec::len)
    }

    pub fn generators(&self) -> Vec<Reflection> {
        self.simple_roots
            .iter()
            .map(|a| Reflection::new(a.clone()).expect("roots are nonzero"))
            .collect()
    }
}

fn rat(n: i64, d: i64) -> GoldenRat {
    GoldenRat::ratio(n, d)
}

fn half_tau() -> GoldenRat {
    &GoldenRat::tau() * &rat(1, 2)
}

fn half_tau_inv() -> GoldenRat {
    &GoldenRat::tau_inv() * &rat(1, 2)
}

fn sorted_unique(mut v: Vec<Vector>) -> Vec<Vector> {
    v.sort();
    v.dedup();
    v
}

fn sign_variants(base: &[GoldenRat]) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for x in base {
        let mut next = Vec::new();
        for prefix in &out {
            let mut a: Vector = prefix.clone();
            a.push(x.clone());
            next.push(a);
            if !x.is_zero() {
                let mut b: Vector = prefix.clone();
                b.push(-x);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

fn delta4_roots() -> Vec<Vector> {
    sorted_unique(unit_icosians().iter().map(|u| u.components().to_vec()).collect())
}

fn delta3_roots() -> Vec<Vector> {
    let mut out = Vec::new();
    for axis in 0..3 {
        for s in [1, -1] {
            let mut v = vec![GoldenRat::zero(); 3];
            v[axis] = GoldenRat::from_int(s);
            out.push(v);
        }
    }
    for v in sign_variants(&[rat(1, 2), half_tau_inv(), half_tau()]) {
        for shift in 0..3 {
            out.push((0..3).map(|i| v[(i + 3 - shift) % 3].clone()).collect());
        }
    }
    sorted_unique(out)
}

/// The ten roots of Δ₃ orthogonal to the fivefold axis (0, 1, τ).
fn delta2_roots() -> Vec<Vector> {
    let axis = vec![GoldenRat::zero(), GoldenRat::one(), GoldenRat::tau()];
    delta3_roots()
        .into_iter()
        .filter(|r| dot(r, &axis).is_zero())
        .collect()
}

/// The planar listing `(±1, 0)` and `½(±1, ±τ)` with all permutations,
/// taken literally. It does not form a root system (mixed lengths) and is kept
/// only to document that.
pub fn literal_planar_listing() -> Vec<Vector> {
    let mut out = vec![
        vec![GoldenRat::one(), GoldenRat::zero()],
        vec![GoldenRat::from_int(-1), GoldenRat::zero()],
    ];
    for v in sign_variants(&[rat(1, 2), half_tau()]) {
        out.push(vec![v[1].clone(), v[0].clone()]);
        out.push(v);
    }
    sorted_unique(out)
}

/// The reference Coxeter matrices of H₂, H₃, H₄.
pub fn reference_coxeter_matrix(n: usize) -> Option<Vec<Vec<u32>>> {
    match n {
        2 => Some(vec![vec![1, 5], vec![5, 1]]),
        3 => Some(vec![vec![1, 3, 2], vec![3, 1, 5], vec![2, 5, 1]]),
        4 => Some(vec![
            vec![1, 3, 2, 2],
            vec![3, 1, 3, 2],
            vec![2, 3, 1, 5],
            vec![2, 2, 5, 1],
        ]),
        _ => None,
    }
}

/// Builds Δₙ for n ∈ {2, 3, 4} with simple roots ordered to match the
/// reference Coxeter matrix.
pub fn build_delta(n: usize) -> Result<RootSystem> {
    let roots = match n {
        2 => delta2_roots(),
        3 => delta3_roots(),
        4 => delta4_roots(),
        _ => return Err(QcError::Unsupported(format!("no root system Delta_{n}"))),
    };
    let reference = reference_coxeter_matrix(n).expect("n checked above");
    let rank = linalg::golden_rank(&roots);
    let simple = simple_roots(&roots)?;
    if simple.len() != rank {
        return Err(QcError::Data(format!(
            "found {} simple roots for rank {rank}",
            simple.len()
        )));
    }
    let ordered = order_to_match(&simple, &reference).ok_or_else(|| {
        QcError::Data(format!("simple roots of Delta_{n} do not realise the H{n} diagram"))
    })?;
    Ok(RootSystem {
        name: format!("H{n}"),
        rank,
        roots,
        simple_roots: ordered,
        coxeter_matrix: reference,
    })
}

/// Violations of `±α ∈ Φ` and `r_α(Φ) = Φ`; empty for a root system.
pub fn check_root_axioms(roots: &[Vector]) -> Vec<String> {
    let set: HashSet<&Vector> = roots.iter().collect();
    roots
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, a)| {
            let mut out = Vec::new();
            let neg: Vector = a.iter().map(|x| -x).collect();
            if !set.contains(&neg) {
                out.push(format!("root {i}: negative missing"));
            }
            match Reflection::new(a.clone()) {
                Err(_) => out.push(format!("root {i}: zero vector")),
                Ok(r) => {
                    if let Some(j) = roots.iter().position(|b| !set.contains(&r.reflect(b).expect("uniform dimension"))) {
                        out.push(format!("reflection in root {i} sends root {j} outside the system"));
                    }
                }
            }
            out
        })
        .collect()
}

/// Every reflection preserves the inner product on all pairs of roots.
pub fn check_isometry(roots: &[Vector]) -> bool {
    let n = roots.len();
    let index: HashMap<&Vector, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let gram: Vec<Vec<GoldenRat>> = roots.iter().map(|a| roots.iter().map(|b| dot(a, b)).collect()).collect();
    roots.par_iter().all(|a| {
        let r = Reflection::new(a.clone()).expect("nonzero root");
        let imgs: Vec<Vector> = roots.iter().map(|b| r.reflect(b).unwrap()).collect();
        // images that are roots reuse the Gram matrix; others are computed
        let slot: Vec<Option<usize>> = imgs.iter().map(|v| index.get(v).copied()).collect();
        (0..n).all(|i| {
            (i..n).all(|j| {
                let got = match (slot[i], slot[j]) {
                    (Some(p), Some(q)) => gram[p][q].clone(),
                    _ => dot(&imgs[i], &imgs[j]),
                };
                got == gram[i][j]
            })
        })
    })
}

/// Cartan integrality: `2⟨β|α⟩/⟨α|α⟩ ∈ ℤ` for all roots α, β.
pub fn check_crystallographic(system: &RootSystem) -> bool {
    crystallographic(&system.roots)
}

pub fn crystallographic(roots: &[Vector]) -> bool {
    roots.iter().all(|a| {
        let aa = dot(a, a);
        roots.iter().all(|b| {
            let c = &(&dot(b, a) * &GoldenRat::from_int(2)) / &aa;
            c.is_rational() && c.p.is_integer()
        })
    })
}

fn generic_functional(roots: &[Vector]) -> Result<Vector> {
    let dim = roots.first().map_or(0, Vec::len);
    for seed in 1..50i64 {
        let f: Vector = (0..dim)
            .map(|i| &GoldenRat::from_int(seed.pow(i as u32 + 1) + 7 * i as i64) + &(&GoldenRat::sqrt5() * &rat(1, 1 + i as i64 * seed)))
            .collect();
        if roots.iter().all(|r| !dot(r, &f).is_zero()) {
            return Ok(f);
        }
    }
    Err(QcError::Data("no generic functional found".into()))
}

/// Simple roots for the positive system cut out by a generic functional: α
/// is simple iff r_α permutes the remaining positive roots.
pub fn simple_roots(roots: &[Vector]) -> Result<Vec<Vector>> {
    let f = generic_functional(roots)?;
    let positive: Vec<&Vector> = roots.iter().filter(|r| dot(r, &f).sign() > 0).collect();
    let pos_set: HashSet<&Vector> = positive.iter().copied().collect();
    let mut out = Vec::new();
    for a in &positive {
        let r = Reflection::new((*a).clone())?;
        let ok = positive
            .iter()
            .filter(|b| *b != a)
            .all(|b| pos_set.contains(&r.reflect(b).unwrap()));
        if ok {
            out.push((*a).clone());
        }
    }
    Ok(out)
}

/// Order of `r_a r_b`, searched up to `limit`.
pub fn product_order(a: &Reflection, b: &Reflection, limit: u32) -> Option<u32> {
    let m = linalg::mat_mul(&a.matrix(), &b.matrix());
    let mut p = m.clone();
    for k in 1..=limit {
        if linalg::is_identity(&p) {
            return Some(k);
        }
        p = linalg::mat_mul(&p, &m);
    }
    None
}

fn coxeter_of(simple: &[Vector]) -> Vec<Vec<u32>> {
    let gens: Vec<Reflection> = simple.iter().map(|a| Reflection::new(a.clone()).unwrap()).collect();
    (0..gens.len())
        .map(|i| {
            (0..gens.len())
                .map(|j| product_order(&gens[i], &gens[j], 12).unwrap_or(0))
                .collect()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn order_to_match(simple: &[Vector], reference: &[Vec<u32>]) -> Option<Vec<Vector>> {
    let m = coxeter_of(simple);
    let n = simple.len();
    permutations(n).into_iter().find_map(|p| {
        let ok = (0..n).all(|i| (0..n).all(|j| m[p[i]][p[j]] == reference[i][j]));
        ok.then(|| p.iter().map(|&i| simple[i].clone()).collect())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterReport {
    pub group: String,
    pub relations_checked: usize,
    pub failures: Vec<String>,
    pub group_order: Option<usize>,
}

impl CoxeterReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `(R_i R_j)^{m_ij} = 1` with `m_ij` minimal, for every pair, against
/// the system's reference matrix. With `with_order`, also counts the group
/// by closure.
pub fn verify_coxeter(system: &RootSystem, generators: &[Reflection], with_order: bool) -> CoxeterReport {
    let m = &system.coxeter_matrix;
    let mut failures = Vec::new();
    let mut checked = 0;
    if generators.len() != m.len() {
        failures.push(format!(
            "{} generators for a rank-{} Coxeter matrix",
            generators.len(),
            m.len()
        ));
    }
    let n = generators.len().min(m.len());
    let mats: Vec<Matrix> = generators.iter().map(Reflection::matrix).collect();
    for i in 0..n {
        for j in 0..n {
            checked += 1;
            let prod = linalg::mat_mul(&mats[i], &mats[j]);
            let mut p = prod.clone();
            let mut first = None;
            for k in 1..=m[i][j] {
                if linalg::is_identity(&p) {
                    first = Some(k);
                    break;
                }
                p = linalg::mat_mul(&p, &prod);
            }
            if first != Some(m[i][j]) {
                failures.push(format!(
                    "(R{}R{}) has order {:?}, expected {}",
                    i + 1,
                    j + 1,
                    first,
                    m[i][j]
                ));
            }
        }
    }
    let group_order = with_order.then(|| group_order(&system.roots, generators));
    CoxeterReport {
        group: system.name.clone(),
        relations_checked: checked,
        failures,
        group_order,
    }
}

/// Order of the group generated by `generators`, counted as permutations of
/// the roots (faithful because the roots span the ambient space of the
/// reflections' action on their span).
pub fn group_order(roots: &[Vector], generators: &[Reflection]) -> usize {
    let index: HashMap<&Vector, u16> = roots.iter().enumerate().map(|(i, r)| (r, i as u16)).collect();
    let gens: Vec<Vec<u16>> = generators
        .iter()
        .map(|g| {
            roots
                .iter()
                .map(|r| index[&g.reflect(r).expect("dimension")])
                .collect()
        })
        .collect();
    let id: Vec<u16> = (0..roots.len() as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<u16> = p.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// Δ₃ inside Δ₄ via (x, y, z) ↦ (0, x, y, z).
pub fn embed_3_in_4(v: &[GoldenRat]) -> Vector {
    std::iter::once(GoldenRat::zero()).chain(v.iter().cloned()).collect()
}

/// `true` if every root of `small` (after `embed`) is a root of `big`.
pub fn embeds(small: &[Vector], big: &[Vector], embed: impl Fn(&[GoldenRat]) -> Vector) -> bool {
    let set: HashSet<&Vector> = big.iter().collect();
    small.iter().all(|r| set.contains(&embed(r)))
}

/// Roots written with entries in ℤ[τ] after doubling (all Δₙ entries are
/// halves of golden integers).
pub fn doubled_golden(v: &[GoldenRat]) -> Option<Vec<GoldenInt>> {
    v.iter()
        .map(|x| (x * &GoldenRat::from_int(2)).to_golden_int())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GoldenRat {
        GoldenRat::from_int(n)
    }

    #[test]
    fn reflect_examples() {
        let a = Reflection::new(vec![g(1), g(0)]).unwrap();
        assert_eq!(a.reflect(&[g(1), g(0)]).unwrap(), vec![g(-1), g(0)]);
        assert_eq!(a.reflect(&[g(0), g(3)]).unwrap(), vec![g(0), g(3)]);
        let v = vec![rat(1, 2), half_tau()];
        assert_eq!(a.reflect(&v).unwrap(), vec![rat(-1, 2), half_tau()]);
        assert!(matches!(Reflection::new(vec![g(0), g(0)]), Err(QcError::ZeroAxis)));
        assert!(a.reflect(&[g(1)]).is_err());
    }

    #[test]
    fn sizes_and_axioms() {
        for (n, size) in [(2, 10), (3, 30), (4, 120)] {
            let s = build_delta(n).unwrap();
            assert_eq!(s.roots.len(), size);
            assert_eq!(s.rank, n);
            assert!(check_root_axioms(&s.roots).is_empty());
            assert!(!check_crystallographic(&s));
        }
    }

    #[test]
    fn chain_embeds() {
        let d2 = build_delta(2).unwrap();
        let d3 = build_delta(3).unwrap();
        let d4 = build_delta(4).unwrap();
        assert!(embeds(&d2.roots, &d3.roots, |v| v.to_vec()));
        assert!(embeds(&d3.roots, &d4.roots, embed_3_in_4));
    }

    #[test]
    fn literal_planar_listing_is_not_a_root_system() {
        let l = literal_planar_listing();
        assert!(!check_root_axioms(&l).is_empty());
    }

    #[test]
    fn coxeter_relations_small() {
        for n in [2, 3] {
            let s = build_delta(n).unwrap();
            let r = verify_coxeter(&s, &s.generators(), true);
            assert!(r.passed(), "{:?}", r.failures);
        }
        let s2 = build_delta(2).unwrap();
        assert_eq!(group_order(&s2.roots, &s2.generators()), 10);
        let s3 = build_delta(3).unwrap();
        assert_eq!(group_order(&s3.roots, &s3.generators()), 120);
    }

    #[test]
    fn h4_relations() {
        let s = build_delta(4).unwrap();
        let r = verify_coxeter(&s, &s.generators(), false);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.relations_checked, 16);
    }

    #[test]
    fn b2_is_crystallographic() {
        let roots: Vec<Vector> = vec![
            vec![g(1), g(0)],
            vec![g(-1), g(0)],
            vec![g(0), g(1)],
            vec![g(0), g(-1)],
            vec![g(1), g(1)],
            vec![g(1), g(-1)],
            vec![g(-1), g(1)],
            vec![g(-1), g(-1)],
        ];
        assert!(check_root_axioms(&roots).is_empty());
        assert!(crystallographic(&roots));
    }

    #[test]
    fn reflections_are_isometries() {
        assert!(check_isometry(&build_delta(3).unwrap().roots));
    }
}
