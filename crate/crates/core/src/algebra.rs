//! The aperiodic Jordan algebra spanned by generators `L_x`, `x ∈ Ξ`, with
//! `L_x ∘ L_y = ½ (L_{x⊢y} + L_{y⊢x})`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use crate::error::{QcError, Result};
use crate::golden::GoldenInt;
use crate::linalg::rational_rank;
use crate::quasiadd::{qadd, qadd_repeated, qadd_repeated_closed};
use crate::scheme::{fmt_key, PointKey, QcPoint, SchemeSpec};

/// A finite formal combination `Σ c_x L_x` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<PointKey, BigRational>,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn generator(x: PointKey) -> AlgebraElement {
        AlgebraElement::from_terms([(x, BigRational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PointKey, BigRational)>) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: PointKey, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<PointKey, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<&PointKey> {
        self.terms.keys().collect()
    }

    pub fn coefficient(&self, k: &[GoldenInt]) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-BigRational::one()))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "L{}", fmt_key(k))?;
            } else {
                write!(f, "{c} L{}", fmt_key(k))?;
            }
        }
        Ok(())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            point: Vec<String>,
            coefficient: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&Term {
                point: k.iter().map(ToString::to_string).collect(),
                coefficient: c.to_string(),
            })?;
        }
        seq.end()
    }
}

/// The Jordan algebra of a scheme. Every product re-certifies that the two
/// quasisums lie in the model set.
pub struct JordanAlgebra {
    pub scheme: SchemeSpec,
    memo: RwLock<HashMap<(PointKey, PointKey), AlgebraElement>>,
}

impl JordanAlgebra {
    pub fn new(scheme: SchemeSpec) -> JordanAlgebra {
        JordanAlgebra {
            scheme,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn generator(&self, x: &[GoldenInt]) -> Result<AlgebraElement> {
        if !self.scheme.contains(x)? {
            return Err(QcError::NotInModelSet(fmt_key(x)));
        }
        Ok(AlgebraElement::generator(x.to_vec()))
    }

    fn certify(&self, x: &[GoldenInt]) -> Result<()> {
        if self.scheme.lattice.contains(x) && self.scheme.window_admits(x) {
            Ok(())
        } else {
            Err(QcError::Closure(format!("{} left the model set of {}", fmt_key(x), self.scheme.name)))
        }
    }

    pub fn product_generators(&self, x: &[GoldenInt], y: &[GoldenInt]) -> Result<AlgebraElement> {
        let key = if x <= y { (x.to_vec(), y.to_vec()) } else { (y.to_vec(), x.to_vec()) };
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let xy = qadd(x, y);
        let yx = qadd(y, x);
        self.certify(&xy)?;
        self.certify(&yx)?;
        let v = AlgebraElement::from_terms([(xy, half()), (yx, half())]);
        self.memo.write().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }

    pub fn product(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                let p = self.product_generators(x, y)?;
                out = out.add(&p.scale(&(cx * cy)));
            }
        }
        Ok(out)
    }

    /// `a∘b = b∘a` and `(a∘b)∘(a∘a) = a∘(b∘(a∘a))`.
    pub fn jordan_identity_check(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<bool> {
        let ab = self.product(a, b)?;
        if ab != self.product(b, a)? {
            return Ok(false);
        }
        let aa = self.product(a, a)?;
        let lhs = self.product(&ab, &aa)?;
        let rhs = self.product(a, &self.product(b, &aa)?)?;
        Ok(lhs == rhs)
    }

    /// `L_x ∘ L_y` is supported on `{x⊢y, y⊢x}` with coefficients ½, ½, or on
    /// `{x}` with coefficient 1 when `x = y`.
    pub fn support_conservation_check(&self, x: &[GoldenInt], y: &[GoldenInt]) -> Result<bool> {
        let p = self.product_generators(x, y)?;
        if x == y {
            return Ok(p == AlgebraElement::generator(x.to_vec()));
        }
        let want = AlgebraElement::from_terms([(qadd(x, y), half()), (qadd(y, x), half())]);
        Ok(p == want && p.terms.len() == 2 && p.terms.values().all(|c| *c == half()))
    }

    /// A random element with `terms` generators from `points` and small
    /// rational coefficients.
    pub fn random_element<R: Rng + ?Sized>(&self, points: &[QcPoint], terms: usize, rng: &mut R) -> AlgebraElement {
        AlgebraElement::from_terms((0..terms).map(|_| {
            let p = &points[rng.gen_range(0..points.len())];
            let c = BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
            (p.coords.clone(), c)
        }))
    }
}

/// `(x⊢y) + (y⊢x) = x + y`.
pub fn sum_conservation_check(x: &[GoldenInt], y: &[GoldenInt]) -> bool {
    let l: PointKey = qadd(x, y).iter().zip(qadd(y, x)).map(|(a, b)| a + &b).collect();
    let r: PointKey = x.iter().zip(y).map(|(a, b)| a + b).collect();
    l == r
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitProbeReport {
    pub scheme: String,
    pub batch: usize,
    pub origin: String,
    pub zero_in_batch: bool,
    /// Batch points `x` with `L_x ∘ L_0 = L_0`.
    pub fixing_zero: Vec<String>,
    /// Products `L_x ∘ L_0` (x ≠ 0) with anything other than two strictly
    /// positive coefficients.
    pub obstruction_failures: usize,
    pub note: &'static str,
}

impl UnitProbeReport {
    pub fn passed(&self) -> bool {
        self.zero_in_batch && self.fixing_zero == [self.origin.clone()] && self.obstruction_failures == 0
    }
}

fn zero_key(n: usize) -> PointKey {
    vec![GoldenInt::zero(); n]
}

/// Over the batch, `L_x ∘ L_0 = L_0` should hold for `x = 0` only. Evidence on
/// the batch, not a proof of non-unitality.
pub fn unit_probe(alg: &JordanAlgebra, points: &[QcPoint]) -> Result<UnitProbeReport> {
    let n = alg.scheme.lattice.rank();
    let zero = zero_key(n);
    let zero_in_batch = points.iter().any(|p| p.coords == zero);
    if !zero_in_batch {
        return Err(QcError::Precondition("the origin is not in the batch".into()));
    }
    let l0 = AlgebraElement::generator(zero.clone());
    let mut fixing = Vec::new();
    let mut obstruction_failures = 0;
    for p in points {
        let prod = alg.product_generators(&p.coords, &zero)?;
        if prod == l0 {
            fixing.push(fmt_key(&p.coords));
        }
        if p.coords != zero && !(prod.terms.len() == 2 && prod.terms.values().all(Signed::is_positive)) {
            obstruction_failures += 1;
        }
    }
    Ok(UnitProbeReport {
        scheme: alg.scheme.name.clone(),
        batch: points.len(),
        origin: fmt_key(&zero),
        zero_in_batch,
        fixing_zero: fixing,
        obstruction_failures,
        note: "evidence on batch",
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub chain: Vec<String>,
    pub distinct: usize,
    pub closed_form_agrees: bool,
    pub certified: bool,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.distinct == self.chain.len() && self.closed_form_agrees && self.certified
    }
}

/// The chain `x⊢y, (x⊢y)⊢y, …` of length `k_max`, checked against
/// `(1+τ)^k (x−y) + y` and for pairwise distinctness.
pub fn subalgebra_growth_probe(alg: &JordanAlgebra, x: &[GoldenInt], y: &[GoldenInt], k_max: u32) -> Result<GrowthReport> {
    if x == y {
        return Err(QcError::Precondition("the growth probe needs x ≠ y".into()));
    }
    let mut chain = Vec::new();
    let mut agrees = true;
    let mut certified = true;
    for k in 1..=k_max {
        let p = qadd_repeated(x, y, k)?;
        agrees &= p == qadd_repeated_closed(x, y, k);
        certified &= alg.scheme.contains(&p)?;
        chain.push(p);
    }
    let mut d = chain.clone();
    d.sort();
    d.dedup();
    Ok(GrowthReport {
        chain: chain.iter().map(|c| fmt_key(c)).collect(),
        distinct: d.len(),
        closed_form_agrees: agrees,
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealProbeReport {
    pub generator: String,
    pub batch: usize,
    pub span_rank: usize,
    pub reachable: usize,
    pub unreachable_example: Option<String>,
    pub proper_on_batch: bool,
    pub note: &'static str,
}

/// Rank statement for the span of `{L_g ∘ L_p : p ∈ batch}`: which batch
/// generators `L_q` lie in that span.
pub fn ideal_probe(alg: &JordanAlgebra, g: &[GoldenInt], points: &[QcPoint]) -> Result<IdealProbeReport> {
    if !points.iter().any(|p| p.coords == g) {
        return Err(QcError::Precondition("the generator must belong to the batch".into()));
    }
    let products: Vec<AlgebraElement> = points
        .iter()
        .map(|p| alg.product_generators(g, &p.coords))
        .collect::<Result<_>>()?;
    let mut keys: Vec<PointKey> = products.iter().flat_map(|e| e.terms.keys().cloned()).collect();
    keys.extend(points.iter().map(|p| p.coords.clone()));
    keys.sort();
    keys.dedup();
    let index: HashMap<&PointKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let row = |e: &AlgebraElement| {
        let mut r = vec![BigRational::zero(); keys.len()];
        for (k, c) in &e.terms {
            r[index[k]] = c.clone();
        }
        r
    };
    let rows: Vec<Vec<BigRational>> = products.iter().map(row).collect();
    let rank = rational_rank(&rows);
    let unreachable: Vec<&QcPoint> = points
        .par_iter()
        .filter(|q| {
            let mut r = rows.clone();
            r.push(row(&AlgebraElement::generator(q.coords.clone())));
            rational_rank(&r) > rank
        })
        .collect();
    Ok(IdealProbeReport {
        generator: fmt_key(g),
        batch: points.len(),
        span_rank: rank,
        reachable: points.len() - unreachable.len(),
        unreachable_example: unreachable.first().map(|q| fmt_key(&q.coords)),
        proper_on_batch: !unreachable.is_empty(),
        note: "evidence on batch",
    })
}

// ---------------------------------------------------------------------------
// integral Fibonacci labels
// ---------------------------------------------------------------------------

/// The palindromic chain point with τ-coefficient `n`: `a + nτ` with
/// `a = round(n(τ−1))`, the unique choice putting the star image in [−½, ½].
pub fn fpal(n: i64) -> GoldenInt {
    // n(τ−1) is irrational for n ≠ 0, so the rounding never ties
    let t = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = (n as f64 * t).round() as i64;
    // exact correction in case of float drift on large n
    let ok = |a: i64| {
        let s = GoldenInt::new(a, n).star().to_rat();
        let h = crate::golden::GoldenRat::ratio(1, 2);
        s <= h && s >= -&h
    };
    if !ok(a) {
        a = [a - 1, a + 1].into_iter().find(|&c| ok(c)).expect("some neighbour lands in the window");
    }
    GoldenInt::new(a, n)
}

/// The label `n` of a palindromic chain point, if `x = fpal(n)`.
pub fn fpal_label(x: &GoldenInt) -> Option<i64> {
    let n: i64 = x.b.clone().try_into().ok()?;
    (fpal(n) == *x).then_some(n)
}

/// `L_n ∘ L_m = ½(L_{n'−m'+2n−m} + L_{m'−n'+2m−n})` with `n' = F(n) − τn`.
pub fn integral_product(n: i64, m: i64) -> (i64, i64) {
    let np: i64 = fpal(n).a.try_into().expect("small label");
    let mp: i64 = fpal(m).a.try_into().expect("small label");
    (np - mp + 2 * n - m, mp - np + 2 * m - n)
}

/// One cell `L_n ∘ L_m` as labels: a single label when the two quasisums
/// coincide, else the unordered pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LabelCell {
    Single(i64),
    Half(i64, i64),
}

impl LabelCell {
    pub fn new(a: i64, b: i64) -> LabelCell {
        if a == b {
            LabelCell::Single(a)
        } else {
            LabelCell::Half(a.min(b), a.max(b))
        }
    }

    pub fn markdown(&self) -> String {
        match self {
            LabelCell::Single(a) => format!("L_{{{a}}}"),
            LabelCell::Half(a, b) => format!("1/2(L_{{{a}}} + L_{{{b}}})"),
        }
    }
}

/// The multiplication table over integral labels, computed through the
/// coordinate-level product and cross-checked against the integral formula.
pub fn fibonacci_label_table(alg: &JordanAlgebra, rows: &[i64], cols: &[i64]) -> Result<Vec<Vec<LabelCell>>> {
    rows.iter()
        .map(|&n| {
            cols.iter()
                .map(|&m| {
                    let x = vec![fpal(n)];
                    let y = vec![fpal(m)];
                    let p = alg.product_generators(&x, &y)?;
                    let labels: Vec<i64> = p
                        .terms
                        .keys()
                        .map(|k| fpal_label(&k[0]).ok_or_else(|| QcError::Closure(format!("{} has no integral label", fmt_key(k)))))
                        .collect::<Result<_>>()?;
                    let cell = match labels.as_slice() {
                        [a] => LabelCell::Single(*a),
                        [a, b] => LabelCell::new(*a, *b),
                        _ => return Err(QcError::Closure("product with unexpected support".into())),
                    };
                    let (a, b) = integral_product(n, m);
                    if LabelCell::new(a, b) != cell {
                        return Err(QcError::Closure(format!("integral formula disagrees at ({n}, {m})")));
                    }
                    Ok(cell)
                })
                .collect()
        })
        .collect()
}

pub fn label_table_markdown(rows: &[i64], cols: &[i64], table: &[Vec<LabelCell>]) -> String {
    let mut s = String::from("| L_n ∘ L_m |");
    for m in cols {
        s += &format!(" L_{{{m}}} |");
    }
    s += "\n|---|";
    s += &"---|".repeat(cols.len());
    s += "\n";
    for (n, row) in rows.iter().zip(table) {
        s += &format!("| L_{{{n}}} |");
        for c in row {
            s += &format!(" {} |", c.markdown());
        }
        s += "\n";
    }
    s
}

// ---------------------------------------------------------------------------
// unitization
// ---------------------------------------------------------------------------

/// `body + scalar · 1` in the algebra with an adjoined unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitizedElement {
    pub body: AlgebraElement,
    pub scalar: BigRational,
}

impl UnitizedElement {
    pub fn unit() -> UnitizedElement {
        UnitizedElement {
            body: AlgebraElement::zero(),
            scalar: BigRational::one(),
        }
    }

    pub fn embed(a: AlgebraElement) -> UnitizedElement {
        UnitizedElement {
            body: a,
            scalar: BigRational::zero(),
        }
    }
}

/// `(x + α) ∗ (y + β) = x∘y + α y + β x + αβ`.
pub fn unitize(alg: &JordanAlgebra, a: &UnitizedElement, b: &UnitizedElement) -> Result<UnitizedElement> {
    let body = alg
        .product(&a.body, &b.body)?
        .add(&b.body.scale(&a.scalar))
        .add(&a.body.scale(&b.scalar));
    Ok(UnitizedElement {
        body,
        scalar: &a.scalar * &b.scalar,
    })
}

pub fn unitized_jordan_check(alg: &JordanAlgebra, a: &UnitizedElement, b: &UnitizedElement) -> Result<bool> {
    let ab = unitize(alg, a, b)?;
    if ab != unitize(alg, b, a)? {
        return Ok(false);
    }
    let aa = unitize(alg, a, a)?;
    Ok(unitize(alg, &ab, &aa)? == unitize(alg, a, &unitize(alg, b, &aa)?)?)
}

// ---------------------------------------------------------------------------
// suite
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default, Serialize)]
pub struct JordanSuiteReport {
    pub scheme: String,
    pub generators: usize,
    pub pairs: usize,
    pub commutativity_failures: usize,
    pub jordan_failures: usize,
    pub idempotency_failures: usize,
    pub sum_conservation_failures: usize,
    pub support_conservation_failures: usize,
    pub random_pairs: usize,
    pub random_failures: usize,
    pub errors: Vec<String>,
}

impl JordanSuiteReport {
    pub fn passed(&self) -> bool {
        self.commutativity_failures
            + self.jordan_failures
            + self.idempotency_failures
            + self.sum_conservation_failures
            + self.support_conservation_failures
            + self.random_failures
            == 0
            && self.errors.is_empty()
    }
}

/// Exhaustive generator-pair checks plus `random_pairs` random multi-term
/// pairs with `terms` generators each.
pub fn jordan_suite(alg: &JordanAlgebra, points: &[QcPoint], random_pairs: usize, terms: usize, seed: u64) -> JordanSuiteReport {
    use rand::SeedableRng;
    let mut rep = JordanSuiteReport {
        scheme: alg.scheme.name.clone(),
        generators: points.len(),
        pairs: points.len() * points.len(),
        random_pairs,
        ..Default::default()
    };
    let grid: Vec<[usize; 5]> = points
        .par_iter()
        .flat_map_iter(|p| {
            points.iter().map(move |q| {
                let x = &p.coords;
                let y = &q.coords;
                let run = || -> Result<[usize; 5]> {
                    let gx = AlgebraElement::generator(x.clone());
                    let gy = AlgebraElement::generator(y.clone());
                    let comm = alg.product(&gx, &gy)? != alg.product(&gy, &gx)?;
                    let jordan = !alg.jordan_identity_check(&gx, &gy)?;
                    let idem = x == y && alg.product(&gx, &gx)? != gx;
                    let sum = !sum_conservation_check(x, y);
                    let supp = !alg.support_conservation_check(x, y)?;
                    Ok([comm, jordan, idem, sum, supp].map(usize::from))
                };
                run().unwrap_or([1, 1, 1, 1, 1])
            })
        })
        .collect();
    for g in grid {
        rep.commutativity_failures += g[0];
        rep.jordan_failures += g[1];
        rep.idempotency_failures += g[2];
        rep.sum_conservation_failures += g[3];
        rep.support_conservation_failures += g[4];
    }
    if !points.is_empty() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(AlgebraElement, AlgebraElement)> = (0..random_pairs)
            .map(|_| (alg.random_element(points, terms, &mut rng), alg.random_element(points, terms, &mut rng)))
            .collect();
        let results: Vec<Result<bool>> = pairs.par_iter().map(|(a, b)| alg.jordan_identity_check(a, b)).collect();
        for r in results {
            match r {
                Ok(true) => {}
                Ok(false) => rep.random_failures += 1,
                Err(e) => rep.errors.push(e.to_string()),
            }
        }
    }
    rep
}
