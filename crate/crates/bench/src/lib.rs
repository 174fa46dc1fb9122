//! Benchmark fixtures shared by the criterion targets.

use quasijordan::algebra::{AlgebraElement, JordanAlgebra};
use quasijordan::scheme::{preset, QcPoint, SchemeSpec};
use quasijordan::verify::desk_radius;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A preset together with its desk-radius batch.
pub struct Fixture {
    pub scheme: SchemeSpec,
    pub points: Vec<QcPoint>,
}

pub fn fixture(name: &str) -> Fixture {
    let scheme = preset(name).expect("known preset");
    let points = scheme.enumerate(&desk_radius(&scheme)).expect("desk enumeration");
    Fixture { scheme, points }
}

/// A reproducible pair of random multi-term elements over the batch.
pub fn element_pair(f: &Fixture, terms: usize) -> (JordanAlgebra, AlgebraElement, AlgebraElement) {
    let alg = JordanAlgebra::new(f.scheme.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = alg.random_element(&f.points, terms, &mut rng);
    let b = alg.random_element(&f.points, terms, &mut rng);
    (alg, a, b)
}
