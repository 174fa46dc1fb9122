//! Small exact linear algebra: dense matrices over ℚ(√5), rational rank, and
//! integer lattices in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::golden::GoldenRat;

pub type Vector = Vec<GoldenRat>;
/// Row-major dense matrix.
pub type Matrix = Vec<Vec<GoldenRat>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { GoldenRat::one() } else { GoldenRat::zero() })
                .collect()
        })
        .collect()
}

pub fn dot(u: &[GoldenRat], v: &[GoldenRat]) -> GoldenRat {
    u.iter()
        .zip(v)
        .fold(GoldenRat::zero(), |acc, (a, b)| &acc + &(a * b))
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(GoldenRat::zero(), |acc, (x, brow)| &acc + &(x * &brow[j]))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[GoldenRat]) -> Vector {
    a.iter().map(|row| dot(row, v)).collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[GoldenRat], a: &Matrix) -> Vector {
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| {
            v.iter()
                .zip(a)
                .fold(GoldenRat::zero(), |acc, (x, row)| &acc + &(x * &row[j]))
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_star(a: &Matrix) -> Matrix {
    a.iter().map(|row| row.iter().map(GoldenRat::star).collect()).collect()
}

pub fn is_identity(a: &Matrix) -> bool {
    *a == identity(a.len())
}

/// Gauss-Jordan inverse; `None` for singular or non-square input.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut m: Vec<Vec<GoldenRat>> = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].inverse()?;
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &Matrix) -> GoldenRat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = GoldenRat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return GoldenRat::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].inverse().expect("nonzero pivot");
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    d
}

/// Rank of a list of row vectors over ℚ(√5).
pub fn golden_rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inverse().expect("nonzero pivot");
        for r in rank + 1..m.len() {
            if !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a list of row vectors over ℚ.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A sublattice of ℤⁿ held as a row-style Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntLattice {
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> IntLattice {
        let mut m: Vec<Vec<BigInt>> = gens
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        assert!(m.iter().all(|g| g.len() == dim), "generator length mismatch");
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..dim {
            // Euclid on column c among the remaining rows
            loop {
                let nz: Vec<usize> = (0..m.len()).filter(|&r| !m[r][c].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                let best = *nz.iter().min_by_key(|&&r| m[r][c].abs()).unwrap();
                let pivot_row = m[best].clone();
                for &r in &nz {
                    if r == best {
                        continue;
                    }
                    let q = m[r][c].div_floor(&pivot_row[c]);
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
                m.retain(|row| row.iter().any(|x| !x.is_zero()));
            }
            if let Some(r) = (0..m.len()).find(|&r| !m[r][c].is_zero()) {
                let mut row = m.swap_remove(r);
                if row[c].is_negative() {
                    row.iter_mut().for_each(|x| *x = -&*x);
                }
                rows.push(row);
                pivots.push(c);
            }
        }
        // reduce entries above pivots
        for i in 0..rows.len() {
            let c = pivots[i];
            let pivot_row = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                let q = row[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
        IntLattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Absolute value of the product of pivots (the index in ℤⁿ for full rank).
    pub fn pivot_product(&self) -> BigInt {
        self.rows
            .iter()
            .zip(&self.pivots)
            .fold(BigInt::one(), |acc, (r, &c)| acc * &r[c])
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let (q, rem) = w[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_membership() {
        let l = IntLattice::from_generators(2, &[ints(&[2, 0]), ints(&[1, 1])]);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.pivot_product(), BigInt::from(2));
        assert!(l.contains(&ints(&[3, 1])));
        assert!(!l.contains(&ints(&[1, 0])));
        assert!(l.contains(&ints(&[0, 2])));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntLattice::from_generators(3, &[ints(&[1, 2, 3]), ints(&[0, 3, 1])]);
        let b = IntLattice::from_generators(
            3,
            &[ints(&[1, 5, 4]), ints(&[0, -3, -1]), ints(&[2, 4, 6])],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn inverse_round_trip() {
        let t = GoldenRat::tau();
        let m = vec![
            vec![GoldenRat::one(), t.clone()],
            vec![GoldenRat::zero(), t.clone()],
        ];
        let inv = inverse(&m).unwrap();
        assert!(is_identity(&mat_mul(&m, &inv)));
        assert_eq!(det(&m), t);
    }

    #[test]
    fn ranks() {
        let r = |a: i64| BigRational::from_integer(a.into());
        assert_eq!(rational_rank(&[vec![r(1), r(2)], vec![r(2), r(4)]]), 1);
        assert_eq!(rational_rank(&[vec![r(1), r(2)], vec![r(0), r(4)]]), 2);
        let g = |a: i64| GoldenRat::from_int(a);
        assert_eq!(
            golden_rank(&[vec![g(1), GoldenRat::tau()], vec![GoldenRat::tau(), &GoldenRat::tau() * &GoldenRat::tau()]]),
            1
        );
    }
}
