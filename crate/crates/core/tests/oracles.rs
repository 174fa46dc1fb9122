use quasijordan::algebra::{fpal, integral_product, JordanAlgebra};
use quasijordan::icosian::unit_icosians;
use quasijordan::roots::build_delta;
use quasijordan::scheme::{self, preset};
use quasijordan::verify::sign_200_bit;
use quasijordan::{GoldenInt, GoldenRat};

#[test]
fn preset_counts_at_desk_radii() {
    let cases = [("fibonacci-palindromic", 9, 1, 9), ("penrose", 3, 1, 26), ("z6", 2, 1, 99), ("z6", 3, 2, 37), ("z6-icosian", 2, 1, 267)];
    for (name, n, d, want) in cases {
        let s = preset(name).unwrap();
        assert_eq!(s.enumerate(&GoldenRat::ratio(n, d)).unwrap().len(), want, "{name} at {n}/{d}");
    }
}

#[test]
fn palindromic_labels() {
    let want = [(-4, -2), (-3, -2), (-2, -1), (-1, -1), (0, 0), (1, 1), (2, 1), (3, 2), (4, 2)];
    for (n, a) in want {
        assert_eq!(fpal(n), GoldenInt::new(a, n));
    }
}

#[test]
fn integral_product_examples() {
    // L_1 ∘ L_2 = ½(L_0 + L_3), L_{-1} ∘ L_1 = ½(L_{-5} + L_5)
    assert_eq!(integral_product(1, 2), (0, 3));
    let (a, b) = integral_product(-1, 1);
    assert_eq!((a.min(b), a.max(b)), (-5, 5));
    let alg = JordanAlgebra::new(scheme::fibonacci_palindromic());
    let p = alg.product_generators(&[fpal(1)], &[fpal(2)]).unwrap();
    assert_eq!(p.terms().len(), 2);
    assert!(p.terms().contains_key(&vec![fpal(0)]) && p.terms().contains_key(&vec![fpal(3)]));
}

#[test]
fn group_and_root_sizes() {
    assert_eq!(unit_icosians().len(), 120);
    for (n, size) in [(2, 10), (3, 30), (4, 120)] {
        assert_eq!(build_delta(n).unwrap().roots.len(), size);
    }
    assert_eq!(scheme::elser_sloane_vertices().unwrap().len(), 720);
}

#[test]
fn sign_oracle() {
    assert_eq!(sign_200_bit(&GoldenRat::from_parts(-9, 4, 1, 1)), Some(-1));
    assert_eq!(sign_200_bit(&GoldenRat::from_parts(-2, 1, 1, 1)), Some(1));
    assert_eq!(sign_200_bit(&GoldenRat::zero()), Some(0));
}
