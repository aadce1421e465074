mod common;

use common::*;
use fockalg::fock::{basis, falling_factorial, Direction, FockVector, OperatorExpr};
use fockalg::linalg::charpoly;
use fockalg::qheis::{self, q_reorder, Embedding, QWeylElement};
use fockalg::weyl::{Letter, ModeSystem, WeylElement, WeylMonomial};
use fockalg::{Rational, Scalar};
use num_traits::{One, Zero};

fn word_element(modes: ModeSystem, word: &[Letter]) -> WeylElement {
    word.iter().fold(WeylElement::one(modes), |acc, l| {
        let x = match *l {
            Letter::B(i) => WeylElement::b(modes, i),
            Letter::A(i) => WeylElement::a(modes, i),
            Letter::Theta(j) => WeylElement::theta(modes, j),
            Letter::DTheta(j) => WeylElement::dtheta(modes, j),
        }
        .unwrap();
        acc.multiply(&x).unwrap()
    })
}

#[test]
fn bosonic_products_match_single_swaps() {
    let modes = ModeSystem::bosonic(1);
    for k1 in 0..=4 {
        for m1 in 0..=4 {
            for k2 in 0..=4 {
                for m2 in 0..=4 {
                    let x = WeylElement::from_term(modes, mono(&[k1], &[m1], 0, 0), Scalar::one());
                    let y = WeylElement::from_term(modes, mono(&[k2], &[m2], 0, 0), Scalar::one());
                    let mut w = boson_word(0, k1, m1);
                    w.extend(boson_word(0, k2, m2));
                    assert_eq!(x.multiply(&y).unwrap(), rewrite(modes, w), "b^{k1}a^{m1} b^{k2}a^{m2}");
                }
            }
        }
    }
}

fn mono(b: &[u32], a: &[u32], theta: u32, dtheta: u32) -> WeylMonomial {
    WeylMonomial { b: b.to_vec(), a: a.to_vec(), theta, dtheta }
}

#[test]
fn two_mode_products_match_single_swaps() {
    let modes = ModeSystem::bosonic(2);
    for (x, y) in [
        (mono(&[1, 2], &[2, 0], 0, 0), mono(&[0, 1], &[1, 2], 0, 0)),
        (mono(&[0, 0], &[3, 1], 0, 0), mono(&[2, 2], &[0, 0], 0, 0)),
        (mono(&[1, 1], &[1, 1], 0, 0), mono(&[1, 1], &[1, 1], 0, 0)),
    ] {
        let mut w = x.letters();
        w.extend(y.letters());
        let px = WeylElement::from_term(modes, x, Scalar::one());
        let py = WeylElement::from_term(modes, y, Scalar::one());
        assert_eq!(px.multiply(&py).unwrap(), rewrite(modes, w));
    }
}

#[test]
fn fermionic_patterns_match_single_swaps() {
    for r in 1..=2usize {
        let modes = ModeSystem::new(0, r);
        let n = 1u32 << r;
        for t1 in 0..n {
            for d1 in 0..n {
                for t2 in 0..n {
                    for d2 in 0..n {
                        let x = WeylElement::from_term(modes, mono(&[], &[], t1, d1), Scalar::one());
                        let y = WeylElement::from_term(modes, mono(&[], &[], t2, d2), Scalar::one());
                        let mut w = fermion_word(t1, d1);
                        w.extend(fermion_word(t2, d2));
                        assert_eq!(x.multiply(&y).unwrap(), rewrite(modes, w));
                    }
                }
            }
        }
    }
}

#[test]
fn mixed_words_match_single_swaps() {
    let modes = ModeSystem::new(2, 2);
    let words = [
        vec![Letter::A(0), Letter::DTheta(1), Letter::B(0), Letter::Theta(1), Letter::Theta(0)],
        vec![Letter::DTheta(0), Letter::A(1), Letter::Theta(0), Letter::B(1), Letter::B(1), Letter::DTheta(1)],
        vec![Letter::Theta(1), Letter::A(0), Letter::A(0), Letter::B(0), Letter::Theta(0), Letter::B(0)],
    ];
    for w in words {
        assert_eq!(word_element(modes, &w), rewrite(modes, w.clone()), "{w:?}");
    }
}

#[test]
fn q_reordering_matches_q_swaps() {
    for q in [r(2, 1), r(1, 2), r(3, 5)] {
        for m in 0..=4u32 {
            for k in 0..=4u32 {
                let mut word = vec![true; m as usize];
                word.extend(vec![false; k as usize]);
                let oracle = q_rewrite(&q, word);
                let got: std::collections::BTreeMap<(u32, u32), Rational> = q_reorder(&q, m, k)
                    .into_iter()
                    .filter(|(c, _, _)| !c.is_zero())
                    .map(|(c, k2, m2)| ((k2, m2), c))
                    .collect();
                assert_eq!(got, oracle, "a^{m} b^{k} at q = {q}");
            }
        }
    }
}

#[test]
fn q_products_match_q_swaps() {
    let q = r(3, 5);
    let x = QWeylElement::monomial(q.clone(), 2, 3, Scalar::one()).unwrap();
    let y = QWeylElement::monomial(q.clone(), 1, 2, Scalar::one()).unwrap();
    let got = x.q_multiply(&y).unwrap();
    let word = [vec![false; 2], vec![true; 3], vec![false; 1], vec![true; 2]].concat();
    for ((k, m), c) in q_rewrite(&q, word) {
        assert_eq!(got.coefficient(k, m), Scalar::from_rational(c));
    }
}

#[test]
fn fock_action_matches_letter_by_letter() {
    let modes = ModeSystem::new(2, 2);
    let monos = [
        mono(&[1, 0], &[0, 1], 0b01, 0b10),
        mono(&[0, 2], &[1, 0], 0b10, 0),
        mono(&[0, 0], &[2, 0], 0, 0b11),
        mono(&[1, 1], &[0, 0], 0b11, 0),
    ];
    for m in monos {
        let op = OperatorExpr::Poly(WeylElement::from_term(modes, m.clone(), Scalar::one()));
        for key in basis(modes, 4) {
            let got = op.apply(&FockVector::basis_state(modes, key.clone())).unwrap();
            assert_eq!(got, apply_word(modes, &m.letters(), &key), "{m:?} on {key}");
        }
    }
}

#[test]
fn charpoly_matches_cofactor_determinant() {
    let rep = rep("sl2_translated", &["n=3", "delta=1/2"]);
    let inv = fockalg::verify::invariant_subspace(&rep).unwrap().unwrap().unwrap();
    for m in &inv.matrices {
        let c = charpoly(m);
        for t in [-2i64, 0, 1, 3, 7] {
            let t = Scalar::from_int(t);
            let shifted: Vec<Vec<Scalar>> = m
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, v)| if i == j { &t - v } else { -v.clone() }).collect())
                .collect();
            assert_eq!(eval_poly(&c, &t), det(&shifted));
        }
    }
}

#[test]
fn falling_factorials_are_products() {
    // p_k = b (b - d) ... (b - (k-1) d) expanded by hand
    let d = r(-1, 3);
    let modes = ModeSystem::bosonic(1);
    for k in 0..6u32 {
        let mut poly = WeylElement::one(modes);
        for j in 0..k {
            let shift = WeylElement::constant(modes, Scalar::from_rational(-(&d * Rational::from_integer(j.into()))));
            poly = poly.multiply(&(&WeylElement::b(modes, 0).unwrap() + &shift)).unwrap();
        }
        let monomial = OperatorExpr::Poly(poly).apply(&FockVector::vacuum(modes)).unwrap();
        let falling = falling_factorial(&d, &monomial, 0, Direction::Forward).unwrap();
        assert_eq!(falling, FockVector::state(modes, &[k], &[]).unwrap());
        assert_eq!(falling_factorial(&d, &falling, 0, Direction::Inverse).unwrap(), monomial);
    }
}

#[test]
fn jackson_matches_direct_quotient() {
    let q = r(3, 5);
    let f: Vec<Scalar> = [2i64, -1, 0, 4, 1].iter().map(|&c| Scalar::from_int(c)).collect();
    // (f(qx) - f(x)) / (x (q - 1)) computed as a polynomial quotient
    let mut num: Vec<Scalar> = Vec::new();
    let mut qk = Rational::one();
    for c in &f {
        num.push(c * &Scalar::from_rational(&qk - Rational::one()));
        qk *= &q;
    }
    assert!(num[0].is_zero());
    let den = Scalar::from_rational(&q - Rational::one());
    let want: Vec<Scalar> = num[1..].iter().map(|c| c.checked_div(&den).unwrap()).collect();
    assert_eq!(qheis::jackson_apply(&q, &f).unwrap(), want);
}

#[test]
fn spectral_pair_is_q_heisenberg_through_degree_8() {
    for q in [r(2, 1), r(1, 2), r(3, 5)] {
        for variant in [Embedding::Spectral, Embedding::Transformed(r(1, 2)), Embedding::Transformed(r(-1, 3))] {
            let pair = qheis::embed(&q, &variant).unwrap();
            let modes = ModeSystem::bosonic(1);
            for k in 0..=8u32 {
                let v = FockVector::state(modes, &[k], &[]).unwrap();
                let ab = pair.a.apply(&pair.b.apply(&v).unwrap()).unwrap();
                let ba = pair.b.apply(&pair.a.apply(&v).unwrap()).unwrap();
                let lhs = ab.checked_sub(&ba.scale(&Scalar::from_rational(q.clone()))).unwrap();
                assert_eq!(lhs, v, "q = {q}, {variant:?}, k = {k}");
            }
        }
    }
}

#[test]
fn sl2_casimir_by_hand() {
    // 1/2 {J+, J-} - J0^2 on the vacuum, from J- |0> = 0 and J0 |0> = -n/2:
    // J- J+ |0> = -n J- b |0> = -n |0>, so C = -n/2 - n^2/4
    for n in 0..=5i64 {
        let rep = rep("sl2_standard", &[&format!("n={n}")]);
        let want = Scalar::frac(-(2 * n + n * n), 4);
        assert_eq!(rep.casimir.unwrap().expected, want);
    }
}

#[test]
fn dimension_counts() {
    assert_eq!(count_weighted(&[1, 1], 3), 10);
    assert_eq!(count_weighted(&[1, 2], 4), 9);
    assert_eq!(binomial(5, 2), 10);
}
