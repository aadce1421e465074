mod common;

use common::*;
use fockalg::fock::{basis, falling_factorial, safe_degree, to_matrix, Direction, FockVector, OperatorExpr};
use fockalg::linalg::matmul;
use fockalg::qheis::{self, Embedding, QWeylElement};
use fockalg::realize::{preserves_degree, RealOp, Realization, SpinorPoly};
use fockalg::verify::{casimir_check, Evaluator};
use fockalg::weyl::{ModeSystem, Parity, WeylElement, WeylMonomial};
use fockalg::{Rational, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

const MODES: ModeSystem = ModeSystem { bosons: 2, fermions: 1 };

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| Scalar::new(r(a, b), r(c, d)))
}

fn term() -> impl Strategy<Value = (WeylMonomial, Scalar)> {
    (prop::collection::vec(0u32..=1, 2), prop::collection::vec(0u32..=1, 2), 0u32..2, 0u32..2, -3i64..=3)
        .prop_map(|(b, a, theta, dtheta, c)| (WeylMonomial { b, a, theta, dtheta }, Scalar::from_int(c)))
}

fn element() -> impl Strategy<Value = WeylElement> {
    prop::collection::vec(term(), 1..4).prop_map(|terms| {
        let mut w = WeylElement::zero(MODES);
        for (m, c) in terms {
            w.add_term(m, c);
        }
        w
    })
}

fn homogeneous(w: &WeylElement, odd: bool) -> WeylElement {
    let mut out = WeylElement::zero(w.modes());
    for (m, c) in w.terms() {
        if (m.fermionic_degree() % 2 == 1) == odd {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

fn koszul(x: &WeylElement, y: &WeylElement) -> Scalar {
    if x.parity() == Parity::Odd && y.parity() == Parity::Odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn associativity(x in element(), y in element(), z in element()) {
        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let rr = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
    }

    #[test]
    fn jacobi_on_even_elements(x in element(), y in element(), z in element()) {
        let (x, y, z) = (homogeneous(&x, false), homogeneous(&y, false), homogeneous(&z, false));
        let c = |p: &WeylElement, q: &WeylElement| p.commutator(q).unwrap();
        let total = &(&c(&c(&x, &y), &z) + &c(&c(&y, &z), &x)) + &c(&c(&z, &x), &y);
        prop_assert!(total.is_zero());
    }

    #[test]
    fn super_jacobi(x in element(), y in element(), z in element(), px: bool, py: bool, pz: bool) {
        let (x, y, z) = (homogeneous(&x, px), homogeneous(&y, py), homogeneous(&z, pz));
        let b = |p: &WeylElement, q: &WeylElement| p.super_bracket(q).unwrap();
        let total = &(&b(&x, &b(&y, &z)).scale(&koszul(&x, &z)) + &b(&y, &b(&z, &x)).scale(&koszul(&y, &x)))
            + &b(&z, &b(&x, &y)).scale(&koszul(&z, &y));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn fock_action_is_multiplicative(x in element(), y in element()) {
        let xy = OperatorExpr::Poly(x.multiply(&y).unwrap());
        let (px, py) = (OperatorExpr::Poly(x), OperatorExpr::Poly(y));
        for key in basis(MODES, 4) {
            let v = FockVector::basis_state(MODES, key);
            prop_assert_eq!(xy.apply(&v).unwrap(), px.apply(&py.apply(&v).unwrap()).unwrap());
        }
    }

    #[test]
    fn exp_a_inverse(g in -4i64..=4, d in 1i64..=3) {
        let gamma = Scalar::frac(g, d);
        let modes = ModeSystem::bosonic(1);
        let prod = OperatorExpr::product(modes, vec![
            OperatorExpr::exp_a(modes, 0, gamma.clone()).unwrap(),
            OperatorExpr::exp_a(modes, 0, -gamma).unwrap(),
        ]).unwrap();
        for k in 0..=8 {
            let v = FockVector::state(modes, &[k], &[]).unwrap();
            prop_assert_eq!(prod.apply(&v).unwrap(), v);
        }
    }

    #[test]
    fn q_spectral_scales_falling_factorials(qi in prop::sample::select(vec![(2i64, 1i64), (1, 2), (3, 5)]), d in prop::sample::select(vec![(1i64, 1i64), (1, 2), (-1, 3)])) {
        let (q, delta) = (r(qi.0, qi.1), r(d.0, d.1));
        let modes = ModeSystem::bosonic(1);
        let op = OperatorExpr::q_spectral(modes, 0, q.clone(), delta.clone()).unwrap();
        for k in 0..=6u32 {
            let pk = falling_factorial(&delta, &FockVector::state(modes, &[k], &[]).unwrap(), 0, Direction::Inverse).unwrap();
            let want = pk.scale(&Scalar::from_rational(fockalg::scalar::rational_pow(&q, k as i64).unwrap()));
            prop_assert_eq!(op.apply(&pk).unwrap(), want);
        }
    }

    #[test]
    fn matrix_of_product(x in element(), y in element()) {
        let cutoff = 5;
        let xy = OperatorExpr::Poly(x.multiply(&y).unwrap());
        let (mx, my, mxy) = (
            to_matrix(&OperatorExpr::Poly(x.clone()), cutoff).unwrap(),
            to_matrix(&OperatorExpr::Poly(y.clone()), cutoff).unwrap(),
            to_matrix(&xy, cutoff).unwrap(),
        );
        let prod = matmul(&mx.entries, &my.entries);
        let raise = x.max_raise().unwrap_or(0).max(0) + y.max_raise().unwrap_or(0).max(0);
        let top = safe_degree(cutoff, Some(raise));
        for (j, key) in mxy.basis.iter().enumerate() {
            if (key.degree() as i64) > top {
                continue;
            }
            for (row, want) in mxy.entries.iter().zip(&prod) {
                prop_assert_eq!(&row[j], &want[j]);
            }
        }
    }

    #[test]
    fn q_multiply_associative(terms in prop::collection::vec((0u32..=2, 0u32..=2, -3i64..=3), 3..=9)) {
        let q = r(3, 5);
        let el = |ts: &[(u32, u32, i64)]| {
            let mut w = QWeylElement::zero(q.clone()).unwrap();
            for &(k, m, c) in ts {
                w.add_term(k, m, Scalar::from_int(c));
            }
            w
        };
        let (x, y, z) = (el(&terms[..1]), el(&terms[1..2]), el(&terms[2..]));
        let l = x.q_multiply(&y).unwrap().q_multiply(&z).unwrap();
        let rr = x.q_multiply(&y.q_multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
    }

    #[test]
    fn casimir_is_invariant_under_rescaling(n in 0i64..=4, cn in prop::sample::select(vec![-3i64, -1, 2, 5]), cd in 1i64..=4) {
        let c = Scalar::frac(cn, cd);
        let mut rep = rep("sl2_standard", &[&format!("n={n}")]);
        for g in &mut rep.generators {
            let f = match g.name.as_str() {
                "J+" => c.clone(),
                "J-" => c.inverse().unwrap(),
                _ => continue,
            };
            g.op = g.op.clone().scale(f);
        }
        let mut ev = Evaluator::new(&rep);
        let check = casimir_check(&rep, &mut ev, rep.default_cutoff()).unwrap().unwrap();
        prop_assert!(check.passed(), "{:?}", check.witness);
    }

    #[test]
    fn shift_is_taylor_series(coeffs in prop::collection::vec(-4i64..=4, 1..=9), dn in -3i64..=3, dd in 1i64..=3) {
        let d = r(dn, dd);
        let mut f = SpinorPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            f.add_term(vec![k as u32], 0, Scalar::from_int(*c));
        }
        // sum_j d^j D^j / j!
        let mut series = SpinorPoly::zero();
        let mut deriv = f.clone();
        let mut factor = Rational::one();
        for j in 0..=coeffs.len() {
            let f = Scalar::from_rational(factor.clone());
            for ((e, s), c) in deriv.terms() {
                series.add_term(e.clone(), *s, c * &f);
            }
            deriv = RealOp::Partial(0).apply(&deriv).unwrap();
            factor = factor * &d / Rational::from_integer((j as i64 + 1).into());
        }
        prop_assert_eq!(RealOp::Shift(0, d.clone()).apply(&f).unwrap(), series);

        // x (1 - d D-) f = x f(x - d), and D- is D+ at -d
        if !d.is_zero() {
            let lhs = RealOp::translated_x(0, &d).apply(&f).unwrap();
            let rhs = RealOp::Product(vec![RealOp::Mult(0), RealOp::Shift(0, -d.clone())]).apply(&f).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(RealOp::DMinus(0, d.clone()).apply(&f).unwrap(), RealOp::DPlus(0, -d).apply(&f).unwrap());
        }
    }

    #[test]
    fn every_family_builds(n in 0i64..=5, d in prop::sample::select(vec!["1", "1/2", "-1/3"]), q in prop::sample::select(vec!["2", "1/2", "3/5"])) {
        let n = format!("n={n}");
        let delta = format!("delta={d}");
        let cases: Vec<(&str, Vec<String>)> = vec![
            ("sl2_standard", vec![n.clone()]),
            ("sl2_translated", vec![n.clone(), delta.clone()]),
            ("sl2_oscillator", vec![n.clone()]),
            ("sl2_metaplectic", vec![delta.clone()]),
            ("sl2_clifford", vec![]),
            ("sl2_vector_field", vec![n.clone()]),
            ("sl3_fock", vec![n.clone()]),
            ("sl3_translated", vec![n.clone(), format!("delta1={d}"), format!("delta2={d}")]),
            ("sl3_seven", vec![n.clone(), "m=1".into()]),
            ("gl2_semidirect", vec![n.clone(), "r=2".into(), delta.clone()]),
            ("glk", vec![n.clone(), "k=3".into(), delta.clone()]),
            ("osp22", vec![n.clone()]),
            ("osp22_translated", vec![n.clone(), delta.clone()]),
            ("osp22_metaplectic", vec![delta.clone()]),
            ("gl_super", vec![n.clone(), "k=2".into(), "r=1".into(), delta.clone()]),
            ("sl2q", vec![n.replace('n', "alpha"), format!("q={q}"), delta.clone()]),
        ];
        for (id, ps) in cases {
            let built = rep(id, &ps.iter().map(String::as_str).collect::<Vec<_>>());
            for g in &built.generators {
                prop_assert_eq!(g.op.modes(), built.modes);
            }
        }
    }
}

#[test]
fn vector_field_keeps_degrees() {
    for n in 0..=3 {
        let rep = rep("sl2_vector_field", &[&format!("n={n}")]);
        assert!(preserves_degree(&rep, Realization::Differential, 4).unwrap());
    }
}

#[test]
fn jackson_equals_spectral_matrices() {
    for q in [r(2, 1), r(1, 2), r(3, 5)] {
        let spectral = qheis::embed(&q, &Embedding::Spectral).unwrap();
        let m = to_matrix(&spectral.a, 8).unwrap();
        for (j, key) in m.basis.iter().enumerate() {
            let img =
                RealOp::Jackson(0, q.clone()).apply(&SpinorPoly::monomial(key.b.clone(), 0, Scalar::one())).unwrap();
            for (i, row_key) in m.basis.iter().enumerate() {
                let want = img.terms().find(|((e, _), _)| *e == row_key.b).map(|(_, c)| c.clone()).unwrap_or_default();
                assert_eq!(m.entries[i][j], want);
            }
        }
    }
}

#[test]
fn sl2q_invariant_spaces_for_both_embeddings() {
    for alpha in 0..=4 {
        for extra in [None, Some("delta=1/2")] {
            let a = format!("alpha={alpha}");
            let mut ps = vec![a.as_str(), "q=3/5"];
            ps.extend(extra);
            let rep = rep("sl2q", &ps);
            let inv = fockalg::verify::invariant_subspace(&rep).unwrap().unwrap().unwrap();
            assert_eq!(inv.dim(), alpha as usize + 1);
        }
    }
}

#[test]
fn witnesses_replay() {
    let mut rep = rep("sl2_standard", &["n=2"]);
    let jp = rep.generators[0].poly.clone().unwrap().perturb_term(0, &Scalar::one()).unwrap();
    rep.generators[0].op = OperatorExpr::Poly(jp);
    let report = fockalg::verify::verify(&rep, None).unwrap();
    let failed = report.checks.iter().find(|c| !c.passed()).expect("perturbation must be caught");
    let w = failed.witness.as_ref().unwrap();
    // recompute the relation on the reported state
    let rel = rep.relations.iter().find(|r| failed.name.ends_with(&r.label)).expect("relation check");
    let key = basis(rep.modes, 8).into_iter().find(|k| k.to_string() == w["state"]).unwrap();
    let mut ev = Evaluator::new(&rep);
    let v = FockVector::basis_state(rep.modes, key);
    let (l, rr) = (ev.apply_poly(&rel.lhs, &v).unwrap(), ev.apply_poly(&rel.rhs, &v).unwrap());
    assert_ne!(l, rr);
    assert_eq!(l.to_json(), w["lhs"]);
}
