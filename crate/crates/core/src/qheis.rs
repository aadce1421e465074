//! The q-deformed Heisenberg algebra `a b - q b a = 1` (single mode).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::OperatorExpr;
use crate::scalar::{format_rational, rational_pow, Rational, Scalar};
use crate::weyl::{ModeSystem, WeylElement};

fn check_q(q: &Rational) -> Result<()> {
    if q.is_one() {
        return Err(Error::QEqualsOne);
    }
    if q.is_zero() {
        return Err(Error::BadParam { name: "q".into(), reason: "must be nonzero".into() });
    }
    Ok(())
}

/// `{alpha} = (1 - q^alpha)/(1 - q)`.
pub fn q_number(alpha: i64, q: &Rational) -> Result<Rational> {
    check_q(q)?;
    let one = Rational::one();
    Ok((&one - rational_pow(q, alpha)?) / (&one - q))
}

/// `{alpha}{alpha+1}/{2 alpha + 2}`.
pub fn q_alpha_hat(alpha: i64, q: &Rational) -> Result<Rational> {
    let den = q_number(2 * alpha + 2, q)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(q_number(alpha, q)? * q_number(alpha + 1, q)? / den)
}

/// `{k} = 1 + q + ... + q^(k-1)`; valid at `q = 1` too.
fn q_int(k: u32, q: &Rational) -> Rational {
    let mut s = Rational::zero();
    let mut p = Rational::one();
    for _ in 0..k {
        s += &p;
        p *= q;
    }
    s
}

fn q_factorial(k: u32, q: &Rational) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| acc * q_int(j, q))
}

fn q_binomial(n: u32, k: u32, q: &Rational) -> Rational {
    // q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    let mut row = vec![Rational::one()];
    for i in 1..=n {
        let mut next = vec![Rational::one(); i as usize + 1];
        for j in 1..i as usize {
            next[j] = &row[j - 1] + rational_pow(q, j as i64).expect("q nonzero") * &row[j];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// `a^m b^k` in q-normal order, as `(coeff, k', m')` for `b^k' a^m'`.
/// At `q = 1` this is the ordinary bosonic reordering.
pub fn q_reorder(q: &Rational, m: u32, k: u32) -> Vec<(Rational, u32, u32)> {
    (0..=m.min(k))
        .map(|j| {
            let c = rational_pow(q, ((m - j) * (k - j)) as i64).expect("q nonzero")
                * q_binomial(m, j, q)
                * q_binomial(k, j, q)
                * q_factorial(j, q);
            (c, k - j, m - j)
        })
        .collect()
}

/// Element of the q-deformed Heisenberg algebra in the basis `b^k a^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QWeylElement {
    q: Rational,
    /// `(k, m)` -> coefficient of `b^k a^m`.
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl QWeylElement {
    pub fn zero(q: Rational) -> Result<Self> {
        check_q(&q)?;
        Ok(QWeylElement { q, terms: BTreeMap::new() })
    }

    pub fn monomial(q: Rational, k: u32, m: u32, c: Scalar) -> Result<Self> {
        let mut x = QWeylElement::zero(q)?;
        x.add_term(k, m, c);
        Ok(x)
    }

    pub fn constant(q: Rational, c: Scalar) -> Result<Self> {
        QWeylElement::monomial(q, 0, 0, c)
    }

    pub fn a(q: Rational) -> Result<Self> {
        QWeylElement::monomial(q, 0, 1, Scalar::one())
    }

    pub fn b(q: Rational) -> Result<Self> {
        QWeylElement::monomial(q, 1, 0, Scalar::one())
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: u32, m: u32) -> Scalar {
        self.terms.get(&(k, m)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: u32, m: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((k, m)).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(k, m));
        }
    }

    fn check_q_same(&self, other: &QWeylElement) -> Result<()> {
        if self.q != other.q {
            return Err(Error::QMismatch(format_rational(&self.q), format_rational(&other.q)));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = QWeylElement { q: self.q.clone(), terms: BTreeMap::new() };
        for (&(k, m), v) in &self.terms {
            out.add_term(k, m, v * c);
        }
        out
    }

    pub fn checked_add(&self, other: &QWeylElement) -> Result<Self> {
        self.check_q_same(other)?;
        let mut out = self.clone();
        for (&(k, m), v) in &other.terms {
            out.add_term(k, m, v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &QWeylElement) -> Result<Self> {
        self.checked_add(&other.scale(&-Scalar::one()))
    }

    /// q-normal-ordered product.
    pub fn q_multiply(&self, other: &QWeylElement) -> Result<Self> {
        self.check_q_same(other)?;
        let mut out = QWeylElement { q: self.q.clone(), terms: BTreeMap::new() };
        for (&(k1, m1), c1) in &self.terms {
            for (&(k2, m2), c2) in &other.terms {
                let c = c1 * c2;
                for (r, k, m) in q_reorder(&self.q, m1, k2) {
                    out.add_term(k1 + k, m + m2, &c * &Scalar::from_rational(r));
                }
            }
        }
        Ok(out)
    }

    /// Operator obtained by sending `(a, b)` to the given pair.
    pub fn to_operator(&self, pair: &QPair) -> Result<OperatorExpr> {
        let modes = pair.a.modes();
        let mut items = Vec::new();
        for (&(k, m), c) in &self.terms {
            let mut factors = vec![pair.b.clone(); k as usize];
            factors.extend(std::iter::repeat_n(pair.a.clone(), m as usize));
            items.push(OperatorExpr::product(modes, factors)?.scale(c.clone()));
        }
        OperatorExpr::sum(modes, items)
    }
}

impl fmt::Display for QWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(k, m), c)| {
                let mut s = c.to_string();
                for (sym, e) in [("b~", k), ("a~", m)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!(" {sym}")),
                        _ => s.push_str(&format!(" {sym}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Jackson derivative `(f(qx) - f(x)) / (x (q - 1))` on coefficient lists.
pub fn jackson_apply(q: &Rational, poly: &[Scalar]) -> Result<Vec<Scalar>> {
    check_q(q)?;
    let den = q - Rational::one();
    let mut out = Vec::with_capacity(poly.len().saturating_sub(1));
    for (k, c) in poly.iter().enumerate().skip(1) {
        let f = (rational_pow(q, k as i64)? - Rational::one()) / &den;
        out.push(c * &Scalar::from_rational(f));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Embedding {
    /// `a~ = (1/b) (q^{ba} - 1)/(q - 1)`, `b~ = b`.
    Spectral,
    /// Through the canonical pair `b e^{-delta a}`, `(e^{delta a} - 1)/delta`.
    Transformed(Rational),
}

/// Realization of `(a~, b~)` on a Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct QPair {
    pub a: OperatorExpr,
    pub b: OperatorExpr,
}

/// `(q^N - 1)/(q - 1)` with `N` the number operator of the chosen pair.
fn q_number_operator(modes: ModeSystem, mode: usize, q: &Rational, delta: Rational) -> Result<OperatorExpr> {
    let qn = OperatorExpr::q_spectral(modes, mode, q.clone(), delta)?;
    Ok(OperatorExpr::sum(modes, vec![qn, OperatorExpr::constant(modes, -Scalar::one())])?
        .scale(Scalar::from_rational((q - Rational::one()).recip())))
}

/// Embedding of the q-deformed pair into bosonic mode `mode`.
pub fn embed_mode(modes: ModeSystem, mode: usize, q: &Rational, variant: &Embedding) -> Result<QPair> {
    check_q(q)?;
    let b = OperatorExpr::Poly(WeylElement::b(modes, mode)?);
    match variant {
        Embedding::Spectral => {
            let num = q_number_operator(modes, mode, q, Rational::zero())?;
            let a = OperatorExpr::product(modes, vec![OperatorExpr::left_div_b(modes, mode, Rational::zero())?, num])?;
            Ok(QPair { a, b })
        }
        Embedding::Transformed(delta) => {
            if delta.is_zero() {
                return Err(Error::DeltaZero);
            }
            let d = Scalar::from_rational(delta.clone());
            // a~ = e^{delta a} b^{-1} {N}: lowers p_k to {k} p_{k-1}
            let num = q_number_operator(modes, mode, q, delta.clone())?;
            let a = OperatorExpr::product(
                modes,
                vec![
                    OperatorExpr::exp_a(modes, mode, d.clone())?,
                    OperatorExpr::left_div_b(modes, mode, Rational::zero())?,
                    num,
                ],
            )?;
            let b = OperatorExpr::product(modes, vec![b, OperatorExpr::exp_a(modes, mode, -d)?])?;
            Ok(QPair { a, b })
        }
    }
}

pub fn embed(q: &Rational, variant: &Embedding) -> Result<QPair> {
    embed_mode(ModeSystem::bosonic(1), 0, q, variant)
}

/// The annihilator of the transformed embedding in its displayed shape,
/// `(b + delta)^{-1} e^{delta a} (q^N - 1)/(q - 1)`.
pub fn displayed_transformed_a(q: &Rational, delta: &Rational) -> Result<OperatorExpr> {
    check_q(q)?;
    if delta.is_zero() {
        return Err(Error::DeltaZero);
    }
    let modes = ModeSystem::bosonic(1);
    OperatorExpr::product(
        modes,
        vec![
            OperatorExpr::left_div_b(modes, 0, delta.clone())?,
            OperatorExpr::exp_a(modes, 0, Scalar::from_rational(delta.clone()))?,
            q_number_operator(modes, 0, q, delta.clone())?,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{check_identity, falling_factorial, Direction, FockVector};
    use crate::scalar::{int, rat};
    use crate::weyl::boson_product;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_number(3, &int(2)).unwrap(), int(7));
        assert_eq!(q_number(0, &rat(3, 5)).unwrap(), int(0));
        assert_eq!(q_alpha_hat(1, &int(2)).unwrap(), rat(1, 5));
        assert_eq!(q_number(2, &int(1)), Err(Error::QEqualsOne));
        assert_eq!(q_alpha_hat(-1, &int(2)), Err(Error::DivisionByZero));
        for k in 0..6u32 {
            assert_eq!(q_number(k as i64, &rat(3, 5)).unwrap(), q_int(k, &rat(3, 5)));
        }
    }

    #[test]
    fn single_swap() {
        let q = int(3);
        let ab = QWeylElement::a(q.clone()).unwrap().q_multiply(&QWeylElement::b(q.clone()).unwrap()).unwrap();
        assert_eq!(ab.coefficient(1, 1), s(3));
        assert_eq!(ab.coefficient(0, 0), s(1));
        let b2 = QWeylElement::monomial(q.clone(), 2, 0, s(1)).unwrap();
        let ab2 = QWeylElement::a(q).unwrap().q_multiply(&b2).unwrap();
        assert_eq!(ab2.coefficient(2, 1), s(9));
        assert_eq!(ab2.coefficient(1, 0), s(4));
    }

    #[test]
    fn reorder_degenerates_at_q_one() {
        for m in 0..5 {
            for k in 0..5 {
                let q1: Vec<_> =
                    q_reorder(&int(1), m, k).into_iter().map(|(c, kk, mm)| (c.to_integer(), kk, mm)).collect();
                assert_eq!(q1, boson_product(0, m, k, 0));
            }
        }
    }

    #[test]
    fn q_mismatch() {
        let x = QWeylElement::a(int(2)).unwrap();
        let y = QWeylElement::a(int(3)).unwrap();
        assert!(matches!(x.q_multiply(&y), Err(Error::QMismatch(..))));
        assert_eq!(QWeylElement::a(int(1)), Err(Error::QEqualsOne));
    }

    #[test]
    fn jackson() {
        let cube = vec![s(0), s(0), s(0), s(1)];
        assert_eq!(jackson_apply(&int(2), &cube).unwrap(), vec![s(0), s(0), s(7)]);
        assert!(jackson_apply(&int(2), &[s(5)]).unwrap().iter().all(Zero::is_zero));
        assert_eq!(jackson_apply(&int(2), &[s(0), s(1)]).unwrap(), vec![s(1)]);
    }

    #[test]
    fn spectral_embedding() {
        let pair = embed(&int(2), &Embedding::Spectral).unwrap();
        let m = ModeSystem::bosonic(1);
        let b3 = FockVector::state(m, &[3], &[]).unwrap();
        assert_eq!(pair.a.apply(&b3).unwrap(), FockVector::state(m, &[2], &[]).unwrap().scale(&s(7)));
    }

    #[test]
    fn transformed_embedding_raises_falling_factorials() {
        let m = ModeSystem::bosonic(1);
        let pair = embed(&int(2), &Embedding::Transformed(int(1))).unwrap();
        let v = pair.b.apply(&pair.b.apply(&FockVector::vacuum(m)).unwrap()).unwrap();
        let expected =
            FockVector::state(m, &[2], &[]).unwrap().checked_sub(&FockVector::state(m, &[1], &[]).unwrap()).unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn transformed_lowering_in_falling_basis() {
        let m = ModeSystem::bosonic(1);
        let q = rat(3, 5);
        let delta = rat(1, 2);
        let pair = embed(&q, &Embedding::Transformed(delta.clone())).unwrap();
        for k in 1..6u32 {
            let pk =
                falling_factorial(&delta, &FockVector::state(m, &[k], &[]).unwrap(), 0, Direction::Inverse).unwrap();
            let img = pair.a.apply(&pk).unwrap();
            let back = falling_factorial(&delta, &img, 0, Direction::Forward).unwrap();
            let expected = FockVector::state(m, &[k - 1], &[])
                .unwrap()
                .scale(&Scalar::from_rational(q_number(k as i64, &q).unwrap()));
            assert_eq!(back, expected);
        }
        let displayed = displayed_transformed_a(&q, &delta).unwrap();
        assert!(check_identity(&pair.a, &displayed, 6).unwrap().equal());
    }

    #[test]
    fn deformed_canonical_relation() {
        let m = ModeSystem::bosonic(1);
        for variant in [Embedding::Spectral, Embedding::Transformed(rat(-2, 3))] {
            let q = rat(3, 5);
            let p = embed(&q, &variant).unwrap();
            let lhs = OperatorExpr::sum(
                m,
                vec![
                    OperatorExpr::product(m, vec![p.a.clone(), p.b.clone()]).unwrap(),
                    OperatorExpr::product(m, vec![p.b.clone(), p.a.clone()])
                        .unwrap()
                        .scale(-Scalar::from_rational(q.clone())),
                ],
            )
            .unwrap();
            let rep = check_identity(&lhs, &OperatorExpr::identity(m), 6).unwrap();
            assert!(rep.equal(), "{variant:?}: {:?}", rep.mismatch);
        }
    }
}
