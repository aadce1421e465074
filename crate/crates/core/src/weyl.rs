//! Normal-ordered enveloping algebra of the super-Heisenberg algebra.
//!
//! Bosonic pairs satisfy `[a_i, b_j] = delta_ij`; fermionic pairs satisfy
//! `{dtheta_i, theta_j} = delta_ij` with all other fermionic generators
//! anticommuting. Bosonic generators commute with fermionic ones.
//!
//! Canonical monomial: `b^alpha a^eps theta^beta dtheta^gamma`, each bosonic
//! mode written `b_i^k a_i^m`, theta block ascending, then dtheta block
//! ascending. Any sign from reaching that order is absorbed into the
//! coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Number of bosonic and fermionic modes. Elements of different systems
/// never mix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeSystem {
    pub bosons: usize,
    pub fermions: usize,
}

impl ModeSystem {
    pub fn new(bosons: usize, fermions: usize) -> Self {
        assert!(fermions <= 32, "at most 32 fermionic modes");
        ModeSystem { bosons, fermions }
    }

    pub fn bosonic(p: usize) -> Self {
        ModeSystem::new(p, 0)
    }

    pub fn check_same(&self, other: &ModeSystem) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModeMismatch(self.to_string(), other.to_string()))
        }
    }

    pub fn check_boson(&self, i: usize) -> Result<()> {
        if i < self.bosons {
            Ok(())
        } else {
            Err(Error::ModeIndex { index: i, modes: self.to_string() })
        }
    }

    pub fn check_fermion(&self, j: usize) -> Result<()> {
        if j < self.fermions {
            Ok(())
        } else {
            Err(Error::ModeIndex { index: j, modes: self.to_string() })
        }
    }
}

impl fmt::Display for ModeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, r={})", self.bosons, self.fermions)
    }
}

/// Z2 grading of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Undefined,
}

impl Parity {
    pub fn from_degree(d: u32) -> Parity {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Undefined, _) | (_, Parity::Undefined) => Parity::Undefined,
            (x, y) if x == y => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Number of set bits of `mask` strictly below bit `j`.
pub(crate) fn bits_below(mask: u32, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

pub(crate) fn sign_of(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylMonomial {
    pub b: Vec<u32>,
    pub a: Vec<u32>,
    /// Bit `j` set means `theta_j` is present.
    pub theta: u32,
    pub dtheta: u32,
}

impl WeylMonomial {
    pub fn identity(modes: ModeSystem) -> Self {
        WeylMonomial { b: vec![0; modes.bosons], a: vec![0; modes.bosons], theta: 0, dtheta: 0 }
    }

    pub fn fermionic_degree(&self) -> u32 {
        self.theta.count_ones() + self.dtheta.count_ones()
    }

    /// Net change of total (bosonic + fermionic) degree when acting on Fock states.
    pub fn raise(&self) -> i64 {
        let up: u32 = self.b.iter().sum::<u32>() + self.theta.count_ones();
        let down: u32 = self.a.iter().sum::<u32>() + self.dtheta.count_ones();
        up as i64 - down as i64
    }

    pub fn total_degree(&self) -> u32 {
        self.b.iter().sum::<u32>() + self.a.iter().sum::<u32>() + self.theta.count_ones() + self.dtheta.count_ones()
    }

    /// The monomial as an ordered word of generators.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for i in 0..self.b.len() {
            out.extend(std::iter::repeat_n(Letter::B(i), self.b[i] as usize));
            out.extend(std::iter::repeat_n(Letter::A(i), self.a[i] as usize));
        }
        out.extend((0..32).filter(|j| self.theta & (1 << j) != 0).map(Letter::Theta));
        out.extend((0..32).filter(|j| self.dtheta & (1 << j) != 0).map(Letter::DTheta));
        out
    }
}

/// Single generator of the super-Heisenberg algebra.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    B(usize),
    A(usize),
    Theta(usize),
    DTheta(usize),
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(b^k1 a^m1)(b^k2 a^m2)` for one bosonic mode, via
/// `a^m b^k = sum_j C(m,j) C(k,j) j! b^(k-j) a^(m-j)`.
/// Returns `(coefficient, b power, a power)`.
pub fn boson_product(k1: u32, m1: u32, k2: u32, m2: u32) -> Vec<(BigInt, u32, u32)> {
    (0..=m1.min(k2))
        .map(|j| {
            let c = binomial(m1, j) * binomial(k2, j) * factorial(j);
            (c, k1 + k2 - j, m1 + m2 - j)
        })
        .collect()
}

/// `theta_i * (theta^t dtheta^d)`, normal ordered.
fn left_theta(i: usize, c: i64, t: u32, d: u32) -> Option<(i64, u32, u32)> {
    if t & (1 << i) != 0 {
        return None;
    }
    Some((c * sign_of(bits_below(t, i) % 2 == 1), t | (1 << i), d))
}

/// `dtheta_i * (theta^t dtheta^d)`, normal ordered: the contraction with
/// `theta_i` (if present) plus the term with `dtheta_i` moved past all thetas.
fn left_dtheta(i: usize, c: i64, t: u32, d: u32, out: &mut Vec<(i64, u32, u32)>) {
    if t & (1 << i) != 0 {
        out.push((c * sign_of(bits_below(t, i) % 2 == 1), t & !(1 << i), d));
    }
    if d & (1 << i) == 0 {
        let s = sign_of(t.count_ones() % 2 == 1) * sign_of(bits_below(d, i) % 2 == 1);
        out.push((c * s, t, d | (1 << i)));
    }
}

/// Normal-ordered product of two fermionic monomials, `r` modes.
pub fn fermion_product(r: usize, t1: u32, d1: u32, t2: u32, d2: u32) -> Vec<(i64, u32, u32)> {
    let mut terms = vec![(1i64, t2, d2)];
    for i in (0..r).rev().filter(|i| d1 & (1 << i) != 0) {
        let mut next = Vec::new();
        for (c, t, d) in terms {
            left_dtheta(i, c, t, d, &mut next);
        }
        terms = next;
    }
    for i in (0..r).rev().filter(|i| t1 & (1 << i) != 0) {
        terms = terms.into_iter().filter_map(|(c, t, d)| left_theta(i, c, t, d)).collect();
    }
    let mut merged: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for (c, t, d) in terms {
        *merged.entry((t, d)).or_insert(0) += c;
    }
    merged.into_iter().filter(|(_, c)| *c != 0).map(|((t, d), c)| (c, t, d)).collect()
}

/// Normal-ordered polynomial in the super-Heisenberg generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    modes: ModeSystem,
    terms: BTreeMap<WeylMonomial, Scalar>,
}

impl WeylElement {
    pub fn zero(modes: ModeSystem) -> Self {
        WeylElement { modes, terms: BTreeMap::new() }
    }

    pub fn constant(modes: ModeSystem, c: Scalar) -> Self {
        WeylElement::from_term(modes, WeylMonomial::identity(modes), c)
    }

    pub fn one(modes: ModeSystem) -> Self {
        WeylElement::constant(modes, Scalar::one())
    }

    pub fn from_term(modes: ModeSystem, mono: WeylMonomial, c: Scalar) -> Self {
        let mut e = WeylElement::zero(modes);
        e.add_term(mono, c);
        e
    }

    /// `prod_i b_i^b[i] a_i^a[i] * theta^theta * dtheta^dtheta` with the
    /// fermionic index lists taken in ascending order.
    pub fn monomial(
        modes: ModeSystem,
        b: &[u32],
        a: &[u32],
        theta: &[usize],
        dtheta: &[usize],
        c: Scalar,
    ) -> Result<Self> {
        if b.len() != modes.bosons || a.len() != modes.bosons {
            return Err(Error::ModeIndex { index: b.len().max(a.len()), modes: modes.to_string() });
        }
        let mut t = 0u32;
        for &j in theta {
            modes.check_fermion(j)?;
            if t & (1 << j) != 0 {
                return Ok(WeylElement::zero(modes));
            }
            t |= 1 << j;
        }
        let mut d = 0u32;
        for &j in dtheta {
            modes.check_fermion(j)?;
            if d & (1 << j) != 0 {
                return Ok(WeylElement::zero(modes));
            }
            d |= 1 << j;
        }
        let mono = WeylMonomial { b: b.to_vec(), a: a.to_vec(), theta: t, dtheta: d };
        Ok(WeylElement::from_term(modes, mono, c))
    }

    fn unit_boson(modes: ModeSystem, i: usize, is_b: bool) -> Result<Self> {
        modes.check_boson(i)?;
        let mut m = WeylMonomial::identity(modes);
        if is_b {
            m.b[i] = 1;
        } else {
            m.a[i] = 1;
        }
        Ok(WeylElement::from_term(modes, m, Scalar::one()))
    }

    /// Annihilator `a_i`.
    pub fn a(modes: ModeSystem, i: usize) -> Result<Self> {
        WeylElement::unit_boson(modes, i, false)
    }

    /// Creator `b_i`.
    pub fn b(modes: ModeSystem, i: usize) -> Result<Self> {
        WeylElement::unit_boson(modes, i, true)
    }

    pub fn theta(modes: ModeSystem, j: usize) -> Result<Self> {
        modes.check_fermion(j)?;
        let mut m = WeylMonomial::identity(modes);
        m.theta = 1 << j;
        Ok(WeylElement::from_term(modes, m, Scalar::one()))
    }

    pub fn dtheta(modes: ModeSystem, j: usize) -> Result<Self> {
        modes.check_fermion(j)?;
        let mut m = WeylMonomial::identity(modes);
        m.dtheta = 1 << j;
        Ok(WeylElement::from_term(modes, m, Scalar::one()))
    }

    pub fn modes(&self) -> ModeSystem {
        self.modes
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &WeylMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: WeylMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return WeylElement::zero(self.modes);
        }
        WeylElement { modes: self.modes, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn checked_add(&self, other: &WeylElement) -> Result<Self> {
        self.modes.check_same(&other.modes)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &WeylElement) -> Result<Self> {
        self.checked_add(&other.scale(&-Scalar::one()))
    }

    /// Normal-ordered product.
    pub fn multiply(&self, other: &WeylElement) -> Result<Self> {
        self.modes.check_same(&other.modes)?;
        let mut acc: BTreeMap<WeylMonomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let coeff = c1 * c2;
                for (k, mono) in monomial_product(self.modes, m1, m2) {
                    let v = &coeff * &Scalar::from_rational(Rational::from_integer(k));
                    *acc.entry(mono).or_default() += &v;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(WeylElement { modes: self.modes, terms: acc })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = WeylElement::one(self.modes);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &WeylElement) -> Result<Self> {
        self.multiply(other)?.checked_sub(&other.multiply(self)?)
    }

    /// `xy + yx`.
    pub fn anticommutator(&self, other: &WeylElement) -> Result<Self> {
        self.multiply(other)?.checked_add(&other.multiply(self)?)
    }

    /// Anticommutator when both arguments are odd, commutator otherwise.
    pub fn super_bracket(&self, other: &WeylElement) -> Result<Self> {
        match (self.parity(), other.parity()) {
            (Parity::Undefined, _) | (_, Parity::Undefined) => Err(Error::UndefinedParity),
            (Parity::Odd, Parity::Odd) => self.anticommutator(other),
            _ => self.commutator(other),
        }
    }

    /// Fermionic degree mod 2 when uniform across terms. Zero is even.
    pub fn parity(&self) -> Parity {
        let mut it = self.terms.keys().map(|m| Parity::from_degree(m.fermionic_degree()));
        let Some(first) = it.next() else { return Parity::Even };
        if it.all(|p| p == first) {
            first
        } else {
            Parity::Undefined
        }
    }

    /// Largest degree increase of any term; `None` for zero.
    pub fn max_raise(&self) -> Option<i64> {
        self.terms.keys().map(WeylMonomial::raise).max()
    }

    /// Algebra homomorphism replacing `(a_i, b_i)` by `(new_a, new_b)`.
    /// The replacements must commute with the generators of the other modes.
    pub fn substitute(&self, i: usize, new_a: &WeylElement, new_b: &WeylElement) -> Result<Self> {
        self.modes.check_boson(i)?;
        self.modes.check_same(&new_a.modes)?;
        self.modes.check_same(&new_b.modes)?;
        let mut out = WeylElement::zero(self.modes);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let (k, p) = (rest.b[i], rest.a[i]);
            rest.b[i] = 0;
            rest.a[i] = 0;
            let core = new_b.pow(k)?.multiply(&new_a.pow(p)?)?;
            let term = core.multiply(&WeylElement::from_term(self.modes, rest, c.clone()))?;
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Adds `delta` to the coefficient of the `index`-th stored term.
    pub fn perturb_term(&self, index: usize, delta: &Scalar) -> Option<Self> {
        let (m, _) = self.terms.iter().nth(index)?;
        let mut out = self.clone();
        out.add_term(m.clone(), delta.clone());
        Some(out)
    }
}

/// Product of two canonical monomials with integer coefficients.
pub fn monomial_product(modes: ModeSystem, m1: &WeylMonomial, m2: &WeylMonomial) -> Vec<(BigInt, WeylMonomial)> {
    let fermi = fermion_product(modes.fermions, m1.theta, m1.dtheta, m2.theta, m2.dtheta);
    if fermi.is_empty() {
        return Vec::new();
    }
    let mut bosonic: Vec<(BigInt, Vec<u32>, Vec<u32>)> = vec![(BigInt::one(), Vec::new(), Vec::new())];
    for i in 0..modes.bosons {
        let per_mode = boson_product(m1.b[i], m1.a[i], m2.b[i], m2.a[i]);
        let mut next = Vec::with_capacity(bosonic.len() * per_mode.len());
        for (c, b, a) in &bosonic {
            for (c2, k, m) in &per_mode {
                let mut b = b.clone();
                let mut a = a.clone();
                b.push(*k);
                a.push(*m);
                next.push((c * c2, b, a));
            }
        }
        bosonic = next;
    }
    let mut out = Vec::with_capacity(bosonic.len() * fermi.len());
    for (c, b, a) in &bosonic {
        for (s, t, d) in &fermi {
            out.push((c * BigInt::from(*s), WeylMonomial { b: b.clone(), a: a.clone(), theta: *t, dtheta: *d }));
        }
    }
    out
}

fn checked<T>(r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

/// Operator sugar; panics on mode mismatch. Use the `checked_*`/`multiply`
/// methods for the fallible forms.
impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, o: &WeylElement) -> WeylElement {
        checked(self.checked_add(o))
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, o: &WeylElement) -> WeylElement {
        checked(self.checked_sub(o))
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, o: &WeylElement) -> WeylElement {
        checked(self.multiply(o))
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Scalar::one())
    }
}

fn fmt_monomial(modes: ModeSystem, m: &WeylMonomial) -> String {
    let mut parts = Vec::new();
    let idx = |i: usize, n: usize| if n > 1 { (i + 1).to_string() } else { String::new() };
    for i in 0..modes.bosons {
        let pw = |k: u32| if k == 1 { String::new() } else { format!("^{k}") };
        if m.b[i] > 0 {
            parts.push(format!("b{}{}", idx(i, modes.bosons), pw(m.b[i])));
        }
        if m.a[i] > 0 {
            parts.push(format!("a{}{}", idx(i, modes.bosons), pw(m.a[i])));
        }
    }
    for j in 0..modes.fermions {
        if m.theta & (1 << j) != 0 {
            parts.push(format!("th{}", idx(j, modes.fermions)));
        }
    }
    for j in 0..modes.fermions {
        if m.dtheta & (1 << j) != 0 {
            parts.push(format!("dth{}", idx(j, modes.fermions)));
        }
    }
    parts.join(" ")
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first reads more naturally
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(x, _), (y, _)| y.total_degree().cmp(&x.total_degree()).then(y.cmp(x)));
        for (n, (m, c)) in items.into_iter().enumerate() {
            let body = fmt_monomial(self.modes, m);
            let (neg, mag) =
                if c.is_rational() && c.rat < Rational::zero() { (true, -c.clone()) } else { (false, c.clone()) };
            let sep = match (n, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let coef = if body.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                String::new()
            } else {
                format!("{mag} ")
            };
            write!(f, "{sep}{coef}{body}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    b: Vec<u32>,
    a: Vec<u32>,
    theta: Vec<u32>,
    dtheta: Vec<u32>,
    coeff: Scalar,
}

fn mask_to_vec(mask: u32, r: usize) -> Vec<u32> {
    (0..r).map(|j| (mask >> j) & 1).collect()
}

impl WeylElement {
    /// JSON list of `{b, a, theta, dtheta, coeff}`; fermionic fields are 0/1
    /// occupation vectors.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                b: m.b.clone(),
                a: m.a.clone(),
                theta: mask_to_vec(m.theta, self.modes.fermions),
                dtheta: mask_to_vec(m.dtheta, self.modes.fermions),
                coeff: c.clone(),
            })
            .collect();
        serde_json::to_value(items).expect("serializable")
    }

    pub fn from_json(modes: ModeSystem, v: &serde_json::Value) -> Result<Self> {
        let items: Vec<TermRepr> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = WeylElement::zero(modes);
        for t in items {
            let to_idx =
                |v: &[u32]| -> Vec<usize> { v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, _)| j).collect() };
            if t.theta.len() != modes.fermions || t.dtheta.len() != modes.fermions {
                return Err(Error::Parse("fermionic occupation length".into()));
            }
            let e = WeylElement::monomial(modes, &t.b, &t.a, &to_idx(&t.theta), &to_idx(&t.dtheta), t.coeff)?;
            out = out.checked_add(&e)?;
        }
        Ok(out)
    }
}
