//! Fock vectors and extended operators acting on them.
//!
//! Exponentials of annihilators and spectral q-powers are infinite series in
//! the enveloping algebra, but on any fixed Fock vector they terminate since
//! every `a_i` strictly lowers the degree. They are therefore never expanded
//! into [`WeylElement`]s and only act operationally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, rational_pow, Rational, Scalar};
use crate::weyl::{bits_below, sign_of, ModeSystem, Parity, WeylElement, WeylMonomial};

/// Basis state `b^alpha theta^beta |0>` (theta factors ascending).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockKey {
    pub b: Vec<u32>,
    pub theta: u32,
}

impl FockKey {
    pub fn vacuum(modes: ModeSystem) -> Self {
        FockKey { b: vec![0; modes.bosons], theta: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.b.iter().sum::<u32>() + self.theta.count_ones()
    }

    fn theta_vec(&self) -> impl Iterator<Item = u32> + '_ {
        (0..32).map(move |j| (self.theta >> j) & 1)
    }
}

/// Graded order: total degree, then bosonic exponents, then fermionic
/// occupation, both lexicographic.
impl Ord for FockKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.theta_vec().cmp(other.theta_vec()))
    }
}

impl PartialOrd for FockKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let p = self.b.len();
        for (i, &k) in self.b.iter().enumerate() {
            if k > 0 {
                let idx = if p > 1 { (i + 1).to_string() } else { String::new() };
                let pw = if k > 1 { format!("^{k}") } else { String::new() };
                parts.push(format!("b{idx}{pw}"));
            }
        }
        for j in 0..32 {
            if self.theta & (1 << j) != 0 {
                parts.push(format!("th{}", j + 1));
            }
        }
        parts.push("|0>".into());
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct KeyRepr {
    b: Vec<u32>,
    theta: Vec<u32>,
}

impl FockKey {
    pub fn to_json(&self, modes: ModeSystem) -> serde_json::Value {
        let theta = (0..modes.fermions).map(|j| (self.theta >> j) & 1).collect();
        serde_json::to_value(KeyRepr { b: self.b.clone(), theta }).expect("serializable")
    }
}

/// All basis states of total degree `<= cutoff`, in graded order.
pub fn basis(modes: ModeSystem, cutoff: u32) -> Vec<FockKey> {
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << modes.fermions) {
        let fdeg = mask.count_ones();
        if fdeg > cutoff {
            continue;
        }
        let mut b = vec![0u32; modes.bosons];
        bosonic_up_to(&mut b, 0, cutoff - fdeg, &mut |b| out.push(FockKey { b: b.to_vec(), theta: mask }));
    }
    out.sort();
    out
}

fn bosonic_up_to(b: &mut Vec<u32>, i: usize, left: u32, emit: &mut dyn FnMut(&[u32])) {
    if i == b.len() {
        emit(b);
        return;
    }
    for k in 0..=left {
        b[i] = k;
        bosonic_up_to(b, i + 1, left - k, emit);
    }
    b[i] = 0;
}

/// Finite combination of Fock basis states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    modes: ModeSystem,
    terms: BTreeMap<FockKey, Scalar>,
}

impl FockVector {
    pub fn zero(modes: ModeSystem) -> Self {
        FockVector { modes, terms: BTreeMap::new() }
    }

    pub fn vacuum(modes: ModeSystem) -> Self {
        FockVector::basis_state(modes, FockKey::vacuum(modes))
    }

    pub fn basis_state(modes: ModeSystem, key: FockKey) -> Self {
        let mut v = FockVector::zero(modes);
        v.add_term(key, Scalar::one());
        v
    }

    /// `b^alpha theta^beta |0>` with `beta` given as mode indices (ascending).
    pub fn state(modes: ModeSystem, b: &[u32], theta: &[usize]) -> Result<Self> {
        if b.len() != modes.bosons {
            return Err(Error::ModeIndex { index: b.len(), modes: modes.to_string() });
        }
        let mut mask = 0;
        for &j in theta {
            modes.check_fermion(j)?;
            mask |= 1 << j;
        }
        Ok(FockVector::basis_state(modes, FockKey { b: b.to_vec(), theta: mask }))
    }

    pub fn modes(&self) -> ModeSystem {
        self.modes
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &FockKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(FockKey::degree).max()
    }

    pub fn add_term(&mut self, key: FockKey, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn add_scaled(&mut self, other: &FockVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn checked_add(&self, other: &FockVector) -> Result<Self> {
        self.modes.check_same(&other.modes)?;
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FockVector) -> Result<Self> {
        self.modes.check_same(&other.modes)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = FockVector::zero(self.modes);
        out.add_scaled(self, c);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut obj = k.to_json(self.modes);
                obj["coeff"] = serde_json::to_value(c).expect("serializable");
                obj
            })
            .collect();
        serde_json::Value::Array(items)
    }

    /// Splits off bosonic mode `i`: maps the remaining index to the
    /// coefficient list of the polynomial in `b_i`.
    fn split_mode(&self, i: usize) -> BTreeMap<FockKey, Vec<Scalar>> {
        let mut groups: BTreeMap<FockKey, Vec<Scalar>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut rest = k.clone();
            let pw = rest.b[i] as usize;
            rest.b[i] = 0;
            let coeffs = groups.entry(rest).or_default();
            if coeffs.len() <= pw {
                coeffs.resize(pw + 1, Scalar::zero());
            }
            coeffs[pw] = c.clone();
        }
        groups
    }

    fn join_mode(modes: ModeSystem, i: usize, groups: BTreeMap<FockKey, Vec<Scalar>>) -> Self {
        let mut out = FockVector::zero(modes);
        for (rest, coeffs) in groups {
            for (pw, c) in coeffs.into_iter().enumerate() {
                let mut k = rest.clone();
                k.b[i] = pw as u32;
                out.add_term(k, c);
            }
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c} {k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Action of a normal-ordered monomial on a basis state: integer coefficient
/// and resulting state, or `None` when the state is annihilated.
pub fn apply_monomial(m: &WeylMonomial, key: &FockKey) -> Option<(BigInt, FockKey)> {
    let mut coeff = BigInt::one();
    let mut b = key.b.clone();
    for ((slot, &take), &raise) in b.iter_mut().zip(&m.a).zip(&m.b) {
        let have = *slot;
        if have < take {
            return None;
        }
        for f in 0..take {
            coeff *= BigInt::from(have - f);
        }
        *slot = have - take + raise;
    }
    let mut theta = key.theta;
    let mut sign = 1i64;
    // dtheta block acts first, rightmost factor first
    for j in (0..32).rev().filter(|j| m.dtheta & (1 << j) != 0) {
        if theta & (1 << j) == 0 {
            return None;
        }
        sign *= sign_of(bits_below(theta, j) % 2 == 1);
        theta &= !(1 << j);
    }
    for j in (0..32).rev().filter(|j| m.theta & (1 << j) != 0) {
        if theta & (1 << j) != 0 {
            return None;
        }
        sign *= sign_of(bits_below(theta, j) % 2 == 1);
        theta |= 1 << j;
    }
    Some((coeff * BigInt::from(sign), FockKey { b, theta }))
}

/// Monomial coordinates -> falling-factorial coordinates
/// `p_k = b (b - delta) ... (b - (k-1) delta)`.
pub fn monomial_to_falling(delta: &Rational, coeffs: &[Scalar]) -> Vec<Scalar> {
    let d = Scalar::from_rational(delta.clone());
    let mut out = vec![Scalar::zero(); coeffs.len()];
    // expansion of b^k in the p_j, built with b p_j = p_{j+1} + j delta p_j
    let mut power = vec![Scalar::one()];
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            let mut next = vec![Scalar::zero(); power.len() + 1];
            for (j, e) in power.iter().enumerate() {
                next[j + 1] += e;
                next[j] += &(&(&d * &Scalar::from_int(j as i64)) * e);
            }
            power = next;
        }
        if !c.is_zero() {
            for (j, e) in power.iter().enumerate() {
                out[j] += &(c * e);
            }
        }
    }
    out
}

/// Falling-factorial coordinates -> monomial coordinates.
pub fn falling_to_monomial(delta: &Rational, coeffs: &[Scalar]) -> Vec<Scalar> {
    let d = Scalar::from_rational(delta.clone());
    let mut out = vec![Scalar::zero(); coeffs.len()];
    let mut poly = vec![Scalar::one()];
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            // multiply by (b - (k-1) delta)
            let shift = -(&d * &Scalar::from_int(k as i64 - 1));
            let mut next = vec![Scalar::zero(); poly.len() + 1];
            for (j, e) in poly.iter().enumerate() {
                next[j + 1] += e;
                next[j] += &(&shift * e);
            }
            poly = next;
        }
        if !c.is_zero() {
            for (j, e) in poly.iter().enumerate() {
                out[j] += &(c * e);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Monomials to falling factorials.
    Forward,
    Inverse,
}

/// Change of basis in bosonic mode `mode` between monomials `b^k|0>` and the
/// falling factorials `p_k|0>`. The result's key `b^k` stands for `p_k` in the
/// forward direction.
pub fn falling_factorial(delta: &Rational, v: &FockVector, mode: usize, direction: Direction) -> Result<FockVector> {
    if delta.is_zero() {
        return Err(Error::DeltaZero);
    }
    v.modes.check_boson(mode)?;
    let groups = v
        .split_mode(mode)
        .into_iter()
        .map(|(k, c)| {
            let t = match direction {
                Direction::Forward => monomial_to_falling(delta, &c),
                Direction::Inverse => falling_to_monomial(delta, &c),
            };
            (k, t)
        })
        .collect();
    Ok(FockVector::join_mode(v.modes, mode, groups))
}

/// Element of the extended enveloping algebra, acting on Fock vectors.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorExpr {
    Poly(WeylElement),
    /// `exp(gamma a_i)`.
    ExpA {
        modes: ModeSystem,
        mode: usize,
        gamma: Scalar,
    },
    /// `q^N` with `N = (b_i / delta)(1 - exp(-delta a_i))`, or `N = b_i a_i`
    /// when `delta = 0`.
    QSpectral {
        modes: ModeSystem,
        mode: usize,
        q: Rational,
        delta: Rational,
    },
    /// Formal left multiplication by `(b_i + shift)^-1`.
    LeftDivB {
        modes: ModeSystem,
        mode: usize,
        shift: Rational,
    },
    Sum(ModeSystem, Vec<OperatorExpr>),
    /// Composition; the rightmost factor acts first.
    Product(ModeSystem, Vec<OperatorExpr>),
    Scale(Scalar, Box<OperatorExpr>),
}

impl From<WeylElement> for OperatorExpr {
    fn from(w: WeylElement) -> Self {
        OperatorExpr::Poly(w)
    }
}

impl OperatorExpr {
    pub fn modes(&self) -> ModeSystem {
        match self {
            OperatorExpr::Poly(w) => w.modes(),
            OperatorExpr::ExpA { modes, .. }
            | OperatorExpr::QSpectral { modes, .. }
            | OperatorExpr::LeftDivB { modes, .. }
            | OperatorExpr::Sum(modes, _)
            | OperatorExpr::Product(modes, _) => *modes,
            OperatorExpr::Scale(_, e) => e.modes(),
        }
    }

    pub fn identity(modes: ModeSystem) -> Self {
        OperatorExpr::Poly(WeylElement::one(modes))
    }

    pub fn constant(modes: ModeSystem, c: Scalar) -> Self {
        OperatorExpr::Poly(WeylElement::constant(modes, c))
    }

    pub fn exp_a(modes: ModeSystem, mode: usize, gamma: Scalar) -> Result<Self> {
        modes.check_boson(mode)?;
        Ok(OperatorExpr::ExpA { modes, mode, gamma })
    }

    pub fn q_spectral(modes: ModeSystem, mode: usize, q: Rational, delta: Rational) -> Result<Self> {
        modes.check_boson(mode)?;
        Ok(OperatorExpr::QSpectral { modes, mode, q, delta })
    }

    pub fn left_div_b(modes: ModeSystem, mode: usize, shift: Rational) -> Result<Self> {
        modes.check_boson(mode)?;
        Ok(OperatorExpr::LeftDivB { modes, mode, shift })
    }

    pub fn sum(modes: ModeSystem, items: Vec<OperatorExpr>) -> Result<Self> {
        for e in &items {
            modes.check_same(&e.modes())?;
        }
        Ok(OperatorExpr::Sum(modes, items))
    }

    pub fn product(modes: ModeSystem, items: Vec<OperatorExpr>) -> Result<Self> {
        for e in &items {
            modes.check_same(&e.modes())?;
        }
        Ok(OperatorExpr::Product(modes, items))
    }

    pub fn scale(self, c: Scalar) -> Self {
        OperatorExpr::Scale(c, Box::new(self))
    }

    /// Largest possible increase of total degree; `None` when the operator is
    /// identically zero.
    pub fn max_raise(&self) -> Option<i64> {
        match self {
            OperatorExpr::Poly(w) => w.max_raise(),
            OperatorExpr::ExpA { .. } | OperatorExpr::QSpectral { .. } => Some(0),
            OperatorExpr::LeftDivB { .. } => Some(-1),
            OperatorExpr::Sum(_, items) => items.iter().filter_map(|e| e.max_raise()).max(),
            OperatorExpr::Product(_, items) => items.iter().try_fold(0i64, |acc, e| e.max_raise().map(|r| acc + r)),
            OperatorExpr::Scale(c, e) => {
                if c.is_zero() {
                    None
                } else {
                    e.max_raise()
                }
            }
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            OperatorExpr::Poly(w) => w.parity(),
            OperatorExpr::ExpA { .. } | OperatorExpr::QSpectral { .. } | OperatorExpr::LeftDivB { .. } => Parity::Even,
            OperatorExpr::Sum(_, items) => {
                let mut it = items.iter().filter(|e| !e.is_trivially_zero()).map(|e| e.parity());
                let Some(first) = it.next() else { return Parity::Even };
                if it.all(|p| p == first) {
                    first
                } else {
                    Parity::Undefined
                }
            }
            OperatorExpr::Product(_, items) => items.iter().fold(Parity::Even, |acc, e| acc.combine(e.parity())),
            OperatorExpr::Scale(_, e) => e.parity(),
        }
    }

    fn is_trivially_zero(&self) -> bool {
        match self {
            OperatorExpr::Poly(w) => w.is_zero(),
            OperatorExpr::Scale(c, e) => c.is_zero() || e.is_trivially_zero(),
            _ => false,
        }
    }

    /// The underlying polynomial, if the expression is one.
    pub fn as_poly(&self) -> Option<&WeylElement> {
        match self {
            OperatorExpr::Poly(w) => Some(w),
            _ => None,
        }
    }

    /// Exact action on a Fock vector.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        self.modes().check_same(&v.modes)?;
        let modes = v.modes;
        match self {
            OperatorExpr::Poly(w) => {
                let mut out = FockVector::zero(modes);
                for (key, c) in &v.terms {
                    for (m, wc) in w.terms() {
                        if let Some((k, new_key)) = apply_monomial(m, key) {
                            let f = Scalar::from_rational(Rational::from_integer(k));
                            out.add_term(new_key, &(c * wc) * &f);
                        }
                    }
                }
                Ok(out)
            }
            OperatorExpr::ExpA { mode, gamma, .. } => {
                // exp(g a) b^k|0> = (b + g)^k |0>
                let mut out = FockVector::zero(modes);
                for (key, c) in &v.terms {
                    let k = key.b[*mode];
                    let mut binom = BigInt::one();
                    let mut gpow = Scalar::one();
                    for j in 0..=k {
                        let mut nk = key.clone();
                        nk.b[*mode] = k - j;
                        let coef = &(c * &gpow) * &Scalar::from_rational(Rational::from_integer(binom.clone()));
                        out.add_term(nk, coef);
                        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                        gpow = &gpow * gamma;
                    }
                }
                Ok(out)
            }
            OperatorExpr::QSpectral { mode, q, delta, .. } => {
                let mut groups = v.split_mode(*mode);
                for coeffs in groups.values_mut() {
                    let mut ff = if delta.is_zero() { coeffs.clone() } else { monomial_to_falling(delta, coeffs) };
                    for (k, c) in ff.iter_mut().enumerate() {
                        *c = &*c * &Scalar::from_rational(rational_pow(q, k as i64)?);
                    }
                    *coeffs = if delta.is_zero() { ff } else { falling_to_monomial(delta, &ff) };
                }
                Ok(FockVector::join_mode(modes, *mode, groups))
            }
            OperatorExpr::LeftDivB { mode, shift, .. } => {
                let mut groups = v.split_mode(*mode);
                let s = Scalar::from_rational(shift.clone());
                for (rest, coeffs) in groups.iter_mut() {
                    // synthetic division by (b + s)
                    let deg = coeffs.len() - 1;
                    let mut quot = vec![Scalar::zero(); deg];
                    let mut carry = Scalar::zero();
                    for k in (0..=deg).rev() {
                        let cur = &coeffs[k] - &(&s * &carry);
                        if k == 0 {
                            if !cur.is_zero() {
                                let divisor = if shift.is_zero() {
                                    format!("b{}", mode + 1)
                                } else {
                                    format!("(b{} + {})", mode + 1, format_rational(shift))
                                };
                                return Err(Error::NotLeftDivisible(format!("{divisor} at {rest}")));
                            }
                        } else {
                            quot[k - 1] = cur.clone();
                        }
                        carry = cur;
                    }
                    *coeffs = quot;
                }
                Ok(FockVector::join_mode(modes, *mode, groups))
            }
            OperatorExpr::Sum(_, items) => {
                let mut out = FockVector::zero(modes);
                for e in items {
                    out.add_scaled(&e.apply(v)?, &Scalar::one());
                }
                Ok(out)
            }
            OperatorExpr::Product(_, items) => {
                let mut cur = v.clone();
                for e in items.iter().rev() {
                    if cur.is_zero() {
                        break;
                    }
                    cur = e.apply(&cur)?;
                }
                Ok(cur)
            }
            OperatorExpr::Scale(c, e) => Ok(e.apply(v)?.scale(c)),
        }
    }
}

/// Matrix of an operator on the degree-truncated basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    pub modes: ModeSystem,
    pub cutoff: u32,
    pub basis: Vec<FockKey>,
    /// Row-major; column `j` holds the in-range coordinates of the image of
    /// `basis[j]`.
    pub entries: Vec<Vec<Scalar>>,
    /// Columns whose image has a component of degree above the cutoff.
    pub overflow_columns: Vec<usize>,
    pub max_raise: Option<i64>,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_overflow(&self, col: usize) -> bool {
        self.overflow_columns.binary_search(&col).is_ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cutoff": self.cutoff,
            "basis": self.basis.iter().map(|k| k.to_json(self.modes)).collect::<Vec<_>>(),
            "matrix": self.entries,
            "overflow_columns": self.overflow_columns,
        })
    }
}

/// Matrix of `op` in the graded basis of degree `<= cutoff`. Columns whose
/// image leaves the truncated space are flagged, never silently cut.
pub fn to_matrix(op: &OperatorExpr, cutoff: u32) -> Result<MatrixRep> {
    matrix_from_images(op.modes(), cutoff, op.max_raise(), |key| {
        op.apply(&FockVector::basis_state(op.modes(), key.clone()))
    })
}

/// Same as [`to_matrix`] for any linear map given by its basis images.
pub fn matrix_from_images(
    modes: ModeSystem,
    cutoff: u32,
    max_raise: Option<i64>,
    mut image: impl FnMut(&FockKey) -> Result<FockVector>,
) -> Result<MatrixRep> {
    let basis = basis(modes, cutoff);
    let index: BTreeMap<&FockKey, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let n = basis.len();
    let mut entries = vec![vec![Scalar::zero(); n]; n];
    let mut overflow_columns = Vec::new();
    for (j, key) in basis.iter().enumerate() {
        let img = image(key)?;
        let mut overflow = false;
        for (k, c) in img.terms() {
            match index.get(k) {
                Some(&i) => entries[i][j] = c.clone(),
                None => overflow = true,
            }
        }
        if overflow {
            overflow_columns.push(j);
        }
    }
    Ok(MatrixRep { modes, cutoff, basis, entries, overflow_columns, max_raise })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub state: FockKey,
    pub lhs: FockVector,
    pub rhs: FockVector,
}

impl Mismatch {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "state": self.state.to_string(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "on {}: lhs = {}, rhs = {}", self.state, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub cutoff: u32,
    /// States of degree `<= tested_degree` were compared.
    pub tested_degree: i64,
    pub states_tested: usize,
    pub mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Degree range on which a cutoff-`n` matrix of an operator with the given
/// raise is overflow-free.
pub fn safe_degree(cutoff: u32, raise: Option<i64>) -> i64 {
    cutoff as i64 - raise.unwrap_or(0).max(0)
}

/// Compares `lhs` and `rhs` on every basis state of degree
/// `<= cutoff - max_raise(lhs, rhs)`.
pub fn check_identity(lhs: &OperatorExpr, rhs: &OperatorExpr, cutoff: u32) -> Result<IdentityReport> {
    let modes = lhs.modes();
    modes.check_same(&rhs.modes())?;
    let raise = [lhs.max_raise(), rhs.max_raise()].into_iter().flatten().max();
    let top = safe_degree(cutoff, raise);
    let mut report = IdentityReport { cutoff, tested_degree: top, states_tested: 0, mismatch: None };
    if top < 0 {
        return Ok(report);
    }
    for key in basis(modes, top as u32) {
        let v = FockVector::basis_state(modes, key.clone());
        let l = lhs.apply(&v)?;
        let r = rhs.apply(&v)?;
        report.states_tested += 1;
        if l != r {
            report.mismatch = Some(Mismatch { state: key, lhs: l, rhs: r });
            break;
        }
    }
    Ok(report)
}
