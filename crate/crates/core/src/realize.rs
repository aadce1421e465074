//! Concrete realizations on polynomials in `x_1..x_p` tensored with the
//! `2^r`-dimensional spinor space: differential, finite-difference and
//! Jackson operators, with Pauli matrices for the fermionic factor.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::json;

use crate::catalogue::{Base, GenPoly, RepSpec};
use crate::error::{Error, Result};
use crate::fock::{basis, matrix_from_images, safe_degree, to_matrix, FockKey, FockVector, MatrixRep};
use crate::linalg::{self, Matrix};
use crate::qheis::QWeylElement;
use crate::scalar::{rational_pow, Rational, Scalar};
use crate::verify::{Check, Discrepancy};
use crate::weyl::{Letter, ModeSystem, WeylElement};

/// Polynomial-valued spinor: `(exponents, spinor index) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpinorPoly {
    terms: BTreeMap<(Vec<u32>, usize), Scalar>,
}

impl SpinorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exps: Vec<u32>, spin: usize, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, spin, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u32>, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, spin: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((exps, spin)) {
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

    fn add_scaled(&mut self, other: &SpinorPoly, c: &Scalar) {
        for ((e, s), v) in &other.terms {
            self.add_term(e.clone(), *s, c * v);
        }
    }

    /// Total polynomial degree of each term.
    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|(e, _)| e.iter().sum())
    }
}

fn var_missing(i: usize, e: &[u32]) -> Error {
    Error::ModeIndex { index: i, modes: format!("{} variables", e.len()) }
}

/// Operators on [`SpinorPoly`].
#[derive(Clone, Debug, PartialEq)]
pub enum RealOp {
    Const(Scalar),
    /// Multiplication by `x_i`.
    Mult(usize),
    /// `d/dx_i`.
    Partial(usize),
    /// `f(x_i) -> f(x_i + delta)`.
    Shift(usize, Rational),
    /// `(f(x_i + delta) - f(x_i)) / delta`.
    DPlus(usize, Rational),
    /// `(f(x_i) - f(x_i - delta)) / delta`.
    DMinus(usize, Rational),
    /// `(f(q x_i) - f(x_i)) / (x_i (q - 1))`.
    Jackson(usize, Rational),
    /// Matrix on the spinor index.
    Spin(Matrix),
    Sum(Vec<RealOp>),
    /// Rightmost factor acts first.
    Product(Vec<RealOp>),
    Scale(Scalar, Box<RealOp>),
}

fn map_var(f: &SpinorPoly, i: usize, mut img: impl FnMut(u32) -> Vec<(u32, Scalar)>) -> Result<SpinorPoly> {
    let mut out = SpinorPoly::zero();
    for ((e, s), c) in f.terms() {
        let k = *e.get(i).ok_or_else(|| var_missing(i, e))?;
        for (j, v) in img(k) {
            let mut e2 = e.clone();
            e2[i] = j;
            out.add_term(e2, *s, c * &v);
        }
    }
    Ok(out)
}

/// Coefficients of `(x + d)^k`.
fn shifted_power(k: u32, d: &Rational) -> Vec<(u32, Scalar)> {
    let mut out = Vec::new();
    let mut binom = Rational::one();
    for j in 0..=k {
        // C(k, j) d^j x^{k-j}
        out.push((k - j, Scalar::from_rational(&binom * d.pow(j as i32))));
        binom = binom * Rational::from_integer((k - j).into()) / Rational::from_integer((j + 1).into());
    }
    out
}

fn difference(k: u32, d: &Rational) -> Result<Vec<(u32, Scalar)>> {
    if d.is_zero() {
        return Err(Error::DeltaZero);
    }
    let inv = Scalar::from_rational(d.recip());
    Ok(shifted_power(k, d).into_iter().filter(|(j, _)| *j != k).map(|(j, c)| (j, c * inv.clone())).collect())
}

impl RealOp {
    pub fn apply(&self, f: &SpinorPoly) -> Result<SpinorPoly> {
        match self {
            RealOp::Const(c) => {
                let mut out = SpinorPoly::zero();
                out.add_scaled(f, c);
                Ok(out)
            }
            RealOp::Mult(i) => map_var(f, *i, |k| vec![(k + 1, Scalar::one())]),
            RealOp::Partial(i) => {
                map_var(f, *i, |k| if k == 0 { vec![] } else { vec![(k - 1, Scalar::from_int(k as i64))] })
            }
            RealOp::Shift(i, d) => map_var(f, *i, |k| shifted_power(k, d)),
            RealOp::DPlus(i, d) => {
                let terms: Result<Vec<_>> = (0..=f.degrees().max().unwrap_or(0)).map(|k| difference(k, d)).collect();
                let terms = terms?;
                map_var(f, *i, |k| terms[k as usize].clone())
            }
            RealOp::DMinus(i, d) => {
                // Dminus f(x) = D_{-d} f applied to the same polynomial
                let neg = -d.clone();
                RealOp::DPlus(*i, neg).apply(f)
            }
            RealOp::Jackson(i, q) => {
                if q.is_one() {
                    return Err(Error::QEqualsOne);
                }
                let mut out = SpinorPoly::zero();
                for ((e, s), c) in f.terms() {
                    let k = *e.get(*i).ok_or_else(|| var_missing(*i, e))?;
                    if k == 0 {
                        continue;
                    }
                    // (q^k x^k - x^k) / (x (q - 1))
                    let coeff = (rational_pow(q, k as i64)? - Rational::one()) / (q - Rational::one());
                    let mut e2 = e.clone();
                    e2[*i] = k - 1;
                    out.add_term(e2, *s, c * &Scalar::from_rational(coeff));
                }
                Ok(out)
            }
            RealOp::Spin(m) => {
                let mut out = SpinorPoly::zero();
                for ((e, s), c) in f.terms() {
                    for (row, r) in m.iter().enumerate() {
                        if !r[*s].is_zero() {
                            out.add_term(e.clone(), row, c * &r[*s]);
                        }
                    }
                }
                Ok(out)
            }
            RealOp::Sum(items) => {
                let mut out = SpinorPoly::zero();
                for x in items {
                    out.add_scaled(&x.apply(f)?, &Scalar::one());
                }
                Ok(out)
            }
            RealOp::Product(items) => {
                let mut cur = f.clone();
                for x in items.iter().rev() {
                    cur = x.apply(&cur)?;
                }
                Ok(cur)
            }
            RealOp::Scale(c, x) => {
                let mut out = SpinorPoly::zero();
                out.add_scaled(&x.apply(f)?, c);
                Ok(out)
            }
        }
    }

    pub fn scale(self, c: Scalar) -> Self {
        RealOp::Scale(c, Box::new(self))
    }

    fn one() -> Self {
        RealOp::Const(Scalar::one())
    }

    /// `x (1 - delta Dminus)`, equal to `x e^{-delta d/dx}`.
    pub fn translated_x(i: usize, delta: &Rational) -> Self {
        RealOp::Product(vec![
            RealOp::Mult(i),
            RealOp::Sum(vec![
                RealOp::one(),
                RealOp::DMinus(i, delta.clone()).scale(Scalar::from_rational(-delta.clone())),
            ]),
        ])
    }
}

/// Jordan-Wigner Pauli matrices for `r` fermionic modes.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordMatrices {
    pub r: usize,
    /// Annihilators `sigma0 x .. x sigma0 x sigma+ x 1 x .. x 1`.
    pub a_f: Vec<Matrix>,
    /// Creators, with `sigma-` in place of `sigma+`.
    pub b_f: Vec<Matrix>,
    /// Spinor index -> (theta occupation mask, sign of the Fock state).
    to_mask: Vec<(u32, i64)>,
    from_mask: BTreeMap<u32, (usize, i64)>,
}

fn kron(x: &Matrix, y: &Matrix) -> Matrix {
    let (n, m) = (x.len(), y.len());
    let mut out = linalg::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            if x[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &x[i][j] * &y[k][l];
                }
            }
        }
    }
    out
}

fn small(rows: [[i64; 2]; 2]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect()
}

pub fn sigma_plus() -> Matrix {
    small([[0, 1], [0, 0]])
}

pub fn sigma_minus() -> Matrix {
    small([[0, 0], [1, 0]])
}

pub fn sigma_zero() -> Matrix {
    small([[1, 0], [0, -1]])
}

impl CliffordMatrices {
    pub fn new(r: usize) -> Self {
        let factor = |i: usize, mid: Matrix| {
            let mut m = linalg::identity(1);
            for j in 0..r {
                let f = match j.cmp(&i) {
                    std::cmp::Ordering::Less => sigma_zero(),
                    std::cmp::Ordering::Equal => mid.clone(),
                    std::cmp::Ordering::Greater => linalg::identity(2),
                };
                m = kron(&m, &f);
            }
            m
        };
        let a_f: Vec<Matrix> = (0..r).map(|i| factor(i, sigma_plus())).collect();
        let b_f: Vec<Matrix> = (0..r).map(|i| factor(i, sigma_minus())).collect();
        let dim = 1usize << r;
        let mut to_mask = vec![(0, 0); dim];
        let mut from_mask = BTreeMap::new();
        for mask in 0..dim as u32 {
            // theta_{i1} .. theta_{ik} e_0 with i1 < .. < ik
            let mut v = vec![Scalar::zero(); dim];
            v[0] = Scalar::one();
            for i in (0..r).rev().filter(|i| mask & (1 << i) != 0) {
                v = b_f[i]
                    .iter()
                    .map(|row| row.iter().zip(&v).fold(Scalar::zero(), |acc, (x, y)| acc + x * y))
                    .collect();
            }
            let (j, c) = v.iter().enumerate().find(|(_, c)| !c.is_zero()).expect("nonzero spinor");
            let sign = if *c == Scalar::one() { 1 } else { -1 };
            to_mask[j] = (mask, sign);
            from_mask.insert(mask, (j, sign));
        }
        CliffordMatrices { r, a_f, b_f, to_mask, from_mask }
    }

    pub fn dim(&self) -> usize {
        1 << self.r
    }

    pub fn to_fock(&self, modes: ModeSystem, f: &SpinorPoly) -> FockVector {
        let mut out = FockVector::zero(modes);
        for ((e, s), c) in f.terms() {
            let (mask, sign) = self.to_mask[*s];
            out.add_term(FockKey { b: e.clone(), theta: mask }, c * &Scalar::from_int(sign));
        }
        out
    }

    pub fn from_fock(&self, key: &FockKey) -> SpinorPoly {
        let (j, sign) = self.from_mask[&key.theta];
        SpinorPoly::monomial(key.b.clone(), j, Scalar::from_int(sign))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    Differential,
    FiniteDifference,
    Jackson,
}

impl FromStr for Realization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diff" | "differential" => Ok(Realization::Differential),
            "fd" | "finite_difference" => Ok(Realization::FiniteDifference),
            "jackson" => Ok(Realization::Jackson),
            other => Err(Error::Parse(format!("unknown realization {other:?}"))),
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Differential => "differential",
            Realization::FiniteDifference => "finite_difference",
            Realization::Jackson => "jackson",
        })
    }
}

/// Generators of `rep` realized by `kind`, with the Pauli factor they use.
pub struct Realized {
    pub modes: ModeSystem,
    pub kind: Realization,
    pub clifford: CliffordMatrices,
    pub generators: Vec<(String, RealOp)>,
}

fn letter_op(l: Letter, rep: &RepSpec, kind: Realization, cl: &CliffordMatrices) -> RealOp {
    match (l, kind) {
        (Letter::B(i), Realization::FiniteDifference) => match &rep.steps[i] {
            Some(d) => RealOp::translated_x(i, d),
            None => RealOp::Mult(i),
        },
        (Letter::A(i), Realization::FiniteDifference) => match &rep.steps[i] {
            Some(d) => RealOp::DPlus(i, d.clone()),
            None => RealOp::Partial(i),
        },
        (Letter::B(i), _) => RealOp::Mult(i),
        (Letter::A(i), _) => RealOp::Partial(i),
        (Letter::Theta(i), _) => RealOp::Spin(cl.b_f[i].clone()),
        (Letter::DTheta(i), _) => RealOp::Spin(cl.a_f[i].clone()),
    }
}

fn realize_weyl(w: &WeylElement, rep: &RepSpec, kind: Realization, cl: &CliffordMatrices) -> RealOp {
    RealOp::Sum(
        w.terms()
            .map(|(m, c)| {
                RealOp::Product(m.letters().into_iter().map(|l| letter_op(l, rep, kind, cl)).collect()).scale(c.clone())
            })
            .collect(),
    )
}

fn realize_quantum(w: &QWeylElement) -> RealOp {
    RealOp::Sum(
        w.terms()
            .map(|(&(k, m), c)| {
                let mut word = vec![RealOp::Mult(0); k as usize];
                word.extend(std::iter::repeat_n(RealOp::Jackson(0, w.q().clone()), m as usize));
                RealOp::Product(word).scale(c.clone())
            })
            .collect(),
    )
}

pub fn realize(rep: &RepSpec, kind: Realization) -> Result<Realized> {
    let translated = rep.steps.iter().any(Option::is_some);
    let quantum = rep.generators.iter().any(|g| matches!(g.base, Base::Quantum(_)));
    match kind {
        Realization::Differential if translated => {
            return Err(Error::Unsupported(format!("{} is translated; use the finite-difference realization", rep.id)))
        }
        Realization::FiniteDifference if !translated => {
            return Err(Error::Unsupported(format!("{} has no translation step (set delta)", rep.id)))
        }
        Realization::Jackson if !quantum || rep.params.contains_key("delta") => {
            return Err(Error::Unsupported("the Jackson realization needs sl2q without delta".into()))
        }
        Realization::Differential | Realization::FiniteDifference if quantum => {
            return Err(Error::Unsupported("quantum families only have the Jackson realization".into()))
        }
        _ => {}
    }
    let cl = CliffordMatrices::new(rep.modes.fermions);
    let generators = rep
        .generators
        .iter()
        .map(|g| {
            let op = match &g.base {
                Base::Weyl(w) => realize_weyl(w, rep, kind, &cl),
                Base::Quantum(w) => realize_quantum(w),
            };
            (g.name.clone(), op)
        })
        .collect();
    Ok(Realized { modes: rep.modes, kind, clifford: cl, generators })
}

impl Realized {
    pub fn image(&self, op: &RealOp, key: &FockKey) -> Result<FockVector> {
        Ok(self.clifford.to_fock(self.modes, &op.apply(&self.clifford.from_fock(key))?))
    }

    pub fn op(&self, name: &str) -> Result<&RealOp> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, op)| op)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// Matrices of the realized generators on monomials (x spinors) of total
/// degree `<= n`, in the Fock basis order.
pub fn realize_matrix(rep: &RepSpec, kind: Realization, n: u32) -> Result<Vec<(String, MatrixRep)>> {
    let r = realize(rep, kind)?;
    let mut out = Vec::new();
    for ((name, op), g) in r.generators.iter().zip(&rep.generators) {
        let m = matrix_from_images(rep.modes, n, g.op.max_raise(), |k| r.image(op, k))?;
        out.push((name.clone(), m));
    }
    Ok(out)
}

/// Matrix of one generator, abstract (`kind = None`) or realized. The
/// cutoff defaults to the top degree of the invariant space when there is one.
pub fn generator_matrix(rep: &RepSpec, gen: &str, kind: Option<Realization>, cutoff: Option<u32>) -> Result<MatrixRep> {
    let g = rep.generator(gen)?;
    let cutoff =
        cutoff.or_else(|| rep.invariant_space.as_ref().map(|s| s.max_degree())).unwrap_or_else(|| rep.default_cutoff());
    let Some(kind) = kind else {
        return to_matrix(&g.op, cutoff);
    };
    let r = realize(rep, kind)?;
    let op = r.op(gen)?;
    matrix_from_images(rep.modes, cutoff, g.op.max_raise(), |k| r.image(op, k))
}

/// Realized generators agree with the abstract Fock operators on every
/// state of degree `<= n` (full images, no truncation).
pub fn cross_check(rep: &RepSpec, kind: Realization, n: u32) -> Result<Check> {
    let name = format!("{kind} realization of {}", rep.id);
    let r = realize(rep, kind)?;
    for key in basis(rep.modes, n) {
        for ((gname, op), g) in r.generators.iter().zip(&rep.generators) {
            let lhs = r.image(op, &key)?;
            let rhs = g.op.apply(&FockVector::basis_state(rep.modes, key.clone()))?;
            if lhs != rhs {
                let w = json!({
                    "generator": gname,
                    "state": key.to_string(),
                    "realized": lhs.to_json(),
                    "abstract": rhs.to_json(),
                });
                return Ok(Check::fail(name, w));
            }
        }
    }
    Ok(Check::pass(name))
}

fn sc(r: &Rational) -> Scalar {
    Scalar::from_rational(r.clone())
}

fn prod(items: Vec<RealOp>) -> RealOp {
    RealOp::Product(items)
}

fn sum(items: Vec<RealOp>) -> RealOp {
    RealOp::Sum(items)
}

fn c(x: Scalar) -> RealOp {
    RealOp::Const(x)
}

/// Hand-written realized forms for `rep` under `kind`, keyed by a label
/// and the generator they should equal.
pub fn displayed(rep: &RepSpec, kind: Realization) -> Result<Vec<(String, String, RealOp)>> {
    let param = |k: &str| rep.params.get(k).cloned().ok_or_else(|| Error::MissingParam(k.to_string()));
    let half = Scalar::frac(1, 2);
    let x = || RealOp::Mult(0);
    let dx = || RealOp::Partial(0);
    let mut out = Vec::new();
    let mut push = |label: &str, gen: &str, op: RealOp| out.push((label.to_string(), gen.to_string(), op));
    match (rep.id.as_str(), kind) {
        ("sl2_standard", Realization::Differential) => {
            let n = sc(&param("n")?);
            push("J+ = x^2 d - n x", "J+", sum(vec![prod(vec![x(), x(), dx()]), x().scale(-n.clone())]));
            push("J0 = x d - n/2", "J0", sum(vec![prod(vec![x(), dx()]), c(-(&n * &half))]));
            push("J- = d", "J-", dx());
        }
        ("sl2_translated", Realization::FiniteDifference) => {
            let n = sc(&param("n")?);
            let d = param("delta")?;
            let ds = sc(&d);
            let back = || RealOp::Shift(0, -d.clone());
            let dm = || RealOp::DMinus(0, d.clone());
            let inv = sc(&d.recip());
            // x (x/delta - 1) e^{-delta d} (1 - n - e^{-delta d})
            let jp_exp = prod(vec![
                x(),
                sum(vec![x().scale(inv.clone()), c(-Scalar::one())]),
                back(),
                sum(vec![c(Scalar::one() - n.clone()), back().scale(-Scalar::one())]),
            ]);
            push("J+ = x (x/delta - 1) e^{-delta d} (1 - n - e^{-delta d})", "J+", jp_exp);
            // x/delta (1 - e^{-delta d}) - n/2
            let j0_exp = sum(vec![
                prod(vec![x().scale(inv.clone()), sum(vec![c(Scalar::one()), back().scale(-Scalar::one())])]),
                c(-(&n * &half)),
            ]);
            push("J0 = x/delta (1 - e^{-delta d}) - n/2", "J0", j0_exp);
            let jm_exp = sum(vec![RealOp::Shift(0, d.clone()), c(-Scalar::one())]).scale(inv.clone());
            push("J- = (e^{delta d} - 1)/delta", "J-", jm_exp);
            // x (1 - x/delta) (delta^2 Dm Dm - (n+1) delta Dm + n)
            let jp_diff = prod(vec![
                x(),
                sum(vec![c(Scalar::one()), x().scale(-inv)]),
                sum(vec![
                    prod(vec![dm(), dm()]).scale(&ds * &ds),
                    dm().scale(-(&(&n + &Scalar::one()) * &ds)),
                    c(n.clone()),
                ]),
            ]);
            push("J+ = x (1 - x/delta) (delta^2 D- D- - (n+1) delta D- + n)", "J+", jp_diff);
            push("J0 = x D- - n/2", "J0", sum(vec![prod(vec![x(), dm()]), c(-(&n * &half))]));
            push("J- = D+", "J-", RealOp::DPlus(0, d));
        }
        ("sl2_metaplectic", Realization::Differential) => {
            push("J+ = d^2 / 2", "J+", prod(vec![dx(), dx()]).scale(half.clone()));
            push("J0 = -(x d - 1/2)/2", "J0", sum(vec![prod(vec![x(), dx()]), c(-half.clone())]).scale(-half.clone()));
            push("J- = x^2 / 2", "J-", prod(vec![x(), x()]).scale(half));
        }
        ("sl2_metaplectic", Realization::FiniteDifference) => {
            let d = param("delta")?;
            let ds = sc(&d);
            let dp = || RealOp::DPlus(0, d.clone());
            let dm = || RealOp::DMinus(0, d.clone());
            push("J+ = D+^2 / 2", "J+", prod(vec![dp(), dp()]).scale(half.clone()));
            push("J0 = -(x D- - 1/2)/2", "J0", sum(vec![prod(vec![x(), dm()]), c(-half.clone())]).scale(-half.clone()));
            let tail = sum(vec![
                c(Scalar::one()),
                dm().scale(-(&Scalar::from_int(2) * &ds)),
                prod(vec![dm(), dm()]).scale(-(&ds * &ds)),
            ]);
            let jm = prod(vec![x(), sum(vec![x(), c(-ds.clone())]), tail]).scale(half);
            push("J- = x (x - delta) (1 - 2 delta D- - delta^2 D-^2) / 2", "J-", jm);
        }
        ("osp22", Realization::Differential) => {
            let n = sc(&param("n")?);
            let cl = CliffordMatrices::new(1);
            let sp = || RealOp::Spin(cl.a_f[0].clone());
            let sm = || RealOp::Spin(cl.b_f[0].clone());
            let num = || prod(vec![sm(), sp()]);
            push(
                "T+ = x^2 d - n x + x s-s+",
                "T+",
                sum(vec![prod(vec![x(), x(), dx()]), x().scale(-n.clone()), prod(vec![x(), num()])]),
            );
            push(
                "T0 = x d - n/2 + s-s+/2",
                "T0",
                sum(vec![prod(vec![x(), dx()]), c(-(&n * &half)), num().scale(half.clone())]),
            );
            push("T- = d", "T-", dx());
            push("J = -n/2 - s-s+/2", "J", sum(vec![c(-(&n * &half)), num().scale(-half)]));
            push("Q1 = s+", "Q1", sp());
            push("Q2 = x s+", "Q2", prod(vec![x(), sp()]));
            push("Qb1 = (x d - n) s-", "Qb1", prod(vec![sum(vec![prod(vec![x(), dx()]), c(-n)]), sm()]));
            push("Qb2 = -d s-", "Qb2", prod(vec![dx(), sm()]).scale(-Scalar::one()));
        }
        _ => {}
    }
    Ok(out)
}

/// Compares the hand-written realized forms with the realization obtained by
/// substitution, on all states of degree `<= n`.
pub fn realized_discrepancies(rep: &RepSpec, kind: Realization, n: u32) -> Result<Vec<Discrepancy>> {
    let r = realize(rep, kind)?;
    let mut out = Vec::new();
    for (label, gen, op) in displayed(rep, kind)? {
        let built = r.op(&gen)?;
        let mut witness = None;
        for key in basis(rep.modes, n) {
            let (lhs, rhs) = (r.image(&op, &key)?, r.image(built, &key)?);
            if lhs != rhs {
                witness = Some(json!({"state": key.to_string(), "displayed": lhs.to_json(), "built": rhs.to_json()}));
                break;
            }
        }
        out.push(Discrepancy { subject: format!("{kind} form {label}"), agrees: witness.is_none(), witness });
    }
    Ok(out)
}

/// Relation claims checked on the realized operators, on states of degree
/// `<= cutoff - R len` for relations of word length `len`.
pub fn realized_relations(rep: &RepSpec, kind: Realization, cutoff: u32) -> Result<Vec<Check>> {
    let r = realize(rep, kind)?;
    let raise = rep.max_raise();
    let apply_poly = |p: &GenPoly, f: &SpinorPoly| -> Result<SpinorPoly> {
        let mut out = SpinorPoly::zero();
        for (c, word) in &p.terms {
            let mut cur = f.clone();
            for name in word.iter().rev() {
                cur = r.op(name)?.apply(&cur)?;
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    };
    let mut out = Vec::new();
    for rel in &rep.relations {
        let name = format!("{kind} relation {}: {}", rel.group, rel.label);
        let len = rel.lhs.degree().max(rel.rhs.degree()) as i64;
        let top = safe_degree(cutoff, Some(raise * len));
        let mut check = Check::pass(&name);
        let keys = if top < 0 { Vec::new() } else { basis(rep.modes, top as u32) };
        for key in keys {
            let f = r.clifford.from_fock(&key);
            let (l, rr) = (apply_poly(&rel.lhs, &f)?, apply_poly(&rel.rhs, &f)?);
            if l != rr {
                let (l, rr) = (r.clifford.to_fock(rep.modes, &l), r.clifford.to_fock(rep.modes, &rr));
                check = Check::fail(&name, json!({"state": key.to_string(), "lhs": l.to_json(), "rhs": rr.to_json()}));
                break;
            }
        }
        out.push(check);
    }
    Ok(out)
}

/// Every realized generator maps homogeneous polynomials of each degree
/// `<= n` to homogeneous polynomials of the same degree.
pub fn preserves_degree(rep: &RepSpec, kind: Realization, n: u32) -> Result<bool> {
    let r = realize(rep, kind)?;
    for key in basis(rep.modes, n) {
        let f = r.clifford.from_fock(&key);
        let d: u32 = key.b.iter().sum();
        for (_, op) in &r.generators {
            if op.apply(&f)?.degrees().any(|e| e != d) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{build, parse_params};

    fn rep(id: &str, ps: &[&str]) -> RepSpec {
        build(id, &parse_params(ps).unwrap()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> SpinorPoly {
        let mut p = SpinorPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], 0, Scalar::from_int(c));
        }
        p
    }

    #[test]
    fn differential_sl2_on_quadratics() {
        let r = realize(&rep("sl2_standard", &["n=2"]), Realization::Differential).unwrap();
        let jp = r.op("J+").unwrap();
        assert_eq!(jp.apply(&poly(&[1])).unwrap(), poly(&[0, -2]));
        assert_eq!(jp.apply(&poly(&[0, 1])).unwrap(), poly(&[0, 0, -1]));
        assert!(jp.apply(&poly(&[0, 0, 1])).unwrap().is_zero());
    }

    #[test]
    fn translated_x_shifts_argument() {
        let d = Rational::new(1.into(), 3.into());
        // x (x - 1/3)^2 for f = x^2
        let got = RealOp::translated_x(0, &d).apply(&poly(&[0, 0, 1])).unwrap();
        let mut want = SpinorPoly::zero();
        want.add_term(vec![3], 0, Scalar::one());
        want.add_term(vec![2], 0, Scalar::frac(-2, 3));
        want.add_term(vec![1], 0, Scalar::frac(1, 9));
        assert_eq!(got, want);
    }

    #[test]
    fn pauli_anticommutators() {
        let cl = CliffordMatrices::new(2);
        let anti =
            |x: &Matrix, y: &Matrix| linalg::mat_add(&linalg::matmul(x, y), &linalg::matmul(y, x), &Scalar::one());
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { linalg::identity(4) } else { linalg::zeros(4, 4) };
                assert_eq!(anti(&cl.a_f[i], &cl.b_f[j]), want);
                assert!(linalg::is_zero_matrix(&anti(&cl.a_f[i], &cl.a_f[j])));
            }
        }
    }

    #[test]
    fn cross_checks() {
        let cases = [
            ("sl2_standard", vec!["n=3"], Realization::Differential),
            ("sl2_translated", vec!["n=3", "delta=1/2"], Realization::FiniteDifference),
            ("osp22", vec!["n=2"], Realization::Differential),
            ("sl2q", vec!["alpha=2", "q=3/5"], Realization::Jackson),
        ];
        for (id, ps, kind) in cases {
            let r = rep(id, &ps);
            let c = cross_check(&r, kind, 4).unwrap();
            assert!(c.passed(), "{id}: {:?}", c.witness);
        }
    }

    #[test]
    fn osp22_relations_hold_in_matrix_form() {
        let checks = realized_relations(&rep("osp22", &["n=2"]), Realization::Differential, 6).unwrap();
        assert_eq!(checks.len(), 32);
        assert!(checks.iter().all(Check::passed));
    }

    #[test]
    fn osp22_pauli_forms_agree() {
        let ds = realized_discrepancies(&rep("osp22", &["n=2"]), Realization::Differential, 4).unwrap();
        assert_eq!(ds.len(), 8);
        assert!(ds.iter().all(|d| d.agrees), "{ds:?}");
    }
}
