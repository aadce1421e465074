//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fockalg::catalogue::{build, parse_params, RepSpec};
use fockalg::fock::{FockKey, FockVector};
use fockalg::linalg::Matrix;
use fockalg::weyl::{Letter, ModeSystem, WeylElement, WeylMonomial};
use fockalg::{Rational, Scalar};
use num_traits::{One, Zero};

pub fn rep(id: &str, ps: &[&str]) -> RepSpec {
    build(id, &parse_params(ps).unwrap()).unwrap_or_else(|e| panic!("{id} {ps:?}: {e}"))
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rank(l: &Letter) -> (u8, usize, u8) {
    match *l {
        Letter::B(i) => (0, i, 0),
        Letter::A(i) => (0, i, 1),
        Letter::Theta(j) => (1, j, 0),
        Letter::DTheta(j) => (2, j, 0),
    }
}

fn is_odd(l: &Letter) -> bool {
    matches!(l, Letter::Theta(_) | Letter::DTheta(_))
}

/// Normal orders a word by swapping one adjacent out-of-order pair at a time,
/// using only `[a_i, b_j] = delta_ij`, `{dtheta_i, theta_j} = delta_ij` and
/// nilpotency of the odd letters.
pub fn rewrite(modes: ModeSystem, word: Vec<Letter>) -> WeylElement {
    let mut done: BTreeMap<Vec<Letter>, i64> = BTreeMap::new();
    let mut work: Vec<(Vec<Letter>, i64)> = vec![(word, 1)];
    while let Some((w, c)) = work.pop() {
        if w.windows(2).any(|p| p[0] == p[1] && is_odd(&p[0])) {
            continue;
        }
        let Some(pos) = w.windows(2).position(|p| rank(&p[0]) > rank(&p[1])) else {
            *done.entry(w).or_insert(0) += c;
            continue;
        };
        let (x, y) = (w[pos], w[pos + 1]);
        let mut swapped = w.clone();
        swapped.swap(pos, pos + 1);
        let both_odd = is_odd(&x) && is_odd(&y);
        work.push((swapped, if both_odd { -c } else { c }));
        let contracts = matches!((x, y), (Letter::A(i), Letter::B(j)) if i == j)
            || matches!((x, y), (Letter::DTheta(i), Letter::Theta(j)) if i == j);
        if contracts {
            let mut shorter = w[..pos].to_vec();
            shorter.extend_from_slice(&w[pos + 2..]);
            work.push((shorter, c));
        }
    }
    let mut out = WeylElement::zero(modes);
    for (w, c) in done {
        if c == 0 {
            continue;
        }
        let mut m = WeylMonomial::identity(modes);
        for l in w {
            match l {
                Letter::B(i) => m.b[i] += 1,
                Letter::A(i) => m.a[i] += 1,
                Letter::Theta(j) => m.theta |= 1 << j,
                Letter::DTheta(j) => m.dtheta |= 1 << j,
            }
        }
        out.add_term(m, Scalar::from_int(c));
    }
    out
}

/// Letters of `b^k a^m` for mode `i`.
pub fn boson_word(i: usize, k: u32, m: u32) -> Vec<Letter> {
    let mut w = vec![Letter::B(i); k as usize];
    w.extend(vec![Letter::A(i); m as usize]);
    w
}

/// Letters of the canonical fermionic monomial with the given masks.
pub fn fermion_word(theta: u32, dtheta: u32) -> Vec<Letter> {
    let mut w: Vec<Letter> = (0..32).filter(|j| theta & (1 << j) != 0).map(Letter::Theta).collect();
    w.extend((0..32).filter(|j| dtheta & (1 << j) != 0).map(Letter::DTheta));
    w
}

/// q-normal order of a word in `a` (true) and `b` (false) with
/// `a b = q b a + 1`, as `(k, m) -> coefficient of b^k a^m`.
pub fn q_rewrite(q: &Rational, word: Vec<bool>) -> BTreeMap<(u32, u32), Rational> {
    let mut out = BTreeMap::new();
    let mut work = vec![(word, Rational::one())];
    while let Some((w, c)) = work.pop() {
        let Some(pos) = w.windows(2).position(|p| p[0] && !p[1]) else {
            let k = w.iter().filter(|x| !**x).count() as u32;
            *out.entry((k, w.len() as u32 - k)).or_insert_with(Rational::zero) += c;
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(pos, pos + 1);
        work.push((swapped, &c * q));
        let mut shorter = w[..pos].to_vec();
        shorter.extend_from_slice(&w[pos + 2..]);
        work.push((shorter, c));
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Applies a word of letters (rightmost first) to a basis state, letter by
/// letter, from the defining action on the Fock space.
pub fn apply_word(modes: ModeSystem, word: &[Letter], key: &FockKey) -> FockVector {
    let mut state = Some((Scalar::one(), key.clone()));
    for l in word.iter().rev() {
        let Some((c, mut k)) = state else { break };
        state = match *l {
            Letter::B(i) => {
                k.b[i] += 1;
                Some((c, k))
            }
            Letter::A(i) => {
                if k.b[i] == 0 {
                    None
                } else {
                    let f = Scalar::from_int(k.b[i] as i64);
                    k.b[i] -= 1;
                    Some((c * f, k))
                }
            }
            Letter::Theta(j) | Letter::DTheta(j) => {
                let occupied = k.theta & (1 << j) != 0;
                let creating = matches!(l, Letter::Theta(_));
                if occupied == creating {
                    None
                } else {
                    let below = (k.theta & ((1u32 << j) - 1)).count_ones();
                    k.theta ^= 1 << j;
                    let s = if below % 2 == 1 { -Scalar::one() } else { Scalar::one() };
                    Some((c * s, k))
                }
            }
        };
    }
    let mut out = FockVector::zero(modes);
    if let Some((c, k)) = state {
        out.add_term(k, c);
    }
    out
}

/// Determinant by cofactor expansion.
pub fn det(m: &Matrix) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Matrix = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor);
        if j % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

/// Evaluates a coefficient list (lowest degree first) at `t`.
pub fn eval_poly(c: &[Scalar], t: &Scalar) -> Scalar {
    c.iter().rev().fold(Scalar::zero(), |acc, x| &(&acc * t) + x)
}

/// Number of multi-indices in `{0..}^p` with `sum w_i alpha_i <= bound`.
pub fn count_weighted(weights: &[u32], bound: u32) -> usize {
    match weights.split_first() {
        None => 1,
        Some((w, rest)) => (0..=bound / w).map(|a| count_weighted(rest, bound - a * w)).sum(),
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
