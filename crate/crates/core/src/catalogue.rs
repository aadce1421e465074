//! Catalogue of representations: generators, relation tables, Casimir values
//! and invariant subspaces for every family.
//!
//! Transformed families are obtained by evaluating the base polynomial
//! generators on a transformed canonical pair; closed forms written out by
//! hand are kept only as [`Displayed`] cross-checks.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fock::{FockKey, OperatorExpr};
use crate::qheis::{self, Embedding, QPair, QWeylElement};
use crate::scalar::{as_integer, format_rational, int, rat, rational_pow, Rational, Scalar};
use crate::weyl::{Letter, ModeSystem, Parity, WeylElement};

pub type Params = BTreeMap<String, Rational>;

/// Images of `(a_i, b_i)` under a substitution.
#[derive(Clone, Debug, PartialEq)]
pub struct Pair {
    pub a: OperatorExpr,
    pub b: OperatorExpr,
}

impl Pair {
    pub fn standard(modes: ModeSystem, i: usize) -> Result<Self> {
        Ok(Pair { a: OperatorExpr::Poly(WeylElement::a(modes, i)?), b: OperatorExpr::Poly(WeylElement::b(modes, i)?) })
    }

    /// `a -> (e^{delta a} - 1)/delta`, `b -> b e^{-delta a}`.
    pub fn translated(modes: ModeSystem, i: usize, delta: &Rational) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::DeltaZero);
        }
        let d = Scalar::from_rational(delta.clone());
        let a = OperatorExpr::sum(
            modes,
            vec![OperatorExpr::exp_a(modes, i, d.clone())?, OperatorExpr::constant(modes, -Scalar::one())],
        )?
        .scale(Scalar::from_rational(delta.recip()));
        let b = OperatorExpr::product(
            modes,
            vec![OperatorExpr::Poly(WeylElement::b(modes, i)?), OperatorExpr::exp_a(modes, i, -d)?],
        )?;
        Ok(Pair { a, b })
    }

    fn is_standard(&self) -> bool {
        self.a.as_poly().is_some() && self.b.as_poly().is_some()
    }
}

/// Evaluates a polynomial on substituted bosonic pairs; fermions stay put.
pub fn evaluate(w: &WeylElement, pairs: &[Pair]) -> Result<OperatorExpr> {
    let modes = w.modes();
    if pairs.len() != modes.bosons {
        return Err(Error::ModeIndex { index: pairs.len(), modes: modes.to_string() });
    }
    if pairs.iter().all(Pair::is_standard) {
        return Ok(OperatorExpr::Poly(w.clone()));
    }
    let mut terms = Vec::new();
    for (mono, c) in w.terms() {
        let mut factors = Vec::new();
        let mut fermi = WeylElement::one(modes);
        for letter in mono.letters() {
            match letter {
                Letter::B(i) => factors.push(pairs[i].b.clone()),
                Letter::A(i) => factors.push(pairs[i].a.clone()),
                Letter::Theta(j) => fermi = &fermi * &WeylElement::theta(modes, j)?,
                Letter::DTheta(j) => fermi = &fermi * &WeylElement::dtheta(modes, j)?,
            }
        }
        if mono.fermionic_degree() > 0 {
            factors.push(OperatorExpr::Poly(fermi));
        }
        terms.push(OperatorExpr::product(modes, factors)?.scale(c.clone()));
    }
    OperatorExpr::sum(modes, terms)
}

/// Linear combination of words in generator names; the empty word is the
/// identity.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GenPoly {
    pub terms: Vec<(Scalar, Vec<String>)>,
}

impl GenPoly {
    pub fn gen(name: &str) -> Self {
        GenPoly { terms: vec![(Scalar::one(), vec![name.to_string()])] }
    }

    pub fn constant(c: Scalar) -> Self {
        GenPoly { terms: vec![(c, Vec::new())] }
    }

    pub fn zero() -> Self {
        GenPoly::default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GenPoly { terms: self.terms.iter().map(|(k, w)| (k * c, w.clone())).collect() }
    }

    pub fn add(&self, other: &GenPoly) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        GenPoly { terms }
    }

    pub fn sub(&self, other: &GenPoly) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &GenPoly) -> Self {
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                terms.push((c1 * c2, w));
            }
        }
        GenPoly { terms }
    }

    /// `x y - q y x`.
    pub fn q_commutator(x: &str, y: &str, q: &Scalar) -> Self {
        let (x, y) = (GenPoly::gen(x), GenPoly::gen(y));
        x.mul(&y).sub(&y.mul(&x).scale(q))
    }

    pub fn commutator(x: &str, y: &str) -> Self {
        GenPoly::q_commutator(x, y, &Scalar::one())
    }

    pub fn anticommutator(x: &str, y: &str) -> Self {
        GenPoly::q_commutator(x, y, &-Scalar::one())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().flat_map(|(_, w)| w.iter().map(String::as_str))
    }

    /// Largest word length.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    pub fn to_operator(&self, rep: &RepSpec) -> Result<OperatorExpr> {
        let mut items = Vec::new();
        for (c, word) in &self.terms {
            let factors = word.iter().map(|g| rep.generator(g).map(|g| g.op.clone())).collect::<Result<Vec<_>>>()?;
            items.push(OperatorExpr::product(rep.modes, factors)?.scale(c.clone()));
        }
        OperatorExpr::sum(rep.modes, items)
    }

    /// Polynomial value; `None` unless every generator is polynomial.
    pub fn to_weyl(&self, rep: &RepSpec) -> Result<Option<WeylElement>> {
        let mut out = WeylElement::zero(rep.modes);
        for (c, word) in &self.terms {
            let mut w = WeylElement::constant(rep.modes, c.clone());
            for g in word {
                let Some(p) = &rep.generator(g)?.poly else { return Ok(None) };
                w = w.multiply(p)?;
            }
            out = out.checked_add(&w)?;
        }
        Ok(Some(out))
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                if w.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    w.join(" ")
                } else if *c == -Scalar::one() {
                    format!("-{}", w.join(" "))
                } else {
                    format!("{c} {}", w.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Operator identity `lhs = rhs` claimed for the generators. Claims sharing
/// a `group` are displayed together in one line of a relation table.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationClaim {
    pub group: u32,
    pub label: String,
    pub lhs: GenPoly,
    pub rhs: GenPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirSpec {
    pub label: String,
    pub expr: GenPoly,
    pub expected: Scalar,
    /// Commonly quoted value when it differs from `expected`.
    pub quoted: Option<Scalar>,
}

/// Span of basis states with `sum w_i alpha_i + fermion_weight |beta| <= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSpace {
    pub description: String,
    pub boson_weights: Vec<u32>,
    pub fermion_weight: u32,
    pub bound: u32,
    /// Dimension predicted by a closed formula.
    pub expected_dim: usize,
}

impl InvariantSpace {
    pub fn contains(&self, key: &FockKey) -> bool {
        let w: u32 = key.b.iter().zip(&self.boson_weights).map(|(k, w)| k * w).sum::<u32>()
            + self.fermion_weight * key.theta.count_ones();
        w <= self.bound
    }

    /// Largest total degree of a member state.
    pub fn max_degree(&self) -> u32 {
        let min_w = self.boson_weights.iter().copied().chain((self.fermion_weight > 0).then_some(self.fermion_weight));
        self.bound / min_w.min().unwrap_or(1).max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    /// Closed under commutators.
    Lie,
    /// Closed under graded brackets.
    Super,
    /// Closed under q-deformed relations only.
    Quantum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Claims {
    pub kind: AlgebraKind,
    pub irreducible: bool,
    pub reducible: bool,
    /// Generators that commute pairwise.
    pub abelian: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub op: OperatorExpr,
    /// Polynomial form, when the generator lies in the Weyl algebra.
    pub poly: Option<WeylElement>,
    pub parity: Parity,
    /// Form before the mode pairs are substituted in.
    pub base: Base,
}

/// Untransformed generator, in the algebra the family is written in.
#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    Weyl(WeylElement),
    Quantum(QWeylElement),
}

/// Closed form of a generator as written out by hand.
#[derive(Clone, Debug, PartialEq)]
pub struct Displayed {
    pub generator: String,
    pub op: OperatorExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepSpec {
    pub id: String,
    pub modes: ModeSystem,
    pub params: Params,
    pub generators: Vec<Generator>,
    pub relations: Vec<RelationClaim>,
    pub casimir: Option<CasimirSpec>,
    pub invariant_space: Option<InvariantSpace>,
    /// Generators rewritten in the frame where `invariant_space` is spanned
    /// by standard basis states, when that differs from the defining one.
    pub invariant_frame: Option<Vec<OperatorExpr>>,
    /// Translation step of each bosonic mode, if it is translated.
    pub steps: Vec<Option<Rational>>,
    pub claims: Claims,
    pub displayed: Vec<Displayed>,
}

impl RepSpec {
    pub fn generator(&self, name: &str) -> Result<&Generator> {
        self.generators.iter().find(|g| g.name == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    /// Largest degree raise of a single generator (at least 1).
    pub fn max_raise(&self) -> i64 {
        self.generators.iter().filter_map(|g| g.op.max_raise()).max().unwrap_or(0).max(1)
    }

    /// Cutoff leaving room for words of length two on the invariant space,
    /// or a fixed window when there is none.
    pub fn default_cutoff(&self) -> u32 {
        let r = self.max_raise() as u32;
        match &self.invariant_space {
            Some(s) => (s.max_degree() + 2 * r).max(2 * r + 3),
            None => 8,
        }
    }

    pub fn params_json(&self) -> serde_json::Value {
        self.params.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(format_rational(v)))).collect()
    }
}

/// One catalogue line: id, parameter signature, description.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CatalogueEntry {
    pub id: &'static str,
    pub kind: AlgebraKind,
    pub required: Vec<&'static str>,
    pub optional: Vec<&'static str>,
    pub domain: &'static str,
    pub description: &'static str,
    /// A parameter set that builds.
    pub example: Vec<&'static str>,
}

macro_rules! entry {
    ($id:expr, [$($r:expr),*], [$($o:expr),*], $dom:expr, $desc:expr, [$($e:expr),*]) => {
        CatalogueEntry {
            id: $id,
            kind: kind_of($id),
            required: vec![$($r),*],
            optional: vec![$($o),*],
            domain: $dom,
            description: $desc,
            example: vec![$($e),*],
        }
    };
}

fn kind_of(id: &str) -> AlgebraKind {
    match id {
        "sl2q" => AlgebraKind::Quantum,
        _ if id.starts_with("osp") || id == "gl_super" => AlgebraKind::Super,
        _ => AlgebraKind::Lie,
    }
}

pub fn list_catalogue() -> Vec<CatalogueEntry> {
    vec![
        entry!("sl2_standard", ["n"], [], "n rational", "sl(2) by first-order operators on one boson", ["n=3"]),
        entry!(
            "sl2_translated",
            ["n", "delta"],
            [],
            "delta != 0",
            "sl(2) through the translation-covariant canonical pair",
            ["n=3", "delta=1/2"]
        ),
        entry!("sl2_oscillator", ["n"], [], "n rational", "sl(2) through the oscillator canonical pair", ["n=3"]),
        entry!("sl2_metaplectic", [], ["delta"], "delta != 0", "metaplectic sl(2), quadratic in a and b", []),
        entry!("sl2_clifford", [], [], "", "sl(2) from the two-generator Clifford algebra", []),
        entry!(
            "sl2_vector_field",
            [],
            ["n"],
            "n integer >= 0, default 1",
            "sl(2) by vector fields on two bosons (reducible)",
            ["n=1"]
        ),
        entry!("sl3_fock", ["n"], [], "n rational", "sl(3) on two bosons", ["n=2"]),
        entry!(
            "sl3_translated",
            ["n", "delta1", "delta2"],
            [],
            "delta1, delta2 != 0",
            "sl(3) through translation-covariant pairs",
            ["n=2", "delta1=1", "delta2=-1/3"]
        ),
        entry!("sl3_seven", ["m", "n"], [], "m, n rational", "sl(3) on three bosons (flag manifold)", ["m=1", "n=2"]),
        entry!(
            "gl2_semidirect",
            ["r", "n"],
            ["delta"],
            "r integer >= 1",
            "gl(2) semidirect C^(r+1) on two bosons",
            ["r=2", "n=2"]
        ),
        entry!("glk", ["k", "n"], ["delta"], "k integer >= 2", "gl(k) on k-1 bosons", ["k=3", "n=2"]),
        entry!("osp22", ["n"], [], "n rational", "osp(2,2) on one boson and one fermion", ["n=3"]),
        entry!(
            "osp22_translated",
            ["n", "delta"],
            [],
            "delta != 0",
            "osp(2,2) through the translation-covariant pair",
            ["n=2", "delta=1"]
        ),
        entry!("osp22_metaplectic", [], ["delta"], "delta != 0", "super-metaplectic osp(2,2)", []),
        entry!(
            "gl_super",
            ["k", "r", "n"],
            ["delta"],
            "k, r integers >= 1",
            "gl(k+1|r+1) on k bosons and r fermions",
            ["k=2", "r=1", "n=2"]
        ),
        entry!(
            "sl2q",
            ["alpha", "q"],
            ["delta"],
            "alpha integer, q > 0, q != 1",
            "quantum sl(2) on the q-deformed Heisenberg algebra",
            ["alpha=2", "q=1/2"]
        ),
    ]
}

fn param(params: &Params, name: &str) -> Result<Rational> {
    params.get(name).cloned().ok_or_else(|| Error::MissingParam(name.to_string()))
}

fn bad(name: &str, reason: &str) -> Error {
    Error::BadParam { name: name.to_string(), reason: reason.to_string() }
}

fn int_param(params: &Params, name: &str, min: i64) -> Result<i64> {
    let v = param(params, name)?;
    let k = as_integer(&v).ok_or_else(|| bad(name, "must be an integer"))?;
    if k < min {
        return Err(bad(name, &format!("must be >= {min}")));
    }
    Ok(k)
}

fn delta_param(params: &Params, name: &str) -> Result<Option<Rational>> {
    match params.get(name) {
        None => Ok(None),
        Some(d) if d.is_zero() => Err(Error::DeltaZero),
        Some(d) => Ok(Some(d.clone())),
    }
}

/// Non-negative integer value of `n`, if it is one.
fn fin_dim(n: &Rational) -> Option<u32> {
    as_integer(n).filter(|&k| k >= 0).and_then(|k| u32::try_from(k).ok())
}

/// Shorthand constructors over a fixed mode system.
struct W(ModeSystem);

impl W {
    fn a(&self, i: usize) -> WeylElement {
        WeylElement::a(self.0, i).expect("mode in range")
    }
    fn b(&self, i: usize) -> WeylElement {
        WeylElement::b(self.0, i).expect("mode in range")
    }
    fn th(&self, j: usize) -> WeylElement {
        WeylElement::theta(self.0, j).expect("mode in range")
    }
    fn dth(&self, j: usize) -> WeylElement {
        WeylElement::dtheta(self.0, j).expect("mode in range")
    }
    fn c(&self, c: impl Into<Scalar>) -> WeylElement {
        WeylElement::constant(self.0, c.into())
    }
    fn r(&self, r: &Rational) -> WeylElement {
        self.c(Scalar::from_rational(r.clone()))
    }
}

fn sc(r: &Rational) -> Scalar {
    Scalar::from_rational(r.clone())
}

struct Builder {
    rep: RepSpec,
    pairs: Vec<Pair>,
}

impl Builder {
    fn new(id: &str, modes: ModeSystem, params: &Params, kind: AlgebraKind) -> Result<Self> {
        let pairs = (0..modes.bosons).map(|i| Pair::standard(modes, i)).collect::<Result<_>>()?;
        Ok(Builder {
            rep: RepSpec {
                id: id.to_string(),
                modes,
                params: params.clone(),
                generators: Vec::new(),
                relations: Vec::new(),
                casimir: None,
                invariant_space: None,
                invariant_frame: None,
                steps: vec![None; modes.bosons],
                claims: Claims { kind, irreducible: false, reducible: false, abelian: Vec::new() },
                displayed: Vec::new(),
            },
            pairs,
        })
    }

    /// Uses the translated pair with step `delta[i]` in mode `i`.
    fn translate(&mut self, deltas: &[Rational]) -> Result<()> {
        for (i, d) in deltas.iter().enumerate() {
            self.pairs[i] = Pair::translated(self.rep.modes, i, d)?;
            self.rep.steps[i] = Some(d.clone());
        }
        Ok(())
    }

    fn gen(&mut self, name: &str, base: WeylElement) -> Result<()> {
        let op = evaluate(&base, &self.pairs)?;
        let poly = op.as_poly().cloned();
        let parity = base.parity();
        self.rep.generators.push(Generator { name: name.to_string(), op, poly, parity, base: Base::Weyl(base) });
        Ok(())
    }

    fn q_gen(&mut self, name: &str, base: QWeylElement, pair: &QPair) -> Result<()> {
        let op = base.to_operator(pair)?;
        self.rep.generators.push(Generator {
            name: name.to_string(),
            op,
            poly: None,
            parity: Parity::Even,
            base: Base::Quantum(base),
        });
        Ok(())
    }

    fn rel(&mut self, group: u32, label: &str, lhs: GenPoly, rhs: GenPoly) {
        self.rep.relations.push(RelationClaim { group, label: label.to_string(), lhs, rhs });
    }

    fn displayed(&mut self, generator: &str, op: OperatorExpr) {
        self.rep.displayed.push(Displayed { generator: generator.to_string(), op });
    }

    fn invariant(
        &mut self,
        description: String,
        boson_weights: Vec<u32>,
        fermion_weight: u32,
        bound: u32,
        expected_dim: usize,
    ) {
        self.rep.invariant_space =
            Some(InvariantSpace { description, boson_weights, fermion_weight, bound, expected_dim });
    }

    fn finish(self) -> Result<RepSpec> {
        for rel in &self.rep.relations {
            for name in rel.lhs.names().chain(rel.rhs.names()) {
                self.rep.generator(name)?;
            }
        }
        if let Some(c) = &self.rep.casimir {
            for name in c.expr.names() {
                self.rep.generator(name)?;
            }
        }
        Ok(self.rep)
    }
}

fn g(name: &str) -> GenPoly {
    GenPoly::gen(name)
}

fn comm(x: &str, y: &str) -> GenPoly {
    GenPoly::commutator(x, y)
}

fn acomm(x: &str, y: &str) -> GenPoly {
    GenPoly::anticommutator(x, y)
}

fn half() -> Scalar {
    Scalar::frac(1, 2)
}

pub fn build(id: &str, params: &Params) -> Result<RepSpec> {
    match id {
        "sl2_standard" => sl2_standard(params),
        "sl2_translated" => sl2_translated(params),
        "sl2_oscillator" => sl2_oscillator(params),
        "sl2_metaplectic" => sl2_metaplectic(params),
        "sl2_clifford" => sl2_clifford(params),
        "sl2_vector_field" => sl2_vector_field(params),
        "sl3_fock" => sl3(params, false),
        "sl3_translated" => sl3(params, true),
        "sl3_seven" => sl3_seven(params),
        "gl2_semidirect" => gl2_semidirect(params),
        "glk" => glk(params),
        "osp22" => osp22(params, false),
        "osp22_translated" => osp22(params, true),
        "osp22_metaplectic" => osp22_metaplectic(params),
        "gl_super" => gl_super(params),
        "sl2q" => sl2q(params),
        _ => Err(Error::UnknownRep(id.to_string())),
    }
}

/// Parses `name=value` pairs.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<Params> {
    let mut out = Params::new();
    for item in items {
        let item = item.as_ref();
        let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got {item:?}")))?;
        out.insert(k.trim().to_string(), crate::scalar::parse_rational(v.trim())?);
    }
    Ok(out)
}

fn sl2_base(w: &W, n: &Rational) -> [(&'static str, WeylElement); 3] {
    let (a, b) = (w.a(0), w.b(0));
    [("J+", &(&(&b * &b) * &a) - &(&b * &w.r(n))), ("J0", &(&b * &a) - &w.c(sc(n) * half())), ("J-", a)]
}

fn sl2_relations(bld: &mut Builder) {
    bld.rel(1, "[J0, J+] = J+", comm("J0", "J+"), g("J+"));
    bld.rel(1, "[J0, J-] = -J-", comm("J0", "J-"), g("J-").scale(&-Scalar::one()));
    bld.rel(2, "[J+, J-] = -2 J0", comm("J+", "J-"), g("J0").scale(&Scalar::from_int(-2)));
}

fn sl2_casimir_expr() -> GenPoly {
    acomm("J+", "J-").scale(&half()).sub(&g("J0").mul(&g("J0")))
}

fn sl2_casimir(n: &Rational) -> CasimirSpec {
    let h = sc(n) * half();
    // the often quoted -h(h + 1/2) only agrees at n = 0
    let quoted = -(&h * &(&h + &half()));
    let expected = -(&h * &(&h + &Scalar::one()));
    CasimirSpec {
        label: "1/2 {J+, J-} - J0 J0".into(),
        expr: sl2_casimir_expr(),
        quoted: (quoted != expected).then_some(quoted),
        expected,
    }
}

fn sl2_common(bld: &mut Builder, n: &Rational, irreducible: bool) {
    sl2_relations(bld);
    bld.rep.casimir = Some(sl2_casimir(n));
    if let Some(k) = fin_dim(n) {
        bld.invariant(format!("<1, b, ..., b^{k}>"), vec![1], 0, k, k as usize + 1);
        bld.rep.claims.irreducible = irreducible;
    }
}

fn sl2_standard(params: &Params) -> Result<RepSpec> {
    let n = param(params, "n")?;
    let w = W(ModeSystem::bosonic(1));
    let mut bld = Builder::new("sl2_standard", w.0, params, AlgebraKind::Lie)?;
    for (name, e) in sl2_base(&w, &n) {
        bld.gen(name, e)?;
    }
    sl2_common(&mut bld, &n, true);
    bld.finish()
}

fn sl2_translated(params: &Params) -> Result<RepSpec> {
    let n = param(params, "n")?;
    let delta = delta_param(params, "delta")?.ok_or_else(|| Error::MissingParam("delta".into()))?;
    let w = W(ModeSystem::bosonic(1));
    let m = w.0;
    let mut bld = Builder::new("sl2_translated", m, params, AlgebraKind::Lie)?;
    bld.translate(std::slice::from_ref(&delta))?;
    for (name, e) in sl2_base(&w, &n) {
        bld.gen(name, e)?;
    }
    sl2_common(&mut bld, &n, true);

    let d = sc(&delta);
    let one = || OperatorExpr::identity(m);
    let e_minus = || OperatorExpr::exp_a(m, 0, -d.clone()).expect("mode 0");
    let b_over_d = OperatorExpr::Poly(w.b(0).scale(&sc(&delta.recip())));
    // (b/delta - 1) b e^{-delta a} (1 - n - e^{-delta a})
    let jp = OperatorExpr::product(
        m,
        vec![
            OperatorExpr::Poly(&w.b(0).scale(&sc(&delta.recip())) - &w.c(1)),
            OperatorExpr::Poly(w.b(0)),
            e_minus(),
            OperatorExpr::sum(
                m,
                vec![OperatorExpr::constant(m, Scalar::one() - sc(&n)), e_minus().scale(-Scalar::one())],
            )?,
        ],
    )?;
    // (b/delta)(1 - e^{-delta a}) - n/2
    let j0 = OperatorExpr::sum(
        m,
        vec![
            OperatorExpr::product(
                m,
                vec![b_over_d, OperatorExpr::sum(m, vec![one(), e_minus().scale(-Scalar::one())])?],
            )?,
            OperatorExpr::constant(m, -(sc(&n) * half())),
        ],
    )?;
    let jm = OperatorExpr::sum(m, vec![OperatorExpr::exp_a(m, 0, d.clone())?, one().scale(-Scalar::one())])?
        .scale(sc(&delta.recip()));
    bld.displayed("J+", jp);
    bld.displayed("J0", j0);
    bld.displayed("J-", jm);
    bld.finish()
}

/// `a -> (b + a)/sqrt2`, `b -> (b - a)/sqrt2`.
fn oscillator_pair(w: &W) -> (WeylElement, WeylElement) {
    let s = Scalar::inv_sqrt2();
    ((&w.b(0) + &w.a(0)).scale(&s), (&w.b(0) - &w.a(0)).scale(&s))
}

/// Inverse of [`oscillator_pair`]: `a -> (a - b)/sqrt2`, `b -> (a + b)/sqrt2`.
fn oscillator_inverse(w: &W) -> (WeylElement, WeylElement) {
    let s = Scalar::inv_sqrt2();
    ((&w.a(0) - &w.b(0)).scale(&s), (&w.a(0) + &w.b(0)).scale(&s))
}

fn sl2_oscillator(params: &Params) -> Result<RepSpec> {
    let n = param(params, "n")?;
    let w = W(ModeSystem::bosonic(1));
    let mut bld = Builder::new("sl2_oscillator", w.0, params, AlgebraKind::Lie)?;
    let (na, nb) = oscillator_pair(&w);
    let (ia, ib) = oscillator_inverse(&w);
    let mut frame = Vec::new();
    for (name, e) in sl2_base(&w, &n) {
        let gen = e.substitute(0, &na, &nb)?;
        frame.push(OperatorExpr::Poly(gen.substitute(0, &ia, &ib)?));
        bld.gen(name, gen)?;
    }
    sl2_relations(&mut bld);
    bld.rep.casimir = Some(sl2_casimir(&n));
    if let Some(k) = fin_dim(&n) {
        bld.invariant(format!("<1, (b-a), ..., (b-a)^{k}> over the vacuum of b+a"), vec![1], 0, k, k as usize + 1);
        bld.rep.invariant_frame = Some(frame);
        bld.rep.claims.irreducible = true;
    }

    let (a, b) = (w.a(0), w.b(0));
    let cube = |x: &WeylElement| x * &(x * x);
    let two_n1 = sc(&n) * Scalar::from_int(2) + Scalar::one();
    // 2^{-3/2} [b^3 + a^3 - b(b+a)a - (2n+1)(b-a) - 2b]
    let bracket = &(&(&(&cube(&b) + &cube(&a)) - &(&(&b * &(&b + &a)) * &a)) - &(&b - &a).scale(&two_n1))
        - &b.scale(&Scalar::from_int(2));
    let jp = bracket.scale(&Scalar::new(Rational::zero(), rat(1, 4)));
    let j0 = (&(&(&b * &b) - &(&a * &a)) - &w.c(sc(&n) + Scalar::one())).scale(&half());
    let jm = (&b + &a).scale(&Scalar::inv_sqrt2());
    bld.displayed("J+", OperatorExpr::Poly(jp));
    bld.displayed("J0", OperatorExpr::Poly(j0));
    bld.displayed("J-", OperatorExpr::Poly(jm));
    bld.finish()
}

fn metaplectic_base(w: &W) -> [(&'static str, WeylElement); 3] {
    let (a, b) = (w.a(0), w.b(0));
    let ab = &(&a * &b) + &(&b * &a);
    [("J+", (&a * &a).scale(&half())), ("J0", ab.scale(&Scalar::frac(-1, 4))), ("J-", (&b * &b).scale(&half()))]
}

fn sl2_metaplectic(params: &Params) -> Result<RepSpec> {
    let w = W(ModeSystem::bosonic(1));
    let mut bld = Builder::new("sl2_metaplectic", w.0, params, AlgebraKind::Lie)?;
    if let Some(d) = delta_param(params, "delta")? {
        bld.translate(&[d])?;
    }
    for (name, e) in metaplectic_base(&w) {
        bld.gen(name, e)?;
    }
    sl2_relations(&mut bld);
    bld.rep.casimir = Some(CasimirSpec {
        label: "1/2 {J+, J-} - J0 J0".into(),
        expr: sl2_casimir_expr(),
        expected: Scalar::frac(3, 16),
        quoted: None,
    });
    bld.finish()
}

/// One fermionic mode: `a_C = theta + dtheta`, `b_C = 1 - 2 theta dtheta`
/// satisfy `a_C^2 = b_C^2 = 1` and `{a_C, b_C} = 0`.
fn sl2_clifford(params: &Params) -> Result<RepSpec> {
    let w = W(ModeSystem::new(0, 1));
    let mut bld = Builder::new("sl2_clifford", w.0, params, AlgebraKind::Lie)?;
    let ac = &w.th(0) + &w.dth(0);
    let bc = &w.c(1) - &(&w.th(0) * &w.dth(0)).scale(&Scalar::from_int(2));
    let j3 = &ac * &bc;
    bld.gen("J1", ac)?;
    bld.gen("J2", bc)?;
    bld.gen("J3", j3)?;
    let two = Scalar::from_int(2);
    bld.rel(1, "[J1, J2] = 2 J3", comm("J1", "J2"), g("J3").scale(&two));
    bld.rel(1, "[J2, J3] = -2 J1", comm("J2", "J3"), g("J1").scale(&-two.clone()));
    bld.rel(1, "[J3, J1] = -2 J2", comm("J3", "J1"), g("J2").scale(&-two));
    bld.finish()
}

fn sl2_vector_field(params: &Params) -> Result<RepSpec> {
    let n = match params.get("n") {
        Some(_) => int_param(params, "n", 0)? as u32,
        None => 1,
    };
    let w = W(ModeSystem::bosonic(2));
    let mut bld = Builder::new("sl2_vector_field", w.0, params, AlgebraKind::Lie)?;
    bld.gen("J1", &w.b(0) * &w.a(1))?;
    bld.gen("J2", &w.b(1) * &w.a(0))?;
    bld.gen("J3", &(&w.b(0) * &w.a(0)) - &(&w.b(1) * &w.a(1)))?;
    let two = Scalar::from_int(2);
    bld.rel(1, "[J1, J2] = J3", comm("J1", "J2"), g("J3"));
    bld.rel(1, "[J3, J1] = 2 J1", comm("J3", "J1"), g("J1").scale(&two));
    bld.rel(1, "[J3, J2] = -2 J2", comm("J3", "J2"), g("J2").scale(&-two));
    let dim = ((n + 1) * (n + 2) / 2) as usize;
    bld.invariant(format!("polynomials in b1, b2 of degree <= {n}"), vec![1, 1], 0, n, dim);
    bld.rep.claims.reducible = true;
    bld.finish()
}

fn sl3(params: &Params, translated: bool) -> Result<RepSpec> {
    let n = param(params, "n")?;
    let w = W(ModeSystem::bosonic(2));
    let id = if translated { "sl3_translated" } else { "sl3_fock" };
    let mut bld = Builder::new(id, w.0, params, AlgebraKind::Lie)?;
    if translated {
        let d1 = delta_param(params, "delta1")?.ok_or_else(|| Error::MissingParam("delta1".into()))?;
        let d2 = delta_param(params, "delta2")?.ok_or_else(|| Error::MissingParam("delta2".into()))?;
        bld.translate(&[d1, d2])?;
    }
    let (a1, a2, b1, b2) = (w.a(0), w.a(1), w.b(0), w.b(1));
    let euler = &(&b1 * &a1) + &(&b2 * &a2);
    let e_n = &euler - &w.r(&n);
    bld.gen("J1+", &b1 * &e_n)?;
    bld.gen("J2+", &b2 * &e_n)?;
    bld.gen("J1-", a1.clone())?;
    bld.gen("J2-", a2.clone())?;
    bld.gen("J0_21", &b2 * &a1)?;
    bld.gen("J0_12", &b1 * &a2)?;
    bld.gen("J0_1", &(&b1 * &a1) - &(&b2 * &a2))?;
    bld.gen("J0_2", &euler - &w.c(sc(&n) * Scalar::frac(2, 3)))?;
    if let Some(k) = fin_dim(&n) {
        let dim = binomial(k as usize + 2, 2);
        bld.invariant(format!("polynomials in b1, b2 of degree <= {k}"), vec![1, 1], 0, k, dim);
    }
    bld.finish()
}

fn sl3_seven(params: &Params) -> Result<RepSpec> {
    let m = param(params, "m")?;
    let n = param(params, "n")?;
    let w = W(ModeSystem::bosonic(3));
    let mut bld = Builder::new("sl3_seven", w.0, params, AlgebraKind::Lie)?;
    let (a1, a2, a3) = (w.a(0), w.a(1), w.a(2));
    let (b1, b2, b3) = (w.b(0), w.b(1), w.b(2));
    let y_xz = &b2 - &(&b1 * &b3);
    let jp1 = &(&(&(&(-&y_xz) * &a1) - &(&(&b2 * &b3) * &a2)) - &(&(&b3 * &b3) * &a3)) + &(&b3 * &w.r(&n));
    let jp2 = &(&(&(&(&(-&(&b1 * &y_xz)) * &a1) - &(&(&b2 * &b2) * &a2)) - &(&(&b2 * &b3) * &a3))
        - &(&(&b1 * &b3) * &w.r(&m)))
        + &(&b2 * &w.r(&(&n + &m)));
    bld.gen("J1+", jp1)?;
    bld.gen("J2+", jp2)?;
    bld.gen("J1-", a2.clone())?;
    bld.gen("J2-", a3.clone())?;
    bld.gen("J0_32", &a1 + &(&b3 * &a2))?;
    bld.gen("J0_23", &(&(-&(&(&b1 * &b1) * &a1)) + &(&b2 * &a3)) + &(&b1 * &w.r(&m)))?;
    let two = w.c(2);
    bld.gen("J0_1", &(&(&(-&(&b1 * &a1)) + &(&b2 * &a2)) + &(&(&two * &b3) * &a3)) - &w.r(&n))?;
    bld.gen("J0_2", &(&(&(&(&two * &b1) * &a1) + &(&b2 * &a2)) - &(&b3 * &a3)) - &w.r(&m))?;
    bld.finish()
}

fn gl2_semidirect(params: &Params) -> Result<RepSpec> {
    let r = int_param(params, "r", 1)?;
    let n = param(params, "n")?;
    let w = W(ModeSystem::bosonic(2));
    let mut bld = Builder::new("gl2_semidirect", w.0, params, AlgebraKind::Lie)?;
    if let Some(d) = delta_param(params, "delta")? {
        bld.translate(&[d.clone(), d])?;
    }
    let (a1, a2, b1, b2) = (w.a(0), w.a(1), w.b(0), w.b(1));
    bld.gen("J1", a1.clone())?;
    bld.gen("J2", &(&b1 * &a1) - &w.r(&(&n / int(3))))?;
    bld.gen("J3", &(&b2 * &a2) - &w.r(&(&n / int(3 * r))))?;
    let j4 = &(&(&(&b1 * &b1) * &a1) + &(&(&b1 * &b2) * &a2).scale(&Scalar::from_int(r))) - &(&b1 * &w.r(&n));
    bld.gen("J4", j4)?;
    let mut power = w.c(1);
    let mut abelian = Vec::new();
    for k in 0..=r {
        let name = format!("J{}", 5 + k);
        bld.gen(&name, &power * &a2)?;
        power = &power * &b1;
        abelian.push(name);
    }
    for (i, x) in abelian.iter().enumerate() {
        for y in &abelian[i + 1..] {
            bld.rel(1, &format!("[{x}, {y}] = 0"), comm(x, y), GenPoly::zero());
        }
    }
    bld.rep.claims.abelian = abelian;
    if let Some(k) = fin_dim(&n) {
        let ru = r as u32;
        let dim: u32 = (0..=k / ru).map(|n2| k - ru * n2 + 1).sum();
        bld.invariant(format!("b1^i b2^j with i + {r} j <= {k}"), vec![1, ru], 0, k, dim as usize);
    }
    bld.finish()
}

fn glk(params: &Params) -> Result<RepSpec> {
    let k = int_param(params, "k", 2)? as usize;
    let n = param(params, "n")?;
    let w = W(ModeSystem::bosonic(k - 1));
    let mut bld = Builder::new("glk", w.0, params, AlgebraKind::Lie)?;
    if let Some(d) = delta_param(params, "delta")? {
        bld.translate(&vec![d; k - 1])?;
    }
    // physical index p in 2..=k lives in mode p - 2
    let idx = 2..=k;
    let mut j0 = w.r(&n);
    for p in idx.clone() {
        j0 = &j0 - &(&w.b(p - 2) * &w.a(p - 2));
    }
    for i in idx.clone() {
        bld.gen(&format!("J{i}-"), w.a(i - 2))?;
    }
    for i in idx.clone() {
        for j in idx.clone() {
            bld.gen(&format!("J0_{i},{j}"), &w.b(i - 2) * &w.a(j - 2))?;
        }
    }
    bld.gen("J0", j0.clone())?;
    for i in idx.clone() {
        bld.gen(&format!("J{i}+"), &w.b(i - 2) * &j0)?;
    }
    let mut trace = g("J0");
    for p in idx {
        trace = trace.add(&g(&format!("J0_{p},{p}")));
    }
    bld.rel(1, "J0 + sum_p J0_{p,p} = n", trace, GenPoly::constant(sc(&n)));
    if let Some(nn) = fin_dim(&n) {
        let dim = binomial(nn as usize + k - 1, k - 1);
        bld.invariant(format!("polynomials in b2..b{k} of degree <= {nn}"), vec![1; k - 1], 0, nn, dim);
        bld.rep.claims.irreducible = true;
    }
    bld.finish()
}

fn osp22_table(bld: &mut Builder) {
    let m1 = -Scalar::one();
    let h = half();
    bld.rel(1, "[T0, T+] = T+", comm("T0", "T+"), g("T+"));
    bld.rel(1, "[T0, T-] = -T-", comm("T0", "T-"), g("T-").scale(&m1));
    bld.rel(2, "[T+, T-] = -2 T0", comm("T+", "T-"), g("T0").scale(&Scalar::from_int(-2)));
    for t in ["T+", "T0", "T-"] {
        bld.rel(3, &format!("[J, {t}] = 0"), comm("J", t), GenPoly::zero());
    }
    bld.rel(4, "{Q1, Qb2} = -T-", acomm("Q1", "Qb2"), g("T-").scale(&m1));
    bld.rel(5, "{Q2, Qb1} = T+", acomm("Q2", "Qb1"), g("T+"));
    let s1 = acomm("Qb1", "Q1");
    let s2 = acomm("Qb2", "Q2");
    bld.rel(6, "1/2 ({Qb1, Q1} + {Qb2, Q2}) = J", s1.add(&s2).scale(&h), g("J"));
    bld.rel(7, "1/2 ({Qb1, Q1} - {Qb2, Q2}) = T0", s1.sub(&s2).scale(&h), g("T0"));
    for (group, x, y) in
        [(8, "Q1", "Q1"), (8, "Q2", "Q2"), (8, "Q1", "Q2"), (9, "Qb1", "Qb1"), (9, "Qb2", "Qb2"), (9, "Qb1", "Qb2")]
    {
        bld.rel(group, &format!("{{{x}, {y}}} = 0"), acomm(x, y), GenPoly::zero());
    }
    bld.rel(10, "[Q1, T+] = Q2", comm("Q1", "T+"), g("Q2"));
    bld.rel(10, "[Q2, T+] = 0", comm("Q2", "T+"), GenPoly::zero());
    bld.rel(11, "[Q1, T-] = 0", comm("Q1", "T-"), GenPoly::zero());
    bld.rel(11, "[Q2, T-] = -Q1", comm("Q2", "T-"), g("Q1").scale(&m1));
    bld.rel(12, "[Qb1, T+] = 0", comm("Qb1", "T+"), GenPoly::zero());
    bld.rel(12, "[Qb2, T+] = -Qb1", comm("Qb2", "T+"), g("Qb1").scale(&m1));
    bld.rel(13, "[Qb1, T-] = Qb2", comm("Qb1", "T-"), g("Qb2"));
    bld.rel(13, "[Qb2, T-] = 0", comm("Qb2", "T-"), GenPoly::zero());
    bld.rel(14, "[Q1, T0] = 1/2 Q1", comm("Q1", "T0"), g("Q1").scale(&h));
    bld.rel(14, "[Q2, T0] = -1/2 Q2", comm("Q2", "T0"), g("Q2").scale(&-h.clone()));
    bld.rel(15, "[Qb1, T0] = -1/2 Qb1", comm("Qb1", "T0"), g("Qb1").scale(&-h.clone()));
    bld.rel(15, "[Qb2, T0] = 1/2 Qb2", comm("Qb2", "T0"), g("Qb2").scale(&h));
    for q in ["Q1", "Q2"] {
        bld.rel(16, &format!("[{q}, J] = -1/2 {q}"), comm(q, "J"), g(q).scale(&-h.clone()));
    }
    for q in ["Qb1", "Qb2"] {
        bld.rel(16, &format!("[{q}, J] = 1/2 {q}"), comm(q, "J"), g(q).scale(&h));
    }
}

fn osp22(params: &Params, translated: bool) -> Result<RepSpec> {
    let n = param(params, "n")?;
    let w = W(ModeSystem::new(1, 1));
    let m = w.0;
    let id = if translated { "osp22_translated" } else { "osp22" };
    let mut bld = Builder::new(id, m, params, AlgebraKind::Super)?;
    let delta = if translated {
        let d = delta_param(params, "delta")?.ok_or_else(|| Error::MissingParam("delta".into()))?;
        bld.translate(std::slice::from_ref(&d))?;
        Some(d)
    } else {
        None
    };
    let (a, b, th, dth) = (w.a(0), w.b(0), w.th(0), w.dth(0));
    let ss = &th * &dth;
    let nh = sc(&n) * half();
    bld.gen("T+", &(&(&(&b * &b) * &a) - &(&b * &w.r(&n))) + &(&b * &ss))?;
    bld.gen("T0", &(&(&b * &a) - &w.c(nh.clone())) + &ss.scale(&half()))?;
    bld.gen("T-", a.clone())?;
    bld.gen("J", &w.c(-nh.clone()) - &ss.scale(&half()))?;
    bld.gen("Q1", dth.clone())?;
    bld.gen("Q2", &b * &dth)?;
    bld.gen("Qb1", &(&(&b * &a) - &w.r(&n)) * &th)?;
    bld.gen("Qb2", -&(&a * &th))?;
    osp22_table(&mut bld);
    if let Some(k) = fin_dim(&n) {
        bld.invariant(format!("(P_{k}, P_{}) spinors", k as i64 - 1), vec![1], 1, k, 2 * k as usize + 1);
    }

    if let Some(delta) = delta {
        let d = sc(&delta);
        let inv = sc(&delta.recip());
        let poly = OperatorExpr::Poly;
        let e = |s: Scalar| OperatorExpr::exp_a(m, 0, s).expect("mode 0");
        let neg = -Scalar::one();
        let sum = |v: Vec<OperatorExpr>| OperatorExpr::sum(m, v).expect("same modes");
        let prod = |v: Vec<OperatorExpr>| OperatorExpr::product(m, v).expect("same modes");
        // (b/delta - 1) b e^{-delta a} (1 - n - e^{-delta a} + theta dtheta)
        bld.displayed(
            "T+",
            prod(vec![
                poly(&b.scale(&inv) - &w.c(1)),
                poly(b.clone()),
                e(-d.clone()),
                sum(vec![poly(&w.c(Scalar::one() - sc(&n)) + &ss), e(-d.clone()).scale(neg.clone())]),
            ]),
        );
        bld.displayed(
            "T0",
            sum(vec![
                prod(vec![poly(b.scale(&inv)), sum(vec![OperatorExpr::identity(m), e(-d.clone()).scale(neg.clone())])]),
                poly(&w.c(-nh) + &ss.scale(&half())),
            ]),
        );
        bld.displayed("T-", sum(vec![e(d.clone()), OperatorExpr::constant(m, neg.clone())]).scale(inv.clone()));
        bld.displayed("J", poly(&w.c(-half()) - &ss.scale(&half())));
        bld.displayed("Q1", poly(dth.clone()));
        bld.displayed("Q2", prod(vec![poly(b.clone()), e(-d.clone()), poly(dth)]));
        // (b - b e^{-delta a} - n)/delta theta
        bld.displayed(
            "Qb1",
            prod(vec![
                sum(vec![poly(&b - &w.r(&n)), prod(vec![poly(b.clone()), e(-d.clone())]).scale(neg.clone())])
                    .scale(inv.clone()),
                poly(th.clone()),
            ]),
        );
        bld.displayed("Qb2", prod(vec![sum(vec![OperatorExpr::identity(m), e(d).scale(neg)]).scale(inv), poly(th)]));
    }
    bld.finish()
}

fn osp22_metaplectic(params: &Params) -> Result<RepSpec> {
    let w = W(ModeSystem::new(1, 1));
    let mut bld = Builder::new("osp22_metaplectic", w.0, params, AlgebraKind::Super)?;
    if let Some(d) = delta_param(params, "delta")? {
        bld.translate(&[d])?;
    }
    let (a, b, th, dth) = (w.a(0), w.b(0), w.th(0), w.dth(0));
    let s = Scalar::inv_sqrt2();
    for (name, e) in metaplectic_base(&w) {
        let name = name.replace('J', "T");
        bld.gen(&name, e)?;
    }
    bld.gen("J", &w.c(Scalar::frac(1, 4)) - &(&th * &dth).scale(&half()))?;
    bld.gen("Q1", (&b * &dth).scale(&-s.clone()))?;
    bld.gen("Q2", (&a * &dth).scale(&s))?;
    bld.gen("Qb1", (&a * &th).scale(&s))?;
    bld.gen("Qb2", (&b * &th).scale(&s))?;
    osp22_table(&mut bld);
    bld.finish()
}

fn gl_super(params: &Params) -> Result<RepSpec> {
    let k = int_param(params, "k", 1)? as usize;
    let r = int_param(params, "r", 1)? as usize;
    let n = param(params, "n")?;
    if r > 8 {
        return Err(bad("r", "at most 8 fermionic modes"));
    }
    let w = W(ModeSystem::new(k, r));
    let mut bld = Builder::new("gl_super", w.0, params, AlgebraKind::Super)?;
    if let Some(d) = delta_param(params, "delta")? {
        bld.translate(&vec![d; k])?;
    }
    let mut t0 = w.r(&n);
    for p in 0..k {
        t0 = &t0 - &(&w.b(p) * &w.a(p));
    }
    for p in 0..r {
        t0 = &t0 - &(&w.th(p) * &w.dth(p));
    }
    for i in 1..=k {
        bld.gen(&format!("T{i}-"), w.a(i - 1))?;
    }
    for i in 1..=k {
        for j in 1..=k {
            bld.gen(&format!("T0_{i},{j}"), &w.b(i - 1) * &w.a(j - 1))?;
        }
    }
    bld.gen("T0", t0.clone())?;
    for i in 1..=k {
        bld.gen(&format!("T{i}+"), &w.b(i - 1) * &t0)?;
    }
    for i in 1..=r {
        bld.gen(&format!("Qb{i}-"), w.dth(i - 1))?;
    }
    for i in 1..=r {
        bld.gen(&format!("Qb{i}+"), &w.th(i - 1) * &t0)?;
    }
    for i in 1..=r {
        for j in 1..=k {
            bld.gen(&format!("Q{i},{j}-"), &w.th(i - 1) * &w.a(j - 1))?;
        }
    }
    // b_i dtheta_j: the second index runs over the fermions
    for i in 1..=k {
        for j in 1..=r {
            bld.gen(&format!("Q{i},{j}+"), &w.b(i - 1) * &w.dth(j - 1))?;
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            bld.gen(&format!("J{i},{j}"), &w.th(i - 1) * &w.dth(j - 1))?;
        }
    }
    let mut trace = g("T0");
    for p in 1..=k {
        trace = trace.add(&g(&format!("T0_{p},{p}")));
    }
    for p in 1..=r {
        trace = trace.add(&g(&format!("J{p},{p}")));
    }
    bld.rel(1, "T0 + sum_p T0_{p,p} + sum_p J_{p,p} = n", trace, GenPoly::constant(sc(&n)));
    if let Some(nn) = fin_dim(&n) {
        let nn_us = nn as usize;
        let dim = (0..=r.min(nn_us)).map(|m| binomial(r, m) * binomial(nn_us - m + k, k)).sum();
        bld.invariant(format!("b^alpha theta^beta with |alpha| + |beta| <= {nn}"), vec![1; k], 1, nn, dim);
        bld.rep.claims.irreducible = true;
    }
    bld.finish()
}

/// `q^{-alpha} {2 alpha + 2} / ((q + 1) {alpha + 1})`.
pub fn sl2q_kappa(alpha: i64, q: &Rational) -> Result<Rational> {
    let num = rational_pow(q, -alpha)? * qheis::q_number(2 * alpha + 2, q)?;
    let den = (q + Rational::one()) * qheis::q_number(alpha + 1, q)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num / den)
}

fn sl2q(params: &Params) -> Result<RepSpec> {
    let alpha = param(params, "alpha")?;
    let alpha = as_integer(&alpha).ok_or_else(|| bad("alpha", "must be an integer"))?;
    let q = param(params, "q")?;
    if q.is_one() {
        return Err(Error::QEqualsOne);
    }
    if !q.is_positive() {
        return Err(bad("q", "must be positive"));
    }
    let variant = match delta_param(params, "delta")? {
        Some(d) => Embedding::Transformed(d),
        None => Embedding::Spectral,
    };
    let modes = ModeSystem::bosonic(1);
    let mut bld = Builder::new("sl2q", modes, params, AlgebraKind::Quantum)?;
    let pair = qheis::embed_mode(modes, 0, &q, &variant)?;

    let qa = QWeylElement::a(q.clone())?;
    let qb = QWeylElement::b(q.clone())?;
    let bb = qb.q_multiply(&qb)?;
    let num_alpha = qheis::q_number(alpha, &q)?;
    let hat = qheis::q_alpha_hat(alpha, &q)?;
    let jp = bb.q_multiply(&qa)?.checked_sub(&qb.scale(&sc(&num_alpha)))?;
    let j0 = qb.q_multiply(&qa)?.checked_sub(&QWeylElement::constant(q.clone(), sc(&hat))?)?;
    for (name, x) in [("J+", jp), ("J0", j0), ("J-", qa)] {
        bld.q_gen(name, x, &pair)?;
    }

    // Rescaled generators j0 = kappa J0, j+ j- = q^{-alpha} J+ J-; each
    // relation is homogeneous in j+ and in j-, so only the product of their
    // factors enters.
    let kappa = sc(&sl2q_kappa(alpha, &q)?);
    let qs = sc(&q);
    let pm = sc(&rational_pow(&q, -alpha)?);
    bld.rel(1, "j0 j+ - q j+ j0 = j+", GenPoly::q_commutator("J0", "J+", &qs).scale(&kappa), g("J+"));
    bld.rel(
        2,
        "q^2 j+ j- - j- j+ = -(q+1) j0",
        g("J+").mul(&g("J-")).scale(&(&qs * &qs)).sub(&g("J-").mul(&g("J+"))).scale(&pm),
        g("J0").scale(&-(&(&qs + &Scalar::one()) * &kappa)),
    );
    bld.rel(
        3,
        "q j0 j- - j- j0 = -j-",
        g("J0").mul(&g("J-")).scale(&qs).sub(&g("J-").mul(&g("J0"))).scale(&kappa),
        g("J-").scale(&-Scalar::one()),
    );

    let next = sc(&qheis::q_number(alpha + 1, &q)?);
    let h = sc(&hat);
    let expr = g("J+")
        .mul(&g("J-"))
        .scale(&qs)
        .sub(&g("J0").mul(&g("J0")))
        .add(&g("J0").scale(&(&next - &(&h * &Scalar::from_int(2)))));
    bld.rep.casimir = Some(CasimirSpec {
        label: "q J+ J- - J0 J0 + ({alpha+1} - 2 alpha^) J0".into(),
        expected: &h * &(&h - &next),
        quoted: None,
        expr,
    });
    if alpha >= 0 {
        let k = alpha as u32;
        bld.invariant(format!("<1, b~, ..., b~^{k}>"), vec![1], 0, k, k as usize + 1);
    }
    if let Embedding::Transformed(d) = &variant {
        bld.displayed("J-", qheis::displayed_transformed_a(&q, d)?);
    }
    bld.finish()
}
