//! Exact verification of the claims attached to a [`RepSpec`].

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::catalogue::{AlgebraKind, GenPoly, RepSpec};
use crate::error::{Error, Result};
use crate::fock::{basis, check_identity, safe_degree, FockKey, FockVector, OperatorExpr};
use crate::linalg::{self, Echelon, Matrix, SparseVec};
use crate::realize::{self, Realization};
use crate::scalar::Scalar;
use crate::weyl::{Parity, WeylElement, WeylMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Concrete counterexample; always present on failure.
    pub witness: Option<Value>,
    /// Measured quantity (dimension, eigenvalue, ...), if any.
    pub value: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: None, value: None }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        Check { name: name.into(), status: Status::Fail, witness: Some(witness), value: None }
    }

    pub fn with_value(mut self, v: Value) -> Self {
        self.value = Some(v);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "name": self.name,
            "status": self.status.as_str(),
            "witness": self.witness.clone().unwrap_or(Value::Null),
        });
        if let Some(v) = &self.value {
            obj["value"] = v.clone();
        }
        obj
    }
}

/// Disagreement (or agreement) between a built generator and its
/// hand-written closed form. Informational, never a failed check.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub subject: String,
    pub agrees: bool,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub rep: String,
    pub params: Value,
    pub cutoff: u32,
    pub checks: Vec<Check>,
    pub discrepancies: Vec<Discrepancy>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Deterministic JSON (timing is left out).
    pub fn to_json(&self) -> Value {
        json!({
            "rep": self.rep,
            "params": self.params,
            "cutoff": self.cutoff,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "discrepancies": self.discrepancies.iter().map(|d| json!({
                "subject": d.subject,
                "status": if d.agrees { "AGREES" } else { "DIFFERS" },
                "witness": d.witness.clone().unwrap_or(Value::Null),
            })).collect::<Vec<_>>(),
        })
    }
}

fn vec_json(v: &FockVector) -> Value {
    v.to_json()
}

fn state_witness(state: &FockKey, lhs: &FockVector, rhs: &FockVector) -> Value {
    json!({"state": state.to_string(), "lhs": vec_json(lhs), "rhs": vec_json(rhs)})
}

/// Generator actions with memoised images of basis states.
pub struct Evaluator<'a> {
    rep: &'a RepSpec,
    ops: Vec<OperatorExpr>,
    cache: HashMap<(usize, FockKey), FockVector>,
}

impl<'a> Evaluator<'a> {
    pub fn new(rep: &'a RepSpec) -> Self {
        let ops = rep.generators.iter().map(|g| g.op.clone()).collect();
        Evaluator { rep, ops, cache: HashMap::new() }
    }

    /// Evaluator on replacement operators (same order as the generators).
    pub fn with_ops(rep: &'a RepSpec, ops: Vec<OperatorExpr>) -> Self {
        Evaluator { rep, ops, cache: HashMap::new() }
    }

    pub fn rep(&self) -> &RepSpec {
        self.rep
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.rep.generators.iter().position(|g| g.name == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn apply_gen(&mut self, i: usize, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero(v.modes());
        for (k, c) in v.terms() {
            let key = (i, k.clone());
            if !self.cache.contains_key(&key) {
                let img = self.ops[i].apply(&FockVector::basis_state(v.modes(), k.clone()))?;
                self.cache.insert(key.clone(), img);
            }
            out.add_scaled(&self.cache[&key], c);
        }
        Ok(out)
    }

    /// Word applied right to left.
    pub fn apply_word(&mut self, word: &[usize], v: &FockVector) -> Result<FockVector> {
        let mut cur = v.clone();
        for &i in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_gen(i, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_poly(&mut self, p: &GenPoly, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero(v.modes());
        for (c, word) in &p.terms {
            let idx = word.iter().map(|n| self.index(n)).collect::<Result<Vec<_>>>()?;
            out.add_scaled(&self.apply_word(&idx, v)?, c);
        }
        Ok(out)
    }

    /// Raise bound of any word of length `len`.
    fn word_raise(&self, len: usize) -> i64 {
        let r = self.ops.iter().filter_map(OperatorExpr::max_raise).max().unwrap_or(0).max(0);
        r * len as i64
    }

    /// Test states on which words of length `len` stay within the cutoff.
    pub fn test_states(&self, cutoff: u32, len: usize) -> Vec<FockKey> {
        let top = safe_degree(cutoff, Some(self.word_raise(len)));
        if top < 0 {
            return Vec::new();
        }
        basis(self.rep.modes, top as u32)
    }

    /// Matrix of generator `i` on `states`, restricted to those states.
    /// Errors if an image leaves the span.
    pub fn restricted_matrix(&mut self, i: usize, states: &[FockKey]) -> Result<std::result::Result<Matrix, FockKey>> {
        let index: BTreeMap<&FockKey, usize> = states.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut m = linalg::zeros(states.len(), states.len());
        for (col, s) in states.iter().enumerate() {
            let img = self.apply_gen(i, &FockVector::basis_state(self.rep.modes, s.clone()))?;
            for (k, c) in img.terms() {
                match index.get(k) {
                    Some(&row) => m[row][col] = c.clone(),
                    None => return Ok(Err(s.clone())),
                }
            }
        }
        Ok(Ok(m))
    }
}

/// Checks every relation claim on the overflow-free range.
pub fn check_relations(rep: &RepSpec, ev: &mut Evaluator, cutoff: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for rel in &rep.relations {
        let len = rel.lhs.degree().max(rel.rhs.degree());
        let name = format!("relation {}: {}", rel.group, rel.label);
        let mut check = Check::pass(&name);
        for s in ev.test_states(cutoff, len) {
            let v = FockVector::basis_state(rep.modes, s.clone());
            let l = ev.apply_poly(&rel.lhs, &v)?;
            let r = ev.apply_poly(&rel.rhs, &v)?;
            if l != r {
                check = Check::fail(&name, state_witness(&s, &l, &r));
                break;
            }
        }
        out.push(check);
    }
    Ok(out)
}

/// Relation checks grouped into lines: a line passes when all its claims do.
pub fn relation_lines(checks: &[Check], rep: &RepSpec) -> BTreeMap<u32, bool> {
    let mut out = BTreeMap::new();
    for (rel, c) in rep.relations.iter().zip(checks) {
        *out.entry(rel.group).or_insert(true) &= c.passed();
    }
    out
}

/// A generator outside the basis and its expansion in it.
pub type Dependent = (String, Vec<(String, Scalar)>);

/// Structure constants `[x_i, x_j] = sum_k c[i][j][k] x_k` on a basis of the
/// span of the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub basis: Vec<String>,
    pub parities: Vec<Parity>,
    pub graded: bool,
    pub c: Vec<Vec<Vec<Scalar>>>,
    /// Generators outside the basis, with their expansion in it.
    pub dependent: Vec<Dependent>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn sign(&self, i: usize, j: usize) -> Scalar {
        if self.graded && self.parities[i].is_odd() && self.parities[j].is_odd() {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    }

    /// Returns a copy with `c[i][j][k]` shifted by `delta`.
    pub fn perturb(&self, i: usize, j: usize, k: usize, delta: &Scalar) -> Self {
        let mut out = self.clone();
        out.c[i][j][k] += delta;
        out
    }

    pub fn to_json(&self) -> Value {
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let terms: Vec<Value> = (0..self.dim())
                    .filter(|&k| !self.c[i][j][k].is_zero())
                    .map(|k| json!([self.basis[k], self.c[i][j][k]]))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(json!({"x": self.basis[i], "y": self.basis[j], "result": terms}));
                }
            }
        }
        json!({
            "basis": self.basis,
            "graded": self.graded,
            "brackets": brackets,
            "dependent": self.dependent.iter().map(|(n, e)| json!({"generator": n, "expansion": e.iter().map(|(b, c)| json!([b, c])).collect::<Vec<_>>()})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Closure {
    Closes(StructureConstants),
    /// Bracket of the two generators leaves the span.
    Open {
        pair: (String, String),
        witness: Value,
    },
}

fn graded(rep: &RepSpec) -> bool {
    rep.claims.kind == AlgebraKind::Super
}

/// Sign `s` in `[x, y] = x y - s y x`.
fn bracket_sign(rep: &RepSpec, i: usize, j: usize) -> Scalar {
    let (pi, pj) = (rep.generators[i].parity, rep.generators[j].parity);
    if graded(rep) && pi.is_odd() && pj.is_odd() {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

type Key = (usize, FockKey);

fn flatten_on(states: &[FockKey], images: impl Fn(usize) -> FockVector) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    for (si, _) in states.iter().enumerate() {
        for (k, c) in images(si).terms() {
            out.insert((si, k.clone()), c.clone());
        }
    }
    out
}

fn basis_from_generators<K: Ord + Clone>(
    rep: &RepSpec,
    vectors: &[SparseVec<K>],
) -> (Echelon<K>, Vec<usize>, Vec<Dependent>) {
    let mut ech = Echelon::new();
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut dependent = Vec::new();
    // only independent vectors are inserted, so echelon indices are basis positions
    for (i, v) in vectors.iter().enumerate() {
        match ech.solve(v) {
            Some(combo) => {
                let expansion =
                    combo.into_iter().map(|(b, c)| (rep.generators[basis_idx[b]].name.clone(), c)).collect();
                dependent.push((rep.generators[i].name.clone(), expansion));
            }
            None => {
                ech.insert(v);
                basis_idx.push(i);
            }
        }
    }
    (ech, basis_idx, dependent)
}

/// Matrix-level closure on the test states of the evaluator.
pub fn closure(ev: &mut Evaluator, cutoff: u32) -> Result<Closure> {
    let rep = ev.rep;
    let states = ev.test_states(cutoff, 2);
    if states.is_empty() {
        return Err(Error::Unsupported(format!("cutoff {cutoff} leaves no test states")));
    }
    let modes = rep.modes;
    let n = ev.len();
    let mut images: Vec<Vec<FockVector>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(states.len());
        for s in &states {
            row.push(ev.apply_gen(i, &FockVector::basis_state(modes, s.clone()))?);
        }
        images.push(row);
    }
    let vectors: Vec<SparseVec<Key>> = (0..n).map(|i| flatten_on(&states, |si| images[i][si].clone())).collect();
    let (ech, basis_idx, dependent) = basis_from_generators(rep, &vectors);
    let d = basis_idx.len();
    let mut c = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for (bi, &i) in basis_idx.iter().enumerate() {
        for (bj, &j) in basis_idx.iter().enumerate() {
            let sign = bracket_sign(rep, i, j);
            let mut brackets = Vec::with_capacity(states.len());
            for (img_i, img_j) in images[i].iter().zip(&images[j]) {
                let mut b = ev.apply_gen(i, img_j)?;
                b.add_scaled(&ev.apply_gen(j, img_i)?, &-sign.clone());
                brackets.push(b);
            }
            let v = flatten_on(&states, |si| brackets[si].clone());
            match ech.solve(&v) {
                Some(combo) => {
                    for (k, val) in combo {
                        c[bi][bj][k] = val;
                    }
                }
                None => {
                    let (res, _) = ech.reduce(&v);
                    let (si, _) = res.keys().next().cloned().expect("nonzero residual");
                    let witness = json!({
                        "pair": [rep.generators[i].name, rep.generators[j].name],
                        "state": states[si].to_string(),
                        "bracket": vec_json(&brackets[si]),
                    });
                    return Ok(Closure::Open {
                        pair: (rep.generators[i].name.clone(), rep.generators[j].name.clone()),
                        witness,
                    });
                }
            }
        }
    }
    Ok(Closure::Closes(StructureConstants {
        basis: basis_idx.iter().map(|&i| rep.generators[i].name.clone()).collect(),
        parities: basis_idx.iter().map(|&i| rep.generators[i].parity).collect(),
        graded: graded(rep),
        c,
        dependent,
    }))
}

/// Closure over canonical polynomial forms; `None` when some generator is
/// not polynomial.
pub fn symbolic_closure(rep: &RepSpec) -> Result<Option<Closure>> {
    let Some(polys) = rep.generators.iter().map(|g| g.poly.clone()).collect::<Option<Vec<WeylElement>>>() else {
        return Ok(None);
    };
    let as_vec =
        |w: &WeylElement| -> SparseVec<WeylMonomial> { w.terms().map(|(m, c)| (m.clone(), c.clone())).collect() };
    let vectors: Vec<_> = polys.iter().map(as_vec).collect();
    let (ech, basis_idx, dependent) = basis_from_generators(rep, &vectors);
    let d = basis_idx.len();
    let mut c = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for (bi, &i) in basis_idx.iter().enumerate() {
        for (bj, &j) in basis_idx.iter().enumerate() {
            let sign = bracket_sign(rep, i, j);
            let br = polys[i].multiply(&polys[j])?.checked_sub(&polys[j].multiply(&polys[i])?.scale(&sign))?;
            match ech.solve(&as_vec(&br)) {
                Some(combo) => {
                    for (k, val) in combo {
                        c[bi][bj][k] = val;
                    }
                }
                None => {
                    let pair = (rep.generators[i].name.clone(), rep.generators[j].name.clone());
                    let witness = json!({"pair": [pair.0, pair.1], "bracket": br.to_string()});
                    return Ok(Some(Closure::Open { pair, witness }));
                }
            }
        }
    }
    Ok(Some(Closure::Closes(StructureConstants {
        basis: basis_idx.iter().map(|&i| rep.generators[i].name.clone()).collect(),
        parities: basis_idx.iter().map(|&i| rep.generators[i].parity).collect(),
        graded: graded(rep),
        c,
        dependent,
    })))
}

/// Checks `[x_i, x_j] = sum_k c_ij^k x_k` against the operators themselves.
pub fn residual_check(sc: &StructureConstants, ev: &mut Evaluator, cutoff: u32) -> Result<Check> {
    let name = "structure constants residual";
    let rep = ev.rep;
    let idx = sc.basis.iter().map(|n| ev.index(n)).collect::<Result<Vec<_>>>()?;
    for s in ev.test_states(cutoff, 2) {
        let v = FockVector::basis_state(rep.modes, s.clone());
        for (bi, &i) in idx.iter().enumerate() {
            for (bj, &j) in idx.iter().enumerate() {
                let sign = sc.sign(bi, bj);
                let mut lhs = ev.apply_word(&[i, j], &v)?;
                lhs.add_scaled(&ev.apply_word(&[j, i], &v)?, &-sign);
                let mut rhs = FockVector::zero(rep.modes);
                for (bk, &k) in idx.iter().enumerate() {
                    if !sc.c[bi][bj][bk].is_zero() {
                        rhs.add_scaled(&ev.apply_gen(k, &v)?, &sc.c[bi][bj][bk]);
                    }
                }
                if lhs != rhs {
                    let mut w = state_witness(&s, &lhs, &rhs);
                    w["pair"] = json!([sc.basis[bi], sc.basis[bj]]);
                    return Ok(Check::fail(name, w));
                }
            }
        }
    }
    Ok(Check::pass(name))
}

/// Graded antisymmetry `c_ij^k = -(-1)^{|i||j|} c_ji^k`.
pub fn antisymmetry(sc: &StructureConstants) -> Check {
    let name = "antisymmetry";
    let d = sc.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let expect = -(&sc.sign(i, j) * &sc.c[j][i][k]);
                if sc.c[i][j][k] != expect {
                    return Check::fail(name, json!({"indices": [sc.basis[i], sc.basis[j], sc.basis[k]]}));
                }
            }
        }
    }
    Check::pass(name)
}

/// Graded Jacobi identity on all triples.
pub fn jacobi(sc: &StructureConstants) -> Check {
    let name = "jacobi";
    let d = sc.dim();
    let sparse: Vec<Vec<Vec<(usize, &Scalar)>>> =
        sc.c.iter()
            .map(|row| row.iter().map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect())
            .collect();
    let mut total = vec![Scalar::zero(); d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                total.iter_mut().for_each(|t| *t = Scalar::zero());
                // s [x_x, [x_y, x_z]] expanded in the basis
                for ((x, y, z), s) in
                    [((i, j, k), sc.sign(i, k)), ((j, k, i), sc.sign(j, i)), ((k, i, j), sc.sign(k, j))]
                {
                    for &(l, c) in &sparse[y][z] {
                        let w = &s * c;
                        for &(m, e) in &sparse[x][l] {
                            total[m] += &(&w * e);
                        }
                    }
                }
                if total.iter().any(|v| !v.is_zero()) {
                    return Check::fail(name, json!({"triple": [sc.basis[i], sc.basis[j], sc.basis[k]]}));
                }
            }
        }
    }
    Check::pass(name)
}

/// `K_ij = str(ad x_i ad x_j)` and its rank.
pub fn killing_form(sc: &StructureConstants) -> (Matrix, usize) {
    let d = sc.dim();
    let ad: Vec<Matrix> =
        (0..d).map(|i| (0..d).map(|k| (0..d).map(|l| sc.c[i][l][k].clone()).collect()).collect()).collect();
    let mut kf = linalg::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let p = linalg::matmul(&ad[i], &ad[j]);
            let mut t = Scalar::zero();
            for (k, row) in p.iter().enumerate() {
                if sc.graded && sc.parities[k].is_odd() {
                    t -= &row[k];
                } else {
                    t += &row[k];
                }
            }
            kf[i][j] = t;
        }
    }
    let r = linalg::rank(&kf);
    (kf, r)
}

/// Casimir commutes with the generators and acts as the expected scalar.
pub fn casimir_check(rep: &RepSpec, ev: &mut Evaluator, cutoff: u32) -> Result<Option<Check>> {
    let Some(cas) = &rep.casimir else { return Ok(None) };
    let name = format!("casimir: {} = {}", cas.label, cas.expected);
    let len = cas.expr.degree();
    // value on the vacuum, then on every test state
    let vac = FockVector::vacuum(rep.modes);
    let value = ev.apply_poly(&cas.expr, &vac)?.coefficient(&FockKey::vacuum(rep.modes));
    let value_json = serde_json::to_value(&value).expect("serializable");
    if value != cas.expected {
        let w = json!({"state": FockKey::vacuum(rep.modes).to_string(), "value": value_json, "expected": cas.expected});
        return Ok(Some(Check::fail(name, w)));
    }
    for s in ev.test_states(cutoff, len) {
        let v = FockVector::basis_state(rep.modes, s.clone());
        let l = ev.apply_poly(&cas.expr, &v)?;
        let r = v.scale(&cas.expected);
        if l != r {
            return Ok(Some(Check::fail(name, state_witness(&s, &l, &r))));
        }
    }
    for g in &rep.generators {
        let cg = GenPoly::gen(&g.name);
        let lhs = cas.expr.mul(&cg).sub(&cg.mul(&cas.expr));
        for s in ev.test_states(cutoff, len + 1) {
            let v = FockVector::basis_state(rep.modes, s.clone());
            let l = ev.apply_poly(&lhs, &v)?;
            if !l.is_zero() {
                let mut w = state_witness(&s, &l, &FockVector::zero(rep.modes));
                w["generator"] = json!(g.name);
                return Ok(Some(Check::fail(name, w)));
            }
        }
    }
    Ok(Some(Check::pass(name).with_value(value_json)))
}

/// Verified invariant subspace with the restricted generator matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariant {
    pub states: Vec<FockKey>,
    pub matrices: Vec<Matrix>,
}

impl Invariant {
    pub fn dim(&self) -> usize {
        self.states.len()
    }
}

/// Evaluator whose operators are in the frame of the invariant-space descriptor.
pub fn frame_evaluator(rep: &RepSpec) -> Evaluator<'_> {
    match &rep.invariant_frame {
        Some(ops) => Evaluator::with_ops(rep, ops.clone()),
        None => Evaluator::new(rep),
    }
}

/// `Ok(Ok(space))` if every generator maps the described span into itself,
/// `Ok(Err(witness))` naming the escaping state otherwise.
pub fn invariant_subspace(rep: &RepSpec) -> Result<Option<std::result::Result<Invariant, Value>>> {
    let Some(space) = &rep.invariant_space else { return Ok(None) };
    let states: Vec<FockKey> = basis(rep.modes, space.max_degree()).into_iter().filter(|k| space.contains(k)).collect();
    let mut ev = frame_evaluator(rep);
    let mut matrices = Vec::new();
    for (i, g) in rep.generators.iter().enumerate() {
        match ev.restricted_matrix(i, &states)? {
            Ok(m) => matrices.push(m),
            Err(state) => {
                let img = ev.apply_gen(i, &FockVector::basis_state(rep.modes, state.clone()))?;
                return Ok(Some(Err(json!({
                    "generator": g.name,
                    "state": state.to_string(),
                    "image": vec_json(&img),
                }))));
            }
        }
    }
    Ok(Some(Ok(Invariant { states, matrices })))
}

/// Dimension of the associative algebra generated by the matrices and the
/// identity.
pub fn generated_algebra_dim(matrices: &[Matrix], d: usize) -> usize {
    let mut ech = Echelon::new();
    let mut found: Vec<Matrix> = Vec::new();
    let id = linalg::identity(d);
    if ech.insert(&linalg::flatten(&id)).is_none() {
        found.push(id);
    }
    let mut frontier = 0;
    for m in matrices {
        if ech.insert(&linalg::flatten(m)).is_none() {
            found.push(m.clone());
        }
    }
    while frontier < found.len() && ech.rank() < d * d {
        let x = found[frontier].clone();
        frontier += 1;
        for m in matrices {
            let p = linalg::matmul(m, &x);
            if ech.insert(&linalg::flatten(&p)).is_none() {
                found.push(p);
            }
        }
    }
    ech.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub algebra_dim: usize,
    pub d: usize,
}

pub fn burnside_irreducibility(inv: &Invariant) -> Irreducibility {
    let d = inv.dim();
    let algebra_dim = generated_algebra_dim(&inv.matrices, d);
    Irreducibility { irreducible: algebra_dim == d * d, algebra_dim, d }
}

/// Characteristic polynomials of the named generator on the two invariant
/// spaces coincide.
pub fn charpoly_equivalence(a: &RepSpec, b: &RepSpec, generator: &str) -> Result<Check> {
    let name = format!("charpoly {generator}: {} vs {}", a.id, b.id);
    let restricted = |rep: &RepSpec| -> Result<Matrix> {
        let inv = invariant_subspace(rep)?
            .ok_or_else(|| Error::Unsupported(format!("{} has no invariant space", rep.id)))?
            .map_err(|w| Error::Unsupported(format!("{} invariant space fails: {w}", rep.id)))?;
        let i = rep
            .generators
            .iter()
            .position(|g| g.name == generator)
            .ok_or_else(|| Error::UnknownGenerator(generator.to_string()))?;
        Ok(inv.matrices[i].clone())
    };
    let (ma, mb) = (restricted(a)?, restricted(b)?);
    if ma.len() != mb.len() {
        return Err(Error::Unsupported(format!("dimension mismatch {} vs {}", ma.len(), mb.len())));
    }
    let (pa, pb) = (linalg::charpoly(&ma), linalg::charpoly(&mb));
    let check = if pa == pb { Check::pass(name) } else { Check::fail(name, json!({"lhs": pa, "rhs": pb})) };
    Ok(check.with_value(serde_json::to_value(&pa).expect("serializable")))
}

/// Compares every hand-written closed form with the built generator.
pub fn discrepancies(rep: &RepSpec, cutoff: u32) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for d in &rep.displayed {
        let gen = rep.generator(&d.generator)?;
        let report = check_identity(&gen.op, &d.op, cutoff)?;
        out.push(Discrepancy {
            subject: format!("closed form of {}", d.generator),
            agrees: report.equal(),
            witness: report.mismatch.map(|m| m.to_json()),
        });
    }
    if let Some(cas) = &rep.casimir {
        if let Some(p) = &cas.quoted {
            out.push(Discrepancy {
                subject: format!("quoted value of {}", cas.label),
                agrees: false,
                witness: Some(json!({"quoted": p, "computed": cas.expected})),
            });
        }
    }
    Ok(out)
}

fn closure_checks(rep: &RepSpec, ev: &mut Evaluator, cutoff: u32, checks: &mut Vec<Check>) -> Result<()> {
    let label = match rep.claims.kind {
        AlgebraKind::Lie => "closure (Lie algebra)",
        AlgebraKind::Super => "closure (superalgebra)",
        AlgebraKind::Quantum => return Ok(()),
    };
    let sc = match closure(ev, cutoff)? {
        Closure::Closes(sc) => sc,
        Closure::Open { witness, .. } => {
            checks.push(Check::fail(label, witness));
            return Ok(());
        }
    };
    checks.push(Check::pass(label).with_value(
        json!({"dim": sc.dim(), "dependent": sc.dependent.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()}),
    ));
    checks.push(antisymmetry(&sc));
    checks.push(jacobi(&sc));
    let (_, rank) = killing_form(&sc);
    checks.push(Check::pass("killing form").with_value(json!({"rank": rank})));
    if let Some(sym) = symbolic_closure(rep)? {
        let name = "closure (polynomial forms)";
        checks.push(match sym {
            Closure::Closes(s) if s == sc => Check::pass(name),
            Closure::Closes(s) => Check::fail(name, json!({"matrix": sc.to_json(), "polynomial": s.to_json()})),
            Closure::Open { witness, .. } => Check::fail(name, witness),
        });
    }
    Ok(())
}

/// Runs every applicable check.
pub fn verify(rep: &RepSpec, cutoff: Option<u32>) -> Result<VerificationReport> {
    let start = Instant::now();
    let cutoff = cutoff.unwrap_or_else(|| rep.default_cutoff());
    let mut ev = Evaluator::new(rep);
    let mut checks = check_relations(rep, &mut ev, cutoff)?;
    closure_checks(rep, &mut ev, cutoff, &mut checks)?;
    if let Some(c) = casimir_check(rep, &mut ev, cutoff)? {
        checks.push(c);
    }
    if let Some(res) = invariant_subspace(rep)? {
        let space = rep.invariant_space.as_ref().expect("descriptor present");
        match res {
            Ok(inv) => {
                let name = format!("invariant subspace: {}", space.description);
                let check = if inv.dim() == space.expected_dim {
                    Check::pass(&name)
                } else {
                    Check::fail(&name, json!({"dim": inv.dim(), "expected": space.expected_dim}))
                };
                checks.push(check.with_value(json!(inv.dim())));
                if rep.claims.irreducible || rep.claims.reducible {
                    let irr = burnside_irreducibility(&inv);
                    let claim = if rep.claims.irreducible { "irreducible" } else { "reducible" };
                    let ok = irr.irreducible == rep.claims.irreducible;
                    let v = json!({"algebra_dim": irr.algebra_dim, "d": irr.d});
                    let name = format!("{claim} (Burnside)");
                    checks.push(if ok { Check::pass(name).with_value(v) } else { Check::fail(name, v) });
                }
            }
            Err(w) => checks.push(Check::fail(format!("invariant subspace: {}", space.description), w)),
        }
    }
    let mut discrepancies = discrepancies(rep, cutoff.min(6))?;
    for kind in [Realization::Differential, Realization::FiniteDifference] {
        let found = realize::displayed(rep, kind).and_then(|forms| match forms.is_empty() {
            true => Ok(Vec::new()),
            false => realize::realized_discrepancies(rep, kind, cutoff.min(6)),
        });
        match found {
            Ok(ds) => discrepancies.extend(ds),
            Err(Error::MissingParam(_) | Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(VerificationReport {
        rep: rep.id.clone(),
        params: rep.params_json(),
        cutoff,
        checks,
        discrepancies,
        elapsed: start.elapsed(),
    })
}

/// Human-readable rendering of a report.
pub fn render(report: &VerificationReport) -> String {
    let params: Vec<String> = report
        .params
        .as_object()
        .map(|o| {
            o.iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or_default().trim_end_matches("/1"))).collect()
        })
        .unwrap_or_default();
    let mut out = format!("{} ({}) cutoff {}\n", report.rep, params.join(", "), report.cutoff);
    for c in &report.checks {
        let value = c.value.as_ref().map(|v| format!("  [{v}]")).unwrap_or_default();
        out.push_str(&format!("  {}  {}{}\n", c.status.as_str(), c.name, value));
        if let Some(w) = &c.witness {
            out.push_str(&format!("        witness: {w}\n"));
        }
    }
    for d in &report.discrepancies {
        let status = if d.agrees { "agrees" } else { "DIFFERS" };
        out.push_str(&format!("  {}: {status}\n", d.subject));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{build, parse_params};

    fn rep(id: &str, ps: &[&str]) -> RepSpec {
        build(id, &parse_params(ps).unwrap()).unwrap()
    }

    fn sc_of(r: &RepSpec) -> StructureConstants {
        let mut ev = Evaluator::new(r);
        match closure(&mut ev, r.default_cutoff()).unwrap() {
            Closure::Closes(sc) => sc,
            Closure::Open { witness, .. } => panic!("{witness}"),
        }
    }

    #[test]
    fn sl2_report_passes() {
        let r = rep("sl2_standard", &["n=5"]);
        let report = verify(&r, None).unwrap();
        assert!(report.passed(), "{}", render(&report));
    }

    #[test]
    fn sl2_killing_form() {
        let sc = sc_of(&rep("sl2_standard", &["n=2"]));
        let (k, rank) = killing_form(&sc);
        assert_eq!(rank, 3);
        assert_eq!(k[1][1], Scalar::from_int(2));
        assert_eq!(k[0][2], Scalar::from_int(-4));
    }

    #[test]
    fn corrupted_constants_fail() {
        let r = rep("sl2_standard", &["n=2"]);
        let sc = sc_of(&r);
        assert!(jacobi(&sc).passed());
        let bad = sc.perturb(0, 2, 1, &Scalar::one());
        assert!(!jacobi(&bad).passed() || !antisymmetry(&bad).passed());
        let mut ev = Evaluator::new(&r);
        assert!(residual_check(&sc, &mut ev, 6).unwrap().passed());
        assert!(!residual_check(&bad, &mut ev, 6).unwrap().passed());
    }

    #[test]
    fn casimir_values() {
        let r = rep("sl2_standard", &["n=2"]);
        let mut ev = Evaluator::new(&r);
        let c = casimir_check(&r, &mut ev, 6).unwrap().unwrap();
        assert!(c.passed());
        let cas = r.casimir.unwrap();
        assert_eq!(cas.expected, Scalar::from_int(-2));
        assert_eq!(cas.quoted, Some(Scalar::frac(-3, 2)));
    }

    #[test]
    fn burnside() {
        let inv = invariant_subspace(&rep("glk", &["k=2", "n=1"])).unwrap().unwrap().unwrap();
        assert_eq!(burnside_irreducibility(&inv).algebra_dim, 4);
        let inv = invariant_subspace(&rep("sl2_vector_field", &["n=1"])).unwrap().unwrap().unwrap();
        let irr = burnside_irreducibility(&inv);
        assert!(!irr.irreducible);
        assert!(irr.algebra_dim < 9);
    }

    #[test]
    fn charpoly_across_realizations() {
        let std = rep("sl2_standard", &["n=3"]);
        for other in [rep("sl2_translated", &["n=3", "delta=1"]), rep("sl2_oscillator", &["n=3"])] {
            for g in ["J+", "J0", "J-"] {
                assert!(charpoly_equivalence(&std, &other, g).unwrap().passed());
            }
        }
    }

    #[test]
    fn escaping_state_is_reported() {
        let mut r = rep("sl2_standard", &["n=2"]);
        r.invariant_space.as_mut().unwrap().bound = 1;
        let w = invariant_subspace(&r).unwrap().unwrap().unwrap_err();
        assert_eq!(w["generator"], "J+");
        assert_eq!(w["state"], "b |0>");
    }
}
