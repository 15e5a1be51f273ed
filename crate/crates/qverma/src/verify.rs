//! The verification engine: evaluates relation catalogs under the
//! realization, compares closed forms against recursions, computes
//! weight characters, and checks the q -> 1 limit against the independent
//! classical oracle.

use crate::oracle::{
    classical_action, ClassicalElement, ClassicalGenerator, ClassicalModuleState, OracleError,
    RatMatrix,
};
use crate::pmodule::{trivial_module, vector_module, LeviBlock, PModuleSpec};
use crate::qcoeff::RationalQ;
use crate::qcoordinate::{qmul, variable};
use crate::qweyl::{monomials_up_to, ExponentMatrix, Polynomial, Shape, WeylKey};
use crate::realization::{
    pi_generator, rho_e_closed, Mutation, RealizationError, RealizedAlgebra, RealizedOperator,
};
use crate::uqalg::{
    evaluate_word, presentation_catalog, root_vector_word, GeneratorSymbol,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("{0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Realization(#[from] RealizationError),
    #[error("k{0} eigenvalue {1} is not a signed power of q")]
    NonMonomialEigenvalue(usize, String),
}

/// Evaluation mode for the per-basis residual grid. The rational mode
/// specializes q to a fixed rational number; it is a cheap smoke test and
/// never replaces exact verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    RationalQ(BigRational),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub instance: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Deterministically ordered list of named pass/fail checks.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: Vec::new() }
    }

    pub fn push(&mut self, name: &str, instance: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            instance: instance.to_string(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "instance": c.instance,
                    "pass": c.pass,
                    "witness": c.witness.clone().map(Value::String).unwrap_or(Value::Null),
                })
            })
            .collect();
        json!({
            "checks": checks,
            "summary": {
                "total": self.checks.len(),
                "passed": self.checks.len() - self.failed_count(),
                "failed": self.failed_count(),
            },
        })
    }
}

fn describe_monomial(shape: Shape, r: &ExponentMatrix) -> String {
    format!("x^{:?}", r.to_rows(shape))
}

/// Check that a residual operator annihilates every x^r tensor v_b with
/// |r| <= d; returns a witness description on failure.
fn residual_witness(op: &RealizedOperator, d: u32, mode: &Mode) -> Option<String> {
    if op.is_zero() {
        return None;
    }
    let shape = op.shape();
    let dim = op.dim();
    if let Mode::RationalQ(q0) = mode {
        match numeric_terms(op, q0) {
            Some(terms) => {
                for r in monomials_up_to(shape, d) {
                    if let Some(b) = numeric_residual(shape, dim, &terms, q0, &r) {
                        return Some(format!(
                            "{} (x) v_{b} has nonzero residual at q = {q0}",
                            describe_monomial(shape, &r)
                        ));
                    }
                }
                return None;
            }
            // A pole at q0: fall through to the exact grid.
            None => {}
        }
    }
    for r in monomials_up_to(shape, d) {
        for b in 0..dim {
            let mut v = vec![RationalQ::zero(); dim];
            v[b] = RationalQ::one();
            let out = op.act(&r, &v).expect("dimensions match");
            if !out.is_zero() {
                let (mono, coords) = out.terms().next().expect("nonzero");
                let lead = coords
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                    .expect("nonzero coordinate");
                return Some(format!(
                    "{} (x) v_{b} -> residual includes {} (x) v_{} with coefficient {}",
                    describe_monomial(shape, &r),
                    describe_monomial(shape, mono),
                    lead.0,
                    lead.1,
                ));
            }
        }
    }
    None
}

/// Specialize all term matrices at q0; None if any entry has a pole there.
fn numeric_terms(op: &RealizedOperator, q0: &BigRational) -> Option<Vec<(WeylKey, RatMatrix)>> {
    let dim = op.dim();
    let mut out = Vec::new();
    for (w, mat) in op.pairs() {
        let key = w.terms().next().expect("single-term pair").0.clone();
        let mut rm = RatMatrix::zero(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                rm.set(r, c, mat.get(r, c).evaluate_at(q0).ok()?);
            }
        }
        out.push((key, rm));
    }
    Some(out)
}

fn numeric_q_number(v: i64, q0: &BigRational) -> BigRational {
    // [v] = q^{v-1} + q^{v-3} + ... + q^{1-v}
    let mut acc = BigRational::zero();
    let mut e = v - 1;
    for _ in 0..v {
        acc += pow_rational(q0, e);
        e -= 2;
    }
    acc
}

fn pow_rational(q0: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        q0.pow(e as i32)
    } else {
        BigRational::one() / q0.pow((-e) as i32)
    }
}

/// First basis index with a nonzero residual of the numeric operator on
/// x^r, or None if the residual vanishes.
fn numeric_residual(
    shape: Shape,
    dim: usize,
    terms: &[(WeylKey, RatMatrix)],
    q0: &BigRational,
    r: &ExponentMatrix,
) -> Option<usize> {
    for b in 0..dim {
        let mut acc: BTreeMap<ExponentMatrix, Vec<BigRational>> = BTreeMap::new();
        for (key, mat) in terms {
            let mut coeff = BigRational::one();
            let mut res = r.clone();
            let mut vanishes = false;
            for (j, k) in shape.var_indices() {
                let v = shape.idx(j, k);
                let rv = res.get(shape, j, k);
                let dv = key.d[v];
                if dv > rv {
                    vanishes = true;
                    break;
                }
                for i in 0..dv {
                    coeff *= numeric_q_number((rv - i) as i64, q0);
                }
                let lowered = rv - dv;
                if key.g[v] != 0 {
                    coeff *= pow_rational(q0, key.g[v] * lowered as i64);
                }
                res.set(shape, j, k, lowered + key.x[v]);
            }
            if vanishes || coeff.is_zero() {
                continue;
            }
            let entry = acc
                .entry(res)
                .or_insert_with(|| vec![BigRational::zero(); dim]);
            for row in 0..dim {
                let m = mat.get(row, b);
                if !m.is_zero() {
                    entry[row] += m * &coeff;
                }
            }
        }
        if acc.values().any(|v| v.iter().any(|c| !c.is_zero())) {
            return Some(b);
        }
    }
    None
}

fn grid_report(
    title: &str,
    entries: &[(String, crate::uqalg::AlgebraWord)],
    alg: &RealizedAlgebra<'_>,
    d: u32,
    mode: &Mode,
) -> VerificationReport {
    let cache = crate::uqalg::EvalCache::new();
    let checks: Vec<Check> = entries
        .par_iter()
        .map(|(name, word)| {
            let witness = match crate::uqalg::evaluate_word_cached(word, alg, &cache) {
                Ok(residual) => residual_witness(&residual, d, mode),
                Err(e) => Some(e.to_string()),
            };
            Check {
                name: title.to_string(),
                instance: name.clone(),
                pass: witness.is_none(),
                witness,
            }
        })
        .collect();
    VerificationReport { checks }
}

/// Every defining relation of U_q(sl_{n+m}), evaluated under pi on the
/// given module and applied to all x^r tensor v_b with |r| <= d.
pub fn verify_presentation(
    shape: Shape,
    spec: &PModuleSpec,
    d: u32,
    mode: &Mode,
) -> VerificationReport {
    let alg = RealizedAlgebra::new(spec);
    let catalog = presentation_catalog(shape.n + shape.m);
    grid_report("presentation relation", catalog.entries(), &alg, d, mode)
}

/// Same grid, but with a seeded mutation applied to the realization
/// formulas; used to show the engine catches wrong formulas.
pub fn verify_presentation_mutated(
    shape: Shape,
    spec: &PModuleSpec,
    d: u32,
    mode: &Mode,
    mutation: Mutation,
) -> VerificationReport {
    let alg = RealizedAlgebra::with_mutation(spec, mutation);
    let catalog = presentation_catalog(shape.n + shape.m);
    grid_report("presentation relation", catalog.entries(), &alg, d, mode)
}

/// The ten root-vector commutation families with exponents up to
/// max_power, under the trivial module (i.e. under rho tensor id).
pub fn verify_jimbo(shape: Shape, d: u32, max_power: u32, mode: &Mode) -> VerificationReport {
    let spec = trivial_module(shape);
    let alg = RealizedAlgebra::new(&spec);
    let catalog = crate::uqalg::jimbo_factored_catalog(shape.n + shape.m, max_power);
    let cache = crate::uqalg::EvalCache::new();
    let checks: Vec<Check> = catalog
        .entries()
        .par_iter()
        .map(|(name, rel)| {
            let witness = match crate::uqalg::evaluate_factored(rel, &alg, &cache) {
                Ok(residual) => residual_witness(&residual, d, mode),
                Err(e) => Some(e.to_string()),
            };
            Check {
                name: "root vector relation".to_string(),
                instance: name.clone(),
                pass: witness.is_none(),
                witness,
            }
        })
        .collect();
    VerificationReport { checks }
}

fn builtin_test_modules(shape: Shape) -> Vec<(String, PModuleSpec)> {
    let mut out = vec![("trivial".to_string(), trivial_module(shape))];
    if shape.n >= 2 {
        out.push((
            "vector:first".to_string(),
            vector_module(shape, LeviBlock::First).expect("n >= 2"),
        ));
    }
    if shape.m >= 2 {
        out.push((
            "vector:second".to_string(),
            vector_module(shape, LeviBlock::Second).expect("m >= 2"),
        ));
    }
    out
}

/// Operator-level (normal form) comparisons: the closed form of
/// rho(E_{j,i}) against the root-vector recursion; pi(E_{n,k}) assembled
/// from the coproduct against the recursion under pi; and the
/// left-multiplication property of pi(E_{n+j,k}) against the straightened
/// product, on monomials up to degree d.
pub fn verify_closed_forms(shape: Shape, d: u32) -> VerificationReport {
    let (n, m) = (shape.n, shape.m);
    let big_n = n + m;
    let mut report = VerificationReport::new();

    let trivial = trivial_module(shape);
    let rho_alg = RealizedAlgebra::new(&trivial);
    for i in 1..=n {
        for j in (i + 1)..=n {
            let closed = rho_e_closed(shape, j, i).expect("valid indices");
            let word = root_vector_word(j, i, big_n).expect("valid indices");
            let rec = evaluate_word(&word, &rho_alg).expect("levi word");
            let witness = if closed == rec {
                None
            } else {
                Some("closed form and recursion differ in normal form".to_string())
            };
            report.push(
                "closed form rho(E_{j,i})",
                &format!("j={j} i={i}"),
                witness,
            );
        }
    }

    for (mod_name, spec) in builtin_test_modules(shape) {
        let alg = RealizedAlgebra::new(&spec);
        for k in 1..n {
            let assembled = crate::realization::pi_e_nk(shape, &spec, k).expect("k < n");
            let word = root_vector_word(n, k, big_n).expect("valid indices");
            let rec = evaluate_word(&word, &alg).expect("pi word");
            let witness = if assembled == rec {
                None
            } else {
                Some("coproduct assembly and recursion differ in normal form".to_string())
            };
            report.push(
                "coproduct assembly pi(E_{n,k})",
                &format!("k={k} module={mod_name}"),
                witness,
            );
        }

        for (j, k) in shape.var_indices() {
            let word = root_vector_word(n + j, k, big_n).expect("valid indices");
            let op = evaluate_word(&word, &alg).expect("pi word");
            let mut witness = None;
            'grid: for r in monomials_up_to(shape, d) {
                for b in 0..spec.dim() {
                    let mut v = vec![RationalQ::zero(); spec.dim()];
                    v[b] = RationalQ::one();
                    let got = op.act(&r, &v).expect("dimensions match");
                    let prod = qmul(
                        &variable(shape, j, k),
                        &Polynomial::monomial(shape, r.clone(), RationalQ::one()),
                    );
                    let mut expect =
                        crate::realization::ModuleElement::zero(shape, spec.dim());
                    for (mono, c) in prod.terms() {
                        let mut coords = vec![RationalQ::zero(); spec.dim()];
                        coords[b] = c.clone();
                        expect.insert(mono.clone(), coords);
                    }
                    if got != expect {
                        witness = Some(format!(
                            "differs from x_({j},{k}) * {} on v_{b}",
                            describe_monomial(shape, &r)
                        ));
                        break 'grid;
                    }
                }
            }
            report.push(
                "left multiplication pi(E_{n+j,k})",
                &format!("j={j} k={k} module={mod_name}"),
                witness,
            );
        }
    }
    report
}

fn specialize_element(
    elem: &crate::realization::ModuleElement,
    shape: Shape,
    dim: usize,
) -> Result<ClassicalElement, String> {
    let one = BigRational::one();
    let mut out = ClassicalElement::zero(shape, dim);
    for (r, coords) in elem.terms() {
        let mut spec = Vec::with_capacity(dim);
        for c in coords {
            spec.push(c.evaluate_at(&one).map_err(|e| e.to_string())?);
        }
        out.insert(r.clone(), spec);
    }
    Ok(out)
}

/// Compare the q = 1 specialization of every pi generator with the
/// classical oracle on all x^r tensor v_b, |r| <= d: e_i and f_i directly,
/// k_i against the identity, and (k_i - k_i^-1)/(q - q^-1) against h_i.
pub fn classical_limit_compare(
    shape: Shape,
    spec: &PModuleSpec,
    d: u32,
) -> Result<VerificationReport, VerifyError> {
    let state = ClassicalModuleState::from_spec(spec)?;
    let dim = spec.dim();
    let rank = shape.n + shape.m - 1;
    let basis = monomials_up_to(shape, d);
    let qdiff_inv = RationalQ::one()
        .checked_div(&(&RationalQ::q() - &RationalQ::q_pow(-1)))
        .expect("q - q^-1 is nonzero");

    // (description, quantum operator, classical counterpart or None for
    // the identity)
    let mut pairs: Vec<(String, RealizedOperator, Option<ClassicalGenerator>)> = Vec::new();
    for i in 1..=rank {
        pairs.push((
            format!("e{i}"),
            pi_generator(shape, spec, GeneratorSymbol::e(i))?,
            Some(ClassicalGenerator::E(i)),
        ));
        pairs.push((
            format!("f{i}"),
            pi_generator(shape, spec, GeneratorSymbol::f(i))?,
            Some(ClassicalGenerator::F(i)),
        ));
        let k = pi_generator(shape, spec, GeneratorSymbol::k(i))?;
        let kinv = pi_generator(shape, spec, GeneratorSymbol::kinv(i))?;
        pairs.push((format!("k{i}"), k.clone(), None));
        pairs.push((
            format!("(k{i} - k{i}^-1)/(q - q^-1)"),
            k.sub(&kinv)?.scale(&qdiff_inv),
            Some(ClassicalGenerator::H(i)),
        ));
    }

    let checks: Vec<Check> = pairs
        .par_iter()
        .map(|(name, op, classical)| {
            let mut witness = None;
            'grid: for r in &basis {
                for b in 0..dim {
                    let mut v = vec![RationalQ::zero(); dim];
                    v[b] = RationalQ::one();
                    let quantum = op.act(r, &v).expect("dimensions match");
                    let quantum = match specialize_element(&quantum, shape, dim) {
                        Ok(el) => el,
                        Err(e) => {
                            witness = Some(format!(
                                "pole at q = 1 on {} (x) v_{b}: {e}",
                                describe_monomial(shape, r)
                            ));
                            break 'grid;
                        }
                    };
                    let mut rv = vec![BigRational::zero(); dim];
                    rv[b] = BigRational::one();
                    let expected = match classical {
                        Some(g) => classical_action(&state, *g, r, &rv),
                        None => {
                            let mut el = ClassicalElement::zero(shape, dim);
                            el.insert(r.clone(), rv.clone());
                            el
                        }
                    };
                    if !quantum.sub(&expected).is_zero() {
                        witness = Some(format!(
                            "mismatch on {} (x) v_{b}",
                            describe_monomial(shape, r)
                        ));
                        break 'grid;
                    }
                }
            }
            Check {
                name: "classical limit".to_string(),
                instance: name.clone(),
                pass: witness.is_none(),
                witness,
            }
        })
        .collect();
    Ok(VerificationReport { checks })
}

/// Weight-multiplicity table: for each degree and each vector of torus
/// eigenvalue signs and q-exponents, the number of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    /// (degree, signs, exponents) -> multiplicity
    table: BTreeMap<(u32, Vec<i8>, Vec<i64>), usize>,
}

impl CharacterTable {
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, Vec<i8>, Vec<i64>), &usize)> {
        self.table.iter()
    }

    pub fn total_at_degree(&self, d: u32) -> usize {
        self.table
            .iter()
            .filter(|((deg, _, _), _)| *deg == d)
            .map(|(_, c)| c)
            .sum()
    }

    /// Exponent-only table, defined when every sign is +1 (the classical
    /// comparison regime).
    pub fn exponent_table(&self) -> Option<BTreeMap<(u32, Vec<i64>), usize>> {
        let mut out = BTreeMap::new();
        for ((deg, signs, exps), count) in &self.table {
            if signs.iter().any(|&s| s != 1) {
                return None;
            }
            *out.entry((*deg, exps.clone())).or_insert(0) += count;
        }
        Some(out)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .table
            .iter()
            .map(|((deg, signs, exps), count)| {
                json!({
                    "degree": deg,
                    "signs": signs,
                    "exponents": exps,
                    "multiplicity": count,
                })
            })
            .collect();
        json!({ "weights": rows })
    }
}

fn eigenvalue_sign_exponent(
    i: usize,
    v: &RationalQ,
) -> Result<(i8, i64), VerifyError> {
    if v.is_laurent() {
        let terms = v.laurent_terms();
        if terms.len() == 1 {
            let (exp, coeff) = &terms[0];
            if coeff == &BigInt::one() {
                return Ok((1, *exp));
            }
            if coeff.is_negative() && coeff == &BigInt::from(-1) {
                return Ok((-1, *exp));
            }
        }
    }
    Err(VerifyError::NonMonomialEigenvalue(i, v.to_string()))
}

/// The simultaneous k_i-eigenvalue data of every basis vector x^r tensor
/// v_b with |r| <= d, aggregated into a weight-multiplicity table.
pub fn character(
    shape: Shape,
    spec: &PModuleSpec,
    d: u32,
) -> Result<CharacterTable, VerifyError> {
    let rank = shape.n + shape.m - 1;
    let dim = spec.dim();
    let mut ops = Vec::with_capacity(rank);
    for i in 1..=rank {
        ops.push(pi_generator(shape, spec, GeneratorSymbol::k(i))?);
    }
    let mut table = BTreeMap::new();
    for r in monomials_up_to(shape, d) {
        for b in 0..dim {
            let mut v = vec![RationalQ::zero(); dim];
            v[b] = RationalQ::one();
            let mut signs = Vec::with_capacity(rank);
            let mut exps = Vec::with_capacity(rank);
            for (i, op) in ops.iter().enumerate() {
                let out = op.act(&r, &v).expect("dimensions match");
                let eigen = out
                    .terms()
                    .find(|(mono, _)| *mono == &r)
                    .map(|(_, coords)| coords[b].clone())
                    .unwrap_or_else(RationalQ::zero);
                let (s, e) = eigenvalue_sign_exponent(i + 1, &eigen)?;
                signs.push(s);
                exps.push(e);
            }
            *table.entry((r.total(), signs, exps)).or_insert(0) += 1;
        }
    }
    Ok(CharacterTable { table })
}
