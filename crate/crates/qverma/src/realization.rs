//! The realization maps: rho on the Levi and torus generators as quantum
//! differential operators, the closed-form rho(E_{j,i}) for first-block
//! lowering root vectors, and the full module structure pi on all
//! generators of U_q(sl_{n+m}) as operators on C_q[u*] tensor V.

use crate::matrix::Matrix;
use crate::pmodule::{levi_root_matrix, PModuleError, PModuleSpec};
use crate::qcoeff::RationalQ;
use crate::qweyl::{ExponentMatrix, Shape, WeylError, WeylKey, WeylOperator};
use crate::uqalg::{GenKind, GeneratorSymbol};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("generator {0} does not lie in the Levi subalgebra")]
    NotLevi(String),
    #[error("generator index {0} out of range for shape ({1}, {2})")]
    IndexOutOfRange(usize, usize, usize),
    #[error("root vector indices ({0}, {1}) invalid here")]
    BadRootIndices(usize, usize),
    #[error("operator shapes or module dimensions do not match")]
    Mismatch,
    #[error("{0}")]
    Module(#[from] PModuleError),
    #[error("{0}")]
    Weyl(#[from] WeylError),
    #[error("malformed operator JSON: {0}")]
    Json(String),
}

/// Seeded single-term and sign mutations of the realization formulas, used
/// to demonstrate that the verification engine detects wrong formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Sign of rho(e_i) (first block) flipped to +.
    FlipRhoESign,
    /// Trailing gamma product of rho(f_i) (first block) omitted.
    DropRhoFGamma,
    /// The gamma factors of pi(f_n) inverted.
    FlipPiFnGamma,
    /// The final difference-quotient summand of pi(e_n) dropped.
    DropPiEnDifferenceQuotient,
    /// The x del del summand of pi(e_n) dropped.
    DropPiEnMultiplicationSum,
}

pub const ALL_MUTATIONS: [Mutation; 5] = [
    Mutation::FlipRhoESign,
    Mutation::DropRhoFGamma,
    Mutation::FlipPiFnGamma,
    Mutation::DropPiEnDifferenceQuotient,
    Mutation::DropPiEnMultiplicationSum,
];

/// An element of the operator algebra A^q tensor End(V): a finite sum of
/// normal-form Weyl terms, each tensored with a dim x dim matrix. Fully
/// canonical (scalar coefficients absorbed into the matrices, zero
/// matrices dropped), so equality is normal-form operator equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedOperator {
    shape: Shape,
    dim: usize,
    terms: BTreeMap<WeylKey, Matrix>,
}

impl RealizedOperator {
    pub fn zero(shape: Shape, dim: usize) -> Self {
        RealizedOperator {
            shape,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(shape: Shape, dim: usize) -> Self {
        RealizedOperator::tensor(&WeylOperator::identity(shape), &Matrix::identity(dim))
    }

    /// w tensor M, canonicalized.
    pub fn tensor(w: &WeylOperator, mat: &Matrix) -> Self {
        assert_eq!(mat.rows(), mat.cols(), "End(V) factor must be square");
        let mut out = RealizedOperator::zero(w.shape(), mat.rows());
        for (key, coeff) in w.terms() {
            out.insert(key.clone(), mat.scale(coeff));
        }
        out
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: WeylKey, mat: Matrix) {
        if mat.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &mat;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, mat);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), RealizationError> {
        if self.shape != other.shape || self.dim != other.dim {
            return Err(RealizationError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RealizationError> {
        self.check(other)?;
        let mut out = self.clone();
        for (key, mat) in &other.terms {
            out.insert(key.clone(), mat.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RealizationError> {
        self.add(&other.scale(&-&RationalQ::one()))
    }

    pub fn scale(&self, c: &RationalQ) -> Self {
        if c.is_zero() {
            return RealizedOperator::zero(self.shape, self.dim);
        }
        RealizedOperator {
            shape: self.shape,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, m)| (k.clone(), m.scale(c)))
                .collect(),
        }
    }

    /// Product in A^q tensor End(V); `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self, RealizationError> {
        self.check(other)?;
        let mut out = RealizedOperator::zero(self.shape, self.dim);
        for (ka, ma) in &self.terms {
            let wa = WeylOperator::term(self.shape, ka.clone(), RationalQ::one());
            for (kb, mb) in &other.terms {
                let wb = WeylOperator::term(self.shape, kb.clone(), RationalQ::one());
                let prod = wa.mul(&wb)?;
                let mat = ma * mb;
                for (key, coeff) in prod.terms() {
                    out.insert(key.clone(), mat.scale(coeff));
                }
            }
        }
        Ok(out)
    }

    /// The list-of-pairs view: one (single-term Weyl operator, matrix) pair
    /// per normal-form key.
    pub fn pairs(&self) -> Vec<(WeylOperator, Matrix)> {
        self.terms
            .iter()
            .map(|(k, m)| {
                (
                    WeylOperator::term(self.shape, k.clone(), RationalQ::one()),
                    m.clone(),
                )
            })
            .collect()
    }

    /// Apply to x^r tensor v.
    pub fn act(&self, r: &ExponentMatrix, v: &[RationalQ]) -> Result<ModuleElement, RealizationError> {
        if v.len() != self.dim {
            return Err(RealizationError::Mismatch);
        }
        let mut out = ModuleElement::zero(self.shape, self.dim);
        for (key, mat) in &self.terms {
            let w = WeylOperator::term(self.shape, key.clone(), RationalQ::one());
            let poly = w.apply_monomial(r);
            let mv = mat.apply(v);
            if mv.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (mono, coeff) in poly.terms() {
                let scaled: Vec<RationalQ> = mv.iter().map(|c| c * coeff).collect();
                out.insert(mono.clone(), scaled);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .terms
            .iter()
            .map(|(key, mat)| {
                let w = WeylOperator::term(self.shape, key.clone(), RationalQ::one());
                json!({
                    "weyl": w.to_json(),
                    "matrix": matrix_rows_json(mat),
                })
            })
            .collect();
        json!({
            "n": self.shape.n,
            "m": self.shape.m,
            "dim": self.dim,
            "terms": Value::Array(pairs),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, RealizationError> {
        let n = read_usize(v, "n")?;
        let m = read_usize(v, "m")?;
        let dim = read_usize(v, "dim")?;
        let shape = Shape::new(n, m)?;
        let pairs = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| RealizationError::Json("missing 'terms' array".into()))?;
        let mut out = RealizedOperator::zero(shape, dim);
        for pair in pairs {
            let weyl = pair
                .get("weyl")
                .ok_or_else(|| RealizationError::Json("pair missing 'weyl'".into()))?;
            let w = WeylOperator::from_json(shape, weyl)?;
            let mat = pair
                .get("matrix")
                .ok_or_else(|| RealizationError::Json("pair missing 'matrix'".into()))?;
            let mat = matrix_rows_from_json(mat, dim)
                .map_err(RealizationError::Json)?;
            for (key, coeff) in w.terms() {
                out.insert(key.clone(), mat.scale(coeff));
            }
        }
        Ok(out)
    }
}

fn matrix_rows_json(mat: &Matrix) -> Value {
    Value::Array(
        (0..mat.rows())
            .map(|r| {
                Value::Array(
                    (0..mat.cols())
                        .map(|c| Value::String(mat.get(r, c).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_rows_from_json(v: &Value, dim: usize) -> Result<Matrix, String> {
    let rows = v.as_array().ok_or("expected array of rows")?;
    if rows.len() != dim {
        return Err(format!("expected {dim} rows, got {}", rows.len()));
    }
    let mut data = Vec::with_capacity(dim);
    for row in rows {
        let row = row.as_array().ok_or("expected array of entries")?;
        if row.len() != dim {
            return Err(format!("expected {dim} columns, got {}", row.len()));
        }
        let mut parsed = Vec::with_capacity(dim);
        for e in row {
            let s = e.as_str().ok_or("entries must be strings")?;
            parsed.push(crate::qcoeff::parse(s).map_err(|err| err.to_string())?);
        }
        data.push(parsed);
    }
    Ok(Matrix::from_rows(data))
}

fn read_usize(v: &Value, key: &str) -> Result<usize, RealizationError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| RealizationError::Json(format!("missing or invalid '{key}'")))
}

/// An element of C[u*] tensor V: for each monomial, its coordinate vector
/// in the V-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    shape: Shape,
    dim: usize,
    terms: BTreeMap<ExponentMatrix, Vec<RationalQ>>,
}

impl ModuleElement {
    pub fn zero(shape: Shape, dim: usize) -> Self {
        ModuleElement {
            shape,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(shape: Shape, dim: usize, r: ExponentMatrix, b: usize) -> Self {
        let mut v = vec![RationalQ::zero(); dim];
        v[b] = RationalQ::one();
        let mut out = ModuleElement::zero(shape, dim);
        out.insert(r, v);
        out
    }

    pub fn insert(&mut self, r: ExponentMatrix, coords: Vec<RationalQ>) {
        assert_eq!(coords.len(), self.dim);
        if coords.iter().all(|c| c.is_zero()) {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(existing) => {
                for (e, c) in existing.iter_mut().zip(&coords) {
                    *e = &*e + c;
                }
                if existing.iter().all(|c| c.is_zero()) {
                    self.terms.remove(&r);
                }
            }
            None => {
                self.terms.insert(r, coords);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMatrix, &Vec<RationalQ>)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.shape, self.dim), (other.shape, other.dim));
        let mut out = self.clone();
        for (r, coords) in &other.terms {
            out.insert(r.clone(), coords.iter().map(|c| -c).collect());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// The mixed two-term coproduct on the Levi and torus generators, as pairs
/// of tensor factors (None encodes the unit).
pub struct CoproductRule {
    pub terms: Vec<(Option<GeneratorSymbol>, Option<GeneratorSymbol>)>,
}

/// The mixed Hopf structure: standard conventions on the first block,
/// opposite ones on the second, group-likes on the torus.
pub fn mixed_coproduct(shape: Shape, g: GeneratorSymbol) -> Result<CoproductRule, RealizationError> {
    let n = shape.n;
    let i = g.index;
    let terms = match g.kind {
        GenKind::K | GenKind::Kinv => vec![(Some(g), Some(g))],
        GenKind::E if i < n => vec![
            (Some(g), Some(GeneratorSymbol::kinv(i))),
            (None, Some(g)),
        ],
        GenKind::F if i < n => vec![
            (Some(g), None),
            (Some(GeneratorSymbol::k(i)), Some(g)),
        ],
        GenKind::E if i > n => vec![
            (Some(g), Some(GeneratorSymbol::k(i))),
            (None, Some(g)),
        ],
        GenKind::F if i > n => vec![
            (Some(g), None),
            (Some(GeneratorSymbol::kinv(i)), Some(g)),
        ],
        _ => return Err(RealizationError::NotLevi(g.to_string())),
    };
    Ok(CoproductRule { terms })
}

fn check_generator_index(shape: Shape, i: usize) -> Result<(), RealizationError> {
    if i < 1 || i >= shape.n + shape.m {
        return Err(RealizationError::IndexOutOfRange(i, shape.n, shape.m));
    }
    Ok(())
}

/// Gamma monomial: product of gamma_{j,k}^{e_{jk}} over the listed factors.
fn gamma_monomial(shape: Shape, factors: &[((usize, usize), i64)]) -> WeylOperator {
    let mut key = WeylKey {
        x: vec![0; shape.vars()],
        g: vec![0; shape.vars()],
        d: vec![0; shape.vars()],
    };
    for &((j, k), e) in factors {
        key.g[shape.idx(j, k)] += e;
    }
    WeylOperator::term(shape, key, RationalQ::one())
}

fn rho_weyl(
    shape: Shape,
    g: GeneratorSymbol,
    mutation: Option<Mutation>,
) -> Result<WeylOperator, RealizationError> {
    let (n, m) = (shape.n, shape.m);
    check_generator_index(shape, g.index)?;
    let i = g.index;
    match g.kind {
        GenKind::K | GenKind::Kinv => {
            let sign: i64 = if g.kind == GenKind::Kinv { -1 } else { 1 };
            let mut factors: Vec<((usize, usize), i64)> = Vec::new();
            if i < n {
                // prod_t gamma_{t,i}^-1 gamma_{t,i+1}
                for t in 1..=m {
                    factors.push(((t, i), -sign));
                    factors.push(((t, i + 1), sign));
                }
            } else if i == n {
                // prod_t gamma_{1,t}^-1 prod_s gamma_{s,n}^-1
                for t in 1..=n {
                    factors.push(((1, t), -sign));
                }
                for s in 1..=m {
                    factors.push(((s, n), -sign));
                }
            } else {
                // prod_t gamma_{i',t} gamma_{i'+1,t}^-1
                let b = i - n;
                for t in 1..=n {
                    factors.push(((b, t), sign));
                    factors.push(((b + 1, t), -sign));
                }
            }
            Ok(gamma_monomial(shape, &factors))
        }
        GenKind::E if i < n => {
            // -sum_k (prod_{t=k}^m gamma_{t,i} gamma_{t,i+1}^-1)
            //        x_{k,i+1} del_{k,i}
            let mut acc = WeylOperator::zero(shape);
            for k in 1..=m {
                let factors: Vec<_> = (k..=m)
                    .flat_map(|t| [((t, i), 1), ((t, i + 1), -1)])
                    .collect();
                let term = gamma_monomial(shape, &factors)
                    .mul(&WeylOperator::x(shape, k, i + 1))?
                    .mul(&WeylOperator::del(shape, k, i))?;
                acc = acc.add(&term)?;
            }
            let sign = if mutation == Some(Mutation::FlipRhoESign) {
                RationalQ::one()
            } else {
                -&RationalQ::one()
            };
            Ok(acc.scale(&sign))
        }
        GenKind::F if i < n => {
            // -sum_k x_{k,i} del_{k,i+1} prod_{t=1}^k gamma_{t,i}^-1
            //        gamma_{t,i+1}
            let mut acc = WeylOperator::zero(shape);
            for k in 1..=m {
                let mut term = WeylOperator::x(shape, k, i)
                    .mul(&WeylOperator::del(shape, k, i + 1))?;
                if mutation != Some(Mutation::DropRhoFGamma) {
                    let factors: Vec<_> = (1..=k)
                        .flat_map(|t| [((t, i), -1), ((t, i + 1), 1)])
                        .collect();
                    term = term.mul(&gamma_monomial(shape, &factors))?;
                }
                acc = acc.add(&term)?;
            }
            Ok(acc.scale(&-&RationalQ::one()))
        }
        GenKind::E if i > n => {
            // sum_k x_{b,k} del_{b+1,k} prod_{t=k+1}^n gamma_{b,t}
            //       gamma_{b+1,t}^-1
            let b = i - n;
            let mut acc = WeylOperator::zero(shape);
            for k in 1..=n {
                let factors: Vec<_> = ((k + 1)..=n)
                    .flat_map(|t| [((b, t), 1), ((b + 1, t), -1)])
                    .collect();
                let term = WeylOperator::x(shape, b, k)
                    .mul(&WeylOperator::del(shape, b + 1, k))?
                    .mul(&gamma_monomial(shape, &factors))?;
                acc = acc.add(&term)?;
            }
            Ok(acc)
        }
        GenKind::F if i > n => {
            // sum_k (prod_{t=1}^{k-1} gamma_{b,t}^-1 gamma_{b+1,t})
            //       x_{b+1,k} del_{b,k}
            let b = i - n;
            let mut acc = WeylOperator::zero(shape);
            for k in 1..=n {
                let factors: Vec<_> = (1..k)
                    .flat_map(|t| [((b, t), -1), ((b + 1, t), 1)])
                    .collect();
                let term = gamma_monomial(shape, &factors)
                    .mul(&WeylOperator::x(shape, b + 1, k))?
                    .mul(&WeylOperator::del(shape, b, k))?;
                acc = acc.add(&term)?;
            }
            Ok(acc)
        }
        _ => Err(RealizationError::NotLevi(g.to_string())),
    }
}

/// rho of a Levi or torus generator as a one-dimensional RealizedOperator.
pub fn rho_generator(shape: Shape, g: GeneratorSymbol) -> Result<RealizedOperator, RealizationError> {
    rho_generator_with(shape, g, None)
}

pub fn rho_generator_with(
    shape: Shape,
    g: GeneratorSymbol,
    mutation: Option<Mutation>,
) -> Result<RealizedOperator, RealizationError> {
    Ok(RealizedOperator::tensor(
        &rho_weyl(shape, g, mutation)?,
        &Matrix::identity(1),
    ))
}

/// Closed form of rho(E_{j,i}) for first-block lowering root vectors,
/// 1 <= i < j <= n: a sum over weakly increasing row tuples
/// k_1 <= ... <= k_s <= m with s = j - i.
pub fn rho_e_closed(shape: Shape, j: usize, i: usize) -> Result<RealizedOperator, RealizationError> {
    let (n, m) = (shape.n, shape.m);
    if !(1 <= i && i < j && j <= n) {
        return Err(RealizationError::BadRootIndices(j, i));
    }
    let s = j - i;
    let q_inv_minus_q = &RationalQ::q_pow(-1) - &RationalQ::q();
    let mut acc = WeylOperator::zero(shape);
    let mut tuple = vec![1usize; s];
    loop {
        // distinct row indices in the tuple
        let mut tau = 1usize;
        for t in 1..s {
            if tuple[t] != tuple[t - 1] {
                tau += 1;
            }
        }
        let coeff = q_inv_minus_q
            .pow((tau - 1) as i64)
            .expect("nonnegative power");
        let mut op = WeylOperator::x(shape, tuple[0], i);
        for t in 1..s {
            // theta factor between k_t and k_{t+1} at column i+t
            let (ka, kb) = (tuple[t - 1], tuple[t]);
            if ka != kb {
                op = op
                    .mul(&WeylOperator::del(shape, ka, i + t))?
                    .mul(&WeylOperator::x(shape, kb, i + t))?;
            } else {
                op = op.mul(&WeylOperator::gamma(shape, ka, i + t, -1))?;
            }
        }
        op = op.mul(&WeylOperator::del(shape, tuple[s - 1], j))?;
        let factors: Vec<_> = (1..=s)
            .flat_map(|a| {
                let ka = tuple[a - 1];
                (1..=ka).flat_map(move |t| [((t, i + a), 1i64), ((t, i + a - 1), -1i64)])
            })
            .collect();
        op = op.mul(&gamma_monomial(shape, &factors))?;
        acc = acc.add(&op.scale(&coeff))?;

        // next weakly increasing tuple
        let mut pos = s;
        loop {
            if pos == 0 {
                break;
            }
            if tuple[pos - 1] < m {
                tuple[pos - 1] += 1;
                for t in pos..s {
                    tuple[t] = tuple[pos - 1];
                }
                break;
            }
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    Ok(RealizedOperator::tensor(
        &acc.scale(&-&RationalQ::one()),
        &Matrix::identity(1),
    ))
}

/// pi of any generator of U_q(sl_{n+m}) on C_q[u*] tensor V.
pub fn pi_generator(
    shape: Shape,
    spec: &PModuleSpec,
    g: GeneratorSymbol,
) -> Result<RealizedOperator, RealizationError> {
    pi_generator_with(shape, spec, g, None)
}

pub fn pi_generator_with(
    shape: Shape,
    spec: &PModuleSpec,
    g: GeneratorSymbol,
    mutation: Option<Mutation>,
) -> Result<RealizedOperator, RealizationError> {
    if spec.shape() != shape {
        return Err(RealizationError::Mismatch);
    }
    check_generator_index(shape, g.index)?;
    let n = shape.n;
    let dim = spec.dim();
    if g.index == n && g.kind == GenKind::F {
        // pi(f_n) = x_{1,n} prod_{t=1}^{n-1} gamma_{1,t} tensor id
        let e = if mutation == Some(Mutation::FlipPiFnGamma) { -1 } else { 1 };
        let factors: Vec<_> = (1..n).map(|t| ((1usize, t), e)).collect();
        let w = WeylOperator::x(shape, 1, n).mul(&gamma_monomial(shape, &factors))?;
        return Ok(RealizedOperator::tensor(&w, &Matrix::identity(dim)));
    }
    if g.index == n && g.kind == GenKind::E {
        return pi_e_n(shape, spec, mutation);
    }
    // Levi and torus generators: pi(g) = sum rho(g_(1)) tensor sigma(g_(2)).
    let rule = mixed_coproduct(shape, g)?;
    let mut acc = RealizedOperator::zero(shape, dim);
    for (left, right) in &rule.terms {
        let w = match left {
            Some(l) => rho_weyl(shape, *l, mutation)?,
            None => WeylOperator::identity(shape),
        };
        let mat = match right {
            Some(r) => spec.matrix(*r)?,
            None => Matrix::identity(dim),
        };
        acc = acc.add(&RealizedOperator::tensor(&w, &mat))?;
    }
    Ok(acc)
}

/// pi(E_{n,k}) for k < n, assembled from the coproduct of the root vector:
/// rho(E_{n,k}) tensor id + rho(K_{k,n}) tensor sigma(E_{n,k})
/// + (q - q^-1) sum_{k<l<n} rho(E_{l,k} K_{l,n}) tensor sigma(E_{n,l}).
pub fn pi_e_nk(
    shape: Shape,
    spec: &PModuleSpec,
    k: usize,
) -> Result<RealizedOperator, RealizationError> {
    let n = shape.n;
    if !(1 <= k && k < n) {
        return Err(RealizationError::BadRootIndices(n, k));
    }
    let dim = spec.dim();
    let cartan_weyl = |from: usize, to: usize| -> Result<WeylOperator, RealizationError> {
        let mut w = WeylOperator::identity(shape);
        for t in from..to {
            w = w.mul(&rho_weyl(shape, GeneratorSymbol::k(t), None)?)?;
        }
        Ok(w)
    };
    let rho_enk = match rho_e_closed(shape, n, k) {
        Ok(op) => op,
        Err(_) => unreachable!("k < n checked"),
    };
    let mut acc = RealizedOperator::zero(shape, dim);
    for (key, mat) in &rho_enk.terms {
        acc.insert(key.clone(), Matrix::identity(dim).scale(mat.get(0, 0)));
    }
    acc = acc.add(&RealizedOperator::tensor(
        &cartan_weyl(k, n)?,
        &levi_root_matrix(spec, n, k)?,
    ))?;
    let qdiff = &RationalQ::q() - &RationalQ::q_pow(-1);
    for l in (k + 1)..n {
        let w = match rho_e_closed(shape, l, k) {
            Ok(op) => op,
            Err(_) => unreachable!("k < l < n"),
        };
        let mut weyl = WeylOperator::zero(shape);
        for (key, mat) in &w.terms {
            weyl = weyl.add(&WeylOperator::term(shape, key.clone(), mat.get(0, 0).clone()))?;
        }
        let weyl = weyl.mul(&cartan_weyl(l, n)?)?;
        acc = acc.add(
            &RealizedOperator::tensor(&weyl, &levi_root_matrix(spec, n, l)?).scale(&qdiff),
        )?;
    }
    Ok(acc)
}

fn pi_e_n(
    shape: Shape,
    spec: &PModuleSpec,
    mutation: Option<Mutation>,
) -> Result<RealizedOperator, RealizationError> {
    let (n, m) = (shape.n, shape.m);
    let dim = spec.dim();
    let id = Matrix::identity(dim);
    let kn = spec.matrix(GeneratorSymbol::k(n))?;
    let kn_inv = spec.matrix(GeneratorSymbol::kinv(n))?;
    let mut acc = RealizedOperator::zero(shape, dim);

    // sum_{k<n} pi(E_{n,k} k_n) (prod_{t=1}^k gamma_{1,t} del_{1,k}
    //                            tensor id)
    let pi_kn = pi_generator_with(shape, spec, GeneratorSymbol::k(n), mutation)?;
    for k in 1..n {
        let factors: Vec<_> = (1..=k).map(|t| ((1usize, t), 1i64)).collect();
        let w = gamma_monomial(shape, &factors).mul(&WeylOperator::del(shape, 1, k))?;
        let tail = RealizedOperator::tensor(&w, &id);
        let term = pi_e_nk(shape, spec, k)?.compose(&pi_kn)?.compose(&tail)?;
        acc = acc.add(&term)?;
    }

    // - sum_{k=2}^m prod_{t=k}^m gamma_{t,n} del_{k,n}
    //               tensor sigma(k_n^-1 E_{n+k,n+1})
    for k in 2..=m {
        let factors: Vec<_> = (k..=m).map(|t| ((t, n), 1i64)).collect();
        let w = gamma_monomial(shape, &factors).mul(&WeylOperator::del(shape, k, n))?;
        let mat = &kn_inv * &levi_root_matrix(spec, n + k, n + 1)?;
        acc = acc.sub(&RealizedOperator::tensor(&w, &mat))?;
    }

    // - sum_{k=1}^m prod_{t<k} gamma_{t,n} prod_{t>k} gamma_{t,n}^-1
    //               x_{k,n} del_{k,n} del_{1,n} tensor sigma(k_n)
    if mutation != Some(Mutation::DropPiEnMultiplicationSum) {
        for k in 1..=m {
            let factors: Vec<_> = (1..k)
                .map(|t| ((t, n), 1i64))
                .chain(((k + 1)..=m).map(|t| ((t, n), -1i64)))
                .collect();
            let w = gamma_monomial(shape, &factors)
                .mul(&WeylOperator::x(shape, k, n))?
                .mul(&WeylOperator::del(shape, k, n))?
                .mul(&WeylOperator::del(shape, 1, n))?;
            acc = acc.sub(&RealizedOperator::tensor(&w, &kn))?;
        }
    }

    // + 1 tensor sigma(e_n), which is zero since the nilradical kills V.

    // + prod_t gamma_{t,n} del_{1,n}
    //   tensor (sigma(k_n) - sigma(k_n^-1)) / (q - q^-1)
    if mutation != Some(Mutation::DropPiEnDifferenceQuotient) {
        let qdiff_inv = RationalQ::one()
            .checked_div(&(&RationalQ::q() - &RationalQ::q_pow(-1)))
            .expect("q - q^-1 is nonzero");
        let factors: Vec<_> = (1..=m).map(|t| ((t, n), 1i64)).collect();
        let w = gamma_monomial(shape, &factors).mul(&WeylOperator::del(shape, 1, n))?;
        let mat = (&kn - &kn_inv).scale(&qdiff_inv);
        acc = acc.add(&RealizedOperator::tensor(&w, &mat))?;
    }

    Ok(acc)
}

/// Evaluation of formal generator words by pi on a fixed module.
pub struct RealizedAlgebra<'a> {
    shape: Shape,
    spec: &'a PModuleSpec,
    mutation: Option<Mutation>,
}

impl<'a> RealizedAlgebra<'a> {
    pub fn new(spec: &'a PModuleSpec) -> Self {
        RealizedAlgebra {
            shape: spec.shape(),
            spec,
            mutation: None,
        }
    }

    pub fn with_mutation(spec: &'a PModuleSpec, mutation: Mutation) -> Self {
        RealizedAlgebra {
            shape: spec.shape(),
            spec,
            mutation: Some(mutation),
        }
    }
}

impl crate::uqalg::WordAlgebra for RealizedAlgebra<'_> {
    type Elem = RealizedOperator;
    fn identity(&self) -> RealizedOperator {
        RealizedOperator::identity(self.shape, self.spec.dim())
    }
    fn mul(&self, a: &RealizedOperator, b: &RealizedOperator) -> RealizedOperator {
        a.compose(b).expect("uniform shape and dimension")
    }
    fn add(&self, a: &RealizedOperator, b: &RealizedOperator) -> RealizedOperator {
        a.add(b).expect("uniform shape and dimension")
    }
    fn scale(&self, a: &RealizedOperator, c: &RationalQ) -> RealizedOperator {
        a.scale(c)
    }
    fn assign(&self, g: GeneratorSymbol) -> Result<RealizedOperator, crate::uqalg::UqError> {
        pi_generator_with(self.shape, self.spec, g, self.mutation)
            .map_err(|e| crate::uqalg::UqError::Domain(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmodule::trivial_module;
    use crate::qcoeff::parse;
    use crate::qcoordinate::{qmul, variable};
    use crate::uqalg::{evaluate_word, root_vector_word};

    fn shape(n: usize, m: usize) -> Shape {
        Shape::new(n, m).unwrap()
    }

    fn unit_vec(dim: usize, b: usize) -> Vec<RationalQ> {
        let mut v = vec![RationalQ::zero(); dim];
        v[b] = RationalQ::one();
        v
    }

    #[test]
    fn rho_e1_shape21_matches_display() {
        // -gamma_{1,1} gamma_{1,2}^-1 x_{1,2} del_{1,1}
        let s = shape(2, 1);
        let got = rho_weyl(s, GeneratorSymbol::e(1), None).unwrap();
        let expect = gamma_monomial(s, &[((1, 1), 1), ((1, 2), -1)])
            .mul(&WeylOperator::x(s, 1, 2))
            .unwrap()
            .mul(&WeylOperator::del(s, 1, 1))
            .unwrap()
            .scale(&-&RationalQ::one());
        assert_eq!(got, expect);
    }

    #[test]
    fn rho_k2_shape21_is_pure_gamma() {
        let s = shape(2, 1);
        let got = rho_weyl(s, GeneratorSymbol::k(2), None).unwrap();
        let expect = gamma_monomial(s, &[((1, 1), -1), ((1, 2), -2)]);
        assert_eq!(got, expect);
    }

    #[test]
    fn rho_action_degree_one() {
        let s = shape(2, 1);
        let r11 = ExponentMatrix::unit(s, 1, 1);
        let r12 = ExponentMatrix::unit(s, 1, 2);
        // rho(e_1) x_{1,1} = -q^-1 x_{1,2}
        let img = rho_weyl(s, GeneratorSymbol::e(1), None)
            .unwrap()
            .apply_monomial(&r11);
        assert_eq!(img.coeff(&r12), parse("-q^-1").unwrap());
        assert_eq!(img.terms().count(), 1);
        // rho(f_1) x_{1,2} = -q x_{1,1}
        let img = rho_weyl(s, GeneratorSymbol::f(1), None)
            .unwrap()
            .apply_monomial(&r12);
        assert_eq!(img.coeff(&r11), parse("-q").unwrap());
        assert_eq!(img.terms().count(), 1);
    }

    #[test]
    fn adjoint_action_delta_formulas() {
        // Degree-1 action of every generator on every variable.
        for (n, m) in [(2, 2), (3, 3), (3, 1), (1, 3)] {
            let s = shape(n, m);
            for (j, k) in s.var_indices() {
                let r = ExponentMatrix::unit(s, j, k);
                for i in 1..(n + m) {
                    if i != n {
                        let img = rho_weyl(s, GeneratorSymbol::e(i), None)
                            .unwrap()
                            .apply_monomial(&r);
                        let expect = if i < n {
                            // -q^-1 delta_{i,k} x_{j,k+1}
                            if i == k {
                                Some((ExponentMatrix::unit(s, j, k + 1), parse("-q^-1").unwrap()))
                            } else {
                                None
                            }
                        } else {
                            // delta_{i-n+1,j} x_{j-1,k}
                            if i - n + 1 == j {
                                Some((ExponentMatrix::unit(s, j - 1, k), RationalQ::one()))
                            } else {
                                None
                            }
                        };
                        check_single(&img, expect, "e", i, j, k);

                        let img = rho_weyl(s, GeneratorSymbol::f(i), None)
                            .unwrap()
                            .apply_monomial(&r);
                        let expect = if i < n {
                            if i + 1 == k {
                                Some((ExponentMatrix::unit(s, j, k - 1), parse("-q").unwrap()))
                            } else {
                                None
                            }
                        } else if i - n == j {
                            Some((ExponentMatrix::unit(s, j + 1, k), RationalQ::one()))
                        } else {
                            None
                        };
                        check_single(&img, expect, "f", i, j, k);
                    }
                    let img = rho_weyl(s, GeneratorSymbol::k(i), None)
                        .unwrap()
                        .apply_monomial(&r);
                    let exp: i64 = if i < n {
                        ((i + 1 == k) as i64) - ((i == k) as i64)
                    } else if i == n {
                        -((j == 1) as i64) - ((k == n) as i64)
                    } else {
                        (i - n == j) as i64 - (i - n + 1 == j) as i64
                    };
                    assert_eq!(img.coeff(&r), RationalQ::q_pow(exp), "k{i} on x({j},{k})");
                    assert_eq!(img.terms().count(), 1);
                }
            }
        }
    }

    fn check_single(
        img: &crate::qweyl::Polynomial,
        expect: Option<(ExponentMatrix, RationalQ)>,
        kind: &str,
        i: usize,
        j: usize,
        k: usize,
    ) {
        match expect {
            None => assert!(img.is_zero(), "{kind}{i} on x({j},{k}) should vanish"),
            Some((r, c)) => {
                assert_eq!(img.coeff(&r), c, "{kind}{i} on x({j},{k})");
                assert_eq!(img.terms().count(), 1, "{kind}{i} on x({j},{k})");
            }
        }
    }

    #[test]
    fn closed_form_at_s1_is_rho_f() {
        for (n, m) in [(2, 1), (2, 2), (3, 2)] {
            let s = shape(n, m);
            for i in 1..n {
                let closed = rho_e_closed(s, i + 1, i).unwrap();
                let direct = rho_generator(s, GeneratorSymbol::f(i)).unwrap();
                assert_eq!(closed, direct, "shape ({n},{m}), i={i}");
            }
        }
    }

    #[test]
    fn closed_form_matches_recursion() {
        for (n, m) in [(3, 1), (3, 2), (4, 2)] {
            let s = shape(n, m);
            let spec = trivial_module(s);
            let alg = RealizedAlgebra::new(&spec);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let closed = rho_e_closed(s, j, i).unwrap();
                    let word = root_vector_word(j, i, n + m).unwrap();
                    let rec = evaluate_word(&word, &alg).unwrap();
                    assert_eq!(closed, rec, "E_({j},{i}) on shape ({n},{m})");
                }
            }
        }
    }

    #[test]
    fn pi_fn_on_constant() {
        let s = shape(2, 1);
        let spec = trivial_module(s);
        let op = pi_generator(s, &spec, GeneratorSymbol::f(2)).unwrap();
        let out = op.act(&ExponentMatrix::zero(s), &unit_vec(1, 0)).unwrap();
        let mut expect = ModuleElement::zero(s, 1);
        expect.insert(ExponentMatrix::unit(s, 1, 2), unit_vec(1, 0));
        assert_eq!(out, expect);
    }

    #[test]
    fn pi_k2_on_x11() {
        let s = shape(2, 1);
        let spec = trivial_module(s);
        let op = pi_generator(s, &spec, GeneratorSymbol::k(2)).unwrap();
        let r = ExponentMatrix::unit(s, 1, 1);
        let out = op.act(&r, &unit_vec(1, 0)).unwrap();
        let mut expect = ModuleElement::zero(s, 1);
        expect.insert(r.clone(), vec![parse("q^-1").unwrap()]);
        assert_eq!(out, expect);
    }

    #[test]
    fn pi_equals_rho_for_trivial_module() {
        for (n, m) in [(2, 1), (2, 2)] {
            let s = shape(n, m);
            let spec = trivial_module(s);
            for i in 1..(n + m) {
                for kind in [GenKind::E, GenKind::F, GenKind::K, GenKind::Kinv] {
                    if i == n && (kind == GenKind::E || kind == GenKind::F) {
                        continue;
                    }
                    let g = GeneratorSymbol { kind, index: i };
                    let pi = pi_generator(s, &spec, g).unwrap();
                    let rho = rho_generator_with(s, g, None).unwrap();
                    assert_eq!(pi, rho, "{g} on shape ({n},{m})");
                }
            }
        }
    }

    #[test]
    fn pi_e_nplusj_acts_as_left_multiplication() {
        // Assemble pi(E_{n+j,k}) by the root vector recursion; it must act
        // as left quantum multiplication by x_{j,k}.
        let s = shape(2, 2);
        let spec = trivial_module(s);
        let alg = RealizedAlgebra::new(&spec);
        for (j, k) in s.var_indices() {
            let word = root_vector_word(s.n + j, k, s.n + s.m).unwrap();
            let op = evaluate_word(&word, &alg).unwrap();
            for r in crate::qweyl::monomials_up_to(s, 2) {
                let got = op.act(&r, &unit_vec(1, 0)).unwrap();
                let expect_poly = qmul(
                    &variable(s, j, k),
                    &crate::qweyl::Polynomial::monomial(s, r.clone(), RationalQ::one()),
                );
                let mut expect = ModuleElement::zero(s, 1);
                for (mono, c) in expect_poly.terms() {
                    expect.insert(mono.clone(), vec![c.clone()]);
                }
                assert_eq!(got, expect, "E_(n+{j},{k}) on {r:?}");
            }
        }
    }

    #[test]
    fn compose_respects_act() {
        let s = shape(2, 1);
        let spec = trivial_module(s);
        let f2 = pi_generator(s, &spec, GeneratorSymbol::f(2)).unwrap();
        let sq = f2.compose(&f2).unwrap();
        let out = sq.act(&ExponentMatrix::zero(s), &unit_vec(1, 0)).unwrap();
        // f_2^2 on the highest vector: gamma_{1,1} passes x_{1,2} untouched
        // (different variables), then x_{1,2} x_{1,2}; coefficient 1.
        let mut r = ExponentMatrix::zero(s);
        r.set(s, 1, 2, 2);
        let mut expect = ModuleElement::zero(s, 1);
        expect.insert(r, vec![RationalQ::one()]);
        assert_eq!(out, expect);
    }

    #[test]
    fn realized_operator_json_round_trip() {
        let s = shape(2, 2);
        let spec = crate::pmodule::vector_module(s, crate::pmodule::LeviBlock::First).unwrap();
        let op = pi_generator(s, &spec, GeneratorSymbol::e(2)).unwrap();
        let j = op.to_json();
        let back = RealizedOperator::from_json(&j).unwrap();
        assert_eq!(op, back);
    }

    #[test]
    fn mutations_change_the_operators() {
        // A character with k_n = q^2 keeps the difference-quotient summand
        // of pi(e_n) nonzero, so every mutation is visible.
        let s = shape(2, 2);
        let spec =
            crate::pmodule::character_module(s, &[1, 1], parse("q^2").unwrap()).unwrap();
        for mutation in ALL_MUTATIONS {
            let differs = (1..4).any(|i| {
                for kind in [GenKind::E, GenKind::F] {
                    let g = GeneratorSymbol { kind, index: i };
                    let a = pi_generator(s, &spec, g).unwrap();
                    let b = pi_generator_with(s, &spec, g, Some(mutation)).unwrap();
                    if a != b {
                        return true;
                    }
                }
                false
            });
            assert!(differs, "{mutation:?} must change some generator");
        }
    }
}
