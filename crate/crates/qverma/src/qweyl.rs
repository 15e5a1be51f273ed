//! The quantum Weyl algebra on the m x n variables x_{j,k}, with normal
//! forms, composition and its defining action on polynomials.
//!
//! Normal form of a term: all x's, then all gamma's, then all del's, as a
//! single exponent triple per variable. Written products act right to left:
//! the rightmost factor is applied first.

use crate::qcoeff::{q_number, RationalQ};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("invalid shape: n = {0}, m = {1}")]
    InvalidShape(usize, usize),
    #[error("variable index ({0}, {1}) outside shape")]
    IndexOutOfRange(usize, usize),
    #[error("malformed operator JSON: {0}")]
    Json(String),
}

/// Block sizes of the two-block parabolic: `n` columns and `m` rows of
/// variables x_{j,k}, 1 <= j <= m, 1 <= k <= n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub n: usize,
    pub m: usize,
}

impl Shape {
    pub fn new(n: usize, m: usize) -> Result<Self, WeylError> {
        if n < 1 || m < 1 || n + m < 2 {
            return Err(WeylError::InvalidShape(n, m));
        }
        Ok(Shape { n, m })
    }

    pub fn vars(&self) -> usize {
        self.n * self.m
    }

    /// Flat row-major index of variable (j, k), both 1-based.
    pub fn idx(&self, j: usize, k: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.m && k >= 1 && k <= self.n);
        (j - 1) * self.n + (k - 1)
    }

    pub fn check_index(&self, j: usize, k: usize) -> Result<(), WeylError> {
        if j < 1 || j > self.m || k < 1 || k > self.n {
            return Err(WeylError::IndexOutOfRange(j, k));
        }
        Ok(())
    }

    /// All variable indices (j, k) in row-major order.
    pub fn var_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.m).flat_map(move |j| (1..=self.n).map(move |k| (j, k)))
    }
}

/// An m x n matrix of nonnegative integers: the multi-exponent r of x^r,
/// stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    entries: Vec<u32>,
}

impl ExponentMatrix {
    pub fn zero(shape: Shape) -> Self {
        ExponentMatrix {
            entries: vec![0; shape.vars()],
        }
    }

    /// The unit matrix 1_{j,k}.
    pub fn unit(shape: Shape, j: usize, k: usize) -> Self {
        let mut r = Self::zero(shape);
        r.entries[shape.idx(j, k)] = 1;
        r
    }

    pub fn from_rows(shape: Shape, rows: &[Vec<u32>]) -> Result<Self, WeylError> {
        if rows.len() != shape.m || rows.iter().any(|r| r.len() != shape.n) {
            return Err(WeylError::InvalidShape(shape.n, shape.m));
        }
        Ok(ExponentMatrix {
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn get(&self, shape: Shape, j: usize, k: usize) -> u32 {
        self.entries[shape.idx(j, k)]
    }

    pub fn set(&mut self, shape: Shape, j: usize, k: usize, v: u32) {
        self.entries[shape.idx(j, k)] = v;
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_rows(&self, shape: Shape) -> Vec<Vec<u32>> {
        (0..shape.m)
            .map(|j| self.entries[j * shape.n..(j + 1) * shape.n].to_vec())
            .collect()
    }
}

/// Monomials of total degree <= d, ordered degree-first, then row-major
/// lexicographically on the variables (x_{1,1} before x_{1,2}, ...).
pub fn monomials_up_to(shape: Shape, d: u32) -> Vec<ExponentMatrix> {
    let vars = shape.vars();
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        // Highest exponent on the earliest variable first.
        for e in (0..=remaining).rev() {
            current[pos] = e;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    for deg in 0..=d {
        let mut raw = Vec::new();
        let mut exact = Vec::new();
        rec(&mut raw, &mut current, 0, deg);
        for v in raw {
            if v.iter().sum::<u32>() == deg {
                exact.push(ExponentMatrix { entries: v });
            }
        }
        out.extend(exact);
    }
    out
}

/// Key of a normal-form term: x, gamma and del exponents per variable.
/// Gamma exponents may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylKey {
    pub x: Vec<u32>,
    pub g: Vec<i64>,
    pub d: Vec<u32>,
}

impl WeylKey {
    fn identity(shape: Shape) -> Self {
        WeylKey {
            x: vec![0; shape.vars()],
            g: vec![0; shape.vars()],
            d: vec![0; shape.vars()],
        }
    }
}

/// A normal-form element of the quantum Weyl algebra: a finite sum of terms
/// coeff * x^A gamma^B del^C with unique keys and nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    shape: Shape,
    terms: BTreeMap<WeylKey, RationalQ>,
}

impl WeylOperator {
    pub fn zero(shape: Shape) -> Self {
        WeylOperator {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(shape: Shape) -> Self {
        WeylOperator::term(shape, WeylKey::identity(shape), RationalQ::one())
    }

    pub fn term(shape: Shape, key: WeylKey, coeff: RationalQ) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        WeylOperator { shape, terms }
    }

    pub fn scalar(shape: Shape, c: RationalQ) -> Self {
        WeylOperator::term(shape, WeylKey::identity(shape), c)
    }

    /// The multiplication operator x_{j,k}.
    pub fn x(shape: Shape, j: usize, k: usize) -> Self {
        let mut key = WeylKey::identity(shape);
        key.x[shape.idx(j, k)] = 1;
        WeylOperator::term(shape, key, RationalQ::one())
    }

    /// The scaling automorphism gamma_{j,k}^e (any integer e).
    pub fn gamma(shape: Shape, j: usize, k: usize, e: i64) -> Self {
        let mut key = WeylKey::identity(shape);
        key.g[shape.idx(j, k)] = e;
        WeylOperator::term(shape, key, RationalQ::one())
    }

    /// The twisted derivation del_{j,k}.
    pub fn del(shape: Shape, j: usize, k: usize) -> Self {
        let mut key = WeylKey::identity(shape);
        key.d[shape.idx(j, k)] = 1;
        WeylOperator::term(shape, key, RationalQ::one())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &RationalQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: WeylKey, coeff: RationalQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (key, coeff) in &other.terms {
            out.insert(key.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.add(&other.scale(&RationalQ::from_int(-1)))
    }

    pub fn scale(&self, c: &RationalQ) -> Self {
        if c.is_zero() {
            return WeylOperator::zero(self.shape);
        }
        WeylOperator {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<(), WeylError> {
        if self.shape != other.shape {
            return Err(WeylError::ShapeMismatch(
                self.shape.n,
                self.shape.m,
                other.shape.n,
                other.shape.m,
            ));
        }
        Ok(())
    }

    /// Normal form of the composition self * other (other acts first).
    pub fn mul(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_shape(other)?;
        let mut out = WeylOperator::zero(self.shape);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                for (key, coeff) in term_product(self.shape, ka, kb) {
                    out.insert(key, &(ca * cb) * &coeff);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = WeylOperator::identity(self.shape);
        for _ in 0..e {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    /// Largest increase in total degree this operator can cause; 0 for the
    /// zero operator.
    pub fn max_raise(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| {
                let up: u32 = k.x.iter().sum();
                let down: u32 = k.d.iter().sum();
                up.saturating_sub(down)
            })
            .max()
            .unwrap_or(0)
    }

    /// Apply to a polynomial: del's act first (q-derivative rule), then
    /// gamma's (eigenvalue q^r), then multiplication by x.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, WeylError> {
        if self.shape != p.shape {
            return Err(WeylError::ShapeMismatch(
                self.shape.n,
                self.shape.m,
                p.shape.n,
                p.shape.m,
            ));
        }
        let mut out = Polynomial::zero(self.shape);
        for (key, coeff) in &self.terms {
            for (r, pc) in &p.terms {
                if let Some((c, res)) = apply_term(self.shape, key, r) {
                    out.insert(res, &(coeff * pc) * &c);
                }
            }
        }
        Ok(out)
    }

    /// Apply to the single monomial x^r.
    pub fn apply_monomial(&self, r: &ExponentMatrix) -> Polynomial {
        let p = Polynomial::monomial(self.shape, r.clone(), RationalQ::one());
        self.apply(&p).expect("same shape")
    }

    pub fn to_json(&self) -> Value {
        let shape = self.shape;
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(key, coeff)| {
                json!({
                    "coeff": coeff.to_string(),
                    "x": rows_of(&key.x, shape),
                    "gamma": rows_of(&key.g, shape),
                    "del": rows_of(&key.d, shape),
                })
            })
            .collect();
        Value::Array(terms)
    }

    pub fn from_json(shape: Shape, v: &Value) -> Result<Self, WeylError> {
        let arr = v
            .as_array()
            .ok_or_else(|| WeylError::Json("expected an array of terms".into()))?;
        let mut out = WeylOperator::zero(shape);
        for t in arr {
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| WeylError::Json("term missing 'coeff'".into()))?;
            let coeff = crate::qcoeff::parse(coeff)
                .map_err(|e| WeylError::Json(format!("bad coefficient: {e}")))?;
            let key = WeylKey {
                x: flat_u32(t.get("x"), shape)?,
                g: flat_i64(t.get("gamma"), shape)?,
                d: flat_u32(t.get("del"), shape)?,
            };
            out.insert(key, coeff);
        }
        Ok(out)
    }
}

fn rows_of<T: Copy + Into<Value>>(flat: &[T], shape: Shape) -> Value {
    Value::Array(
        (0..shape.m)
            .map(|j| {
                Value::Array(
                    flat[j * shape.n..(j + 1) * shape.n]
                        .iter()
                        .map(|&v| v.into())
                        .collect(),
                )
            })
            .collect(),
    )
}

fn flat_i64(v: Option<&Value>, shape: Shape) -> Result<Vec<i64>, WeylError> {
    let rows = v
        .and_then(Value::as_array)
        .ok_or_else(|| WeylError::Json("expected a matrix of integers".into()))?;
    if rows.len() != shape.m {
        return Err(WeylError::Json("wrong number of rows".into()));
    }
    let mut flat = Vec::with_capacity(shape.vars());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| WeylError::Json("expected a row array".into()))?;
        if row.len() != shape.n {
            return Err(WeylError::Json("wrong number of columns".into()));
        }
        for e in row {
            flat.push(
                e.as_i64()
                    .ok_or_else(|| WeylError::Json("expected an integer entry".into()))?,
            );
        }
    }
    Ok(flat)
}

fn flat_u32(v: Option<&Value>, shape: Shape) -> Result<Vec<u32>, WeylError> {
    flat_i64(v, shape)?
        .into_iter()
        .map(|e| {
            u32::try_from(e).map_err(|_| WeylError::Json("expected a nonnegative entry".into()))
        })
        .collect()
}

/// Normal form of del^c x^a in a single variable, as terms
/// (coeff, x-exponent, gamma-exponent, del-exponent).
fn nf_del_x(c: u32, a: u32) -> Vec<(RationalQ, u32, i64, u32)> {
    let mut terms = vec![(RationalQ::one(), a, 0i64, 0u32)];
    for _ in 0..c {
        let mut next: BTreeMap<(u32, i64, u32), RationalQ> = BTreeMap::new();
        for (coeff, e, f, g) in terms {
            // del * x^e gamma^f del^g
            //   = q^{e+f} x^e gamma^f del^{g+1} + [e]_q x^{e-1} gamma^{f-1} del^g
            let lead = &coeff * &RationalQ::q_pow(e as i64 + f);
            add_to(&mut next, (e, f, g + 1), lead);
            if e > 0 {
                let drop = &coeff * &q_number(e as i64);
                add_to(&mut next, (e - 1, f - 1, g), drop);
            }
        }
        terms = next
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((e, f, g), c)| (c, e, f, g))
            .collect();
    }
    terms
}

fn add_to(map: &mut BTreeMap<(u32, i64, u32), RationalQ>, key: (u32, i64, u32), v: RationalQ) {
    let entry = map.entry(key).or_insert_with(RationalQ::zero);
    *entry = &*entry + &v;
}

/// Normal form of the product of two normal-form terms (coefficient 1).
/// Generators with distinct variable indices commute exactly, so the
/// computation is per variable with a cartesian combination.
fn term_product(shape: Shape, a: &WeylKey, b: &WeylKey) -> Vec<(WeylKey, RationalQ)> {
    let vars = shape.vars();
    let mut out: Vec<(WeylKey, RationalQ)> = vec![(WeylKey::identity(shape), RationalQ::one())];
    for v in 0..vars {
        let (xa, ga, da) = (a.x[v], a.g[v], a.d[v]);
        let (xb, gb, db) = (b.x[v], b.g[v], b.d[v]);
        // x^xa g^ga (d^da x^xb) g^gb d^db, with the middle factor expanded
        // to normal form.
        let mut local: Vec<(RationalQ, u32, i64, u32)> = Vec::new();
        for (coeff, e, f, g) in nf_del_x(da, xb) {
            let twist = RationalQ::q_pow(ga * e as i64 + g as i64 * gb);
            local.push((&coeff * &twist, xa + e, ga + f + gb, g + db));
        }
        let mut next = Vec::with_capacity(out.len() * local.len());
        for (key, coeff) in &out {
            for (lc, le, lf, lg) in &local {
                let mut key = key.clone();
                key.x[v] = *le;
                key.g[v] = *lf;
                key.d[v] = *lg;
                next.push((key, coeff * lc));
            }
        }
        out = next;
    }
    out
}

/// Apply a single normal-form term to the monomial x^r; returns the scalar
/// and resulting exponent, or None when a del annihilates the monomial.
fn apply_term(
    shape: Shape,
    key: &WeylKey,
    r: &ExponentMatrix,
) -> Option<(RationalQ, ExponentMatrix)> {
    let mut coeff = RationalQ::one();
    let mut res = r.clone();
    for v in 0..shape.vars() {
        let rv = res.entries[v];
        let dv = key.d[v];
        if dv > rv {
            return None;
        }
        // del^dv: product of q-numbers [rv]_q [rv-1]_q ... then gamma
        // eigenvalue on the lowered exponent, then x multiplication.
        for i in 0..dv {
            coeff = &coeff * &q_number((rv - i) as i64);
        }
        let lowered = rv - dv;
        if key.g[v] != 0 {
            coeff = &coeff * &RationalQ::q_pow(key.g[v] * lowered as i64);
        }
        res.entries[v] = lowered + key.x[v];
    }
    Some((coeff, res))
}

/// A polynomial in the commuting variables x_{j,k} over Q(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    shape: Shape,
    terms: BTreeMap<ExponentMatrix, RationalQ>,
}

impl Polynomial {
    pub fn zero(shape: Shape) -> Self {
        Polynomial {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> Self {
        Polynomial::monomial(shape, ExponentMatrix::zero(shape), RationalQ::one())
    }

    pub fn monomial(shape: Shape, r: ExponentMatrix, coeff: RationalQ) -> Self {
        let mut p = Polynomial::zero(shape);
        p.insert(r, coeff);
        p
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn insert(&mut self, r: ExponentMatrix, coeff: RationalQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&r);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(r, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.insert(r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.insert(r.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &RationalQ) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.shape);
        }
        Polynomial {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .map(|(r, v)| (r.clone(), v * c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMatrix, &RationalQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, r: &ExponentMatrix) -> RationalQ {
        self.terms.get(r).cloned().unwrap_or_else(RationalQ::zero)
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let shape = self.shape;
        for (i, (key, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({coeff})")?;
            for (j, k) in shape.var_indices() {
                let v = shape.idx(j, k);
                if key.x[v] > 0 {
                    write!(f, " x[{j},{k}]")?;
                    if key.x[v] > 1 {
                        write!(f, "^{}", key.x[v])?;
                    }
                }
            }
            for (j, k) in shape.var_indices() {
                let v = shape.idx(j, k);
                if key.g[v] != 0 {
                    write!(f, " g[{j},{k}]")?;
                    if key.g[v] != 1 {
                        write!(f, "^{}", key.g[v])?;
                    }
                }
            }
            for (j, k) in shape.var_indices() {
                let v = shape.idx(j, k);
                if key.d[v] > 0 {
                    write!(f, " D[{j},{k}]")?;
                    if key.d[v] > 1 {
                        write!(f, "^{}", key.d[v])?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The matrix of `a` on the span of monomials of degree <= d: column r holds
/// the coordinates of a(x^r). Rows run over monomials of degree
/// <= d + max raising degree of `a`, in the same basis order.
pub struct DegreeMatrix {
    pub matrix: crate::matrix::Matrix,
    pub col_basis: Vec<ExponentMatrix>,
    pub row_basis: Vec<ExponentMatrix>,
}

pub fn matrix_on_degree(a: &WeylOperator, d: u32) -> DegreeMatrix {
    let shape = a.shape();
    let col_basis = monomials_up_to(shape, d);
    let row_basis = monomials_up_to(shape, d + a.max_raise());
    let row_index: BTreeMap<&ExponentMatrix, usize> =
        row_basis.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut matrix = crate::matrix::Matrix::zero(row_basis.len(), col_basis.len());
    for (c, r) in col_basis.iter().enumerate() {
        let image = a.apply_monomial(r);
        for (mono, coeff) in image.terms() {
            let row = *row_index
                .get(mono)
                .expect("image exceeded declared raising degree");
            matrix.set(row, c, coeff.clone());
        }
    }
    DegreeMatrix {
        matrix,
        col_basis,
        row_basis,
    }
}
