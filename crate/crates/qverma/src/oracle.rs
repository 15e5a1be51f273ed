//! Independent classical-limit oracle: the generalized Verma module for
//! sl_{n+m} over Sym(u-bar) tensor V at q = 1, computed directly from
//! matrix-unit commutators. This path shares no rewriting code with the
//! quantum operators: the only common vocabulary is the exponent-matrix
//! monomial basis.

use crate::pmodule::PModuleSpec;
use crate::qweyl::{monomials_up_to, ExponentMatrix, Shape};
use crate::uqalg::{GenKind, GeneratorSymbol};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("generator {0} has a pole at q = 1")]
    Pole(String),
    #[error("k{0} eigenvalue {1} is not an integer power of q")]
    NonSpecializable(usize, String),
    #[error("k{0} eigenvalue has sign -1; no classical comparison")]
    NegativeSign(usize),
}

/// Dense matrix over exact rationals, local to the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn diagonal(entries: Vec<BigRational>) -> Self {
        let dim = entries.len();
        let mut m = RatMatrix::zero(dim, dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k).is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = self.get(r, k) * other.get(k, c) + out.get(r, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    fn add_scaled(&mut self, other: &RatMatrix, c: &BigRational) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * c;
        }
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// Chevalley generators of classical sl_{n+m}, indices 1..n+m-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalGenerator {
    E(usize),
    F(usize),
    H(usize),
}

/// An element of sl_{n+m} tracked through the commutator recursion: either
/// a matrix unit e_{ab} (a != b) or a traceless diagonal element.
#[derive(Clone, Debug, PartialEq)]
enum CElem {
    Unit(usize, usize),
    Cartan(Vec<BigRational>),
}

/// An element of Sym(u-bar) tensor V over exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalElement {
    shape: Shape,
    dim: usize,
    terms: BTreeMap<ExponentMatrix, Vec<BigRational>>,
}

impl ClassicalElement {
    pub fn zero(shape: Shape, dim: usize) -> Self {
        ClassicalElement {
            shape,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, r: ExponentMatrix, coords: Vec<BigRational>) {
        assert_eq!(coords.len(), self.dim);
        if coords.iter().all(|c| c.is_zero()) {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(existing) => {
                for (e, c) in existing.iter_mut().zip(&coords) {
                    *e += c;
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

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMatrix, &Vec<BigRational>)> {
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
}

/// The classical module V at q = 1, together with the h_i actions read off
/// from the q-exponents of the original torus matrices.
#[derive(Clone, Debug)]
pub struct ClassicalModuleState {
    shape: Shape,
    dim: usize,
    e: BTreeMap<usize, RatMatrix>,
    f: BTreeMap<usize, RatMatrix>,
    h: BTreeMap<usize, RatMatrix>,
    /// h_i eigenvalue (integer) per basis vector, for characters.
    h_exponents: BTreeMap<usize, Vec<i64>>,
}

impl ClassicalModuleState {
    pub fn from_spec(spec: &PModuleSpec) -> Result<Self, OracleError> {
        let shape = spec.shape();
        let (n, m) = (shape.n, shape.m);
        let rank = n + m - 1;
        let dim = spec.dim();
        let one = BigRational::one();
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        let mut h = BTreeMap::new();
        let mut h_exponents = BTreeMap::new();
        for i in 1..=rank {
            if i != n {
                for (kind, map) in [(GenKind::E, &mut e), (GenKind::F, &mut f)] {
                    let g = GeneratorSymbol { kind, index: i };
                    let qm = spec.matrix(g).expect("levi generator exists");
                    let mut rm = RatMatrix::zero(dim, dim);
                    for r in 0..dim {
                        for c in 0..dim {
                            let v = qm
                                .get(r, c)
                                .evaluate_at(&one)
                                .map_err(|_| OracleError::Pole(g.to_string()))?;
                            rm.set(r, c, v);
                        }
                    }
                    map.insert(i, rm);
                }
            } else {
                e.insert(i, RatMatrix::zero(dim, dim));
            }
            let km = spec.matrix(GeneratorSymbol::k(i)).expect("torus exists");
            let mut exps = Vec::with_capacity(dim);
            for b in 0..dim {
                exps.push(q_power_exponent(i, km.get(b, b))?);
            }
            h.insert(
                i,
                RatMatrix::diagonal(
                    exps.iter().map(|&x| BigRational::from(BigInt::from(x))).collect(),
                ),
            );
            h_exponents.insert(i, exps);
        }
        Ok(ClassicalModuleState {
            shape,
            dim,
            e,
            f,
            h,
            h_exponents,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h_exponents(&self, i: usize) -> &[i64] {
        &self.h_exponents[&i]
    }

    /// Matrix of the classical Levi root element e_{a,b} (a != b, both
    /// indices in the same block) on V, by the commutator recursion
    /// e_{a,b} = [e_{a,c}, e_{c,b}].
    fn levi_unit(&self, a: usize, b: usize) -> RatMatrix {
        let n = self.shape.n;
        debug_assert!(a != b);
        debug_assert!((a <= n) == (b <= n), "({a},{b}) straddles the blocks");
        if a.abs_diff(b) == 1 {
            let i = a.min(b);
            return if a < b { self.e[&i].clone() } else { self.f[&i].clone() };
        }
        let c = if a < b { b - 1 } else { b + 1 };
        let left = self.levi_unit(a, c);
        let right = self.levi_unit(c, b);
        left.mul(&right).sub(&right.mul(&left))
    }

    /// sigma of a parabolic element on V.
    fn sigma(&self, elem: &CElem) -> RatMatrix {
        let n = self.shape.n;
        match elem {
            CElem::Unit(a, b) => {
                debug_assert!(a != b);
                if *a <= n && *b > n {
                    // nilradical: kills V
                    RatMatrix::zero(self.dim, self.dim)
                } else if (*a <= n) == (*b <= n) {
                    self.levi_unit(*a, *b)
                } else {
                    unreachable!("u-bar elements are multiplied, never applied to V")
                }
            }
            CElem::Cartan(diag) => {
                // Traceless diag = sum_i c_i h_i with c_i the partial sums.
                let mut out = RatMatrix::zero(self.dim, self.dim);
                let mut partial = BigRational::zero();
                for (i, d) in diag.iter().take(diag.len() - 1).enumerate() {
                    partial += d;
                    if !partial.is_zero() {
                        out.add_scaled(&self.h[&(i + 1)], &partial);
                    }
                }
                out
            }
        }
    }
}

fn q_power_exponent(i: usize, v: &crate::qcoeff::RationalQ) -> Result<i64, OracleError> {
    if !v.is_laurent() {
        return Err(OracleError::NonSpecializable(i, v.to_string()));
    }
    let terms = v.laurent_terms();
    if terms.len() != 1 {
        return Err(OracleError::NonSpecializable(i, v.to_string()));
    }
    let (exp, coeff) = &terms[0];
    if coeff == &BigInt::one() {
        Ok(*exp)
    } else if coeff == &BigInt::from(-1) {
        Err(OracleError::NegativeSign(i))
    } else {
        Err(OracleError::NonSpecializable(i, v.to_string()))
    }
}

fn chevalley_elem(g: ClassicalGenerator, big_n: usize) -> CElem {
    match g {
        ClassicalGenerator::E(i) => CElem::Unit(i, i + 1),
        ClassicalGenerator::F(i) => CElem::Unit(i + 1, i),
        ClassicalGenerator::H(i) => {
            let mut d = vec![BigRational::zero(); big_n];
            d[i - 1] = BigRational::one();
            d[i] = -BigRational::one();
            CElem::Cartan(d)
        }
    }
}

/// [elem, e_{n+j,k}] as a short linear combination of sl elements; the
/// second argument is the u-bar generator for the variable x_{j,k}.
fn bracket_with_ubar(
    elem: &CElem,
    shape: Shape,
    j: usize,
    k: usize,
) -> Vec<(BigRational, CElem)> {
    let n = shape.n;
    let (c, d) = (n + j, k);
    match elem {
        CElem::Unit(a, b) => {
            let mut out = Vec::new();
            if *b == c && *a == d {
                // combined diagonal case: e_{dd} - e_{cc}
                let big_n = shape.n + shape.m;
                let mut diag = vec![BigRational::zero(); big_n];
                diag[d - 1] += BigRational::one();
                diag[c - 1] -= BigRational::one();
                out.push((BigRational::one(), CElem::Cartan(diag)));
            } else {
                if *b == c {
                    out.push((BigRational::one(), CElem::Unit(*a, d)));
                }
                if *a == d {
                    out.push((-BigRational::one(), CElem::Unit(c, *b)));
                }
            }
            out
        }
        CElem::Cartan(diag) => {
            let coeff = &diag[c - 1] - &diag[d - 1];
            if coeff.is_zero() {
                Vec::new()
            } else {
                vec![(coeff, CElem::Unit(c, d))]
            }
        }
    }
}

fn is_ubar(elem: &CElem, n: usize) -> Option<(usize, usize)> {
    match elem {
        CElem::Unit(a, b) if *a > n && *b <= n => Some((*a - n, *b)),
        _ => None,
    }
}

/// Act by `elem` on the word of u-bar letters tensor v, recursively
/// commuting through the letters.
fn act_rec(
    state: &ClassicalModuleState,
    coeff: &BigRational,
    elem: &CElem,
    letters: &[(usize, usize)],
    prefix: &ExponentMatrix,
    v: &[BigRational],
    out: &mut ClassicalElement,
) {
    let shape = state.shape;
    if let Some((j, k)) = is_ubar(elem, shape.n) {
        // left multiplication by x_{j,k}
        let mut r = prefix.clone();
        for &(a, b) in letters {
            r.set(shape, a, b, r.get(shape, a, b) + 1);
        }
        r.set(shape, j, k, r.get(shape, j, k) + 1);
        out.insert(r, v.iter().map(|c| c * coeff).collect());
        return;
    }
    match letters.split_first() {
        None => {
            let mv = state.sigma(elem).apply(v);
            out.insert(prefix.clone(), mv.iter().map(|c| c * coeff).collect());
        }
        Some((&(j, k), rest)) => {
            // elem . x_{j,k} w = x_{j,k} (elem . w) + [elem, x_{j,k}] . w
            let mut with_letter = prefix.clone();
            with_letter.set(shape, j, k, with_letter.get(shape, j, k) + 1);
            act_rec(state, coeff, elem, rest, &with_letter, v, out);
            for (c, b) in bracket_with_ubar(elem, shape, j, k) {
                act_rec(state, &(coeff * &c), &b, rest, prefix, v, out);
            }
        }
    }
}

/// g . (x^r tensor v) in the classical generalized Verma module.
pub fn classical_action(
    state: &ClassicalModuleState,
    g: ClassicalGenerator,
    r: &ExponentMatrix,
    v: &[BigRational],
) -> ClassicalElement {
    let shape = state.shape;
    let big_n = shape.n + shape.m;
    let elem = chevalley_elem(g, big_n);
    let mut letters = Vec::new();
    for (j, k) in shape.var_indices() {
        for _ in 0..r.get(shape, j, k) {
            letters.push((j, k));
        }
    }
    let mut out = ClassicalElement::zero(shape, state.dim);
    act_rec(
        state,
        &BigRational::one(),
        &elem,
        &letters,
        &ExponentMatrix::zero(shape),
        v,
        &mut out,
    );
    out
}

/// Linear extension of classical_action to sums.
pub fn classical_action_element(
    state: &ClassicalModuleState,
    g: ClassicalGenerator,
    elem: &ClassicalElement,
) -> ClassicalElement {
    let mut out = ClassicalElement::zero(state.shape, state.dim);
    for (r, coords) in elem.terms() {
        let img = classical_action(state, g, r, coords);
        for (rr, cc) in img.terms() {
            out.insert(rr.clone(), cc.clone());
        }
    }
    out
}

/// Matrix of g on the degree <= d slice: columns over monomials of degree
/// <= d tensor the V-basis (monomial-major), rows over degree <= d+1.
pub fn classical_matrix(
    state: &ClassicalModuleState,
    g: ClassicalGenerator,
    d: u32,
) -> RatMatrix {
    let shape = state.shape;
    let dim = state.dim;
    let col_basis = monomials_up_to(shape, d);
    let row_basis = monomials_up_to(shape, d + 1);
    let row_index: BTreeMap<&ExponentMatrix, usize> =
        row_basis.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut out = RatMatrix::zero(row_basis.len() * dim, col_basis.len() * dim);
    for (ci, r) in col_basis.iter().enumerate() {
        for b in 0..dim {
            let mut v = vec![BigRational::zero(); dim];
            v[b] = BigRational::one();
            let img = classical_action(state, g, r, &v);
            for (mono, coords) in img.terms() {
                let ri = *row_index.get(mono).expect("degree raised by more than 1");
                for (bb, c) in coords.iter().enumerate() {
                    out.set(ri * dim + bb, ci * dim + b, c.clone());
                }
            }
        }
    }
    out
}

/// Weight-multiplicity table: for each degree <= d, the number of basis
/// vectors of each h-weight (h_1, ..., h_{n+m-1}).
pub fn classical_character(
    state: &ClassicalModuleState,
    d: u32,
) -> BTreeMap<(u32, Vec<i64>), usize> {
    let shape = state.shape;
    let rank = shape.n + shape.m - 1;
    let mut table = BTreeMap::new();
    for r in monomials_up_to(shape, d) {
        for b in 0..state.dim {
            let mut weight = Vec::with_capacity(rank);
            for i in 1..=rank {
                let mut w = state.h_exponents[&i][b];
                for (j, k) in shape.var_indices() {
                    let e = r.get(shape, j, k) as i64;
                    if e == 0 {
                        continue;
                    }
                    // weight of x_{j,k} <-> e_{n+j,k} under h_i
                    let nj = shape.n + j;
                    let mut wx = 0i64;
                    if i == nj {
                        wx += 1;
                    }
                    if i + 1 == nj {
                        wx -= 1;
                    }
                    if i == k {
                        wx -= 1;
                    }
                    if i + 1 == k {
                        wx += 1;
                    }
                    w += wx * e;
                }
                weight.push(w);
            }
            *table.entry((r.total(), weight)).or_insert(0) += 1;
        }
    }
    table
}
