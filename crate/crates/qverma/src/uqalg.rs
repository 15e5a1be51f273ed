//! Formal presentation data for U_q(sl_N): generator symbols, relation
//! catalogs (defining relations, quantum Serre relations, and the root
//! vector commutation families), root-vector recursions, and a generic
//! evaluator of formal words in any representation.
//!
//! Words are kept unreduced; all identity checking happens inside faithful
//! representations.

use crate::qcoeff::{q_number, RationalQ};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UqError {
    #[error("generator index {0} out of range for N = {1}")]
    IndexOutOfRange(usize, usize),
    #[error("root vector requires i != j")]
    DiagonalRootVector,
    #[error("no assignment for generator {0}")]
    MissingSymbol(String),
    #[error("{0}")]
    Domain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    E,
    F,
    K,
    Kinv,
}

/// A Chevalley generator symbol e_i, f_i, k_i or k_i^{-1} of U_q(sl_N),
/// with 1 <= index <= N-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub kind: GenKind,
    pub index: usize,
}

impl GeneratorSymbol {
    pub fn e(i: usize) -> Self {
        GeneratorSymbol { kind: GenKind::E, index: i }
    }
    pub fn f(i: usize) -> Self {
        GeneratorSymbol { kind: GenKind::F, index: i }
    }
    pub fn k(i: usize) -> Self {
        GeneratorSymbol { kind: GenKind::K, index: i }
    }
    pub fn kinv(i: usize) -> Self {
        GeneratorSymbol { kind: GenKind::Kinv, index: i }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::E => write!(f, "e{}", self.index),
            GenKind::F => write!(f, "f{}", self.index),
            GenKind::K => write!(f, "k{}", self.index),
            GenKind::Kinv => write!(f, "k{}^-1", self.index),
        }
    }
}

/// A formal Q(q)-linear combination of finite generator sequences. The
/// empty sequence is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWord {
    terms: BTreeMap<Vec<GeneratorSymbol>, RationalQ>,
}

impl AlgebraWord {
    pub fn zero() -> Self {
        AlgebraWord { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        AlgebraWord::monomial(Vec::new(), RationalQ::one())
    }

    pub fn gen(sym: GeneratorSymbol) -> Self {
        AlgebraWord::monomial(vec![sym], RationalQ::one())
    }

    pub fn monomial(word: Vec<GeneratorSymbol>, coeff: RationalQ) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        AlgebraWord { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<GeneratorSymbol>, &RationalQ)> {
        self.terms.iter()
    }

    fn insert(&mut self, word: Vec<GeneratorSymbol>, coeff: RationalQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalQ::from_int(-1)))
    }

    pub fn scale(&self, c: &RationalQ) -> Self {
        if c.is_zero() {
            return AlgebraWord::zero();
        }
        AlgebraWord {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Concatenation product, distributed over both sums.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = AlgebraWord::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                out.insert(w, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = AlgebraWord::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Evaluation target for formal words: supplies the identity, ring
/// operations and the generator assignment.
pub trait WordAlgebra {
    type Elem: Clone;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &RationalQ) -> Self::Elem;
    fn assign(&self, g: GeneratorSymbol) -> Result<Self::Elem, UqError>;
}

/// Homomorphic evaluation of a formal word; the empty word maps to the
/// identity.
pub fn evaluate_word<A: WordAlgebra>(w: &AlgebraWord, alg: &A) -> Result<A::Elem, UqError> {
    let cache = EvalCache::new();
    evaluate_word_cached(w, alg, &cache)
}

/// Shared memo for monomial sub-products; lets catalogs whose entries
/// repeat the same factors (root-vector powers, common prefixes) reuse
/// work across relations and across threads.
pub struct EvalCache<E> {
    map: std::sync::Mutex<std::collections::HashMap<Vec<GeneratorSymbol>, E>>,
}

impl<E: Clone> EvalCache<E> {
    pub fn new() -> Self {
        EvalCache {
            map: std::sync::Mutex::new(std::collections::HashMap::new()),
        }
    }
}

impl<E: Clone> Default for EvalCache<E> {
    fn default() -> Self {
        EvalCache::new()
    }
}

/// Like evaluate_word, but memoizes sub-products by binary splitting, so
/// the 2^s-fold monomial expansions of root-vector powers cost one
/// multiplication per distinct sub-slice instead of one per letter per
/// monomial.
pub fn evaluate_word_cached<A: WordAlgebra>(
    w: &AlgebraWord,
    alg: &A,
    cache: &EvalCache<A::Elem>,
) -> Result<A::Elem, UqError> {
    let mut acc: Option<A::Elem> = None;
    for (word, coeff) in w.terms() {
        let prod = eval_slice(word, alg, cache)?;
        let term = alg.scale(&prod, coeff);
        acc = Some(match acc {
            None => term,
            Some(a) => alg.add(&a, &term),
        });
    }
    Ok(acc.unwrap_or_else(|| alg.scale(&alg.identity(), &RationalQ::zero())))
}

fn eval_slice<A: WordAlgebra>(
    word: &[GeneratorSymbol],
    alg: &A,
    cache: &EvalCache<A::Elem>,
) -> Result<A::Elem, UqError> {
    if word.is_empty() {
        return Ok(alg.identity());
    }
    if let Some(hit) = cache.map.lock().unwrap().get(word) {
        return Ok(hit.clone());
    }
    let out = if word.len() == 1 {
        alg.assign(word[0])?
    } else {
        let (lo, hi) = word.split_at(word.len() / 2);
        let a = eval_slice(lo, alg, cache)?;
        let b = eval_slice(hi, alg, cache)?;
        alg.mul(&a, &b)
    };
    cache
        .map
        .lock()
        .unwrap()
        .insert(word.to_vec(), out.clone());
    Ok(out)
}

fn check_root_indices(i: usize, j: usize, big_n: usize) -> Result<(), UqError> {
    if i == j {
        return Err(UqError::DiagonalRootVector);
    }
    if i < 1 || i > big_n {
        return Err(UqError::IndexOutOfRange(i, big_n));
    }
    if j < 1 || j > big_n {
        return Err(UqError::IndexOutOfRange(j, big_n));
    }
    Ok(())
}

/// The Jimbo root vector E_{i,j} as a formal word, by the quadratic
/// recursion with adjacent split point. Base cases E_{i,i+1} = e_i and
/// E_{i+1,i} = f_i.
pub fn root_vector_word(i: usize, j: usize, big_n: usize) -> Result<AlgebraWord, UqError> {
    check_root_indices(i, j, big_n)?;
    let split = if i < j { j - 1 } else { j + 1 };
    root_vector_word_split(i, j, big_n, split)
}

/// Root vector by the recursion split at an arbitrary intermediate index
/// `k` strictly between `i` and `j` (first level only; deeper levels use
/// the adjacent split). Used to check independence of the split point.
pub fn root_vector_word_split(
    i: usize,
    j: usize,
    big_n: usize,
    k: usize,
) -> Result<AlgebraWord, UqError> {
    check_root_indices(i, j, big_n)?;
    if i + 1 == j {
        return Ok(AlgebraWord::gen(GeneratorSymbol::e(i)));
    }
    if j + 1 == i {
        return Ok(AlgebraWord::gen(GeneratorSymbol::f(j)));
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    if !(lo < k && k < hi) {
        return Err(UqError::Domain(format!(
            "split point {k} not strictly between {lo} and {hi}"
        )));
    }
    // E_{i,j} = E_{i,k} E_{k,j} - q^{±1} E_{k,j} E_{i,k},
    // with +1 for i < j and -1 for i > j.
    let left = root_vector_word(i, k, big_n)?;
    let right = root_vector_word(k, j, big_n)?;
    let twist = if i < j {
        RationalQ::q()
    } else {
        RationalQ::q_pow(-1)
    };
    Ok(left.mul(&right).sub(&right.mul(&left).scale(&twist)))
}

/// K_{i,j} = k_i k_{i+1} ... k_{j-1} for i < j (inverse when `inv`).
pub fn cartan_word(i: usize, j: usize, inv: bool) -> AlgebraWord {
    assert!(i < j, "cartan_word requires i < j");
    let word: Vec<GeneratorSymbol> = (i..j)
        .map(|t| if inv { GeneratorSymbol::kinv(t) } else { GeneratorSymbol::k(t) })
        .collect();
    AlgebraWord::monomial(word, RationalQ::one())
}

/// A named list of formal words, each required to evaluate to zero.
#[derive(Clone, Debug)]
pub struct RelationCatalog {
    entries: Vec<(String, AlgebraWord)>,
}

impl RelationCatalog {
    pub fn entries(&self) -> &[(String, AlgebraWord)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn push(&mut self, name: String, word: AlgebraWord) {
        self.entries.push((name, word));
    }
}

fn cartan_matrix_entry(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// The defining relations and quantum Serre relations of U_q(sl_N), each
/// as a word required to vanish.
pub fn presentation_catalog(big_n: usize) -> RelationCatalog {
    assert!(big_n >= 2);
    let r = big_n - 1;
    let mut cat = RelationCatalog { entries: Vec::new() };
    let e = |i| AlgebraWord::gen(GeneratorSymbol::e(i));
    let f = |i| AlgebraWord::gen(GeneratorSymbol::f(i));
    let k = |i| AlgebraWord::gen(GeneratorSymbol::k(i));
    let kinv = |i| AlgebraWord::gen(GeneratorSymbol::kinv(i));

    for i in 1..=r {
        cat.push(
            format!("k{i} k{i}^-1 = 1"),
            k(i).mul(&kinv(i)).sub(&AlgebraWord::one()),
        );
        cat.push(
            format!("k{i}^-1 k{i} = 1"),
            kinv(i).mul(&k(i)).sub(&AlgebraWord::one()),
        );
    }
    for i in 1..=r {
        for j in (i + 1)..=r {
            cat.push(
                format!("[k{i}, k{j}] = 0"),
                k(i).mul(&k(j)).sub(&k(j).mul(&k(i))),
            );
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            let a = cartan_matrix_entry(i, j);
            cat.push(
                format!("k{i} e{j} k{i}^-1 = q^{a} e{j}"),
                k(i).mul(&e(j))
                    .mul(&kinv(i))
                    .sub(&e(j).scale(&RationalQ::q_pow(a))),
            );
            cat.push(
                format!("k{i} f{j} k{i}^-1 = q^-{a} f{j}"),
                k(i).mul(&f(j))
                    .mul(&kinv(i))
                    .sub(&f(j).scale(&RationalQ::q_pow(-a))),
            );
        }
    }
    let qdiff = &RationalQ::q() - &RationalQ::q_pow(-1);
    for i in 1..=r {
        for j in 1..=r {
            let mut word = e(i).mul(&f(j)).sub(&f(j).mul(&e(i)));
            if i == j {
                let inv_qdiff = RationalQ::one().checked_div(&qdiff).unwrap();
                word = word.sub(&k(i).sub(&kinv(i)).scale(&inv_qdiff));
            }
            cat.push(format!("[e{i}, f{j}] relation"), word);
        }
    }
    let two = &RationalQ::q() + &RationalQ::q_pow(-1);
    for i in 1..=r {
        for j in 1..=r {
            if i == j {
                continue;
            }
            if i.abs_diff(j) == 1 {
                cat.push(
                    format!("serre e{i} e{j}"),
                    e(i).pow(2)
                        .mul(&e(j))
                        .sub(&e(i).mul(&e(j)).mul(&e(i)).scale(&two))
                        .add(&e(j).mul(&e(i).pow(2))),
                );
                cat.push(
                    format!("serre f{i} f{j}"),
                    f(i).pow(2)
                        .mul(&f(j))
                        .sub(&f(i).mul(&f(j)).mul(&f(i)).scale(&two))
                        .add(&f(j).mul(&f(i).pow(2))),
                );
            } else {
                cat.push(
                    format!("[e{i}, e{j}] = 0"),
                    e(i).mul(&e(j)).sub(&e(j).mul(&e(i))),
                );
                cat.push(
                    format!("[f{i}, f{j}] = 0"),
                    f(i).mul(&f(j)).sub(&f(j).mul(&f(i))),
                );
            }
        }
    }
    cat
}

/// Expected number of entries in `presentation_catalog`, computed from the
/// index ranges.
pub fn presentation_catalog_size(big_n: usize) -> usize {
    let r = big_n - 1;
    2 * r               // k kinv both orders
        + r * (r - 1) / 2   // k commutators
        + 2 * r * r         // conjugation of e and f
        + r * r             // [e, f]
        + 2 * r * (r - 1)   // serre + distant commutation, e and f
}

/// A sum of scaled products of factor words. Evaluating factor-by-factor
/// lets the target algebra collapse each root vector to its compact normal
/// form before any product is taken, which is exponentially cheaper than
/// expanding everything to Chevalley monomials first.
#[derive(Clone, Debug)]
pub struct FactoredRelation {
    terms: Vec<(RationalQ, Vec<AlgebraWord>)>,
}

impl FactoredRelation {
    pub fn terms(&self) -> &[(RationalQ, Vec<AlgebraWord>)] {
        &self.terms
    }

    /// Expand to a single flat word over the Chevalley generators.
    pub fn flatten(&self) -> AlgebraWord {
        let mut out = AlgebraWord::zero();
        for (c, factors) in &self.terms {
            let mut prod = AlgebraWord::one();
            for f in factors {
                prod = prod.mul(f);
            }
            out = out.add(&prod.scale(c));
        }
        out
    }
}

/// A named list of factored relations, each required to evaluate to zero.
#[derive(Clone, Debug)]
pub struct FactoredCatalog {
    entries: Vec<(String, FactoredRelation)>,
}

impl FactoredCatalog {
    pub fn entries(&self) -> &[(String, FactoredRelation)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Evaluate a factored relation: factors through the word evaluator (with
/// the shared memo), products and sums at the element level.
pub fn evaluate_factored<A: WordAlgebra>(
    rel: &FactoredRelation,
    alg: &A,
    cache: &EvalCache<A::Elem>,
) -> Result<A::Elem, UqError> {
    let mut acc: Option<A::Elem> = None;
    for (c, factors) in &rel.terms {
        let mut prod = alg.identity();
        for f in factors {
            let fv = evaluate_word_cached(f, alg, cache)?;
            prod = alg.mul(&prod, &fv);
        }
        let term = alg.scale(&prod, c);
        acc = Some(match acc {
            None => term,
            Some(a) => alg.add(&a, &term),
        });
    }
    Ok(acc.unwrap_or_else(|| alg.scale(&alg.identity(), &RationalQ::zero())))
}

/// All instances of the ten root-vector commutation families with
/// exponents up to `max_power`, in factored form.
pub fn jimbo_factored_catalog(big_n: usize, max_power: u32) -> FactoredCatalog {
    assert!(big_n >= 2 && max_power >= 1);
    let mut cat = FactoredCatalog { entries: Vec::new() };
    let ev = |i, j| root_vector_word(i, j, big_n).expect("valid root vector indices");
    let qdiff = &RationalQ::q() - &RationalQ::q_pow(-1);
    let inv_qdiff = RationalQ::one().checked_div(&qdiff).unwrap();
    // m copies of the same factor, evaluated once and multiplied m times.
    fn rep(w: &AlgebraWord, m: u32) -> Vec<AlgebraWord> {
        std::iter::repeat_with(|| w.clone()).take(m as usize).collect()
    }
    fn cat_term(c: RationalQ, parts: Vec<Vec<AlgebraWord>>) -> (RationalQ, Vec<AlgebraWord>) {
        (c, parts.into_iter().flatten().collect())
    }
    let one = RationalQ::one;
    let neg = |c: &RationalQ| -c;

    // Families over i > k > j.
    for j in 1..=big_n {
        for k in (j + 1)..=big_n {
            for i in (k + 1)..=big_n {
                for m in 1..=max_power {
                    let qm = q_number(m as i64);
                    let (ik, kj, ij) = (ev(i, k), ev(k, j), ev(i, j));
                    // E_{i,k} E_{k,j}^m = q^-m E_{k,j}^m E_{i,k}
                    //                     + [m]_q E_{k,j}^{m-1} E_{i,j}
                    cat.entries.push((
                        format!("jimbo1 i={i} k={k} j={j} m={m}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&ik, 1), rep(&kj, m)]),
                                cat_term(
                                    neg(&RationalQ::q_pow(-(m as i64))),
                                    vec![rep(&kj, m), rep(&ik, 1)],
                                ),
                                cat_term(neg(&qm), vec![rep(&kj, m - 1), rep(&ij, 1)]),
                            ],
                        },
                    ));
                    // E_{i,k}^m E_{k,j} = q^-m E_{k,j} E_{i,k}^m
                    //                     + [m]_q E_{i,j} E_{i,k}^{m-1}
                    cat.entries.push((
                        format!("jimbo2 i={i} k={k} j={j} m={m}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&ik, m), rep(&kj, 1)]),
                                cat_term(
                                    neg(&RationalQ::q_pow(-(m as i64))),
                                    vec![rep(&kj, 1), rep(&ik, m)],
                                ),
                                cat_term(neg(&qm), vec![rep(&ij, 1), rep(&ik, m - 1)]),
                            ],
                        },
                    ));
                    // E_{i,k}^m E_{i,j} = q^m E_{i,j} E_{i,k}^m
                    cat.entries.push((
                        format!("jimbo3 i={i} k={k} j={j} m={m}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&ik, m), rep(&ij, 1)]),
                                cat_term(
                                    neg(&RationalQ::q_pow(m as i64)),
                                    vec![rep(&ij, 1), rep(&ik, m)],
                                ),
                            ],
                        },
                    ));
                    // E_{i,j} E_{k,j}^m = q^m E_{k,j}^m E_{i,j}
                    cat.entries.push((
                        format!("jimbo4 i={i} k={k} j={j} m={m}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&ij, 1), rep(&kj, m)]),
                                cat_term(
                                    neg(&RationalQ::q_pow(m as i64)),
                                    vec![rep(&kj, m), rep(&ij, 1)],
                                ),
                            ],
                        },
                    ));
                }
            }
        }
    }
    // E_{i,i+1} E_{i+1,i}^m = E_{i+1,i}^m E_{i,i+1}
    //   + [m]_q E_{i+1,i}^{m-1} (q^{-m+1} K_{i,i+1} - q^{m-1} K_{i,i+1}^-1)
    //     / (q - q^-1)
    for i in 1..big_n {
        for m in 1..=max_power {
            let qm = q_number(m as i64);
            let mm = m as i64;
            let (e, f) = (ev(i, i + 1), ev(i + 1, i));
            let kw = cartan_word(i, i + 1, false);
            let kw_inv = cartan_word(i, i + 1, true);
            cat.entries.push((
                format!("jimbo5 i={i} m={m}"),
                FactoredRelation {
                    terms: vec![
                        cat_term(one(), vec![rep(&e, 1), rep(&f, m)]),
                        cat_term(neg(&one()), vec![rep(&f, m), rep(&e, 1)]),
                        cat_term(
                            neg(&(&(&qm * &RationalQ::q_pow(-mm + 1)) * &inv_qdiff)),
                            vec![rep(&f, m - 1), rep(&kw, 1)],
                        ),
                        cat_term(
                            &(&qm * &RationalQ::q_pow(mm - 1)) * &inv_qdiff,
                            vec![rep(&f, m - 1), rep(&kw_inv, 1)],
                        ),
                    ],
                },
            ));
        }
    }
    // Families over i < j < k.
    for i in 1..=big_n {
        for j in (i + 1)..=big_n {
            for k in (j + 1)..=big_n {
                for m in 1..=max_power {
                    let qm = q_number(m as i64);
                    // E_{i,j} E_{k,i}^m = E_{k,i}^m E_{i,j}
                    //   - q^{m-2} [m]_q E_{k,i}^{m-1} E_{k,j} K_{i,j}^-1
                    let (ij, ki, kj) = (ev(i, j), ev(k, i), ev(k, j));
                    cat.entries.push((
                        format!("jimbo6 i={i} j={j} k={k} m={m}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&ij, 1), rep(&ki, m)]),
                                cat_term(neg(&one()), vec![rep(&ki, m), rep(&ij, 1)]),
                                cat_term(
                                    &RationalQ::q_pow(m as i64 - 2) * &qm,
                                    vec![
                                        rep(&ki, m - 1),
                                        rep(&kj, 1),
                                        rep(&cartan_word(i, j, true), 1),
                                    ],
                                ),
                            ],
                        },
                    ));
                    // E_{j,k} E_{k,i}^m = E_{k,i}^m E_{j,k}
                    //   + [m]_q E_{j,i} E_{k,i}^{m-1} K_{j,k}
                    let (jk, ji) = (ev(j, k), ev(j, i));
                    cat.entries.push((
                        format!("jimbo7 i={i} j={j} k={k} m={m}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&jk, 1), rep(&ki, m)]),
                                cat_term(neg(&one()), vec![rep(&ki, m), rep(&jk, 1)]),
                                cat_term(
                                    neg(&qm),
                                    vec![
                                        rep(&ji, 1),
                                        rep(&ki, m - 1),
                                        rep(&cartan_word(j, k, false), 1),
                                    ],
                                ),
                            ],
                        },
                    ));
                }
            }
        }
    }
    // Families over i < j < k < l (no powers).
    for i in 1..=big_n {
        for j in (i + 1)..=big_n {
            for k in (j + 1)..=big_n {
                for l in (k + 1)..=big_n {
                    let (li, kj, lj, ki, jk) =
                        (ev(l, i), ev(k, j), ev(l, j), ev(k, i), ev(j, k));
                    // E_{l,i} E_{k,j} = E_{k,j} E_{l,i}
                    cat.entries.push((
                        format!("jimbo8 i={i} j={j} k={k} l={l}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&li, 1), rep(&kj, 1)]),
                                cat_term(neg(&one()), vec![rep(&kj, 1), rep(&li, 1)]),
                            ],
                        },
                    ));
                    // E_{l,j} E_{k,i} - E_{k,i} E_{l,j}
                    //   = (q - q^-1) E_{k,j} E_{l,i}
                    cat.entries.push((
                        format!("jimbo9 i={i} j={j} k={k} l={l}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&lj, 1), rep(&ki, 1)]),
                                cat_term(neg(&one()), vec![rep(&ki, 1), rep(&lj, 1)]),
                                cat_term(neg(&qdiff), vec![rep(&kj, 1), rep(&li, 1)]),
                            ],
                        },
                    ));
                    // E_{l,i} E_{j,k} = E_{j,k} E_{l,i}
                    cat.entries.push((
                        format!("jimbo10 i={i} j={j} k={k} l={l}"),
                        FactoredRelation {
                            terms: vec![
                                cat_term(one(), vec![rep(&li, 1), rep(&jk, 1)]),
                                cat_term(neg(&one()), vec![rep(&jk, 1), rep(&li, 1)]),
                            ],
                        },
                    ));
                }
            }
        }
    }
    cat
}

/// The same catalog expanded to flat Chevalley words.
pub fn jimbo_catalog(big_n: usize, max_power: u32) -> RelationCatalog {
    let factored = jimbo_factored_catalog(big_n, max_power);
    RelationCatalog {
        entries: factored
            .entries
            .into_iter()
            .map(|(name, rel)| (name, rel.flatten()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::parse;

    #[test]
    fn root_vector_base_cases() {
        let w = root_vector_word(2, 3, 4).unwrap();
        assert_eq!(w, AlgebraWord::gen(GeneratorSymbol::e(2)));
        let w = root_vector_word(3, 2, 4).unwrap();
        assert_eq!(w, AlgebraWord::gen(GeneratorSymbol::f(2)));
    }

    #[test]
    fn root_vector_length_three() {
        // E_{1,3} = e_1 e_2 - q e_2 e_1
        let w = root_vector_word(1, 3, 3).unwrap();
        let e1 = AlgebraWord::gen(GeneratorSymbol::e(1));
        let e2 = AlgebraWord::gen(GeneratorSymbol::e(2));
        let expect = e1.mul(&e2).sub(&e2.mul(&e1).scale(&parse("q").unwrap()));
        assert_eq!(w, expect);
        // E_{3,1} = f_2 f_1 - q^-1 f_1 f_2
        let w = root_vector_word(3, 1, 3).unwrap();
        let f1 = AlgebraWord::gen(GeneratorSymbol::f(1));
        let f2 = AlgebraWord::gen(GeneratorSymbol::f(2));
        let expect = f2.mul(&f1).sub(&f1.mul(&f2).scale(&parse("q^-1").unwrap()));
        assert_eq!(w, expect);
    }

    #[test]
    fn root_vector_monomial_count() {
        // |i - j| = d expands to 2^{d-1} monomial words
        for d in 1..=4usize {
            let w = root_vector_word(1, 1 + d, 6).unwrap();
            assert_eq!(w.num_terms(), 1 << (d - 1));
        }
    }

    #[test]
    fn diagonal_root_vector_rejected() {
        assert_eq!(
            root_vector_word(2, 2, 4),
            Err(UqError::DiagonalRootVector)
        );
    }

    #[test]
    fn presentation_catalog_counts() {
        for big_n in 2..=5 {
            let cat = presentation_catalog(big_n);
            assert_eq!(cat.len(), presentation_catalog_size(big_n));
        }
    }

    #[test]
    fn presentation_contains_expected_relations() {
        let cat = presentation_catalog(3);
        let names: Vec<&str> = cat.entries().iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"k1 e1 k1^-1 = q^2 e1"));
        assert!(names.contains(&"serre e1 e2"));
        assert!(names.contains(&"[e1, f2] relation"));
    }

    #[test]
    fn word_algebra_evaluation_is_multiplicative() {
        // Evaluate in the trivial one-dimensional algebra Q(q) where every
        // generator maps to a fixed scalar.
        struct Scalars;
        impl WordAlgebra for Scalars {
            type Elem = RationalQ;
            fn identity(&self) -> RationalQ {
                RationalQ::one()
            }
            fn mul(&self, a: &RationalQ, b: &RationalQ) -> RationalQ {
                a * b
            }
            fn add(&self, a: &RationalQ, b: &RationalQ) -> RationalQ {
                a + b
            }
            fn scale(&self, a: &RationalQ, c: &RationalQ) -> RationalQ {
                a * c
            }
            fn assign(&self, g: GeneratorSymbol) -> Result<RationalQ, UqError> {
                Ok(RationalQ::q_pow(g.index as i64))
            }
        }
        let a = AlgebraWord::gen(GeneratorSymbol::e(1));
        let b = AlgebraWord::gen(GeneratorSymbol::e(2));
        let prod = evaluate_word(&a.mul(&b), &Scalars).unwrap();
        let separate = &evaluate_word(&a, &Scalars).unwrap() * &evaluate_word(&b, &Scalars).unwrap();
        assert_eq!(prod, separate);
        assert_eq!(evaluate_word(&AlgebraWord::one(), &Scalars).unwrap(), RationalQ::one());
    }
}
