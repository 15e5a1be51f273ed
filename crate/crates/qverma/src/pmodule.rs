//! Finite-dimensional modules V over the parabolic U_q(p): loading and
//! validation of generator matrices, built-in constructions (trivial,
//! one-dimensional characters, vector modules of a Levi block), and
//! matrices of derived Levi root vectors.
//!
//! Generator indices run over 1..n+m-1. The raising and lowering
//! generators e_i, f_i exist only for i != n (the Levi part); e_n acts by
//! zero (the nilradical annihilates V) and f_n does not act on V at all.

use crate::matrix::Matrix;
use crate::qcoeff::{self, RationalQ};
use crate::qweyl::Shape;
use crate::uqalg::{
    evaluate_word, root_vector_word, GenKind, GeneratorSymbol, UqError, WordAlgebra,
};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PModuleError {
    #[error("matrix for {0} must be {1}x{1}, got {2}x{3}")]
    DimensionMismatch(String, usize, usize, usize),
    #[error("missing generator matrix {0}")]
    MissingGenerator(String),
    #[error("generator {0} is not part of a parabolic module")]
    ForbiddenGenerator(String),
    #[error("k{0} must be diagonal and invertible in the weight basis")]
    BadTorusMatrix(usize),
    #[error("character scalar must be nonzero")]
    ZeroScalar,
    #[error("character sign at index {0} must be +1 or -1")]
    BadSign(usize),
    #[error("block of size {0} has no vector module")]
    BlockTooSmall(usize),
    #[error("root vector ({0}, {1}) does not lie in the Levi subalgebra")]
    NotInLevi(usize, usize),
    #[error("malformed module JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Algebra(#[from] UqError),
}

/// Which Levi block a built-in vector module lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeviBlock {
    First,
    Second,
}

/// A finite-dimensional U_q(p)-module presented by generator matrices in a
/// weight basis (all k_i diagonal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PModuleSpec {
    shape: Shape,
    dim: usize,
    e: BTreeMap<usize, Matrix>,
    f: BTreeMap<usize, Matrix>,
    k: BTreeMap<usize, Matrix>,
}

fn gen_name(g: GeneratorSymbol) -> String {
    g.to_string()
}

impl PModuleSpec {
    /// Number of simple-root indices, n+m-1.
    fn rank(shape: Shape) -> usize {
        shape.n + shape.m - 1
    }

    /// Assemble a spec from explicit matrices. Omitted e/f default to the
    /// zero matrix; every k_1..k_{n+m-1} must be present, diagonal and
    /// invertible. Matrices for e_n or f_n are rejected.
    pub fn new(
        shape: Shape,
        dim: usize,
        e: BTreeMap<usize, Matrix>,
        f: BTreeMap<usize, Matrix>,
        k: BTreeMap<usize, Matrix>,
    ) -> Result<Self, PModuleError> {
        assert!(dim >= 1, "module dimension must be positive");
        let rank = Self::rank(shape);
        let n = shape.n;
        for (map, kind) in [(&e, GenKind::E), (&f, GenKind::F)] {
            for (&i, mat) in map {
                let name = gen_name(GeneratorSymbol { kind, index: i });
                if i == n || i < 1 || i > rank {
                    return Err(PModuleError::ForbiddenGenerator(name));
                }
                check_dim(&name, dim, mat)?;
            }
        }
        for i in 1..=rank {
            let mat = k
                .get(&i)
                .ok_or_else(|| PModuleError::MissingGenerator(format!("k{i}")))?;
            check_dim(&format!("k{i}"), dim, mat)?;
            if !mat.is_diagonal() || mat.diagonal_entries().iter().any(|v| v.is_zero()) {
                return Err(PModuleError::BadTorusMatrix(i));
            }
        }
        if let Some((&i, _)) = k.iter().find(|(&i, _)| i < 1 || i > rank) {
            return Err(PModuleError::ForbiddenGenerator(format!("k{i}")));
        }
        Ok(PModuleSpec { shape, dim, e, f, k })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix of a generator on V. e_n is the zero matrix; f_n is not
    /// part of the parabolic and is an error; k_i^{-1} is computed from
    /// the diagonal of k_i.
    pub fn matrix(&self, g: GeneratorSymbol) -> Result<Matrix, PModuleError> {
        let rank = Self::rank(self.shape);
        if g.index < 1 || g.index > rank {
            return Err(PModuleError::ForbiddenGenerator(gen_name(g)));
        }
        match g.kind {
            GenKind::E => {
                if g.index == self.shape.n {
                    return Ok(Matrix::zero(self.dim, self.dim));
                }
                Ok(self
                    .e
                    .get(&g.index)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zero(self.dim, self.dim)))
            }
            GenKind::F => {
                if g.index == self.shape.n {
                    return Err(PModuleError::ForbiddenGenerator(gen_name(g)));
                }
                Ok(self
                    .f
                    .get(&g.index)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zero(self.dim, self.dim)))
            }
            GenKind::K => Ok(self.k[&g.index].clone()),
            GenKind::Kinv => {
                let entries = self.k[&g.index]
                    .diagonal_entries()
                    .into_iter()
                    .map(|v| v.inverse().expect("torus entries are nonzero"))
                    .collect();
                Ok(Matrix::diagonal(entries))
            }
        }
    }

    /// JSON module file: {"n", "m", "dim", "generators": {"e1": [[..]], ...}}.
    pub fn to_json(&self) -> Value {
        let mut gens = Map::new();
        for (prefix, map) in [("e", &self.e), ("f", &self.f), ("k", &self.k)] {
            for (i, mat) in map {
                gens.insert(format!("{prefix}{i}"), matrix_to_json(mat));
            }
        }
        json!({
            "n": self.shape.n,
            "m": self.shape.m,
            "dim": self.dim,
            "generators": Value::Object(gens),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, PModuleError> {
        let n = read_usize(v, "n")?;
        let m = read_usize(v, "m")?;
        let dim = read_usize(v, "dim")?;
        let shape = Shape::new(n, m)
            .map_err(|e| PModuleError::Json(e.to_string()))?;
        let gens = v
            .get("generators")
            .and_then(Value::as_object)
            .ok_or_else(|| PModuleError::Json("missing 'generators' object".into()))?;
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        let mut k = BTreeMap::new();
        for (name, val) in gens {
            let (prefix, idx) = name.split_at(1);
            let idx: usize = idx
                .parse()
                .map_err(|_| PModuleError::Json(format!("bad generator name '{name}'")))?;
            let mat = matrix_from_json(val, dim)
                .map_err(|msg| PModuleError::Json(format!("generator {name}: {msg}")))?;
            match prefix {
                "e" => e.insert(idx, mat),
                "f" => f.insert(idx, mat),
                "k" => k.insert(idx, mat),
                _ => {
                    return Err(PModuleError::Json(format!(
                        "bad generator name '{name}'"
                    )))
                }
            };
        }
        PModuleSpec::new(shape, dim, e, f, k)
    }
}

fn check_dim(name: &str, dim: usize, mat: &Matrix) -> Result<(), PModuleError> {
    if mat.rows() != dim || mat.cols() != dim {
        return Err(PModuleError::DimensionMismatch(
            name.to_string(),
            dim,
            mat.rows(),
            mat.cols(),
        ));
    }
    Ok(())
}

fn matrix_to_json(mat: &Matrix) -> Value {
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

fn matrix_from_json(v: &Value, dim: usize) -> Result<Matrix, String> {
    let rows = v.as_array().ok_or("expected an array of rows")?;
    if rows.len() != dim {
        return Err(format!("expected {dim} rows, got {}", rows.len()));
    }
    let mut out = Vec::with_capacity(dim);
    for row in rows {
        let row = row.as_array().ok_or("expected an array of entries")?;
        if row.len() != dim {
            return Err(format!("expected {dim} columns, got {}", row.len()));
        }
        let mut entries = Vec::with_capacity(dim);
        for entry in row {
            let s = entry.as_str().ok_or("matrix entries must be strings")?;
            entries.push(qcoeff::parse(s).map_err(|e| e.to_string())?);
        }
        out.push(entries);
    }
    Ok(Matrix::from_rows(out))
}

fn read_usize(v: &Value, key: &str) -> Result<usize, PModuleError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| PModuleError::Json(format!("missing or invalid '{key}'")))
}

/// Evaluation of formal generator words by the matrices of a module.
pub struct ModuleAlgebra<'a> {
    spec: &'a PModuleSpec,
}

impl<'a> ModuleAlgebra<'a> {
    pub fn new(spec: &'a PModuleSpec) -> Self {
        ModuleAlgebra { spec }
    }
}

impl WordAlgebra for ModuleAlgebra<'_> {
    type Elem = Matrix;
    fn identity(&self) -> Matrix {
        Matrix::identity(self.spec.dim)
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a * b
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a + b
    }
    fn scale(&self, a: &Matrix, c: &RationalQ) -> Matrix {
        a.scale(c)
    }
    fn assign(&self, g: GeneratorSymbol) -> Result<Matrix, UqError> {
        self.spec
            .matrix(g)
            .map_err(|e| UqError::MissingSymbol(e.to_string()))
    }
}

/// Result of checking a module against the defining relations.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    checks: Vec<(String, bool, Option<String>)>,
}

impl ValidationReport {
    pub fn checks(&self) -> &[(String, bool, Option<String>)] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, ok, witness)| {
                json!({
                    "name": name,
                    "instance": "module validation",
                    "pass": ok,
                    "witness": witness.clone().map(Value::String).unwrap_or(Value::Null),
                })
            })
            .collect();
        let failed = self.checks.iter().filter(|(_, ok, _)| !ok).count();
        json!({
            "checks": checks,
            "summary": {
                "total": self.checks.len(),
                "passed": self.checks.len() - failed,
                "failed": failed,
            },
        })
    }
}

/// Check that the supplied matrices define a genuine U_q(p)-module: torus
/// matrices diagonal and mutually inverse, and every defining relation
/// (including the quantum Serre relations) that involves only the supplied
/// generators holds as a matrix identity.
pub fn validate(spec: &PModuleSpec) -> ValidationReport {
    let mut checks = Vec::new();
    let rank = PModuleSpec::rank(spec.shape);
    let alg = ModuleAlgebra::new(spec);
    for i in 1..=rank {
        let ki = spec.matrix(GeneratorSymbol::k(i)).expect("torus exists");
        let kinv = spec.matrix(GeneratorSymbol::kinv(i)).expect("torus exists");
        let ok = (&ki * &kinv).is_identity();
        checks.push((
            format!("k{i} k{i}^-1 = 1"),
            ok,
            if ok { None } else { Some("product is not the identity".into()) },
        ));
    }
    for (name, word) in crate::uqalg::presentation_catalog(rank + 1).entries() {
        match evaluate_word(word, &alg) {
            Ok(residual) => {
                let ok = residual.is_zero();
                let witness = if ok {
                    None
                } else {
                    Some(first_nonzero_entry(&residual))
                };
                checks.push((name.clone(), ok, witness));
            }
            // Relations mentioning f_n involve generators outside the
            // parabolic and are not constraints on V.
            Err(UqError::MissingSymbol(_)) => {}
            Err(e) => checks.push((name.clone(), false, Some(e.to_string()))),
        }
    }
    ValidationReport { checks }
}

fn first_nonzero_entry(mat: &Matrix) -> String {
    for r in 0..mat.rows() {
        for c in 0..mat.cols() {
            if !mat.get(r, c).is_zero() {
                return format!("residual entry ({r}, {c}) = {}", mat.get(r, c));
            }
        }
    }
    "zero".into()
}

/// The trivial one-dimensional module: every e, f acts by zero and every
/// k by 1.
pub fn trivial_module(shape: Shape) -> PModuleSpec {
    let rank = PModuleSpec::rank(shape);
    let k = (1..=rank).map(|i| (i, Matrix::identity(1))).collect();
    PModuleSpec::new(shape, 1, BTreeMap::new(), BTreeMap::new(), k)
        .expect("trivial module is well formed")
}

/// A one-dimensional character: e_i, f_i act by zero, k_i by the sign
/// s_i = +1 or -1 for Levi indices i != n (in increasing index order), and
/// k_n by an arbitrary nonzero scalar.
pub fn character_module(
    shape: Shape,
    signs: &[i8],
    kn_scalar: RationalQ,
) -> Result<PModuleSpec, PModuleError> {
    if kn_scalar.is_zero() {
        return Err(PModuleError::ZeroScalar);
    }
    let rank = PModuleSpec::rank(shape);
    let levi: Vec<usize> = (1..=rank).filter(|&i| i != shape.n).collect();
    if signs.len() != levi.len() {
        return Err(PModuleError::Json(format!(
            "expected {} signs, got {}",
            levi.len(),
            signs.len()
        )));
    }
    let mut k = BTreeMap::new();
    for (pos, &i) in levi.iter().enumerate() {
        let s = match signs[pos] {
            1 => RationalQ::one(),
            -1 => -&RationalQ::one(),
            _ => return Err(PModuleError::BadSign(i)),
        };
        k.insert(i, Matrix::diagonal(vec![s]));
    }
    k.insert(shape.n, Matrix::diagonal(vec![kn_scalar]));
    PModuleSpec::new(shape, 1, BTreeMap::new(), BTreeMap::new(), k)
}

/// The vector module of one Levi block: the block's sl part acts by the
/// standard raising/lowering matrix units, the other block acts trivially,
/// and k_n acts by the unique diagonal q-power matrix (normalized to start
/// at exponent 0) making all torus conjugation relations hold.
pub fn vector_module(shape: Shape, block: LeviBlock) -> Result<PModuleSpec, PModuleError> {
    let (n, m) = (shape.n, shape.m);
    let rank = PModuleSpec::rank(shape);
    let dim = match block {
        LeviBlock::First => n,
        LeviBlock::Second => m,
    };
    if dim < 2 {
        return Err(PModuleError::BlockTooSmall(dim));
    }
    // Generator index i acts within the block iff it is the block-local
    // simple root index b = 1..dim-1.
    let local = |i: usize| -> Option<usize> {
        match block {
            LeviBlock::First if i < n => Some(i),
            LeviBlock::Second if i > n => Some(i - n),
            _ => None,
        }
    };
    let mut e = BTreeMap::new();
    let mut f = BTreeMap::new();
    let mut k = BTreeMap::new();
    for i in 1..=rank {
        if i == n {
            continue;
        }
        if let Some(b) = local(i) {
            e.insert(i, Matrix::unit(dim, b - 1, b));
            f.insert(i, Matrix::unit(dim, b, b - 1));
            let mut diag = vec![RationalQ::one(); dim];
            diag[b - 1] = RationalQ::q();
            diag[b] = RationalQ::q_pow(-1);
            k.insert(i, Matrix::diagonal(diag));
        } else {
            k.insert(i, Matrix::identity(dim));
        }
    }
    // k_n must scale e_b by q^{-1} exactly when the block-local index b
    // is adjacent to n: b = dim-1 for the first block (global index n-1),
    // b = 1 for the second (global index n+1). diag(q^{c_1..c_dim}) with
    // c_b - c_{b+1} = -[b adjacent] forces the exponent profiles below.
    let kn_diag: Vec<RationalQ> = match block {
        LeviBlock::First => (0..dim)
            .map(|p| if p == dim - 1 { RationalQ::q() } else { RationalQ::one() })
            .collect(),
        LeviBlock::Second => (0..dim)
            .map(|p| if p == 0 { RationalQ::one() } else { RationalQ::q() })
            .collect(),
    };
    k.insert(n, Matrix::diagonal(kn_diag));
    PModuleSpec::new(shape, dim, e, f, k)
}

/// Matrix of the derived Levi root vector E_{i,j} on V, where (i, j) lies
/// inside one Levi block (both in 1..n or both in n+1..n+m).
pub fn levi_root_matrix(
    spec: &PModuleSpec,
    i: usize,
    j: usize,
) -> Result<Matrix, PModuleError> {
    let n = spec.shape.n;
    let big_n = n + spec.shape.m;
    let first = i >= 1 && i <= n && j >= 1 && j <= n;
    let second = i > n && i <= big_n && j > n && j <= big_n;
    if !(first || second) {
        return Err(PModuleError::NotInLevi(i, j));
    }
    let word = root_vector_word(i, j, big_n)?;
    Ok(evaluate_word(&word, &ModuleAlgebra::new(spec))?)
}
