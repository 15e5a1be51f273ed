//! Exact arithmetic in the coefficient field Q(q) of rational functions,
//! together with q-numbers, q-factorials and q-binomial coefficients.

mod parse;
mod poly;

pub use parse::parse;
pub use poly::IntPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("not specializable: pole at q = {0}")]
    Pole(BigRational),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
}

/// An element of Q(q): a reduced fraction of integer-coefficient polynomials
/// in `q`. Laurent expressions are folded in through the denominator, e.g.
/// `q^-1` is stored as `1/q`.
///
/// Canonical form: gcd(numerator, denominator) = 1 (so at most one side is
/// divisible by `q`) and the denominator has positive leading coefficient.
/// Structural equality therefore coincides with equality in Q(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalQ {
    num: IntPoly,
    den: IntPoly,
}

impl RationalQ {
    fn make(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalQ {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalQ { num, den }
    }

    pub fn zero() -> Self {
        RationalQ {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalQ {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        RationalQ {
            num: IntPoly::constant(BigInt::from(v)),
            den: IntPoly::one(),
        }
    }

    /// The generator `q` itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            RationalQ {
                num: IntPoly::monomial(BigInt::one(), k as usize),
                den: IntPoly::one(),
            }
        } else {
            RationalQ {
                num: IntPoly::one(),
                den: IntPoly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(RationalQ::make(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CoeffError> {
        if other.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(RationalQ::make(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn pow(&self, k: i64) -> Result<Self, CoeffError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = RationalQ::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// True when the element is a Laurent polynomial in `q`, i.e. the
    /// denominator is a power of `q` (up to positive integer content 1).
    pub fn is_laurent(&self) -> bool {
        let d = &self.den;
        d.coeffs()
            .iter()
            .take(d.degree())
            .all(|c| c.is_zero())
            && d.leading_coeff().is_one()
    }

    /// Exact evaluation at a rational point `q0`. A zero of the reduced
    /// denominator is a genuine pole and reported as not specializable.
    pub fn evaluate_at(&self, q0: &BigRational) -> Result<BigRational, CoeffError> {
        let den = self.den.eval(q0);
        if den.is_zero() {
            return Err(CoeffError::Pole(q0.clone()));
        }
        Ok(self.num.eval(q0) / den)
    }

    /// Coefficients of the Laurent expansion as (exponent, coefficient)
    /// pairs, lowest exponent first. Only valid when `is_laurent()`.
    /// The (exponent, coefficient) pairs of a Laurent-polynomial value,
    /// highest exponent first. Only meaningful when `is_laurent`.
    pub fn laurent_terms(&self) -> Vec<(i64, BigInt)> {
        debug_assert!(self.is_laurent());
        let shift = self.den.degree() as i64;
        self.num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 - shift, c.clone()))
            .collect()
    }
}

/// The q-number `[v]_q = (q^v - q^-v)/(q - q^-1)`, always a Laurent
/// polynomial.
pub fn q_number(v: i64) -> RationalQ {
    if v < 0 {
        return -&q_number(-v);
    }
    // [v]_q = q^{v-1} + q^{v-3} + ... + q^{1-v}
    let mut acc = RationalQ::zero();
    let mut e = v - 1;
    for _ in 0..v {
        acc = &acc + &RationalQ::q_pow(e);
        e -= 2;
    }
    acc
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> RationalQ {
    let mut acc = RationalQ::one();
    for k in 1..=n {
        acc = &acc * &q_number(k as i64);
    }
    acc
}

/// Gaussian binomial coefficient, computed by exact division of
/// q-factorials.
pub fn q_binomial(n: u32, k: u32) -> Result<RationalQ, CoeffError> {
    if k > n {
        return Err(CoeffError::Domain(format!(
            "q-binomial requires k <= n, got n = {n}, k = {k}"
        )));
    }
    let num = q_factorial(n);
    let den = &q_factorial(k) * &q_factorial(n - k);
    let result = num.checked_div(&den)?;
    // Division of q-factorials is exact: the result must be Laurent.
    assert!(result.is_laurent(), "q-binomial division left a remainder");
    Ok(result)
}

impl Add for &RationalQ {
    type Output = RationalQ;
    fn add(self, other: &RationalQ) -> RationalQ {
        RationalQ::make(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
}

impl Sub for &RationalQ {
    type Output = RationalQ;
    fn sub(self, other: &RationalQ) -> RationalQ {
        RationalQ::make(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
}

impl Mul for &RationalQ {
    type Output = RationalQ;
    fn mul(self, other: &RationalQ) -> RationalQ {
        RationalQ::make(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Div for &RationalQ {
    type Output = RationalQ;
    fn div(self, other: &RationalQ) -> RationalQ {
        self.checked_div(other)
            .expect("division by zero in Q(q); use checked_div for fallible division")
    }
}

impl Neg for &RationalQ {
    type Output = RationalQ;
    fn neg(self) -> RationalQ {
        RationalQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &BigInt, e: i64, leading: bool) -> fmt::Result {
    let abs = c.abs();
    if leading {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if e == 0 {
        write!(f, "{abs}")
    } else {
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        if e == 1 {
            write!(f, "q")
        } else {
            write!(f, "q^{e}")
        }
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &IntPoly, shift: i64) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        fmt_monomial(f, c, k as i64 - shift, first)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for RationalQ {
    /// Canonical textual form in the coefficient grammar. Laurent elements
    /// print with negative exponents (`q^2 + 1 + q^-2`); general fractions
    /// print as `(num)/(den)`. `parse(format(x)) == x` for all `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            let terms = self.laurent_terms();
            if terms.is_empty() {
                return write!(f, "0");
            }
            for (i, (e, c)) in terms.iter().rev().enumerate() {
                fmt_monomial(f, c, *e, i == 0)?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            fmt_poly(f, &self.num, 0)?;
            write!(f, ")/(")?;
            fmt_poly(f, &self.den, 0)?;
            write!(f, ")")
        }
    }
}
