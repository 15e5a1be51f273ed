//! Dense integer-coefficient polynomials in the deformation parameter `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in `q` with `BigInt` coefficients, stored densely from the
/// constant term up. Invariant: no trailing zero coefficients, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// `c * q^k` for `k >= 0`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Number of trailing factors of `q` (valuation at q = 0); 0 for the zero
    /// polynomial.
    pub fn q_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Divide by `q^k`; caller must guarantee divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        debug_assert!(self.q_valuation() >= k);
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder of `self` by `other` (`other` nonzero).
    fn pseudo_rem(&self, other: &Self) -> Self {
        let d = other.degree();
        let lc = other.leading_coeff();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let rl = r.leading_coeff();
            r = r.scale(&lc).sub(&other.scale(&rl).shift_up(shift));
        }
        r
    }

    /// Polynomial gcd over the integers, including integer content, with
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return make_lead_positive(other.clone());
        }
        if other.is_zero() {
            return make_lead_positive(self.clone());
        }
        let content_gcd = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        make_lead_positive(a.scale(&content_gcd))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn exact_div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let d = other.degree();
        let lc = other.leading_coeff();
        let mut r = self.clone();
        let mut quotient = vec![BigInt::zero(); self.degree().saturating_sub(d) + 1];
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let (qc, rem) = r.leading_coeff().div_rem(&lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            quotient[shift] = qc.clone();
            r = r.sub(&other.scale(&qc).shift_up(shift));
        }
        assert!(r.is_zero(), "inexact polynomial division");
        IntPoly::from_coeffs(quotient)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

fn make_lead_positive(p: IntPoly) -> IntPoly {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_shifted_squares() {
        // gcd(q^2 - 1, q^2 - 2q + 1) = q - 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_includes_content() {
        let a = p(&[2, 2]);
        let b = p(&[4]);
        assert_eq!(a.gcd(&b), p(&[2]));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(&[1, 3, 3, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.exact_div(&b), p(&[1, 2, 1]));
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        p(&[1, 0, 1]).exact_div(&p(&[1, 1]));
    }
}
