//! The quantum coordinate algebra C_q[u*]: straightening of words in the
//! generators x_{j,k} to the row-major monomial basis x^r, and the product
//! it induces.
//!
//! The identification with U_q(u) (x_{j,k} <-> E_{n+j,k}, same basis order)
//! and with C[u*] (x^r <-> x^r) is pure bookkeeping: quantum and classical
//! polynomials share the exponent-matrix basis.

use crate::qcoeff::RationalQ;
use crate::qweyl::{ExponentMatrix, Polynomial, Shape, WeylError};

/// A word in the generators x_{j,k}, leftmost factor first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QWord {
    shape: Shape,
    letters: Vec<(usize, usize)>,
}

/// Elements of C_q[u*] in the straightened basis share the representation
/// of ordinary polynomials.
pub type QPolynomial = Polynomial;

impl QWord {
    pub fn new(shape: Shape, letters: Vec<(usize, usize)>) -> Result<Self, WeylError> {
        for &(j, k) in &letters {
            shape.check_index(j, k)?;
        }
        Ok(QWord { shape, letters })
    }

    /// The row-major sorted word representing the monomial x^r.
    pub fn from_monomial(shape: Shape, r: &ExponentMatrix) -> Self {
        let mut letters = Vec::new();
        for (j, k) in shape.var_indices() {
            for _ in 0..r.get(shape, j, k) {
                letters.push((j, k));
            }
        }
        QWord { shape, letters }
    }

    pub fn letters(&self) -> &[(usize, usize)] {
        &self.letters
    }
}

/// Straighten a word to the basis {x^r} by repeatedly rewriting the leftmost
/// adjacent inversion with respect to row-major order. The inversion count
/// strictly decreases at every step (the correction term of the fourth
/// relation is already sorted on the rewritten pair), so this terminates.
pub fn straighten(word: &QWord) -> QPolynomial {
    let shape = word.shape;
    let mut out = QPolynomial::zero(shape);
    let mut pending: Vec<(Vec<(usize, usize)>, RationalQ)> =
        vec![(word.letters.clone(), RationalQ::one())];
    let q = RationalQ::q();
    let q_minus_qinv = &q - &RationalQ::q_pow(-1);
    while let Some((letters, coeff)) = pending.pop() {
        match leftmost_inversion(&letters) {
            None => {
                let mut r = ExponentMatrix::zero(shape);
                for &(j, k) in &letters {
                    let v = r.get(shape, j, k);
                    r.set(shape, j, k, v + 1);
                }
                out.insert(r, coeff);
            }
            Some(p) => {
                let (j, l) = letters[p];
                let (i, k) = letters[p + 1];
                let mut swapped = letters.clone();
                swapped.swap(p, p + 1);
                if j == i || l == k {
                    // x_{i,l} x_{i,k} = q x_{i,k} x_{i,l}  (same row)
                    // x_{j,k} x_{i,k} = q x_{i,k} x_{j,k}  (same column)
                    pending.push((swapped, &coeff * &q));
                } else if l < k {
                    // x_{j,k'} x_{i,l'} = x_{i,l'} x_{j,k'} for k' < l'
                    pending.push((swapped, coeff));
                } else {
                    // x_{j,l} x_{i,k} = x_{i,k} x_{j,l}
                    //                   + (q - q^-1) x_{i,l} x_{j,k}
                    let mut corrected = letters.clone();
                    corrected[p] = (i, l);
                    corrected[p + 1] = (j, k);
                    pending.push((swapped, coeff.clone()));
                    pending.push((corrected, &coeff * &q_minus_qinv));
                }
            }
        }
    }
    out
}

fn leftmost_inversion(letters: &[(usize, usize)]) -> Option<usize> {
    letters.windows(2).position(|w| w[0] > w[1])
}

/// Product in C_q[u*], straightened to the monomial basis.
pub fn qmul(p1: &QPolynomial, p2: &QPolynomial) -> QPolynomial {
    assert_eq!(p1.shape(), p2.shape(), "shape mismatch in qmul");
    let shape = p1.shape();
    let mut out = QPolynomial::zero(shape);
    for (r1, c1) in p1.terms() {
        for (r2, c2) in p2.terms() {
            let mut letters = QWord::from_monomial(shape, r1).letters.clone();
            letters.extend(QWord::from_monomial(shape, r2).letters.iter().copied());
            let word = QWord { shape, letters };
            let product = straighten(&word).scale(&(c1 * c2));
            out = out.add(&product);
        }
    }
    out
}

/// The quantum variable x_{j,k} as a one-term polynomial.
pub fn variable(shape: Shape, j: usize, k: usize) -> QPolynomial {
    QPolynomial::monomial(
        shape,
        ExponentMatrix::unit(shape, j, k),
        RationalQ::one(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::parse;

    fn shape22() -> Shape {
        Shape::new(2, 2).unwrap()
    }

    fn mono(shape: Shape, entries: &[(usize, usize, u32)]) -> ExponentMatrix {
        let mut r = ExponentMatrix::zero(shape);
        for &(j, k, e) in entries {
            r.set(shape, j, k, e);
        }
        r
    }

    #[test]
    fn same_row_swap_picks_up_q() {
        // x_{1,2} x_{1,1} = q x_{1,1} x_{1,2}
        let s = shape22();
        let w = QWord::new(s, vec![(1, 2), (1, 1)]).unwrap();
        let p = straighten(&w);
        let r = mono(s, &[(1, 1, 1), (1, 2, 1)]);
        assert_eq!(p.coeff(&r), parse("q").unwrap());
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn cross_diagonal_swap_has_correction_term() {
        // x_{2,2} x_{1,1} = x_{1,1} x_{2,2} + (q - q^-1) x_{1,2} x_{2,1}
        let s = shape22();
        let w = QWord::new(s, vec![(2, 2), (1, 1)]).unwrap();
        let p = straighten(&w);
        assert_eq!(
            p.coeff(&mono(s, &[(1, 1, 1), (2, 2, 1)])),
            RationalQ::one()
        );
        assert_eq!(
            p.coeff(&mono(s, &[(1, 2, 1), (2, 1, 1)])),
            parse("q - q^-1").unwrap()
        );
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn sorted_word_is_a_single_monomial() {
        let s = shape22();
        let w = QWord::new(s, vec![(1, 1), (1, 2), (2, 1)]).unwrap();
        let p = straighten(&w);
        assert_eq!(
            p.coeff(&mono(s, &[(1, 1, 1), (1, 2, 1), (2, 1, 1)])),
            RationalQ::one()
        );
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn qmul_is_unital_and_handles_powers() {
        let s = shape22();
        let x11 = variable(s, 1, 1);
        let one = QPolynomial::one(s);
        assert_eq!(qmul(&one, &x11), x11);
        let sq = qmul(&x11, &x11);
        let cube = qmul(&sq, &x11);
        assert_eq!(cube.coeff(&mono(s, &[(1, 1, 3)])), RationalQ::one());
        assert_eq!(cube.terms().count(), 1);
    }

    #[test]
    fn qmul_associative_on_generators() {
        let s = shape22();
        let vars: Vec<_> = s.var_indices().map(|(j, k)| variable(s, j, k)).collect();
        for a in &vars {
            for b in &vars {
                for c in &vars {
                    let left = qmul(&qmul(a, b), c);
                    let right = qmul(a, &qmul(b, c));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn straighten_confluent_on_short_words() {
        // Straightening the word directly agrees with straightening after
        // any single rewrite step applied elsewhere: check via products of
        // three generators evaluated in both association orders above, and
        // via reversal of fully unsorted words.
        let s = shape22();
        let w1 = QWord::new(s, vec![(2, 2), (2, 1), (1, 2), (1, 1)]).unwrap();
        let p1 = straighten(&w1);
        // Rewrite the middle pair first by hand: (2,1)(1,2) -> (1,2)(2,1)
        let w2 = QWord::new(s, vec![(2, 2), (1, 2), (2, 1), (1, 1)]).unwrap();
        let p2 = straighten(&w2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn q_one_specialization_commutes() {
        use num_rational::BigRational;
        use num_traits::One;
        let s = shape22();
        let one = BigRational::one();
        let a = qmul(&variable(s, 2, 2), &variable(s, 1, 1));
        let b = qmul(&variable(s, 1, 1), &variable(s, 2, 2));
        let basis: Vec<_> = a.terms().map(|(r, _)| r.clone()).collect();
        for r in &basis {
            assert_eq!(
                a.coeff(r).evaluate_at(&one).unwrap(),
                b.coeff(r).evaluate_at(&one).unwrap()
            );
        }
    }
}
