//! Randomized property tests for the exact arithmetic layer, the Weyl
//! algebra action, the straightening product, and word evaluation.

use proptest::prelude::*;
use qverma::qcoeff::{parse, q_binomial, q_number, RationalQ};
use qverma::qcoordinate::{qmul, straighten, variable, QWord};
use qverma::qweyl::{ExponentMatrix, Polynomial, Shape, WeylOperator};
use qverma::uqalg::{evaluate_word, AlgebraWord, GeneratorSymbol, UqError, WordAlgebra};

fn shape22() -> Shape {
    Shape::new(2, 2).unwrap()
}

/// A Laurent polynomial with small coefficients and exponents.
fn laurent() -> impl Strategy<Value = RationalQ> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(|terms| {
        let mut acc = RationalQ::zero();
        for (c, e) in terms {
            acc = &acc + &(&RationalQ::from_int(c) * &RationalQ::q_pow(e));
        }
        acc
    })
}

/// A nonzero rational function built as a quotient of Laurent polynomials.
fn rational_q() -> impl Strategy<Value = RationalQ> {
    (laurent(), laurent()).prop_map(|(a, b)| {
        if b.is_zero() {
            a
        } else {
            a.checked_div(&b).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in rational_q(), b in rational_q(), c in rational_q()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), RationalQ::one());
        }
        prop_assert_eq!(&a - &a, RationalQ::zero());
    }

    #[test]
    fn display_parse_round_trip(a in rational_q()) {
        let text = a.to_string();
        prop_assert_eq!(parse(&text).unwrap(), a);
    }

    #[test]
    fn weyl_apply_is_an_algebra_action(
        ops in prop::collection::vec((0usize..4, 0usize..4, 0u32..3), 1..3),
        mono in prop::collection::vec(0u32..3, 4)
    ) {
        // Random small operators from products of generators.
        let s = shape22();
        let vars: Vec<(usize, usize)> = s.var_indices().collect();
        let build = |choices: &[(usize, usize, u32)]| {
            let mut op = WeylOperator::identity(s);
            for &(v, kind, e) in choices {
                let (j, k) = vars[v];
                let factor = match kind {
                    0 => WeylOperator::x(s, j, k),
                    1 => WeylOperator::del(s, j, k),
                    2 => WeylOperator::gamma(s, j, k, e as i64),
                    _ => WeylOperator::gamma(s, j, k, -(e as i64)),
                };
                op = op.mul(&factor).unwrap();
            }
            op
        };
        let a = build(&ops);
        let b = build(&ops.iter().rev().cloned().collect::<Vec<_>>());
        let r = ExponentMatrix::from_rows(s, &[mono[0..2].to_vec(), mono[2..4].to_vec()]).unwrap();
        let p = Polynomial::monomial(s, r, RationalQ::one());
        let lhs = a.mul(&b).unwrap().apply(&p).unwrap();
        let rhs = a.apply(&b.apply(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qmul_is_associative(
        w1 in prop::collection::vec((1usize..=2, 1usize..=2), 1..4),
        w2 in prop::collection::vec((1usize..=2, 1usize..=2), 1..4),
        w3 in prop::collection::vec((1usize..=2, 1usize..=2), 1..4)
    ) {
        let s = shape22();
        let p = |w: &[(usize, usize)]| straighten(&QWord::new(s, w.to_vec()).unwrap());
        let (p1, p2, p3) = (p(&w1), p(&w2), p(&w3));
        prop_assert_eq!(qmul(&qmul(&p1, &p2), &p3), qmul(&p1, &qmul(&p2, &p3)));
    }

    #[test]
    fn qmul_commutes_at_q_equals_one(
        w1 in prop::collection::vec((1usize..=2, 1usize..=2), 1..4),
        w2 in prop::collection::vec((1usize..=2, 1usize..=2), 1..4)
    ) {
        let s = shape22();
        let one = num_rational::BigRational::from_integer(1.into());
        let p = |w: &[(usize, usize)]| straighten(&QWord::new(s, w.to_vec()).unwrap());
        let (p1, p2) = (p(&w1), p(&w2));
        let ab = qmul(&p1, &p2);
        let ba = qmul(&p2, &p1);
        // Compare coefficients specialized at q = 1.
        for (r, c) in ab.terms() {
            let other = ba.coeff(r);
            prop_assert_eq!(
                c.evaluate_at(&one).unwrap(),
                other.evaluate_at(&one).unwrap()
            );
        }
        for (r, c) in ba.terms() {
            let other = ab.coeff(r);
            prop_assert_eq!(
                c.evaluate_at(&one).unwrap(),
                other.evaluate_at(&one).unwrap()
            );
        }
    }

    #[test]
    fn straighten_agrees_with_iterated_qmul(
        w in prop::collection::vec((1usize..=2, 1usize..=2), 1..6)
    ) {
        let s = shape22();
        let direct = straighten(&QWord::new(s, w.clone()).unwrap());
        let mut folded = Polynomial::monomial(s, ExponentMatrix::zero(s), RationalQ::one());
        for (j, k) in &w {
            folded = qmul(&folded, &variable(s, *j, *k));
        }
        prop_assert_eq!(direct, folded);
    }

    #[test]
    fn word_evaluation_is_multiplicative_on_concatenation(
        w1 in prop::collection::vec(0usize..6, 0..4),
        w2 in prop::collection::vec(0usize..6, 0..4)
    ) {
        // Scalar representation: generators map to fixed invertible scalars.
        struct Scalars;
        impl WordAlgebra for Scalars {
            type Elem = RationalQ;
            fn identity(&self) -> RationalQ { RationalQ::one() }
            fn mul(&self, a: &RationalQ, b: &RationalQ) -> RationalQ { a * b }
            fn add(&self, a: &RationalQ, b: &RationalQ) -> RationalQ { a + b }
            fn scale(&self, a: &RationalQ, c: &RationalQ) -> RationalQ { a * c }
            fn assign(&self, g: GeneratorSymbol) -> Result<RationalQ, UqError> {
                Ok(RationalQ::q_pow(g.index as i64 + 1))
            }
        }
        let symbols = [
            GeneratorSymbol::e(1), GeneratorSymbol::f(1), GeneratorSymbol::k(1),
            GeneratorSymbol::e(2), GeneratorSymbol::k(2), GeneratorSymbol::kinv(1),
        ];
        let to_word = |ix: &[usize]| {
            AlgebraWord::monomial(ix.iter().map(|&i| symbols[i]).collect(), RationalQ::one())
        };
        let a = to_word(&w1);
        let b = to_word(&w2);
        let alg = Scalars;
        let va = evaluate_word(&a, &alg).unwrap();
        let vb = evaluate_word(&b, &alg).unwrap();
        let vab = evaluate_word(&a.mul(&b), &alg).unwrap();
        prop_assert_eq!(&va * &vb, vab);
    }
}

#[test]
fn q_numbers_specialize_to_integers() {
    let one = num_rational::BigRational::from_integer(1.into());
    for m in -50i64..=50 {
        let v = q_number(m).evaluate_at(&one).unwrap();
        assert_eq!(v, num_rational::BigRational::from_integer(m.into()));
    }
}

#[test]
fn q_binomials_are_symmetric_nonnegative_laurent() {
    use num_traits::Signed;
    for n in 0u32..=12 {
        for k in 0..=n {
            let b = q_binomial(n, k).unwrap();
            assert!(b.is_laurent(), "[{n} choose {k}]_q not Laurent");
            let terms = b.laurent_terms();
            for (e, c) in &terms {
                assert!(!c.is_negative(), "negative coefficient in [{n} choose {k}]_q");
                // Symmetry under q <-> q^-1.
                let mirror = terms.iter().find(|(e2, _)| *e2 == -e);
                assert_eq!(mirror.map(|(_, c2)| c2), Some(c));
            }
        }
    }
}

#[test]
fn classical_specialization_of_the_q_derivative() {
    // At q = 1 (coefficients specialized, gamma trivial) the q-derivative
    // is the ordinary derivative on monomials.
    let one = num_rational::BigRational::from_integer(1.into());
    let s = Shape::new(2, 1).unwrap();
    let del = WeylOperator::del(s, 1, 1);
    for d in 1u32..=4 {
        let mut r = ExponentMatrix::zero(s);
        r.set(s, 1, 1, d);
        let image = del.apply_monomial(&r);
        let (res, c) = image.terms().next().unwrap();
        assert_eq!(res.get(s, 1, 1), d - 1);
        assert_eq!(
            c.evaluate_at(&one).unwrap(),
            num_rational::BigRational::from_integer((d as i64).into())
        );
    }
}

#[test]
fn normal_form_is_idempotent() {
    // Rebuilding an operator from its own terms reproduces it exactly.
    let s = shape22();
    let op = WeylOperator::del(s, 1, 1)
        .mul(&WeylOperator::x(s, 1, 1))
        .unwrap()
        .mul(&WeylOperator::gamma(s, 2, 2, -1))
        .unwrap();
    let mut rebuilt = WeylOperator::zero(s);
    for (key, c) in op.terms() {
        rebuilt = rebuilt
            .add(&WeylOperator::term(s, key.clone(), c.clone()))
            .unwrap();
    }
    assert_eq!(rebuilt, op);
}
