//! The q-deformed Weyl algebra on the variables x_{j,k}: multiplication
//! operators, scaling automorphisms gamma, twisted derivations del, and
//! their action on polynomials.

use qverma::qcoeff::RationalQ;
use qverma::qweyl::{monomials_up_to, ExponentMatrix, Polynomial, Shape, WeylOperator};

fn main() {
    let shape = Shape::new(2, 2).unwrap();

    // del x - q x del = gamma^-1 on the same variable: check the two
    // sides agree as operators (their normal forms coincide).
    let x = WeylOperator::x(shape, 1, 1);
    let del = WeylOperator::del(shape, 1, 1);
    let ginv = WeylOperator::gamma(shape, 1, 1, -1);
    let lhs = del
        .mul(&x)
        .unwrap()
        .sub(&x.mul(&del).unwrap().scale(&RationalQ::q()))
        .unwrap();
    assert!(lhs.sub(&ginv).unwrap().is_zero());
    println!("del_11 x_11 - q x_11 del_11 = {lhs}");

    // gamma acts diagonally: gamma x^r = q^(r_11) x^r.
    let gamma = WeylOperator::gamma(shape, 1, 1, 1);
    let r = ExponentMatrix::from_rows(shape, &[vec![3, 1], vec![0, 2]]).unwrap();
    let gp = gamma.apply_monomial(&r);
    let (_, c) = gp.terms().next().unwrap();
    println!("gamma_11 on x^[[3,1],[0,2]] scales by {c}");

    // del is a q-divided-power derivative: del x^d = [d]_q x^(d-1).
    let mut p = Polynomial::zero(shape);
    let d4 = ExponentMatrix::from_rows(shape, &[vec![4, 0], vec![0, 0]]).unwrap();
    p.insert(d4, RationalQ::one());
    let dp = del.apply(&p).unwrap();
    for (r, c) in dp.terms() {
        println!("del_11 x_11^4 = {c} * x^{:?}", r.to_rows(shape));
    }

    // The graded basis: monomial counts per degree follow the standard
    // stars-and-bars formula for 4 variables.
    for d in 0..=3 {
        let count = monomials_up_to(shape, d).len();
        println!("monomials of degree <= {d}: {count}");
    }
}
