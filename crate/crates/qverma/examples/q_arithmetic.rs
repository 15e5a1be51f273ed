//! Exact arithmetic in the field of rational functions of q: q-integers,
//! q-factorials, q-binomials, parsing, and Laurent-polynomial detection.

use qverma::qcoeff::{parse, q_binomial, q_factorial, q_number, RationalQ};

fn main() {
    for v in 1..=5 {
        println!("[{v}]_q = {}", q_number(v));
    }
    println!();

    println!("[3]_q! = {}", q_factorial(3));
    println!("[4 choose 2]_q = {}", q_binomial(4, 2).unwrap());
    println!();

    // Field operations keep everything reduced and canonical.
    let a = parse("(q^2 - 1)/(q - 1)").unwrap();
    println!("(q^2 - 1)/(q - 1) reduces to {a}");
    assert_eq!(a, parse("q + 1").unwrap());

    // Balanced q-integers: [2]_q = q + q^-1.
    assert_eq!(q_number(2), parse("q + q^-1").unwrap());

    let b = &RationalQ::q() - &RationalQ::q_pow(-1);
    println!("q - q^-1 = {b}");
    let ratio = (&q_number(2) / &b).to_string();
    println!("[2]_q / (q - q^-1) = {ratio}");

    // Laurent detection: division that happens to clear the denominator.
    let c = &q_number(6) / &q_number(3);
    println!("[6]_q / [3]_q = {c} (Laurent: {})", c.is_laurent());
    let d = &q_number(5) / &q_number(3);
    println!("[5]_q / [3]_q = {d} (Laurent: {})", d.is_laurent());

    // Exact evaluation at a rational point.
    let two = num_rational::BigRational::from_integer(2.into());
    println!("[4]_q at q = 2 is {}", q_number(4).evaluate_at(&two).unwrap());
}
