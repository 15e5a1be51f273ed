//! The quantum coordinate algebra: straightening arbitrary words in the
//! generators x_{j,k} into the sorted monomial basis, and the product
//! this induces.

use qverma::qcoordinate::{qmul, straighten, variable, QWord};
use qverma::qweyl::Shape;

fn print_poly(shape: Shape, label: &str, p: &qverma::qcoordinate::QPolynomial) {
    print!("{label} =");
    let mut first = true;
    for (r, c) in p.terms() {
        if !first {
            print!(" +");
        }
        print!(" ({c}) x^{:?}", r.to_rows(shape));
        first = false;
    }
    println!();
}

fn main() {
    let shape = Shape::new(2, 2).unwrap();

    // Same row, different columns: a simple q-commutation.
    let w = QWord::new(shape, vec![(1, 2), (1, 1)]).unwrap();
    print_poly(shape, "x_12 x_11", &straighten(&w));

    // Different row and column in the generic position: the reordering
    // picks up a correction term.
    let w = QWord::new(shape, vec![(2, 2), (1, 1)]).unwrap();
    print_poly(shape, "x_22 x_11", &straighten(&w));

    // The two orders of the generic pair differ by (q - q^-1) x_12 x_21.
    let ab = qmul(&variable(shape, 1, 1), &variable(shape, 2, 2));
    let ba = qmul(&variable(shape, 2, 2), &variable(shape, 1, 1));
    print_poly(shape, "x_11 x_22 - x_22 x_11", &ab.sub(&ba));

    // Straightening is independent of how a product is associated.
    let left = qmul(&qmul(&variable(shape, 2, 1), &variable(shape, 1, 2)), &variable(shape, 2, 2));
    let right = qmul(&variable(shape, 2, 1), &qmul(&variable(shape, 1, 2), &variable(shape, 2, 2)));
    assert!(left.sub(&right).is_zero());
    println!("associativity on a length-3 product: ok");
}
