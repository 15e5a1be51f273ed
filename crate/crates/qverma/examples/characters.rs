//! Weight-multiplicity tables: simultaneous torus eigenvalues of the
//! monomial basis, degree totals, and agreement with the classical
//! character.

use qverma::oracle::{classical_character, ClassicalModuleState};
use qverma::pmodule::{trivial_module, vector_module, LeviBlock};
use qverma::qweyl::Shape;
use qverma::verify::character;

fn main() {
    let shape = Shape::new(2, 2).unwrap();
    let spec = trivial_module(shape);

    let table = character(shape, &spec, 2).unwrap();
    println!("trivial module, degree <= 2:");
    for ((degree, signs, exponents), mult) in table.entries() {
        println!("  degree {degree}, signs {signs:?}, k-exponents {exponents:?}: multiplicity {mult}");
    }

    // Degree totals follow the stars-and-bars count of monomials.
    for d in 0..=4 {
        println!("total multiplicity at degree {d}: {}", table_total(shape, &spec, d));
    }

    // All-plus signs let the table collapse to pure q-power exponents,
    // which match the classical weights at q = 1.
    let vec_mod = vector_module(shape, LeviBlock::Second).unwrap();
    let quantum = character(shape, &vec_mod, 3).unwrap().exponent_table().unwrap();
    let state = ClassicalModuleState::from_spec(&vec_mod).unwrap();
    let classical = classical_character(&state, 3);
    assert_eq!(quantum, classical);
    println!("vector:second character matches the classical character up to degree 3");
}

fn table_total(
    shape: Shape,
    spec: &qverma::pmodule::PModuleSpec,
    d: u32,
) -> usize {
    character(shape, spec, d).unwrap().total_at_degree(d)
}
