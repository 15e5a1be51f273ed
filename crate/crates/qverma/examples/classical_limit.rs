//! Specializing the realized operators at q = 1 and comparing against an
//! independently coded classical action built from matrix-unit
//! commutators.

use qverma::pmodule::{trivial_module, vector_module, LeviBlock};
use qverma::qweyl::Shape;
use qverma::verify::classical_limit_compare;

fn main() {
    let shape = Shape::new(2, 2).unwrap();

    for (name, spec) in [
        ("trivial", trivial_module(shape)),
        ("vector:first", vector_module(shape, LeviBlock::First).unwrap()),
    ] {
        let report = classical_limit_compare(shape, &spec, 3).unwrap();
        println!(
            "{name}, degree <= 3: {}/{} classical-limit checks passed",
            report.checks().len() - report.failed_count(),
            report.checks().len()
        );
        assert!(report.passed());
        for check in report.checks().iter().take(4) {
            println!("  {} [{}]", check.name, check.instance);
        }
    }
}
