//! Running the full defining-relation catalog through the realized
//! operators and checking that every relation annihilates every basis
//! vector up to a degree bound.

use qverma::pmodule::{character_module, trivial_module};
use qverma::qcoeff::parse;
use qverma::qweyl::Shape;
use qverma::verify::{verify_presentation, Mode};

fn main() {
    let shape = Shape::new(2, 2).unwrap();

    // Exact mode over the trivial module.
    let trivial = trivial_module(shape);
    let report = verify_presentation(shape, &trivial, 3, &Mode::Exact);
    println!(
        "trivial module, degree <= 3, exact: {}/{} checks passed",
        report.checks().len() - report.failed_count(),
        report.checks().len()
    );
    assert!(report.passed());

    // A one-dimensional character module with a sign twist.
    let character = character_module(shape, &[1, -1], parse("q^2").unwrap()).unwrap();
    let report = verify_presentation(shape, &character, 2, &Mode::Exact);
    println!(
        "character module (+,-; q^2), degree <= 2, exact: {}/{} checks passed",
        report.checks().len() - report.failed_count(),
        report.checks().len()
    );
    assert!(report.passed());

    // The fast numeric mode evaluates residuals at a rational point of q,
    // falling back to exact arithmetic near poles.
    let q0 = num_rational::BigRational::new(7.into(), 3.into());
    let report = verify_presentation(shape, &trivial, 3, &Mode::RationalQ(q0));
    println!(
        "trivial module, degree <= 3, q = 7/3: {}/{} checks passed",
        report.checks().len() - report.failed_count(),
        report.checks().len()
    );
    assert!(report.passed());

    // A sample of the individual check names and instances.
    for check in report.checks().iter().take(3) {
        println!("  e.g. {} [{}]: {}", check.name, check.instance, check.pass);
    }
}
