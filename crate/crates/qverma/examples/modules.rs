//! Building parabolic modules (trivial, one-dimensional characters,
//! vector modules), validating them against the defining relations, and
//! round-tripping them through JSON.

use qverma::pmodule::{
    character_module, trivial_module, validate, vector_module, LeviBlock, PModuleSpec,
};
use qverma::qcoeff::parse;
use qverma::qweyl::Shape;

fn main() {
    let shape = Shape::new(2, 2).unwrap();

    let trivial = trivial_module(shape);
    println!("trivial module: dim {}", trivial.dim());

    let character = character_module(shape, &[1, -1], parse("q^-2").unwrap()).unwrap();
    println!("character module (+,-; q^-2): dim {}", character.dim());

    let vec_first = vector_module(shape, LeviBlock::First).unwrap();
    let vec_second = vector_module(shape, LeviBlock::Second).unwrap();
    println!(
        "vector modules: first block dim {}, second block dim {}",
        vec_first.dim(),
        vec_second.dim()
    );

    // Every builtin passes the internal relation checks.
    for (name, spec) in [
        ("trivial", &trivial),
        ("character", &character),
        ("vector:first", &vec_first),
        ("vector:second", &vec_second),
    ] {
        let report = validate(spec);
        println!(
            "validate {name}: {}/{} checks passed",
            report.checks().iter().filter(|(_, ok, _)| *ok).count(),
            report.checks().len()
        );
        assert!(report.passed());
    }

    // JSON round trip reproduces the module exactly.
    let json = vec_first.to_json();
    let back = PModuleSpec::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    println!("JSON round trip of vector:first: byte-identical re-serialization");
    println!("{}", serde_json::to_string_pretty(&json).unwrap());
}
