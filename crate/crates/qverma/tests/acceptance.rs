//! End-to-end acceptance suite. Each test prints one PASS/FAIL line for
//! its criterion; all comparisons are exact unless stated otherwise.

use qverma::pmodule::{
    character_module, trivial_module, vector_module, LeviBlock, PModuleSpec,
};
use qverma::qcoeff::RationalQ;
use qverma::qweyl::{monomials_up_to, ExponentMatrix, Shape, WeylOperator};
use qverma::realization::{
    pi_generator, rho_e_closed, RealizedAlgebra, RealizedOperator, ALL_MUTATIONS,
};
use qverma::uqalg::{evaluate_word, root_vector_word, GeneratorSymbol};
use qverma::verify::{
    character, classical_limit_compare, verify_closed_forms, verify_jimbo,
    verify_presentation, verify_presentation_mutated, Mode, VerificationReport,
};
use std::time::Instant;

fn conclude(criterion: u32, description: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} - {description} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn report_ok(report: &VerificationReport) -> (bool, String) {
    let failing: Vec<String> = report
        .checks()
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} [{}]: {:?}", c.name, c.instance, c.witness))
        .collect();
    let detail = if failing.is_empty() {
        format!("{} checks", report.checks().len())
    } else {
        failing.join("; ")
    };
    (report.passed(), detail)
}

fn shape(n: usize, m: usize) -> Shape {
    Shape::new(n, m).unwrap()
}

#[test]
fn criterion_01_weyl_relations() {
    let start = Instant::now();
    let mut ok = true;
    for n in 1..=3 {
        for m in 1..=3 {
            let s = shape(n, m);
            let vars: Vec<(usize, usize)> = s.var_indices().collect();
            for &(j1, k1) in &vars {
                for &(j2, k2) in &vars {
                    let same = (j1, k1) == (j2, k2);
                    let tw = if same {
                        RationalQ::q()
                    } else {
                        RationalQ::one()
                    };
                    let x = WeylOperator::x(s, j2, k2);
                    let g = WeylOperator::gamma(s, j1, k1, 1);
                    let del = WeylOperator::del(s, j1, k1);
                    // gamma x = q^{delta} x gamma
                    ok &= g.mul(&x).unwrap() == x.mul(&g).unwrap().scale(&tw);
                    // gamma del = q^{-delta} del gamma
                    let del_b = WeylOperator::del(s, j2, k2);
                    ok &= g.mul(&del_b).unwrap()
                        == del_b
                            .mul(&g)
                            .unwrap()
                            .scale(&RationalQ::one().checked_div(&tw).unwrap());
                    // del x - q^{delta} x del = delta * gamma^{-1}
                    let comm = del
                        .mul(&x)
                        .unwrap()
                        .sub(&x.mul(&del).unwrap().scale(&tw))
                        .unwrap();
                    let rhs = if same {
                        WeylOperator::gamma(s, j1, k1, -1)
                    } else {
                        WeylOperator::zero(s)
                    };
                    ok &= comm == rhs;
                    // x's commute, del's commute, gamma's commute
                    let x1 = WeylOperator::x(s, j1, k1);
                    ok &= x1.mul(&x).unwrap() == x.mul(&x1).unwrap();
                    let del2 = WeylOperator::del(s, j2, k2);
                    ok &= del.mul(&del2).unwrap() == del2.mul(&del).unwrap();
                    let g2 = WeylOperator::gamma(s, j2, k2, 1);
                    ok &= g.mul(&g2).unwrap() == g2.mul(&g).unwrap();
                }
                // gamma gamma^{-1} = 1
                let g = WeylOperator::gamma(s, j1, k1, 1);
                let ginv = WeylOperator::gamma(s, j1, k1, -1);
                ok &= g.mul(&ginv).unwrap() == WeylOperator::identity(s);
                // The companion identity del x - q^{-1} x del = gamma holds
                // on polynomials (the normal forms differ by an operator
                // that acts as zero), so check it on the degree grid.
                let x = WeylOperator::x(s, j1, k1);
                let del = WeylOperator::del(s, j1, k1);
                let lhs = del
                    .mul(&x)
                    .unwrap()
                    .sub(&x.mul(&del).unwrap().scale(&RationalQ::q_pow(-1)))
                    .unwrap();
                for r in monomials_up_to(s, 3) {
                    ok &= lhs.apply_monomial(&r) == g.apply_monomial(&r);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    conclude(
        1,
        "quantum Weyl algebra relations on shapes up to (3,3)",
        ok && elapsed.as_secs_f64() < 1.0,
        &format!("all index pairs, {elapsed:?}"),
    );
}

fn criterion2_modules(s: Shape) -> Vec<(String, PModuleSpec)> {
    let levi_signs = s.n + s.m - 2;
    let mut out = vec![("trivial".to_string(), trivial_module(s))];
    let plus = vec![1i8; levi_signs];
    for j in -3i64..=3 {
        let kn = RationalQ::q_pow(j);
        out.push((
            format!("char:+*:q^{j}"),
            character_module(s, &plus, kn).unwrap(),
        ));
    }
    // sign -1 variants: a negative k_n scalar, and a -1 Levi sign.
    out.push((
        "char:+*:-q^2".to_string(),
        character_module(s, &plus, -&RationalQ::q_pow(2)).unwrap(),
    ));
    if levi_signs >= 1 {
        let mut signs = plus.clone();
        signs[0] = -1;
        out.push((
            "char:-+*:q^2".to_string(),
            character_module(s, &signs, RationalQ::q_pow(2)).unwrap(),
        ));
    }
    if s.n >= 2 {
        out.push((
            "vector:first".to_string(),
            vector_module(s, LeviBlock::First).unwrap(),
        ));
    }
    if s.m >= 2 {
        out.push((
            "vector:second".to_string(),
            vector_module(s, LeviBlock::Second).unwrap(),
        ));
    }
    out
}

#[test]
fn criterion_02_presentation_relations() {
    let start = Instant::now();
    let mut merged = VerificationReport::new();
    for (n, m) in [(2, 1), (1, 2), (2, 2), (3, 2)] {
        let s = shape(n, m);
        for (_name, spec) in criterion2_modules(s) {
            merged.merge(verify_presentation(s, &spec, 4, &Mode::Exact));
        }
    }
    let elapsed = start.elapsed();
    let (ok, detail) = report_ok(&merged);
    conclude(
        2,
        "defining and Serre relations annihilate the module, degree <= 4",
        ok && elapsed.as_secs() < 600,
        &format!("{detail}, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_root_vector_commutation_families() {
    let start = Instant::now();
    let mut merged = VerificationReport::new();
    for (n, m) in [(2, 1), (1, 2), (2, 2), (3, 1), (2, 3), (3, 2)] {
        merged.merge(verify_jimbo(shape(n, m), 4, 3, &Mode::Exact));
    }
    let (ok, detail) = report_ok(&merged);
    conclude(
        3,
        "ten commutation families, exponents <= 3, blocks up to n+m = 5",
        ok,
        &format!("{detail}, {:?}", start.elapsed()),
    );
}

#[test]
fn criterion_04_closed_form_equals_recursion() {
    let mut ok = true;
    let mut count = 0;
    for n in 2..=4usize {
        for m in 1..=3usize {
            let s = shape(n, m);
            let spec = trivial_module(s);
            let alg = RealizedAlgebra::new(&spec);
            for i in 1..n {
                for j in (i + 1)..=n {
                    let closed = rho_e_closed(s, j, i).unwrap();
                    let word = root_vector_word(j, i, n + m).unwrap();
                    let rec = evaluate_word(&word, &alg).unwrap();
                    ok &= closed == rec;
                    count += 1;
                }
            }
        }
    }
    conclude(
        4,
        "closed-form first-block root vectors equal the recursion, n <= 4, m <= 3",
        ok,
        &format!("{count} operator identities"),
    );
}

#[test]
fn criterion_05_coproduct_assembly() {
    let mut merged = VerificationReport::new();
    for (n, m) in [(3, 1), (3, 2), (4, 2)] {
        let report = verify_closed_forms(shape(n, m), 2);
        for c in report.checks() {
            if c.name.contains("coproduct assembly") {
                let mut r = VerificationReport::new();
                r.push(&c.name, &c.instance, c.witness.clone());
                merged.merge(r);
            }
        }
    }
    let (ok, detail) = report_ok(&merged);
    conclude(
        5,
        "coproduct assembly of pi on lowering root vectors equals the recursion",
        ok,
        &detail,
    );
}

#[test]
fn criterion_06_left_multiplication() {
    let mut merged = VerificationReport::new();
    for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2)] {
        let report = verify_closed_forms(shape(n, m), 4);
        for c in report.checks() {
            if c.name.contains("left multiplication") {
                let mut r = VerificationReport::new();
                r.push(&c.name, &c.instance, c.witness.clone());
                merged.merge(r);
            }
        }
    }
    let (ok, detail) = report_ok(&merged);
    conclude(
        6,
        "second-block root vectors act by left quantum multiplication, degree <= 4",
        ok,
        &detail,
    );
}

#[test]
fn criterion_07_adjoint_degree_one_formulas() {
    // The seven delta-formulas for the action on degree-one monomials.
    let mut ok = true;
    let mut count = 0;
    for n in 1..=3usize {
        for m in 1..=3usize {
            let s = shape(n, m);
            let spec = trivial_module(s);
            let one_at = |j: usize, k: usize| {
                let mut r = ExponentMatrix::zero(s);
                r.set(s, j, k, 1);
                r
            };
            let act = |g: GeneratorSymbol, j: usize, k: usize| {
                pi_generator(s, &spec, g)
                    .unwrap()
                    .act(&one_at(j, k), &[RationalQ::one()])
                    .unwrap()
            };
            let expect = |pairs: Vec<((usize, usize), RationalQ)>| {
                let mut e = qverma::realization::ModuleElement::zero(s, 1);
                for ((j, k), c) in pairs {
                    e.insert(one_at(j, k), vec![c]);
                }
                e
            };
            for (j, k) in s.var_indices() {
                for i in 1..n {
                    // e_i x_{j,k} = -q^{-1} delta_{i,k} x_{j,k+1}
                    let want = if i == k {
                        expect(vec![((j, k + 1), -&RationalQ::q_pow(-1))])
                    } else {
                        expect(vec![])
                    };
                    ok &= act(GeneratorSymbol::e(i), j, k) == want;
                    // f_i x_{j,k} = -q delta_{i+1,k} x_{j,k-1}
                    let want = if i + 1 == k {
                        expect(vec![((j, k - 1), -&RationalQ::q())])
                    } else {
                        expect(vec![])
                    };
                    ok &= act(GeneratorSymbol::f(i), j, k) == want;
                    // k_i x_{j,k} = q^{-delta_{i,k}+delta_{i+1,k}} x_{j,k}
                    let e = ((i + 1 == k) as i64) - ((i == k) as i64);
                    let want = expect(vec![((j, k), RationalQ::q_pow(e))]);
                    ok &= act(GeneratorSymbol::k(i), j, k) == want;
                    count += 3;
                }
                // k_n x_{j,k} = q^{-delta_{1,j}-delta_{n,k}} x_{j,k}
                let e = -((j == 1) as i64) - ((k == n) as i64);
                let want = expect(vec![((j, k), RationalQ::q_pow(e))]);
                ok &= act(GeneratorSymbol::k(n), j, k) == want;
                count += 1;
                for i in 1..m {
                    // e_{n+i} x_{j,k} = delta_{i+1,j} x_{j-1,k}
                    let want = if i + 1 == j {
                        expect(vec![((j - 1, k), RationalQ::one())])
                    } else {
                        expect(vec![])
                    };
                    ok &= act(GeneratorSymbol::e(n + i), j, k) == want;
                    // f_{n+i} x_{j,k} = delta_{i,j} x_{j+1,k}
                    let want = if i == j {
                        expect(vec![((j + 1, k), RationalQ::one())])
                    } else {
                        expect(vec![])
                    };
                    ok &= act(GeneratorSymbol::f(n + i), j, k) == want;
                    // k_{n+i} x_{j,k} = q^{delta_{i,j}-delta_{i+1,j}} x_{j,k}
                    let e = ((i == j) as i64) - ((i + 1 == j) as i64);
                    let want = expect(vec![((j, k), RationalQ::q_pow(e))]);
                    ok &= act(GeneratorSymbol::k(n + i), j, k) == want;
                    count += 3;
                }
            }
        }
    }
    conclude(
        7,
        "seven degree-one action formulas on shapes up to (3,3)",
        ok,
        &format!("{count} instances"),
    );
}

#[test]
fn criterion_08_classical_limit() {
    let mut merged = VerificationReport::new();
    for (n, m) in [(2, 1), (2, 2), (3, 2)] {
        let s = shape(n, m);
        let levi_signs = vec![1i8; s.n + s.m - 2];
        let mut specs = vec![
            ("trivial".to_string(), trivial_module(s)),
            (
                "char:q^2".to_string(),
                character_module(s, &levi_signs, RationalQ::q_pow(2)).unwrap(),
            ),
        ];
        if s.n >= 2 {
            specs.push((
                "vector:first".to_string(),
                vector_module(s, LeviBlock::First).unwrap(),
            ));
        }
        for (_name, spec) in specs {
            merged.merge(classical_limit_compare(s, &spec, 3).unwrap());
        }
    }
    let (ok, detail) = report_ok(&merged);
    conclude(
        8,
        "q = 1 specialization equals the independent classical oracle, degree <= 3",
        ok,
        &detail,
    );
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut out: u64 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[test]
fn criterion_09_characters() {
    use qverma::oracle::{classical_character, ClassicalModuleState};
    let mut ok = true;
    let mut detail = String::from("all tables agree");
    for (n, m) in [(2, 1), (2, 2), (3, 2)] {
        let s = shape(n, m);
        let mut specs = vec![("trivial".to_string(), trivial_module(s))];
        if s.m >= 2 {
            specs.push((
                "vector:second".to_string(),
                vector_module(s, LeviBlock::Second).unwrap(),
            ));
        }
        for (name, spec) in specs {
            let table = character(s, &spec, 5).unwrap();
            // Degree totals are dim V times the monomial count.
            for d in 0..=5u32 {
                let want = binomial((m * n) as u64 + d as u64 - 1, d as u64) as usize
                    * spec.dim();
                if table.total_at_degree(d) != want {
                    ok = false;
                    detail = format!(
                        "({n},{m}) {name}: degree {d} total {} != {want}",
                        table.total_at_degree(d)
                    );
                }
            }
            // At q = 1 the exponent table is the classical character.
            let quantum = table.exponent_table().unwrap();
            let state = ClassicalModuleState::from_spec(&spec).unwrap();
            let classical = classical_character(&state, 5);
            if quantum != classical {
                ok = false;
                detail = format!("({n},{m}) {name}: weight tables differ at q = 1");
            }
        }
    }
    conclude(
        9,
        "weight tables match the classical character; degree totals exact, d <= 5",
        ok,
        &detail,
    );
}

#[test]
fn criterion_10_mutation_sensitivity() {
    let s = shape(2, 2);
    let spec = character_module(s, &[1, 1], RationalQ::q_pow(2)).unwrap();
    let mut ok = true;
    let mut caught = 0;
    for mutation in ALL_MUTATIONS {
        let report = verify_presentation_mutated(s, &spec, 2, &Mode::Exact, mutation);
        if report.passed() {
            ok = false;
        } else {
            caught += 1;
        }
    }
    conclude(
        10,
        "each seeded formula mutation is caught by the relation grid at degree <= 2",
        ok,
        &format!("{caught}/{} mutations detected", ALL_MUTATIONS.len()),
    );
}

#[test]
fn criterion_11_determinism_and_round_trips() {
    let mut ok = true;
    let mut detail = String::from("byte-identical artifacts and lossless JSON");

    // Operator JSON round trip.
    let s = shape(2, 2);
    let spec = vector_module(s, LeviBlock::First).unwrap();
    for g in [
        GeneratorSymbol::e(1),
        GeneratorSymbol::f(2),
        GeneratorSymbol::k(3),
        GeneratorSymbol::kinv(2),
    ] {
        let op = pi_generator(s, &spec, g).unwrap();
        let back = RealizedOperator::from_json(&op.to_json()).unwrap();
        if back != op || back.to_json().to_string() != op.to_json().to_string() {
            ok = false;
            detail = format!("operator round trip failed for {g}");
        }
    }

    // Module JSON round trip.
    let back = PModuleSpec::from_json(&spec.to_json()).unwrap();
    if back.to_json().to_string() != spec.to_json().to_string() {
        ok = false;
        detail = "module round trip not lossless".to_string();
    }

    // Repeated CLI runs produce byte-identical files.
    let bin = env!("CARGO_BIN_EXE_qverma");
    let dir = tempfile::tempdir().unwrap();
    for (label, args) in [
        (
            "realize",
            vec!["realize", "--n", "2", "--m", "2", "--module", "vector:first", "--gen", "e1"],
        ),
        (
            "verify",
            vec![
                "verify", "--n", "2", "--m", "1", "--module", "trivial", "--degree", "2",
                "--presentation",
            ],
        ),
        (
            "character",
            vec!["character", "--n", "2", "--m", "1", "--module", "trivial", "--degree", "3"],
        ),
    ] {
        let mut outputs = Vec::new();
        for round in 0..2 {
            let path = dir.path().join(format!("{label}-{round}.json"));
            let status = std::process::Command::new(bin)
                .args(&args)
                .arg("--output")
                .arg(&path)
                .status()
                .unwrap();
            if !status.success() {
                ok = false;
                detail = format!("CLI {label} exited with {status}");
            }
            outputs.push(std::fs::read(&path).unwrap());
        }
        if outputs[0] != outputs[1] {
            ok = false;
            detail = format!("CLI {label} output not byte-identical across runs");
        }
    }
    conclude(11, "determinism and JSON round trips", ok, &detail);
}
