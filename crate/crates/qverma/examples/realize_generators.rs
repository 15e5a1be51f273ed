//! Realizing the Chevalley generators as q-difference operators on
//! polynomials tensored with a parabolic module, and acting on basis
//! vectors.

use qverma::pmodule::{trivial_module, vector_module, LeviBlock};
use qverma::qcoeff::RationalQ;
use qverma::qweyl::{ExponentMatrix, Shape};
use qverma::realization::pi_generator;
use qverma::uqalg::GeneratorSymbol;

fn main() {
    let shape = Shape::new(2, 1).unwrap();
    let trivial = trivial_module(shape);

    // On the trivial module each operator is a pure q-difference operator.
    for name in ["e1", "f1", "k1", "f2", "k2"] {
        let g = match name.chars().next().unwrap() {
            'e' => GeneratorSymbol::e(name[1..].parse().unwrap()),
            'f' => GeneratorSymbol::f(name[1..].parse().unwrap()),
            _ => GeneratorSymbol::k(name[1..].parse().unwrap()),
        };
        let op = pi_generator(shape, &trivial, g).unwrap();
        for (w, mat) in op.pairs() {
            let scalar = mat.get(0, 0);
            if scalar.is_one() {
                println!("pi({name}) term: {w}");
            } else {
                println!("pi({name}) term: ({scalar}) * {w}");
            }
        }
    }
    println!();

    // Acting on the generating vector 1 (x) v_0: f_2 creates the variable
    // x_{1,2} with a gamma twist that is invisible on the constant.
    let f2 = pi_generator(shape, &trivial, GeneratorSymbol::f(2)).unwrap();
    let origin = ExponentMatrix::zero(shape);
    let out = f2.act(&origin, &[RationalQ::one()]).unwrap();
    for (r, coords) in out.terms() {
        println!("pi(f2) (1 (x) v_0) = ({}) x^{:?} (x) v_0", coords[0], r.to_rows(shape));
    }

    // On a nontrivial module the matrix part mixes the v-basis.
    let shape22 = Shape::new(2, 2).unwrap();
    let vec_mod = vector_module(shape22, LeviBlock::First).unwrap();
    let e1 = pi_generator(shape22, &vec_mod, GeneratorSymbol::e(1)).unwrap();
    let v1 = {
        let mut v = vec![RationalQ::zero(); vec_mod.dim()];
        v[1] = RationalQ::one();
        v
    };
    let out = e1.act(&ExponentMatrix::zero(shape22), &v1).unwrap();
    for (r, coords) in out.terms() {
        let coords: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        println!("pi(e1) (1 (x) v_1) has coords {coords:?} on x^{:?}", r.to_rows(shape22));
    }
}
