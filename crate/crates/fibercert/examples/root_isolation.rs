//! The univariate real-root machinery on its own: Sturm counting over
//! intervals, isolation into disjoint boxes with exact rational roots
//! recognized, refinement, and Sylvester resultants.
//!
//! Run with: cargo run --example root_isolation

use num_bigint::BigInt;
use num_rational::BigRational;

use fibercert::realalg::{
    gcd_univariate, isolate_real_roots, rational_roots, sturm_count, sylvester_resultant,
    RealBound, RootIsolator, UniPoly,
};

fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // x^3 - x: three real roots, all found exactly.
    let cubic = UniPoly::from_integers(&[0, -1, 0, 1]);
    println!(
        "x^3 - x has {} real roots",
        sturm_count(&cubic, &RealBound::NegInfinity, &RealBound::PosInfinity)
    );
    for iso in isolate_real_roots(&cubic) {
        match &iso.exact_root {
            Some(r) => println!("  exact root {r}"),
            None => println!("  root in [{}, {}]", iso.lo, iso.hi),
        }
    }

    // Interval counting and the half-open convention.
    println!(
        "roots of x^3 - x in (0, 1]: {}",
        sturm_count(&cubic, &RealBound::Value(rq(0, 1)), &RealBound::Value(rq(1, 1)))
    );

    // An irrational root: isolate and refine to any width.
    let sqrt2 = UniPoly::from_integers(&[-2, 0, 1]);
    let isolator = RootIsolator::new(&sqrt2);
    let positive = isolator
        .isolate()
        .into_iter()
        .find(|iso| iso.hi > rq(0, 1))
        .expect("sqrt(2) exists");
    let tight = isolator.refine_below(&positive, &rq(1, 1_000_000));
    println!(
        "sqrt(2) isolated to width < 1e-6: [{}, {}]",
        tight.lo, tight.hi
    );

    // Rational roots are recovered exactly even with irrational neighbors:
    // (3x - 2)(x + 5)(x^2 - 3).
    let mixed = UniPoly::from_integers(&[-2, 3])
        .mul(&UniPoly::from_integers(&[5, 1]))
        .mul(&UniPoly::from_integers(&[-3, 0, 1]));
    let roots = rational_roots(&mixed);
    let rendered: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
    println!("rational roots of (3x - 2)(x + 5)(x^2 - 3): {}", rendered.join(", "));

    // Resultants detect common roots without solving.
    let a = UniPoly::from_integers(&[1, 0, 0, 1]); // x^3 + 1
    let b = UniPoly::from_integers(&[-1, 0, 0, 1]); // x^3 - 1
    println!("res(x^3 + 1, x^3 - 1) = {}", sylvester_resultant(&a, &b));
    let c = UniPoly::from_integers(&[-1, 0, 1]); // x^2 - 1
    let d = UniPoly::from_integers(&[-1, 1]); // x - 1
    println!(
        "res(x^2 - 1, x - 1) = {} (gcd = {:?})",
        sylvester_resultant(&c, &d),
        gcd_univariate(&c, &d).coeffs()
    );
}
