//! Leading homogeneous forms and the derived systems: the combined system,
//! its induced leading-form system, and its homogenization with one extra
//! variable (with the two consistency substitutions demonstrated).
//!
//! Run with: cargo run --example leading_forms

use num_bigint::BigInt;
use num_rational::BigRational;

use fibercert::parse::{parse_poly, render, ProblemSpec};
use fibercert::poly::PolyMap;
use fibercert::systems::{
    build_combined, dehomogenize_last, homogenize, induced_homogeneous,
};

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn main() {
    let p1 = parse_poly("x^3 - x", 2).unwrap();
    let p2 = parse_poly("y", 2).unwrap();
    println!("p1 = {}, leading form {}", render(&p1), render(&p1.leading_form()));
    println!("p2 = {}, leading form {}", render(&p2), render(&p2.leading_form()));

    let mut spec = ProblemSpec::from_map(PolyMap::new(vec![p1, p2]));
    spec.target = vec![rq(6), rq(0)];

    // Combined equations with the target shift folded in.
    let combined = build_combined(&spec, true);
    println!("\ncombined system shifted by target (6, 0):");
    for (eq, d) in combined.equations.iter().zip(&combined.degrees) {
        println!("  {} (degree {d})", render(eq));
    }

    let induced = induced_homogeneous(&combined);
    println!("\ninduced leading-form system:");
    for form in &induced.forms {
        println!("  {}", render(form));
    }

    let homog = homogenize(&combined, true).unwrap();
    println!("\nhomogenized system in {} variables:", homog.nvars);
    for form in &homog.forms {
        println!("  {}", render(form));
    }

    // Substituting 1 for the extra variable recovers the equations,
    // substituting 0 recovers the leading forms.
    println!("\nconsistency:");
    for (k, form) in homog.forms.iter().enumerate() {
        let back = dehomogenize_last(form, &rq(1));
        let top = dehomogenize_last(form, &rq(0));
        println!(
            "  [{}] at 1: {} | at 0: {}",
            k + 1,
            render(&back),
            render(&top)
        );
        assert_eq!(back, combined.equations[k]);
        assert_eq!(top, induced.forms[k]);
    }
    println!("both substitutions match the originals exactly");
}
