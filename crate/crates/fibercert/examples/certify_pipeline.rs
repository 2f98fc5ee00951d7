//! Run the whole certification pipeline on a few maps and print every
//! certificate: which rules apply, which gates fail, and what evidence each
//! verdict rests on.
//!
//! Run with: cargo run --example certify_pipeline

use fibercert::certify::run_pipeline;
use fibercert::parse::{parse_poly, ProblemSpec};
use fibercert::poly::PolyMap;

fn analyze(label: &str, components: &[&str]) {
    let nvars = components.len();
    let map = PolyMap::new(
        components.iter().map(|t| parse_poly(t, nvars).unwrap()).collect(),
    );
    let spec = ProblemSpec::from_map(map);
    println!("==== {label} ====");
    for cert in run_pipeline(&spec, 0) {
        println!("  {}", cert.verdict);
    }
    println!();
}

fn main() {
    // Odd degrees, leading forms vanish only at the origin: certified by
    // the cheapest rule already.
    analyze("(x^3 - x, y)", &["x^3 - x", "y"]);

    // Mixed degrees; the top-pair rule picks one dominant product per row.
    analyze("(x^3 + 2*y^3 + x, 3*x - y + 1)", &["x^3 + 2*y^3 + x", "3*x - y + 1"]);

    // An even degree blocks every odd-degree gate.
    analyze("(x^2, y)", &["x^2", "y"]);

    // The hyperbola component: x*y has the whole axes as leading zeros, so
    // no rule certifies, which is correct because (x*y, y) misses targets
    // with first coordinate nonzero and second zero.
    analyze("(x*y, y)", &["x*y", "y"]);

    // Even exponent vector: the gradient rule applies where the others do
    // not need to.
    let map = PolyMap::new(vec![
        parse_poly("x + y^3", 2).unwrap(),
        parse_poly("y - x^3", 2).unwrap(),
    ]);
    let cert = fibercert::certify::certify_thm19(&map, &[2, 2], false);
    println!("==== thm19 on (x + y^3, y - x^3) with alpha = (2, 2) ====");
    print!("{cert}");
}
