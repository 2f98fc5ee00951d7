//! The necessary-condition checks: odd-degree matrix columns and component
//! self-product systems must have nonzero real solutions whenever the
//! relevant determinant never vanishes. An exact only-zero outcome turns
//! into a proof that the determinant vanishes somewhere.
//!
//! Run with: cargo run --example necessary_conditions

use fibercert::certify::{check_thm17, check_thm18};
use fibercert::parse::parse_poly;
use fibercert::poly::{MultiPoly, PolyMap};

fn p2(text: &str) -> MultiPoly {
    parse_poly(text, 2).unwrap()
}

fn main() {
    // Column check on an explicit matrix: column 1 = (x^3, x + y) has only
    // the zero common solution, so det = x^3 must vanish somewhere (indeed
    // at x = 0, which the grid finds).
    let g = vec![vec![p2("x^3"), p2("0")], vec![p2("x + y"), p2("1")]];
    println!("matrix column check, column 1 of [[x^3, 0], [x + y, 1]]:");
    print!("{}", check_thm17(&g, 0));

    println!("\nmatrix column check, column 2 (degree 0 entries are not odd):");
    print!("{}", check_thm17(&g, 1));

    // Component check: the positive-definite factor in (x^2 + y^2, y) kills
    // all nonzero solutions of the first self-product system, which proves
    // det J = 2x vanishes somewhere on real space.
    let f = PolyMap::new(vec![p2("x^2 + y^2"), p2("y")]);
    println!("\ncomponent check on (x^2 + y^2, y):");
    print!("{}", check_thm18(&f));

    // A map with everywhere-positive Jacobian determinant: the necessary
    // condition must hold, and it does, with explicit witnesses.
    let healthy = PolyMap::new(vec![p2("x + y^3"), p2("y - x^3")]);
    println!("\ncomponent check on (x + y^3, y - x^3):");
    print!("{}", check_thm18(&healthy));
}
