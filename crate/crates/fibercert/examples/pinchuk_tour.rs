//! Tour of the built-in Pinchuk map: the defining chain, its degree table,
//! leading forms, and the component self-product systems whose common zeros
//! are the coordinate axes.
//!
//! Run with: cargo run --example pinchuk_tour

use fibercert::certify::check_thm18;
use fibercert::corpus::build_pinchuk;
use fibercert::parse::render;
use fibercert::systems::build_thm18_system;

fn main() {
    let pk = build_pinchuk();

    println!("chain intermediates:");
    println!("  t = {}", render(&pk.t));
    println!("  s = {}", render(&pk.s));
    println!("  h = {}  (degree {})", render(&pk.h), pk.h.total_degree());
    println!("  f has degree {}, {} terms", pk.f.total_degree(), pk.f.num_terms());
    println!("  p has degree {}, {} terms", pk.p.total_degree(), pk.p.num_terms());
    println!("  q has degree {}, {} terms", pk.q.total_degree(), pk.q.num_terms());

    println!("\nleading forms:");
    println!("  leading(p) = {}", render(&pk.p.leading_form()));
    println!("  leading(q) = {}", render(&pk.q.leading_form()));
    println!("  leading(dp/dx) = {}", render(&pk.p.partial_derivative(0).leading_form()));
    println!("  leading(dp/dy) = {}", render(&pk.p.partial_derivative(1).leading_form()));

    let map = pk.map();
    println!("\nself-product systems (leading form times gradient leading forms):");
    for j in 0..2 {
        let sys = build_thm18_system(&map, j).unwrap();
        let reduced: Vec<String> =
            sys.positive_scalar_normal_forms().iter().map(render).collect();
        println!("  component {}: reduces to {{ {} }}", j + 1, reduced.join(", "));
    }

    println!("\nnecessary-condition check over both components:");
    let cert = check_thm18(&map);
    print!("{cert}");
    println!("\nBoth monomial systems vanish on the union of the axes, so the");
    println!("necessary condition holds with an axis witness.");
}
