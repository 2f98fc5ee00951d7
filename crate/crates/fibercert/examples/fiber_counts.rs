//! Exact fiber computation for planar maps: count real solutions of
//! `f = target`, isolate them in disjoint boxes, and detect infinite
//! complex fibers.
//!
//! Run with: cargo run --example fiber_counts

use num_bigint::BigInt;
use num_rational::BigRational;

use fibercert::fiber::{solve_fiber, FiberStatus};
use fibercert::parse::parse_poly;
use fibercert::poly::PolyMap;
use fibercert::realalg::Isolation;

fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn show(map: &PolyMap, target: [BigRational; 2]) {
    let fmt_iso = |iso: &Isolation| match &iso.exact_root {
        Some(r) => format!("= {r}"),
        None => format!("in [{}, {}]", iso.lo, iso.hi),
    };
    let report = solve_fiber(map, &target).expect("solver resolves these examples");
    println!("target ({}, {}):", target[0], target[1]);
    match &report.status {
        FiberStatus::Finite { count, points } => {
            println!("  {count} real solution(s), parity {:?}", report.parity);
            for (k, sol) in points.iter().enumerate() {
                println!("    {}: x {}, y {}", k + 1, fmt_iso(&sol.x), fmt_iso(&sol.y));
            }
        }
        FiberStatus::InfiniteOverC => println!("  infinite solution set over the complex numbers"),
        FiberStatus::Empty => println!("  empty"),
    }
}

fn main() {
    let cubic = PolyMap::new(vec![
        parse_poly("x^3 - x", 2).unwrap(),
        parse_poly("y", 2).unwrap(),
    ]);
    println!("map (x^3 - x, y):");
    show(&cubic, [rq(0, 1), rq(0, 1)]); // three preimages
    show(&cubic, [rq(6, 1), rq(0, 1)]); // one, found exactly at x = 2
    show(&cubic, [rq(-2, 9), rq(1, 3)]); // irrational preimages, still exact boxes

    // A shared factor after shifting: the complex fiber is a whole curve.
    let degenerate = PolyMap::new(vec![
        parse_poly("x*y", 2).unwrap(),
        parse_poly("y", 2).unwrap(),
    ]);
    println!("\nmap (x*y, y):");
    show(&degenerate, [rq(0, 1), rq(0, 1)]);

    // Both solutions irrational: interval Newton pairs the coordinates.
    let circleish = PolyMap::new(vec![
        parse_poly("x^2 - 2", 2).unwrap(),
        parse_poly("y - x", 2).unwrap(),
    ]);
    println!("\nmap (x^2 - 2, y - x):");
    show(&circleish, [rq(0, 1), rq(0, 1)]);
}
