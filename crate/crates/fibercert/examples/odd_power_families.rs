//! Odd-power planar families `(a*x^(2k+1) + b*y^(2k+1) + ..., c*x^(2j+1) +
//! d*y^(2j+1) + ...)`: when `sgn(ad) = -sgn(bc)`, the leading system has
//! only the zero real solution and the map is certified onto; sign-aligned
//! coefficients can leave a whole common zero line instead.
//!
//! Run with: cargo run --example odd_power_families

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fibercert::certify::certify_cor14;
use fibercert::corpus::{
    sample_aligned_sign_family, sample_opposite_sign_family, with_lower_order_noise,
};
use fibercert::fiber::solve_fiber;
use fibercert::parse::render;
use fibercert::realalg::real_only_zero;
use fibercert::systems::HomogSystem;

fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    let mut rng = StdRng::seed_from_u64(42);

    println!("opposite-sign families (sgn(ad) = -sgn(bc)): always certified\n");
    for _ in 0..3 {
        let family = sample_opposite_sign_family(&mut rng, 2);
        let map = with_lower_order_noise(&family.leading_map(), &mut rng);
        let cert = certify_cor14(&map);
        println!("  p1 = {}", render(map.component(0)));
        println!("  p2 = {}", render(map.component(1)));
        println!("  {}", cert.verdict);
        // Surjectivity in action: a random target always has a preimage.
        let target = [
            rq(rng.gen_range(-50..=50), rng.gen_range(1..=8)),
            rq(rng.gen_range(-50..=50), rng.gen_range(1..=8)),
        ];
        let report = solve_fiber(&map, &target).unwrap();
        println!(
            "  fiber over ({}, {}): {:?} real point(s)\n",
            target[0],
            target[1],
            report.count()
        );
    }

    println!("sign-aligned families (sgn(ad) = sgn(bc)) built around a common zero line:\n");
    for _ in 0..3 {
        let family = sample_aligned_sign_family(&mut rng, 2);
        let map = family.leading_map();
        let sys = HomogSystem::from_forms(map.leading_forms());
        let verdict = real_only_zero(&sys);
        let cert = certify_cor14(&map);
        println!("  p1 = {}", render(map.component(0)));
        println!("  p2 = {}", render(map.component(1)));
        println!("  leading-system test: {verdict}");
        println!("  {}\n", cert.verdict);
    }
}
