//! Cross-module invariant suites: soundness sampling for certificates,
//! consistency between the system builders, scaling invariance, and the
//! fiber solver's box guarantees.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fibercert::certify::{certify_cor14, check_thm18, Verdict};
use fibercert::corpus::{random_poly, sample_opposite_sign_family, with_lower_order_noise};
use fibercert::fiber::{eliminate, solve_fiber, FiberStatus};
use fibercert::parse::ProblemSpec;
use fibercert::poly::{Degree, MultiPoly, PolyMap};
use fibercert::realalg::{
    complex_only_zero, real_only_zero, RootIsolator, ZeroStatus,
};
use fibercert::systems::{
    build_combined, build_cor13_system, induced_homogeneous, HomogSystem,
};

fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Surjective certificates are backed by reality: sampled targets always
/// have at least one real preimage.
#[test]
fn surjective_certificates_have_nonempty_sampled_fibers() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut maps = 0usize;
    while maps < 5 {
        let family = sample_opposite_sign_family(&mut rng, 2);
        let map = with_lower_order_noise(&family.leading_map(), &mut rng);
        let cert = certify_cor14(&map);
        assert!(cert.verdict.is_surjective());
        maps += 1;
        for _ in 0..20 {
            let target = [
                rq(rng.gen_range(-500..=500), rng.gen_range(1..=32)),
                rq(rng.gen_range(-500..=500), rng.gen_range(1..=32)),
            ];
            let report = solve_fiber(&map, &target).expect("solver must resolve");
            assert!(
                report.count().is_none_or(|n| n >= 1),
                "certified surjective map has an empty fiber at {target:?}"
            );
        }
    }
}

/// Only-zero over the complex numbers implies only-zero over the reals,
/// checked on random binary-form pairs.
#[test]
fn complex_only_zero_implies_real_only_zero() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut checked = 0usize;
    while checked < 100 {
        let a = random_poly(&mut rng, 2, 5, 4).leading_form();
        let b = random_poly(&mut rng, 2, 5, 4).leading_form();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let sys = HomogSystem {
            nvars: 2,
            degrees: vec![a.total_degree(), b.total_degree()],
            forms: vec![a, b],
        };
        let complex = complex_only_zero(&sys);
        if complex.is_only_zero() {
            let real = real_only_zero(&sys);
            assert!(
                real.is_only_zero(),
                "complex-only-zero system must be real-only-zero: {:?}",
                sys.forms
            );
        }
        checked += 1;
    }
}

/// With the identity matrix and unit exponents the top-pair system is
/// exactly the induced leading-form system, whenever it applies.
#[test]
fn top_pair_system_matches_induced_for_identity_data() {
    let mut rng = StdRng::seed_from_u64(13);
    let mut checked = 0usize;
    while checked < 100 {
        let nvars = rng.gen_range(1..=3usize);
        let components: Vec<MultiPoly> =
            (0..nvars).map(|_| random_poly(&mut rng, nvars, 5, 4)).collect();
        if components.iter().any(|p| !p.total_degree().is_odd()) {
            continue;
        }
        let spec = ProblemSpec::from_map(PolyMap::new(components));
        let Ok((top_pair, _)) = build_cor13_system(&spec) else {
            continue;
        };
        let induced = induced_homogeneous(&build_combined(&spec, false));
        assert_eq!(top_pair.forms, induced.forms);
        checked += 1;
    }
}

/// Scaling components by positive rationals changes no verdict of the
/// odd-degree leading-form rule.
#[test]
fn cor14_verdicts_are_scale_invariant() {
    let mut rng = StdRng::seed_from_u64(14);
    let mut checked = 0usize;
    while checked < 30 {
        let nvars = 2;
        let components: Vec<MultiPoly> =
            (0..nvars).map(|_| random_poly(&mut rng, nvars, 5, 4)).collect();
        if components.iter().any(MultiPoly::is_zero) {
            continue;
        }
        let map = PolyMap::new(components.clone());
        let scaled = PolyMap::new(
            components
                .iter()
                .map(|p| p.scale(&rq(rng.gen_range(1..=9), rng.gen_range(1..=9))))
                .collect(),
        );
        let lhs = certify_cor14(&map);
        let rhs = certify_cor14(&scaled);
        assert_eq!(
            std::mem::discriminant(&lhs.verdict),
            std::mem::discriminant(&rhs.verdict),
            "scaling changed the verdict: {} vs {}",
            lhs.verdict,
            rhs.verdict
        );
        checked += 1;
    }
}

/// Component checks on nonsingular linear maps: linear components always
/// give self-product systems vanishing on a full hyperplane, so the
/// necessary condition is confirmed with a witness.
#[test]
fn thm18_on_random_nonsingular_linear_maps() {
    let mut rng = StdRng::seed_from_u64(15);
    let mut checked = 0usize;
    while checked < 50 {
        let (a, b, c, d) = (
            rng.gen_range(-9..=9i64),
            rng.gen_range(-9..=9i64),
            rng.gen_range(-9..=9i64),
            rng.gen_range(-9..=9i64),
        );
        if a * d - b * c == 0 {
            continue;
        }
        let p1 = &MultiPoly::monomial(2, vec![1, 0], rq(a, 1))
            + &MultiPoly::monomial(2, vec![0, 1], rq(b, 1));
        let p2 = &MultiPoly::monomial(2, vec![1, 0], rq(c, 1))
            + &MultiPoly::monomial(2, vec![0, 1], rq(d, 1));
        let map = PolyMap::new(vec![p1, p2]);
        let cert = check_thm18(&map);
        assert!(
            matches!(cert.verdict, Verdict::NecessaryConditionHolds { .. }),
            "nonsingular linear map [[{a},{b}],[{c},{d}]] gave {}",
            cert.verdict
        );
        checked += 1;
    }
}

/// Every reported solution box stays consistent under ten further
/// bisections of each coordinate, and boxes are pairwise disjoint.
#[test]
fn fiber_boxes_survive_further_bisection_and_stay_disjoint() {
    let mut rng = StdRng::seed_from_u64(16);
    let mut checked = 0usize;
    while checked < 10 {
        let family = sample_opposite_sign_family(&mut rng, 2);
        let map = with_lower_order_noise(&family.leading_map(), &mut rng);
        let target = [
            rq(rng.gen_range(-200..=200), rng.gen_range(1..=16)),
            rq(rng.gen_range(-200..=200), rng.gen_range(1..=16)),
        ];
        let report = solve_fiber(&map, &target).expect("solver must resolve");
        let FiberStatus::Finite { points, .. } = &report.status else {
            continue;
        };
        if points.is_empty() {
            continue;
        }
        let shifted_p = map.component(0) - &MultiPoly::constant(2, target[0].clone());
        let shifted_q = map.component(1) - &MultiPoly::constant(2, target[1].clone());
        let e1 = eliminate(&shifted_p, &shifted_q, 1);
        let e2 = eliminate(&shifted_p, &shifted_q, 0);
        let ix = RootIsolator::new(&e1);
        let iy = RootIsolator::new(&e2);
        for sol in points {
            let mut x = sol.x.clone();
            let mut y = sol.y.clone();
            for _ in 0..10 {
                x = ix.refine(&x);
                y = iy.refine(&y);
            }
            // Still inside the original box, still isolating one root each.
            assert!(sol.x.lo <= x.lo && x.hi <= sol.x.hi);
            assert!(sol.y.lo <= y.lo && y.hi <= sol.y.hi);
            if x.exact_root.is_none() {
                assert_ne!(ix.sign_at(&x.lo), 0);
                assert_ne!(ix.sign_at(&x.hi), 0);
                assert_ne!(ix.sign_at(&x.lo), ix.sign_at(&x.hi), "sign change must persist");
            }
            if y.exact_root.is_none() {
                assert_ne!(iy.sign_at(&y.lo), iy.sign_at(&y.hi), "sign change must persist");
            }
        }
        // Pairwise disjoint as closed product boxes.
        for (i, a) in points.iter().enumerate() {
            for b in points.iter().skip(i + 1) {
                let x_overlap = a.x.lo <= b.x.hi && b.x.lo <= a.x.hi;
                let y_overlap = a.y.lo <= b.y.hi && b.y.lo <= a.y.hi;
                assert!(!(x_overlap && y_overlap), "boxes must be disjoint");
            }
        }
        checked += 1;
    }
}

/// The fiber over `f(point)` contains a box around `point`.
#[test]
fn fiber_through_sampled_points_recovers_them() {
    let mut rng = StdRng::seed_from_u64(17);
    let mut checked = 0usize;
    while checked < 50 {
        let family = sample_opposite_sign_family(&mut rng, 1);
        let map = with_lower_order_noise(&family.leading_map(), &mut rng);
        let point = [
            rq(rng.gen_range(-8..=8), rng.gen_range(1..=4)),
            rq(rng.gen_range(-8..=8), rng.gen_range(1..=4)),
        ];
        let target = map.evaluate(&point);
        match solve_fiber(&map, &target) {
            Ok(report) => match &report.status {
                FiberStatus::Finite { points, .. } => {
                    assert!(
                        points
                            .iter()
                            .any(|sol| sol.x.contains(&point[0]) && sol.y.contains(&point[1])),
                        "no box around {point:?} in fiber over {target:?}"
                    );
                    checked += 1;
                }
                FiberStatus::InfiniteOverC => {
                    // A degenerate shifted pair; possible for special
                    // sampled points. The point is a solution either way.
                    checked += 1;
                }
                FiberStatus::Empty => panic!("fiber over f({point:?}) cannot be empty"),
            },
            Err(e) => {
                // A sampled point may sit exactly on the critical curve, in
                // which case the solver reports the cap diagnostic rather
                // than guessing; that outcome is allowed here.
                let detj = map.jacobian_determinant();
                assert!(
                    detj.evaluate(&point).is_zero(),
                    "solver diagnostic {e} at a non-critical point {point:?}"
                );
            }
        }
    }
}

/// Positive rescaling of forms never changes only-zero verdicts.
#[test]
fn zero_test_verdicts_are_scale_invariant() {
    let mut rng = StdRng::seed_from_u64(18);
    let mut checked = 0usize;
    while checked < 30 {
        let a = random_poly(&mut rng, 2, 4, 3).leading_form();
        let b = random_poly(&mut rng, 2, 4, 3).leading_form();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let sys = HomogSystem {
            nvars: 2,
            degrees: vec![a.total_degree(), b.total_degree()],
            forms: vec![a, b],
        };
        let scale = rq(rng.gen_range(1..=12), rng.gen_range(1..=5));
        let scaled = HomogSystem {
            nvars: 2,
            degrees: sys.degrees.clone(),
            forms: sys.forms.iter().map(|f| f.scale(&scale)).collect(),
        };
        let (lhs, rhs) = (real_only_zero(&sys), real_only_zero(&scaled));
        assert_eq!(lhs.status, rhs.status);
        let (lhs, rhs) = (complex_only_zero(&sys), complex_only_zero(&scaled));
        assert_eq!(lhs.status, rhs.status);
        checked += 1;
    }
}

/// Nonzero witnesses emitted anywhere must evaluate every form to zero and
/// differ from the origin.
#[test]
fn emitted_witnesses_always_verify() {
    let mut rng = StdRng::seed_from_u64(19);
    let mut seen_witness = 0usize;
    for _ in 0..200 {
        let a = random_poly(&mut rng, 2, 4, 3).leading_form();
        let b = random_poly(&mut rng, 2, 4, 3).leading_form();
        let sys = HomogSystem {
            nvars: 2,
            degrees: vec![a.total_degree(), b.total_degree()],
            forms: vec![a, b],
        };
        for verdict in [real_only_zero(&sys), complex_only_zero(&sys)] {
            if let ZeroStatus::NonzeroWitness { point } = &verdict.status {
                assert!(point.iter().any(|c| !c.is_zero()));
                assert!(sys.forms.iter().all(|f| f.evaluate(point).is_zero()));
                seen_witness += 1;
            }
        }
    }
    assert!(seen_witness > 20, "the sweep should exercise the witness path");
}

/// Degenerate inputs: the zero polynomial keeps its sentinel degree through
/// the builders, and leading forms remember it.
#[test]
fn zero_polynomial_degree_sentinel_is_stable() {
    let zero = MultiPoly::zero(2);
    assert_eq!(zero.total_degree(), Degree::NegInfinity);
    assert!(zero.leading_form().is_zero());
    assert_eq!(
        Degree::NegInfinity.plus(Degree::Finite(7)).times(3),
        Degree::NegInfinity
    );
    assert!(BigRational::one().is_one());
}
