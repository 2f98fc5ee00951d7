//! Built-in named maps and seeded random families.
//!
//! The centerpiece is the Pinchuk map, a degree-(10, 25) planar polynomial
//! map defined by a short chain of substitutions. It is the standing stress
//! case here: its component self-product systems reduce to monomial pairs
//! whose common zeros are the coordinate axes. The module also provides the
//! odd-power diagonal families and the random samplers used by the
//! acceptance and property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::parse::render_problem_file;
use crate::poly::{Degree, MultiPoly, PolyMap};

/// The Pinchuk map `(p, q)` with all chain intermediates.
///
/// Defining identities, all exact:
/// `t = x*y - 1`, `s = 1 + x*t`, `h = t*s`, `f = s^2*(t^2 + y)`,
/// `p = h + f`, `a = h + (1/45)*(13 + 15*h)^3`,
/// `b = 4*h^3 + 6*h^2 + (1/2)*h^2 + (1/2700)*(13 + 15*h)^4`,
/// `u = a*f + b`, `q = -t^2 - 6*t*h*(h + 1) - u`.
#[derive(Clone, Debug)]
pub struct PinchukMap {
    pub t: MultiPoly,
    pub s: MultiPoly,
    pub h: MultiPoly,
    pub f: MultiPoly,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub u: MultiPoly,
    pub p: MultiPoly,
    pub q: MultiPoly,
}

impl PinchukMap {
    pub fn map(&self) -> PolyMap {
        PolyMap::new(vec![self.p.clone(), self.q.clone()])
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Build the Pinchuk map by exact composition of its defining chain.
///
/// The degree table (5, 10, 10, 25 for `h, f, p, q`) and the leading forms
/// are asserted before returning; a failure would indicate an arithmetic
/// bug, not bad input.
pub fn build_pinchuk() -> PinchukMap {
    let x = MultiPoly::variable(2, 0);
    let y = MultiPoly::variable(2, 1);
    let one = MultiPoly::one(2);

    let t = &(&x * &y) - &one;
    let s = &one + &(&x * &t);
    let h = &t * &s;
    let f = &s.power(2) * &(&t.power(2) + &y);
    let p = &h + &f;

    let thirteen_plus_15h = &MultiPoly::constant(2, rat(13, 1)) + &h.scale(&rat(15, 1));
    let a = &h + &thirteen_plus_15h.power(3).scale(&rat(1, 45));
    // The second h^2 term is carried with coefficient 1/2 exactly as the
    // chain defines it; every asserted value below is insensitive to it.
    let b = &(&h.power(3).scale(&rat(4, 1)) + &h.power(2).scale(&rat(13, 2)))
        + &thirteen_plus_15h.power(4).scale(&rat(1, 2700));
    let u = &(&a * &f) + &b;
    let q = &(&(-&t.power(2)) - &(&(&t * &h).scale(&rat(6, 1)) * &(&h + &one))) - &u;

    // Degree table.
    assert_eq!(h.total_degree(), Degree::Finite(5));
    assert_eq!(f.total_degree(), Degree::Finite(10));
    assert_eq!(p.total_degree(), Degree::Finite(10));
    assert_eq!(q.total_degree(), Degree::Finite(25));

    // Leading forms: p tops out at x^6*y^4 and q at a multiple of x^15*y^10.
    assert_eq!(p.leading_form(), MultiPoly::monomial(2, vec![6, 4], rat(1, 1)));
    let q_lead = q.leading_form();
    assert_eq!(q_lead.num_terms(), 1);
    let q_coeff = q_lead.coeff(&[15, 10]);
    assert_eq!(q_coeff.abs(), rat(75, 1));

    PinchukMap { t, s, h, f, a, b, u, p, q }
}

/// The Pinchuk map rendered in the documented problem-file format.
pub fn pinchuk_problem_file() -> String {
    let pinchuk = build_pinchuk();
    render_problem_file(
        &pinchuk.map(),
        "pinchuk: built from t = x*y - 1, s = 1 + x*t, h = t*s, f = s^2*(t^2 + y)",
    )
}

/// Diagonal odd-power map: component `j` is `sum_i a[i][j] * x_i^(2*b[j]+1)`
/// (the pure leading part; callers may add lower-degree noise).
pub fn build_remark16_odd_diagonal(coeffs: &[Vec<BigRational>], b: &[u32]) -> PolyMap {
    let n = b.len();
    assert_eq!(coeffs.len(), n, "coefficient matrix must be n x n");
    assert!(coeffs.iter().all(|row| row.len() == n), "coefficient matrix must be n x n");
    let components = (0..n)
        .map(|j| {
            let mut p = MultiPoly::zero(n);
            for (i, row) in coeffs.iter().enumerate() {
                if row[j].is_zero() {
                    continue;
                }
                let mut exps = vec![0u32; n];
                exps[i] = 2 * b[j] + 1;
                p = &p + &MultiPoly::monomial(n, exps, row[j].clone());
            }
            p
        })
        .collect();
    PolyMap::new(components)
}

/// Planar odd-power family `(a*x^(2k+1) + b*y^(2k+1), c*x^(2j+1) + d*y^(2j+1))`.
#[derive(Clone, Debug)]
pub struct OddFamily2d {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub k: u32,
    pub j: u32,
}

impl OddFamily2d {
    /// The pure leading-part map.
    pub fn leading_map(&self) -> PolyMap {
        let pk = 2 * self.k + 1;
        let pj = 2 * self.j + 1;
        let p1 = &MultiPoly::monomial(2, vec![pk, 0], self.a.clone())
            + &MultiPoly::monomial(2, vec![0, pk], self.b.clone());
        let p2 = &MultiPoly::monomial(2, vec![pj, 0], self.c.clone())
            + &MultiPoly::monomial(2, vec![0, pj], self.d.clone());
        PolyMap::new(vec![p1, p2])
    }

    /// `sgn(a*d) == -sgn(b*c)`: the condition under which the leading
    /// system has only the zero real solution.
    pub fn opposite_sign_condition(&self) -> bool {
        (&self.a * &self.d).is_positive() == (&self.b * &self.c).is_negative()
    }
}

fn nonzero_rat(rng: &mut impl Rng) -> BigRational {
    loop {
        let v = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if !v.is_zero() {
            return v;
        }
    }
}

/// Sample a family with `sgn(ad) = -sgn(bc)` and odd powers up to
/// `2*max_half_power + 1`.
pub fn sample_opposite_sign_family(rng: &mut impl Rng, max_half_power: u32) -> OddFamily2d {
    loop {
        let family = OddFamily2d {
            a: nonzero_rat(rng),
            b: nonzero_rat(rng),
            c: nonzero_rat(rng),
            d: nonzero_rat(rng),
            k: rng.gen_range(0..=max_half_power),
            j: rng.gen_range(0..=max_half_power),
        };
        if family.opposite_sign_condition() {
            return family;
        }
    }
}

/// Sample a family with `sgn(ad) = sgn(bc)` that genuinely has a nonzero
/// real solution: plant a rational common zero line `(1, t)` by taking
/// `a = -b*t^(2k+1)` and `c = -d*t^(2j+1)`. The sign alignment follows from
/// the construction.
pub fn sample_aligned_sign_family(rng: &mut impl Rng, max_half_power: u32) -> OddFamily2d {
    loop {
        let t = nonzero_rat(rng);
        let b = nonzero_rat(rng);
        let d = nonzero_rat(rng);
        let k = rng.gen_range(0..=max_half_power);
        let j = rng.gen_range(0..=max_half_power);
        let mut tk = BigRational::one();
        for _ in 0..(2 * k + 1) {
            tk *= &t;
        }
        let mut tj = BigRational::one();
        for _ in 0..(2 * j + 1) {
            tj *= &t;
        }
        let family = OddFamily2d { a: -(&b * &tk), b, c: -(&d * &tj), d, k, j };
        if !family.opposite_sign_condition() {
            debug_assert!({
                let map = family.leading_map();
                map.components().iter().all(|p| {
                    p.evaluate(&[BigRational::one(), t.clone()]).is_zero()
                })
            });
            return family;
        }
    }
}

/// Add random terms of total degree strictly below each component's leading
/// degree, with small integer coefficients.
pub fn with_lower_order_noise(map: &PolyMap, rng: &mut impl Rng) -> PolyMap {
    let n = map.nvars();
    let components = map
        .components()
        .iter()
        .map(|p| {
            let Some(top) = p.total_degree().finite() else {
                return p.clone();
            };
            if top == 0 {
                return p.clone();
            }
            let mut out = p.clone();
            let extra = rng.gen_range(0..=4);
            for _ in 0..extra {
                let deg = rng.gen_range(0..top);
                let mut exps = vec![0u32; n];
                let mut left = deg;
                for e in exps.iter_mut().take(n - 1) {
                    *e = rng.gen_range(0..=left);
                    left -= *e;
                }
                exps[n - 1] = left;
                let c = rat(rng.gen_range(-5..=5), 1);
                out = &out + &MultiPoly::monomial(n, exps, c);
            }
            // Noise must not disturb the leading form.
            debug_assert_eq!(out.leading_form(), p.leading_form());
            out
        })
        .collect();
    PolyMap::new(components)
}

/// Random sparse polynomial with bounded total degree (may be zero).
pub fn random_poly(
    rng: &mut impl Rng,
    nvars: usize,
    max_total_deg: u32,
    max_terms: usize,
) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    let nterms = rng.gen_range(0..=max_terms);
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_total_deg);
        let mut exps = vec![0u32; nvars];
        let mut left = deg;
        for e in exps.iter_mut().take(nvars - 1) {
            *e = rng.gen_range(0..=left);
            left -= *e;
        }
        exps[nvars - 1] = left;
        let c = rat(rng.gen_range(-10..=10), rng.gen_range(1..=4));
        p = &p + &MultiPoly::monomial(nvars, exps, c);
    }
    p
}
