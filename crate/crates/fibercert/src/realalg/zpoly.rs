//! Integer-polynomial internals behind the root machinery.
//!
//! Sturm chains, sign evaluations, and gcds all run on primitive integer
//! polynomials: pseudo-remainders with positive multipliers keep every
//! coefficient in `BigInt`, which avoids the per-operation gcd overhead of
//! rational arithmetic in the hot bisection loops.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly {
    pub coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    /// Scale a rational coefficient vector to a primitive integer polynomial
    /// by a positive rational factor (signs of coefficients are preserved).
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Self {
        let mut lcm = BigInt::one();
        for c in coeffs {
            if !c.is_zero() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let ints: Vec<BigInt> =
            coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        ZPoly::from_coeffs(ints).primitive()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Content (gcd of coefficients), always non-negative.
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the positive content; the zero polynomial stays zero.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|k| k / &c).collect() }
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        ZPoly::from_coeffs(out)
    }

    /// Exact quotient; panics if the division does not come out evenly.
    pub fn exact_div(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return ZPoly::zero();
        }
        let dd = d.degree().unwrap();
        let nd = self.degree().unwrap();
        assert!(nd >= dd, "inexact polynomial division (degree)");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(d.lc());
            assert!(r.is_zero(), "inexact polynomial division (coefficient)");
            for (i, c) in d.coeffs.iter().enumerate() {
                let prod = c * &q;
                rem[k + i] -= prod;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division (remainder)");
        ZPoly::from_coeffs(quot)
    }

    /// Sign of the value at a rational point, via the homogeneous integer
    /// evaluation `sum a_i num^i den^(d-i)` (the denominator is positive).
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let num = x.numer();
        let den = x.denom();
        let d = self.coeffs.len() - 1;
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        // den^(d-i) built from the top down while num^i grows from the bottom.
        let mut den_pows = Vec::with_capacity(d + 1);
        let mut dp = BigInt::one();
        for _ in 0..=d {
            den_pows.push(dp.clone());
            dp *= den;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &num_pow * &den_pows[d - i];
            }
            if i < d {
                num_pow *= num;
            }
        }
        sign_of(&acc)
    }

    pub fn sign_at_pos_inf(&self) -> i8 {
        if self.is_zero() {
            0
        } else {
            sign_of(self.lc())
        }
    }

    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sign_of(self.lc());
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Cauchy bound: every real root has absolute value strictly below it.
    pub fn root_bound(&self) -> BigRational {
        let d = self.degree().expect("root bound of zero polynomial");
        let lc = BigRational::from_integer(self.lc().abs());
        let mut max = BigRational::zero();
        for c in &self.coeffs[..d] {
            let v = BigRational::from_integer(c.abs()) / &lc;
            if v > max {
                max = v;
            }
        }
        max + BigRational::one()
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Remainder of `m * f` modulo `g` for some positive integer `m` (a
/// sign-safe pseudo-remainder): root structure and signs match `f mod g`.
pub(crate) fn pseudo_rem_pos(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let df = f.degree().expect("pseudo-remainder of zero");
    let dg = g.degree().expect("pseudo-division by zero");
    assert!(df >= dg);
    let delta = df - dg;
    let lc_g = g.lc().clone();
    let mut r = f.clone();
    let mut steps = 0usize;
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        // r <- lc(g) * r - lc(r) * x^(dr-dg) * g
        let lc_r = r.lc().clone();
        let mut next = vec![BigInt::zero(); r.coeffs.len()];
        for (i, c) in r.coeffs.iter().enumerate() {
            next[i] = c * &lc_g;
        }
        for (i, c) in g.coeffs.iter().enumerate() {
            next[i + dr - dg] -= c * &lc_r;
        }
        r = ZPoly::from_coeffs(next);
        steps += 1;
    }
    // r now equals lc(g)^steps * f mod g with steps <= delta + 1.
    // Make the overall multiplier positive.
    let mult_negative = lc_g.is_negative() && steps % 2 == 1;
    let _ = delta;
    if mult_negative {
        r.neg()
    } else {
        r
    }
}

/// Primitive-PRS gcd over the integers; result is primitive with positive
/// leading coefficient (zero if both inputs are zero).
pub(crate) fn gcd_zpoly(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut f = a.primitive();
    let mut g = b.primitive();
    if f.is_zero() {
        return normalize_sign(g);
    }
    if g.is_zero() {
        return normalize_sign(f);
    }
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            return normalize_sign(f.primitive());
        }
        if g.degree() == Some(0) {
            return ZPoly::from_coeffs(vec![BigInt::one()]);
        }
        let r = pseudo_rem_pos(&f, &g).primitive();
        f = g;
        g = r;
    }
}

fn normalize_sign(p: ZPoly) -> ZPoly {
    if !p.is_zero() && p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Squarefree part `p / gcd(p, p')`, primitive with positive leading sign.
pub(crate) fn squarefree_zpoly(p: &ZPoly) -> ZPoly {
    let prim = p.primitive();
    let d = prim.derivative();
    if d.is_zero() {
        // Degree zero: a nonzero constant has no roots; keep it as 1.
        return ZPoly::from_coeffs(vec![BigInt::one()]);
    }
    let g = gcd_zpoly(&prim, &d);
    if g.degree() == Some(0) {
        return normalize_sign(prim);
    }
    normalize_sign(prim.exact_div(&g).primitive())
}

/// An endpoint for real-root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealBound {
    NegInfinity,
    Value(BigRational),
    PosInfinity,
}

/// Sturm chain of a squarefree integer polynomial.
#[derive(Clone, Debug)]
pub(crate) struct SturmChain {
    seq: Vec<ZPoly>,
}

impl SturmChain {
    /// Chain for a squarefree polynomial (the caller guarantees this).
    pub fn new(sf: &ZPoly) -> Self {
        let mut seq = vec![sf.clone()];
        let d = sf.derivative();
        if !d.is_zero() {
            seq.push(d.primitive());
            loop {
                let k = seq.len();
                let prev = &seq[k - 2];
                let cur = &seq[k - 1];
                if cur.degree().is_none() || prev.degree() < cur.degree() {
                    break;
                }
                let r = pseudo_rem_pos(prev, cur);
                if r.is_zero() {
                    break;
                }
                seq.push(r.neg().primitive());
                if seq.last().unwrap().degree() == Some(0) {
                    break;
                }
            }
        }
        SturmChain { seq }
    }

    fn signs_at(&self, at: &RealBound) -> Vec<i8> {
        self.seq
            .iter()
            .map(|p| match at {
                RealBound::NegInfinity => p.sign_at_neg_inf(),
                RealBound::PosInfinity => p.sign_at_pos_inf(),
                RealBound::Value(x) => p.sign_at(x),
            })
            .collect()
    }

    /// Sign variations at a point, zeros skipped.
    pub fn variations(&self, at: &RealBound) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for s in self.signs_at(at) {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &RealBound, hi: &RealBound) -> usize {
        let a = self.variations(lo);
        let b = self.variations(hi);
        a.saturating_sub(b)
    }
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the open interval `(a, b)`.
pub fn simplest_rational_between(a: &BigRational, b: &BigRational) -> BigRational {
    assert!(a < b, "empty interval");
    let zero = BigRational::zero();
    if *a < zero && zero < *b {
        return zero;
    }
    if *b <= zero {
        return -simplest_nonneg(&-b.clone(), &-a.clone());
    }
    simplest_nonneg(a, b)
}

fn simplest_nonneg(a: &BigRational, b: &BigRational) -> BigRational {
    debug_assert!(!a.is_negative() && a < b);
    let m = a.floor();
    let next_int = &m + BigRational::one();
    if next_int < *b {
        return next_int;
    }
    let frac = a - &m;
    let inv_width = (b - &m).recip();
    if frac.is_zero() {
        // t ranges over (1/(b-m), infinity); the simplest is an integer.
        let t = inv_width.floor() + BigRational::one();
        return m + t.recip();
    }
    let t = simplest_nonneg(&inv_width, &frac.recip());
    m + t.recip()
}
