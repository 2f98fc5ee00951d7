//! Dense univariate polynomials over the rationals, with Sturm-based real
//! root counting and isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::zpoly::{
    gcd_zpoly, simplest_rational_between, squarefree_zpoly, RealBound, SturmChain, ZPoly,
};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// Invariant: the leading coefficient is nonzero unless the polynomial is
/// zero (empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
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

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|k| k * c).collect() }
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        if self.degree().is_none_or(|n| n < dd) {
            return (UniPoly::zero(), self.clone());
        }
        let n = self.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); n - dd + 1];
        let lc = d.leading_coefficient();
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                let prod = c * &q;
                rem[k + i] -= prod;
            }
            quot[k] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    pub(crate) fn to_zpoly(&self) -> ZPoly {
        ZPoly::from_rational_coeffs(&self.coeffs)
    }

    pub(crate) fn from_zpoly(z: &ZPoly) -> UniPoly {
        UniPoly::from_coeffs(
            z.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        )
    }
}

/// Monic exact gcd; `gcd(p, 0)` is monic `p`. Panics when both are zero.
pub fn gcd_univariate(p: &UniPoly, q: &UniPoly) -> UniPoly {
    assert!(!(p.is_zero() && q.is_zero()), "gcd of two zero polynomials");
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    UniPoly::from_zpoly(&gcd_zpoly(&p.to_zpoly(), &q.to_zpoly())).monic()
}

/// `p` divided by `gcd(p, p')`: same distinct roots, all simple. Monic.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    assert!(!p.is_zero(), "squarefree part of zero polynomial");
    UniPoly::from_zpoly(&squarefree_zpoly(&p.to_zpoly())).monic()
}

/// Exact number of distinct real roots of `p` in the half-open interval
/// `(lo, hi]`. The polynomial is reduced to its squarefree part first, so
/// multiple roots count once.
pub fn sturm_count(p: &UniPoly, lo: &RealBound, hi: &RealBound) -> usize {
    RootIsolator::new(p).count(lo, hi)
}

/// An interval certified to contain exactly one distinct real root, or an
/// exactly known rational root (then `lo == hi == root`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isolation {
    #[serde(with = "crate::serial::rat_str")]
    pub lo: BigRational,
    #[serde(with = "crate::serial::rat_str")]
    pub hi: BigRational,
    #[serde(with = "crate::serial::opt_rat_str")]
    pub exact_root: Option<BigRational>,
}

impl Isolation {
    pub fn exact(root: BigRational) -> Self {
        Isolation { lo: root.clone(), hi: root.clone(), exact_root: Some(root) }
    }

    pub fn interval(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi);
        Isolation { lo, hi, exact_root: None }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// Reusable context for isolating and refining the real roots of one
/// polynomial: its squarefree part plus the associated Sturm chain.
pub struct RootIsolator {
    sf: ZPoly,
    chain: SturmChain,
}

impl RootIsolator {
    /// Panics on the zero polynomial.
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "zero polynomial has no root structure");
        let sf = squarefree_zpoly(&p.to_zpoly());
        let chain = SturmChain::new(&sf);
        RootIsolator { sf, chain }
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &RealBound, hi: &RealBound) -> usize {
        self.chain.count(lo, hi)
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        self.sf.sign_at(x)
    }

    /// Value of the squarefree part (used by box confirmation).
    pub fn squarefree(&self) -> UniPoly {
        UniPoly::from_zpoly(&self.sf)
    }

    /// Pairwise-disjoint isolations covering every distinct real root,
    /// in increasing order.
    pub fn isolate(&self) -> Vec<Isolation> {
        if self.sf.degree() == Some(0) {
            return Vec::new();
        }
        let bound = self.sf.root_bound();
        let lo = -bound.clone();
        let total =
            self.count(&RealBound::Value(lo.clone()), &RealBound::Value(bound.clone()));
        let mut out = Vec::with_capacity(total);
        self.split(lo, bound, total, &mut out);
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Recursive bisection on `(lo, hi]`, both endpoints non-roots.
    fn split(&self, lo: BigRational, hi: BigRational, k: usize, out: &mut Vec<Isolation>) {
        match k {
            0 => {}
            1 => out.push(self.separate(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                if self.sign_at(&mid) != 0 {
                    let left = self.count(&RealBound::Value(lo.clone()), &RealBound::Value(mid.clone()));
                    self.split(lo, mid.clone(), left, out);
                    self.split(mid, hi, k - left, out);
                    return;
                }
                // The midpoint is itself a root: report it exactly and carve
                // out a root-free neighborhood around it.
                out.push(Isolation::exact(mid.clone()));
                let mut radius = (&hi - &lo) / BigRational::from_integer(4.into());
                loop {
                    let cl = &mid - &radius;
                    let cr = &mid + &radius;
                    if cl > lo
                        && cr < hi
                        && self.sign_at(&cl) != 0
                        && self.sign_at(&cr) != 0
                        && self.count(&RealBound::Value(cl.clone()), &RealBound::Value(cr.clone())) == 1
                    {
                        let left = self.count(&RealBound::Value(lo.clone()), &RealBound::Value(cl.clone()));
                        let right = self.count(&RealBound::Value(cr.clone()), &RealBound::Value(hi.clone()));
                        debug_assert_eq!(left + right + 1, k);
                        self.split(lo, cl, left, out);
                        self.split(cr, hi, right, out);
                        return;
                    }
                    radius /= BigRational::from_integer(2.into());
                }
            }
        }
    }

    /// `(lo, hi]` holds exactly one root and non-root endpoints; move both
    /// endpoints strictly inside so neighboring closed boxes stay disjoint,
    /// and detect rational roots hit along the way.
    fn separate(&self, lo: BigRational, hi: BigRational) -> Isolation {
        let orig_lo = lo.clone();
        let orig_hi = hi.clone();
        let mut lo = lo;
        let mut hi = hi;
        let mut sign_lo = self.sign_at(&lo);
        debug_assert!(sign_lo != 0 && self.sign_at(&hi) != 0);
        loop {
            let probe = simplest_rational_between(&lo, &hi);
            if self.sign_at(&probe) == 0 {
                return Isolation::exact(probe);
            }
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            let sign_mid = self.sign_at(&mid);
            if sign_mid == 0 {
                return Isolation::exact(mid);
            }
            if sign_mid == sign_lo {
                lo = mid;
                sign_lo = sign_mid;
            } else {
                hi = mid;
            }
            if lo > orig_lo && hi < orig_hi {
                return Isolation::interval(lo, hi);
            }
        }
    }

    /// One bisection step on an interval isolation (no-op for exact roots).
    /// Exactness is detected opportunistically at the midpoint and at the
    /// simplest rational inside the interval.
    pub fn refine(&self, iso: &Isolation) -> Isolation {
        if iso.exact_root.is_some() {
            return iso.clone();
        }
        let probe = simplest_rational_between(&iso.lo, &iso.hi);
        if self.sign_at(&probe) == 0 {
            return Isolation::exact(probe);
        }
        let mid = iso.midpoint();
        let sign_mid = self.sign_at(&mid);
        if sign_mid == 0 {
            return Isolation::exact(mid);
        }
        if sign_mid == self.sign_at(&iso.lo) {
            Isolation::interval(mid, iso.hi.clone())
        } else {
            Isolation::interval(iso.lo.clone(), mid)
        }
    }

    /// Refine until the width drops below `width`.
    pub fn refine_below(&self, iso: &Isolation, width: &BigRational) -> Isolation {
        let mut cur = iso.clone();
        while cur.exact_root.is_none() && cur.width() >= *width {
            cur = self.refine(&cur);
        }
        cur
    }
}

/// All real roots covered: convenience wrapper around `RootIsolator`.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<Isolation> {
    RootIsolator::new(p).isolate()
}

/// Every rational root of `p`, exactly. Root denominators divide the leading
/// coefficient of the primitive squarefree part, so refining each isolation
/// below `1/(2*lc)` leaves at most one candidate to test per root.
pub fn rational_roots(p: &UniPoly) -> Vec<BigRational> {
    let isolator = RootIsolator::new(p);
    let lc = isolator.sf.lc().abs();
    let snap_width = BigRational::new(BigInt::one(), 2 * &lc);
    let mut out = Vec::new();
    for iso in isolator.isolate() {
        if let Some(r) = &iso.exact_root {
            out.push(r.clone());
            continue;
        }
        let tight = isolator.refine_below(&iso, &snap_width);
        if let Some(r) = &tight.exact_root {
            out.push(r.clone());
            continue;
        }
        // Any rational root here must be m/lc for the unique integer m with
        // lo <= m/lc <= hi.
        let lo_scaled = (&tight.lo * BigRational::from_integer(lc.clone())).ceil().to_integer();
        let hi_scaled = (&tight.hi * BigRational::from_integer(lc.clone())).floor().to_integer();
        let mut m = lo_scaled;
        while m <= hi_scaled {
            let candidate = BigRational::new(m.clone(), lc.clone());
            if isolator.sign_at(&candidate) == 0 {
                out.push(candidate);
                break;
            }
            m += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sturm_count_examples() {
        let p = UniPoly::from_integers(&[0, -1, 0, 1]); // x^3 - x
        assert_eq!(sturm_count(&p, &RealBound::NegInfinity, &RealBound::PosInfinity), 3);

        let q = UniPoly::from_integers(&[1, 0, 1]); // x^2 + 1
        assert_eq!(sturm_count(&q, &RealBound::NegInfinity, &RealBound::PosInfinity), 0);

        let r = UniPoly::from_integers(&[-6, -1, 0, 1]); // x^3 - x - 6 = (x-2)(x^2+2x+3)
        assert_eq!(sturm_count(&r, &RealBound::NegInfinity, &RealBound::PosInfinity), 1);
    }

    #[test]
    fn sturm_count_handles_multiple_roots() {
        // (x-1)^2: one distinct root.
        let p = UniPoly::from_integers(&[1, -2, 1]);
        assert_eq!(sturm_count(&p, &RealBound::NegInfinity, &RealBound::PosInfinity), 1);
    }

    #[test]
    fn gcd_examples() {
        let a = UniPoly::from_integers(&[-1, 0, 1]);
        let b = UniPoly::from_integers(&[-1, 1]);
        assert_eq!(gcd_univariate(&a, &b), b.monic());

        let c = UniPoly::from_integers(&[1, 0, 0, 1]);
        let d = UniPoly::from_integers(&[-1, 0, 0, 1]);
        assert_eq!(gcd_univariate(&c, &d), UniPoly::constant(rq(1, 1)));

        let e = UniPoly::from_integers(&[0, 3]); // 3x
        assert_eq!(gcd_univariate(&e, &UniPoly::zero()), UniPoly::from_integers(&[0, 1]));
    }

    #[test]
    fn isolate_cube_roots() {
        let p = UniPoly::from_integers(&[0, -1, 0, 1]); // roots -1, 0, 1
        let isos = isolate_real_roots(&p);
        assert_eq!(isos.len(), 3);
        // The bisection lands on all three rational roots exactly.
        let roots: Vec<BigRational> =
            isos.iter().map(|i| i.exact_root.clone().expect("rational root")).collect();
        assert_eq!(roots, vec![rq(-1, 1), rq(0, 1), rq(1, 1)]);
    }

    #[test]
    fn isolate_collapses_double_root() {
        let p = UniPoly::from_integers(&[0, 0, 1]); // x^2
        let isos = isolate_real_roots(&p);
        assert_eq!(isos.len(), 1);
        assert_eq!(isos[0].exact_root, Some(rq(0, 1)));
    }

    #[test]
    fn isolate_finds_integer_root_when_refined() {
        let p = UniPoly::from_integers(&[-6, -1, 0, 1]); // single real root 2
        let isolator = RootIsolator::new(&p);
        let isos = isolator.isolate();
        assert_eq!(isos.len(), 1);
        assert!(isos[0].contains(&rq(2, 1)));
        // A few refinement steps discover the rational root exactly via the
        // simplest-rational probe.
        let mut iso = isos[0].clone();
        for _ in 0..8 {
            iso = isolator.refine(&iso);
            if iso.exact_root.is_some() {
                break;
            }
        }
        assert_eq!(iso.exact_root, Some(rq(2, 1)));
    }

    #[test]
    fn isolations_are_disjoint_and_contain_their_roots() {
        // Roots at 0.5 and 0.50001-ish: (2x-1)(100000x-50001)
        let p = UniPoly::from_integers(&[-1, 2]).mul(&UniPoly::from_integers(&[-50001, 100000]));
        let isos = isolate_real_roots(&p);
        assert_eq!(isos.len(), 2);
        assert!(isos[0].hi < isos[1].lo || isos[0].exact_root.is_some());
        assert!(isos[0].contains(&rq(1, 2)));
        assert!(isos[1].contains(&rq(50001, 100000)));
    }

    #[test]
    fn refinement_shrinks_and_keeps_root() {
        let p = UniPoly::from_integers(&[-2, 0, 1]); // sqrt(2)
        let isolator = RootIsolator::new(&p);
        let isos = isolator.isolate();
        let pos = isos.into_iter().find(|i| i.hi > rq(0, 1)).unwrap();
        let tight = isolator.refine_below(&pos, &rq(1, 1000));
        assert!(tight.exact_root.is_none()); // sqrt(2) is irrational
        assert!(tight.width() < rq(1, 1000));
        // 2 - x^2 changes sign inside.
        assert!(tight.lo < rq(577, 408) && rq(577, 408) < tight.hi || tight.contains(&rq(577, 408)));
    }

    #[test]
    fn rational_roots_are_complete() {
        // roots 2/3, -5, 7 with an irrational pair mixed in: (3x-2)(x+5)(x-7)(x^2-3)
        let p = UniPoly::from_integers(&[-2, 3])
            .mul(&UniPoly::from_integers(&[5, 1]))
            .mul(&UniPoly::from_integers(&[-7, 1]))
            .mul(&UniPoly::from_integers(&[-3, 0, 1]));
        let mut roots = rational_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![rq(-5, 1), rq(2, 3), rq(7, 1)]);
    }

    #[test]
    fn div_rem_recombines() {
        let a = UniPoly::from_integers(&[3, -2, 0, 5, 1]);
        let b = UniPoly::from_integers(&[1, 4, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
