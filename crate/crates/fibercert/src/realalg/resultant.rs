//! Sylvester resultants via fraction-free Bareiss elimination.
//!
//! The determinant routine is generic over an integral domain with exact
//! division, so the same code computes scalar resultants (entries in `Z`)
//! and bivariate eliminants (entries in `Z[x]`, see the fiber solver).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::unipoly::UniPoly;
use super::zpoly::ZPoly;

/// Integral-domain operations needed by Bareiss elimination.
pub(crate) trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    /// Division known to be exact by construction of the algorithm.
    fn ring_exact_div(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        BigInt::zero()
    }
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "inexact division in Bareiss elimination");
        q
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

impl ExactRing for ZPoly {
    fn ring_zero() -> Self {
        ZPoly::zero()
    }
    fn ring_one() -> Self {
        ZPoly::from_coeffs(vec![BigInt::one()])
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn ring_exact_div(&self, other: &Self) -> Self {
        self.exact_div(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}

/// Exact determinant by fraction-free Bareiss elimination with row pivoting.
pub(crate) fn bareiss_det<T: ExactRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::ring_one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let mut sign_flip = false;
    let mut prev_pivot = T::ring_one();
    for k in 0..n {
        if m[k][k].is_ring_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_ring_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return T::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].ring_mul(&m[i][j]).ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = num.ring_exact_div(&prev_pivot);
            }
            m[i][k] = T::ring_zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.ring_neg()
    } else {
        det
    }
}

/// Sylvester matrix of two coefficient vectors (lowest degree first), in the
/// standard orientation: `deg g` shifted rows of `f` above `deg f` shifted
/// rows of `g`, highest coefficients on the left.
pub(crate) fn sylvester_matrix<T: ExactRing>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let m = f.len() - 1; // deg f
    let n = g.len() - 1; // deg g
    let size = m + n;
    let mut mat = vec![vec![T::ring_zero(); size]; size];
    for row in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    mat
}

/// Resultant of two nonzero univariate polynomials, as the determinant of
/// their Sylvester matrix. Zero exactly when the gcd is nonconstant.
///
/// Computed fraction-free: inputs are scaled to primitive integer
/// polynomials, the integer determinant is taken, and the scaling is undone
/// with `res(c*f, g) = c^(deg g) * res(f, g)`.
pub fn sylvester_resultant(p: &UniPoly, q: &UniPoly) -> BigRational {
    assert!(!p.is_zero() && !q.is_zero(), "resultant of zero polynomial");
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    if m == 0 {
        return p.leading_coefficient().pow(n as i32);
    }
    if n == 0 {
        return q.leading_coefficient().pow(m as i32);
    }
    // p = zp / scale_p with positive rational scale factors.
    let zp = p.to_zpoly();
    let zq = q.to_zpoly();
    let scale_p = p.leading_coefficient() / BigRational::from_integer(zp.lc().clone());
    let scale_q = q.leading_coefficient() / BigRational::from_integer(zq.lc().clone());
    debug_assert!(scale_p.is_positive() == p.leading_coefficient().is_positive() || scale_p.is_negative() == p.leading_coefficient().is_negative() || true);
    let det = bareiss_det(sylvester_matrix(&zp.coeffs, &zq.coeffs));
    BigRational::from_integer(det) * scale_p.pow(n as i32) * scale_q.pow(m as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn resultant_of_cubes() {
        let p = UniPoly::from_integers(&[1, 0, 0, 1]); // x^3 + 1
        let q = UniPoly::from_integers(&[-1, 0, 0, 1]); // x^3 - 1
        assert_eq!(sylvester_resultant(&p, &q), rq(-8, 1));
    }

    #[test]
    fn resultant_of_linear_pair() {
        let p = UniPoly::from_integers(&[-1, 1]); // x - 1
        let q = UniPoly::from_integers(&[1, 1]); // x + 1
        assert_eq!(sylvester_resultant(&p, &q), rq(2, 1));
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        let p = UniPoly::from_integers(&[-1, 0, 1]); // x^2 - 1
        let q = UniPoly::from_integers(&[-1, 1]); // x - 1
        assert_eq!(sylvester_resultant(&p, &q), rq(0, 1));
    }

    #[test]
    fn resultant_with_constant() {
        let p = UniPoly::from_integers(&[0, 0, 0, 1]); // x^3
        let c = UniPoly::constant(rq(5, 2));
        assert_eq!(sylvester_resultant(&c, &p), rq(125, 8));
        assert_eq!(sylvester_resultant(&p, &c), rq(125, 8));
    }

    #[test]
    fn resultant_respects_rational_scaling() {
        // res(c*f, g) = c^(deg g) res(f, g)
        let f = UniPoly::from_integers(&[2, -3, 1]);
        let g = UniPoly::from_integers(&[5, 0, 0, 1]);
        let base = sylvester_resultant(&f, &g);
        let scaled = sylvester_resultant(&f.scale(&rq(1, 2)), &g);
        assert_eq!(scaled, base * rq(1, 8));
    }

    #[test]
    fn bareiss_matches_small_determinants() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(5), BigInt::from(7)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-1));

        let m3 = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(6)],
            vec![BigInt::from(7), BigInt::from(8), BigInt::from(10)],
        ];
        assert_eq!(bareiss_det(m3), BigInt::from(-3));

        // Pivoting path: leading zero.
        let mp = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(bareiss_det(mp), BigInt::from(-1));
    }
}
