//! Exact sparse multivariate polynomial arithmetic over arbitrary-precision
//! rationals.
//!
//! `MultiPoly` is the universal value type of the crate: a finite map from
//! exponent vectors to nonzero `BigRational` coefficients, kept in
//! graded-lexicographic order. On top of it this module provides total
//! degrees with the `deg 0 = -inf` convention, leading homogeneous forms,
//! formal partial derivatives, exact composition, point evaluation, and
//! Jacobian determinants of square polynomial maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exponent vector of a single monomial, one entry per variable.
///
/// The ordering is graded lexicographic: total degree first, ties broken
/// lexicographically with earlier variables weighing more.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial (all exponents zero) on `nvars` variables.
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_i` (zero-based variable index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        let d: u64 = self.0.iter().map(|&e| e as u64).sum();
        u32::try_from(d).expect("total degree overflow")
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials: componentwise exponent sum.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "variable-count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Total degree with the `deg 0 = -inf` convention.
///
/// `NegInfinity` is reserved for the zero polynomial; the derived ordering
/// places it below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    /// True for finite odd degrees; `-inf` is neither odd nor even.
    pub fn is_odd(self) -> bool {
        matches!(self, Degree::Finite(d) if d % 2 == 1)
    }

    /// True for finite even degrees; `-inf` is neither odd nor even.
    pub fn is_even(self) -> bool {
        matches!(self, Degree::Finite(d) if d % 2 == 0)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    /// Degree of a product: finite degrees add, `-inf` absorbs.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }

    /// Degree of a `k`-th power (`k >= 1`); `-inf` absorbs.
    pub fn times(self, k: u32) -> Degree {
        match self {
            Degree::Finite(d) => Degree::Finite(d * k),
            Degree::NegInfinity => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::NegInfinity => write!(f, "-inf"),
        }
    }
}

// On the wire a degree is a JSON number, with null for -inf.
impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<u32>::deserialize(d)? {
            Some(v) => Degree::Finite(v),
            None => Degree::NegInfinity,
        })
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored coefficient is zero, every exponent vector has
/// length `nvars`, and the zero polynomial is the empty term map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "nvars must be positive");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::unit(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, BigRational::one())
    }

    /// The polynomial `x_i` (zero-based variable index).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), BigRational::one());
        p
    }

    /// Single term `c * X^exponents`.
    pub fn monomial(nvars: usize, exponents: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exponents.len(), nvars, "variable-count mismatch");
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::new(exponents), c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "variable-count mismatch");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exponents: &[u32]) -> BigRational {
        assert_eq!(exponents.len(), self.nvars, "variable-count mismatch");
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars])
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Maximal exponent-vector sum, `-inf` for the zero polynomial.
    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Degree in a single variable, `-inf` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Degree {
        assert!(i < self.nvars, "variable index out of range");
        self.terms
            .keys()
            .map(|m| m.exponents()[i])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Sum of the terms of maximal total degree; zero maps to zero.
    pub fn leading_form(&self) -> MultiPoly {
        match self.total_degree() {
            Degree::NegInfinity => MultiPoly::zero(self.nvars),
            Degree::Finite(d) => {
                let terms = self
                    .terms
                    .iter()
                    .filter(|(m, _)| m.total_degree() == d)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect();
                MultiPoly { nvars: self.nvars, terms }
            }
        }
    }

    /// Coefficient of the graded-lex largest monomial (zero for zero).
    pub fn leading_coefficient(&self) -> BigRational {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Graded-lex largest monomial, if any.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.iter().next_back().map(|(m, _)| m)
    }

    /// True when all terms share one total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.total_degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Divide by the absolute value of the graded-lex leading coefficient.
    ///
    /// Two polynomials are equal up to a positive scalar exactly when their
    /// normalizations agree.
    pub fn positive_scalar_normal_form(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let scale = self.leading_coefficient().abs().recip();
        self.scale(&scale)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Exact power by repeated squaring.
    pub fn power(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `i` (zero-based).
    pub fn partial_derivative(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] = e - 1;
            out.add_term(Monomial::new(exps), c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Exact composition `p(images[0], ..., images[nvars-1])`.
    ///
    /// All images must share a common variable count, which becomes the
    /// variable count of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "length mismatch: {} images for {} variables", images.len(), self.nvars);
        let out_nvars = images[0].nvars;
        assert!(
            images.iter().all(|q| q.nvars == out_nvars),
            "variable-count mismatch among substitution images"
        );
        // Cache image powers up to the largest exponent that actually occurs.
        let mut pow_cache: Vec<Vec<MultiPoly>> =
            images.iter().map(|q| vec![MultiPoly::one(out_nvars), q.clone()]).collect();
        let mut out = MultiPoly::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(out_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut pow_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "length mismatch: point has {} coordinates for {} variables", point.len(), self.nvars);
        let mut pow_cache: Vec<Vec<BigRational>> =
            point.iter().map(|v| vec![BigRational::one(), v.clone()]).collect();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut pow_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &point[i];
                    cache.push(next);
                }
                term *= &cache[e as usize];
            }
            acc += term;
        }
        acc
    }

    /// Reinterpret on a larger variable set (new variables get exponent 0).
    pub fn extend_vars(&self, new_nvars: usize) -> MultiPoly {
        assert!(new_nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(new_nvars, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        MultiPoly { nvars: new_nvars, terms }
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable-count mismatch: {} vs {}", self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable-count mismatch: {} vs {}", self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable-count mismatch: {} vs {}", self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion.
///
/// Exact over the polynomial ring; intended for the small matrices that
/// arise from maps in a handful of variables.
pub fn poly_matrix_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(n >= 1, "empty matrix");
    let nvars = m[0][0].nvars();
    assert!(
        m.iter().all(|row| row.len() == n && row.iter().all(|p| p.nvars() == nvars)),
        "matrix must be square with a uniform variable count"
    );
    det_rec(m, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>(), nvars)
}

fn det_rec(m: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize], nvars: usize) -> MultiPoly {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let sub_rows: Vec<usize> = rows[1..].to_vec();
    for (k, &col) in cols.iter().enumerate() {
        let entry = &m[rows[0]][col];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> =
            cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect();
        let minor = det_rec(m, &sub_rows, &sub_cols, nvars);
        let signed = if k % 2 == 0 { entry * &minor } else { &(-entry) * &minor };
        acc = &acc + &signed;
    }
    acc
}

/// Square polynomial map: `nvars` components in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    nvars: usize,
    components: Vec<MultiPoly>,
}

impl PolyMap {
    /// Build from components; the map must be square.
    pub fn new(components: Vec<MultiPoly>) -> Self {
        assert!(!components.is_empty(), "a polynomial map needs at least one component");
        let nvars = components[0].nvars();
        assert!(
            components.iter().all(|p| p.nvars() == nvars),
            "variable-count mismatch among components"
        );
        assert_eq!(components.len(), nvars, "map must be square: {} components in {} variables", components.len(), nvars);
        PolyMap { nvars, components }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &MultiPoly {
        &self.components[j]
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.components.iter().map(|p| p.total_degree()).collect()
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Vec<BigRational> {
        self.components.iter().map(|p| p.evaluate(point)).collect()
    }

    /// Matrix with entry `(i, j)` the derivative of component `j` by
    /// variable `i`. Its determinant equals the usual Jacobian determinant.
    pub fn jacobian_matrix(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.nvars)
            .map(|i| self.components.iter().map(|p| p.partial_derivative(i)).collect())
            .collect()
    }

    /// Exact Jacobian determinant, expanded as a polynomial.
    pub fn jacobian_determinant(&self) -> MultiPoly {
        poly_matrix_det(&self.jacobian_matrix())
    }

    /// Componentwise leading forms.
    pub fn leading_forms(&self) -> Vec<MultiPoly> {
        self.components.iter().map(|p| p.leading_form()).collect()
    }
}
