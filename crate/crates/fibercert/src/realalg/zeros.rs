//! Only-zero-solution tests for homogeneous systems.
//!
//! For two variables the decisions are exact: projective common zeros split
//! into the point at infinity (every form divisible by the second variable)
//! and common roots of the dehomogenized forms, which a gcd chain plus Sturm
//! counting settles. For three or more variables the real test is a witness
//! search (deterministic rational grid on the unit-cube faces, then a
//! floating descent whose candidates are only accepted after exact rational
//! reconstruction and exact re-evaluation); it never answers `OnlyZero`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::MultiPoly;
use crate::systems::HomogSystem;

use super::resultant::sylvester_resultant;
use super::unipoly::{gcd_univariate, rational_roots, sturm_count, UniPoly};
use super::zpoly::{simplest_rational_between, RealBound};

/// Which field a zero-solution verdict talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldLabel {
    Real,
    Complex,
}

/// Outcome of an only-zero-solution test.
///
/// A `NonzeroWitness` point evaluates every form to zero exactly and is not
/// the origin. `Inconclusive` covers both out-of-scope dimensions and the
/// case where nonzero solutions exist but none is rational (the reason says
/// which).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    OnlyZero,
    NonzeroWitness { point: Vec<BigRational> },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSolutionVerdict {
    pub status: ZeroStatus,
    pub field: FieldLabel,
}

impl ZeroSolutionVerdict {
    pub fn is_only_zero(&self) -> bool {
        matches!(self.status, ZeroStatus::OnlyZero)
    }

    pub fn witness(&self) -> Option<&[BigRational]> {
        match &self.status {
            ZeroStatus::NonzeroWitness { point } => Some(point),
            _ => None,
        }
    }
}

impl fmt::Display for ZeroSolutionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.field {
            FieldLabel::Real => "R",
            FieldLabel::Complex => "C",
        };
        match &self.status {
            ZeroStatus::OnlyZero => write!(f, "only the zero solution over {field}"),
            ZeroStatus::NonzeroWitness { point } => {
                let coords: Vec<String> =
                    point.iter().map(crate::serial::rat_to_string).collect();
                write!(f, "nonzero solution over {field}: ({})", coords.join(", "))
            }
            ZeroStatus::Inconclusive { reason } => write!(f, "inconclusive over {field}: {reason}"),
        }
    }
}

/// Exact check that a point zeroes every form and is not the origin.
pub fn verify_witness(forms: &[MultiPoly], point: &[BigRational]) -> bool {
    point.iter().any(|c| !c.is_zero())
        && forms.iter().all(|f| f.evaluate(point).is_zero())
}

/// `F(X, 1)` for a binary form (or any two-variable polynomial).
pub fn dehomogenize_binary(form: &MultiPoly) -> UniPoly {
    assert_eq!(form.nvars(), 2, "binary dehomogenization needs two variables");
    let deg = form
        .terms()
        .map(|(m, _)| m.exponents()[0])
        .max()
        .unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (m, c) in form.terms() {
        coeffs[m.exponents()[0] as usize] += c;
    }
    UniPoly::from_coeffs(coeffs)
}

/// True when every term carries a positive power of variable `i`
/// (vacuously true for the zero polynomial).
pub fn divisible_by_var(p: &MultiPoly, i: usize) -> bool {
    p.terms().all(|(m, _)| m.exponents()[i] >= 1)
}

/// Among the rational roots, prefer small denominators, then small
/// magnitude, then the positive sign; this keeps witnesses like `(1, 1)`
/// over `(-1, 1)` stable.
fn preferred_root(mut roots: Vec<BigRational>) -> Option<BigRational> {
    roots.sort_by_key(|r| (r.denom().clone(), r.numer().abs(), r.is_negative()));
    roots.into_iter().next()
}

/// Decide whether a single binary form has a nonzero real projective zero.
///
/// The zero form vanishes everywhere, a form divisible by the second
/// variable vanishes at `(1, 0)`, and the rest is the real-root count of the
/// dehomogenization. Panics on non-homogeneous input.
pub fn binary_form_real_projective_zero(form: &MultiPoly) -> ZeroSolutionVerdict {
    assert_eq!(form.nvars(), 2, "binary form needs two variables");
    assert!(form.is_homogeneous(), "non-homogeneous input");
    let one = BigRational::one();
    let zero = BigRational::zero();
    if form.is_zero() || divisible_by_var(form, 1) {
        return ZeroSolutionVerdict {
            status: ZeroStatus::NonzeroWitness { point: vec![one, zero] },
            field: FieldLabel::Real,
        };
    }
    let f = dehomogenize_binary(form);
    if f.degree() == Some(0) {
        return ZeroSolutionVerdict { status: ZeroStatus::OnlyZero, field: FieldLabel::Real };
    }
    let count = sturm_count(&f, &RealBound::NegInfinity, &RealBound::PosInfinity);
    if count == 0 {
        return ZeroSolutionVerdict { status: ZeroStatus::OnlyZero, field: FieldLabel::Real };
    }
    match preferred_root(rational_roots(&f)) {
        Some(r) => ZeroSolutionVerdict {
            status: ZeroStatus::NonzeroWitness { point: vec![r, one] },
            field: FieldLabel::Real,
        },
        None => ZeroSolutionVerdict {
            status: ZeroStatus::Inconclusive {
                reason: format!(
                    "{count} nonzero real zero line(s) exist but none is rational"
                ),
            },
            field: FieldLabel::Real,
        },
    }
}

/// Does the homogeneous system admit any nonzero real solution?
///
/// Exact for one and two variables; for three or more the answer is either
/// an exactly verified witness or `Inconclusive`, never `OnlyZero`.
pub fn real_only_zero(sys: &HomogSystem) -> ZeroSolutionVerdict {
    real_only_zero_seeded(sys, 0)
}

/// Like [`real_only_zero`] with an explicit seed for the sampled descent
/// used in the witness search (dimensions three and up).
pub fn real_only_zero_seeded(sys: &HomogSystem, seed: u64) -> ZeroSolutionVerdict {
    assert!(!sys.forms.is_empty(), "empty system");
    debug_assert!(sys.validate().is_ok());
    match sys.nvars {
        1 => only_zero_one_var(sys, FieldLabel::Real),
        2 => real_only_zero_binary(sys),
        _ => witness_search(sys, seed),
    }
}

fn only_zero_one_var(sys: &HomogSystem, field: FieldLabel) -> ZeroSolutionVerdict {
    if sys.forms.iter().all(|f| f.is_zero()) {
        ZeroSolutionVerdict {
            status: ZeroStatus::NonzeroWitness { point: vec![BigRational::one()] },
            field,
        }
    } else {
        // A nonzero form c*x^d vanishes only at the origin (d >= 1) or
        // nowhere (d = 0); either way no nonzero solution survives.
        ZeroSolutionVerdict { status: ZeroStatus::OnlyZero, field }
    }
}

fn real_only_zero_binary(sys: &HomogSystem) -> ZeroSolutionVerdict {
    let field = FieldLabel::Real;
    let one = BigRational::one();
    let zero = BigRational::zero();
    let nonzero: Vec<&MultiPoly> = sys.forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return ZeroSolutionVerdict {
            status: ZeroStatus::NonzeroWitness { point: vec![one, zero] },
            field,
        };
    }
    // Common zero at infinity: every form divisible by the second variable.
    if nonzero.iter().all(|f| divisible_by_var(f, 1)) {
        return ZeroSolutionVerdict {
            status: ZeroStatus::NonzeroWitness { point: vec![one, zero] },
            field,
        };
    }
    // Finite projective zeros are the common real roots of the
    // dehomogenizations, i.e. the real roots of their gcd.
    let mut gcd = dehomogenize_binary(nonzero[0]);
    for f in &nonzero[1..] {
        if gcd.degree() == Some(0) {
            break;
        }
        gcd = gcd_univariate(&gcd, &dehomogenize_binary(f));
    }
    if gcd.degree() == Some(0) {
        return ZeroSolutionVerdict { status: ZeroStatus::OnlyZero, field };
    }
    let count = sturm_count(&gcd, &RealBound::NegInfinity, &RealBound::PosInfinity);
    if count == 0 {
        return ZeroSolutionVerdict { status: ZeroStatus::OnlyZero, field };
    }
    match preferred_root(rational_roots(&gcd)) {
        Some(r) => {
            let point = vec![r, one];
            debug_assert!(verify_witness(&sys.forms, &point));
            ZeroSolutionVerdict { status: ZeroStatus::NonzeroWitness { point }, field }
        }
        None => ZeroSolutionVerdict {
            status: ZeroStatus::Inconclusive {
                reason: format!(
                    "{count} common real zero line(s) exist but none is rational"
                ),
            },
            field,
        },
    }
}

/// Does the homogeneous system admit any nonzero complex solution?
///
/// Exact for one variable, and for two variables with at most two nonzero
/// forms via the Sylvester resultant of the dehomogenized pair (a gcd chain
/// covers more forms). Three or more variables are out of scope.
pub fn complex_only_zero(sys: &HomogSystem) -> ZeroSolutionVerdict {
    assert!(!sys.forms.is_empty(), "empty system");
    debug_assert!(sys.validate().is_ok());
    let field = FieldLabel::Complex;
    match sys.nvars {
        1 => only_zero_one_var(sys, field),
        2 => {
            let one = BigRational::one();
            let zero = BigRational::zero();
            let nonzero: Vec<&MultiPoly> = sys.forms.iter().filter(|f| !f.is_zero()).collect();
            if nonzero.is_empty() || nonzero.iter().all(|f| divisible_by_var(f, 1)) {
                return ZeroSolutionVerdict {
                    status: ZeroStatus::NonzeroWitness { point: vec![one, zero] },
                    field,
                };
            }
            let dehoms: Vec<UniPoly> =
                nonzero.iter().map(|f| dehomogenize_binary(f)).collect();
            let common_finite = if dehoms.len() == 1 {
                dehoms[0].degree().is_some_and(|d| d >= 1)
            } else if dehoms.len() == 2 {
                sylvester_resultant(&dehoms[0], &dehoms[1]).is_zero()
            } else {
                let mut gcd = dehoms[0].clone();
                for f in &dehoms[1..] {
                    if gcd.degree() == Some(0) {
                        break;
                    }
                    gcd = gcd_univariate(&gcd, f);
                }
                gcd.degree().is_some_and(|d| d >= 1)
            };
            if !common_finite {
                return ZeroSolutionVerdict { status: ZeroStatus::OnlyZero, field };
            }
            // Nonzero complex solutions exist; hand back a rational one when
            // the common factor has a rational root.
            let mut gcd = dehoms[0].clone();
            for f in &dehoms[1..] {
                gcd = gcd_univariate(&gcd, f);
            }
            match preferred_root(rational_roots(&gcd)) {
                Some(r) => {
                    let point = vec![r, one];
                    debug_assert!(verify_witness(&sys.forms, &point));
                    ZeroSolutionVerdict { status: ZeroStatus::NonzeroWitness { point }, field }
                }
                None => ZeroSolutionVerdict {
                    status: ZeroStatus::Inconclusive {
                        reason: "nonzero complex solutions exist but none is rational".into(),
                    },
                    field,
                },
            }
        }
        _ => ZeroSolutionVerdict {
            status: ZeroStatus::Inconclusive {
                reason: "exact complex decision unavailable for 3 or more variables".into(),
            },
            field,
        },
    }
}

/// All reduced rationals in `[-1, 1]` with denominator at most `max_den`.
fn farey_values(max_den: u32) -> Vec<BigRational> {
    let mut vals = std::collections::BTreeSet::new();
    for q in 1..=max_den as i64 {
        for p in -(q)..=q {
            vals.insert(BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
    }
    vals.into_iter().collect()
}

/// Witness search for three or more variables: a deterministic grid on the
/// faces `x_k = 1` of the unit cube (zero sets of homogeneous systems are
/// symmetric under negation, so the opposite faces add nothing), then a
/// seeded floating descent on the sum of squared forms whose candidates
/// count only after exact reconstruction and exact re-evaluation.
fn witness_search(sys: &HomogSystem, seed: u64) -> ZeroSolutionVerdict {
    let field = FieldLabel::Real;
    let n = sys.nvars;
    let nonzero: Vec<&MultiPoly> = sys.forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        let mut point = vec![BigRational::zero(); n];
        point[0] = BigRational::one();
        return ZeroSolutionVerdict { status: ZeroStatus::NonzeroWitness { point }, field };
    }

    let values = farey_values(8);
    let mut coords = vec![0usize; n - 1];
    for face in 0..n {
        coords.iter_mut().for_each(|c| *c = 0);
        loop {
            let mut point = Vec::with_capacity(n);
            let mut it = coords.iter();
            for k in 0..n {
                if k == face {
                    point.push(BigRational::one());
                } else {
                    point.push(values[*it.next().unwrap()].clone());
                }
            }
            if nonzero.iter().all(|f| f.evaluate(&point).is_zero()) {
                return ZeroSolutionVerdict {
                    status: ZeroStatus::NonzeroWitness { point },
                    field,
                };
            }
            // Advance the odometer.
            let mut k = 0;
            loop {
                if k == coords.len() {
                    break;
                }
                coords[k] += 1;
                if coords[k] < values.len() {
                    break;
                }
                coords[k] = 0;
                k += 1;
            }
            if k == coords.len() {
                break;
            }
        }
    }

    if let Some(point) = descent_witness(&nonzero, n, seed) {
        return ZeroSolutionVerdict { status: ZeroStatus::NonzeroWitness { point }, field };
    }

    ZeroSolutionVerdict {
        status: ZeroStatus::Inconclusive {
            reason: format!(
                "no nonzero rational solution found by grid or descent; \
                 exact emptiness decision unavailable for {n} variables"
            ),
        },
        field,
    }
}

fn eval_f64(p: &MultiPoly, v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.to_f64().unwrap_or(0.0);
        for (i, &e) in m.exponents().iter().enumerate() {
            t *= v[i].powi(e as i32);
        }
        acc += t;
    }
    acc
}

/// Floating gradient descent on `sum_i F_i(v)^2` over the unit sphere.
/// Returns only exactly verified rational witnesses.
fn descent_witness(forms: &[&MultiPoly], n: usize, seed: u64) -> Option<Vec<BigRational>> {
    let grads: Vec<Vec<MultiPoly>> = forms
        .iter()
        .map(|f| (0..n).map(|i| f.partial_derivative(i)).collect())
        .collect();
    let objective = |v: &[f64]| -> f64 { forms.iter().map(|f| eval_f64(f, v).powi(2)).sum() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _restart in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut v);
        let mut step = 0.1;
        for _iter in 0..300 {
            let cur = objective(&v);
            if cur < 1e-24 {
                break;
            }
            // gradient of sum F_i^2 = sum 2 F_i grad F_i
            let mut g = vec![0.0; n];
            for (f, gf) in forms.iter().zip(&grads) {
                let fv = eval_f64(f, &v);
                for (k, gk) in gf.iter().enumerate() {
                    g[k] += 2.0 * fv * eval_f64(gk, &v);
                }
            }
            let mut next: Vec<f64> = v.iter().zip(&g).map(|(a, b)| a - step * b).collect();
            normalize(&mut next);
            if objective(&next) < cur {
                v = next;
                step *= 1.2;
            } else {
                step *= 0.5;
                if step < 1e-12 {
                    break;
                }
            }
        }
        if objective(&v) < 1e-18 {
            for eps in [1e-3, 1e-6, 1e-9] {
                let candidate: Vec<BigRational> = v
                    .iter()
                    .map(|&c| {
                        let lo = BigRational::from_float(c - eps)?;
                        let hi = BigRational::from_float(c + eps)?;
                        Some(simplest_rational_between(&lo, &hi))
                    })
                    .collect::<Option<Vec<_>>>()?;
                if candidate.iter().any(|c| !c.is_zero())
                    && forms.iter().all(|f| f.evaluate(&candidate).is_zero())
                {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > 1e-12 {
        v.iter_mut().for_each(|c| *c /= norm);
    } else {
        v[0] = 1.0;
    }
}
