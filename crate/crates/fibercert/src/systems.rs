//! Derived polynomial systems: the combined system obtained by mixing map
//! components through a matrix, its induced system of leading forms, its
//! homogenization with one extra variable, and the specialized homogeneous
//! systems consumed by the certification rules.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::parse::ProblemSpec;
use crate::poly::{Degree, MultiPoly, PolyMap};

/// System of homogeneous forms with their recorded degrees.
///
/// Invariant: each nonzero form is homogeneous of its recorded degree; a
/// zero form carries degree `-inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogSystem {
    pub nvars: usize,
    pub forms: Vec<MultiPoly>,
    pub degrees: Vec<Degree>,
}

impl HomogSystem {
    /// Build from forms, recording actual degrees; checks homogeneity.
    pub fn from_forms(forms: Vec<MultiPoly>) -> Self {
        assert!(!forms.is_empty(), "empty system");
        let nvars = forms[0].nvars();
        assert!(forms.iter().all(|f| f.nvars() == nvars), "variable-count mismatch");
        let degrees = forms.iter().map(|f| f.total_degree()).collect();
        let sys = HomogSystem { nvars, forms, degrees };
        sys.validate().expect("forms must be homogeneous");
        sys
    }

    /// Check the homogeneity invariant, returning a description on failure.
    pub fn validate(&self) -> Result<(), String> {
        if self.forms.len() != self.degrees.len() {
            return Err("degree list length mismatch".to_string());
        }
        for (k, (f, d)) in self.forms.iter().zip(&self.degrees).enumerate() {
            if !f.is_homogeneous() {
                return Err(format!("form {} is not homogeneous", k + 1));
            }
            if f.total_degree() != *d {
                return Err(format!(
                    "form {} has degree {} but records {}",
                    k + 1,
                    f.total_degree(),
                    d
                ));
            }
        }
        Ok(())
    }

    /// Every form scaled to leading coefficient of absolute value one.
    pub fn positive_scalar_normal_forms(&self) -> Vec<MultiPoly> {
        self.forms.iter().map(|f| f.positive_scalar_normal_form()).collect()
    }
}

/// The combined (not necessarily homogeneous) system with its degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedSystem {
    pub nvars: usize,
    pub equations: Vec<MultiPoly>,
    pub degrees: Vec<Degree>,
}

/// Failures of the system builders. Applicability failures are data, not
/// bugs: the certification pipeline tries several rules in sequence and
/// reports which gates failed.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SystemsError {
    #[error("not applicable: {reason}")]
    NotApplicable { reason: String },
    #[error("equation {row} is zero; homogenization is undefined for degree -inf")]
    DegenerateEquation { row: usize },
}

/// Equation `i` of the combined system:
/// `sum_j (p_j - [a_j if shifting])^alpha_j * g_ij`, expanded exactly.
pub fn build_combined(spec: &ProblemSpec, shift_by_target: bool) -> CombinedSystem {
    let n = spec.nvars;
    let g = spec.effective_gmatrix();
    // One power per component, shared across all rows.
    let powers: Vec<MultiPoly> = spec
        .map
        .components()
        .iter()
        .zip(&spec.alpha)
        .zip(&spec.target)
        .map(|((p, &a), t)| {
            let shifted = if shift_by_target {
                p - &MultiPoly::constant(n, t.clone())
            } else {
                p.clone()
            };
            shifted.power(a)
        })
        .collect();
    let equations: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut eq = MultiPoly::zero(n);
            for (j, pw) in powers.iter().enumerate() {
                if g[i][j].is_zero() || pw.is_zero() {
                    continue;
                }
                eq = &eq + &(pw * &g[i][j]);
            }
            eq
        })
        .collect();
    let degrees = equations.iter().map(|e| e.total_degree()).collect();
    CombinedSystem { nvars: n, equations, degrees }
}

/// Leading forms of the combined equations; degrees carry over.
pub fn induced_homogeneous(sys: &CombinedSystem) -> HomogSystem {
    let forms: Vec<MultiPoly> = sys.equations.iter().map(|e| e.leading_form()).collect();
    HomogSystem { nvars: sys.nvars, forms, degrees: sys.degrees.clone() }
}

/// Homogenize each equation with one extra variable: equation `i` of degree
/// `d_i` becomes the degree-`d_i` form whose terms pick up the complementary
/// power of the new last variable.
///
/// Substituting 1 for the new variable recovers the equation; substituting 0
/// yields its leading form. The `target_applied` flag is bookkeeping for
/// callers that track whether `sys` was built with the target shift; it does
/// not change the transform.
pub fn homogenize(
    sys: &CombinedSystem,
    target_applied: bool,
) -> Result<HomogSystem, SystemsError> {
    let _ = target_applied;
    let n = sys.nvars;
    let mut forms = Vec::with_capacity(sys.equations.len());
    let mut degrees = Vec::with_capacity(sys.equations.len());
    for (row, eq) in sys.equations.iter().enumerate() {
        let d = match eq.total_degree() {
            Degree::Finite(d) => d,
            Degree::NegInfinity => return Err(SystemsError::DegenerateEquation { row: row + 1 }),
        };
        let form = MultiPoly::from_terms(
            n + 1,
            eq.terms().map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                exps.push(d - m.total_degree());
                (exps, c.clone())
            }),
        );
        forms.push(form);
        degrees.push(Degree::Finite(d));
    }
    let out = HomogSystem { nvars: n + 1, forms, degrees };
    debug_assert!(out.validate().is_ok());
    Ok(out)
}

/// Row data for the unique-maximal-degree selection: the products
/// `alpha_j * deg p_j + deg g_ij` with the `-inf` convention.
fn row_degree_products(spec: &ProblemSpec, g: &[Vec<MultiPoly>], i: usize) -> Vec<Degree> {
    (0..spec.nvars)
        .map(|j| {
            spec.map
                .component(j)
                .total_degree()
                .times(spec.alpha[j])
                .plus(g[i][j].total_degree())
        })
        .collect()
}

/// Top-pair system: for each row pick the unique component `j(i)` whose
/// `alpha_j * deg p_j + deg g_ij` strictly dominates the row and is odd, and
/// take `leading_form(p_j(i)) * leading_form(g_ij(i))`.
///
/// Returns the system together with the zero-based selector `j(i)`.
pub fn build_cor13_system(
    spec: &ProblemSpec,
) -> Result<(HomogSystem, Vec<usize>), SystemsError> {
    let n = spec.nvars;
    let g = spec.effective_gmatrix();
    let mut forms = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    let mut selector = Vec::with_capacity(n);
    for i in 0..n {
        let products = row_degree_products(spec, &g, i);
        let max = *products.iter().max().expect("nonempty row");
        if !max.is_finite() {
            return Err(SystemsError::NotApplicable {
                reason: format!("row {}: every product degree is -inf", i + 1),
            });
        }
        let attained: Vec<usize> = (0..n).filter(|&j| products[j] == max).collect();
        if attained.len() != 1 {
            return Err(SystemsError::NotApplicable {
                reason: format!(
                    "row {}: maximal degree {} attained by {} components (tie)",
                    i + 1,
                    max,
                    attained.len()
                ),
            });
        }
        if !max.is_odd() {
            return Err(SystemsError::NotApplicable {
                reason: format!("row {}: maximal degree {} is even", i + 1, max),
            });
        }
        let j = attained[0];
        let form = &spec.map.component(j).leading_form() * &g[i][j].leading_form();
        degrees.push(form.total_degree());
        forms.push(form);
        selector.push(j);
    }
    let sys = HomogSystem { nvars: n, forms, degrees };
    debug_assert!(sys.validate().is_ok());
    Ok((sys, selector))
}

/// Column system: leading forms of column `j0` (zero-based) of the matrix.
/// Applicable only when every degree in the column is odd.
pub fn build_thm17_system(
    gmatrix: &[Vec<MultiPoly>],
    j0: usize,
) -> Result<HomogSystem, SystemsError> {
    let n = gmatrix.len();
    assert!(n >= 1 && gmatrix.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(j0 < n, "column index out of range");
    let mut forms = Vec::with_capacity(n);
    for (i, row) in gmatrix.iter().enumerate() {
        let d = row[j0].total_degree();
        if !d.is_odd() {
            return Err(SystemsError::NotApplicable {
                reason: format!("entry ({}, {}) has degree {}, not odd", i + 1, j0 + 1, d),
            });
        }
        forms.push(row[j0].leading_form());
    }
    Ok(HomogSystem::from_forms(forms))
}

/// Component self-product system: for component `j`, the forms
/// `leading_form(p_j) * leading_form(d p_j / d x_i)` over all variables `i`.
/// A vanishing derivative contributes a zero form of degree `-inf`.
pub fn build_thm18_system(f: &PolyMap, j: usize) -> Result<HomogSystem, SystemsError> {
    assert!(j < f.nvars(), "component index out of range");
    let p = f.component(j);
    match p.total_degree() {
        Degree::NegInfinity => {
            return Err(SystemsError::NotApplicable {
                reason: format!("component {} is zero", j + 1),
            })
        }
        Degree::Finite(0) => {
            return Err(SystemsError::NotApplicable {
                reason: format!("component {} is constant", j + 1),
            })
        }
        Degree::Finite(_) => {}
    }
    let lead = p.leading_form();
    let n = f.nvars();
    let mut forms = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for i in 0..n {
        let deriv_lead = p.partial_derivative(i).leading_form();
        let form = &lead * &deriv_lead;
        degrees.push(form.total_degree());
        forms.push(form);
    }
    let sys = HomogSystem { nvars: n, forms, degrees };
    debug_assert!(sys.validate().is_ok());
    Ok(sys)
}

/// Gradient-combination system for an all-even exponent vector: form `i` is
/// the leading form of `sum_j alpha_j * p_j^(alpha_j - 1) * d p_j / d x_i`.
pub fn build_thm19_system(f: &PolyMap, alpha: &[u32]) -> Result<HomogSystem, SystemsError> {
    let n = f.nvars();
    assert_eq!(alpha.len(), n, "alpha length mismatch");
    for (j, &a) in alpha.iter().enumerate() {
        if a < 2 || a % 2 != 0 {
            return Err(SystemsError::NotApplicable {
                reason: format!("alpha_{} = {} is not an even integer >= 2", j + 1, a),
            });
        }
    }
    // p_j^(alpha_j - 1), shared across rows.
    let powers: Vec<MultiPoly> =
        f.components().iter().zip(alpha).map(|(p, &a)| p.power(a - 1)).collect();
    let mut forms = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for i in 0..n {
        let mut eq = MultiPoly::zero(n);
        for (j, pw) in powers.iter().enumerate() {
            let scaled = pw.scale(&BigRational::from_integer(alpha[j].into()));
            eq = &eq + &(&scaled * &f.component(j).partial_derivative(i));
        }
        let form = eq.leading_form();
        degrees.push(form.total_degree());
        forms.push(form);
    }
    let sys = HomogSystem { nvars: n, forms, degrees };
    debug_assert!(sys.validate().is_ok());
    Ok(sys)
}

/// Substitute a constant for the extra homogenization variable, returning a
/// polynomial back in the original `nvars` variables.
pub fn dehomogenize_last(form: &MultiPoly, value: &BigRational) -> MultiPoly {
    let n = form.nvars();
    assert!(n >= 2, "nothing to dehomogenize");
    MultiPoly::from_terms(
        n - 1,
        form.terms().filter_map(|(m, c)| {
            let exps = m.exponents();
            let last = exps[n - 1];
            let coeff = if last == 0 {
                c.clone()
            } else {
                let mut v = c.clone();
                for _ in 0..last {
                    v *= value;
                }
                v
            };
            if coeff.is_zero() {
                None
            } else {
                Some((exps[..n - 1].to_vec(), coeff))
            }
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_problem_file};
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p2(text: &str) -> MultiPoly {
        parse_poly(text, 2).unwrap()
    }

    fn spec_of(p1: &str, p2s: &str) -> ProblemSpec {
        ProblemSpec::from_map(PolyMap::new(vec![p2(p1), p2(p2s)]))
    }

    #[test]
    fn combined_with_identity_matrix() {
        let spec = spec_of("x^3 - x", "y");
        let sys = build_combined(&spec, false);
        assert_eq!(sys.equations, vec![p2("x^3 - x"), p2("y")]);
        assert_eq!(sys.degrees, vec![Degree::Finite(3), Degree::Finite(1)]);
    }

    #[test]
    fn combined_with_target_shift() {
        let mut spec = spec_of("x^3 - x", "y");
        spec.target = vec![rat(6, 1), rat(0, 1)];
        let sys = build_combined(&spec, true);
        assert_eq!(sys.equations, vec![p2("x^3 - x - 6"), p2("y")]);
        assert_eq!(sys.degrees, vec![Degree::Finite(3), Degree::Finite(1)]);
    }

    #[test]
    fn combined_with_alpha_powers() {
        let mut spec = spec_of("x", "y");
        spec.alpha = vec![3, 1];
        let sys = build_combined(&spec, false);
        assert_eq!(sys.equations, vec![p2("x^3"), p2("y")]);
    }

    #[test]
    fn induced_takes_leading_forms() {
        let sys = CombinedSystem {
            nvars: 2,
            equations: vec![p2("x^3 - x - 6"), p2("y")],
            degrees: vec![Degree::Finite(3), Degree::Finite(1)],
        };
        let h = induced_homogeneous(&sys);
        assert_eq!(h.forms, vec![p2("x^3"), p2("y")]);
        assert_eq!(h.degrees, sys.degrees);

        let zero_sys = CombinedSystem {
            nvars: 2,
            equations: vec![MultiPoly::zero(2), p2("y")],
            degrees: vec![Degree::NegInfinity, Degree::Finite(1)],
        };
        let h = induced_homogeneous(&zero_sys);
        assert!(h.forms[0].is_zero());
        assert_eq!(h.degrees[0], Degree::NegInfinity);
    }

    #[test]
    fn homogenize_introduces_extra_variable() {
        let sys = CombinedSystem {
            nvars: 2,
            equations: vec![p2("x^3 - x - 6"), p2("y")],
            degrees: vec![Degree::Finite(3), Degree::Finite(1)],
        };
        let h = homogenize(&sys, false).unwrap();
        assert_eq!(h.nvars, 3);
        assert_eq!(h.forms[0], parse_poly("x^3 - x*z^2 - 6*z^3", 3).unwrap());
        assert_eq!(h.forms[1], parse_poly("y", 3).unwrap());

        // Setting the extra variable to 1 recovers the equations.
        for (form, eq) in h.forms.iter().zip(&sys.equations) {
            assert_eq!(dehomogenize_last(form, &rat(1, 1)), *eq);
        }
        // Setting it to 0 yields the leading forms.
        let induced = induced_homogeneous(&sys);
        for (form, lead) in h.forms.iter().zip(&induced.forms) {
            assert_eq!(dehomogenize_last(form, &rat(0, 1)), *lead);
        }
    }

    #[test]
    fn homogenize_already_homogeneous_is_stable() {
        let sys = CombinedSystem {
            nvars: 2,
            equations: vec![p2("x^3"), p2("y")],
            degrees: vec![Degree::Finite(3), Degree::Finite(1)],
        };
        let h = homogenize(&sys, false).unwrap();
        assert_eq!(h.forms[0], parse_poly("x^3", 3).unwrap());
        assert_eq!(h.forms[1], parse_poly("y", 3).unwrap());
    }

    #[test]
    fn homogenize_rejects_zero_equation() {
        let sys = CombinedSystem {
            nvars: 2,
            equations: vec![MultiPoly::zero(2), p2("y")],
            degrees: vec![Degree::NegInfinity, Degree::Finite(1)],
        };
        assert_eq!(
            homogenize(&sys, false).unwrap_err(),
            SystemsError::DegenerateEquation { row: 1 }
        );
    }

    #[test]
    fn cor13_selects_unique_odd_maxima() {
        let spec = spec_of("x^3 + 2*y^3 + x", "3*x - y + 1");
        let (sys, selector) = build_cor13_system(&spec).unwrap();
        assert_eq!(sys.forms, vec![p2("x^3 + 2*y^3"), p2("3*x - y")]);
        assert_eq!(selector, vec![0, 1]);
    }

    #[test]
    fn cor13_rejects_even_maximum() {
        let spec = spec_of("x^2", "y");
        let err = build_cor13_system(&spec).unwrap_err();
        assert!(matches!(err, SystemsError::NotApplicable { ref reason } if reason.contains("even")));
    }

    #[test]
    fn cor13_rejects_ties() {
        let mut spec = spec_of("x^3", "x^3");
        spec.gmatrix = Some(vec![vec![p2("1"), p2("1")], vec![p2("1"), p2("-1")]]);
        let err = build_cor13_system(&spec).unwrap_err();
        assert!(matches!(err, SystemsError::NotApplicable { ref reason } if reason.contains("tie")));
    }

    #[test]
    fn thm17_column_systems() {
        let g = vec![vec![p2("x"), p2("1")], vec![p2("y"), p2("1")]];
        let sys = build_thm17_system(&g, 0).unwrap();
        assert_eq!(sys.forms, vec![p2("x"), p2("y")]);
        assert!(build_thm17_system(&g, 1).is_err());

        let g2 = vec![vec![p2("x^3"), p2("1")], vec![p2("x + y"), p2("1")]];
        let sys2 = build_thm17_system(&g2, 0).unwrap();
        assert_eq!(sys2.forms, vec![p2("x^3"), p2("x + y")]);
    }

    #[test]
    fn thm18_linear_component_keeps_zero_form() {
        let f = PolyMap::new(vec![p2("x"), p2("y")]);
        let sys = build_thm18_system(&f, 0).unwrap();
        assert_eq!(sys.forms[0], p2("x"));
        assert!(sys.forms[1].is_zero());
        assert_eq!(sys.degrees, vec![Degree::Finite(1), Degree::NegInfinity]);
    }

    #[test]
    fn thm19_examples() {
        let f = PolyMap::new(vec![p2("x + y^3"), p2("y - x^3")]);
        let sys = build_thm19_system(&f, &[2, 2]).unwrap();
        assert_eq!(sys.forms, vec![p2("6*x^5"), p2("6*y^5")]);

        let linear = PolyMap::new(vec![p2("x"), p2("y")]);
        let sys = build_thm19_system(&linear, &[2, 2]).unwrap();
        assert_eq!(sys.forms, vec![p2("2*x"), p2("2*y")]);

        assert!(build_thm19_system(&linear, &[2, 3]).is_err());
    }

    #[test]
    fn problem_file_round_trips_into_builders() {
        let spec = parse_problem_file("n = 2\np1 = x^3 - x\np2 = y\n").unwrap();
        let (sys, _) = build_cor13_system(&spec).unwrap();
        assert_eq!(sys.forms, vec![p2("x^3"), p2("y")]);
    }
}
