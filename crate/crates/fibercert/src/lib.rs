//! Exact certification of surjectivity and fiber structure for polynomial
//! maps `R^n -> R^n`.
//!
//! Everything is computed over arbitrary-precision rationals: polynomial
//! arithmetic, leading homogeneous forms, derived homogeneous systems,
//! Sturm-based real root isolation, Sylvester resultants, only-zero-solution
//! tests, certification pipelines, and exact bivariate fiber solving.
//!
//! The `examples/` directory is the front door: one runnable program per
//! capability (`cargo run --example <name>`). A thin `fibercert` binary
//! exposes the same functionality as subcommands for problem files.
//!
//! ```
//! use fibercert::{parse_poly, PolyMap, ProblemSpec};
//! use fibercert::certify::run_pipeline;
//! use fibercert::fiber::solve_fiber;
//! use num_rational::BigRational;
//!
//! let f = PolyMap::new(vec![
//!     parse_poly("x^3 - x", 2).unwrap(),
//!     parse_poly("y", 2).unwrap(),
//! ]);
//! let certs = run_pipeline(&ProblemSpec::from_map(f.clone()), 0);
//! assert!(certs[0].verdict.is_surjective());
//!
//! let six = BigRational::from_integer(6.into());
//! let zero = BigRational::from_integer(0.into());
//! let fiber = solve_fiber(&f, &[six, zero]).unwrap();
//! assert_eq!(fiber.count(), Some(1)); // the single preimage is (2, 0)
//! ```
//!
//! Module map:
//! - [`poly`]: sparse multivariate polynomials, degrees, leading forms,
//!   derivatives, substitution, Jacobians.
//! - [`parse`]: the expression grammar, problem files, canonical rendering.
//! - [`systems`]: combined systems, induced homogeneous systems,
//!   homogenization, and the per-rule system builders.
//! - [`realalg`]: univariate root machinery and only-zero-solution verdicts.
//! - [`certify`]: certification pipelines producing structured certificates.
//! - [`fiber`]: exact fiber counting and isolation for planar maps.
//! - [`corpus`]: built-in named maps and seeded random families.
//! - [`cli`]: the command-line front end backing the `fibercert` binary.

pub mod certify;
pub mod serial;
pub mod cli;
pub mod corpus;
pub mod fiber;
pub mod parse;
pub mod poly;
pub mod realalg;
pub mod systems;

pub use parse::{parse_poly, parse_problem_file, render, ParseError, ProblemSpec};
pub use poly::{Degree, Monomial, MultiPoly, PolyMap};
