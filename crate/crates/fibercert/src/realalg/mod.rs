//! Exact univariate and bivariate real/complex root machinery: Sturm
//! sequences, real root counting and isolation, univariate gcds, Sylvester
//! resultants, and only-zero-solution decisions for homogeneous systems.

mod resultant;
mod unipoly;
mod zeros;
mod zpoly;

pub use resultant::sylvester_resultant;
pub use unipoly::{
    gcd_univariate, isolate_real_roots, rational_roots, squarefree_part, sturm_count, Isolation,
    RootIsolator, UniPoly,
};
pub use zeros::{
    binary_form_real_projective_zero, complex_only_zero, dehomogenize_binary, divisible_by_var,
    real_only_zero, real_only_zero_seeded, verify_witness, FieldLabel, ZeroSolutionVerdict,
    ZeroStatus,
};
pub use zpoly::{simplest_rational_between, RealBound};

pub(crate) use resultant::{bareiss_det, sylvester_matrix};
pub(crate) use zpoly::ZPoly;
