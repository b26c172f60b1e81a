//! Polynomials over Q: univariate, homogeneous multivariate, and the minors
//! of a symbolic pencil `M_x = Σ x_i A_i`.

mod binary;
mod homogeneous;
mod minors;
mod pencil;
mod unipoly;

pub use binary::{gcd_minors_binary, pencil_invariant_factors, poly_invariant_factors, rational_linear_factor};
pub use homogeneous::{degree_monomials, HomogeneousForm, Monomial};
pub use minors::{det_form, minor_ideal_generators, nonzero_minors, MinorGenerator, MINOR_STATE_BUDGET};
pub use pencil::SymbolicPencil;
pub use unipoly::{resultant, UniPoly};
