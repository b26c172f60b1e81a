//! Exact integer and rational matrix algorithms.

mod hnf;
mod lattice;
mod matrix;
mod modular;
mod rational;
mod snf;

pub use hnf::{integer_kernel, row_hermite, RowHermite};
pub use lattice::{enumerate_cyclic_quotient_lattices, image_size_mod, kernel_mod, kernel_modulus, Sublattice};
pub(crate) use lattice::cyclic_representatives;
pub use matrix::IntMatrix;
pub use modular::{check_prime, is_prime, primes, rank_mod_p, rank_mod_p_int};
pub(crate) use modular::{image_exponent_mod, local_image_exponent, reduce_mod};
pub use rational::{rational_det, rational_rank, SpanSolver};
pub use snf::{snf, SNFResult};

