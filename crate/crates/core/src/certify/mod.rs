//! Certified lower and upper exponents for residual finiteness growth.

mod search;
mod span;
mod verdict;

pub use search::{
    delta_candidates, delta_search, delta_search_with, first_certificate, generic_rank, good_prime_basis, primitive_vectors,
    transform_pencil, upper_bound_d, GoodPrimeBasis, SearchOptions, UpperBoundReport, UpperMethod,
};
pub use span::{membership, membership_lambda, CertTerm, LowerBoundCertificate, MinorSpan};
pub use verdict::{analyze, analyze_with, RFVerdict};
