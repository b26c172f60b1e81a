//! Exact arithmetic for residual finiteness growth of two-step nilpotent groups.
//!
//! A group is given by skew-symmetric integer matrices `A_1..A_n` defining an
//! alternating map `Z^m x Z^m -> Z^n`. The crate computes divisibility of
//! central elements, minor ideals of the associated pencil and certified
//! bounds on the polylogarithmic growth exponent.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certify;
pub mod constructions;
pub mod divisibility;
mod error;
pub mod forms;
pub mod group;
pub mod linalg;
pub mod pencils;

pub use error::{Error, Result};
