//! The group `G_φ`: validation, group law, word balls and collection.

mod ball;
mod element;
mod presentation;
mod word;

pub use ball::{ball, spheres, DEFAULT_BALL_BUDGET};
pub use element::GroupElement;
pub use presentation::{validate, GroupPresentation, Warning};
pub use word::{collect, FreeWord};
