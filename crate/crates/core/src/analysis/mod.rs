//! Moduli of continuity, K-functional bounds and checks of the error estimates.

pub mod bounds;
pub mod critical;
pub mod improvement;
pub mod kfunctional;
pub mod modulus;
pub mod reduction;

pub use bounds::{BoundKind, BoundReport};
pub use kfunctional::SmoothingLadder;
pub use modulus::{modulus_of_continuity, ModulusTable};
