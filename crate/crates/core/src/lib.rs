//! Exact computation of the localized Erdős–Ko–Rado sum
//! `Φ_{n,k}(F) = Σ_{A∈F} 1 / C(n - i_F(A), k - i_F(A))` on k-uniform families,
//! the named extremal families and closed-form bounds around it, an
//! isomorph-free exhaustive search for its maximum, and a checker for the
//! multi-threshold Hilton bound.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod hilton;
pub mod phi;
pub mod search;
pub mod setfamily;

pub use error::{Error, Result};
pub use exact::ExactRational;
pub use setfamily::{Family, GroundParams, KSet, Subset};
