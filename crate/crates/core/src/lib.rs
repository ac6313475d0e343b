//! Exhaustive point counting over finite-field towers, exact zeta-function
//! reconstruction, and divisibility checks against Hodge data of complete
//! intersections.

pub mod catalog;
pub mod congruence;
pub mod counting;
pub mod ff;
pub mod hodge;
pub mod input;
pub mod poly;
mod serde_big;
pub mod zeta;
