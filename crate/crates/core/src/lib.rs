//! Exact verification of multiplier Hopf algebras graded or cograded over a group,
//! their deformations by crossed actions, and the associated Drinfeld-type doubles.

pub mod algebras;
pub mod cograded;
pub mod double;
pub mod error;
pub mod exact;
pub mod groups;
pub mod hopf;
pub mod report;

pub use error::{Error, Result};
pub use exact::GaussianRational as Q;
