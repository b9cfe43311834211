//! Exact computation with the quantum group `O_q(SL2)`, its braided
//! transmutation `B_q(SL2)`, braided tensor powers with a braid group action,
//! and truncated quotient presentations of quantum representation spaces of
//! link exteriors and mapping tori.

pub mod axioms;
pub mod bq;
pub mod classical;
pub mod error;
pub mod linalg;
pub mod nc;
pub mod oq;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
