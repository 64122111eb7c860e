//! Schubert polynomials from three independent models, with the explicit
//! weight-preserving bijections connecting them.
//!
//! The crate computes the Schubert polynomial of a permutation three ways:
//!
//! * [`poly::schubert`] — divided difference operators applied to the
//!   staircase monomial;
//! * [`poly::bjs_polynomial`] — the Billey–Jockusch–Stanley sum over reduced
//!   words and their compatible sequences;
//! * [`poly::kohnert_polynomial`] — the weight generating polynomial over
//!   the Kohnert diagrams of the Rothe diagram.
//!
//! The equality of the three is witnessed constructively: [`bijection`]
//! maps compatible pairs to Kohnert diagrams and back, one column swap
//! ([`colswap`]) at a time. Everything is exact integer arithmetic over
//! immutable values; enumeration state budgets are explicit.

pub mod bijection;
pub mod colswap;
pub mod diagrams;
pub mod error;
pub mod perm;
pub mod poly;
pub mod words;

pub use error::{Error, ErrorClass, Result};
