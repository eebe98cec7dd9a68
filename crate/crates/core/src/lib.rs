//! Exact construction and verification of finite algebraic quantum groupoids.
//!
//! Everything is computed over the rationals, so every identity is checked as
//! an exact equality and every failure comes with a concrete witness.

pub mod algebroid;
pub mod duality;
mod checks;
pub mod error;
pub mod exactla;
pub mod finalg;
pub mod fixtures;
pub mod groupoid;
pub mod integrals;
pub mod pairing;
pub mod report;
pub mod wmha;

pub use error::{Error, Result, Side};
pub use exactla::{Mat, Matrix, Q};
pub use wmha::{verify_wmha, WeakHopf};
