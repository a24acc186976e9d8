//! Ostrowski numeration for `α = [0; 1, m, 1, m, …]`, the digit-sum
//! functions `S_α` and their truncations, exponential sums over them, and
//! exact streaming counters for the joint distribution of
//! `(S_{α₁}(n) mod b₁, S_{α₂}(n) mod b₂)`.

pub mod angle;
pub mod baseline;
pub mod budget;
pub mod cf;
pub mod cli;
pub mod equidist;
pub mod error;
pub mod expsum;
pub mod numeration;
pub mod report;
pub mod stats;
pub mod sum;

pub use cf::{convergents, dist_nearest, frac_mul, make_alpha, AlphaParams, ConvergentTable, Surd};
pub use error::{Error, Result};
pub use numeration::{DigitString, Odometer, Ostrowski, VSequence, Violation, ViolationKind};
