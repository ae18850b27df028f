//! Desk-scale Monte Carlo validators for the exact exponent calculus:
//! random-walk non-intersection, percolation cluster growth with hull
//! extraction and harmonic measure, and discrete Loewner traces with winding
//! and dimension estimators.
//!
//! Every campaign draws per-trial randomness from a counter-split stream of
//! the master seed, so outputs are bit-identical for a fixed seed regardless
//! of how many workers run the trials.

pub mod error;
pub mod fit;
pub mod harmonic;
pub mod perc;
pub mod rng;
pub mod sle;
pub mod walks;

pub use error::{McError, Result};
pub use fit::FitResult;
