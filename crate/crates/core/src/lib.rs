//! Exact critical-exponent calculus for conformally invariant random curves.
//!
//! The crate has four layers:
//!
//! * [`params`] — conversions between the Loewner diffusion constant, central
//!   charge, string susceptibility and its dual, and the O(N)/Potts Coulomb
//!   gas labels, plus the quadratic gravitational dressing maps.
//! * [`star`] — a small expression language for path configurations built
//!   from atoms and the operators `^` (mutual avoidance) and `v`
//!   (transparency), evaluated to all five exponent views at once.
//! * [`catalog`] — closed-form exponent families (walk packets, polymer
//!   watermelons, percolation crossings, harmonic moments, dimension triples,
//!   hiding, multiple strands, contact exponents, drift, winding).
//! * [`multifractal`] — the harmonic, wedge, mixed-rotation, double-sided and
//!   tip spectra with a numeric Legendre oracle.
//!
//! Everything is generic over the scalar type through [`real::Real`];
//! concrete `f64` aliases are exported at the crate root. All asserted
//! identities are calibrated for `f64`.

pub mod catalog;
pub mod error;
pub mod multifractal;
pub mod params;
pub mod real;
pub mod star;

pub use error::{Error, Result};
pub use real::Real;

pub use params::{GammaBranch, Phase};

/// Default scalar for the workbench.
pub type Scalar = f64;

pub type SystemParams = params::SystemParams<Scalar>;
pub type CoulombEntry = params::CoulombEntry<Scalar>;
pub type Atom = star::Atom<Scalar>;
pub type StarExpr = star::StarExpr<Scalar>;
pub type ExponentSet = star::ExponentSet<Scalar>;
pub type HausdorffTriple = catalog::HausdorffTriple<Scalar>;
pub type SpectrumKind = multifractal::SpectrumKind<Scalar>;
pub type SpectrumTable = multifractal::SpectrumTable<Scalar>;
pub type SpectrumRow = multifractal::SpectrumRow<Scalar>;
