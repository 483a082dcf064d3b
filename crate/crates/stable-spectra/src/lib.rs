//! Covariation spectra of symmetric alpha-stable random vectors and
//! harmonisable processes with discrete spectral structure, for stability
//! indices strictly between 1 and 2.
//!
//! Second moments are infinite in this regime, so covariance gives way to
//! the covariation bracket; the crate is organized around the additivity
//! condition that makes the bracket behave like one over a spectral
//! decomposition, and around what additivity buys: covariation bimeasures,
//! their double integrals, and the time structure of harmonisable models.
//!
//! ```
//! use stable_spectra::corpus;
//! use stable_spectra::covariation::covariation_exact_real;
//! use stable_spectra::harmonisable::Verdict;
//! use stable_spectra::Alpha;
//!
//! let alpha = Alpha::new(1.5)?;
//!
//! // exact covariation of the two coordinates loading a diagonal atom pair
//! let measure = corpus::diagonal_pair_measure();
//! let bracket = covariation_exact_real(&measure, alpha, &[1.0, 0.0], &[0.0, 1.0])?;
//! assert!((bracket.re - 2.0_f64.powf(-0.75)).abs() < 1e-14);
//!
//! // a model with lines at 0 and +-2 is periodically covariated with period pi
//! let report = corpus::lattice_model(alpha)?.classify(1e-12)?;
//! assert_eq!(report.verdict, Verdict::Periodic);
//! assert!((report.period.unwrap() - std::f64::consts::PI).abs() < 1e-9);
//! # Ok::<(), stable_spectra::Error>(())
//! ```
//!
//! The guide under `book/` walks through every module; its code blocks are
//! doc-tests of this crate.

pub mod bimeasure;
pub mod corpus;
pub mod covariation;
pub mod error;
pub mod harmonisable;
pub mod io;
pub mod numeric;
pub mod rng;
pub mod spectral;
pub mod stable;

#[cfg(doctest)]
mod guide;

pub use error::{Error, Result};
pub use stable::{Alpha, MomentKind, StableConstants};
