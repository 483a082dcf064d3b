//! The guide's chapters, compiled as doc-tests so `cargo test --doc` keeps
//! every code block in `book/` in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/stable-scalars.md")]
pub mod stable_scalars {}

#[doc = include_str!("../../../book/src/spectral-measures.md")]
pub mod spectral_measures {}

#[doc = include_str!("../../../book/src/covariation.md")]
pub mod covariation_chapter {}

#[doc = include_str!("../../../book/src/bimeasures.md")]
pub mod bimeasures {}

#[doc = include_str!("../../../book/src/harmonisable.md")]
pub mod harmonisable_models {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_and_formats {}
