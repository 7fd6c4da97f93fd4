//! Numerical toolkit for Dirichlet L-functions to an odd prime modulus q:
//! characters and Gauss sums, L(s,χ) on the critical line via Hurwitz zeta,
//! zero localization and argument statistics S(T,χ), Beurling–Selberg interval
//! majorants/minorants and their Fourier transforms, the Weil explicit formula,
//! and closed-form evaluators for the mean / mean-square bounds on the argument
//! together with the low-lying-zero proportion bounds they imply.
//!
//! Everything is exact-arithmetic or certified-tolerance floating point at desk
//! scale (q up to ~1000, heights up to ~50); ensembles over the q−2 non-principal
//! characters run data-parallel (rayon) with a sequential fallback when the
//! `parallel` feature is disabled.

pub mod analysis;
pub mod arith;
pub mod bounds;
pub mod characters;
pub mod error;
pub mod exec;
pub mod extremal;
pub mod lfunc;
pub mod specialfn;

pub use error::{Error, Result};
pub use exec::ExecMode;

/// Complex double shorthand used throughout.
pub type C64 = num_complex::Complex64;
