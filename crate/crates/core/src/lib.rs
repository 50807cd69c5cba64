//! Exact combinatorics of unipotent representations of finite symplectic groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactq`]: polynomials and rational functions in `q` with exact rational coefficients.
//! - [`symbols`]: reduced symbols, rank and defect, hooks, cohooks, cores and the hook formula.
//! - [`hc`]: Harish-Chandra induction and restriction as leg-length-0 hook moves.
//! - [`coxeter`]: the cohomology of Coxeter varieties with Frobenius eigenvalue labels.
//! - [`stratum`]: the first page of the stratification spectral sequence of the closed
//!   stratum `S_θ` and the component-matching survival analysis.
//! - [`counting`]: isotropic subspace counts, a finite-field brute-force oracle and the
//!   small-rank cover multiplicities.
//!
//! Sweeps over independent inputs run on rayon when the `parallel` feature is enabled
//! (the default); see [`exec::Exec`].

pub mod counting;
pub mod coxeter;
pub mod error;
pub mod exactq;
pub mod exec;
pub mod hc;
pub mod stratum;
pub mod symbols;

pub use error::{Error, Result};
pub use exactq::{RatFunc, RatPoly};
pub use exec::Exec;
pub use symbols::Symbol;
