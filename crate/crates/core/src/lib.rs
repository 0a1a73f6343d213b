//! Exact computations around the BCOV invariant of Calabi-Yau threefolds.
//!
//! - [`pseries`]: truncated power series over big rationals
//! - [`quintic`]: period, mirror map and genus-one log-derivative of the mirror quintic
//! - [`gw`]: Lambert and eta-product forms, genus-0/genus-1 extraction
//! - [`combinatorics`]: the ODP coefficients `delta(n, p)`
//! - [`lattice`]: L2 metric on `H^2` from a cubic form, covolumes, FHSV data
//! - [`modular`]: `eta`, `Delta` and Petersson norms
//! - [`divisor`]: the closed-form divisor factor on the `psi`-line
//! - [`cli`]: the `mirrorcalc` command-line front end

pub mod cli;
pub mod combinatorics;
pub mod divisor;
pub mod error;
pub mod gw;
pub mod lattice;
pub mod modular;
pub mod pseries;
pub mod quintic;

pub use error::{Error, Result};
pub use pseries::{ExactSeries, Rational, Variable};
