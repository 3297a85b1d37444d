//! Exact computation of affine Hall-Littlewood functions, Kostka-Foulkes
//! polynomials and t-string functions for the rank-one affine root system,
//! together with a catalog of machine-checked constant-term and
//! product identities.
//!
//! Everything is exact: coefficients are rational functions in the
//! deformation parameter `t` over arbitrary-precision integers, series are
//! truncated with explicit knowledge windows, and identity checks compare
//! canonical forms.

pub mod affine;
pub mod error;
pub mod formal;
pub mod hall;
pub mod qseries;
pub mod report;
pub mod ring;

pub use affine::{DominantWeight, RootVector, WeylElement};
pub use error::{Error, Result};
pub use formal::{ConeSeries, ThetaKind};
pub use qseries::{QSeries, Var};
pub use report::{IdentityReport, Status};
pub use ring::{IntPoly, RationalFunction};
