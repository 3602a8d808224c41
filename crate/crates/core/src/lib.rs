//! Siegel–Veech constants for saddle connections on translation surfaces.
//!
//! The crate evaluates the configuration formulas exactly where closed forms
//! are available and gives large-genus asymptotics for every stratum and
//! multiplicity. The supporting inequalities are checked by exhaustive search,
//! and the genus-one Siegel formula by sampling unimodular lattices.
//!
//! Module map:
//! - [`numbers`]: rationals, Laurent polynomials in π, factorial kernels.
//! - [`strata`]: stratum signatures, components, dimensions, volumes.
//! - [`configurations`]: gluing data of saddle-connection configurations.
//! - [`engine`]: the configuration formulas and the hyperelliptic closed forms.
//! - [`asymptotics`]: large-genus closed forms and the lookup table.
//! - [`lemmas`]: executable checks of the combinatorial lemmas.
//! - [`siegel`]: Monte-Carlo check of the Siegel formula in genus one.
//! - [`acceptance`]: the end-to-end verification suite.

pub mod acceptance;
pub mod asymptotics;
pub mod classes;
pub mod configurations;
pub mod engine;
pub mod error;
pub mod lemmas;
pub mod numbers;
pub mod siegel;
pub mod strata;

pub use classes::ErrorClass;
pub use error::{Error, Result};
pub use numbers::{PiLaurent, Rational};
