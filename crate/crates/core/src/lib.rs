//! Exact Fourier analysis of Boolean functions with a focus on noise
//! stability of linear threshold functions.
//!
//! Truth tables are analyzed with an exact Walsh-Hadamard transform; every
//! coefficient and level weight is a [`Dyadic`] rational, so identities are
//! checked by equality rather than tolerance. Closed forms for two-block and
//! multi-block threshold functions reach sizes beyond the truth-table cap.

pub mod asymptotics;
pub mod binomial;
pub mod conjecture;
pub mod dyadic;
mod error;
pub mod fourier;
pub mod influence;
pub mod ltf;
pub mod monte_carlo;
pub mod poly;
pub mod truth_table;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use fourier::{fourier_transform, FourierSpectrum, StabilityPolynomial};
pub use influence::{influence, influences, is_balanced, local_monotonicity, InfluenceVector, Monotone};
pub use ltf::{BlockLTF, TwoBlockLTF, WeightedLTF};
pub use monte_carlo::{monte_carlo_stability, McEstimate};
pub use truth_table::{majority, max_vars, TruthTable};
