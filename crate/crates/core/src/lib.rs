//! Learning Boolean parity functions from quantum examples drawn under biased
//! product distributions on `{-1,1}^n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`fourier`]: biased Fourier analysis on the cube, closed forms and
//!   brute-force oracles.
//! - [`statevector`]: a dense simulator for example states and the biased
//!   Fourier-sampling circuit, including perturbed transforms.
//! - [`sampler`]: exact O(n) samplers for the subroutine output, clean and
//!   with label noise.
//! - [`learners`]: OR-aggregation and majority-vote learners, the classical
//!   GF(2) baseline and bias estimation for unknown distributions.
//! - [`bounds`]: closed-form sample-complexity calculators.
//! - [`harness`]: Monte-Carlo experiments, configuration and CSV output.

pub mod bits;
pub mod bounds;
pub mod error;
pub mod fourier;
pub mod gf2;
pub mod harness;
pub mod learners;
pub mod sampler;
pub mod statevector;

pub use bits::{BitString, IndexString, PmOneVector, TargetString};
pub use error::{Error, Result};
pub use fourier::BiasVector;
pub use sampler::{DrawSource, NoiseParams, NoiseRealization, SubroutineOutcome};
