//! Estimation for the three-parameter p-star (exponential random graph)
//! model with edge, 2-star and triangle statistics.
//!
//! - [`graph`]: graphs, subgraph counts and change statistics.
//! - [`model`]: natural and Hamiltonian parameter conventions.
//! - [`exact`]: brute-force enumeration for small `n` (partition function,
//!   moments, exact MLLE).
//! - [`mean_field`]: mean-field edge/2-star/triangle probabilities, the
//!   Newton solver and the high/low-temperature diagnostic.
//! - [`sampler`]: Metropolis-Hastings graph sampling.
//! - [`estimators`]: pseudo-likelihood and mean-field MLLE by gradient ascent.
//! - [`io`], [`cli`], [`experiments`]: file formats and the `pstar` binary.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod mean_field;
pub mod model;
pub mod sampler;

pub use error::{Error, Result};
pub use estimators::{EstimateResult, GradientAscentConfig, Method};
pub use graph::{ChangeStats, Graph, SufficientStats};
pub use mean_field::{MfState, NewtonConfig, Phase, PhaseDiagnostic};
pub use model::{HamiltonianParams, MomentsVector, NaturalParams};
pub use sampler::{InitialState, SampleSet, SamplerConfig};
