//! Quantum-correlation bookkeeping for three-flavor neutrino oscillations.
//!
//! A flavor state is encoded as a three-qubit occupation state over the
//! modes `(e, μ, τ)`, so `|ν_e⟩ ≡ |100⟩`, `|ν_μ⟩ ≡ |010⟩`, `|ν_τ⟩ ≡ |001⟩`.
//! Plane-wave evolution yields pure states; the time-averaged wave-packet
//! treatment yields mixed states whose coherences between mass eigenstates
//! are damped with distance.
//!
//! On top of these states the crate evaluates every complete complementarity
//! relation (predictability + local coherence + non-local correlation =
//! constant), the residual correlations obtained from polygamy inequalities,
//! and the permutation-invariant genuine tripartite quantifiers.
//!
//! Module map:
//!
//! - [`units`]: unit-conversion constants for oscillation phases and damping.
//! - [`params`]: oscillation parameters and the PMNS matrix.
//! - [`planewave`]: pure-state evolution and its density matrix.
//! - [`wavepacket`]: decoherence factors and the mixed density matrix.
//! - [`qinfo`]: partial traces, the Hermitian eigensolver and all measures.
//! - [`closed_form`]: analytic expressions of the measures in terms of
//!   probabilities or flavor coefficients.
//! - [`ccr`]: complementarity budgets, residuals and genuine quantifiers.
//! - [`scan`], [`export`], [`audit`], [`config`]: the scan CLI machinery.

pub mod audit;
pub mod ccr;
pub mod closed_form;
pub mod config;
pub mod error;
pub mod export;
pub mod params;
pub mod planewave;
pub mod qinfo;
pub mod scan;
pub mod units;
pub mod wavepacket;

pub use error::{Error, Result};
pub use params::{build_pmns, default_params, Flavor, MixingMatrix, OscillationParams};
pub use planewave::{evolve_amplitudes, pure_density_matrix, transition_probabilities, FlavorAmplitudes};
pub use qinfo::{DensityMatrix, Spectrum};
pub use wavepacket::{
    decoherence_factor, flavor_coefficients, mixed_density_matrix, wp_transition_probability, FlavorCoefficients,
    WavePacketConfig,
};
