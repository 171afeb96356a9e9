//! Plane-wave evolution of a flavor state in the ultra-relativistic limit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{build_pmns, Flavor, OscillationParams};
use crate::qinfo::DensityMatrix;
use crate::units;

/// Amplitudes `a_{αβ}` of a state produced as flavor `α`, indexed by `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorAmplitudes {
    pub initial_flavor: Flavor,
    pub amplitudes: [Complex64; 3],
    /// L/E in km/GeV.
    pub l_over_e: f64,
}

impl FlavorAmplitudes {
    #[inline]
    pub fn amplitude(&self, beta: Flavor) -> Complex64 {
        self.amplitudes[beta.index()]
    }

    /// `|a_{αβ}|²` in `(e, μ, τ)` order.
    pub fn probabilities(&self) -> [f64; 3] {
        self.amplitudes.map(|a| a.norm_sqr())
    }
}

/// `a_{αβ} = Σ_i U*_{αi} e^{−iφ_i} U_{βi}` with `φ_i = (m_i² − m_1²) L / (2E)`.
///
/// The common phase of mass state 1 is dropped.
pub fn evolve_amplitudes(alpha: Flavor, params: &OscillationParams, l_over_e: f64) -> Result<FlavorAmplitudes> {
    if !l_over_e.is_finite() || l_over_e < 0.0 {
        return Err(Error::arg(
            "l_over_e",
            format!("must be finite and non-negative, got {l_over_e}"),
        ));
    }
    let u = build_pmns(params)?;
    let offsets = params.mass_offsets();
    let phases: [Complex64; 3] = offsets.map(|dm2| Complex64::from_polar(1.0, -units::phase(dm2, l_over_e)));

    let mut amplitudes = [Complex64::new(0.0, 0.0); 3];
    for beta in Flavor::ALL {
        amplitudes[beta.index()] = (0..3)
            .map(|i| u.get(alpha, i).conj() * phases[i] * u.get(beta, i))
            .sum();
    }
    Ok(FlavorAmplitudes {
        initial_flavor: alpha,
        amplitudes,
        l_over_e,
    })
}

/// `(P_αe, P_αμ, P_ατ)`.
pub fn transition_probabilities(amps: &FlavorAmplitudes) -> [f64; 3] {
    amps.probabilities()
}

/// `|ψ⟩⟨ψ|` with `|ψ⟩ = a_αe|100⟩ + a_αμ|010⟩ + a_ατ|001⟩` over the modes `(e, μ, τ)`.
pub fn pure_density_matrix(amps: &FlavorAmplitudes) -> Result<DensityMatrix> {
    let mut psi = [Complex64::new(0.0, 0.0); 8];
    for beta in Flavor::ALL {
        psi[beta.basis_index()] = amps.amplitude(beta);
    }
    DensityMatrix::from_pure(Flavor::ALL.to_vec(), &psi)
}
