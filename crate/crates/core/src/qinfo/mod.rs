//! Quantum-information primitives on small flavor-mode density matrices.
//!
//! All entropies are in bits. Qubits are ordered by their flavor label, most
//! significant bit first: for labels `(e, μ, τ)` the basis index is
//! `4·n_e + 2·n_μ + n_τ`.

mod density;
mod eigen;
mod measures;

pub use density::DensityMatrix;
pub use eigen::{eigenvalues_hermitian, hermitian_eigen, HermitianEigen, Spectrum, MAX_SWEEPS};
pub use measures::{
    coherence_hs, conditional_ignorance, discord_sum, entropy_of_subsystem, mutual_information, nonlocal_coherence_hs,
    nonlocal_coherence_hs_bipartite, nonlocal_coherence_hs_tripartite, predictability_hs, predictability_vn,
    relative_entropy_coherence, shannon_bits, vn_entropy, vn_entropy_diag, xlog2x, PSD_TOLERANCE,
};
