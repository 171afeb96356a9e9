//! Lab-unit conversions for the oscillation phase and the wave-packet damping.
//!
//! In natural units the phase between mass eigenstates `j` and `k` after a
//! distance `L` is `Δm²_jk L / (2E)`. With `Δm²` in eV², `L` in km and `E` in
//! GeV this becomes `PHASE_CONST · Δm² · L / E`, where
//!
//! ```text
//! PHASE_CONST = 1 km · 1 eV² / (2 · 1 GeV · ħc)
//!             = 1e3 m · 1e-9 eV / (2 · 1.973269804e-7 eV·m)
//!             ≈ 2.53387
//! ```
//!
//! The damping argument `Δm²_jk x / (4√2 E² σ_x)` is already dimensionless
//! once `x` and `σ_x` share a length unit; with `Δm²` in eV², `E` in GeV,
//! `x` in km and `σ_x` in m it reads `DAMPING_CONST · Δm² x / (4√2 E² σ_x)`
//! with `DAMPING_CONST = (1 eV² / 1 GeV²) · (1 km / 1 m) = 1e-18 · 1e3`.

/// ħc in MeV·fm (CODATA 2018).
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// ħc in eV·m.
pub const HBAR_C_EV_M: f64 = HBAR_C_MEV_FM * 1e6 * 1e-15;

/// Radians of `Δm²L/(2E)` per eV²·km/GeV.
pub const PHASE_CONST: f64 = 1e3 * 1e-9 / (2.0 * HBAR_C_EV_M);

/// Converts `Δm²[eV²] · x[km] / (E[GeV]² · σ_x[m])` to the dimensionless ratio.
pub const DAMPING_CONST: f64 = 1e-18 * 1e3;

/// Oscillation phase `Δm² L / (2E)` in radians.
#[inline]
pub fn phase(dm2_ev2: f64, l_over_e_km_per_gev: f64) -> f64 {
    PHASE_CONST * dm2_ev2 * l_over_e_km_per_gev
}

/// Damping argument `Δm² x / (4√2 E² σ_x)`.
#[inline]
pub fn damping_argument(dm2_ev2: f64, x_km: f64, energy_gev: f64, sigma_x_m: f64) -> f64 {
    DAMPING_CONST * dm2_ev2 * x_km / (4.0 * std::f64::consts::SQRT_2 * energy_gev * energy_gev * sigma_x_m)
}
