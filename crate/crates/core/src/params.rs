//! Oscillation parameters, flavor labels and the PMNS mixing matrix.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tolerated mismatch `|Δm²₃₂ − (Δm²₃₁ − Δm²₂₁)|` in eV².
pub const DM2_CONSISTENCY_TOL: f64 = 1e-5;

/// Neutrino flavor, doubling as the label of a flavor-mode qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "mu")]
    Mu,
    #[serde(rename = "tau")]
    Tau,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::E, Flavor::Mu, Flavor::Tau];

    /// Row index in the PMNS matrix and position in the `(e, μ, τ)` qubit order.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Flavor::E => 0,
            Flavor::Mu => 1,
            Flavor::Tau => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Flavor> {
        Flavor::ALL.get(i).copied()
    }

    /// ASCII tag used in quantity identifiers (`e`, `mu`, `tau`).
    pub fn tag(self) -> &'static str {
        match self {
            Flavor::E => "e",
            Flavor::Mu => "mu",
            Flavor::Tau => "tau",
        }
    }

    /// Index of `|ν_self⟩` in the three-qubit basis: e → |100⟩ = 4, μ → 2, τ → 1.
    #[inline]
    pub fn basis_index(self) -> usize {
        4 >> self.index()
    }

    /// The two flavors other than `self`, in canonical order.
    pub fn others(self) -> [Flavor; 2] {
        match self {
            Flavor::E => [Flavor::Mu, Flavor::Tau],
            Flavor::Mu => [Flavor::E, Flavor::Tau],
            Flavor::Tau => [Flavor::E, Flavor::Mu],
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::E => "e",
            Flavor::Mu => "μ",
            Flavor::Tau => "τ",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "e" | "nu_e" => Ok(Flavor::E),
            "mu" | "μ" | "nu_mu" => Ok(Flavor::Mu),
            "tau" | "τ" | "nu_tau" => Ok(Flavor::Tau),
            other => Err(Error::arg("flavor", format!("unknown flavor `{other}`"))),
        }
    }
}

/// Mixing angles, CP phase (radians) and squared-mass differences (eV²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationParams {
    pub theta12: f64,
    pub theta13: f64,
    pub theta23: f64,
    pub delta_cp: f64,
    pub dm2_21: f64,
    pub dm2_31: f64,
    pub dm2_32: f64,
}

impl OscillationParams {
    /// Builds a validated parameter set. Angles are in radians.
    ///
    /// When `dm2_32` is `None` it is derived as `dm2_31 − dm2_21`.
    pub fn new(
        theta12: f64,
        theta13: f64,
        theta23: f64,
        delta_cp: f64,
        dm2_21: f64,
        dm2_31: f64,
        dm2_32: Option<f64>,
    ) -> Result<Self> {
        let p = OscillationParams {
            theta12,
            theta13,
            theta23,
            delta_cp,
            dm2_21,
            dm2_31,
            dm2_32: dm2_32.unwrap_or(dm2_31 - dm2_21),
        };
        p.validate()?;
        Ok(p)
    }

    /// Same as [`OscillationParams::new`] with all angles given in degrees.
    pub fn from_degrees(
        theta12_deg: f64,
        theta13_deg: f64,
        theta23_deg: f64,
        delta_cp_deg: f64,
        dm2_21: f64,
        dm2_31: f64,
        dm2_32: Option<f64>,
    ) -> Result<Self> {
        Self::new(
            theta12_deg.to_radians(),
            theta13_deg.to_radians(),
            theta23_deg.to_radians(),
            delta_cp_deg.to_radians(),
            dm2_21,
            dm2_31,
            dm2_32,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let angles = [
            ("theta12", self.theta12),
            ("theta13", self.theta13),
            ("theta23", self.theta23),
            ("delta_cp", self.delta_cp),
        ];
        for (name, v) in angles {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite ({v})")));
            }
        }
        for (name, v) in [
            ("dm2_21", self.dm2_21),
            ("dm2_31", self.dm2_31),
            ("dm2_32", self.dm2_32),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite ({v})")));
            }
        }
        let mismatch = (self.dm2_32 - (self.dm2_31 - self.dm2_21)).abs();
        if mismatch > DM2_CONSISTENCY_TOL {
            return Err(Error::InvalidParams(format!(
                "dm2_32 = {} inconsistent with dm2_31 - dm2_21 = {} (|diff| = {mismatch:e} eV²)",
                self.dm2_32,
                self.dm2_31 - self.dm2_21
            )));
        }
        Ok(())
    }

    /// `m_i² − m_1²` for `i = 1, 2, 3`.
    pub fn mass_offsets(&self) -> [f64; 3] {
        [0.0, self.dm2_21, self.dm2_31]
    }

    /// `Δm²_jk = m_j² − m_k²` for 0-based mass indices.
    pub fn dm2(&self, j: usize, k: usize) -> f64 {
        let m = self.mass_offsets();
        m[j] - m[k]
    }
}

impl Default for OscillationParams {
    fn default() -> Self {
        default_params()
    }
}

/// Reference parameter set: Δm²₂₁ = 7.50e-5 eV², Δm²₃₁ = 2.46e-3 eV²,
/// Δm²₃₂ = 2.38e-3 eV², θ₁₂ = 33.48°, θ₂₃ = 42.3°, θ₁₃ = 8.50°, δ_CP = 0.
pub fn default_params() -> OscillationParams {
    OscillationParams {
        theta12: 33.48_f64.to_radians(),
        theta13: 8.50_f64.to_radians(),
        theta23: 42.3_f64.to_radians(),
        delta_cp: 0.0,
        dm2_21: 7.50e-5,
        dm2_31: 2.46e-3,
        dm2_32: 2.38e-3,
    }
}

/// 3×3 PMNS matrix; `u[α][i]` with flavor rows `(e, μ, τ)` and mass columns `(1, 2, 3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingMatrix {
    pub u: [[Complex64; 3]; 3],
}

impl MixingMatrix {
    #[inline]
    pub fn get(&self, flavor: Flavor, mass: usize) -> Complex64 {
        self.u[flavor.index()][mass]
    }

    /// `max |(U U†)_{αβ} − δ_{αβ}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in 0..3 {
            for b in 0..3 {
                let s: Complex64 = (0..3).map(|i| self.u[a][i] * self.u[b][i].conj()).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

/// Standard PDG parameterization of the PMNS matrix.
///
/// The `(e, 3)` entry is `s₁₃ e^{−iδ}` and the `(τ, 1)` entry is
/// `s₁₂ s₂₃ − c₁₂ c₂₃ s₁₃ e^{iδ}`, which is what makes the matrix unitary.
pub fn build_pmns(params: &OscillationParams) -> Result<MixingMatrix> {
    params.validate()?;
    let (s12, c12) = params.theta12.sin_cos();
    let (s13, c13) = params.theta13.sin_cos();
    let (s23, c23) = params.theta23.sin_cos();
    let e_pos = Complex64::from_polar(1.0, params.delta_cp);
    let e_neg = e_pos.conj();
    let re = |x: f64| Complex64::new(x, 0.0);

    let u = [
        [re(c12 * c13), re(s12 * c13), e_neg * s13],
        [
            re(-s12 * c23) - e_pos * (c12 * s23 * s13),
            re(c12 * c23) - e_pos * (s12 * s23 * s13),
            re(s23 * c13),
        ],
        [
            re(s12 * s23) - e_pos * (c12 * c23 * s13),
            re(-c12 * s23) - e_pos * (s12 * c23 * s13),
            re(c23 * c13),
        ],
    ];
    Ok(MixingMatrix { u })
}
