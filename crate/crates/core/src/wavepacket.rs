//! Time-averaged Gaussian wave-packet treatment: mixed flavor states whose
//! mass-state interference is damped with distance.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{build_pmns, Flavor, OscillationParams};
use crate::qinfo::DensityMatrix;
use crate::units;

/// Damping exponents above this value give `f_jk = 0` exactly.
pub const UNDERFLOW_EXPONENT: f64 = 700.0;

pub const DEFAULT_ENERGY_GEV: f64 = 1.0;

/// Chosen so that all three coherence lengths fall inside `[0, 5e5]` km at 1 GeV.
pub const DEFAULT_SIGMA_X_M: f64 = 2e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacketConfig {
    /// Energy in GeV.
    pub energy_e: f64,
    /// Spatial width of the packet in m.
    pub sigma_x: f64,
    pub params: OscillationParams,
}

impl WavePacketConfig {
    pub fn new(energy_e: f64, sigma_x: f64, params: OscillationParams) -> Result<Self> {
        let cfg = WavePacketConfig {
            energy_e,
            sigma_x,
            params,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.energy_e.is_finite() && self.energy_e > 0.0) {
            return Err(Error::arg(
                "energy_gev",
                format!("must be positive, got {}", self.energy_e),
            ));
        }
        if !(self.sigma_x.is_finite() && self.sigma_x > 0.0) {
            return Err(Error::arg(
                "sigma_x_m",
                format!("must be positive, got {}", self.sigma_x),
            ));
        }
        self.params.validate()
    }

    /// Distance in km at which `|f_jk| = e^{-1}`.
    pub fn coherence_length(&self, j: usize, k: usize) -> f64 {
        let unit = units::damping_argument(self.params.dm2(j, k).abs(), 1.0, self.energy_e, self.sigma_x);
        1.0 / unit
    }
}

impl Default for WavePacketConfig {
    fn default() -> Self {
        WavePacketConfig {
            energy_e: DEFAULT_ENERGY_GEV,
            sigma_x: DEFAULT_SIGMA_X_M,
            params: OscillationParams::default(),
        }
    }
}

/// `F^α_{βγ}(x)` for a state produced as flavor `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorCoefficients {
    pub initial_flavor: Flavor,
    /// `f[β][γ]` in `(e, μ, τ)` order.
    pub f: [[Complex64; 3]; 3],
    /// Distance in km.
    pub position_x: f64,
}

impl FlavorCoefficients {
    #[inline]
    pub fn get(&self, beta: Flavor, gamma: Flavor) -> Complex64 {
        self.f[beta.index()][gamma.index()]
    }

    /// Diagonal `F_ββ` in `(e, μ, τ)` order.
    pub fn diagonal(&self) -> [f64; 3] {
        [self.f[0][0].re, self.f[1][1].re, self.f[2][2].re]
    }
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::arg("x", format!("must be finite and non-negative, got {x}")));
    }
    Ok(())
}

/// `f_jk(x) = exp[−i Δm²_jk x/(2E) − (Δm²_jk x/(4√2 E² σ_x))²]` for 0-based mass indices.
pub fn decoherence_factor(j: usize, k: usize, x: f64, cfg: &WavePacketConfig) -> Result<Complex64> {
    if j > 2 || k > 2 {
        return Err(Error::arg("mass index", format!("({j}, {k}) out of range")));
    }
    check_x(x)?;
    cfg.validate()?;
    Ok(factor(cfg.params.dm2(j, k), x, cfg))
}

fn factor(dm2: f64, x: f64, cfg: &WavePacketConfig) -> Complex64 {
    let d = units::damping_argument(dm2, x, cfg.energy_e, cfg.sigma_x);
    let exponent = d * d;
    if exponent > UNDERFLOW_EXPONENT {
        return Complex64::new(0.0, 0.0);
    }
    let phase = units::phase(dm2, x / cfg.energy_e);
    Complex64::from_polar((-exponent).exp(), -phase)
}

/// `F^α_{βγ} = Σ_{j,k} U*_{αj} U_{αk} f_jk(x) U_{βj} U*_{γk}`.
pub fn flavor_coefficients(alpha: Flavor, x: f64, cfg: &WavePacketConfig) -> Result<FlavorCoefficients> {
    check_x(x)?;
    cfg.validate()?;
    let u = build_pmns(&cfg.params)?;
    let mut fjk = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (j, row) in fjk.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            *v = factor(cfg.params.dm2(j, k), x, cfg);
        }
    }
    // c_jk = U*_{αj} U_{αk} f_jk, then F = V c V† with V_{βj} = U_{βj}.
    let mut c = [[Complex64::new(0.0, 0.0); 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            c[j][k] = u.get(alpha, j).conj() * u.get(alpha, k) * fjk[j][k];
        }
    }
    let mut f = [[Complex64::new(0.0, 0.0); 3]; 3];
    for b in 0..3 {
        for g in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..3 {
                for k in 0..3 {
                    acc += c[j][k] * u.u[b][j] * u.u[g][k].conj();
                }
            }
            f[b][g] = acc;
        }
    }
    // Restore exact Hermiticity; rounding leaves ~1e-17 asymmetry.
    for b in 0..3 {
        f[b][b].im = 0.0;
        for g in b + 1..3 {
            let avg = (f[b][g] + f[g][b].conj()) * 0.5;
            f[b][g] = avg;
            f[g][b] = avg.conj();
        }
    }
    Ok(FlavorCoefficients {
        initial_flavor: alpha,
        f,
        position_x: x,
    })
}

/// `ρ_α(x) = Σ_{βγ} F^α_{βγ} |ν_β⟩⟨ν_γ|` over the modes `(e, μ, τ)`.
pub fn mixed_density_matrix(fc: &FlavorCoefficients) -> Result<DensityMatrix> {
    let mut data = vec![Complex64::new(0.0, 0.0); 64];
    for b in Flavor::ALL {
        for g in Flavor::ALL {
            data[b.basis_index() * 8 + g.basis_index()] = fc.get(b, g);
        }
    }
    DensityMatrix::new(Flavor::ALL.to_vec(), data)
}

/// `P_{α→η}(x) = F^α_{ηη}(x)`.
pub fn wp_transition_probability(fc: &FlavorCoefficients, eta: Flavor) -> f64 {
    fc.get(eta, eta).re
}
