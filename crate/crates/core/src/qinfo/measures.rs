//! Predictability, coherence, entropy and correlation measures.

use num_complex::Complex64;

use super::eigen::eigenvalues_hermitian;
use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::params::Flavor;

/// Eigenvalues in `[−PSD_TOLERANCE, 0)` are treated as zero; lower ones are errors.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// `p log₂ p` with the `0 log 0 = 0` convention.
#[inline]
pub fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

fn clamp_weight(p: f64) -> Result<f64> {
    if p < -PSD_TOLERANCE {
        Err(Error::NotPositive { eigenvalue: p })
    } else {
        Ok(p.max(0.0))
    }
}

/// Shannon entropy in bits of a list of weights.
pub fn shannon_bits(weights: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &w in weights {
        s -= xlog2x(clamp_weight(w)?);
    }
    Ok(s)
}

/// `S(ρ) = −Σ λ log₂ λ`.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spec = eigenvalues_hermitian(rho)?;
    shannon_bits(&spec.eigenvalues)
}

/// Entropy of the dephased state `ρ_diag`.
pub fn vn_entropy_diag(rho: &DensityMatrix) -> Result<f64> {
    shannon_bits(&rho.diagonal())
}

/// `P_hs(ρ) = Σ ρ_ii² − 1/d`.
pub fn predictability_hs(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    rho.diagonal().iter().map(|p| p * p).sum::<f64>() - 1.0 / d
}

/// `C_hs(ρ) = Σ_{i≠k} |ρ_ik|²`.
pub fn coherence_hs(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut s = 0.0;
    for i in 0..d {
        for k in 0..d {
            if i != k {
                s += rho.get(i, k).norm_sqr();
            }
        }
    }
    s
}

/// `C_re(ρ) = S(ρ_diag) − S(ρ)`.
pub fn relative_entropy_coherence(rho: &DensityMatrix) -> Result<f64> {
    Ok(vn_entropy_diag(rho)? - vn_entropy(rho)?)
}

/// `P_vn(ρ) = log₂ d − S(ρ_diag)`.
pub fn predictability_vn(rho: &DensityMatrix) -> Result<f64> {
    Ok((rho.dim() as f64).log2() - vn_entropy_diag(rho)?)
}

fn split(rho: &DensityMatrix, part: &[Flavor]) -> Result<Vec<Flavor>> {
    if part.is_empty() {
        return Err(Error::InvalidPartition("part is empty".into()));
    }
    for (i, p) in part.iter().enumerate() {
        if rho.position(*p).is_none() {
            return Err(Error::InvalidPartition(format!("mode {p} not in state")));
        }
        if part[i + 1..].contains(p) {
            return Err(Error::InvalidPartition(format!("mode {p} listed twice")));
        }
    }
    let rest: Vec<Flavor> = rho.labels().iter().copied().filter(|l| !part.contains(l)).collect();
    if rest.is_empty() {
        return Err(Error::InvalidPartition("part covers every mode".into()));
    }
    Ok(rest)
}

/// `S(ρ_part)`; the full state when `part` lists every mode.
pub fn entropy_of_subsystem(rho: &DensityMatrix, part: &[Flavor]) -> Result<f64> {
    if part.len() == rho.n_modes() && part.iter().all(|p| rho.position(*p).is_some()) {
        return vn_entropy(rho);
    }
    vn_entropy(&rho.partial_trace(part)?)
}

/// `I_{part:rest} = S(ρ_part) + S(ρ_rest) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix, part: &[Flavor]) -> Result<f64> {
    let rest = split(rho, part)?;
    Ok(vn_entropy(&rho.partial_trace(part)?)? + vn_entropy(&rho.partial_trace(&rest)?)? - vn_entropy(rho)?)
}

/// `S_{part|rest} = S(ρ) − S(ρ_rest)`.
pub fn conditional_ignorance(rho: &DensityMatrix, part: &[Flavor]) -> Result<f64> {
    let rest = split(rho, part)?;
    Ok(vn_entropy(rho)? - vn_entropy(&rho.partial_trace(&rest)?)?)
}

/// Sum of the two non-local terms of the mixed-state relation,
/// `I_{part:rest} + S_{part|rest}`, taken here as the discord of `part` versus
/// the rest. No optimization over local measurements is involved.
pub fn discord_sum(rho: &DensityMatrix, part: &[Flavor]) -> Result<f64> {
    Ok(mutual_information(rho, part)? + conditional_ignorance(rho, part)?)
}

/// Bipartite non-local coherence between the modes `a` and the remaining modes:
///
/// `Σ_{i≠k, j≠l} |ρ_{ij,kl}|² − 2 Σ_{i≠k, j<l} Re(ρ_{ij,kj} ρ*_{il,kl})`.
pub fn nonlocal_coherence_hs(rho: &DensityMatrix, a: &[Flavor]) -> Result<f64> {
    let rest = split(rho, a)?;
    let a_labels: Vec<Flavor> = rho.labels().iter().copied().filter(|l| a.contains(l)).collect();
    let order: Vec<Flavor> = a_labels.iter().chain(rest.iter()).copied().collect();
    let r = rho.reorder(&order)?;
    let da = 1usize << a_labels.len();
    let db = 1usize << rest.len();
    let at = |i: usize, j: usize, k: usize, l: usize| r.get(i * db + j, k * db + l);

    let mut s = 0.0;
    for i in 0..da {
        for k in 0..da {
            if i == k {
                continue;
            }
            for j in 0..db {
                for l in 0..db {
                    if j != l {
                        s += at(i, j, k, l).norm_sqr();
                    }
                    if j < l {
                        s -= 2.0 * (at(i, j, k, j) * at(i, l, k, l).conj()).re;
                    }
                }
            }
        }
    }
    Ok(s)
}

/// `C^{nl}_hs(ρ_{A|B})` for a two-mode state with `A` its first mode.
pub fn nonlocal_coherence_hs_bipartite(rho_ab: &DensityMatrix) -> Result<f64> {
    if rho_ab.n_modes() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "bipartite coherence needs 2 modes, got {}",
            rho_ab.n_modes()
        )));
    }
    nonlocal_coherence_hs(rho_ab, &rho_ab.labels()[..1])
}

/// `C^{nl}_hs(ρ_{A|BC})` for a three-mode state with `A = single`, evaluated
/// through the three restricted index sums over the `(B, C)` pair.
pub fn nonlocal_coherence_hs_tripartite(rho_abc: &DensityMatrix, single: Flavor) -> Result<f64> {
    if rho_abc.n_modes() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "tripartite coherence needs 3 modes, got {}",
            rho_abc.n_modes()
        )));
    }
    let rest = split(rho_abc, &[single])?;
    let r = rho_abc.reorder(&[single, rest[0], rest[1]])?;
    let at = |i: usize, j: usize, k: usize, l: usize, m: usize, n: usize| -> Complex64 {
        r.get(4 * i + 2 * j + k, 4 * l + 2 * m + n)
    };

    let mut sq = 0.0;
    let mut cross = 0.0;
    for i in 0..2 {
        for l in 0..2 {
            if i == l {
                continue;
            }
            for j in 0..2 {
                for k in 0..2 {
                    for m in 0..2 {
                        for n in 0..2 {
                            let squares = (j != m && k != n) || (j == m && k != n) || (j != m && k == n);
                            if squares {
                                sq += at(i, j, k, l, m, n).norm_sqr();
                            }
                            let crosses = (j == m && k < n) || (j < m && k == n) || (j < m && k != n);
                            if crosses {
                                cross += (at(i, j, k, l, j, k) * at(i, m, n, l, m, n).conj()).re;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sq - 2.0 * cross)
}
