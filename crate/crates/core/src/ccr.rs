//! Complete complementarity budgets, residual correlations and the genuine
//! tripartite quantifiers.
//!
//! Every budget is evaluated on the full three-mode state and carries its own
//! closure error; enforcing a bound is left to the caller.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Flavor;
use crate::qinfo::{
    coherence_hs, conditional_ignorance, discord_sum, entropy_of_subsystem, mutual_information, predictability_hs,
    predictability_vn, relative_entropy_coherence, vn_entropy, DensityMatrix,
};

/// Purity deficit `1 − Tr ρ²` above which a state is not accepted as pure.
pub const PURITY_TOL: f64 = 1e-10;

/// Largest tolerated gap between the two genuine-entanglement routes.
pub const ROUTE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    /// `P_hs(ρ_x) + C_hs(ρ_x) + C_hs(ρ_xy) + C_hs(ρ_xz) = ½`.
    PureHsSingle,
    /// `C_re(ρ_x) + P_vn(ρ_x) + S(ρ_x) = 1`.
    PureVnSingle,
    /// `C_re(ρ_xy) + P_vn(ρ_xy) + S(ρ_xy) = 2`.
    PureVnBipart,
    /// `P_vn(ρ_x) + C_re(ρ_x) + S^R + S(ρ_xy) + S(ρ_xz) = 1`.
    PureResidual,
    /// `P_vn(ρ_xy) + C_re(ρ_xy) + S_{xy|z} + I_{xy:z} = 2`.
    MixedBipart,
    /// `P_vn(ρ_x) + C_re(ρ_x) + S_{x|yz} + I_{x:yz} = 1`.
    MixedSingle,
    /// `P_vn(ρ_x) + C_re(ρ_x) + QD^R + QD(ρ_xy) + QD(ρ_xz) = 1`.
    MixedResidual,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::PureHsSingle,
        IdentityId::PureVnSingle,
        IdentityId::PureVnBipart,
        IdentityId::PureResidual,
        IdentityId::MixedBipart,
        IdentityId::MixedSingle,
        IdentityId::MixedResidual,
    ];

    pub fn code(self) -> &'static str {
        match self {
            IdentityId::PureHsSingle => "PURE_HS_SINGLE",
            IdentityId::PureVnSingle => "PURE_VN_SINGLE",
            IdentityId::PureVnBipart => "PURE_VN_BIPART",
            IdentityId::PureResidual => "PURE_RESIDUAL",
            IdentityId::MixedBipart => "MIXED_BIPART",
            IdentityId::MixedSingle => "MIXED_SINGLE",
            IdentityId::MixedResidual => "MIXED_RESIDUAL",
        }
    }

    pub fn target(self) -> f64 {
        match self {
            IdentityId::PureHsSingle => 0.5,
            IdentityId::PureVnBipart | IdentityId::MixedBipart => 2.0,
            _ => 1.0,
        }
    }

    /// Whether the identity only holds for pure states.
    pub fn requires_pure(self) -> bool {
        matches!(
            self,
            IdentityId::PureHsSingle | IdentityId::PureVnSingle | IdentityId::PureVnBipart | IdentityId::PureResidual
        )
    }

    /// Whether the identity is stated for one mode (otherwise for a pair).
    pub fn is_single(self) -> bool {
        !matches!(self, IdentityId::PureVnBipart | IdentityId::MixedBipart)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Named additive terms of one complementarity identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcrBudget {
    pub identity: IdentityId,
    pub subsystem: Vec<Flavor>,
    pub terms: Vec<(String, f64)>,
    pub target: f64,
    pub closure_error: f64,
}

impl CcrBudget {
    fn new(identity: IdentityId, subsystem: Vec<Flavor>, terms: Vec<(String, f64)>) -> Self {
        let target = identity.target();
        let sum: f64 = terms.iter().map(|(_, v)| v).sum();
        CcrBudget {
            identity,
            subsystem,
            terms,
            target,
            closure_error: (sum - target).abs(),
        }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn values(&self) -> Vec<f64> {
        self.terms.iter().map(|(_, v)| *v).collect()
    }
}

fn require_three_modes(rho: &DensityMatrix) -> Result<()> {
    if rho.n_modes() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "complementarity budgets need the three-mode state, got {} modes",
            rho.n_modes()
        )));
    }
    Ok(())
}

fn require_pure(rho: &DensityMatrix) -> Result<()> {
    require_three_modes(rho)?;
    let deficit = 1.0 - rho.purity();
    if deficit.abs() > PURITY_TOL {
        return Err(Error::arg(
            "rho",
            format!("identity requires a pure state (1 - Tr ρ² = {deficit:e})"),
        ));
    }
    Ok(())
}

fn pair_ok(x: Flavor, y: Flavor) -> Result<()> {
    if x == y {
        return Err(Error::InvalidPartition(format!("pair ({x}, {x}) repeats a mode")));
    }
    Ok(())
}

fn name1(f: Flavor) -> String {
    f.tag().to_string()
}

fn name2(x: Flavor, y: Flavor) -> String {
    format!("{}{}", x.tag(), y.tag())
}

/// Hilbert-Schmidt budget of one mode with the non-local part split over the
/// two pairs it belongs to.
pub fn budget_pure_hs_single(rho: &DensityMatrix, single: Flavor) -> Result<CcrBudget> {
    require_pure(rho)?;
    let [y, z] = single.others();
    let r1 = rho.partial_trace(&[single])?;
    let terms = vec![
        (format!("P_hs({})", name1(single)), predictability_hs(&r1)),
        (format!("C_hs({})", name1(single)), coherence_hs(&r1)),
        (
            format!("C_hs({})", name2(single, y)),
            coherence_hs(&rho.partial_trace(&[single, y])?),
        ),
        (
            format!("C_hs({})", name2(single, z)),
            coherence_hs(&rho.partial_trace(&[single, z])?),
        ),
    ];
    Ok(CcrBudget::new(IdentityId::PureHsSingle, vec![single], terms))
}

fn entropic_local(id: IdentityId, rho: &DensityMatrix, part: &[Flavor], label: &str) -> Result<CcrBudget> {
    let r = rho.partial_trace(part)?;
    let terms = vec![
        (format!("C_re({label})"), relative_entropy_coherence(&r)?),
        (format!("P_vn({label})"), predictability_vn(&r)?),
        (format!("S_vn({label})"), vn_entropy(&r)?),
    ];
    Ok(CcrBudget::new(id, part.to_vec(), terms))
}

/// Entropic budget of one mode of a pure state.
pub fn budget_pure_vn_single(rho: &DensityMatrix, single: Flavor) -> Result<CcrBudget> {
    require_pure(rho)?;
    entropic_local(IdentityId::PureVnSingle, rho, &[single], &name1(single))
}

/// Entropic budget of a pair of modes of a pure state.
pub fn budget_pure_vn_bipartite(rho: &DensityMatrix, pair: (Flavor, Flavor)) -> Result<CcrBudget> {
    require_pure(rho)?;
    pair_ok(pair.0, pair.1)?;
    entropic_local(IdentityId::PureVnBipart, rho, &[pair.0, pair.1], &name2(pair.0, pair.1))
}

/// `S^R(ρ_x) = S(ρ_{x|yz}) − S(ρ_xy) − S(ρ_xz)` with `S(ρ_{x|yz}) = S(ρ_x)`.
pub fn residual_entropy(rho: &DensityMatrix, single: Flavor) -> Result<f64> {
    require_three_modes(rho)?;
    let [y, z] = single.others();
    Ok(entropy_of_subsystem(rho, &[single])?
        - entropy_of_subsystem(rho, &[single, y])?
        - entropy_of_subsystem(rho, &[single, z])?)
}

/// Entropic budget of one mode with its entanglement split into the residual
/// and the two pair entropies.
pub fn budget_pure_residual(rho: &DensityMatrix, single: Flavor) -> Result<CcrBudget> {
    require_pure(rho)?;
    let [y, z] = single.others();
    let r1 = rho.partial_trace(&[single])?;
    let s = name1(single);
    let terms = vec![
        (format!("P_vn({s})"), predictability_vn(&r1)?),
        (format!("C_re({s})"), relative_entropy_coherence(&r1)?),
        (format!("S_R({s})"), residual_entropy(rho, single)?),
        (
            format!("S_vn({})", name2(single, y)),
            entropy_of_subsystem(rho, &[single, y])?,
        ),
        (
            format!("S_vn({})", name2(single, z)),
            entropy_of_subsystem(rho, &[single, z])?,
        ),
    ];
    Ok(CcrBudget::new(IdentityId::PureResidual, vec![single], terms))
}

fn mixed_local(id: IdentityId, rho: &DensityMatrix, part: &[Flavor], label: &str) -> Result<CcrBudget> {
    require_three_modes(rho)?;
    let r = rho.partial_trace(part)?;
    let rest: String = rho
        .labels()
        .iter()
        .filter(|l| !part.contains(l))
        .map(|l| l.tag())
        .collect();
    let terms = vec![
        (format!("P_vn({label})"), predictability_vn(&r)?),
        (format!("C_re({label})"), relative_entropy_coherence(&r)?),
        (format!("S_cond({label}|{rest})"), conditional_ignorance(rho, part)?),
        (format!("I({label}:{rest})"), mutual_information(rho, part)?),
    ];
    Ok(CcrBudget::new(id, part.to_vec(), terms))
}

/// Mixed-state budget of a pair against the third mode.
pub fn budget_mixed_bipartite(rho: &DensityMatrix, pair: (Flavor, Flavor)) -> Result<CcrBudget> {
    pair_ok(pair.0, pair.1)?;
    mixed_local(IdentityId::MixedBipart, rho, &[pair.0, pair.1], &name2(pair.0, pair.1))
}

/// Mixed-state budget of one mode against the other two.
pub fn budget_mixed_single(rho: &DensityMatrix, single: Flavor) -> Result<CcrBudget> {
    mixed_local(IdentityId::MixedSingle, rho, &[single], &name1(single))
}

/// `QD^R(ρ_x) = QD(ρ_{x|yz}) − QD(ρ_xy) − QD(ρ_xz)`.
pub fn residual_discord(rho: &DensityMatrix, single: Flavor) -> Result<f64> {
    require_three_modes(rho)?;
    let [y, z] = single.others();
    Ok(discord_sum(rho, &[single])? - discord_sum(rho, &[single, y])? - discord_sum(rho, &[single, z])?)
}

/// Mixed-state budget of one mode with the discord split into the residual
/// and the two pair discords.
pub fn budget_mixed_residual(rho: &DensityMatrix, single: Flavor) -> Result<CcrBudget> {
    require_three_modes(rho)?;
    let [y, z] = single.others();
    let r1 = rho.partial_trace(&[single])?;
    let s = name1(single);
    let terms = vec![
        (format!("P_vn({s})"), predictability_vn(&r1)?),
        (format!("C_re({s})"), relative_entropy_coherence(&r1)?),
        (format!("QD_R({s})"), residual_discord(rho, single)?),
        (format!("QD({})", name2(single, y)), discord_sum(rho, &[single, y])?),
        (format!("QD({})", name2(single, z)), discord_sum(rho, &[single, z])?),
    ];
    Ok(CcrBudget::new(IdentityId::MixedResidual, vec![single], terms))
}

/// Dispatches to the budget for `id`; `modes` holds one flavor for the
/// single-mode identities and two for the pair identities.
pub fn budget(id: IdentityId, rho: &DensityMatrix, modes: &[Flavor]) -> Result<CcrBudget> {
    let want = if id.is_single() { 1 } else { 2 };
    if modes.len() != want {
        return Err(Error::InvalidPartition(format!(
            "{id} needs {want} mode(s), got {}",
            modes.len()
        )));
    }
    match id {
        IdentityId::PureHsSingle => budget_pure_hs_single(rho, modes[0]),
        IdentityId::PureVnSingle => budget_pure_vn_single(rho, modes[0]),
        IdentityId::PureVnBipart => budget_pure_vn_bipartite(rho, (modes[0], modes[1])),
        IdentityId::PureResidual => budget_pure_residual(rho, modes[0]),
        IdentityId::MixedBipart => budget_mixed_bipartite(rho, (modes[0], modes[1])),
        IdentityId::MixedSingle => budget_mixed_single(rho, modes[0]),
        IdentityId::MixedResidual => budget_mixed_residual(rho, modes[0]),
    }
}

/// Both evaluations of the genuine tripartite entanglement of a pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenuineRoutes {
    /// Average of the three residual entropies.
    pub residual_route: f64,
    /// `⅓ Σ_x (S_xyz − S_yz)`.
    pub entropy_route: f64,
}

impl GenuineRoutes {
    pub fn gap(&self) -> f64 {
        (self.residual_route - self.entropy_route).abs()
    }
}

pub fn genuine_entanglement_routes(rho: &DensityMatrix) -> Result<GenuineRoutes> {
    require_pure(rho)?;
    let mut residual = 0.0;
    let mut bipartitions = 0.0;
    let s_full = vn_entropy(rho)?;
    for x in Flavor::ALL {
        residual += residual_entropy(rho, x)?;
        bipartitions += s_full - entropy_of_subsystem(rho, &x.others())?;
    }
    Ok(GenuineRoutes {
        residual_route: residual / 3.0,
        entropy_route: bipartitions / 3.0,
    })
}

/// `S^G`, checked against the bipartition-average route.
pub fn genuine_tripartite_entanglement(rho: &DensityMatrix) -> Result<f64> {
    let r = genuine_entanglement_routes(rho)?;
    if r.gap() > ROUTE_TOL {
        return Err(Error::RouteDisagreement {
            residual_route: r.residual_route,
            entropy_route: r.entropy_route,
        });
    }
    Ok(r.residual_route)
}

/// `QD^G = ⅓ Σ_x QD^R(ρ_x)`.
pub fn genuine_tripartite_discord(rho: &DensityMatrix) -> Result<f64> {
    let mut s = 0.0;
    for x in Flavor::ALL {
        s += residual_discord(rho, x)?;
    }
    Ok(s / 3.0)
}
