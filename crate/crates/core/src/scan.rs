//! Grid scans: request validation, the quantity registry and evaluation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::ccr::{self, IdentityId};
use crate::error::{Error, Result};
use crate::params::{Flavor, OscillationParams};
use crate::planewave::{evolve_amplitudes, pure_density_matrix};
use crate::qinfo::{
    coherence_hs, conditional_ignorance, discord_sum, entropy_of_subsystem, mutual_information,
    nonlocal_coherence_hs_tripartite, predictability_hs, predictability_vn, relative_entropy_coherence, DensityMatrix,
};
use crate::wavepacket::{flavor_coefficients, mixed_density_matrix, WavePacketConfig};

pub const DEFAULT_POINTS: usize = 2000;
pub const DEFAULT_PLANE_RANGE: (f64, f64) = (0.0, 2e4);
pub const DEFAULT_WAVEPACKET_RANGE: (f64, f64) = (0.0, 5e5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Pure states; the axis is L/E in km/GeV.
    Plane,
    /// Mixed states; the axis is the distance x in km.
    WavePacket,
}

impl Model {
    pub fn axis_name(self) -> &'static str {
        match self {
            Model::Plane => "L/E [km/GeV]",
            Model::WavePacket => "x [km]",
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            Model::Plane => DEFAULT_PLANE_RANGE,
            Model::WavePacket => DEFAULT_WAVEPACKET_RANGE,
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plane" | "planewave" | "plane-wave" => Ok(Model::Plane),
            "wavepacket" | "wave-packet" | "wp" => Ok(Model::WavePacket),
            other => Err(Error::arg(
                "model",
                format!("unknown model `{other}` (plane | wavepacket)"),
            )),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Plane => "plane",
            Model::WavePacket => "wavepacket",
        })
    }
}

/// A set of modes: one flavor, a pair, or all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Single(Flavor),
    Pair(Flavor, Flavor),
    All,
}

impl Part {
    pub fn flavors(self) -> Vec<Flavor> {
        match self {
            Part::Single(f) => vec![f],
            Part::Pair(a, b) => vec![a, b],
            Part::All => Flavor::ALL.to_vec(),
        }
    }

    pub fn tag(self) -> String {
        self.flavors().iter().map(|f| f.tag()).collect()
    }

    pub const PAIRS: [(Flavor, Flavor); 3] = [
        (Flavor::E, Flavor::Mu),
        (Flavor::E, Flavor::Tau),
        (Flavor::Mu, Flavor::Tau),
    ];

    fn parse(tag: &str) -> Option<Part> {
        for f in Flavor::ALL {
            if tag == f.tag() {
                return Some(Part::Single(f));
            }
        }
        for (a, b) in Part::PAIRS {
            if tag == format!("{}{}", a.tag(), b.tag()) {
                return Some(Part::Pair(a, b));
            }
        }
        (tag == "emutau").then_some(Part::All)
    }
}

/// Every quantity a scan can emit. Identifiers are stable CSV column names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `Prob_<f>`: transition probability into flavor `f`.
    Prob(Flavor),
    /// `purity`: `Tr ρ²` of the three-mode state.
    Purity,
    /// `P_hs_<f>`.
    PredictabilityHs(Flavor),
    /// `C_hs_<f>` or `C_hs_<pair>`.
    CoherenceHs(Part),
    /// `C_nl_<f>`: non-local coherence of `f` against the other two modes.
    NonlocalCoherence(Flavor),
    /// `P_vn_<f|pair>`.
    PredictabilityVn(Part),
    /// `C_re_<f|pair>`.
    CoherenceRe(Part),
    /// `S_vn_<f|pair|emutau>`.
    Entropy(Part),
    /// `I_<f|pair>`: mutual information with the complement.
    MutualInfo(Part),
    /// `S_cond_<f|pair>`: conditional entropy given the complement.
    Conditional(Part),
    /// `QD_<f|pair>`: discord against the complement.
    Discord(Part),
    /// `S_R_<f>`.
    ResidualEntropy(Flavor),
    /// `QD_R_<f>`.
    ResidualDiscord(Flavor),
    /// `S_G`.
    GenuineEntropy,
    /// `QD_G`.
    GenuineDiscord,
    /// `CCR_<kind>_<f|pair>_err`: closure error of a budget.
    Closure(IdentityId, Part),
}

fn closure_kind(id: IdentityId) -> &'static str {
    match id {
        IdentityId::PureHsSingle => "hs",
        IdentityId::PureVnSingle | IdentityId::PureVnBipart => "vn",
        IdentityId::PureResidual => "res",
        IdentityId::MixedSingle | IdentityId::MixedBipart => "mix",
        IdentityId::MixedResidual => "mixres",
    }
}

impl Quantity {
    pub fn id(&self) -> String {
        match *self {
            Quantity::Prob(f) => format!("Prob_{}", f.tag()),
            Quantity::Purity => "purity".into(),
            Quantity::PredictabilityHs(f) => format!("P_hs_{}", f.tag()),
            Quantity::CoherenceHs(p) => format!("C_hs_{}", p.tag()),
            Quantity::NonlocalCoherence(f) => format!("C_nl_{}", f.tag()),
            Quantity::PredictabilityVn(p) => format!("P_vn_{}", p.tag()),
            Quantity::CoherenceRe(p) => format!("C_re_{}", p.tag()),
            Quantity::Entropy(p) => format!("S_vn_{}", p.tag()),
            Quantity::MutualInfo(p) => format!("I_{}", p.tag()),
            Quantity::Conditional(p) => format!("S_cond_{}", p.tag()),
            Quantity::Discord(p) => format!("QD_{}", p.tag()),
            Quantity::ResidualEntropy(f) => format!("S_R_{}", f.tag()),
            Quantity::ResidualDiscord(f) => format!("QD_R_{}", f.tag()),
            Quantity::GenuineEntropy => "S_G".into(),
            Quantity::GenuineDiscord => "QD_G".into(),
            Quantity::Closure(id, p) => format!("CCR_{}_{}_err", closure_kind(id), p.tag()),
        }
    }

    /// Whether the quantity is only defined (or only meaningful) for pure states.
    pub fn requires_pure(&self) -> bool {
        match self {
            Quantity::GenuineEntropy => true,
            Quantity::Closure(id, _) => id.requires_pure(),
            _ => false,
        }
    }

    /// Every identifier the registry knows, in a fixed order.
    pub fn registry() -> Vec<Quantity> {
        let singles = Flavor::ALL.map(Part::Single);
        let pairs = Part::PAIRS.map(|(a, b)| Part::Pair(a, b));
        let both: Vec<Part> = singles.iter().chain(pairs.iter()).copied().collect();
        let mut out = Vec::new();
        out.extend(Flavor::ALL.map(Quantity::Prob));
        out.push(Quantity::Purity);
        out.extend(Flavor::ALL.map(Quantity::PredictabilityHs));
        out.extend(both.iter().map(|&p| Quantity::CoherenceHs(p)));
        out.extend(Flavor::ALL.map(Quantity::NonlocalCoherence));
        out.extend(both.iter().map(|&p| Quantity::PredictabilityVn(p)));
        out.extend(both.iter().map(|&p| Quantity::CoherenceRe(p)));
        out.extend(both.iter().map(|&p| Quantity::Entropy(p)));
        out.push(Quantity::Entropy(Part::All));
        out.extend(both.iter().map(|&p| Quantity::MutualInfo(p)));
        out.extend(both.iter().map(|&p| Quantity::Conditional(p)));
        out.extend(both.iter().map(|&p| Quantity::Discord(p)));
        out.extend(Flavor::ALL.map(Quantity::ResidualEntropy));
        out.extend(Flavor::ALL.map(Quantity::ResidualDiscord));
        out.push(Quantity::GenuineEntropy);
        out.push(Quantity::GenuineDiscord);
        for id in IdentityId::ALL {
            let parts: &[Part] = if id.is_single() { &singles } else { &pairs };
            out.extend(parts.iter().map(|&p| Quantity::Closure(id, p)));
        }
        out
    }

    /// Evaluates the quantity on a three-mode state.
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<f64> {
        match *self {
            Quantity::Prob(f) => {
                let i = f.basis_index();
                Ok(rho.get(i, i).re)
            }
            Quantity::Purity => Ok(rho.purity()),
            Quantity::PredictabilityHs(f) => Ok(predictability_hs(&rho.partial_trace(&[f])?)),
            Quantity::CoherenceHs(p) => Ok(coherence_hs(&rho.partial_trace(&p.flavors())?)),
            Quantity::NonlocalCoherence(f) => nonlocal_coherence_hs_tripartite(rho, f),
            Quantity::PredictabilityVn(p) => predictability_vn(&rho.partial_trace(&p.flavors())?),
            Quantity::CoherenceRe(p) => relative_entropy_coherence(&rho.partial_trace(&p.flavors())?),
            Quantity::Entropy(p) => entropy_of_subsystem(rho, &p.flavors()),
            Quantity::MutualInfo(p) => mutual_information(rho, &p.flavors()),
            Quantity::Conditional(p) => conditional_ignorance(rho, &p.flavors()),
            Quantity::Discord(p) => discord_sum(rho, &p.flavors()),
            Quantity::ResidualEntropy(f) => ccr::residual_entropy(rho, f),
            Quantity::ResidualDiscord(f) => ccr::residual_discord(rho, f),
            Quantity::GenuineEntropy => ccr::genuine_tripartite_entanglement(rho),
            Quantity::GenuineDiscord => ccr::genuine_tripartite_discord(rho),
            Quantity::Closure(id, p) => Ok(ccr::budget(id, rho, &p.flavors())?.closure_error),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::arg("quantities", format!("unknown quantity `{s}`"));
        match s {
            "purity" => return Ok(Quantity::Purity),
            "S_G" => return Ok(Quantity::GenuineEntropy),
            "QD_G" => return Ok(Quantity::GenuineDiscord),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("CCR_").and_then(|r| r.strip_suffix("_err")) {
            let (kind, tag) = rest.split_once('_').ok_or_else(unknown)?;
            let part = Part::parse(tag).ok_or_else(unknown)?;
            let single = matches!(part, Part::Single(_));
            let id = match (kind, single) {
                ("hs", true) => IdentityId::PureHsSingle,
                ("vn", true) => IdentityId::PureVnSingle,
                ("vn", false) => IdentityId::PureVnBipart,
                ("res", true) => IdentityId::PureResidual,
                ("mix", true) => IdentityId::MixedSingle,
                ("mix", false) => IdentityId::MixedBipart,
                ("mixres", true) => IdentityId::MixedResidual,
                _ => return Err(unknown()),
            };
            if part == Part::All {
                return Err(unknown());
            }
            return Ok(Quantity::Closure(id, part));
        }
        type Ctor = fn(Part) -> Option<Quantity>;
        fn single(p: Part) -> Option<Flavor> {
            match p {
                Part::Single(f) => Some(f),
                _ => None,
            }
        }
        let table: [(&str, Ctor); 12] = [
            ("Prob_", |p| single(p).map(Quantity::Prob)),
            ("P_hs_", |p| single(p).map(Quantity::PredictabilityHs)),
            ("C_hs_", |p| (p != Part::All).then_some(Quantity::CoherenceHs(p))),
            ("C_nl_", |p| single(p).map(Quantity::NonlocalCoherence)),
            ("P_vn_", |p| (p != Part::All).then_some(Quantity::PredictabilityVn(p))),
            ("C_re_", |p| (p != Part::All).then_some(Quantity::CoherenceRe(p))),
            ("S_vn_", |p| Some(Quantity::Entropy(p))),
            ("S_cond_", |p| (p != Part::All).then_some(Quantity::Conditional(p))),
            ("S_R_", |p| single(p).map(Quantity::ResidualEntropy)),
            ("QD_R_", |p| single(p).map(Quantity::ResidualDiscord)),
            ("QD_", |p| (p != Part::All).then_some(Quantity::Discord(p))),
            ("I_", |p| (p != Part::All).then_some(Quantity::MutualInfo(p))),
        ];
        for (prefix, ctor) in table.iter() {
            if let Some(tag) = s.strip_prefix(prefix) {
                if let Some(q) = Part::parse(tag).and_then(ctor) {
                    return Ok(q);
                }
            }
        }
        Err(unknown())
    }
}

/// Parses a comma-separated list of identifiers.
pub fn parse_quantities(list: &str) -> Result<Vec<Quantity>> {
    let out: Vec<Quantity> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::arg("quantities", "empty list"));
    }
    Ok(out)
}

/// The quantities emitted when none are requested.
pub fn default_quantities(model: Model, alpha: Flavor) -> Vec<Quantity> {
    let [y, z] = alpha.others();
    let mut q: Vec<Quantity> = Flavor::ALL.map(Quantity::Prob).to_vec();
    match model {
        Model::Plane => {
            q.push(Quantity::PredictabilityHs(alpha));
            q.push(Quantity::CoherenceHs(pair_of(alpha, y)));
            q.push(Quantity::CoherenceHs(pair_of(alpha, z)));
            q.push(Quantity::GenuineEntropy);
        }
        Model::WavePacket => {
            q.extend(Flavor::ALL.map(Quantity::ResidualDiscord));
            q.push(Quantity::GenuineDiscord);
            q.push(Quantity::Purity);
        }
    }
    q
}

/// The pair `{a, b}` in canonical order.
pub fn pair_of(a: Flavor, b: Flavor) -> Part {
    if a.index() < b.index() {
        Part::Pair(a, b)
    } else {
        Part::Pair(b, a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub model: Model,
    pub initial_flavor: Flavor,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub quantities: Vec<Quantity>,
    pub params: OscillationParams,
    /// Required for the wave-packet model; its `params` are replaced by `params`.
    pub wp: Option<WavePacketConfig>,
}

impl ScanRequest {
    /// Default grid and quantities for a model.
    pub fn new(model: Model, initial_flavor: Flavor) -> Self {
        let (start, stop) = model.default_range();
        let params = OscillationParams::default();
        ScanRequest {
            model,
            initial_flavor,
            start,
            stop,
            points: DEFAULT_POINTS,
            quantities: default_quantities(model, initial_flavor),
            params,
            wp: (model == Model::WavePacket).then(WavePacketConfig::default),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.start >= 0.0) {
            return Err(Error::arg(
                "from",
                format!("must be finite and >= 0, got {}", self.start),
            ));
        }
        if !(self.stop.is_finite() && self.stop > self.start) {
            return Err(Error::arg(
                "to",
                format!("must be finite and > from, got {}", self.stop),
            ));
        }
        if self.points < 2 {
            return Err(Error::arg("points", format!("need at least 2, got {}", self.points)));
        }
        if self.quantities.is_empty() {
            return Err(Error::arg("quantities", "empty list"));
        }
        self.params.validate()?;
        match (self.model, &self.wp) {
            (Model::WavePacket, None) => {
                return Err(Error::arg("wp", "wave-packet model needs a wave-packet configuration"))
            }
            (Model::Plane, Some(_)) => {
                return Err(Error::arg("wp", "plane-wave model takes no wave-packet configuration"))
            }
            (Model::WavePacket, Some(wp)) => wp.validate()?,
            _ => {}
        }
        if self.model == Model::WavePacket {
            if let Some(q) = self.quantities.iter().find(|q| q.requires_pure()) {
                return Err(Error::arg(
                    "quantities",
                    format!("`{q}` is only defined for the plane model"),
                ));
            }
        }
        Ok(())
    }

    /// Evenly spaced grid from `start` to `stop` inclusive.
    pub fn axis_values(&self) -> Vec<f64> {
        let n = self.points;
        let step = (self.stop - self.start) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    fn wave_packet(&self) -> Option<WavePacketConfig> {
        self.wp.map(|mut w| {
            w.params = self.params;
            w
        })
    }

    /// The three-mode state at one axis value.
    pub fn state_at(&self, axis: f64) -> Result<DensityMatrix> {
        match self.model {
            Model::Plane => pure_density_matrix(&evolve_amplitudes(self.initial_flavor, &self.params, axis)?),
            Model::WavePacket => {
                let wp = self
                    .wave_packet()
                    .ok_or_else(|| Error::arg("wp", "wave-packet model needs a wave-packet configuration"))?;
                mixed_density_matrix(&flavor_coefficients(self.initial_flavor, axis, &wp)?)
            }
        }
    }

    pub fn header(&self) -> Vec<String> {
        self.quantities.iter().map(Quantity::id).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub axis: f64,
    pub values: Vec<f64>,
}

/// Result of a scan: column names (without the axis) and rows in axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub columns: Vec<String>,
    pub rows: Vec<ScanRow>,
}

fn evaluate_row(req: &ScanRequest, axis: f64) -> Result<ScanRow> {
    let rho = req.state_at(axis)?;
    let mut values = Vec::with_capacity(req.quantities.len());
    for q in &req.quantities {
        let v = q.evaluate(&rho)?;
        if !v.is_finite() {
            return Err(Error::arg("quantities", format!("`{q}` evaluated to {v}")));
        }
        values.push(v);
    }
    Ok(ScanRow { axis, values })
}

/// Evaluates every requested quantity over the grid, points in parallel.
pub fn run_scan(req: &ScanRequest) -> Result<ScanTable> {
    run_scan_with(req, true)
}

/// As [`run_scan`], optionally on the calling thread only. Both produce identical tables.
pub fn run_scan_with(req: &ScanRequest, parallel: bool) -> Result<ScanTable> {
    req.validate()?;
    let axis = req.axis_values();
    let eval = |&x: &f64| evaluate_row(req, x).map_err(|e| e.at(x));
    let rows: Vec<ScanRow> = if parallel {
        axis.par_iter().map(eval).collect::<Result<_>>()?
    } else {
        axis.iter().map(eval).collect::<Result<_>>()?
    };
    Ok(ScanTable {
        columns: req.header(),
        rows,
    })
}
