//! Grid audit of every applicable identity and invariant.

use std::fmt;

use rayon::prelude::*;

use crate::ccr::{self, IdentityId};
use crate::error::Result;
use crate::params::Flavor;
use crate::qinfo::{nonlocal_coherence_hs_bipartite, nonlocal_coherence_hs_tripartite, DensityMatrix};
use crate::scan::{Model, Part, ScanRequest};

pub const CLOSURE_BOUND: f64 = 1e-9;
pub const ADDITIVITY_BOUND: f64 = 1e-10;
pub const PERMUTATION_BOUND: f64 = 1e-12;
pub const ROUTE_BOUND: f64 = 1e-10;
pub const PROBABILITY_BOUND: f64 = 1e-10;
pub const PURITY_BOUND: f64 = 1e-12;
pub const MONOTONE_SLACK: f64 = 1e-12;

/// All six relabelings of `(e, μ, τ)`.
pub const PERMUTATIONS: [[Flavor; 3]; 6] = {
    use Flavor::*;
    [
        [E, Mu, Tau],
        [E, Tau, Mu],
        [Mu, E, Tau],
        [Mu, Tau, E],
        [Tau, E, Mu],
        [Tau, Mu, E],
    ]
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub bound: f64,
    /// Largest violation measure over the points that could be evaluated.
    pub worst: f64,
    /// Axis value of `worst`; `NaN` if nothing was evaluated.
    pub worst_axis: f64,
    /// Diagnostic of the first failed evaluation in axis order, if any.
    pub error: Option<String>,
    pub evaluated: usize,
}

impl CheckResult {
    fn new(name: impl Into<String>, bound: f64) -> Self {
        CheckResult {
            name: name.into(),
            bound,
            worst: 0.0,
            worst_axis: f64::NAN,
            error: None,
            evaluated: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.worst <= self.bound
    }

    fn record(&mut self, axis: f64, value: f64) {
        self.evaluated += 1;
        if self.worst_axis.is_nan() || value > self.worst {
            self.worst = value;
            self.worst_axis = axis;
        }
    }

    fn fail(&mut self, axis: f64, msg: String) {
        self.evaluated += 1;
        if self.error.is_none() {
            self.error = Some(format!("at axis {axis}: {msg}"));
        }
    }

    fn merge(&mut self, other: CheckResult) {
        if self.error.is_none() {
            self.error = other.error;
        }
        if !other.worst_axis.is_nan() && (self.worst_axis.is_nan() || other.worst > self.worst) {
            self.worst = other.worst;
            self.worst_axis = other.worst_axis;
        }
        self.evaluated += other.evaluated;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub model: Model,
    pub initial_flavor: Flavor,
    pub points: usize,
    pub checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest closure error over all budget checks.
    pub fn max_closure_error(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("closure "))
            .map(|c| c.worst)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "audit: model={} flavor={} points={}",
            self.model,
            self.initial_flavor.tag(),
            self.points
        )?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(
                f,
                "{status}  {:<34} worst={:<12.3e} bound={:<8.0e} at axis={}",
                c.name, c.worst, c.bound, c.worst_axis
            )?;
            if let Some(e) = &c.error {
                write!(f, "  error: {e}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "max closure error: {:.3e}", self.max_closure_error())?;
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn closure_checks(model: Model) -> Vec<(IdentityId, Part)> {
    let mut out = Vec::new();
    for id in IdentityId::ALL {
        if model == Model::WavePacket && id.requires_pure() {
            continue;
        }
        if id.is_single() {
            out.extend(Flavor::ALL.map(|f| (id, Part::Single(f))));
        } else {
            out.extend(Part::PAIRS.map(|(a, b)| (id, Part::Pair(a, b))));
        }
    }
    out
}

fn check_names(model: Model) -> Vec<(String, f64)> {
    let mut names = vec![
        ("state validity".to_string(), 0.0),
        ("probability sum".to_string(), PROBABILITY_BOUND),
    ];
    for (id, part) in closure_checks(model) {
        names.push((format!("closure {} {}", id.code(), part.tag()), CLOSURE_BOUND));
    }
    names.push(("permutation QD_G".into(), PERMUTATION_BOUND));
    if model == Model::Plane {
        names.push(("purity".into(), PURITY_BOUND));
        names.push(("HS additivity".into(), ADDITIVITY_BOUND));
        names.push(("permutation S_G".into(), PERMUTATION_BOUND));
        names.push(("route agreement S_G".into(), ROUTE_BOUND));
    } else {
        names.push(("purity non-increasing".into(), MONOTONE_SLACK));
    }
    names
}

fn permutation_spread(rho: &DensityMatrix, f: fn(&DensityMatrix) -> Result<f64>) -> Result<f64> {
    let base = f(rho)?;
    let mut worst = 0.0_f64;
    for perm in PERMUTATIONS.iter().skip(1) {
        worst = worst.max((f(&rho.permute_modes(*perm)?)? - base).abs());
    }
    Ok(worst)
}

fn audit_point(model: Model, axis: f64, rho: &DensityMatrix, checks: &mut [CheckResult]) {
    let mut it = checks.iter_mut();
    let mut next = || it.next().expect("check list matches evaluation order");

    let c = next();
    match rho.check_physical() {
        Ok(()) => c.record(axis, 0.0),
        Err(e) => c.fail(axis, e.to_string()),
    }

    let psum: f64 = Flavor::ALL
        .iter()
        .map(|f| rho.get(f.basis_index(), f.basis_index()).re)
        .sum();
    next().record(axis, (psum - 1.0).abs());

    for (id, part) in closure_checks(model) {
        let c = next();
        match ccr::budget(id, rho, &part.flavors()) {
            Ok(b) => c.record(axis, b.closure_error),
            Err(e) => c.fail(axis, e.to_string()),
        }
    }

    let c = next();
    match permutation_spread(rho, ccr::genuine_tripartite_discord) {
        Ok(v) => c.record(axis, v),
        Err(e) => c.fail(axis, e.to_string()),
    }

    if model == Model::Plane {
        next().record(axis, (1.0 - rho.purity()).abs());

        let c = next();
        let additivity = || -> Result<f64> {
            let mut worst = 0.0_f64;
            for x in Flavor::ALL {
                let [y, z] = x.others();
                let whole = nonlocal_coherence_hs_tripartite(rho, x)?;
                let xy = nonlocal_coherence_hs_bipartite(&rho.partial_trace(&[x, y])?.reorder(&[x, y])?)?;
                let xz = nonlocal_coherence_hs_bipartite(&rho.partial_trace(&[x, z])?.reorder(&[x, z])?)?;
                worst = worst.max((whole - xy - xz).abs());
            }
            Ok(worst)
        };
        match additivity() {
            Ok(v) => c.record(axis, v),
            Err(e) => c.fail(axis, e.to_string()),
        }

        let c = next();
        match permutation_spread(rho, ccr::genuine_tripartite_entanglement) {
            Ok(v) => c.record(axis, v),
            Err(e) => c.fail(axis, e.to_string()),
        }

        let c = next();
        match ccr::genuine_entanglement_routes(rho) {
            Ok(r) => c.record(axis, r.gap()),
            Err(e) => c.fail(axis, e.to_string()),
        }
    }
}

/// Audits the request's grid.
pub fn audit(req: &ScanRequest) -> Result<AuditReport> {
    audit_with(req, |rho| rho)
}

/// As [`audit`], passing every state through `tamper` first. Used to inject
/// deliberately broken states as negative controls.
pub fn audit_with<F>(req: &ScanRequest, tamper: F) -> Result<AuditReport>
where
    F: Fn(DensityMatrix) -> DensityMatrix + Sync,
{
    let mut probe = req.clone();
    probe.quantities = vec![crate::scan::Quantity::Purity];
    probe.validate()?;
    let axis = req.axis_values();
    let names = check_names(req.model);
    let fresh = || -> Vec<CheckResult> { names.iter().map(|(n, b)| CheckResult::new(n.clone(), *b)).collect() };

    let per_point: Vec<(f64, Option<f64>, Vec<CheckResult>)> = axis
        .par_iter()
        .map(|&x| {
            let mut checks = fresh();
            match req.state_at(x) {
                Ok(rho) => {
                    let rho = tamper(rho);
                    audit_point(req.model, x, &rho, &mut checks);
                    (x, Some(rho.purity()), checks)
                }
                Err(e) => {
                    checks[0].fail(x, e.to_string());
                    (x, None, checks)
                }
            }
        })
        .collect();

    let mut total = fresh();
    let mut monotone = CheckResult::new("purity non-increasing", MONOTONE_SLACK);
    let mut last: Option<f64> = None;
    for (x, purity, checks) in per_point {
        for (t, c) in total.iter_mut().zip(checks) {
            t.merge(c);
        }
        if let (Some(p), Some(prev)) = (purity, last) {
            monotone.record(x, (p - prev).max(0.0));
        }
        last = purity.or(last);
    }
    if req.model == Model::WavePacket {
        let slot = total
            .iter_mut()
            .find(|c| c.name == "purity non-increasing")
            .expect("wave-packet audit has a monotonicity check");
        *slot = monotone;
    }
    Ok(AuditReport {
        model: req.model,
        initial_flavor: req.initial_flavor,
        points: axis.len(),
        checks: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(model: Model, f: Flavor) -> ScanRequest {
        let mut r = ScanRequest::new(model, f);
        r.points = 60;
        r
    }

    #[test]
    fn small_grids_pass() {
        for model in [Model::Plane, Model::WavePacket] {
            let rep = audit(&small(model, Flavor::Mu)).unwrap();
            assert!(rep.passed(), "{rep}");
            assert!(rep.checks.iter().all(|c| c.evaluated > 0), "{rep}");
        }
    }

    #[test]
    fn corrupted_trace_fails() {
        let rep = audit_with(&small(Model::WavePacket, Flavor::E), |rho| rho.scaled(0.9)).unwrap();
        assert!(!rep.passed());
        let validity = rep.check("state validity").unwrap();
        let msg = validity.error.as_deref().unwrap();
        assert!(msg.contains("trace") && msg.starts_with("at axis 0:"), "{msg}");
    }

    #[test]
    fn permutation_table_is_complete() {
        let mut seen: Vec<[Flavor; 3]> = PERMUTATIONS.to_vec();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
    }
}
