use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use nuccr::config::RunConfig;
use nuccr::scan::{self, Model, Quantity, ScanRequest};
use nuccr::{audit, export, Flavor, Result, WavePacketConfig};

/// Scan complementarity budgets and correlation measures of three-flavor
/// neutrino oscillations over L/E (plane waves) or distance (wave packets).
///
/// Exit status: 0 on success or a passing audit, 1 on a failed audit or a
/// computation/output error, 2 on invalid arguments or configuration.
#[derive(Debug, Parser)]
#[command(name = "nuccr", version)]
struct Cli {
    /// `plane` (axis L/E in km/GeV) or `wavepacket` (axis x in km).
    #[arg(long, default_value = "plane")]
    model: Model,

    /// Initial flavor: e, mu or tau.
    #[arg(long, default_value = "e")]
    flavor: Flavor,

    /// Grid start; defaults to 0.
    #[arg(long)]
    from: Option<f64>,

    /// Grid end; defaults to 2e4 (plane) or 5e5 (wavepacket).
    #[arg(long)]
    to: Option<f64>,

    #[arg(long, default_value_t = scan::DEFAULT_POINTS)]
    points: usize,

    /// Comma-separated quantity identifiers (see --list-quantities).
    #[arg(long)]
    quantities: Option<String>,

    /// JSON file with oscillation and wave-packet parameters.
    #[arg(long)]
    config: Option<PathBuf>,

    /// CSV output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,

    /// SVG plot output path.
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Check every budget and invariant over the grid instead of scanning.
    #[arg(long)]
    audit: bool,

    /// Neutrino energy for the wave-packet model, overriding the config file.
    #[arg(long)]
    energy_gev: Option<f64>,

    /// Wave-packet width, overriding the config file.
    #[arg(long)]
    sigma_x_m: Option<f64>,

    /// Print every quantity identifier and exit.
    #[arg(long)]
    list_quantities: bool,
}

fn build_request(cli: &Cli) -> Result<ScanRequest> {
    let mut req = ScanRequest::new(cli.model, cli.flavor);
    let cfg = cli.config.as_deref().map(RunConfig::load).transpose()?;
    if let Some(c) = &cfg {
        req.params = c.params;
    }
    if let Some(v) = cli.from {
        req.start = v;
    }
    if let Some(v) = cli.to {
        req.stop = v;
    }
    req.points = cli.points;
    if let Some(list) = &cli.quantities {
        req.quantities = scan::parse_quantities(list)?;
    }
    let energy = cli.energy_gev.or(cfg.and_then(|c| c.energy_gev));
    let sigma = cli.sigma_x_m.or(cfg.and_then(|c| c.sigma_x_m));
    if let Some(wp) = req.wp.as_mut() {
        *wp = WavePacketConfig::new(energy.unwrap_or(wp.energy_e), sigma.unwrap_or(wp.sigma_x), req.params)?;
    }
    req.validate()?;
    Ok(req)
}

fn run(cli: &Cli, req: &ScanRequest) -> Result<bool> {
    if cli.audit {
        let report = audit::audit(req)?;
        println!("{report}");
        return Ok(report.passed());
    }
    let table = scan::run_scan(req)?;
    match &cli.out {
        Some(path) => export::emit_csv(&table, path)?,
        None => {
            let csv = export::csv_string(&table)?;
            let mut out = std::io::stdout().lock();
            // A closed pipe is not worth a failure status.
            let _ = out.write_all(csv.as_bytes()).and_then(|_| out.flush());
        }
    }
    if let Some(path) = &cli.plot {
        export::emit_plot(&table, req.model.axis_name(), path)?;
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_quantities {
        for q in Quantity::registry() {
            println!("{q}");
        }
        return ExitCode::SUCCESS;
    }
    let req = match build_request(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, &req) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
