use std::fs;
use std::process::{Command, Output};

use nuccr::export::parse_csv;

fn nuccr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nuccr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn nuccr_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nuccr"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn scan_to_stdout() {
    let o = nuccr(&["--points", "5", "--quantities", "P_hs_e,C_hs_emu,C_hs_etau"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "axis,P_hs_e,C_hs_emu,C_hs_etau");
    assert!(lines[1].starts_with("0,0.5,"));
    assert!(lines[5].starts_with("20000,"));
}

#[test]
fn csv_and_plot_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("wp.csv");
    let svg = dir.path().join("wp.svg");
    let o = nuccr(&[
        "--model",
        "wavepacket",
        "--flavor",
        "mu",
        "--points",
        "50",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let table = parse_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(
        table.columns,
        ["Prob_e", "Prob_mu", "Prob_tau", "QD_R_e", "QD_R_mu", "QD_R_tau", "QD_G", "purity"]
    );
    assert_eq!(table.rows.len(), 50);
    assert!(table.rows.windows(2).all(|w| w[1].axis > w[0].axis));
    let plot = fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("<polyline").count(), 8);
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    let args = [
        "--model",
        "wavepacket",
        "--points",
        "300",
        "--quantities",
        "QD_G,S_vn_emutau,C_re_emu",
    ];
    let one = nuccr_threads(&args, "1");
    let four = nuccr_threads(&args, "4");
    let again = nuccr_threads(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn audit_passes_on_default_grids() {
    for model in ["plane", "wavepacket"] {
        let o = nuccr(&["--audit", "--model", model, "--flavor", "mu"]);
        let text = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{text}");
        assert!(!text.contains("FAIL"), "{text}");
        let max: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("max closure error: "))
            .expect("closure summary line")
            .parse()
            .unwrap();
        assert!(max <= 1e-9);
    }
}

#[test]
fn config_file_sets_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("params.json");
    // No mixing into τ from e at all when θ13 = 0 and θ23 = 0.
    fs::write(
        &cfg,
        r#"{"theta12_deg": 33.48, "theta13_deg": 0, "theta23_deg": 0, "delta_cp_deg": 0,
            "dm2_21_ev2": 7.5e-5, "dm2_31_ev2": 2.46e-3, "energy_gev": 3}"#,
    )
    .unwrap();
    let o = nuccr(&[
        "--config",
        cfg.to_str().unwrap(),
        "--points",
        "20",
        "--quantities",
        "Prob_tau",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = parse_csv(&stdout(&o)).unwrap();
    assert!(t.rows.iter().all(|r| r.values[0].abs() < 1e-15));
}

#[test]
fn energy_override_changes_wave_packet_output() {
    let base = ["--model", "wavepacket", "--points", "10", "--quantities", "purity"];
    let a = nuccr(&base);
    let b = nuccr(&[&base[..], &["--energy-gev", "2"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn usage_and_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"theta12_deg": 33.48}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--model", "cosmic"],
        vec!["--flavor", "x"],
        vec!["--points", "1"],
        vec!["--from", "10", "--to", "5"],
        vec!["--from", "-1"],
        vec!["--quantities", "Nope_e"],
        vec!["--model", "wavepacket", "--quantities", "S_G"],
        vec!["--model", "wavepacket", "--sigma-x-m", "0"],
        vec!["--config", bad.to_str().unwrap()],
        vec!["--config", "/nonexistent/params.json"],
        vec!["--no-such-flag"],
    ];
    for args in cases {
        let o = nuccr(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn unwritable_output_exits_1_and_names_path() {
    let o = nuccr(&["--points", "3", "--out", "/nonexistent-dir/out.csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent-dir/out.csv"));
}

#[test]
fn lists_quantities() {
    let o = nuccr(&["--list-quantities"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in [
        "P_hs_e",
        "C_hs_emu",
        "S_vn_etau",
        "S_vn_emutau",
        "QD_G",
        "S_R_e",
        "CCR_mixres_tau_err",
    ] {
        assert!(text.lines().any(|l| l == id), "{id}");
    }
}
