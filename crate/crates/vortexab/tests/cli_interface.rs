//! Binary-level interface tests: determinism of the CSV output, file formats,
//! exit codes, the preset, and configuration layering.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vortexab"))
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vortexab_cli_{tag}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn pattern_csv_is_byte_deterministic() {
    let dir = tmpdir("determinism");
    let run = |csv: &str| {
        let csv_path = dir.join(csv);
        let status = bin()
            .args([
                "pattern",
                "--k",
                "25",
                "--r-c",
                "1",
                "--mu",
                "0.5",
                "--grid-n",
                "101",
                "--csv",
            ])
            .arg(&csv_path)
            .arg("--json")
            .arg(dir.join(format!("{csv}.json")))
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(&csv_path).unwrap()
    };
    let first = run("a.csv");
    let second = run("b.csv");
    assert_eq!(first, second, "identical configs must emit identical bytes");
}

#[test]
fn pattern_csv_structure() {
    let dir = tmpdir("structure");
    let csv_path = dir.join("pattern.csv");
    let status = bin()
        .args([
            "pattern", "--k", "30", "--r-c", "1", "--mu", "0.3", "--grid-n", "41", "--csv",
        ])
        .arg(&csv_path)
        .arg("--json")
        .arg(dir.join("pattern.json"))
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# vortexab "));
    let mut header = None;
    let mut rows = 0;
    for line in text.lines() {
        if line.starts_with('#') {
            assert!(line.contains('=') || line.starts_with("# vortexab"));
        } else if header.is_none() {
            header = Some(line.to_string());
        } else {
            let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
            assert_eq!(cols.len(), 4);
            assert!(cols[1] >= 0.0 && cols[2] >= 0.0 && cols[3] >= 0.0);
            rows += 1;
        }
    }
    assert_eq!(
        header.as_deref(),
        Some("phi_rad,dcs_total,dcs_diffraction,dcs_classical")
    );
    assert_eq!(rows, 41);
    // metadata carries the config hash
    assert!(text.contains("# config_hash = "));

    // JSON summary: stable top-level key order
    let json = std::fs::read_to_string(dir.join("pattern.json")).unwrap();
    let kc = json.find("\"config\"").unwrap();
    let kr = json.find("\"results\"").unwrap();
    let ks = json.find("\"residuals\"").unwrap();
    let kt = json.find("\"timing\"").unwrap();
    assert!(kc < kr && kr < ks && ks < kt, "key order must be stable");
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(parsed["results"]["sigma_total"].as_f64().unwrap() > 0.0);
    assert!(parsed["residuals"]["optical_theorem"].is_number());
}

#[test]
fn exit_codes() {
    // missing required parameters: configuration error
    let out = bin().args(["pattern", "--k", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    // unknown boundary
    let out = bin()
        .args(["pattern", "--k", "10", "--r-c", "1", "--boundary", "magic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // exact engine beyond its guard
    let out = bin()
        .args([
            "pattern",
            "--lambda",
            "1e-10",
            "--d",
            "1e-6",
            "--engine",
            "exact",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // clap usage errors are also configuration errors
    let out = bin().args(["pattern", "--bogus-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // success path
    let out = bin()
        .args(["visibility", "--min", "0", "--max", "1", "--steps", "11"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn preset_paper_sec5_forward_value() {
    let dir = tmpdir("preset");
    let json_path = dir.join("preset.json");
    let status = bin()
        .args(["pattern", "--preset", "paper-sec5", "--grid-n", "11", "--csv"])
        .arg(dir.join("preset.csv"))
        .arg("--json")
        .arg(&json_path)
        .status()
        .unwrap();
    assert!(status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    // forward cross section d^2/lambda = 1e-2 m at one flux quantum
    let forward = parsed["results"]["forward_dcs"].as_f64().unwrap();
    assert!((forward - 1e-2).abs() < 1e-8, "forward = {forward}");
    // fringe period 2 lambda / d = 2e-4 rad
    let delta = parsed["results"]["period_delta"].as_f64().unwrap();
    assert!((delta - 2e-4).abs() < 1e-12, "delta = {delta}");
    // the guard routes this configuration to the closed forms
    assert_eq!(parsed["results"]["engine"].as_str(), Some("shortwave"));
}

#[test]
fn verify_command_reports_and_passes() {
    let dir = tmpdir("verify");
    let json_path = dir.join("verify.json");
    let status = bin()
        .args(["verify", "--k", "20", "--r-c", "1", "--mu", "0", "--json"])
        .arg(&json_path)
        .status()
        .unwrap();
    assert!(status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(parsed["passed"].as_bool(), Some(true));
    let checks = parsed["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "optical_theorem_exact"
        && c["pass"] == true
        && c["residual"].as_f64().unwrap() < 1e-8));
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tmpdir("cfgfile");
    let cfg = dir.join("scenario.cfg");
    std::fs::write(
        &cfg,
        "lambda = 0.25\nd = 4.0\nphi_over_phi0 = 0.5\nboundary = neumann\ngrid_n = 21\n",
    )
    .unwrap();
    let json_path = dir.join("out.json");
    let status = bin()
        .args(["pattern", "--config"])
        .arg(&cfg)
        .args(["--mu", "0.25", "--csv"])
        .arg(dir.join("out.csv"))
        .arg("--json")
        .arg(&json_path)
        .status()
        .unwrap();
    assert!(status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    // flag overrides the file flux; file supplies geometry and boundary
    assert_eq!(parsed["config"]["mu"].as_f64(), Some(0.25));
    assert_eq!(parsed["config"]["boundary"].as_str(), Some("neumann"));
    assert_eq!(parsed["config"]["d"].as_f64(), Some(4.0));
    // unknown keys are rejected
    std::fs::write(&cfg, "k = 1\nr_c = 1\nwhatever = 3\n").unwrap();
    let out = bin()
        .args(["pattern", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tabulated_profile_roundtrip() {
    let dir = tmpdir("profile");
    let profile = dir.join("uniform.profile");
    // tabulate the uniform-field enclosed fraction x^2
    let mut text = String::from("# r/r_c   mu(r)/mu\n");
    for i in 0..=32 {
        let x = i as f64 / 32.0;
        text.push_str(&format!("{x:.6} {:.8}\n", x * x));
    }
    std::fs::write(&profile, text).unwrap();
    let json_path = dir.join("out.json");
    let status = bin()
        .args(["verify", "--k", "6", "--r-c", "1", "--mu", "0.5", "--boundary"])
        .arg(format!("penetrable:file={}", profile.display()))
        .arg("--json")
        .arg(&json_path)
        .status()
        .unwrap();
    assert!(status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(parsed["passed"].as_bool(), Some(true));
    // malformed profile: non-monotone radii
    std::fs::write(&profile, "0 0\n0.5 0.3\n0.4 0.5\n1 1\n").unwrap();
    let out = bin()
        .args(["pattern", "--k", "6", "--r-c", "1", "--boundary"])
        .arg(format!("penetrable:file={}", profile.display()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fig1_and_doubleslit_outputs() {
    let dir = tmpdir("fig1");
    let csv_path = dir.join("fig1.csv");
    let json_path = dir.join("fig1.json");
    let status = bin()
        .args(["fig1", "--d-over-lambda", "1000", "--points", "41", "--csv"])
        .arg(&csv_path)
        .arg("--json")
        .arg(&json_path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("phi_over_delta,")));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let areas = parsed["results"]["areas"].as_array().unwrap();
    assert!((areas[0].as_f64().unwrap() - 0.4749701).abs() < 1e-5);
    // out-of-range wavelength ratio is rejected
    let out = bin()
        .args(["fig1", "--d-over-lambda", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // double slit: half flux closes the central fringe; tight geometry warns
    let out = bin()
        .args([
            "doubleslit",
            "--screen-distance",
            "1e-5",
            "--slit-separation",
            "1e-5",
            "--lambda",
            "1e-10",
            "--flux",
            "0.5",
            "--points",
            "5",
        ])
        .arg("--csv")
        .arg(dir.join("slit.csv"))
        .arg("--json")
        .arg(dir.join("slit.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("slit.json")).unwrap()).unwrap();
    assert_eq!(parsed["results"]["visibility"].as_f64(), Some(1.0));
    assert!(!parsed["results"]["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn visibility_zero_location_meets_closed_form() {
    let dir = tmpdir("viszero");
    let json_path = dir.join("vis.json");
    let status = bin()
        .args([
            "visibility", "--min", "0", "--max", "2", "--steps", "801", "--json",
        ])
        .arg(&json_path)
        .arg("--csv")
        .arg(dir.join("vis.csv"))
        .status()
        .unwrap();
    assert!(status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let dev = parsed["results"]["max_zero_deviation"].as_f64().unwrap();
    assert!(dev < 1e-10, "located zeros deviate by {dev}");
    assert_eq!(
        parsed["results"]["closed_form_zeros"].as_array().unwrap().len(),
        parsed["results"]["located_zeros"].as_array().unwrap().len()
    );
}

#[test]
fn penetrable_beyond_exact_guard_is_rejected() {
    let out = bin()
        .args([
            "pattern",
            "--preset",
            "paper-sec5",
            "--boundary",
            "penetrable:uniform",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact channel sum"));
}

#[test]
fn free_core_pattern_is_all_zero() {
    let dir = tmpdir("freecore");
    let csv_path = dir.join("free.csv");
    let status = bin()
        .args([
            "pattern",
            "--k",
            "15",
            "--r-c",
            "1",
            "--mu",
            "0",
            "--boundary",
            "penetrable:uniform",
            "--grid-n",
            "31",
            "--csv",
        ])
        .arg(&csv_path)
        .arg("--json")
        .arg(dir.join("free.json"))
        .status()
        .unwrap();
    assert!(status.success());
    for line in std::fs::read_to_string(&csv_path).unwrap().lines() {
        if line.starts_with('#') || line.starts_with("phi_rad") {
            continue;
        }
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(&cols[1..], &[0.0, 0.0, 0.0], "free core must not scatter");
    }
}
