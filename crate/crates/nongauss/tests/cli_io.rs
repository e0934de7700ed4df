//! End-to-end tests of the `nongauss` binary: exit codes, file formats, and
//! byte-level determinism.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nongauss"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("nongauss-it-{}-{name}", std::process::id()))
}

#[test]
fn fig1_small_sweep_matches_the_oracle() {
    let out = scratch("fig1-n8.csv");
    let status = bin()
        .args(["fig1", "--n", "8", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "R,delta_s,ng,lower_bound");
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        let r: usize = fields[0].parse().unwrap();
        let delta_s: f64 = fields[1].parse().unwrap();
        let ng: f64 = fields[2].parse().unwrap();
        assert!((delta_s - (r as f64).ln()).abs() < 1e-11);

        // row-by-row oracle recomputation
        let params = nongauss::kink::KinkParameters::new(8, r).unwrap();
        let psi = nongauss::kink::kink_state(&params).unwrap();
        let rho = psi.density().unwrap();
        let gamma = psi.correlation_matrix().unwrap();
        let rho_g = nongauss::fock::gaussianify_density(&gamma).unwrap();
        let oracle_ng = rho.relative_entropy(&rho_g).unwrap();
        assert!(
            (ng - oracle_ng).abs() < 1e-8,
            "R = {r}: csv {ng} vs oracle {oracle_ng}"
        );
        if r == 1 {
            assert_eq!(fields[3], "na");
        } else {
            let lb: f64 = fields[3].parse().unwrap();
            assert!(lb <= ng + 1e-9);
        }
        rows += 1;
    }
    assert_eq!(rows, 8);

    // plot companions: two columns, bound file skips R = 1
    let ng_dat = std::fs::read_to_string(out.with_extension("ng.dat")).unwrap();
    let bound_dat = std::fs::read_to_string(out.with_extension("bound.dat")).unwrap();
    assert_eq!(ng_dat.lines().count(), 8);
    assert_eq!(bound_dat.lines().count(), 7);
    assert!(ng_dat.lines().all(|l| l.split_whitespace().count() == 2));
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let status = bin().arg("fig1").status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn audit_is_deterministic_and_clean() {
    let out1 = scratch("audit1.csv");
    let out2 = scratch("audit2.csv");
    for out in [&out1, &out2] {
        let status = bin()
            .args([
                "audit",
                "--n",
                "6",
                "--samples",
                "6",
                "--seed",
                "7",
                "--out",
            ])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success(), "audit must pass cleanly");
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "same seed must reproduce byte-identical output");
    let text = String::from_utf8(b1).unwrap();
    assert!(text.starts_with("name,lhs,rhs,slack,holds,parameters"));
    assert!(text.contains("charge-concentration"));
    assert!(!text.contains(",false,"), "no violated rows expected");
}

#[test]
fn fcs_on_a_vacuum_file_reports_a_point_mass() {
    let gamma_path = scratch("vacuum.gamma");
    let gamma = nongauss::gaussian::CorrelationMatrix::vacuum(4);
    nongauss::gaussian::io::write_correlation_file(&gamma, &gamma_path).unwrap();

    let out = scratch("fcs-vacuum.csv");
    let status = bin()
        .args(["fcs", "--gamma"])
        .arg(&gamma_path)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let pq0 = text
        .lines()
        .find(|l| l.starts_with("pq,0,"))
        .expect("sector-0 row");
    let fields: Vec<f64> = pq0.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert_eq!(fields[0], 0.0);
    assert!((fields[1] - 1.0).abs() < 1e-12, "convolution p_0: {pq0}");
    assert!((fields[2] - 1.0).abs() < 1e-12, "dft p_0: {pq0}");
    let tv_line = text.lines().find(|l| l.starts_with("tv,")).unwrap();
    let gap: f64 = tv_line.split(',').nth(1).unwrap().parse().unwrap();
    assert!(gap < 1e-12, "vacuum dual gap {gap}");
}

#[test]
fn fcs_rejects_a_malformed_gamma_file_with_exit_2() {
    let path = scratch("broken.gamma");
    std::fs::write(&path, "N=3\n1+0i 0+0i\n").unwrap();
    let output = bin().args(["fcs", "--gamma"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());
}

#[test]
fn fcs_reports_a_tight_dual_method_gap_at_n40() {
    let out = scratch("fcs-n40.csv");
    let status = bin()
        .args(["fcs", "--n", "40", "--seed", "5", "--beta", "0.8", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let tv_line = text
        .lines()
        .find(|l| l.starts_with("tv,"))
        .expect("tv row present");
    let gap: f64 = tv_line.split(',').nth(1).unwrap().parse().unwrap();
    assert!(gap < 1e-8, "dual-method gap {gap}");
}

#[test]
fn bounds_on_the_large_kink_prefer_the_concentration_route() {
    let out = scratch("bounds-kink100.csv");
    let status = bin()
        .args([
            "bounds", "--n", "100", "--kink", "--r", "100", "--alpha", "0.125", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "all bounds must hold on the kink state");
    let text = std::fs::read_to_string(&out).unwrap();
    let rhs_of = |name: &str| -> f64 {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("row {name} missing:\n{text}"))
            .split(',')
            .nth(2)
            .unwrap()
            .parse()
            .unwrap()
    };
    let main = rhs_of("main-ng-lb");
    let pinsker = rhs_of("pinsker-ng-lb");
    assert!(
        main > pinsker,
        "concentration bound {main} must dominate the Pinsker route {pinsker}"
    );
}

#[test]
fn bounds_on_a_sampled_ground_state_hold() {
    let out = scratch("bounds-ground.csv");
    let status = bin()
        .args([
            "bounds", "--n", "8", "--seed", "3", "--beta", "inf", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(
        status.success(),
        "a Gaussian ground state satisfies every bound"
    );
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("interaction-distance-lb"));
    assert!(!text.contains(",false,"));
}

#[test]
fn json_output_parses() {
    let out = scratch("fig1.json");
    let status = bin()
        .args(["fig1", "--n", "6", "--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 6);
    assert!(value["rows"][0]["lower_bound"].is_null());
}

#[test]
fn gamma_round_trips_through_the_text_format() {
    let gamma = nongauss::gaussian::random_gaussian(3, 5, 0.9).unwrap();
    let path = scratch("roundtrip.gamma");
    nongauss::gaussian::io::write_correlation_file(&gamma, &path).unwrap();
    let back = nongauss::gaussian::io::read_correlation_file(&path).unwrap();
    assert_eq!(gamma.c(), back.c());
    assert_eq!(gamma.f(), back.f());
}
