//! Behavioral tests of the installed binary: output formats, determinism,
//! selectors, exit codes.

use std::process::{Command, Output};

fn run_tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coboson"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Data rows of a CSV body (comment and blank lines skipped).
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn f(field: &str) -> f64 {
    field.parse().expect("numeric field")
}

#[test]
fn spectrum_single_pair_closed_form() {
    let out = run_tool(&["spectrum", "--ns", "1", "--r", "0.5"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 2);
    let expect = (1.0f64.sinh() / 2.0).sqrt();
    assert!((f(&rows[0][4]) + expect).abs() < 1e-12);
    assert!((f(&rows[1][4]) - expect).abs() < 1e-12);
    // qualitative values 0.766551 as documented
    assert!((f(&rows[1][4]) - 0.766551).abs() < 1e-6);
}

#[test]
fn spectrum_even_capacity_has_zero_mode() {
    let out = run_tool(&["spectrum", "--ns", "2", "--r", "1.0"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 3);
    assert!(f(&rows[1][4]).abs() < 1e-10);
    assert!(f(&rows[1][5]).abs() < 1e-10);
}

#[test]
fn spectrum_phase_rotates_eigenvalues() {
    let base = run_tool(&["spectrum", "--ns", "3", "--r", "0.7"]);
    let rotated = run_tool(&["spectrum", "--ns", "3", "--r", "0.7", "--phi", "2.6"]);
    assert!(base.status.success() && rotated.status.success());
    let phase = 2.6f64 / 2.0;
    let mut expected: Vec<(f64, f64)> = csv_rows(&stdout_str(&base))
        .iter()
        .map(|row| {
            let re = f(&row[4]);
            let im = f(&row[5]);
            (
                re * phase.cos() - im * phase.sin(),
                re * phase.sin() + im * phase.cos(),
            )
        })
        .collect();
    expected.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let got: Vec<(f64, f64)> = csv_rows(&stdout_str(&rotated))
        .iter()
        .map(|row| (f(&row[4]), f(&row[5])))
        .collect();
    for ((gr, gi), (er, ei)) in got.iter().zip(&expected) {
        assert!((gr - er).abs() < 1e-10 && (gi - ei).abs() < 1e-10);
    }
}

#[test]
fn degenerate_squeeze_is_a_config_error() {
    let out = run_tool(&["spectrum", "--ns", "3", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
    assert!(err.contains("degenerate"), "stderr: {err}");
}

#[test]
fn invalid_selector_is_a_config_error() {
    let out = run_tool(&[
        "sweep",
        "--ns",
        "4",
        "--r-min",
        "0.5",
        "--r-max",
        "1.0",
        "--steps",
        "2",
        "--state-index",
        "topmost",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_check_passes_and_cap_is_enforced() {
    let out = run_tool(&["oracle-check", "--ns-max", "2", "--tol", "1e-12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_str(&out);
    for name in ["ladder", "chi_N", "commutator", "D-diagonal", "projection"] {
        assert!(report.contains(name), "missing identity {name}");
    }
    let out = run_tool(&["oracle-check", "--ns-max", "9"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sweep_runs_are_byte_identical() {
    let args = [
        "sweep", "--ns", "3,5", "--r-min", "0.5", "--r-max", "2.0", "--steps", "7",
    ];
    let first = run_tool(&args);
    let second = run_tool(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn json_and_csv_agree_bit_for_bit() {
    let base = [
        "sweep", "--ns", "4", "--r-min", "0.4", "--r-max", "1.6", "--steps", "4",
    ];
    let csv = run_tool(&base);
    let json = run_tool(&[&base[..], &["--format", "json"]].concat());
    assert!(csv.status.success() && json.status.success());

    let rows = csv_rows(&stdout_str(&csv));
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_str(&json)).expect("valid json");
    let array = parsed.as_array().expect("array of records");
    assert_eq!(rows.len(), array.len());
    let numeric = [
        ("r", 1),
        ("phi", 2),
        ("alpha_re", 4),
        ("alpha_im", 5),
        ("d", 6),
        ("var_chi", 7),
        ("var_pi", 8),
        ("product", 9),
        ("bound", 10),
        ("bosonic_var_chi", 11),
        ("bosonic_var_pi", 12),
    ];
    for (row, obj) in rows.iter().zip(array) {
        for (key, idx) in numeric {
            let from_csv = f(&row[idx]);
            let from_json = obj[key].as_f64().expect("number");
            assert_eq!(from_csv.to_bits(), from_json.to_bits(), "field {key}");
        }
    }
}

#[test]
fn vacuum_selector_hits_the_zero_mode_for_even_capacity() {
    let out = run_tool(&[
        "sweep",
        "--ns",
        "4,8",
        "--r-min",
        "0.3",
        "--r-max",
        "2.3",
        "--steps",
        "5",
        "--state-index",
        "vacuum",
    ]);
    assert!(out.status.success());
    for row in csv_rows(&stdout_str(&out)) {
        let mag = (f(&row[4]).powi(2) + f(&row[5]).powi(2)).sqrt();
        assert!(mag <= 1e-10, "alpha magnitude {mag}");
    }
}

#[test]
fn saturation_shows_in_last_state_sweep() {
    let out = run_tool(&[
        "sweep", "--ns", "6", "--r-min", "0.5", "--r-max", "3.0", "--steps", "6",
    ]);
    assert!(out.status.success());
    let mut last_d = -1.0f64;
    for row in csv_rows(&stdout_str(&out)) {
        let d = f(&row[6]);
        assert!(d >= last_d, "d not non-decreasing");
        assert!(d <= 1.0 + 1e-9);
        let product = f(&row[9]);
        let bound = f(&row[10]);
        assert!(product >= bound - 1e-9);
        last_d = d;
    }
}

#[test]
fn variances_equals_the_matching_sweep_row() {
    let single = run_tool(&[
        "variances",
        "--ns",
        "5",
        "--r",
        "1.3",
        "--state-index",
        "2",
    ]);
    let sweep = run_tool(&[
        "sweep",
        "--ns",
        "5",
        "--r-min",
        "1.3",
        "--r-max",
        "1.3",
        "--steps",
        "1",
        "--state-index",
        "2",
    ]);
    assert!(single.status.success() && sweep.status.success());
    assert_eq!(
        csv_rows(&stdout_str(&single)),
        csv_rows(&stdout_str(&sweep))
    );
}

#[test]
fn figures_emit_labeled_extreme_states_with_reference_columns() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = run_tool(&[
        "figures",
        "--ns",
        "20",
        "--r-min",
        "0.5",
        "--r-max",
        "2.5",
        "--steps",
        "5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let fig1 = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    let fig2 = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    let fig3 = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();

    // extreme eigenstates track the bosonic references with ratio e^{-2r}
    for (text, value_idx, ref_idx) in [(&fig1, 3, 4), (&fig2, 3, 4)] {
        let rows = csv_rows(text);
        assert_eq!(rows.len(), 10, "5 grid points, both extremes");
        for row in &rows {
            assert!(row[2] == "alpha_max" || row[2] == "alpha_min");
            let r = f(&row[1]);
            let ratio = f(&row[value_idx]) / f(&row[ref_idx]);
            assert!(
                (ratio - (-2.0 * r).exp()).abs() < 1e-9,
                "r={r}: ratio {ratio}"
            );
        }
    }
    for row in csv_rows(&fig3) {
        let product = f(&row[3]);
        let bound = f(&row[4]);
        assert!(product > 0.0 && product <= 0.5);
        assert!((product - bound).abs() < 1e-9);
        assert_eq!(f(&row[5]), 0.5);
    }
}

#[test]
fn unwritable_figures_path_is_an_io_error() {
    let out = run_tool(&[
        "figures",
        "--ns",
        "4",
        "--steps",
        "2",
        "--out",
        "/proc/no-such-dir/figs",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
