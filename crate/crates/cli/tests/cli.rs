use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jcsim(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcsim"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn case_a_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = jcsim(dir.path(), &["--case", "A", "--oracle-compare", "--output-prefix", "run/a"]);
    assert!(out.status.success(), "{}", stderr(&out));

    let csv = fs::read_to_string(dir.path().join("run/a.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "T,N_c,N_f,N_a,res_f_2,res_a_2,N_tot_1,N_tot_2,N_tot_inf,coh_a,coh_f"
    );
    assert_eq!(lines.count(), 401);
    assert!(!csv.contains('\r'));

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("run/a.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["field_dim"], 2);

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("run/a.oracle.json")).unwrap()).unwrap();
    for entry in report["entries"].as_array().unwrap() {
        assert_eq!(entry["flagged"], false, "{entry}");
    }
}

#[test]
fn flags_override_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("cfg.json"),
        r#"{"case": "C", "mean_photon": 0.1, "n_points": 11, "output_prefix": "from_file"}"#,
    )
    .unwrap();
    let out = jcsim(dir.path(), &["cfg.json", "--mean-photon", "0.01", "--output-prefix", "from_flag"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(!dir.path().join("from_file.csv").exists());

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("from_flag.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["mean_photon"], 0.01);
    assert_eq!(summary["config"]["n_points"], 11);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for prefix in ["one", "two"] {
        let out = jcsim(
            dir.path(),
            &["--case", "D", "--alpha", "0.1", "--n-points", "41", "--output-prefix", prefix],
        );
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(
        fs::read(dir.path().join("one.csv")).unwrap(),
        fs::read(dir.path().join("two.csv")).unwrap()
    );
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = jcsim(dir.path(), &["--case", "D"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("alpha"));

    fs::write(dir.path().join("bad.json"), r#"{"case": "A", "colour": 1}"#).unwrap();
    let out = jcsim(dir.path(), &["bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("colour"));

    fs::write(dir.path().join("broken.json"), "{\"case\": \"A\",\n \"n_points\": 4x}").unwrap();
    let out = jcsim(dir.path(), &["broken.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let out = jcsim(dir.path(), &["--case", "A", "--n-points", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = jcsim(dir.path(), &["--case", "A", "--layers", "many"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = jcsim(dir.path(), &["nowhere.json"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("nowhere.json"));
}

#[test]
fn printed_case_b_frequency_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = jcsim(
        dir.path(),
        &[
            "--case", "B",
            "--n-points", "51",
            "--oracle-compare",
            "--oracle-case-b-frequency", "1.7320508075688772",
            "--output-prefix", "b",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("oracle mismatch: N_c"));
    let report = fs::read_to_string(dir.path().join("b.oracle.json")).unwrap();
    assert!(report.contains("sqrt(3)"));
}
