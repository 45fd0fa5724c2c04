//! End-to-end tests driving the `ofm` binary: command surface, exit-code
//! contract (0 checks pass, 1 claim failed, 2 input or feasibility error),
//! and byte-level determinism of the reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn ofm(args: &[&str]) -> Output {
    ofm_env(args, &[])
}

fn ofm_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ofm"));
    for key in [
        "OFM_MAX_PHI2",
        "OFM_MAX_PHI3",
        "OFM_MAX_CANDIDATES",
        "OFM_MAX_ELEMENTS",
        "OFM_MAX_POINTS",
        "OFM_MAX_CATALOG_POSET",
        "OFM_MAX_CATALOG_SPACE",
    ] {
        cmd.env_remove(key);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

#[test]
fn filters_counts_and_report() {
    let out = ofm(&["filters", data("sierpinski.json").to_str().unwrap(), "--count"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");

    let out = ofm(&["filters", data("point.json").to_str().unwrap(), "--count"]);
    assert_eq!(stdout(&out).trim(), "2");

    let out = ofm(&["filters", data("disc2.json").to_str().unwrap(), "--count"]);
    assert_eq!(stdout(&out).trim(), "4");

    // base-generated space agrees with the extensional one
    let a = ofm(&["filters", data("sierpinski.json").to_str().unwrap()]);
    let b = ofm(&["filters", data("base_sier.json").to_str().unwrap()]);
    assert_eq!(stdout(&a), stdout(&b));
    let report: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["filters"].as_array().unwrap().len(), 3);
    assert_eq!(report["filters"][0]["members"].as_array().unwrap().len(), 1);

    let out = ofm(&[
        "filters",
        data("sierpinski.json").to_str().unwrap(),
        "--topology",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["topology"]["opens"].as_array().unwrap().len(),
        4,
        "filter space of the Sierpinski space has four opens"
    );

    let out = ofm(&[
        "filters",
        data("sierpinski.json").to_str().unwrap(),
        "--count",
        "--admit-empty-filter",
    ]);
    assert_eq!(stdout(&out).trim(), "4");
}

#[test]
fn filters_input_contract() {
    let out = ofm(&["filters", data("invalid_space.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("full point set"), "{}", stderr(&out));

    let out = ofm(&["filters", data("indiscrete2.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not T0"));

    let out = ofm(&[
        "filters",
        data("indiscrete2.json").to_str().unwrap(),
        "--allow-non-t0",
        "--count",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "2");

    let out = ofm(&["filters", data("missing.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_monad_passes_and_rejects() {
    for space in ["sierpinski.json", "point.json", "disc2.json"] {
        let out = ofm(&["check-monad", data(space).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{space}: {}", stderr(&out));
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        for law in report["laws"].as_array().unwrap() {
            assert_eq!(law["status"], "pass", "{law}");
        }
    }

    // a naturality test map that is continuous
    let out = ofm(&[
        "check-monad",
        data("sierpinski.json").to_str().unwrap(),
        data("id_sier.map.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    // the swap is rejected before its naturality squares
    let out = ofm(&[
        "check-monad",
        data("sierpinski.json").to_str().unwrap(),
        data("swap_sier.map.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let laws = report["laws"].as_array().unwrap();
    let cont = laws
        .iter()
        .find(|l| l["law"].as_str().unwrap().starts_with("test-map-continuous"))
        .unwrap();
    assert_eq!(cont["status"], "fail");
    let nat = laws
        .iter()
        .find(|l| l["law"].as_str().unwrap().starts_with("naturality-eta"))
        .unwrap();
    assert_eq!(nat["status"], "skipped");
}

#[test]
fn feasibility_ceilings_exit_2() {
    let out = ofm_env(
        &["check-monad", data("sierpinski.json").to_str().unwrap()],
        &[("OFM_MAX_PHI3", "3")],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("feasibility exceeded"), "{}", stderr(&out));

    let out = ofm_env(
        &["algebra", "from-lattice", data("ch2.json").to_str().unwrap()],
        &[("OFM_MAX_ELEMENTS", "1")],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn algebra_from_lattice_and_verify() {
    let dir = std::env::temp_dir().join("ofm-cli-test-from-lattice");
    std::fs::create_dir_all(&dir).unwrap();
    let map_path = dir.join("ch2_algebra.json");
    let out = ofm(&[
        "algebra",
        "from-lattice",
        data("ch2.json").to_str().unwrap(),
        "--out",
        map_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&map_path).unwrap()).unwrap();
    assert_eq!(file["r"].as_array().unwrap().len(), 3);

    let out = ofm(&[
        "algebra",
        "verify",
        data("scott_ch2.json").to_str().unwrap(),
        map_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["suite"].as_object().unwrap()["claims"].as_array().unwrap().len(), 8);

    // non-lattice input is an input error
    let out = ofm(&[
        "algebra",
        "from-lattice",
        data("antisym_violation.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn algebra_verify_flags_the_corrupted_map() {
    let out = ofm(&[
        "algebra",
        "verify",
        data("sierpinski.json").to_str().unwrap(),
        data("good_sier.map.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = ofm(&[
        "algebra",
        "verify",
        data("sierpinski.json").to_str().unwrap(),
        data("corrupted_sier.map.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let unit = report["algebra"]["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["claim"] == "unit-law")
        .unwrap();
    assert_eq!(unit["status"], "fail");
    assert_eq!(unit["witness"]["point"], "0");
}

#[test]
fn algebra_search_and_roundtrip() {
    let out = ofm(&["algebra", "search", data("disc2.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["algebras_found"], 0);

    let out = ofm(&["algebra", "search", data("sierpinski.json").to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["algebras_found"], 1);

    for poset in ["ch2.json", "diamond.json"] {
        let out = ofm(&["algebra", "roundtrip", data(poset).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{poset}: {}", stderr(&out));
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["roundtrip"], true);
    }
}

#[test]
fn catalog_counts_files_and_ceiling() {
    let out = ofm(&["catalog", "--kind", "poset", "--max-size", "2", "--up-to-iso"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["sizes"][0]["count"], 1);
    assert_eq!(report["sizes"][1]["count"], 2, "chain and antichain");
    assert_eq!(report["self_check"]["ok"], true);

    let out = ofm(&[
        "catalog", "--kind", "space", "--max-size", "2", "--t0", "--up-to-iso",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["total"], 3, "point, Sierpinski, discrete pair");

    let out = ofm(&[
        "catalog", "--kind", "poset", "--max-size", "3", "--complete-lattice", "--up-to-iso",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["total"], 3, "one lattice per size up to 3");

    let dir = std::env::temp_dir().join("ofm-cli-test-catalog");
    let _ = std::fs::remove_dir_all(&dir);
    let out = ofm(&[
        "catalog",
        "--kind",
        "space",
        "--max-size",
        "2",
        "--t0",
        "--up-to-iso",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(written, 3);

    let out = ofm(&["catalog", "--kind", "poset", "--max-size", "9", "--up-to-iso"]);
    assert_eq!(code(&out), 2, "over the ceiling");
}

#[test]
fn export_dot_shapes() {
    let out = ofm(&["export-dot", data("diamond.json").to_str().unwrap(), "--what", "hasse"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert_eq!(dot.matches("->").count(), 4);
    assert_eq!(dot.matches("label=").count(), 4);

    let out = ofm(&[
        "export-dot",
        data("sierpinski.json").to_str().unwrap(),
        "--what",
        "filters",
    ]);
    assert_eq!(stdout(&out).matches("->").count(), 2, "three filters in a chain");

    let out = ofm(&[
        "export-dot",
        data("point.json").to_str().unwrap(),
        "--what",
        "topology",
    ]);
    assert!(stdout(&out).contains("o0 -> o1"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["filters", data("sierpinski.json").to_str().unwrap(), "--topology"],
        vec!["check-monad", data("disc2.json").to_str().unwrap()],
        vec!["algebra", "roundtrip", data("diamond.json").to_str().unwrap()],
        vec!["catalog", "--kind", "poset", "--max-size", "4", "--up-to-iso"],
    ] {
        let a = ofm(&args);
        let b = ofm(&args);
        assert_eq!(code(&a), code(&b));
        assert_eq!(stdout(&a), stdout(&b), "{args:?} must be reproducible");
        assert!(!stdout(&a).is_empty());
    }
}
