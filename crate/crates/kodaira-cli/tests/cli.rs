use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scene(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenes").join(format!("{name}.json"))
}

fn kodaira(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kodaira")).args(args).output().expect("binary runs")
}

fn json(scene_name: &str, args: &[&str]) -> Value {
    let path = scene(scene_name);
    let mut full = vec!["--scene", path.to_str().unwrap(), "--format", "json"];
    full.extend_from_slice(args);
    let out = kodaira(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn lifts(scene_name: &str) -> Vec<String> {
    let text = std::fs::read_to_string(scene(scene_name)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    v.get("lifts").and_then(Value::as_object).map(|m| m.keys().cloned().collect()).unwrap_or_default()
}

const SCENES: [&str; 10] = [
    "translations",
    "bundle_action",
    "infinite_translations",
    "nk_rank0",
    "nk_rank1",
    "nk_rank2",
    "minus_one",
    "order2",
    "order4",
    "order6",
];

#[test]
fn translation_scene_descends_to_a_base_translation() {
    let v = json("translations", &["check-lift"]);
    assert_eq!(v["class"], "Automorphism");
    assert_eq!(v["base_map"]["kind"], "translation");
    assert_eq!(v["generator_images"][0], serde_json::json!([1, 0, 0, -1]));
}

#[test]
fn bundle_action_is_identity_on_base_but_not_constant() {
    let v = json("bundle_action", &["check-lift"]);
    assert_eq!(v["base_map"]["kind"], "identity");
    assert_eq!(v["generator_images"][0], serde_json::json!([1, 0, 2, 0]));
    assert_eq!(v["generator_images"][1], serde_json::json!([0, 1, 0, 2]));
    assert_eq!(json("bundle_action", &["kernel-class"])["kind"], "varying_fibre_translation");
}

#[test]
fn translation_ranks() {
    for (name, rank, infinite) in [("nk_rank0", 0, false), ("nk_rank2", 2, true), ("nk_rank1", 1, true)] {
        let v = json(name, &["nk"]);
        assert_eq!(v["invariants"]["free_rank"], rank, "{name}");
        assert_eq!(v["invariants"]["torsion"], serde_json::json!([3, 3]), "{name}");
        assert_eq!(v["infinitely_many_base_translations"], infinite, "{name}");
    }
}

#[test]
fn lefschetz_vanishes_for_every_bundled_automorphism() {
    let mut seen = 0;
    for name in SCENES {
        for l in lifts(name) {
            let v = json(name, &["--lift", &l, "cohomology", "--lefschetz"]);
            assert_eq!(v["lefschetz"], "0", "{name}/{l}");
            assert!(v.get("action").is_none());
            seen += 1;
        }
    }
    assert!(seen >= 9);
}

#[test]
fn minus_one_fixed_loci() {
    let fixing = json("minus_one", &["--lift", "fixing", "fixed-locus"]);
    assert_eq!(fixing["kind"], "fibres");
    assert_eq!(fixing["fibres"], serde_json::json!(["1/4"]));
    let free = json("minus_one", &["--lift", "free", "fixed-locus"]);
    assert_eq!(free["kind"], "empty");
    assert_eq!(free["base_fixed_points"].as_array().unwrap().len(), 4);
}

#[test]
fn order_n_scenes() {
    for (name, n) in [("order4", 4), ("order6", 6), ("order2", 2)] {
        let v = json(name, &["order-n"]);
        assert_eq!(v["order"], n);
        let trivial: Vec<bool> = v["power_is_identity"].as_array().unwrap().iter().map(|b| b.as_bool().unwrap()).collect();
        assert_eq!(trivial.iter().filter(|&&b| b).count(), 1);
        assert!(trivial[n as usize - 1]);
    }
    let split = json("order2", &["--lift", "flip", "semidirect"]);
    assert_eq!(split["rotation_exponent"], 1);
}

#[test]
fn output_is_deterministic() {
    let path = scene("order4");
    let args = ["--scene", path.to_str().unwrap(), "cohomology"];
    let a = kodaira(&args);
    let b = kodaira(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
    let par = json("minus_one", &["--lift", "fixing", "fixed-locus"]);
    let seq = json("minus_one", &["--lift", "fixing", "fixed-locus", "--sequential"]);
    assert_eq!(par, seq);
}

#[test]
fn canonical_scenes_round_trip() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for name in SCENES {
        let first = kodaira(&["--scene", scene(name).to_str().unwrap(), "canonical"]);
        assert_eq!(first.status.code(), Some(0), "{name}");
        let tmp = dir.join(format!("canonical_{name}.json"));
        std::fs::write(&tmp, &first.stdout).unwrap();
        let second = kodaira(&["--scene", tmp.to_str().unwrap(), "canonical"]);
        assert_eq!(first.stdout, second.stdout, "{name}");
    }
}

#[test]
fn exit_codes() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad_schema = dir.join("bad_schema.json");
    std::fs::write(&bad_schema, r#"{"surface": {"tau_b": "i", "tau_e": "i", "c": "x", "delta": "0"}}"#).unwrap();
    assert_eq!(kodaira(&["--scene", bad_schema.to_str().unwrap(), "nk"]).status.code(), Some(2));
    let off_lattice = dir.join("off_lattice.json");
    std::fs::write(&off_lattice, r#"{"surface": {"tau_b": "i", "tau_e": "i", "c": "1/2", "delta": "0"}}"#).unwrap();
    assert_eq!(kodaira(&["--scene", off_lattice.to_str().unwrap(), "nk"]).status.code(), Some(2));
    let stuck = dir.join("not_descending.json");
    std::fs::write(
        &stuck,
        r#"{"surface": {"tau_b": "i", "tau_e": "i", "c": "2", "delta": "0"},
            "lifts": {"third": {"alpha": "1", "beta": "1/3", "u": "0", "v": "0"}}}"#,
    )
    .unwrap();
    let out = kodaira(&["--scene", stuck.to_str().unwrap(), "fixed-locus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("second descent value"));
    let report = kodaira(&["--scene", stuck.to_str().unwrap(), "check-lift", "--format", "json"]);
    assert_eq!(report.status.code(), Some(0));
    let missing = kodaira(&["--scene", scene("minus_one").to_str().unwrap(), "fixed-locus"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(kodaira(&["nk"]).status.code(), Some(2));
    assert_eq!(kodaira(&["--scene", scene("nk_rank0").to_str().unwrap(), "bogus"]).status.code(), Some(2));
    let moduli = kodaira(&["--scene", scene("nk_rank0").to_str().unwrap(), "pi1", "star", "--a", "1,2,3"]);
    assert_eq!(moduli.status.code(), Some(2));
}

#[test]
fn deck_group_commands() {
    let v = json("nk_rank0", &["pi1", "commutator", "--a", "1,0,0,0", "--b", "0,1,0,0"]);
    assert_eq!(v["commutator"], serde_json::json!([0, 0, 0, 3]));
    let v = json("nk_rank0", &["pi1", "star", "--a", "1,-2,0,5", "--b", "-1,2,0,-5"]);
    let inv = json("nk_rank0", &["pi1", "inverse", "--a", "1,-2,0,5"]);
    assert_ne!(inv["inverse"], serde_json::json!([-1, 2, 0, -5]));
    assert_eq!(v["star"].as_array().unwrap().len(), 4);
    let ab = json("nk_rank0", &["pi1", "abelianization"]);
    assert_eq!(ab["abelianization"]["torsion"], serde_json::json!([3]));
}

#[test]
fn moduli_display() {
    let v = json("translations", &["moduli", "--precision", "6"]);
    assert_eq!(v["j_tau_b"]["re"], "1728.000000");
    assert_eq!(v["j_tau_b"]["im"], "0.000000");
    let w = json("order6", &["moduli", "--precision", "6"]);
    assert_eq!(w["j_tau_b"]["re"], "0.000000");
    let no_value = std::fs::read_to_string(scene("nk_rank1")).unwrap().replace(r#", "value": 3.141592653589793"#, "");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("no_value.json");
    std::fs::write(&tmp, no_value).unwrap();
    assert_eq!(kodaira(&["--scene", tmp.to_str().unwrap(), "moduli"]).status.code(), Some(1));
}

#[test]
fn normal_form_and_isomorphism() {
    let v = json("order4", &["normalize"]);
    assert_eq!(v["normal_form"]["c"], "2");
    assert_eq!(v["normal_form"]["delta"], "0");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("order4_normal.json");
    let nf = serde_json::json!({ "surface": v["normal_form"] });
    std::fs::write(&tmp, nf.to_string()).unwrap();
    let iso = json("order4", &["iso", "--other", tmp.to_str().unwrap()]);
    assert_eq!(iso["isomorphic"], true);
}

#[test]
fn forms_and_selftest() {
    assert_eq!(json("order6", &["verify-forms"])["all_hold"], true);
    let out = kodaira(&["selftest", "--criterion", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["criteria"][0]["passed"], true);
}
