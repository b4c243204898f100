mod common;

use std::path::Path;

use lmcf_solitons::geometry::{coordinates, immerse};
use lmcf_solitons::{ChartPoint, Curve, Params};
use serde_json::Value;

fn golden(name: &str) {
    let case = common::CASES.iter().find(|c| c.name == name).unwrap();
    let problems = common::check(case);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn every_golden_case_is_exercised() {
    let listed = [
        "validate_valid",
        "validate_bad_e",
        "validate_missing_family",
        "validate_unknown_key",
        "validate_sphere_negative_alpha",
        "validate_missing_file",
        "verify_quadric_ss",
        "verify_quadric_ss_general",
        "verify_sphere_ss",
        "verify_quadric_tr",
        "verify_sphere_tr_out",
        "verify_corrupted",
        "verify_tight_tolerance",
        "verify_unknown_tolerance",
        "verify_invalid_config",
        "mesh_quadric_ss",
        "mesh_quadric_ss_general_lower",
        "mesh_sphere_tr",
        "mesh_out_of_domain",
        "mesh_bad_grid",
        "phibar_forward",
        "phibar_alpha_zero_single",
        "phibar_invert",
        "phibar_outside_image",
        "phibar_bad_e",
        "phibar_bad_list",
        "no_subcommand",
    ];
    let names: Vec<_> = common::CASES.iter().map(|c| c.name).collect();
    assert_eq!(names, listed);
}

#[test]
fn golden_validate_valid() {
    golden("validate_valid");
}

#[test]
fn golden_validate_bad_e() {
    golden("validate_bad_e");
}

#[test]
fn golden_validate_missing_family() {
    golden("validate_missing_family");
}

#[test]
fn golden_validate_unknown_key() {
    golden("validate_unknown_key");
}

#[test]
fn golden_validate_sphere_negative_alpha() {
    golden("validate_sphere_negative_alpha");
}

#[test]
fn golden_validate_missing_file() {
    golden("validate_missing_file");
}

#[test]
fn golden_verify_quadric_ss() {
    golden("verify_quadric_ss");
}

#[test]
fn golden_verify_quadric_ss_general() {
    golden("verify_quadric_ss_general");
}

#[test]
fn golden_verify_sphere_ss() {
    golden("verify_sphere_ss");
}

#[test]
fn golden_verify_quadric_tr() {
    golden("verify_quadric_tr");
}

#[test]
fn golden_verify_sphere_tr_out() {
    golden("verify_sphere_tr_out");
}

#[test]
fn golden_verify_corrupted() {
    golden("verify_corrupted");
}

#[test]
fn golden_verify_tight_tolerance() {
    golden("verify_tight_tolerance");
}

#[test]
fn golden_verify_unknown_tolerance() {
    golden("verify_unknown_tolerance");
}

#[test]
fn golden_verify_invalid_config() {
    golden("verify_invalid_config");
}

#[test]
fn golden_mesh_quadric_ss() {
    golden("mesh_quadric_ss");
}

#[test]
fn golden_mesh_quadric_ss_general_lower() {
    golden("mesh_quadric_ss_general_lower");
}

#[test]
fn golden_mesh_sphere_tr() {
    golden("mesh_sphere_tr");
}

#[test]
fn golden_mesh_out_of_domain() {
    golden("mesh_out_of_domain");
}

#[test]
fn golden_mesh_bad_grid() {
    golden("mesh_bad_grid");
}

#[test]
fn golden_phibar_forward() {
    golden("phibar_forward");
}

#[test]
fn golden_phibar_alpha_zero_single() {
    golden("phibar_alpha_zero_single");
}

#[test]
fn golden_phibar_invert() {
    golden("phibar_invert");
}

#[test]
fn golden_phibar_outside_image() {
    golden("phibar_outside_image");
}

#[test]
fn golden_phibar_bad_e() {
    golden("phibar_bad_e");
}

#[test]
fn golden_phibar_bad_list() {
    golden("phibar_bad_list");
}

#[test]
fn golden_no_subcommand() {
    golden("no_subcommand");
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas");
    let load = |n: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(root.join(n)).unwrap()).unwrap() };
    let main = load(name);
    let mut opts = jsonschema::JSONSchema::options();
    opts.with_document("https://lmcf.invalid/schemas/config.schema.json".to_string(), load("config.schema.json"));
    opts.compile(&main).unwrap()
}

fn assert_valid(schema: &jsonschema::JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{}", msgs.join("\n"));
    }
}

#[test]
fn configs_match_schema() {
    let s = schema("config.schema.json");
    for name in ["quadric_ss", "quadric_ss_general", "sphere_ss", "quadric_tr", "sphere_tr", "bad_e"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/inputs/{name}.json"));
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_valid(&s, &doc);
    }
    for bad in ["missing_family", "unknown_key"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/inputs/{bad}.json"));
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert!(!s.is_valid(&doc), "{bad}");
    }
}

#[test]
fn reports_match_schema() {
    let s = schema("report.schema.json");
    for case in common::CASES.iter().filter(|c| c.name.starts_with("verify_") && c.code != 2) {
        let out = common::execute(case);
        let bytes = out.file.unwrap_or(out.stdout);
        let doc: Value = serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{}: {e}", case.name));
        assert_valid(&s, &doc);
        assert_eq!(doc["overall_pass"], Value::Bool(case.code == 0), "{}", case.name);
    }
}

#[test]
fn phibar_output_matches_schema() {
    let s = schema("phibar.schema.json");
    for case in common::CASES.iter().filter(|c| c.name.starts_with("phibar_") && c.code == 0) {
        let out = common::execute(case);
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_valid(&s, &doc);
    }
}

#[test]
fn report_defaults_to_seed_42() {
    let (code, a, _) = common::run_cli(&[
        "verify".into(),
        "tests/golden/inputs/sphere_ss.json".into(),
        "--samples".into(),
        "5".into(),
    ]);
    assert_eq!(code, 0);
    let (_, b, _) = common::run_cli(&[
        "verify".into(),
        "tests/golden/inputs/sphere_ss.json".into(),
        "--samples".into(),
        "5".into(),
        "--seed".into(),
        "42".into(),
    ]);
    assert_eq!(a, b);
    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["seed"], 42);
}

fn read_params(name: &str) -> Params {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/inputs/{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn mesh_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<f64>>, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mesh.csv");
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full.push("--out".into());
    full.push(out.to_str().unwrap().into());
    let (code, _, err) = common::run_cli(&full);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.split('\n');
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.filter(|l| !l.is_empty()).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows, text)
}

#[test]
fn mesh_layout_and_chart_identity() {
    let p = read_params("quadric_ss_general");
    let (header, rows, text) =
        mesh_rows(&["mesh", "tests/golden/inputs/quadric_ss_general.json", "--s-range", "-0.2,0.2", "--grid", "3,3"]);
    assert!(!text.contains('\r') && text.ends_with('\n'));
    assert_eq!(header, ["s", "x_1", "x_2", "x_3", "re_z_1", "im_z_1", "re_z_2", "im_z_2", "re_z_3", "im_z_3"]);
    assert_eq!(rows.len(), 27);
    let lambda = p.lambda();
    for r in &rows {
        let q: f64 = (0..3).map(|j| lambda[j] * r[1 + j] * r[1 + j]).sum();
        assert!((q - p.c()).abs() <= 1e-12, "{q}");
    }
    // Row-major: s is the slowest index, the last chart coordinate the fastest.
    assert!(rows[..9].iter().all(|r| r[0] == -0.2));
    assert_eq!(rows[0][2], -0.5);
    assert_eq!(rows[1][2], 0.0);
    assert_eq!(rows[3][1], 0.0);
}

#[test]
fn mesh_three_by_three_has_nine_rows() {
    let (_, rows, text) =
        mesh_rows(&["mesh", "tests/golden/inputs/quadric_ss.json", "--s-range", "0,0.3", "--grid", "3,3"]);
    assert_eq!(rows.len(), 9);
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn mesh_reimport_is_bit_identical() {
    for (name, range) in
        [("quadric_ss_general", "-0.2,0.2"), ("sphere_ss", "0.5,2"), ("quadric_tr", "-0.3,0.3"), ("sphere_tr", "-1,2")]
    {
        let p = read_params(name);
        let curve = Curve::new(&p).unwrap();
        let config = format!("tests/golden/inputs/{name}.json");
        let (_, rows, text) = mesh_rows(&["mesh", &config, "--s-range", range, "--grid", "3,4"]);
        let free = if p.family.is_translator() { p.m() } else { p.m() - 1 };
        let m = p.m();
        for (r, line) in rows.iter().zip(text.lines().skip(1)) {
            let point = ChartPoint::new(r[1..1 + free].to_vec(), r[0]);
            let z = immerse(&point, &curve).unwrap();
            let coords = coordinates(&point, &curve).unwrap();
            for j in 0..m {
                assert_eq!(coords[j].to_bits(), r[1 + j].to_bits());
            }
            for (k, w) in z.iter().enumerate() {
                assert_eq!(w.re.to_bits(), r[1 + m + 2 * k].to_bits(), "{name}");
                assert_eq!(w.im.to_bits(), r[2 + m + 2 * k].to_bits(), "{name}");
            }
            for field in line.split(',') {
                let digits: String = field.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
                assert_eq!(digits.len(), 17, "{field}");
            }
        }
    }
}

#[test]
fn phibar_round_trip_through_cli() {
    let (code, out, _) =
        common::run_cli(&["phibar".into(), "--a".into(), "0.8,1.7".into(), "--E".into(), "2.5".into()]);
    assert_eq!(code, 0);
    let fwd: Value = serde_json::from_slice(&out).unwrap();
    let target: Vec<String> =
        fwd["phi_bar"].as_array().unwrap().iter().map(|v| format!("{:.17e}", v.as_f64().unwrap())).collect();
    let (code, out, _) = common::run_cli(&[
        "phibar".into(),
        "--invert".into(),
        "--target".into(),
        target.join(","),
        "--E".into(),
        "2.5".into(),
    ]);
    assert_eq!(code, 0);
    let inv: Value = serde_json::from_slice(&out).unwrap();
    let a: Vec<f64> = inv["a"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((a[0] - 0.8).abs() <= 1e-6 && (a[1] - 1.7).abs() <= 1e-6, "{a:?}");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(common::run_cli(&["--help".into()]).0, 0);
    assert_eq!(common::run_cli(&["--version".into()]).0, 0);
}
