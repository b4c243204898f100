//! Golden-file harness shared by the CLI tests and the acceptance runner.
//!
//! Set `LMCF_BLESS=1` to rewrite the expected files from the current output.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use lmcf_solitons::cli;

pub struct Case {
    pub name: &'static str,
    /// Arguments after the program name; `{out}` is replaced by a temporary
    /// output path whose contents are compared as `<name>.out`.
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "validate_valid", args: &["validate", "tests/golden/inputs/quadric_ss.json"], code: 0 },
    Case { name: "validate_bad_e", args: &["validate", "tests/golden/inputs/bad_e.json"], code: 2 },
    Case { name: "validate_missing_family", args: &["validate", "tests/golden/inputs/missing_family.json"], code: 2 },
    Case { name: "validate_unknown_key", args: &["validate", "tests/golden/inputs/unknown_key.json"], code: 2 },
    Case {
        name: "validate_sphere_negative_alpha",
        args: &["validate", "tests/golden/inputs/sphere_negative_alpha.json"],
        code: 2,
    },
    Case { name: "validate_missing_file", args: &["validate", "tests/golden/inputs/nope.json"], code: 2 },
    Case { name: "verify_quadric_ss", args: &["verify", "tests/golden/inputs/quadric_ss.json"], code: 0 },
    Case {
        name: "verify_quadric_ss_general",
        args: &["verify", "tests/golden/inputs/quadric_ss_general.json", "--samples", "8"],
        code: 0,
    },
    Case {
        name: "verify_sphere_ss",
        args: &["verify", "tests/golden/inputs/sphere_ss.json", "--samples", "8", "--seed", "7"],
        code: 0,
    },
    Case {
        name: "verify_quadric_tr",
        args: &["verify", "tests/golden/inputs/quadric_tr.json", "--samples", "8"],
        code: 0,
    },
    Case {
        name: "verify_sphere_tr_out",
        args: &["verify", "tests/golden/inputs/sphere_tr.json", "--samples", "8", "--out", "{out}"],
        code: 0,
    },
    Case {
        name: "verify_corrupted",
        args: &["verify", "tests/golden/inputs/quadric_ss.json", "--samples", "8", "--inject-phase-drift", "0.1"],
        code: 1,
    },
    Case {
        name: "verify_tight_tolerance",
        args: &["verify", "tests/golden/inputs/sphere_ss.json", "--samples", "6", "--tolerance", "symplectic=0"],
        code: 1,
    },
    Case {
        name: "verify_unknown_tolerance",
        args: &["verify", "tests/golden/inputs/sphere_ss.json", "--tolerance", "nonsense=1"],
        code: 2,
    },
    Case { name: "verify_invalid_config", args: &["verify", "tests/golden/inputs/bad_e.json"], code: 2 },
    Case {
        name: "mesh_quadric_ss",
        args: &[
            "mesh",
            "tests/golden/inputs/quadric_ss.json",
            "--s-range",
            "-0.2,0.3",
            "--grid",
            "3,3",
            "--out",
            "{out}",
        ],
        code: 0,
    },
    Case {
        name: "mesh_quadric_ss_general_lower",
        args: &[
            "mesh",
            "tests/golden/inputs/quadric_ss_general.json",
            "--s-range",
            "-0.1,0.1",
            "--grid",
            "2,3",
            "--x-range",
            "-0.3,0.2",
            "--lower",
            "--out",
            "{out}",
        ],
        code: 0,
    },
    Case {
        name: "mesh_sphere_tr",
        args: &["mesh", "tests/golden/inputs/sphere_tr.json", "--s-range", "-1,2", "--grid", "3,2", "--out", "{out}"],
        code: 0,
    },
    Case {
        name: "mesh_out_of_domain",
        args: &["mesh", "tests/golden/inputs/quadric_ss.json", "--s-range", "-2,0", "--grid", "3,3", "--out", "{out}"],
        code: 2,
    },
    Case {
        name: "mesh_bad_grid",
        args: &["mesh", "tests/golden/inputs/quadric_ss.json", "--s-range", "0,0.1", "--grid", "3", "--out", "{out}"],
        code: 2,
    },
    Case { name: "phibar_forward", args: &["phibar", "--a", "1,2", "--E", "2", "--alpha", "1"], code: 0 },
    Case { name: "phibar_alpha_zero_single", args: &["phibar", "--a", "1", "--E", "2", "--alpha", "0"], code: 0 },
    Case {
        name: "phibar_invert",
        args: &["phibar", "--invert", "--target", "0.2,0.1", "--E", "2", "--alpha", "1"],
        code: 0,
    },
    Case {
        name: "phibar_outside_image",
        args: &["phibar", "--invert", "--target", "0.4,0.4", "--E", "2", "--alpha", "1"],
        code: 1,
    },
    Case { name: "phibar_bad_e", args: &["phibar", "--a", "1", "--E", "0.5"], code: 2 },
    Case { name: "phibar_bad_list", args: &["phibar", "--a", "1,x", "--E", "2"], code: 2 },
    Case { name: "no_subcommand", args: &[], code: 2 },
];

pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub file: Option<Vec<u8>>,
}

pub fn run_cli(args: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("lmcf".to_string()).chain(args.iter().cloned()), &mut out, &mut err);
    (code, out, err)
}

pub fn execute(case: &Case) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out");
    let args: Vec<String> = case.args.iter().map(|a| a.replace("{out}", out_path.to_str().unwrap())).collect();
    let (code, stdout, stderr) = run_cli(&args);
    let file = std::fs::read(&out_path).ok();
    Outcome { code, stdout, stderr, file }
}

fn expected_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/expected")
}

fn compare(path: &Path, actual: &[u8], bless: bool, problems: &mut Vec<String>) {
    if bless {
        if actual.is_empty() {
            let _ = std::fs::remove_file(path);
        } else {
            std::fs::write(path, actual).unwrap();
        }
        return;
    }
    let expected = std::fs::read(path).unwrap_or_default();
    if expected != actual {
        problems.push(format!(
            "{} differs:\n--- expected\n{}\n--- actual\n{}",
            path.display(),
            String::from_utf8_lossy(&expected),
            String::from_utf8_lossy(actual)
        ));
    }
}

/// Runs a case and returns every mismatch against the expected files.
pub fn check(case: &Case) -> Vec<String> {
    let bless = std::env::var_os("LMCF_BLESS").is_some();
    let got = execute(case);
    let mut problems = Vec::new();
    if got.code != case.code {
        problems.push(format!("{}: exit {} (expected {})", case.name, got.code, case.code));
    }
    let dir = expected_dir();
    compare(&dir.join(format!("{}.stdout", case.name)), &got.stdout, bless, &mut problems);
    compare(&dir.join(format!("{}.stderr", case.name)), &got.stderr, bless, &mut problems);
    compare(&dir.join(format!("{}.out", case.name)), got.file.as_deref().unwrap_or_default(), bless, &mut problems);
    // Repeat run: identical bytes.
    let again = execute(case);
    if again.stdout != got.stdout || again.file != got.file {
        problems.push(format!("{}: output changed between runs", case.name));
    }
    problems
}
