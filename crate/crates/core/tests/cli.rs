use std::path::PathBuf;
use std::process::Command;

use oqa::cli::{run, Outcome};
use oqa::diagram::builtin;
use oqa::io::{builtin_structure, builtin_structure_names, Bindings, StructureFile};
use oqa::oqa::check_axioms;
use oqa::{evaluate_link, Scalar};
use serde_json::Value;

fn oqa(args: &[&str]) -> Outcome {
    run(std::iter::once("oqa").chain(args.iter().copied()))
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_oqa");
    let ok = Command::new(bin).args(["conway", "--diagram", "builtin:trefoil_knot"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "z^2 + 1\n");
    let bad = Command::new(bin).args(["conway", "--diagram", "builtin:nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let usage = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn check_axioms_on_builtins() {
    for name in ["balanced-n2", "balanced-n3", "sweedler", "single-block-n3", "alexander-n2"] {
        let out = oqa(&["check-axioms", "--structure", &format!("builtin:{name}")]);
        assert_eq!(out.code, 0, "{name}: {}", out.stdout);
        assert!(out.stdout.ends_with("result: pass\n"));
    }
    let out = oqa(&["check-axioms", "--structure", "builtin:balanced-n2", "--format", "json"]);
    assert_eq!(json(&out)["holds"], Value::Bool(true));
}

#[test]
fn tampered_rho_reports_qybe_witness() {
    let exported = oqa(&["export-structure", "--structure", "builtin:balanced-n2"]);
    let mut doc = json(&exported);
    let slot = doc["rho"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|t| t["i"] == "E12" && t["j"] == "E21")
        .unwrap();
    slot["c"] = Value::String("a".into());
    let path = scratch("tampered.json", &doc.to_string());
    let out = oqa(&["check-axioms", "--structure", &path, "--format", "json"]);
    assert_eq!(out.code, 1);
    let report = json(&out);
    assert_eq!(report["qa3"], Value::Bool(false));
    assert_eq!(report["witnesses"][0]["axiom"], "qa.3");
}

#[test]
fn malformed_input_exits_with_two() {
    let path = scratch("malformed.json", "{\"symbols\": [\"a\"], \"algebra\": ");
    assert_eq!(oqa(&["check-axioms", "--structure", &path]).code, 2);
    let path = scratch("unknown-field.json", r#"{"symbols": [], "algebra": {"name": "matrix", "n": 2}, "rho": [], "t_d": {"kind": "identity"}, "t_u": {"kind": "identity"}, "extra": 1}"#);
    assert_eq!(oqa(&["check-axioms", "--structure", &path]).code, 2);
    assert_eq!(oqa(&["check-axioms", "--structure", "/nonexistent/structure.json"]).code, 2);
    assert_eq!(oqa(&["check-axioms", "--structure", "builtin:balanced-n2", "--bind", "q=2"]).code, 2);
    assert_eq!(oqa(&["check-axioms", "--structure", "builtin:balanced-n2", "--bind", "a"]).code, 2);
    let diagram = scratch("bad-diagram.txt", "cup_cw 0\nwiggle 1\n");
    assert_eq!(oqa(&["homfly", "--diagram", &diagram]).code, 2);
}

#[test]
fn rejected_bindings_exit_with_one() {
    let out = oqa(&["check-axioms", "--structure", "builtin:balanced-n2", "--bind", "a=1"]);
    assert_eq!(out.code, 1);
    let out = oqa(&["check-axioms", "--structure", "builtin:balanced-n2", "--bind", "a=sbc"]);
    assert_eq!(out.code, 1);
}

#[test]
fn structure_files_round_trip() {
    for name in builtin_structure_names() {
        let file = StructureFile::from_json_str(builtin_structure(name).unwrap(), &Bindings::new()).unwrap();
        let text = file.to_json_string();
        let again = StructureFile::from_json_str(&text, &Bindings::new()).unwrap();
        assert_eq!(again.structure, file.structure, "{name}");
        assert_eq!(again.to_json_string(), text, "{name}");
    }
    let op = StructureFile::from_json_str(builtin_structure("sweedler").unwrap(), &Bindings::new()).unwrap();
    let op = StructureFile { structure: op.structure.opposite(), ..op };
    let again = StructureFile::from_json_str(&op.to_json_string(), &Bindings::new()).unwrap();
    assert_eq!(again.structure, op.structure);
}

#[test]
fn custom_algebra_round_trips() {
    let dual_numbers = r#"{
        "symbols": ["s"],
        "algebra": {"name": "custom", "labels": ["1", "e"],
            "products": [{"i": "1", "j": "1", "terms": [{"k": "1", "c": "1"}]},
                         {"i": "1", "j": "e", "terms": [{"k": "e", "c": "1"}]},
                         {"i": "e", "j": "1", "terms": [{"k": "e", "c": "1"}]}],
            "unit": [{"k": "1", "c": "1"}]},
        "rho": [{"i": "1", "j": "1", "c": "1"}, {"i": "e", "j": "e", "c": "s"}],
        "t_d": {"kind": "identity"},
        "t_u": {"kind": "linear", "columns": [[{"k": "1", "c": "1"}], [{"k": "e", "c": "1"}]]},
        "twist": [{"k": "1", "c": "1"}],
        "trace": [{"k": "1", "c": "1"}]
    }"#;
    let file = StructureFile::from_json_str(dual_numbers, &Bindings::new()).unwrap();
    assert!(check_axioms(&file.structure).holds());
    let text = file.to_json_string();
    let again = StructureFile::from_json_str(&text, &Bindings::new()).unwrap();
    assert_eq!(again.structure, file.structure);
    assert_eq!(again.trace, file.trace);
    assert_eq!(again.to_json_string(), text);
    let path = scratch("dual.json", dual_numbers);
    let out = oqa(&["invariant", "--structure", &path, "--diagram", "builtin:hopf"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.ends_with("value: 1\n"));
}

#[test]
fn invariant_of_hopf_link() {
    let out = oqa(&["invariant", "--structure", "builtin:balanced-n2", "--diagram", "builtin:hopf", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let file = StructureFile::from_json_str(builtin_structure("balanced-n2").unwrap(), &Bindings::new()).unwrap();
    let expected = evaluate_link(&file.structure, &builtin("hopf").unwrap(), None).unwrap();
    assert_eq!(file.symbols.parse(v["value"].as_str().unwrap()).unwrap(), expected);
    assert_eq!(v["writhe"], 2);
    assert_eq!(v["algebra"], "M_2");
    assert!(v["whitney"].is_array());

    let bound = oqa(&["invariant", "--structure", "builtin:balanced-n2", "--diagram", "builtin:hopf", "--bind", "a=2", "--bind", "sbc=1", "--bind", "w1=1"]);
    let value = bound.stdout.lines().last().unwrap().trim_start_matches("value: ");
    let vars = [("a", 2), ("sbc", 1), ("w1", 1)].map(|(n, x)| (file.symbols.index(n).unwrap(), Scalar::from_int(x)));
    assert_eq!(value, file.symbols.format(&expected.substitute(&vars.into_iter().collect()).unwrap()));
}

#[test]
fn invariant_of_curl_is_a_matrix() {
    let out = oqa(&["invariant", "--structure", "builtin:balanced-n2", "--diagram", "builtin:curl", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let terms = v["value"].as_array().unwrap();
    let labels: Vec<&str> = terms.iter().map(|t| t["k"].as_str().unwrap()).collect();
    assert_eq!(labels, ["E11", "E22"]);
    assert_eq!(terms[0]["c"], "a^3 / sbc^2");
    assert_eq!(terms[1]["c"], "a");
}

#[test]
fn closed_diagram_needs_twist() {
    let out = oqa(&["invariant", "--structure", "builtin:sweedler", "--diagram", "builtin:unknot_cw"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("twist"), "{}", out.stderr);
    let tangle = oqa(&["invariant", "--structure", "builtin:sweedler", "--diagram", "builtin:curl"]);
    assert_eq!(tangle.code, 0);
}

#[test]
fn skein_polynomial_commands() {
    assert_eq!(oqa(&["conway", "--diagram", "builtin:trefoil_knot"]).stdout, "z^2 + 1\n");
    assert_eq!(oqa(&["conway", "--diagram", "builtin:unknot_ccw"]).stdout, "1\n");
    assert_eq!(oqa(&["homfly", "--diagram", "builtin:unknot_cw"]).stdout, "1\n");
    assert_eq!(oqa(&["homfly", "--diagram", "builtin:hopf"]).stdout, "α z + α z^-1 - α^-1 z^-1\n");
    let path = scratch("figure8.txt", "# figure eight\ncup_cw 0\ncup_cw 1 / cup_cw 2\nxp 0 / xn 1 / xp 0 / xn 1\ncap_cw 2 / cap_cw 1 / cap_cw 0\n");
    let v = json(&oqa(&["conway", "--diagram", &path, "--format", "json"]));
    assert_eq!(v["polynomial"], "-z^2 + 1");
    assert_eq!(oqa(&["homfly", "--diagram", "builtin:curl"]).code, 1);
}

#[test]
fn single_block_comparison_passes_in_homfly_branch() {
    let out = oqa(&["verify-section6", "--structure", "builtin:single-block-n2", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["branch"], "homfly");
    for row in v["diagrams"].as_array().unwrap() {
        assert_eq!(row["passes"], Value::Bool(true), "{row}");
        assert_eq!(row["homogeneous"], Value::Bool(true), "{row}");
    }
    let numeric = oqa(&["verify-section6", "--structure", "builtin:single-block-n3", "--bind", "a=2", "--bind", "sbc=3"]);
    assert_eq!(numeric.code, 0, "{}", numeric.stdout);
    assert!(numeric.stdout.contains("homogeneous=n/a"));
    let balanced = oqa(&["verify-section6", "--structure", "builtin:balanced-n3", "--diagram", "builtin:trefoil_knot"]);
    assert_eq!(balanced.code, 0, "{}", balanced.stdout);
}

#[test]
fn single_block_comparison_selects_alexander_branch() {
    let out = oqa(&["verify-section6", "--structure", "builtin:alexander-n2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["branch"], "alexander");
    assert_eq!(v["trace_g"], "0");
    for row in v["diagrams"].as_array().unwrap() {
        let closed = row["skein"].is_object();
        if closed {
            assert_eq!(row["skein"]["passed"], row["skein"]["checked"], "{row}");
            assert_eq!(row["identify"]["invariant"], "0", "{row}");
            assert_eq!(row["identify"]["passes"], Value::Bool(false), "{row}");
        } else {
            assert_eq!(row["identify"]["passes"], Value::Bool(true), "{row}");
        }
    }
    assert_eq!(out.code, 1);
}

#[test]
fn single_block_comparison_rejects_multi_block_input() {
    let exported = oqa(&["export-structure", "--structure", "builtin:balanced-n3", "--bind", "a=2", "--bind", "sbc=3", "--bind", "w1=1"]);
    let mut doc = json(&exported);
    doc["rho"]
        .as_array_mut()
        .unwrap()
        .retain(|t| !matches!((t["i"].as_str(), t["j"].as_str()), (Some("E13"), Some("E31")) | (Some("E23"), Some("E32"))));
    let path = scratch("multi-block.json", &doc.to_string());
    let out = oqa(&["verify-section6", "--structure", &path]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("multi-block"), "{}", out.stderr);
    let out = oqa(&["verify-section6", "--structure", "builtin:sweedler"]);
    assert_eq!(out.code, 1);
}

#[test]
fn classification_sampling_is_seeded() {
    let a = oqa(&["classify", "--count", "20", "--seed", "7", "--format", "json"]);
    let b = oqa(&["classify", "--count", "20", "--seed", "7", "--format", "json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
    assert_eq!(json(&a)["agree"], Value::Bool(true));
    let c = oqa(&["classify", "--count", "20", "--seed", "8", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn identical_invocations_give_identical_output() {
    let commands: [&[&str]; 4] = [
        &["invariant", "--structure", "builtin:balanced-n3", "--diagram", "builtin:trefoil_knot", "--format", "json"],
        &["verify-section6", "--structure", "builtin:single-block-n3", "--format", "json"],
        &["export-structure", "--structure", "builtin:sweedler"],
        &["homfly", "--diagram", "builtin:figure8_knot", "--format", "json"],
    ];
    for args in commands {
        assert_eq!(oqa(args), oqa(args), "{args:?}");
    }
}
