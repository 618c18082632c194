//! JSON output of the command line, pinned to files under `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use serde_json::Value;

use multikit::axioms::validate;
use multikit::cli::run;
use multikit::conformance::conformance_report;
use multikit::extension::{closure_tower, CandidateOrder};
use multikit::morphism::{classify_map, MorphismTable};
use multikit::poly::{euclid_divide, parse_poly};
use multikit::quotient::{irreducibility, make_quotient, ProductMode};
use multikit::structures::{builtin, make_l9};

const CASES: &[(&str, &[&str], i32)] = &[
    ("validate_x2", &["validate", "builtin:x2"], 0),
    ("validate_h3", &["validate", "builtin:h3"], 0),
    ("char_q2", &["char", "builtin:q2"], 0),
    ("table_krasner", &["table", "builtin:krasner"], 0),
    ("ideals_x2", &["ideals", "builtin:x2"], 0),
    ("morphism_h3_l9", &["morphism", "builtin:h3", "builtin:l9", "--map", "0:0,1:1,2:2"], 0),
    ("morphism_h3_h5", &["morphism", "builtin:h3", "builtin:h5", "--map", "0:0,1:1,2:2"], 1),
    ("iso_h2_krasner", &["iso", "builtin:h2", "builtin:krasner"], 0),
    ("poly_eval_h3", &["poly", "eval", "builtin:h3", "X^2+2", "1"], 0),
    ("poly_mul_h3", &["poly", "mul", "builtin:h3", "X+1", "X+2"], 0),
    ("poly_div_h3", &["poly", "div", "builtin:h3", "X^2+2", "X+1"], 0),
    ("poly_div_all_h3", &["poly", "div", "builtin:h3", "X^2+2", "X+1", "--all"], 0),
    ("poly_roots_q2", &["poly", "roots", "builtin:q2", "X^2+-1"], 0),
    ("irred_h3", &["irred", "builtin:h3", "X^2+2"], 0),
    ("irred_h3_reducible", &["irred", "builtin:h3", "X^2+1"], 1),
    ("quotient_h3_strict", &["quotient", "builtin:h3", "X^2+2"], 0),
    ("quotient_h3_saturated", &["quotient", "builtin:h3", "X^2+2", "--mode", "saturated"], 0),
    ("extend_h3", &["extend", "builtin:h3", "X^2+2"], 0),
    ("closure_h3", &["closure", "builtin:h3", "--max-degree", "2", "--max-steps", "1"], 0),
    ("conformance", &["conformance"], 1),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

fn json_of(args: &[&str]) -> (i32, String) {
    let argv: Vec<&str> = std::iter::once("multikit")
        .chain(args.iter().copied())
        .chain(["--format", "json"])
        .collect();
    let out = run(argv);
    assert!(out.stderr.is_empty(), "{args:?}: {}", out.stderr);
    (out.code, out.stdout)
}

fn parsed(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(golden_path(name)).unwrap()).unwrap()
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args, code) in CASES {
        let (got_code, got) = json_of(args);
        assert_eq!(got_code, *code, "{name}: exit code");
        let (_, again) = json_of(args);
        assert_eq!(got, again, "{name}: output differs between runs");
        let path = golden_path(name);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "{name}: differs from {}", path.display());
    }
}

#[test]
fn golden_validate_matches_library() {
    let x2 = builtin("x2").unwrap();
    let mut want = validate(&x2).to_json(&x2);
    want["implication_violation"] = Value::Null;
    assert_eq!(parsed("validate_x2"), want);
    assert_eq!(parsed("validate_x2")["verdicts"]["hyperring"]["status"], "fail");
}

#[test]
fn golden_morphism_matches_library() {
    let h3 = builtin("h3").unwrap();
    let l9 = make_l9();
    let m = MorphismTable::parse(&h3, &l9, "0:0,1:1,2:2").unwrap();
    assert_eq!(parsed("morphism_h3_l9")["kind"], classify_map(&h3, &l9, &m).kind.label());
}

#[test]
fn golden_division_matches_library() {
    let h3 = builtin("h3").unwrap();
    let d = euclid_divide(&h3, &parse_poly(&h3, "X^2+2").unwrap(), &parse_poly(&h3, "X+1").unwrap()).unwrap();
    let g = parsed("poly_div_h3");
    assert_eq!(g["q"], d.q.render(&h3));
    assert_eq!(g["r"], d.r.render(&h3));
}

#[test]
fn golden_irreducibility_matches_library() {
    let h3 = builtin("h3").unwrap();
    let v = irreducibility(&h3, &parse_poly(&h3, "X^2+1").unwrap()).unwrap();
    let g = parsed("irred_h3_reducible");
    assert_eq!(g["irreducible"], v.irreducible);
    let (a, b) = v.factors.unwrap();
    assert_eq!(g["factors"], serde_json::json!([a.render(&h3), b.render(&h3)]));
}

#[test]
fn golden_quotients_match_library() {
    let h3 = builtin("h3").unwrap();
    let p = parse_poly(&h3, "X^2+2").unwrap();
    for (name, mode) in [("quotient_h3_strict", ProductMode::Strict), ("quotient_h3_saturated", ProductMode::saturated_for(&p))] {
        let q = make_quotient(&h3, &p, mode).unwrap();
        let g = parsed(name);
        assert_eq!(g["report"], q.report.to_json(&q.ring), "{name}");
        assert_eq!(g["embedding_kind"], q.embedding_class.kind.label(), "{name}");
    }
}

#[test]
fn golden_closure_matches_library() {
    let t = closure_tower(&builtin("h3").unwrap(), 2, 1, CandidateOrder::Canonical).unwrap();
    assert_eq!(parsed("closure_h3"), t.manifest().1);
    assert_eq!(parsed("closure_h3")["steps"][0]["size"], 9);
}

#[test]
fn golden_conformance_matches_library() {
    assert_eq!(parsed("conformance"), conformance_report(0).unwrap().to_json());
}

#[test]
fn closure_writes_manifest() {
    let dir = std::env::temp_dir().join(format!("multikit-closure-{}", std::process::id()));
    let dir_s = dir.to_str().unwrap();
    let out = run(["multikit", "closure", "builtin:h3", "--max-steps", "1", "--out", dir_s]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["steps"][0]["file"], "step1.msr");
    let top = multikit::structures::parse_structure(&std::fs::read_to_string(dir.join("step1.msr")).unwrap()).unwrap();
    assert_eq!(top.size(), 9);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn structures_load_from_files() {
    let dir = std::env::temp_dir().join(format!("multikit-msr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("l9.msr");
    std::fs::write(&path, multikit::structures::L9_MSR).unwrap();
    let out = run(["multikit", "char", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let missing = run(["multikit", "char", dir.join("missing.msr").to_str().unwrap()]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("missing.msr"));
    std::fs::remove_dir_all(&dir).unwrap();
}
