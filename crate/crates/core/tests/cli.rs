use std::process::Command;

use serde_json::Value;

fn ramify(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ramify")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/output.v1.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn check(v: &jsonschema::Validator, text: &str) -> Value {
    let j: Value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{}: {}", e, text));
    let errs: Vec<String> = v.iter_errors(&j).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errs.is_empty(), "{}\n{:#?}", text, errs);
    j
}

fn ok_json(v: &jsonschema::Validator, args: &[&str]) -> Value {
    let (code, out, err) = ramify(args);
    assert_eq!(code, 0, "{:?}: {}", args, err);
    check(v, &out)
}

#[test]
fn documented_examples() {
    let v = validator();
    let j = ok_json(&v, &["char", "conn(2; x^(-3/2); at=inf)"]);
    assert_eq!(j["dpc"], serde_json::json!([2, 3, [3]]));
    assert_eq!(j["e"], serde_json::json!([2, 1]));
    assert_eq!(j["schema"], 1);

    let j = ok_json(&v, &["resolve", "check", "(2,5;5)"]);
    assert_eq!(j["resolvable"], false);
    assert_eq!(j["violated"], 1);

    let j = ok_json(&v, &["stokes", "dirs", "conn(2; x^(-3/2); at=0)"]);
    assert_eq!(j["h"], 3);
    assert_eq!(j["dirs"], serde_json::json!(["pi/3", "pi", "5pi/3"]));
}

#[test]
fn every_verb_validates() {
    let v = validator();
    let cusp0 = "conn(2; x^(-3/2); at=0)";
    let two = "conn(4; x^(-3/2) + x^(-5/4); at=0)";
    let cases: Vec<Vec<&str>> = vec![
        vec!["curve", "char", "param(4; t^6 + t^7)"],
        vec!["curve", "milnor", "param(2; t^3)"],
        vec!["curve", "milnor", "(4;6,7)"],
        vec!["curve", "milnor", "y^2 - x^3"],
        vec!["curve", "blowup", "param(2; t^5)"],
        vec!["curve", "intersect", "param(2; t^3)", "param(2; t^5)"],
        vec!["curve", "implicit", "param(2; t^3)"],
        vec!["invariants", "conn(4; x^(-3/2) + x^(-5/4))"],
        vec!["iso", "conn(2; x^(-3/2))", "conn(2; x^(-5/2))"],
        vec!["iso", "conn(2; x^(-3/2))", "conn(2; x^(-3/2) + 1/7)"],
        vec!["lft", "--kind", "0inf", "--check-blowup", cusp0],
        vec!["lft", "--kind", "infinf", "--inverse", "conn(1; -x^(-3) + 3/2)"],
        vec!["lft", "--kind", "inf0", "--level", "char", "(3,2;2)"],
        vec!["resolve", "plan", "(4,6;6,3)"],
        vec!["resolve", "plan", "(2,5;5)"],
        vec!["resolve", "run", "conn(4; x^(-3/2) + x^(-3/4))"],
        vec!["stokes", "orders", cusp0],
        vec!["stokes", "word", "conn(4; x^(-5/4); at=0)"],
        vec!["stokes", "braid-check", "conn(4; x^(-5/4); at=0)"],
        vec!["stokes", "braid-check", two],
        vec!["stokes", "rep-dim", cusp0, "--alpha", "1,2"],
        vec!["stokes", "decomp", two],
        vec!["--seed", "5", "invariants", "random"],
        vec!["--seed", "5", "char", "random(3,7;7)"],
    ];
    for c in &cases {
        ok_json(&v, c);
    }
    let j = ok_json(&v, &["resolve", "plan", "(4,6;6,3)"]);
    assert_eq!(j["plan"]["moves"].as_array().unwrap().len(), 3);
    let j = ok_json(&v, &["stokes", "braid-check", two]);
    assert_eq!(j["report"]["pass"], true);
}

#[test]
fn exit_codes_and_error_documents() {
    let v = validator();
    let (code, out, err) = ramify(&["char", "conn(2; x^(-3/2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let j = check(&v, &err);
    assert_eq!(j["error"]["kind"], "ParseError");

    let (code, _, err) = ramify(&["lft", "--kind", "inf0", "conn(2; x^(-3/2))"]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, &err)["error"]["kind"], "PreconditionViolated");

    let (code, _, _) = ramify(&["char", "conn(2; x^(99999999999999999999999))"]);
    assert_eq!(code, 2);
    let (code, _, _) = ramify(&["--precision", "8", "char", "conn(2; x^(-3/2))"]);
    assert_eq!(code, 2);
    let (code, _, _) = ramify(&["--format", "yaml", "char", "conn(2; x^(-3/2))"]);
    assert_eq!(code, 2);
    let (code, _, _) = ramify(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, err) = ramify(&["--format", "text", "resolve", "run", "conn(2; x^(-5/2))"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn text_format_and_census() {
    let (code, out, _) = ramify(&["--format", "text", "stokes", "word", "conn(2; x^(-3/2); at=0)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "s1 s1 s1");

    let (code, out, _) = ramify(&["census", "--qmax", "3", "--pmax", "5", "--gmax", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,p,betas,resolvable,plan_len");
    assert!(lines.contains(&"2,3,3,true,1"));
    assert!(lines.contains(&"2,5,5,false,"));
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 5));
}
