//! End-to-end tests of the `footprint` binary: the documented examples, the
//! exit-code contract, output determinism, and JSON schema conformance.

use std::path::Path;
use std::process::{Command, Output};

fn footprint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_footprint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn analyze_hermitian_example() {
    let out = footprint(&[
        "analyze",
        "X1^3+X2^2+X2",
        "--field",
        "2^2",
        "--grid",
        "full,full",
        "--order",
        "lex:X2,X1",
        "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let report = &value["report"];
    assert_eq!(report["attains_bound"], true);
    assert_eq!(report["classification"], "NontrivialAttaining");
    assert_eq!(report["root_count"], 8);
    assert_eq!(report["bound"], 8);
}

#[test]
fn analyze_trivial_and_not_attaining() {
    let out = footprint(&[
        "analyze", "X1", "--field", "3", "--grid", "full,full", "--order", "lex:X1,X2",
        "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["report"]["classification"], "TrivialForm");
    assert_eq!(value["report"]["root_count"], 3);
    assert_eq!(value["report"]["bound"], 3);

    let out = footprint(&[
        "analyze", "X1^2+X2", "--field", "3", "--grid", "full,full", "--order",
        "lex:X1,X2", "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["report"]["classification"], "NotAttaining");
    assert_eq!(value["report"]["root_count"], 3);
    assert_eq!(value["report"]["bound"], 6);
}

#[test]
fn parse_errors_exit_2() {
    let out = footprint(&[
        "analyze", "X1 ++ X2", "--field", "3", "--grid", "full,full", "--order",
        "lex:X1,X2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"), "stderr was: {}", err);

    let out = footprint(&[
        "analyze", "X1", "--field", "6", "--grid", "full,full", "--order", "lex:X1,X2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flags are usage errors.
    let out = footprint(&["analyze", "X1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_commands() {
    let out = footprint(&["construct", "hermitian", "--q", "3", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["expected_roots"], 27);
    assert_eq!(value["counted_roots"], 27);
    assert_eq!(value["verified"], true);
    assert_eq!(value["field"], "3^2");

    let out = footprint(&[
        "construct", "trivial", "--field", "3", "--grid", "full,full", "--s1", "0",
        "--s2", "0,1", "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["expected_roots"], 7);
    assert_eq!(value["verified"], true);

    // Degenerate trace-diff parameter is an input error.
    let out = footprint(&["construct", "trace-diff", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degenerate"), "stderr was: {}", err);

    let out = footprint(&["construct", "trace-diff", "--q", "3", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["expected_roots"], 63);
    assert_eq!(value["h_expected_roots"], 18);
    assert_eq!(value["verified"], true);
}

#[test]
fn verify_exit_codes() {
    let out = footprint(&["verify", "--suite", "bi-implication", "--field", "3"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("PASS"));

    let out = footprint(&["verify", "--suite", "unknown"]);
    assert_eq!(out.status.code(), Some(2));

    let out = footprint(&[
        "verify", "--suite", "lemlimlom", "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn search_is_deterministic_and_finds_trivial_attainers() {
    let args = [
        "search", "X1*X2", "--field", "2", "--grid", "full,full", "--order",
        "lex:X1,X2", "--exhaustive",
    ];
    let a = footprint(&args);
    let b = footprint(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "exhaustive search must be byte-stable");
    let text = stdout_of(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5); // 4 hits + summary
    for hit in &lines[..4] {
        let value: serde_json::Value = serde_json::from_str(hit).unwrap();
        assert_eq!(value["report"]["classification"], "TrivialForm");
    }
    let summary: serde_json::Value = serde_json::from_str(lines[4]).unwrap();
    assert_eq!(summary["count"], 4);
    assert_eq!(summary["exhaustive"], true);

    // Sampling mode: same seed, same bytes; empty hit lists still succeed.
    let args = [
        "search", "X1^2*X2^2", "--field", "3^2", "--grid", "full,full", "--order",
        "lex:X1,X2", "--budget", "25", "--seed", "9",
    ];
    let a = footprint(&args);
    let b = footprint(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_of(&a);
    let summary: serde_json::Value =
        serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["seed"], 9);
}

#[test]
fn printed_polynomials_reparse() {
    // The analyze report echoes polynomials that must parse back unchanged.
    let out = footprint(&[
        "analyze",
        "(w+1)*X1^2*X2+w*X1+2",
        "--field",
        "3^2",
        "--grid",
        "full,full",
        "--order",
        "grevlex:X1,X2",
        "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let printed = value["polynomial"].as_str().unwrap();
    let out2 = footprint(&[
        "analyze", printed, "--field", "3^2", "--grid", "full,full", "--order",
        "grevlex:X1,X2", "--json",
    ]);
    let value2: serde_json::Value = serde_json::from_str(&stdout_of(&out2)).unwrap();
    assert_eq!(value["report"], value2["report"]);
    assert_eq!(value["polynomial"], value2["polynomial"]);
}

#[test]
fn field_cap_override_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_footprint"))
        .args(["analyze", "X1", "--field", "2^2", "--grid", "full", "--order", "lex:X1"])
        .env("FOOTPRINT_FIELD_CAP", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("exceeds the cap"), "stderr was: {}", err);
}

#[test]
fn analyze_json_matches_shipped_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schema/footprint_report.json");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    for (poly, field, grid, order) in [
        ("X1^3+X2^2+X2", "2^2", "full,full", "lex:X2,X1"),
        ("X1", "3", "full,full", "lex:X1,X2"),
        ("X1^2+X2", "3", "full,full", "grlex:X1,X2"),
        ("X1*X2^2+X1", "3", "full,full", "weighted:1,2;lex:X1,X2"),
        ("(w+1)*X1*X2+1", "3^2", "trace_nonzero:1,[0,1,w]", "grevlex:X2,X1"),
    ] {
        let out = footprint(&[
            "analyze", poly, "--field", field, "--grid", grid, "--order", order, "--json",
        ]);
        assert!(out.status.success(), "analyze failed for {}", poly);
        let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
        let mut errors = Vec::new();
        validate(&value["report"], &schema, "report", &mut errors);
        assert!(errors.is_empty(), "schema violations for {}: {:?}", poly, errors);
    }
}

/// Minimal JSON Schema checker covering the subset the shipped schema uses:
/// type, required, properties, additionalProperties, items, enum, minimum.
fn validate(
    value: &serde_json::Value,
    schema: &serde_json::Value,
    path: &str,
    errors: &mut Vec<String>,
) {
    if let Some(expected) = schema["type"].as_str() {
        let matches = match expected {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            "number" => value.is_number(),
            other => {
                errors.push(format!("{}: unsupported schema type {}", path, other));
                return;
            }
        };
        if !matches {
            errors.push(format!("{}: expected {}, got {}", path, expected, value));
            return;
        }
    }
    if let Some(allowed) = schema["enum"].as_array() {
        if !allowed.contains(value) {
            errors.push(format!("{}: {} not in enum", path, value));
        }
    }
    if let Some(minimum) = schema["minimum"].as_i64() {
        if let Some(n) = value.as_i64() {
            if n < minimum {
                errors.push(format!("{}: {} below minimum {}", path, n, minimum));
            }
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema["required"].as_array() {
            for key in required {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    errors.push(format!("{}: missing required key {}", path, key));
                }
            }
        }
        let properties = &schema["properties"];
        for (key, sub) in obj {
            match properties.get(key) {
                Some(sub_schema) => {
                    validate(sub, sub_schema, &format!("{}.{}", path, key), errors)
                }
                None => {
                    if schema["additionalProperties"] == serde_json::Value::Bool(false) {
                        errors.push(format!("{}: unexpected key {}", path, key));
                    }
                }
            }
        }
    }
    if let Some(items) = value.as_array() {
        let item_schema = &schema["items"];
        if !item_schema.is_null() {
            for (i, item) in items.iter().enumerate() {
                validate(item, item_schema, &format!("{}[{}]", path, i), errors);
            }
        }
    }
}
