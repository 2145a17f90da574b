//! Helpers shared by the CLI integration tests: running the binary and
//! validating its JSON output against the shipped schemas.
//!
//! The validator implements exactly the JSON-Schema subset the schemas in
//! `schemas/` use: `type` (single or list), `enum`, `properties`,
//! `required`, boolean `additionalProperties`, `items`,
//! `minItems`/`maxItems`, `minimum`/`maximum`, `minLength`/`maxLength`.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub struct RunResult {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn to_result(output: Output) -> RunResult {
    RunResult {
        status: output.status.code().expect("process not killed by signal"),
        stdout: String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    }
}

/// Runs the CLI with `args` and captures everything.
pub fn run(args: &[&str]) -> RunResult {
    let output = Command::new(env!("CARGO_BIN_EXE_scanstat"))
        .args(args)
        .output()
        .expect("binary runs");
    to_result(output)
}

/// Runs the CLI feeding `stdin` to it.
#[allow(dead_code)]
pub fn run_with_stdin(args: &[&str], stdin: &str) -> RunResult {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_scanstat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(stdin.as_bytes())
        .expect("stdin accepts input");
    to_result(child.wait_with_output().expect("binary runs"))
}

/// Parses the single-line JSON report from stdout.
pub fn stdout_json(r: &RunResult) -> Value {
    serde_json::from_str(r.stdout.trim())
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", r.stdout))
}

/// Parses the error JSON from stderr.
#[allow(dead_code)]
pub fn stderr_json(r: &RunResult) -> Value {
    serde_json::from_str(r.stderr.trim())
        .unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {:?}", r.stderr))
}

/// Loads a schema shipped under `schemas/`.
pub fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Validates `value` against the named schema, panicking with every
/// violation on failure.
pub fn assert_valid(value: &Value, schema_name: &str) {
    let schema = schema(schema_name);
    let mut violations = Vec::new();
    validate(value, &schema, "$", &mut violations);
    assert!(
        violations.is_empty(),
        "{schema_name} violations:\n  {}\nvalue: {value}",
        violations.join("\n  ")
    );
}

fn type_matches(value: &Value, name: &str) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "number" => value.is_number(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        other => panic!("schema names unknown type {other:?}"),
    }
}

fn validate(value: &Value, schema: &Value, path: &str, out: &mut Vec<String>) {
    let Some(rules) = schema.as_object() else {
        return;
    };

    if let Some(types) = rules.get("type") {
        let names: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(Value::as_str).collect(),
            other => panic!("schema `type` must be string or list, got {other}"),
        };
        if !names.iter().any(|t| type_matches(value, t)) {
            out.push(format!("{path}: expected type {names:?}, got {value}"));
            return;
        }
    }

    if let Some(allowed) = rules.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            out.push(format!("{path}: {value} not among {allowed:?}"));
        }
    }

    // A null that passed the type/enum gate has nothing further to satisfy.
    if value.is_null() {
        return;
    }

    if let Some(map) = value.as_object() {
        if let Some(required) = rules.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    out.push(format!("{path}: missing required property {key:?}"));
                }
            }
        }
        let props = rules.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(v) = map.get(key) {
                    validate(v, sub, &format!("{path}.{key}"), out);
                }
            }
        }
        if rules.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in map.keys() {
                if !props.is_some_and(|p| p.contains_key(key)) {
                    out.push(format!("{path}: unexpected property {key:?}"));
                }
            }
        }
    }

    if let Some(list) = value.as_array() {
        if let Some(items) = rules.get("items") {
            for (idx, v) in list.iter().enumerate() {
                validate(v, items, &format!("{path}[{idx}]"), out);
            }
        }
        if let Some(min) = rules.get("minItems").and_then(Value::as_u64) {
            if (list.len() as u64) < min {
                out.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = rules.get("maxItems").and_then(Value::as_u64) {
            if (list.len() as u64) > max {
                out.push(format!("{path}: more than {max} items"));
            }
        }
    }

    if let Some(x) = value.as_f64() {
        if let Some(min) = rules.get("minimum").and_then(Value::as_f64) {
            if x < min {
                out.push(format!("{path}: {x} below minimum {min}"));
            }
        }
        if let Some(max) = rules.get("maximum").and_then(Value::as_f64) {
            if x > max {
                out.push(format!("{path}: {x} above maximum {max}"));
            }
        }
    }

    if let Some(s) = value.as_str() {
        if let Some(min) = rules.get("minLength").and_then(Value::as_u64) {
            if (s.chars().count() as u64) < min {
                out.push(format!("{path}: shorter than {min}"));
            }
        }
        if let Some(max) = rules.get("maxLength").and_then(Value::as_u64) {
            if (s.chars().count() as u64) > max {
                out.push(format!("{path}: longer than {max}"));
            }
        }
    }
}
