//! CLI JSON output checked against the shipped schemas in `docs/schemas`.
//!
//! The checker covers the keywords those schemas use (`$ref`, `type`,
//! `required`, `properties`, `additionalProperties`, `items`,
//! `prefixItems`, `enum`, `const`, `oneOf`, `minItems`, `maxItems`,
//! `minimum`); `pattern` is checked only for exact rationals, by parsing.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn load_schemas() -> HashMap<String, Value> {
    fs::read_dir(schema_dir())
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name().unwrap().to_str().unwrap().to_string();
            (name, serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect()
}

struct Checker {
    schemas: HashMap<String, Value>,
}

impl Checker {
    fn resolve<'a>(&'a self, base: &str, reference: &str) -> (String, &'a Value) {
        let (file, pointer) = reference.split_once('#').unwrap_or((reference, ""));
        let file = if file.is_empty() { base } else { file };
        let doc = &self.schemas[file];
        let target = if pointer.is_empty() {
            doc
        } else {
            doc.pointer(pointer).expect("pointer resolves")
        };
        (file.to_string(), target)
    }

    fn check(&self, base: &str, schema: &Value, v: &Value, path: &str) -> Result<(), String> {
        let fail = |why: &str| Err(format!("{path}: {why}"));
        if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
            let (file, target) = self.resolve(base, r);
            return self.check(&file, target, v, path);
        }
        if let Some(branches) = schema.get("oneOf").and_then(Value::as_array) {
            let passing = branches.iter().filter(|b| self.check(base, b, v, path).is_ok()).count();
            if passing != 1 {
                return fail(&format!("{passing} oneOf branches match"));
            }
        }
        if let Some(c) = schema.get("const") {
            if c != v {
                return fail(&format!("expected const {c}"));
            }
        }
        if let Some(e) = schema.get("enum").and_then(Value::as_array) {
            if !e.contains(v) {
                return fail("value not in enum");
            }
        }
        if let Some(t) = schema.get("type") {
            let types: Vec<&str> = match t {
                Value::String(s) => vec![s.as_str()],
                Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
                _ => vec![],
            };
            let ok = types.iter().any(|t| match *t {
                "object" => v.is_object(),
                "array" => v.is_array(),
                "string" => v.is_string(),
                "integer" => v.is_i64() || v.is_u64(),
                "number" => v.is_number(),
                "boolean" => v.is_boolean(),
                "null" => v.is_null(),
                _ => false,
            });
            if !ok {
                return fail(&format!("type {t} does not match {v}"));
            }
        }
        if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
            if x < min {
                return fail("below minimum");
            }
        }
        if let (Some(_), Some(s)) = (schema.get("pattern"), v.as_str()) {
            let is_rational_pattern = schema["pattern"].as_str().unwrap().contains('/');
            if is_rational_pattern && satlcp::rational::from_wire(s).is_err() {
                return fail("not an exact rational");
            }
        }
        if let Some(obj) = v.as_object() {
            for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
                if !obj.contains_key(key.as_str().unwrap()) {
                    return fail(&format!("missing required key {key}"));
                }
            }
            let props = schema.get("properties").and_then(Value::as_object);
            for (k, val) in obj {
                let sub = format!("{path}.{k}");
                match props.and_then(|p| p.get(k)) {
                    Some(s) => self.check(base, s, val, &sub)?,
                    None => match schema.get("additionalProperties") {
                        Some(Value::Bool(false)) => return fail(&format!("unexpected key {k}")),
                        Some(s @ Value::Object(_)) => self.check(base, s, val, &sub)?,
                        _ => {}
                    },
                }
            }
        }
        if let Some(arr) = v.as_array() {
            let len = arr.len() as u64;
            if schema.get("minItems").and_then(Value::as_u64).is_some_and(|m| len < m)
                || schema.get("maxItems").and_then(Value::as_u64).is_some_and(|m| len > m)
            {
                return fail("array length out of range");
            }
            let prefix = schema.get("prefixItems").and_then(Value::as_array);
            for (i, item) in arr.iter().enumerate() {
                let sub = format!("{path}[{i}]");
                match prefix.and_then(|p| p.get(i)) {
                    Some(s) => self.check(base, s, item, &sub)?,
                    None => {
                        if let Some(s) = schema.get("items") {
                            self.check(base, s, item, &sub)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn validate(&self, file: &str, v: &Value) -> Result<(), String> {
        self.check(file, &self.schemas[file], v, "$")
    }
}

fn run_json(args: &[&str]) -> Value {
    let o = Command::new(env!("CARGO_BIN_EXE_satlcp")).args(args).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_output_matches_record_schema() {
    let c = Checker {
        schemas: load_schemas(),
    };
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n",
        "p cnf 3 1\n-1 2 3 0\n",
        "p cnf 1 2\n1 0\n-1 0\n",
    ];
    for (i, text) in cases.iter().enumerate() {
        let p = dir.path().join(format!("{i}.cnf"));
        fs::write(&p, text).unwrap();
        let v = run_json(&["verify", "--input", p.to_str().unwrap()]);
        c.validate("verification_record.v1.schema.json", &v).unwrap();
    }
    for seed in 0..5 {
        let v = run_json(&["verify", "--n", "5", "--m", "15", "--seed", &seed.to_string()]);
        c.validate("verification_record.v1.schema.json", &v).unwrap();
    }
}

#[test]
fn campaign_output_matches_report_schema() {
    let c = Checker {
        schemas: load_schemas(),
    };
    let v = run_json(&["campaign", "--count", "25", "--seed", "11", "--n-max", "6"]);
    c.validate("campaign_report.v1.schema.json", &v).unwrap();
    let v = run_json(&["campaign", "--count", "3", "--no-tiny-family", "--timings"]);
    c.validate("campaign_report.v1.schema.json", &v).unwrap();
}

#[test]
fn lp_outputs_match_lp_schemas() {
    let c = Checker {
        schemas: load_schemas(),
    };
    let dir = tempfile::tempdir().unwrap();
    let lps = [
        r#"{"a":{"rows":1,"cols":1,"entries":[[0,0,"-1"]]},"b":["-1"],"cost":["-1"]}"#,
        r#"{"a":{"rows":1,"cols":1,"entries":[[0,0,"-1"]]},"b":["1"],"cost":["0"]}"#,
        r#"{"a":{"rows":0,"cols":1,"entries":[]},"b":[],"cost":["-1"]}"#,
    ];
    let mut statuses = Vec::new();
    for (i, lp) in lps.iter().enumerate() {
        let input: Value = serde_json::from_str(lp).unwrap();
        c.validate("lp_instance.v1.schema.json", &input).unwrap();
        let p = dir.path().join(format!("{i}.json"));
        fs::write(&p, lp).unwrap();
        let v = run_json(&["solve", "--lp", p.to_str().unwrap()]);
        c.validate("lp_outcome.v1.schema.json", &v["outcome"]).unwrap();
        statuses.push(v["outcome"]["status"].as_str().unwrap().to_string());
    }
    assert_eq!(statuses, ["optimal", "infeasible", "unbounded"]);
}

#[test]
fn checker_rejects_bad_documents() {
    let c = Checker {
        schemas: load_schemas(),
    };
    let mut v = run_json(&["verify", "--n", "3", "--m", "2"]);
    v["objective"] = Value::String("1/0".into());
    assert!(c.validate("verification_record.v1.schema.json", &v).is_err());
    let mut v = run_json(&["verify", "--n", "3", "--m", "2"]);
    v.as_object_mut().unwrap().remove("agreement");
    assert!(c.validate("verification_record.v1.schema.json", &v).is_err());
    let mut v = run_json(&["verify", "--n", "3", "--m", "2"]);
    v["extra"] = Value::Bool(true);
    assert!(c.validate("verification_record.v1.schema.json", &v).is_err());
}
