use jsonschema::JSONSchema;
use serde_json::Value;

use sasaki_cli::{run_with_env, CommandResult};

const SCHEMA: &str = include_str!("../schema/command_result.schema.json");

fn sasaki(args: &str) -> sasaki_cli::Outcome {
    run_with_env(std::iter::once("sasaki").chain(args.split_whitespace()), None)
}

fn json_of(args: &str) -> Value {
    let out = sasaki(args);
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

/// One invocation per subcommand, plus variants that reach optional fields.
const EVERY_SUBCOMMAND: &[&str] = &[
    "join --base cpn:2 --w 5,1",
    "join --base quadric --w 1,1",
    "regular-cones --base custom:3,2",
    "quotient --base custom:1,2 --w 11,1 --v 4,5",
    "quotient --base cpn:1 --w 3,1 --v 1,2",
    "periods --base custom:1,2 --w 11,1 --v 4,5",
    "cohomology --family sphere --w 3,2 --r 2",
    "cohomology --family quadric --w 2,1",
    "cohomology --family delpezzo --w 5,1 --k 1",
    "classes --product 6545 --r 2",
    "classes --W 30 --r 4",
    "homotopy --w 15,1 --wprime 5,3",
    "homotopy --w 4,1 --wprime 3,1",
    "homotopy --w 6,1 --wprime 3,2",
    "p1 --w 5,3",
    "homeo --w 15,1 --wprime 5,3",
    "ke-solve --w 3,1 --dn 1",
    "ke-solve --w 5,2 --base cpn:1",
    "ke-defect --w 5,2 --v 5,4 --dn 1",
    "family --k 2 --dn 1",
    "family --k 3/2 --dn 2 --base custom:2,2",
    "ypq --p 2 --q 1",
    "ypq --from-ab 2 1",
    "soliton --w 3,1 --v 1,1 --dn 1",
    "soliton --w 5,2 --v 5,4 --dn 1",
    "extremal --w 3,1 --v 1,1 --dn 1 --index 2",
    "enumerate --dn 1 --w-max 6 --v-max 4",
    "enumerate --dn 1 --w-max 8 --v-max 5 --regularity regular --rationality rational",
];

#[test]
fn every_subcommand_validates_against_the_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    for args in EVERY_SUBCOMMAND {
        for extra in ["", " --exact-only"] {
            let full = format!("{args}{extra}");
            let doc = json_of(&full);
            if let Err(errors) = compiled.validate(&doc) {
                let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
                panic!("{full}: {msgs:#?}");
            };
        }
    }
}

#[test]
fn schema_rejects_float_rationals() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = JSONSchema::compile(&schema).unwrap();
    let mut doc = json_of("ke-defect --w 5,2 --v 5,4 --dn 1");
    doc["outputs"]["defect"] = serde_json::json!(0.0);
    assert!(!compiled.is_valid(&doc));
}

#[test]
fn output_is_byte_stable() {
    for args in EVERY_SUBCOMMAND {
        let a = sasaki(args);
        let b = sasaki(args);
        assert_eq!(a, b, "{args}");
        let t1 = sasaki(&format!("{args} --format table"));
        let t2 = sasaki(&format!("{args} --format table"));
        assert_eq!(t1, t2, "{args}");
    }
}

#[test]
fn command_result_round_trips() {
    for args in EVERY_SUBCOMMAND {
        let out = sasaki(args);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        let parsed = CommandResult::from_json(&doc).unwrap();
        assert_eq!(parsed.command, args.split_whitespace().next().unwrap());
        let again = serde_json::to_string_pretty(&parsed.to_json()).unwrap() + "\n";
        assert_eq!(again, out.stdout, "{args}");
    }
}

#[test]
fn quotient_worked_example() {
    let doc = json_of("quotient --base custom:1,2 --w 11,1 --v 4,5");
    let q = &doc["outputs"]["quotient"];
    assert_eq!(q["s"], 3);
    assert_eq!(q["m1"], 16);
    assert_eq!(q["m2"], 20);
    assert_eq!(q["degree_n"], 17);
    assert_eq!(q["delta"], "(15/16)D1 + (19/20)D2");
}

#[test]
fn ke_solve_reports_one_irregular_root() {
    let doc = json_of("ke-solve --w 3,1 --dn 1");
    let roots = doc["outputs"]["solution"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0]["classification"], "irregular");
    let value = roots[0]["approx"]["value"].as_f64().unwrap();
    assert!((value - (1.0 + 13f64.sqrt()) / 6.0).abs() < 1e-11);
}

#[test]
fn homotopy_example_is_inequivalent() {
    let doc = json_of("homotopy --w 15,1 --wprime 5,3");
    assert_eq!(doc["outputs"]["verdict"], "inequivalent");
}

#[test]
fn exact_only_drops_every_float() {
    fn has_float(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_f64(),
            Value::Array(a) => a.iter().any(has_float),
            Value::Object(o) => o
                .iter()
                .any(|(k, v)| k != "tol" && (k == "approx" || has_float(v))),
            _ => false,
        }
    }
    for args in EVERY_SUBCOMMAND {
        let doc = json_of(&format!("{args} --exact-only"));
        assert!(!has_float(&doc["outputs"]), "{args}");
    }
}

#[test]
fn approximate_fields_carry_marker_and_bound() {
    let doc = json_of("soliton --w 3,1 --v 1,1 --dn 1");
    let a = &doc["outputs"]["a"];
    assert_eq!(a["approx"], true);
    assert!(a["error_bound"].as_f64().unwrap() <= 1e-12);
    assert_eq!(doc["outputs"]["g_at_zero"], "-2/3");
    assert_eq!(doc["outputs"]["bracket_signs"], serde_json::json!([-1, 1]));
}

#[test]
fn precision_flag_beats_environment() {
    let width = |doc: &Value| doc["outputs"]["solution"]["roots"][0]["interval"]["width"].clone();
    let argv = |extra: &[&'static str]| {
        let mut v = vec!["sasaki", "ke-solve", "--w", "3,1", "--dn", "1"];
        v.extend_from_slice(extra);
        v
    };
    let env = run_with_env(argv(&[]), Some("1/1000".into()));
    let env_doc: Value = serde_json::from_str(&env.stdout).unwrap();
    assert_eq!(env_doc["inputs"]["precision"], "1/1000");
    let flag = run_with_env(argv(&["--precision", "1e-20"]), Some("1/1000".into()));
    let flag_doc: Value = serde_json::from_str(&flag.stdout).unwrap();
    assert_eq!(flag_doc["inputs"]["precision"], "1/100000000000000000000");
    assert_ne!(width(&env_doc), width(&flag_doc));
    let bad = run_with_env(argv(&[]), Some("zero".into()));
    assert_eq!(bad.code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(sasaki("").code, 2);
    assert_eq!(sasaki("frobnicate").code, 2);
    assert_eq!(sasaki("join --base cpn:2 --w 4,2").code, 2);
    assert_eq!(sasaki("quotient --w 3,1 --v 1,1").code, 2);
    assert_eq!(sasaki("soliton --w 3,1 --v 3,1 --dn 1").code, 2);
    assert_eq!(sasaki("homeo --w 15,1 --wprime 3,2").code, 2);
    assert_eq!(sasaki("homeo --w 6,1 --wprime 3,2").code, 2);
    assert_eq!(sasaki("family --k 1 --dn 1").code, 2);
    assert_eq!(sasaki("ypq --p 3 --q 3").code, 2);
    assert_eq!(sasaki("cohomology --family delpezzo --w 2,1").code, 2);
    assert_eq!(sasaki("soliton --w 3,1 --v 1,1 --dn 1 --tol 0").code, 2);
    let help = sasaki("--help");
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("ke-solve"));
    let err = sasaki("join --base cpn:2 --w 4,2");
    assert!(err.stdout.is_empty());
    assert!(err.stderr.starts_with("error:"));
}

#[test]
fn enumerate_is_sorted_and_filtered() {
    let doc = json_of("enumerate --dn 1 --w-max 10 --v-max 6");
    let entries = doc["outputs"]["entries"].as_array().unwrap();
    let keys: Vec<(u64, u64)> = entries
        .iter()
        .map(|e| (e["w"][0].as_u64().unwrap(), e["w"][1].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);

    let regular = json_of("enumerate --dn 1 --w-max 10 --v-max 6 --regularity regular");
    for e in regular["outputs"]["entries"].as_array().unwrap() {
        for r in e["rays"].as_array().unwrap() {
            assert_eq!(r["regularity"], "regular");
            assert_eq!(r["v"], serde_json::json!([1, 1]));
        }
    }
    // Over CP^1 the only regular cone is w = (3,1).
    let ws: Vec<&Value> = regular["outputs"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| &e["w"])
        .collect();
    assert_eq!(ws, vec![&serde_json::json!([3, 1])]);

    let rational = json_of("enumerate --dn 1 --w-max 10 --v-max 2 --rationality rational");
    for e in rational["outputs"]["entries"].as_array().unwrap() {
        assert!(e["ke_roots"]
            .as_array()
            .unwrap()
            .iter()
            .any(|r| r["classification"] != "irregular"));
    }
}

#[test]
fn table_format_lists_paths() {
    let out = sasaki("p1 --w 5,3 --format table");
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l.starts_with("outputs.residue")));
    assert!(out.stdout.lines().any(|l| l.starts_with("command") && l.ends_with("p1")));
}
