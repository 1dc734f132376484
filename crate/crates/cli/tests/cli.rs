use std::io::Write;

use proptest::prelude::*;
use qsl2_cli::eval::{eval_str, Value};
use qsl2_cli::json::read_document;
use qsl2_cli::parse::parse_expr;
use qsl2_cli::run;

fn qsl2(args: &[&str]) -> qsl2_cli::RunResult {
    run(std::iter::once("qsl2").chain(args.iter().copied()))
}

#[test]
fn documented_invocations() {
    assert_eq!(qsl2(&["normalize", "e*F(1)"]).stdout, "F(1) e + K - K^-1\n");
    assert_eq!(qsl2(&["theta", "--terms=2"]).stdout, "1 (x) 1 - F(1) (x) e\n");
    let hc = qsl2(&["hc", "sigma(1)"]);
    assert_eq!(eval_str(hc.stdout.trim()).unwrap(), eval_str("(K-K^-1)*(v^2*K - v^-2*K^-1)").unwrap());
    assert_eq!(qsl2(&["normalize", "0", "--format=json"]).stdout, "{\"terms\":[]}\n");
}

#[test]
fn member_and_truncate() {
    for (args, want) in [
        (&["member", "e", "--ideal=U1pow", "--n=1"][..], "IN\n"),
        (&["member", "F(1)", "--ideal=U1pow", "--n=1"][..], "OUT\n"),
        (&["truncate", "F(5)*e", "--filtration=Un", "--n=3"][..], "F(5) e\n"),
        (&["truncate", "e^3", "--filtration=Un", "--n=3"][..], "0\n"),
    ] {
        let r = qsl2(args);
        assert_eq!((r.code, r.stdout.as_str()), (0, want), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qsl2(&["--help"]).code, 0);
    assert_eq!(qsl2(&["verify", "--suite=literal-un"]).code, 1);
    for args in
        [&["nope"][..], &["normalize", "(e"], &["normalize", "F(-1)"], &["hc", "1 (x) e"], &["verify", "--suite=x"]]
    {
        let r = qsl2(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty() && !r.stderr.is_empty(), "{args:?}");
    }
    let syntax = qsl2(&["normalize", "e + * F"]);
    assert!(syntax.stderr.contains("column"), "{}", syntax.stderr);
}

#[test]
fn non_integral_note() {
    let r = qsl2(&["normalize", "E"]);
    assert_eq!(r.code, 0);
    assert!(r.stderr.contains("outside Z[v,v^-1]"));
    assert!(qsl2(&["normalize", "e"]).stderr.is_empty());
}

#[test]
fn verify_report_lists_seed_and_anchors() {
    let r = qsl2(&["verify", "--suite=qcomb", "--max=3", "--seed=9"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("verify suite=qcomb seed=9 max=3\n"));
    assert!(r.stdout.lines().filter(|l| l.starts_with("[PASS] qcomb: ")).count() >= 3);
    let j: serde_json::Value =
        serde_json::from_str(&qsl2(&["verify", "--suite=hopf", "--format=json"]).stdout).unwrap();
    assert_eq!(j["seed"], 0);
}

#[test]
fn config_file_mirrors_flags() {
    let dir = std::env::temp_dir().join(format!("qsl2-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("qsl2.conf");
    std::fs::File::create(&path).unwrap().write_all(b"# test\nformat = json\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(qsl2(&["normalize", "0", "--config", p]).stdout, "{\"terms\":[]}\n");
    // Flags override the file.
    assert_eq!(qsl2(&["normalize", "0", "--config", p, "--format=text"]).stdout, "0\n");
    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(qsl2(&["normalize", "0", "--config", p]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_and_json_agree() {
    for args in [
        &["delta", "F(2)*K*e"][..],
        &["antipode", "F(1)*K^2*e^2 - v"],
        &["hc", "C"],
        &["central-expand", "C^3"],
        &["truncate", "F(1)*e + bbb(2)", "--filtration=Un", "--n=2"],
    ] {
        let text = qsl2(args);
        let mut j = args.to_vec();
        j.push("--format=json");
        let doc = read_document(&qsl2(&j).stdout).unwrap();
        assert_eq!(doc.to_value(), Some(eval_str(text.stdout.trim()).unwrap()), "{args:?}");
    }
}

#[test]
fn grade_lines_read_back() {
    let r = qsl2(&["grade", "F(1)*e + K + v*e", "--grading=Z"]);
    assert_eq!(r.code, 0);
    let mut sum = eval_str("0").unwrap();
    for line in r.stdout.lines() {
        let (_, elem) = line.split_once(": ").unwrap();
        sum = match (sum, eval_str(elem).unwrap()) {
            (Value::Pbw(a), Value::Pbw(b)) => Value::Pbw(&a + &b),
            _ => unreachable!(),
        };
    }
    assert_eq!(sum, eval_str("F(1)*e + K + v*e").unwrap());
}

fn expr_strategy() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("v".to_string()),
        Just("K".to_string()),
        Just("e".to_string()),
        Just("F".to_string()),
        Just("C".to_string()),
        (0i64..5).prop_map(|n| n.to_string()),
        (0u32..4).prop_map(|n| format!("F({n})")),
        (0u32..3).prop_map(|n| format!("sigma({n})")),
        (-3i64..4, 0u32..3).prop_map(|(m, n)| format!("qb({m},{n})")),
        (0i64..3, 0i64..3).prop_map(|(m, n)| format!("brH({m},{n})")),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner, -2i64..3).prop_map(|(a, k)| format!("K^{k}*({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Printing a tree and parsing it back is the identity.
    #[test]
    fn parse_print_identity(s in expr_strategy()) {
        let t = parse_expr(&s).unwrap();
        prop_assert_eq!(parse_expr(&t.to_string()).unwrap(), t);
    }

    /// Normalizing is idempotent: canonical output reads back to itself.
    #[test]
    fn canonicalization_idempotent(s in expr_strategy()) {
        let once = qsl2(&["normalize", &s]);
        prop_assert_eq!(once.code, 0);
        let twice = qsl2(&["normalize", once.stdout.trim()]);
        prop_assert_eq!(twice.stdout, once.stdout);
    }
}
