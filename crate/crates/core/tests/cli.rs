mod common;

use std::process::Command as Process;

use common::*;
use reglab::cli::{parse_family, run, run_on, Command, KindArg, OutputFormat, RunConfig};
use reglab::Error;

fn cfg(fixture_name: &str, command: Command) -> RunConfig {
    RunConfig::new(format!("{FIXTURES}/{fixture_name}"), command)
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_reglab"))
        .args(args)
        .env("REGLAB_THREADS", "2")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn gens_prints_canonical_generators() {
    let mut c = cfg("example1.ideals", Command::Gens);
    c.exp = Some(a(&[1, 1]));
    let out = run(&c).unwrap();
    assert_eq!(out.status, 0);
    assert_eq!(
        out.output,
        "I^(1,1) = (xy, x^3, y^3)\n3 minimal generators, max degree 3\n"
    );
}

#[test]
fn fit_text_and_json_agree() {
    let mut c = cfg("example1.ideals", Command::Fit);
    c.grid_max = 5;
    let text = run(&c).unwrap();
    assert_eq!(text.status, 0);
    assert!(text
        .output
        .starts_with("reg(I^a) = max{a1+2a2, 2a1+a2} verified on [1,1]..[5,5]"));

    c.output = OutputFormat::Json;
    let json: serde_json::Value = serde_json::from_str(&run(&c).unwrap().output).unwrap();
    let forms = json["fit"]["forms"].as_array().unwrap();
    let pairs: Vec<(Vec<i64>, i64)> = forms
        .iter()
        .map(|f| {
            (
                serde_json::from_value(f["slopes"].clone()).unwrap(),
                f["intercept"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(pairs, vec![(vec![1, 2], 0), (vec![2, 1], 0)]);
    assert_eq!(json["config"]["origin"], serde_json::json!([1, 1]));

    c.output = OutputFormat::Csv;
    assert_eq!(
        run(&c).unwrap().output,
        "slope1,slope2,intercept\n1,2,0\n2,1,0\n"
    );
}

#[test]
fn fit_failure_suggests_later_origin() {
    // Example 2 t_0 is not yet a max of its eventual forms at (0,0).
    let family = example2();
    let mut c = RunConfig::new("unused", Command::Fit);
    c.kind = KindArg::T;
    c.j = Some(0);
    c.grid_max = 4;
    c.origin = Some(a(&[0, 0]));
    let out = run_on(&c, &family, None).unwrap();
    assert_eq!(out.status, 1, "{}", out.output);
    assert!(
        out.output.contains("retry with --origin 1,1"),
        "{}",
        out.output
    );
}

#[test]
fn table_csv_marks_zero_ideal_as_minus_infinity() {
    let mut c = cfg("example1.ideals", Command::Table);
    c.kind = KindArg::T;
    c.j = Some(1);
    c.grid_max = 1;
    c.output = OutputFormat::Csv;
    assert_eq!(
        run(&c).unwrap().output,
        "a1,a2,value\n0,0,-inf\n0,1,3\n1,0,3\n1,1,4\n"
    );
    c.output = OutputFormat::Json;
    let json: serde_json::Value = serde_json::from_str(&run(&c).unwrap().output).unwrap();
    assert!(json["table"]["cells"][0]["value"].is_null());
}

#[test]
fn pd_reports_stable_value() {
    let out = run(&cfg("example1.ideals", Command::Pd)).unwrap();
    assert_eq!(
        out,
        reglab::cli::Outcome {
            status: 0,
            output: "pd(I^a) = 1 on (0,1)..(6,6)\n".into()
        }
    );
}

#[test]
fn hilbert_check_statuses() {
    let mut c = cfg("example1.ideals", Command::HilbertCheck);
    c.grid_max = 4;
    c.series_path = Some(format!("{FIXTURES}/example1_h0.series").into());
    c.j = Some(0);
    assert_eq!(run(&c).unwrap().status, 0);
    c.j = Some(1);
    assert_eq!(run(&c).unwrap().status, 1);
    c.series_path = Some(format!("{FIXTURES}/example1_h1.series").into());
    assert_eq!(run(&c).unwrap().status, 0);
}

#[test]
fn input_errors() {
    let err = parse_family("ring x y\nI = x, z^2\n").unwrap_err();
    assert_eq!(err.to_string(), "line 2, column 8: unknown variable z");
    assert!(matches!(
        run(&cfg("example1.ideals", Command::Gens)),
        Err(Error::Usage(_))
    ));
    let mut c = cfg("example1.ideals", Command::Table);
    c.kind = KindArg::T;
    assert!(matches!(run(&c), Err(Error::Usage(_))));
    let mut c = cfg("example1.ideals", Command::Pd);
    c.grid_max = 1;
    assert!(matches!(run(&c), Err(Error::GridTooSmall { min: 2, .. })));
    assert!(matches!(
        run(&cfg("missing.ideals", Command::Pd)),
        Err(Error::Io(_))
    ));
}

#[test]
fn binary_exit_codes() {
    let ex1 = format!("{FIXTURES}/example1.ideals");
    let (code, out, _) = bin(&["fit", &ex1, "--grid", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("max{a1+2a2, 2a1+a2}"));

    let (code, out, _) = bin(&["betti", &ex1, "--exp", "1,1", "--output", "json"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["betti"]["reg"], 3);

    let h0 = format!("{FIXTURES}/example1_h0.series");
    let (code, _, _) = bin(&[
        "hilbert-check",
        &ex1,
        "--series",
        &h0,
        "--j",
        "1",
        "--grid",
        "3",
    ]);
    assert_eq!(code, 1);

    let (code, _, err) = bin(&["gens", &ex1, "--exp", "1,x"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid exponent list"), "{err}");

    let (code, _, _) = bin(&["pd", "/nonexistent"]);
    assert_eq!(code, 2);
}
