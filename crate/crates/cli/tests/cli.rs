//! Surface tests for the command line: parser round-trips, exit codes, and
//! the per-call wall-clock budget.

use dreg_cli::parse::parse_problem;
use dreg_cli::print::fmt_weyl;
use dreg_core::arith::Rational;
use dreg_core::weyl::WeylElement;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::process::Command;

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn dreg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dreg"))
}

#[test]
fn exit_codes() {
    // rank on the regular system: success
    let out = dreg().args(["rank", &corpus("gkz-regular.dreg")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"rank\": 2"));

    // regular on the confluent system: irregular
    let out = dreg()
        .args(["regular", &corpus("gkz-confluent.dreg"), "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // missing file: usage
    let out = dreg().args(["rank", "no-such-file.dreg"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // unknown subcommand: usage
    let out = dreg().args(["frobnicate", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // syntax error: usage, with line/column on stderr
    let dir = std::env::temp_dir().join("dreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.dreg");
    std::fs::write(&bad, "vars 2;\ndx3;").unwrap();
    let out = dreg().args(["rank", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr was: {err}");
}

#[test]
fn inconclusive_exits_2() {
    // an exponential with empty affine singular locus: nothing is
    // irregular in the affine chart, and infinity is unchecked
    let dir = std::env::temp_dir().join("dreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("expx.dreg");
    std::fs::write(&path, "vars 1; dx1 - 1;").unwrap();
    let out = dreg()
        .args(["regular", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"INCONCLUSIVE\""));
    // checking infinity settles it: e^x is irregular there
    let out = dreg()
        .args(["regular", path.to_str().unwrap(), "--check-infinity"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exceeded_exits_4() {
    let out = dreg()
        .args(["regular", &corpus("gkz-regular.dreg"), "--check-infinity"])
        .env("DREG_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn init_prints_paper_generators() {
    let out = dreg()
        .args([
            "init",
            &corpus("gkz-regular.dreg"),
            "--point",
            "0,1,1",
            "--weight",
            "1,1,1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"dx2\""));
    assert!(text.contains("\"dx3\""));
    assert!(text.contains("\"x1*dx1^2 + dx1\""));
}

#[test]
fn report_to_file() {
    let dir = std::env::temp_dir().join("dreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rank31.json");
    let out = dreg()
        .args(["rank", &corpus("expinvx.dreg"), "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"rank\": 1"));
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_weyl(nvars: usize) -> impl Strategy<Value = WeylElement> {
    let term = (
        proptest::collection::vec(0u32..3, nvars),
        proptest::collection::vec(0u32..3, nvars),
        arb_rational(),
    );
    proptest::collection::vec(term, 1..5).prop_map(move |terms| {
        let mut op = WeylElement::zero(nvars);
        for (x, d, c) in terms {
            op = op.add(&WeylElement::monomial(nvars, &x, &d, c));
        }
        op
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // parse_ideal applied to the printed form of any generator set
    // reproduces identical elements
    #[test]
    fn print_parse_round_trip(op in arb_weyl(3)) {
        prop_assume!(!op.is_zero());
        let text = format!("vars 3; {};", fmt_weyl(&op));
        let parsed = parse_problem(&text).unwrap();
        prop_assert_eq!(&parsed.gens[0], &op);
    }
}
