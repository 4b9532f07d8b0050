use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matlie"))
}

/// Runs the binary with `stdin`, returning (stdout, exit code).
fn call(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(stdin.as_bytes())
        .expect("write");
    let out = child.wait_with_output().expect("wait");
    (
        String::from_utf8(out.stdout).expect("utf8"),
        out.status.code().unwrap_or(-1),
    )
}

fn json(args: &[&str], stdin: &str) -> (Value, i32) {
    let (out, code) = call(args, stdin);
    (
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
        code,
    )
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let (out, code) = call(&full, "");
    assert_eq!(code, 0);
    out
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matlie-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("tmp dir");
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write tmp");
    path
}

#[test]
fn gen_output_round_trips_bit_exactly() {
    for family in [
        &["lambda", "4"][..],
        &["sl-monomial", "2", "2"],
        &["adjoint", "sl2"],
        &["example2-random", "3", "7"],
    ] {
        let text = gen(family);
        let parsed = matlie_cli::parse_space_file(&text, false).expect("canonical");
        assert_eq!(matlie_cli::write_space_file(&parsed), text);
    }
}

#[test]
fn gen_piped_into_sdit() {
    let (r, code) = json(&["sdit"], &gen(&["sl-standard", "2"]));
    assert_eq!(code, 0);
    assert_eq!(r["command"], "sdit");
    assert_eq!(r["verdict"], "NonSingular");
    assert_eq!(r["witness"]["rank"], 2);
    assert!(r["timing_ms"].is_number());
    let (r, _) = json(&["sdit"], &gen(&["lambda", "5"]));
    assert_eq!(r["verdict"], "Singular");
}

#[test]
fn reports_verify_when_fed_back() {
    let space = gen(&["sl-monomial", "2", "1"]);
    let space_path = tmp("mono.json", &space);
    let sp = space_path.to_str().expect("path");
    for args in [&["maxrank"][..], &["linker", "--side", "l"], &["sdit"]] {
        let (report, code) = call(&[args, &[sp]].concat(), "");
        assert_eq!(code, 0, "{report}");
        let parsed: Value = serde_json::from_str(&report).expect("json");
        if parsed["witness"].is_null() && parsed["certificate"].is_null() {
            continue;
        }
        let rp = tmp("report.json", &report);
        let (v, code) = json(&["verify", sp, "--report", rp.to_str().expect("path")], "");
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["verdict"], "verified");
    }
    let upper = gen(&["strict-upper"]);
    let (report, _) = call(&["shrunk"], &upper);
    let up = tmp("upper.json", &upper);
    let rp = tmp("shrunk.json", &report);
    let (v, code) = json(
        &[
            "verify",
            up.to_str().unwrap(),
            "--report",
            rp.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!((v["verdict"].as_str(), code), (Some("verified"), 0));
}

#[test]
fn tampered_witness_is_rejected() {
    let space = gen(&["sl-standard", "2"]);
    let (report, _) = call(&["sdit"], &space);
    let mut r: Value = serde_json::from_str(&report).expect("json");
    r["witness"]["rank"] = Value::from(1);
    let sp = tmp("sl2.json", &space);
    let rp = tmp("tampered.json", &r.to_string());
    let (v, code) = json(
        &[
            "verify",
            sp.to_str().unwrap(),
            "--report",
            rp.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "rejected");
}

#[test]
fn errors_carry_codes() {
    let (r, code) = json(&["check"], "{");
    assert_eq!(
        (code, r["error"]["code"].as_str()),
        (1, Some("malformed_json"))
    );

    let bad = r#"{"format_version":"1","field":"Q","n":1,"basis":[[["2/4"]]]}"#;
    let (r, code) = json(&["check"], bad);
    assert_eq!(
        (code, r["error"]["code"].as_str()),
        (1, Some("invalid_input"))
    );
    assert!(r["error"]["message"]
        .as_str()
        .unwrap()
        .starts_with("basis[0][0][0]"));
    let (r, code) = json(&["check", "--lenient"], bad);
    assert_eq!(code, 0);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);

    let (r, code) = json(&["sdit"], &gen(&["example2-random", "3", "1"]));
    assert_eq!((code, r["error"]["code"].as_str()), (1, Some("not_closed")));
    let (r, code) = json(&["maxrank"], &gen(&["heisenberg", "3"]));
    assert_eq!(
        (code, r["error"]["code"].as_str()),
        (1, Some("not_semisimple"))
    );
    let (r, code) = json(&["weights", "--strict"], &gen(&["lambda", "3"]));
    assert_eq!(
        (code, r["error"]["code"].as_str()),
        (1, Some("unsupported_spectrum"))
    );
}

#[test]
fn grid_sdit_handles_non_closed_spaces() {
    let (r, code) = json(&["sdit", "--grid"], &gen(&["example2-random", "4", "3"]));
    assert_eq!(code, 0);
    assert_eq!(r["method"], "grid");
    assert_eq!(r["verdict"], "Singular");
}

#[test]
fn shrunk_and_brute_force_agree() {
    for (family, expected) in [(&["lambda", "3"][..], "no"), (&["strict-upper"], "yes")] {
        let text = gen(family);
        let (r, code) = json(&["shrunk"], &text);
        assert_eq!(code, 0);
        assert_eq!(r["verdict"], expected);
        for field in ["gf2", "gf3"] {
            let (b, code) = json(&["ncrk-bf", "--field", field], &text);
            assert_eq!(code, 0);
            assert_eq!(b["max_deficit"].as_u64().unwrap() > 0, expected == "yes");
        }
    }
}

#[test]
fn prime_field_input() {
    let text = r#"{"format_version":"1","field":"GF(2)","n":2,"basis":[[["0","1"],["0","0"]]]}"#;
    let (r, code) = json(&["ncrk-bf", "--field", "gf2"], text);
    assert_eq!(code, 0);
    assert_eq!(r["ncrk"], 1);
    let (r, code) = json(&["ncrk-bf", "--field", "gf3"], text);
    assert_eq!(
        (code, r["error"]["code"].as_str()),
        (1, Some("unsupported"))
    );
    let (r, code) = json(&["sdit"], text);
    assert_eq!(
        (code, r["error"]["code"].as_str()),
        (1, Some("unsupported"))
    );
    let (r, _) = json(&["check"], text);
    assert_eq!(r["verdict"], "closed");
}

#[test]
fn linker_reports_applicability() {
    let (r, _) = json(&["linker", "--side", "r"], &gen(&["adjoint", "so3"]));
    assert_eq!(r["verdict"], "certificate");
    assert_eq!(r["verified"], true);
    assert_eq!(r["intertwining"], true);
    let (r, _) = json(
        &["linker", "--side", "l"],
        &gen(&["example2-random", "3", "2"]),
    );
    assert_eq!(r["verdict"], "certificate");
    assert!(r["intertwining"].is_null());
    assert!(r["intertwining_note"]
        .as_str()
        .unwrap()
        .contains("not Lie-closed"));
    let (r, _) = json(&["linker"], &gen(&["sl-standard", "3"]));
    assert_eq!(r["verdict"], "none");
}

#[test]
fn gen_writes_file_and_uses_seed() {
    let dir = std::env::temp_dir().join(format!("matlie-cli-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let (r, code) = json(
        &["gen", "heisenberg", "4", "-o", path.to_str().unwrap()],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!(r["dim"], 5);
    let (c, _) = json(&["check", path.to_str().unwrap()], "");
    assert_eq!(c["nilpotent"], true);
    assert_eq!(
        gen(&["example2-random", "3", "--seed", "9"]),
        gen(&["example2-random", "3", "9"])
    );
    let (e, code) = json(&["gen", "nope"], "");
    assert_eq!(
        (code, e["error"]["code"].as_str()),
        (1, Some("invalid_parameter"))
    );
}

#[test]
fn compseries_and_cartan_reports() {
    let (r, code) = json(&["compseries"], &gen(&["borel-sl2"]));
    assert_eq!(code, 0);
    assert_eq!(r["series"]["complete"], true);
    assert_eq!(r["series"]["chain_dims"], serde_json::json!([0, 1, 2]));
    let (r, code) = json(&["cartan"], &gen(&["heisenberg", "3"]));
    assert_eq!(code, 0);
    assert_eq!(r["cartan"]["dim"], 3);
    assert_eq!(r["cartan"]["verified"], true);
    let (r, code) = json(&["weights"], &gen(&["sl-monomial", "2", "1"]));
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "Singular");
    assert_eq!(r["zero_weight"], true);
}
