use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quatgeo"));
    c.env_remove("QUATGEO_PRIME_BOUND");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    doc(&out)
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("quatgeo-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn class_check() {
    let v = ok(&["k2s-check", "--a=-2", "--b=13"]);
    assert_eq!(v["member"], true);
    assert_eq!(v["symbols"], json!([-1, 1, 1]));
    assert_eq!(v["division"], "CertifiedDivision");
    assert_eq!(v["elliptic_obstruction"], false);
}

#[test]
fn pell_outputs() {
    let v = ok(&["pell", "--d=58"]);
    assert_eq!((v["x"].clone(), v["y"].clone()), (json!(19603), json!(2574)));
    let v = ok(&["pell", "--d", "3580/81"]);
    assert_eq!((v["x"].clone(), v["y"].clone()), (json!(359), json!(54)));
    // a 60-digit fundamental solution survives as an exact number
    let v = ok(&["pell", "--d=1000099"]);
    let x: num_bigint::BigInt = v["x"].to_string().parse().unwrap();
    let y: num_bigint::BigInt = v["y"].to_string().parse().unwrap();
    assert_eq!(&x * &x - num_bigint::BigInt::from(1000099) * &y * &y, 1.into());
}

#[test]
fn example_suite_passes() {
    let v = ok(&["verify-paper-examples"]);
    assert_eq!(v["all_pass"], true);
    let ex = v["examples"].as_array().unwrap();
    let status = |name: &str| {
        ex.iter().find(|e| e["name"].as_str().unwrap().contains(name)).unwrap()["status"].clone()
    };
    for name in ["P(1,0)", "P(2,3)"] {
        assert_eq!(status(name), "pass");
    }
    assert_eq!(status("P(0,1)"), "paper-typo: printed element fixes the mirror plane");
    assert_eq!(status("7 + 3 sqrt(-2)"), "paper-typo: derived element verified");
}

#[test]
fn geometry_commands() {
    let v = ok(&["classify", "--gamma", "10 + 3*sqrt(-2) ; 3"]);
    assert_eq!(v["tag"], "Hyperbolic");
    let v = ok(&["construct-halfplane", "--t", "1", "--u", "0"]);
    assert_eq!(v["gamma"]["xi"], "25 + 0*sqrt(-2)");
    assert_eq!(v["gamma"]["eta"], "4 + 4*sqrt(-2)");
    assert_eq!(v["pell"]["d"], "39");
    let v = ok(&["construct-sphere", "--center", "5 + 2*sqrt(-2)", "--radius-sq", "30"]);
    assert_eq!(v["epsilon"], -1);
    let v = ok(&["greedy-set", "--t-max", "500"]);
    assert_eq!(v["excluded"], json!([2, 11, 12, 70, 109, 225, 408]));
    let v = ok(&["act", "--gamma", "0 ; 1", "--z", "0", "--t", "1"]);
    assert_eq!(v["image"]["t"], "1/13");
    let v = ok(&["image-trace", "--gamma", "0 ; 1", "--center", "0", "--radius-sq", "1/13"]);
    assert_eq!(v["image"], v["trace"]);
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn separation_command() {
    let v = ok(&["separation", "--point", "sqrt(-2)|1"]);
    assert_eq!(v["witness"], 23);
    assert_eq!(v["corroboration"]["status"], "Pass");
    let v = ok(&["separation", "--plane", "0,1", "--plane", "1,0"]);
    assert_eq!(v["kind"], "HalfPlanes");
    assert_eq!(v["corroboration"]["status"], "Pass");
    let out = run(&["separation", "--sphere", "0|1/13"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["error"]["code"], "unsupported");
}

#[test]
fn errors_are_documents() {
    let out = run(&["pell", "--d=9"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["error"]["code"], "domain");

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(doc(&out)["error"]["code"], "usage");

    let out = run(&["classify", "--gamma", "1 + x ; 1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(doc(&out)["error"]["code"], "parse");
    let out = run(&["classify", "--gamma", "1 + sqrt(5) ; 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["error"]["code"], "mismatch");

    // outside the class without the override
    let out = run(&["classify", "--a=-1", "--b=3", "--gamma", "1 ; 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["error"]["code"], "precondition");
    let out = run(&["classify", "--a=2", "--b=3", "--gamma", "1 ; 1"]);
    assert_eq!(out.status.code(), Some(1));

    for out in [run(&["pell", "--d=9"]), run(&["bogus"])] {
        let v = doc(&out);
        assert!(v["error"]["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify-paper-examples"],
        vec!["separation", "--point", "sqrt(-2)|1"],
        vec!["enumerate", "--norm", "3", "--eta-bound", "20"],
        vec!["algebra-info"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn config_file_and_environment() {
    let cfg = temp_file("cfg", "# gaussian test\na = -1\nb = 7\n");
    let path = cfg.to_str().unwrap();
    let v = ok(&["algebra-info", "--config", path, "--allow-non-k2s"]);
    assert_eq!((v["a"].clone(), v["b"].clone()), (json!(-1), json!(7)));
    // flags beat the file
    let v = ok(&["algebra-info", "--config", path, "--a=-2", "--b=13"]);
    assert_eq!((v["a"].clone(), v["b"].clone()), (json!(-2), json!(13)));

    let bad = temp_file("bad", "colour = red\n");
    let out = run(&["algebra-info", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // a tiny sieve bound from the environment exhausts the witness search
    let out = bin().env("QUATGEO_PRIME_BOUND", "20").args(["separation", "--point", "sqrt(-2)|1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["error"]["code"], "exhausted");
    // the flag overrides the environment
    let out = bin()
        .env("QUATGEO_PRIME_BOUND", "20")
        .args(["separation", "--point", "sqrt(-2)|1", "--prime-bound", "100"])
        .output()
        .unwrap();
    assert_eq!(doc(&out)["witness"], 23);
    let out = bin().env("QUATGEO_PRIME_BOUND", "lots").args(["k2s-check"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(cfg);
    let _ = std::fs::remove_file(bad);
}
