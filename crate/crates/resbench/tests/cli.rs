use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_resbench"));
    c.env_remove("WORKBENCH_SEED").env_remove("WORKBENCH_CAP_TRIPLES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn orbits_on_945_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&["orbits", "--spec", "blocks:a=2,b=5,group=alt", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "orbits");
    assert_eq!(v["result"]["stats"]["n"], 945);
    assert_eq!(v["result"]["stats"]["f2"], 6);
    assert_eq!(v["result"]["stats"]["f3"], 139);
    assert!(String::from_utf8_lossy(&o.stdout).contains("f_3 = 139"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = run(&[
            "verify-paper",
            "--only",
            "mullineux,orbits.blocks_3,classical.sl_4_2",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["orbits", "--spec", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mullineux", "--p", "3", "--lambda", "3,3,3"]).status.code(), Some(2));
    assert_eq!(run(&["mullineux", "--n", "9", "--p", "3", "--lambda", "6,3,1"]).status.code(), Some(2));
    let capped = run(&["orbits", "--spec", "blocks:a=2,b=3", "--witness", "--cap-triples", "5"]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(run(&["verify-paper", "--only", "orbits.blocks_4_2.sym"]).status.code(), Some(1));
    assert_eq!(run(&["wilson-rank", "--n", "8", "--r", "2", "--s", "3"]).status.code(), Some(0));
}

#[test]
fn mullineux_reports_image() {
    let o = run(&["mullineux", "--n", "10", "--p", "3", "--lambda", "6,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("7/3,3/1"), "{s}");
    assert!(s.contains("(3,3,2,1,1)"), "{s}");
    assert!(s.contains("fixed  = false"), "{s}");
}

#[test]
fn flags_override_environment_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let path = out.to_str().unwrap();
    let base = ["verify-paper", "--only", "e32", "--json", path];

    assert_eq!(bin().args(base).output().unwrap().status.code(), Some(0));
    assert_eq!(json(&out)["result"]["cap_triples"], 10_000_000);
    assert_eq!(json(&out)["result"]["seed"], 1);

    let st = bin().args(base).env("WORKBENCH_CAP_TRIPLES", "123").env("WORKBENCH_SEED", "9").output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    assert_eq!(json(&out)["result"]["cap_triples"], 123);
    assert_eq!(json(&out)["result"]["seed"], 9);

    let st = bin()
        .args(base)
        .args(["--cap-triples", "456", "--seed", "4"])
        .env("WORKBENCH_CAP_TRIPLES", "123")
        .env("WORKBENCH_SEED", "9")
        .output()
        .unwrap()
        .status;
    assert_eq!(st.code(), Some(0));
    assert_eq!(json(&out)["result"]["cap_triples"], 456);
    assert_eq!(json(&out)["result"]["seed"], 4);
}

#[test]
fn manifests_reject_unknown_ids_and_record_pending_slots() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "schema = 1\n[claims]\n\"no.such.claim\" = 1\n").unwrap();
    assert_eq!(run(&["verify-paper", "--manifest", bad.to_str().unwrap()]).status.code(), Some(2));

    let pending = dir.path().join("pending.toml");
    fs::write(&pending, "schema = 1\npending = [\"e32.blocks_3_3.sym\"]\n[claims]\n\"orbits.blocks_3_2.alt.e2\" = 0\n")
        .unwrap();
    let rec = dir.path().join("rec.toml");
    let o = run(&["verify-paper", "--manifest", pending.to_str().unwrap(), "--record", rec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&rec).unwrap();
    assert!(text.contains("\"e32.blocks_3_3.sym\" = 35"), "{text}");
    assert!(text.contains("\"orbits.blocks_3_2.alt.e2\" = 0"), "{text}");
    assert_eq!(run(&["verify-paper", "--manifest", rec.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn default_manifest_fails_only_on_known_claims() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("all.json");
    let o = run(&["verify-paper", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&str> = v["result"]["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["orbits.blocks_4_2.sym.f3", "classical.o_minus_6_2.pass"]);
}

#[test]
fn small_commands_run() {
    for args in [
        &["partitions", "--n", "6", "--p", "2"][..],
        &["specht", "--lambda", "4,2"],
        &["socle", "--n", "8", "--module", "m1"],
        &["dr", "--lambda", "5,3", "--r", "1,3"],
        &["hom-battery", "--n", "6"],
        &["e32", "--a", "3", "--s", "3"],
        &["h-bound", "--spec", "ksubsets:m=9,k=3", "--check"],
        &["reduce-cert", "--spec", "blocks:a=3,b=4"],
        &["classical", "--case", "sl:d=4,q=2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
