//! The command line, driven in-process and through the built binary.

use std::process::Command;

use uqbasis::cli::run;

fn uq(args: &[&str]) -> uqbasis::cli::Outcome {
    run(std::iter::once("uqbasis").chain(args.iter().copied()))
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).expect("json output")
}

#[test]
fn basis_weight_a1_plus_a2_has_two_elements() {
    let o = uq(&["basis", "--type", "A2", "--height", "4", "--format", "json"]);
    assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o.stdout);
    let items = v["items"].as_array().unwrap();
    let t = items.iter().find(|t| t["weight"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(t["canonical"].as_array().unwrap().len(), 2);
    for k in ["type", "word", "weight", "pbw_gram", "transition", "canonical"] {
        assert!(t.get(k).is_some(), "{k}");
    }
}

#[test]
fn cluster_verify_a2() {
    let o = uq(&["cluster-verify", "--preset", "A2-w0", "--depth", "2", "--exp", "2"]);
    assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o.stdout);
    assert_eq!(v["preset"], "A2-w0");
    assert!(v["monomials"].as_array().unwrap().iter().all(|m| m["status"] == "pass"));
    assert!(!v["exchange_log"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let o = uq(&["bw", "--type", "A2", "--word", "1,1"]);
    assert_eq!(o.code, 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("word not reduced"));
    assert_eq!(uq(&["basis", "--type", "E9"]).code, 2);
    assert_eq!(uq(&["basis", "--frobnicate"]).code, 2);
    assert_eq!(uq(&["nonsense"]).code, 2);
    assert_eq!(uq(&["crystal", "--type", "A2", "--label", "1,x,0"]).code, 2);
    assert_eq!(uq(&["preproj", "--type", "A2", "--mutate", "2"]).code, 2, "frozen summand");
    assert_eq!(uq(&["preproj", "--type", "D4"]).code, 2);
    assert_eq!(uq(&["basis", "--type", "D4"]).code, 2);
    assert_eq!(uq(&["cluster-verify", "--preset", "D4-w0"]).code, 2);
}

#[test]
fn outputs_do_not_depend_on_workers() {
    for args in [
        vec!["basis", "--type", "A2", "--height", "5", "--format", "csv"],
        vec!["crystal", "--type", "A3", "--height", "3"],
        vec!["cluster-verify", "--preset", "A3-w0", "--depth", "4", "--exp", "1", "--vars-only"],
        vec!["preproj", "--type", "A2", "--format", "tex"],
    ] {
        let mut one = vec!["--workers", "1"];
        one.extend(&args);
        let mut four = vec!["--workers", "4"];
        four.extend(&args);
        let (a, b) = (uq(&one), uq(&four));
        assert_eq!(a.code, 0, "{args:?}");
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn other_subcommands_pass() {
    for args in [
        vec!["bw", "--type", "A3", "--word", "2,1,3", "--height", "4"],
        vec!["ss-bound", "--type", "A2", "--height", "5", "--format", "tex"],
        vec!["preproj", "--type", "A2", "--mutate", "1"],
        vec!["preproj", "--type", "A3", "--dim", "1,1,1"],
        vec!["crystal", "--type", "A2", "--label", "1,0,1"],
    ] {
        let o = uq(&args);
        assert_eq!(o.code, 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn out_file_and_cache() {
    let dir = std::env::temp_dir().join(format!("uqbasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("t.json");
    let bin = env!("CARGO_BIN_EXE_uqbasis");
    let cache = dir.join("cache");
    let go = || {
        Command::new(bin)
            .args(["basis", "--type", "A2", "--height", "3", "--out"])
            .arg(&out)
            .env("UQBASIS_CACHE_DIR", &cache)
            .status()
            .unwrap()
    };
    assert_eq!(go().code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    let entries = std::fs::read_dir(cache.join("basis")).unwrap().count();
    assert!(entries > 0);
    assert_eq!(go().code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first, "cached run reproduces the output");
    assert_eq!(std::fs::read_dir(cache.join("basis")).unwrap().count(), entries);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_uqbasis");
    let o = Command::new(bin).args(["bw", "--type", "A2", "--word", "1,1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}
