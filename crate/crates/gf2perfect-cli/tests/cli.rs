//! End-to-end tests driving the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gf2perfect")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("GF2PERFECT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn sigma_of_t1() {
    let out = run(&["sigma", "x(x+1)"]);
    assert_eq!(stdout(&out), "x^2+x\n");
    assert_eq!(code(&out), 0);
}

#[test]
fn check_perfect_gates_exit_code() {
    // Q4b is prime, not perfect
    let out = run(&["check-perfect", "0x1f"]);
    assert_eq!(stdout(&out), "false\n");
    assert_eq!(code(&out), 1);

    let out = run(&["check-perfect", "x(x+1)^2(x^2+x+1)"]);
    assert_eq!(stdout(&out), "true\n");
    assert_eq!(code(&out), 0);
}

#[test]
fn parse_accepts_both_syntaxes() {
    let out = run(&["parse", "x^2+x+1"]);
    assert_eq!(stdout(&out), "x^2+x+1\n");
    let out = run(&["parse", "0x7"]);
    assert_eq!(stdout(&out), "x^2+x+1\n");
    let out = run(&["parse", "x+x"]);
    assert_eq!(stdout(&out), "0\n");

    let out = run(&["parse", "x^2+y"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at byte 4"));
}

#[test]
fn factor_m16() {
    let out = run(&["factor", "0x10670"]);
    assert_eq!(stdout(&out), "x^4(x+1)^4(x^4+x^3+1)(x^4+x^3+x^2+x+1)\n");
}

#[test]
fn unknown_flag_is_an_error() {
    let out = run(&["sigma", "--frobulate", "x"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn catalogue_lists_eleven() {
    let out = run(&["--format", "json", "catalogue"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sporadics"].as_array().unwrap().len(), 11);
    assert_eq!(v["primes"].as_array().unwrap().len(), 6);
    assert_eq!(v["sporadics"][0]["name"], "M5a");
    assert_eq!(v["sporadics"][0]["hex"], "0x36");
    assert_eq!(v["sporadics"][0]["factored"], "x(x+1)^2(x^2+x+1)");
}

#[test]
fn search_json_is_reproducible_across_workers() {
    let a = run(&[
        "--format",
        "json",
        "--workers",
        "1",
        "search",
        "--max-deg",
        "8",
    ]);
    let b = run(&[
        "--format",
        "json",
        "--workers",
        "4",
        "search",
        "--max-deg",
        "8",
    ]);
    let c = run(&[
        "--format",
        "json",
        "--workers",
        "4",
        "search",
        "--max-deg",
        "8",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&b), stdout(&c));
    assert_eq!(code(&a), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["found"].as_array().unwrap().len(), 4);
    assert_eq!(v["mode"], "full");
    assert!(stdout(&a).find("\"meta\"").unwrap() < stdout(&a).find("\"max_degree\"").unwrap());
}

#[test]
fn search_over_budget_needs_force() {
    let out = run(&["search", "--max-deg", "21"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn census_small() {
    let out = run(&["--format", "json", "census", "--max-deg", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // frozen from the independent oracle: degrees 1..4 have 2+3+6+12 even
    // values of which 2+3+4+11 satisfy the gcd condition
    assert_eq!(v["cumulative_fraction"]["numerator"], 20);
    assert_eq!(v["cumulative_fraction"]["denominator"], 23);
    assert_eq!(code(&out), 0);
}

#[test]
fn lemma_part_f() {
    let out = run(&["--format", "json", "lemma", "--part", "f", "--bound", "6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["witnesses"][0], "1");
    assert_eq!(v["witnesses"][1], "2");
    assert_eq!(code(&out), 0);

    let out = run(&["lemma", "--part", "z"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_theorem_small_bounds() {
    let out = run(&[
        "--format",
        "json",
        "verify-theorem",
        "--b-deg",
        "4",
        "--p-deg",
        "4",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sols = v["solutions"].as_array().unwrap();
    let hexes: Vec<&str> = sols
        .iter()
        .map(|s| s["a"]["hex"].as_str().unwrap())
        .collect();
    assert_eq!(hexes, ["0x24", "0x36", "0x10670"]);
    assert_eq!(v["expected_set_match"], true);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "verify-theorem",
        "--b-deg",
        "4",
        "--p-deg",
        "4",
        "--mode",
        "strict-odd",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn solve_reports_rejections() {
    let out = run(&["solve", "--b", "x^2+x+1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("rejected: B is odd"));

    let out = run(&["--format", "json", "solve", "--b", "x^2(x+1)^3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rejection"], serde_json::Value::Null);
    assert_eq!(v["solutions"][0]["a"]["hex"], "0x11ab10");
    assert_eq!(code(&out), 0);
}

#[test]
fn primes_uses_and_regenerates_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("primes.cache");
    let cache_arg = cache.to_str().unwrap();

    let out = run(&["--cache", cache_arg, "primes", "--deg", "4"]);
    assert_eq!(
        stdout(&out),
        "0x13 x^4+x+1\n0x19 x^4+x^3+1\n0x1f x^4+x^3+x^2+x+1\n"
    );
    let first = std::fs::read(&cache).unwrap();
    assert!(String::from_utf8_lossy(&first).starts_with("# gf2-primes v1 max_degree=4\n"));

    // a second run reads the cache and leaves it byte-identical
    let out2 = run(&["--cache", cache_arg, "primes", "--deg", "4"]);
    assert_eq!(stdout(&out), stdout(&out2));
    assert_eq!(std::fs::read(&cache).unwrap(), first);

    // asking for a higher degree extends it
    run(&["--cache", cache_arg, "primes", "--deg", "6"]);
    let extended = std::fs::read_to_string(&cache).unwrap();
    assert!(extended.starts_with("# gf2-primes v1 max_degree=6\n"));

    // corrupt caches are refused
    std::fs::write(&cache, "# gf2-primes v1 max_degree=2\n1 0x2\n").unwrap();
    let out = run(&["--cache", cache_arg, "primes", "--deg", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
}

#[test]
fn seed_is_recorded_in_reports() {
    let out = run(&[
        "--format",
        "json",
        "--seed",
        "99",
        "search",
        "--max-deg",
        "4",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["meta"]["seed"], 99);
    let logged = String::from_utf8_lossy(&out.stderr);
    assert!(logged.contains("seed=0x63"));
}

#[test]
fn cache_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.cache");
    let out = Command::new(bin())
        .args(["primes", "--deg", "2"])
        .env("GF2PERFECT_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&cache).exists());

    // pointing it at a directory drops the default file there
    let out = Command::new(bin())
        .args(["primes", "--deg", "3"])
        .env("GF2PERFECT_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("gf2-primes.cache").exists());
}
