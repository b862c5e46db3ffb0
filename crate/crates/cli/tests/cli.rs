use std::path::{Path, PathBuf};
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn morita(cache: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_morita"))
        .args(args)
        .env("MORITA_CACHE_DIR", cache)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn group_builtin_s3() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(dir.path(), &["group", "builtin", "S3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("order 6, nonabelian"), "{}", r.stdout);
}

#[test]
fn group_builtin_unknown_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(dir.path(), &["group", "builtin", "Q8"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("K4"));
}

#[test]
fn group_load_klein_and_reuse_cached_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture("k4.cayley");
    let r = morita(dir.path(), &["group", "load", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("order 4, abelian"), "{}", r.stdout);
    let r = morita(dir.path(), &["verify", "--check", "split", "--i", "2", "--group", "k4"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("PASS split"));
}

#[test]
fn group_load_bad_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture("bad.cayley");
    let r = morita(dir.path(), &["group", "load", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("NotAssociative at triple (0,1,2)"), "{}", r.stderr);
}

#[test]
fn verify_lemma1_four_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(dir.path(), &["verify", "--check", "lemma1", "--i", "1,2,3,4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("PASS lemma1")).count(), 4);
    assert!(r.stdout.contains("total: 4 pass, 0 fail, 0 skipped"));
}

#[test]
fn verify_brandt_witness() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(
        dir.path(),
        &[
            "verify",
            "--check",
            "morita_brandt",
            "--i",
            "2",
            "--j",
            "3",
            "--group",
            "C2",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("PASS morita_brandt"));
}

#[test]
fn verify_rejects_empty_index_set() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(dir.path(), &["verify", "--check", "lemma1", "--i", "0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("index size must be ≥ 1"), "{}", r.stderr);
}

#[test]
fn verify_rejects_unknown_check_and_missing_checks() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(morita(dir.path(), &["verify", "--check", "lemma9"]).code, 2);
    assert_eq!(morita(dir.path(), &["verify", "--i", "1"]).code, 2);
    assert_eq!(morita(dir.path(), &["verify", "--check", "lemma1", "--i", "x"]).code, 2);
    assert_eq!(
        morita(dir.path(), &["verify", "--check", "lemma1", "--group", "nope"]).code,
        2
    );
}

#[test]
fn strict_turns_size_skips_into_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "verify",
        "--check",
        "homology",
        "--i",
        "2",
        "--group",
        "C2",
        "--n",
        "3",
        "--size-limit",
        "1000",
    ];
    let lax = morita(dir.path(), &args);
    assert_eq!(lax.code, 0, "{}", lax.stdout);
    assert!(lax.stdout.contains("SKIP homology"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(morita(dir.path(), &strict).code, 3);
}

#[test]
fn homology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(dir.path(), &["homology", "--i", "1", "--group", "C1", "--n", "3"]);
    assert_eq!(r.code, 0);
    for n in 1..=3 {
        assert!(r.stdout.contains(&format!("    {n:<3} 0           0")), "{}", r.stdout);
    }
    let r = morita(dir.path(), &["homology", "--i", "2", "--group", "C2", "--n", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("dim H_0 = 3"), "{}", r.stdout);
    let r = morita(dir.path(), &["homology", "--i", "2", "--group", "S3", "--n", "3"]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("SizeLimit"), "{}", r.stdout);
}

#[test]
fn homology_rejects_unknown_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let r = morita(dir.path(), &["homology", "--coefficients", "weird"]);
    assert_eq!(r.code, 2);
}

#[test]
fn report_round_trip_and_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let r = morita(
        dir.path(),
        &[
            "verify",
            "--check",
            "lemma1,split",
            "--i",
            "1,2",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(r.code, 0);
    let text = morita(dir.path(), &["report", out.to_str().unwrap()]);
    assert_eq!(text.code, 0);
    assert_eq!(text.stdout, r.stdout);
    let structured = morita(dir.path(), &["report", out.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(structured.stdout, std::fs::read_to_string(&out).unwrap());

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"schema_version\": 1}").unwrap();
    assert_eq!(morita(dir.path(), &["report", bad.to_str().unwrap()]).code, 2);
    let tampered = std::fs::read_to_string(&out).unwrap().replace("\"pass\"", "\"fail\"");
    std::fs::write(&bad, tampered).unwrap();
    let r = morita(dir.path(), &["report", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("digest mismatch"));
    assert_eq!(morita(dir.path(), &["report", "/nonexistent/report.json"]).code, 2);
}

#[test]
fn config_file_mirrors_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("campaign.toml");
    std::fs::write(&cfg, "i = [1, 2]\ngroup = \"C2\"\ncheck = \"lemma1\"\n").unwrap();
    let r = morita(dir.path(), &["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("campaign: 2 instances"));
    let r = morita(dir.path(), &["verify", "--config", cfg.to_str().unwrap(), "--i", "3"]);
    assert!(r.stdout.contains("campaign: 1 instances"));
    assert!(r.stdout.contains("i=3"));

    std::fs::write(&cfg, "i = [1]\nbogus = 3\n").unwrap();
    assert_eq!(
        morita(dir.path(), &["verify", "--config", cfg.to_str().unwrap()]).code,
        2
    );
}
