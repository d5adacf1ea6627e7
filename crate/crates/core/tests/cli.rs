use std::fs;
use std::process::{Command, Output};

use farey_lt_core::arith::IntPolynomial;
use farey_lt_core::elliptic::{cache_file_name, family_validate, trace_table};

fn farey_lt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farey-lt"))
        .args(args)
        .env_remove("FAREY_LT_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(farey_lt(&["farey-hist", "--t", "3", "--p", "5"]).status.code(), Some(0));
    assert_eq!(farey_lt(&["--help"]).status.code(), Some(0));
    assert_eq!(farey_lt(&["--version"]).status.code(), Some(0));
    for bad in [
        &["farey-hist", "--t", "3", "--p", "4"][..],
        &["farey-hist", "--t", "0", "--p", "5"],
        &["traces", "--family", "A=0,1;B=1", "--p", "3"],
        &["traces", "--family", "A=0;B=1", "--p", "7"],
        &["traces", "--family", "A=0,1", "--p", "7"],
        &["lemma-poly", "--hw", "0"],
        &["envelope", "--t", "5", "--x", "10", "--part", "4"],
        &["no-such-command"],
        &[],
    ] {
        let o = farey_lt(bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(o.stdout.is_empty(), "{bad:?}");
        assert!(!o.stderr.is_empty(), "{bad:?}");
    }
}

#[test]
fn compute_error_exits_1() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let o = farey_lt(&[
        "--cache-dir",
        file.path().to_str().unwrap(),
        "traces",
        "--family",
        "A=0,1;B=1",
        "--p",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("i/o"));
}

#[test]
fn lt_avg_footer() {
    let o = farey_lt(&["lt-avg", "--family", "A=0,1;B=1", "--a", "-2", "--x", "5", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("# total=2,")), "{text}");
}

#[test]
fn classnum_table() {
    let text = stdout(&farey_lt(&["classnum", "--dmax", "24"]));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "D,d,h,w");
    assert!(rows.contains(&"-3,-3,1,6"));
    assert!(rows.contains(&"-4,-1,1,4"));
    assert!(rows.contains(&"-20,-5,2,2"));
    assert!(rows.contains(&"-23,-23,3,2"));
    assert!(rows.contains(&"-24,-6,2,2"));
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&farey_lt(&["farey-hist", "--t", "3", "--p", "5"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&farey_lt(&["--format", "json", "farey-hist", "--t", "3", "--p", "5"]))).unwrap();
    let counts: Vec<u64> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let text = json.to_string();
    assert_eq!(counts, vec![0, 1, 2, 2, 2]);
    assert!(text.contains("main_term"), "{text}");

    for args in [
        &["lemma-poly", "--hw", "3"][..],
        &["classnum", "--dmax", "20"],
        &["chebotarev", "--family", "A=0,1;B=1", "--p", "101", "--ell", "5"],
        &["lt-field", "--family", "A=0,1;B=1", "--d", "-1", "--x", "50", "--t", "5"],
        &["traces", "--family", "A=0,1;B=1", "--p", "11"],
        &["discrepancy", "--t-list", "10,20", "--p", "7"],
        &["m-count", "--w", "10", "--p", "5"],
        &["envelope", "--t", "10", "--x", "100", "--part", "3"],
    ] {
        let mut argv = vec!["--format", "json"];
        argv.extend_from_slice(args);
        let o = farey_lt(&argv);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn cache_env_overrides_flag() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_farey-lt"))
        .args(["--cache-dir", flag_dir.path().to_str().unwrap()])
        .args(["traces", "--family", "A=0,1;B=1", "--p", "101"])
        .env("FAREY_LT_CACHE", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let family = family_validate(IntPolynomial::from_i64s(&[0, 1]), IntPolynomial::from_i64s(&[1])).unwrap();
    let name = cache_file_name(&family, 101);
    assert!(!flag_dir.path().join(&name).exists());
    let cached = fs::read_to_string(env_dir.path().join(&name)).unwrap();
    assert_eq!(cached, trace_table(&family, 101).unwrap().to_cache_string(&family));
    assert_eq!(cached.as_bytes(), o.stdout.as_slice());
}

#[test]
fn corrupt_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let family = family_validate(IntPolynomial::from_i64s(&[0, 1]), IntPolynomial::from_i64s(&[1])).unwrap();
    let text = trace_table(&family, 13).unwrap().to_cache_string(&family);
    let path = dir.path().join(cache_file_name(&family, 13));
    fs::write(&path, text.replace("\n0,", "\n0,99\n#")).unwrap();
    let o = farey_lt(&["--cache-dir", dir.path().to_str().unwrap(), "traces", "--family", "A=0,1;B=1", "--p", "13"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["lt-field", "--family", "A=1,1;B=0,0,1", "--d", "-3", "--x", "80", "--t", "12"];
    let one = farey_lt(&[&["--threads", "1"][..], &args].concat());
    let four = farey_lt(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
}
