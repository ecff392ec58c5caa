use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sdaut(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdaut"))
        .args(args)
        .env("SDAUT_OUT", out)
        .output()
        .expect("spawn sdaut")
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sdaut(dir.path(), &["no-such-command"]).status.code(), Some(64));
    assert_eq!(sdaut(dir.path(), &["types", "--preset", "bogus"]).status.code(), Some(64));
    assert_eq!(
        sdaut(dir.path(), &["sweep", "--case", "5-22-10", "--code", "golay24"]).status.code(),
        Some(64)
    );
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "# two rows promised\n4 2\n1010\n011\n").unwrap();
    let out = sdaut(dir.path(), &["lowweight", "--code", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(sdaut(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn exhausted_budget_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = sdaut(dir.path(), &["lowweight", "--code", "golay24", "--target", "8", "--iterations", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let found = sdaut(dir.path(), &["lowweight", "--code", "golay24", "--target", "9"]);
    assert_eq!(found.status.code(), Some(0));
}

#[test]
fn config_is_written_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = sdaut(
        dir.path(),
        &["sweep", "--case", "7-16-8", "--code", "z24", "--sample", "50", "--seed", "7", "--name", "z"],
    );
    assert_eq!(out.status.code(), Some(0));
    let run = dir.path().join("z");
    let config: serde_json::Value = serde_json::from_slice(&fs::read(run.join("config.json")).unwrap()).unwrap();
    assert_eq!(config["command"], "sweep");
    assert_eq!(config["seed"], 7);
    assert!(String::from_utf8_lossy(&out.stdout).contains("seed 7"));

    let replay = sdaut(dir.path(), &["replay", run.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    let text = String::from_utf8_lossy(&replay.stdout);
    assert!(text.contains("replay summary.json: identical"));
    assert!(text.contains("replay log.jsonl: identical"));

    let mut summary = fs::read_to_string(run.join("summary.json")).unwrap();
    summary.push(' ');
    fs::write(run.join("summary.json"), summary).unwrap();
    assert_eq!(sdaut(dir.path(), &["replay", run.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn resumed_sweep_matches_fresh_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["p59", "sample", "--count", "12", "--chunk", "5"];
    let fresh = sdaut(dir.path(), &[&base[..], &["--name", "fresh"]].concat());
    assert_eq!(fresh.status.code(), Some(0));
    let part = sdaut(dir.path(), &[&base[..], &["--name", "part", "--stop-after", "5"]].concat());
    assert_eq!(part.status.code(), Some(2));
    let rest = sdaut(dir.path(), &[&base[..], &["--name", "part", "--resume"]].concat());
    assert_eq!(rest.status.code(), Some(0));
    for f in ["log.jsonl", "summary.json"] {
        assert_eq!(
            fs::read(dir.path().join("fresh").join(f)).unwrap(),
            fs::read(dir.path().join("part").join(f)).unwrap(),
            "{f}"
        );
    }
}
