use std::fs;
use std::path::Path;
use std::process::Command;

use plate_lab::cli::run_cli;

fn cli(args: &[&str]) -> i32 {
    run_cli(std::iter::once("plate-lab".to_string()).chain(args.iter().map(|s| s.to_string())))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const RANDOM_DECAY: &str = r#"
[linear-decay]
n = 1
points = 4096
half_width = 1024.0
datum = "random_band_limited"
cutoff = 2.0
pairs = ["1,4", "2,2", "4/3,4"]
t_min = 5.0
t_max = 60.0
samples = 12
regime = "large"
tolerance = 10.0
"#;

#[test]
fn theory_table_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(cli(&["theory-table", "--n", "1", "--grid", "0.25", "--out", out]), 0);
    let text = fs::read_to_string(dir.path().join("theory_table.csv")).unwrap();
    assert!(text.starts_with("n,1/p,1/q,d_pl,beta,gamma,class,region,large_exp,small_exp\n"));
    // (1, 4): large-time exponent -3/16
    assert!(text.lines().any(|l| l.starts_with("1,1,1/4,") && l.ends_with(",-3/16,5/8")), "{text}");
    assert_eq!(text.lines().count(), 1 + 15);
    assert_eq!(cli(&["theory-table", "--n", "1", "--grid", "0.3", "--out", out]), 2);
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let empty = write(dir.path(), "empty.toml", "");
    for sub in ["theory-table", "linear-decay", "optimality", "semilinear", "nonexistence", "radial-crosscheck"] {
        assert_eq!(cli(&[sub, "--config", &empty, "--out", out]), 2, "{sub}");
    }
    let typo = write(dir.path(), "typo.toml", &RANDOM_DECAY.replace("samples", "sample"));
    assert_eq!(cli(&["linear-decay", "--config", &typo, "--out", out]), 2);
    let missing = write(dir.path(), "missing.toml", &RANDOM_DECAY.replace("cutoff = 2.0", ""));
    assert_eq!(cli(&["linear-decay", "--config", &missing, "--out", out]), 2);
    assert_eq!(cli(&["linear-decay", "--config", "/nonexistent/x.toml"]), 2);
    assert_eq!(cli(&["--bogus", "theory-table"]), 2);
    assert_eq!(cli(&["no-such-command"]), 2);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3, "no CSV written on config errors");
}

#[test]
fn messages_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write(dir.path(), "typo.toml", &RANDOM_DECAY.replace("samples", "sample"));
    let missing = write(dir.path(), "missing.toml", &RANDOM_DECAY.replace("cutoff = 2.0", ""));
    let bin = env!("CARGO_BIN_EXE_plate-lab");
    for (path, key) in [(&typo, "sample"), (&missing, "cutoff")] {
        let o = Command::new(bin).args(["linear-decay", "--config", path, "--out"]).arg(dir.path()).output().unwrap();
        assert_eq!(o.status.code(), Some(2));
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(key), "{err}");
    }
    let help = Command::new(bin).args(["semilinear", "--help"]).output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("semilinear_series.csv: t,1/q,norm,weighted,running_sup"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "rand.toml", RANDOM_DECAY);
    let run = |sub: &str, seed: &str, jobs: &str| {
        let out = dir.path().join(sub);
        assert_eq!(cli(&["linear-decay", "--config", &cfg, "--seed", seed, "--jobs", jobs, "--out", out.to_str().unwrap()]), 0);
        ["linear_decay_series.csv", "linear_decay_fit.csv"].map(|f| fs::read(out.join(f)).unwrap())
    };
    let a = run("a", "7", "1");
    let b = run("b", "7", "2");
    let c = run("c", "8", "1");
    assert_eq!(a, b);
    assert_ne!(a[0], c[0]);
}

#[test]
fn failed_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // a smooth bump at (1,4) decays like t^(-3/16); a zero tolerance cannot pass
    let text = RANDOM_DECAY
        .replace("datum = \"random_band_limited\"", "datum = \"smooth_bump\"")
        .replace("cutoff = 2.0", "radius = 2.0")
        .replace("tolerance = 10.0", "tolerance = 0.0")
        .replace("pairs = [\"1,4\", \"2,2\", \"4/3,4\"]", "pairs = [\"1,4\"]");
    let cfg = write(dir.path(), "strict.toml", &text);
    assert_eq!(cli(&["linear-decay", "--config", &cfg, "--out", dir.path().to_str().unwrap()]), 1);
}

#[test]
fn example_config_parses() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/example.toml");
    let file = plate_lab::cli::ConfigFile::load(&path).unwrap();
    assert!(file.theory_table.is_some() && file.linear_decay.is_some() && file.optimality.is_some());
    assert!(file.semilinear.is_some() && file.nonexistence.is_some() && file.radial_crosscheck.is_some());
}
