use std::process::Command;

fn infomorph(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_infomorph")).args(args).output().unwrap();
    (
        out.status.success(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn presets_are_listed_and_validate() {
    let (ok, list, _) = infomorph(&["presets", "list"]);
    assert!(ok);
    assert_eq!(list.lines().collect::<Vec<_>>(), ["supervised", "unsupervised", "memory"]);
    for name in list.lines() {
        let (ok, out, err) = infomorph(&["validate", name]);
        assert!(ok, "{err}");
        assert!(out.contains("ok"));
    }
}

#[test]
fn shown_preset_is_a_valid_config_file() {
    let (ok, toml, _) = infomorph(&["presets", "show", "unsupervised"]);
    assert!(ok);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.toml");
    std::fs::write(&path, toml).unwrap();
    let (ok, _, err) = infomorph(&["validate", path.to_str().unwrap()]);
    assert!(ok, "{err}");
}

#[test]
fn bad_input_exits_nonzero() {
    let (ok, _, err) = infomorph(&["validate", "no-such-config"]);
    assert!(!ok);
    assert!(err.starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let (_, toml, _) = infomorph(&["presets", "show", "memory"]);
    std::fs::write(&path, toml.replace("n_neurons = 100", "n_neurons = 0")).unwrap();
    let (ok, _, err) = infomorph(&["validate", path.to_str().unwrap()]);
    assert!(!ok);
    assert!(err.contains("n_neurons"), "{err}");
}

#[test]
fn run_writes_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let (_, toml, _) = infomorph(&["presets", "show", "unsupervised"]);
    let toml = toml
        .replace("n_steps = 50", "n_steps = 5")
        .replace("mi_samples = 100000", "mi_samples = 1000");
    let cfg = dir.path().join("u.toml");
    std::fs::write(&cfg, toml).unwrap();
    let out = dir.path().join("out");
    let (ok, stdout, err) = infomorph(&["run", cfg.to_str().unwrap(), "--runs", "1", "--out", out.to_str().unwrap()]);
    assert!(ok, "{err}");
    assert!(stdout.contains("layer MI"));
    for f in ["trajectories.csv", "summary.csv", "fields.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
}
