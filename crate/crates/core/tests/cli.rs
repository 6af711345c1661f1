use std::path::Path;
use std::process::{Command, Output};

fn diatomic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diatomic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const BELL: &str = r#"
[[step]]
type = "pulse"
sites = [0, 1]
angle = "pi/2"
rabi = 1000.0

[[step]]
type = "free"
duration = 3.141592653589793

[[step]]
type = "pulse"
site = 0
angle = "pi/2"
rabi = 1000.0
"#;

#[test]
fn tables_default_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = diatomic(&["tables", "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let freq = std::fs::read_to_string(dir.path().join("frequencies.csv")).unwrap();
    assert!(freq.contains("LiNa,70.41"), "{freq}");
    let json = diatomic(&["tables", "--out", out, "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let rates: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("rates.json")).unwrap())
            .unwrap();
    assert_eq!(rates.as_array().unwrap().len(), 10);
    assert_eq!(rates[0]["unit"], "1/s");
}

#[test]
fn unknown_species_exit_two_with_name() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "species = [\"KRb\", \"HeNe\"]\n");
    let o = diatomic(&[
        "tables",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("HeNe"));
}

#[test]
fn unknown_config_key_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "[lattice]\nsites = 2\nspacing = 4e-7\nsapcing = 1.0\n",
    );
    let o = diatomic(&[
        "tables",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sapcing"));
}

#[test]
fn corrupted_schedule_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "bad.toml",
        "[[step]]\ntype = \"pulse\"\nsites = [0\nangle = 1.0\n",
    );
    let cfg = write(dir.path(), "run.toml", "schedule = \"bad.toml\"\n");
    let o = diatomic(&[
        "gatecheck",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn gatecheck_fock_backend_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "backend = \"fock\"\n[hamiltonian]\ndipole = 0.37\n[hamiltonian.interactions]\nab = 2.0\ncc = 1.0\n",
    );
    let o = diatomic(&[
        "gatecheck",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}{}", stderr(&o));
    assert!(stdout.contains("PASS entangling_phase"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn gatecheck_fock_with_tunneling_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "backend = \"fock\"\n[hamiltonian]\ntunneling = [0.01, 0.01, 0.0]\n",
    );
    let o = diatomic(&[
        "gatecheck",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn simulate_bell_reproducible_bytes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bell.toml", BELL);
    let cfg = write(
        dir.path(),
        "run.toml",
        "schedule = \"bell.toml\"\nshots = 10000\nseed = 11\n[hamiltonian]\ndipole = 1.0\n",
    );
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let o = diatomic(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(out.join("measurements.csv")).unwrap()
    };
    let (a, b) = (run("a"), run("b"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 10_001);
    assert!(!text.contains(",00\n") && !text.contains(",11\n"));
    // --seed overrides the config
    let out = dir.path().join("c");
    diatomic(&[
        "simulate",
        "--config",
        &cfg,
        "--seed",
        "12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_ne!(std::fs::read(out.join("measurements.csv")).unwrap(), b);
}

#[test]
fn simulate_fock_pulse_reports_small_leakage() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bell.toml", BELL);
    let cfg = write(
        dir.path(),
        "run.toml",
        "backend = \"fock\"\nschedule = \"bell.toml\"\nformat = \"json\"\n[hamiltonian]\ndipole = 1.0\n[hamiltonian.interactions]\nab = 0.5\n",
    );
    let o = diatomic(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dump: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("state.json")).unwrap())
            .unwrap();
    let leakage = dump["leakage"].as_f64().unwrap();
    assert!(leakage < 1e-10, "{leakage}");
    assert_eq!(dump["amplitudes"].as_array().unwrap().len(), 4);
}

#[test]
fn simulate_shots_without_seed_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "shots = 5\n");
    let o = diatomic(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("seed"));
}

#[test]
fn simulate_dimension_guard_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "backend = \"fock\"\n[lattice]\nsites = 7\nspacing = 4.2e-7\n",
    );
    let o = diatomic(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    let cfg = write(
        dir.path(),
        "big.toml",
        "[lattice]\nsites = 40\nspacing = 4.2e-7\n",
    );
    let o = diatomic(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_never_panic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for text in [
        "\u{0}\u{1}garbage",
        "[lattice]\nsites = -1\nspacing = 4e-7",
        "[lattice]\nsites = 0\nspacing = 4e-7",
        "[lattice]\nspacing = -4e-7",
        "[field]\ngradient = nan",
        "[hamiltonian]\ndipole = inf",
        "[hamiltonian]\ncaps = [1, 2]",
        "shots = 1\nseed = -3",
    ] {
        let cfg = write(dir.path(), "run.toml", text);
        for cmd in ["tables", "gatecheck", "simulate"] {
            let o = diatomic(&[cmd, "--config", &cfg, "--out", out]);
            let code = o.status.code().expect("exited normally");
            assert!(
                !stderr(&o).contains("panicked"),
                "{cmd} {text:?}: {}",
                stderr(&o)
            );
            assert!(code <= 4, "{cmd} {text:?}: {code}");
        }
    }
}
