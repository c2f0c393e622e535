use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn qkt(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qkt")).args(args).env_remove("QKT_THREADS").output().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn lle_grid_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qkt(&["lle-grid", "--k", "6", "--p", "1.5707963", "--grid", "10x12", "--kicks", "200", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    let csv = std::fs::read_to_string(dir.path().join("lle_grid.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "theta,phi,value");
    assert_eq!(csv.lines().count(), 121);
    let m = read_json(&dir.path().join("lle_grid.json"));
    assert_eq!(m["command"], "lle-grid");
    assert_eq!(m["parameters"]["kicks"], 200);
    assert_eq!(m["parameters"]["grid"]["n_phi"], 12);
    assert_eq!(m["file"], "lle_grid.csv");
    // 17 significant digits.
    let v = csv.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(v.split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
}

#[test]
fn exit_codes() {
    assert_eq!(qkt(&["lle-grid", "--k", "6", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(qkt(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(qkt(&["sff", "--k", "6", "--j", "0.3", "--t-max", "5"]).status.code(), Some(2));
    assert_eq!(qkt(&["lle-grid", "--k", "6", "--grid", "0x3"]).status.code(), Some(2));
    assert_eq!(qkt(&["--help"]).status.code(), Some(0));
    // A regular file where the output directory should go.
    let f = tempfile::NamedTempFile::new().unwrap();
    let o = qkt(&["fixed-points", "--k", "3", "--out", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_independent_of_thread_count() {
    let run = |threads: &str| {
        let dir = tempfile::tempdir().unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_qkt"))
            .args(["entropy-landscape", "--j", "3", "--k", "3", "--grid", "6x8", "--kicks", "50"])
            .args(["--out", dir.path().to_str().unwrap()])
            .env("QKT_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        let a = std::fs::read(dir.path().join("entropy_landscape.csv")).unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_qkt"))
            .args(["lle-grid", "--k", "4", "--grid", "8x8", "--kicks", "100", "--threads", threads])
            .args(["--out", dir.path().to_str().unwrap()])
            .output()
            .unwrap();
        assert!(o.status.success());
        (a, std::fs::read(dir.path().join("lle_grid.csv")).unwrap())
    };
    assert_eq!(run("1"), run("4"));
    assert_eq!(qkt(&["lle-grid", "--k", "4", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "kicks = 7\ngrid = \"2x3\"\np = \"pi/2\"\n").unwrap();
    let o = qkt(&[
        "phase-portrait", "--k", "2", "--kicks", "100", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = read_json(&dir.path().join("phase_portrait.json"));
    assert_eq!(m["parameters"]["kicks"], 7);
    assert_eq!(m["rows"], 6 * 8);
    std::fs::write(&cfg, "nonsense = 1\n").unwrap();
    assert_eq!(qkt(&["phase-portrait", "--k", "2", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exact_pi_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qkt(&["recurrence", "--qubits", "3", "--k", "3pi/2", "--cutoff", "50", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = read_json(&dir.path().join("recurrence.json"));
    assert_eq!(m["predicate"]["kind"], "periodic");
    assert_eq!(m["predicate"]["period"], 12);
    assert_eq!(m["scan"]["period"], 12);
    assert_eq!(m["parameters"]["k"]["value"], 3.0 * std::f64::consts::FRAC_PI_2);
}

#[test]
fn validate_exact_gate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qkt(&["validate-exact", "--qubits", "3", "--trials", "50", "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&dir.path().join("validation_report.json"));
    assert_eq!(r["passed"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["qubits"] == 3));
    assert_eq!(qkt(&["validate-exact", "--qubits", "5"]).status.code(), Some(2));
}

#[test]
fn spectral_commands_write_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let base = ["--k", "6", "--j", "60.5", "--out", out];
    for (cmd, extra, files) in [
        ("spacing", vec![], vec!["spacing_plus", "spacing_minus"]),
        ("ratios", vec![], vec!["ratios_plus", "ratios_minus"]),
        ("sff", vec!["--t-max", "50", "--members", "3"], vec!["sff"]),
        ("ipr", vec![], vec!["ipr"]),
        ("eth", vec!["--window", "21", "--offdiag", "21"], vec!["eth_diagonal", "eth_offdiagonal"]),
        ("otoc", vec!["--t-max", "10"], vec!["otoc"]),
        ("echo", vec!["--delta-k", "0.03", "--theta", "2.25", "--phi", "0.52", "--t-max", "20"], vec!["echo"]),
    ] {
        let mut args = vec![cmd];
        args.extend(base);
        args.extend(extra);
        let o = qkt(&args);
        assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        for f in files {
            let csv = std::fs::read_to_string(dir.path().join(format!("{f}.csv"))).unwrap();
            let head = csv.lines().next().unwrap();
            match cmd {
                "spacing" | "ratios" => assert_eq!(head, "bin_left,bin_right,density"),
                "sff" | "otoc" | "echo" => assert_eq!(head, "t,value"),
                _ => {}
            }
            let m = read_json(&dir.path().join(format!("{f}.json")));
            assert_eq!(m["command"], cmd);
        }
    }
    let m = read_json(&dir.path().join("sff.json"));
    assert_eq!(m["averaging"]["ensemble_size"], 3);
    assert_eq!(m["averaging"]["unsmoothed"], false);
}

#[test]
fn entropy_avg_reports_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qkt(&["entropy-avg", "--j", "1.5", "--k", "3pi/2", "--theta", "pi/2", "--phi", "-pi/2", "--kicks", "3000", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = read_json(&dir.path().join("entropy_series.json"));
    assert!((m["closed_form"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((m["average"]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-2);
}
