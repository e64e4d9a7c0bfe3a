use std::process::{Command, Output};

fn tbcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbcc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = tbcc(&["validate", "c1"]);
    assert!(ok.status.success());
    assert!(tbcc(&["validate", "c4"]).status.success());

    // Both kernels share the factor 1+x.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.code");
    std::fs::write(
        &bad,
        "n: 2\nN1: 6\nN2: 6\nK1: 1\nK2: 3\nkernel 1:\n1 1 0\nkernel 2:\n1 0 1\n",
    )
    .unwrap();
    assert_eq!(
        tbcc(&["validate", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(tbcc(&["validate", "no-such-code"]).status.code(), Some(1));

    let json: serde_json::Value =
        serde_json::from_slice(&tbcc(&["validate", "c1", "--json"]).stdout).unwrap();
    assert_eq!(json["invertible"], true);
}

#[test]
fn spectrum_methods_agree_and_write_a_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex4.csv");
    let beast = tbcc(&[
        "spectrum",
        "ex4",
        "--w-max",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(beast.status.success());
    let brute = tbcc(&["spectrum", "ex4", "--w-max", "8", "--method", "bruteforce"]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&brute));

    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["method"], "beast");
    assert_eq!(sidecar["w_max"], 8);
}

#[test]
fn sphere_packing_curve_decreases() {
    let o = tbcc(&[
        "bounds", "--splb", "-n", "72", "-k", "36", "--from", "0", "--to", "5", "--step", "0.5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ebn0_db,bound"));
    let vals: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(vals.len(), 11);
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn region_counts() {
    let o = tbcc(&["regions", "ex4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("# 48 regions, layers 16/16/16"));
}

#[test]
fn decode_reads_flat_llrs() {
    let dir = tempfile::tempdir().unwrap();
    let llr = dir.path().join("zero.txt");
    std::fs::write(&llr, vec!["4.0"; 72].join(" ")).unwrap();
    let o = tbcc(&["decode", "c1", "--llr", llr.to_str().unwrap()]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["info"].as_array().unwrap().len(), 6);
    assert!(json["info"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r == "000000"));

    assert_eq!(
        tbcc(&[
            "decode",
            "c1",
            "--decoder",
            "nope",
            "--llr",
            llr.to_str().unwrap()
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.toml");
    std::fs::write(
        &plan,
        "code = \"ex4\"\nsnr_db = [2.0]\nseed = 5\n[stop]\nmin_word_errors = 5\nmax_trials = 200\n[decoder]\nkind = \"viterbi\"\nmode = \"exact\"\n",
    )
    .unwrap();
    let a = tbcc(&["simulate", plan.to_str().unwrap()]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(
        stdout(&a),
        stdout(&tbcc(&["simulate", plan.to_str().unwrap()]))
    );
    assert_ne!(
        stdout(&a),
        stdout(&tbcc(&["--seed", "6", "simulate", plan.to_str().unwrap()]))
    );
}
