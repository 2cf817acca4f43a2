//! Acceptance: re-running every CLI command with identical inputs and
//! seed must produce byte-identical JSON, including failing verdicts.

use std::process::Command;

fn run(args: &[String]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_lyd"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().expect("no signal"), out.stdout)
}

#[test]
fn criterion_11_cli_determinism() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let fix = |name: &str| format!("{dir}/{name}");
    let commands: Vec<Vec<String>> = vec![
        vec!["check".into(), fix("example-3dim.lya")],
        vec!["check".into(), fix("meson-3.lya")],
        vec!["rep-check".into(), fix("adjoint-3dim.rep")],
        vec!["cohomology".into(), fix("example-3dim.lya"), "--which".into(), "23".into()],
        vec!["cohomology".into(), fix("meson-2.lya"), "--which".into(), "3445".into()],
        vec!["cohomology".into(), fix("abelian-2.lya"), "--which".into(), "p=2".into()],
        vec!["deform".into(), "check".into(), fix("shift.def")],
        vec!["deform".into(), "infinitesimal".into(), fix("shift.def")],
        vec!["deform".into(), "obstruct".into(), fix("shift.def")],
        vec!["deform".into(), "obstruct".into(), fix("obstructed.def")],
        vec!["deform".into(), "extend".into(), fix("shift.def"), "--witness".into()],
        vec!["deform".into(), "extend".into(), fix("obstructed.def")],
        vec![
            "deform".into(),
            "integrate".into(),
            fix("abelian-3.lya"),
            "--f".into(),
            fix("shift-f.cochain"),
            "--g".into(),
            fix("shift-g.cochain"),
            "--order".into(),
            "3".into(),
        ],
        vec![
            "deform".into(),
            "equivalent".into(),
            fix("shift.def"),
            fix("shift.def"),
        ],
        vec!["deform".into(), "normalize".into(), fix("shift.def")],
        vec![
            "deform".into(),
            "extend-alg".into(),
            fix("abelian-3.lya"),
            "--f".into(),
            fix("shift-f.cochain"),
            "--g".into(),
            fix("shift-g.cochain"),
        ],
        vec!["free".into(), "dims".into(), "--gens".into(), "2".into(), "--max-weight".into(), "4".into()],
        vec!["free".into(), "basis".into(), "--gens".into(), "2".into(), "--max-weight".into(), "3".into()],
    ];
    for base in &commands {
        let mut args = base.clone();
        args.push("--json".into());
        args.push("--seed".into());
        args.push("7".into());
        let (code_a, out_a) = run(&args);
        let (code_b, out_b) = run(&args);
        assert_eq!(code_a, code_b, "exit code changed between runs: {args:?}");
        assert!(!out_a.is_empty(), "no JSON produced: {args:?}");
        assert_eq!(out_a, out_b, "output not byte-identical: {args:?}");
        let v: serde_json::Value = serde_json::from_slice(&out_a).expect("valid JSON");
        assert!(v.get("report").is_some(), "report field missing: {args:?}");
        assert_eq!(v["seed"], serde_json::json!(7));
    }
    println!(
        "acceptance criterion 11 (CLI determinism): PASS ({} commands byte-identical across reruns)",
        commands.len()
    );
}
